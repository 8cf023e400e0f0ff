"""Two-atom (Hertz-type) emission/detection model.

A source atom sits at the origin and a detector atom at (0, 0, d), lengths
in units of 1/k.  The field is a superposition of an outgoing wave centred
on the source and a converging wave centred on the detector, with complex
weights alpha and beta.

Geometry convention: each wave is evaluated in its own local spherical
frame, with no multipole translation theorem.  With ``cross_terms`` on,
modes carrying the same label (lambda, j, m, mu) on the two centres are
added coherently before squaring.  That pairing is a modelling choice
because the two expansions use different origins.  With ``cross_terms``
off the two noises add incoherently, which is the default.
"""
from dataclasses import dataclass, field
from math import sqrt

import numpy as np

from .errors import DomainError, PhysicalDivergenceError, UsageError
from .multipole import SphericalPoint, mode_table
from .radial import RadialKind
from .vacuum import TruncationSpec

_NORM_TOL = 1e-12


@dataclass(frozen=True)
class HertzConfig:
    d: float
    alpha: complex = 1 / sqrt(2)
    beta: complex = 1 / sqrt(2)
    cross_terms: bool = False
    trunc: TruncationSpec = field(default_factory=TruncationSpec)
    scale: float = 1.0

    def __post_init__(self):
        if not self.d > 0:
            raise DomainError(f"separation d must be > 0, got {self.d}")
        if not self.scale > 0:
            raise DomainError(f"scale must be > 0, got {self.scale}")
        alpha, beta = complex(self.alpha), complex(self.beta)
        norm = abs(alpha) ** 2 + abs(beta) ** 2
        if abs(norm - 1.0) > _NORM_TOL:
            raise DomainError(f"|alpha|^2 + |beta|^2 must be 1, got {norm!r}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "d", float(self.d))

    @property
    def detector(self):
        return np.array([0.0, 0.0, self.d])


def two_atom_noise(q, cfg):
    """Vacuum noise at Cartesian point ``q`` between source and detector."""
    q = np.asarray(q, dtype=float)
    rel_src = SphericalPoint.from_cartesian(q)
    rel_det = SphericalPoint.from_cartesian(q - cfg.detector)
    if rel_src.x == 0.0:
        raise PhysicalDivergenceError("source")
    if rel_det.x == 0.0:
        raise PhysicalDivergenceError("detector")

    j_max = cfg.trunc.j_max
    v_out = mode_table(rel_src, RadialKind.OUTGOING, j_max)
    v_conv = mode_table(rel_det, RadialKind.CONVERGING, j_max)
    if cfg.cross_terms:
        total = np.sum(np.abs(cfg.alpha * v_out + cfg.beta * v_conv) ** 2)
    else:
        total = abs(cfg.alpha) ** 2 * np.sum(np.abs(v_out) ** 2) + abs(
            cfg.beta
        ) ** 2 * np.sum(np.abs(v_conv) ** 2)
    return float(cfg.scale**2 * total)


def axis_scan(cfg, n, margin):
    """(z, noise) along the source-detector axis, z from margin to d - margin."""
    if int(n) != n or n < 2:
        raise UsageError(f"axis scan needs n >= 2 points, got {n}")
    if not margin > 0 or margin >= cfg.d / 2:
        raise UsageError(
            f"margin must satisfy 0 < margin < d/2 = {cfg.d / 2}, got {margin}"
        )
    zs = np.linspace(margin, cfg.d - margin, int(n))
    return [(float(z), two_atom_noise((0.0, 0.0, float(z)), cfg)) for z in zs]
