"""Helicity basis, multipole mode functions and field components.

Vectors are expanded in the spherical (helicity) basis

    chi_{+1} = -(e_x + i e_y)/sqrt(2),  chi_0 = e_z,  chi_{-1} = (e_x - i e_y)/sqrt(2)

as ``v = sum_mu (-1)^mu chi_{-mu} A_mu``.  Every triple indexed by mu is
ordered (-1, 0, +1).

The mode functions combine a radial factor f_l(kr), a spin-1
Clebsch-Gordan coefficient and a spherical harmonic:

    V_{M j m mu} = f_j <1, j, mu, m-mu | j m> Y_{j, m-mu}
    V_{E j m mu} = [ sqrt(j)   f_{j+1} <1, j+1, mu, m-mu | j m> Y_{j+1, m-mu}
                   - sqrt(j+1) f_{j-1} <1, j-1, mu, m-mu | j m> Y_{j-1, m-mu} ] / sqrt(2j+1)

Both f_{j+1} and f_{j-1} are read as functions of the same argument kr.
"""
import enum
from dataclasses import dataclass, field
from math import pi, sqrt

import numpy as np

from .angular import cg_spin1, ylm_table
from .errors import DomainError, PhysicalDivergenceError
from .radial import RadialKind, radial_array

MU_ORDER = (-1, 0, 1)
_SQRT2 = sqrt(2.0)


class RadiationType(enum.Enum):
    E = "E"
    M = "M"


@dataclass(frozen=True)
class ModeIndex:
    lam: RadiationType
    j: int
    m: int

    def __post_init__(self):
        object.__setattr__(self, "lam", RadiationType(self.lam))
        if self.j < 1:
            raise DomainError(f"multipole order j must be >= 1, got {self.j}")
        if abs(self.m) > self.j:
            raise DomainError(f"|m| must be <= j, got j={self.j}, m={self.m}")


@dataclass(frozen=True)
class SphericalPoint:
    """Point given by dimensionless radius x = kr and two angles.

    Angles are folded into theta in [0, pi], phi in [0, 2 pi).
    """

    x: float
    theta: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        if not np.isfinite(self.x) or self.x < 0:
            raise DomainError(f"radius kr must be finite and >= 0, got {self.x}")
        theta = float(self.theta) % (2 * pi)
        phi = float(self.phi)
        if theta > pi:
            theta = 2 * pi - theta
            phi += pi
        phi %= 2 * pi
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    @classmethod
    def from_cartesian(cls, v):
        vx, vy, vz = (float(c) for c in v)
        rho = np.hypot(vx, vy)
        r = np.hypot(rho, vz)
        return cls(r, float(np.arctan2(rho, vz)), float(np.arctan2(vy, vx)))


@dataclass(frozen=True)
class FieldState:
    """Classical mode amplitudes standing in for the annihilation operators.

    ``scale`` is the product k*gamma of wavenumber and normalisation; only
    that product ever enters the field.  Absent modes have zero amplitude.
    """

    scale: float
    amplitudes: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.scale > 0:
            raise DomainError(f"scale must be > 0, got {self.scale}")
        for idx in self.amplitudes:
            if not isinstance(idx, ModeIndex):
                raise DomainError(f"amplitude keys must be ModeIndex, got {idx!r}")


def _basis():
    ex, ey, ez = np.eye(3)
    return {
        -1: (ex - 1j * ey) / _SQRT2,
        0: ez.astype(complex),
        1: -(ex + 1j * ey) / _SQRT2,
    }


HELICITY_BASIS = _basis()


def helicity_components(v):
    """Spherical components (A_-1, A_0, A_+1) of a Cartesian 3-vector."""
    v = np.asarray(v, dtype=complex)
    if v.shape != (3,):
        raise DomainError(f"expected a 3-vector, got shape {v.shape}")
    # chi_{-mu} are orthonormal, so A_mu = (-1)^mu <chi_{-mu}, v>
    return tuple(
        complex((-1) ** abs(mu) * np.vdot(HELICITY_BASIS[-mu], v)) for mu in MU_ORDER
    )


def from_helicity(components):
    """Inverse of :func:`helicity_components`."""
    out = np.zeros(3, dtype=complex)
    for mu, a in zip(MU_ORDER, components):
        out += (-1) ** abs(mu) * HELICITY_BASIS[-mu] * a
    return out


def _check_point(p, kind):
    if kind.singular and p.x == 0.0:
        raise PhysicalDivergenceError("source")


def _v_from_tables(lam, j, m, mu, f, ylm, lmax):
    def term(l):
        q = m - mu
        if l < 0 or abs(q) > l:
            return 0.0
        c = cg_spin1(l, j, mu, m)
        if c == 0.0:
            return 0.0
        return f[l] * c * ylm[l, lmax + q]

    if lam is RadiationType.M:
        return complex(term(j))
    return complex(
        (sqrt(j) * term(j + 1) - sqrt(j + 1) * term(j - 1)) / sqrt(2 * j + 1)
    )


def mode_function(idx, mu, p, kind):
    """V_{lambda j m mu}(r) at point ``p`` for the given radial kind."""
    if mu not in MU_ORDER:
        raise DomainError(f"mu must be -1, 0 or +1, got {mu}")
    kind = RadialKind.parse(kind)
    _check_point(p, kind)
    lmax = idx.j + 1
    f = radial_array(kind, lmax, p.x)
    ylm = ylm_table(lmax, p.theta, p.phi)
    return _v_from_tables(idx.lam, idx.j, idx.m, mu, f, ylm, lmax)


def mode_table(p, kind, j_max):
    """Every mode function up to ``j_max`` at one point.

    Returns a complex array of shape (2, j_max, 2*j_max + 1, 3) indexed as
    ``[lam, j - 1, m + j_max, mu + 1]`` with lam 0 = E, 1 = M.  Slots with
    |m| > j are zero.
    """
    if j_max < 1:
        raise DomainError(f"j_max must be >= 1, got {j_max}")
    kind = RadialKind.parse(kind)
    _check_point(p, kind)
    lmax = j_max + 1
    f = radial_array(kind, lmax, p.x)
    ylm = ylm_table(lmax, p.theta, p.phi)
    out = np.zeros((2, j_max, 2 * j_max + 1, 3), dtype=complex)
    for a, lam in enumerate((RadiationType.E, RadiationType.M)):
        for j in range(1, j_max + 1):
            for m in range(-j, j + 1):
                for b, mu in enumerate(MU_ORDER):
                    out[a, j - 1, m + j_max, b] = _v_from_tables(
                        lam, j, m, mu, f, ylm, lmax
                    )
    return out


def field_component(mu, p, state, kind):
    """E_mu(r) = i * scale * sum over modes of V_{idx,mu}(r) * a_idx."""
    if mu not in MU_ORDER:
        raise DomainError(f"mu must be -1, 0 or +1, got {mu}")
    kind = RadialKind.parse(kind)
    _check_point(p, kind)
    if not state.amplitudes:
        return 0j
    lmax = max(idx.j for idx in state.amplitudes) + 1
    f = radial_array(kind, lmax, p.x)
    ylm = ylm_table(lmax, p.theta, p.phi)
    total = 0j
    for idx, a in state.amplitudes.items():
        total += _v_from_tables(idx.lam, idx.j, idx.m, mu, f, ylm, lmax) * a
    return 1j * state.scale * total


def field_vector(p, state, kind):
    """All three components (E_-1, E_0, E_+1)."""
    return tuple(field_component(mu, p, state, kind) for mu in MU_ORDER)
