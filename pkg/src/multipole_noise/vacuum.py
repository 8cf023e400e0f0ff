"""Position-dependent vacuum noise of the multipole field.

The vacuum expectation of the squared field strength reduces, through
<0| a a+ |0> = 1, to a sum of squared mode functions:

    C_E(r) = scale^2 * sum_{mu, lambda, j <= j_max, m} |V_{lambda j m mu}(r)|^2

while a field of monochromatic plane waves has the flat level
C_plane = 2 * scale_prime^2.

For Hankel-type radial functions the sum over j diverges at any fixed kr
(|h_j(x)| grows like (2j-1)!!/x^(j+1)), so ``j_max`` is a model parameter:
the number of multipoles the emitter or detector couples to.  It is not a
convergence knob.  Only the standing-wave sum converges, and
:func:`standing_truncation` picks a cutoff for it from ``tail_tol``.

The relation between scale and scale_prime is not fixed by the physics
used here.  :func:`calibrate` supplies one convention: pick the scale so
that C_E equals C_plane (with scale_prime = 1) at a far-field radius x_ref.
"""
from dataclasses import dataclass
from math import inf, isfinite, nan, pi, sqrt

import numpy as np
from scipy.optimize import bisect

from .errors import (
    CalibrationError,
    DomainError,
    PhysicalDivergenceError,
    ThresholdAmbiguityError,
    ThresholdNotFoundError,
    UsageError,
)
from .multipole import SphericalPoint, mode_table
from .radial import RadialKind, radial_array

DEFAULT_J_MAX = 10
DEFAULT_X_REF = 50.0
THRESHOLD_XTOL = 1e-9
MONOTONE_SAMPLES = 64


@dataclass(frozen=True)
class TruncationSpec:
    j_max: int = DEFAULT_J_MAX
    tail_tol: float = 1e-14

    def __post_init__(self):
        if int(self.j_max) != self.j_max or self.j_max < 1:
            raise DomainError(f"j_max must be an integer >= 1, got {self.j_max}")
        if not self.tail_tol > 0:
            raise DomainError(f"tail_tol must be > 0, got {self.tail_tol}")
        object.__setattr__(self, "j_max", int(self.j_max))


@dataclass(frozen=True)
class NoiseSample:
    x: float
    c_e: float
    c_plane: float
    ratio: float


def _as_point(p):
    if isinstance(p, SphericalPoint):
        return p
    return SphericalPoint(float(p))


def _mode_power(p, kind, j_max):
    """|V|^2 summed over m and mu, one entry per (lambda, j)."""
    kind = RadialKind.parse(kind)
    if kind.singular and p.x == 0.0:
        raise PhysicalDivergenceError("source")
    table = mode_table(p, kind, j_max)
    return (table.real**2 + table.imag**2).sum(axis=(2, 3))


def vacuum_noise(p, kind, trunc=None, scale=1.0):
    """Vacuum noise C_E at point ``p`` (a SphericalPoint or a bare kr)."""
    trunc = trunc or TruncationSpec()
    if not scale > 0:
        raise DomainError(f"scale must be > 0, got {scale}")
    p = _as_point(p)
    power = _mode_power(p, kind, trunc.j_max)
    return float(scale**2 * power.sum())


def plane_baseline(scale_prime=1.0):
    if scale_prime < 0:
        raise DomainError(f"scale_prime must be >= 0, got {scale_prime}")
    return 2.0 * scale_prime**2


def multipole_weight(kind, j_max, x):
    """Angle-free closed form of the (m, mu)-summed |V|^2, one value per j.

    Unsold's theorem and CG orthogonality collapse each multipole to

        M-type: (2j+1) |f_j|^2 / (4 pi)
        E-type: (j |f_{j+1}|^2 + (j+1) |f_{j-1}|^2) / (4 pi)

    Returned as an array of shape (2, j_max), rows E then M.
    """
    f2 = np.abs(radial_array(kind, j_max + 1, x)) ** 2
    j = np.arange(1, j_max + 1)
    e_type = (j * f2[j + 1] + (j + 1) * f2[j - 1]) / (4 * pi)
    m_type = (2 * j + 1) * f2[j] / (4 * pi)
    return np.vstack([e_type, m_type])


def standing_truncation(x, tail_tol=1e-14, j_cap=400):
    """Smallest cutoff past which the standing-wave sum has converged.

    Stops at the first j beyond the turning point (j > x) whose added
    contribution is below ``tail_tol`` relative to the running total.
    """
    if x == 0.0:
        return TruncationSpec(1, tail_tol)
    w = multipole_weight(RadialKind.STANDING, j_cap, x).sum(axis=0)
    total = np.cumsum(w)
    for j in range(1, j_cap + 1):
        if j > x and w[j - 1] <= tail_tol * total[j - 1]:
            return TruncationSpec(j, tail_tol)
    raise CalibrationError(f"standing sum at kr={x} not converged by j={j_cap}")


def calibrate(kind, trunc=None, x_ref=DEFAULT_X_REF):
    """Scale that makes C_E(x_ref) equal the plane-wave level 2 (scale_prime=1)."""
    trunc = trunc or TruncationSpec()
    if not x_ref > 0:
        raise DomainError(f"x_ref must be > 0, got {x_ref}")
    raw = vacuum_noise(SphericalPoint(x_ref), kind, trunc, 1.0)
    if not raw > 0 or not isfinite(raw):
        raise CalibrationError(
            f"cannot calibrate: vacuum noise at x_ref={x_ref} is {raw}"
        )
    return sqrt(plane_baseline(1.0) / raw)


def _ratio(c_e, c_plane):
    if c_plane > 0:
        return c_e / c_plane
    return inf if c_e > 0 else nan


def noise_ratio(p, kind, trunc=None, scale=1.0, scale_prime=1.0):
    return _ratio(vacuum_noise(p, kind, trunc, scale), plane_baseline(scale_prime))


def sample(p, kind, trunc=None, scale=1.0, scale_prime=1.0):
    p = _as_point(p)
    c_e = vacuum_noise(p, kind, trunc, scale)
    c_plane = plane_baseline(scale_prime)
    return NoiseSample(p.x, c_e, c_plane, _ratio(c_e, c_plane))


def radial_scan(x_lo, x_hi, n, kind, trunc=None, scale=1.0, scale_prime=1.0,
                theta=0.0, phi=0.0):
    """Noise samples at ``n`` evenly spaced radii from x_lo to x_hi."""
    kind = RadialKind.parse(kind)
    if int(n) != n or n < 2:
        raise UsageError(f"scan needs n >= 2 points, got {n}")
    if not (isfinite(x_lo) and isfinite(x_hi)) or x_lo < 0 or x_lo >= x_hi:
        raise UsageError(f"scan needs 0 <= x_lo < x_hi, got [{x_lo}, {x_hi}]")
    if x_lo == 0 and kind.singular:
        raise PhysicalDivergenceError("source")
    xs = np.linspace(x_lo, x_hi, int(n))
    return [
        sample(SphericalPoint(float(x), theta, phi), kind, trunc, scale, scale_prime)
        for x in xs
    ]


def _crossings(xs, values, floor):
    out = []
    for a, b, va, vb in zip(xs[:-1], xs[1:], values[:-1], values[1:]):
        if (va - floor) * (vb - floor) <= 0 and va != vb:
            out.append(float(0.5 * (a + b)))
    return out


def threshold_kr(floor, kind, trunc=None, scale=1.0, scale_prime=1.0,
                 bracket=(0.5, 50.0)):
    """Radius where the noise ratio falls through ``floor``.

    The ratio must exceed ``floor`` at the inner bracket end, lie below it at
    the outer end and decrease monotonically in between (checked on 64
    samples).  The crossing is located by bisection to 1e-9 in kr.
    """
    kind = RadialKind.parse(kind)
    if not floor > 0:
        raise DomainError(f"floor must be > 0, got {floor}")
    x_lo, x_hi = (float(b) for b in bracket)
    if not 0 <= x_lo < x_hi:
        raise UsageError(f"bracket needs 0 <= x_lo < x_hi, got {bracket}")

    def excess(x):
        return noise_ratio(SphericalPoint(x), kind, trunc, scale, scale_prime) - floor

    lo_val, hi_val = excess(x_lo), excess(x_hi)
    if not (lo_val > 0 > hi_val):
        raise ThresholdNotFoundError(
            f"threshold_kr: ratio does not cross floor {floor} on [{x_lo}, {x_hi}] "
            f"(ratio - floor = {lo_val:.6g} at x_lo, {hi_val:.6g} at x_hi)"
        )
    xs = np.linspace(x_lo, x_hi, MONOTONE_SAMPLES)
    vals = np.array([lo_val] + [excess(float(x)) for x in xs[1:-1]] + [hi_val])
    if np.any(np.diff(vals) > 0):
        raise ThresholdAmbiguityError(
            f"threshold_kr: ratio is not monotone on [{x_lo}, {x_hi}]",
            _crossings(xs, vals + floor, floor),
        )
    return float(bisect(excess, x_lo, x_hi, xtol=THRESHOLD_XTOL, rtol=4 * np.finfo(float).eps))


def wavelength_distance(x):
    """Convert kr into r measured in wavelengths."""
    if x < 0:
        raise DomainError(f"kr must be >= 0, got {x}")
    return x / (2 * pi)


def convergence_table(p, kind, j_max_list, scale=1.0):
    """(j_max, c_e) rows for each requested cutoff.

    The table is built from one evaluation at the largest cutoff; smaller
    cutoffs are partial sums of it.
    """
    p = _as_point(p)
    cutoffs = [int(j) for j in j_max_list]
    if not cutoffs or min(cutoffs) < 1:
        raise UsageError(f"cutoffs must be integers >= 1, got {list(j_max_list)}")
    power = _mode_power(p, kind, max(cutoffs)).sum(axis=0)
    partial = np.cumsum(power)
    return [(j, float(scale**2 * partial[j - 1])) for j in cutoffs]
