"""Spherical Bessel, Neumann and Hankel functions of real argument.

``j_l`` is computed by Miller's downward recurrence, which is stable for
l > x where the upward recurrence loses every digit.  ``y_l`` is the
dominant solution and is computed upward, which is stable for all l.
"""
import enum
from math import ceil, cos, inf, isfinite, sin

import numpy as np

from .errors import DomainError

__all__ = [
    "RadialKind",
    "sph_bessel_j",
    "sph_neumann_y",
    "sph_hankel",
    "bessel_j_array",
    "neumann_y_array",
    "radial_array",
    "miller_start",
]

# below this argument the power series is used; the recurrence ratio
# (2l+1)/x would overflow long before x reaches the denormal range
_SERIES_X = 1e-3
_RESCALE = 1e200


class RadialKind(enum.Enum):
    """Radial dependence f_l of the multipole modes.

    STANDING -> j_l (cavity standing wave), OUTGOING -> h_l^(1) (emitted
    wave), CONVERGING -> h_l^(2) (wave absorbed by a detector).
    """

    STANDING = "standing"
    OUTGOING = "outgoing"
    CONVERGING = "converging"

    @property
    def singular(self):
        return self is not RadialKind.STANDING

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise DomainError(
                f"unknown radial kind {value!r}; expected one of "
                f"{[k.value for k in cls]}"
            ) from None


def miller_start(lmax, x):
    """Starting order for the downward recurrence.

    Measured from max(lmax, x) so that the start lies well inside the
    evanescent region even when every requested order is below x.
    """
    return max(lmax, ceil(x)) + max(20, ceil(1.5 * x))


def _series_j(lmax, x):
    out = np.empty(lmax + 1)
    half_x2 = -0.5 * x * x
    lead = 1.0
    for l in range(lmax + 1):
        if l > 0:
            lead *= x / (2 * l + 1)
        term, total, k = 1.0, 1.0, 0
        while abs(term) > 1e-17 * abs(total):
            k += 1
            term *= half_x2 / (k * (2 * l + 2 * k + 1))
            total += term
        out[l] = lead * total
    return out


def bessel_j_array(lmax, x):
    """j_0(x) .. j_lmax(x) as a float array."""
    if x < 0:
        raise DomainError(f"spherical Bessel j needs x >= 0, got {x}")
    if lmax < 0:
        raise DomainError(f"order must be >= 0, got {lmax}")
    if x == 0.0:
        out = np.zeros(lmax + 1)
        out[0] = 1.0
        return out
    if x < _SERIES_X:
        return _series_j(lmax, x)

    start = miller_start(lmax, x)
    f = np.zeros(start + 2)
    f[start] = 1e-300
    for l in range(start, 0, -1):
        f[l - 1] = (2 * l + 1) / x * f[l] - f[l + 1]
        if abs(f[l - 1]) > _RESCALE:
            f[l - 1 :] /= _RESCALE
    j0 = sin(x) / x
    if x < 1.0:
        # j0 has no zero here and the closed form of j1 cancels badly
        out = f[: lmax + 1] * (j0 / f[0])
        out[0] = j0
        return out
    j1 = sin(x) / (x * x) - cos(x) / x
    # normalise against whichever seed is further from one of its zeros
    scale = j0 / f[0] if abs(j0) >= abs(j1) else j1 / f[1]
    out = f[: lmax + 1] * scale
    out[0] = j0
    if lmax >= 1:
        out[1] = j1
    return out


def neumann_y_array(lmax, x):
    """y_0(x) .. y_lmax(x) by upward recurrence."""
    if x <= 0:
        raise DomainError(f"spherical Neumann y is singular at x <= 0, got {x}")
    if lmax < 0:
        raise DomainError(f"order must be >= 0, got {lmax}")
    out = np.empty(lmax + 1)
    out[0] = -cos(x) / x
    if lmax >= 1:
        out[1] = -cos(x) / (x * x) - sin(x) / x
    for l in range(1, lmax):
        nxt = (2 * l + 1) / x * float(out[l]) - float(out[l - 1])
        if not isfinite(nxt):
            # only reachable for l >> x, where y_l -> -(2l-1)!!/x^(l+1)
            out[l + 1 :] = -inf
            break
        out[l + 1] = nxt
    return out


def radial_array(kind, lmax, x):
    """f_0(x) .. f_lmax(x) for the given radial kind (complex array)."""
    kind = RadialKind.parse(kind)
    j = bessel_j_array(lmax, x)
    if kind is RadialKind.STANDING:
        return j.astype(complex)
    y = neumann_y_array(lmax, x)
    if kind is RadialKind.OUTGOING:
        return j + 1j * y
    return j - 1j * y


def sph_bessel_j(l, x):
    """Spherical Bessel function j_l(x) for x >= 0."""
    return float(bessel_j_array(l, x)[l])


def sph_neumann_y(l, x):
    """Spherical Neumann function y_l(x) for x > 0."""
    return float(neumann_y_array(l, x)[l])


def sph_hankel(kind, l, x):
    """Spherical Hankel function h_l^(1) (kind=1) or h_l^(2) (kind=2).

    ``kind`` also accepts "first"/"second".
    """
    if kind in (1, "1", "first"):
        sign = 1.0
    elif kind in (2, "2", "second"):
        sign = -1.0
    else:
        raise DomainError(f"Hankel kind must be first or second, got {kind!r}")
    if x <= 0:
        raise DomainError(f"spherical Hankel is singular at x <= 0, got {x}")
    return complex(sph_bessel_j(l, x), sign * sph_neumann_y(l, x))
