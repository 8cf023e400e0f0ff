"""Angular functions: associated Legendre, spherical harmonics and the
spin-1 Clebsch-Gordan coefficients used by the multipole mode functions.

Phase convention
----------------
Condon-Shortley throughout: the factor (-1)^m is part of P_l^m, so that

    Y_{l,-m} = (-1)^m conj(Y_{l,m})

and the Clebsch-Gordan coefficients follow the usual tables (e.g. those of
Varshalovich or Edmonds).  Signs of individual mode-function values depend
on this choice; the vacuum sums do not.
"""
from dataclasses import dataclass
from functools import lru_cache
from math import exp, lgamma, log, pi, sqrt

import numpy as np

from .errors import DomainError

__all__ = [
    "AngularIndex",
    "assoc_legendre",
    "spherical_harmonic",
    "ylm_table",
    "cg_spin1",
]


@dataclass(frozen=True)
class AngularIndex:
    l: int
    m: int

    def __post_init__(self):
        if self.l < 0 or abs(self.m) > self.l:
            raise DomainError(f"invalid angular index (l={self.l}, m={self.m})")


def assoc_legendre(l, m, u):
    """Associated Legendre function P_l^m(u), Condon-Shortley phase included.

    Upward recurrence in l starting from the closed form of P_m^m.
    """
    if l < 0 or m < 0 or m > l:
        raise DomainError(f"assoc_legendre needs 0 <= m <= l, got l={l}, m={m}")
    if not -1.0 <= u <= 1.0:
        raise DomainError(f"assoc_legendre needs |u| <= 1, got {u}")

    s = sqrt((1.0 - u) * (1.0 + u))
    pmm = 1.0
    for k in range(1, m + 1):
        pmm *= -(2 * k - 1) * s
    if l == m:
        return pmm
    p_prev, p = pmm, (2 * m + 1) * u * pmm
    for ll in range(m + 2, l + 1):
        p_prev, p = p, ((2 * ll - 1) * u * p - (ll + m - 1) * p_prev) / (ll - m)
    return p


def ylm_table(lmax, theta, phi):
    """All orthonormal Y_{l,m}(theta, phi) for 0 <= l <= lmax.

    Returns a complex array ``Y`` of shape (lmax+1, 2*lmax+1) with
    ``Y[l, lmax + m]``; entries with |m| > l are zero.

    The fully normalised Legendre functions are built by the standard
    three-term recurrence upward in l from the sectoral seed, which keeps
    every intermediate of order one.
    """
    if lmax < 0:
        raise DomainError(f"lmax must be >= 0, got {lmax}")
    ct, st = np.cos(theta), np.sin(theta)
    pbar = np.zeros((lmax + 1, lmax + 1))
    pbar[0, 0] = 1.0 / sqrt(4.0 * pi)
    for m in range(1, lmax + 1):
        pbar[m, m] = -sqrt((2 * m + 1) / (2.0 * m)) * st * pbar[m - 1, m - 1]
    for m in range(0, lmax):
        pbar[m + 1, m] = sqrt(2 * m + 3.0) * ct * pbar[m, m]
    for m in range(0, lmax + 1):
        for l in range(m + 2, lmax + 1):
            a = sqrt((4.0 * l * l - 1.0) / (l * l - m * m))
            b = sqrt(((l - 1.0) ** 2 - m * m) / (4.0 * (l - 1.0) ** 2 - 1.0))
            pbar[l, m] = a * (ct * pbar[l - 1, m] - b * pbar[l - 2, m])

    out = np.zeros((lmax + 1, 2 * lmax + 1), dtype=complex)
    ms = np.arange(lmax + 1)
    phase = np.exp(1j * ms * phi)
    sign = np.where(ms % 2 == 0, 1.0, -1.0)
    for l in range(lmax + 1):
        pos = pbar[l, : l + 1] * phase[: l + 1]
        out[l, lmax : lmax + l + 1] = pos
        out[l, lmax - l : lmax][::-1] = sign[1 : l + 1] * np.conj(pos[1:])
    return out


def spherical_harmonic(l, m, theta, phi):
    """Orthonormal spherical harmonic Y_{l,m}(theta, phi)."""
    AngularIndex(l, m)
    return complex(ylm_table(l, theta, phi)[l, l + m])


def _logfact(n):
    return lgamma(n + 1.0)


@lru_cache(maxsize=None)
def cg_spin1(l, j, mu, m):
    """Clebsch-Gordan coefficient <1, l, mu, m-mu | j, m>.

    Couples the photon spin (1, mu) with orbital angular momentum
    (l, m - mu) to total (j, m).  Returns 0.0 whenever a selection rule
    fails.  Evaluated from the Racah closed form with factorials carried
    as logarithms so large l cannot overflow.
    """
    j1, m1, j2, m2 = 1, mu, l, m - mu
    if mu not in (-1, 0, 1) or l < 0 or j < 0:
        return 0.0
    if abs(m) > j or abs(m2) > l or j > l + 1 or j < abs(l - 1):
        return 0.0

    log_pre = 0.5 * (
        log(2 * j + 1)
        + _logfact(j + j1 - j2)
        + _logfact(j - j1 + j2)
        + _logfact(j1 + j2 - j)
        - _logfact(j1 + j2 + j + 1)
        + _logfact(j + m)
        + _logfact(j - m)
        + _logfact(j1 - m1)
        + _logfact(j1 + m1)
        + _logfact(j2 - m2)
        + _logfact(j2 + m2)
    )
    kmin = max(0, j2 - j - m1, j1 - j + m2)
    kmax = min(j1 + j2 - j, j1 - m1, j2 + m2)
    total = 0.0
    for k in range(kmin, kmax + 1):
        log_den = (
            _logfact(k)
            + _logfact(j1 + j2 - j - k)
            + _logfact(j1 - m1 - k)
            + _logfact(j2 + m2 - k)
            + _logfact(j - j2 + m1 + k)
            + _logfact(j - j1 - m2 + k)
        )
        term = exp(log_pre - log_den)
        total += -term if k % 2 else term
    return total
