"""Closed-form checks run by ``multipole-noise selftest``."""
from dataclasses import dataclass
from math import ceil, pi

import numpy as np

from .angular import ylm_table
from .multipole import SphericalPoint
from .radial import bessel_j_array, neumann_y_array
from .vacuum import TruncationSpec, vacuum_noise


@dataclass
class CheckResult:
    name: str
    error: float
    tol: float

    @property
    def passed(self):
        return bool(self.error <= self.tol)


def origin_value():
    return max(
        abs(vacuum_noise(SphericalPoint(0.0, 0.7, 1.3), "standing", TruncationSpec(j)) - 1 / (2 * pi))
        for j in (1, 5, 10)
    )


def unsold():
    # fixed angle grid: no randomness in the tool
    worst = 0.0
    for theta in np.linspace(0.05, pi - 0.05, 7):
        for phi in np.linspace(0.0, 2 * pi, 5, endpoint=False):
            y = ylm_table(20, theta, phi)
            got = (np.abs(y) ** 2).sum(axis=1)
            want = (2 * np.arange(21) + 1) / (4 * pi)
            worst = max(worst, float(np.max(np.abs(got - want))))
    return worst


def plane_wave_identity():
    worst = 0.0
    for x in (0.5, 2.5, 10.0, 20.0):
        top = ceil(x) + 40
        j = bessel_j_array(top, x)
        worst = max(worst, abs(float(np.sum((2 * np.arange(top + 1) + 1) * j**2)) - 1.0))
    return worst


def wronskian():
    worst = 0.0
    for x in np.geomspace(0.1, 50.0, 20):
        j = bessel_j_array(31, x)
        y = neumann_y_array(31, x)
        for l in range(0, 31):
            # j_l y_l' - j_l' y_l, with f_0' = -f_1 and
            # f_l' = f_{l-1} - (l+1) f_l / x otherwise
            if l == 0:
                w = j[1] * y[0] - j[0] * y[1]
            else:
                w = j[l] * y[l - 1] - j[l - 1] * y[l]
            worst = max(worst, abs(float(w * x * x) - 1.0))
    return worst


CHECKS = [
    ("origin value 1/(2 pi)", origin_value, 1e-12),
    ("Unsold sum rule", unsold, 1e-12),
    ("plane-wave expansion identity", plane_wave_identity, 1e-10),
    ("Wronskian", wronskian, 1e-10),
]


def run_checks(tolerance_scale=1.0):
    return [CheckResult(name, fn(), tol * tolerance_scale) for name, fn, tol in CHECKS]
