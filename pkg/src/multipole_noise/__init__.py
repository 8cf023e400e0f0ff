"""Vacuum noise of quantised multipole radiation fields."""
__version__ = "0.1.0"

from .angular import AngularIndex, assoc_legendre, cg_spin1, spherical_harmonic
from .errors import (
    CalibrationError,
    DomainError,
    MultipoleError,
    PhysicalDivergenceError,
    ThresholdAmbiguityError,
    ThresholdNotFoundError,
    UsageError,
)
from .hertz import HertzConfig, axis_scan, two_atom_noise
from .multipole import (
    FieldState,
    ModeIndex,
    RadiationType,
    SphericalPoint,
    field_component,
    helicity_components,
    mode_function,
)
from .radial import RadialKind, sph_bessel_j, sph_hankel, sph_neumann_y
from .vacuum import (
    NoiseSample,
    TruncationSpec,
    calibrate,
    convergence_table,
    noise_ratio,
    plane_baseline,
    radial_scan,
    threshold_kr,
    vacuum_noise,
    wavelength_distance,
)
