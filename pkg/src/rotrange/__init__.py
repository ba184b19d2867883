"""Certify and draw numerical ranges invariant under rotation by 2 pi/d."""

from .boundary import (BoundarySample, FlatSegment, GeometryReport, boundary_curve,
                       detect_flat_parts, detect_polygon, polar_radius, rotation_distance,
                       support, support_derivative, validate_geometry)
from .certify import (ExtractedP, SymmetryCertificate, certify, extended_harmonic_check,
                      extract_P, normalize, simplified_conditions, symmetry_phase)
from .errors import *  # noqa: F401,F403
from .families import (D4FamilySpec, PermFamilySpec, ResultantReport, d3_charpoly_closed,
                       d3_structure_check, d4_family, d4_invariance_residuals, d4_parameters,
                       disk_counterexample, perm_canonical_form, perm_family, resultant_closed)
from .linalg import (HermitianSpectrum, determinant, hermitian_eigenvalues, hermitian_part,
                     singular_values, spectral_norm)
from .trig import (TrigPolynomial, charpoly_at, charpoly_theta, newton_to_elementary,
                   power_traces, sylvester_resultant)

__version__ = "0.1.0"
