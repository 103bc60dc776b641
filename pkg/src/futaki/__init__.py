"""Exact Futaki invariants of Fano complete intersections in projective space."""

from .action import (VectorField, apply_field, block_action, eigenvalue_kappa,
                     normalize_traceless, tangency_certificate)
from .formula import (fano_index, futaki_assembled, futaki_closed_form, hypersurface_futaki,
                      theta_invariant, theta_recursion)
from .localization import LocalizationInstance, fixed_point_sum, theta_oracle
from .multipoly import GaussianRational, Polynomial
from .parser import load_problem, parse_polynomial
from .pipeline import FutakiReport, analyze

__version__ = "0.1.0"
