"""Clifford-Appell polynomials, quaternionic coefficient spaces and transforms."""

from .errors import (AppellKitError, DegreeCapExceeded, DomainError,
                     ExactnessExceeded, ExpansionMismatch, ModeDisagreement,
                     NonRestrictedInput, NotAxial, NotRegular, OutOfDomain,
                     QuadratureFailure, UnitDependence, WeightMismatch)
from .quaternion import (ImaginaryUnit, QuaternionExact, QuaternionFloat,
                         qconj, qexp, qinv, qmul, qnorm, sample_sphere)
from .qpoly import (QPoly, ck_extension, embed_q, embed_qbar, embed_vec,
                    eval_poly, fueter_operator, hyper_derivative, laplacian4,
                    restrict_x0, slice_taylor_real)
from .appell import (appell_expand, axial_decompose, ck, ck_product,
                     exp_truncated, fueter_variable, pk_symbolic, qk_eval,
                     qk_symbolic, synthesize, tjk)
from .spaces import (AppellSeries, SliceSeries, WeightSequence, bergman,
                     custom, dirichlet, eval_series, fock, hardy, inner,
                     kernel_eval, norm, norm_sq, pointwise_bound,
                     reproducing_check, unit_series)
from .operators import (WeightedShiftSpec, adjoint_defect_S, annihilate,
                        backward_M, backward_R_integral,
                        backward_inequality_check, commutator_difference,
                        gamma_recurrence_check, shift_S, weighted_shift)
from .transforms import (HermiteBasis, L2Function, QuadratureRule,
                         bargmann_bf, bargmann_bs_inverse, gauss_hermite_line,
                         gauss_legendre_interval, gaussian_moment,
                         gaussian_plane_polar, hermite_eval, kernel_af,
                         kernel_as, kernel_l_selfproduct, upsilon,
                         upsilon_integral_eval)
from .fueter_map import (FmrRow, b_from_c, fmr_convergence_check,
                         fmr_norm_identity, table1_report, tau_series)

__version__ = "0.1.0"
