"""Shift, annihilation, weighted shift and backward shift operators on series.

All operators act on the coefficient vectors of Appell-basis series; their
defining symbolic identities (extension products, the hypercomplex
derivative) are exposed as separate validation helpers so the coefficient
action can be cross-checked against the polynomial picture.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple

import numpy as np

from . import appell
from .errors import QuadratureFailure, WeightMismatch
from .qpoly import QPoly, hyper_derivative
from .quaternion import QuaternionExact, _Quaternion
from .spaces import AppellSeries, inner, norm_sq


def shift_S(f: AppellSeries) -> AppellSeries:
    """Creation shift: sum Q_k alpha_k -> sum Q_{k+1} alpha_k."""
    return AppellSeries((QuaternionExact(0),) + f.coefficients, f.weight)


def annihilate(f: AppellSeries) -> AppellSeries:
    """Hypercomplex derivative on coefficients: alpha'_k = (k+1) alpha_{k+1}."""
    coeffs = tuple(f.coefficient(k + 1) * (k + 1) for k in range(len(f.coefficients) - 1))
    return AppellSeries(coeffs or (QuaternionExact(0),), f.weight)


def annihilate_symbolic(f: AppellSeries) -> AppellSeries:
    """Same operator computed through the synthesized polynomial."""
    poly = appell.synthesize(f.coefficients)
    derived = hyper_derivative(poly)
    coeffs = appell.appell_expand(derived) if not derived.is_zero else (QuaternionExact(0),)
    return AppellSeries(coeffs, f.weight)


def shift_ck_defect(k: int) -> QPoly:
    """Symbolic difference between the shift on Q_k and its product form.

    The product form is (c_{k+1} / (c_1 c_k)) Q_1 ** Q_k (extension product),
    which must equal Q_{k+1} identically.
    """
    factor = appell.ck(1 + k) / (appell.ck(1) * appell.ck(k))
    produced = appell.ck_product(appell.qk_symbolic(1), appell.qk_symbolic(k)).scale_left(factor)
    return produced - appell.qk_symbolic(k + 1)


def mbshift_constant(k: int) -> Fraction:
    """Rational factor c_k / (c_1 c_{k-1}) of the backward product form."""
    return appell.ck(k) / (appell.ck(1) * appell.ck(k - 1))


def mbshift_ck_defect(k: int) -> QPoly:
    """Check of the backward product constant through the forward product.

    Verifies Q_1 ** Q_{k-1} = (c_1 c_{k-1} / c_k) Q_k symbolically; the
    backward action constant is exactly the inverse of that factor.
    """
    forward = appell.ck_product(appell.qk_symbolic(1), appell.qk_symbolic(k - 1))
    expected = appell.qk_symbolic(k).scale_left(1 / mbshift_constant(k))
    return forward - expected


@dataclass(frozen=True)
class WeightedShiftSpec:
    """Sequence gamma driving the weighted shift Q_k -> gamma_k Q_{k+1}."""

    gamma: Callable[[int], Fraction | float]

    def __post_init__(self):
        g0 = self.gamma(0)
        if g0 != 1:
            raise ValueError(f"gamma_0 must be 1, got {g0}")


def constant_gamma(value=1) -> WeightedShiftSpec:
    return WeightedShiftSpec(lambda k: Fraction(1) if k == 0 else Fraction(value))


def weighted_shift(spec: WeightedShiftSpec, f: AppellSeries) -> AppellSeries:
    coeffs = [QuaternionExact(0)]
    for k, alpha in enumerate(f.coefficients):
        coeffs.append(alpha * spec.gamma(k))
    return AppellSeries(tuple(coeffs), f.weight)


def gamma_recurrence_check(spec: WeightedShiftSpec, k_max: int, tol: float = 1e-12) -> bool:
    """True when (k+1) gamma_k - k gamma_{k-1} = 1 for 1 <= k <= k_max."""
    for k in range(1, k_max + 1):
        lhs = (k + 1) * spec.gamma(k) - k * spec.gamma(k - 1)
        if isinstance(lhs, Fraction):
            if lhs != 1:
                return False
        elif abs(lhs - 1.0) > tol:
            return False
    return True


def weighted_commutator(spec: WeightedShiftSpec, f: AppellSeries) -> AppellSeries:
    """Difference (d/2) T_gamma - T_gamma (d/2) applied to f."""
    return annihilate(weighted_shift(spec, f)) - weighted_shift(spec, annihilate(f))


def commutator_difference(f: AppellSeries) -> AppellSeries:
    """(d/2) S - S (d/2); the identity operator on series."""
    return annihilate(shift_S(f)) - shift_S(annihilate(f))


def commutator_literal(f: AppellSeries) -> AppellSeries:
    """Literal bracket [A, B] = AB - BA of A = (d/2)S and B = S(d/2).

    Both composites are diagonal, so this reading is the zero operator; it
    is reported alongside the difference reading, which is the identity.
    """
    a = lambda g: annihilate(shift_S(g))
    b = lambda g: shift_S(annihilate(g))
    return a(b(f)) - b(a(f))


def adjoint_defect_S(f: AppellSeries, g: AppellSeries) -> float:
    """|<(d/2) f, g> - <f, S g>| under the factorial weight."""
    if f.weight.name != "fock" or g.weight.name != "fock":
        raise WeightMismatch("adjoint pairing is stated for the factorial weight")
    lhs = inner(annihilate(f), g)
    rhs = inner(f, shift_S(g))
    return abs(lhs - rhs)


def backward_M(f: AppellSeries) -> AppellSeries:
    """Backward shift: drops alpha_0, M(Q_k) = Q_{k-1}."""
    coeffs = f.coefficients[1:] or (QuaternionExact(0),)
    return AppellSeries(coeffs, f.weight)


def _legendre_01(nodes: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(nodes)
    return 0.5 * (x + 1.0), 0.5 * w


def backward_R_integral(f: AppellSeries, nodes: int = 64, eps: float = 0.0,
                        check: bool = True, tol: float = 1e-10) -> AppellSeries:
    """Backward shift through the scaling integral.

    Integrates t -> (1/t) (d/2)[f(t q)] over [eps, 1] with Gauss-Legendre
    nodes; termwise the integrand is k t^{k-1} Q_{k-1}(q), which extends
    continuously to t = 0, so eps = 0 is the default.  For eps > 0 the exact
    answer carries the factor (1 - eps^k) per slot.  With eps = 0 the result
    must match the coefficient backward shift within ``tol``.
    """
    t, w = _legendre_01(nodes)
    if eps:
        t = eps + (1.0 - eps) * t
        w = (1.0 - eps) * w
    coeffs = []
    defect = 0.0
    for k in range(1, len(f.coefficients)):
        weight_k = float(k * np.sum(w * t ** (k - 1)))
        alpha = f.coefficient(k)
        coeffs.append(alpha.to_float() * weight_k)
        if eps == 0.0:
            defect = max(defect, abs(weight_k - 1.0) * max(1.0, abs(alpha)))
    if check and eps == 0.0 and defect > tol:
        raise QuadratureFailure(f"integral backward shift off by {defect:.3e}")
    return AppellSeries(tuple(coeffs) or (QuaternionExact(0),), f.weight)


class BackwardBound(NamedTuple):
    lhs: Fraction | float
    rhs: Fraction | float
    equality_expected: bool


def backward_inequality_check(f: AppellSeries) -> BackwardBound:
    """Both sides of ||R f||^2 <= ||f||^2 - |f(0)|^2 under a non-decreasing weight.

    Equality holds when the weight is constant (the Hardy case).
    """
    if not f.weight.non_decreasing:
        raise ValueError("bound requires a non-decreasing weight")
    lhs = norm_sq(backward_M(f))
    rhs = norm_sq(f) - f.coefficient(0).norm_sq()
    return BackwardBound(lhs, rhs, f.weight.name == "hardy")
