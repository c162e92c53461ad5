"""Hermite functions, Gaussian quadrature and the coherent-state transforms.

Two kernels connect the line, the slice monomial basis and the Appell basis:
the slice kernel sum_k q^k eta_k(x)/sqrt(k!) with its Gaussian closed form,
and its Appell-basis analogue with Q_k in place of q^k.  Both transforms are
diagonal in the respective bases, so every integral here has an exact
coefficient counterpart to check against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Sequence

import numpy as np
from scipy.special import roots_hermite, roots_laguerre

from . import appell
from .errors import ExactnessExceeded, QuadratureFailure, UnitDependence
from .quaternion import (ImaginaryUnit, QuaternionExact, QuaternionFloat,
                         _Quaternion, qexp)
from .spaces import AppellSeries, SliceSeries, fock

#: Uniform bound on the orthonormal Hermite functions (crude; the true
#: supremum decays slowly with the index).
HERMITE_SUP_BOUND = 1.0


# -- Hermite functions ---------------------------------------------------------


def hermite_values(n_max: int, x) -> np.ndarray:
    """Orthonormal Hermite functions eta_0..eta_{n_max} at x.

    Parameters
    ----------
    n_max : int
        Largest index to evaluate.
    x : float or array-like
        Evaluation points.

    Returns
    -------
    np.ndarray
        Shape ``(n_max + 1,) + shape(x)``; row n holds eta_n(x).  Rows are
        orthonormal for the plain Lebesgue inner product on the line.
    """
    xs = np.asarray(x, dtype=float)
    out = np.empty((n_max + 1,) + xs.shape, dtype=float)
    out[0] = np.pi ** -0.25 * np.exp(-xs * xs / 2.0)
    if n_max >= 1:
        out[1] = math.sqrt(2.0) * xs * out[0]
    for n in range(2, n_max + 1):
        out[n] = math.sqrt(2.0 / n) * xs * out[n - 1] - math.sqrt((n - 1) / n) * out[n - 2]
    return out


def hermite_eval(n: int, x: float) -> float:
    """Single orthonormal Hermite function value via the stable recurrence."""
    if n < 0:
        raise IndexError("Hermite index must be non-negative")
    return float(hermite_values(n, x)[n])


class HermiteBasis:
    """Evaluation window eta_0..eta_K of the orthonormal Hermite system."""

    def __init__(self, k_max: int):
        self.k_max = k_max

    def eval(self, n: int, x: float) -> float:
        if n > self.k_max:
            raise IndexError(f"index {n} above basis cutoff {self.k_max}")
        return hermite_eval(n, x)

    def values(self, x) -> np.ndarray:
        return hermite_values(self.k_max, x)


# -- quadrature rules ------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Nodes and weights plus the documented polynomial exactness.

    ``kind`` is one of ``gauss-hermite-line`` (integrates f dx for f with
    Gaussian-squared decay), ``gaussian-plane-polar`` (integrates against the
    normalized Gaussian area measure; complex nodes) and
    ``gauss-legendre-interval``.  ``exactness`` is the largest polynomial
    degree integrated exactly; for the plane rule it bounds the radial
    moment order, with ``angular_order`` angles resolving off-diagonal
    moments below that order.
    """

    kind: str
    nodes: np.ndarray
    weights: np.ndarray
    exactness: int
    angular_order: int = 0


def gauss_hermite_line(n: int) -> QuadratureRule:
    """Rule for integrals over the line of Hermite-type integrands.

    Uses Gauss-Hermite nodes with the weights multiplied back by e^{x^2}, so
    any integrand of the form polynomial * e^{-x^2} (degree <= 2n - 1) is
    integrated exactly.
    """
    x, w = roots_hermite(n)
    return QuadratureRule("gauss-hermite-line", x, w * np.exp(x * x), 2 * n - 1)


def gaussian_plane_polar(n_radial: int = 64, n_angular: int = 128) -> QuadratureRule:
    """Rule for the normalized Gaussian measure on a slice plane.

    Gauss-Laguerre in the squared radius composed with equally spaced
    angles: conj(z)^k z^j integrates exactly to k! delta_{kj} whenever
    max(k, j) <= 2 n_radial - 1 and |k - j| < n_angular.
    """
    s, u = roots_laguerre(n_radial)
    theta = 2.0 * np.pi * np.arange(n_angular) / n_angular
    z = np.sqrt(s)[:, None] * np.exp(1j * theta)[None, :]
    w = np.repeat(u[:, None] / n_angular, n_angular, axis=1)
    return QuadratureRule("gaussian-plane-polar", z.ravel(), w.ravel(),
                          2 * n_radial - 1, n_angular)


def gauss_legendre_interval(n: int, a: float = 0.0, b: float = 1.0) -> QuadratureRule:
    x, w = np.polynomial.legendre.leggauss(n)
    return QuadratureRule("gauss-legendre-interval",
                          0.5 * (b - a) * x + 0.5 * (b + a),
                          0.5 * (b - a) * w, 2 * n - 1)


# -- quaternion array helpers ------------------------------------------------------


def _qarr(*quats: _Quaternion) -> np.ndarray:
    return np.array([[float(c) for c in q.components()] for q in quats], dtype=float)


def _qarr_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a0, a1, a2, a3 = (a[..., i] for i in range(4))
    b0, b1, b2, b3 = (b[..., i] for i in range(4))
    return np.stack([
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    ], axis=-1)


def _qarr_conj(a: np.ndarray) -> np.ndarray:
    out = a.copy()
    out[..., 1:] *= -1.0
    return out


def _left_mult_matrix(unit: _Quaternion) -> np.ndarray:
    w1, w2, w3 = (float(unit.x1), float(unit.x2), float(unit.x3))
    return np.array([[0.0, -w1, -w2, -w3],
                     [w1, 0.0, -w3, w2],
                     [w2, w3, 0.0, -w1],
                     [w3, -w2, w1, 0.0]])


def _right_mult_matrix(unit: _Quaternion) -> np.ndarray:
    w1, w2, w3 = (float(unit.x1), float(unit.x2), float(unit.x3))
    return np.array([[0.0, -w1, -w2, -w3],
                     [w1, 0.0, w3, -w2],
                     [w2, -w3, 0.0, w1],
                     [w3, w2, -w1, 0.0]])


def _from_quat(q: _Quaternion) -> np.ndarray:
    return np.array([float(c) for c in q.components()])


def _to_quat(arr: np.ndarray) -> QuaternionFloat:
    return QuaternionFloat(arr[0], arr[1], arr[2], arr[3])


def _slice_values(series: SliceSeries, z: np.ndarray, unit: ImaginaryUnit) -> np.ndarray:
    """Evaluate a slice series at complex nodes embedded as x + unit*y."""
    left = _left_mult_matrix(unit)
    acc = np.zeros(z.shape + (4,))
    power = np.ones_like(z)
    for alpha in series.coefficients:
        a = _from_quat(alpha)
        ua = left @ a
        acc += np.real(power)[..., None] * a + np.imag(power)[..., None] * ua
        power = power * z
    return acc


# -- the slice kernel and its closed form -------------------------------------------


@lru_cache(maxsize=None)
def slice_kernel_constant() -> float:
    """Global constant matching the closed form to the series at (q, x) = (0, 0).

    Measured once and held fixed; with the orthonormal Hermite convention it
    lands at pi^{-1/4}.
    """
    return hermite_eval(0, 0.0)


class SliceKernel(NamedTuple):
    series: QuaternionFloat
    closed: QuaternionFloat
    tail: float
    constant: float


def kernel_as(q: _Quaternion, x: float, trunc: int = 60) -> SliceKernel:
    """Slice coherent-state kernel, computed two ways.

    The series form is sum_{k<=K} q^k eta_k(x)/sqrt(k!); the closed form is
    constant * exp(-(q^2 + x^2)/2 + sqrt(2) q x) evaluated with the
    quaternion exponential (the exponent lies in the slice of q).  The tail
    bound uses |q|^k/sqrt(k!) times the uniform Hermite bound.
    """
    qf = q if isinstance(q, QuaternionFloat) else q.to_float()
    etas = hermite_values(trunc, float(x))
    acc = QuaternionFloat(0.0)
    power = QuaternionFloat(1.0)
    inv_sqrt_fact = 1.0
    for k in range(trunc + 1):
        if k:
            inv_sqrt_fact /= math.sqrt(k)
        acc = acc + power * (float(etas[k]) * inv_sqrt_fact)
        power = power * qf
    exponent = (qf * qf + QuaternionFloat(float(x) ** 2)) * (-0.5) + qf * (math.sqrt(2.0) * float(x))
    closed = qexp(exponent) * slice_kernel_constant()
    return SliceKernel(acc, closed, _power_sqrt_fact_tail(abs(qf), trunc), slice_kernel_constant())


def _power_sqrt_fact_tail(r: float, trunc: int) -> float:
    term = HERMITE_SUP_BOUND
    for m in range(1, trunc + 2):
        term *= r / math.sqrt(m)
    tail = 0.0
    k = trunc + 1
    while term > 1e-320 and k < trunc + 100_000:
        tail += term
        k += 1
        term *= r / math.sqrt(k)
        if tail and term / tail < 1e-18:
            tail += 2.0 * term
            break
    return tail


def kernel_af(q: _Quaternion, x: float, trunc: int = 60) -> tuple[QuaternionFloat, float]:
    """Appell-basis kernel sum_{k<=K} Q_k(q) eta_k(x)/sqrt(k!) with tail bound.

    The tail estimate combines |Q_k(q)| <= |q|^k with the uniform Hermite
    bound; it is crude but honest.
    """
    qf = q if isinstance(q, QuaternionFloat) else q.to_float()
    etas = hermite_values(trunc, float(x))
    values = appell.qk_eval_upto(trunc, qf)
    acc = QuaternionFloat(0.0)
    inv_sqrt_fact = 1.0
    for k in range(trunc + 1):
        if k:
            inv_sqrt_fact /= math.sqrt(k)
        acc = acc + values[k] * (float(etas[k]) * inv_sqrt_fact)
    return acc, _power_sqrt_fact_tail(abs(qf), trunc)


# -- L^2 data ------------------------------------------------------------------------


@dataclass(frozen=True)
class L2Function:
    """Square-integrable data given by its Hermite coefficient vector."""

    coefficients: tuple[_Quaternion, ...]

    @property
    def k_max(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, k: int) -> _Quaternion:
        if 0 <= k < len(self.coefficients):
            return self.coefficients[k]
        return QuaternionExact(0)

    def norm_sq(self):
        acc: Fraction | float = Fraction(0)
        for c in self.coefficients:
            acc = acc + c.norm_sq()
        return acc

    def norm(self) -> float:
        return math.sqrt(float(self.norm_sq()))

    def values(self, x: np.ndarray) -> np.ndarray:
        """Pointwise values as a quaternion component array."""
        etas = hermite_values(self.k_max, x)
        beta = np.array([[float(c) for c in q.components()] for q in self.coefficients])
        return np.einsum("kn,kc->nc", etas.reshape(len(beta), -1), beta).reshape(x.shape + (4,))


def unit_l2(k: int, value=1) -> L2Function:
    coeffs = [QuaternionExact(0)] * k + [value if isinstance(value, _Quaternion)
                                         else QuaternionExact(value)]
    return L2Function(tuple(coeffs))


# -- the two transforms ----------------------------------------------------------------


def bargmann_bf(phi: L2Function, mode: str = "coefficients",
                rule: QuadratureRule | None = None, tol: float = 1e-8) -> AppellSeries:
    """Transform of Hermite data into the factorial-weight Appell space.

    In coefficient mode the transform is the diagonal map
    alpha_k = beta_k / sqrt(k!).  Quadrature mode recomputes the projections
    beta_k = integral eta_k(x) phi(x) dx with a line rule and must agree with
    the exact coefficients within ``tol``.
    """
    betas = [c if isinstance(c, QuaternionFloat) else c.to_float() for c in phi.coefficients]
    if mode == "quadrature":
        if rule is None:
            rule = gauss_hermite_line(80)
        if rule.kind != "gauss-hermite-line":
            raise ValueError("quadrature mode needs a line rule")
        etas = hermite_values(phi.k_max, rule.nodes)
        phi_vals = phi.values(rule.nodes)
        projections = np.einsum("n,kn,nc->kc", rule.weights, etas, phi_vals)
        scale = 1.0 + phi.norm()
        for k, beta in enumerate(betas):
            defect = float(np.max(np.abs(projections[k] - _from_quat(beta))))
            if defect > tol * scale:
                raise QuadratureFailure(
                    f"Hermite projection {k} off by {defect:.3e}")
        betas = [_to_quat(projections[k]) for k in range(len(betas))]
    elif mode != "coefficients":
        raise ValueError(f"unknown mode {mode!r}")
    coeffs = []
    inv_sqrt_fact = 1.0
    for k, beta in enumerate(betas):
        if k:
            inv_sqrt_fact /= math.sqrt(k)
        coeffs.append(beta * inv_sqrt_fact)
    return AppellSeries(tuple(coeffs), fock())


def bf_isometry_exact(phi: L2Function) -> bool:
    """Exact rational form of the isometry: sum k! |beta_k|^2/k! = ||phi||^2.

    The squared transform coefficients are |beta_k|^2 / k! exactly, so the
    identity never touches an irrational square root.
    """
    lhs = Fraction(0)
    for k, beta in enumerate(phi.coefficients):
        if not isinstance(beta, QuaternionExact):
            raise TypeError("exact isometry check needs exact coefficients")
        alpha_sq = beta.norm_sq() / math.factorial(k)
        lhs += math.factorial(k) * alpha_sq
    return lhs == phi.norm_sq()


def bargmann_bs_inverse(f: SliceSeries, unit: ImaginaryUnit,
                        mode: str = "coefficients",
                        rule: QuadratureRule | None = None,
                        tol: float = 1e-8) -> L2Function:
    """Inverse slice transform: slice Fock data back to Hermite coefficients.

    Coefficient mode is the diagonal map beta_k = a_k sqrt(k!).  Quadrature
    mode computes beta_k = (1/sqrt(k!)) integral conj(z)^k f_i(z) dmu(z)
    over the slice of ``unit`` with a plane rule and must agree within
    ``tol``.
    """
    exact_betas = []
    sqrt_fact = 1.0
    for k, a in enumerate(f.coefficients):
        if k:
            sqrt_fact *= math.sqrt(k)
        af = a if isinstance(a, QuaternionFloat) else a.to_float()
        exact_betas.append(af * sqrt_fact)
    if mode == "coefficients":
        return L2Function(tuple(exact_betas))
    if mode != "quadrature":
        raise ValueError(f"unknown mode {mode!r}")
    if rule is None:
        rule = gaussian_plane_polar()
    if rule.kind != "gaussian-plane-polar":
        raise ValueError("quadrature mode needs a plane rule")
    if f.truncation > rule.exactness or f.truncation >= max(rule.angular_order, 1):
        raise ExactnessExceeded("series truncation beyond rule exactness")
    z = rule.nodes
    fvals = _slice_values(f, z, unit)
    left = _left_mult_matrix(unit)
    betas = []
    power = np.ones_like(z)
    sqrt_fact = 1.0
    scale = 1.0 + math.sqrt(float(sum(c.norm_sq() for c in f.coefficients)))
    for k in range(f.truncation + 1):
        if k:
            sqrt_fact *= math.sqrt(k)
        zbar_k = np.conj(power)
        integrand = (np.real(zbar_k)[:, None] * fvals
                     + np.imag(zbar_k)[:, None] * (fvals @ left.T))
        beta_arr = np.einsum("n,nc->c", rule.weights, integrand) / sqrt_fact
        defect = float(np.max(np.abs(beta_arr - _from_quat(exact_betas[k]))))
        if defect > tol * scale:
            raise QuadratureFailure(f"plane projection {k} off by {defect:.3e}")
        betas.append(_to_quat(beta_arr))
        power = power * z
    return L2Function(tuple(betas))


# -- the bridge between the two Fock pictures ---------------------------------------------


def upsilon(f: SliceSeries) -> AppellSeries:
    """Bridge operator: slice coefficients become Appell coefficients."""
    return AppellSeries(f.coefficients, fock())


def upsilon_composite(f: SliceSeries, unit: ImaginaryUnit,
                      mode: str = "coefficients",
                      rule: QuadratureRule | None = None) -> AppellSeries:
    """Bridge realized as the transform composition through the line."""
    return bargmann_bf(bargmann_bs_inverse(f, unit, mode=mode, rule=rule), mode="coefficients")


def _l_kernel_values(q: _Quaternion, z: np.ndarray, unit: ImaginaryUnit,
                     trunc: int) -> np.ndarray:
    """Values of sum_{k<=K} Q_k(q) conj(z)^k / k! at the plane nodes."""
    qf = q if isinstance(q, QuaternionFloat) else q.to_float()
    right = _right_mult_matrix(unit)
    acc = np.zeros(z.shape + (4,))
    power = np.ones_like(z)
    values = appell.qk_eval_upto(trunc, qf)
    inv_fact = 1.0
    for k in range(trunc + 1):
        if k:
            inv_fact /= k
        qk = _from_quat(values[k])
        qk_u = right @ qk
        zbar_k = np.conj(power)
        acc += inv_fact * (np.real(zbar_k)[..., None] * qk
                           + np.imag(zbar_k)[..., None] * qk_u)
        power = power * z
    return acc


def upsilon_integral_eval(f: SliceSeries, unit: ImaginaryUnit, q: _Quaternion,
                          rule: QuadratureRule | None = None,
                          trunc: int | None = None) -> QuaternionFloat:
    """Pointwise bridge value via the plane integral of the degree kernel."""
    if rule is None:
        rule = gaussian_plane_polar()
    if trunc is None:
        trunc = f.truncation
    needed = max(trunc, f.truncation)
    if needed > rule.exactness or needed >= max(rule.angular_order, 1):
        raise ExactnessExceeded("kernel truncation beyond rule exactness")
    z = rule.nodes
    lvals = _l_kernel_values(q, z, unit, trunc)
    fvals = _slice_values(f, z, unit)
    integrand = _qarr_mul(lvals, fvals)
    return _to_quat(np.einsum("n,nc->c", rule.weights, integrand))


def upsilon_unit_spread(f: SliceSeries, q: _Quaternion, units: Sequence[ImaginaryUnit],
                        rule: QuadratureRule | None = None,
                        tol: float | None = None) -> float:
    """Largest pairwise distance of the integral bridge across units.

    Raises UnitDependence when a tolerance is given and exceeded.
    """
    values = [upsilon_integral_eval(f, u, q, rule=rule) for u in units]
    spread = 0.0
    for a in values:
        for b in values:
            spread = max(spread, abs(a - b))
    if tol is not None and spread > tol:
        raise UnitDependence(f"bridge integral varies by {spread:.3e} across units")
    return spread


# -- Gaussian moments and kernel self-products ----------------------------------------------


def gaussian_moment(k: int, j: int, rule: QuadratureRule | None = None) -> float:
    """Moment of conj(z)^k z^j against the normalized Gaussian measure.

    Equals k! delta_{kj}; raises ExactnessExceeded outside the rule's
    documented exact range.
    """
    if rule is None:
        rule = gaussian_plane_polar()
    if rule.kind != "gaussian-plane-polar":
        raise ValueError("moments need a plane rule")
    if max(k, j) > rule.exactness or abs(k - j) >= max(rule.angular_order, 1):
        raise ExactnessExceeded(f"moment ({k}, {j}) beyond rule exactness")
    z = rule.nodes
    value = np.sum(rule.weights * np.conj(z) ** k * z ** j)
    return float(np.real(value))


def moment_matrix(k_max: int, rule: QuadratureRule | None = None) -> np.ndarray:
    if rule is None:
        rule = gaussian_plane_polar()
    out = np.empty((k_max + 1, k_max + 1))
    for k in range(k_max + 1):
        for j in range(k_max + 1):
            out[k, j] = gaussian_moment(k, j, rule)
    return out


def kernel_l_selfproduct(q: _Quaternion, p: _Quaternion,
                         rule: QuadratureRule | None = None,
                         trunc: int = 16,
                         unit: ImaginaryUnit | None = None) -> QuaternionFloat:
    """Plane integral of L(q, z) conj(L(p, z)); reproduces the factorial kernel."""
    if rule is None:
        rule = gaussian_plane_polar()
    if trunc > rule.exactness or trunc >= max(rule.angular_order, 1):
        raise ExactnessExceeded("kernel truncation beyond rule exactness")
    if unit is None:
        unit = ImaginaryUnit(1, 0, 0)
    z = rule.nodes
    lq = _l_kernel_values(q, z, unit, trunc)
    lp = _l_kernel_values(p, z, unit, trunc)
    integrand = _qarr_mul(lq, _qarr_conj(lp))
    return _to_quat(np.einsum("n,nc->c", rule.weights, integrand))


def exp_monomial_moment(x: float, n: int, rule: QuadratureRule | None = None,
                        trunc: int = 40) -> float:
    """Plane integral of e^{x conj(z)} z^n, truncating the exponential; equals x^n."""
    if rule is None:
        rule = gaussian_plane_polar()
    if trunc > rule.exactness or abs(trunc - n) >= max(rule.angular_order, 1):
        raise ExactnessExceeded("truncation beyond rule exactness")
    z = rule.nodes
    zbar = np.conj(z)
    kernel = np.zeros_like(z)
    term = np.ones_like(z)
    for k in range(trunc + 1):
        if k:
            term = term * (x * zbar / k)
        kernel = kernel + term
    value = np.sum(rule.weights * kernel * z ** n)
    return float(np.real(value))
