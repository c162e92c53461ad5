"""Weighted coefficient spaces over the Appell and slice monomial bases.

A weight sequence b assigns the squared-norm weight b_k to the k-th basis
slot; series are finite coefficient vectors tagged with their weight.  All
identities used downstream are coefficientwise, so finite truncations carry
them exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from . import appell
from .errors import OutOfDomain, WeightMismatch
from .quaternion import QuaternionExact, QuaternionFloat, _Quaternion

_SCAN = 64


class WeightSequence:
    """Named or custom positive weight sequence k -> b_k (exact rationals).

    ``non_decreasing`` records whether the scanned prefix is non-decreasing;
    it is informational and never enforced.  ``radius`` is the convergence
    radius of sum_k s^k / b_k, which gates kernel and bound evaluations.
    """

    __slots__ = ("name", "non_decreasing", "radius", "_gen", "note")

    def __init__(self, name: str, gen: Callable[[int], Fraction],
                 non_decreasing: bool | None = None,
                 radius: float | None = None,
                 note: str = ""):
        self.name = name
        self._gen = lru_cache(maxsize=None)(gen)
        values = [self._gen(k) for k in range(_SCAN + 1)]
        if any(v <= 0 for v in values[1:]) or values[0] <= 0:
            raise ValueError("weights must be strictly positive")
        if non_decreasing is None:
            non_decreasing = all(values[k] <= values[k + 1] for k in range(_SCAN))
        self.non_decreasing = non_decreasing
        self.radius = self._ratio_radius() if radius is None else radius
        self.note = note

    def __call__(self, k: int) -> Fraction:
        if k < 0:
            raise IndexError("weight index must be non-negative")
        return self._gen(k)

    def _ratio_radius(self) -> float:
        # d'Alembert estimate on the tail of the scanned prefix
        hi = float(self._gen(_SCAN) / self._gen(_SCAN - 1))
        lo = float(self._gen(_SCAN // 2) / self._gen(_SCAN // 2 - 1))
        if hi > 4.0 and hi > 1.5 * lo:
            return math.inf
        return 2.0 * hi - lo if hi < lo else hi

    def __eq__(self, other):
        if not isinstance(other, WeightSequence):
            return NotImplemented
        return self.name == other.name and all(self(k) == other(k) for k in range(17))

    def __hash__(self):
        return hash((self.name, tuple(self._gen(k) for k in range(8))))

    def __repr__(self):
        return f"WeightSequence({self.name!r})"


@lru_cache(maxsize=None)
def hardy() -> WeightSequence:
    return WeightSequence("hardy", lambda k: Fraction(1), radius=1.0)


@lru_cache(maxsize=None)
def fock() -> WeightSequence:
    return WeightSequence("fock", lambda k: Fraction(math.factorial(k)), radius=math.inf)


@lru_cache(maxsize=None)
def dirichlet() -> WeightSequence:
    # k = 0 entry overridden to 1 to keep the inner product definite.
    return WeightSequence("dirichlet", lambda k: Fraction(max(k, 1)), radius=1.0,
                          note="k = 0 weight overridden from 0 to 1")


@lru_cache(maxsize=None)
def bergman() -> WeightSequence:
    return WeightSequence("bergman", lambda k: Fraction(1, k + 1), radius=1.0)


def custom(name: str, gen: Callable[[int], Fraction], radius: float | None = None,
           note: str = "") -> WeightSequence:
    return WeightSequence(name, gen, radius=radius, note=note)


NAMED_WEIGHTS = {"hardy": hardy, "fock": fock, "dirichlet": dirichlet, "bergman": bergman}


# -- series -------------------------------------------------------------------


def _coerce_coefficients(coefficients) -> tuple[_Quaternion, ...]:
    out = []
    for c in coefficients:
        if isinstance(c, _Quaternion):
            out.append(c)
        elif isinstance(c, (int, Fraction)):
            out.append(QuaternionExact(c))
        elif isinstance(c, float):
            out.append(QuaternionFloat(c))
        else:
            raise TypeError(f"bad coefficient {c!r}")
    return tuple(out)


@dataclass(frozen=True)
class AppellSeries:
    """Finite series sum_k Q_k alpha_k tagged with its weight sequence."""

    coefficients: tuple[_Quaternion, ...]
    weight: WeightSequence

    def __post_init__(self):
        object.__setattr__(self, "coefficients", _coerce_coefficients(self.coefficients))

    @property
    def truncation(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, k: int) -> _Quaternion:
        if 0 <= k < len(self.coefficients):
            return self.coefficients[k]
        return QuaternionExact(0)

    def scale_right(self, factor) -> "AppellSeries":
        return type(self)(tuple(c * factor for c in self.coefficients), self.weight)

    def __add__(self, other):
        _require_same_space(self, other)
        n = max(len(self.coefficients), len(other.coefficients))
        return type(self)(tuple(self.coefficient(k) + other.coefficient(k) for k in range(n)),
                          self.weight)

    def __sub__(self, other):
        _require_same_space(self, other)
        n = max(len(self.coefficients), len(other.coefficients))
        return type(self)(tuple(self.coefficient(k) - other.coefficient(k) for k in range(n)),
                          self.weight)

    def is_exact(self) -> bool:
        return all(isinstance(c, QuaternionExact) for c in self.coefficients)


@dataclass(frozen=True)
class SliceSeries(AppellSeries):
    """Finite series sum_k q^k a_k in the slice monomial basis."""


def _require_same_space(f, g):
    if type(f) is not type(g):
        raise WeightMismatch(f"cannot mix {type(f).__name__} and {type(g).__name__}")
    if f.weight != g.weight:
        raise WeightMismatch(f"weights {f.weight.name} and {g.weight.name} differ")


def unit_series(k: int, weight: WeightSequence, cls=AppellSeries,
                value=1) -> AppellSeries:
    """Series with a single coefficient at slot k."""
    coeffs = [QuaternionExact(0)] * k + [QuaternionExact(value)
                                         if not isinstance(value, _Quaternion) else value]
    return cls(tuple(coeffs), weight)


# -- inner product and norms ----------------------------------------------------


def inner(f: AppellSeries, g: AppellSeries) -> _Quaternion:
    """Hermitian product sum_k b_k conj(alpha_k) beta_k, right-linear in g."""
    _require_same_space(f, g)
    n = max(len(f.coefficients), len(g.coefficients))
    acc: _Quaternion = QuaternionExact(0)
    for k in range(n):
        a = f.coefficient(k)
        b = g.coefficient(k)
        if a.is_zero or b.is_zero:
            continue
        w = f.weight(k)
        term = a.conj() * b
        acc = acc + term * (w if not isinstance(term, QuaternionFloat) else float(w))
    return acc


def norm_sq(f: AppellSeries):
    """Exact squared norm sum_k b_k |alpha_k|^2 (Fraction for exact series)."""
    acc = Fraction(0) if f.is_exact() else 0.0
    for k, c in enumerate(f.coefficients):
        if c.is_zero:
            continue
        w = f.weight(k)
        acc = acc + (w if f.is_exact() else float(w)) * c.norm_sq()
    return acc


def norm(f: AppellSeries) -> float:
    return math.sqrt(float(norm_sq(f)))


def eval_series(f: AppellSeries, q: _Quaternion) -> _Quaternion:
    """Evaluate the series at q (Appell basis uses Q_k, slice basis uses q^k)."""
    slice_basis = isinstance(f, SliceSeries)
    exact = f.is_exact() and isinstance(q, QuaternionExact)
    point = q if exact else (q if isinstance(q, QuaternionFloat) else q.to_float())
    acc: _Quaternion = QuaternionExact(0) if exact else QuaternionFloat(0.0)
    basis = None if slice_basis else appell.qk_eval_upto(f.truncation, point)
    power = QuaternionExact(1) if exact else QuaternionFloat(1.0)
    for k, alpha in enumerate(f.coefficients):
        basis_val = power if slice_basis else basis[k]
        if not alpha.is_zero:
            a = alpha if exact else (alpha if isinstance(alpha, QuaternionFloat) else alpha.to_float())
            acc = acc + basis_val * a
        if slice_basis:
            power = power * point
    return acc


# -- pointwise bounds ------------------------------------------------------------


def _bound_series_value(weight: WeightSequence, s: float, support: int) -> float:
    """Value of sum_k s^k / b_k; closed forms for the named weights, the
    finite truncation bound (exact on the support) otherwise."""
    if weight.name == "fock":
        return math.exp(s)
    if s >= weight.radius:
        raise OutOfDomain(f"|q| out of range for weight {weight.name}")
    if weight.name == "hardy":
        return 1.0 / (1.0 - s)
    if weight.name == "dirichlet":
        return 1.0 - math.log1p(-s)
    if weight.name == "bergman":
        return 1.0 / (1.0 - s) ** 2
    return sum(s ** k / float(weight(k)) for k in range(support + 1))


def pointwise_bound(f: AppellSeries, q: _Quaternion) -> float:
    """Upper bound sqrt(sum_k |q|^{2k} / b_k) * ||f|| for |f(q)|."""
    s = float(abs(q)) ** 2
    if s >= weight_radius_sq(f.weight):
        raise OutOfDomain(f"|q|^2 = {s} outside the domain of weight {f.weight.name}")
    total = _bound_series_value(f.weight, s, f.truncation)
    return math.sqrt(total) * norm(f)


def weight_radius_sq(weight: WeightSequence) -> float:
    return weight.radius


# -- reproducing kernel ------------------------------------------------------------


def kernel_eval(weight: WeightSequence, q: _Quaternion, p: _Quaternion,
                trunc: int) -> tuple[_Quaternion, float]:
    """Partial kernel sum_{k<=N} Q_k(q) conj(Q_k(p)) / b_k with a tail bound.

    The tail bound sum_{k>N} (|q||p|)^k / b_k follows from |Q_k(q)| <= |q|^k.
    Exact arguments give an exact partial sum.
    """
    s = float(abs(q)) * float(abs(p))
    if s >= weight.radius:
        raise OutOfDomain(f"|q||p| = {s} outside the kernel domain of {weight.name}")
    exact = isinstance(q, QuaternionExact) and isinstance(p, QuaternionExact)
    if not exact:
        q = q if isinstance(q, QuaternionFloat) else q.to_float()
        p = p if isinstance(p, QuaternionFloat) else p.to_float()
    values_q = appell.qk_eval_upto(trunc, q)
    values_p = appell.qk_eval_upto(trunc, p)
    acc: _Quaternion = QuaternionExact(0) if exact else QuaternionFloat(0.0)
    for k in range(trunc + 1):
        term = values_q[k] * values_p[k].conj()
        w = weight(k)
        acc = acc + term * ((1 / w) if exact else (1.0 / float(w)))
    return acc, _kernel_tail(weight, s, trunc)


def _kernel_tail(weight: WeightSequence, s: float, trunc: int) -> float:
    if s == 0.0:
        return 0.0
    term = 1.0
    for k in range(trunc + 1):
        term *= s * float(weight(k) / weight(k + 1))
    # term == s^{trunc+1} / b_{trunc+1}
    tail = 0.0
    k = trunc + 1
    while term > 1e-320 and k < trunc + 20_000:
        tail += term
        term *= s * float(weight(k) / weight(k + 1))
        k += 1
        if tail > 0 and term / tail < 1e-18:
            tail += term / (1.0 - min(s, 0.999999))
            break
    return tail


def kernel_section(weight: WeightSequence, p: _Quaternion, trunc: int) -> AppellSeries:
    """Series K_p with coefficients conj(Q_k(p)) / b_k up to the truncation."""
    exact = isinstance(p, QuaternionExact)
    values = appell.qk_eval_upto(trunc, p)
    coeffs = []
    for k in range(trunc + 1):
        w = weight(k)
        coeffs.append(values[k].conj() * ((1 / w) if exact else (1.0 / float(w))))
    return AppellSeries(tuple(coeffs), weight)


def reproducing_check(weight: WeightSequence, p: _Quaternion, f: AppellSeries,
                      trunc: int | None = None) -> float:
    """Defect |<K_p, f> - f(p)|; zero in exact arithmetic for polynomials."""
    if trunc is None:
        trunc = f.truncation
    if trunc < f.truncation:
        raise ValueError("kernel section must be truncated at or above the series")
    section = kernel_section(weight, p, trunc)
    lhs = inner(section, f)
    rhs = eval_series(f, p)
    return abs(lhs - rhs)


# -- grid export --------------------------------------------------------------------


def kernel_grid_rows(weight: WeightSequence, points_q: Sequence[_Quaternion],
                     points_p: Sequence[_Quaternion], trunc: int):
    """Rows (q components, p components, kernel components, tail) for CSV export."""
    for q in points_q:
        for p in points_p:
            value, tail = kernel_eval(weight, q, p, trunc)
            vf = value.to_float()
            yield (*(float(c) for c in q.components()),
                   *(float(c) for c in p.components()),
                   vf.x0, vf.x1, vf.x2, vf.x3, tail)
