"""Polynomials in the four real variables x0..x3 with quaternion coefficients.

A polynomial is a sparse map from exponent tuples (e0, e1, e2, e3) to exact
quaternion coefficients.  Coefficients sit to the LEFT of the monomial; the
monomials themselves are real-valued and therefore central, so two
polynomials multiply by multiplying coefficients in order and adding
exponents.  Stored zero coefficients are dropped immediately, which makes
structural equality the same as algebraic equality.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .errors import DegreeCapExceeded, NonRestrictedInput
from .quaternion import I, J, K, QuaternionExact, QuaternionFloat, _Quaternion

Exponents = tuple[int, int, int, int]

#: Default bound on total degree; guards the factorial growth of extension
#: series.  Pass an explicit ``degree_cap`` to individual operations to lift it.
DEFAULT_DEGREE_CAP = 24

_ZERO_EXP: Exponents = (0, 0, 0, 0)
_NEG_INF = float("-inf")


def _coerce_coeff(value) -> QuaternionExact:
    if isinstance(value, QuaternionExact):
        return value
    if isinstance(value, (int, Fraction)):
        return QuaternionExact(value)
    raise TypeError(f"polynomial coefficients must be exact quaternions, got {type(value).__name__}")


class QPoly:
    """Sparse multivariate polynomial with left quaternion coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Exponents, QuaternionExact] | None = None):
        canon: dict[Exponents, QuaternionExact] = {}
        if terms:
            for exps, coeff in terms.items():
                if len(exps) != 4 or any((not isinstance(e, int)) or e < 0 for e in exps):
                    raise ValueError(f"bad exponent tuple {exps!r}")
                coeff = _coerce_coeff(coeff)
                if not coeff.is_zero:
                    canon[tuple(exps)] = coeff
        self._terms = canon

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls) -> "QPoly":
        return cls()

    @classmethod
    def one(cls) -> "QPoly":
        return cls({_ZERO_EXP: QuaternionExact(1)})

    @classmethod
    def constant(cls, coeff) -> "QPoly":
        return cls({_ZERO_EXP: _coerce_coeff(coeff)})

    @classmethod
    def variable(cls, index: int) -> "QPoly":
        if index not in (0, 1, 2, 3):
            raise IndexError("variable index must be 0..3")
        exps = [0, 0, 0, 0]
        exps[index] = 1
        return cls({tuple(exps): QuaternionExact(1)})

    @classmethod
    def monomial(cls, exps: Exponents, coeff=1) -> "QPoly":
        return cls({tuple(exps): _coerce_coeff(coeff)})

    # -- structure -----------------------------------------------------------

    def terms(self) -> dict[Exponents, QuaternionExact]:
        return dict(self._terms)

    def coefficient(self, exps: Exponents) -> QuaternionExact:
        return self._terms.get(tuple(exps), QuaternionExact(0))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self):
        """Total degree; -inf for the zero polynomial."""
        if not self._terms:
            return _NEG_INF
        return max(sum(e) for e in self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, QPoly):
            return self._terms == other._terms
        return NotImplemented

    __hash__ = None

    # -- ring operations -----------------------------------------------------

    def __add__(self, other: "QPoly") -> "QPoly":
        if not isinstance(other, QPoly):
            return NotImplemented
        out = dict(self._terms)
        for exps, coeff in other._terms.items():
            acc = out.get(exps)
            coeff = coeff if acc is None else acc + coeff
            if coeff.is_zero:
                out.pop(exps, None)
            else:
                out[exps] = coeff
        return _wrap(out)

    def __sub__(self, other: "QPoly") -> "QPoly":
        return self + (-other)

    def __neg__(self) -> "QPoly":
        return _wrap({e: -c for e, c in self._terms.items()})

    def mul(self, other: "QPoly", degree_cap: int | None = DEFAULT_DEGREE_CAP) -> "QPoly":
        """Product self*other; coefficients multiply in that order."""
        if degree_cap is not None and not (self.is_zero or other.is_zero):
            if self.degree + other.degree > degree_cap:
                raise DegreeCapExceeded(
                    f"product degree {self.degree + other.degree} exceeds cap {degree_cap}")
        out: dict[Exponents, QuaternionExact] = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                exps = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3])
                coeff = ca * cb
                acc = out.get(exps)
                coeff = coeff if acc is None else acc + coeff
                if coeff.is_zero:
                    out.pop(exps, None)
                else:
                    out[exps] = coeff
        return _wrap(out)

    def __mul__(self, other):
        if isinstance(other, QPoly):
            return self.mul(other)
        return self.scale_right(other)

    def __rmul__(self, other):
        return self.scale_left(other)

    def scale_left(self, coeff) -> "QPoly":
        c = _coerce_coeff(coeff)
        return _wrap({e: v for e, cc in self._terms.items() if not (v := c * cc).is_zero})

    def scale_right(self, coeff) -> "QPoly":
        c = _coerce_coeff(coeff)
        return _wrap({e: v for e, cc in self._terms.items() if not (v := cc * c).is_zero})

    def __pow__(self, n: int) -> "QPoly":
        return self.pow(n)

    def pow(self, n: int, degree_cap: int | None = DEFAULT_DEGREE_CAP) -> "QPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        if degree_cap is not None and self._terms and self.degree * n > degree_cap:
            raise DegreeCapExceeded(f"power degree {self.degree * n} exceeds cap {degree_cap}")
        result = QPoly.one()
        for _ in range(n):
            result = result.mul(self, degree_cap=None)
        return result

    def shift_exponents(self, exps: Exponents) -> "QPoly":
        """Multiply by the central monomial x^exps."""
        d0, d1, d2, d3 = exps
        return _wrap({(e[0] + d0, e[1] + d1, e[2] + d2, e[3] + d3): c
                      for e, c in self._terms.items()})

    # -- calculus ------------------------------------------------------------

    def partial(self, index: int) -> "QPoly":
        """Partial derivative with respect to x_index."""
        if index not in (0, 1, 2, 3):
            raise IndexError("variable index must be 0..3")
        out: dict[Exponents, QuaternionExact] = {}
        for exps, coeff in self._terms.items():
            e = exps[index]
            if e == 0:
                continue
            new = list(exps)
            new[index] = e - 1
            out[tuple(new)] = coeff * e
        return _wrap(out)

    # -- evaluation ----------------------------------------------------------

    def __call__(self, point: _Quaternion) -> _Quaternion:
        """Evaluate by substituting the real components of ``point``.

        The coordinates are central scalars, so evaluation is a ring
        homomorphism into H.
        """
        exact = isinstance(point, QuaternionExact)
        coords = point.components() if exact else tuple(float(c) for c in point.components())
        acc = QuaternionExact(0) if exact else QuaternionFloat(0.0)
        for exps, coeff in self._terms.items():
            m = 1 if exact else 1.0
            for c, e in zip(coords, exps):
                if e:
                    m *= c ** e
            term = coeff if exact else coeff.to_float()
            acc = acc + term * m
        return acc

    def restrict_x0(self) -> "QPoly":
        """Substitute x0 = 0: keep only x0-free monomials."""
        return _wrap({e: c for e, c in self._terms.items() if e[0] == 0})

    def slice_taylor_real(self) -> tuple[QuaternionExact, ...]:
        """Coefficients of the restriction to the real axis, indexed by power.

        Substituting x1 = x2 = x3 = 0 always leaves a one-variable polynomial
        in x0; the returned tuple lists its coefficients from degree 0 up.
        """
        coeffs: dict[int, QuaternionExact] = {}
        top = 0
        for exps, coeff in self._terms.items():
            if exps[1] == exps[2] == exps[3] == 0:
                coeffs[exps[0]] = coeff
                top = max(top, exps[0])
        if not coeffs:
            return (QuaternionExact(0),)
        return tuple(coeffs.get(k, QuaternionExact(0)) for k in range(top + 1))

    # -- serialization -------------------------------------------------------

    def to_json_obj(self) -> list[dict]:
        """Lossless JSON form: one object per monomial, rationals as "p/q"."""
        items = sorted(self._terms.items())
        return [{"exponents": list(exps),
                 "coeff": [str(c) for c in coeff.components()]}
                for exps, coeff in items]

    @classmethod
    def from_json_obj(cls, data: Iterable[dict]) -> "QPoly":
        terms = {}
        for entry in data:
            exps = tuple(int(e) for e in entry["exponents"])
            coeff = QuaternionExact(*(Fraction(s) for s in entry["coeff"]))
            terms[exps] = coeff
        return cls(terms)

    def __repr__(self) -> str:
        if not self._terms:
            return "QPoly(0)"
        names = ("x0", "x1", "x2", "x3")
        parts = []
        for exps, coeff in sorted(self._terms.items(), key=lambda t: (sum(t[0]), t[0])):
            mono = "*".join(f"{names[i]}^{e}" if e > 1 else names[i]
                            for i, e in enumerate(exps) if e)
            c = _fmt_quat(coeff)
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return "QPoly(" + " + ".join(parts) + ")"


def _wrap(terms: dict[Exponents, QuaternionExact]) -> QPoly:
    poly = QPoly.__new__(QPoly)
    poly._terms = terms
    return poly


def _fmt_quat(q: QuaternionExact) -> str:
    units = ("", "i", "j", "k")
    bits = [f"{c}{u}" for c, u in zip(q.components(), units) if c]
    return " + ".join(bits) if bits else "0"


# -- embeddings of q and conj(q) ---------------------------------------------

def embed_q() -> QPoly:
    """The identity function q = x0 + x1*i + x2*j + x3*k as a polynomial."""
    return QPoly({(1, 0, 0, 0): QuaternionExact(1),
                  (0, 1, 0, 0): I, (0, 0, 1, 0): J, (0, 0, 0, 1): K})


def embed_qbar() -> QPoly:
    """The conjugate function x0 - x1*i - x2*j - x3*k as a polynomial."""
    return QPoly({(1, 0, 0, 0): QuaternionExact(1),
                  (0, 1, 0, 0): -I, (0, 0, 1, 0): -J, (0, 0, 0, 1): -K})


def embed_vec() -> QPoly:
    """The vector part x1*i + x2*j + x3*k as a polynomial."""
    return QPoly({(0, 1, 0, 0): I, (0, 0, 1, 0): J, (0, 0, 0, 1): K})


# -- differential operators ---------------------------------------------------

def poly_add(a: QPoly, b: QPoly) -> QPoly:
    return a + b


def poly_mul(a: QPoly, b: QPoly, degree_cap: int | None = DEFAULT_DEGREE_CAP) -> QPoly:
    return a.mul(b, degree_cap=degree_cap)


def fueter_operator(f: QPoly) -> QPoly:
    """Left Cauchy-Fueter operator d/dx0 + i d/dx1 + j d/dx2 + k d/dx3.

    Units multiply the coefficients from the left.
    """
    return (f.partial(0)
            + f.partial(1).scale_left(I)
            + f.partial(2).scale_left(J)
            + f.partial(3).scale_left(K))


def hyper_derivative(f: QPoly) -> QPoly:
    """Hypercomplex derivative (1/2)(d/dx0 - i d/dx1 - j d/dx2 - k d/dx3)."""
    g = (f.partial(0)
         - f.partial(1).scale_left(I)
         - f.partial(2).scale_left(J)
         - f.partial(3).scale_left(K))
    return g.scale_left(Fraction(1, 2))


def vec_derivative(f: QPoly) -> QPoly:
    """Vector-part operator i d/dx1 + j d/dx2 + k d/dx3."""
    return (f.partial(1).scale_left(I)
            + f.partial(2).scale_left(J)
            + f.partial(3).scale_left(K))


def laplacian4(f: QPoly) -> QPoly:
    """Four-dimensional Laplacian, applied coefficientwise."""
    acc = QPoly.zero()
    for index in range(4):
        acc = acc + f.partial(index).partial(index)
    return acc


def ck_extension(h: QPoly, degree_cap: int | None = DEFAULT_DEGREE_CAP) -> QPoly:
    """Unique left-regular extension of x0-free data h.

    Computed as the terminating series sum_j (-x0)^j / j! * D^j h with
    D = i d/dx1 + j d/dx2 + k d/dx3.  The result restricts back to h on
    x0 = 0 and is annihilated by the Cauchy-Fueter operator.
    """
    if any(e[0] for e in h._terms):
        raise NonRestrictedInput("extension input must not depend on x0")
    if degree_cap is not None and h._terms and h.degree > degree_cap:
        raise DegreeCapExceeded(f"input degree {h.degree} exceeds cap {degree_cap}")
    acc = QPoly.zero()
    layer = h
    j = 0
    while not layer.is_zero:
        scale = Fraction((-1) ** j, math.factorial(j))
        acc = acc + layer.scale_left(scale).shift_exponents((j, 0, 0, 0))
        layer = vec_derivative(layer)
        j += 1
    return acc


def restrict_x0(f: QPoly) -> QPoly:
    return f.restrict_x0()


def eval_poly(f: QPoly, q: _Quaternion) -> _Quaternion:
    return f(q)


def slice_taylor_real(f: QPoly) -> tuple[QuaternionExact, ...]:
    return f.slice_taylor_real()
