"""Exact (rational) and floating quaternion arithmetic.

Components follow the convention q = x0 + x1*i + x2*j + x3*k with the unit
table i*j = -j*i = k, j*k = -k*j = i, k*i = -i*k = j.  Values are immutable;
every operation returns a new quaternion.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .errors import DomainError

_TINY_VEC = 1e-300


class _Quaternion:
    """Shared arithmetic for the exact and floating variants."""

    __slots__ = ("x0", "x1", "x2", "x3")

    def __init__(self, x0=0, x1=0, x2=0, x3=0):
        coerce = self._coerce
        self.x0 = coerce(x0)
        self.x1 = coerce(x1)
        self.x2 = coerce(x2)
        self.x3 = coerce(x3)

    @staticmethod
    def _coerce(value):  # pragma: no cover - overridden
        raise NotImplementedError

    @classmethod
    def _builder(cls):
        """Class used for arithmetic results (subclasses may demote)."""
        return cls

    # -- structure ---------------------------------------------------------

    def components(self):
        return (self.x0, self.x1, self.x2, self.x3)

    @property
    def is_zero(self):
        return not (self.x0 or self.x1 or self.x2 or self.x3)

    def re(self):
        """Real (scalar) part."""
        return self.x0

    def vec(self):
        """Vector part x1*i + x2*j + x3*k as a quaternion."""
        return self._builder()(0, self.x1, self.x2, self.x3)

    def conj(self):
        return self._builder()(self.x0, -self.x1, -self.x2, -self.x3)

    def norm_sq(self):
        """Squared modulus x0^2 + x1^2 + x2^2 + x3^2 (exact for exact inputs)."""
        return self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3

    def __abs__(self):
        return math.sqrt(float(self.norm_sq()))

    def inverse(self):
        n = self.norm_sq()
        if not n:
            raise DomainError("cannot invert the zero quaternion")
        return self._builder()(self.x0 / n, -self.x1 / n, -self.x2 / n, -self.x3 / n)

    def to_float(self) -> "QuaternionFloat":
        return QuaternionFloat(float(self.x0), float(self.x1), float(self.x2), float(self.x3))

    def to_exact(self) -> "QuaternionExact":
        return QuaternionExact(*(Fraction(c).limit_denominator(10**15) if isinstance(c, float) else Fraction(c)
                                 for c in self.components()))

    # -- arithmetic ---------------------------------------------------------

    def _result_cls(self, other):
        if isinstance(self, QuaternionFloat) or isinstance(other, QuaternionFloat):
            return QuaternionFloat
        return QuaternionExact

    def __add__(self, other):
        other = _as_quaternion(other, like=self)
        if other is NotImplemented:
            return NotImplemented
        cls = self._result_cls(other)
        return cls(self.x0 + other.x0, self.x1 + other.x1, self.x2 + other.x2, self.x3 + other.x3)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_quaternion(other, like=self)
        if other is NotImplemented:
            return NotImplemented
        cls = self._result_cls(other)
        return cls(self.x0 - other.x0, self.x1 - other.x1, self.x2 - other.x2, self.x3 - other.x3)

    def __rsub__(self, other):
        other = _as_quaternion(other, like=self)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return self._builder()(-self.x0, -self.x1, -self.x2, -self.x3)

    def __mul__(self, other):
        other = _as_quaternion(other, like=self)
        if other is NotImplemented:
            return NotImplemented
        a0, a1, a2, a3 = self.components()
        b0, b1, b2, b3 = other.components()
        cls = self._result_cls(other)
        return cls(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )

    def __rmul__(self, other):
        other = _as_quaternion(other, like=self)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    def __truediv__(self, scalar):
        if isinstance(scalar, _Quaternion):
            return self * scalar.inverse()
        return self._builder()(self.x0 / scalar, self.x1 / scalar, self.x2 / scalar, self.x3 / scalar)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("quaternion powers must be integers")
        if n < 0:
            return self.inverse() ** (-n)
        result = self._builder()(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, _Quaternion):
            return self.components() == other.components()
        if isinstance(other, (int, float, Fraction)):
            return self.components() == (other, 0, 0, 0)
        return NotImplemented

    def __hash__(self):
        return hash(self.components())

    def __repr__(self):
        return f"{type(self).__name__}({self.x0!r}, {self.x1!r}, {self.x2!r}, {self.x3!r})"


class QuaternionExact(_Quaternion):
    """Quaternion with arbitrary-precision rational components."""

    __slots__ = ()

    @staticmethod
    def _coerce(value):
        if isinstance(value, float):
            raise TypeError("QuaternionExact components must be rational, not float")
        return Fraction(value)


class QuaternionFloat(_Quaternion):
    """Quaternion with binary64 components."""

    __slots__ = ()

    @staticmethod
    def _coerce(value):
        return float(value)


def _as_quaternion(value, like: _Quaternion):
    if isinstance(value, _Quaternion):
        return value
    if isinstance(value, (int, Fraction)):
        return like._builder()(value)
    if isinstance(value, float):
        return QuaternionFloat(value)
    return NotImplemented


ZERO = QuaternionExact(0)
ONE = QuaternionExact(1)
I = QuaternionExact(0, 1, 0, 0)
J = QuaternionExact(0, 0, 1, 0)
K = QuaternionExact(0, 0, 0, 1)
UNITS = (ONE, I, J, K)


class ImaginaryUnit(QuaternionFloat):
    """Point of the imaginary unit sphere: zero real part, unit modulus.

    The constructor normalizes the given vector part, so any nonzero
    direction is accepted.
    """

    __slots__ = ()

    def __init__(self, x1, x2, x3):
        m = math.sqrt(float(x1) ** 2 + float(x2) ** 2 + float(x3) ** 2)
        if m == 0.0:
            raise DomainError("imaginary unit needs a nonzero vector part")
        super().__init__(0.0, float(x1) / m, float(x2) / m, float(x3) / m)

    @classmethod
    def _builder(cls):
        # arithmetic on sphere points leaves the sphere
        return QuaternionFloat

    @classmethod
    def from_quaternion(cls, q: _Quaternion, tol: float = 1e-9) -> "ImaginaryUnit":
        if abs(float(q.x0)) > tol:
            raise DomainError("quaternion has a nonzero real part")
        return cls(float(q.x1), float(q.x2), float(q.x3))


UNIT_I = ImaginaryUnit(1, 0, 0)
UNIT_J = ImaginaryUnit(0, 1, 0)
UNIT_K = ImaginaryUnit(0, 0, 1)


# -- spec-level operation names ---------------------------------------------

def qmul(p: _Quaternion, q: _Quaternion) -> _Quaternion:
    """Hamilton product p*q."""
    return p * q


def qconj(q: _Quaternion) -> _Quaternion:
    return q.conj()


def qnorm(q: _Quaternion) -> float:
    return abs(q)


def qnorm_sq(q: _Quaternion):
    return q.norm_sq()


def qinv(q: _Quaternion) -> _Quaternion:
    return q.inverse()


def qexp(q: _Quaternion) -> QuaternionFloat:
    """Quaternion exponential e^{x0} (cos|v| + (v/|v|) sin|v|), v = vec(q).

    The |v| -> 0 limit is handled by the real branch (removable singularity
    of sin|v|/|v|).
    """
    x0 = float(q.x0)
    v1, v2, v3 = float(q.x1), float(q.x2), float(q.x3)
    m = math.sqrt(v1 * v1 + v2 * v2 + v3 * v3)
    scale = math.exp(x0)
    if m < _TINY_VEC:
        return QuaternionFloat(scale, 0.0, 0.0, 0.0)
    s = scale * math.sin(m) / m
    return QuaternionFloat(scale * math.cos(m), s * v1, s * v2, s * v3)


def sample_sphere(seed: int) -> ImaginaryUnit:
    """Deterministic sample of the imaginary unit sphere for a given seed."""
    rng = random.Random(seed)
    while True:
        v = (rng.gauss(0, 1), rng.gauss(0, 1), rng.gauss(0, 1))
        if math.sqrt(sum(c * c for c in v)) > 1e-6:
            return ImaginaryUnit(*v)


def isclose(p: _Quaternion, q: _Quaternion, tol: float = 1e-12) -> bool:
    """Componentwise closeness |p - q| <= tol * (1 + |p| + |q|)."""
    return abs(p.to_float() - q.to_float()) <= tol * (1.0 + abs(p) + abs(q))
