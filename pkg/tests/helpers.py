"""Shared generators for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from appellkit.quaternion import QuaternionExact, QuaternionFloat
from appellkit.spaces import AppellSeries, SliceSeries


def rand_exact(rng: random.Random, span: int = 6, den: int = 4) -> QuaternionExact:
    return QuaternionExact(*(Fraction(rng.randint(-span, span), rng.randint(1, den))
                             for _ in range(4)))


def rand_float(rng: random.Random, scale: float = 1.0) -> QuaternionFloat:
    return QuaternionFloat(*(rng.uniform(-scale, scale) for _ in range(4)))


def rand_small_exact(rng: random.Random) -> QuaternionExact:
    return QuaternionExact(*(Fraction(rng.randint(-2, 2), rng.randint(4, 8))
                             for _ in range(4)))


def rand_series(rng: random.Random, weight, n: int, cls=AppellSeries):
    return cls(tuple(rand_exact(rng) for _ in range(n + 1)), weight)


def rand_slice(rng: random.Random, weight, n: int) -> SliceSeries:
    return rand_series(rng, weight, n, cls=SliceSeries)
