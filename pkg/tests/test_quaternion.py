import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from appellkit.errors import DomainError
from appellkit.quaternion import (I, J, K, ONE, ImaginaryUnit, QuaternionExact,
                                  QuaternionFloat, isclose, qconj, qexp, qinv,
                                  qmul, qnorm, sample_sphere)
from helpers import rand_exact, rand_float

rationals = st.fractions(min_value=-8, max_value=8, max_denominator=16)
exacts = st.builds(QuaternionExact, rationals, rationals, rationals, rationals)


def test_unit_table():
    assert I * J == K
    assert J * I == -K
    assert J * K == I
    assert K * J == -I
    assert K * I == J
    assert I * K == -J
    assert I * I == QuaternionExact(-1)
    assert J * J == QuaternionExact(-1)
    assert K * K == QuaternionExact(-1)


def test_identity_and_expansion():
    q = QuaternionExact(Fraction(1, 2), 3, Fraction(-2, 5), 1)
    assert qmul(q, ONE) == q
    # (1+i)(1+j) = 1 + j + i + ij = 1 + i + j + k by distributivity
    assert (ONE + I) * (ONE + J) == QuaternionExact(1, 1, 1, 1)


def test_conj_norm_inverse():
    assert qconj(I) == -I
    q = QuaternionExact(1, 1, 1, 1)
    assert qnorm(q) == 2.0
    assert q.norm_sq() == 4
    assert qinv(I) == -I
    assert I * qinv(I) == ONE
    with pytest.raises(DomainError):
        qinv(QuaternionExact(0))


def test_conj_involution_and_modulus_product(rng):
    for _ in range(200):
        p = rand_exact(rng)
        q = rand_exact(rng)
        assert p.conj().conj() == p
        prod = p * p.conj()
        assert prod == QuaternionExact(p.norm_sq())
        assert (p * q).norm_sq() == p.norm_sq() * q.norm_sq()


@settings(max_examples=60, deadline=None)
@given(exacts, exacts)
def test_conj_antihomomorphism(p, q):
    assert (p * q).conj() == q.conj() * p.conj()


@settings(max_examples=60, deadline=None)
@given(exacts, exacts, exacts)
def test_ring_laws(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p + q) * r == p * r + q * r


def test_bulk_exact_algebra(rng):
    # high-volume spot check complementing the generative one above
    for _ in range(1000):
        p, q, r = (rand_exact(rng, span=4, den=3) for _ in range(3))
        assert (p * q) * r == p * (q * r)
        assert (p + q) * r == p * r + q * r


def test_float_mirror_matches_exact(rng):
    for _ in range(300):
        p = rand_exact(rng, span=8, den=2)
        q = rand_exact(rng, span=8, den=2)
        exact = (p * q + p.conj()) * q.inverse() if not q.is_zero else p
        mirrored = (p.to_float() * q.to_float() + p.to_float().conj()) \
            * q.to_float().inverse() if not q.is_zero else p.to_float()
        assert isclose(exact.to_float(), mirrored, tol=1e-12)


def test_qexp_values():
    assert qexp(QuaternionExact(0)) == QuaternionFloat(1.0)
    for t in (-2.0, -0.5, 0.0, 1.7):
        assert qexp(QuaternionFloat(t)).x0 == pytest.approx(math.exp(t), rel=1e-15)
    euler = qexp(QuaternionFloat(0.0, math.pi, 0.0, 0.0))
    assert abs(euler - QuaternionFloat(-1.0)) < 1e-12
    tiny = qexp(QuaternionFloat(0.3, 1e-305, 0, 0))
    assert tiny.x0 == pytest.approx(math.exp(0.3))
    assert tiny.x1 == 0.0


def test_qexp_slice_consistency():
    # e^{a + w b} = e^a (cos b + w sin b) on the slice of any unit
    w = sample_sphere(5)
    value = qexp(w * 0.7 + QuaternionFloat(0.2))
    expected = (QuaternionFloat(math.cos(0.7)) + w * math.sin(0.7)) * math.exp(0.2)
    assert abs(value - expected) < 1e-14


def test_sample_sphere_deterministic():
    a = sample_sphere(42)
    b = sample_sphere(42)
    assert a.components() == b.components()
    assert abs(a) == pytest.approx(1.0, abs=1e-15)
    sq = a * a
    assert abs(sq - QuaternionFloat(-1.0)) < 1e-12


def test_imaginary_unit_embedding():
    unit = ImaginaryUnit(1, 0, 0)
    assert unit.components() == (0.0, 1.0, 0.0, 0.0)
    again = ImaginaryUnit.from_quaternion(I.to_float())
    assert again.components() == (0.0, 1.0, 0.0, 0.0)
    with pytest.raises(DomainError):
        ImaginaryUnit(0, 0, 0)
    with pytest.raises(DomainError):
        ImaginaryUnit.from_quaternion(QuaternionFloat(1, 1, 0, 0))
    # arithmetic on sphere points demotes to plain quaternions
    assert isinstance(-unit, QuaternionFloat)
    assert (-unit).x1 == -1.0


def test_exact_rejects_floats():
    with pytest.raises(TypeError):
        QuaternionExact(0.5)


def test_powers_and_division():
    q = QuaternionExact(1, 1, 0, 0)
    assert q ** 2 == QuaternionExact(0, 2, 0, 0)
    assert q ** 0 == ONE
    assert q ** -1 == q.inverse()
    assert (q / 2) * 2 == q
