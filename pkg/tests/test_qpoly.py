import json
import math
from fractions import Fraction
from pathlib import Path

import pytest

from appellkit import appell
from appellkit.errors import DegreeCapExceeded, NonRestrictedInput
from appellkit.qpoly import (QPoly, ck_extension, embed_q, embed_qbar,
                             embed_vec, eval_poly, fueter_operator,
                             hyper_derivative, laplacian4, restrict_x0,
                             slice_taylor_real)
from appellkit.quaternion import I, J, K, QuaternionExact, QuaternionFloat, isclose
from helpers import rand_exact, rand_float

X0, X1, X2, X3 = (QPoly.variable(i) for i in range(4))
GOLDEN = Path(__file__).parent / "data" / "appell_poly_deg3.json"


def test_ring_basics():
    zeta1 = X1 - X0.scale_left(I)
    assert zeta1 * QPoly.one() == zeta1
    assert X1.scale_left(I) * X1.scale_left(J) == (X1 * X1).scale_left(K)
    assert embed_q() + embed_qbar() == X0.scale_left(2)


def test_embeddings_evaluate():
    t = QuaternionExact(Fraction(7, 3))
    assert embed_q()(t) == t
    assert embed_qbar()(I) == -I
    sq = embed_q() * embed_q()
    assert sq(QuaternionExact(1, 1, 0, 0)) == QuaternionExact(0, 2, 0, 0)


def test_canonical_zero_dropping():
    p = X0 - X0
    assert p.is_zero
    assert p.degree == float("-inf")
    assert len(p) == 0
    assert QPoly.zero() == p


def test_fueter_operator_values():
    assert fueter_operator(QPoly.constant(QuaternionExact(2, 1, 0, 5))).is_zero
    zeta1 = X1 - X0.scale_left(I)
    assert fueter_operator(zeta1).is_zero
    assert fueter_operator(embed_q()) == QPoly.constant(-2)


def test_fueter_operator_finite_difference_oracle(rng):
    # independent numerical check of the symbolic derivative
    h = 1e-6
    for _ in range(5):
        terms = {(rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 2),
                  rng.randint(0, 2)): rand_exact(rng) for _ in range(4)}
        f = QPoly(terms)
        point = rand_float(rng, 0.8)
        symbolic = fueter_operator(f)(point)
        units = (QuaternionFloat(1.0), I.to_float(), J.to_float(), K.to_float())
        numeric = QuaternionFloat(0.0)
        for axis, unit in enumerate(units):
            comps = list(float(c) for c in point.components())
            comps[axis] += h
            plus = f(QuaternionFloat(*comps))
            comps[axis] -= 2 * h
            minus = f(QuaternionFloat(*comps))
            numeric = numeric + unit * ((plus - minus) / (2 * h))
        assert abs(symbolic.to_float() - numeric) < 1e-5


def test_hyper_derivative_appell_property():
    assert hyper_derivative(appell.qk_symbolic(1)) == QPoly.one()
    assert hyper_derivative(appell.qk_symbolic(5)) == appell.qk_symbolic(4).scale_left(5)
    assert hyper_derivative(QPoly.constant(I)).is_zero


def test_laplacian_values():
    assert laplacian4(X0 * X0) == QPoly.constant(2)
    q2 = embed_q() * embed_q()
    assert laplacian4(q2) == QPoly.constant(-4)
    for k in range(7):
        assert laplacian4(appell.qk_symbolic(k)).is_zero


def test_ck_extension_basics():
    assert ck_extension(QPoly.one()) == QPoly.one()
    v = embed_vec()
    ext = ck_extension(v)
    assert ext == v + X0.scale_left(3)
    assert restrict_x0(ext) == v
    assert fueter_operator(ext).is_zero
    with pytest.raises(NonRestrictedInput):
        ck_extension(X0)


@pytest.mark.parametrize("k", range(11))
def test_ck_extension_reproduces_appell_family(k):
    v = embed_vec()
    assert ck_extension(v.pow(k)).scale_left(appell.ck(k)) == appell.qk_symbolic(k)


def test_restriction_of_degree_two():
    v = embed_vec()
    expected = (v * v).scale_left(Fraction(1, 3))
    assert restrict_x0(appell.qk_symbolic(2)) == expected


def test_eval_is_ring_map_at_real_points(rng):
    # multiplicativity is asserted at central (real) points only
    for _ in range(20):
        a = QPoly({(rng.randint(0, 2),) * 1 + (rng.randint(0, 2), 0, 1): rand_exact(rng),
                   (0, 1, 0, 0): rand_exact(rng)})
        b = QPoly({(1, 0, rng.randint(0, 2), 0): rand_exact(rng),
                   (0, 0, 0, 2): rand_exact(rng)})
        t = QuaternionExact(Fraction(rng.randint(-6, 6), rng.randint(1, 4)))
        assert eval_poly(a * b, t) == eval_poly(a, t) * eval_poly(b, t)


def test_slice_taylor_real():
    assert slice_taylor_real(appell.qk_symbolic(3)) == (
        QuaternionExact(0), QuaternionExact(0), QuaternionExact(0), QuaternionExact(1))
    assert slice_taylor_real(QPoly.zero()) == (QuaternionExact(0),)


def test_degree_cap():
    q = embed_q()
    with pytest.raises(DegreeCapExceeded):
        q.pow(25)
    assert q.pow(25, degree_cap=None).degree == 25
    with pytest.raises(DegreeCapExceeded):
        q.pow(13).mul(q.pow(13))


def test_json_round_trip(rng):
    terms = {(1, 2, 0, 1): rand_exact(rng), (0, 0, 0, 0): rand_exact(rng)}
    p = QPoly(terms)
    assert QPoly.from_json_obj(p.to_json_obj()) == p


def test_json_golden_file():
    actual = appell.qk_symbolic(3).to_json_obj()
    expected = json.loads(GOLDEN.read_text(encoding="utf-8"))
    assert actual == expected


def test_repr_is_printable():
    text = repr(appell.qk_symbolic(2))
    assert "x0" in text and "QPoly" in text
