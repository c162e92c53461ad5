import math
from fractions import Fraction

import pytest

from appellkit.errors import OutOfDomain
from appellkit.fueter_map import (b_from_c, fmr_convergence_check,
                                  fmr_norm_identity, table1_csv_rows,
                                  table1_markdown, table1_report,
                                  tau_check_modes, tau_series,
                                  tau_series_symbolic)
from appellkit.quaternion import QuaternionExact
from appellkit.spaces import (SliceSeries, bergman, dirichlet, fock, hardy,
                              norm_sq)
from helpers import rand_exact, rand_slice


def _monomial(n, weight):
    return SliceSeries(tuple(QuaternionExact(1 if k == n else 0)
                             for k in range(n + 1)), weight)


def test_b_from_c_closed_forms():
    b_hardy = b_from_c(hardy())
    b_fock = b_from_c(fock())
    b_berg = b_from_c(bergman())
    for k in range(12):
        assert b_hardy(k) == Fraction(1, (k + 1) ** 2 * (k + 2) ** 2)
        assert b_fock(k) == Fraction(math.factorial(k), (k + 1) * (k + 2))
        assert b_berg(k) == Fraction(1, (k + 3) * (k + 1) ** 2 * (k + 2) ** 2)


def test_tau_series_examples():
    w = fock()
    assert tau_series(_monomial(2, w)).coefficients == (QuaternionExact(-4),)
    low = SliceSeries((rand_exact_static(), rand_exact_static()), w)
    assert all(c.is_zero for c in tau_series(low).coefficients)
    q4 = tau_series(_monomial(4, w))
    assert q4.coefficient(2) == QuaternionExact(-24)
    assert tau_series(_monomial(2, w)).weight(0) == Fraction(2, 4)


def rand_exact_static():
    return QuaternionExact(2, Fraction(1, 3), 0, 1)


def test_tau_modes_agree(rng):
    for weight in (hardy(), fock(), dirichlet(), bergman()):
        f = rand_slice(rng, weight, rng.randint(0, 9))
        direct = tau_check_modes(f)
        symbolic = tau_series_symbolic(f)
        for k in range(max(direct.truncation, symbolic.truncation) + 1):
            assert direct.coefficient(k) == symbolic.coefficient(k)


def test_norm_identity_worked_example():
    f = _monomial(2, fock())
    res = fmr_norm_identity(f)
    assert res.lhs_sq == res.rhs_sq == 8
    assert res.lhs == pytest.approx(2 * math.sqrt(2.0), rel=1e-15)
    low = SliceSeries((QuaternionExact(3, 1, 0, 0), QuaternionExact(0, 2, 2, 0)), fock())
    res = fmr_norm_identity(low)
    assert res.lhs_sq == res.rhs_sq == 0


def test_norm_identity_random(rng):
    for weight in (hardy(), fock(), dirichlet(), bergman()):
        for _ in range(60):
            f = rand_slice(rng, weight, rng.randint(0, 9))
            res = fmr_norm_identity(f)
            assert res.lhs_sq == res.rhs_sq


def test_isometry_up_to_two(rng):
    for _ in range(30):
        coeffs = (QuaternionExact(0), QuaternionExact(0)) + \
            tuple(rand_exact(rng) for _ in range(rng.randint(1, 6)))
        f = SliceSeries(coeffs, hardy())
        res = fmr_norm_identity(f)
        assert res.lhs_sq == 4 * norm_sq(f)


def test_surjectivity_preimage(rng):
    from appellkit.spaces import AppellSeries
    weight = dirichlet()
    target = AppellSeries(tuple(rand_exact(rng) for _ in range(7)), b_from_c(weight))
    pre = [QuaternionExact(0), QuaternionExact(0)]
    for k in range(7):
        pre.append(target.coefficient(k) * Fraction(-1, 2 * (k + 1) * (k + 2)))
    image = tau_series(SliceSeries(tuple(pre), weight))
    for k in range(7):
        assert image.coefficient(k) == target.coefficient(k)


def test_convergence_check():
    rep = fmr_convergence_check(hardy(), 0.5)
    assert rep.limit_estimate == pytest.approx(0.25, abs=1e-6)
    assert rep.limit_estimate <= rep.bound + 1e-6
    rep0 = fmr_convergence_check(hardy(), 0.0)
    assert rep0.partial_sums[-1] == pytest.approx(4.0)  # single term 1/b_0
    rep_b = fmr_convergence_check(bergman(), 0.9)
    assert rep_b.limit_estimate <= 0.81 + 1e-6
    assert rep_b.partial_sums[-1] - rep_b.partial_sums[-2] < 1e-6
    with pytest.raises(OutOfDomain):
        fmr_convergence_check(hardy(), 1.0)


def test_table1():
    rows = table1_report(32)
    by_name = {row.name: row for row in rows}
    assert set(by_name) == {"hardy", "fock", "dirichlet", "bergman"}
    assert all(row.exact for row in rows)
    for k in range(10):
        assert by_name["dirichlet"].expected_b(k) == Fraction(1, (k + 1) ** 2 * (k + 2))
    assert by_name["bergman"].deficit_coefficient == Fraction(1, 2)
    for name in ("hardy", "fock", "dirichlet"):
        assert by_name[name].deficit_coefficient == 1
    assert by_name["dirichlet"].note
    md = table1_markdown(rows)
    assert md.count("|") > 20 and "bergman" in md
    csv_rows = list(table1_csv_rows(rows))
    assert len(csv_rows) == 5 and csv_rows[0][0] == "space"
