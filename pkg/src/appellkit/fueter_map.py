"""The Laplacian as a map between slice series and Appell series.

On power series the four-dimensional Laplacian sends q^k to
-2(k-1)k Q_{k-2}, so it acts on coefficients as
alpha_k = -2(k+1)(k+2) a_{k+2}.  Transporting a slice weight c through this
map produces the Appell-side weight b_k = c_{k+2}/((k+1)^2 (k+2)^2), and the
norm of the image closes in terms of the first two dropped coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from . import appell
from .errors import ModeDisagreement, OutOfDomain
from .qpoly import QPoly, laplacian4
from .quaternion import QuaternionExact
from .spaces import (AppellSeries, SliceSeries, WeightSequence, bergman,
                     custom, dirichlet, fock, hardy, norm_sq)


def b_from_c(c: WeightSequence) -> WeightSequence:
    """Transport of the slice weight to the image space, as exact rationals."""
    gen = lambda k: c(k + 2) / Fraction((k + 1) ** 2 * (k + 2) ** 2)
    return custom(f"fmr({c.name})", gen, radius=c.radius, note=c.note)


def tau_series(f: SliceSeries) -> AppellSeries:
    """Coefficient action of the Laplacian: alpha_k = -2(k+1)(k+2) a_{k+2}."""
    coeffs = tuple(f.coefficient(k + 2) * (-2 * (k + 1) * (k + 2))
                   for k in range(max(len(f.coefficients) - 2, 0)))
    return AppellSeries(coeffs or (QuaternionExact(0),), b_from_c(f.weight))


def _synthesize_slice(f: SliceSeries) -> QPoly:
    from .qpoly import embed_q
    acc = QPoly.zero()
    power = QPoly.one()
    for k, a in enumerate(f.coefficients):
        if not a.is_zero:
            acc = acc + power.scale_right(a)
        if k < len(f.coefficients) - 1:
            power = power.mul(embed_q(), degree_cap=None)
    return acc


def tau_series_symbolic(f: SliceSeries) -> AppellSeries:
    """Same map computed by applying the Laplacian to the synthesized polynomial."""
    if not f.is_exact():
        raise TypeError("symbolic mode needs exact coefficients")
    image = laplacian4(_synthesize_slice(f))
    coeffs = appell.appell_expand(image)
    return AppellSeries(coeffs, b_from_c(f.weight))


def tau_check_modes(f: SliceSeries) -> AppellSeries:
    """Run both modes and require exact agreement."""
    direct = tau_series(f)
    symbolic = tau_series_symbolic(f)
    n = max(len(direct.coefficients), len(symbolic.coefficients))
    for k in range(n):
        if direct.coefficient(k) != symbolic.coefficient(k):
            raise ModeDisagreement(f"coefficient {k} differs between modes")
    return direct


class FmrNorm(NamedTuple):
    lhs: float
    rhs: float
    lhs_sq: Fraction
    rhs_sq: Fraction


def fmr_norm_identity(f: SliceSeries) -> FmrNorm:
    """Both sides of ||tau f||_b = 2 sqrt(||f||_c^2 - |f(0)|^2 - c_1 |f'(0)|^2).

    The squared forms are exact rationals for exact input; f(0) and f'(0)
    are the first two slice coefficients.
    """
    image = tau_series(f)
    lhs_sq = norm_sq(image)
    a0 = f.coefficient(0)
    a1 = f.coefficient(1)
    rhs_sq = 4 * (norm_sq(f) - a0.norm_sq() - f.weight(1) * a1.norm_sq())
    return FmrNorm(math.sqrt(float(lhs_sq)), math.sqrt(max(float(rhs_sq), 0.0)),
                   lhs_sq, rhs_sq)


class ConvergenceReport(NamedTuple):
    partial_sums: tuple[float, ...]
    ratios: tuple[float, ...]
    limit_estimate: float
    bound: float


def fmr_convergence_check(c: WeightSequence, q_abs: float,
                          n_terms: int = 200) -> ConvergenceReport:
    """Ratio-test data for the bound series sum (k+1)^2 (k+2)^2 / c_{k+2} |q|^{2k}.

    The successive term ratios must extrapolate to a limit at most |q|^2;
    Richardson extrapolation over the last half of the window removes the
    O(1/k) bias.
    """
    if not 0.0 <= q_abs < 1.0:
        raise OutOfDomain("the transported spaces live on the unit ball")
    rho = q_abs * q_abs
    terms = [4.0 / float(c(2))]
    for k in range(n_terms):
        step = rho * ((k + 3) / (k + 1)) ** 2 * float(c(k + 2) / c(k + 3))
        terms.append(terms[-1] * step)
    sums = []
    acc = 0.0
    for t in terms:
        acc += t
        sums.append(acc)
    ratios = []
    if rho:
        for k in range(n_terms):
            if terms[k] < 1e-280 or terms[k + 1] < 1e-280:
                break  # near underflow; the series converged to machine precision
            ratios.append(terms[k + 1] / terms[k])
    if not ratios:
        limit = 0.0
    else:
        # the ratio at index k is a quadratic polynomial in 1/(k+1) for the
        # weights of interest, so extrapolating three samples to 0 is exact
        last = len(ratios) - 1
        ks = (last // 4, last // 2, last)
        xs = [1.0 / (k + 1) for k in ks]
        ys = [ratios[k] for k in ks]
        limit = 0.0
        for i in range(3):
            w = 1.0
            for m in range(3):
                if m != i:
                    w *= xs[m] / (xs[m] - xs[i])
            limit += ys[i] * w
    return ConvergenceReport(tuple(sums), tuple(ratios), limit, rho)


# -- the four worked weight rows ---------------------------------------------------


@dataclass(frozen=True)
class FmrRow:
    """One transported space: source weight, image weight, norm deficit."""

    name: str
    c_formula: str
    b_formula: str
    source: WeightSequence
    expected_b: WeightSequence
    deficit_coefficient: Fraction
    verified_up_to: int
    exact: bool
    note: str = ""


def _expected_rows() -> list[tuple[str, WeightSequence, str, str, Fraction, str]]:
    return [
        ("hardy", hardy(), "1", "1/((k+1)^2 (k+2)^2)", Fraction(1), ""),
        ("fock", fock(), "k!", "k!/((k+1)(k+2))", Fraction(1), ""),
        ("dirichlet", dirichlet(), "k (k = 0 entry set to 1)",
         "1/((k+1)^2 (k+2))", Fraction(1),
         "source weight uses the overridden k = 0 entry"),
        ("bergman", bergman(), "1/(k+1)", "1/((k+3)(k+1)^2 (k+2)^2)", Fraction(1, 2), ""),
    ]


_CLOSED_FORMS = {
    "hardy": lambda k: Fraction(1, (k + 1) ** 2 * (k + 2) ** 2),
    "fock": lambda k: Fraction(math.factorial(k), (k + 1) * (k + 2)),
    "dirichlet": lambda k: Fraction(1, (k + 1) ** 2 * (k + 2)),
    "bergman": lambda k: Fraction(1, (k + 3) * (k + 1) ** 2 * (k + 2) ** 2),
}


def table1_report(k_max: int = 32) -> list[FmrRow]:
    """The four transported spaces with their closed forms, verified exactly.

    Each row checks b_from_c against the printed closed form for k <= k_max
    and records the coefficient of |f'(0)|^2 in the norm deficit, which is
    the source weight at 1.
    """
    rows = []
    for name, source, c_formula, b_formula, deficit, note in _expected_rows():
        transported = b_from_c(source)
        closed = _CLOSED_FORMS[name]
        exact = all(transported(k) == closed(k) for k in range(k_max + 1))
        exact = exact and source(1) == deficit
        rows.append(FmrRow(name, c_formula, b_formula, source,
                           custom(f"{name}-closed", closed, radius=source.radius),
                           deficit, k_max, exact, note))
    return rows


def table1_markdown(rows: list[FmrRow]) -> str:
    lines = ["| space | c_k | b_k | deficit on |f'(0)|^2 | exact |",
             "|---|---|---|---|---|"]
    for row in rows:
        lines.append(f"| {row.name} | {row.c_formula} | {row.b_formula} | "
                     f"{row.deficit_coefficient} | {'yes' if row.exact else 'NO'} |")
    return "\n".join(lines)


def table1_csv_rows(rows: list[FmrRow]):
    yield ("space", "c_k", "b_k", "deficit_coefficient", "exact", "note")
    for row in rows:
        yield (row.name, row.c_formula, row.b_formula,
               str(row.deficit_coefficient), str(row.exact).lower(), row.note)
