"""Torus weight systems, exact series extraction and rational-form checks."""

import math
from fractions import Fraction

import pytest

from qqinv.molien import (TWO_QUBIT_RATIONAL, QUBIT_QUTRIT_DENOMINATOR,
                          TruncatedTorusSeries, WeightSystem,
                          adjoint_weight_system,
                          complete_numerator_by_palindromy, molien_series,
                          palindromy_check, qubit_qutrit_rational,
                          rational_series)

POINCARE_2X3 = [1, 0, 3, 4, 15, 25, 90, 170, 489, 1059, 2600, 5641, 12872,
                27099, 57990, 118254, 240187]


def expand_rational_fraction_oracle(numerator, denominator_exponents, max_degree):
    """Independent expansion: multiply the denominator out as one integer
    polynomial, then run exact long division over Fractions."""
    den = [1]
    for deg, mult in denominator_exponents:
        factor = [0] * (deg + 1)
        factor[0], factor[deg] = 1, -1
        for _ in range(mult):
            out = [0] * (len(den) + deg)
            for i, c in enumerate(den):
                for j, f in enumerate(factor):
                    out[i + j] += c * f
            den = out
    num = list(numerator) + [0] * (max_degree + 1 - len(numerator))
    series = []
    for k in range(max_degree + 1):
        acc = Fraction(num[k]) if k < len(num) else Fraction(0)
        for j in range(1, min(k, len(den) - 1) + 1):
            acc -= den[j] * series[k - j]
        series.append(acc / den[0])
    assert all(c.denominator == 1 for c in series)
    return [int(c) for c in series]


# -- weight systems ---------------------------------------------------------------

def test_weight_system_2x2():
    ws = adjoint_weight_system("su2xsu2")
    assert ws.rank == 2 and ws.weyl_order == 4
    assert len(ws.weights) == 15
    assert sum(1 for w in ws.weights if w == (0, 0)) == 3
    assert len(ws.roots) == 4


def test_weight_system_2x3():
    ws = adjoint_weight_system("su2xsu3")
    assert ws.rank == 3 and ws.weyl_order == 12
    assert len(ws.weights) == 35
    assert sum(1 for w in ws.weights if w == (0, 0, 0)) == 5
    assert len(ws.roots) == 8


@pytest.mark.parametrize("spec", ["su2xsu2", "su2xsu3"])
def test_weights_self_dual(spec):
    ws = adjoint_weight_system(spec)
    ws.validate()
    weights = list(ws.weights)
    for w in weights:
        neg = tuple(-x for x in w)
        assert weights.count(neg) == weights.count(w)


def test_weight_system_validate_rejects_bad():
    with pytest.raises(ValueError, match="sum to 0"):
        WeightSystem(1, ((1,), (0,)), (), 1).validate()
    with pytest.raises(ValueError, match="paired"):
        WeightSystem(1, ((1,), (-1,)), ((1,),), 2).validate()


def test_unknown_group_spec():
    with pytest.raises(ValueError, match="unknown group spec"):
        adjoint_weight_system("su3xsu3")


# -- truncated torus series --------------------------------------------------------

def test_series_degree_zero_is_one():
    ws = adjoint_weight_system("su2xsu2")
    ser = TruncatedTorusSeries.from_weight_factors(ws.weights, ws.rank, 4)
    assert ser.coeffs[0] == {(0, 0): 1}
    assert ser.constant_term(0) == 1


def test_series_exponents_bounded():
    ws = adjoint_weight_system("su2xsu3")
    N = 5
    ser = TruncatedTorusSeries.from_weight_factors(ws.weights, ws.rank, N)
    for d, poly in enumerate(ser.coeffs):
        for exp in poly:
            assert max(abs(e) for e in exp) <= d <= N


@pytest.mark.parametrize("engine", ["numpy", "object"])
def test_series_engines_agree(engine):
    ws = adjoint_weight_system("su2xsu2")
    ref = TruncatedTorusSeries.from_weight_factors(ws.weights, ws.rank, 6)
    alt = TruncatedTorusSeries.from_weight_factors(ws.weights, ws.rank, 6,
                                                   engine=engine)
    assert ref.coeffs == alt.coeffs


def test_molien_engines_agree():
    ws = adjoint_weight_system("su2xsu3")
    base = molien_series(ws, 8)
    for engine in ("numpy", "object"):
        assert molien_series(ws, 8, engine=engine) == base


# -- series values ------------------------------------------------------------------

def test_poincare_2x3_low_degrees():
    ws = adjoint_weight_system("su2xsu3")
    assert molien_series(ws, 4) == [1, 0, 3, 4, 15]


def test_poincare_2x3_through_16():
    ws = adjoint_weight_system("su2xsu3")
    assert molien_series(ws, 16) == POINCARE_2X3


def test_two_qubit_series_matches_rational():
    ws = adjoint_weight_system("su2xsu2")
    assert molien_series(ws, 20) == TWO_QUBIT_RATIONAL.series(20)


def test_trivial_group_counts_free_ring():
    for dim in range(1, 6):
        ws = WeightSystem(1, ((0,),) * dim, (), 1)
        series = molien_series(ws, 10)
        expect = [math.comb(dim + d - 1, d) for d in range(11)]
        assert series == expect


def test_truncation_soundness():
    ws = adjoint_weight_system("su2xsu3")
    assert molien_series(ws, 12)[:9] == molien_series(ws, 8)


def test_reduced_backend_agrees():
    ws22 = adjoint_weight_system("su2xsu2")
    assert (molien_series(ws22, 12, backend="reduced")
            == molien_series(ws22, 12))
    ws23 = adjoint_weight_system("su2xsu3")
    assert (molien_series(ws23, 8, backend="reduced")
            == POINCARE_2X3[:9])


def test_reduced_backend_needs_known_group():
    ws = WeightSystem(1, ((0,), (1,), (-1,)), ((1,), (-1,)), 2)
    with pytest.raises(ValueError, match="reduced backend"):
        molien_series(ws, 4, backend="reduced")


def test_degree_cap():
    ws = adjoint_weight_system("su2xsu2")
    with pytest.raises(ValueError, match="resource cap 20"):
        molien_series(ws, 21)
    assert len(molien_series(ws, 22, degree_cap=25)) == 23


def test_bad_backend_and_engine():
    ws = adjoint_weight_system("su2xsu2")
    with pytest.raises(ValueError, match="backend"):
        molien_series(ws, 4, backend="contour")
    with pytest.raises(ValueError, match="engine"):
        molien_series(ws, 4, engine="fortran")


# -- rational forms ------------------------------------------------------------------

def test_rational_series_geometric():
    assert rational_series([1], [(1, 1)], 8) == [1] * 9


def test_rational_series_two_qubit_low_degrees():
    assert TWO_QUBIT_RATIONAL.series(3) == [1, 0, 3, 2]


@pytest.mark.parametrize("form,N", [(TWO_QUBIT_RATIONAL, 20)])
def test_rational_series_matches_fraction_oracle(form, N):
    oracle = expand_rational_fraction_oracle(form.numerator, form.denominator, N)
    assert form.series(N) == oracle


def test_qubit_qutrit_rational_matches_fraction_oracle():
    form = qubit_qutrit_rational()
    oracle = expand_rational_fraction_oracle(form.numerator, form.denominator, 16)
    assert form.series(16) == oracle


def test_qubit_qutrit_rational_matches_series():
    assert qubit_qutrit_rational().series(16) == POINCARE_2X3


def test_rational_series_validates_denominator():
    with pytest.raises(ValueError, match="degree"):
        rational_series([1], [(0, 1)], 4)
    with pytest.raises(ValueError, match="multiplicity"):
        rational_series([1], [(2, 0)], 4)


def test_palindromy_two_qubit():
    assert palindromy_check(TWO_QUBIT_RATIONAL.numerator,
                            TWO_QUBIT_RATIONAL.denominator, -1, 15)
    assert not palindromy_check(TWO_QUBIT_RATIONAL.numerator,
                                TWO_QUBIT_RATIONAL.denominator, 1, 15)
    assert not palindromy_check(TWO_QUBIT_RATIONAL.numerator,
                                TWO_QUBIT_RATIONAL.denominator, -1, 14)


def test_palindromy_qubit_qutrit():
    form = qubit_qutrit_rational()
    assert palindromy_check(form.numerator, QUBIT_QUTRIT_DENOMINATOR, 1, 35)


def test_palindromy_rejects_non_palindrome():
    assert not palindromy_check([1, 1, 0], [(1, 2)], 1, 0)


def test_palindromy_sign_flipped_numerator():
    # odd antisymmetric numerator: N(1/q) = -q^-3 N(q)
    assert palindromy_check([1, 2, -2, -1], [(1, 1)], 1, -2)


def test_numerator_completion_consistency():
    num = qubit_qutrit_rational().numerator
    assert len(num) == 76
    assert num[39] == num[36] == 4308636
    assert num[72] == num[73] == num[74] == 0
    assert num == num[::-1]


def test_numerator_completion_rejects_inconsistent_prefix():
    with pytest.raises(ArithmeticError, match="palindromy"):
        complete_numerator_by_palindromy({0: 1, 4: 2, 71: 3, 75: 1}, 75)
