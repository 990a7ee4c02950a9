from dataclasses import replace
from fractions import Fraction

import pytest

from app.models import (BulkParams, DimensionMismatchError, DomainError, NonUnitError,
                        TruncationMismatchError)
from app.novikov import INFINITY, ComplexRational, NovikovElement
from app.potential import (LaurentMonomial, LaurentPotential, VarId, block_exponents, build_potential,
                           certificate_from_dict, certify, default_trunc, extend_to_critical_point,
                           solve_split_leading, split_decompose, split_residuals, variables)

HALF = Fraction(1, 2)


def T(exp, trunc, coeff=1):
    return NovikovElement.monomial(coeff, exp, trunc)


# ----------------------------
# Variables
# ----------------------------
def test_variables_and_parsing():
    assert [str(v) for v in variables(3)] == ['y(1,1)', 'y(1,2)', 'y(1,3)', 'y(2,1)', 'y(3,1)']
    assert VarId.parse('y(1, 3)') == VarId.row(3)
    assert VarId.parse('y(2,1)') == VarId.col(2)
    with pytest.raises(DomainError):
        VarId.parse('y(2,2)')
    with pytest.raises(DomainError):
        VarId.parse('y(1,1')
    with pytest.raises(DimensionMismatchError):
        VarId.row(4).check(3)


# ----------------------------
# The potential
# ----------------------------
def test_block_exponents():
    assert block_exponents(3, HALF) == (1, Fraction(5, 2))
    assert block_exponents(4, 1) == (0, 4)


def test_default_trunc():
    assert default_trunc(3, HALF) == 6
    assert default_trunc(3, Fraction(1, 4)) == 3
    # 4 * 3 * 1/8 does not exceed 2 + 1/8
    assert default_trunc(3, Fraction(1, 8)) == Fraction(9, 4)


@pytest.mark.parametrize('n, count', [(3, 8), (4, 10), (5, 12)])
def test_monomial_count(n, count):
    assert len(build_potential(n, HALF)) == count


def test_potential_n3_valuations():
    W = build_potential(3, HALF)
    assert W.valuations() == [1, Fraction(5, 2)]
    assert W.trunc == 6
    assert sum(1 for row in W.rows() if row['valuation'] == '1') == 4
    assert build_potential(3, 1).valuations() == [0, 3]


def test_potential_rejects_bad_arguments():
    with pytest.raises(DomainError):
        build_potential(3, 0)
    with pytest.raises(DomainError):
        build_potential(3, Fraction(3, 2))
    with pytest.raises(DomainError):
        build_potential(2, HALF)
    with pytest.raises(DomainError, match='trunc too small'):
        build_potential(3, HALF, trunc=2)


def test_bulk_parameters_must_be_units():
    trunc = Fraction(6)
    with pytest.raises(NonUnitError):
        BulkParams(NovikovElement.zero(trunc), NovikovElement.one(trunc))
    with pytest.raises(NonUnitError):
        BulkParams(NovikovElement.one(trunc), T(1, trunc))
    with pytest.raises(TruncationMismatchError):
        build_potential(3, HALF, BulkParams.trivial(trunc), trunc=5)


def test_potential_n3_supports():
    W = build_potential(3, HALF, BulkParams.trivial(Fraction(6)))
    assert {(str(m), str(m.coeff)) for m in W.monomials} == {
        ('y(1,2)/y(1,1)', 'T'), ('y(1,2)', 'T'), ('y(1,1)/y(2,1)', 'T'), ('1/y(2,1)', 'T'),
        ('1/y(1,3)', 'T^(5/2)'), ('y(1,3)/y(1,2)', 'T^(5/2)'),
        ('y(3,1)', 'T^(5/2)'), ('y(2,1)/y(3,1)', 'T^(5/2)'),
    }


def test_trivial_bulk_gives_the_undeformed_potential():
    n, trunc = 4, Fraction(8)
    y11, y12, y13, y14 = (VarId.row(j) for j in range(1, 5))
    y21, y31, y41 = (VarId.col(i) for i in range(2, 5))
    low, high = T(Fraction(3, 2), trunc), T(Fraction(7, 2), trunc)
    W0 = LaurentPotential(n, HALF, trunc, [
        LaurentMonomial.of(low, {y12: 1, y11: -1}),
        LaurentMonomial.of(low, {y12: 1}),
        LaurentMonomial.of(low, {y11: 1, y21: -1}),
        LaurentMonomial.of(low, {y21: -1}),
        LaurentMonomial.of(high, {y14: -1}),
        LaurentMonomial.of(high, {y14: 1, y13: -1}),
        LaurentMonomial.of(high, {y13: 1, y12: -1}),
        LaurentMonomial.of(high, {y41: 1}),
        LaurentMonomial.of(high, {y31: 1, y41: -1}),
        LaurentMonomial.of(high, {y21: 1, y31: -1}),
    ])
    assert build_potential(n, HALF).monomials == W0.monomials
    assert build_potential(n, HALF, BulkParams.trivial(trunc)).monomials == W0.monomials


def test_log_derivative_n3():
    W = build_potential(3, HALF)
    d11 = W.log_derivative(VarId.row(1))
    assert len(d11) == 2
    assert sorted(str(m) for m in d11.monomials) == ['y(1,1)/y(2,1)', 'y(1,2)/y(1,1)']
    d13 = W.log_derivative(VarId.row(3))
    assert sorted(str(m.coeff) for m in d13.monomials) == ['-T^(5/2)', 'T^(5/2)']
    with pytest.raises(DimensionMismatchError):
        W.log_derivative(VarId.col(4))


def test_evaluate_at_one():
    W = build_potential(3, HALF)
    ones = {v: NovikovElement.one(W.trunc) for v in variables(3)}
    assert W.evaluate(ones) == T(1, 6, 4) + T(Fraction(5, 2), 6, 4)
    del ones[VarId.col(3)]
    with pytest.raises(DomainError):
        W.evaluate(ones)


def test_corner_derivative_vanishes_at_minus_one():
    W = build_potential(3, HALF)
    values = {v: NovikovElement.one(W.trunc) for v in variables(3)}
    for var in (VarId.row(1), VarId.row(2), VarId.col(2)):
        values[var] = -NovikovElement.one(W.trunc)
    assert not W.log_derivative(VarId.row(1)).evaluate(values)


def test_evaluate_is_additive():
    W = build_potential(3, HALF)
    P, Q = W.log_derivative(VarId.row(1)), W.log_derivative(VarId.row(2))
    values = {v: 1 + T(HALF, W.trunc) for v in variables(3)}
    values[VarId.row(2)] = -1 + T(1, W.trunc)
    assert (P + Q).evaluate(values) == P.evaluate(values) + Q.evaluate(values)
    with pytest.raises(DimensionMismatchError):
        P + build_potential(4, HALF)


def test_evaluate_needs_units_for_negative_exponents():
    W = build_potential(3, HALF)
    values = {v: NovikovElement.one(W.trunc) for v in variables(3)}
    values[VarId.row(1)] = T(1, W.trunc)
    with pytest.raises(NonUnitError):
        W.evaluate(values)


# ----------------------------
# Split leading term equation
# ----------------------------
def test_split_decompose_n3():
    corner, row, col = split_decompose(3, BulkParams.trivial(Fraction(6)))
    assert (len(corner), len(row), len(col)) == (4, 3, 3)
    assert all(m.coeff.trunc == 1 for piece in (corner, row, col) for m in piece.monomials)
    assert 'y(1,2)' in [str(m) for m in row.monomials]
    assert '1/y(2,1)' in [str(m) for m in col.monomials]


@pytest.mark.parametrize('n', [3, 4, 5, 6, 7, 8])
def test_split_solution_closed_form(n):
    solution = solve_split_leading(n)
    assert solution.assignment[VarId.row(1)] == -1
    for j in range(2, n + 1):
        assert solution.assignment[VarId.row(j)] == (-1) ** (j - 1)
    for i in range(2, n + 1):
        assert solution.assignment[VarId.col(i)] == -1
    assert solution.c == (-1) ** n
    assert solution.c_under == -1
    assert (solution.a, solution.a_under) == (ComplexRational(1), ComplexRational(-1))
    assert all(not residual for _, _, residual in split_residuals(solution))


def test_split_residuals_detect_a_wrong_value():
    solution = solve_split_leading(3)
    assignment = dict(solution.assignment)
    assignment[VarId.row(3)] = ComplexRational(2)
    broken = replace(solution, assignment=assignment)
    failing = {(piece, str(var)) for piece, var, residual in split_residuals(broken) if residual}
    assert ('row', 'y(1,3)') in failing


# ----------------------------
# Critical points
# ----------------------------
@pytest.mark.parametrize('n', [3, 4, 5])
@pytest.mark.parametrize('t', [Fraction(1, 4), HALF, Fraction(3, 4), Fraction(1)])
def test_critical_point_certificates(n, t):
    cert = extend_to_critical_point(n, t)
    assert cert.valid
    assert cert.leading_ok
    assert all(v is INFINITY for v in cert.residual_valuations.values())
    report = certify(build_potential(n, t, cert.bulk, cert.trunc), cert)
    assert report.passed
    assert report.failures() == []


def test_critical_point_n3_closed_form():
    cert = extend_to_critical_point(3, HALF)
    trunc = cert.trunc
    s = -1 - T(Fraction(3, 2), trunc)
    assert cert.assignment[VarId.row(1)] == s
    assert cert.assignment[VarId.row(3)] == 1 + T(Fraction(3, 2), trunc)
    assert cert.assignment[VarId.col(3)] == -(s * s)
    assert cert.bulk.c == -(1 + T(Fraction(3, 2), trunc))
    assert cert.bulk.c_under == (s ** 3).invert_unit()


def test_critical_point_with_explicit_trunc():
    cert = extend_to_critical_point(4, HALF, trunc=8)
    assert cert.trunc == 8
    assert cert.threshold == cert.trunc
    assert cert.valid
    with pytest.raises(DomainError):
        extend_to_critical_point(4, HALF, trunc=3)


def test_flipped_variable_fails_certification():
    cert = extend_to_critical_point(3, HALF)
    assignment = dict(cert.assignment)
    assignment[VarId.row(3)] = -assignment[VarId.row(3)]
    flipped = replace(cert, assignment=assignment)
    report = certify(build_potential(3, HALF, cert.bulk, cert.trunc), flipped)
    assert not report.passed
    # both terms of d/dy(1,3) change sign, d/dy(1,2) picks up 2 T^(5/2) y(1,3)/y(1,2)
    assert report.failures() == ['y(1,2)']
    assert [row.valuation for row in report.rows if not row.passed] == [Fraction(5, 2)]


def test_certify_checks_n():
    cert = extend_to_critical_point(3, HALF)
    with pytest.raises(DimensionMismatchError):
        certify(build_potential(4, HALF), cert)


def test_certificate_round_trip():
    cert = extend_to_critical_point(4, Fraction(3, 4))
    restored = certificate_from_dict(cert.to_dict())
    assert restored == cert
    assert certify(build_potential(4, Fraction(3, 4), restored.bulk, restored.trunc), restored).passed


def test_malformed_certificate():
    with pytest.raises(DomainError):
        certificate_from_dict({'n': 3})
    with pytest.raises(DomainError):
        certificate_from_dict({'n': 3, 't': '1/2', 'trunc': '6', 'assignment': {'x': {}}})


def test_certificate_threshold_must_equal_trunc():
    cert = extend_to_critical_point(3, HALF)
    data = cert.to_dict()
    del data['threshold']
    assert certificate_from_dict(data).threshold == cert.trunc
    data['threshold'] = '0'
    with pytest.raises(DomainError, match='threshold'):
        certificate_from_dict(data)


def test_certify_measures_against_trunc():
    cert = extend_to_critical_point(3, HALF)
    assignment = dict(cert.assignment)
    assignment[VarId.row(3)] = -assignment[VarId.row(3)]
    lowered = replace(cert, assignment=assignment, threshold=Fraction(0))
    report = certify(build_potential(3, HALF, cert.bulk, cert.trunc), lowered)
    assert not report.passed
    assert report.failures() == ['y(1,2)']
    assert {row.threshold for row in report.rows} == {cert.trunc}
    with pytest.raises(TruncationMismatchError):
        certify(build_potential(3, HALF, trunc=8), cert)


def test_certificate_with_a_non_integer_n():
    data = extend_to_critical_point(3, HALF).to_dict()
    data['n'] = 'three'
    with pytest.raises(DomainError, match='malformed certificate'):
        certificate_from_dict(data)
