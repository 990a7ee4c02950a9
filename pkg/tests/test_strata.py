import pytest

from app.models import DomainError, InequalityCheck
from app.strata import (betti_numbers, betti_sum_from, boundary_report, full_ledger,
                        g_stratification, g_strata, induction_check, intersection_bound_check)


# ----------------------------
# Betti numbers
# ----------------------------
def test_betti_numbers_of_products():
    assert betti_numbers([3], 2) == {0: 1, 1: 2, 2: 1, 3: 1, 4: 2, 5: 1}
    assert betti_numbers([0], 1) == {0: 2, 1: 2}
    assert betti_numbers([], 0) == {0: 1}
    assert betti_sum_from([3], 2, 5) == 1
    assert betti_sum_from([3], 1, 5) == 0


def test_inequality_check_relations():
    assert InequalityCheck('a', 1, 1).passed
    assert not InequalityCheck('b', 1, 1, '<').passed
    assert InequalityCheck('c', 2, 2, '==').passed


# ----------------------------
# Boundary dimensions
# ----------------------------
@pytest.mark.parametrize('side', ['upper', 'lower'])
def test_boundary_report_n3(side):
    report = boundary_report(3, side)
    assert report.passed
    assert report.summary['dim_M'] == 8
    assert report.summary['dim_f'] == 4
    assert report.summary['dim_g'] == 1
    assert report.summary['dim_preimage_g'] == 5
    assert report.summary['codimension'] == 3


def test_boundary_report_n4():
    report = boundary_report(4)
    assert (report.summary['dim_M'], report.summary['dim_preimage_g']) == (12, 9)
    assert report.summary['dim_g'] == 3


def test_ledger_rejects_small_n_and_bad_side():
    with pytest.raises(DomainError):
        boundary_report(2)
    with pytest.raises(DomainError):
        g_stratification(3, 'left')


# ----------------------------
# Strata of g
# ----------------------------
def test_g_strata_n3():
    strata = g_strata(3)
    assert [s.label for s in strata] == ['g_(0,1)', 'g_(0,2)', 'g_(1,1)']
    assert [s.sphere_dim for s in strata] == [0, 3, 3]
    assert [s.torus_rank for s in strata] == [0, 0, 1]
    assert strata[0].witness.u_col[-1] == 0
    assert strata[1].witness.u_col[-1] == -6
    assert strata[2].total_fiber_dim == 5


@pytest.mark.parametrize('n', [3, 4, 5])
def test_stratum_dimensions_range(n):
    dims = {s.i for s in g_strata(n)}
    assert dims == set(range(0, 2 * n - 4))


@pytest.mark.parametrize('side', ['upper', 'lower'])
def test_g_stratification_passes(side):
    report = g_stratification(3, side)
    assert report.passed, report.failures()
    assert report.summary == {'stratum_count': 3, 'top_degree': 5}


def test_intersection_bound_skips_points():
    report = intersection_bound_check(3)
    assert report.passed
    assert report.summary['skipped_i0'] == 2
    assert report.summary['checked'] == 1


def test_induction_threshold():
    report = induction_check(4)
    assert report.passed
    assert report.summary == {'threshold': 10}


@pytest.mark.parametrize('n', [3, 4, 5, 6])
@pytest.mark.parametrize('side', ['upper', 'lower'])
def test_full_ledger_passes(n, side):
    reports = full_ledger(n, side)
    assert [r.title for r in reports] == ['boundary', 'g_stratification', 'intersection_bound', 'induction']
    for report in reports:
        assert report.passed, (report.title, report.failures())
        assert report.to_dict()['passed']
