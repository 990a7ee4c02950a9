"""Dimension bookkeeping for the boundary of the pseudocycle domain.

Works over the monotone weight. The facet f is {u(1,n) = lambda1} on the upper
side and {u(n,1) = lambda3} on the lower side; g is the part of f where the
corner entries u(1,1), u(1,2), u(2,1) meet lambda2. Homology is never computed;
every statement is reduced to integer comparisons, with Betti numbers of
sphere and torus products read off their Poincare polynomials.
"""
import logging
from itertools import groupby

import sympy as sp

from .models import (LAMBDA1, LAMBDA2, LAMBDA3, DomainError, InequalityCheck,
                     LedgerReport, StratumReport, Weight, col_label, row_label)
from .polytope import Cover, enumerate_faces, face_with_active, fiber_type, pattern_covers

logger = logging.getLogger(__name__)

SIDES = ('upper', 'lower')

_t = sp.Symbol('t')


def _check_args(n, side):
    if n < 3:
        raise DomainError(f"the boundary ledger needs n >= 3, got {n}")
    if side not in SIDES:
        raise DomainError(f"side must be one of {', '.join(SIDES)}, got '{side}'")


def facet_cover(n, side):
    return Cover(LAMBDA1, row_label(n)) if side == 'upper' else Cover(col_label(n), LAMBDA3)


def corner_covers(n):
    corner = {row_label(1), row_label(2), col_label(2), LAMBDA2}
    return frozenset(c for c in pattern_covers(n) if c.upper in corner and c.lower in corner)


def g_covers(n, side):
    return corner_covers(n) | {facet_cover(n, side)}


# ----------------------------
# Poincare polynomials
# ----------------------------
def poincare_polynomial(spheres, torus_rank):
    """Poincare polynomial of a product of spheres S^k (S^0 is two points) and a torus."""
    poly = (1 + _t) ** torus_rank
    for k in spheres:
        poly *= 2 if k == 0 else 1 + _t ** k
    return sp.Poly(sp.expand(poly), _t)


def betti_numbers(spheres, torus_rank):
    poly = poincare_polynomial(spheres, torus_rank)
    return {degree: int(coeff) for (degree,), coeff in poly.as_dict().items()}


def betti_sum_from(spheres, torus_rank, degree):
    return sum(b for d, b in betti_numbers(spheres, torus_rank).items() if d >= degree)


def _sphere_factors(stratum):
    return [stratum.sphere_dim] if stratum.sphere_dim else []


# ----------------------------
# Reports
# ----------------------------
def boundary_report(n, side='upper'):
    _check_args(n, side)
    w = Weight.monotone(n)
    f = face_with_active(w, n, {facet_cover(n, side)})
    g = face_with_active(w, n, g_covers(n, side))
    g_fiber = fiber_type(w, g.witness)
    dim_m = 2 * (2 * n - 1) - 2
    dim_f = f.descriptor.dimension
    dim_g = g.descriptor.dimension
    preimage = 2 * dim_g + g_fiber.sphere_dim
    codim = dim_m - preimage
    checks = (
        InequalityCheck('dim M = 4n-4', dim_m, 4 * n - 4, '=='),
        InequalityCheck('dim f = 2n-2', dim_f, 2 * n - 2, '=='),
        InequalityCheck('dim g = dim f - 3', dim_g, dim_f - 3, '=='),
        InequalityCheck('sphere factor over g is S^3', g_fiber.sphere_dim, 3, '=='),
        InequalityCheck('dim preimage of g = 4n-7', preimage, 4 * n - 7, '=='),
        InequalityCheck('codimension of the boundary = 3', codim, 3, '=='),
        InequalityCheck('codimension of the boundary >= 2', 2, codim, '<='),
    )
    summary = {
        'dim_M': dim_m,
        'dim_f': dim_f,
        'dim_g': dim_g,
        'dim_preimage_g': preimage,
        'codimension': codim,
        'f': str(f.descriptor),
        'g': str(g.descriptor),
    }
    logger.debug(f"boundary n={n} side={side}: {summary}")
    return LedgerReport('boundary', n, side, checks, summary=summary)


def g_strata(n, side='upper'):
    """Faces of g labelled g_(i,j): i is the face dimension, j counts within i."""
    _check_args(n, side)
    w = Weight.monotone(n)
    found = []
    for face in enumerate_faces(w, n, required=g_covers(n, side)):
        fiber = fiber_type(w, face.witness)
        found.append((face, fiber))

    def order(item):
        face, fiber = item
        return (face.descriptor.dimension, fiber.sphere_dim, tuple(-x for x in face.witness.as_tuple()))

    found.sort(key=order)
    strata = []
    for i, group in groupby(found, key=lambda item: item[0].descriptor.dimension):
        for j, (face, fiber) in enumerate(group, start=1):
            strata.append(StratumReport(f"g_({i},{j})", face.descriptor, i, j,
                                        fiber.sphere_dim, fiber.torus_rank, face.witness))
    return strata


def g_stratification(n, side='upper'):
    strata = g_strata(n, side)
    top_degree = 4 * n - 7
    checks = []
    for s in strata:
        checks += [
            InequalityCheck(f"{s.label}: torus rank = face dimension", s.torus_rank, s.i, '=='),
            InequalityCheck(f"{s.label}: dim S + i <= 2n-1", s.sphere_dim + s.i, 2 * n - 1),
            InequalityCheck(f"{s.label}: dim S x T^i < 4n-7", s.sphere_dim + s.i, top_degree, '<'),
            InequalityCheck(f"{s.label}: Betti numbers vanish from degree 4n-7",
                            betti_sum_from(_sphere_factors(s), s.i, top_degree), 0, '=='),
        ]
    dims = [s.i for s in strata]
    checks += [
        InequalityCheck('lowest stratum dimension = 0', min(dims), 0, '=='),
        InequalityCheck('highest stratum dimension = 2n-5', max(dims), 2 * n - 5, '=='),
    ]
    if n == 3:
        census = sorted(s.sphere_dim for s in strata)
        checks += [
            InequalityCheck('n=3: three strata', len(strata), 3, '=='),
            InequalityCheck('n=3: one stratum with a point factor', census.count(0), 1, '=='),
            InequalityCheck('n=3: two strata with an S^3 factor', census.count(3), 2, '=='),
        ]
    logger.debug(f"g stratification n={n} side={side}: {len(strata)} strata")
    summary = {'stratum_count': len(strata), 'top_degree': top_degree}
    return LedgerReport('g_stratification', n, side, tuple(checks), tuple(strata), summary)


def intersection_bound_check(n, side='upper'):
    """Dimension of S^(i-1) x S x T^i against 4n-7 for every stratum with i >= 1."""
    strata = g_strata(n, side)
    top_degree = 4 * n - 7
    checks = []
    skipped = 0
    for s in strata:
        if s.i == 0:
            skipped += 1
            continue
        lhs = (s.i - 1) + s.sphere_dim + s.i
        bound = (s.i - 1) + (2 * n - 1)
        checks += [
            InequalityCheck(f"{s.label}: dim S^(i-1) x S x T^i <= (i-1) + (2n-1)", lhs, bound),
            InequalityCheck(f"{s.label}: (i-1) + (2n-1) <= (2n-6) + (2n-1)", bound, (2 * n - 6) + (2 * n - 1)),
            InequalityCheck(f"{s.label}: Betti numbers vanish from degree 4n-7",
                            betti_sum_from([s.i - 1] + _sphere_factors(s), s.i, top_degree), 0, '=='),
        ]
    checks.append(InequalityCheck('(2n-6) + (2n-1) = 4n-7', (2 * n - 6) + (2 * n - 1), top_degree, '=='))
    summary = {'checked': len(strata) - skipped, 'skipped_i0': skipped, 'top_degree': top_degree}
    return LedgerReport('intersection_bound', n, side, tuple(checks), tuple(strata), summary)


def induction_check(n, side='upper'):
    """Comparisons of the stratum-by-stratum vanishing induction."""
    strata = g_strata(n, side)
    degree = 4 * n - 6
    checks = []
    for s in strata:
        if s.i == 0:
            checks.append(InequalityCheck(f"{s.label}: base case top degree < 4n-6",
                                          s.sphere_dim, degree, '<'))
            continue
        checks += [
            InequalityCheck(f"{s.label}: top degree of the stratum < 4n-6", s.sphere_dim + s.i, degree, '<'),
            InequalityCheck(f"{s.label}: top degree of the overlap < 4n-7",
                            (s.i - 1) + s.sphere_dim + s.i, degree - 1, '<'),
        ]
    checks.append(InequalityCheck('pseudocycle threshold 4n-6 <= (4n-4) - 1', degree, (4 * n - 4) - 1))
    return LedgerReport('induction', n, side, tuple(checks), tuple(strata), {'threshold': degree})


def full_ledger(n, side='upper'):
    return [boundary_report(n, side), g_stratification(n, side),
            intersection_bound_check(n, side), induction_check(n, side)]
