"""The Gelfand-Zeitlin polytope of Fl(1,n;n+1) as an exact inequality system.

Coordinates are u(1,1..n) and u(2..n,1); together with the weight entries they
fill the interlacing pattern

    lambda1 >= u(1,n) >= ... >= u(1,2) >= lambda2
    u(1,2) >= u(1,1) >= u(2,1) >= ... >= u(n,1) >= lambda3
    lambda2 >= u(2,1)

Faces are described by which of these cover relations hold with equality.
"""
import itertools
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx
import sympy as sp

from .models import (LAMBDA1, LAMBDA2, LAMBDA3, DimensionMismatchError, DomainError,
                     FaceDescriptor, FiberType, GZPoint, OutsidePolytopeError,
                     VerificationError, col_label, coordinate_labels, pattern_labels,
                     row_label)
from .novikov import ComplexRational


@dataclass(frozen=True)
class Cover:
    """One inequality upper >= lower of the pattern."""
    upper: str
    lower: str

    def __str__(self):
        return f"{self.upper} >= {self.lower}"


@dataclass(frozen=True)
class PolytopeFace:
    descriptor: FaceDescriptor
    witness: GZPoint
    active: frozenset


def pattern_covers(n):
    if n < 2:
        raise DomainError(f"n must be at least 2, got {n}")
    covers = [Cover(LAMBDA1, row_label(n))]
    covers += [Cover(row_label(k + 1), row_label(k)) for k in range(n - 1, 0, -1)]
    covers.append(Cover(row_label(2), LAMBDA2))
    covers.append(Cover(row_label(1), col_label(2)))
    covers.append(Cover(LAMBDA2, col_label(2)))
    covers += [Cover(col_label(k), col_label(k + 1)) for k in range(2, n)]
    covers.append(Cover(col_label(n), LAMBDA3))
    return tuple(covers)


def pattern_values(w, u):
    values = u.coordinates()
    values.update(w.constants())
    return values


def _require_n(u, n):
    if n is not None and u.n != n:
        raise DimensionMismatchError(f"point has n={u.n}, expected n={n}")


def contains(w, u, n=None):
    _require_n(u, n)
    values = pattern_values(w, u)
    return all(values[c.upper] >= values[c.lower] for c in pattern_covers(u.n))


def _require_inside(w, u):
    if not contains(w, u):
        raise OutsidePolytopeError(f"point {u} lies outside the polytope for {w.as_tuple()}")


def active_covers(w, u):
    values = pattern_values(w, u)
    return frozenset(c for c in pattern_covers(u.n) if values[c.upper] == values[c.lower])


def equality_classes(labels, pairs):
    graph = nx.Graph()
    graph.add_nodes_from(labels)
    graph.add_edges_from(pairs)
    return [frozenset(component) for component in nx.connected_components(graph)]


def equality_rank(n, covers):
    """Rank of the linear system u_a = u_b (constants moved to the right-hand side)."""
    variables = coordinate_labels(n)
    index = {label: i for i, label in enumerate(variables)}
    rows = []
    for cover in covers:
        row = [0] * len(variables)
        if cover.upper in index:
            row[index[cover.upper]] += 1
        if cover.lower in index:
            row[index[cover.lower]] -= 1
        rows.append(row)
    if not rows:
        return 0
    return sp.Matrix(rows).rank()


def active_face(w, u):
    _require_inside(w, u)
    n = u.n
    active = active_covers(w, u)
    classes = equality_classes(pattern_labels(n), [(c.upper, c.lower) for c in active])
    dimension = (2 * n - 1) - equality_rank(n, active)
    return FaceDescriptor.from_classes(n, classes, dimension)


def condition_j(w, u):
    """The j in [1, n-1] for which the fiber over u carries an S^(2j+1) factor, or None."""
    _require_inside(w, u)
    n = u.n
    values = pattern_values(w, u)
    values[row_label(n + 1)] = w.lambda1
    values[col_label(n + 1)] = w.lambda3
    for j in range(1, n):
        chain = [row_label(k) for k in range(1, j + 2)] + [col_label(k) for k in range(2, j + 2)]
        if any(values[label] != w.lambda2 for label in chain):
            continue
        if values[row_label(j + 2)] > values[row_label(j + 1)] and values[col_label(j + 1)] > values[col_label(j + 2)]:
            return j
    return None


def fiber_type(w, u):
    j = condition_j(w, u)
    sphere_dim = 2 * j + 1 if j else 0
    torus_rank = active_face(w, u).dimension
    return FiberType(sphere_dim, torus_rank, sphere_dim + torus_rank == 2 * u.n - 1)


# ----------------------------
# Distinguished points
# ----------------------------
def monotone_point(n, j):
    if n < 2:
        raise DomainError(f"n must be at least 2, got {n}")
    if not 0 <= j <= n - 1:
        raise DomainError(f"j must lie in [0, {n - 1}], got {j}")

    def value(k):
        return 0 if k <= j + 1 else (n - 1) * (k - 1)

    return GZPoint([value(k) for k in range(1, n + 1)], [-value(k) for k in range(2, n + 1)])


def center_point(n):
    return monotone_point(n, 0)


def corner_point(n):
    """The point u(1,1) = u(1,2) = u(2,1) = 0, u(1,k) = -u(k,1) = n(k-2) for k >= 3."""
    if n < 2:
        raise DomainError(f"n must be at least 2, got {n}")

    def value(k):
        return 0 if k <= 2 else n * (k - 2)

    return GZPoint([value(k) for k in range(1, n + 1)], [-value(k) for k in range(2, n + 1)])


def segment_point(n, t):
    t = Fraction(t)
    if not 0 <= t <= 1:
        raise DomainError(f"t must lie in [0, 1], got {t}")
    start, end = center_point(n), corner_point(n)
    return GZPoint.from_values((1 - t) * a + t * b for a, b in zip(start.as_tuple(), end.as_tuple()))


def is_monotone(n, u):
    _require_n(u, n)
    return any(u == monotone_point(n, j) for j in range(n))


def lagrangian_face(n, j):
    """The Lagrangian face f_j: lambda2 = u(1,1..j+1) = u(2..j+1,1); f_0 is the whole polytope."""
    if not 0 <= j <= n - 1:
        raise DomainError(f"j must lie in [0, {n - 1}], got {j}")
    if j == 0:
        return FaceDescriptor.from_classes(n, [], 2 * n - 1)
    group = [LAMBDA2] + [row_label(k) for k in range(1, j + 2)] + [col_label(k) for k in range(2, j + 2)]
    return FaceDescriptor.from_classes(n, [group], 2 * n - 2 * j - 2)


# ----------------------------
# Exhaustive face oracle
# ----------------------------
def face_with_active(w, n, active):
    """The face whose equalities are exactly the given covers, or None when there is none.

    Nonempty faces are certified by an exact relative-interior point: every class
    without a constant sits at max over constants K below it of
    lambda_K + (longest chain to K) * eps.
    """
    active = frozenset(active)
    covers = pattern_covers(n)
    labels = pattern_labels(n)
    constants = w.constants()
    classes = equality_classes(labels, [(c.upper, c.lower) for c in active])
    class_of = {label: idx for idx, group in enumerate(classes) for label in group}
    inactive = [c for c in covers if c not in active]
    if any(class_of[c.upper] == class_of[c.lower] for c in inactive):
        return None

    fixed = {}
    for idx, group in enumerate(classes):
        pinned = [label for label in group if label in constants]
        if len(pinned) > 1:
            return None
        if pinned:
            fixed[idx] = constants[pinned[0]]

    quotient = nx.DiGraph()
    quotient.add_nodes_from(range(len(classes)))
    quotient.add_edges_from((class_of[c.upper], class_of[c.lower]) for c in inactive)
    if not nx.is_directed_acyclic_graph(quotient):
        return None

    # longest chain from every class down to each constant class
    reach = {}
    for node in reversed(list(nx.topological_sort(quotient))):
        lengths = {node: 0} if node in fixed else {}
        for succ in quotient.successors(node):
            for k, length in reach[succ].items():
                if lengths.get(k, -1) < length + 1:
                    lengths[k] = length + 1
        reach[node] = lengths

    eps = None
    for k, value in fixed.items():
        for k2, length in reach[k].items():
            if k2 == k:
                continue
            gap = value - fixed[k2]
            if gap <= 0:
                return None
            eps = gap / length if eps is None else min(eps, gap / length)
    eps = Fraction(1) if eps is None else eps

    point_values = {}
    for idx in range(len(classes)):
        if idx in fixed:
            point_values[idx] = fixed[idx]
        else:
            point_values[idx] = max(fixed[k] + length * eps for k, length in reach[idx].items())
    witness = GZPoint.from_values(point_values[class_of[label]] for label in coordinate_labels(n))
    if active_covers(w, witness) != active:
        raise VerificationError(f"relative-interior point {witness} does not realise {sorted(map(str, active))}")

    dimension = sum(1 for idx in range(len(classes)) if idx not in fixed)
    return PolytopeFace(FaceDescriptor.from_classes(n, classes, dimension), witness, active)


def enumerate_faces(w, n, required=()):
    """All nonempty faces whose active covers include `required`, sorted by dimension."""
    required = frozenset(required)
    optional = [c for c in pattern_covers(n) if c not in required]
    faces = []
    for size in range(len(optional) + 1):
        for chosen in itertools.combinations(optional, size):
            face = face_with_active(w, n, required.union(chosen))
            if face is not None:
                faces.append(face)
    faces.sort(key=lambda f: (f.descriptor.dimension, f.descriptor.sorted_classes()))
    return faces


def face_census(w, n):
    """Number of faces in each dimension."""
    counts = [0] * (2 * n)
    for face in enumerate_faces(w, n):
        counts[face.descriptor.dimension] += 1
    return counts


def lagrangian_faces(w, n):
    found = []
    for face in enumerate_faces(w, n):
        j = condition_j(w, face.witness)
        sphere_dim = 2 * j + 1 if j else 0
        if sphere_dim + face.descriptor.dimension == 2 * n - 1:
            found.append(face)
    return found


# ----------------------------
# Plucker coordinates and the toric moment map
# ----------------------------
def plucker_residual(pv):
    return degeneration_residual(pv, 1)


def degeneration_residual(pv, s):
    s = Fraction(s)
    total = ComplexRational()
    for i, (a, b) in enumerate(zip(pv.p, pv.p_under)):
        term = a * b if i % 2 == 0 else -(a * b)
        total = total + (term if i < 2 else s * term)
    return total


def moment_map_eval(pv, w):
    norm = sum((x.abs2() for x in pv.p), Fraction(0))
    norm_under = sum((x.abs2() for x in pv.p_under), Fraction(0))
    if not norm or not norm_under:
        raise DomainError('moment map needs both Plucker factors nonzero')
    n = pv.n
    top = w.lambda1 - w.lambda2
    bottom = w.lambda3 - w.lambda2
    partial = list(itertools.accumulate(x.abs2() / norm for x in pv.p))
    partial_under = list(itertools.accumulate(x.abs2() / norm_under for x in pv.p_under))
    u_row = [w.lambda2 + top * partial[0] + bottom * partial_under[0]]
    u_row += [w.lambda2 + top * partial[j - 1] for j in range(2, n + 1)]
    u_col = [w.lambda2 + bottom * partial_under[j - 1] for j in range(2, n + 1)]
    point = GZPoint(u_row, u_col)
    if not degeneration_residual(pv, 0) and not contains(w, point):
        raise VerificationError(f"moment map image {point} left the polytope")
    return point
