"""The ladder diagram of Fl(1,n;n+1), its positive paths and the face correspondence.

Lattice points are (x, y) integer pairs. An edge is (x, y, d): the unit segment
leaving (x, y) to the right (d = RIGHT) or upwards (d = UP). Unit boxes are
keyed by their upper-right corner (i, j).
"""
import itertools
from dataclasses import dataclass

import networkx as nx

from .models import (LAMBDA1, LAMBDA2, LAMBDA3, DimensionMismatchError, DomainError,
                     FaceDescriptor, VerificationError, col_label, pattern_labels,
                     row_label)

RIGHT = 0
UP = 1

# 2(n+1) positive paths give 2^(n+1) - 1 unions per side
MAX_ENUMERATION_N = 8

ORIGIN = (0, 0)


def edge_end(edge):
    x, y, d = edge
    return (x + 1, y) if d == RIGHT else (x, y + 1)


def edge_str(edge):
    x, y, d = edge
    return f"({x},{y}){'R' if d == RIGHT else 'U'}"


def box_edges(i, j):
    """Boundary segments of the unit box with upper-right corner (i, j)."""
    x, y = i - 1, j - 1
    return {(x, y, RIGHT), (x, y + 1, RIGHT), (x, y, UP), (x + 1, y, UP)}


@dataclass(frozen=True)
class LadderGraph:
    n: int
    boxes: tuple
    edges: frozenset

    @property
    def far_points(self):
        return ((1, self.n), (self.n, 1))

    def vertices(self):
        return {p for edge in self.edges for p in (edge[:2], edge_end(edge))}


@dataclass(frozen=True)
class PositivePath:
    vertices: tuple

    @property
    def end(self):
        return self.vertices[-1]

    def edges(self):
        found = []
        for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:]):
            found.append((x0, y0, RIGHT if x1 > x0 else UP))
        return frozenset(found)

    def __str__(self):
        return ''.join(f"({x},{y})" for x, y in self.vertices)


@dataclass(frozen=True)
class LadderSubgraph:
    n: int
    edges: frozenset

    def sorted_edges(self):
        return sorted(self.edges)

    def sort_key(self):
        return (len(self.edges), self.sorted_edges())

    def __str__(self):
        return ' '.join(edge_str(e) for e in self.sorted_edges())

    def to_dict(self):
        return {'n': self.n, 'edges': [list(e) for e in self.sorted_edges()]}


def build_gamma(n):
    if n < 2:
        raise DomainError(f"n must be at least 2, got {n}")
    boxes = tuple([(1, j) for j in range(1, n + 1)] + [(i, 1) for i in range(2, n + 1)])
    edges = set()
    for i, j in boxes:
        edges |= box_edges(i, j)
    return LadderGraph(n, boxes, frozenset(edges))


def _monotone_digraph(g):
    graph = nx.DiGraph()
    graph.add_edges_from((e[:2], edge_end(e)) for e in g.edges)
    return graph


def enumerate_positive_paths(g):
    """Shortest paths from the origin to (1,n) and then to (n,1), each in lexicographic order."""
    graph = _monotone_digraph(g)
    paths = []
    for target in g.far_points:
        found = [PositivePath(tuple(p)) for p in nx.all_simple_paths(graph, ORIGIN, target)]
        paths += sorted(found, key=lambda p: p.vertices)
    return paths


def union_of_paths(n, paths):
    edges = frozenset().union(*(p.edges() for p in paths))
    return LadderSubgraph(n, edges)


def _side_unions(paths):
    unions = set()
    for size in range(1, len(paths) + 1):
        for chosen in itertools.combinations(paths, size):
            unions.add(frozenset().union(*(p.edges() for p in chosen)))
    return unions


def enumerate_subgraphs(g):
    """Every union of positive paths reaching both far points, deduplicated and sorted."""
    if g.n > MAX_ENUMERATION_N:
        raise DomainError(
            f"subgraph enumeration is limited to n <= {MAX_ENUMERATION_N}, got {g.n}")
    paths = enumerate_positive_paths(g)
    upper = [p for p in paths if p.end == (1, g.n)]
    lower = [p for p in paths if p.end == (g.n, 1)]
    found = {a | b for a in _side_unions(upper) for b in _side_unions(lower)}
    subgraphs = [LadderSubgraph(g.n, edges) for edges in found]
    return sorted(subgraphs, key=LadderSubgraph.sort_key)


def h1_rank(s):
    graph = nx.Graph()
    graph.add_edges_from((e[:2], edge_end(e)) for e in s.edges)
    if graph.number_of_nodes() == 0:
        return 0
    return graph.number_of_edges() - graph.number_of_nodes() + nx.number_connected_components(graph)


# ----------------------------
# Fillings
# ----------------------------
def fillings(n):
    """Box of every entry of the pattern; the weight entries sit in virtual boxes."""
    boxes = {LAMBDA1: (1, n + 2), LAMBDA2: (2, 2), LAMBDA3: (n + 2, 1)}
    boxes.update({row_label(j): (1, j) for j in range(1, n + 1)})
    boxes.update({col_label(i): (i, 1) for i in range(2, n + 1)})
    return boxes


def _separating_edge(upper_box, lower_box):
    """Segment between two boxes in one row or column; a virtual box faces its nearest real box."""
    (i1, j1), (i2, j2) = upper_box, lower_box
    if i1 == i2:
        # stacked: the segment is the top side of the lower box
        return (i1 - 1, min(j1, j2), RIGHT)
    # side by side: the segment is the right side of the left box
    return (min(i1, i2), j1 - 1, UP)


def adjacent_fillings(n):
    """Adjacent pairs (upper, lower, separating edge); the upper box carries the larger filling.

    Across a horizontal segment the box above is larger; across a vertical
    segment the box on the left is larger.
    """
    gamma = build_gamma(n)
    boxes = fillings(n)
    by_box = {box: label for label, box in boxes.items()}
    pairs = []
    for label, (i, j) in boxes.items():
        below = next(((i, jj) for jj in range(j - 1, 0, -1) if (i, jj) in by_box), None)
        if below is not None:
            pairs.append((label, by_box[below], _separating_edge((i, j), below)))
        right = next(((ii, j) for ii in range(i + 1, n + 3) if (ii, j) in by_box), None)
        if right is not None:
            pairs.append((label, by_box[right], _separating_edge((i, j), right)))
    stray = [edge_str(p[2]) for p in pairs if p[2] not in gamma.edges]
    if stray:
        raise VerificationError(f"fillings separated by segments outside the diagram: {stray}")
    order = {label: k for k, label in enumerate(pattern_labels(n))}
    return sorted(pairs, key=lambda p: (order[p[0]], order[p[1]]))


def face_of(s):
    """Face cut out by equating the adjacent fillings not separated by an edge of s."""
    pairs = [(upper, lower) for upper, lower, edge in adjacent_fillings(s.n) if edge not in s.edges]
    graph = nx.Graph()
    graph.add_nodes_from(pattern_labels(s.n))
    graph.add_edges_from(pairs)
    return FaceDescriptor.from_classes(s.n, nx.connected_components(graph), h1_rank(s))


def poset_leq(s1, s2):
    if s1.n != s2.n:
        raise DimensionMismatchError(f"subgraphs of different diagrams: n={s1.n} and n={s2.n}")
    return s1.edges <= s2.edges


@dataclass(frozen=True)
class CorrespondenceReport:
    n: int
    subgraph_count: int
    face_count: int
    injective: bool
    image_matches: bool
    order_isomorphic: bool
    dimensions_match: bool
    improper_count: int

    @property
    def passed(self):
        return (self.injective and self.image_matches and self.order_isomorphic
                and self.dimensions_match and self.improper_count == 1)

    def to_dict(self):
        return {
            'n': self.n,
            'subgraph_count': self.subgraph_count,
            'face_count': self.face_count,
            'injective': self.injective,
            'image_matches': self.image_matches,
            'order_isomorphic': self.order_isomorphic,
            'dimensions_match': self.dimensions_match,
            'improper_count': self.improper_count,
            'passed': self.passed,
        }


def face_correspondence(n, w):
    """Compare subgraphs of the ladder diagram with the faces found by the polytope oracle."""
    from .polytope import enumerate_faces

    subgraphs = enumerate_subgraphs(build_gamma(n))
    images = [face_of(s) for s in subgraphs]
    oracle = {face.descriptor.classes: face.descriptor for face in enumerate_faces(w, n)}

    classes = [f.classes for f in images]
    injective = len(set(classes)) == len(classes)
    image_matches = set(classes) == set(oracle)
    dimensions_match = all(f.classes in oracle and oracle[f.classes].dimension == f.dimension
                           for f in images)
    pair_sets = [f.pairs() for f in images]
    order_isomorphic = all(
        poset_leq(s1, s2) == (pair_sets[b] <= pair_sets[a])
        for (a, s1), (b, s2) in itertools.product(enumerate(subgraphs), repeat=2))
    improper_count = sum(1 for s in subgraphs if h1_rank(s) == 2 * n - 1)
    return CorrespondenceReport(n, len(subgraphs), len(oracle), injective, image_matches,
                                order_isomorphic, dimensions_match, improper_count)
