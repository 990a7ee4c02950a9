import pytest

from app.ladder import (RIGHT, UP, LadderSubgraph, adjacent_fillings, build_gamma,
                        enumerate_positive_paths, enumerate_subgraphs, face_correspondence,
                        face_of, fillings, h1_rank, poset_leq, union_of_paths)
from app.models import (LAMBDA1, LAMBDA2, DimensionMismatchError, DomainError, FaceDescriptor,
                        Weight, col_label, row_label)
from app.polytope import face_census, lagrangian_face, pattern_covers


def by_face(subgraphs, descriptor):
    found = [s for s in subgraphs if face_of(s) == descriptor]
    assert len(found) == 1
    return found[0]


# ----------------------------
# The diagram
# ----------------------------
@pytest.mark.parametrize('n', [2, 3, 4, 5, 8])
def test_gamma_sizes(n):
    g = build_gamma(n)
    assert len(g.boxes) == 2 * n - 1
    assert len(g.edges) == 6 * n - 2
    assert len(g.vertices()) == 4 * n
    assert h1_rank(LadderSubgraph(n, g.edges)) == 2 * n - 1


def test_gamma_rejects_small_n():
    with pytest.raises(DomainError):
        build_gamma(1)


def test_gamma_n3_edges():
    g = build_gamma(3)
    assert (0, 0, RIGHT) in g.edges
    assert (0, 3, RIGHT) in g.edges
    assert (3, 0, UP) in g.edges
    assert (1, 2, RIGHT) not in g.edges
    assert g.far_points == ((1, 3), (3, 1))


# ----------------------------
# Positive paths
# ----------------------------
@pytest.mark.parametrize('n', [2, 3, 4])
def test_positive_paths(n):
    g = build_gamma(n)
    paths = enumerate_positive_paths(g)
    assert len(paths) == 2 * (n + 1)
    assert sum(1 for p in paths if p.end == (1, n)) == n + 1
    for p in paths:
        assert p.vertices[0] == (0, 0)
        assert len(p.edges()) == n + 1
        assert p.edges() <= g.edges


def test_positive_path_order_is_deterministic():
    paths = enumerate_positive_paths(build_gamma(2))
    assert str(paths[0]) == '(0,0)(0,1)(0,2)(1,2)'
    assert [p.end for p in paths] == [(1, 2)] * 3 + [(2, 1)] * 3


def test_union_of_paths_covers_the_diagram():
    g = build_gamma(3)
    assert union_of_paths(3, enumerate_positive_paths(g)).edges == g.edges


# ----------------------------
# Subgraphs
# ----------------------------
def test_subgraphs_include_the_whole_diagram():
    g = build_gamma(3)
    subgraphs = enumerate_subgraphs(g)
    assert subgraphs[-1].edges == g.edges
    assert len({s.edges for s in subgraphs}) == len(subgraphs)
    assert all(h1_rank(s) < 5 for s in subgraphs[:-1])


def test_subgraph_count_matches_face_count():
    subgraphs = enumerate_subgraphs(build_gamma(2))
    assert len(subgraphs) == sum(face_census(Weight.monotone(2), 2)) == 25
    assert sum(1 for s in subgraphs if h1_rank(s) == 0) == 7


def test_subgraph_enumeration_limit():
    with pytest.raises(DomainError):
        enumerate_subgraphs(build_gamma(9))


def test_subgraph_serialized_form():
    s = union_of_paths(2, enumerate_positive_paths(build_gamma(2))[:1])
    assert s.to_dict() == {'n': 2, 'edges': [[0, 0, 1], [0, 1, 1], [0, 2, 0]]}
    assert str(s) == '(0,0)U (0,1)U (0,2)R'


# ----------------------------
# Fillings and faces of subgraphs
# ----------------------------
def test_fillings_n3():
    boxes = fillings(3)
    assert boxes[LAMBDA2] == (2, 2)
    assert boxes[row_label(3)] == (1, 3)
    assert boxes[col_label(3)] == (3, 1)


@pytest.mark.parametrize('n', [2, 3, 4, 6])
def test_adjacent_fillings_are_the_covers(n):
    pairs = {(upper, lower) for upper, lower, _ in adjacent_fillings(n)}
    assert pairs == {(c.upper, c.lower) for c in pattern_covers(n)}
    assert len({edge for _, _, edge in adjacent_fillings(n)}) == 2 * n + 2


def test_worked_subgraphs_n3():
    subgraphs = enumerate_subgraphs(build_gamma(3))
    gamma = by_face(subgraphs, lagrangian_face(3, 1))
    gamma_prime = by_face(subgraphs, lagrangian_face(3, 2))
    facet = FaceDescriptor.from_classes(3, [{LAMBDA1, row_label(3)}], 4)
    gamma_second = by_face(subgraphs, facet)

    assert face_of(gamma).classes == frozenset(
        {frozenset({row_label(2), row_label(1), col_label(2), LAMBDA2})})
    assert (h1_rank(gamma), h1_rank(gamma_prime), h1_rank(gamma_second)) == (2, 0, 4)
    assert poset_leq(gamma_prime, gamma)
    assert not poset_leq(gamma, gamma_prime)
    assert face_of(gamma_prime).is_subface_of(face_of(gamma))


def test_whole_diagram_is_the_improper_face():
    g = build_gamma(4)
    face = face_of(LadderSubgraph(4, g.edges))
    assert face.classes == frozenset()
    assert face.dimension == 7


def test_poset_requires_same_diagram():
    a = LadderSubgraph(2, build_gamma(2).edges)
    b = LadderSubgraph(3, build_gamma(3).edges)
    with pytest.raises(DimensionMismatchError):
        poset_leq(a, b)


# ----------------------------
# Correspondence with the polytope
# ----------------------------
@pytest.mark.parametrize('n', [2, 3, 4])
def test_face_correspondence(n):
    report = face_correspondence(n, Weight.monotone(n))
    assert report.injective
    assert report.image_matches
    assert report.order_isomorphic
    assert report.dimensions_match
    assert report.improper_count == 1
    assert report.subgraph_count == report.face_count
    assert report.to_dict()['passed']
