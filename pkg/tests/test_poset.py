from itertools import combinations

import pytest

from sponges.complexes import profile
from sponges.poset import (
    CyclicPoset,
    GradedPoset,
    SimplicialComplex,
    UnknownElement,
    check_cohen_macaulay,
    order_complex,
    reduced_simplicial_homology,
    subposet,
)

from oracles import join_betti


def chain_poset(length):
    elements = [(f"c{i}", i) for i in range(length)]
    covers = [(f"c{i+1}", f"c{i}") for i in range(length - 1)]
    return GradedPoset(elements, covers)


def antichain(n):
    return GradedPoset([(f"a{i}", 0) for i in range(n)], [])


def subset_poset(n, max_size, with_empty=True):
    """Subsets of {1..n} with size <= max_size, ordered by inclusion."""
    elements = []
    if with_empty:
        elements.append(("o", 0))
    subsets = []
    for k in range(1, max_size + 1):
        for c in combinations(range(1, n + 1), k):
            subsets.append(c)
            elements.append(("".join(map(str, c)), k))
    covers = []
    for c in subsets:
        ident = "".join(map(str, c))
        if len(c) == 1:
            if with_empty:
                covers.append((ident, "o"))
        else:
            for x in c:
                below = tuple(y for y in c if y != x)
                covers.append((ident, "".join(map(str, below))))
    return GradedPoset(elements, covers)


def k33_face_poset():
    lefts = ["l1", "l2", "l3"]
    rights = ["r1", "r2", "r3"]
    elements = [(v, 0) for v in lefts + rights]
    covers = []
    for a in lefts:
        for b in rights:
            e = f"{a}{b}"
            elements.append((e, 1))
            covers.append((e, a))
            covers.append((e, b))
    return GradedPoset(elements, covers)


def test_cover_rank_validation():
    with pytest.raises(CyclicPoset):
        GradedPoset([("a", 0), ("b", 2)], [("b", "a")])


def test_unknown_element():
    p = chain_poset(3)
    with pytest.raises(UnknownElement):
        p.rank("missing")
    with pytest.raises(UnknownElement):
        subposet(p, "below", "missing")


def test_order_complex_of_chain_is_simplex():
    k = order_complex(chain_poset(3))
    assert k.facets == ((0, 1, 2),)
    assert k.dimension == 2


def test_order_complex_of_antichain():
    k = order_complex(antichain(3))
    assert k.facets == ((0,), (1,), (2,))
    assert k.dimension == 0


def test_order_complex_model_n3_is_cone_over_three_points():
    p = subset_poset(3, 1)  # origin below three rays
    k = order_complex(p)
    # three edges sharing the origin vertex
    assert len(k.facets) == 3
    assert all(len(f) == 2 for f in k.facets)
    shared = set.intersection(*(set(f) for f in k.facets))
    assert len(shared) == 1
    h = reduced_simplicial_homology(k)
    assert h.is_trivial()


def test_subposet_strictly_above_origin_model_n4():
    p = subset_poset(4, 2)
    q = subposet(p, "strictly_above", "o")
    assert len(q) == 10  # nonempty subsets of [4] with <= 2 elements
    assert sorted(q.ranks.values()) == [1] * 4 + [2] * 6


def test_subposet_below_maximum_of_chain():
    p = chain_poset(4)
    q = subposet(p, "below", "c3")
    assert len(q) == 4
    assert len(q.covers()) == 3


def test_subposet_open_interval_of_cover_is_empty():
    p = chain_poset(3)
    q = subposet(p, "open_interval", "c0", "c1")
    assert len(q) == 0


def test_subposet_complement_of_up_set():
    p = subset_poset(3, 1)
    q = subposet(p, "complement_of_up_set", "1")
    assert sorted(q.ranks) == ["2", "3", "o"]
    # the complement of an up-set keeps its covers
    assert set(q.covers()) == {("2", "o"), ("3", "o")}


def test_reduced_homology_triangle_boundary():
    k = SimplicialComplex([0, 1, 2], [[0, 1], [0, 2], [1, 2]])
    h = reduced_simplicial_homology(k)
    assert h == profile({1: (1, ())})


def test_reduced_homology_k4_graph():
    k = SimplicialComplex(list(range(4)), list(combinations(range(4), 2)))
    h = reduced_simplicial_homology(k)
    # connected graph: rank E - V + 1 = 6 - 4 + 1 = 3
    assert h == profile({1: (3, ())})


def test_reduced_homology_single_vertex():
    k = SimplicialComplex([0], [[0]])
    assert reduced_simplicial_homology(k).is_trivial()


def test_reduced_homology_empty_complex():
    k = SimplicialComplex([], [])
    h = reduced_simplicial_homology(k)
    assert h == profile({-1: (1, ())})


def test_cm_model_sponge_poset_n4():
    report = check_cohen_macaulay(subset_poset(4, 2))
    assert report.is_cm
    assert report.witnesses == ()


def test_cm_fails_for_disjoint_chains():
    p = GradedPoset(
        [("a0", 0), ("a1", 1), ("b0", 0), ("b1", 1)],
        [("a1", "a0"), ("b1", "b0")],
    )
    report = check_cohen_macaulay(p)
    assert not report.is_cm
    empty_chain_witnesses = [w for w in report.witnesses if w.chain == ()]
    assert empty_chain_witnesses
    w = empty_chain_witnesses[0]
    assert w.degree == 0 and w.free_rank == 1  # disconnected: reduced H_0 = Z


def test_cm_k33_face_poset():
    assert check_cohen_macaulay(k33_face_poset()).is_cm


def test_cm_empty_poset_by_convention():
    assert check_cohen_macaulay(GradedPoset([], [])).is_cm


def projective_plane_face_poset():
    """Face poset of the minimal 6-vertex projective-plane triangulation."""
    facets = [(1, 2, 5), (1, 2, 6), (1, 3, 4), (1, 3, 6), (1, 4, 5),
              (2, 3, 4), (2, 3, 5), (2, 4, 6), (3, 5, 6), (4, 5, 6)]
    elements = []
    covers = []
    seen = set()
    for f in facets:
        fid = "".join(map(str, f))
        elements.append((fid, 2))
        for e in combinations(f, 2):
            eid = "".join(map(str, e))
            if eid not in seen:
                seen.add(eid)
                elements.append((eid, 1))
                covers.append((eid, str(e[0])))
                covers.append((eid, str(e[1])))
            covers.append((fid, eid))
    elements.extend((str(v), 0) for v in range(1, 7))
    return GradedPoset(elements, covers)


def test_cm_coefficient_switch_distinguishes_torsion():
    """The projective plane is Cohen-Macaulay over Q but not over Z; the
    integral failure is torsion-only and flagged as such."""
    p = projective_plane_face_poset()
    assert check_cohen_macaulay(p, coefficients="rationals").is_cm
    report = check_cohen_macaulay(p, coefficients="integers")
    assert not report.is_cm
    assert all(w.torsion_only for w in report.witnesses)
    empty_chain = [w for w in report.witnesses if w.chain == ()]
    assert empty_chain and empty_chain[0].torsion == (2,)
    assert empty_chain[0].degree == 1


def test_below_is_always_a_cone():
    """|below(s)| is a cone with apex s, hence acyclic, for corpus posets."""
    for p in [subset_poset(4, 2), k33_face_poset(), chain_poset(4)]:
        for s in p.elements():
            k = order_complex(subposet(p, "below", s))
            assert reduced_simplicial_homology(k).is_trivial(), s


def rational_betti(k):
    h = reduced_simplicial_homology(k, coefficients="rationals")
    return {d: h.free_rank(d) for d in h.degrees()}


def test_link_matches_join_decomposition_over_q():
    """Link of a chain = join of the interval complexes; compare Q-Betti."""
    for p in [subset_poset(4, 2), k33_face_poset()]:
        k = order_complex(p)
        for face in k.all_faces(include_empty=True):
            chain = [k.vertices[i] for i in face]
            pieces = []
            if chain:
                pieces.append(order_complex(subposet(p, "strictly_below", chain[0])))
                for a, b in zip(chain, chain[1:]):
                    pieces.append(order_complex(subposet(p, "open_interval", a, b)))
                pieces.append(order_complex(subposet(p, "strictly_above", chain[-1])))
            else:
                pieces.append(k)
            joined = {-1: 1}
            for piece in pieces:
                joined = join_betti(joined, rational_betti(piece), 10)
            link = k.link(face)
            assert rational_betti(link) == joined, chain
