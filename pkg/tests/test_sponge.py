import pytest

from sponges.complexes import homology, profile
from sponges.generators import (
    builtin,
    gen_model_sponge,
    gen_simplex_skeleton,
    graph_sponge,
    octahedron_sponge,
)
from sponges.poset import (
    GradedPoset,
    order_complex,
    reduced_simplicial_cohomology,
    subposet,
)
from sponges.sponge import (
    NonCompactSponge,
    NotAcyclicSponge,
    RealizationMismatch,
    SpongeComplex,
    cellular_complex,
    check_acyclic,
    check_local_model,
    local_cohomology,
    local_cohomology_via_order_complex,
    realization_cross_check,
    sign_solver,
    validate_sponge,
)
from sponges.poset import UnknownElement


def single_vertex_sponge():
    return SpongeComplex(
        n=2, faces=GradedPoset([("v0", 0)], []), incidence={}, name="point"
    )


def disjoint_triangles_sponge():
    edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]
    return graph_sponge(6, edges, name="two-triangles")


def path_graph_sponge():
    return graph_sponge(3, [(0, 1), (1, 2)], name="path")


# ---------------------------------------------------------------------------
# validation


def test_k33_with_alternating_signs_is_valid():
    report = validate_sponge(builtin("f3_k33"))
    assert report.is_valid


def test_octahedron_with_solver_signs_is_valid():
    report = validate_sponge(octahedron_sponge())
    assert report.is_valid


def test_flipping_one_incidence_breaks_the_diamonds_through_it():
    z = octahedron_sponge()
    flip = next(
        (u, l) for (u, l) in sorted(z.incidence) if u.startswith("tri:") and ":" in l
    )
    incidence = dict(z.incidence)
    incidence[flip] = -incidence[flip]
    broken = SpongeComplex(n=4, faces=z.faces, incidence=incidence)
    report = validate_sponge(broken)
    assert not report.is_valid
    # exactly the rank-2 intervals through the flipped cover pair fail:
    # one per endpoint vertex of that edge
    assert len(report.diamond_violations) == 2
    triangle, edge = flip
    endpoints = set(z.faces.lower_covers(edge))
    assert {(u, l) for u, l, _ in report.diamond_violations} == {
        (triangle, v) for v in endpoints
    }


def test_vertexless_face_detected():
    # an edge with no vertex below it
    z = SpongeComplex(
        n=3,
        faces=GradedPoset([("v", 0), ("e", 1)], []),
        incidence={},
    )
    report = validate_sponge(z)
    assert report.vertex_free_faces == ("e",)


# ---------------------------------------------------------------------------
# cellular complexes


def test_k33_cellular_ranks_and_homology():
    z = builtin("f3_k33")
    c = cellular_complex(z)
    assert (c.rank(0), c.rank(1)) == (6, 9)
    assert homology(c) == profile({0: (1, ()), 1: (4, ())})


def test_single_vertex_cellular():
    c = cellular_complex(single_vertex_sponge())
    assert c.rank(0) == 1
    assert homology(c) == profile({0: (1, ())})


def test_octahedron_cellular_reduced():
    z = builtin("g42_octahedron")
    c = cellular_complex(z, augmented=True)
    assert tuple(c.rank(d) for d in range(3)) == (6, 12, 11)
    h = homology(c)
    assert h == profile({2: (4, ())})  # reduced: only the top survives


# ---------------------------------------------------------------------------
# acyclicity


def test_k33_acyclic():
    report = check_acyclic(builtin("f3_k33"))
    assert report.is_acyclic
    assert report.b_number == 4
    assert report.torsion_found == ()


def test_octahedron_acyclic():
    report = check_acyclic(builtin("g42_octahedron"))
    assert report.is_acyclic
    assert report.b_number == 4


def test_disjoint_triangles_not_acyclic():
    report = check_acyclic(disjoint_triangles_sponge())
    assert not report.is_acyclic
    assert report.skeleton_acyclic_up_to == -1  # reduced H^0 nonzero


def test_model_sponge_refuses_acyclicity_check():
    with pytest.raises(NonCompactSponge):
        check_acyclic(gen_model_sponge(4))


# ---------------------------------------------------------------------------
# local cohomology


def test_model_n4_local_cohomology_by_type():
    z = gen_model_sponge(4)
    assert local_cohomology(z, "o") == profile({2: (3, ())})
    assert local_cohomology(z, "1") == profile({2: (2, ())})
    assert local_cohomology(z, "1-2") == profile({2: (1, ())})


def test_local_cohomology_unknown_face():
    with pytest.raises(UnknownElement):
        local_cohomology(gen_model_sponge(4), "nope")


def test_model_local_cohomology_concentration_n3_to_n6():
    """Every face of type k: torsion-free, rank n-1-k, in degree n-2 only."""
    for n in range(3, 7):
        z = gen_model_sponge(n)
        for f in z.faces.elements():
            k = z.faces.rank(f)
            prof = local_cohomology(z, f)
            assert prof == profile({n - 2: (n - 1 - k, ())}), (n, f)


def test_local_cohomology_routes_agree_on_compact_corpus():
    """Cellular route == order-complex pair route for face-acyclic sponges."""
    for z in [builtin("f3_k33"), builtin("g42_octahedron"), builtin("cube_skeleton")]:
        for f in z.faces.elements():
            assert local_cohomology(z, f) == local_cohomology_via_order_complex(z, f), (
                z.name,
                f,
            )


def test_local_cohomology_routes_differ_on_the_local_model():
    """The model's faces are cones: the order-complex pair at the origin sees
    a contractible space, while the cellular computation gives the honest
    local answer.  This asymmetry is why the cellular route is primary."""
    z = gen_model_sponge(4)
    cellular = local_cohomology(z, "o")
    pair = local_cohomology_via_order_complex(z, "o")
    assert cellular == profile({2: (3, ())})
    assert pair == profile({0: (1, ())})  # H^* of a cone, rel nothing
    assert cellular != pair


# ---------------------------------------------------------------------------
# local model check


def test_k33_local_model():
    assert check_local_model(builtin("f3_k33")).passed


def test_octahedron_local_model():
    report = check_local_model(builtin("g42_octahedron"))
    assert report.passed
    # every vertex in 4 edges, every edge in 3 two-faces
    z = builtin("g42_octahedron")
    for v in z.faces_of_dim(0):
        assert len(z.faces.upper_covers(v)) == 4
    for e in z.faces_of_dim(1):
        assert len(z.faces.upper_covers(e)) == 3


def test_path_graph_fails_local_model():
    report = check_local_model(path_graph_sponge())
    assert not report.passed
    failing = {f for f, *_ in report.violations}
    assert {"v0", "v2"} <= failing  # the degree-1 endpoints certainly fail
    degree_one = [v for v, k, found, want in report.violations if found == 1]
    assert set(degree_one) == {"v0", "v2"}


# ---------------------------------------------------------------------------
# sign solving


def solver_diamond_ok(faces, signs):
    z = SpongeComplex(n=faces.max_rank() + 2, faces=faces, incidence=signs)
    return validate_sponge(z).is_valid


def test_sign_solver_model_n4():
    faces = gen_model_sponge(4).faces
    signs = sign_solver(faces)
    assert all(v in (1, -1) for v in signs.values())
    assert solver_diamond_ok(faces, signs)
    # the simplicial convention is itself a valid solution of the system
    simplicial = gen_model_sponge(4).incidence
    assert solver_diamond_ok(faces, simplicial)


def test_sign_solver_octahedron_poset():
    faces = octahedron_sponge().faces
    signs = sign_solver(faces)
    assert solver_diamond_ok(faces, signs)


def test_sign_solver_graph_posets_balanced():
    """Dimension <= 1: no diamonds, but edge signs come out balanced so the
    oriented complex has honest H_0 (all +1 would satisfy the empty diamond
    system too, yet breaks the augmented complex)."""
    faces = builtin("f3_k33").faces
    signs = sign_solver(faces)
    for e in faces.elements_of_rank(1):
        v, w = faces.lower_covers(e)
        assert signs[(e, v)] + signs[(e, w)] == 0


def test_solver_signs_give_correct_integral_homology():
    # a lone triangle: disc => H_0 = Z and nothing else, no spurious torsion
    elements = [("a", 0), ("b", 0), ("c", 0),
                ("ab", 1), ("ac", 1), ("bc", 1), ("f", 2)]
    covers = [("ab", "a"), ("ab", "b"), ("ac", "a"), ("ac", "c"),
              ("bc", "b"), ("bc", "c"), ("f", "ab"), ("f", "ac"), ("f", "bc")]
    faces = GradedPoset(elements, covers)
    signs = sign_solver(faces)
    z = SpongeComplex(n=4, faces=faces, incidence=signs)
    assert homology(cellular_complex(z)) == profile({0: (1, ())})


# ---------------------------------------------------------------------------
# realization cross-check


def test_realization_cross_check_k33():
    report = realization_cross_check(builtin("f3_k33"))
    assert report.cellular[1] == (4, ())


def test_realization_cross_check_octahedron():
    report = realization_cross_check(builtin("g42_octahedron"))
    assert report.cellular[2] == (4, ())
    assert report.cellular[0] == (0, ())


def test_realization_cross_check_single_vertex():
    report = realization_cross_check(single_vertex_sponge())
    assert all(v == (0, ()) for v in report.cellular.values())


def test_realization_mismatch_on_non_unit_incidence():
    # incidence +-2 on a single edge keeps all axioms (no diamonds, balanced
    # boundary, lower interval a 0-sphere) but puts 2-torsion in the cellular
    # side that the order complex cannot see: the cross-check must fire
    z = SpongeComplex(
        n=3,
        faces=GradedPoset([("v", 0), ("w", 0), ("e", 1)], [("e", "v"), ("e", "w")]),
        incidence={("e", "v"): 2, ("e", "w"): -2},
    )
    assert validate_sponge(z).is_valid
    assert check_acyclic(z).faces_ok
    with pytest.raises(RealizationMismatch) as err:
        realization_cross_check(z)
    assert err.value.degree == 1
    assert err.value.cellular == (0, (2,))


def test_realization_cross_check_requires_face_acyclicity():
    # a 2-face bounded by two disjoint triangles: every (vertex, face)
    # interval is still a diamond, but strictly_below(F) is two circles,
    # not a single one, so the face condition fails
    elements, covers = [], []
    for tri in ("a", "b"):
        for i in range(3):
            elements.append((f"{tri}{i}", 0))
        for i in range(3):
            e = f"{tri}e{i}"
            elements.append((e, 1))
            covers.append((e, f"{tri}{i}"))
            covers.append((e, f"{tri}{(i + 1) % 3}"))
    elements.append(("F", 2))
    covers.extend(("F", f"{tri}e{i}") for tri in ("a", "b") for i in range(3))
    faces = GradedPoset(elements, covers)
    z = SpongeComplex(n=4, faces=faces, incidence=sign_solver(faces))
    assert validate_sponge(z).is_valid
    with pytest.raises(NotAcyclicSponge):
        realization_cross_check(z)


def test_multigraph_sponge_accepted():
    # parallel edges (a biangle pair): valid n=3 sponge, acyclic with b = 1
    z = graph_sponge(2, [(0, 1), (0, 1)], name="biangle")
    assert validate_sponge(z).is_valid
    report = check_acyclic(z)
    assert report.is_acyclic
    assert report.b_number == 1  # a circle made of two parallel edges


# ---------------------------------------------------------------------------
# upper intervals of the model vs simplex skeleta


def test_model_upper_intervals_match_simplex_skeleta():
    """|strictly_above(F)| for dim F = k is the barycentric model of the
    (n-3-k)-skeleton of a simplex on n-k vertices: reduced cohomology is
    rank n-1-k in degree n-3-k."""
    for n in (4, 5):
        z = gen_model_sponge(n)
        for f in z.faces.elements():
            k = z.faces.rank(f)
            above = subposet(z.faces, "strictly_above", f)
            got = reduced_simplicial_cohomology(order_complex(above))
            skeleton = gen_simplex_skeleton(n - k - 1, n - 3 - k) if n - 3 - k >= 0 else None
            if skeleton is None:
                expected = profile({-1: (1, ())})  # empty complex
            else:
                expected = reduced_simplicial_cohomology(skeleton)
            assert got == expected, (n, f)
            assert got == profile({n - 3 - k: (n - 1 - k, ())}), (n, f)
