import itertools

import pytest

from ladderlab.errors import ArgumentError, InternalError, SizeError
from ladderlab.graphcore import Graph, distances_from, raw_distances
from ladderlab.ladder import LadderKind, verify_certificate
from ladderlab.decomposition import (
    validate_pairing,
    validate_path_decomposition,
)
from ladderlab.generators import (
    BASE,
    LENGTHEN,
    WIDEN,
    WitnessBundle,
    combine,
    gen_bounded_degree,
    gen_pairing_seed,
    gen_pathwidth,
    gen_planar_even,
    gen_treewidth,
    level_map,
    load_bundle,
    make_neighboring,
    save_bundle,
    treewidth_order,
)

import oracle


def test_bounded_degree_small_cases():
    b = gen_bounded_degree(2, 1)
    assert b.graph.vertex_count == 6
    assert b.certificate.order == 2 and b.certificate.d == 1
    assert verify_certificate(b.graph, b.certificate).valid

    b = gen_bounded_degree(4, 1)
    assert b.certificate.order == 4 and b.graph.max_degree() <= 8

    b = gen_bounded_degree(2, 3)
    assert b.certificate.order == 8 and b.certificate.d == 5
    assert b.graph.max_degree() <= 4
    assert verify_certificate(b.graph, b.certificate).valid


def test_bounded_degree_rejects_underflow():
    with pytest.raises(ArgumentError):
        gen_bounded_degree(1, 1)
    with pytest.raises(ArgumentError):
        gen_bounded_degree(2, 0)


def test_level_map_values_and_bound():
    b = gen_bounded_degree(2, 3)
    lm = level_map(b)
    g = b.graph
    by_label = {g.label(v): v for v in range(g.vertex_count)}
    assert lm.xi[by_label["a:"]] == 3
    assert lm.xi[by_label["b:"]] == 2
    assert all(lm.xi[v] == 5 for v in b.certificate.b)
    assert all(lm.xi[v] == 0 for v in b.certificate.a)
    # Tree edges move levels by exactly one.
    for u, v in g.edges():
        if u in lm.xi and v in lm.xi:
            lu, lv = g.label(u), g.label(v)
            if lu[0] == lv[0]:  # same tree
                assert abs(lm.xi[u] - lm.xi[v]) == 1
    # The level gap lower-bounds the true distance on tree vertices.
    tree_vertices = sorted(lm.xi)
    for u in tree_vertices[::5]:
        dist = distances_from(g, u)
        for v in tree_vertices:
            assert dist.reachable(v) and dist[v] >= lm.bound(u, v)


def test_level_map_h1_and_errors():
    b = gen_bounded_degree(2, 1)
    lm = level_map(b)
    assert all(lm.xi[v] == 0 for v in b.certificate.a)
    g = b.graph
    by_label = {g.label(v): v for v in range(g.vertex_count)}
    assert lm.xi[by_label["b:"]] == 0
    with pytest.raises(ArgumentError):
        level_map(WitnessBundle(graph=g, certificate=b.certificate, params={"h": 1}))
    with pytest.raises(ArgumentError):
        lm.bound(0, 99)


def test_planar_even_family():
    b = gen_planar_even(1)
    assert b.certificate.order == 2 and b.certificate.d == 2
    assert verify_certificate(b.graph, b.certificate).valid
    b = gen_planar_even(2)
    assert b.certificate.order == 4 and b.certificate.d == 4
    assert verify_certificate(b.graph, b.certificate).valid
    n, m = b.graph.vertex_count, b.graph.edge_count
    assert m <= 3 * n - 6
    with pytest.raises(ArgumentError):
        gen_planar_even(0)


def test_pathwidth_family_spec_points():
    b = gen_pathwidth(0, 1, 0)
    assert b.certificate.order == 1 and b.certificate.d == 3

    b = gen_pathwidth(1, 1, 0)
    assert b.certificate.order == 3
    assert verify_certificate(b.graph, b.certificate).valid
    assert validate_path_decomposition(b.graph, b.path_decomposition).valid
    assert b.path_decomposition.width <= 3

    b = gen_pathwidth(2, 1, 0)
    assert b.certificate.order == 9 and b.certificate.d == 3
    report = validate_path_decomposition(b.graph, b.path_decomposition)
    assert report.valid and report.width <= 4


def test_pathwidth_ladder_vertices_spread_and_appendices():
    b = gen_pathwidth(1, 2, 1)
    d = 2
    ladder = [v for pair in zip(b.certificate.a, b.certificate.b) for v in pair]
    for u in ladder:
        dist = raw_distances(b.graph, u)
        for v in ladder:
            if v != u:
                assert dist[v] < 0 or dist[v] >= 2 * d
    # Deleting a ladder vertex leaves >= k path components on 3d vertices.
    g = b.graph
    k = 1
    for u in ladder:
        neighbors = set(g.neighbors(u))
        chains = 0
        for start in neighbors:
            # Walk away from u along degree-<=2 vertices.
            path = [start]
            prev = u
            while True:
                nxt = [w for w in g.neighbors(path[-1]) if w != prev]
                if len(nxt) != 1:
                    break
                prev = path[-1]
                path.append(nxt[0])
            if len(path) == 3 * d and g.degree(path[-1]) == 1:
                chains += 1
        assert chains >= k


def test_pathwidth_rejects_bad_params():
    with pytest.raises(ArgumentError):
        gen_pathwidth(-1, 1, 0)
    with pytest.raises(ArgumentError):
        gen_pathwidth(0, 0, 0)


def test_pairing_seed_base_matrix():
    g, p = gen_pairing_seed(BASE)
    assert (p.order, p.width, p.d) == (2, 3, 1)
    (a1, b1), (a2, b2) = p.leaf_pairs
    dist = distances_from(g, b1)
    assert dist[a1] == 3 and dist[a2] == 2
    dist = distances_from(g, b2)
    assert dist[a1] == 3 and dist[a2] == 3


def test_pairing_seed_lengthen_widen():
    g, p = gen_pairing_seed(LENGTHEN, 3)
    assert (p.order, p.width, p.d) == (2, 3, 3)
    (a1, b1), (a2, b2) = p.leaf_pairs
    dist = distances_from(g, b1)
    assert dist[a2] == 6 and dist[a1] == 7

    g, p = gen_pairing_seed(WIDEN, 2)
    assert (p.order, p.width, p.d) == (2, 5, 1)
    assert validate_pairing(g, p).valid

    with pytest.raises(ArgumentError):
        gen_pairing_seed(LENGTHEN, 1)
    with pytest.raises(ArgumentError):
        gen_pairing_seed(WIDEN, 1)
    with pytest.raises(ArgumentError):
        gen_pairing_seed(BASE, 2)
    with pytest.raises(ArgumentError):
        gen_pairing_seed("mystery")


def test_make_neighboring():
    g, p = gen_pairing_seed(BASE)
    g2, p2 = make_neighboring(g, p)
    assert p2.neighboring and p2.width == 5 and p2.order == 2
    assert validate_pairing(g2, p2).valid
    A, B = p2.root_pair
    for a, b in p2.leaf_pairs:
        assert raw_distances(g2, B)[a] >= 3 or raw_distances(g2, B)[a] < 0
    g3, p3 = make_neighboring(g2, p2)
    assert p3.width == 7


def test_make_neighboring_rejects_invalid():
    g, p = gen_pairing_seed(BASE)
    smaller = Graph(g.vertex_count, g.edges()[:-1])
    from ladderlab.errors import StructuralError

    with pytest.raises(StructuralError):
        make_neighboring(smaller, p)


def test_combine_g22():
    gT = gen_pairing_seed(WIDEN, 2)      # G_{1,2}: d=1, width 5
    hT = gen_pairing_seed(LENGTHEN, 2)   # G_{2,1}: d=2, width 3
    g, p = combine(gT, hT)
    assert (p.order, p.width, p.d) == (4, 5, 2)
    assert validate_pairing(g, p).valid
    expected_n = (
        gT[0].vertex_count
        + gT[1].order * (hT[0].vertex_count + 2)
        - 2 * gT[1].order
    )
    assert g.vertex_count == expected_n
    # Full 4x4 matrix: 2d above the diagonal, 2d+1 on and below.
    for i, (_, b) in enumerate(p.leaf_pairs, start=1):
        dist = raw_distances(g, b)
        for j, (a, _) in enumerate(p.leaf_pairs, start=1):
            assert dist[a] == (4 if i < j else 5)


def test_combine_preconditions():
    base = gen_pairing_seed(BASE)
    lengthen = gen_pairing_seed(LENGTHEN, 2)
    widen = gen_pairing_seed(WIDEN, 2)
    with pytest.raises(ArgumentError):
        combine(base, base)          # distance mismatch
    with pytest.raises(ArgumentError):
        combine(base, lengthen)      # width 3 needs width-1 partner
    with pytest.raises(ArgumentError):
        combine(lengthen, widen)     # distances off by -1 the wrong way


def test_gen_treewidth_values():
    for (d, k), order in [((1, 1), 2), ((2, 2), 4), ((3, 2), 8)]:
        b = gen_treewidth(d, k)
        assert b.certificate.order == order == treewidth_order(d, k)
        assert b.pairing.width == 2 * k + 1
        assert b.certificate.d == 2 * d
        assert b.certificate.kind is LadderKind.HALF_GRAPH
        assert verify_certificate(b.graph, b.certificate).valid
        assert validate_pairing(b.graph, b.pairing).valid


def test_gen_treewidth_formula_matches_recursion():
    for d, k in itertools.product(range(1, 5), range(1, 4)):
        if d + k <= 6:
            assert gen_treewidth(d, k).pairing.order == treewidth_order(d, k)


def test_gen_treewidth_cap():
    with pytest.raises(SizeError) as err:
        gen_treewidth(5, 4, cap=100)
    assert str(treewidth_order(5, 4)) in str(err.value)
    with pytest.raises(ArgumentError):
        gen_treewidth(0, 1)


def test_bundle_directory_round_trip(tmp_path):
    for bundle in (gen_bounded_degree(2, 2), gen_pathwidth(1, 1, 0), gen_treewidth(2, 1)):
        target = tmp_path / "bundle"
        save_bundle(bundle, target)
        back = load_bundle(target)
        assert back.graph.edges() == bundle.graph.edges()
        assert back.graph.labels == bundle.graph.labels
        assert back.certificate == bundle.certificate
        assert back.path_decomposition == bundle.path_decomposition
        assert back.pairing == bundle.pairing
        assert back.params == bundle.params
        assert back.meta == bundle.meta
        import shutil

        shutil.rmtree(target)
    with pytest.raises(ArgumentError):
        load_bundle(tmp_path / "missing")
