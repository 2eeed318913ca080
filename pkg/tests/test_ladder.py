import random

import pytest

from ladderlab.errors import ArgumentError, SizeError, StructuralError
from ladderlab.graphcore import Graph
from ladderlab.ladder import (
    DiagonalConvention,
    LadderCertificate,
    LadderKind,
    certificate_from_json_obj,
    certificate_to_json_obj,
    dedup_half_graph,
    greedy_semi_ladder,
    ladder_subset,
    max_semi_ladder_exact,
    verify_certificate,
)

import oracle


def path6():
    # b2-be-b1-a2-ae-a1 as ids 0..5; half graph of order 2 at d=1.
    return Graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)])


HALF = LadderCertificate(kind=LadderKind.HALF_GRAPH, d=1, a=(5, 3), b=(2, 0))


def test_half_graph_on_path():
    g = path6()
    assert verify_certificate(g, HALF).valid
    assert verify_certificate(g, HALF.as_kind(LadderKind.SEMI_LADDER)).valid
    bad = HALF.as_kind(LadderKind.CO_MATCHING)
    report = bad and verify_certificate(g, bad)
    assert not report.valid
    assert report.violation.required == "<= d"
    assert report.to_json_obj()["valid"] is False


def test_inclusive_convention_tightens_half_graph():
    # Path a-b: strict half graph of order 1 needs only the diagonal far.
    g = Graph(2, [])
    strict = LadderCertificate(
        kind=LadderKind.HALF_GRAPH, d=1, a=(0,), b=(1,),
        convention=DiagonalConvention.STRICT,
    )
    inclusive = LadderCertificate(
        kind=LadderKind.HALF_GRAPH, d=1, a=(0,), b=(1,),
        convention=DiagonalConvention.INCLUSIVE,
    )
    assert verify_certificate(g, strict).valid
    # Inclusive requires dist(b_1, a_1) <= d, which fails on two isolated dots.
    assert not verify_certificate(g, inclusive).valid


def test_certificate_validation_errors():
    g = path6()
    with pytest.raises(ArgumentError):
        LadderCertificate(kind=LadderKind.HALF_GRAPH, d=0, a=(0,), b=(1,))
    with pytest.raises(ArgumentError):
        LadderCertificate(kind=LadderKind.HALF_GRAPH, d=1, a=(0, 1), b=(2,))
    with pytest.raises(ArgumentError):
        verify_certificate(
            g, LadderCertificate(kind=LadderKind.SEMI_LADDER, d=1, a=(9,), b=(0,))
        )
    with pytest.raises(StructuralError):
        verify_certificate(
            g,
            LadderCertificate(
                kind=LadderKind.CO_MATCHING, d=1, a=(0, 0), b=(1, 2)
            ),
        )


def test_empty_certificate_is_valid():
    g = Graph(1, [])
    c = LadderCertificate(kind=LadderKind.HALF_GRAPH, d=3, a=(), b=())
    assert c.order == 0
    assert verify_certificate(g, c).valid


def test_exact_search_matches_bruteforce():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randint(1, 7)
        _, edges = oracle.random_graph(n, 0.35, rng)
        g = Graph(n, edges)
        for d in (1, 2):
            cert = max_semi_ladder_exact(g, d)
            assert verify_certificate(g, cert).valid
            assert cert.order == oracle.max_semi_ladder_order_naive(n, edges, d)


def test_exact_search_cap_and_guard():
    n, edges = oracle.grid_edges(2, 4)
    g = Graph(n, edges)
    capped = max_semi_ladder_exact(g, 1, cap=1)
    assert capped.order <= 1
    with pytest.raises(SizeError):
        max_semi_ladder_exact(g, 1, guard=4)


def test_greedy_is_valid_and_at_most_exact():
    rng = random.Random(9)
    for _ in range(25):
        n = rng.randint(1, 8)
        _, edges = oracle.random_graph(n, 0.3, rng)
        g = Graph(n, edges)
        for d in (1, 2):
            greedy = greedy_semi_ladder(g, d)
            assert verify_certificate(g, greedy).valid
            assert greedy.order <= max_semi_ladder_exact(g, d).order


def test_subset_reindexes():
    sub = ladder_subset(HALF, (2,))
    assert sub.a == (3,) and sub.b == (0,)
    assert verify_certificate(path6(), sub).valid
    with pytest.raises(ArgumentError):
        ladder_subset(HALF, ())
    with pytest.raises(ArgumentError):
        ladder_subset(HALF, (2, 1))
    with pytest.raises(ArgumentError):
        ladder_subset(HALF, (3,))


def test_dedup_disjoint_input_passes_through():
    g = path6()
    cert = dedup_half_graph(g, (5, 3), (2, 0), 1)
    assert cert.order == 2
    assert verify_certificate(g, cert).valid


def test_dedup_shared_vertices_halves():
    # a=(0,1,2), b=(2,3,4) is a half graph at d=1 that shares vertex 2
    # (it plays b_1 and a_3, allowed because 1 < 3 means "close").
    g = Graph(5, [(1, 2), (2, 3)])
    cert = dedup_half_graph(g, (0, 1, 2), (2, 3, 4), 1)
    assert cert.order >= 2  # ceil(3/2)
    assert len(set(cert.a) | set(cert.b)) == 2 * cert.order
    assert verify_certificate(g, cert).valid


def test_dedup_rejects_non_half_graph():
    g = Graph(4, [])
    with pytest.raises(StructuralError):
        dedup_half_graph(g, (0, 1), (2, 3), 1)


def test_json_round_trip_and_errors():
    obj = certificate_to_json_obj(HALF)
    assert obj["kind"] == "half_graph"
    assert certificate_from_json_obj(obj) == HALF
    semi = HALF.as_kind(LadderKind.SEMI_LADDER)
    obj2 = certificate_to_json_obj(semi)
    assert "convention" not in obj2
    assert certificate_from_json_obj(obj2) == semi
    with pytest.raises(StructuralError):
        certificate_from_json_obj({"kind": "nope", "d": 1, "a": [], "b": []})
    with pytest.raises(StructuralError):
        certificate_from_json_obj({"d": 1, "a": [], "b": []})
