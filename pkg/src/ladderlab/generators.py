"""Builders for every lower-bound witness family, bundled with certificates.

Each generator returns its graph together with a ladder certificate and,
where the construction carries one, a path or pairing decomposition:

* ``gen_bounded_degree(k, h)`` — the two-tree family H_{k,h} with word-
  indexed trees and connector paths; max degree <= 2k, half graph of order
  k^h at distance 2h-1.
* ``gen_planar_even(h)`` — H_{2,h} with a pendant hung on every a-leaf,
  shifting the certificate to even distance 2h at order 2^h.
* ``gen_pathwidth(p, d, k)`` — the appendix recursion P_{p,d,k} with a
  width-(p+2) path decomposition and a half graph of order (2d+1)^p at
  distance 4d-1.
* ``gen_pairing_seed`` / ``make_neighboring`` / ``combine`` /
  ``gen_treewidth(d, k)`` — the pairing-decomposition recursion producing
  G_{d,k} of width 2k+1 whose leaves form a half graph of order
  2^C(d+k-2, k-1) at distance 2d.

All outputs are re-validated from scratch (BFS against the certificate,
axiom checks against the decomposition); a construction that fails its own
validation raises ``InternalError``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb
from pathlib import Path

from ladderlab._jsonutil import canonical_json, parse_json
from ladderlab.decomposition import (
    PairingDecomposition,
    PathDecomposition,
    TreeDecomposition,
    decomposition_from_json_obj,
    decomposition_to_json_obj,
    validate_pairing,
    validate_path_decomposition,
)
from ladderlab.errors import (
    ArgumentError,
    InternalError,
    SizeError,
    StructuralError,
)
from ladderlab.graphcore import Graph, load_graph, save_graph
from ladderlab.ladder import (
    LadderCertificate,
    LadderKind,
    certificate_from_json_obj,
    certificate_to_json_obj,
    verify_certificate,
)


@dataclass(frozen=True)
class WitnessBundle:
    """A generated graph with its certificate and optional decompositions."""

    graph: Graph
    certificate: LadderCertificate
    path_decomposition: PathDecomposition | None = None
    pairing: PairingDecomposition | None = None
    params: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)


def _must_verify(g: Graph, cert: LadderCertificate, what: str) -> None:
    report = verify_certificate(g, cert)
    if not report.valid:
        raise InternalError(
            f"{what}: generated certificate failed verification at "
            f"(i={report.violation.i}, j={report.violation.j})"
        )


def _must_validate_pairing(g: Graph, p: PairingDecomposition, what: str) -> None:
    report = validate_pairing(g, p)
    if not report.valid:
        raise InternalError(f"{what}: generated pairing invalid: {report.violation}")


# -- H_{k,h}: bounded degree ----------------------------------------------


def _word_str(s: tuple[int, ...]) -> str:
    return ".".join(str(c) for c in s)


class _Builder:
    """Incremental graph assembly with role labels."""

    def __init__(self):
        self.labels: dict[int, str] = {}
        self.edges: list[tuple[int, int]] = []
        self.n = 0

    def vertex(self, label: str) -> int:
        v = self.n
        self.n += 1
        self.labels[v] = label
        return v

    def edge(self, u: int, v: int) -> None:
        self.edges.append((u, v))

    def path_between(self, u: int, w: int, length: int, stem: str) -> None:
        """Connect u and w with a fresh path of ``length`` edges."""
        prev = u
        for t in range(1, length):
            nxt = self.vertex(f"{stem}:{t}")
            self.edge(prev, nxt)
            prev = nxt
        self.edge(prev, w)

    def graph(self) -> Graph:
        return Graph(self.n, self.edges, self.labels)


def _build_h_family(k: int, h: int):
    """H_{k,h} plus the id maps for its two word-indexed trees."""
    b = _Builder()
    words: list[tuple[int, ...]] = [()]
    for length in range(1, h + 1):
        words += [tuple(w) for w in product(range(1, k + 1), repeat=length)]
    a_id = {s: b.vertex(f"a:{_word_str(s)}") for s in words}
    b_id = {s: b.vertex(f"b:{_word_str(s)}") for s in words}
    for s in words:
        if len(s) < h:
            for c in range(1, k + 1):
                b.edge(a_id[s], a_id[s + (c,)])
                b.edge(b_id[s], b_id[s + (c,)])
    for s in words:
        if len(s) < h:
            for c, d in combinations(range(1, k + 1), 2):
                b.path_between(
                    a_id[s + (d,)], b_id[s + (c,)], 2 * len(s) + 1,
                    f"c:{_word_str(s)}:{c}:{d}",
                )
    leaves = sorted(s for s in words if len(s) == h)
    return b, a_id, b_id, leaves


def gen_bounded_degree(k: int, h: int) -> WitnessBundle:
    """H_{k,h}: max degree <= 2k, half graph of order k^h at distance 2h-1."""
    if k < 2:
        raise ArgumentError("gen_bounded_degree requires k >= 2")
    if h < 1:
        raise ArgumentError("gen_bounded_degree requires h >= 1")
    builder, a_id, b_id, leaves = _build_h_family(k, h)
    g = builder.graph()
    cert = LadderCertificate(
        kind=LadderKind.HALF_GRAPH,
        d=2 * h - 1,
        a=tuple(a_id[s] for s in leaves),
        b=tuple(b_id[s] for s in leaves),
    )
    _must_verify(g, cert, f"H_({k},{h})")
    if g.max_degree() > 2 * k:
        raise InternalError(f"H_({k},{h}) exceeds the degree bound 2k")
    return WitnessBundle(
        graph=g,
        certificate=cert,
        params={"k": k, "h": h},
        meta={"order": k ** h, "distance": 2 * h - 1, "max_degree_bound": 2 * k},
    )


@dataclass(frozen=True)
class LevelMap:
    """The level function xi on the two tree layers of an H_{k,h} bundle."""

    xi: dict[int, int]

    def bound(self, u: int, v: int) -> int:
        """A certified lower bound on dist(u, v) for tree vertices."""
        if u not in self.xi or v not in self.xi:
            raise ArgumentError("level map is defined on tree vertices only")
        return abs(self.xi[u] - self.xi[v])


def level_map(bundle: WitnessBundle) -> LevelMap:
    """Level function of an H_{k,h} bundle: xi(a_s)=h-|s|, xi(b_s)=h+|s|-1."""
    if set(bundle.params) != {"k", "h"}:
        raise ArgumentError("level_map needs a gen_bounded_degree bundle")
    h = bundle.params["h"]
    xi: dict[int, int] = {}
    for v in range(bundle.graph.vertex_count):
        label = bundle.graph.label(v)
        if label is None or ":" not in label:
            continue
        side, _, rest = label.partition(":")
        if side not in ("a", "b"):
            continue
        depth = 0 if rest == "" else rest.count(".") + 1
        xi[v] = h - depth if side == "a" else h + depth - 1
    if not xi:
        raise ArgumentError("bundle carries no H-family tree labels")
    return LevelMap(xi)


def gen_planar_even(h: int) -> WitnessBundle:
    """H_{2,h} with a pendant on every a-leaf: order 2^h at distance 2h."""
    if h < 1:
        raise ArgumentError("gen_planar_even requires h >= 1")
    builder, a_id, b_id, leaves = _build_h_family(2, h)
    pendants = {}
    for s in leaves:
        pendants[s] = builder.vertex(f"p:{_word_str(s)}")
        builder.edge(a_id[s], pendants[s])
    g = builder.graph()
    cert = LadderCertificate(
        kind=LadderKind.HALF_GRAPH,
        d=2 * h,
        a=tuple(pendants[s] for s in leaves),
        b=tuple(b_id[s] for s in leaves),
    )
    _must_verify(g, cert, f"planar witness h={h}")
    return WitnessBundle(
        graph=g,
        certificate=cert,
        params={"h": h},
        meta={"order": 2 ** h, "distance": 2 * h},
    )


# -- P_{p,d,k}: bounded pathwidth ------------------------------------------


class _PState:
    """Mutable assembly state for the pathwidth recursion.

    ``pairs`` holds the half-graph pairs (a_i, b_i); ``apps[v]`` lists the
    intact appendix chains (anchor-first vertex lists, 3d vertices each)
    available at ladder vertex v; ``bags`` is the path decomposition so far.
    """

    def __init__(self):
        self.n = 0
        self.edges: list[tuple[int, int]] = []
        self.labels: dict[int, str] = {}
        self.pairs: list[tuple[int, int]] = []
        self.apps: dict[int, list[list[int]]] = {}
        self.bags: list[set[int]] = []

    def vertex(self, label: str) -> int:
        v = self.n
        self.n += 1
        self.labels[v] = label
        return v


def _pathwidth_base(k: int, d: int) -> _PState:
    """P_{0,d,k}: two disjoint centers, each with k appendix paths."""
    st = _PState()
    centers = []
    for side in ("a", "b"):
        c = st.vertex(f"{side}-center")
        centers.append(c)
        st.apps[c] = []
        if k == 0:
            st.bags.append({c})
        for t in range(k):
            chain = [st.vertex(f"{side}-center.app{t}.{q}") for q in range(1, 3 * d + 1)]
            st.apps[c].append(chain)
            prev = c
            for v in chain:
                st.edges.append((prev, v))
                st.bags.append({c, prev, v})
                prev = v
    st.pairs = [(centers[0], centers[1])]
    return st


def _pathwidth_level(child: _PState, d: int) -> _PState:
    """One recursion level: 2d+1 child copies wired through a new center r."""
    st = _PState()
    r = st.vertex("r")
    dead: set[int] = set()
    copies = 2 * d + 1
    for j in range(1, copies + 1):
        offset = st.n
        st.n += child.n
        for v, lab in child.labels.items():
            st.labels[offset + v] = f"{j}:{lab}"
        st.edges += [(offset + u, offset + v) for u, v in child.edges]
        for a, b in child.pairs:
            st.pairs.append((offset + a, offset + b))
        for v, chains in child.apps.items():
            st.apps[offset + v] = [[offset + x for x in chain] for chain in chains]
        st.bags += [{offset + v for v in bag} | {r} for bag in child.bags]
        # Wiring: consume appendix 0 of every ladder vertex of this copy.
        for a, b in child.pairs:
            for v, pos in ((offset + b, d + j - 2), (offset + a, 3 * d - j)):
                chain = st.apps[v].pop(0)
                if pos == 0:
                    st.edges.append((r, v))
                    dead.update(chain)
                else:
                    st.edges.append((r, chain[pos - 1]))
                    dead.update(chain[pos:])
    if not dead:
        return st
    # Compact ids, dropping truncated appendix tails.
    keep = [v for v in range(st.n) if v not in dead]
    remap = {old: new for new, old in enumerate(keep)}
    out = _PState()
    out.n = len(keep)
    out.labels = {remap[v]: st.labels[v] for v in keep}
    out.edges = [
        (remap[u], remap[v]) for u, v in st.edges if u not in dead and v not in dead
    ]
    out.pairs = [(remap[a], remap[b]) for a, b in st.pairs]
    out.apps = {
        remap[v]: [[remap[x] for x in chain] for chain in chains]
        for v, chains in st.apps.items()
    }
    out.bags = [{remap[v] for v in bag if v not in dead} for bag in st.bags]
    return out


def gen_pathwidth(p: int, d: int, k: int) -> WitnessBundle:
    """P_{p,d,k}: order (2d+1)^p at distance 4d-1, pathwidth <= p+2."""
    if p < 0 or k < 0:
        raise ArgumentError("gen_pathwidth requires p >= 0 and k >= 0")
    if d < 1:
        raise ArgumentError("gen_pathwidth requires d >= 1")
    state = _pathwidth_base(k + p, d)
    for level in range(1, p + 1):
        state = _pathwidth_level(state, d)
    g = Graph(state.n, state.edges, state.labels)
    cert = LadderCertificate(
        kind=LadderKind.HALF_GRAPH,
        d=4 * d - 1,
        a=tuple(a for a, _ in state.pairs),
        b=tuple(b for _, b in state.pairs),
    )
    _must_verify(g, cert, f"P_({p},{d},{k})")
    pd = PathDecomposition(state.bags)
    report = validate_path_decomposition(g, pd)
    if not report.valid or report.width > p + 2:
        raise InternalError(
            f"P_({p},{d},{k}) decomposition invalid or too wide: "
            f"{report.violation or report.width}"
        )
    return WitnessBundle(
        graph=g,
        certificate=cert,
        path_decomposition=pd,
        params={"p": p, "d": d, "k": k},
        meta={"order": (2 * d + 1) ** p, "distance": 4 * d - 1, "width": p + 2},
    )


# -- pairing decompositions: seeds, surgery, recursion ---------------------


BASE = "base"
LENGTHEN = "lengthen"
WIDEN = "widen"


def _seed_base() -> tuple[Graph, PairingDecomposition]:
    # Vertices: A=0, B=1, x=2, a1=3, b1=4, a2=5, b2=6.
    g = Graph(
        7,
        [(0, 1), (0, 3), (0, 5), (1, 4), (1, 6), (2, 4), (2, 5)],
        labels={0: "A", 1: "B", 2: "x", 3: "a1", 4: "b1", 5: "a2", 6: "b2"},
    )
    bags = [
        {0, 1}, {0, 1, 2}, {3, 0, 1, 2}, {3, 4, 1, 2}, {3, 4},
        {6, 0, 1, 2}, {5, 6, 0, 2}, {5, 6},
    ]
    base = TreeDecomposition(
        bags, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (5, 6), (6, 7)], root=0
    )
    return g, PairingDecomposition(base, 1, (0, 1), ((3, 4), (5, 6)), (4, 7))


def _seed_lengthen(d: int) -> tuple[Graph, PairingDecomposition]:
    g0, p0 = _seed_base()
    edges = g0.edges()
    labels = g0.labels
    n = g0.vertex_count
    bags = [set(bag) for bag in p0.base.bags]
    tree_edges = list(p0.base.tree_edges)
    new_pairs = []
    new_leaf_nodes = []
    for i, ((a, b), old_node) in enumerate(zip(p0.leaf_pairs, p0.leaf_nodes), start=1):
        u_prev, v_prev = a, b
        us, vs = [], []
        for t in range(1, d):
            u = n
            labels[u] = f"a{i}+{t}"
            n += 1
            v = n
            labels[v] = f"b{i}+{t}"
            n += 1
            edges += [(u_prev, u), (v_prev, v)]
            us.append(u)
            vs.append(v)
            u_prev, v_prev = u, v
        new_pairs.append((us[-1], vs[-1]))
        # Bag chain: {a,b,u1,v1}, {u_t,v_t,u_{t+1},v_{t+1}}, ..., {u_last,v_last}
        prev_node = old_node
        chain = [{a, b, us[0], vs[0]}]
        for t in range(len(us) - 1):
            chain.append({us[t], vs[t], us[t + 1], vs[t + 1]})
        chain.append({us[-1], vs[-1]})
        for bag in chain:
            bags.append(bag)
            node = len(bags) - 1
            tree_edges.append((prev_node, node))
            prev_node = node
        new_leaf_nodes.append(prev_node)
    base = TreeDecomposition(bags, tree_edges, root=p0.base.root)
    g = Graph(n, edges, labels)
    return g, PairingDecomposition(
        base, d, p0.root_pair, tuple(new_pairs), tuple(new_leaf_nodes)
    )


def _seed_widen(k: int) -> tuple[Graph, PairingDecomposition]:
    g0, p0 = _seed_base()
    n = g0.vertex_count
    extra = list(range(n, n + 2 * (k - 1)))
    labels = g0.labels
    for t, v in enumerate(extra, start=1):
        labels[v] = f"iso{t}"
    g = Graph(n + len(extra), g0.edges(), labels)
    internal = {1, 2, 3, 5, 6}
    bags = [
        set(bag) | set(extra) if t in internal else set(bag)
        for t, bag in enumerate(p0.base.bags)
    ]
    base = TreeDecomposition(bags, p0.base.tree_edges, root=p0.base.root)
    return g, PairingDecomposition(
        base, 1, p0.root_pair, p0.leaf_pairs, p0.leaf_nodes
    )


def gen_pairing_seed(mode: str, value: int | None = None):
    """Seed pairings: BASE, LENGTHEN(d >= 2), or WIDEN(k >= 2).

    BASE is the seven-vertex order-2 example at d=1 and width 3; LENGTHEN
    stretches its leaf pairs to distance d along fresh paths; WIDEN pads the
    five internal bags with 2(k-1) isolated vertices to reach width 2k+1.
    """
    if mode == BASE:
        if value is not None:
            raise ArgumentError("BASE takes no parameter")
        g, p = _seed_base()
    elif mode == LENGTHEN:
        if value is None or value < 2:
            raise ArgumentError("LENGTHEN requires d >= 2")
        g, p = _seed_lengthen(value)
    elif mode == WIDEN:
        if value is None or value < 2:
            raise ArgumentError("WIDEN requires k >= 2")
        g, p = _seed_widen(value)
    else:
        raise ArgumentError(f"unknown seed mode {mode!r}")
    _must_validate_pairing(g, p, f"seed {mode}")
    return g, p


def make_neighboring(g: Graph, t: PairingDecomposition):
    """Wire fresh A*, B* to the a- and b-sides; rebuild the tree around them.

    The new decomposition roots at the bag {A*, B*}, keeps every original
    bag augmented by both new vertices, and re-hangs each leaf pair on a
    fresh two-vertex clone bag.  Width grows by exactly 2; the distance
    matrix is untouched because every new shortcut costs >= 2d+2.
    """
    report = validate_pairing(g, t)
    if not report.valid:
        raise StructuralError(f"make_neighboring input invalid: {report.violation}")
    n = g.vertex_count
    a_new, b_new = n, n + 1
    labels = g.labels
    labels[a_new] = "A*"
    labels[b_new] = "B*"
    edges = g.edges()
    edges += [(a, a_new) for a, _ in t.leaf_pairs]
    edges += [(b, b_new) for _, b in t.leaf_pairs]
    g2 = Graph(n + 2, edges, labels)

    size = t.base.size
    bags = [set(bag) | {a_new, b_new} for bag in t.base.bags]
    tree_edges = list(t.base.tree_edges)
    new_root = len(bags)
    bags.append({a_new, b_new})
    tree_edges.append((t.base.root, new_root))
    clone_nodes = []
    for pair, old_node in zip(t.leaf_pairs, t.leaf_nodes):
        clone = len(bags)
        bags.append(set(pair))
        tree_edges.append((old_node, clone))
        clone_nodes.append(clone)
    base = TreeDecomposition(bags, tree_edges, root=new_root)
    p2 = PairingDecomposition(
        base, t.d, (a_new, b_new), t.leaf_pairs, tuple(clone_nodes),
        neighboring=True,
    )
    _must_validate_pairing(g2, p2, "make_neighboring")
    if p2.width != t.width + 2:
        raise InternalError("make_neighboring width did not grow by 2")
    return g2, p2


def combine(gT, hT):
    """Graft neighboring-ized copies of hT onto every leaf pair of gT.

    With gT at distance d-1 and width t, and hT at distance d and width
    t-2, the output is a pairing decomposition at distance d, width t, and
    order(gT) * order(hT): copy i of the neighboring form of hT is fused
    onto gT's i-th leaf pair (A* = a_i, B* = b_i) and its root bag is
    identified with gT's i-th leaf node.  Leaf pairs come out block-ordered
    by copy.
    """
    g_graph, g_pair = gT
    h_graph, h_pair = hT
    if h_pair.d != g_pair.d + 1:
        raise ArgumentError(
            f"combine needs hT at distance {g_pair.d + 1}, got {h_pair.d}"
        )
    if g_pair.width < 3:
        raise ArgumentError("combine needs width(gT) >= 3")
    if h_pair.width != g_pair.width - 2:
        raise ArgumentError(
            f"combine needs width(hT) = {g_pair.width - 2}, got {h_pair.width}"
        )
    if g_pair.order < 2 or h_pair.order < 2:
        raise ArgumentError("combine needs both orders >= 2")
    g_report = validate_pairing(g_graph, g_pair)
    if not g_report.valid:
        raise StructuralError(f"combine: gT invalid: {g_report.violation}")
    hn_graph, hn_pair = make_neighboring(h_graph, h_pair)

    a_star, b_star = hn_pair.root_pair
    n = g_graph.vertex_count
    edges = g_graph.edges()
    labels = g_graph.labels
    bags = [set(bag) for bag in g_pair.base.bags]
    tree_edges = list(g_pair.base.tree_edges)
    leaf_pairs: list[tuple[int, int]] = []
    leaf_nodes: list[int] = []
    for i, ((ag, bg), graft_node) in enumerate(
        zip(g_pair.leaf_pairs, g_pair.leaf_nodes), start=1
    ):
        vmap: dict[int, int] = {a_star: ag, b_star: bg}
        for v in range(hn_graph.vertex_count):
            if v in vmap:
                continue
            vmap[v] = n
            label = hn_graph.label(v)
            labels[n] = f"{i}:{label}" if label is not None else f"{i}:{v}"
            n += 1
        edges += [(vmap[u], vmap[v]) for u, v in hn_graph.edges()]
        nmap: dict[int, int] = {hn_pair.base.root: graft_node}
        for node in range(hn_pair.base.size):
            if node in nmap:
                continue
            nmap[node] = len(bags)
            bags.append({vmap[v] for v in hn_pair.base.bags[node]})
        tree_edges += [(nmap[u], nmap[v]) for u, v in hn_pair.base.tree_edges]
        leaf_pairs += [(vmap[a], vmap[b]) for a, b in hn_pair.leaf_pairs]
        leaf_nodes += [nmap[node] for node in hn_pair.leaf_nodes]

    combined = Graph(n, edges, labels)
    base = TreeDecomposition(bags, tree_edges, root=g_pair.base.root)
    out = PairingDecomposition(
        base, h_pair.d, g_pair.root_pair, tuple(leaf_pairs), tuple(leaf_nodes)
    )
    if out.order != g_pair.order * h_pair.order:
        raise InternalError("combine produced the wrong order")
    if out.width != g_pair.width:
        raise InternalError("combine changed the width")
    _must_validate_pairing(combined, out, "combine")
    return combined, out


def treewidth_order(d: int, k: int) -> int:
    """The closed-form order of G_{d,k}."""
    return 2 ** comb(d + k - 2, k - 1)


def _configured_cap(cap: int | None, default: int) -> int:
    if cap is not None:
        return cap
    env = os.environ.get("LADDERLAB_SIZE_CAP")
    return int(env) if env else default


def gen_treewidth(d: int, k: int, cap: int | None = None) -> WitnessBundle:
    """G_{d,k}: width 2k+1, half graph of order 2^C(d+k-2,k-1) at distance 2d.

    The recursion is BASE at (1,1), LENGTHEN along k=1, WIDEN along d=1,
    and combine(G_{d-1,k}, G_{d,k-1}) elsewhere.  Orders above the size cap
    (default 2^12, or the LADDERLAB_SIZE_CAP environment variable) are
    rejected before any construction starts.
    """
    if d < 1 or k < 1:
        raise ArgumentError("gen_treewidth requires d >= 1 and k >= 1")
    order = treewidth_order(d, k)
    limit = _configured_cap(cap, 2 ** 12)
    if order > limit:
        raise SizeError(
            f"G_({d},{k}) has order {order}, above the size cap {limit}"
        )

    memo: dict[tuple[int, int], tuple[Graph, PairingDecomposition]] = {}

    def build(dd: int, kk: int):
        key = (dd, kk)
        if key not in memo:
            if dd == 1 and kk == 1:
                memo[key] = gen_pairing_seed(BASE)
            elif kk == 1:
                memo[key] = gen_pairing_seed(LENGTHEN, dd)
            elif dd == 1:
                memo[key] = gen_pairing_seed(WIDEN, kk)
            else:
                memo[key] = combine(build(dd - 1, kk), build(dd, kk - 1))
        return memo[key]

    g, pairing = build(d, k)
    cert = LadderCertificate(
        kind=LadderKind.HALF_GRAPH,
        d=2 * d,
        a=tuple(a for a, _ in pairing.leaf_pairs),
        b=tuple(b for _, b in pairing.leaf_pairs),
    )
    _must_verify(g, cert, f"G_({d},{k})")
    if pairing.order != order:
        raise InternalError("treewidth recursion produced the wrong order")
    return WitnessBundle(
        graph=g,
        certificate=cert,
        pairing=pairing,
        params={"d": d, "k": k},
        meta={"order": order, "distance": 2 * d, "width": 2 * k + 1},
    )


# -- bundle directories ----------------------------------------------------


def save_bundle(bundle: WitnessBundle, path) -> None:
    """Write graph.txt, certificate.json, decomposition.json, meta.json."""
    target = Path(path)
    target.mkdir(parents=True, exist_ok=True)
    save_graph(bundle.graph, target / "graph.txt")
    (target / "certificate.json").write_text(
        canonical_json(certificate_to_json_obj(bundle.certificate))
    )
    decomposition = bundle.path_decomposition or bundle.pairing
    if decomposition is not None:
        (target / "decomposition.json").write_text(
            canonical_json(decomposition_to_json_obj(decomposition))
        )
    (target / "meta.json").write_text(
        canonical_json({"params": bundle.params, "expected": bundle.meta})
    )


def load_bundle(path) -> WitnessBundle:
    """Read a bundle directory written by ``save_bundle``."""
    source = Path(path)
    if not (source / "graph.txt").exists():
        raise ArgumentError(f"{source} has no graph.txt; not a bundle directory")
    g = load_graph(source / "graph.txt")
    cert = certificate_from_json_obj(
        parse_json((source / "certificate.json").read_text())
    )
    path_decomposition = None
    pairing = None
    decomposition_file = source / "decomposition.json"
    if decomposition_file.exists():
        decomposition = decomposition_from_json_obj(
            parse_json(decomposition_file.read_text())
        )
        if isinstance(decomposition, PathDecomposition):
            path_decomposition = decomposition
        elif isinstance(decomposition, PairingDecomposition):
            pairing = decomposition
        else:
            raise StructuralError("bundle decomposition must be path or pairing")
    params: dict = {}
    meta: dict = {}
    meta_file = source / "meta.json"
    if meta_file.exists():
        obj = parse_json(meta_file.read_text())
        params = obj.get("params", {})
        meta = obj.get("expected", {})
    return WitnessBundle(
        graph=g,
        certificate=cert,
        path_decomposition=path_decomposition,
        pairing=pairing,
        params=params,
        meta=meta,
    )
