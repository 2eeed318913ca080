"""Quasi-cage and cage extraction from semi-ladders.

A semi-ladder whose ``a``-vertices all sit at one common distance from a
root vertex can be threaded onto shortest-path trees.  Chaining four
refinement steps turns a large semi-ladder into a *quasi-cage*: the ladder
plus two geodesic trees ``P`` (simple, rooted at ``p``) and ``Q`` (rooted at
``q``) whose leaves are exactly the ``a``-vertices, each tree avoiding the
other's root.  Discarding crossing indices then yields a *cage*, where
``Path(P, i)`` and ``Path(Q, j)`` intersect exactly when ``i = j``.

The chain loses bounded factors.  With input order written on the left:

* ``d*l + 1``        -> R-equidistant sub-ladder of order ``l``,
* ``l**d``           -> simple geodesic sub-ladder of order ``l``,
* ``d*l + 2``        -> Q-equidistant sub-ladder of order ``l``,
* quasi-cage ``(2d-1)*l`` -> cage of order ``l``,

so a semi-ladder of order ``d*(d*l+2)**d + 1`` always yields a quasi-cage of
order ``l``.  Guarantees are enforced only when the input meets the matching
threshold; smaller inputs are processed best-effort and simply report the
achieved order.

All shortest-path trees are deterministic ascending-id BFS trees, so reruns
are byte-for-byte reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

from ladderlab.errors import ArgumentError, InternalError, StructuralError
from ladderlab.graphcore import Graph, raw_distances
from ladderlab.ladder import (
    LadderCertificate,
    LadderKind,
    ladder_subset,
    verify_certificate,
)

__all__ = [
    "GeodesicTree",
    "QuasiCage",
    "Cage",
    "CageValidationReport",
    "extract_r_equidistant",
    "extract_simple_geodesic",
    "extract_q_equidistant",
    "assemble_quasi_cage",
    "extract_cage",
    "quasi_cage_pipeline",
    "cage_pipeline",
    "validate_cage_structures",
    "cage_subset",
    "cage_to_json_obj",
    "cage_from_json_obj",
]


# ---------------------------------------------------------------------------
# Types


@dataclass(frozen=True)
class GeodesicTree:
    """An ordered bundle of equal-length shortest paths sharing one root.

    ``paths[i]`` runs from ``root`` to the i-th terminal; the union of the
    paths must form a tree whose leaves are the terminals.  ``simple`` claims
    that distinct paths meet only at the root.  ``d`` is the distance bound
    the path lengths must respect; it is carried here so the tree can be
    validated standalone.  Only cheap shape checks happen at construction --
    the graph-dependent invariants are re-checked by
    :func:`validate_cage_structures`.
    """

    root: int
    paths: tuple[tuple[int, ...], ...]
    simple: bool
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ArgumentError("geodesic tree requires d >= 1")
        paths = tuple(tuple(int(v) for v in path) for path in self.paths)
        for path in paths:
            if not path:
                raise ArgumentError("geodesic tree paths must be non-empty")
            if path[0] != self.root:
                raise ArgumentError(
                    f"path {path} does not start at the root {self.root}"
                )
        object.__setattr__(self, "root", int(self.root))
        object.__setattr__(self, "paths", paths)
        object.__setattr__(self, "simple", bool(self.simple))

    @property
    def order(self) -> int:
        return len(self.paths)

    @property
    def terminals(self) -> tuple[int, ...]:
        return tuple(path[-1] for path in self.paths)

    def path(self, i: int) -> tuple[int, ...]:
        """The i-th path, 1-based."""
        if not 1 <= i <= self.order:
            raise ArgumentError(f"path index {i} outside [1,{self.order}]")
        return self.paths[i - 1]

    def vertices(self) -> frozenset[int]:
        return frozenset(v for path in self.paths for v in path)

    def avoids(self, v: int) -> bool:
        return all(v not in path for path in self.paths)


@dataclass(frozen=True)
class QuasiCage:
    """A semi-ladder threaded onto two geodesic trees over the a-vertices.

    ``P`` is a simple geodesic tree rooted at ``p`` and ``Q`` a geodesic tree
    rooted at ``q``; both terminate exactly at the certificate's a-sequence,
    in order.  Construction checks only internal shape consistency; the full
    invariants (distinct vertices, roots outside the ladder, avoidance,
    shortest paths, the ladder's distance pattern) are graph-dependent and
    re-checked by :func:`validate_cage_structures`.
    """

    certificate: LadderCertificate
    p: int
    q: int
    P: GeodesicTree
    Q: GeodesicTree

    def __post_init__(self):
        c = self.certificate
        if c.kind is not LadderKind.SEMI_LADDER:
            raise ArgumentError("quasi-cage requires a semi-ladder certificate")
        if self.P.order != c.order or self.Q.order != c.order:
            raise ArgumentError("tree orders must match the certificate order")
        if self.P.root != self.p or self.Q.root != self.q:
            raise ArgumentError("tree roots must match p and q")
        if self.P.d != c.d or self.Q.d != c.d:
            raise ArgumentError("tree distance bounds must match the certificate")
        if not self.P.simple:
            raise ArgumentError("P must be flagged as a simple geodesic tree")
        if self.P.terminals != c.a or self.Q.terminals != c.a:
            raise ArgumentError("tree terminals must equal the a-sequence")
        object.__setattr__(self, "p", int(self.p))
        object.__setattr__(self, "q", int(self.q))

    @property
    def order(self) -> int:
        return self.certificate.order

    @property
    def d(self) -> int:
        return self.certificate.d


class Cage(QuasiCage):
    """A quasi-cage with exclusive crossings: P_i meets Q_j iff i = j."""


@dataclass(frozen=True)
class CageValidationReport:
    valid: bool
    failures: tuple[str, ...] = ()

    def to_json_obj(self) -> dict:
        return {"valid": self.valid, "failures": list(self.failures)}


# ---------------------------------------------------------------------------
# Shared helpers


def _require_semi_ladder(cert: LadderCertificate) -> None:
    if cert.kind is not LadderKind.SEMI_LADDER:
        raise ArgumentError(
            "cage extraction requires a semi-ladder certificate "
            "(convert half graphs with as_kind first)"
        )


def _require_distinct(cert: LadderCertificate) -> None:
    if len(set(cert.vertices())) != 2 * cert.order:
        raise StructuralError("certificate vertices are not pairwise distinct")


def _check_vertices(g: Graph, cert: LadderCertificate) -> None:
    for v in cert.vertices():
        g._check_vertex(v)


def _best_distance_class(classes: dict[int, list[int]]) -> list[int]:
    """Largest index class; ties go to the smaller distance."""
    best = min(classes, key=lambda dist: (-len(classes[dist]), dist))
    return classes[best]


def _bfs_parents(g: Graph, dist) -> dict[int, int]:
    """Ascending-id BFS tree: each reached vertex's smallest-id predecessor."""
    parents: dict[int, int] = {}
    for v in range(g.n):
        dv = dist[v]
        if dv <= 0:
            continue
        for u in g.neighbors(v):
            if dist[u] == dv - 1:
                parents[v] = u
                break
    return parents


def _tree_path(parents: dict[int, int], source: int, target: int) -> tuple[int, ...]:
    """The BFS-tree path from ``source`` down to ``target``, both inclusive."""
    chain = [target]
    while chain[-1] != source:
        chain.append(parents[chain[-1]])
    chain.reverse()
    return tuple(chain)


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _floor_root(n: int, k: int) -> int:
    """Largest l >= 0 with l**k <= n (small n; exact integer arithmetic)."""
    l = 0
    while (l + 1) ** k <= n:
        l += 1
    return l


# ---------------------------------------------------------------------------
# Step 1: R-equidistant extraction


def extract_r_equidistant(
    g: Graph, cert: LadderCertificate
) -> tuple[LadderCertificate, int]:
    """Restrict ``cert`` to indices whose a-vertices are equidistant from b_1.

    With ``r = b_1``, every ``a_i`` with ``i >= 2`` lies within distance d of
    ``r`` (that is exactly the ladder's closeness requirement), so the
    distances take at most d values and the largest class keeps at least
    ``ceil((order-1)/d)`` indices.  Ties between classes go to the smaller
    distance.  Returns the sub-certificate and ``r``; ``r`` is distinct from
    every retained ladder vertex because certificate vertices are pairwise
    distinct and index 1 is never retained.
    """
    _require_semi_ladder(cert)
    if cert.order < 2:
        raise ArgumentError("R-equidistant extraction requires order >= 2")
    _check_vertices(g, cert)
    _require_distinct(cert)
    r = cert.b[0]
    dist = raw_distances(g, r, cert.d)
    classes: dict[int, list[int]] = {}
    unclassified = 0
    for i in range(2, cert.order + 1):
        dv = dist[cert.a[i - 1]]
        if 1 <= dv <= cert.d:
            classes.setdefault(dv, []).append(i)
        else:
            unclassified += 1
    if not classes:
        raise StructuralError(
            "no a-vertex lies within distance d of b_1; "
            "the input does not satisfy the semi-ladder closeness pattern"
        )
    chosen = _best_distance_class(classes)
    if unclassified == 0 and len(chosen) < _ceil_div(cert.order - 1, cert.d):
        raise InternalError("pigeonhole guarantee violated in R-equidistant step")
    return ladder_subset(cert, chosen), r


# ---------------------------------------------------------------------------
# Step 2: simple geodesic extraction


def extract_simple_geodesic(
    g: Graph, bundle: tuple[LadderCertificate, int]
) -> tuple[LadderCertificate, GeodesicTree]:
    """Thread an R-equidistant sub-ladder onto a simple geodesic tree.

    Builds the ascending-id BFS tree from ``r`` and takes the union of the
    root-to-``a_i`` paths; its leaves are exactly the a-vertices because they
    share one depth.  The node ``p`` with the most child subtrees (ties to
    the smallest vertex id) becomes the new root, keeping the smallest-index
    leaf per child subtree.  A branching argument gives at least
    ``floor(order**(1/d))`` retained indices.
    """
    cert, r = bundle
    _require_semi_ladder(cert)
    if cert.order < 1:
        raise ArgumentError("simple geodesic extraction requires order >= 1")
    g._check_vertex(r)
    _check_vertices(g, cert)
    _require_distinct(cert)
    if r in cert.vertices():
        raise StructuralError("input is not R-equidistant: r is a ladder vertex")
    dist = raw_distances(g, r, cert.d)
    delta = dist[cert.a[0]]
    if not 1 <= delta <= cert.d:
        raise StructuralError(
            "input is not R-equidistant: a_1 is not within distance d of r"
        )
    if any(dist[v] != delta for v in cert.a):
        raise StructuralError(
            "input is not R-equidistant: a-vertices are not equidistant from r"
        )
    parents = _bfs_parents(g, dist)
    root_paths = [_tree_path(parents, r, a) for a in cert.a]

    # Child subtrees of each union node, and the ladder indices under each.
    children: dict[int, dict[int, list[int]]] = {}
    for idx, path in enumerate(root_paths, start=1):
        for t in range(len(path) - 1):
            children.setdefault(path[t], {}).setdefault(path[t + 1], []).append(idx)
    best_count = max(len(kids) for kids in children.values())
    p = min(u for u, kids in children.items() if len(kids) == best_count)
    kept = sorted(min(indices) for indices in children[p].values())

    if len(kept) < _floor_root(cert.order, cert.d):
        raise InternalError("branching guarantee violated in geodesic step")
    depth_p = dist[p]
    tree = GeodesicTree(
        root=p,
        paths=tuple(root_paths[i - 1][depth_p:] for i in kept),
        simple=True,
        d=cert.d,
    )
    return ladder_subset(cert, kept), tree


# ---------------------------------------------------------------------------
# Step 3: Q-equidistant extraction


def extract_q_equidistant(
    g: Graph, bundle: tuple[LadderCertificate, GeodesicTree]
) -> tuple[LadderCertificate, GeodesicTree, int] | None:
    """Pick ``q = b_1`` and restrict to indices compatible with it.

    Index 1 is always dropped (its diagonal keeps ``a_1`` far from ``q``),
    plus the at most one path of the simple tree passing through ``q``, plus
    any index failing the root-sum requirement
    ``dist(q, root) + dist(root, a_i) > d`` -- that sum check is verified by
    fresh BFS, never assumed, and a violating instance surfaces as not-found
    (``None``).  The survivors are pigeonholed into equidistance classes from
    ``q``; the largest class (ties to the smaller distance) is returned with
    its sub-tree and ``q``.
    """
    cert, tree = bundle
    _require_semi_ladder(cert)
    if cert.order < 2:
        raise ArgumentError("Q-equidistant extraction requires order >= 2")
    if tree.order != cert.order:
        raise ArgumentError("tree order must match the certificate order")
    if not tree.simple:
        raise ArgumentError("Q-equidistant extraction requires a simple tree")
    g._check_vertex(tree.root)
    _check_vertices(g, cert)
    _require_distinct(cert)

    d = cert.d
    q = cert.b[0]
    root = tree.root
    if q == root:
        return None
    dq = raw_distances(g, q, d)
    droot = raw_distances(g, root, d)
    q_root = dq[root]  # -1 encodes "further than d"

    classes: dict[int, list[int]] = {}
    for i in range(2, cert.order + 1):
        if q in tree.paths[i - 1]:
            continue
        da = droot[cert.a[i - 1]]
        if q_root >= 0 and da >= 0 and q_root + da <= d:
            continue  # root-sum violated: rejected from the guarantee path
        dv = dq[cert.a[i - 1]]
        if 1 <= dv <= d:
            classes.setdefault(dv, []).append(i)
    if not classes:
        return None
    chosen = _best_distance_class(classes)
    total = sum(len(members) for members in classes.values())
    if len(chosen) < _ceil_div(total, d):
        raise InternalError("pigeonhole guarantee violated in Q-equidistant step")
    sub_tree = GeodesicTree(
        root=root,
        paths=tuple(tree.paths[i - 1] for i in chosen),
        simple=True,
        d=d,
    )
    return ladder_subset(cert, chosen), sub_tree, q


# ---------------------------------------------------------------------------
# Step 4: quasi-cage assembly


def assemble_quasi_cage(
    g: Graph, bundle: tuple[LadderCertificate, GeodesicTree, int]
) -> QuasiCage:
    """Grow the Q-tree from ``q`` and assemble a fully validated quasi-cage.

    ``Q`` is the ascending-id BFS shortest-path tree from ``q`` restricted to
    the a-vertices; equal path lengths come from Q-equidistance.  That ``Q``
    avoids ``p`` follows from the root-sum property of the previous step (a
    shortest q-to-a_i path through p would be longer than d); it is
    nevertheless checked, along with every other quasi-cage invariant, and a
    failure raises :class:`InternalError`.
    """
    cert, tree, q = bundle
    _require_semi_ladder(cert)
    if cert.order < 1:
        raise ArgumentError("quasi-cage assembly requires order >= 1")
    if tree.order != cert.order:
        raise ArgumentError("tree order must match the certificate order")
    g._check_vertex(q)
    _check_vertices(g, cert)
    _require_distinct(cert)

    d = cert.d
    dq = raw_distances(g, q, d)
    gamma = dq[cert.a[0]]
    if not 1 <= gamma <= d or any(dq[v] != gamma for v in cert.a):
        raise StructuralError(
            "input is not Q-equidistant: a-vertices are not equidistant from q"
        )
    parents = _bfs_parents(g, dq)
    q_tree = GeodesicTree(
        root=q,
        paths=tuple(_tree_path(parents, q, a) for a in cert.a),
        simple=False,
        d=d,
    )
    qc = QuasiCage(certificate=cert, p=tree.root, q=q, P=tree, Q=q_tree)
    report = validate_cage_structures(g, qc)
    if not report.valid:
        raise InternalError(
            "assembled quasi-cage failed validation: " + "; ".join(report.failures)
        )
    return qc


# ---------------------------------------------------------------------------
# Step 5: cage extraction


def extract_cage(qc: QuasiCage) -> Cage:
    """Drop crossing indices from a quasi-cage until crossings are exclusive.

    Builds the auxiliary digraph on indices with an arc ``i -> j`` whenever
    ``Path(P, i)`` meets ``Path(Q, j)`` for ``i != j``.  Each Q-path has at
    most d vertices besides ``q``, none of them shared with ``P``'s root or
    more than one P-path, so every in-degree is at most ``d - 1`` (checked;
    a violation raises :class:`InternalError`).  The underlying graph is
    therefore ``(2d-2)``-degenerate; greedy colouring in min-degree-last
    order with smallest-id ties uses at most ``2d - 1`` colours, and the
    largest colour class (ties to the smallest colour index) is returned as
    a cage of order at least ``ceil(order / (2d-1))``.
    """
    if not isinstance(qc, QuasiCage):
        raise ArgumentError("extract_cage expects a QuasiCage")
    n = qc.order
    d = qc.d
    p_sets = [set(path) for path in qc.P.paths]
    q_sets = [set(path) for path in qc.Q.paths]

    adjacency: list[set[int]] = [set() for _ in range(n)]
    for j in range(n):
        incoming = [i for i in range(n) if i != j and p_sets[i] & q_sets[j]]
        if len(incoming) > d - 1:
            raise InternalError(
                f"auxiliary digraph in-degree {len(incoming)} exceeds d-1={d - 1}; "
                "the quasi-cage invariants do not hold"
            )
        for i in incoming:
            adjacency[i].add(j)
            adjacency[j].add(i)

    # Min-degree-last removal, then greedy colouring in reverse removal order.
    degree = [len(adjacency[i]) for i in range(n)]
    alive = set(range(n))
    removal: list[int] = []
    while alive:
        v = min(alive, key=lambda u: (degree[u], u))
        alive.discard(v)
        removal.append(v)
        for u in adjacency[v]:
            if u in alive:
                degree[u] -= 1
    colour: dict[int, int] = {}
    for v in reversed(removal):
        used = {colour[u] for u in adjacency[v] if u in colour}
        c = 0
        while c in used:
            c += 1
        if c > 2 * d - 2:
            raise InternalError("greedy colouring exceeded 2d-1 colours")
        colour[v] = c

    by_colour: dict[int, list[int]] = {}
    for v, c in colour.items():
        by_colour.setdefault(c, []).append(v)
    best = min(by_colour, key=lambda c: (-len(by_colour[c]), c))
    chosen = sorted(i + 1 for i in by_colour[best])
    if len(chosen) < _ceil_div(n, 2 * d - 1):
        raise InternalError("colour-class guarantee violated in cage extraction")

    cage = Cage(
        certificate=ladder_subset(qc.certificate, chosen),
        p=qc.p,
        q=qc.q,
        P=GeodesicTree(
            qc.p, tuple(qc.P.paths[i - 1] for i in chosen), True, qc.P.d
        ),
        Q=GeodesicTree(
            qc.q, tuple(qc.Q.paths[i - 1] for i in chosen), qc.Q.simple, qc.Q.d
        ),
    )
    for i, pi in enumerate(cage.P.paths):
        for j, qj in enumerate(cage.Q.paths):
            crosses = bool(set(pi) & set(qj))
            if crosses != (i == j):
                raise InternalError(
                    "cage intersection discipline violated after colour selection"
                )
    return cage


# ---------------------------------------------------------------------------
# Pipeline conveniences


def quasi_cage_pipeline(g: Graph, cert: LadderCertificate) -> QuasiCage | None:
    """Run the full chain semi-ladder -> quasi-cage; ``None`` when it dries up.

    Accepts half-graph and co-matching certificates as well (their distance
    patterns include the semi-ladder requirements) by viewing them as
    semi-ladders.  Returns ``None`` if an intermediate order drops below the
    next step's minimum or the Q-equidistant step comes up empty.
    """
    cert = cert.as_kind(LadderKind.SEMI_LADDER)
    if cert.order < 2:
        return None
    r_bundle = extract_r_equidistant(g, cert)
    sg_bundle = extract_simple_geodesic(g, r_bundle)
    if sg_bundle[0].order < 2:
        return None
    q_bundle = extract_q_equidistant(g, sg_bundle)
    if q_bundle is None:
        return None
    return assemble_quasi_cage(g, q_bundle)


def cage_pipeline(g: Graph, cert: LadderCertificate) -> Cage | None:
    """Run the chain all the way to a cage; ``None`` when no quasi-cage."""
    qc = quasi_cage_pipeline(g, cert)
    if qc is None:
        return None
    return extract_cage(qc)


# ---------------------------------------------------------------------------
# Validation


def _validate_tree(
    g: Graph, tree: GeodesicTree, tag: str, failures: list[str]
) -> None:
    checked_paths = True
    for idx, path in enumerate(tree.paths, start=1):
        if any(not 0 <= v < g.n for v in path):
            failures.append(f"{tag}: path {idx} has a vertex out of range")
            checked_paths = False
            continue
        if len(set(path)) != len(path):
            failures.append(f"{tag}: path {idx} repeats a vertex")
            checked_paths = False
            continue
        for t in range(len(path) - 1):
            if not g.has_edge(path[t], path[t + 1]):
                failures.append(
                    f"{tag}: path {idx} is not a path in the graph "
                    f"(missing edge {path[t]}-{path[t + 1]})"
                )
                checked_paths = False
                break
    if not checked_paths:
        return
    if not 0 <= tree.root < g.n:
        failures.append(f"{tag}: root out of range")
        return

    dist = raw_distances(g, tree.root)
    for idx, path in enumerate(tree.paths, start=1):
        if len(path) - 1 != dist[path[-1]]:
            failures.append(f"{tag}: path {idx} is not a shortest path")
    lengths = {len(path) - 1 for path in tree.paths}
    if len(lengths) > 1:
        failures.append(f"{tag}: path lengths are not all equal")
    if lengths and max(lengths) > tree.d:
        failures.append(f"{tag}: path length exceeds d={tree.d}")

    terminals = tree.terminals
    if len(set(terminals)) != len(terminals):
        failures.append(f"{tag}: terminals are not pairwise distinct")

    nodes = tree.vertices()
    edges = {
        frozenset((path[t], path[t + 1]))
        for path in tree.paths
        for t in range(len(path) - 1)
    }
    if len(edges) != len(nodes) - 1:
        failures.append(f"{tag}: union of paths is not a tree")
    else:
        degree: dict[int, int] = {}
        for e in edges:
            for v in e:
                degree[v] = degree.get(v, 0) + 1
        for idx, path in enumerate(tree.paths, start=1):
            if len(path) > 1 and degree.get(path[-1], 0) != 1:
                failures.append(
                    f"{tag}: terminal of path {idx} is not a leaf of the tree"
                )

    if tree.simple:
        sets = [set(path) for path in tree.paths]
        for i in range(len(sets)):
            for j in range(i + 1, len(sets)):
                if sets[i] & sets[j] != {tree.root}:
                    failures.append(
                        f"{tag}: paths {i + 1} and {j + 1} intersect beyond "
                        "the root (tree is not simple)"
                    )


def _validate_quasi_cage(
    g: Graph, x: QuasiCage, want_cage: bool, failures: list[str]
) -> None:
    cert = x.certificate
    vertices = cert.vertices()
    if any(not 0 <= v < g.n for v in vertices):
        failures.append("ladder: vertex out of range")
        return
    if len(set(vertices)) != 2 * cert.order:
        failures.append("ladder: vertices are not pairwise distinct")
    else:
        report = verify_certificate(g, cert)
        if not report.valid:
            v = report.violation
            failures.append(
                "ladder: certificate does not verify as a distance-"
                f"{cert.d} semi-ladder (violation at i={v.i}, j={v.j})"
            )
    if x.p == x.q:
        failures.append("roots: p and q are not distinct")
    if x.p in vertices:
        failures.append("roots: p lies among the ladder vertices")
    if x.q in vertices:
        failures.append("roots: q lies among the ladder vertices")
    _validate_tree(g, x.P, "P", failures)
    _validate_tree(g, x.Q, "Q", failures)
    for idx, path in enumerate(x.P.paths, start=1):
        if x.q in path:
            failures.append(f"P: path {idx} does not avoid q")
    for idx, path in enumerate(x.Q.paths, start=1):
        if x.p in path:
            failures.append(f"Q: path {idx} does not avoid p")
    if want_cage:
        p_sets = [set(path) for path in x.P.paths]
        q_sets = [set(path) for path in x.Q.paths]
        for i in range(len(p_sets)):
            for j in range(len(q_sets)):
                crosses = bool(p_sets[i] & q_sets[j])
                if i == j and not crosses:
                    failures.append(
                        f"intersection: P_{i + 1} and Q_{j + 1} do not meet"
                    )
                if i != j and crosses:
                    failures.append(
                        f"intersection: P_{i + 1} and Q_{j + 1} intersect "
                        "(crossings must be exclusive to i = j)"
                    )


def validate_cage_structures(
    g: Graph, x: GeodesicTree | QuasiCage | Cage
) -> CageValidationReport:
    """Re-check every invariant of ``x`` by fresh BFS and report all failures.

    Accepts a bare :class:`GeodesicTree` (shortestness, equal lengths within
    d, tree union, leaf terminals, simplicity), a :class:`QuasiCage` (plus
    the ladder pattern, distinctness, root placement, and avoidance both
    ways), or a :class:`Cage` (plus the exclusive-crossing discipline).
    Never raises for invalid structures -- failures come back in the report.
    """
    failures: list[str] = []
    if isinstance(x, Cage):
        _validate_quasi_cage(g, x, True, failures)
    elif isinstance(x, QuasiCage):
        _validate_quasi_cage(g, x, False, failures)
    elif isinstance(x, GeodesicTree):
        _validate_tree(g, x, "tree", failures)
    else:
        raise ArgumentError(
            "validate_cage_structures expects a GeodesicTree, QuasiCage, or Cage"
        )
    return CageValidationReport(not failures, tuple(failures))


# ---------------------------------------------------------------------------
# Subsets and JSON


def cage_subset(x: QuasiCage, indices) -> QuasiCage:
    """Restrict a quasi-cage or cage to an ascending 1-based index selection.

    Both structures are closed under taking subsets, so the result is the
    same type as the input.
    """
    if not isinstance(x, QuasiCage):
        raise ArgumentError("cage_subset expects a QuasiCage or Cage")
    sub_cert = ladder_subset(x.certificate, indices)
    idx = list(indices)
    return type(x)(
        certificate=sub_cert,
        p=x.p,
        q=x.q,
        P=GeodesicTree(x.p, tuple(x.P.paths[i - 1] for i in idx), True, x.P.d),
        Q=GeodesicTree(
            x.q, tuple(x.Q.paths[i - 1] for i in idx), x.Q.simple, x.Q.d
        ),
    )


def _crossings_exclusive(x: QuasiCage) -> bool:
    p_sets = [set(path) for path in x.P.paths]
    q_sets = [set(path) for path in x.Q.paths]
    for i in range(len(p_sets)):
        for j in range(len(q_sets)):
            if bool(p_sets[i] & q_sets[j]) != (i == j):
                return False
    return True


def cage_to_json_obj(x: QuasiCage) -> dict:
    """Serialize a quasi-cage or cage as ``{d, p, q, a, b, P, Q}``."""
    if not isinstance(x, QuasiCage):
        raise ArgumentError("cage_to_json_obj expects a QuasiCage or Cage")
    return {
        "d": x.d,
        "p": x.p,
        "q": x.q,
        "a": list(x.certificate.a),
        "b": list(x.certificate.b),
        "P": [list(path) for path in x.P.paths],
        "Q": [list(path) for path in x.Q.paths],
    }


def cage_from_json_obj(obj: dict) -> QuasiCage:
    """Rebuild a quasi-cage from its JSON object.

    The serialized form does not distinguish quasi-cages from cages, so the
    exclusive-crossing discipline decides: if it holds, the stronger
    :class:`Cage` type is returned.
    """
    try:
        d = int(obj["d"])
        p = int(obj["p"])
        q = int(obj["q"])
        cert = LadderCertificate(
            LadderKind.SEMI_LADDER, d, tuple(obj["a"]), tuple(obj["b"])
        )
        p_tree = GeodesicTree(p, tuple(tuple(pa) for pa in obj["P"]), True, d)
        q_tree = GeodesicTree(q, tuple(tuple(pa) for pa in obj["Q"]), False, d)
        qc = QuasiCage(certificate=cert, p=p, q=q, P=p_tree, Q=q_tree)
    except (KeyError, ValueError, TypeError) as exc:
        raise StructuralError(f"malformed cage JSON: {exc}") from None
    if _crossings_exclusive(qc):
        return Cage(certificate=cert, p=p, q=q, P=p_tree, Q=q_tree)
    return qc
