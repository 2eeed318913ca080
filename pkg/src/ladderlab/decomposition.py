"""Path, tree, and pairing decompositions: validation, width, nice form.

A path decomposition is a sequence of bags; validity means every edge lies
in some bag and every vertex occupies a contiguous run of bags.  A tree
decomposition hangs the bags on an arbitrary tree instead, with the run
condition becoming connectivity of the per-vertex bag-node set.  A pairing
decomposition is a rooted tree decomposition whose root bag is an exact
pair {A, B} and whose designated leaves are exact pairs {a_i, b_i} with a
rigid distance pattern between the sides:

    dist(b_i, a_j) = 2d   for i < j
    dist(b_i, a_j) = 2d+1 for i >= j

The optional *neighboring* flag additionally requires A adjacent to exactly
the a_i, B adjacent to exactly the b_i, and the cross distances
dist(a_i, B) and dist(b_i, A) to stay >= 2d+1.
"""

from __future__ import annotations

from dataclasses import dataclass

from ladderlab.errors import ArgumentError, StructuralError
from ladderlab.graphcore import Graph, raw_distances


def _freeze_bags(bags) -> tuple[frozenset[int], ...]:
    out = []
    for bag in bags:
        frozen = frozenset(int(v) for v in bag)
        if any(v < 0 for v in frozen):
            raise ArgumentError("bag contains a negative vertex id")
        out.append(frozen)
    return tuple(out)


@dataclass(frozen=True)
class PathDecomposition:
    """An ordered sequence of vertex bags W_1..W_k."""

    bags: tuple[frozenset[int], ...]

    def __init__(self, bags):
        object.__setattr__(self, "bags", _freeze_bags(bags))

    @property
    def size(self) -> int:
        return len(self.bags)

    @property
    def width(self) -> int:
        return max((len(bag) for bag in self.bags), default=0) - 1

    def vertices(self) -> frozenset[int]:
        return frozenset().union(*self.bags) if self.bags else frozenset()


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags on the nodes of a tree, optionally rooted."""

    bags: tuple[frozenset[int], ...]
    tree_edges: tuple[tuple[int, int], ...]
    root: int | None = None

    def __init__(self, bags, tree_edges, root=None):
        frozen = _freeze_bags(bags)
        edges = []
        for u, v in tree_edges:
            u, v = int(u), int(v)
            if not (0 <= u < len(frozen) and 0 <= v < len(frozen)) or u == v:
                raise ArgumentError(f"tree edge ({u}, {v}) out of range")
            edges.append((u, v) if u < v else (v, u))
        if root is not None:
            root = int(root)
            if not 0 <= root < len(frozen):
                raise ArgumentError(f"root node {root} out of range")
        object.__setattr__(self, "bags", frozen)
        object.__setattr__(self, "tree_edges", tuple(sorted(set(edges))))
        object.__setattr__(self, "root", root)

    @property
    def size(self) -> int:
        return len(self.bags)

    @property
    def width(self) -> int:
        return max((len(bag) for bag in self.bags), default=0) - 1

    def vertices(self) -> frozenset[int]:
        return frozenset().union(*self.bags) if self.bags else frozenset()

    def node_neighbors(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.size)]
        for u, v in self.tree_edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def leaves(self) -> list[int]:
        """Nodes of tree-degree <= 1 other than the root."""
        adj = self.node_neighbors()
        return [
            t
            for t in range(self.size)
            if len(adj[t]) <= 1 and t != self.root
        ]


@dataclass(frozen=True)
class PairingDecomposition:
    """A rooted tree decomposition with paired root and leaf bags."""

    base: TreeDecomposition
    d: int
    root_pair: tuple[int, int]
    leaf_pairs: tuple[tuple[int, int], ...]
    leaf_nodes: tuple[int, ...]
    neighboring: bool = False

    def __init__(self, base, d, root_pair, leaf_pairs, leaf_nodes,
                 neighboring=False):
        if not isinstance(base, TreeDecomposition):
            raise ArgumentError("base must be a TreeDecomposition")
        if base.root is None:
            raise ArgumentError("pairing decompositions need a rooted base")
        d = int(d)
        if d < 1:
            raise ArgumentError("pairing distance d must be >= 1")
        pair = (int(root_pair[0]), int(root_pair[1]))
        pairs = tuple((int(a), int(b)) for a, b in leaf_pairs)
        nodes = tuple(int(t) for t in leaf_nodes)
        if len(nodes) != len(pairs):
            raise ArgumentError("leaf_nodes and leaf_pairs lengths differ")
        if not pairs:
            raise ArgumentError("pairing decompositions have order >= 1")
        named = [*pair]
        for a, b in pairs:
            named.append(a)
            named.append(b)
        if len(set(named)) != len(named):
            raise ArgumentError("root and leaf pair vertices must be distinct")
        for t in nodes:
            if not 0 <= t < base.size:
                raise ArgumentError(f"leaf node {t} out of range")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "root_pair", pair)
        object.__setattr__(self, "leaf_pairs", pairs)
        object.__setattr__(self, "leaf_nodes", nodes)
        object.__setattr__(self, "neighboring", bool(neighboring))

    @property
    def order(self) -> int:
        return len(self.leaf_pairs)

    @property
    def width(self) -> int:
        return self.base.width


@dataclass(frozen=True)
class DecompositionReport:
    """Validation outcome: ``violation`` describes the first failure."""

    valid: bool
    width: int
    violation: str | None = None

    def to_json_obj(self) -> dict:
        obj = {"valid": self.valid, "width": self.width}
        if self.violation is not None:
            obj["violation"] = self.violation
        return obj


def _check_vertex_ranges(g: Graph, bags) -> None:
    for bag in bags:
        for v in bag:
            g._check_vertex(v)


def _uncovered_edge(g: Graph, bags) -> tuple[int, int] | None:
    membership: dict[int, list[int]] = {}
    for t, bag in enumerate(bags):
        for v in bag:
            membership.setdefault(v, []).append(t)
    for u, v in g.edges():
        homes_u = membership.get(u)
        if homes_u is None:
            return (u, v)
        covered = any(v in bags[t] for t in homes_u)
        if not covered:
            return (u, v)
    return None


def validate_path_decomposition(g: Graph, pd: PathDecomposition) -> DecompositionReport:
    """Check edge coverage and per-vertex contiguity."""
    _check_vertex_ranges(g, pd.bags)
    width = pd.width
    first: dict[int, int] = {}
    last: dict[int, int] = {}
    for t, bag in enumerate(pd.bags):
        for v in bag:
            first.setdefault(v, t)
            last[v] = t
    for v in sorted(first):
        for t in range(first[v], last[v] + 1):
            if v not in pd.bags[t]:
                return DecompositionReport(
                    False, width,
                    f"vertex {v} missing from bag {t} inside its interval "
                    f"[{first[v]}, {last[v]}]",
                )
    edge = _uncovered_edge(g, pd.bags)
    if edge is not None:
        return DecompositionReport(
            False, width, f"edge ({edge[0]}, {edge[1]}) not covered by any bag"
        )
    return DecompositionReport(True, width)


def validate_tree_decomposition(g: Graph, td: TreeDecomposition) -> DecompositionReport:
    """Check tree shape, edge coverage, and per-vertex subtree connectivity."""
    _check_vertex_ranges(g, td.bags)
    width = td.width
    k = td.size
    if k == 0:
        if g.edge_count == 0:
            return DecompositionReport(True, width)
        return DecompositionReport(False, width, "no bags but the graph has edges")
    if len(td.tree_edges) != k - 1:
        return DecompositionReport(
            False, width,
            f"{len(td.tree_edges)} tree edges on {k} nodes is not a tree",
        )
    adj = td.node_neighbors()
    seen = [False] * k
    stack = [0]
    seen[0] = True
    count = 1
    while stack:
        t = stack.pop()
        for s in adj[t]:
            if not seen[s]:
                seen[s] = True
                count += 1
                stack.append(s)
    if count != k:
        return DecompositionReport(False, width, "bag tree is disconnected")
    for v in sorted(td.vertices()):
        homes = [t for t in range(k) if v in td.bags[t]]
        reached = {homes[0]}
        stack = [homes[0]]
        home_set = set(homes)
        while stack:
            t = stack.pop()
            for s in adj[t]:
                if s in home_set and s not in reached:
                    reached.add(s)
                    stack.append(s)
        if len(reached) != len(homes):
            return DecompositionReport(
                False, width,
                f"bag nodes of vertex {v} do not form a connected subtree",
            )
    edge = _uncovered_edge(g, td.bags)
    if edge is not None:
        return DecompositionReport(
            False, width, f"edge ({edge[0]}, {edge[1]}) not covered by any bag"
        )
    return DecompositionReport(True, width)


def to_nice(pd: PathDecomposition) -> PathDecomposition:
    """Canonical nice form: empty ends, one introduce or forget per step.

    Between consecutive bags the departing vertices are forgotten first and
    the arriving ones introduced second, each group in ascending id order,
    so every input has exactly one nice form and each vertex has a unique
    introduce index.
    """
    first: dict[int, int] = {}
    last: dict[int, int] = {}
    for t, bag in enumerate(pd.bags):
        for v in bag:
            first.setdefault(v, t)
            last[v] = t
    for v, start in first.items():
        for t in range(start, last[v] + 1):
            if v not in pd.bags[t]:
                raise StructuralError(
                    f"vertex {v} breaks contiguity; cannot build a nice form"
                )
    out = [frozenset()]
    current: set[int] = set()
    for bag in list(pd.bags) + [frozenset()]:
        for v in sorted(current - bag):
            current.discard(v)
            out.append(frozenset(current))
        for v in sorted(bag - current):
            current.add(v)
            out.append(frozenset(current))
    return PathDecomposition(out)


def introduce_indices(pd: PathDecomposition) -> dict[int, int]:
    """Map each vertex of a nice decomposition to its unique introduce bag."""
    indices: dict[int, int] = {}
    previous: frozenset[int] = frozenset()
    for t, bag in enumerate(pd.bags):
        added = bag - previous
        for v in added:
            if v in indices:
                raise StructuralError(
                    f"vertex {v} introduced twice; decomposition is not nice"
                )
            indices[v] = t
        if len(added) + len(previous - bag) > 1 or (t == 0 and bag):
            raise StructuralError(
                f"bags {t - 1} and {t} differ by more than one vertex; "
                "decomposition is not nice"
            )
        previous = bag
    if previous:
        raise StructuralError("nice decompositions end with an empty bag")
    return indices


def validate_pairing(g: Graph, p: PairingDecomposition) -> DecompositionReport:
    """Validate a pairing decomposition against its graph.

    Checks the base tree decomposition, the exact root and leaf bag shapes,
    the full order x order distance matrix (one BFS per b_i), and, when the
    neighboring flag is set, the exact adjacency of A and B to their sides
    plus the >= 2d+1 cross distances.
    """
    for v in (*p.root_pair, *(x for pair in p.leaf_pairs for x in pair)):
        g._check_vertex(v)
    base_report = validate_tree_decomposition(g, p.base)
    width = base_report.width
    if not base_report.valid:
        return DecompositionReport(
            False, width, f"base tree decomposition invalid: {base_report.violation}"
        )
    root_bag = p.base.bags[p.base.root]
    if root_bag != frozenset(p.root_pair):
        return DecompositionReport(
            False, width,
            f"root bag {sorted(root_bag)} is not the pair {sorted(p.root_pair)}",
        )
    adj = p.base.node_neighbors()
    for i, (t, (a, b)) in enumerate(zip(p.leaf_nodes, p.leaf_pairs), start=1):
        if len(adj[t]) > 1 or t == p.base.root:
            return DecompositionReport(
                False, width, f"node {t} of leaf pair {i} is not a tree leaf"
            )
        if p.base.bags[t] != frozenset((a, b)):
            return DecompositionReport(
                False, width,
                f"leaf bag {sorted(p.base.bags[t])} at node {t} is not the "
                f"pair ({a}, {b})",
            )
    if len(set(p.leaf_nodes)) != len(p.leaf_nodes):
        return DecompositionReport(False, width, "leaf nodes are not distinct")
    d = p.d
    a_side = [a for a, _ in p.leaf_pairs]
    b_side = [b for _, b in p.leaf_pairs]
    for i, b in enumerate(b_side, start=1):
        dist = raw_distances(g, b, cap=2 * d + 1)
        for j, a in enumerate(a_side, start=1):
            required = 2 * d if i < j else 2 * d + 1
            if dist[a] != required:
                observed = f"> {2 * d + 1}" if dist[a] < 0 else str(dist[a])
                return DecompositionReport(
                    False, width,
                    f"dist(b_{i}, a_{j}) must be {required}, observed {observed}",
                )
    if p.neighboring:
        A, B = p.root_pair
        if set(g.neighbors(A)) != set(a_side):
            return DecompositionReport(
                False, width, "A must be adjacent to exactly the a_i vertices"
            )
        if set(g.neighbors(B)) != set(b_side):
            return DecompositionReport(
                False, width, "B must be adjacent to exactly the b_i vertices"
            )
        from_A = raw_distances(g, A, cap=2 * d)
        from_B = raw_distances(g, B, cap=2 * d)
        for i, (a, b) in enumerate(p.leaf_pairs, start=1):
            if from_B[a] >= 0:
                return DecompositionReport(
                    False, width,
                    f"dist(a_{i}, B) = {from_B[a]} but must be >= {2 * d + 1}",
                )
            if from_A[b] >= 0:
                return DecompositionReport(
                    False, width,
                    f"dist(b_{i}, A) = {from_A[b]} but must be >= {2 * d + 1}",
                )
    return DecompositionReport(True, width)


def derive_leaf_nodes(base: TreeDecomposition, leaf_pairs) -> tuple[int, ...]:
    """Find the unique tree leaf holding each pair bag {a_i, b_i}."""
    wanted = {frozenset(pair): i for i, pair in enumerate(leaf_pairs)}
    found: dict[int, int] = {}
    for t in base.leaves():
        i = wanted.get(base.bags[t])
        if i is not None and i not in found:
            found[i] = t
    missing = [i for i in range(len(wanted)) if i not in found]
    if missing:
        raise StructuralError(
            f"no tree leaf carries the bag of leaf pair {missing[0] + 1}"
        )
    return tuple(found[i] for i in range(len(wanted)))


# -- JSON ------------------------------------------------------------------


def decomposition_to_json_obj(obj) -> dict:
    if isinstance(obj, PathDecomposition):
        return {"type": "path", "bags": [sorted(bag) for bag in obj.bags]}
    if isinstance(obj, TreeDecomposition):
        out = {
            "type": "tree",
            "bags": [sorted(bag) for bag in obj.bags],
            "tree_edges": [list(e) for e in obj.tree_edges],
        }
        if obj.root is not None:
            out["root"] = obj.root
        return out
    if isinstance(obj, PairingDecomposition):
        return {
            "type": "pairing",
            "bags": [sorted(bag) for bag in obj.base.bags],
            "tree_edges": [list(e) for e in obj.base.tree_edges],
            "root": obj.base.root,
            "d": obj.d,
            "root_pair": list(obj.root_pair),
            "leaf_pairs": [list(pair) for pair in obj.leaf_pairs],
            "leaf_nodes": list(obj.leaf_nodes),
            "neighboring": obj.neighboring,
        }
    raise ArgumentError(f"not a decomposition: {type(obj).__name__}")


def decomposition_from_json_obj(obj):
    if not isinstance(obj, dict) or "type" not in obj:
        raise StructuralError("decomposition JSON needs a 'type' key")
    kind = obj["type"]
    try:
        if kind == "path":
            return PathDecomposition(obj["bags"])
        if kind == "tree":
            return TreeDecomposition(
                obj["bags"], obj.get("tree_edges", []), obj.get("root")
            )
        if kind == "pairing":
            base = TreeDecomposition(
                obj["bags"], obj.get("tree_edges", []), obj.get("root")
            )
            pairs = [tuple(pair) for pair in obj["leaf_pairs"]]
            nodes = obj.get("leaf_nodes")
            if nodes is None:
                nodes = derive_leaf_nodes(base, pairs)
            return PairingDecomposition(
                base,
                obj["d"],
                tuple(obj["root_pair"]),
                pairs,
                nodes,
                obj.get("neighboring", False),
            )
    except (KeyError, TypeError, ValueError, ArgumentError) as exc:
        raise StructuralError(f"malformed decomposition JSON: {exc}") from exc
    raise StructuralError(f"unknown decomposition type {kind!r}")
