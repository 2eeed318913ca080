"""Graph substrate: immutable adjacency-list graphs, BFS distances, graph
powers, and capped distance profiles.

Vertices are dense 0-based integers.  Optional per-vertex text labels carry
construction provenance (e.g. ``a_{12}`` or ``app(b[2],0,3)``) so certificates
stay human-readable while the algorithms run on plain ids.

Determinism rules, relied on everywhere downstream:

* adjacency lists are stored sorted ascending;
* BFS visits neighbors in ascending id order, so distance trees and parent
  choices are reproducible;
* all operations are pure functions over immutable graphs and are safe to
  call concurrently.
"""

from __future__ import annotations

from array import array
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from ladderlab._kernel import bfs_fill
from ladderlab.errors import ArgumentError, ParseError


class _Sentinel:
    __slots__ = ("_name",)

    def __init__(self, name: str):
        self._name = name

    def __repr__(self) -> str:
        return self._name


#: Distance value for vertices in a different connected component.  A
#: distinct sentinel, deliberately not a large finite number, so it can never
#: leak into bound arithmetic unnoticed.
UNREACHABLE = _Sentinel("UNREACHABLE")

#: Profile value for vertices farther than the distance cap ``d``.
INFINITY = _Sentinel("INFINITY")


class Graph:
    """Simple undirected graph with sorted adjacency lists.

    Immutable after construction.  Self-loops are rejected; duplicate edges
    are merged.  ``labels`` maps a subset of vertex ids to text.
    """

    __slots__ = ("n", "_indptr", "_indices", "_labels")

    def __init__(self, vertex_count: int, edges, labels=None):
        if vertex_count < 0:
            raise ArgumentError("vertex_count must be non-negative")
        n = int(vertex_count)
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            u = int(u)
            v = int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ArgumentError(f"edge ({u},{v}) out of range for {n} vertices")
            if u == v:
                raise ArgumentError(f"self-loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        indptr = array("i", [0] * (n + 1))
        indices = array("i")
        for v in range(n):
            row = sorted(adj[v])
            indices.extend(row)
            indptr[v + 1] = len(indices)
        self.n = n
        self._indptr = indptr
        self._indices = indices
        if labels:
            bad = [v for v in labels if not (0 <= int(v) < n)]
            if bad:
                raise ArgumentError(f"label for out-of-range vertex {bad[0]}")
            self._labels = {int(v): str(t) for v, t in labels.items()}
        else:
            self._labels = {}

    # -- basic accessors ---------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return self.n

    @property
    def edge_count(self) -> int:
        return len(self._indices) // 2

    @property
    def labels(self) -> dict[int, str]:
        return dict(self._labels)

    def label(self, v: int) -> str | None:
        return self._labels.get(v)

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self._indptr[v + 1] - self._indptr[v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        self._check_vertex(v)
        return tuple(self._indices[self._indptr[v]:self._indptr[v + 1]])

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        lo, hi = self._indptr[u], self._indptr[u + 1]
        idx = self._indices
        while lo < hi:
            mid = (lo + hi) // 2
            if idx[mid] < v:
                lo = mid + 1
            else:
                hi = mid
        return lo < self._indptr[u + 1] and idx[lo] == v

    def edges(self) -> list[tuple[int, int]]:
        """All edges (u, v) with u < v, ascending."""
        out = []
        for u in range(self.n):
            for k in range(self._indptr[u], self._indptr[u + 1]):
                v = self._indices[k]
                if u < v:
                    out.append((u, v))
        return out

    def max_degree(self) -> int:
        return max(
            (self._indptr[v + 1] - self._indptr[v] for v in range(self.n)),
            default=0,
        )

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise ArgumentError(f"vertex {v} out of range for {self.n} vertices")

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"

    # -- text formats ------------------------------------------------------

    def to_edge_list_text(self) -> str:
        """Canonical edge-list text: header, sorted edges, sorted labels."""
        lines = [f"{self.n} {self.edge_count}"]
        for u, v in self.edges():
            lines.append(f"{u} {v}")
        for v in sorted(self._labels):
            lines.append(f"l {v} {self._labels[v]}")
        return "\n".join(lines) + "\n"

    def to_dot(self, name: str = "G") -> str:
        """DOT export; labels become node labels when present."""
        lines = [f"graph {name} {{"]
        for v in range(self.n):
            text = self._labels.get(v)
            if text is None:
                lines.append(f"  {v};")
            else:
                escaped = text.replace("\\", "\\\\").replace('"', '\\"')
                lines.append(f'  {v} [label="{escaped}"];')
        for u, v in self.edges():
            lines.append(f"  {u} -- {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format.

    Line 1 is ``<n> <m>``; then m lines ``<u> <v>`` with ``0 <= u < v < n``;
    lines starting with ``#`` are ignored; optional label lines
    ``l <v> <text>`` follow the edges.
    """
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int]] = []
    labels: dict[int, str] = {}
    seen: set[tuple[int, int]] = set()
    in_labels = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 2:
                raise ParseError("expected header '<n> <m>'", lineno)
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError("non-integer header field", lineno) from None
            if n < 0 or m < 0:
                raise ParseError("negative header field", lineno)
            header = (n, m)
            continue
        if line.startswith("l "):
            in_labels = True
            parts = line.split(maxsplit=2)
            if len(parts) < 3:
                raise ParseError("expected 'l <v> <text>'", lineno)
            try:
                v = int(parts[1])
            except ValueError:
                raise ParseError("non-integer label vertex", lineno) from None
            if not (0 <= v < header[0]):
                raise ParseError(f"label vertex {v} out of range", lineno)
            labels[v] = parts[2]
            continue
        if in_labels:
            raise ParseError("edge line after label lines", lineno)
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("expected edge '<u> <v>'", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("non-integer edge endpoint", lineno) from None
        if not (0 <= u < v < header[0]):
            raise ParseError(f"edge ({u},{v}) violates 0 <= u < v < n", lineno)
        if (u, v) in seen:
            raise ParseError(f"duplicate edge ({u},{v})", lineno)
        seen.add((u, v))
        edges.append((u, v))
    if header is None:
        raise ParseError("empty input: missing header")
    if len(edges) != header[1]:
        raise ParseError(
            f"header declares {header[1]} edges but {len(edges)} were given"
        )
    return Graph(header[0], edges, labels)


def load_graph(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def save_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(g.to_edge_list_text())


# -- distances -------------------------------------------------------------


@dataclass(frozen=True)
class DistanceVector:
    """BFS distances from one source; ``UNREACHABLE`` marks other components."""

    source: int
    raw: array  # 'i'-typed; -1 encodes UNREACHABLE

    def __getitem__(self, v: int):
        value = self.raw[v]
        return UNREACHABLE if value < 0 else value

    def __len__(self) -> int:
        return len(self.raw)

    def reachable(self, v: int) -> bool:
        return self.raw[v] >= 0

    def to_list(self) -> list:
        return [UNREACHABLE if x < 0 else x for x in self.raw]


def distances_from(g: Graph, source: int) -> DistanceVector:
    """Exact unweighted shortest-path distances from ``source``."""
    g._check_vertex(source)
    dist = array("i", bytes(4 * g.n)) if g.n else array("i")
    queue = array("i", bytes(4 * g.n)) if g.n else array("i")
    bfs_fill(g._indptr, g._indices, source, -1, dist, queue)
    return DistanceVector(source, dist)


def raw_distances(g: Graph, source: int, cap: int = -1) -> array:
    """Internal fast path: the raw -1-sentinel distance array.

    With ``cap >= 0`` vertices beyond ``cap`` keep -1; callers that only
    compare against a threshold use this to skip full exploration.
    """
    dist = array("i", bytes(4 * g.n)) if g.n else array("i")
    queue = array("i", bytes(4 * g.n)) if g.n else array("i")
    bfs_fill(g._indptr, g._indices, source, cap, dist, queue)
    return dist


def batch_distances(g: Graph, sources, threads: int = 1) -> list[array]:
    """Raw distance arrays for many sources; optionally on a thread pool.

    Results are ordered by the input sources, so parallelism is observable
    only as speed.
    """
    sources = list(sources)
    if threads <= 1 or len(sources) <= 1:
        return [raw_distances(g, s) for s in sources]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda s: raw_distances(g, s), sources))


def power_graph(g: Graph, d: int) -> Graph:
    """The d-th power: edge uv present iff 1 <= dist_g(u,v) <= d."""
    if d < 1:
        raise ArgumentError("power_graph requires d >= 1")
    edges = []
    for u in range(g.n):
        dist = raw_distances(g, u, cap=d)
        for v in range(u + 1, g.n):
            if 0 < dist[v] <= d:
                edges.append((u, v))
    return Graph(g.n, edges, g.labels)


# -- profiles --------------------------------------------------------------


@dataclass(frozen=True)
class DistanceProfile:
    """Capped distances from ``source`` to an ascending vertex domain."""

    source: int
    domain: tuple[int, ...]
    values: tuple  # ints in 0..d, or INFINITY
    d: int

    def as_dict(self) -> dict[int, object]:
        return dict(zip(self.domain, self.values))


def profile(g: Graph, v: int, S, d: int) -> DistanceProfile:
    """The distance-d profile of ``v`` on ``S`` (ascending-id domain)."""
    if d < 1:
        raise ArgumentError("profile requires d >= 1")
    domain = sorted(set(int(s) for s in S))
    if not domain:
        raise ArgumentError("profile requires a non-empty vertex set")
    for s in domain:
        g._check_vertex(s)
    g._check_vertex(v)
    dist = raw_distances(g, v, cap=d)
    values = tuple(
        dist[s] if 0 <= dist[s] <= d else INFINITY for s in domain
    )
    return DistanceProfile(v, tuple(domain), values, d)


def profile_count(g: Graph, A, d: int) -> int:
    """Number of distinct distance-d profile value-tuples over all vertices.

    Computed from |A| BFS runs (distances are symmetric), building each
    vertex's value tuple exactly as :func:`profile` would.
    """
    if d < 1:
        raise ArgumentError("profile_count requires d >= 1")
    domain = sorted(set(int(a) for a in A))
    if not domain:
        raise ArgumentError("profile_count requires a non-empty vertex set")
    for a in domain:
        g._check_vertex(a)
    by_source = [raw_distances(g, a, cap=d) for a in domain]
    seen: set[tuple[int, ...]] = set()
    inf = d + 1
    for v in range(g.n):
        seen.add(
            tuple(
                dist[v] if 0 <= dist[v] <= d else inf for dist in by_source
            )
        )
    return len(seen)
