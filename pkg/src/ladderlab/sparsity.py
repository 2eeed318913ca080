"""Weak reachability, weak coloring numbers, and the exact bound calculator.

Three layers live here:

* Ordering machinery: :class:`VertexOrdering`, :func:`wreach` (bounded-depth
  search that tracks the running order-minimum), :func:`wcol_of_order`, the
  brute-force oracle :func:`wcol_exact`, and the :func:`degeneracy_order`
  heuristic.
* The constructive wideness pipeline: :func:`uqw_extract` turns a large
  vertex set into a small deletion set plus a distance-independent set via a
  sunflower argument over weak-reachability sets, and :func:`kt_reduce`
  either shrinks the deletion set to at most ``t - 2`` vertices or exhibits
  an explicit complete-bipartite :class:`MinorModel` -- never a third state.
* :func:`bounds_table`, which evaluates every closed-form semi-ladder bound
  exactly, with arbitrary-precision integers.  Values too large to
  materialize are kept in the symbolic form :class:`NExpr`
  (``w! * base**exp``); comparisons between bound values stay exact either
  way (:func:`bound_le`).
"""

from __future__ import annotations

import sys
from collections import deque
from dataclasses import dataclass
from itertools import permutations
from math import comb, factorial

from .errors import ArgumentError, InternalError, SizeError
from .graphcore import Graph
from .sunflower import LabeledSet, find_labeled_sunflower

__all__ = [
    "VertexOrdering",
    "UqwWitness",
    "MinorModel",
    "NExpr",
    "BoundRow",
    "BoundTable",
    "wreach",
    "wcol_of_order",
    "wcol_exact",
    "degeneracy_order",
    "uqw_extract",
    "validate_uqw",
    "kt_reduce",
    "validate_minor_model",
    "bounds_table",
    "bound_le",
    "bound_value_to_json_obj",
    "WCOL_EXACT_CAP",
]

#: Default vertex-count cap for the factorial search in :func:`wcol_exact`.
WCOL_EXACT_CAP = 8

#: Bit-size threshold below which a symbolic bound is materialized to an int.
_MATERIALIZE_BITS = 200_000

#: Hard ceiling for materialization attempts made only to settle comparisons.
_COMPARE_BITS = 5_000_000


# -- vertex orderings --------------------------------------------------------


class VertexOrdering:
    """A permutation of ``0..n-1``; position 0 holds the smallest vertex.

    ``order[i]`` is the vertex placed at position ``i``; ``position(v)``
    inverts that.  The constructor rejects anything that is not a bijection
    on ``0..n-1``.
    """

    __slots__ = ("order", "_pos")

    def __init__(self, order):
        seq = tuple(int(v) for v in order)
        n = len(seq)
        if sorted(seq) != list(range(n)):
            raise ArgumentError("ordering must be a permutation of 0..n-1")
        self.order = seq
        pos = [0] * n
        for i, v in enumerate(seq):
            pos[v] = i
        self._pos = tuple(pos)

    def __len__(self) -> int:
        return len(self.order)

    def __iter__(self):
        return iter(self.order)

    def __eq__(self, other) -> bool:
        return isinstance(other, VertexOrdering) and self.order == other.order

    def __hash__(self) -> int:
        return hash(self.order)

    def __repr__(self) -> str:
        return f"VertexOrdering({list(self.order)!r})"

    def position(self, v: int) -> int:
        """Position of vertex ``v`` in the ordering (0 = smallest)."""
        if not (0 <= v < len(self.order)):
            raise ArgumentError(f"vertex {v} out of range for ordering of {len(self.order)}")
        return self._pos[v]

    @property
    def positions(self) -> tuple[int, ...]:
        """Tuple ``p`` with ``p[v]`` the position of vertex ``v``."""
        return self._pos

    def to_json_obj(self) -> list[int]:
        return list(self.order)


def _check_ordering(g: Graph, sigma: VertexOrdering) -> None:
    if len(sigma) != g.n:
        raise ArgumentError(f"ordering covers {len(sigma)} vertices, graph has {g.n}")


def wreach(g: Graph, sigma: VertexOrdering, u: int, d: int) -> frozenset[int]:
    """Vertices weakly reachable from ``u`` within distance ``d``.

    A vertex ``v`` qualifies when ``v`` is at position at most that of ``u``
    and some ``u``-``v`` path of length at most ``d`` has ``v`` as its
    position-minimum.  The search propagates, per vertex, the best achievable
    running minimum over all bounded-length walks; ``v`` qualifies exactly
    when that value equals the position of ``v``.  ``u`` itself is always
    included.
    """
    _check_ordering(g, sigma)
    if not (0 <= u < g.n):
        raise ArgumentError(f"vertex {u} out of range for graph of {g.n}")
    if d < 0:
        raise ArgumentError("d must be non-negative")
    pos = sigma.positions
    # f[w] = best (largest) running minimum over walks u..w of length <= k,
    # with -1 standing for "no walk yet".
    f = [-1] * g.n
    f[u] = pos[u]
    for _ in range(d):
        prev = tuple(f)
        changed = False
        for w in range(g.n):
            cap = pos[w]
            best = prev[w]
            for x in g.neighbors(w):
                c = prev[x]
                if c < 0:
                    continue
                if c > cap:
                    c = cap
                if c > best:
                    best = c
            if best != f[w]:
                f[w] = best
                changed = True
        if not changed:
            break
    return frozenset(v for v in range(g.n) if f[v] == pos[v])


def _wcol_counts(g: Graph, positions, d: int, cutoff: int | None = None) -> int:
    """``max |wreach|`` over all vertices, via one capped search per source.

    A vertex ``v`` lies in the weak-reachability set of ``u`` exactly when
    ``u`` is reachable from ``v`` within ``d`` steps through vertices of
    position at least ``position(v)``; one such breadth-first sweep per ``v``
    therefore charges ``v`` to every ``u`` it serves.  With ``cutoff`` set,
    the sweep stops early and returns ``cutoff`` as soon as any count
    reaches it (used by the exact minimizer for pruning).
    """
    n = g.n
    counts = [0] * n
    seen = [-1] * n
    best = 0
    for v in range(n):
        pv = positions[v]
        seen[v] = v
        frontier = [v]
        counts[v] += 1
        if counts[v] > best:
            best = counts[v]
            if cutoff is not None and best >= cutoff:
                return cutoff
        for _ in range(d):
            if not frontier:
                break
            nxt = []
            for w in frontier:
                for x in g.neighbors(w):
                    if seen[x] != v and positions[x] >= pv:
                        seen[x] = v
                        nxt.append(x)
                        counts[x] += 1
                        if counts[x] > best:
                            best = counts[x]
                            if cutoff is not None and best >= cutoff:
                                return cutoff
            frontier = nxt
    return best


def wcol_of_order(g: Graph, sigma: VertexOrdering, d: int) -> int:
    """Weak ``d``-coloring number of ``g`` under the given ordering."""
    _check_ordering(g, sigma)
    if d < 0:
        raise ArgumentError("d must be non-negative")
    if g.n == 0:
        return 0
    return _wcol_counts(g, sigma.positions, d)


def wcol_exact(g: Graph, d: int, *, size_cap: int = WCOL_EXACT_CAP) -> tuple[int, VertexOrdering]:
    """Minimum weak ``d``-coloring number over all vertex orderings.

    Brute force over every permutation -- this is the testing oracle for
    heuristic orderings, guarded at ``size_cap`` vertices (default
    ``WCOL_EXACT_CAP``; pass ``size_cap`` explicitly to widen).  Returns the
    value together with the lexicographically first ordering achieving it.
    """
    if d < 0:
        raise ArgumentError("d must be non-negative")
    n = g.n
    if n > size_cap:
        raise SizeError(
            f"wcol_exact enumerates n! orderings; n={n} exceeds cap {size_cap}"
            " (pass size_cap to override)"
        )
    if n == 0:
        return 0, VertexOrdering(())
    best: int | None = None
    best_order: tuple[int, ...] | None = None
    pos = [0] * n
    for perm in permutations(range(n)):
        for i, v in enumerate(perm):
            pos[v] = i
        value = _wcol_counts(g, pos, d, cutoff=best)
        if best is None or value < best:
            best = value
            best_order = perm
            if best == 1:
                break
    assert best is not None and best_order is not None
    return best, VertexOrdering(best_order)


def degeneracy_order(g: Graph) -> VertexOrdering:
    """Ordering from repeated minimum-degree removal, removed-last first.

    Ties pick the smallest vertex id.  Every vertex then sees at most
    ``degeneracy(g)`` earlier-positioned neighbors, which makes this a good
    heuristic input for :func:`wcol_of_order`.
    """
    n = g.n
    alive = [True] * n
    deg = [g.degree(v) for v in range(n)]
    removal: list[int] = []
    for _ in range(n):
        v = min((x for x in range(n) if alive[x]), key=lambda x: (deg[x], x))
        alive[v] = False
        removal.append(v)
        for x in g.neighbors(v):
            if alive[x]:
                deg[x] -= 1
    return VertexOrdering(reversed(removal))


# -- uniform quasi-wideness --------------------------------------------------


@dataclass(frozen=True)
class UqwWitness:
    """A deletion set plus a set that is distance-``d`` independent without it.

    ``independent`` is pairwise at distance greater than ``d`` in
    ``g - deleted`` and disjoint from ``deleted``;
    :func:`validate_uqw` re-checks both from scratch.
    """

    deleted: frozenset[int]
    independent: frozenset[int]
    d: int

    def __post_init__(self):
        object.__setattr__(self, "deleted", frozenset(int(v) for v in self.deleted))
        object.__setattr__(self, "independent", frozenset(int(v) for v in self.independent))
        object.__setattr__(self, "d", int(self.d))
        if self.d < 1:
            raise ArgumentError("witness distance must be >= 1")

    def to_json_obj(self) -> dict:
        return {
            "deleted": sorted(self.deleted),
            "independent": sorted(self.independent),
            "d": self.d,
        }


def _distances_avoiding(g: Graph, source: int, avoid, cap: int) -> list[int]:
    """Distance array (-1 = unreached) from ``source`` in ``g - avoid``.

    Exploration stops beyond ``cap``; ``source`` must not be in ``avoid``.
    """
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u]
        if du == cap:
            continue
        for x in g.neighbors(u):
            if dist[x] < 0 and x not in avoid:
                dist[x] = du + 1
                queue.append(x)
    return dist


def validate_uqw(g: Graph, witness: UqwWitness) -> tuple[bool, str | None]:
    """Re-check a :class:`UqwWitness` with a fresh search in ``g - deleted``."""
    for v in witness.deleted | witness.independent:
        if not (0 <= v < g.n):
            return False, f"vertex {v} out of range for graph of {g.n}"
    overlap = witness.deleted & witness.independent
    if overlap:
        return False, f"vertex {min(overlap)} is both deleted and independent"
    members = sorted(witness.independent)
    member_set = set(members)
    for v in members:
        dist = _distances_avoiding(g, v, witness.deleted, witness.d)
        for w in member_set:
            if w != v and dist[w] >= 0:
                return False, (
                    f"vertices {v} and {w} are at distance {dist[w]} <= {witness.d}"
                    " after deletion"
                )
    return True, None


def uqw_extract(
    g: Graph, A, d: int, m: int, sigma: VertexOrdering
) -> UqwWitness | None:
    """Extract a distance-``d`` independent subset of ``A`` after few deletions.

    Builds the weak-reachability set of every vertex of ``A``, finds a
    sunflower of order ``m + 1`` among those sets, discards the member whose
    owner is smallest in ``sigma``, deletes the common core, and keeps the
    remaining owners.  Success is guaranteed once
    ``|A| >= w! * (m+1)**(w+1)`` for ``w = wcol_of_order(g, sigma, d)``;
    below that the search cascades to smaller orders (best effort) and
    returns ``None`` only for empty ``A``.  The returned witness always
    satisfies ``len(deleted) <= wcol_of_order(g, sigma, d)`` and is
    re-validated before being returned.
    """
    _check_ordering(g, sigma)
    if d < 1:
        raise ArgumentError("d must be >= 1")
    if m < 1:
        raise ArgumentError("m must be >= 1")
    members = sorted({int(v) for v in A})
    for v in members:
        if not (0 <= v < g.n):
            raise ArgumentError(f"vertex {v} out of range for graph of {g.n}")
    if not members:
        return None
    reach = [wreach(g, sigma, v, d) for v in members]
    width = max(len(r) for r in reach)
    family = [LabeledSet({e: 0 for e in r}) for r in reach]
    pos = sigma.positions
    for order in range(min(m + 1, len(members)), 0, -1):
        found = find_labeled_sunflower(family, order, width, (0,))
        if found is None:
            continue
        owners = [members[i] for i in found.member_indices]
        core = set(found.core)
        if order == m + 1:
            drop = min(owners, key=lambda v: pos[v])
            kept = [v for v in owners if v != drop]
        else:
            kept = list(owners)
        kept = [v for v in kept if v not in core]
        witness = UqwWitness(frozenset(core), frozenset(kept), d)
        ok, why = validate_uqw(g, witness)
        if not ok:
            raise InternalError(f"extracted witness failed validation: {why}")
        return witness
    return None


# -- minor models and the margin-reduction dichotomy -------------------------


@dataclass(frozen=True)
class MinorModel:
    """Branch sets realizing ``pattern`` as a minor of ``host``.

    One branch set per pattern vertex; sets must be non-empty, pairwise
    disjoint, each connected in the host, and every pattern edge must be
    realized by a host edge between the two branch sets.
    :func:`validate_minor_model` checks all four.
    """

    host: Graph
    pattern: Graph
    branch_sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        sets = tuple(frozenset(int(v) for v in s) for s in self.branch_sets)
        object.__setattr__(self, "branch_sets", sets)
        if len(sets) != self.pattern.n:
            raise ArgumentError(
                f"{len(sets)} branch sets for a pattern on {self.pattern.n} vertices"
            )

    def to_json_obj(self) -> dict:
        return {
            "pattern": {
                "vertex_count": self.pattern.n,
                "edges": sorted(
                    (u, v)
                    for u in range(self.pattern.n)
                    for v in self.pattern.neighbors(u)
                    if u < v
                ),
            },
            "branch_sets": [sorted(s) for s in self.branch_sets],
        }


def validate_minor_model(model: MinorModel) -> tuple[bool, str | None]:
    """Check the four branch-set invariants of a :class:`MinorModel`."""
    host = model.host
    sets = model.branch_sets
    for i, s in enumerate(sets):
        if not s:
            return False, f"branch set {i} is empty"
        for v in s:
            if not (0 <= v < host.n):
                return False, f"branch set {i} contains out-of-range vertex {v}"
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            if sets[i] & sets[j]:
                return False, f"branch sets {i} and {j} are not disjoint"
    for i, s in enumerate(sets):
        start = min(s)
        seen = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for x in host.neighbors(u):
                if x in s and x not in seen:
                    seen.add(x)
                    queue.append(x)
        if seen != s:
            return False, f"branch set {i} is not connected"
    for u in range(model.pattern.n):
        for v in model.pattern.neighbors(u):
            if u < v:
                if not any(host.has_edge(x, y) for x in sets[u] for y in sets[v]):
                    return False, f"pattern edge ({u}, {v}) is not realized"
    return True, None


def _complete_bipartite(left: int, right: int) -> Graph:
    return Graph(
        left + right,
        [(i, left + j) for i in range(left) for j in range(right)],
    )


def _no_short_path_to_rest(g: Graph, v: int, removed, targets, d: int) -> bool:
    """True when ``g - removed`` has no path of length <= ``d`` from ``v``
    to any vertex of ``targets`` outside ``removed``."""
    dist = _distances_avoiding(g, v, removed, d)
    return all(dist[s] < 0 for s in targets if s not in removed)


def _shortest_path_avoiding(g: Graph, source: int, target: int, avoid, cap: int):
    """Shortest ``source``-``target`` path in ``g - avoid`` of length <= cap.

    Neighbor expansion is in ascending id order, so the result is
    deterministic.  Returns the vertex list or ``None``.
    """
    parent = {source: source}
    queue = deque([(source, 0)])
    while queue:
        u, du = queue.popleft()
        if u == target:
            path = [u]
            while path[-1] != source:
                path.append(parent[path[-1]])
            path.reverse()
            return path
        if du == cap:
            continue
        for x in g.neighbors(u):
            if x not in parent and x not in avoid:
                parent[x] = u
                queue.append((x, du + 1))
    return None


def kt_reduce(g: Graph, S, B, d: int, t: int) -> UqwWitness | MinorModel:
    """Shrink the deletion set ``S`` or exhibit a complete-bipartite minor.

    Requires ``t >= 4`` and ``B`` distance-``2d`` independent in ``g - S``
    (validated up front).  For each ``v`` in ``B`` the minimal blocker
    ``L_v`` (the inclusion-minimal subset of ``S`` whose removal leaves no
    path of length <= ``d`` from ``v`` to the rest of ``S``) is computed by
    greedy element removal in ascending id order, truncated to at most
    ``t - 1`` elements, and the vertices are grouped by the truncated
    blocker.  The largest group (ties: smallest blocker as a sorted tuple)
    with common blocker ``C`` yields the dichotomy:

    * ``len(C) <= t - 2``: the group is distance-``2d`` independent in
      ``g - C`` -- returned as a validated :class:`UqwWitness`.
    * ``len(C) == t - 1``: for each group member ``x`` a tree of short paths
      to the vertices of ``C`` avoids the rest of ``S``, giving a validated
      :class:`MinorModel` of the complete bipartite pattern
      ``K_{len(group), t-1}``.

    Both branches re-validate their output; a failure raises
    :class:`InternalError` because it cannot happen for inputs meeting the
    precondition.
    """
    if t < 4:
        raise ArgumentError("t must be >= 4")
    if d < 1:
        raise ArgumentError("d must be >= 1")
    s_set = frozenset(int(v) for v in S)
    b_list = sorted({int(v) for v in B})
    for v in s_set.union(b_list):
        if not (0 <= v < g.n):
            raise ArgumentError(f"vertex {v} out of range for graph of {g.n}")
    if s_set.intersection(b_list):
        raise ArgumentError("B must be disjoint from S")
    b_set = set(b_list)
    for v in b_list:
        dist = _distances_avoiding(g, v, s_set, 2 * d)
        for w in b_set:
            if w != v and dist[w] >= 0:
                raise ArgumentError(
                    f"B is not distance-{2 * d} independent in g - S:"
                    f" vertices {v} and {w} are at distance {dist[w]}"
                )
    if not b_list:
        return UqwWitness(frozenset(), frozenset(), 2 * d)

    blockers: dict[int, frozenset[int]] = {}
    for v in b_list:
        live = set(s_set)
        for s in sorted(s_set):
            trial = live - {s}
            if _no_short_path_to_rest(g, v, trial, s_set, d):
                live = trial
        blockers[v] = frozenset(live)

    groups: dict[tuple[int, ...], list[int]] = {}
    for v in b_list:
        full = sorted(blockers[v])
        key = tuple(full) if len(full) <= t - 2 else tuple(full[: t - 1])
        groups.setdefault(key, []).append(v)
    core = min(groups, key=lambda k: (-len(groups[k]), k))
    members = groups[core]

    if len(core) <= t - 2:
        for v in members:
            if blockers[v] != frozenset(core):
                raise InternalError(
                    f"untruncated blocker of {v} differs from the common core"
                )
        witness = UqwWitness(frozenset(core), frozenset(members), 2 * d)
        ok, why = validate_uqw(g, witness)
        if not ok:
            raise InternalError(f"small-core witness failed validation: {why}")
        return witness

    branch_sets: list[frozenset[int]] = []
    for x in members:
        tree = {x}
        for y in core:
            path = _shortest_path_avoiding(g, x, y, blockers[x] - {y}, d)
            if path is None or len(path) - 1 > d:
                raise InternalError(
                    f"no path of length <= {d} from {x} to blocker vertex {y}"
                )
            interior = path[1:-1]
            bad = [w for w in interior if w in s_set]
            if bad:
                raise InternalError(
                    f"path from {x} to {y} passes through blocked vertex {bad[0]}"
                )
            tree.update(interior)
        branch_sets.append(frozenset(tree))
    branch_sets.extend(frozenset({y}) for y in core)
    model = MinorModel(
        host=g,
        pattern=_complete_bipartite(len(members), len(core)),
        branch_sets=tuple(branch_sets),
    )
    ok, why = validate_minor_model(model)
    if not ok:
        raise InternalError(f"minor model failed validation: {why}")
    return model


# -- exact bound values ------------------------------------------------------


def _log2_floor_factorial(w: int) -> int:
    # Any L with 2**L <= w! will do: w! >= (w//2)**(w//2) since the top
    # half of the factors are each larger than w//2.
    half = w // 2
    if half < 2:
        return 0
    return half * (half.bit_length() - 1)


def _log2_ceil_factorial(w: int) -> int:
    # Any U with w! <= 2**U will do: w! <= w**w.
    if w < 2:
        return 0
    return w * w.bit_length()


@dataclass(frozen=True)
class NExpr:
    """The exact integer ``factorial_of! * base**exp``, kept symbolic.

    Used for bound values whose decimal expansion would be impractically
    large; :func:`bound_le` compares them exactly through rigorous two-sided
    powers-of-two bounds, materializing only when those overlap.
    """

    factorial_of: int
    base: int
    exp: int

    def __post_init__(self):
        if self.factorial_of < 0 or self.base < 1 or self.exp < 0:
            raise ArgumentError("NExpr parts must describe a positive integer")

    def __str__(self) -> str:
        return f"{self.factorial_of}!*{self.base}^{self.exp}"

    def log2_floor(self) -> int:
        """Integer L with 2**L <= value."""
        return _log2_floor_factorial(self.factorial_of) + self.exp * (
            self.base.bit_length() - 1
        )

    def log2_ceil(self) -> int:
        """Integer U with value <= 2**U."""
        return _log2_ceil_factorial(self.factorial_of) + self.exp * self.base.bit_length()

    def materialize(self) -> int:
        return factorial(self.factorial_of) * self.base ** self.exp

    def to_json_obj(self) -> dict:
        return {
            "factorial_of": self.factorial_of,
            "base": str(self.base),
            "exp": self.exp,
            "text": str(self),
        }


def _materialize_for_compare(x: "int | NExpr") -> int:
    if isinstance(x, int):
        return x
    if x.log2_ceil() > _COMPARE_BITS:
        raise InternalError("bound comparison inconclusive at symbolic precision")
    return x.materialize()


def bound_le(a: "int | NExpr", b: "int | NExpr") -> bool:
    """Exact ``a <= b`` for bound values, symbolic or plain."""
    if isinstance(a, int) and isinstance(b, int):
        return a <= b
    if isinstance(a, int):
        if a <= 0 or a.bit_length() <= b.log2_floor():
            return True
        if a.bit_length() - 1 > b.log2_ceil():
            return False
        return a <= _materialize_for_compare(b)
    if isinstance(b, int):
        if b <= 0:
            return False
        if a.log2_ceil() <= b.bit_length() - 1:
            return True
        if a.log2_floor() >= b.bit_length():
            return False
        return _materialize_for_compare(a) <= b
    if a.log2_ceil() <= b.log2_floor():
        return True
    if b.log2_ceil() < a.log2_floor():
        return False
    return _materialize_for_compare(a) <= _materialize_for_compare(b)


def _int_str(value: int) -> str:
    """Decimal string of ``value``, bypassing the interpreter's digit cap.

    Materialized bounds can run to tens of thousands of digits, well past
    the default conversion limit some interpreters enforce; lift the limit
    just for the conversion and restore it afterwards.
    """
    try:
        return str(value)
    except ValueError:
        limit = sys.get_int_max_str_digits()
        sys.set_int_max_str_digits(0)
        try:
            return str(value)
        finally:
            sys.set_int_max_str_digits(limit)


def bound_value_to_json_obj(value: "int | NExpr | None"):
    """JSON form of a bound value; plain integers as decimal strings."""
    if value is None:
        return None
    if isinstance(value, int):
        return _int_str(value)
    return value.to_json_obj()


# closed-form ingredients ----------------------------------------------------


def _wcol_minor_free_bound(t: int, d: int) -> int:
    # wcol_d over K_t-minor-free graphs: binom(d+t-2, t-2) * (t-3) * (2d+1).
    return comb(d + t - 2, t - 2) * (t - 3) * (2 * d + 1)


def _kt_upper_value(t: int, d: int) -> "int | NExpr":
    # Composed chain: semi-ladder order <= N(m', 2d) where
    # N(m, 2d) = W! * (m+1)**(W+1) with W = wcol bound at distance 2d, and
    # m' = binom(W+1, t-1) * (m + t) for m = 2*(d+2)**(t-2) + 1.
    w = _wcol_minor_free_bound(t, 2 * d)
    m = 2 * (d + 2) ** (t - 2) + 1
    m_prime = comb(w + 1, t - 1) * (m + t)
    base = m_prime + 1
    bits = w * w.bit_length() + (w + 1) * base.bit_length()
    if bits <= _MATERIALIZE_BITS:
        return factorial(w) * base ** (w + 1)
    return NExpr(w, base, w + 1)


def _planar_upper_value(d: int) -> int:
    chi1 = 2 * d + 5
    chi2 = 2 * (2 * d + 3) * ((chi1 - 1) * d + 1)
    chi3 = (256 * d**3 * (d + 2) ** 4 + 2) * chi2 + 2
    chi4 = (chi3 - 1) ** 2 + 1
    chi5 = (2 * d - 1) * chi4
    return d * (d * chi5 + 2) ** d + 1


def _next_odd(d: int) -> int:
    return d if d % 2 == 1 else d + 1


def _next_even_at_least_two(d: int) -> int:
    d = max(d, 2)
    return d if d % 2 == 0 else d + 1


# row assembly ---------------------------------------------------------------


@dataclass(frozen=True)
class BoundRow:
    """One evaluated bound row: a graph class, a distance, and exact values.

    ``adjusted`` records every parameter that had to be moved to the nearest
    value where the corresponding closed form is stated (the row is then a
    statement about the adjusted parameters).  ``lower`` is ``None`` when no
    sound construction exists for the queried class.
    """

    graph_class: str
    params: tuple[tuple[str, int], ...]
    d: int
    lower: "int | NExpr | None"
    upper: "int | NExpr | None"
    adjusted: tuple[tuple[str, int], ...] = ()
    notes: str = ""

    def params_dict(self) -> dict[str, int]:
        return dict(self.params)

    def adjusted_dict(self) -> dict[str, int]:
        return dict(self.adjusted)

    def to_json_obj(self) -> dict:
        return {
            "class": self.graph_class,
            "params": {k: v for k, v in self.params},
            "d": self.d,
            "lower": bound_value_to_json_obj(self.lower),
            "upper": bound_value_to_json_obj(self.upper),
            "adjusted": {k: v for k, v in self.adjusted},
            "notes": self.notes,
        }


@dataclass(frozen=True)
class BoundTable:
    """Rows produced by :func:`bounds_table`; every row with both values
    defined satisfies ``lower <= upper`` (checked at construction)."""

    rows: tuple[BoundRow, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        for row in self.rows:
            if row.lower is not None and row.upper is not None:
                if not bound_le(row.lower, row.upper):
                    raise InternalError(
                        f"bound row {row.graph_class} {row.params_dict()} d={row.d}"
                        " has lower > upper"
                    )

    def to_json_obj(self) -> dict:
        return {"rows": [row.to_json_obj() for row in self.rows]}


def _degree_row(delta: int, d: int) -> BoundRow:
    if delta < 2:
        raise ArgumentError("degree bound requires delta >= 2")
    upper = delta**d + 1
    notes = ["upper: max order <= value"]
    adjusted: list[tuple[str, int]] = []
    if delta >= 4:
        d_eval = _next_odd(d)
        lower = (delta // 2) ** ((d_eval + 1) // 2)
        notes.append("lower: half graph of this order exists")
        if d_eval != d:
            adjusted.append(("d_lower", d_eval))
            notes.append(f"lower evaluated at odd d={d_eval}")
    else:
        lower = None
        notes.append("lower: no construction stated for delta < 4")
    return BoundRow(
        graph_class="degree",
        params=(("delta", delta),),
        d=d,
        lower=lower,
        upper=upper,
        adjusted=tuple(adjusted),
        notes="; ".join(notes),
    )


def _planar_row(d: int) -> BoundRow:
    return BoundRow(
        graph_class="planar",
        params=(),
        d=d,
        lower=2 ** ((d + 1) // 2),
        upper=_planar_upper_value(d),
        adjusted=(),
        notes="upper: max order < value; lower: half graph of this order exists",
    )


def _pathwidth_row(p: int, d: int) -> BoundRow:
    if p < 0:
        raise ArgumentError("pathwidth bound requires p >= 0")
    adjusted: list[tuple[str, int]] = []
    notes = ["upper: no semi-ladder of this order"]
    p_upper = p
    if p_upper < 1:
        p_upper = 1
        adjusted.append(("p_upper", p_upper))
        notes.append("upper evaluated at p=1")
    upper = (2 * d + 3) * factorial(p_upper + 1) * ((2 * d + 3) * (d + 2)) ** (p_upper + 1)
    # The construction of pathwidth p contains a half graph built with
    # parameter p - 2, at the nearest distance of the form 4k - 1.
    p_gen = max(p - 2, 0)
    k = -(-(d + 1) // 4)  # smallest k with 4k - 1 >= d
    d_eval = 4 * k - 1
    lower = (2 * k + 1) ** p_gen
    notes.append("lower: half graph of this order exists (construction parameter p-2)")
    if d_eval != d:
        adjusted.append(("d_lower", d_eval))
        notes.append(f"lower evaluated at d={d_eval}")
    return BoundRow(
        graph_class="pathwidth",
        params=(("p", p),),
        d=d,
        lower=lower,
        upper=upper,
        adjusted=tuple(adjusted),
        notes="; ".join(notes),
    )


def _largest_odd_at_most(t: int, minimum: int) -> int | None:
    t_eval = t if t % 2 == 1 else t - 1
    return t_eval if t_eval >= minimum else None


def _treewidth_row(t: int, d: int) -> BoundRow:
    if t < 1:
        raise ArgumentError("treewidth bound requires t >= 1")
    adjusted: list[tuple[str, int]] = []
    notes = ["upper: max order <= value (via the complete-minor chain at t+2)"]
    t_upper = max(t, 2)
    d_upper = max(d, 2)
    if t_upper != t:
        adjusted.append(("t_upper", t_upper))
        notes.append(f"upper evaluated at t={t_upper}")
    if d_upper != d:
        adjusted.append(("d_upper", d_upper))
        notes.append(f"upper evaluated at d={d_upper}")
    upper = _kt_upper_value(t_upper + 2, d_upper)
    t_eval = _largest_odd_at_most(t, 3)
    if t_eval is None:
        lower = None
        notes.append("lower: no construction stated for t < 3")
    else:
        d_eval = _next_even_at_least_two(d)
        lower = 2 ** comb((d_eval + t_eval - 5) // 2, (t_eval - 3) // 2)
        notes.append("lower: half graph of this order exists")
        if t_eval != t:
            adjusted.append(("t_lower", t_eval))
            notes.append(f"lower evaluated at odd t={t_eval}")
        if d_eval != d:
            adjusted.append(("d_lower", d_eval))
            notes.append(f"lower evaluated at even d={d_eval}")
    return BoundRow(
        graph_class="treewidth",
        params=(("t", t),),
        d=d,
        lower=lower,
        upper=upper,
        adjusted=tuple(adjusted),
        notes="; ".join(notes),
    )


def _kt_row(t: int, d: int) -> BoundRow:
    if t < 2:
        raise ArgumentError("complete-minor bound requires t >= 2")
    adjusted: list[tuple[str, int]] = []
    notes = ["upper: max order <= value (composed exact chain, not an asymptotic)"]
    t_upper = max(t, 4)
    d_upper = max(d, 2)
    if t_upper != t:
        adjusted.append(("t_upper", t_upper))
        notes.append(f"upper evaluated at t={t_upper}")
    if d_upper != d:
        adjusted.append(("d_upper", d_upper))
        notes.append(f"upper evaluated at d={d_upper}")
    upper = _kt_upper_value(t_upper, d_upper)
    t_eval = _largest_odd_at_most(t, 5)
    if t_eval is None:
        lower = None
        notes.append("lower: no construction stated for t < 5")
    else:
        d_eval = _next_even_at_least_two(d)
        lower = 2 ** comb((d_eval + t_eval - 7) // 2, (t_eval - 5) // 2)
        notes.append("lower: half graph of this order exists")
        if t_eval != t:
            adjusted.append(("t_lower", t_eval))
            notes.append(f"lower evaluated at odd t={t_eval}")
        if d_eval != d:
            adjusted.append(("d_lower", d_eval))
            notes.append(f"lower evaluated at even d={d_eval}")
    return BoundRow(
        graph_class="kt",
        params=(("t", t),),
        d=d,
        lower=lower,
        upper=upper,
        adjusted=tuple(adjusted),
        notes="; ".join(notes),
    )


def _wcol_row(t: int, d: int) -> BoundRow:
    if t < 2:
        raise ArgumentError("wcol bound requires t >= 2")
    adjusted: list[tuple[str, int]] = []
    notes = ["upper: wcol_d over the class <= value"]
    t_eval = max(t, 4)
    if t_eval != t:
        adjusted.append(("t_upper", t_eval))
        notes.append(f"evaluated at t={t_eval}")
    upper = _wcol_minor_free_bound(t_eval, d)
    return BoundRow(
        graph_class="wcol",
        params=(("t", t),),
        d=d,
        lower=None,
        upper=upper,
        adjusted=tuple(adjusted),
        notes="; ".join(notes),
    )


_CLASS_PARAMS = {
    "degree": "delta",
    "planar": None,
    "pathwidth": "p",
    "treewidth": "t",
    "kt": "t",
    "wcol": "t",
}


def bounds_table(
    graph_class: str,
    d: int,
    *,
    delta: int | None = None,
    p: int | None = None,
    t: int | None = None,
) -> BoundTable:
    """Exact bound rows for a graph class (or ``"all"``) at distance ``d``.

    Every value is an arbitrary-precision integer or a symbolic
    :class:`NExpr`; rows record any nearest-valid-parameter adjustment that
    was applied.  With ``"all"``, one row is emitted per class whose
    parameter was supplied (the planar row always qualifies).
    """
    if d < 1:
        raise ArgumentError("d must be >= 1")
    supplied = {"delta": delta, "p": p, "t": t}
    for name, value in supplied.items():
        if value is not None and value < 0:
            raise ArgumentError(f"{name} must be non-negative")

    def build(cls: str) -> BoundRow:
        need = _CLASS_PARAMS[cls]
        if need is not None and supplied[need] is None:
            raise ArgumentError(f"class {cls!r} requires parameter {need!r}")
        if cls == "degree":
            return _degree_row(delta, d)
        if cls == "planar":
            return _planar_row(d)
        if cls == "pathwidth":
            return _pathwidth_row(p, d)
        if cls == "treewidth":
            return _treewidth_row(t, d)
        if cls == "kt":
            return _kt_row(t, d)
        return _wcol_row(t, d)

    if graph_class == "all":
        rows = [
            build(cls)
            for cls in ("degree", "planar", "pathwidth", "treewidth", "kt", "wcol")
            if _CLASS_PARAMS[cls] is None or supplied[_CLASS_PARAMS[cls]] is not None
        ]
    elif graph_class in _CLASS_PARAMS:
        rows = [build(graph_class)]
    else:
        raise ArgumentError(
            f"unknown class {graph_class!r}; expected one of"
            f" {sorted(_CLASS_PARAMS)} or 'all'"
        )
    return BoundTable(tuple(rows))
