"""Certificates for half graphs, semi-ladders, and co-matchings:
verification against a graph, subset closure, deduplication, and exact /
greedy search.

A certificate of order ``n`` names two vertex sequences ``a_1..a_n`` and
``b_1..b_n``.  With ``D = dist(b_i, a_j)`` the kinds require:

* half graph (STRICT): ``D <= d`` iff ``i < j``;
* half graph (INCLUSIVE): ``D <= d`` iff ``i <= j``;
* semi-ladder: ``D <= d`` for ``i < j`` and ``D > d`` for ``i = j``
  (pairs below the diagonal are unconstrained);
* co-matching: ``D <= d`` for ``i != j`` and ``D > d`` for ``i = j``.

Unreachable pairs count as "far" (they satisfy every ``> d`` requirement and
violate every ``<= d`` one).  Indices are 1-based in reports and subset
selections, matching the certificate's own numbering.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum

from ladderlab.errors import ArgumentError, SizeError, StructuralError
from ladderlab.graphcore import Graph, batch_distances, raw_distances


class LadderKind(Enum):
    HALF_GRAPH = "half_graph"
    SEMI_LADDER = "semi_ladder"
    CO_MATCHING = "co_matching"


class DiagonalConvention(Enum):
    STRICT = "strict"  # dist(b_i, a_j) <= d iff i < j
    INCLUSIVE = "inclusive"  # dist(b_i, a_j) <= d iff i <= j


@dataclass(frozen=True)
class LadderCertificate:
    """(kind, d, a-sequence, b-sequence); order may be 0 for failed searches."""

    kind: LadderKind
    d: int
    a: tuple[int, ...]
    b: tuple[int, ...]
    convention: DiagonalConvention = DiagonalConvention.STRICT

    def __post_init__(self):
        if self.d < 1:
            raise ArgumentError("certificate requires d >= 1")
        if len(self.a) != len(self.b):
            raise ArgumentError("a- and b-sequences must have equal length")
        object.__setattr__(self, "a", tuple(int(v) for v in self.a))
        object.__setattr__(self, "b", tuple(int(v) for v in self.b))

    @property
    def order(self) -> int:
        return len(self.a)

    def vertices(self) -> tuple[int, ...]:
        return self.a + self.b

    def as_kind(self, kind: LadderKind) -> "LadderCertificate":
        return LadderCertificate(kind, self.d, self.a, self.b, self.convention)


@dataclass(frozen=True)
class Violation:
    i: int  # 1-based row (b-index)
    j: int  # 1-based column (a-index)
    observed: int | None  # None encodes an unreachable pair
    required: str  # "<= d" or "> d"

    def to_json_obj(self) -> dict:
        return {
            "i": self.i,
            "j": self.j,
            "observed": "inf" if self.observed is None else self.observed,
            "required": self.required,
        }


@dataclass(frozen=True)
class VerificationReport:
    valid: bool
    violation: Violation | None = None

    def to_json_obj(self) -> dict:
        return {
            "valid": self.valid,
            "violation": None if self.violation is None else self.violation.to_json_obj(),
        }


def _requirement(kind: LadderKind, convention: DiagonalConvention, i: int, j: int):
    """The constraint on dist(b_i, a_j): True = close (<= d), False = far
    (> d), None = unconstrained."""
    if kind is LadderKind.HALF_GRAPH:
        if convention is DiagonalConvention.STRICT:
            return i < j
        return i <= j
    if kind is LadderKind.SEMI_LADDER:
        if i < j:
            return True
        if i == j:
            return False
        return None
    # CO_MATCHING
    return i != j


def _check_pattern(g: Graph, kind, convention, d, a, b, threads: int = 1):
    """First row-major violation of the distance pattern, or None."""
    n = len(a)
    dists = batch_distances(g, b, threads=threads)
    for i in range(n):
        row = dists[i]
        for j in range(n):
            want_close = _requirement(kind, convention, i + 1, j + 1)
            if want_close is None:
                continue
            observed = row[a[j]]
            close = 0 <= observed <= d
            if close != want_close:
                return Violation(
                    i + 1,
                    j + 1,
                    None if observed < 0 else observed,
                    "<= d" if want_close else "> d",
                )
    return None


def verify_certificate(g: Graph, c: LadderCertificate, threads: int = 1) -> VerificationReport:
    """Check every pairwise distance condition of the certificate's kind.

    Duplicate vertices raise :class:`StructuralError` (the certificate is not
    a well-formed object); distance violations come back in the report, citing
    the first offending (i, j) in row-major order.
    """
    for v in c.vertices():
        g._check_vertex(v)
    if len(set(c.vertices())) != 2 * c.order:
        raise StructuralError("certificate vertices are not pairwise distinct")
    if c.order == 0:
        return VerificationReport(True)
    violation = _check_pattern(g, c.kind, c.convention, c.d, c.a, c.b, threads)
    return VerificationReport(violation is None, violation)


def ladder_subset(c: LadderCertificate, indices) -> LadderCertificate:
    """Restrict a certificate to an ascending 1-based index selection."""
    indices = list(indices)
    if not indices:
        raise ArgumentError("index selection must be non-empty")
    prev = 0
    for idx in indices:
        if not isinstance(idx, int) or idx <= prev or idx > c.order:
            raise ArgumentError(
                f"indices must be ascending within [1,{c.order}]; got {indices}"
            )
        prev = idx
    return LadderCertificate(
        c.kind,
        c.d,
        tuple(c.a[i - 1] for i in indices),
        tuple(c.b[i - 1] for i in indices),
        c.convention,
    )


def dedup_half_graph(
    g: Graph,
    a,
    b,
    d: int,
    convention: DiagonalConvention = DiagonalConvention.STRICT,
) -> LadderCertificate:
    """Extract a distinct-vertex half graph from sequences that may repeat.

    The input positions must already satisfy the half-graph distance pattern
    (checked; violations raise :class:`StructuralError`).  Within one
    sequence repeats are impossible under the pattern, so collisions are
    cross-collisions ``a_i = b_j`` only; they form chains, and a single
    ascending greedy pass keeps at least half of the indices.
    """
    a = [int(v) for v in a]
    b = [int(v) for v in b]
    if len(a) != len(b):
        raise ArgumentError("a- and b-sequences must have equal length")
    if d < 1:
        raise ArgumentError("dedup requires d >= 1")
    if not a:
        raise ArgumentError("dedup requires order >= 1")
    for v in a + b:
        g._check_vertex(v)
    violation = _check_pattern(g, LadderKind.HALF_GRAPH, convention, d, a, b)
    if violation is not None:
        raise StructuralError(
            "input violates the half-graph distance pattern at "
            f"(i={violation.i}, j={violation.j}): observed "
            f"{'inf' if violation.observed is None else violation.observed}, "
            f"required {violation.required}"
        )
    kept: list[int] = []
    used: set[int] = set()
    for i in range(len(a)):
        if a[i] == b[i]:
            continue
        if a[i] in used or b[i] in used:
            continue
        kept.append(i + 1)
        used.add(a[i])
        used.add(b[i])
    cert = LadderCertificate(
        LadderKind.HALF_GRAPH,
        d,
        tuple(a[i - 1] for i in kept),
        tuple(b[i - 1] for i in kept),
        convention,
    )
    report = verify_certificate(g, cert)
    if not report.valid:
        raise StructuralError("deduplicated certificate failed re-verification")
    return cert


def _size_guard(default: int) -> int:
    env = os.environ.get("LADDERLAB_SIZE_CAP")
    if env is None:
        return default
    try:
        return int(env)
    except ValueError:
        raise ArgumentError(f"LADDERLAB_SIZE_CAP is not an integer: {env!r}") from None


def max_semi_ladder_exact(
    g: Graph,
    d: int,
    cap: int | None = None,
    guard: int | None = None,
) -> LadderCertificate:
    """A maximum-order distance-d semi-ladder, lexicographically least.

    Branch-and-bound over pair sequences in ascending (a, b) order; the first
    incumbent of each record order is the lexicographically least maximum, and
    pruning never discards a strictly larger solution.  ``cap`` truncates the
    search as soon as a certificate of that order is found.  Guarded to
    ``vertex_count <= 24`` unless ``guard`` or ``LADDERLAB_SIZE_CAP`` raises
    the limit.
    """
    if d < 1:
        raise ArgumentError("search requires d >= 1")
    if cap is not None and cap < 1:
        raise ArgumentError("cap must be >= 1 when given")
    limit = guard if guard is not None else _size_guard(24)
    n = g.n
    if n > limit:
        raise SizeError(
            f"exact search guard: {n} vertices > {limit} "
            "(raise LADDERLAB_SIZE_CAP to override)"
        )
    close = [raw_distances(g, u, cap=d) for u in range(n)]

    def is_close(u: int, v: int) -> bool:
        return 0 <= close[u][v] <= d

    best: list[tuple[int, int]] = []
    stack_pairs: list[tuple[int, int]] = []
    found_cap = False

    def dfs(used: set[int], a_cand: set[int]) -> None:
        nonlocal best, found_cap
        if found_cap:
            return
        if len(stack_pairs) > len(best):
            best = list(stack_pairs)
            if cap is not None and len(best) >= cap:
                found_cap = True
                return
        bound = min(len(a_cand - used), (n - len(used)) // 2)
        if len(stack_pairs) + bound <= len(best):
            return
        for a_v in sorted(a_cand - used):
            for b_v in range(n):
                if b_v == a_v or b_v in used:
                    continue
                if is_close(a_v, b_v):
                    continue  # diagonal must be far
                new_a_cand = {x for x in a_cand if is_close(b_v, x)}
                used.add(a_v)
                used.add(b_v)
                stack_pairs.append((a_v, b_v))
                dfs(used, new_a_cand)
                stack_pairs.pop()
                used.discard(a_v)
                used.discard(b_v)
                if found_cap:
                    return

    dfs(set(), set(range(n)))
    if cap is not None and len(best) > cap:
        best = best[:cap]
    return LadderCertificate(
        LadderKind.SEMI_LADDER,
        d,
        tuple(p[0] for p in best),
        tuple(p[1] for p in best),
    )


def greedy_semi_ladder(g: Graph, d: int) -> LadderCertificate:
    """One-pass greedy semi-ladder: scan pairs in ascending (a, b) order and
    append (a, b) when the diagonal is far and every previously chosen b is
    close to the new a."""
    if d < 1:
        raise ArgumentError("search requires d >= 1")
    n = g.n
    chosen_a: list[int] = []
    chosen_b: list[int] = []
    used: set[int] = set()
    close_from: dict[int, object] = {}

    def dist_row(u: int):
        row = close_from.get(u)
        if row is None:
            row = raw_distances(g, u, cap=d)
            close_from[u] = row
        return row

    for a_v in range(n):
        if a_v in used:
            continue
        row_a = dist_row(a_v)
        if any(not (0 <= dist_row(b_v)[a_v] <= d) for b_v in chosen_b):
            continue
        for b_v in range(n):
            if b_v == a_v or b_v in used:
                continue
            if 0 <= row_a[b_v] <= d:
                continue  # diagonal must be far
            chosen_a.append(a_v)
            chosen_b.append(b_v)
            used.add(a_v)
            used.add(b_v)
            break
    return LadderCertificate(
        LadderKind.SEMI_LADDER, d, tuple(chosen_a), tuple(chosen_b)
    )


# -- JSON ------------------------------------------------------------------


def certificate_to_json_obj(c: LadderCertificate) -> dict:
    obj = {
        "kind": c.kind.value,
        "d": c.d,
        "a": list(c.a),
        "b": list(c.b),
    }
    if c.kind is LadderKind.HALF_GRAPH:
        obj["convention"] = c.convention.value
    return obj


def certificate_from_json_obj(obj: dict) -> LadderCertificate:
    try:
        kind = LadderKind(obj["kind"])
        convention = DiagonalConvention(obj.get("convention", "strict"))
        return LadderCertificate(
            kind, int(obj["d"]), tuple(obj["a"]), tuple(obj["b"]), convention
        )
    except (KeyError, ValueError, TypeError) as exc:
        raise StructuralError(f"malformed certificate JSON: {exc}") from None
