"""Independent oracles for the test suite.

Everything here is written from scratch against the definitions, sharing no
code with the package: naive dict-based BFS, brute-force simple-path
enumeration, and exhaustive searches.  Deliberately slow and obvious.
"""

from __future__ import annotations

import random
from collections import deque
from itertools import combinations


def adjacency(n, edges):
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def bfs_naive(n, edges, source):
    """Distances as a dict; unreachable vertices are absent."""
    adj = adjacency(n, edges)
    dist = {source: 0}
    todo = deque([source])
    while todo:
        u = todo.popleft()
        for v in adj[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                todo.append(v)
    return dist


def dist_or_none(n, edges, u, v):
    return bfs_naive(n, edges, u).get(v)


def all_pairs_naive(n, edges):
    return {u: bfs_naive(n, edges, u) for u in range(n)}


def simple_paths_upto(adj, start, max_len):
    """Yield all simple paths (as vertex tuples) from start, length <= max_len."""
    path = [start]
    on_path = {start}

    def walk():
        yield tuple(path)
        if len(path) - 1 >= max_len:
            return
        for nxt in sorted(adj[path[-1]]):
            if nxt in on_path:
                continue
            path.append(nxt)
            on_path.add(nxt)
            yield from walk()
            path.pop()
            on_path.discard(nxt)

    yield from walk()


def is_semi_ladder_naive(n, edges, a_seq, b_seq, d):
    """Check the semi-ladder pattern (distinct vertices included)."""
    if len(set(a_seq) | set(b_seq)) != len(a_seq) + len(b_seq):
        return False
    pairs = all_pairs_naive(n, edges)
    for i, b in enumerate(b_seq):
        for j, a in enumerate(a_seq):
            dist = pairs[b].get(a)
            if i < j and not (dist is not None and dist <= d):
                return False
            if i == j and (dist is not None and dist <= d):
                return False
    return True


def max_semi_ladder_order_naive(n, edges, d):
    """Exhaustive maximum semi-ladder order, no pruning tricks."""
    pairs = all_pairs_naive(n, edges)

    def close(u, v):
        dist = pairs[u].get(v)
        return dist is not None and dist <= d

    best = 0

    def extend(chosen_b, used, length):
        nonlocal best
        best = max(best, length)
        for a in range(n):
            if a in used or any(not close(b, a) for b in chosen_b):
                continue
            for b in range(n):
                if b in used or b == a or close(a, b):
                    continue
                used.add(a)
                used.add(b)
                chosen_b.append(b)
                extend(chosen_b, used, length + 1)
                chosen_b.pop()
                used.discard(a)
                used.discard(b)

    extend([], set(), 0)
    return best


def wreach_naive(n, edges, position, u, d):
    """Weakly d-reachable set via brute-force simple-path enumeration.

    position[v] is v's index in the ordering; v belongs iff some simple path
    from u of length <= d ends at v with v holding the minimum position."""
    adj = adjacency(n, edges)
    result = set()
    for path in simple_paths_upto(adj, u, d):
        v = path[-1]
        if all(position[v] <= position[w] for w in path):
            result.add(v)
    return result


def profiles_naive(n, edges, domain, d):
    """Set of distinct capped-distance tuples over all vertices."""
    seen = set()
    for v in range(n):
        dist = bfs_naive(n, edges, v)
        row = []
        for s in domain:
            value = dist.get(s)
            row.append(value if value is not None and value <= d else "inf")
        seen.add(tuple(row))
    return seen


# -- small-graph corpora ---------------------------------------------------


def all_graphs_up_to(max_n):
    """Every labeled graph with at most max_n vertices, as (n, edges)."""
    out = []
    for n in range(max_n + 1):
        possible = list(combinations(range(n), 2))
        for mask in range(1 << len(possible)):
            edges = [possible[k] for k in range(len(possible)) if mask >> k & 1]
            out.append((n, edges))
    return out


def random_graph(n, p, rng: random.Random):
    edges = [
        (u, v) for u, v in combinations(range(n), 2) if rng.random() < p
    ]
    return n, edges


def random_graph_max_degree(n, max_degree, m, rng: random.Random):
    """Random graph with at most m edges and max degree bounded."""
    degree = [0] * n
    edges = []
    seen = set()
    candidates = list(combinations(range(n), 2))
    rng.shuffle(candidates)
    for u, v in candidates:
        if len(edges) >= m:
            break
        if degree[u] < max_degree and degree[v] < max_degree and (u, v) not in seen:
            edges.append((u, v))
            seen.add((u, v))
            degree[u] += 1
            degree[v] += 1
    return n, edges


def grid_edges(rows, cols):
    """Grid graph on rows*cols vertices, id = r*cols + c."""
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return rows * cols, edges


def synthetic_quasi_cage_parts(ell, crossings=()):
    """Host graph plus the pieces of a hand-made order-ell quasi-cage at d=2.

    Layout: p and q are hubs; P_i = (p, m_i, a_i) and Q_i = (q, n_i, a_i)
    with private middle vertices, and b_i is wired to every m_j with j > i
    (closeness at distance 2, far diagonals at >= 3).  Each crossing pair
    (i, j) with i < j reroutes Q_j through m_i, putting m_i on both P_i and
    Q_j; targets must be distinct so every in-degree stays at most 1 = d-1.
    Returns (n, edges, a, b, p, q, P_paths, Q_paths), all 1-based sequences
    given as tuples.
    """
    crossings = list(crossings)
    if any(not 1 <= i < j <= ell for i, j in crossings):
        raise ValueError("crossings must satisfy 1 <= i < j <= ell")
    targets = [j for _, j in crossings]
    if len(set(targets)) != len(targets):
        raise ValueError("crossing targets must be distinct")
    p, q = 0, 1
    a = tuple(2 + i for i in range(ell))
    m = tuple(2 + ell + i for i in range(ell))
    nmid = tuple(2 + 2 * ell + i for i in range(ell))
    b = tuple(2 + 3 * ell + i for i in range(ell))
    edges = []
    for i in range(ell):
        edges += [(p, m[i]), (m[i], a[i]), (q, nmid[i]), (nmid[i], a[i])]
        for j in range(i + 1, ell):
            edges.append((b[i], m[j]))
    source_of = {j: i for i, j in crossings}
    for j, i in source_of.items():
        edges += [(q, m[i - 1]), (m[i - 1], a[j - 1])]
    p_paths = tuple((p, m[i], a[i]) for i in range(ell))
    q_paths = tuple(
        (q, m[source_of[i + 1] - 1], a[i]) if i + 1 in source_of else (q, nmid[i], a[i])
        for i in range(ell)
    )
    return 2 + 4 * ell, edges, a, b, p, q, p_paths, q_paths
