"""Pure-Python BFS kernel: the fallback when the compiled extension is absent.

Both kernels share one contract: ``bfs_fill(indptr, indices, source, cap,
dist, queue)`` runs a breadth-first search over a CSR adjacency (``indptr``
of length n+1, ``indices`` holding sorted neighbor lists) and fills ``dist``
with hop counts from ``source``, leaving ``-1`` for unreached vertices.  With
``cap >= 0`` the search does not expand vertices at distance ``cap`` (their
neighbors beyond stay ``-1``).  ``queue`` is caller-provided scratch of
length n.  Returns the number of reached vertices.

Neighbor lists are sorted ascending, so the traversal order -- and every
distance tree derived from it -- is fully deterministic.
"""

from __future__ import annotations


def bfs_fill(indptr, indices, source, cap, dist, queue) -> int:
    n = len(indptr) - 1
    for v in range(n):
        dist[v] = -1
    dist[source] = 0
    queue[0] = source
    head = 0
    tail = 1
    while head < tail:
        u = queue[head]
        head += 1
        du = dist[u]
        if cap >= 0 and du >= cap:
            continue
        for k in range(indptr[u], indptr[u + 1]):
            v = indices[k]
            if dist[v] < 0:
                dist[v] = du + 1
                queue[tail] = v
                tail += 1
    return tail
