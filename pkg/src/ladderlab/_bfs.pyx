# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled BFS kernel over a CSR adjacency.

Same contract as ladderlab._bfs_py.bfs_fill; see that module for the
documentation.  The loop releases the GIL so batch BFS can run on a thread
pool with real parallelism.
"""


def bfs_fill(int[::1] indptr, int[::1] indices, int source, int cap,
             int[::1] dist, int[::1] queue):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t head = 0
    cdef Py_ssize_t tail = 1
    cdef Py_ssize_t k
    cdef Py_ssize_t i
    cdef int u, v, du
    with nogil:
        for i in range(n):
            dist[i] = -1
        dist[source] = 0
        queue[0] = source
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
