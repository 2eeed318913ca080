#!/usr/bin/env python3
"""Benchmark the compiled BFS kernel against the pure-Python fallback.

Runs all-sources capped BFS over a few representative graph families and
reports wall time per kernel plus the speedup.  Both kernels share one
contract (``bfs_fill`` over a CSR adjacency), so the benchmark also checks
that they produce identical distance arrays before timing anything.

Usage::

    python3 benchmarks/bench_bfs.py [--rounds N] [--cap D]
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from array import array

from ladderlab._bfs_py import bfs_fill as bfs_python
from ladderlab._kernel import KERNEL

try:
    from ladderlab._bfs import bfs_fill as bfs_cython
except ImportError:
    bfs_cython = None


def grid_graph(rows: int, cols: int) -> tuple[int, list[tuple[int, int]]]:
    n = rows * cols
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return n, edges


def random_regularish(n: int, degree: int, seed: int) -> tuple[int, list]:
    rng = random.Random(seed)
    edges = set()
    for v in range(n):
        while sum(1 for e in edges if v in e) < degree:
            w = rng.randrange(n)
            if w != v:
                edges.add((min(v, w), max(v, w)))
    return n, sorted(edges)


def to_csr(n: int, edges) -> tuple[array, array]:
    adjacency: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adjacency[u].append(v)
        adjacency[v].append(u)
    indptr = array("i", [0] * (n + 1))
    indices = array("i")
    for v in range(n):
        indices.extend(sorted(adjacency[v]))
        indptr[v + 1] = len(indices)
    return indptr, indices


def all_sources(kernel, indptr, indices, cap: int) -> int:
    n = len(indptr) - 1
    dist = array("i", [0] * n)
    queue = array("i", [0] * n)
    checksum = 0
    for source in range(n):
        kernel(indptr, indices, source, cap, dist, queue)
        checksum += dist[n - 1]
    return checksum


def bench(kernel, indptr, indices, cap: int, rounds: int) -> tuple[float, int]:
    best = float("inf")
    checksum = 0
    for _ in range(rounds):
        start = time.perf_counter()
        checksum = all_sources(kernel, indptr, indices, cap)
        best = min(best, time.perf_counter() - start)
    return best, checksum


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--rounds", type=int, default=3,
                        help="timing rounds per case (best is reported)")
    parser.add_argument("--cap", type=int, default=-1,
                        help="BFS distance cap (-1 for unbounded)")
    args = parser.parse_args(argv)

    if bfs_cython is None:
        print("compiled kernel not importable; benchmarking the fallback only")
    print(f"active kernel at import time: {KERNEL}")

    cases = [
        ("grid 50x50", *grid_graph(50, 50)),
        ("grid 20x125", *grid_graph(20, 125)),
        ("random deg-4 n=2000", *random_regularish(2000, 4, seed=7)),
    ]
    header = f"{'case':<22}{'python':>12}{'cython':>12}{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, n, edges in cases:
        indptr, indices = to_csr(n, edges)
        py_time, py_sum = bench(bfs_python, indptr, indices, args.cap,
                                args.rounds)
        if bfs_cython is None:
            print(f"{name:<22}{py_time * 1e3:>10.1f}ms{'-':>12}{'-':>10}")
            continue
        cy_time, cy_sum = bench(bfs_cython, indptr, indices, args.cap,
                                args.rounds)
        if py_sum != cy_sum:
            print(f"{name}: kernel outputs disagree ({py_sum} != {cy_sum})",
                  file=sys.stderr)
            return 1
        print(f"{name:<22}{py_time * 1e3:>10.1f}ms{cy_time * 1e3:>10.1f}ms"
              f"{py_time / cy_time:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
