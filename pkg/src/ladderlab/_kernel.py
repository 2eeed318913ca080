"""Kernel selection: compiled extension when importable, else pure Python.

``KERNEL`` names the active implementation ("cython" or "python") so callers
and benchmarks can report which one they exercised.
"""

try:
    from ladderlab._bfs import bfs_fill

    KERNEL = "cython"
except ImportError:  # pragma: no cover - depends on the build environment
    from ladderlab._bfs_py import bfs_fill

    KERNEL = "python"

__all__ = ["KERNEL", "bfs_fill"]
