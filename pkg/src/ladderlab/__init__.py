"""ladderlab: half graphs and semi-ladders in graph powers.

Witness-family generators, certificate verification and search, decomposition
validators, sunflower/alignment extraction, weak-coloring and quasi-wideness
pipelines, cage extraction, and an exact bound table -- all over one immutable
graph substrate with a compiled BFS kernel (pure-Python fallback selected at
import time).
"""

from ladderlab._kernel import KERNEL as kernel_name

__version__ = "0.1.0"

__all__ = ["kernel_name", "__version__"]
