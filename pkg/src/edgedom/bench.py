"""Scaling harness for the tree solver.

Each measurement solves a freshly generated random recursive tree (uniform
random parent attachment, seeded), so caches are equally cold at every
size and per-edge figures are comparable across four orders of magnitude.
The reported time per size is the median of several single-shot runs; the
JIT compile is triggered once beforehand and never timed.
"""

from __future__ import annotations

import statistics
import time
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .errors import InvalidInputError
from . import treedp_fast


def random_recursive_tree_arrays(num_edges: int, seed) -> Tuple[int, np.ndarray, np.ndarray]:
    """Vertex i+1 attaches to a uniform random earlier vertex."""
    rng = np.random.default_rng(seed)
    hi = np.arange(1, num_edges + 1, dtype=np.int64)
    lo = np.floor(rng.random(num_edges) * hi).astype(np.int32)
    return num_edges + 1, lo, hi.astype(np.int32)


def _repeats(size: int) -> int:
    if size <= 10_000:
        return 9
    if size <= 100_000:
        return 7
    return 5


def run(sizes: Sequence[int], seed: int) -> List[Dict]:
    """One row per size: {size, ns, ns_per_edge, value}."""
    if list(sizes) != sorted(sizes):
        raise InvalidInputError("sizes must be ascending")
    if any(s < 2 for s in sizes):
        raise InvalidInputError("sizes must be at least 2 edges")
    rows: List[Dict] = []
    if not sizes:
        return rows
    treedp_fast.warmup()
    for size in sizes:
        times = []
        value = None
        for rep in range(_repeats(size)):
            n, eu, ev = random_recursive_tree_arrays(size, [seed, size, rep])
            t0 = time.perf_counter_ns()
            value = treedp_fast.gamma_t_value_arrays(n, eu, ev)
            times.append(time.perf_counter_ns() - t0)
        ns = int(statistics.median(times))
        rows.append({"size": size, "ns": ns, "ns_per_edge": ns / size,
                     "value": value})
    return rows


def to_csv(rows: List[Dict]) -> str:
    lines = ["size,ns,ns_per_edge"]
    lines += [f"{r['size']},{r['ns']},{r['ns_per_edge']:.2f}" for r in rows]
    return "\n".join(lines) + "\n"
