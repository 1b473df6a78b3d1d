"""Compare the compiled and pure-Python d-separation kernels.

Runs identical random query workloads through both and reports
queries/second plus the speedup.  Usage:

    python benchmarks/bench_dsep.py [n_nodes] [n_queries]
"""

import random
import sys
import time

from kassoc import _dsep_py
from kassoc.graph import Dag, random_dag

try:
    from kassoc import _dsep_cy
except ImportError:
    _dsep_cy = None


def build_workload(rng, n_nodes, n_queries):
    dag = random_dag(rng, n_nodes, edge_prob=0.3)
    parents = dag._parent_masks
    children = dag._child_masks
    queries = []
    for _ in range(n_queries):
        x, y = rng.sample(range(n_nodes), 2)
        z_mask = rng.getrandbits(n_nodes) & ~(1 << x) & ~(1 << y)
        queries.append((x, y, z_mask))
    return parents, children, queries


def run(kernel, n_nodes, parents, children, queries):
    t0 = time.perf_counter()
    hits = 0
    for x, y, z in queries:
        hits += kernel.dconnected(n_nodes, parents, children, x, y, z)
    return time.perf_counter() - t0, hits


def main():
    n_nodes = int(sys.argv[1]) if len(sys.argv) > 1 else 20
    n_queries = int(sys.argv[2]) if len(sys.argv) > 2 else 50_000
    rng = random.Random(7)
    parents, children, queries = build_workload(rng, n_nodes, n_queries)

    py_t, py_hits = run(_dsep_py, n_nodes, parents, children, queries)
    print(f"python kernel: {n_queries / py_t:>12.0f} q/s  ({py_t:.3f}s)")
    if _dsep_cy is None:
        print("cython kernel: not built")
        return
    cy_t, cy_hits = run(_dsep_cy, n_nodes, parents, children, queries)
    print(f"cython kernel: {n_queries / cy_t:>12.0f} q/s  ({cy_t:.3f}s)")
    assert py_hits == cy_hits, "kernels disagree"
    print(f"speedup: {py_t / cy_t:.1f}x  (agreement on {n_queries} queries)")


if __name__ == "__main__":
    main()
