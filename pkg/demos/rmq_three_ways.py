"""Answer the same range minimum queries three ways and compare.

The string is compressed once as a pairing SLP and once as a top-DAG of its
Cartesian tree.  Both answer RMQ(i, j) as the leftmost minimum position.
"""
import random

from crmq.core import FIGURE1, build_cartesian, rmq_naive
from crmq.slp import build_pairing_slp
from crmq.slp_rmq import HeavyForest
from crmq.toptree import build_greedy_topdag
from crmq.toptree_lca import lca

seq = FIGURE1
print("S =", " ".join(map(str, seq.values)))

slp = build_pairing_slp(seq)
forest = HeavyForest(slp)
dag = build_greedy_topdag(build_cartesian(seq))
print(f"SLP rules: {len(slp.rules)}, top-DAG nodes: {dag.node_count}")

rng = random.Random(1)
for _ in range(6):
    i = rng.randint(1, seq.n)
    j = rng.randint(i, seq.n)
    print(f"RMQ({i:2d}, {j:2d}) naive={rmq_naive(seq, i, j):2d}"
          f" slp={forest.rmq(i, j):2d} topdag={lca(dag, i, j):2d}")
