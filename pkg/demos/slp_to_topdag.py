"""Build a top-DAG straight from an SLP without expanding the string.

The result describes the same Cartesian tree as the greedy top-DAG built
from the explicit string, and its size tracks |S| * sigma.
"""
import random

from crmq.core import build_cartesian
from crmq.slp import build_pairing_slp, slp_depth
from crmq.slp2toptree import ConversionStats, convert
from crmq.toptree import build_greedy_topdag, expand_topdag

rng = random.Random(7)
for sigma in (2, 4, 16):
    values = [rng.randrange(sigma) for _ in range(4096)]
    slp = build_pairing_slp(values)
    stats = ConversionStats()
    dag = convert(slp, stats)
    same = expand_topdag(dag) == build_cartesian(values)
    greedy = build_greedy_topdag(build_cartesian(values))
    print(f"sigma={sigma:2d} |S|={len(slp.rules):5d} depth={slp_depth(slp):2d}"
          f" converted={dag.node_count:6d} (height {dag.height:3d})"
          f" greedy={greedy.node_count:5d} same tree={same}"
          f" max new nodes/rule={max(stats.new_nodes_per_rule)}")

# periodic input compresses well in both representations
values = [0, 3, 1, 2] * 2048
slp = build_pairing_slp(values)
print(f"periodic: |S|={len(slp.rules)} converted={convert(slp).node_count}")
