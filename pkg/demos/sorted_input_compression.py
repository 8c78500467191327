"""A sorted string has a path as Cartesian tree, which the top-DAG folds into O(log n) nodes."""
from crmq.core import build_cartesian
from crmq.toptree import build_greedy_topdag

for k in range(4, 17, 2):
    n = 2 ** k
    dag = build_greedy_topdag(build_cartesian(range(1, n + 1)))
    print(f"n = 2^{k:<2d} top-DAG nodes = {dag.node_count:3d}  height = {dag.height}")
