"""The lower-bound family has a small SLP but its Cartesian tree keeps many distinct zigzags.

Zigzags are counted by the shapes of their hanging subtrees.  Only the first
ell-1 letters of an X word influence its Cartesian tree, so the count falls
short of the all-distinct prediction.
"""
from crmq.core import build_cartesian
from crmq.lowerbound import (FamilyParams, count_zigzags, family_slp, gen_family,
                             predicted_zigzags, x_shape_classes)
from crmq.toptree import build_greedy_topdag

for sigma, ell in [(10, 2), (10, 3), (14, 3), (18, 3)]:
    p = FamilyParams(sigma, ell)
    seq = gen_family(p)
    ct = build_cartesian(seq)
    slp = family_slp(p)
    dag = build_greedy_topdag(ct)
    classes = len(set(x_shape_classes(p)))
    print(f"sigma={sigma} ell={ell} n={seq.n:5d} slp={len(slp.rules):4d} topdag={dag.node_count:4d}"
          f" ratio={dag.node_count / len(slp.rules):.3f} zigzags={count_zigzags(ct, p):4d}"
          f" (all-distinct prediction {predicted_zigzags(p)}, X tree shapes {classes}/{p.m})")
