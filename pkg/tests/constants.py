"""Empirical constants, calibrated once and frozen.

Each value was set from a calibration run with a safety margin; tests must
not adjust them.
"""

# periodic pairing SLP: rules <= C_PERIODIC * (p + log2 n), p in {1, 2, 3, 5, 7}
C_PERIODIC = 5.0
# greedy top-DAG of 1..n (n = 2**k): nodes <= C3 * log2 n; observed 3k - 3
C3 = 3.0
# greedy top-tree height <= C_HEIGHT * log2 n (random and sorted inputs)
C_HEIGHT = 1.5
# conversion output: nodes <= C1 * |S| * sigma and height <= C2 * depth * (1 + log2 sigma),
# calibrated on sigma = 2 (max observed 0.97 and 1.08)
C1 = 1.25
C2 = 1.5
# new DAG nodes per rule during conversion <= C_RULE_A * sigma + C_RULE_B
C_RULE_A = 2
C_RULE_B = 8
# lower-bound grammar: rules <= C4 * (2**ell * s' + 4**ell); observed up to 3.45
C4 = 4.0
# greedy top-DAG size >= zigzags / C0
C0 = 4
# mean LCA descent: increase per doubling of n
DESCENT_STEP = 3.0
