"""LCA (equivalently RMQ) by inorder number on a top-DAG.

A node's local inorder number inside a merged cluster converts to and from
its number inside the child clusters in O(1) from the cached metadata, so a
query is one root-to-cluster descent followed by the reverse climb.

Child designators: 0 is the first child (lower cluster of a ``V`` node,
left cluster of an ``H`` node), 1 the second.
"""
from __future__ import annotations

from typing import List, Tuple

from .core import RangeError
from .toptree import H, V, TopDag


def vertical_down(lo_first: int, lo_size: int, shared: int, u: int) -> List[Tuple[int, int]]:
    """Positions of ``u`` in the lower (0) and/or upper (1) cluster of a vertical merge.

    The lower cluster occupies ``lo_first .. lo_first + lo_size - 1``; the
    shared node sits at ``shared`` and at ``lo_first`` inside the upper cluster.
    """
    lo_last = lo_first + lo_size - 1
    if u < lo_first:
        return [(1, u)]
    if u <= lo_last:
        out = [(0, u - lo_first + 1)]
        if u == shared:
            out.append((1, lo_first))
        return out
    return [(1, u - lo_size + 1)]


def horizontal_down(left_size: int, u: int) -> List[Tuple[int, int]]:
    """Positions of ``u`` in the left (0) and/or right (1) cluster of a horizontal merge."""
    if u < left_size:
        return [(0, u)]
    out = [(1, u - left_size + 1)]
    if u == left_size:
        out.append((0, left_size))
    return out


def vertical_up(lo_first: int, lo_size: int, shared: int, child: int, p: int) -> int:
    if child == 0:
        return lo_first + p - 1
    if p < lo_first:
        return p
    if p == lo_first:
        return shared
    return p + lo_size - 1


def horizontal_up(left_size: int, child: int, p: int) -> int:
    return p if child == 0 else p + left_size - 1


def push_down(dag: TopDag, c: int, u: int) -> List[Tuple[int, int]]:
    s = dag.store
    if s.kind[c] < V:
        raise ValueError(f"cluster {c} is atomic")
    if not 1 <= u <= s.size[c]:
        raise RangeError(f"local position {u} outside 1..{s.size[c]}")
    if s.kind[c] == V:
        return vertical_down(s.lo_first[c], s.size[s.a[c]], s.shared[c], u)
    return horizontal_down(s.size[s.a[c]], u)


def push_up(dag: TopDag, c: int, child: int, p: int) -> int:
    s = dag.store
    if s.kind[c] < V:
        raise ValueError(f"cluster {c} is atomic")
    kid = s.a[c] if child == 0 else s.b[c]
    if not 1 <= p <= s.size[kid]:
        raise RangeError(f"local position {p} outside 1..{s.size[kid]}")
    if s.kind[c] == V:
        return vertical_up(s.lo_first[c], s.size[s.a[c]], s.shared[c], child, p)
    return horizontal_up(s.size[s.a[c]], child, p)


def lca_with_stats(dag: TopDag, x: int, y: int) -> Tuple[int, int]:
    """``(LCA inorder number, descent length)``."""
    n = dag.n
    if not (1 <= x <= n and 1 <= y <= n):
        raise RangeError(f"nodes ({x}, {y}) outside 1..{n}")
    if x == y:
        return x, 0
    s = dag.store
    kind, A, B = s.kind, s.a, s.b
    size, lo_first, shared, top = s.size, s.lo_first, s.shared, s.top
    path: List[Tuple[int, int]] = []
    c = dag.root
    xc, yc = x, y
    while True:
        if xc == yc:
            pos = xc
            break
        k = kind[c]
        if k < V:
            pos = top[c]
            break
        a = A[c]
        if k == V:
            lf, ls, sh = lo_first[c], size[a], shared[c]
            # lower-cluster membership; the shared node counts for both children
            xl = lf <= xc < lf + ls
            yl = lf <= yc < lf + ls
            xu = not xl or xc == sh
            yu = not yl or yc == sh
            if xl and yl:
                path.append((c, 0))
                c, xc, yc = a, xc - lf + 1, yc - lf + 1
            elif xu and yu:
                path.append((c, 1))
                c = B[c]
                xc = vertical_down(lf, ls, sh, xc)[-1][1]
                yc = vertical_down(lf, ls, sh, yc)[-1][1]
            else:
                # the node inside the lower cluster is replaced by its top
                path.append((c, 1))
                c = B[c]
                xc = lf if xl else vertical_down(lf, ls, sh, xc)[-1][1]
                yc = lf if yl else vertical_down(lf, ls, sh, yc)[-1][1]
        else:
            la = size[a]
            xa, ya = xc <= la, yc <= la
            xb, yb = xc >= la, yc >= la
            if xa and ya:
                path.append((c, 0))
                c = a
            elif xb and yb:
                path.append((c, 1))
                c, xc, yc = B[c], xc - la + 1, yc - la + 1
            else:
                pos = shared[c]
                break
    steps = len(path)
    for c, child in reversed(path):
        a = A[c]
        if kind[c] == V:
            pos = vertical_up(lo_first[c], size[a], shared[c], child, pos)
        elif child:
            pos += size[a] - 1
    return pos, steps


def lca(dag: TopDag, x: int, y: int) -> int:
    return lca_with_stats(dag, x, y)[0]


def rmq(dag: TopDag, i: int, j: int) -> int:
    """RMQ(i, j) as the LCA of Cartesian-tree nodes ``i`` and ``j`` (order-free)."""
    return lca_with_stats(dag, i, j)[0]
