"""Random access and RMQ on an SLP through its heavy-path forest.

Each non-terminal ``v -> a b`` points in the forest ``H`` to its heavy child
(the longer one, left on ties).  The edge stores the size of the light
sibling on the left or right and the light sibling's (minimum, argmin).
Binary lifting over ``H`` gives weighted level ancestors and path minima of
the hanging light subtrees.  Offsets in aggregates are relative to the
expansion of the segment's topmost parse-tree symbol.
"""
from __future__ import annotations

from typing import List, NamedTuple, Optional, Tuple

from .core import RangeError, check_range
from .slp import Pair, Slp, SymbolStats, symbol_stats

INF = 1 << 62
NO_CAND = (INF, 0)


def _shift(c: Tuple[int, int], delta: int) -> Tuple[int, int]:
    return c if c[0] == INF else (c[0], c[1] + delta)


class Exit(NamedTuple):
    """Where a root-to-leaf walk leaves the heavy path of the current symbol.

    ``side`` is ``'L'``/``'R'`` for a light child, ``'T'`` for the heavy
    terminal.  ``node`` is the symbol whose light edge is taken, ``steps`` its
    distance from the path top, ``sum_left``/``sum_right`` the weights of the
    edges above it.
    """

    side: str
    node: int
    steps: int
    sum_left: int
    sum_right: int


class HeavyForest:
    def __init__(self, slp: Slp, stats: Optional[SymbolStats] = None):
        stats = stats or symbol_stats(slp)
        self.slp = slp
        self.stats = stats
        m = len(slp.rules)
        length = stats.length
        self.length = length
        self.start = slp.start
        self.n = length[slp.start]
        self.heavy = heavy = [-1] * m
        self.light = light = [-1] * m
        self.wl = wl = [0] * m
        self.wr = wr = [0] * m
        self.cand_left: List[Tuple[int, int]] = [NO_CAND] * m
        self.cand_right: List[Tuple[int, int]] = [NO_CAND] * m
        self.hdepth = hdepth = [0] * m
        self.terminal = terminal = list(range(m))
        self.tot_left = tot_left = [0] * m
        self.best_left_root: List[Tuple[int, int]] = [NO_CAND] * m
        self.best_right_root: List[Tuple[int, int]] = [NO_CAND] * m
        self.value = [0] * m
        minval, argmin = stats.minval, stats.argmin

        for v in stats.order:
            r = slp.rules[v]
            if not isinstance(r, Pair):
                self.value[v] = r.value
                continue
            a, b = r
            if length[a] >= length[b]:
                h, lt = a, b
                wr[v] = length[b]
                self.cand_right[v] = (minval[b], length[a] + argmin[b])
            else:
                h, lt = b, a
                wl[v] = length[a]
                self.cand_left[v] = (minval[a], argmin[a])
            heavy[v], light[v] = h, lt
            hdepth[v] = hdepth[h] + 1
            terminal[v] = terminal[h]
            tot_left[v] = wl[v] + tot_left[h]
            self.best_left_root[v] = min(self.cand_left[v], _shift(self.best_left_root[h], wl[v]))
            self.best_right_root[v] = min(self.cand_right[v], _shift(self.best_right_root[h], wl[v]))

        # lifting level k covers 2**k consecutive H-edges starting at v
        levels = max(1, max(hdepth).bit_length())
        self.levels = levels
        self.up = [list(heavy)]
        self.seg_left = [list(wl)]
        self.seg_right = [list(wr)]
        self.seg_best_left = [list(self.cand_left)]
        self.seg_best_right = [list(self.cand_right)]
        for k in range(1, levels):
            pu, psl, psr = self.up[-1], self.seg_left[-1], self.seg_right[-1]
            pbl, pbr = self.seg_best_left[-1], self.seg_best_right[-1]
            up = [-1] * m
            sl = [0] * m
            sr = [0] * m
            bl = [NO_CAND] * m
            br = [NO_CAND] * m
            for v in range(m):
                mid = pu[v]
                if mid < 0:
                    continue
                top = pu[mid]
                if top < 0:
                    continue
                up[v] = top
                shift = psl[v]
                sl[v] = shift + psl[mid]
                sr[v] = psr[v] + psr[mid]
                bl[v] = min(pbl[v], _shift(pbl[mid], shift))
                br[v] = min(pbr[v], _shift(pbr[mid], shift))
            self.up.append(up)
            self.seg_left.append(sl)
            self.seg_right.append(sr)
            self.seg_best_left.append(bl)
            self.seg_best_right.append(br)

    # ------------------------------------------------------------ internals

    @property
    def edge_count(self) -> int:
        return sum(1 for h in self.heavy if h >= 0)

    def table_entries(self) -> int:
        return sum(1 for level in self.up for u in level if u >= 0)

    def aggregate(self, v: int, steps: int):
        """Compose ``steps`` H-edges from ``v``: (Σℓ, Σr, best-left, best-right, end)."""
        sl = sr = 0
        bl = br = NO_CAND
        k = 0
        while steps:
            if steps & 1:
                bl = min(bl, _shift(self.seg_best_left[k][v], sl))
                br = min(br, _shift(self.seg_best_right[k][v], sl))
                sl += self.seg_left[k][v]
                sr += self.seg_right[k][v]
                v = self.up[k][v]
            steps >>= 1
            k += 1
        return sl, sr, bl, br, v

    def _climb(self, v: int, side: str, x: int):
        seg = self.seg_left if side == "L" else self.seg_right
        w = self.wl if side == "L" else self.wr
        acc_l = acc_r = steps = 0
        node = v
        for k in range(self.levels - 1, -1, -1):
            u = self.up[k][node]
            if u < 0:
                continue
            acc = acc_l if side == "L" else acc_r
            if acc + seg[k][node] < x:
                acc_l += self.seg_left[k][node]
                acc_r += self.seg_right[k][node]
                steps += 1 << k
                node = u
        acc = acc_l if side == "L" else acc_r
        if self.heavy[node] < 0 or acc + w[node] < x:
            return None
        return node, steps, acc_l, acc_r

    def exit(self, v: int, t: int) -> Exit:
        """Exit point of position ``t`` (1-based within ``exp(v)``) from v's heavy path."""
        pos_term = self.tot_left[v] + 1
        if t == pos_term:
            return Exit("T", self.terminal[v], self.hdepth[v], self.tot_left[v], self.length[v] - t)
        if t < pos_term:
            node, steps, al, ar = self._climb(v, "L", t)
            return Exit("L", node, steps, al, ar)
        node, steps, al, ar = self._climb(v, "R", self.length[v] - t + 1)
        return Exit("R", node, steps, al, ar)

    def _descend(self, v: int, t: int, off: int, e: Exit):
        """Enter the light child at exit ``e``: (child, local t, new offset)."""
        w = e.node
        if e.side == "L":
            delta = e.sum_left
        else:
            delta = self.length[v] - e.sum_right - self.wr[w]
        return self.light[w], t - delta, off + delta

    def _terminal_cand(self, v: int, off: int) -> Tuple[int, int]:
        return self.value[self.terminal[v]], off + self.tot_left[v] + 1

    def _suffix_min(self, v: int, t: int, off: int) -> Tuple[int, int]:
        best = NO_CAND
        while True:
            e = self.exit(v, t)
            if e.side == "T":
                best = min(best, self._terminal_cand(v, off), _shift(self.best_right_root[v], off))
                return best
            w = e.node
            if e.side == "L":
                h = self.heavy[w]
                best = min(best,
                           _shift(self.best_left_root[h], off + e.sum_left + self.wl[w]),
                           self._terminal_cand(v, off),
                           _shift(self.best_right_root[v], off))
            else:
                best = min(best, _shift(self.aggregate(v, e.steps)[3], off))
            v, t, off = self._descend(v, t, off, e)

    def _prefix_min(self, v: int, t: int, off: int) -> Tuple[int, int]:
        best = NO_CAND
        while True:
            e = self.exit(v, t)
            if e.side == "T":
                best = min(best, self._terminal_cand(v, off), _shift(self.best_left_root[v], off))
                return best
            w = e.node
            if e.side == "R":
                h = self.heavy[w]
                best = min(best,
                           _shift(self.best_right_root[h], off + e.sum_left + self.wl[w]),
                           self._terminal_cand(v, off),
                           _shift(self.best_left_root[v], off))
            else:
                best = min(best, _shift(self.aggregate(v, e.steps)[2], off))
            v, t, off = self._descend(v, t, off, e)

    def _segment(self, node: int, steps: int, side: str):
        if steps == self.hdepth[node]:
            return self.best_left_root[node] if side == "L" else self.best_right_root[node]
        agg = self.aggregate(node, steps)
        return agg[2] if side == "L" else agg[3]

    # ------------------------------------------------------------ queries

    def access(self, i: int) -> int:
        return self.access_with_hops(i)[0]

    def access_with_hops(self, i: int) -> Tuple[int, int]:
        if not 1 <= i <= self.n:
            raise RangeError(f"index {i} outside 1..{self.n}")
        v, t, off, hops = self.start, i, 0, 0
        while True:
            e = self.exit(v, t)
            if e.side == "T":
                return self.value[e.node], hops
            v, t, off = self._descend(v, t, off, e)
            hops += 1

    def rmq(self, i: int, j: int) -> int:
        check_range(self.n, i, j)
        if i == j:
            return i
        v, ti, tj, off = self.start, i, j, 0
        while True:
            ei = self.exit(v, ti)
            ej = self.exit(v, tj)
            if ei.side == ej.side and ei.side != "T" and ei.node == ej.node:
                child, ti, noff = self._descend(v, ti, off, ei)
                tj -= noff - off
                v, off = child, noff
                continue
            break

        best = NO_CAND
        if ei.side == "T":
            best = self._terminal_cand(v, off)
        else:
            c, t, o = self._descend(v, ti, off, ei)
            best = self._suffix_min(c, t, o)
        if ej.side == "T":
            best = min(best, self._terminal_cand(v, off))
        else:
            c, t, o = self._descend(v, tj, off, ej)
            best = min(best, self._prefix_min(c, t, o))

        d = self.hdepth[v]
        a = ei.steps if ei.side != "T" else d
        b = ej.steps if ej.side != "T" else d
        if ei.side == "L":
            w = ei.node
            stop = b if ej.side == "L" else d
            count = stop - a - 1
            if count > 0:
                seg = self._segment(self.heavy[w], count, "L")
                best = min(best, _shift(seg, off + ei.sum_left + self.wl[w]))
        if ej.side == "R":
            w = ej.node
            stop = a if ei.side == "R" else d
            count = stop - b - 1
            if count > 0:
                seg = self._segment(self.heavy[w], count, "R")
                best = min(best, _shift(seg, off + ej.sum_left + self.wl[w]))
        if ei.side == "L" and ej.side == "R":
            best = min(best, self._terminal_cand(v, off))
        return best[1]


def build_heavy_forest(slp: Slp, stats: Optional[SymbolStats] = None) -> HeavyForest:
    return HeavyForest(slp, stats)


def weighted_level_ancestor(h: HeavyForest, v: int, side: str, x: int):
    """First H-edge from ``v`` toward the root where the running side-weight reaches ``x``.

    Returns ``(exit symbol, Σℓ, Σr)`` summed over the edges strictly before the
    exit edge, or ``None`` when the whole path carries less than ``x``.
    """
    if side not in ("L", "R", "left", "right"):
        raise ValueError(f"side must be left or right, got {side!r}")
    if x < 1:
        raise ValueError("x must be >= 1")
    found = h._climb(v, side[0].upper(), x)
    if found is None:
        return None
    node, _steps, al, ar = found
    return node, al, ar


def access(h: HeavyForest, i: int) -> int:
    return h.access(i)


def rmq(h: HeavyForest, i: int, j: int) -> int:
    return h.rmq(i, j)
