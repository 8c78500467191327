"""Top-DAG of the Cartesian tree built directly from an SLP.

For every grammar symbol ``A`` we keep clusters for the pieces hanging off
the two extreme paths of ``CT(A)``:

* ``lpath``: for each non-root node ``v`` on the leftmost path (labels
  strictly increasing) the cluster ``v`` + right subtree of ``v``; its only
  boundary is ``v``.
* ``rpath``: for each label ``i`` on the rightmost path below the root, the
  maximal run of label-``i`` nodes with their left subtrees; top boundary is
  the first node of the run, bottom boundary the last one.

``CT(A)`` is the root, the ``lpath`` pieces chained by left edges and the
``rpath`` pieces chained by right edges.  A rule ``C -> A B`` reuses all
pieces except one, which is assembled from O(sigma) existing pieces plus
the connecting edges and merged with the greedy schedule of
:class:`~crmq.toptree.MergeForest` (O(log sigma) rounds).

A piece is stored as a cluster id, or ``-1`` when it is a single node with
no edges.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .slp import Pair, Slp, symbol_stats
from .toptree import EL, ER, Clusters, MergeForest, TopDag

NO_PIECE = -1


@dataclass(frozen=True)
class SymbolClusters:
    """Root label plus the ``lpath``/``rpath`` pieces of one symbol's Cartesian tree.

    ``lpath`` holds ``(label, piece)`` top-down.  ``rpath`` holds
    ``(label, upper, tail)`` top-down: ``upper`` spans the run from its first
    to its last node (the bottom boundary) with the left subtrees of all but
    the last node, ``tail`` is the last node plus its left subtree.
    """

    root: int
    lpath: tuple = ()
    rpath: tuple = ()
    length: int = 1


@dataclass
class ConversionStats:
    new_nodes_per_rule: List[int] = field(default_factory=list)
    pieces_per_rule: List[int] = field(default_factory=list)


@dataclass(frozen=True)
class SplitPlan:
    """How ``CT(A)`` and ``CT(B)`` are cut when forming ``CT(AB)``.

    ``mirrored`` is False when root(A) <= root(B) = ``x``: then ``A_p`` ends at
    the last character of A that is <= x and ``B_p`` at the first x of B.
    Otherwise ``x`` is root(A), ``A_p`` ends at A's first minimum and ``B_p``
    ends just before the first character of B below x.  The ``*_len`` fields
    are the lengths of the four parts; the piece tuples name which clusters
    go where.
    """

    x: int
    mirrored: bool
    a_prefix_len: int
    a_suffix_len: int
    b_prefix_len: int
    b_suffix_len: int
    a_suffix_groups: tuple
    b_prefix_pieces: tuple


def _psize(store: Clusters, piece: int) -> int:
    return 1 if piece == NO_PIECE else store.size[piece]


def _gsize(store: Clusters, group) -> int:
    return _psize(store, group[1]) + _psize(store, group[2]) - 1


def split_rule(store: Clusters, a: SymbolClusters, b: SymbolClusters) -> SplitPlan:
    lsum_a = sum(_psize(store, p) for _, p in a.lpath)
    if a.root <= b.root:
        x = b.root
        ap = 1 + lsum_a + sum(_gsize(store, g) for g in a.rpath if g[0] <= x)
        bp = 1 + sum(_psize(store, p) for _, p in b.lpath)
        return SplitPlan(x, False, ap, a.length - ap, bp, b.length - bp,
                         tuple(g for g in a.rpath if g[0] > x), tuple(b.lpath))
    x = a.root
    ap = 1 + lsum_a
    zb = tuple(item for item in b.lpath if item[0] >= x)
    bp = sum(_psize(store, p) for _, p in zb)
    return SplitPlan(x, True, ap, a.length - ap, bp, b.length - bp, tuple(a.rpath), zb)


def zigzag_order(a_groups, b_pieces) -> list:
    """Merge A-runs and B-pieces by increasing label, A first on ties.

    Returns ``("A", upper, tail)`` and ``("B", piece)`` items.
    """
    out = []
    ia = ib = 0
    while ia < len(a_groups) or ib < len(b_pieces):
        if ib >= len(b_pieces) or (ia < len(a_groups) and a_groups[ia][0] <= b_pieces[ib][0]):
            out.append(("A", a_groups[ia][1], a_groups[ia][2]))
            ia += 1
        else:
            out.append(("B", b_pieces[ib][1]))
            ib += 1
    return out


class _Assembly:
    """Scratch tree of pieces and connecting edges for one new cluster."""

    def __init__(self, store: Clusters):
        self.store = store
        self.forest = MergeForest(store)
        self.pieces = 0

    def node(self, external: bool = False) -> int:
        return self.forest.add_node(external)

    def hang(self, v: int, piece: int) -> None:
        """Hang a top-only piece below node ``v``."""
        if piece != NO_PIECE:
            self.pieces += 1
            self.forest.add_edge(v, self.forest.add_node(), piece)

    def piece(self, piece: int) -> int:
        """Place a top-only piece; return its top node."""
        t = self.forest.add_node()
        self.hang(t, piece)
        return t

    def group(self, upper: int, tail: int, with_tail: bool = True) -> Tuple[int, int]:
        """Place a right-path run; return (first node, last node)."""
        f = self.forest
        t = f.add_node()
        bot = t
        if upper != NO_PIECE:
            self.pieces += 1
            bot = f.add_node()
            f.add_edge(t, bot, upper)
        if with_tail:
            self.hang(bot, tail)
        return t, bot

    def edge(self, parent: int, child: int, kind: int) -> None:
        self.forest.add_edge(parent, child, kind)

    def chain(self, start: int, mark_left: bool, parts) -> None:
        """Hang zigzag ``parts`` (see :func:`zigzag_order`) below ``start``.

        An A-run hangs on the marked side and moves the mark to the right of
        its last node; a B-piece hangs on the marked side and moves the mark
        to its own left.
        """
        marked = start
        for part in parts:
            kind = EL if mark_left else ER
            if part[0] == "A":
                t, bot = self.group(part[1], part[2])
                self.edge(marked, t, kind)
                marked, mark_left = bot, False
            else:
                t = self.piece(part[1])
                self.edge(marked, t, kind)
                marked, mark_left = t, True

    def run(self) -> int:
        cid = self.forest.run()
        return NO_PIECE if cid is None else cid


@dataclass(frozen=True)
class ZigzagMerge:
    cluster: int
    parts: int
    merges: int
    rounds: int
    depth_increase: int


def balanced_zigzag_merge(store: Clusters, parts, mark_left: bool = True) -> ZigzagMerge:
    """Build the zigzag below a fresh top node and merge it into one cluster.

    ``parts`` counts every edge of the scratch tree: the placed clusters plus
    the connecting atomic edges.  ``k`` parts take ``k - 1`` merges.  An empty
    list gives ``NO_PIECE`` and no merges.
    """
    asm = _Assembly(store)
    asm.chain(asm.node(), mark_left, parts)
    f = asm.forest
    k = len(f.e_cluster)
    base = max((store.height[c] for c in f.e_cluster), default=0)
    rounds: List[int] = []
    cid = f.run(rounds)
    if cid is None:
        return ZigzagMerge(NO_PIECE, 0, 0, 0, 0)
    return ZigzagMerge(cid, k, k - 1, len(rounds), store.height[cid] - base)


def combine(store: Clusters, a: SymbolClusters, b: SymbolClusters,
            stats: Optional[ConversionStats] = None) -> SymbolClusters:
    """Pieces of ``CT(AB)`` from those of ``CT(A)`` and ``CT(B)``."""
    before = len(store)
    zig = _Assembly(store)
    if a.root <= b.root:
        x = b.root
        lt = tuple(g for g in a.rpath if g[0] < x)
        eq = [g for g in a.rpath if g[0] == x]
        gt = tuple(g for g in a.rpath if g[0] > x)
        b_eq = [g for g in b.rpath if g[0] == x]
        b_gt = tuple(g for g in b.rpath if g[0] > x)
        # B's root with everything that ends up in its left subtree
        zig.chain(zig.node(), True, zigzag_order(gt, b.lpath))
        zpiece = zig.run()
        if not eq and not b_eq:
            upper, tail = NO_PIECE, zpiece
        else:
            asm = _Assembly(store)
            if eq:
                _, attach = asm.group(eq[0][1], eq[0][2])
                broot = asm.node()
                asm.edge(attach, broot, ER)
            else:
                broot = asm.node()
            if b_eq:
                asm.hang(broot, zpiece)
                t, bottom = asm.group(b_eq[0][1], b_eq[0][2], with_tail=False)
                asm.edge(broot, t, ER)
                tail = b_eq[0][2]
            else:
                bottom, tail = broot, zpiece
            asm.forest.external[bottom] = True
            upper = asm.run()
            zig.pieces += asm.pieces
        out = SymbolClusters(a.root, a.lpath, lt + ((x, upper, tail),) + b_gt,
                             a.length + b.length)
    else:
        y = a.root
        keep = tuple(item for item in b.lpath if item[0] < y)
        zig_b = tuple(item for item in b.lpath if item[0] >= y)
        zig.chain(zig.node(), False, zigzag_order(a.rpath, zig_b))
        piece = zig.run()
        out = SymbolClusters(b.root, keep + ((y, piece),) + a.lpath, b.rpath,
                             a.length + b.length)
    if stats is not None:
        stats.new_nodes_per_rule.append(len(store) - before)
        stats.pieces_per_rule.append(zig.pieces)
    return out


def assemble_root(store: Clusters, sc: SymbolClusters) -> Optional[int]:
    """Merge the root and all pieces of the start symbol into one cluster."""
    asm = _Assembly(store)
    root = asm.node()
    prev = root
    for _, piece in sc.lpath:
        t = asm.piece(piece)
        asm.edge(prev, t, EL)
        prev = t
    prev = root
    for _, upper, tail in sc.rpath:
        t, bot = asm.group(upper, tail)
        asm.edge(prev, t, ER)
        prev = bot
    return asm.forest.run()


def symbol_clusters(slp: Slp, store: Optional[Clusters] = None,
                    stats: Optional[ConversionStats] = None):
    """Pieces for every reachable symbol, bottom-up; returns ``(store, table)``."""
    store = store if store is not None else Clusters(dedup=True)
    info = symbol_stats(slp)
    table: List[Optional[SymbolClusters]] = [None] * len(slp.rules)
    for v in info.order:
        r = slp.rules[v]
        if isinstance(r, Pair):
            table[v] = combine(store, table[r.left], table[r.right], stats)
        else:
            table[v] = SymbolClusters(r.value)
    return store, table


def convert(slp: Slp, stats: Optional[ConversionStats] = None) -> Optional[TopDag]:
    """Top-DAG of ``CT(expand(slp))``; ``None`` for a one-character string."""
    store, table = symbol_clusters(slp, stats=stats)
    sc = table[slp.start]
    if sc.length < 2:
        return None
    cid = assemble_root(store, sc)
    return TopDag(store, cid)
