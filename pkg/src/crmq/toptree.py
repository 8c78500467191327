"""Top-trees of binary trees, greedy construction and DAG compression.

Cluster kinds: ``EL``/``ER`` (one edge to a left/right child), ``V``
(vertical merge; first child is the lower cluster, second the upper one) and
``H`` (horizontal merge of a left and a right cluster sharing their top).

Merge nodes carry a bottom flag saying which child's bottom boundary
survives (``V``: ``B`` or ``-``; ``H``: ``L``, ``R`` or ``-``).  Without it
the unlabeled cluster shape does not determine where the rest of the tree
attaches.

Every cluster caches, in local inorder numbering: node count, top position,
bottom position (0 when absent), the sides used at top and bottom, and the
height of its top-tree.
"""
from __future__ import annotations

from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from .core import CartesianTree, TooSmallError, tree_from_links

EL, ER, V, H = 0, 1, 2, 3
KIND_NAMES = ("EL", "ER", "V", "H")
LEFT, RIGHT = 1, 2  # side bitmask
V_FLAGS = ("-", "B")
H_FLAGS = ("-", "L", "R")


class InvalidTopTree(ValueError):
    """A merge violates its kind's boundary-node conditions."""


class Clusters:
    """Cluster node store with metadata computed on insertion.

    With ``dedup`` identical ``(kind, flag, a, b)`` tuples are interned, which
    turns the store into a top-DAG.  A seeded deduplicated store starts with
    the atomic ``EL`` and ``ER`` clusters at ids 0 and 1.
    """

    def __init__(self, dedup: bool = True, seed: bool = True):
        self.dedup = dedup
        self.kind: List[int] = []
        self.flag: List[int] = []
        self.a: List[int] = []
        self.b: List[int] = []
        self.size: List[int] = []
        self.top: List[int] = []
        self.bottom: List[int] = []
        self.tsides: List[int] = []
        self.bsides: List[int] = []
        self.height: List[int] = []
        self.lo_first: List[int] = []  # V: first position of the lower cluster
        self.shared: List[int] = []  # local position of the common boundary node
        self._index: Dict[Tuple[int, int, int, int], int] = {}
        if dedup and seed:
            self.add(EL)
            self.add(ER)

    def __len__(self) -> int:
        return len(self.kind)

    def add(self, kind: int, flag: int = 0, a: int = -1, b: int = -1) -> int:
        key = (kind, flag, a, b)
        if self.dedup:
            k = self._index.get(key)
            if k is not None:
                return k
        if kind == EL:
            meta = (2, 2, 1, LEFT, 0, 0, 0, 0)
        elif kind == ER:
            meta = (2, 1, 2, RIGHT, 0, 0, 0, 0)
        elif kind == V:
            meta = self._vertical(flag, a, b)
        elif kind == H:
            meta = self._horizontal(flag, a, b)
        else:
            raise InvalidTopTree(f"unknown cluster kind {kind}")
        k = len(self.kind)
        self.kind.append(kind)
        self.flag.append(flag)
        self.a.append(a)
        self.b.append(b)
        for arr, val in zip((self.size, self.top, self.bottom, self.tsides, self.bsides,
                             self.height, self.lo_first, self.shared), meta):
            arr.append(val)
        if self.dedup:
            self._index[key] = k
        return k

    def _vertical(self, flag, lo, up):
        if flag not in (0, 1):
            raise InvalidTopTree(f"bad vertical flag {flag}")
        bu = self.bottom[up]
        if not bu:
            raise InvalidTopTree(f"upper cluster {up} has no bottom boundary")
        if self.tsides[lo] & self.bsides[up]:
            raise InvalidTopTree("lower cluster overlaps the upper cluster at the shared node")
        ls = self.size[lo]
        first = bu
        shared = first + self.top[lo] - 1
        top_u = self.top[up]
        top = top_u if top_u < bu else top_u + ls - 1
        if flag:
            if not self.bottom[lo]:
                raise InvalidTopTree(f"lower cluster {lo} has no bottom boundary")
            bottom, bsides = first + self.bottom[lo] - 1, self.bsides[lo]
        else:
            bottom, bsides = 0, 0
        height = 1 + max(self.height[lo], self.height[up])
        return (self.size[up] + ls - 1, top, bottom, self.tsides[up], bsides, height, first, shared)

    def _horizontal(self, flag, left, right):
        if flag not in (0, 1, 2):
            raise InvalidTopTree(f"bad horizontal flag {flag}")
        if self.tsides[left] != LEFT or self.tsides[right] != RIGHT:
            raise InvalidTopTree("horizontal merge needs a left-side and a right-side cluster")
        sa = self.size[left]
        if flag == 1:
            if not self.bottom[left]:
                raise InvalidTopTree(f"left cluster {left} has no bottom boundary")
            bottom, bsides = self.bottom[left], self.bsides[left]
        elif flag == 2:
            if not self.bottom[right]:
                raise InvalidTopTree(f"right cluster {right} has no bottom boundary")
            bottom, bsides = self.bottom[right] + sa - 1, self.bsides[right]
        else:
            bottom, bsides = 0, 0
        height = 1 + max(self.height[left], self.height[right])
        return (sa + self.size[right] - 1, sa, bottom, LEFT | RIGHT, bsides, height, 0, sa)

    def node(self, k: int) -> Tuple[int, int, int, int]:
        return self.kind[k], self.flag[k], self.a[k], self.b[k]

    def reachable(self, root: int) -> List[int]:
        """Nodes reachable from ``root``, children before parents."""
        seen = set()
        order: List[int] = []
        stack = [(root, False)]
        while stack:
            k, done = stack.pop()
            if done:
                order.append(k)
                continue
            if k in seen:
                continue
            seen.add(k)
            stack.append((k, True))
            if self.kind[k] >= V:
                for c in (self.b[k], self.a[k]):
                    if c not in seen:
                        stack.append((c, False))
        return order


class TopTree:
    """A top-tree before DAG compression (every cluster occurrence kept)."""

    def __init__(self, clusters: Clusters, root: int):
        self.clusters = clusters
        self.root = root

    @property
    def node_count(self) -> int:
        return len(self.clusters.reachable(self.root))

    @property
    def leaf_count(self) -> int:
        c = self.clusters
        return sum(1 for k in c.reachable(self.root) if c.kind[k] < V)

    @property
    def height(self) -> int:
        return self.clusters.height[self.root]

    def canonical(self) -> List[Tuple[int, int, int, int]]:
        """Post-order node list with children renumbered by post-order rank."""
        return _canonical(self.clusters, self.root)


def _canonical(c: Clusters, root: int) -> List[Tuple[int, int, int, int]]:
    out: List[Tuple[int, int, int, int]] = []
    rank: List[int] = []
    stack = [(root, False)]
    while stack:
        k, done = stack.pop()
        if done:
            if c.kind[k] >= V:
                rb = rank.pop()
                ra = rank.pop()
                out.append((c.kind[k], c.flag[k], ra, rb))
            else:
                out.append((c.kind[k], 0, -1, -1))
            rank.append(len(out) - 1)
            continue
        stack.append((k, True))
        if c.kind[k] >= V:
            stack.append((c.b[k], False))
            stack.append((c.a[k], False))
    return out


class TopDag:
    """DAG-compressed top-tree: nodes ``0..size-1`` in children-first order."""

    def __init__(self, clusters: Clusters, root: int, n: Optional[int] = None):
        if not clusters.dedup:
            raise ValueError("TopDag needs a deduplicated cluster store")
        store = Clusters(dedup=True, seed=False)
        remap: Dict[int, int] = {}
        for old in clusters.reachable(root):
            kind, flag, a, b = clusters.node(old)
            remap[old] = store.add(kind, flag, remap[a], remap[b]) if kind >= V else store.add(kind)
        self.store = store
        self.root = remap[root]
        if store.kind[self.root] >= V and store.bottom[self.root]:
            raise InvalidTopTree("root cluster must not have a bottom boundary")
        self.n = store.size[self.root]
        if n is not None and n != self.n:
            raise InvalidTopTree(f"declared n={n} but the root cluster spans {self.n} nodes")

    @property
    def node_count(self) -> int:
        return len(self.store)

    @property
    def height(self) -> int:
        return self.store.height[self.root]

    def __eq__(self, other):
        if not isinstance(other, TopDag):
            return NotImplemented
        return self.canonical_nodes() == other.canonical_nodes()

    def canonical_nodes(self):
        return [self.store.node(k) for k in range(len(self.store))], self.root

    def unfold(self) -> TopTree:
        """Expand shared subtrees back into a plain top-tree."""
        tree = Clusters(dedup=False)
        s = self.store
        new_id: List[int] = []
        stack = [(self.root, False)]
        while stack:
            k, done = stack.pop()
            if done:
                if s.kind[k] >= V:
                    nb = new_id.pop()
                    na = new_id.pop()
                    new_id.append(tree.add(s.kind[k], s.flag[k], na, nb))
                else:
                    new_id.append(tree.add(s.kind[k]))
                continue
            stack.append((k, True))
            if s.kind[k] >= V:
                stack.append((s.b[k], False))
                stack.append((s.a[k], False))
        return TopTree(tree, new_id[0])


def dag_compress(tt: TopTree) -> TopDag:
    store = Clusters(dedup=True, seed=False)
    c = tt.clusters
    remap: Dict[int, int] = {}
    for k in c.reachable(tt.root):
        kind, flag, a, b = c.node(k)
        remap[k] = store.add(kind, flag, remap[a], remap[b]) if kind >= V else store.add(kind)
    return TopDag(store, remap[tt.root])


def cluster_edges(store: Clusters, root: int) -> Tuple[int, List[Tuple[int, int, int]]]:
    """Unfold one cluster into ``(size, [(parent pos, child pos, side)])`` in local inorder."""
    results: List[List[Tuple[int, int, int]]] = []
    stack = [(root, False)]
    kind, flg, A, B = store.kind, store.flag, store.a, store.b
    while stack:
        k, done = stack.pop()
        if not done:
            if kind[k] >= V:
                stack.append((k, True))
                stack.append((B[k], False))
                stack.append((A[k], False))
            elif kind[k] == EL:
                results.append([(2, 1, LEFT)])
            else:
                results.append([(1, 2, RIGHT)])
            continue
        eb = results.pop()
        ea = results.pop()
        a, b = A[k], B[k]
        if kind[k] == V:
            lo_edges, up_edges = ea, eb
            bu = store.bottom[b]
            grow = store.size[a] - 1
            shared = store.shared[k]
            first = store.lo_first[k]

            def mu(p, bu=bu, grow=grow, shared=shared):
                return p if p < bu else (shared if p == bu else p + grow)

            merged = [(mu(p), mu(q), sd) for p, q, sd in up_edges]
            off = first - 1
            merged.extend((p + off, q + off, sd) for p, q, sd in lo_edges)
        else:
            off = store.size[a] - 1
            merged = ea + [(p + off, q + off, sd) for p, q, sd in eb]
        results.append(merged)
    return store.size[root], results[0]


def expand_topdag(dag: TopDag) -> CartesianTree:
    """Unfold the DAG all the way to the original binary tree."""
    n, edges = cluster_edges(dag.store, dag.root)
    left = [0] * (n + 1)
    right = [0] * (n + 1)
    for p, q, side in edges:
        links = left if side == LEFT else right
        if links[p]:
            raise InvalidTopTree(f"node {p} receives two {KIND_NAMES[side - 1]} children")
        links[p] = q
    return tree_from_links(n, left, right)


# ---------------------------------------------------------------- greedy merging

class MergeForest:
    """A tree whose edges are clusters, merged greedily into one cluster.

    Each round does every allowed horizontal merge, then every allowed
    vertical merge.  A horizontal merge at ``v`` joins v's two child edges if
    at most one lower endpoint is a boundary.  A vertical merge joins the
    edges above and below a node with exactly one child edge; along every
    maximal such chain edges are paired from the bottom up.  Nodes are visited
    in id order, which callers make equal to inorder.

    A node marked ``external`` is treated as a boundary even without child
    edges (something outside this forest hangs there).
    """

    def __init__(self, store: Clusters):
        self.store = store
        self.children: List[List[int]] = []
        self.parent_edge: List[int] = []
        self.external: List[bool] = []
        self.e_cluster: List[int] = []
        self.e_top: List[int] = []
        self.e_low: List[int] = []

    def add_node(self, external: bool = False) -> int:
        self.children.append([])
        self.parent_edge.append(-1)
        self.external.append(external)
        return len(self.children) - 1

    def add_edge(self, top: int, low: int, cluster: int) -> int:
        e = len(self.e_cluster)
        self.e_cluster.append(cluster)
        self.e_top.append(top)
        self.e_low.append(low)
        self.children[top].append(e)
        if self.parent_edge[low] >= 0:
            raise ValueError(f"node {low} already has a parent edge")
        self.parent_edge[low] = e
        return e

    def _boundary(self, v: int) -> bool:
        return bool(self.children[v]) or self.external[v]

    def _new_edge(self, top: int, low: int, cluster: int) -> int:
        e = len(self.e_cluster)
        self.e_cluster.append(cluster)
        self.e_top.append(top)
        self.e_low.append(low)
        self.parent_edge[low] = e
        return e

    def run(self, rounds: Optional[List[int]] = None) -> Optional[int]:
        """Merge everything; return the final cluster id (``None`` if edgeless)."""
        store = self.store
        children, parent_edge = self.children, self.parent_edge
        e_cluster, e_top, e_low = self.e_cluster, self.e_top, self.e_low
        live = sum(len(ch) for ch in children)
        if live == 0:
            return None
        tsides = store.tsides
        active = [v for v in range(len(children)) if children[v] or parent_edge[v] >= 0]
        while live > 1:
            before = live
            # horizontal phase
            for v in active:
                ch = children[v]
                if len(ch) != 2:
                    continue
                e1, e2 = ch
                if tsides[e_cluster[e1]] != LEFT:
                    e1, e2 = e2, e1
                l1, l2 = e_low[e1], e_low[e2]
                b1, b2 = self._boundary(l1), self._boundary(l2)
                if b1 and b2:
                    continue
                flag = 1 if b1 else (2 if b2 else 0)
                cid = store.add(H, flag, e_cluster[e1], e_cluster[e2])
                low = l2 if b2 else l1
                other = l1 if low == l2 else l2
                parent_edge[other] = -1
                ne = self._new_edge(v, low, cid)
                children[v] = [ne]
                live -= 1
            # vertical phase: collect disjoint pairs first
            pairs = []
            for v1 in active:
                pe = parent_edge[v1]
                if pe < 0 or self._is_middle(v1):
                    continue
                lower = pe
                while True:
                    mid = e_top[lower]
                    if not self._is_middle(mid):
                        break
                    upper = parent_edge[mid]
                    pairs.append((lower, upper))
                    nxt = e_top[upper]
                    if not self._is_middle(nxt):
                        break
                    lower = parent_edge[nxt]
            for lower, upper in pairs:
                low = e_low[lower]
                mid = e_low[upper]
                top = e_top[upper]
                flag = 1 if self._boundary(low) else 0
                cid = store.add(V, flag, e_cluster[lower], e_cluster[upper])
                ne = self._new_edge(top, low, cid)
                ch = children[top]
                ch[ch.index(upper)] = ne
                children[mid] = []
                parent_edge[mid] = -1
                live -= 1
            if live == before:
                raise InvalidTopTree("greedy merging made no progress")
            if rounds is not None:
                rounds.append(live)
            active = [v for v in active if children[v] or parent_edge[v] >= 0]
        for v in active:
            if children[v]:
                return e_cluster[children[v][0]]
        raise AssertionError("unreachable")

    def _is_middle(self, v: int) -> bool:
        return (len(self.children[v]) == 1 and self.parent_edge[v] >= 0
                and not self.external[v])


def build_greedy_toptree(ct: CartesianTree, dedup: bool = False) -> TopTree:
    """Greedy top-tree of a binary tree (horizontal phase, then vertical, per round)."""
    if ct.n < 2:
        raise TooSmallError("a top-tree needs at least one edge (n >= 2)")
    store = Clusters(dedup=dedup)
    if dedup:
        el, er = 0, 1
    else:
        el = er = -1
    forest = MergeForest(store)
    for _ in range(ct.n + 1):
        forest.add_node()
    for v in range(1, ct.n + 1):
        for c, kind in ((ct.left[v], EL), (ct.right[v], ER)):
            if c:
                cid = (el if kind == EL else er) if dedup else store.add(kind)
                forest.add_edge(v, c, cid)
    root = forest.run()
    return TopTree(store, root)


def build_greedy_topdag(ct: CartesianTree) -> TopDag:
    """Greedy top-tree interned on the fly (same result as ``dag_compress``)."""
    tt = build_greedy_toptree(ct, dedup=True)
    return TopDag(tt.clusters, tt.root)


# ---------------------------------------------------------------- file format

def format_topdag(dag: TopDag) -> str:
    s = dag.store
    lines = [f"topdag {len(s)} {dag.root} {dag.n}"]
    for k in range(len(s)):
        kind = s.kind[k]
        if kind < V:
            lines.append(f"{k} {KIND_NAMES[kind]}")
        else:
            flags = V_FLAGS if kind == V else H_FLAGS
            lines.append(f"{k} {KIND_NAMES[kind]} {s.a[k]} {s.b[k]} {flags[s.flag[k]]}")
    return "\n".join(lines) + "\n"


def parse_topdag(text: str) -> TopDag:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or lines[0][0] != "topdag" or len(lines[0]) != 4:
        raise InvalidTopTree("missing 'topdag <node_count> <root_id> <n>' header")
    count, root, n = (int(t) for t in lines[0][1:])
    if len(lines) - 1 != count:
        raise InvalidTopTree(f"header declares {count} nodes, found {len(lines) - 1}")
    nodes: Dict[int, Tuple[int, int, int, int]] = {}
    for toks in lines[1:]:
        k = int(toks[0])
        if k in nodes or not 0 <= k < count:
            raise InvalidTopTree(f"bad or duplicate node id {k}")
        name = toks[1]
        if name in ("EL", "ER") and len(toks) == 2:
            nodes[k] = (KIND_NAMES.index(name), 0, -1, -1)
        elif name in ("V", "H") and len(toks) in (4, 5):
            flags = V_FLAGS if name == "V" else H_FLAGS
            flag_tok = toks[4] if len(toks) == 5 else "-"
            if flag_tok not in flags:
                raise InvalidTopTree(f"bad flag {flag_tok!r} for {name} node {k}")
            nodes[k] = (KIND_NAMES.index(name), flags.index(flag_tok), int(toks[2]), int(toks[3]))
        else:
            raise InvalidTopTree(f"malformed node line: {' '.join(toks)}")
    if root not in nodes:
        raise InvalidTopTree(f"root {root} is not a node")
    # insert children first; ids may appear in any order
    store = Clusters(dedup=True, seed=False)
    remap: Dict[int, int] = {}
    state: Dict[int, int] = {}
    stack = [(root, False)]
    while stack:
        k, done = stack.pop()
        kind, flag, a, b = nodes[k]
        if done:
            remap[k] = store.add(kind, flag, remap[a], remap[b]) if kind >= V else store.add(kind)
            state[k] = 2
            continue
        if state.get(k) == 2:
            continue
        if state.get(k) == 1:
            raise InvalidTopTree(f"cycle through node {k}")
        state[k] = 1
        stack.append((k, True))
        if kind >= V:
            for c in (b, a):
                if c not in nodes:
                    raise InvalidTopTree(f"node {k} references missing node {c}")
                if state.get(c) == 1:
                    raise InvalidTopTree(f"cycle through node {c}")
                if state.get(c) != 2:
                    stack.append((c, False))
    return TopDag(store, remap[root], n)


def read_topdag(path: Union[str, Path]) -> TopDag:
    return parse_topdag(Path(path).read_text())


def write_topdag(dag: TopDag, path: Union[str, Path]) -> None:
    Path(path).write_text(format_topdag(dag))
