"""Input sequences, brute-force RMQ/LCA oracles and Cartesian trees.

All positions are 1-based: ``S[1..n]`` and Cartesian tree node ``i`` is the
node visited ``i``-th by an inorder traversal.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Optional, Sequence as _Seq, Union


class RangeError(IndexError):
    """Query indices outside ``1..n`` or with ``i > j``."""


class TooSmallError(ValueError):
    """Structure needs at least one tree edge (``n >= 2``)."""


@dataclass(frozen=True)
class Sequence:
    """The string ``S`` of non-negative integers over ``[0, sigma)``."""

    values: tuple
    sigma: int = -1

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if any(v < 0 for v in vals):
            raise ValueError("sequence values must be non-negative")
        top = max(vals) + 1 if vals else 0
        sigma = top if self.sigma is None or self.sigma < 0 else int(self.sigma)
        if sigma < top:
            raise ValueError(f"sigma={sigma} is below max value + 1 = {top}")
        object.__setattr__(self, "sigma", sigma)

    @property
    def n(self) -> int:
        return len(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> int:
        """1-based access."""
        if not 1 <= i <= len(self.values):
            raise RangeError(f"index {i} outside 1..{len(self.values)}")
        return self.values[i - 1]


def as_sequence(values: Union["Sequence", Iterable[int]], sigma: Optional[int] = None) -> Sequence:
    if isinstance(values, Sequence):
        if sigma is None or sigma == values.sigma:
            return values
        return Sequence(values.values, sigma)
    return Sequence(tuple(values), -1 if sigma is None else sigma)


def check_range(n: int, i: int, j: int) -> None:
    if not (1 <= i <= j <= n):
        raise RangeError(f"invalid range ({i}, {j}) for n={n}")


def rmq_naive(seq: Union[Sequence, _Seq[int]], i: int, j: int) -> int:
    """Leftmost position of the minimum of ``S[i..j]`` by linear scan."""
    vals = seq.values if isinstance(seq, Sequence) else seq
    check_range(len(vals), i, j)
    best = i
    bv = vals[i - 1]
    for k in range(i, j):
        if vals[k] < bv:
            bv = vals[k]
            best = k + 1
    return best


def rmq_all_pairs(seq: Union[Sequence, _Seq[int]]) -> List[List[int]]:
    """``table[i][j] = rmq_naive(S, i, j)`` for all ``i <= j`` in O(n^2).

    Rows are 1-based (row 0 and column entries ``< i`` are unused).
    """
    vals = seq.values if isinstance(seq, Sequence) else seq
    n = len(vals)
    table: List[List[int]] = [[]]
    for i in range(1, n + 1):
        row = [0] * (n + 1)
        best = i
        bv = vals[i - 1]
        for j in range(i, n + 1):
            if vals[j - 1] < bv:
                bv = vals[j - 1]
                best = j
            row[j] = best
        table.append(row)
    return table


@dataclass(frozen=True)
class CartesianTree:
    """Binary tree on nodes ``1..n``; ``0`` encodes a missing link."""

    n: int
    root: int
    left: tuple
    right: tuple
    parent: tuple

    def __eq__(self, other):
        if not isinstance(other, CartesianTree):
            return NotImplemented
        return (self.n, self.root, self.left, self.right) == (
            other.n, other.root, other.left, other.right)

    def __hash__(self):
        return hash((self.n, self.root, self.left, self.right))

    def children(self, v: int):
        return self.left[v], self.right[v]

    def inorder(self) -> List[int]:
        out: List[int] = []
        stack: List[int] = []
        v = self.root
        while stack or v:
            while v:
                stack.append(v)
                v = self.left[v]
            v = stack.pop()
            out.append(v)
            v = self.right[v]
        return out

    def subtree_size(self) -> List[int]:
        size = [0] * (self.n + 1)
        for v in reversed(self.preorder()):
            size[v] = 1 + size[self.left[v]] + size[self.right[v]]
        return size

    def preorder(self) -> List[int]:
        out: List[int] = []
        stack = [self.root] if self.root else []
        while stack:
            v = stack.pop()
            out.append(v)
            if self.right[v]:
                stack.append(self.right[v])
            if self.left[v]:
                stack.append(self.left[v])
        return out

    def depth(self) -> List[int]:
        d = [0] * (self.n + 1)
        for v in self.preorder():
            p = self.parent[v]
            d[v] = d[p] + 1 if p else 0
        return d


def tree_from_links(n: int, left: _Seq[int], right: _Seq[int]) -> CartesianTree:
    """Assemble a tree from child links, deriving parent links and the root."""
    parent = [0] * (n + 1)
    for v in range(1, n + 1):
        for c in (left[v], right[v]):
            if c:
                if parent[c]:
                    raise ValueError(f"node {c} has two parents")
                parent[c] = v
    roots = [v for v in range(1, n + 1) if not parent[v]]
    if n and len(roots) != 1:
        raise ValueError(f"expected one root, found {len(roots)}")
    return CartesianTree(n, roots[0] if n else 0, tuple(left), tuple(right), tuple(parent))


def build_cartesian(seq: Union[Sequence, _Seq[int]]) -> CartesianTree:
    """Cartesian tree with the leftmost minimum at the root (right-spine stack)."""
    vals = seq.values if isinstance(seq, Sequence) else seq
    n = len(vals)
    left = [0] * (n + 1)
    right = [0] * (n + 1)
    parent = [0] * (n + 1)
    stack: List[int] = []
    for k in range(1, n + 1):
        x = vals[k - 1]
        last = 0
        # strict comparison keeps an earlier equal value above a later one
        while stack and vals[stack[-1] - 1] > x:
            last = stack.pop()
        if last:
            left[k] = last
            parent[last] = k
        if stack:
            right[stack[-1]] = k
            parent[k] = stack[-1]
        stack.append(k)
    root = stack[0] if stack else 0
    return CartesianTree(n, root, tuple(left), tuple(right), tuple(parent))


def lca_naive(ct: CartesianTree, i: int, j: int) -> int:
    """LCA by walking parent pointers."""
    for v in (i, j):
        if not 1 <= v <= ct.n:
            raise RangeError(f"node {v} outside 1..{ct.n}")
    seen = set()
    v = i
    while v:
        seen.add(v)
        v = ct.parent[v]
    v = j
    while v not in seen:
        v = ct.parent[v]
    return v


def check_cartesian(ct: CartesianTree, seq: Union[Sequence, _Seq[int]]) -> None:
    """Assert heap order, inorder identity and the leftmost-minimum tie rule."""
    vals = seq.values if isinstance(seq, Sequence) else seq
    assert ct.n == len(vals)
    assert ct.inorder() == list(range(1, ct.n + 1)), "inorder must be 1..n"
    for v in range(1, ct.n + 1):
        lc, rc = ct.left[v], ct.right[v]
        if lc:
            # strict, otherwise an equal value to the left would be the root
            assert vals[lc - 1] > vals[v - 1], f"left child {lc} of {v} breaks tie rule"
        if rc:
            assert vals[rc - 1] >= vals[v - 1], f"right child {rc} of {v} breaks heap order"


# ---------------------------------------------------------------- file format

def parse_sequence(text: str, sigma: Optional[int] = None) -> Sequence:
    """Whitespace-separated integers, optional ``# sigma=<int>`` header line."""
    header_sigma = None
    values: List[int] = []
    for line in text.splitlines():
        s = line.strip()
        if s.startswith("#"):
            body = s[1:].strip()
            if body.startswith("sigma="):
                header_sigma = int(body.split("=", 1)[1])
            continue
        values.extend(int(tok) for tok in s.split())
    chosen = sigma if sigma is not None else header_sigma
    return Sequence(tuple(values), -1 if chosen is None else chosen)


def format_sequence(seq: Sequence, with_sigma: bool = True) -> str:
    head = f"# sigma={seq.sigma}\n" if with_sigma else ""
    return head + " ".join(map(str, seq.values)) + "\n"


def read_sequence(path: Union[str, Path], sigma: Optional[int] = None) -> Sequence:
    return parse_sequence(Path(path).read_text(), sigma)


def write_sequence(seq: Sequence, path: Union[str, Path]) -> None:
    Path(path).write_text(format_sequence(seq))


FIGURE1 = Sequence((2, 3, 1, 1, 0, 1, 2, 2, 1, 0, 2, 3, 1, 3))
