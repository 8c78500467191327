"""Lower-bound string family: small SLPs whose Cartesian trees resist top-DAG compression.

Blocks are built from the strings ``X_1 .. X_m`` (``m = 2**ell - 1``), all
length-``ell`` words over ``{sigma-2, sigma-1}`` in lexicographic order
except the all-``(sigma-1)`` word.  With ``X_{k,i} = X_k (sigma-3) X_i``::

    A_i = X_{1,i} 2 X_{2,i} 4 ... X_{s',i} (2s')
    B_j = (2s'-1) X_{s',j} (2s'-3) ... 3 X_{2,j} 1 X_{1,j}
    S   = A_1 B_1 0  A_1 B_2 0  ...  A_m B_m 0

where ``s' = (sigma - 4) // 2``.  In ``CT(A_i B_j)`` the separator node
``u_k`` (label ``2k-1``) has left child ``v_k`` (label ``2k``); the right
subtree of ``u_k`` is ``CT(X_{k,j})`` and the left subtree of ``v_k`` is
``CT(X_{k,i})``.  Such an edge is a zigzag.  Zigzags are told apart by
the shapes of their two hanging subtrees only, since the top-DAG sees an
unlabeled tree.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Tuple

from .core import CartesianTree, Sequence, build_cartesian
from .slp import Slp, SlpBuilder


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class FamilyParams:
    sigma: int
    ell: int

    def __post_init__(self):
        if self.ell < 1:
            raise FamilyError("ell must be >= 1")
        if self.sigma_prime < 1:
            raise FamilyError(f"sigma={self.sigma} too small: need (sigma-4)//2 >= 1")
        if self.m < self.sigma_prime:
            raise FamilyError(f"need 2**ell - 1 >= sigma' ({self.m} < {self.sigma_prime})")

    @property
    def sigma_prime(self) -> int:
        return (self.sigma - 4) // 2

    @property
    def m(self) -> int:
        """Number of X strings."""
        return (1 << self.ell) - 1

    @property
    def s(self) -> int:
        """SLP size scale ``2**ell * s' + 4**ell``."""
        return (1 << self.ell) * self.sigma_prime + (1 << (2 * self.ell))

    @property
    def length(self) -> int:
        sp, ell = self.sigma_prime, self.ell
        return self.m ** 2 * (2 * sp * (2 * ell + 1) + 2 * sp + 1)


def x_strings(p: FamilyParams) -> List[Tuple[int, ...]]:
    lo, hi = p.sigma - 2, p.sigma - 1
    words = list(product((lo, hi), repeat=p.ell))
    return words[:-1]


def x_pair(p: FamilyParams, xs, k: int, i: int) -> Tuple[int, ...]:
    """``X_{k,i}`` (1-based indices)."""
    return xs[k - 1] + (p.sigma - 3,) + xs[i - 1]


def block_a(p: FamilyParams, i: int, xs=None) -> List[int]:
    xs = xs or x_strings(p)
    out: List[int] = []
    for k in range(1, p.sigma_prime + 1):
        out += x_pair(p, xs, k, i)
        out.append(2 * k)
    return out


def block_b(p: FamilyParams, j: int, xs=None) -> List[int]:
    xs = xs or x_strings(p)
    out: List[int] = []
    for k in range(p.sigma_prime, 0, -1):
        out.append(2 * k - 1)
        out += x_pair(p, xs, k, j)
    return out


def gen_family(p: FamilyParams) -> Sequence:
    xs = x_strings(p)
    a = [block_a(p, i, xs) for i in range(1, p.m + 1)]
    b = [block_b(p, j, xs) for j in range(1, p.m + 1)]
    out: List[int] = []
    for i in range(p.m):
        for j in range(p.m):
            out += a[i]
            out += b[j]
            out.append(0)
    return Sequence(tuple(out), p.sigma)


def family_slp(p: FamilyParams) -> Slp:
    """Grammar sharing every ``X_i``, ``X_{k,i}``, ``A_i`` and ``B_j``."""
    g = SlpBuilder()
    lo, hi, sep = g.terminal(p.sigma - 2), g.terminal(p.sigma - 1), g.terminal(p.sigma - 3)
    # prefix trie of the X words
    level = [g.terminal(p.sigma - 2), g.terminal(p.sigma - 1)]
    for _ in range(p.ell - 1):
        level = [g.pair(w, c) for w in level for c in (lo, hi)]
    xsym = level[:-1]
    y = [g.pair(xsym[k], sep) for k in range(p.sigma_prime)]

    def xp(k: int, i: int) -> int:
        return g.pair(y[k - 1], xsym[i - 1])

    a_sym, b_sym = [], []
    for i in range(1, p.m + 1):
        parts = []
        for k in range(1, p.sigma_prime + 1):
            parts += [xp(k, i), g.terminal(2 * k)]
        a_sym.append(g.concat_balanced(parts))
    for j in range(1, p.m + 1):
        parts = []
        for k in range(p.sigma_prime, 0, -1):
            parts += [g.terminal(2 * k - 1), xp(k, j)]
        b_sym.append(g.concat_balanced(parts))
    zero = g.terminal(0)
    blocks = [g.pair(g.pair(a_sym[i], b_sym[j]), zero) for i in range(p.m) for j in range(p.m)]
    return g.build(g.concat_pairing(blocks))


class ShapeTable:
    """Hash-consing of unlabeled binary tree shapes; 0 is the empty tree."""

    def __init__(self):
        self.ids: Dict[Tuple[int, int], int] = {}

    def intern(self, left: int, right: int) -> int:
        key = (left, right)
        k = self.ids.get(key)
        if k is None:
            k = len(self.ids) + 1
            self.ids[key] = k
        return k

    def shapes(self, ct: CartesianTree) -> List[int]:
        """Shape id of the subtree rooted at every node (index 0 unused)."""
        out = [0] * (ct.n + 1)
        for v in reversed(ct.preorder()):
            out[v] = self.intern(out[ct.left[v]], out[ct.right[v]])
        return out

    def of(self, ct: CartesianTree) -> int:
        return self.shapes(ct)[ct.root] if ct.n else 0


def x_shape_classes(p: FamilyParams, table: ShapeTable = None) -> List[int]:
    """Shape id of ``CT(X_i)`` for ``i = 1..m`` (equal ids mean equal trees)."""
    table = table or ShapeTable()
    return [table.of(build_cartesian(Sequence(x, p.sigma))) for x in x_strings(p)]


def zigzags(ct: CartesianTree, p: FamilyParams):
    """Distinct zigzags in ``ct`` as ``(class of X_k, class of X_i, class of X_j)``.

    Classes are shape ids of the X trees, so this is ``(k, i, j)`` up to
    renaming whenever those trees are pairwise distinct.  Words differing only
    in their last letter have the same tree, so in general several triples
    share one identity.
    """
    table = ShapeTable()
    cls = x_shape_classes(p, table)
    k_classes = set(cls[:p.sigma_prime])
    # CT(X_{k,i}) is the separator with CT(X_k) on the left and CT(X_i) on the right
    catalog: Dict[int, Tuple[int, int]] = {}
    for ck in k_classes:
        for ci in set(cls):
            catalog[table.intern(ck, ci)] = (ck, ci)
    if ct.n == 0:
        return set()
    shape = table.shapes(ct)
    found = set()
    for u in range(1, ct.n + 1):
        v = ct.left[u]
        if not v:
            continue
        right = catalog.get(shape[ct.right[u]])
        left = catalog.get(shape[ct.left[v]])
        if right and left and right[0] == left[0]:
            found.add((right[0], left[1], right[1]))
    return found


def count_zigzags(ct: CartesianTree, p: FamilyParams) -> int:
    return len(zigzags(ct, p))


def predicted_zigzags(p: FamilyParams) -> int:
    """``s' * m**2``, the count when all X trees are distinct."""
    return p.sigma_prime * p.m ** 2


def x_trees_distinct(p: FamilyParams) -> bool:
    return len(set(x_shape_classes(p))) == p.m
