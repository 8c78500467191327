"""Range minimum queries on grammar-compressed and top-DAG-compressed strings."""
from .core import (FIGURE1, CartesianTree, RangeError, Sequence, TooSmallError,
                   build_cartesian, lca_naive, read_sequence, rmq_naive, write_sequence)
from .slp import Pair, Slp, SlpError, Terminal, build_pairing_slp, expand, read_slp, validate, write_slp
from .slp_rmq import HeavyForest, build_heavy_forest
from .toptree import (TopDag, build_greedy_topdag, build_greedy_toptree, dag_compress,
                      expand_topdag, read_topdag, write_topdag)
from .toptree_lca import lca
from .slp2toptree import convert
from .lowerbound import FamilyParams, family_slp, gen_family

__all__ = [
    "FIGURE1", "CartesianTree", "RangeError", "Sequence", "TooSmallError",
    "build_cartesian", "lca_naive", "read_sequence", "rmq_naive", "write_sequence",
    "Pair", "Slp", "SlpError", "Terminal", "build_pairing_slp", "expand", "read_slp",
    "validate", "write_slp", "HeavyForest", "build_heavy_forest", "TopDag",
    "build_greedy_topdag", "build_greedy_toptree", "dag_compress", "expand_topdag",
    "read_topdag", "write_topdag", "lca", "convert", "FamilyParams", "family_slp",
    "gen_family",
]
