"""Straight-line programs: model, validation, expansion, statistics, builder."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, List, NamedTuple, Optional, Tuple, Union

from .core import Sequence, as_sequence

DEFAULT_EXPAND_CAP = 1 << 24


class SlpError(ValueError):
    """Malformed grammar: cycle, dangling reference or empty rule list."""


class ExpansionCapError(SlpError):
    pass


class Terminal(NamedTuple):
    value: int


class Pair(NamedTuple):
    left: int
    right: int


Rule = Union[Terminal, Pair]


@dataclass(frozen=True)
class Slp:
    rules: tuple
    start: int

    @property
    def size(self) -> int:
        return len(self.rules)

    def __len__(self) -> int:
        return len(self.rules)


def _topo_order(rules: tuple, start: int) -> List[int]:
    """Symbols reachable from ``start``, children before parents."""
    n_rules = len(rules)
    state = [0] * n_rules  # 0 new, 1 on stack, 2 done
    order: List[int] = []
    stack: List[Tuple[int, int]] = [(start, 0)]
    while stack:
        v, phase = stack.pop()
        if phase == 0:
            if state[v] == 2:
                continue
            if state[v] == 1:
                raise SlpError(f"cyclic grammar through symbol {v}")
            state[v] = 1
            stack.append((v, 1))
            r = rules[v]
            if isinstance(r, Pair):
                for c in (r.right, r.left):
                    if not 0 <= c < n_rules:
                        raise SlpError(f"rule {v} references missing symbol {c}")
                    if state[c] == 1:
                        raise SlpError(f"cyclic grammar through symbol {c}")
                    if state[c] == 0:
                        stack.append((c, 0))
        else:
            state[v] = 2
            order.append(v)
    return order


def validate(slp: Slp) -> int:
    """Check the grammar and return the length of the derived string."""
    if not slp.rules:
        raise SlpError("empty rule list")
    if not 0 <= slp.start < len(slp.rules):
        raise SlpError(f"start symbol {slp.start} does not exist")
    for k, r in enumerate(slp.rules):
        if isinstance(r, Terminal):
            if r.value < 0:
                raise SlpError(f"terminal {k} has negative value")
        elif isinstance(r, Pair):
            for c in r:
                if not 0 <= c < len(slp.rules):
                    raise SlpError(f"rule {k} references missing symbol {c}")
        else:
            raise SlpError(f"rule {k} is neither terminal nor pair")
    order = _topo_order(slp.rules, slp.start)
    length: Dict[int, int] = {}
    for v in order:
        r = slp.rules[v]
        length[v] = 1 if isinstance(r, Terminal) else length[r.left] + length[r.right]
    return length[slp.start]


def prune(slp: Slp) -> Slp:
    """Drop unreachable rules and renumber children-first."""
    order = _topo_order(slp.rules, slp.start)
    new_id = {v: k for k, v in enumerate(order)}
    rules = []
    for v in order:
        r = slp.rules[v]
        rules.append(r if isinstance(r, Terminal) else Pair(new_id[r.left], new_id[r.right]))
    return Slp(tuple(rules), new_id[slp.start])


def expand(slp: Slp, cap: int = DEFAULT_EXPAND_CAP, sigma: Optional[int] = None) -> Sequence:
    n = validate(slp)
    if n > cap:
        raise ExpansionCapError(f"expansion length {n} exceeds cap {cap}")
    out: List[int] = []
    stack = [slp.start]
    rules = slp.rules
    while stack:
        r = rules[stack.pop()]
        if isinstance(r, Terminal):
            out.append(r.value)
        else:
            stack.append(r.right)
            stack.append(r.left)
    return as_sequence(out, sigma)


@dataclass(frozen=True)
class SymbolStats:
    """Per symbol: expansion length, min value, leftmost 1-based argmin, depth."""

    length: tuple
    minval: tuple
    argmin: tuple
    depth: tuple
    order: tuple  # validated children-first order of reachable symbols


def symbol_stats(slp: Slp) -> SymbolStats:
    validate(slp)
    order = _topo_order(slp.rules, slp.start)
    m = len(slp.rules)
    length = [0] * m
    minval = [0] * m
    argmin = [0] * m
    depth = [0] * m
    for v in order:
        r = slp.rules[v]
        if isinstance(r, Terminal):
            length[v], minval[v], argmin[v], depth[v] = 1, r.value, 1, 0
        else:
            a, b = r
            length[v] = length[a] + length[b]
            if minval[a] <= minval[b]:
                minval[v], argmin[v] = minval[a], argmin[a]
            else:
                minval[v], argmin[v] = minval[b], length[a] + argmin[b]
            depth[v] = 1 + max(depth[a], depth[b])
    return SymbolStats(tuple(length), tuple(minval), tuple(argmin), tuple(depth), tuple(order))


def slp_depth(slp: Slp) -> int:
    return symbol_stats(slp).depth[slp.start]


class SlpBuilder:
    """Interning rule store: identical right-hand sides share one symbol."""

    def __init__(self):
        self.rules: List[Rule] = []
        self._index: Dict[Rule, int] = {}

    def _intern(self, rule: Rule) -> int:
        k = self._index.get(rule)
        if k is None:
            k = len(self.rules)
            self.rules.append(rule)
            self._index[rule] = k
        return k

    def terminal(self, value: int) -> int:
        return self._intern(Terminal(int(value)))

    def pair(self, a: int, b: int) -> int:
        return self._intern(Pair(a, b))

    def concat_pairing(self, symbols: List[int]) -> int:
        """Pair adjacent symbols left to right per round; an odd last one carries up."""
        if not symbols:
            raise SlpError("cannot concatenate an empty symbol list")
        cur = list(symbols)
        while len(cur) > 1:
            nxt = [self.pair(cur[k], cur[k + 1]) for k in range(0, len(cur) - 1, 2)]
            if len(cur) % 2:
                nxt.append(cur[-1])
            cur = nxt
        return cur[0]

    def concat_balanced(self, symbols: List[int]) -> int:
        """Split-in-the-middle binary concatenation."""
        if not symbols:
            raise SlpError("cannot concatenate an empty symbol list")

        def rec(lo: int, hi: int) -> int:
            if hi - lo == 1:
                return symbols[lo]
            mid = (lo + hi) // 2
            return self.pair(rec(lo, mid), rec(mid, hi))

        return rec(0, len(symbols))

    def build(self, start: int) -> Slp:
        return Slp(tuple(self.rules), start)


def build_pairing_slp(seq: Union[Sequence, Iterable[int]]) -> Slp:
    """Deterministic bottom-up pairing rounds with pair deduplication."""
    vals = seq.values if isinstance(seq, Sequence) else tuple(seq)
    if not vals:
        raise SlpError("cannot build an SLP for the empty sequence")
    b = SlpBuilder()
    return b.build(b.concat_pairing([b.terminal(v) for v in vals]))


# ---------------------------------------------------------------- file format

def format_slp(slp: Slp) -> str:
    lines = [f"slp {len(slp.rules)} {slp.start}"]
    for k, r in enumerate(slp.rules):
        if isinstance(r, Terminal):
            lines.append(f"{k} T {r.value}")
        else:
            lines.append(f"{k} N {r.left} {r.right}")
    return "\n".join(lines) + "\n"


def parse_slp(text: str) -> Slp:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or lines[0][0] != "slp" or len(lines[0]) != 3:
        raise SlpError("missing 'slp <rule_count> <start_id>' header")
    count, start = int(lines[0][1]), int(lines[0][2])
    if len(lines) - 1 != count:
        raise SlpError(f"header declares {count} rules, found {len(lines) - 1}")
    rules: List[Optional[Rule]] = [None] * count
    for toks in lines[1:]:
        k = int(toks[0])
        if not 0 <= k < count or rules[k] is not None:
            raise SlpError(f"bad or duplicate rule id {k}")
        if toks[1] == "T" and len(toks) == 3:
            rules[k] = Terminal(int(toks[2]))
        elif toks[1] == "N" and len(toks) == 4:
            rules[k] = Pair(int(toks[2]), int(toks[3]))
        else:
            raise SlpError(f"malformed rule line: {' '.join(toks)}")
    slp = Slp(tuple(rules), start)
    validate(slp)
    return slp


def read_slp(path: Union[str, Path]) -> Slp:
    return parse_slp(Path(path).read_text())


def write_slp(slp: Slp, path: Union[str, Path]) -> None:
    Path(path).write_text(format_slp(slp))
