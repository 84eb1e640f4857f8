"""The 2x2 Rubik's square.

Edges carry the one-based labels 1..12 in text and the points 0..11
internally.  The four faces rotate clockwise as::

    M1 = (1 4 6 3)   M2 = (2 5 7 4)   M3 = (6 9 11 8)   M4 = (7 10 12 9)

Colors are ``r b w g``; a :class:`ColorState` is the 12-character string of
edge colors in label order.
"""

from __future__ import annotations

import itertools
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Sequence

import numpy as np

from . import kernels, movelang
from .group import GroupBSGS, build_bsgs, factor_word
from .movelang import LTR, RTL, Atom, MoveWord
from .perm import (Permutation, compose, format_cycles, from_cycles, inverse,
                   sign, transposition)
from .shape import BACKWARD, FORWARD, Shape, attach, base_cycle, generators, relabel

COLORS = "rbwg"
N_EDGES = 12
STANDARD_COLORS = "rrbrwbwbgwgg"
GROUP_NAMES = "TLRB"
METRIC = "quarter-turn-8"
MAX_DENSE_EDGES = 12


class Unreachable(RuntimeError):
    pass


@dataclass(frozen=True)
class ColorState:
    colors: str

    def __post_init__(self):
        bad = set(self.colors) - set(COLORS)
        if bad:
            raise ValueError(f"unknown color(s) {''.join(sorted(bad))!r}")

    def __str__(self):
        return self.colors

    def __len__(self):
        return len(self.colors)

    def counts(self) -> dict[str, int]:
        return {c: self.colors.count(c) for c in COLORS}

    def is_square_state(self) -> bool:
        return len(self.colors) == N_EDGES and all(v == 3 for v in self.counts().values())


def square_state(text: str) -> ColorState:
    """Parse and check a square coloring: 12 edges, three of each color."""
    cs = ColorState(text.strip())
    if not cs.is_square_state():
        raise ValueError(f"{text!r} is not a square coloring (12 edges, 3 of each color)")
    return cs


def apply_perm(p: Permutation, cs: ColorState) -> ColorState:
    """Move the color at position x to position p(x)."""
    if p.degree != len(cs):
        raise ValueError("state and permutation sizes differ")
    out = [""] * len(cs)
    for x, c in enumerate(cs.colors):
        out[p.image[x]] = c
    return ColorState("".join(out))


def pack(cs: ColorState) -> int:
    code = 0
    for x, c in enumerate(cs.colors):
        code |= COLORS.index(c) << (2 * x)
    return code


def unpack(code: int, n_edges: int = N_EDGES) -> ColorState:
    return ColorState("".join(COLORS[(code >> (2 * x)) & 3] for x in range(n_edges)))


# ---- geometry

# creation order of the construction below, as zero-based final labels
_CREATION_LABELS = [0, 3, 5, 2, 1, 4, 6, 8, 10, 7, 9, 11]

# quarter turn of the whole square, clockwise, on zero-based labels
ROTATION = from_cycles(N_EDGES, [[0, 4, 11, 7], [1, 9, 10, 2], [3, 6, 8, 5]])
ROTATION_MOVES = {"M1": "M2", "M2": "M4", "M4": "M3", "M3": "M1"}


@lru_cache(maxsize=None)
def _standard_shape() -> Shape:
    s = base_cycle(4)
    s = attach(s, [2, 1], 2)
    s = attach(s, [3, 2], 2)
    s = attach(s, [6, 2, 5], 1)
    return relabel(s, _CREATION_LABELS)


def standard_square() -> tuple[Shape, ColorState]:
    return _standard_shape(), ColorState(STANDARD_COLORS)


def color_groups() -> dict[str, frozenset]:
    """Edges around each degree-3 vertex, zero-based."""
    return {
        "T": frozenset({0, 1, 3}),
        "L": frozenset({2, 5, 7}),
        "R": frozenset({4, 6, 9}),
        "B": frozenset({8, 10, 11}),
    }


def is_initial(cs: ColorState) -> bool:
    if len(cs) != N_EDGES:
        return False
    used = []
    for edges in color_groups().values():
        colors = {cs.colors[e] for e in edges}
        if len(colors) != 1:
            return False
        used.append(colors.pop())
    return len(set(used)) == 4


def initial_states() -> list[ColorState]:
    groups = color_groups()
    out = []
    for letters in sorted(itertools.permutations(COLORS)):
        chars = [""] * N_EDGES
        for name, c in zip(GROUP_NAMES, letters):
            for e in groups[name]:
                chars[e] = c
        out.append(ColorState("".join(chars)))
    return out


# ---- contracts


@dataclass(frozen=True)
class EdgeSwap:
    a: int  # zero-based
    b: int

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError("an edge swap needs two distinct edges")
        for x in (self.a, self.b):
            if not 0 <= x < N_EDGES:
                raise ValueError(f"no edge {x + 1}")

    def target(self) -> Permutation:
        return transposition(N_EDGES, self.a, self.b)

    def accepts(self, p: Permutation) -> bool:
        return p == self.target()

    def describe(self) -> str:
        return f"edge-swap {self.a + 1} {self.b + 1}"


@dataclass(frozen=True)
class GroupSwap:
    first: str
    second: str

    def __post_init__(self):
        if self.first == self.second or {self.first, self.second} - set(GROUP_NAMES):
            raise ValueError(f"bad color group pair {self.first}{self.second}")

    def target(self) -> Permutation:
        return group_swap_target(self.first, self.second)

    def accepts(self, p: Permutation) -> bool:
        """Setwise swap of the two groups, every other edge fixed."""
        groups = color_groups()
        one, two = groups[self.first], groups[self.second]
        for x in range(N_EDGES):
            y = p.image[x]
            if x in one and y not in two:
                return False
            if x in two and y not in one:
                return False
            if x not in one and x not in two and y != x:
                return False
        return True

    def describe(self) -> str:
        return f"group-swap {self.first} {self.second}"


# the T<->L exchange shown for the published G_TL
_TL_TARGET = from_cycles(N_EDGES, [[0, 7], [1, 5], [2, 3]])


def _conjugate(p: Permutation, r: Permutation) -> Permutation:
    """Relabel ``p`` through ``r``: the result sends r(x) to r(p(x))."""
    return compose(compose(inverse(r), p), r)


@lru_cache(maxsize=None)
def group_swap_target(first: str, second: str) -> Permutation:
    """Canonical label-level permutation for exchanging two color groups.

    Adjacent pairs are rotations of the T<->L exchange; opposite pairs are
    the compositions used by the published G_TB and G_LR.
    """
    pair = frozenset((first, second))
    rotate = {"T": "R", "R": "B", "B": "L", "L": "T"}
    current, p = frozenset("TL"), _TL_TARGET
    for _ in range(4):
        if current == pair:
            return p
        current = frozenset(rotate[g] for g in current)
        p = _conjugate(p, ROTATION)
    tl = _TL_TARGET
    if pair == frozenset("TB"):
        return compose(compose(tl, group_swap_target("L", "B")), tl)
    if pair == frozenset("LR"):
        return compose(compose(tl, group_swap_target("T", "R")), tl)
    raise ValueError(f"bad color group pair {first}{second}")


def contract_color_pattern(contract, cs: ColorState) -> ColorState:
    """Colors after the contract acts, judged by color only."""
    return apply_perm(contract.target(), cs)


# ---- macros

PUBLISHED = "published"
DERIVED = "derived-composition"
SYMMETRY = "symmetry-image"
SYNTHESIZED = "synthesized"

PUBLISHED_WORDS = {
    "G_TL": "M1M3M1M2M2M2M3M3M3M1M2",
    "G_TR": "M2M1M2M4M2M4M2M4M2M1M1M1M2M4M4M4M2M4M4M4M2M2M2",
    "G_LB": "M3M4M3M1M3M1M3M1M3M3M1M3M1M1M3M3M3M4M4M4",
    "G_RB": "M4M2M4M3M3M3M2M4M2M2M4M4M4M2M4M3",
    "L_13": "M2M1M2M4M4M4M3M3M1M1M1M3M1M3M3M4M2M2M1M2",
}

COMPOSED_WORDS = {
    "G_TB": "G_TL G_LB G_TL",
    "G_LR": "G_TL G_TR G_TL",
    "L_48": "G_TL L_13 G_TL'",
    "L_56": "G_TL L_25 G_TL'",
    "L_1_11": "G_TB L_8_11 G_TB'",
    "L_3_11": "L_13 L_1_11 L_13",
    "L_47": "G_TR L_25 G_TR'",
}

# name -> (source macro, number of quarter turns of the whole square)
SYMMETRY_WORDS = {
    "L_25": ("L_13", 1),
    "L_10_12": ("L_13", 2),
    "L_8_11": ("L_13", 3),
}

MACRO_ORDER = [
    "G_TL", "G_TR", "G_LB", "G_RB", "G_TB", "G_LR",
    "L_13", "L_25", "L_10_12", "L_8_11",
    "L_48", "L_56", "L_1_11", "L_3_11", "L_47",
]


@dataclass(frozen=True)
class MacroDef:
    name: str
    word: MoveWord
    contract: object
    source: str


def spaced(compact: str) -> str:
    """``M1M3M1`` -> ``M1 M3 M1``."""
    return " ".join(re.findall(r"M\d+", compact))


def contract_from_name(name: str):
    """Infer the contract of ``G_XY`` or ``L_ab`` / ``L_a_b``; None otherwise."""
    m = re.fullmatch(r"G_([TLRB])([TLRB])", name)
    if m:
        return GroupSwap(m.group(1), m.group(2))
    m = re.fullmatch(r"L_(\d+)_(\d+)", name) or re.fullmatch(r"L_(\d)(\d)", name)
    if m:
        return EdgeSwap(int(m.group(1)) - 1, int(m.group(2)) - 1)
    return None


def rotate_word(w: MoveWord, turns: int) -> MoveWord:
    mapping = {}
    for name in ROTATION_MOVES:
        target = name
        for _ in range(turns):
            target = ROTATION_MOVES[target]
        mapping[name] = Atom(target)
    return movelang.substitute(w, mapping)


def published_macros() -> list[MacroDef]:
    moves = {"M1", "M2", "M3", "M4"}
    words: dict[str, MoveWord] = {}
    sources: dict[str, str] = {}
    for name, compact in PUBLISHED_WORDS.items():
        words[name] = movelang.parse_word(spaced(compact), moves)
        sources[name] = PUBLISHED
    for name, (src, turns) in SYMMETRY_WORDS.items():
        words[name] = rotate_word(words[src], turns)
        sources[name] = SYMMETRY
    for name in MACRO_ORDER:
        if name in COMPOSED_WORDS:
            words[name] = movelang.parse_word(COMPOSED_WORDS[name], moves | set(words))
            sources[name] = DERIVED
    return [MacroDef(n, words[n], contract_from_name(n), sources[n]) for n in MACRO_ORDER]


def macro_env(macros: Iterable[MacroDef]) -> dict[str, MoveWord]:
    return {m.name: m.word for m in macros}


def expand_word(w: MoveWord, env: dict[str, MoveWord]) -> MoveWord:
    """Inline macro names until only move atoms remain."""
    seen = 0
    while movelang.atoms(w) & set(env):
        w = movelang.substitute(w, env)
        seen += 1
        if seen > len(env) + 1:
            raise ValueError("recursive macro definition")
    return w


# ---- conventions

@dataclass(frozen=True)
class Convention:
    order: str  # "ltr" | "rtl"
    direction: str  # "forward" | "backward"

    @property
    def id(self) -> str:
        return f"{self.order}-{self.direction}"


CONVENTIONS = [
    Convention(LTR, FORWARD),
    Convention(LTR, BACKWARD),
    Convention(RTL, FORWARD),
    Convention(RTL, BACKWARD),
]
DEFAULT_CONVENTION = CONVENTIONS[0]


def parse_convention(text: str) -> Convention:
    for c in CONVENTIONS:
        if c.id == text:
            return c
    raise ValueError(f"unknown convention {text!r}; expected one of "
                     + ", ".join(c.id for c in CONVENTIONS))


def evaluate(w: MoveWord, shape: Shape, convention: Convention = DEFAULT_CONVENTION,
             env: dict[str, MoveWord] | None = None) -> Permutation:
    if env:
        w = expand_word(w, env)
    return movelang.eval_word(w, generators(shape, convention.direction),
                              convention.order, degree=shape.n_edges)


# ---- verification

LABEL_EXACT = "label-exact"
COLOR_ONLY = "color-only"
FAILED = "failed"


@dataclass
class VerificationReport:
    name: str
    source: str
    contract: object
    atoms: int
    results: dict  # convention id -> (grade, Permutation)
    target_sign: int
    word_sign: int
    synthesized: MoveWord | None = None

    @property
    def parity_feasible(self) -> bool:
        """Whether the word's sign allows a label-exact grade.

        Group swaps are graded setwise and setwise swaps of both signs
        exist, so only edge swaps can be ruled out by sign.
        """
        if isinstance(self.contract, GroupSwap):
            return True
        return self.target_sign == self.word_sign

    def passing(self) -> list[str]:
        return [cid for cid, (grade, _) in self.results.items() if grade == LABEL_EXACT]

    def parity_line(self) -> str:
        if isinstance(self.contract, GroupSwap):
            verdict = ("canonical target feasible" if self.target_sign == self.word_sign
                       else "canonical target impossible, setwise swap still possible")
        else:
            verdict = "label-exact feasible" if self.parity_feasible else "label-exact impossible"
        return (f"target {format_cycles(self.contract.target(), 1)} sign {self.target_sign:+d}, "
                f"word sign {self.word_sign:+d} ({self.atoms} atoms): {verdict}")

    def to_text(self) -> str:
        lines = [
            f"macro: {self.name}",
            f"source: {self.source}",
            f"contract: {self.contract.describe()}",
            f"atoms: {self.atoms}",
        ]
        for cid, (grade, p) in self.results.items():
            lines.append(f"convention {cid}: {grade} {format_cycles(p, 1)}")
        lines.append(f"parity: {self.parity_line()}")
        if self.synthesized is not None:
            w = self.synthesized
            lines.append(f"synthesized-atoms: {movelang.atom_count(w)}")
            lines.append(f"synthesized: {movelang.format_word(w)}")
        return "\n".join(lines) + "\n"


def grade(p: Permutation, contract, start: ColorState) -> str:
    if contract.accepts(p):
        return LABEL_EXACT
    if apply_perm(p, start) == contract_color_pattern(contract, start):
        return COLOR_ONLY
    return FAILED


def verify_macro(m: MacroDef, conventions: Sequence[Convention] = CONVENTIONS,
                 env: dict[str, MoveWord] | None = None,
                 synthesize: bool = True) -> VerificationReport:
    """Grade a macro's word against its contract under each convention."""
    shape, start = standard_square()
    if env is None:
        env = macro_env(published_macros())
    flat = expand_word(m.word, env)
    gens = generators(shape)
    word_sign = prod(sign(gens[n]) ** abs(e) for n, e in movelang.letters(flat))
    results = {}
    for conv in conventions:
        p = evaluate(flat, shape, conv)
        results[conv.id] = (grade(p, m.contract, start), p)
    report = VerificationReport(m.name, m.source, m.contract, movelang.atom_count(flat),
                                results, sign(m.contract.target()), word_sign)
    if synthesize and not report.passing():
        report.synthesized = synthesize_macro(m.contract).word
    return report


@lru_cache(maxsize=None)
def square_group() -> GroupBSGS:
    shape, _ = standard_square()
    return build_bsgs(N_EDGES, list(generators(shape).items()))


def synthesize_macro(contract, name: str | None = None) -> MacroDef:
    """Factor the contract's target over the face moves (left to right)."""
    w = factor_word(square_group(), contract.target())
    if name is None:
        if isinstance(contract, EdgeSwap):
            name = f"L_{contract.a + 1}_{contract.b + 1}"
        else:
            name = f"G_{contract.first}{contract.second}"
    return MacroDef(name, w, contract, SYNTHESIZED)


def discrepancies(reports: Iterable[VerificationReport]) -> list[str]:
    """Ledger lines for published words that no convention validates."""
    out = []
    for r in reports:
        if r.passing():
            continue
        grades = ", ".join(f"{cid}={g}" for cid, (g, _) in r.results.items())
        line = f"macro {r.name} ({r.source}): no convention is label-exact [{grades}]"
        if not r.parity_feasible:
            line += (f"; parity certificate: {r.contract.describe()} has sign "
                     f"{r.target_sign:+d} but the {r.atoms}-atom word of 4-cycles has sign "
                     f"(-1)^{r.atoms} = {r.word_sign:+d}")
        out.append(line)
    return out


# ---- color-space BFS


@dataclass
class BfsReport:
    metric: str
    start: ColorState
    moves: list
    reachable: int
    histogram: dict  # distance -> count
    eccentricity: int

    def to_text(self) -> str:
        lines = [
            f"metric: {self.metric}",
            f"start: {self.start}",
            f"moves: {' '.join(self.moves)}",
            f"reachable: {self.reachable}",
        ]
        lines += [f"distance {d}: {n}" for d, n in sorted(self.histogram.items())]
        lines.append(f"eccentricity: {self.eccentricity}")
        return "\n".join(lines) + "\n"


def quarter_turn_moves(shape: Shape, names: Sequence[str] | None = None):
    """``[(label, name, exponent, Permutation)]`` for each face both ways."""
    fwd = generators(shape, FORWARD)
    bwd = generators(shape, BACKWARD)
    names = list(names) if names is not None else shape.move_names()
    for n in names:
        if n not in fwd:
            raise ValueError(f"unknown move {n!r}")
    out = []
    for n in names:
        out.append((n, n, 1, fwd[n]))
        out.append((n + "'", n, -1, bwd[n]))
    return out


class ColorBfs:
    """Exhaustive BFS over colorings reachable from ``start``.

    The visited table is dense: one byte per packed state (``4**edges``).
    Frontiers are expanded level by level; with ``workers > 1`` the frontier
    is split into chunks expanded on threads and concatenated in order, so
    the tables are identical to a single-threaded run.
    """

    def __init__(self, shape: Shape, start: ColorState, names=None,
                 workers: int = 1, backend: str | None = None):
        if shape.n_edges > MAX_DENSE_EDGES:
            raise ValueError(f"dense BFS supports at most {MAX_DENSE_EDGES} edges")
        if len(start) != shape.n_edges:
            raise ValueError("coloring does not match the shape")
        self.shape = shape
        self.start = start
        self.moves = quarter_turn_moves(shape, names)
        self.images = np.array([m[3].image for m in self.moves], dtype=np.int8)
        self.kernel = kernels.get_backend(backend)
        self.workers = max(1, workers)
        self.dist = None
        self.parent = None
        self.histogram: dict[int, int] = {}
        self._run()

    def _expand(self, frontier, pool):
        if pool is None or frontier.size < 4096:
            return self.kernel.expand(frontier, self.images)
        chunks = np.array_split(frontier, self.workers)
        parts = pool.map(lambda c: self.kernel.expand(c, self.images), chunks)
        return np.concatenate(list(parts))

    def _run(self):
        size = 4 ** self.shape.n_edges
        self.dist = np.full(size, 255, dtype=np.uint8)
        self.parent = np.full(size, 255, dtype=np.uint8)
        s0 = pack(self.start)
        self.dist[s0] = 0
        frontier = np.array([s0], dtype=np.uint32)
        self.histogram = {0: 1}
        level = 0
        pool = ThreadPoolExecutor(self.workers) if self.workers > 1 else None
        try:
            while frontier.size:
                level += 1
                if level >= 255:
                    raise RuntimeError("BFS depth exceeds the distance table range")
                cand = self._expand(frontier, pool)
                frontier = self.kernel.merge(cand, self.dist, self.parent, level,
                                             len(self.moves))
                if frontier.size:
                    self.histogram[level] = int(frontier.size)
        finally:
            if pool is not None:
                pool.shutdown()

    @property
    def reachable(self) -> int:
        return sum(self.histogram.values())

    @property
    def eccentricity(self) -> int:
        return max(self.histogram)

    def distance(self, cs: ColorState) -> int | None:
        d = int(self.dist[pack(cs)])
        return None if d == 255 else d

    def path_to(self, target: ColorState) -> MoveWord:
        """Move word taking ``start`` to ``target`` (shortest in this metric)."""
        code = pack(target)
        if len(target) != self.shape.n_edges or self.dist[code] == 255:
            raise Unreachable(f"{target} is not reachable from {self.start}")
        inverse_moves = [inverse(m[3]) for m in self.moves]
        letters = []
        state = target
        while int(self.dist[pack(state)]) != 0:
            mv = int(self.parent[pack(state)])
            _, name, e, _ = self.moves[mv]
            letters.append((name, e))
            state = apply_perm(inverse_moves[mv], state)
        letters.reverse()
        return movelang.from_letters(letters)

    def report(self, metric: str | None = None) -> BfsReport:
        if metric is None:
            metric = f"quarter-turn-{len(self.moves)}"
        return BfsReport(metric, self.start, [m[0] for m in self.moves], self.reachable,
                         dict(self.histogram), self.eccentricity)


def multinomial_count(cs: ColorState) -> int:
    counts = cs.counts().values()
    return factorial(len(cs)) // prod(factorial(c) for c in counts)


def bfs_colors(metric: str = METRIC, start: ColorState | None = None, names=None,
               workers: int = 1, backend: str | None = None) -> BfsReport:
    if metric != METRIC:
        raise ValueError(f"unsupported metric {metric!r}")
    shape, standard = standard_square()
    bfs = ColorBfs(shape, start or standard, names, workers, backend)
    return bfs.report(metric if names is None else None)


def solve_color(src: ColorState, dst: ColorState, bfs: ColorBfs | None = None,
                shape: Shape | None = None) -> MoveWord:
    """A move word taking ``src`` to ``dst``.

    With a ``bfs`` rooted elsewhere the answer is routed through its root,
    which keeps it valid but not necessarily shortest.
    """
    if src == dst:
        return movelang.EMPTY
    if bfs is None:
        shape = shape or standard_square()[0]
        bfs = ColorBfs(shape, src)
    if bfs.start == src:
        return bfs.path_to(dst)
    back = bfs.path_to(src)
    forward = bfs.path_to(dst)
    letters = movelang.letters(movelang.Inverse(back)) + movelang.letters(forward)
    return movelang.from_letters(letters)


def color_complete(names=None, workers: int = 1) -> bool:
    shape, start = standard_square()
    bfs = ColorBfs(shape, start, names, workers)
    return bfs.reachable == multinomial_count(start)
