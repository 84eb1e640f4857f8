"""Permutation groups given by named generators.

:func:`build_bsgs` runs a deterministic Schreier-Sims and keeps, for every
coset representative, a word over the *original* generator names that
produces it.  That makes :func:`factor_word` answers directly executable as
move sequences.  :func:`brute_closure` is an independent oracle for small
groups.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial, prod
from typing import NamedTuple, Sequence

from . import movelang
from .perm import Permutation, compose, identity, inverse, sign

# internal words: tuples of (generator index, +1 | -1), freely reduced


def _reduce(w):
    out = []
    for letter in w:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def _winv(w):
    return tuple((g, -e) for g, e in reversed(w))


class NotAMember(ValueError):
    pass


@dataclass
class GroupBSGS:
    degree: int
    generators: list  # [(name, Permutation)]
    base: list = field(default_factory=list)
    strong: list = field(default_factory=list)  # [(Permutation, word)]
    transversals: list = field(default_factory=list)  # per level: {point: (rep, word)}

    def word_to_moves(self, w) -> movelang.MoveWord:
        """Turn an internal letter tuple into a MoveWord over generator names."""
        names = [n for n, _ in self.generators]
        orders = [p.order() for _, p in self.generators]
        runs: list[list[int]] = []
        for g, e in w:
            if runs and runs[-1][0] == g:
                runs[-1][1] += e
            else:
                runs.append([g, e])
        letters = []
        for g, e in runs:
            e %= orders[g]
            if e > orders[g] // 2:
                e -= orders[g]
            if e:
                letters.append((names[g], e))
        return movelang.from_letters(letters)

    def bindings(self) -> dict[str, Permutation]:
        return dict(self.generators)


def _first_moved(p: Permutation) -> int:
    return next(i for i, x in enumerate(p.image) if i != x)


def build_bsgs(degree: int, generators: Sequence[tuple[str, Permutation]]) -> GroupBSGS:
    """Schreier-Sims with word tracking.

    Base points are picked greedily as the smallest point moved by the
    strong generators that fix the earlier base points.
    """
    generators = list(generators)
    for name, p in generators:
        if p.degree != degree:
            raise ValueError(f"generator {name} has degree {p.degree}, expected {degree}")
    g = GroupBSGS(degree, generators)
    one = identity(degree)
    for i, (_, p) in enumerate(generators):
        if p != one:
            g.strong.append((p, ((i, 1),)))
    if not g.strong:
        return g

    def level_gens(i):
        pts = g.base[:i]
        return [s for s in g.strong if all(s[0].image[b] == b for b in pts)]

    def orbit(i):
        b = g.base[i]
        table = {b: (one, ())}
        queue = [b]
        gens = level_gens(i)
        for x in queue:
            u, uw = table[x]
            for p, pw in gens:
                y = p.image[x]
                if y not in table:
                    table[y] = (compose(u, p), _reduce(uw + pw))
                    queue.append(y)
        return table

    g.base.append(_first_moved(g.strong[0][0]))
    g.transversals.append(orbit(0))

    i = 0
    while i >= 0:
        restart = False
        table = g.transversals[i]
        for x in sorted(table):
            u, uw = table[x]
            for p, pw in level_gens(i):
                y = p.image[x]
                v, vw = table[y]
                s = compose(compose(u, p), inverse(v))
                if s == one:
                    continue
                r, rw, j = _sift(g, s, _reduce(uw + pw + _winv(vw)), i + 1)
                if r == one:
                    continue
                if j == len(g.base):
                    g.base.append(_first_moved(r))
                    g.transversals.append(None)
                g.strong.append((r, rw))
                for lvl in range(i + 1, j + 1):
                    g.transversals[lvl] = orbit(lvl)
                i = j
                restart = True
                break
            if restart:
                break
        if not restart:
            i -= 1
    return g


def _sift(g: GroupBSGS, p: Permutation, w, start: int = 0):
    for i in range(start, len(g.base)):
        y = p.image[g.base[i]]
        table = g.transversals[i]
        if y not in table:
            return p, w, i
        u, uw = table[y]
        p = compose(p, inverse(u))
        w = _reduce(w + _winv(uw))
    return p, w, len(g.base)


def group_order(g: GroupBSGS) -> int:
    return prod(len(t) for t in g.transversals)


def member(g: GroupBSGS, p: Permutation) -> bool:
    if p.degree != g.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {g.degree}")
    r, _, _ = _sift(g, p, ())
    return r.is_identity()


def factor_word(g: GroupBSGS, p: Permutation) -> movelang.MoveWord:
    """A word over the generator names that evaluates (left to right) to ``p``."""
    if p.degree != g.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {g.degree}")
    word = []
    for i in range(len(g.base)):
        y = p.image[g.base[i]]
        table = g.transversals[i]
        if y not in table:
            raise NotAMember(str(p))
        u, uw = table[y]
        p = compose(p, inverse(u))
        word.append(uw)
    if not p.is_identity():
        raise NotAMember(str(p))
    letters = ()
    for uw in reversed(word):
        letters = _reduce(letters + uw)
    return g.word_to_moves(letters)


class Classification(NamedTuple):
    kind: str  # "full-symmetric" | "alternating" | "other"
    order: int

    def __str__(self):
        return self.kind if self.kind != "other" else f"other({self.order})"


def classify(g: GroupBSGS) -> Classification:
    n = group_order(g)
    full = factorial(g.degree)
    if n == full:
        return Classification("full-symmetric", n)
    all_even = all(sign(p) == 1 for _, p in g.generators)
    if g.degree >= 2 and all_even and 2 * n == full:
        return Classification("alternating", n)
    return Classification("other", n)


@dataclass
class ClosureSet:
    elements: set
    generators: list
    cap: int
    truncated: bool

    def __len__(self):
        return len(self.elements)


def brute_closure(generators: Sequence[Permutation], cap: int) -> ClosureSet:
    """Breadth-first closure of ``generators`` under composition.

    Stops and marks the result truncated once more than ``cap`` elements
    would be needed.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    generators = [p[1] if isinstance(p, tuple) else p for p in generators]
    if not generators:
        raise ValueError("need at least one generator to fix the degree")
    one = identity(generators[0].degree)
    seen = {one}
    frontier = [one]
    while frontier:
        nxt = []
        for x in frontier:
            for p in generators:
                y = compose(x, p)
                if y not in seen:
                    if len(seen) >= cap:
                        return ClosureSet(seen, generators, cap, True)
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return ClosureSet(seen, generators, cap, False)
