"""Move words: parsing, formatting, evaluation, and the ``.shape`` file format.

Grammar::

    word    := term*
    term    := factor postfix*
    factor  := NAME | "(" word ")"
    postfix := "'" | "^" INT
    NAME    := letter (letter | digit | "_")*

Juxtaposition is sequential composition.  Under the default left-to-right
convention the first-written move acts first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from .perm import Permutation, compose, identity, inverse, power

LTR = "ltr"
RTL = "rtl"


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Inverse:
    node: "MoveWord"


@dataclass(frozen=True)
class Power:
    node: "MoveWord"
    exponent: int


@dataclass(frozen=True)
class Sequence:
    items: tuple = ()


MoveWord = Union[Atom, Inverse, Power, Sequence]

EMPTY = Sequence(())


class MoveLangError(Exception):
    """Base class for parse and evaluation errors."""


class WordSyntaxError(MoveLangError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownName(MoveLangError):
    def __init__(self, name: str):
        super().__init__(f"unknown name {name!r}")
        self.name = name


class UnboundName(MoveLangError):
    def __init__(self, name: str):
        super().__init__(f"unbound name {name!r}")
        self.name = name


# ---- construction helpers


def seq(*items: MoveWord) -> MoveWord:
    return normalize(Sequence(tuple(items)))


def inv(node: MoveWord) -> MoveWord:
    return Inverse(node)


def pw(node: MoveWord, e: int) -> MoveWord:
    return normalize(Power(node, e))


def normalize(w: MoveWord) -> MoveWord:
    """Drop ``^1`` powers and unwrap one-item sequences, recursively."""
    if isinstance(w, Atom):
        return w
    if isinstance(w, Inverse):
        return Inverse(normalize(w.node))
    if isinstance(w, Power):
        inner = normalize(w.node)
        return inner if w.exponent == 1 else Power(inner, w.exponent)
    items = tuple(normalize(x) for x in w.items)
    if len(items) == 1:
        return items[0]
    return Sequence(items)


def from_letters(letters: Iterable[tuple[str, int]]) -> MoveWord:
    """Build a word from ``(name, exponent)`` pairs, merging equal neighbours."""
    runs: list[list] = []
    for name, e in letters:
        if runs and runs[-1][0] == name:
            runs[-1][1] += e
            if runs[-1][1] == 0:
                runs.pop()
        else:
            runs.append([name, e])
    items = []
    for name, e in runs:
        if e == -1:
            items.append(Inverse(Atom(name)))
        else:
            items.append(normalize(Power(Atom(name), e)))
    return normalize(Sequence(tuple(items)))


# ---- parsing

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<int>[+-]?\d+)|(?P<sym>[()'^]))")


def _tokenize(text: str):
    pos = 0
    out = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise WordSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastgroup)
        out.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, env):
        self.tokens = _tokenize(text)
        self.i = 0
        self.env = env

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def word(self):
        items = []
        while True:
            kind, val, _ = self.peek()
            if kind == "name" or (kind == "sym" and val == "("):
                items.append(self.term())
            else:
                break
        return Sequence(tuple(items))

    def term(self):
        node = self.factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "sym" and val == "'":
                self.take()
                node = Inverse(node)
            elif kind == "sym" and val == "^":
                self.take()
                kind, val, pos = self.take()
                if kind != "int":
                    raise WordSyntaxError("expected integer after '^'", pos)
                node = Power(node, int(val))
            else:
                return node

    def factor(self):
        kind, val, pos = self.take()
        if kind == "name":
            if self.env is not None and val not in self.env:
                raise UnknownName(val)
            return Atom(val)
        if kind == "sym" and val == "(":
            inner = self.word()
            kind, val, pos = self.take()
            if not (kind == "sym" and val == ")"):
                raise WordSyntaxError("expected ')'", pos)
            return inner
        raise WordSyntaxError(f"unexpected token {val!r}", pos)


def parse_word(text: str, env: Iterable[str] | None = None) -> MoveWord:
    """Parse ``text`` into a normalized AST.

    ``env`` restricts the accepted names; ``None`` accepts any name.
    """
    parser = _Parser(text, set(env) if env is not None else None)
    w = parser.word()
    kind, val, pos = parser.peek()
    if kind != "end":
        raise WordSyntaxError(f"unexpected token {val!r}", pos)
    return normalize(w)


# ---- formatting


def format_word(w: MoveWord) -> str:
    return _fmt(normalize(w), top=True)


def _fmt(w, top=False):
    if isinstance(w, Atom):
        return w.name
    if isinstance(w, Inverse):
        return _fmt(w.node) + "'"
    if isinstance(w, Power):
        return _fmt(w.node) + "^" + str(w.exponent)
    text = " ".join(_fmt(x) for x in w.items)
    return text if top else "(" + text + ")"


# ---- traversal


def atoms(w: MoveWord) -> set[str]:
    if isinstance(w, Atom):
        return {w.name}
    if isinstance(w, (Inverse, Power)):
        return atoms(w.node)
    out = set()
    for x in w.items:
        out |= atoms(x)
    return out


def substitute(w: MoveWord, mapping: Mapping[str, MoveWord]) -> MoveWord:
    """Replace atoms by words; names missing from ``mapping`` stay as they are."""
    if isinstance(w, Atom):
        return mapping.get(w.name, w)
    if isinstance(w, Inverse):
        return Inverse(substitute(w.node, mapping))
    if isinstance(w, Power):
        return Power(substitute(w.node, mapping), w.exponent)
    return Sequence(tuple(substitute(x, mapping) for x in w.items))


def letters(w: MoveWord, env: Mapping[str, MoveWord] | None = None) -> list[tuple[str, int]]:
    """Flatten to a list of ``(atom, +1 | -1)``, inlining macros from ``env``.

    The list is in written order (left to right).
    """
    env = env or {}
    if isinstance(w, Atom):
        if w.name in env:
            return letters(env[w.name], env)
        return [(w.name, 1)]
    if isinstance(w, Inverse):
        return [(n, -e) for n, e in reversed(letters(w.node, env))]
    if isinstance(w, Power):
        base = letters(w.node, env)
        if w.exponent < 0:
            base = [(n, -e) for n, e in reversed(base)]
        return base * abs(w.exponent)
    out = []
    for x in w.items:
        out.extend(letters(x, env))
    return out


def atom_count(w: MoveWord, env: Mapping[str, MoveWord] | None = None) -> int:
    """Number of single moves after full expansion."""
    return len(letters(w, env))


# ---- evaluation


def eval_word(
    w: MoveWord,
    bindings: Mapping[str, Permutation],
    convention: str = LTR,
    degree: int | None = None,
) -> Permutation:
    """Evaluate ``w`` homomorphically.

    ``convention`` is ``"ltr"`` (first-written acts first) or ``"rtl"``.
    ``degree`` is only needed for words with no atoms at all.
    """
    if convention not in (LTR, RTL):
        raise ValueError(f"unknown convention {convention!r}")
    if degree is None:
        degree = next(iter(bindings.values())).degree if bindings else 0
    cache: dict = {}

    def ev(node):
        key = id(node)
        if key in cache:
            return cache[key][1]
        if isinstance(node, Atom):
            try:
                r = bindings[node.name]
            except KeyError:
                raise UnboundName(node.name) from None
        elif isinstance(node, Inverse):
            r = inverse(ev(node.node))
        elif isinstance(node, Power):
            r = power(ev(node.node), node.exponent)
        else:
            r = identity(degree)
            for x in node.items:
                r = compose(r, ev(x)) if convention == LTR else compose(ev(x), r)
        # keep node alive so its id stays unique during this call
        cache[key] = (node, r)
        return r

    return ev(w)


def eval_macros(
    macros: Mapping[str, MoveWord],
    bindings: Mapping[str, Permutation],
    convention: str = LTR,
) -> dict[str, Permutation]:
    """Evaluate macros in definition order, each seeing the earlier ones."""
    env = dict(bindings)
    for name, w in macros.items():
        env[name] = eval_word(w, env, convention)
    return env


# ---- .shape files


@dataclass
class ShapeDoc:
    shape: "object"
    colors: "object | None"
    macros: dict
    trace: list


class ShapeFileError(MoveLangError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _vertex(tok: str) -> int:
    if tok.startswith("v"):
        tok = tok[1:]
    return int(tok)


def parse_shape_file(text: str) -> ShapeDoc:
    """Replay a ``.shape`` document.

    Directives, one per line::

        base N
        attach path v0 v1 ... new K
        relabel L1 L2 ... Ln
        color EDGE-LABEL r|b|w|g
        let NAME = WORD

    ``#`` starts a comment.  Edge labels are one-based.  ``relabel`` gives
    the i-th created edge the label ``Li``.
    """
    from . import shape as shp
    from .square import COLORS, ColorState

    s = None
    colors: dict[int, str] = {}
    macros: dict[str, MoveWord] = {}
    trace = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        try:
            if head == "base":
                if s is not None:
                    raise ShapeFileError("duplicate base directive", lineno)
                if len(rest) != 1:
                    raise ShapeFileError("usage: base N", lineno)
                s = shp.base_cycle(int(rest[0]))
            elif head == "attach":
                if s is None:
                    raise ShapeFileError("attach before base", lineno)
                if len(rest) < 4 or rest[0] != "path" or rest[-2] != "new":
                    raise ShapeFileError("usage: attach path V... new K", lineno)
                path = [_vertex(t) for t in rest[1:-2]]
                s = shp.attach(s, path, int(rest[-1]))
            elif head == "relabel":
                if s is None:
                    raise ShapeFileError("relabel before base", lineno)
                s = shp.relabel(s, [int(t) - 1 for t in rest])
            elif head == "color":
                if s is None:
                    raise ShapeFileError("color before base", lineno)
                if len(rest) != 2 or rest[1] not in COLORS:
                    raise ShapeFileError("usage: color EDGE r|b|w|g", lineno)
                edge = int(rest[0])
                if not 1 <= edge <= s.n_edges:
                    raise ShapeFileError(f"no edge {edge}", lineno)
                if edge in colors:
                    raise ShapeFileError(f"edge {edge} colored twice", lineno)
                colors[edge] = rest[1]
            elif head == "let":
                if s is None:
                    raise ShapeFileError("let before base", lineno)
                m = re.fullmatch(r"let\s+([A-Za-z][A-Za-z0-9_]*)\s*=(.*)", line)
                if m is None:
                    raise ShapeFileError("usage: let NAME = WORD", lineno)
                name = m.group(1)
                moves = set(s.move_names())
                if name in moves:
                    raise ShapeFileError(f"macro {name} shadows a move", lineno)
                if name in macros:
                    raise ShapeFileError(f"macro {name} redefined", lineno)
                try:
                    macros[name] = parse_word(m.group(2), moves | set(macros))
                except MoveLangError as exc:
                    raise ShapeFileError(str(exc), lineno) from None
            else:
                raise ShapeFileError(f"unknown directive {head!r}", lineno)
        except shp.ShapeError as exc:
            exc.line = lineno
            exc.args = (f"line {lineno}: {exc}",)
            raise
        except ValueError as exc:
            raise ShapeFileError(str(exc), lineno) from None
        trace.append((lineno, line))
    if s is None:
        raise ShapeFileError("missing base directive", 0)
    state = None
    if colors:
        if len(colors) != s.n_edges:
            missing = sorted(set(range(1, s.n_edges + 1)) - set(colors))
            raise ShapeFileError(f"edges without color: {missing}", 0)
        state = ColorState("".join(colors[e] for e in range(1, s.n_edges + 1)))
    return ShapeDoc(s, state, macros, trace)


def load_shape_file(path) -> ShapeDoc:
    with open(path, encoding="utf-8") as fh:
        return parse_shape_file(fh.read())
