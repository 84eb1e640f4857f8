"""Exact permutations on the points ``0 .. degree-1``.

A :class:`Permutation` stores its image array: ``p.image[x]`` is where point
``x`` is sent.  Products are read left to right, so ``compose(a, b)`` applies
``a`` first and ``b`` second.
"""

from __future__ import annotations

from math import lcm
from typing import Iterable, Sequence


class PermutationError(ValueError):
    """Raised for malformed permutation input."""


class Permutation:
    __slots__ = ("image",)

    def __init__(self, image: Iterable[int]):
        image = tuple(image)
        if sorted(image) != list(range(len(image))):
            raise PermutationError(f"not a permutation: {image!r}")
        object.__setattr__(self, "image", image)

    @classmethod
    def _trusted(cls, image: tuple) -> "Permutation":
        p = object.__new__(cls)
        object.__setattr__(p, "image", image)
        return p

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @property
    def degree(self) -> int:
        return len(self.image)

    def __call__(self, x: int) -> int:
        return self.image[x]

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.image == other.image

    def __hash__(self):
        return hash(self.image)

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return inverse(self)

    def __pow__(self, e: int) -> "Permutation":
        return power(self, e)

    def __repr__(self):
        return f"Permutation({self.degree}, {to_cycles(self)!r})"

    def __str__(self):
        return format_cycles(self)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.image))

    def support(self) -> list[int]:
        return [i for i, x in enumerate(self.image) if i != x]

    def order(self) -> int:
        return lcm(1, *(len(c) for c in to_cycles(self)))


def identity(n: int) -> Permutation:
    if n < 0:
        raise PermutationError("degree must be non-negative")
    return Permutation._trusted(tuple(range(n)))


def _check_degrees(a: Permutation, b: Permutation) -> None:
    if a.degree != b.degree:
        raise PermutationError(f"degree mismatch: {a.degree} vs {b.degree}")


def compose(first: Permutation, then: Permutation) -> Permutation:
    """Apply ``first``, then ``then``: ``result(x) == then(first(x))``."""
    _check_degrees(first, then)
    t = then.image
    return Permutation._trusted(tuple(t[x] for x in first.image))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.degree
    for i, x in enumerate(p.image):
        inv[x] = i
    return Permutation._trusted(tuple(inv))


def power(p: Permutation, e: int) -> Permutation:
    """Repeated composition; negative exponents use the inverse."""
    base = p if e >= 0 else inverse(p)
    e = abs(e)
    result = identity(p.degree)
    # square-and-multiply; powers of one element commute
    while e:
        if e & 1:
            result = compose(result, base)
        base = compose(base, base)
        e >>= 1
    return result


def from_cycles(degree: int, cycles: Sequence[Sequence[int]]) -> Permutation:
    """Build the product of disjoint cycles.

    Each cycle ``[a, b, c]`` sends a to b, b to c and c to a.  Points must be
    in range and may appear at most once across all cycles.
    """
    image = list(range(degree))
    seen = set()
    for cycle in cycles:
        for x in cycle:
            if not 0 <= x < degree:
                raise PermutationError(f"point {x} out of range for degree {degree}")
            if x in seen:
                raise PermutationError(f"point {x} repeated in cycles")
            seen.add(x)
        for i, x in enumerate(cycle):
            image[x] = cycle[(i + 1) % len(cycle)]
    return Permutation._trusted(tuple(image))


def transposition(degree: int, a: int, b: int) -> Permutation:
    if a == b:
        raise PermutationError("transposition needs two distinct points")
    return from_cycles(degree, [[a, b]])


def to_cycles(p: Permutation) -> list[list[int]]:
    """Canonical disjoint-cycle form.

    Fixed points are omitted, each cycle starts at its smallest point and the
    cycles are sorted by that first point.
    """
    seen = [False] * p.degree
    out = []
    for start in range(p.degree):
        if seen[start] or p.image[start] == start:
            continue
        cycle = [start]
        seen[start] = True
        x = p.image[start]
        while x != start:
            seen[x] = True
            cycle.append(x)
            x = p.image[x]
        out.append(cycle)
    return out


def sign(p: Permutation) -> int:
    """+1 for even permutations, -1 for odd ones."""
    transpositions = sum(len(c) - 1 for c in to_cycles(p))
    return -1 if transpositions % 2 else 1


def format_cycles(p: Permutation, offset: int = 0) -> str:
    """Cycle notation such as ``(1 8)(2 6)(3 4)``; ``()`` for the identity.

    ``offset`` is added to every point, e.g. 1 for one-based edge labels.
    """
    cycles = to_cycles(p)
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(x + offset) for x in c) + ")" for c in cycles)


def parse_cycles(degree: int, text: str, offset: int = 0) -> Permutation:
    """Inverse of :func:`format_cycles`."""
    text = text.strip()
    if text in ("", "()"):
        return identity(degree)
    if not (text.startswith("(") and text.endswith(")")):
        raise PermutationError(f"bad cycle notation: {text!r}")
    cycles = []
    for chunk in text[1:-1].split(")("):
        try:
            cycles.append([int(tok) - offset for tok in chunk.split()])
        except ValueError:
            raise PermutationError(f"bad cycle notation: {text!r}") from None
    return from_cycles(degree, cycles)
