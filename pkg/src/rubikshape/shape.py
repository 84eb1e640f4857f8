"""Rubik's shapes: graphs with distinguished edge cycles, built inductively.

A shape starts as a single polygon (:func:`base_cycle`).  :func:`attach`
glues a new polygon along a path of existing vertices.  Each distinguished
cycle rotates its edges one step, which gives the generator permutations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial
from typing import Sequence

from .perm import Permutation, from_cycles, inverse

FORWARD = "forward"
BACKWARD = "backward"


class ShapeError(ValueError):
    line = None


class InvalidPath(ShapeError):
    pass


class SharedEdgeViolation(ShapeError):
    pass


@dataclass(frozen=True)
class Shape:
    n_vertices: int
    edges: tuple  # EdgeId -> (u, v)
    cycles: tuple  # tuples of EdgeIds in rotational order
    trace: tuple = field(default=(), compare=False)
    single_share: bool = True

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_cycles(self) -> int:
        return len(self.cycles)

    def move_names(self) -> list[str]:
        return [f"M{i + 1}" for i in range(self.n_cycles)]

    def edge_between(self, u: int, v: int) -> int | None:
        for e, (a, b) in enumerate(self.edges):
            if {a, b} == {u, v}:
                return e
        return None

    def cycles_of(self, e: int) -> list[int]:
        return [i for i, c in enumerate(self.cycles) if e in c]

    def describe(self) -> str:
        sizes = ",".join(str(len(c)) for c in self.cycles)
        return f"{self.n_vertices} vertices, {self.n_edges} edges, cycles [{sizes}]"


def base_cycle(n: int, single_share: bool = True) -> Shape:
    """A lone ``n``-gon, vertices and edges numbered around it."""
    if n < 3:
        raise ShapeError(f"a polygon needs at least 3 sides, got {n}")
    edges = tuple((i, (i + 1) % n) for i in range(n))
    return Shape(n, edges, (tuple(range(n)),), (("base", n),), single_share)


def attach(s: Shape, path: Sequence[int], new_vertex_count: int) -> Shape:
    """Glue a new polygon onto ``s`` along ``path``.

    New vertices ``v1 .. vk`` are chained; ``v1`` joins the last path vertex
    and ``vk`` the first.  The new cycle runs along the path, then back
    through the new vertices.  A path edge may not already lie on two
    cycles.
    """
    path = list(path)
    k = new_vertex_count
    if len(path) < 2:
        raise InvalidPath("path needs at least two vertices")
    if k < 1:
        raise InvalidPath("need at least one new vertex")
    if len(set(path)) != len(path):
        raise InvalidPath(f"path {path} repeats a vertex")
    for v in path:
        if not 0 <= v < s.n_vertices:
            raise InvalidPath(f"no vertex {v}")
    path_edges = []
    for u, v in zip(path, path[1:]):
        e = s.edge_between(u, v)
        if e is None:
            raise InvalidPath(f"vertices {u} and {v} are not adjacent")
        path_edges.append(e)
    for e in path_edges:
        if len(s.cycles_of(e)) >= 2:
            raise SharedEdgeViolation(f"edge {e + 1} already lies on two cycles")
    if s.single_share:
        for i, c in enumerate(s.cycles):
            if len(set(c) & set(path_edges)) > 1:
                raise SharedEdgeViolation(
                    f"new cycle would share more than one edge with cycle {i + 1}")

    first_new = s.n_vertices
    ring = [path[-1]] + list(range(first_new, first_new + k)) + [path[0]]
    new_edges = [(a, b) for a, b in zip(ring, ring[1:])]
    first_edge = s.n_edges
    cycle = tuple(path_edges) + tuple(range(first_edge, first_edge + len(new_edges)))
    return Shape(
        s.n_vertices + k,
        s.edges + tuple(new_edges),
        s.cycles + (cycle,),
        s.trace + (("attach", tuple(path), k),),
        s.single_share,
    )


def relabel(s: Shape, labels: Sequence[int]) -> Shape:
    """Renumber edges: current edge ``i`` becomes edge ``labels[i]``."""
    labels = list(labels)
    if sorted(labels) != list(range(s.n_edges)):
        raise ShapeError(f"relabel needs a permutation of 1..{s.n_edges}")
    edges = [None] * s.n_edges
    for old, new in enumerate(labels):
        edges[new] = s.edges[old]
    cycles = tuple(tuple(labels[e] for e in c) for c in s.cycles)
    return Shape(s.n_vertices, tuple(edges), cycles,
                 s.trace + (("relabel", tuple(labels)),), s.single_share)


def replay(trace) -> Shape:
    """Rebuild a shape from its construction trace."""
    s = None
    for step in trace:
        if step[0] == "base":
            s = base_cycle(step[1])
        elif step[0] == "attach":
            s = attach(s, step[1], step[2])
        elif step[0] == "relabel":
            s = relabel(s, step[1])
        else:
            raise ShapeError(f"unknown trace step {step[0]!r}")
    return s


def cycle_perm(s: Shape, i: int, direction: str = FORWARD) -> Permutation:
    """Rotation of cycle ``i`` (0-based) by one step.

    Forward sends each edge to the next one in the cycle's listed order.
    """
    if not 0 <= i < s.n_cycles:
        raise IndexError(f"no cycle {i}")
    p = from_cycles(s.n_edges, [list(s.cycles[i])])
    if direction == FORWARD:
        return p
    if direction == BACKWARD:
        return inverse(p)
    raise ValueError(f"unknown direction {direction!r}")


def generators(s: Shape, direction: str = FORWARD) -> dict[str, Permutation]:
    return {name: cycle_perm(s, i, direction) for i, name in enumerate(s.move_names())}


def shared_edges(s: Shape, i: int, j: int) -> frozenset:
    if i == j:
        raise ValueError("need two distinct cycles")
    for x in (i, j):
        if not 0 <= x < s.n_cycles:
            raise IndexError(f"no cycle {x}")
    return frozenset(s.cycles[i]) & frozenset(s.cycles[j])


def all_cycles_odd(s: Shape) -> bool:
    return all(len(c) % 2 == 1 for c in s.cycles)


def label_complete(s: Shape) -> bool:
    """True when the rotations generate every permutation of the edges."""
    from .group import build_bsgs, group_order

    g = build_bsgs(s.n_edges, list(generators(s).items()))
    return group_order(g) == factorial(s.n_edges)


def two_cycle_shape(m1: int, m2: int) -> Shape:
    """An ``m1``-gon and an ``m2``-gon sharing one edge."""
    return attach(base_cycle(m1), [0, 1], m2 - 2)
