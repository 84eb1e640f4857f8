"""Reference implementations that share no code with the package.

Permutations here are plain lists ``p[x] = image of x``.
"""

from collections import deque
from itertools import permutations

# faces of the 2x2 square, one-based labels, clockwise
SQUARE_FACES = {
    "M1": (1, 4, 6, 3),
    "M2": (2, 5, 7, 4),
    "M3": (6, 9, 11, 8),
    "M4": (7, 10, 12, 9),
}
FIGURE2 = {1: "r", 2: "r", 4: "r", 3: "b", 6: "b", 8: "b",
           5: "w", 7: "w", 10: "w", 9: "g", 11: "g", 12: "g"}


def compose(p, q):
    return [q[p[x]] for x in range(len(p))]


def inverse(p):
    out = [0] * len(p)
    for x, y in enumerate(p):
        out[y] = x
    return out


def inversion_sign(p):
    n = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return -1 if n % 2 else 1


def track(letters, faces=SQUARE_FACES, n=12, backward=False):
    """Where each piece ends up after the letters act one after another.

    ``letters`` are ``(face, +1 | -1)``; labels are one-based, the result
    is zero-based.
    """
    slots = list(range(n))  # slots[position] = piece
    for face, e in letters:
        cyc = [c - 1 for c in faces[face]]
        steps = e if not backward else -e
        for _ in range(steps % len(cyc)):
            moved = slots[:]
            for i, pos in enumerate(cyc):
                moved[cyc[(i + 1) % len(cyc)]] = slots[pos]
            slots = moved
    out = [0] * n
    for pos, piece in enumerate(slots):
        out[piece] = pos
    return out


def closure_size(gens):
    """Group order by naive BFS over lists."""
    n = len(gens[0])
    start = tuple(range(n))
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple(g[i] for i in x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen)


def color_bfs(start, faces=SQUARE_FACES):
    """Distance histogram over colorings, strings as states."""
    moves = []
    for cyc in faces.values():
        cyc = [c - 1 for c in cyc]
        for shift in (1, -1):
            moves.append([(cyc[i], cyc[(i + shift) % len(cyc)]) for i in range(len(cyc))])
    dist = {start: 0}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for mv in moves:
            t = list(s)
            for a, b in mv:
                t[b] = s[a]
            t = "".join(t)
            if t not in dist:
                dist[t] = dist[s] + 1
                queue.append(t)
    hist = {}
    for d in dist.values():
        hist[d] = hist.get(d, 0) + 1
    return hist


def count_arrangements(colors):
    return len(set(permutations(colors)))
