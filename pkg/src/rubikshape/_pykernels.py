"""NumPy versions of the BFS kernels, used when the extension is missing."""

import numpy as np

UNSEEN = 255


def expand(frontier, images):
    """Apply every move to every state; output is state-major, move-minor."""
    frontier = np.asarray(frontier, dtype=np.uint32)
    images = np.asarray(images, dtype=np.int64)
    m, e = images.shape
    out = np.zeros((frontier.shape[0], m), dtype=np.uint32)
    for x in range(e):
        colour = (frontier >> np.uint32(2 * x)) & np.uint32(3)
        for mv in range(m):
            out[:, mv] |= colour << np.uint32(2 * images[mv, x])
    return out.ravel()


def merge(candidates, dist, parent, level, n_moves):
    """Mark first-seen candidates with ``level``; return them in order."""
    candidates = np.asarray(candidates, dtype=np.uint32)
    fresh = np.flatnonzero(dist[candidates] == UNSEEN)
    if fresh.size == 0:
        return np.empty(0, dtype=np.uint32)
    _, first = np.unique(candidates[fresh], return_index=True)
    keep = fresh[np.sort(first)]
    states = candidates[keep]
    dist[states] = level
    parent[states] = keep % n_moves
    return states
