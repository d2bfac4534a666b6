"""Exact word-metric distances on circulant (Cayley) graphs of Z_q.

Cayley graphs are vertex-transitive, so a single BFS from 0 gives the
diameter as the eccentricity of 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from .model import GeneratorSet, GroupSpec

#: Distance sentinel for residues not reachable from 0.
UNREACHABLE = np.iinfo(np.uint32).max


@dataclass(frozen=True, eq=False)
class DistanceProfile:
    q: int
    distances: np.ndarray  # uint32, UNREACHABLE where not reachable
    eccentricity: int
    reachable_count: int
    ball_sizes: np.ndarray  # int64, |B_0|, |B_1|, ..., |B_ecc|

    @property
    def diameter(self) -> int | None:
        """Diameter of the graph, or None if it is not strongly connected."""
        return self.eccentricity if self.reachable_count == self.q else None

    def distance(self, x: int) -> int | None:
        d = int(self.distances[x % self.q])
        return None if d == UNREACHABLE else d

    def same_as(self, other: "DistanceProfile") -> bool:
        return (self.q == other.q and self.eccentricity == other.eccentricity
                and self.reachable_count == other.reachable_count
                and np.array_equal(self.ball_sizes, other.ball_sizes)
                and np.array_equal(self.distances, other.distances))


@numba.njit(cache=True, nogil=True)
def _bfs_queue(q, steps, dist):
    # Level-synchronous: the next frontier is at most len(steps) times the
    # current one, and frontiers of circulant graphs stay far below q, so
    # memory stays near the 4q bytes of ``dist``.
    frontier = np.zeros(1, np.int64)
    dist[0] = 0
    levels = np.zeros(64, np.int64)
    levels[0] = 1
    nlev = 1
    nsteps = steps.shape[0]
    while True:
        nxt = np.empty(frontier.shape[0] * nsteps, np.int64)
        n = 0
        d = nlev
        for v in frontier:
            for t in range(nsteps):
                w = v + steps[t]
                if w >= q:
                    w -= q
                if dist[w] == 0xFFFFFFFF:
                    dist[w] = d
                    nxt[n] = w
                    n += 1
        if n == 0:
            break
        if nlev == levels.shape[0]:
            grown = np.zeros(2 * nlev, np.int64)
            grown[:nlev] = levels
            levels = grown
        levels[nlev] = n
        nlev += 1
        frontier = nxt[:n]
    return levels[:nlev].copy()


def _bfs_bitset(q: int, steps: list[int], dist: np.ndarray) -> np.ndarray:
    frontier = np.zeros(q, dtype=bool)
    visited = np.zeros(q, dtype=bool)
    nxt = np.empty(q, dtype=bool)
    frontier[0] = visited[0] = True
    dist[0] = 0
    levels = [1]
    r = 0
    while True:
        nxt[:] = False
        for s in steps:
            nxt[s:] |= frontier[:q - s]
            nxt[:s] |= frontier[q - s:]
        nxt &= ~visited
        idx = np.flatnonzero(nxt)
        if idx.size == 0:
            break
        r += 1
        dist[idx] = r
        visited |= nxt
        levels.append(idx.size)
        frontier, nxt = nxt, frontier
    return np.asarray(levels, dtype=np.int64)


def distance_profile(group: GroupSpec, gens: GeneratorSet, method: str = "auto") -> DistanceProfile:
    """BFS distances from 0 under the steps {+g} (directed) or {+g, -g} (symmetric).

    ``method`` is ``"queue"`` (compiled BFS over explicit frontier arrays,
    also used for ``"auto"``) or ``"bitset"`` (numpy sweep over two boolean
    frontier maps, O(q) per level).  Both produce identical profiles.
    """
    gens.validate(group)
    q = group.q
    steps = gens.steps(q)
    dist = np.full(q, UNREACHABLE, dtype=np.uint32)
    if method in ("auto", "queue"):
        levels = _bfs_queue(q, np.asarray(steps, dtype=np.int64), dist)
    elif method == "bitset":
        levels = _bfs_bitset(q, steps, dist)
    else:
        raise ValueError(f"unknown BFS method {method!r}")
    ball_sizes = np.cumsum(levels)
    return DistanceProfile(q=q, distances=dist, eccentricity=len(levels) - 1,
                           reachable_count=int(ball_sizes[-1]), ball_sizes=ball_sizes)


def diameter(group: GroupSpec, gens: GeneratorSet) -> int | None:
    return distance_profile(group, gens).diameter
