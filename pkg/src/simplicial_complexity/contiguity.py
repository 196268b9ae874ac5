"""Simplicial maps, contiguity, and chains of contiguous maps.

A chain ``h_0, ..., h_c`` of simplicial maps where every consecutive pair is
contiguous witnesses that ``h_0`` and ``h_c`` are ``c``-contiguous.  Chains
are found by search and always checked by :func:`verify_chain`; a failed
search (``None``) says nothing about whether a chain exists.
"""

from __future__ import annotations

import logging
import random
from collections import deque
from dataclasses import dataclass
from itertools import product as cartesian
from typing import Sequence

from .complex import Complex, Subcomplex

log = logging.getLogger(__name__)

EXACT_BFS_LIMIT = 10**4


class ContiguityError(ValueError):
    """Incompatible or non-simplicial maps handed to a contiguity operation."""


@dataclass(frozen=True, eq=False)
class SimplicialMap:
    """Vertex map ``domain -> codomain``; simpliciality is checked, not assumed."""

    domain: Complex
    codomain: Complex
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != self.domain.n_vertices:
            raise ContiguityError("image table must be total on the domain vertices")
        self.codomain.check_vertices(self.images)

    @classmethod
    def identity(cls, K: Complex) -> "SimplicialMap":
        return cls(K, K, tuple(range(K.n_vertices)))

    @classmethod
    def constant(cls, K: Complex, L: Complex, v: int) -> "SimplicialMap":
        return cls(K, L, (v,) * K.n_vertices)

    def __call__(self, simplex):
        return frozenset(self.images[v] for v in simplex)

    def __eq__(self, other):
        if not isinstance(other, SimplicialMap):
            return NotImplemented
        return self.images == other.images and self.domain == other.domain and self.codomain == other.codomain

    def __hash__(self):
        return hash(self.images)

    def with_images(self, images: Sequence[int]) -> "SimplicialMap":
        return SimplicialMap(self.domain, self.codomain, tuple(images))


def is_simplicial(f: SimplicialMap) -> bool:
    """Every maximal simplex of the domain lands on a simplex of the codomain."""
    return first_non_simplicial(f) is None


def first_non_simplicial(f: SimplicialMap):
    for s in f.domain.maximal:
        if not f.codomain.contains(f(s)):
            return s
    return None


def compose(f: SimplicialMap, g: SimplicialMap) -> SimplicialMap:
    """``f o g``: apply ``g`` first."""
    if g.codomain != f.domain:
        raise ContiguityError("cannot compose: codomain of the inner map is not the domain of the outer map")
    return SimplicialMap(g.domain, f.codomain, tuple(f.images[w] for w in g.images))


def restrict(f: SimplicialMap, J: Subcomplex) -> SimplicialMap:
    """``f`` on the standalone copy of ``J`` (vertex order inherited from the domain)."""
    if J.ambient != f.domain:
        raise ContiguityError("subcomplex does not live in the map's domain")
    return SimplicialMap(J.as_complex(), f.codomain, tuple(f.images[v] for v in J.vertices))


def _check_pair(f: SimplicialMap, g: SimplicialMap) -> None:
    if f.domain != g.domain or f.codomain != g.codomain:
        raise ContiguityError("maps must share domain and codomain")


def first_non_contiguous(f: SimplicialMap, g: SimplicialMap):
    L = f.codomain
    for s in f.domain.maximal:
        if not L.contains(f(s) | g(s)):
            return s
    return None


def contiguous_pair(f: SimplicialMap, g: SimplicialMap) -> bool:
    """``f(s) | g(s)`` is a simplex for every simplex ``s`` (maximal ones suffice)."""
    _check_pair(f, g)
    for h in (f, g):
        if not is_simplicial(h):
            raise ContiguityError("contiguity is only defined for simplicial maps")
    return first_non_contiguous(f, g) is None


@dataclass(frozen=True, eq=False)
class ContiguityChain:
    maps: tuple[SimplicialMap, ...]

    def __post_init__(self):
        if not self.maps:
            raise ContiguityError("a chain has at least one map")

    @property
    def length(self) -> int:
        return len(self.maps) - 1

    @property
    def start(self) -> SimplicialMap:
        return self.maps[0]

    @property
    def end(self) -> SimplicialMap:
        return self.maps[-1]

    def tables(self) -> list[tuple[int, ...]]:
        return [h.images for h in self.maps]


@dataclass
class ChainCheck:
    """Outcome of :func:`verify_chain`; falsy on failure, with a located reason."""

    ok: bool
    reason: str = ""
    step: int | None = None
    simplex: tuple | None = None

    def __bool__(self):
        return self.ok


def verify_chain(chain: ContiguityChain, expected_start: SimplicialMap, expected_end: SimplicialMap) -> ChainCheck:
    maps = chain.maps
    for i, h in enumerate(maps):
        if h.domain != expected_start.domain or h.codomain != expected_start.codomain:
            return ChainCheck(False, "map has the wrong domain or codomain", step=i)
        s = first_non_simplicial(h)
        if s is not None:
            return ChainCheck(False, f"map {i} is not simplicial on {s}", step=i, simplex=s)
    if maps[0].images != expected_start.images:
        return ChainCheck(False, "first map differs from the expected start", step=0)
    if maps[-1].images != expected_end.images:
        return ChainCheck(False, "last map differs from the expected end", step=len(maps) - 1)
    for i in range(1, len(maps)):
        s = first_non_contiguous(maps[i - 1], maps[i])
        if s is not None:
            return ChainCheck(False, f"maps {i - 1} and {i} are not contiguous on {s}", step=i, simplex=s)
    return ChainCheck(True)


def pad_chain(chain: ContiguityChain, c_target: int) -> ContiguityChain:
    """Extend by repeating the last map until the chain has length ``c_target``."""
    if c_target < chain.length:
        raise ContiguityError(f"cannot pad a chain of length {chain.length} down to {c_target}")
    return ContiguityChain(chain.maps + (chain.end,) * (c_target - chain.length))


def _extend(chain: ContiguityChain, new_start: SimplicialMap, new_end: SimplicialMap) -> ContiguityChain:
    for a, b in ((new_start, chain.start), (chain.end, new_end)):
        _check_pair(a, b)
        s = first_non_contiguous(a, b)
        if s is not None:
            raise AssertionError(f"expected a contiguous step, failed on {s}")
    return ContiguityChain((new_start,) + chain.maps + (new_end,))


def transport_chain(chain: ContiguityChain, new_start: SimplicialMap, new_end: SimplicialMap) -> ContiguityChain:
    """Re-anchor a chain on endpoints contiguous to its current ones (length grows by 2).

    Used to move a chain between two choices of identity approximation,
    whose projection composites are contiguous.
    """
    return _extend(chain, new_start, new_end)


def refine_chain(
    chain: ContiguityChain,
    lam: SimplicialMap,
    new_start: SimplicialMap,
    new_end: SimplicialMap,
) -> ContiguityChain:
    """Pull a chain back along ``lam: Sd(J) -> J`` and re-anchor it (length grows by 2)."""
    pulled = ContiguityChain(tuple(compose(h, lam) for h in chain.maps))
    return _extend(pulled, new_start, new_end)


# --- search -----------------------------------------------------------------


class _Moves:
    """Incremental simpliciality/contiguity checks for single-vertex edits."""

    def __init__(self, f: SimplicialMap):
        self.K = f.domain
        self.L = f.codomain
        self.maximal = self.K.maximal
        self.incident: list[list[int]] = [[] for _ in range(self.K.n_vertices)]
        for idx, s in enumerate(self.maximal):
            for v in s:
                self.incident[v].append(idx)
        self.dist = _graph_distances(self.L)

    def ok_local(self, prev: list[int], new: list[int], w: int) -> bool:
        contains = self.L.contains
        for idx in self.incident[w]:
            s = self.maximal[idx]
            img = frozenset(new[v] for v in s)
            if not contains(img):
                return False
            if not contains(img | frozenset(prev[v] for v in s)):
                return False
        return True


def _graph_distances(L: Complex) -> list[list[int]]:
    n = L.n_vertices
    adj: list[set[int]] = [set() for _ in range(n)]
    for s in L.maximal:
        for v in s:
            adj[v].update(s)
    inf = n + 1
    dist = [[inf] * n for _ in range(n)]
    for src in range(n):
        dist[src][src] = 0
        queue = deque([src])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if dist[src][v] == inf:
                    dist[src][v] = dist[src][u] + 1
                    queue.append(v)
    return dist


def _greedy_step(moves: _Moves, h: list[int], target: Sequence[int], order: Sequence[int], rng) -> list[int]:
    """One contiguous step from ``h`` that moves as many vertices toward ``target`` as possible."""
    new = list(h)
    dist = moves.dist
    L = moves.L
    changed = True
    while changed:
        changed = False
        for w in order:
            cur, goal = new[w], target[w]
            if cur == goal:
                continue
            candidates = [goal]
            # fall back to neighbours of the original value that get strictly closer
            here = dist[h[w]][goal]
            closer = [u for u in range(L.n_vertices) if u != goal and dist[h[w]][u] == 1 and dist[u][goal] < here]
            if rng is not None:
                rng.shuffle(closer)
            candidates.extend(closer)
            for cand in candidates:
                if cand == cur or dist[cand][goal] >= dist[cur][goal]:
                    continue
                new[w] = cand
                if moves.ok_local(h, new, w):
                    changed = True
                    break
                new[w] = cur
    return new


def _greedy_chain(f: SimplicialMap, g: SimplicialMap, c_max: int, order, rng) -> list[tuple[int, ...]] | None:
    moves = _Moves(f)
    h = list(f.images)
    target = g.images
    path = [tuple(h)]
    while tuple(h) != target:
        if len(path) - 1 >= c_max:
            return None
        new = _greedy_step(moves, h, target, order, rng)
        if new == h:
            return None
        h = new
        path.append(tuple(h))
    return path


def _bidirectional_greedy(f, g, c_max, order, rng):
    """Greedy from both ends; join as soon as the two frontiers are contiguous."""
    forward = _greedy_chain(f, g, c_max, order, rng)
    if forward is not None:
        return forward
    moves = _Moves(f)
    a, b = [tuple(f.images)], [tuple(g.images)]
    while len(a) + len(b) - 1 <= c_max:
        if _pair_ok(moves, a[-1], b[-1]):
            return a + b[::-1]
        grew = False
        if len(a) <= len(b):
            nxt = tuple(_greedy_step(moves, list(a[-1]), b[-1], order, rng))
            if nxt != a[-1]:
                a.append(nxt)
                grew = True
        if not grew:
            nxt = tuple(_greedy_step(moves, list(b[-1]), a[-1], order, rng))
            if nxt != b[-1]:
                b.append(nxt)
                grew = True
        if not grew:
            nxt = tuple(_greedy_step(moves, list(a[-1]), b[-1], order, rng))
            if nxt == a[-1]:
                return None
            a.append(nxt)
    return None


def _pair_ok(moves: _Moves, x: Sequence[int], y: Sequence[int]) -> bool:
    contains = moves.L.contains
    for s in moves.maximal:
        if not contains(frozenset(x[v] for v in s) | frozenset(y[v] for v in s)):
            return False
    return True


def _bfs_chain(f: SimplicialMap, g: SimplicialMap, c_max: int) -> list[tuple[int, ...]] | None:
    """Shortest chain by breadth-first search over simplicial vertex maps."""
    moves = _Moves(f)
    m = f.codomain.n_vertices
    contains = moves.L.contains

    def neighbours(x):
        # per-vertex candidates compatible with x on every incident simplex
        options = []
        for w in range(len(x)):
            opts = []
            for u in range(m):
                if all(contains(frozenset(x[v] for v in moves.maximal[i]) | {u}) for i in moves.incident[w]):
                    opts.append(u)
            options.append(opts)
        for y in cartesian(*options):
            if _pair_ok(moves, y, y) and _pair_ok(moves, x, y):
                yield y

    start, goal = f.images, g.images
    parent = {start: None}
    frontier = [start]
    depth = 0
    while frontier and depth < c_max and goal not in parent:
        depth += 1
        nxt = []
        for x in frontier:
            for y in neighbours(x):
                if y not in parent:
                    parent[y] = x
                    nxt.append(y)
        frontier = nxt
    if goal not in parent:
        return None
    path = [goal]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path[::-1]


def find_chain(
    f: SimplicialMap,
    g: SimplicialMap,
    c_max: int,
    strategy: str = "auto",
    seed: int = 0,
    restarts: int = 32,
    conflict_budget: int | None = None,
) -> ContiguityChain | None:
    """Search for a chain of contiguous simplicial maps from ``f`` to ``g``.

    Strategies: ``"bfs"`` (exact and shortest, only for tiny map spaces),
    ``"greedy"`` (move toward ``g`` vertex by vertex in domain order),
    ``"random"`` (greedy with seeded shuffled orders), ``"sat"`` (exact for
    each length up to ``c_max``, shortest first) and ``"auto"``: bfs when
    the map space is small enough, sat otherwise.

    Returns ``None`` when nothing was found within ``c_max``.  Only an
    exhaustive bfs or a sat run without ``conflict_budget`` rules a chain out.
    """
    _check_pair(f, g)
    if c_max < 0:
        raise ContiguityError("c_max must be non-negative")
    for h in (f, g):
        if not is_simplicial(h):
            raise ContiguityError("chain endpoints must be simplicial")
    if f.images == g.images:
        return ContiguityChain((f,))

    if strategy == "auto":
        space = f.codomain.n_vertices ** f.domain.n_vertices
        order = ["bfs"] if space <= EXACT_BFS_LIMIT else ["sat"]
    else:
        order = [strategy]

    for name in order:
        path = _run_strategy(name, f, g, c_max, seed, restarts, conflict_budget)
        if path is not None:
            chain = ContiguityChain(tuple(f.with_images(p) for p in path))
            check = verify_chain(chain, f, g)
            if not check:
                raise AssertionError(f"search produced an invalid chain: {check.reason}")
            return chain
    return None


def _run_strategy(name, f, g, c_max, seed, restarts, conflict_budget):
    domain_order = list(range(f.domain.n_vertices))
    if name == "bfs":
        return _bfs_chain(f, g, c_max)
    if name == "greedy":
        return _bidirectional_greedy(f, g, c_max, domain_order, None)
    if name == "random":
        rng = random.Random(seed)
        best = None
        for _ in range(restarts):
            order = list(domain_order)
            rng.shuffle(order)
            path = _bidirectional_greedy(f, g, c_max, order, rng)
            # canonical pick among successes: shortest, then lexicographically smallest
            if path is not None and (best is None or (len(path), path) < (len(best), best)):
                best = path
        return best
    if name == "sat":
        from .sat import sat_chain

        return sat_chain(f, g, c_max, conflict_budget=conflict_budget)
    raise ValueError(f"unknown chain search strategy {name!r}")
