"""Cover search for ``Sd^b(K x K)`` and the certificates it produces.

A certificate lists subcomplexes covering ``Sd^b(K x K)`` and, for each, a
chain of contiguous maps from the first projection composite (restricted to
the piece) to the second.  ``len(pieces) - 1`` is then an upper bound for the
``(b, c)`` simplicial complexity of ``K``.  Certificates are rebuilt from
scratch by :func:`verify_certificate`; nothing computed during the search is
trusted.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Iterable

from .complex import Complex, Subcomplex, is_cover, uncovered
from .constructions import (
    DEFAULT_BUDGET,
    ApproxPolicy,
    SizeBudgetExceeded,
    Tower,
    approx_identity,
    barycentric_subdivision,
    build_tower,
)
from .contiguity import (
    ContiguityChain,
    SimplicialMap,
    find_chain,
    pad_chain,
    refine_chain,
    restrict,
    transport_chain,
    verify_chain,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CertPiece:
    piece: Subcomplex
    chain: ContiguityChain


@dataclass(frozen=True, eq=False)
class CoverCertificate:
    base: Complex
    b: int
    c: int
    policy: ApproxPolicy
    pieces: tuple[CertPiece, ...]

    @property
    def bound(self) -> int:
        return len(self.pieces) - 1


@dataclass
class CertificateCheck:
    ok: bool
    reason: str = ""
    piece: int | None = None
    step: int | None = None
    simplex: tuple | None = None

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "certificate verified"
        where = [f"{k}={v}" for k, v in (("piece", self.piece), ("step", self.step), ("simplex", self.simplex)) if v is not None]
        return f"certificate rejected: {self.reason}" + (f" ({', '.join(where)})" if where else "")


@dataclass
class BoundReport:
    """Result of :func:`sc_upper_bound`.

    ``bound`` is set only when a verified certificate is attached.
    ``status`` is ``"found"``, ``"budget-exhausted"`` or ``"size-abort"``;
    neither failure is a mathematical statement about ``K``.
    """

    status: str
    bound: int | None
    b: int
    c: int | None
    certificate: CoverCertificate | None = None
    stats: dict = field(default_factory=dict)


def verify_certificate(cert: CoverCertificate, size_budget: int = DEFAULT_BUDGET) -> CertificateCheck:
    """Rebuild the tower and both projection composites and re-check everything."""
    try:
        tower = build_tower(cert.base, cert.b, size_budget)
    except SizeBudgetExceeded as exc:
        return CertificateCheck(False, str(exc))
    top = tower.top
    p1 = tower.projection(1, cert.policy)
    p2 = tower.projection(2, cert.policy)
    if not cert.pieces:
        return CertificateCheck(False, "certificate has no pieces")
    for k, item in enumerate(cert.pieces):
        if item.piece.ambient != top:
            return CertificateCheck(False, "piece does not live in the rebuilt tower", piece=k)
        if not item.piece.maximal:
            return CertificateCheck(False, "empty piece", piece=k)
    if not is_cover(top, [item.piece for item in cert.pieces]):
        missing = uncovered(top, [item.piece for item in cert.pieces])
        return CertificateCheck(False, "pieces do not cover the tower", simplex=missing[0])
    for k, item in enumerate(cert.pieces):
        if item.chain.length > cert.c:
            return CertificateCheck(False, f"chain length {item.chain.length} exceeds c={cert.c}", piece=k)
        start, end = restrict(p1, item.piece), restrict(p2, item.piece)
        check = verify_chain(item.chain, start, end)
        if not check:
            return CertificateCheck(False, check.reason, piece=k, step=check.step, simplex=check.simplex)
    return CertificateCheck(True)


# --- seeds ------------------------------------------------------------------


def _diagonal_vertices(tower: Tower, level: int) -> list[bool]:
    """Vertices of ``Sd^level(K x K)`` whose carrier lies in the diagonal copy of ``K``."""
    decode = tower.product.decode
    diagonal = {v for v, (a, b) in enumerate(decode) if a == b}
    return [carrier <= diagonal for carrier in tower.carriers(level)]


def seed_pieces(tower: Tower, style: str, covered: Iterable[Subcomplex] = ()) -> list[Subcomplex]:
    """Starting pieces for the cover search.

    ``"diagonal"``: for ``b >= 1`` the derived neighbourhood of the diagonal
    (flags whose smallest member meets the diagonal of the previous level),
    which collapses onto the diagonal; for ``b == 0`` the simplices whose
    vertices ``(u, v)`` all have ``{u, v}`` a simplex of ``K``.
    ``"antidiagonal"``: the flags that avoid the diagonal completely (for
    ``b == 0``: whatever the diagonal seed misses).  ``"greedy-growth"``: one
    singleton piece per maximal simplex not covered by ``covered``.
    """
    top = tower.top
    if style == "greedy-growth":
        return [Subcomplex(top, (s,)) for s in uncovered(top, list(covered))]
    if style not in ("diagonal", "antidiagonal"):
        raise ValueError(f"unknown seed style {style!r}")
    if tower.b == 0:
        K = tower.base
        near = [K.contains({a, b}) for a, b in tower.product.decode]
        diag = [s for s in top.maximal if all(near[v] for v in s)]
        if style == "diagonal":
            chosen = diag
        else:
            taken = set(diag)
            chosen = [s for s in top.maximal if s not in taken]
    else:
        on_diag = _diagonal_vertices(tower, tower.b - 1)
        parents = tower.levels[-1].decode
        chosen = []
        for s in top.maximal:
            flag = sorted((parents[w] for w in s), key=len)
            if style == "diagonal":
                keep = any(on_diag[v] for v in flag[0])
            else:
                keep = not any(all(on_diag[v] for v in sigma) for sigma in flag)
            if keep:
                chosen.append(s)
    return [Subcomplex(top, tuple(chosen))] if chosen else []


# --- search -----------------------------------------------------------------


class _Searcher:
    def __init__(self, tower, policy, c_max, seed, budget, strategy, conflict_budget):
        self.tower = tower
        self.top = tower.top
        self.p1 = tower.projection(1, policy)
        self.p2 = tower.projection(2, policy)
        self.c_max = c_max
        self.seed = seed
        self.budget = budget
        self.strategy = strategy
        self.conflict_budget = conflict_budget
        self.calls = 0
        self.cache: dict[tuple, ContiguityChain | None] = {}

    @property
    def exhausted(self) -> bool:
        return self.budget is not None and self.calls >= self.budget

    def chain_for(self, simplices) -> ContiguityChain | None:
        key = tuple(sorted(set(simplices)))
        if key in self.cache:
            return self.cache[key]
        if self.exhausted:
            return None
        self.calls += 1
        piece = Subcomplex(self.top, key)
        f, g = restrict(self.p1, piece), restrict(self.p2, piece)
        chain = find_chain(f, g, self.c_max, self.strategy, self.seed, conflict_budget=self.conflict_budget)
        self.cache[key] = chain
        return chain

    def neighbours(self):
        by_vertex: dict[int, list] = {}
        for s in self.top.maximal:
            for v in s:
                by_vertex.setdefault(v, []).append(s)
        return {s: sorted({t for v in s for t in by_vertex[v]} - {s}) for s in self.top.maximal}

    def grow(self, start, pool, order_adj) -> list:
        """Grow a piece from ``start`` by adjacent maximal simplices while a chain exists."""
        piece = [start]
        if self.chain_for(piece) is None:
            return []
        members = {start}
        frontier = list(order_adj[start])
        rejected = set()
        while frontier and not self.exhausted:
            s = frontier.pop(0)
            if s in members or s in rejected or s not in pool:
                continue
            if self.chain_for(piece + [s]) is not None:
                piece.append(s)
                members.add(s)
                frontier.extend(t for t in order_adj[s] if t not in members)
            else:
                rejected.add(s)
        return piece

    def rebalance(self, good, bad, rounds: int = 8):
        """Move frontier simplices of the failing piece into the working one."""
        good, bad = list(good), list(bad)
        for _ in range(rounds):
            if self.exhausted:
                break
            good_vertices = {v for s in good for v in s}
            frontier = [s for s in bad if good_vertices.intersection(s)]
            moved = [s for s in frontier if self.chain_for(good + [s]) is not None]
            if not moved:
                break
            good = good + moved
            bad = [s for s in bad if s not in set(moved)]
            if not bad or self.chain_for(bad) is not None:
                return good, bad
        return None


def _certificate(tower, policy, pieces, searcher) -> CoverCertificate:
    items = []
    for simplices in pieces:
        key = tuple(sorted(set(simplices)))
        chain = searcher.chain_for(key)
        items.append(CertPiece(Subcomplex(tower.top, key), chain))
    c = max(item.chain.length for item in items)
    return CoverCertificate(tower.base, tower.b, c, ApproxPolicy(policy), tuple(items))


def _search_level(tower, policy, c_max, max_pieces, seed, budget, strategy, conflict_budget, stats):
    searcher = _Searcher(tower, policy, c_max, seed, budget, strategy, conflict_budget)
    top = tower.top
    found = None

    if searcher.chain_for(top.maximal) is not None:
        found = [list(top.maximal)]

    if found is None and max_pieces >= 2:
        diag = seed_pieces(tower, "diagonal")
        anti = seed_pieces(tower, "antidiagonal")
        if diag and anti:
            d, a = list(diag[0].maximal), list(anti[0].maximal)
            ok_d, ok_a = searcher.chain_for(d) is not None, searcher.chain_for(a) is not None
            stats["seed_diagonal"] = ok_d
            stats["seed_antidiagonal"] = ok_a
            if ok_d and ok_a:
                found = [d, a]
            elif ok_d or ok_a:
                good, bad = (d, a) if ok_d else (a, d)
                moved = searcher.rebalance(good, bad)
                if moved is not None:
                    found = [moved[0], moved[1]] if ok_d else [moved[1], moved[0]]

    if found is None:
        # greedy growth: grow pieces from the first uncovered simplex
        adj = searcher.neighbours()
        pieces: list[list] = []
        remaining = list(top.maximal)
        while remaining and len(pieces) < max_pieces and not searcher.exhausted:
            grown = searcher.grow(remaining[0], set(top.maximal), adj)
            if not grown:
                break
            pieces.append(grown)
            taken = {s for p in pieces for s in p}
            remaining = [s for s in top.maximal if s not in taken]
        if not remaining and pieces:
            found = pieces

    stats["chain_searches"] = stats.get("chain_searches", 0) + searcher.calls
    if found is None:
        return None
    return _certificate(tower, policy, found, searcher)


def sc_upper_bound(
    K: Complex,
    b: int,
    c_max: int,
    max_pieces: int,
    seed: int = 0,
    budget: int | None = 1000,
    policy: ApproxPolicy = ApproxPolicy.MAX,
    strategy: str = "auto",
    b_max: int | None = None,
    size_budget: int = DEFAULT_BUDGET,
    conflict_budget: int | None = 20_000,
) -> BoundReport:
    """Look for a cover certificate with at most ``max_pieces`` pieces.

    ``budget`` caps the number of chain searches per level and
    ``conflict_budget`` the SAT effort per chain length tried.  When
    ``b_max > b`` the search moves on to finer subdivisions after a failure.
    The certificate is verified before it is returned.
    """
    if b < 0 or c_max < 0 or max_pieces < 1:
        raise ValueError("need b >= 0, c_max >= 0 and max_pieces >= 1")
    policy = ApproxPolicy(policy)
    stats: dict = {}
    t0 = time.perf_counter()
    last = b
    for level in range(b, max(b, b_max or b) + 1):
        last = level
        try:
            tower = build_tower(K, level, size_budget)
        except SizeBudgetExceeded as exc:
            stats["size_abort"] = str(exc)
            stats["seconds"] = time.perf_counter() - t0
            return BoundReport("size-abort", None, level, None, None, stats)
        cert = _search_level(tower, policy, c_max, max_pieces, seed, budget, strategy, conflict_budget, stats)
        if cert is not None:
            check = verify_certificate(cert, size_budget)
            if not check:
                raise AssertionError(f"search produced an invalid certificate: {check}")
            stats["chain_lengths"] = [item.chain.length for item in cert.pieces]
            stats["piece_sizes"] = [len(item.piece.maximal) for item in cert.pieces]
            stats["seconds"] = time.perf_counter() - t0
            return BoundReport("found", cert.bound, level, cert.c, cert, stats)
        log.info("no cover found at b=%d", level)
    stats["seconds"] = time.perf_counter() - t0
    return BoundReport("budget-exhausted", None, last, None, None, stats)


# --- certificate algebra ----------------------------------------------------


def pad_certificate(cert: CoverCertificate, c_target: int) -> CoverCertificate:
    """Same cover, every chain padded to ``c_target``."""
    pieces = tuple(CertPiece(p.piece, pad_chain(p.chain, c_target)) for p in cert.pieces)
    return CoverCertificate(cert.base, cert.b, c_target, cert.policy, pieces)


def transport_certificate(cert: CoverCertificate, policy: ApproxPolicy) -> CoverCertificate:
    """The same cover certified for another identity approximation, at ``c + 2``."""
    policy = ApproxPolicy(policy)
    tower = build_tower(cert.base, cert.b)
    q1, q2 = tower.projection(1, policy), tower.projection(2, policy)
    pieces = []
    for item in cert.pieces:
        piece = Subcomplex(tower.top, item.piece.maximal)
        chain = transport_chain(_rebind(item.chain, piece), restrict(q1, piece), restrict(q2, piece))
        pieces.append(CertPiece(piece, chain))
    return CoverCertificate(cert.base, cert.b, cert.c + 2, policy, tuple(pieces))


def subdivide_piece(tower_next: Tower, piece: Subcomplex) -> Subcomplex:
    """``Sd(J)`` as a subcomplex of the next tower level."""
    level = tower_next.levels[-1]
    index = {s: i for i, s in enumerate(level.decode)}
    sd_local = barycentric_subdivision(piece.as_complex())
    back = piece.vertices
    simplices = []
    for s in sd_local.complex.maximal:
        simplices.append(tuple(sorted(index[tuple(back[v] for v in sd_local.decode[w])] for w in s)))
    return Subcomplex(tower_next.top, tuple(sorted(simplices)))


def refine_certificate(cert: CoverCertificate, lam_policy: ApproxPolicy | None = None) -> CoverCertificate:
    """Certificate for ``(b + 1, c + 2)`` with pieces ``Sd(J)``.

    Each chain is pulled back along an approximation ``Sd(J) -> J`` of the
    identity (by default with the certificate's own policy) and re-anchored
    on the projection composites of the finer tower.
    """
    lam_policy = ApproxPolicy(lam_policy or cert.policy)
    nxt = build_tower(cert.base, cert.b + 1)
    q1, q2 = nxt.projection(1, cert.policy), nxt.projection(2, cert.policy)
    pieces = []
    for item in cert.pieces:
        J = item.piece
        sd_J = subdivide_piece(nxt, J)
        local = barycentric_subdivision(J.as_complex())
        if local.complex.maximal != sd_J.as_complex().maximal:
            raise AssertionError("subdivided piece does not match the finer tower")
        lam = approx_identity(local, lam_policy)
        lam = SimplicialMap(sd_J.as_complex(), J.as_complex(), lam.images)
        chain = refine_chain(item.chain, lam, restrict(q1, sd_J), restrict(q2, sd_J))
        pieces.append(CertPiece(sd_J, chain))
    return CoverCertificate(cert.base, cert.b + 1, cert.c + 2, cert.policy, tuple(pieces))


def _rebind(chain: ContiguityChain, piece: Subcomplex) -> ContiguityChain:
    """Same image tables, re-attached to ``piece``'s standalone complex."""
    dom = piece.as_complex()
    return ContiguityChain(tuple(SimplicialMap(dom, h.codomain, h.images) for h in chain.maps))
