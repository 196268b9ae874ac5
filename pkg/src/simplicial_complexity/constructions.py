"""Ordered products, barycentric subdivision, and the maps that approximate the identity.

Canonical vertex labels make towers portable: a product vertex is named
``"(a,b)"`` from the factor labels and a subdivision vertex ``"{x,y,...}"``
from the parent labels in parent order.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations, permutations
from math import factorial

from .complex import Complex, ComplexError, Simplex, all_simplices, reduce_to_antichain
from .contiguity import SimplicialMap, compose

DEFAULT_BUDGET = 10_000_000


class SizeBudgetExceeded(RuntimeError):
    """A construction would produce more top simplices than the budget allows."""

    def __init__(self, projected: int, budget: int, what: str = "construction"):
        super().__init__(f"{what} would have {projected} maximal simplices (budget {budget})")
        self.projected = projected
        self.budget = budget


class ApproxPolicy(str, Enum):
    """Which vertex of a parent simplex its barycenter is sent to."""

    MIN = "min"
    MAX = "max"

    def pick(self, simplex: Simplex) -> int:
        return simplex[0] if self is ApproxPolicy.MIN else simplex[-1]


@dataclass(frozen=True, eq=False)
class ProductComplex:
    complex: Complex
    left: Complex
    right: Complex
    decode: tuple[tuple[int, int], ...]


@dataclass(frozen=True, eq=False)
class SubdivisionComplex:
    complex: Complex
    parent: Complex
    decode: tuple[Simplex, ...]


def ordered_product(K: Complex, L: Complex) -> ProductComplex:
    """The ordered product ``K x L``.

    Simplices are chains in the componentwise order on vertex pairs whose
    two projections are simplices of the factors.  Its maximal simplices
    are the monotone lattice paths through ``s x t`` for maximal ``s``, ``t``.
    """
    m = L.n_vertices
    decode = tuple((u, v) for u in range(K.n_vertices) for v in range(m))
    labels = tuple(f"({K.labels[u]},{L.labels[v]})" for u, v in decode)
    gens: list[Simplex] = []
    for s in K.maximal:
        for t in L.maximal:
            p, q = len(s) - 1, len(t) - 1
            # a path is the set of positions among p+q steps that advance in s
            for ups in combinations(range(p + q), p):
                i = j = 0
                chain = [s[0] * m + t[0]]
                up = set(ups)
                for step in range(p + q):
                    if step in up:
                        i += 1
                    else:
                        j += 1
                    chain.append(s[i] * m + t[j])
                gens.append(tuple(chain))
    return ProductComplex(Complex(labels, reduce_to_antichain(gens)), K, L, decode)


def _label_set(parent: Complex, s: Simplex) -> str:
    return "{" + ",".join(parent.labels[v] for v in s) + "}"


def projected_subdivision_size(K: Complex, b: int) -> int:
    """Number of maximal simplices of ``Sd^b(K)``, computed without building it."""
    return sum(factorial(len(s)) ** b for s in K.maximal)


def barycentric_subdivision(K: Complex, budget: int = DEFAULT_BUDGET) -> SubdivisionComplex:
    """First barycentric subdivision.

    Vertices are the simplices of ``K`` ordered by dimension, then
    lexicographically; maximal simplices are the full flags of the maximal
    simplices of ``K``.
    """
    projected = projected_subdivision_size(K, 1)
    if projected > budget:
        raise SizeBudgetExceeded(projected, budget, "barycentric subdivision")
    decode = tuple(s for layer in all_simplices(K) for s in layer)
    index = {s: i for i, s in enumerate(decode)}
    gens = []
    for s in K.maximal:
        for perm in permutations(s):
            gens.append(tuple(sorted(index[tuple(sorted(perm[:k]))] for k in range(1, len(perm) + 1))))
    labels = tuple(_label_set(K, s) for s in decode)
    # flags of distinct maximal simplices end at distinct tops: already an antichain
    return SubdivisionComplex(Complex(labels, tuple(sorted(gens))), K, decode)


def iterated_subdivision(K: Complex, b: int, budget: int = DEFAULT_BUDGET) -> list[SubdivisionComplex]:
    """``b`` successive subdivisions of ``K`` (empty list when ``b == 0``).

    The projected size of the last level is checked before anything is built.
    """
    if b < 0:
        raise ValueError("b must be non-negative")
    projected = projected_subdivision_size(K, b)
    if projected > budget:
        raise SizeBudgetExceeded(projected, budget, f"Sd^{b}")
    levels: list[SubdivisionComplex] = []
    current = K
    for _ in range(b):
        level = barycentric_subdivision(current, budget)
        levels.append(level)
        current = level.complex
    return levels


def approx_identity(S: SubdivisionComplex, policy: ApproxPolicy = ApproxPolicy.MAX) -> SimplicialMap:
    """Simplicial approximation ``Sd(K) -> K`` of the identity.

    Each barycenter goes to the smallest or largest vertex of the simplex it
    subdivides.
    """
    policy = ApproxPolicy(policy)
    return SimplicialMap(S.complex, S.parent, tuple(policy.pick(s) for s in S.decode))


@dataclass(frozen=True, eq=False)
class Tower:
    """``Sd^b(K x K)`` together with every intermediate level."""

    base: Complex
    product: ProductComplex
    levels: tuple[SubdivisionComplex, ...]

    @property
    def b(self) -> int:
        return len(self.levels)

    @property
    def top(self) -> Complex:
        return self.levels[-1].complex if self.levels else self.product.complex

    def complex_at(self, level: int) -> Complex:
        return self.levels[level - 1].complex if level else self.product.complex

    def projection(self, i: int, policy: ApproxPolicy = ApproxPolicy.MAX) -> SimplicialMap:
        return projection_composite(self.product, list(self.levels), i, policy)

    def carriers(self, level: int | None = None) -> tuple[frozenset[int], ...]:
        """For each vertex of ``Sd^level``, the vertices of its carrier simplex in ``K x K``."""
        level = self.b if level is None else level
        out = tuple(frozenset((v,)) for v in range(self.product.complex.n_vertices))
        for lv in self.levels[:level]:
            out = tuple(frozenset().union(*(out[v] for v in s)) for s in lv.decode)
        return out


def build_tower(K: Complex, b: int, budget: int = DEFAULT_BUDGET) -> Tower:
    product = ordered_product(K, K)
    return Tower(K, product, tuple(iterated_subdivision(product.complex, b, budget)))


def factor_projection(P: ProductComplex, i: int) -> SimplicialMap:
    if i not in (1, 2):
        raise ValueError("projection index must be 1 or 2")
    target = P.left if i == 1 else P.right
    return SimplicialMap(P.complex, target, tuple(pair[i - 1] for pair in P.decode))


def projection_composite(
    P: ProductComplex,
    levels: list[SubdivisionComplex],
    i: int,
    policy: ApproxPolicy = ApproxPolicy.MAX,
) -> SimplicialMap:
    """``pr_i`` composed with the chain of identity approximations down to ``K x K``."""
    expected = P.complex
    for level in levels:
        if level.parent != expected:
            raise ComplexError("subdivision levels do not form a tower over the product")
        expected = level.complex
    f = factor_projection(P, i)
    for level in levels:
        f = compose(f, approx_identity(level, policy))
    return f


def project_to_level(tower: Tower, level: int, policy: ApproxPolicy = ApproxPolicy.MAX) -> SimplicialMap:
    """The composite of identity approximations ``Sd^b -> Sd^level``."""
    f = SimplicialMap.identity(tower.top)
    for lv in reversed(tower.levels[level:]):
        f = compose(approx_identity(lv, policy), f)
    return f
