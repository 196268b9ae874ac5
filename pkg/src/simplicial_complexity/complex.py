"""Finite ordered abstract simplicial complexes stored by their maximal simplices.

A simplex is a strictly increasing tuple of vertex ids.  Vertex ids are
``0..n-1`` and their numeric order is the complex's vertex order.  Face
membership is always a subset test against the maximal simplices, so no
operation here materializes the full face lattice unless asked to.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

Simplex = tuple[int, ...]


class ComplexError(ValueError):
    """Raised for malformed complexes, subcomplexes, and vertex references."""


def _normalize(simplex: Iterable[int]) -> Simplex:
    return tuple(sorted(set(simplex)))


def reduce_to_antichain(simplices: Iterable[Iterable[int]]) -> tuple[Simplex, ...]:
    """Sort, dedupe and drop every simplex that is a face of another one."""
    unique = {_normalize(s) for s in simplices}
    unique.discard(())
    # Larger simplices first so every survivor only has to be tested
    # against already accepted (not smaller) ones.
    ordered = sorted(unique, key=lambda s: (-len(s), s))
    kept: list[Simplex] = []
    by_vertex: dict[int, list[frozenset[int]]] = {}
    for s in ordered:
        fs = frozenset(s)
        if any(fs <= other for other in by_vertex.get(s[0], ())):
            continue
        kept.append(s)
        for v in s:
            by_vertex.setdefault(v, []).append(fs)
    return tuple(sorted(kept))


@dataclass(frozen=True, eq=False)
class Complex:
    """An ordered simplicial complex.

    ``labels[i]`` names vertex ``i``; ``maximal`` is the lexicographically
    sorted antichain of maximal simplices.  Use :func:`build_complex` to
    construct one from arbitrary generators.
    """

    labels: tuple[str, ...]
    maximal: tuple[Simplex, ...]
    _key: tuple = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_key", (self.labels, self.maximal))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Complex):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    @cached_property
    def dim(self) -> int:
        return max(len(s) for s in self.maximal) - 1

    @cached_property
    def _containing(self) -> list[list[frozenset[int]]]:
        # vertex -> maximal simplices (as frozensets) containing it
        table: list[list[frozenset[int]]] = [[] for _ in self.labels]
        for s in self.maximal:
            fs = frozenset(s)
            for v in s:
                table[v].append(fs)
        return table

    @cached_property
    def _membership_cache(self) -> dict[frozenset[int], bool]:
        return {}

    @cached_property
    def label_index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    def contains(self, vertices: Iterable[int]) -> bool:
        """Membership test for an arbitrary vertex set (ids assumed valid)."""
        fs = vertices if isinstance(vertices, frozenset) else frozenset(vertices)
        cache = self._membership_cache
        hit = cache.get(fs)
        if hit is not None:
            return hit
        if not fs:
            result = False
        else:
            v = min(fs, key=lambda w: len(self._containing[w]))
            result = any(fs <= m for m in self._containing[v])
        if len(cache) < 1_000_000:
            cache[fs] = result
        return result

    def maximal_containing(self, v: int) -> list[frozenset[int]]:
        return self._containing[v]

    def check_vertices(self, vertices: Iterable[int]) -> None:
        for v in vertices:
            if not (isinstance(v, int) and 0 <= v < self.n_vertices):
                raise ComplexError(f"invalid vertex id {v!r} for complex with {self.n_vertices} vertices")

    def __repr__(self):
        return f"Complex(n_vertices={self.n_vertices}, n_maximal={len(self.maximal)}, dim={self.dim})"


def build_complex(labels: Sequence[str], generators: Iterable[Iterable[int]]) -> Complex:
    """Build a complex from vertex labels and any generating simplices.

    Generators are sorted, deduplicated and reduced to their maximal
    antichain.  Every label must be used by some generator.
    """
    labels = tuple(str(label) for label in labels)
    if len(set(labels)) != len(labels):
        raise ComplexError("duplicate vertex label")
    gens = [list(g) for g in generators]
    if not gens or all(len(g) == 0 for g in gens):
        raise ComplexError("a complex needs at least one non-empty generator")
    for g in gens:
        for v in g:
            if not (isinstance(v, int) and 0 <= v < len(labels)):
                raise ComplexError(f"vertex index {v!r} out of range")
    maximal = reduce_to_antichain(gens)
    used = {v for s in maximal for v in s}
    if len(used) != len(labels):
        missing = sorted(set(range(len(labels))) - used)
        raise ComplexError(f"vertices {missing} lie in no simplex")
    return Complex(labels, maximal)


def has_simplex(K: Complex, s: Iterable[int]) -> bool:
    """True iff ``s`` is a face of some maximal simplex of ``K``."""
    s = tuple(s)
    K.check_vertices(s)
    return K.contains(s)


def iter_simplices(K: Complex) -> Iterator[Simplex]:
    """Every simplex of ``K`` exactly once, ordered by dimension then lexicographically."""
    by_dim = all_simplices(K)
    for layer in by_dim:
        yield from layer


def all_simplices(K: Complex) -> list[list[Simplex]]:
    """Simplices grouped by dimension; each group sorted lexicographically."""
    layers: list[set[Simplex]] = [set() for _ in range(K.dim + 1)]
    for s in K.maximal:
        for k in range(1, len(s) + 1):
            layers[k - 1].update(combinations(s, k))
    return [sorted(layer) for layer in layers]


def f_vector(K: Complex) -> tuple[int, ...]:
    """Number of simplices in each dimension."""
    return tuple(len(layer) for layer in all_simplices(K))


def euler_characteristic(K: Complex) -> int:
    return sum((-1) ** d * n for d, n in enumerate(f_vector(K)))


def skeleton(K: Complex, d: int) -> Complex:
    """The ``d``-skeleton of ``K``; ``d >= dim K`` returns ``K`` unchanged."""
    if d < 0:
        raise ComplexError("skeleton dimension must be non-negative")
    if d >= K.dim:
        return K
    gens: set[Simplex] = set()
    for s in K.maximal:
        if len(s) - 1 <= d:
            gens.add(s)
        else:
            gens.update(combinations(s, d + 1))
    return Complex(K.labels, reduce_to_antichain(gens))


def relabel(K: Complex, mapping: dict[str, str] | Sequence[str]) -> Complex:
    """Rename vertices.

    ``mapping`` is either a label -> label dict or a sequence giving the
    new label for each vertex id.  Ids, and so the vertex order, are kept;
    only names change.
    """
    if isinstance(mapping, dict):
        if set(mapping) != set(K.labels) or len(set(mapping.values())) != len(mapping):
            raise ComplexError("relabeling must be a bijection on the vertex labels")
        new = tuple(str(mapping[label]) for label in K.labels)
    else:
        new = tuple(str(x) for x in mapping)
        if len(new) != K.n_vertices or len(set(new)) != len(new):
            raise ComplexError("relabeling must be a bijection on the vertex labels")
    return Complex(new, K.maximal)


def permute_vertices(K: Complex, order: Sequence[int]) -> Complex:
    """Reorder vertices: new vertex ``i`` is old vertex ``order[i]``.

    Produces an isomorphic complex with a different vertex order.
    """
    if sorted(order) != list(range(K.n_vertices)):
        raise ComplexError("order must be a permutation of the vertex ids")
    new_id = {old: new for new, old in enumerate(order)}
    labels = tuple(K.labels[old] for old in order)
    return Complex(labels, reduce_to_antichain([new_id[v] for v in s] for s in K.maximal))


def is_isomorphic_by_labels(K: Complex, L: Complex) -> bool:
    """Same simplices after identifying vertices with equal labels."""
    if set(K.labels) != set(L.labels):
        return False
    as_labels = lambda C: {frozenset(C.labels[v] for v in s) for s in C.maximal}
    return as_labels(K) == as_labels(L)


@dataclass(frozen=True, eq=False)
class Subcomplex:
    """A subcomplex of ``ambient`` given by an antichain of ambient simplices."""

    ambient: Complex
    maximal: tuple[Simplex, ...]

    def __post_init__(self):
        for s in self.maximal:
            if not self.ambient.contains(s):
                raise ComplexError(f"simplex {s} is not a simplex of the ambient complex")

    @classmethod
    def from_simplices(cls, ambient: Complex, simplices: Iterable[Iterable[int]]) -> "Subcomplex":
        return cls(ambient, reduce_to_antichain(simplices))

    @classmethod
    def whole(cls, K: Complex) -> "Subcomplex":
        return cls(K, K.maximal)

    def __eq__(self, other):
        if not isinstance(other, Subcomplex):
            return NotImplemented
        return self.ambient == other.ambient and self.maximal == other.maximal

    def __hash__(self):
        return hash(self.maximal)

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        """Ambient ids of the vertices used, in ambient order."""
        return tuple(sorted({v for s in self.maximal for v in s}))

    @cached_property
    def _local(self) -> Complex:
        index = {v: i for i, v in enumerate(self.vertices)}
        labels = tuple(self.ambient.labels[v] for v in self.vertices)
        return Complex(labels, tuple(sorted(tuple(index[v] for v in s) for s in self.maximal)))

    def as_complex(self) -> Complex:
        """Standalone copy with inherited vertex order; see :attr:`vertices` for the back-map."""
        if not self.maximal:
            raise ComplexError("empty subcomplex has no standalone complex")
        return self._local

    def contains(self, s: Iterable[int]) -> bool:
        fs = frozenset(s)
        return any(fs <= frozenset(m) for m in self.maximal)


def is_cover(K: Complex, pieces: Sequence[Subcomplex]) -> bool:
    """True iff every maximal simplex of ``K`` lies in at least one piece."""
    for piece in pieces:
        if piece.ambient != K:
            raise ComplexError("piece has a different ambient complex")
    covered = {s for piece in pieces for s in piece.maximal}
    remaining = [s for s in K.maximal if s not in covered]
    # Pieces only list ambient simplices, so an ambient maximal simplex is
    # covered exactly when it appears verbatim in some piece.
    return not remaining


def uncovered(K: Complex, pieces: Sequence[Subcomplex]) -> list[Simplex]:
    covered = {s for piece in pieces for s in piece.maximal}
    return [s for s in K.maximal if s not in covered]
