"""Named example complexes and their built-in embeddings."""

from __future__ import annotations

import math
import re
from itertools import combinations

from .complex import Complex, build_complex, skeleton
from .constructions import ordered_product

CIRCLE_COORDS = ((1.0, 0.0), (-0.5, math.sqrt(3) / 2), (-0.5, -math.sqrt(3) / 2))


def simplex(n: int) -> Complex:
    if n < 0:
        raise ValueError("simplex dimension must be non-negative")
    return build_complex([str(i) for i in range(n + 1)], [list(range(n + 1))])


def circle() -> Complex:
    """The boundary of the triangle on vertices 0 < 1 < 2."""
    return skeleton(simplex(2), 1)


def interval() -> Complex:
    return simplex(1)


def torus() -> Complex:
    return ordered_product(circle(), circle()).complex


def path_complex(n: int = 3, labels=None) -> Complex:
    """A path with ``n`` vertices: ``0 - 1 - ... - (n-1)``."""
    labels = labels or [str(i) for i in range(n)]
    return build_complex(labels, [[i, i + 1] for i in range(n - 1)] or [[0]])


def boundary_of_simplex(n: int) -> Complex:
    """The boundary of the ``n``-simplex, a triangulated ``(n-1)``-sphere."""
    return build_complex([str(i) for i in range(n + 1)], list(combinations(range(n + 1), n)))


def example(name: str) -> Complex:
    """Resolve ``circle``, ``interval``, ``torus``, ``point``, ``simplex(n)`` / ``simplexN``."""
    name = name.strip().lower()
    fixed = {"circle": circle, "interval": interval, "torus": torus, "point": lambda: simplex(0)}
    if name in fixed:
        return fixed[name]()
    m = re.fullmatch(r"simplex\(?(\d+)\)?", name)
    if m:
        return simplex(int(m.group(1)))
    raise KeyError(f"unknown example {name!r}")


def example_embedding(name: str):
    """Built-in embedding for a named example, or ``None``."""
    from .planner import Embedding

    name = name.strip().lower()
    if name == "circle":
        return Embedding(2, CIRCLE_COORDS)
    if name == "interval":
        return Embedding(1, ((0.0,), (1.0,)))
    m = re.fullmatch(r"simplex\(?(\d+)\)?", name)
    if m or name == "point":
        n = int(m.group(1)) if m else 0
        # standard simplex: vertex i at the i-th unit vector in R^(n+1)
        return Embedding(n + 1, tuple(tuple(1.0 if j == i else 0.0 for j in range(n + 1)) for i in range(n + 1)))
    return None
