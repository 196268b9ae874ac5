"""Piecewise-linear motion planners read off from cover certificates.

A pair of configurations ``(x, y)`` is a point of the realized tower.  Its
carrier simplex ``a`` lies in some piece ``J``, and the chain
``h_0, ..., h_c`` on ``J`` moves ``x`` to ``y`` through the points
``|h_i|(a)``.  Consecutive points share a simplex of ``K`` (the end
segments by the approximation property of the projections, the middle ones
by contiguity), so the straight segments between them stay in ``|K|``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .complex import Complex
from .constructions import Tower, build_tower
from .cover import CoverCertificate

TOL = 1e-9


class PlannerError(ValueError):
    pass


class OutsideRealization(PlannerError):
    """The configuration pair is not a point of the realized complex."""


@dataclass(frozen=True)
class Embedding:
    """Vertex coordinates; simplices are realized as convex hulls."""

    dim: int
    coords: tuple[tuple[float, ...], ...]

    def array(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=float).reshape(len(self.coords), self.dim)


@dataclass(frozen=True)
class PLPath:
    breakpoints: tuple[tuple[float, ...], ...]
    times: tuple[float, ...]

    def __post_init__(self):
        if len(self.breakpoints) != len(self.times) or len(self.times) < 2:
            raise PlannerError("a path needs matching breakpoints and times, at least two of each")
        if self.times[0] != 0.0 or self.times[-1] != 1.0 or any(b < a for a, b in zip(self.times, self.times[1:])):
            raise PlannerError("times must increase from 0 to 1")


def induced_embedding(tower: Tower, base: Embedding, level: int | None = None) -> Embedding:
    """Embedding of ``Sd^level(K x K)`` induced by an embedding of ``K``.

    Product vertices get concatenated coordinates, barycenters the mean of
    their parent simplex.
    """
    if len(base.coords) != tower.base.n_vertices:
        raise PlannerError("base embedding must give coordinates for every vertex")
    pts = base.array()
    decode = tower.product.decode
    cur = np.hstack([pts[[u for u, _ in decode]], pts[[v for _, v in decode]]])
    level = tower.b if level is None else level
    for lv in tower.levels[:level]:
        cur = np.vstack([cur[list(s)].mean(axis=0) for s in lv.decode])
    return Embedding(2 * base.dim, tuple(map(tuple, cur)))


def barycentric(points: np.ndarray, z: np.ndarray) -> tuple[np.ndarray, float]:
    """Affine coordinates of ``z`` w.r.t. ``points`` (rows) and the residual distance."""
    p0 = points[0]
    A = (points[1:] - p0).T
    if A.size == 0:
        return np.array([1.0]), float(np.linalg.norm(z - p0))
    lam, *_ = np.linalg.lstsq(A, z - p0, rcond=None)
    residual = float(np.linalg.norm(A @ lam - (z - p0)))
    return np.concatenate([[1.0 - lam.sum()], lam]), residual


def locate_in(K: Complex, coords: np.ndarray, z: np.ndarray, tol: float = TOL):
    """Minimal carrier of ``z`` in the realization of ``K``: ``(simplex, weights)`` or ``None``."""
    for s in K.maximal:
        lam, res = barycentric(coords[list(s)], z)
        if res <= tol and lam.min() >= -tol:
            keep = lam > tol
            carrier = tuple(v for v, k in zip(s, keep) if k)
            weights = lam[keep]
            return carrier, weights / weights.sum()
    return None


def in_realization(K: Complex, emb: Embedding, z, tol: float = TOL) -> bool:
    return locate_in(K, emb.array(), np.asarray(z, dtype=float), tol) is not None


@dataclass(frozen=True)
class Location:
    piece: int
    carrier: tuple[int, ...]
    weights: tuple[float, ...]


@lru_cache(maxsize=8)
def _tower_for(cert: CoverCertificate) -> Tower:
    return build_tower(cert.base, cert.b)


def locate_carrier(cert: CoverCertificate, embedding: Embedding, x, y, tol: float = TOL) -> Location:
    """Lowest-index piece whose realization contains ``(x, y)``, with the minimal carrier."""
    tower = _tower_for(cert)
    coords = induced_embedding(tower, embedding).array()
    z = np.concatenate([np.asarray(x, dtype=float), np.asarray(y, dtype=float)])
    if z.shape != (coords.shape[1],):
        raise PlannerError(f"expected two points of dimension {embedding.dim}")
    found = locate_in(tower.top, coords, z, tol)
    if found is None:
        raise OutsideRealization("configuration pair is outside the realized complex")
    carrier, weights = found
    for k, item in enumerate(cert.pieces):
        if item.piece.contains(carrier):
            return Location(k, carrier, tuple(float(w) for w in weights))
    raise RuntimeError("point lies in no piece; the certificate does not cover the tower")


def _shares_simplex(K: Complex, emb: np.ndarray, a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    for s in K.maximal:
        pa, ra = barycentric(emb[list(s)], a)
        if ra > tol or pa.min() < -tol:
            continue
        pb, rb = barycentric(emb[list(s)], b)
        if rb <= tol and pb.min() >= -tol:
            return True
    return False


def make_path(cert: CoverCertificate, embedding: Embedding, x, y, tol: float = TOL) -> PLPath:
    """The local rule of the piece containing ``(x, y)`` evaluated at that pair."""
    loc = locate_carrier(cert, embedding, x, y, tol)
    item = cert.pieces[loc.piece]
    local = {v: i for i, v in enumerate(item.piece.vertices)}
    base = embedding.array()
    w = np.asarray(loc.weights)
    stops = [np.asarray(x, dtype=float)]
    for h in item.chain.maps:
        stops.append(w @ base[[h.images[local[v]] for v in loc.carrier]])
    stops.append(np.asarray(y, dtype=float))
    K = cert.base
    for a, b in zip(stops, stops[1:]):
        if not _shares_simplex(K, base, a, b, max(tol, 1e-7)):
            raise AssertionError("path segment leaves every simplex of K")
    n = len(stops) - 1
    times = tuple(k / n for k in range(n + 1))
    return PLPath(tuple(tuple(float(c) for c in p) for p in stops), times)


def evaluate_path(path: PLPath, t: float) -> tuple[float, ...]:
    if not 0.0 <= t <= 1.0:
        raise PlannerError("t must lie in [0, 1]")
    pts = np.asarray(path.breakpoints)
    times = np.asarray(path.times)
    k = int(np.searchsorted(times, t, side="right")) - 1
    k = min(max(k, 0), len(times) - 2)
    t0, t1 = times[k], times[k + 1]
    u = 0.0 if t1 == t0 else (t - t0) / (t1 - t0)
    return tuple(float(c) for c in (1 - u) * pts[k] + u * pts[k + 1])


def sample_path(path: PLPath, samples: int) -> list[tuple[float, tuple[float, ...]]]:
    if samples < 2:
        raise PlannerError("need at least two samples")
    return [(i / (samples - 1), evaluate_path(path, i / (samples - 1))) for i in range(samples)]
