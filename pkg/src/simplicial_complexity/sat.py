"""Exact chain search through a SAT encoding.

For a chain of length ``c`` the unknowns are the images ``h_i(w)`` for
``0 < i < c``.  A vertex set is a simplex of the codomain iff it contains no
minimal non-face, so contiguity of ``h_{i-1}`` and ``h_i`` on a domain
simplex ``s`` becomes: no minimal non-face is hit by the images of ``s``
at times ``i-1`` and ``i``.  Lengths are tried in increasing order, so the
first model found is a shortest chain.
"""

from __future__ import annotations

from itertools import combinations

from pysat.solvers import Solver

from .complex import Complex, all_simplices


def minimal_non_faces(L: Complex) -> list[tuple[int, ...]]:
    """Vertex sets that are not simplices but all of whose facets are."""
    faces = [s for layer in all_simplices(L) for s in layer]
    out = []
    for face in faces:
        for v in range(face[-1] + 1, L.n_vertices):
            cand = face + (v,)
            if L.contains(cand):
                continue
            if all(L.contains(cand[:j] + cand[j + 1:]) for j in range(len(cand))):
                out.append(cand)
    return sorted(set(out))


def _encode(f, g, c, non_faces):
    n, m = f.domain.n_vertices, f.codomain.n_vertices
    block = n * m

    def var(i, w, u):
        return 1 + ((i - 1) * n + w) * m + u

    clauses = []
    for i in range(1, c):
        for w in range(n):
            clauses.append([var(i, w, u) for u in range(m)])
            clauses.extend([-var(i, w, a), -var(i, w, b)] for a, b in combinations(range(m), 2))

    # hit[s, i, u] is forced true when some vertex of s maps to u at time i-1 or i
    next_var = (c - 1) * block + 1
    watched = sorted({u for nf in non_faces for u in nf})
    for i in range(1, c + 1):
        for s in f.domain.maximal:
            hit = {}
            for u in watched:
                forced = False
                lits = []
                for t in (i - 1, i):
                    for w in s:
                        if t == 0:
                            forced |= f.images[w] == u
                        elif t == c:
                            forced |= g.images[w] == u
                        else:
                            lits.append(var(t, w, u))
                if forced:
                    hit[u] = True
                elif lits:
                    a = next_var
                    next_var += 1
                    hit[u] = a
                    clauses.extend([-x, a] for x in lits)
            for nf in non_faces:
                if any(u not in hit for u in nf):
                    continue
                clause = [-hit[u] for u in nf if hit[u] is not True]
                if not clause:
                    return None
                clauses.append(clause)
    return clauses, var


def sat_chain(f, g, c_max: int, c_min: int = 1, conflict_budget: int | None = None) -> list[tuple[int, ...]] | None:
    """Shortest chain of length in ``[c_min, c_max]``, or ``None``.

    Without ``conflict_budget`` a ``None`` means no such chain exists.  With
    it, lengths whose solve runs out of conflicts are skipped.
    """
    non_faces = minimal_non_faces(f.codomain)
    n, m = f.domain.n_vertices, f.codomain.n_vertices
    for c in range(max(c_min, 1), c_max + 1):
        encoded = _encode(f, g, c, non_faces)
        if encoded is None:
            continue
        clauses, var = encoded
        with Solver(name="cadical153", bootstrap_with=clauses) as solver:
            if conflict_budget is None:
                found = solver.solve()
            else:
                solver.conf_budget(conflict_budget)
                found = solver.solve_limited()
            if not found:
                continue
            model = set(x for x in solver.get_model() if x > 0)
        path = [f.images]
        for i in range(1, c):
            path.append(tuple(next(u for u in range(m) if var(i, w, u) in model) for w in range(n)))
        path.append(g.images)
        return path
    return None
