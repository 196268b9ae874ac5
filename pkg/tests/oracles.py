"""Brute-force reference implementations used only by the tests.

None of these reuse the library's constructions: simplices are found by
scanning vertex subsets, products by walking the componentwise order, and
subdivisions by enumerating chains in the face poset.
"""

from collections import deque
from itertools import combinations, product


def brute_simplices(vertices, maximal):
    """Every non-empty vertex subset lying in some listed simplex."""
    tops = [set(s) for s in maximal]
    out = set()
    for k in range(1, max(len(s) for s in tops) + 1):
        for sub in combinations(sorted(vertices), k):
            if any(set(sub) <= t for t in tops):
                out.add(sub)
    return out


def f_vector_of(simplices):
    dims = {}
    for s in simplices:
        dims[len(s) - 1] = dims.get(len(s) - 1, 0) + 1
    return tuple(dims.get(d, 0) for d in range(max(dims) + 1))


def euler(simplices):
    return sum((-1) ** (len(s) - 1) for s in simplices)


def product_simplices(K_simplices, L_simplices, nK, nL):
    """Simplices of the ordered product: chains of pairs with simplicial projections."""
    Ks, Ls = set(K_simplices), set(L_simplices)
    pairs = [(u, v) for u in range(nK) for v in range(nL)]
    out = set()

    def leq(a, b):
        return a[0] <= b[0] and a[1] <= b[1]

    def grow(chain):
        out.add(tuple(chain))
        last = chain[-1]
        for p in pairs:
            if p != last and leq(last, p):
                nxt = chain + [p]
                if tuple(sorted({q[0] for q in nxt})) in Ks and tuple(sorted({q[1] for q in nxt})) in Ls:
                    grow(nxt)

    for p in pairs:
        if (p[0],) in Ks and (p[1],) in Ls:
            grow([p])
    return out


def subdivision_simplices(simplices):
    """Chains ``s_0 < s_1 < ...`` under strict inclusion, as tuples of faces."""
    faces = sorted(simplices, key=lambda s: (len(s), s))
    out = set()

    def grow(chain):
        out.add(tuple(chain))
        for t in faces:
            if len(t) > len(chain[-1]) and set(chain[-1]) < set(t):
                grow(chain + [t])

    for s in faces:
        grow([s])
    return out


def all_maps(n, m):
    return list(product(range(m), repeat=n))


def is_simplicial_brute(images, dom_simplices, cod_simplices):
    cod = set(cod_simplices)
    return all(tuple(sorted({images[v] for v in s})) in cod for s in dom_simplices)


def contiguous_brute(f, g, dom_simplices, cod_simplices):
    """Definition checked on every simplex of the domain, not just maximal ones."""
    cod = set(cod_simplices)
    return all(tuple(sorted({f[v] for v in s} | {g[v] for v in s})) in cod for s in dom_simplices)


def min_chain_length(start, goal, states, dom_simplices, cod_simplices):
    """BFS distance in the contiguity graph over the given simplicial maps."""
    dist = {start: 0}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        if x == goal:
            return dist[x]
        for y in states:
            if y not in dist and contiguous_brute(x, y, dom_simplices, cod_simplices):
                dist[y] = dist[x] + 1
                queue.append(y)
    return None
