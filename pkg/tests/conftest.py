import random

import pytest
from hypothesis import strategies as st

from simplicial_complexity import build_complex, sc_upper_bound
from simplicial_complexity.catalog import circle


def random_complex(rng: random.Random, max_vertices: int = 6):
    n = rng.randint(1, max_vertices)
    gens = []
    for _ in range(rng.randint(1, 6)):
        k = rng.randint(1, min(n, 4))
        gens.append(rng.sample(range(n), k))
    used = {v for g in gens for v in g}
    gens.extend([v] for v in range(n) if v not in used)
    return build_complex([f"v{i}" for i in range(n)], gens)


@st.composite
def complexes(draw, max_vertices=5, max_dim=3):
    n = draw(st.integers(1, max_vertices))
    gens = draw(
        st.lists(
            st.lists(st.integers(0, n - 1), min_size=1, max_size=max_dim + 1, unique=True),
            min_size=1,
            max_size=6,
        )
    )
    used = {v for g in gens for v in g}
    gens = gens + [[v] for v in range(n) if v not in used]
    return build_complex([str(i) for i in range(n)], gens)


@pytest.fixture(scope="session")
def circle_report():
    return sc_upper_bound(circle(), b=1, c_max=16, max_pieces=2, seed=0)


@pytest.fixture(scope="session")
def circle_cert(circle_report):
    assert circle_report.certificate is not None
    return circle_report.certificate
