import pytest

from simplicial_complexity.catalog import circle, simplex
from simplicial_complexity.complex import Subcomplex, is_cover
from simplicial_complexity.constructions import ApproxPolicy, build_tower
from simplicial_complexity.contiguity import ContiguityChain, restrict
from simplicial_complexity.cover import (
    CertPiece,
    CoverCertificate,
    pad_certificate,
    refine_certificate,
    sc_upper_bound,
    seed_pieces,
    transport_certificate,
    verify_certificate,
)


def test_simplex_single_piece_certificate():
    T = build_tower(simplex(2), 0)
    p1, p2 = T.projection(1), T.projection(2)
    whole = Subcomplex.whole(T.top)
    chain = ContiguityChain((restrict(p1, whole), restrict(p2, whole)))
    cert = CoverCertificate(simplex(2), 0, 1, ApproxPolicy.MAX, (CertPiece(whole, chain),))
    assert verify_certificate(cert)
    assert cert.bound == 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_contractible_simplices_have_bound_zero(n):
    report = sc_upper_bound(simplex(n), b=0, c_max=1, max_pieces=1)
    assert report.status == "found"
    assert report.bound == 0 and report.c <= 1


def test_honest_failure_for_circle_with_one_piece():
    report = sc_upper_bound(circle(), b=0, c_max=2, max_pieces=1, budget=1)
    assert report.status == "budget-exhausted"
    assert report.bound is None and report.certificate is None


def test_size_abort_is_reported():
    report = sc_upper_bound(circle(), b=3, c_max=2, max_pieces=2, size_budget=100)
    assert report.status == "size-abort"
    assert report.bound is None


def test_diagonal_seed_contains_diagonal_vertex():
    T = build_tower(circle(), 0)
    (diag,) = seed_pieces(T, "diagonal")
    v = T.top.label_index["(0,0)"]
    assert v in diag.vertices


def test_seeds_cover_first_subdivision():
    T = build_tower(circle(), 1)
    (diag,), (anti,) = seed_pieces(T, "diagonal"), seed_pieces(T, "antidiagonal")
    assert is_cover(T.top, [diag, anti])
    # the antidiagonal piece stays off the diagonal vertices of K x K
    for lab in ("{(0,0)}", "{(1,1)}", "{(2,2)}"):
        assert T.top.label_index[lab] not in anti.vertices


def test_greedy_growth_seeds_on_covered_complex():
    T = build_tower(circle(), 0)
    assert seed_pieces(T, "greedy-growth", [Subcomplex.whole(T.top)]) == []
    assert len(seed_pieces(T, "greedy-growth", [])) == len(T.top.maximal)


def test_circle_bound(circle_report):
    assert circle_report.status == "found"
    assert circle_report.bound == 1
    assert circle_report.c <= 16
    assert verify_certificate(circle_report.certificate)


def test_corrupted_chain_is_rejected(circle_cert):
    item = circle_cert.pieces[1]
    maps = list(item.chain.maps)
    k = len(maps) // 2
    images = list(maps[k].images)
    images[0] = (images[0] + 1) % 3
    maps[k] = maps[k].with_images(images)
    bad = CoverCertificate(
        circle_cert.base, circle_cert.b, circle_cert.c, circle_cert.policy,
        (circle_cert.pieces[0], CertPiece(item.piece, ContiguityChain(tuple(maps)))),
    )
    check = verify_certificate(bad)
    assert not check
    assert check.piece == 1


def test_dropped_piece_is_rejected(circle_cert):
    bad = CoverCertificate(circle_cert.base, 1, circle_cert.c, circle_cert.policy, circle_cert.pieces[:1])
    check = verify_certificate(bad)
    assert not check and "cover" in check.reason


def test_understated_c_is_rejected(circle_cert):
    bad = CoverCertificate(circle_cert.base, 1, circle_cert.c - 1, circle_cert.policy, circle_cert.pieces)
    assert not verify_certificate(bad)


def test_pad_certificate(circle_cert):
    for c in (circle_cert.c, circle_cert.c + 1, circle_cert.c + 5):
        padded = pad_certificate(circle_cert, c)
        assert padded.c == c
        assert verify_certificate(padded)


@pytest.mark.parametrize("policy", list(ApproxPolicy))
def test_transport_certificate(circle_cert, policy):
    moved = transport_certificate(circle_cert, policy)
    assert moved.c == circle_cert.c + 2
    assert moved.policy == policy
    assert verify_certificate(moved)


@pytest.mark.parametrize("lam", list(ApproxPolicy))
def test_refine_certificate(circle_cert, lam):
    finer = refine_certificate(circle_cert, lam)
    assert (finer.b, finer.c) == (circle_cert.b + 1, circle_cert.c + 2)
    assert finer.bound == circle_cert.bound
    assert verify_certificate(finer)


def test_refined_single_piece_from_trivial_chain():
    T = build_tower(simplex(1), 0)
    whole = Subcomplex.whole(T.top)
    chain = ContiguityChain((restrict(T.projection(1), whole), restrict(T.projection(2), whole)))
    cert = CoverCertificate(simplex(1), 0, 1, ApproxPolicy.MAX, (CertPiece(whole, chain),))
    finer = refine_certificate(cert, ApproxPolicy.MIN)
    assert finer.c == 3 and verify_certificate(finer)


def test_search_is_deterministic(circle_report):
    again = sc_upper_bound(circle(), b=1, c_max=16, max_pieces=2, seed=0)
    from simplicial_complexity.io import write_certificate

    assert write_certificate(again.certificate) == write_certificate(circle_report.certificate)


@pytest.mark.slow
def test_circle_second_subdivision():
    report = sc_upper_bound(circle(), b=2, c_max=16, max_pieces=2)
    assert report.bound == 1
    assert verify_certificate(report.certificate)


def test_escalating_b_finds_cover():
    report = sc_upper_bound(circle(), b=0, c_max=8, max_pieces=2, b_max=1, budget=4)
    assert report.status == "found"
    assert report.b == 1 and report.bound == 1
