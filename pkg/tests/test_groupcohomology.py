from __future__ import annotations

import pytest

from picdual.fgab import FgAb, direct_sum, lambda2
from picdual.groupcohomology import (
    BarComplex,
    KComplex,
    cohomology_Z,
    cohomology_table,
    homology,
    homology_table,
    kcomplex_cohomology,
    kunneth_homology,
    lambda_compare,
    model,
    verify_23_extension,
    verify_weight,
    weight_matrix,
)
from picdual.acceptance import abelian_groups_up_to

Z, ZERO = FgAb.free(1), FgAb.zero()


@pytest.mark.parametrize("p", [2, 3, 5])
def test_cyclic_table(p):
    assert cohomology_table(FgAb.of(p), 6) == [Z, ZERO, FgAb.of(p), ZERO, FgAb.of(p), ZERO, FgAb.of(p)]


def test_klein_four_h2():
    G = FgAb.of(2, 2)
    assert homology(G, 2) == FgAb.of(2) == lambda2(G)


def test_abelian_group_count():
    # orders 1..16 contribute 1,1,1,2,1,1,1,3,2,1,1,2,1,1,1,5 groups
    assert len(abelian_groups_up_to(16)) == 25


@pytest.mark.parametrize("G", abelian_groups_up_to(16), ids=str)
def test_low_degrees(G):
    assert cohomology_Z(G, 1).is_trivial
    assert all(lambda_compare(G, i) for i in (0, 1, 2))


@pytest.mark.parametrize("G,top,normalized", [(FgAb.of(3), 4, False), (FgAb.of(2, 2), 4, False), (FgAb.of(4), 5, True)])
def test_bar_dd_zero(G, top, normalized):
    assert BarComplex(G, top, normalized).sparse().check_dd()


@pytest.mark.parametrize("normalized", [False, True])
def test_psi_is_chain_map(normalized):
    B = BarComplex(FgAb.of(5), 4, normalized)
    S = B.sparse()
    for m in (2, 3, 4):
        for n in range(1, 5):
            psi_n, psi_n1 = B.psi(m, n), B.psi(m, n - 1)
            for c in range(S.sizes[n]):
                lhs = psi_n1(S.boundary[n][c])
                img = psi_n({c: 1})
                rhs: dict = {}
                for f, x in img.items():
                    for g, y in S.boundary[n][f].items():
                        rhs[g] = rhs.get(g, 0) + x * y
                assert {k: v for k, v in rhs.items() if v} == lhs


def test_functoriality_scalar():
    for p in (3, 5, 7):
        G = FgAb.of(p)
        for k in (1, 2):
            for m in range(2, p):
                W = weight_matrix(G, m, 2 * k)
                assert W.rows == [[pow(m, k, p)]]


def test_weights():
    G = FgAb.of(5, 5)
    assert verify_weight(FgAb.of(5), 4, 2, (2, 3, 4))
    assert verify_weight(G, 3, 2, (2, 3, 4))
    assert not verify_weight(G, 3, 1, (2,))
    assert verify_23_extension(G, 4, (2, 3))
    assert cohomology_table(G, 4)[3] == FgAb.of(5)


PAIRS = [(FgAb.of(a), FgAb.of(b)) for a in (2, 3, 4) for b in (2, 3) if a * b <= 9] + [(FgAb.of(2, 2), FgAb.of(2))]


@pytest.mark.parametrize("G,H", PAIRS, ids=lambda g: str(g))
def test_kunneth(G, H):
    n_max = 4
    GH = direct_sum([G, H])[0]
    HG, HH = homology_table(G, n_max), homology_table(H, n_max)
    bar = homology_table(GH, n_max, route="bar")
    for n in range(n_max + 1):
        assert bar[n] == kunneth_homology(HG, HH, n)


def test_product_route_matches_bar():
    G = FgAb.of(3, 3)
    assert homology_table(G, 3, route="product") == homology_table(G, 3, route="bar")
    assert model(G, 3, route="product").route == "product"


def test_kcomplex():
    assert kcomplex_cohomology(8) == [Z] + [ZERO] * 7
    # q = 1: the differential Z -> Z^2 sends 1 to (1, 1) - (1, 1) + ... = (0, 0)
    assert KComplex.differential(1) == [[0], [0]]
    with pytest.raises(ValueError):
        kcomplex_cohomology(1)


def test_rejects_infinite_groups():
    with pytest.raises(ValueError):
        homology(FgAb.free(1), 1)
