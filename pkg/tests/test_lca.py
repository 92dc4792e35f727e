from __future__ import annotations

import random
from fractions import Fraction

import pytest

from picdual.fgab import FgAb
from picdual.lca import (
    FtLca,
    LcaMap,
    admissible,
    character_pairing,
    double_dual_check,
    dual,
    hom_group,
    random_ftlca,
    two_three_condition,
)


def test_dual_of_z_is_circle():
    assert dual(FtLca.Z()) == FtLca.T()
    assert dual(FtLca.T()) == FtLca.Z()
    assert dual(FtLca.R()) == FtLca.R()


def _characters(n):
    """All characters of ``Z/n``: ``1 -> k/n``; they form the cyclic group generated by ``1/n``."""
    chars = [Fraction(k, n) for k in range(n) if (n * Fraction(k, n)).denominator == 1]
    gen_orders = [min(j for j in range(1, n + 1) if (j * c).denominator == 1) for c in chars]
    return len(chars), max(gen_orders)


@pytest.mark.parametrize("n", range(2, 13))
def test_dual_of_finite_cyclic(n):
    count, exponent = _characters(n)
    D = dual(FtLca(finite=FgAb.of(n)))
    assert D.finite.order() == count and D.finite.factors[-1] == exponent


def test_double_dual_sweep():
    rng = random.Random(0)
    assert all(double_dual_check(random_ftlca(rng)) for _ in range(200))


def test_pairing_is_perfect_on_small_groups():
    F = FgAb.of(2, 6)
    elems = list(F.elements())
    for x in elems:
        if F.is_zero(x):
            continue
        assert any(character_pairing(F, x, y) != 0 for y in elems)


def test_hom_group_values():
    assert hom_group(FtLca.T(), FtLca.Z()) == FtLca()
    assert hom_group(FtLca.R(), FtLca.Z()) == FtLca()
    assert hom_group(FtLca.T(), FtLca.T()) == FtLca.Z()
    # continuous endomorphisms of T act on rational points like x -> k x
    pts = [Fraction(a, 7) for a in range(7)]
    for k in range(-3, 4):
        assert sorted({(k * p) % 1 for p in pts}) == (pts if k % 7 else [0])


def test_hom_into_circle_is_dual():
    rng = random.Random(3)
    for _ in range(50):
        G = random_ftlca(rng)
        assert hom_group(G, FtLca.T()) == dual(G)


def test_admissibility():
    G = FtLca(t=1, finite=FgAb.of(2))
    assert two_three_condition(G)
    v = admissible(G)
    assert v.admissible and v.holds_on("S_lc") and v.holds_on("S_lc-acyc")
    assert admissible(FtLca.Z()).site == "S"
    assert admissible(FtLca.R()).site == "S"


def test_json_roundtrip_and_validation():
    G = FtLca(z=1, t=2, finite=FgAb.of(2, 6))
    assert FtLca.from_json(G.to_json()) == G
    with pytest.raises(ValueError):
        FtLca.from_json({"z": -1})
    with pytest.raises(ValueError):
        FtLca.from_json({"w": 1})


def test_map_composition_associative():
    rng = random.Random(5)
    for _ in range(20):
        A, B, C, D = (random_ftlca(rng, max_rank=2, max_factors=1, max_order=6) for _ in range(4))
        f, g, h = LcaMap.random(A, B, rng), LcaMap.random(B, C, rng), LcaMap.random(C, D, rng)
        assert h @ (g @ f) == (h @ g) @ f
