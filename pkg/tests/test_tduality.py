from __future__ import annotations

import itertools
import random

import pytest

from picdual.fgab import FgAb
from picdual.picard import dual_pic
from picdual.simplicial import cohomology, cp2_ring, exterior_ring, point_ring, ring_of, sphere, torus
from picdual.tduality import (
    ChernClass,
    HFlux,
    PairClass,
    alpha_map,
    check_exactness,
    enumerate_duals,
    exists_tdual,
    filtration_model,
    gamma_action,
    gysin_h3,
    iota_map,
    phi_data,
    pic_class_of,
    psi_data,
    q_element_of_pic,
    q_group,
    triple_action,
    underlying_pair,
)

S2 = ring_of(sphere(2), "S2")
TOR = ring_of(torus(), "torus")
CP2 = cp2_ring()
T3 = exterior_ring(3)
Z = FgAb.free(1)


@pytest.mark.parametrize("m", [-3, -1, 1, 2, 4])
def test_cp2_beta_injective(m):
    Q = q_group(ChernClass(CP2, 1, ((m,),)))
    assert Q.beta.is_injective()
    assert Q.group.is_trivial


def test_torus_trivial_bundle():
    Q = q_group(ChernClass.zero(TOR, 1))
    assert Q.group == Z and Q.ker_beta.group == Z and Q.coker_alpha.is_trivial


@pytest.mark.parametrize("k", range(-2, 3))
def test_s2_any_class(k):
    assert q_group(ChernClass(S2, 1, ((k,),))).group == Z


@pytest.mark.parametrize("k", [-2, 0, 3])
def test_torus_trivial_bundle_unique_dual(k):
    c = ChernClass.zero(TOR, 1)
    duals = enumerate_duals(PairClass(c, HFlux(e21=((k,),))))
    assert len(duals) == 1 and duals[0].c_hat == ((k,),)


def test_hopf():
    c = ChernClass(S2, 1, ((1,),))
    assert filtration_model(c).f2_group == Z == gysin_h3(c) == cohomology(sphere(3), 3)
    assert exists_tdual(PairClass(c))


@pytest.mark.parametrize("ring", [S2, TOR, CP2, T3], ids=lambda r: r.name)
def test_circle_bundles_match_gysin(ring):
    for comps in itertools.product(range(-2, 3), repeat=ring.group(2).ngens):
        c = ChernClass(ring, 1, (comps,))
        F = filtration_model(c)
        assert F.K.group.is_trivial and F.gamma.is_trivial
        assert F.f2_group == gysin_h3(c)


def test_n1_always_dualizable():
    for ring in (S2, TOR, CP2, T3):
        c = ChernClass.zero(ring, 1)
        assert exists_tdual(PairClass(c, HFlux(e30=ring.group(3).zero_element())))


def test_obstruction_slots():
    c = ChernClass.zero(point_ring(), 3)
    assert not exists_tdual(PairClass(c, HFlux(e03=(1,))))
    assert exists_tdual(PairClass(c, HFlux(e03=(0,))))
    c2 = ChernClass.zero(T3, 2)
    assert not exists_tdual(PairClass(c2, HFlux(e12=((1, 0, 0),))))
    with pytest.raises(ValueError):
        enumerate_duals(PairClass(c2, HFlux(e12=((1, 0, 0),))))


def test_iota_convention():
    c = ChernClass(T3, 2, ((1, 0, 0), (0, 1, 0)))
    L, B2, iota = iota_map(c)
    # lambda e_0 ^ e_1 -> (-lambda c_1, +lambda c_0)
    assert B2.unpack(iota((1,))) == ((0, -1, 0), (1, 0, 0))
    # iota lands in ker beta
    Q = q_group(c)
    assert Q.beta_vanishes(iota((1,)))


def test_alpha_on_t3():
    c = ChernClass(T3, 1, ((1, 0, 0),))  # c = e0 e1
    B1, alpha = alpha_map(c)
    # e2 cup e0 e1 = e0 e1 e2, the other degree-one classes die
    assert alpha((0, 0, 1)) == (1,)
    assert alpha((1, 0, 0)) == (0,) and alpha((0, 1, 0)) == (0,)
    assert q_group(c).coker_alpha.is_trivial


def test_gamma_from_d3_is_lift_independent():
    c = ChernClass.zero(T3, 2)
    for d in (1, 2, 3):
        F1 = filtration_model(c, d3=[(d,)])
        F2 = filtration_model(c, d3=[(d,)], lift="shifted")
        assert F1.gamma == F2.gamma == Z
        assert F1.A == F2.A == FgAb.of(d)
    assert filtration_model(c).gamma.is_trivial


def test_gamma_orbit_in_enumeration():
    c = ChernClass.zero(T3, 2)
    duals = enumerate_duals(PairClass(c), d3=[(2,)])
    assert len(duals) == 1 and duals[0].gamma == Z and duals[0].gamma_generators == ((2,),)


def test_iota_image_gives_several_duals():
    c = ChernClass(T3, 2, ((1, 0, 0), (0, 1, 0)))
    duals = enumerate_duals(PairClass(c), window=2)
    assert len(duals) == 5
    assert {d.c_hat for d in duals} == {((0, -k, 0), (k, 0, 0)) for k in range(-2, 3)}


@pytest.mark.parametrize("ring", [S2, TOR, CP2], ids=lambda r: r.name)
@pytest.mark.parametrize("n", [1, 2])
def test_exactness(ring, n):
    rng = random.Random(n)
    for _ in range(5):
        comps = tuple(tuple(rng.randint(-3, 3) for _ in range(ring.group(2).ngens)) for _ in range(n))
        assert check_exactness(ChernClass(ring, n, comps))["ok"]


def test_triples_roundtrip_and_equivariance():
    rng = random.Random(9)
    for ring in (S2, TOR, CP2, T3):
        for n in (1, 2):
            c = ChernClass(ring, n, tuple(tuple(rng.randint(-1, 1) for _ in range(ring.group(2).ngens)) for _ in range(n)))
            Q = q_group(c)
            for _ in range(10):
                q = Q.random_element(rng)
                t = psi_data(q, c)
                assert phi_data(t) == q and psi_data(phi_data(t), c) == t
                g = tuple(rng.randint(-2, 2) for _ in range(Q.H3.ngens))
                assert gamma_action(g, phi_data(t), c) == phi_data(triple_action(g, t))
                assert exists_tdual(underlying_pair(t))


def test_picard_link_negates_t():
    rng = random.Random(2)
    c = ChernClass.zero(T3, 2)
    Q = q_group(c)
    for _ in range(20):
        q = Q.random_element(rng)
        D = dual_pic(pic_class_of(q, c))
        back = q_element_of_pic(D, c)
        assert back.c_hat == q.c_hat and back.t == Q.coker_alpha.neg(q.t)


def test_chern_json():
    c = ChernClass(T3, 2, ((1, 0, 0), (0, 1, 0)))
    assert ChernClass.from_json(T3, c.to_json()) == c
    with pytest.raises(ValueError):
        ChernClass.from_json(T3, {"n": 1, "components": [[1]]})
    with pytest.raises(ValueError):
        HFlux.from_json({"e03": ["x"]})
