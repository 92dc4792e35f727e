from __future__ import annotations

import random

import pytest

from picdual.fgab import FgAb
from picdual.lca import FtLca
from picdual.picard import (
    ExtBackend,
    PicClass,
    UnsupportedDuality,
    b_of_sheaf,
    ch_of_sheaf,
    dual_b,
    dual_ch,
    dual_pic,
    is_dualizable,
    local_model,
)
from picdual.simplicial import exterior_ring, ring_of, rp2, sphere, torus

T3 = ExtBackend(exterior_ring(3))


def test_dual_of_classifying_circle():
    D = dual_pic(b_of_sheaf(FtLca.T()))
    assert (D.Hminus1, D.H0) == (FtLca(), FtLca.Z())


@pytest.mark.parametrize("n", [1, 2, 3])
def test_dual_of_classifying_torus(n):
    assert dual_b(FtLca(t=n)) == ch_of_sheaf(FtLca(z=n))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_local_model(n):
    D = dual_pic(local_model(n, T3))
    assert D.Hminus1 == FtLca(z=n, t=1) and D.H0 == FtLca(z=1)
    assert all(not any(v) for _, v in D.phi)


def test_h3_class_is_negated():
    for g in (1, 2, -5):
        P = PicClass(FtLca.T(), FtLca.Z(), (((0, 0), (g,)),), T3)
        D = dual_pic(P)
        assert D.component(0, 0) == (-g,)
        assert dual_pic(D) == P


def test_random_classes_involution():
    rng = random.Random(0)
    B = ExtBackend(ring_of(torus(), "torus"))
    for _ in range(30):
        z, t = rng.randint(0, 2), rng.randint(0, 2)
        P0 = PicClass(FtLca(t=1 + t), FtLca(z=1 + z, t=t), (), B)
        phi = tuple((k, tuple(rng.randint(-3, 3) for _ in v)) for k, v in P0.phi)
        P = PicClass(P0.Hminus1, P0.H0, phi, B)
        assert dual_pic(dual_pic(P)) == P
        cert = is_dualizable(P)
        assert cert and cert.double_dual_matches


def test_dual_of_ch_z():
    assert dual_ch(FtLca.Z()).as_pic() == b_of_sheaf(FtLca.T())


def test_ext1_branch_for_finite_sheaf():
    D = dual_ch(FtLca(finite=FgAb.of(5)))
    assert D.clean and D.Hminus1 == FtLca(finite=FgAb.of(5))
    # over RP^2 the group Ext^1(Z/2, T) = H^1(RP^2; Z/2) = Z/2 does not vanish
    D2 = dual_ch(FtLca(finite=FgAb.of(2)), ExtBackend(ring_of(rp2(), "RP2")))
    assert not D2.clean and D2.H0_ext1 == FgAb.of(2)
    with pytest.raises(UnsupportedDuality):
        D2.as_pic()


def test_mod_m_blocks_over_rp2():
    B = ExtBackend(ring_of(rp2(), "RP2"))
    P = PicClass(FtLca.T(), FtLca(z=1, finite=FgAb.of(2)), (((1, 0), (1,)),), B)
    D = dual_pic(P)
    assert D.H0 == FtLca.Z() and D.Hminus1 == FtLca(t=1, finite=FgAb.of(2))
    assert dual_pic(D) == P


def test_unmodeled_pair_raises():
    B = ExtBackend(ring_of(rp2(), "RP2"))
    with pytest.raises(UnsupportedDuality):
        PicClass(FtLca(finite=FgAb.of(2)), FtLca(finite=FgAb.of(2)), (), B)


def test_non_admissible_gate():
    P = PicClass(FtLca.T(), FtLca.Z(), (), ExtBackend(ring_of(sphere(2))), forced_nonadmissible=True)
    assert not is_dualizable(P)
    with pytest.raises(UnsupportedDuality):
        dual_pic(P)


def test_json_roundtrip():
    P = PicClass(FtLca.T(), FtLca(z=1, t=2), (((0, 0), (3,)), ((1, 0), (1, 0, 2))), T3)
    assert PicClass.from_json(P.to_json(), T3) == P
    with pytest.raises(ValueError):
        PicClass.from_json({"H0": {}}, T3)
