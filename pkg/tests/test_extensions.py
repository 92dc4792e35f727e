from __future__ import annotations

import random
from math import gcd

from picdual.extensions import (
    Extension,
    baer_sum,
    class_of,
    equivalent,
    ext_model,
    from_class,
    split_extension,
    torsor_of,
)
from picdual.fgab import FgAb, FgAbMap, ext1


def test_z4_extension_adds_to_split():
    E = from_class(FgAb.of(2), FgAb.of(2), (1,))
    assert E.mid == FgAb.of(4)
    S = baer_sum(E, E)
    assert class_of(S) == (0,)
    assert S.mid == FgAb.of(2, 2)


def test_multiplication_by_n_generates():
    for n in range(2, 9):
        Z = FgAb.free(1)
        E = Extension(Z, Z, FgAb.of(n), FgAbMap(Z, Z, [[n]]), FgAbMap(Z, FgAb.of(n), [[1]]))
        x = class_of(E)
        M = ext_model(FgAb.of(n), Z)
        assert M.group == FgAb.of(n)
        assert gcd(x[0], n) == 1


def test_random_baer_sums_add():
    rng = random.Random(11)
    for _ in range(100):
        G, H = FgAb.of(rng.randint(1, 8)), FgAb.of(rng.randint(1, 8))
        M = ext_model(G, H)
        x, y = (M.group.reduce([rng.randint(0, 8) for _ in range(M.group.ngens)]) for _ in range(2))
        assert class_of(baer_sum(from_class(G, H, x), from_class(G, H, y))) == M.group.add(x, y)


def test_non_cyclic_groups():
    rng = random.Random(2)
    for _ in range(15):
        G = FgAb.of(*[rng.choice([0, 2, 4, 6]) for _ in range(2)])
        H = FgAb.of(*[rng.choice([0, 2, 3]) for _ in range(2)])
        M = ext_model(G, H)
        assert M.group == ext1(G, H)
        x = M.group.reduce([rng.randint(0, 5) for _ in range(M.group.ngens)])
        E = from_class(G, H, x)
        assert E.is_valid() and class_of(E) == x


def test_split_and_equivalence():
    G, H = FgAb.of(4), FgAb.of(2)
    S = split_extension(G, H)
    assert class_of(S) == (0,)
    assert equivalent(S, from_class(G, H, (0,)))
    assert not equivalent(S, from_class(G, H, (1,)))


def test_torsor_of_split_extension():
    H, Z = FgAb.of(2), FgAb.free(1)
    W = split_extension(Z, H)
    T = torsor_of(W)
    # coordinates are (Z/2, Z): the points over 1 are (0,1) and (1,1)
    assert T.elements() == [(0, 1), (1, 1)]
    assert T.is_free_transitive()
    a, b = T.elements()
    assert T.act(T.difference(b, a), a) == b
