"""Extensions ``0 -> H -> E -> G -> 0`` of finitely generated abelian groups.

Classes live in the concrete model ``Ext(G, H) = (+)_j H / d_j H`` over the
torsion generators of ``G`` (orders ``d_j``).  A class is computed by lifting
each torsion generator ``g_j`` to ``e_j`` in ``E`` and reading ``d_j e_j`` back
in ``H``.

>>> from picdual.fgab import FgAb
>>> E = from_class(FgAb.of(2), FgAb.of(2), (1,))
>>> E.mid
FgAb(free_rank=0, factors=(4,))
>>> class_of(baer_sum(E, E))
(0,)
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .fgab import (
    FgAb,
    FgAbMap,
    Quotient,
    direct_sum,
    is_exact,
    kernel,
    present,
    quotient_by,
)

__all__ = [
    "Extension",
    "ExtModel",
    "TorsorDatum",
    "ext_model",
    "class_of",
    "from_class",
    "baer_sum",
    "split_extension",
    "equivalent",
    "torsor_of",
]


@dataclass(frozen=True)
class Extension:
    sub: FgAb
    mid: FgAb
    quot: FgAb
    i: FgAbMap
    p: FgAbMap

    def __post_init__(self):
        if (self.i.source, self.i.target, self.p.source, self.p.target) != (self.sub, self.mid, self.mid, self.quot):
            raise ValueError("extension maps do not match the groups")

    def is_valid(self) -> bool:
        z0 = FgAb.zero()
        return is_exact([FgAbMap.zero(z0, self.sub), self.i, self.p, FgAbMap.zero(self.quot, z0)])


@dataclass(frozen=True)
class ExtModel:
    """``Ext(G, H)`` as a quotient of ``H^t`` with a normal-form projection."""

    quot: FgAb
    sub: FgAb
    quotient: Quotient

    @property
    def group(self) -> FgAb:
        return self.quotient.group

    @property
    def torsion_orders(self) -> tuple[int, ...]:
        return self.quot.factors

    def _flat(self, hs: Sequence[Sequence[int]]) -> list[int]:
        return [x for h in hs for x in h]

    def project(self, hs: Sequence[Sequence[int]]) -> tuple[int, ...]:
        """Class of the cocycle data ``(h_j)``, one element of ``H`` per torsion generator."""
        return self.quotient.projection(self._flat(hs))

    def lift(self, x: Sequence[int]) -> list[tuple[int, ...]]:
        """Cocycle data representing the class ``x``."""
        v = self.quotient.projection.preimage(x) if self.group.ngens else [0] * (len(self.torsion_orders) * self.sub.ngens)
        n = self.sub.ngens
        return [self.sub.reduce(v[k * n:(k + 1) * n]) for k in range(len(self.torsion_orders))]

    def add(self, x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
        return self.group.add(x, y)

    def elements(self) -> Iterator[tuple[int, ...]]:
        return self.group.elements()


@lru_cache(maxsize=256)
def ext_model(G: FgAb, H: FgAb) -> ExtModel:
    """Concrete ``Ext(G, H)``: ``Z^{t n}`` modulo the relations of ``H`` in each block and ``d_j H`` in block ``j``."""
    t, n = G.torsion_count, H.ngens
    rels = []
    for k in range(t):
        for j in range(n):
            v = [0] * (t * n)
            v[k * n + j] = G.factors[k]
            rels.append(v)
            if j < H.torsion_count:
                w = [0] * (t * n)
                w[k * n + j] = H.factors[j]
                rels.append(w)
    pres = present(t * n, rels)
    free = FgAb.free(t * n)
    proj = FgAbMap(free, pres.group, pres.P, check=False) if pres.group.ngens else FgAbMap.zero(free, pres.group)
    return ExtModel(G, H, Quotient(pres.group, proj))


def _check(E: Extension) -> None:
    if not E.is_valid():
        raise ValueError("sequence 0 -> H -> E -> G -> 0 is not exact")


def class_of(E: Extension) -> tuple[int, ...]:
    """Element of ``ext_model(E.quot, E.sub).group`` classifying ``E``."""
    _check(E)
    G, H = E.quot, E.sub
    model = ext_model(G, H)
    hs = []
    for j, d in enumerate(G.factors):
        e = E.p.preimage(G.gen(j))
        h = E.i.preimage(E.mid.scale(d, e))
        assert h is not None
        hs.append(h)
    return model.project(hs)


def from_class(G: FgAb, H: FgAb, x: Sequence[int]) -> Extension:
    """``E = (H + Z^{ngens G}) / <relations of H, d_j e_j - h_j>`` for cocycle data ``h`` of ``x``."""
    model = ext_model(G, H)
    x = model.group.reduce(x)
    hs = model.lift(x)
    n, m = H.ngens, G.ngens
    rels = []
    for j, d in enumerate(H.factors):
        v = [0] * (n + m)
        v[j] = d
        rels.append(v)
    for j, d in enumerate(G.factors):
        v = [-c for c in hs[j]] + [0] * m
        v[n + j] = d
        rels.append(v)
    pres = present(n + m, rels)
    Emid = pres.group
    unit = lambda k: [1 if r == k else 0 for r in range(n + m)]
    i = FgAbMap.from_images(H, Emid, [pres.to_group(unit(k)) for k in range(n)]) if n else FgAbMap.zero(H, Emid)
    pcols = [pres.section(Emid.gen(k))[n:] for k in range(Emid.ngens)]
    p = FgAbMap.from_images(Emid, G, pcols) if Emid.ngens else FgAbMap.zero(Emid, G)
    return Extension(H, Emid, G, i, p)


def split_extension(G: FgAb, H: FgAb) -> Extension:
    S, inj, proj = direct_sum([H, G])
    return Extension(H, S, G, inj[0], proj[1])


def equivalent(E1: Extension, E2: Extension) -> bool:
    """Equivalence of extensions with the same ends, decided by their classes."""
    if (E1.sub, E1.quot) != (E2.sub, E2.quot):
        raise ValueError("extensions have different ends")
    return class_of(E1) == class_of(E2)


def baer_sum(E1: Extension, E2: Extension) -> Extension:
    """Pull back along the diagonal of ``G`` and divide by the antidiagonal of ``H``."""
    if (E1.sub, E1.quot) != (E2.sub, E2.quot):
        raise ValueError("Baer sum needs extensions of the same G by the same H")
    H, G = E1.sub, E1.quot
    S, inj, proj = direct_sum([E1.mid, E2.mid])
    diff = E1.p @ proj[0] - E2.p @ proj[1]
    P = kernel(diff)
    anti = []
    for k in range(H.ngens):
        h = H.gen(k)
        v = S.add(inj[0](E1.i(h)), S.neg(inj[1](E2.i(h))))
        c = P.coords(v)
        assert c is not None
        anti.append(list(c))
    q = quotient_by(P.group, anti)
    Emid = q.group
    i_cols = []
    for k in range(H.ngens):
        c = P.coords(inj[0](E1.i(H.gen(k))))
        i_cols.append(q.projection(c))
    i = FgAbMap.from_images(H, Emid, i_cols) if H.ngens else FgAbMap.zero(H, Emid)
    p_on_P = E1.p @ proj[0] @ P.inclusion
    p_cols = [p_on_P(q.lift(Emid.gen(k))) for k in range(Emid.ngens)]
    p = FgAbMap.from_images(Emid, G, p_cols) if Emid.ngens else FgAbMap.zero(Emid, G)
    return Extension(H, Emid, G, i, p)


@dataclass(frozen=True)
class TorsorDatum:
    """The fiber ``p^{-1}(1)`` of an extension of ``Z`` by ``H`` with its translation action."""

    extension: Extension
    base_point: tuple[int, ...]

    @property
    def group(self) -> FgAb:
        return self.extension.sub

    def act(self, h: Sequence[int], e: Sequence[int]) -> tuple[int, ...]:
        return self.extension.mid.add(e, self.extension.i(h))

    def contains(self, e: Sequence[int]) -> bool:
        return self.extension.p(e) == (1,)

    def difference(self, e1: Sequence[int], e2: Sequence[int]) -> tuple[int, ...]:
        """The unique ``h`` with ``act(h, e2) == e1``."""
        E = self.extension.mid
        h = self.extension.i.preimage(E.add(e1, E.neg(e2)))
        if h is None:
            raise ValueError("points lie in different fibers")
        return h

    def elements(self) -> list[tuple[int, ...]]:
        if not self.group.is_finite:
            raise ValueError("fiber is infinite")
        return sorted({self.act(h, self.base_point) for h in self.group.elements()})

    def is_free_transitive(self) -> bool:
        """Checked exhaustively for finite ``H``; structurally otherwise."""
        if not self.group.is_finite:
            return self.extension.i.is_injective() and self.extension.is_valid()
        pts = self.elements()
        if len(pts) != self.group.order():
            return False
        for e in pts:
            if not self.contains(e):
                return False
            orbit = {self.act(h, e) for h in self.group.elements()}
            if orbit != set(pts):
                return False
        return True


def torsor_of(W: Extension) -> TorsorDatum:
    if W.quot != FgAb.free(1):
        raise ValueError("torsor_of needs an extension with quotient Z")
    _check(W)
    e0 = W.p.preimage((1,))
    assert e0 is not None
    return TorsorDatum(W, W.mid.reduce(e0))
