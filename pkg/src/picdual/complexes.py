"""Two-term complexes ``K^{-1} -> K^0`` of finitely generated abelian groups.

Homotopies follow ``f - g = d h + h d`` in every degree, with no sign attached
to degree shifts.  Derived Hom over ``Z`` is computed twice: from the
cohomology groups (global dimension one makes every complex split) and from
an explicit free replacement.

>>> from picdual.fgab import FgAb
>>> K = TwoTerm.of(FgAb.free(1), FgAb.free(1), [[2]])
>>> str(h0(K)), str(hminus1(K))
('Z/2', '0')
>>> [str(g) for g in rhom(K, TwoTerm.concentrated(FgAb.free(1), 0))]
['0', '0', 'Z/2']
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .fgab import (
    FgAb,
    FgAbMap,
    direct_sum,
    ext1,
    hom,
    is_exact,
    kernel,
    cokernel_map,
    quotient_by,
)

__all__ = [
    "TwoTerm",
    "ComplexMap",
    "Homotopy",
    "CochainComplex",
    "CochainMap",
    "CochainHomotopy",
    "Subquotient",
    "FourTermExact",
    "YonedaData",
    "h0",
    "hminus1",
    "induced_maps",
    "is_quasi_iso",
    "mapping_cone",
    "cone_is_acyclic",
    "rhom",
    "rhom_via_resolution",
    "free_replacement",
    "yoneda_Y",
    "yoneda_Yprime",
    "homotopy_witnesses",
    "quotient_by_subgroup",
    "random_map",
    "random_group",
    "random_four_term",
]


# ---------------------------------------------------------------------------
# generic bounded cochain complexes


class Subquotient:
    """``ker(g) / im(f)`` at a node ``M`` with ``f: P -> M`` and ``g: M -> N``."""

    def __init__(self, M: FgAb, f: FgAbMap | None, g: FgAbMap | None):
        self.M = M
        g = g if g is not None else FgAbMap.zero(M, FgAb.zero())
        f = f if f is not None else FgAbMap.zero(FgAb.zero(), M)
        self.cycles = kernel(g)
        rels = []
        for k in range(f.source.ngens):
            c = self.cycles.coords(f.column(k))
            if c is None:
                raise ValueError("consecutive maps do not compose to zero")
            rels.append(list(c))
        self.quotient = quotient_by(self.cycles.group, rels)
        self.group = self.quotient.group

    def class_of(self, m: Sequence[int]) -> tuple[int, ...]:
        c = self.cycles.coords(m)
        if c is None:
            raise ValueError("element is not a cycle")
        return self.quotient.projection(c)

    def representative(self, h: Sequence[int]) -> tuple[int, ...]:
        return self.cycles.inclusion(self.quotient.lift(h))

    def induced(self, other: "Subquotient", F: FgAbMap) -> FgAbMap:
        if not self.group.ngens:
            return FgAbMap.zero(self.group, other.group)
        imgs = [other.class_of(F(self.representative(self.group.gen(i)))) for i in range(self.group.ngens)]
        return FgAbMap.from_images(self.group, other.group, imgs)


@dataclass(frozen=True)
class CochainComplex:
    """Groups in degrees ``start .. start+len(groups)-1``; ``maps[k]`` leaves ``groups[k]``."""

    start: int
    groups: tuple[FgAb, ...]
    maps: tuple[FgAbMap, ...]

    def __post_init__(self):
        if len(self.maps) != max(len(self.groups) - 1, 0):
            raise ValueError("need one map between consecutive groups")
        for k, f in enumerate(self.maps):
            if f.source != self.groups[k] or f.target != self.groups[k + 1]:
                raise ValueError("map does not match groups")
        for f, g in zip(self.maps, self.maps[1:]):
            if not (g @ f).is_zero():
                raise ValueError("d o d is not zero")

    @property
    def end(self) -> int:
        return self.start + len(self.groups) - 1

    def group(self, n: int) -> FgAb:
        return self.groups[n - self.start] if self.start <= n <= self.end else FgAb.zero()

    def d(self, n: int) -> FgAbMap:
        if self.start <= n < self.end:
            return self.maps[n - self.start]
        return FgAbMap.zero(self.group(n), self.group(n + 1))

    def subquotient(self, n: int) -> Subquotient:
        return Subquotient(self.group(n), self.d(n - 1), self.d(n))

    def cohomology(self, n: int) -> FgAb:
        return self.subquotient(n).group

    def is_acyclic(self) -> bool:
        return all(self.cohomology(n).is_trivial for n in range(self.start, self.end + 1))


@dataclass(frozen=True)
class CochainMap:
    source: CochainComplex
    target: CochainComplex
    components: dict  # degree -> FgAbMap; missing degrees are zero

    def at(self, n: int) -> FgAbMap:
        f = self.components.get(n)
        return f if f is not None else FgAbMap.zero(self.source.group(n), self.target.group(n))

    def degrees(self) -> range:
        return range(min(self.source.start, self.target.start) - 1, max(self.source.end, self.target.end) + 2)

    def is_chain_map(self) -> bool:
        return all(self.target.d(n) @ self.at(n) == self.at(n + 1) @ self.source.d(n) for n in self.degrees())

    def __sub__(self, other: "CochainMap") -> "CochainMap":
        return CochainMap(self.source, self.target, {n: self.at(n) - other.at(n) for n in self.degrees()})

    def __matmul__(self, other: "CochainMap") -> "CochainMap":
        return CochainMap(other.source, self.target, {n: self.at(n) @ other.at(n) for n in self.degrees()})

    def on_cohomology(self, n: int) -> FgAbMap:
        return self.source.subquotient(n).induced(self.target.subquotient(n), self.at(n))

    def is_quasi_iso(self) -> bool:
        return all(self.on_cohomology(n).is_iso() for n in self.degrees())


@dataclass(frozen=True)
class CochainHomotopy:
    """``h[n]: source^n -> target^{n-1}`` witnessing ``f - g = d h + h d``."""

    f: CochainMap
    g: CochainMap
    h: dict

    def at(self, n: int) -> FgAbMap:
        x = self.h.get(n)
        return x if x is not None else FgAbMap.zero(self.f.source.group(n), self.f.target.group(n - 1))

    def verify(self) -> bool:
        S, T = self.f.source, self.f.target
        for n in self.f.degrees():
            lhs = self.f.at(n) - self.g.at(n)
            rhs = T.d(n - 1) @ self.at(n) + self.at(n + 1) @ S.d(n)
            if lhs != rhs:
                return False
        return True


# ---------------------------------------------------------------------------
# two-term complexes


@dataclass(frozen=True)
class TwoTerm:
    Kminus1: FgAb
    K0: FgAb
    d: FgAbMap

    def __post_init__(self):
        if self.d.source != self.Kminus1 or self.d.target != self.K0:
            raise ValueError("differential does not match the terms")

    @classmethod
    def of(cls, Km1: FgAb, K0: FgAb, matrix) -> "TwoTerm":
        return cls(Km1, K0, FgAbMap(Km1, K0, matrix))

    @classmethod
    def concentrated(cls, G: FgAb, degree: int) -> "TwoTerm":
        """``G`` placed in degree 0 or -1."""
        z = FgAb.zero()
        if degree == 0:
            return cls(z, G, FgAbMap.zero(z, G))
        if degree == -1:
            return cls(G, z, FgAbMap.zero(G, z))
        raise ValueError("degree must be 0 or -1")

    def as_cochain(self) -> CochainComplex:
        return CochainComplex(-1, (self.Kminus1, self.K0), (self.d,))

    def to_json(self) -> dict:
        return {"Kminus1": self.Kminus1.to_json(), "K0": self.K0.to_json(), "d": [list(r) for r in self.d.rows]}

    @classmethod
    def from_json(cls, data: dict) -> "TwoTerm":
        try:
            Km1, K0 = FgAb.from_json(data["Kminus1"]), FgAb.from_json(data["K0"])
            M = data.get("d", [])
        except (KeyError, TypeError) as e:
            raise ValueError(f"malformed complex: {e}") from None
        if not M:
            M = [[0] * Km1.ngens for _ in range(K0.ngens)]
        return cls.of(Km1, K0, M)


def h0(K: TwoTerm) -> FgAb:
    return cokernel_map(K.d).group


def hminus1(K: TwoTerm) -> FgAb:
    return kernel(K.d).group


@dataclass(frozen=True)
class ComplexMap:
    source: TwoTerm
    target: TwoTerm
    fminus1: FgAbMap
    f0: FgAbMap

    def __post_init__(self):
        if self.f0 @ self.source.d != self.target.d @ self.fminus1:
            raise ValueError("map does not commute with the differentials")

    def as_cochain(self) -> CochainMap:
        return CochainMap(self.source.as_cochain(), self.target.as_cochain(), {-1: self.fminus1, 0: self.f0})

    @classmethod
    def identity(cls, K: TwoTerm) -> "ComplexMap":
        return cls(K, K, FgAbMap.identity(K.Kminus1), FgAbMap.identity(K.K0))

    @classmethod
    def zero(cls, K: TwoTerm, L: TwoTerm) -> "ComplexMap":
        return cls(K, L, FgAbMap.zero(K.Kminus1, L.Kminus1), FgAbMap.zero(K.K0, L.K0))


@dataclass(frozen=True)
class Homotopy:
    """``H: K^0 -> L^{-1}`` with ``f0 - g0 = d_L H`` and ``f-1 - g-1 = H d_K``."""

    H: FgAbMap

    def witnesses(self, f: ComplexMap, g: ComplexMap) -> bool:
        return (f.f0 - g.f0 == f.target.d @ self.H) and (f.fminus1 - g.fminus1 == self.H @ f.source.d)


def induced_maps(f: ComplexMap) -> tuple[FgAbMap, FgAbMap]:
    """Induced maps on ``(hminus1, h0)``."""
    F = f.as_cochain()
    return F.on_cohomology(-1), F.on_cohomology(0)


def is_quasi_iso(f: ComplexMap) -> bool:
    a, b = induced_maps(f)
    return a.is_iso() and b.is_iso()


def mapping_cone(f: ComplexMap) -> CochainComplex:
    """``K^{-1} -> K^0 + L^{-1} -> L^0`` with ``d(k) = (-d_K k, f k)`` and ``d(k, l) = f k + d_L l``."""
    K, L = f.source, f.target
    S, inj, proj = direct_sum([K.K0, L.Kminus1])
    d1 = inj[0] @ (-K.d) + inj[1] @ f.fminus1
    d2 = f.f0 @ proj[0] + L.d @ proj[1]
    return CochainComplex(-2, (K.Kminus1, S, L.K0), (d1, d2))


def cone_is_acyclic(f: ComplexMap) -> bool:
    C = mapping_cone(f)
    z = FgAb.zero()
    seq = [FgAbMap.zero(z, C.groups[0]), *C.maps, FgAbMap.zero(C.groups[-1], z)]
    return is_exact(seq)


# ---------------------------------------------------------------------------
# derived Hom


def rhom(K: TwoTerm, L: TwoTerm) -> tuple[FgAb, FgAb, FgAb]:
    """``(R^{-1}, R^0, R^1) Hom(K, L)`` assembled from the cohomology groups.

    Over ``Z`` both complexes split into their shifted cohomology, so
    ``R^n = sum Hom(H^p K, H^{p+n} L) + sum Ext(H^p K, H^{p+n-1} L)``.
    """
    HK = {-1: hminus1(K), 0: h0(K)}
    HL = {-1: hminus1(L), 0: h0(L)}
    out = []
    for n in (-1, 0, 1):
        parts = []
        for p in (-1, 0):
            if p + n in HL:
                parts.append(hom(HK[p], HL[p + n]))
            if p + n - 1 in HL:
                parts.append(ext1(HK[p], HL[p + n - 1]))
        out.append(direct_sum(parts)[0] if parts else FgAb.zero())
    return tuple(out)


def free_replacement(K: TwoTerm) -> tuple[list[int], dict[int, list[list[int]]]]:
    """Free complex ``P^{-2} -> P^{-1} -> P^0`` quasi-isomorphic to ``K``.

    ``P^{-2} = Z^{t_a}``, ``P^{-1} = Z^{n_a} + Z^{t_b}``, ``P^0 = Z^{n_b}`` built from
    the relations of both terms and a lift ``D`` of ``d`` with ``D R_a = R_b C``.
    Returns ranks and integer matrices ``dP[p]: P^p -> P^{p+1}``.
    """
    A, B = K.Kminus1, K.K0
    D = K.d.rows
    na, nb, ta, tb = A.ngens, B.ngens, A.torsion_count, B.torsion_count
    C = [[0] * ta for _ in range(tb)]
    for i in range(ta):
        for k in range(nb):
            v = A.factors[i] * D[k][i]
            if k < tb:
                assert v % B.factors[k] == 0
                C[k][i] = v // B.factors[k]
            else:
                assert v == 0
    d2 = [[A.factors[i] if r == i else 0 for i in range(ta)] for r in range(na)]
    d2 += [[-C[k][i] for i in range(ta)] for k in range(tb)]
    d1 = [list(D[k]) + [B.factors[j] if j == k else 0 for j in range(tb)] for k in range(nb)]
    return [ta, na + tb, nb], {-2: d2, -1: d1}


def _blocks(groups: list[FgAb]):
    S, inj, proj = direct_sum(groups)
    return S, inj, proj


def rhom_via_resolution(K: TwoTerm, L: TwoTerm, degrees: Sequence[int] = (-1, 0, 1)) -> tuple[FgAb, ...]:
    """Cohomology of ``Hom(P, L)`` for the free replacement ``P`` of ``K``."""
    ranks, dP = free_replacement(K)
    r = {-2: ranks[0], -1: ranks[1], 0: ranks[2]}
    Lg = {-1: L.Kminus1, 0: L.K0}

    def layout(n):
        ps = [p for p in (-2, -1, 0) if p + n in Lg]
        groups, index = [], []
        for p in ps:
            for i in range(r[p]):
                groups.append(Lg[p + n])
                index.append((p, i))
        S, inj, proj = _blocks(groups)
        return S, inj, proj, index

    layouts = {n: layout(n) for n in range(-2, 4)}

    def differential(n):
        S, inj, proj, index = layouts[n]
        T, tinj, tproj, tindex = layouts[n + 1]
        pos = {key: k for k, key in enumerate(tindex)}
        src = {key: k for k, key in enumerate(index)}
        sign = -1 if n % 2 else 1
        cols = []
        for g in range(S.ngens):
            e = S.gen(g)
            comp = {key: proj[k](e) for k, key in enumerate(index)}
            out = T.zero_element()
            for (p, i), k in pos.items():
                j = p + n + 1
                val = Lg[j].zero_element()
                if p + n == -1 and (p, i) in src:
                    val = Lg[j].add(val, L.d(comp[(p, i)]))
                if p in dP:
                    M = dP[p]
                    for kk in range(r[p + 1]):
                        c = M[kk][i]
                        if c and (p + 1, kk) in src:
                            val = Lg[j].add(val, Lg[j].scale(-sign * c, comp[(p + 1, kk)]))
                out = T.add(out, tinj[k](val))
            cols.append(out)
        if not S.ngens:
            return FgAbMap.zero(S, T)
        return FgAbMap.from_images(S, T, cols)

    D = {n: differential(n) for n in range(-2, 3)}
    out = []
    for n in degrees:
        out.append(Subquotient(layouts[n][0], D[n - 1], D[n]).group)
    return tuple(out)


# ---------------------------------------------------------------------------
# Yoneda classes of four-term exact sequences


@dataclass(frozen=True)
class FourTermExact:
    """``0 -> A -a-> X -x-> Y -y-> B -> 0`` with ``A`` in degree -2 of ``K_B``."""

    A: FgAb
    X: FgAb
    Y: FgAb
    B: FgAb
    a: FgAbMap
    x: FgAbMap
    y: FgAbMap

    def __post_init__(self):
        z = FgAb.zero()
        seq = [FgAbMap.zero(z, self.A), self.a, self.x, self.y, FgAbMap.zero(self.B, z)]
        try:
            ok = is_exact(seq)
        except ValueError:
            ok = False
        if not ok:
            raise ValueError("sequence is not exact")

    @classmethod
    def from_map(cls, x: FgAbMap) -> "FourTermExact":
        """``0 -> ker x -> X -> Y -> coker x -> 0``."""
        K = kernel(x)
        q = cokernel_map(x)
        return cls(K.group, x.source, x.target, q.group, K.inclusion, x, q.projection)

    @classmethod
    def split(cls, A: FgAb, X: FgAb, B: FgAb) -> "FourTermExact":
        """``0 -> A -> A + X -> X + B -> B -> 0``."""
        AX, iAX, pAX = direct_sum([A, X])
        XB, iXB, pXB = direct_sum([X, B])
        return cls(A, AX, XB, B, iAX[0], iXB[0] @ pAX[1], pXB[1])


@dataclass(frozen=True)
class YonedaData:
    KA: CochainComplex
    KB: CochainComplex
    alpha: CochainMap
    beta: CochainMap
    gamma: CochainMap
    delta: CochainMap
    phi: CochainMap


def _yoneda(Kx: FourTermExact) -> YonedaData:
    KA = CochainComplex(-2, (Kx.X, Kx.Y, Kx.B), (Kx.x, Kx.y))
    KB = CochainComplex(-2, (Kx.A, Kx.X, Kx.Y), (Kx.a, Kx.x))
    A2 = CochainComplex(-2, (Kx.A,), ())
    Bc = CochainComplex(0, (Kx.B,), ())
    alpha = CochainMap(A2, KA, {-2: Kx.a})
    beta = CochainMap(Bc, KA, {0: FgAbMap.identity(Kx.B)})
    gamma = CochainMap(KB, Bc, {0: Kx.y})
    delta = CochainMap(KB, A2, {-2: FgAbMap.identity(Kx.A)})
    phi = CochainMap(KB, KA, {-2: Kx.a, -1: Kx.x, 0: Kx.y})
    return YonedaData(KA, KB, alpha, beta, gamma, delta, phi)


def yoneda_Y(Kx: FourTermExact) -> dict:
    """The zigzag ``B -beta-> K_A <-alpha- A[2]``; ``alpha`` is a quasi-isomorphism."""
    Y = _yoneda(Kx)
    return {"source": Y.beta.source, "middle": Y.KA, "forward": Y.beta, "backward": Y.alpha,
            "backward_is_quasi_iso": Y.alpha.is_quasi_iso()}


def yoneda_Yprime(Kx: FourTermExact) -> dict:
    """The zigzag ``B <-gamma- K_B -delta-> A[2]``; ``gamma`` is a quasi-isomorphism."""
    Y = _yoneda(Kx)
    return {"middle": Y.KB, "target": Y.delta.target, "backward": Y.gamma, "forward": Y.delta,
            "backward_is_quasi_iso": Y.gamma.is_quasi_iso()}


def homotopy_witnesses(Kx: FourTermExact) -> tuple[CochainHomotopy, CochainHomotopy]:
    """Homotopies ``phi ~ beta gamma`` and ``phi ~ alpha delta``.

    The first is ``id_X`` from ``K_B^{-1}`` to ``K_A^{-2}`` and zero elsewhere; the
    second is ``id_Y`` from ``K_B^0`` to ``K_A^{-1}`` and zero elsewhere.
    """
    Y = _yoneda(Kx)
    h1 = CochainHomotopy(Y.phi, Y.beta @ Y.gamma, {-1: FgAbMap.identity(Kx.X)})
    h2 = CochainHomotopy(Y.phi, Y.alpha @ Y.delta, {0: FgAbMap.identity(Kx.Y)})
    return h1, h2


# ---------------------------------------------------------------------------
# quotient by a subgroup of H^{-1}


def quotient_by_subgroup(K: TwoTerm, gens: Sequence[Sequence[int]]) -> TwoTerm:
    """``[K^{-1}/G -> K^0]`` for ``G`` generated by elements of ``ker d``."""
    for g in gens:
        if not K.K0.is_zero(K.d(g)):
            raise ValueError("generator is not in the kernel of d")
    q = quotient_by(K.Kminus1, [list(g) for g in gens])
    Q = q.group
    cols = [K.d(q.lift(Q.gen(i))) for i in range(Q.ngens)]
    dbar = FgAbMap.from_images(Q, K.K0, cols) if Q.ngens else FgAbMap.zero(Q, K.K0)
    return TwoTerm(Q, K.K0, dbar)


# ---------------------------------------------------------------------------
# random data for sweeps


def random_group(rng: random.Random, max_gens: int = 3, orders: Sequence[int] = (0, 0, 2, 3, 4, 6, 12)) -> FgAb:
    return FgAb.of(*[rng.choice(orders) for _ in range(rng.randint(0, max_gens))])


def random_map(S: FgAb, T: FgAb, rng: random.Random, bound: int = 4) -> FgAbMap:
    """A random homomorphism: generator images are scaled so relations are respected."""
    from math import gcd

    cols = []
    for j in range(S.ngens):
        d = S.orders[j]
        col = []
        for i in range(T.ngens):
            e = T.orders[i]
            v = rng.randint(-bound, bound)
            if d:
                # need d * v = 0 in Z/e (and v = 0 when the target coordinate is free)
                v = v * (e // gcd(e, d)) if e else 0
            col.append(v)
        cols.append(col)
    if not S.ngens:
        return FgAbMap.zero(S, T)
    return FgAbMap.from_images(S, T, cols)


def random_four_term(rng: random.Random) -> FourTermExact:
    X, Y = random_group(rng), random_group(rng)
    return FourTermExact.from_map(random_map(X, Y, rng))
