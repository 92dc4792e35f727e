"""T-duality of principal torus bundles at the level of characteristic classes.

A bundle ``E -> B`` with fibre ``T^n`` is given by its Chern class
``c in H^2(B; Z^n)``.  The group of Picard stacks with ``H^0 = E`` and
``H^-1 = T`` sits in the exact sequence

    H^1(B; Z^n) -alpha-> H^3(B) -> Q -c_hat-> H^2(B; Z^n) -beta-> H^4(B)

with ``alpha(x) = sum x_i c_i`` and ``beta(y) = sum y_i c_i``.  Elements of ``Q``
are modeled as pairs ``(c_hat, t)`` with ``c_hat in ker beta`` and
``t in coker alpha`` under a fixed splitting.

The flux ``h in H^3(E)`` of a pair is given in graded coordinates of the Serre
filtration: slots ``E^{0,3}`` (``Lambda^3 Z^n``), ``E^{1,2}`` (``H^1(B) x
Lambda^2 Z^n``), ``E^{2,1}`` (``H^2(B; Z^n)``) and ``E^{3,0}`` (``H^3(B)``).

>>> from picdual.simplicial import ring_of, sphere
>>> c = ChernClass(ring_of(sphere(2)), 1, ((1,),))
>>> str(filtration_model(c).f2_group)
'Z'
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .fgab import (
    FgAb,
    FgAbMap,
    Subgroup,
    cokernel_map,
    direct_sum,
    ext1,
    image,
    is_exact,
    kernel,
    quotient_by,
)
from .lca import FtLca
from .picard import ExtBackend, PicClass
from .simplicial import CohRing

__all__ = [
    "Blocks",
    "ChernClass",
    "QGroup",
    "QElement",
    "FiltrationModel",
    "HFlux",
    "PairClass",
    "TripleClass",
    "alpha_map",
    "beta_map",
    "iota_map",
    "q_group",
    "filtration_model",
    "gysin_h3",
    "exists_tdual",
    "enumerate_duals",
    "gamma_action",
    "phi_data",
    "psi_data",
    "triple_action",
    "underlying_pair",
    "pic_class_of",
    "q_element_of_pic",
    "check_exactness",
    "classify",
]


class Blocks:
    """``H^n`` as a normalized group with block coordinates ``(h_1, ..., h_n)``."""

    def __init__(self, H: FgAb, n: int):
        self.H, self.n = H, n
        self.group, self.inj, self.proj = direct_sum([H] * n)

    def pack(self, hs: Sequence[Sequence[int]]) -> tuple[int, ...]:
        if len(hs) != self.n:
            raise ValueError(f"expected {self.n} components")
        out = self.group.zero_element()
        for f, h in zip(self.inj, hs):
            out = self.group.add(out, f(self.H.reduce(h)))
        return out

    def unpack(self, v: Sequence[int]) -> tuple[tuple[int, ...], ...]:
        return tuple(p(v) for p in self.proj)

    def map_to(self, target: FgAb, fn) -> FgAbMap:
        """Homomorphism given by ``fn`` on block tuples."""
        S = self.group
        if not S.ngens:
            return FgAbMap.zero(S, target)
        return FgAbMap.from_images(S, target, [fn(self.unpack(S.gen(k))) for k in range(S.ngens)])


def _pairs(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


@dataclass(frozen=True)
class ChernClass:
    base: CohRing = field(repr=False)
    n: int
    components: tuple

    def __post_init__(self):
        H2 = self.base.group(2)
        comps = tuple(H2.reduce(c) for c in self.components)
        if len(comps) != self.n:
            raise ValueError(f"Chern class needs {self.n} components in H^2")
        object.__setattr__(self, "components", comps)

    def __hash__(self) -> int:
        return hash((id(self.base), self.n, self.components))

    @classmethod
    def zero(cls, base: CohRing, n: int) -> "ChernClass":
        return cls(base, n, tuple(base.group(2).zero_element() for _ in range(n)))

    def to_json(self) -> dict:
        return {"n": self.n, "components": [list(c) for c in self.components]}

    @classmethod
    def from_json(cls, base: CohRing, data: dict) -> "ChernClass":
        try:
            n = int(data["n"])
            comps = tuple(tuple(int(x) for x in c) for c in data["components"])
        except (KeyError, TypeError, ValueError) as e:
            raise ValueError(f"malformed Chern class: {e}") from None
        H2 = base.group(2)
        if any(len(c) != H2.ngens for c in comps):
            raise ValueError("Chern class components do not match H^2")
        return cls(base, n, comps)


def _sum(G: FgAb, xs) -> tuple[int, ...]:
    out = G.zero_element()
    for x in xs:
        out = G.add(out, x)
    return out


def alpha_map(c: ChernClass) -> tuple[Blocks, FgAbMap]:
    """``alpha: H^1(B; Z^n) -> H^3(B)``, ``(x_i) -> sum x_i cup c_i``."""
    R = c.base
    B1 = Blocks(R.group(1), c.n)
    H3 = R.group(3)
    return B1, B1.map_to(H3, lambda xs: _sum(H3, (R.cup(1, 2, x, ci) for x, ci in zip(xs, c.components))))


def beta_map(c: ChernClass) -> tuple[Blocks, FgAbMap]:
    """``beta: H^2(B; Z^n) -> H^4(B)``, ``(y_i) -> sum y_i cup c_i``."""
    R = c.base
    B2 = Blocks(R.group(2), c.n)
    H4 = R.group(4)
    return B2, B2.map_to(H4, lambda ys: _sum(H4, (R.cup(2, 2, y, ci) for y, ci in zip(ys, c.components))))


def iota_map(c: ChernClass) -> tuple[Blocks, Blocks, FgAbMap]:
    """``iota_c: H^0(B; Lambda^2 Z^n) -> H^2(B; Z^n)``.

    ``lambda_{ij} e_i ^ e_j`` (``i < j``) goes to ``+lambda_{ij} c_i`` in component ``j``
    and ``-lambda_{ij} c_j`` in component ``i``.
    """
    R = c.base
    pairs = _pairs(c.n)
    L = Blocks(R.group(0), len(pairs))
    B2 = Blocks(R.group(2), c.n)
    H2 = R.group(2)

    def fn(lams):
        comps = [H2.zero_element() for _ in range(c.n)]
        for (i, j), lam in zip(pairs, lams):
            comps[j] = H2.add(comps[j], R.cup(0, 2, lam, c.components[i]))
            comps[i] = H2.add(comps[i], H2.neg(R.cup(0, 2, lam, c.components[j])))
        return B2.pack(comps)

    return L, B2, L.map_to(B2.group, fn)


# ---------------------------------------------------------------------------
# the group Q


@dataclass(frozen=True)
class QElement:
    c_hat: tuple[int, ...]  # element of H^2(B; Z^n) in normalized coordinates
    t: tuple[int, ...]  # element of coker(alpha)


class QGroup:
    """``Q`` as pairs ``(c_hat in ker beta, t in coker alpha)``."""

    def __init__(self, c: ChernClass):
        self.c = c
        self.B1, self.alpha = alpha_map(c)
        self.B2, self.beta = beta_map(c)
        self.H3 = c.base.group(3)
        self.ker_beta: Subgroup = kernel(self.beta)
        self.coker = cokernel_map(self.alpha)
        self.coker_alpha = self.coker.group
        self.group, self.inj, self.proj = direct_sum([self.ker_beta.group, self.coker_alpha])

    def element(self, c_hat: Sequence[int], t: Sequence[int] | None = None) -> QElement:
        c_hat = self.B2.group.reduce(c_hat)
        if not self.beta_vanishes(c_hat):
            raise ValueError("c_hat is not in ker beta")
        t = self.coker_alpha.reduce(t) if t is not None else self.coker_alpha.zero_element()
        return QElement(c_hat, t)

    def element_from_blocks(self, c_hat_blocks: Sequence[Sequence[int]], g: Sequence[int] | None = None) -> QElement:
        """Element with the given ``c_hat`` components and ``t`` the class of ``g in H^3``."""
        t = self.coker.projection(g) if g is not None else None
        return self.element(self.B2.pack(c_hat_blocks), t)

    def beta_vanishes(self, c_hat: Sequence[int]) -> bool:
        return self.beta.target.is_zero(self.beta(c_hat))

    def c_hat_blocks(self, q: QElement) -> tuple[tuple[int, ...], ...]:
        return self.B2.unpack(q.c_hat)

    def act(self, g: Sequence[int], q: QElement) -> QElement:
        """Action of ``H^3(B)`` through ``H^3 -> coker alpha``."""
        return QElement(q.c_hat, self.coker_alpha.add(q.t, self.coker.projection(g)))

    def add(self, p: QElement, q: QElement) -> QElement:
        return QElement(self.B2.group.add(p.c_hat, q.c_hat), self.coker_alpha.add(p.t, q.t))

    def to_group(self, q: QElement) -> tuple[int, ...]:
        k = self.ker_beta.coords(q.c_hat)
        return self.group.add(self.inj[0](k), self.inj[1](q.t))

    def from_group(self, v: Sequence[int]) -> QElement:
        return QElement(self.ker_beta.inclusion(self.proj[0](v)), self.proj[1](v))

    def sequence(self) -> list[FgAbMap]:
        """``alpha, H^3 -> Q, c_hat, beta`` as homomorphisms."""
        H3, Q = self.H3, self.group
        j = FgAbMap.from_images(H3, Q, [self.inj[1](self.coker.projection(H3.gen(k))) for k in range(H3.ngens)]) if H3.ngens else FgAbMap.zero(H3, Q)
        ch = FgAbMap.from_images(Q, self.B2.group, [self.from_group(Q.gen(k)).c_hat for k in range(Q.ngens)]) if Q.ngens else FgAbMap.zero(Q, self.B2.group)
        return [self.alpha, j, ch, self.beta]

    def random_element(self, rng: random.Random, bound: int = 5) -> QElement:
        v = tuple(rng.randint(-bound, bound) for _ in range(self.group.ngens))
        return self.from_group(self.group.reduce(v))

    def to_json(self) -> dict:
        return {"group": str(self.group), "ker_beta": str(self.ker_beta.group), "coker_alpha": str(self.coker_alpha)}


def q_group(c: ChernClass) -> QGroup:
    return QGroup(c)


def check_exactness(c: ChernClass, samples: int = 20, seed: int = 0) -> dict:
    """Exactness of the five-term sequence plus the pointwise statements about ``Q``."""
    Q = q_group(c)
    rng = random.Random(seed)
    seq_exact = is_exact(Q.sequence())
    elems = [Q.random_element(rng) for _ in range(samples)]
    beta_zero = all(Q.beta_vanishes(q.c_hat) for q in elems)
    surjective = all(
        Q.element(Q.ker_beta.inclusion(Q.ker_beta.group.gen(k))).c_hat == Q.ker_beta.inclusion(Q.ker_beta.group.gen(k))
        for k in range(Q.ker_beta.group.ngens)
    )
    transitive = True
    for q in elems:
        other = QElement(q.c_hat, Q.random_element(rng).t)
        diff = Q.coker_alpha.add(other.t, Q.coker_alpha.neg(q.t))
        g = Q.coker.lift(diff) if Q.coker_alpha.ngens else Q.H3.zero_element()
        if Q.act(g, q) != other:
            transitive = False
    stabilizer = all(Q.act(Q.alpha.column(k), q) == q for q in elems[:3] for k in range(Q.alpha.source.ngens))
    return {
        "sequence_exact": seq_exact,
        "beta_of_c_hat_zero": beta_zero,
        "c_hat_onto_ker_beta": surjective,
        "h3_action_transitive_on_fibers": transitive,
        "image_alpha_acts_trivially": stabilizer,
        "ok": seq_exact and beta_zero and surjective and transitive and stabilizer,
        "q_group": Q.to_json(),
    }


# ---------------------------------------------------------------------------
# the filtration model of F^2 H^3(E)


class FiltrationModel:
    """Pieces of ``0 -> A -> F^2 H^3(E) -> Bpart -> 0``.

    ``d3`` gives the images in ``coker alpha`` of the generators of
    ``K = ker iota_c``; it is not determined by ``c`` and defaults to zero.
    ``lift`` picks ``s: K -> H^3``: ``"hnf"`` uses the canonical preimage and
    ``"shifted"`` adds ``alpha`` of a nonzero element, so both give valid lifts.
    """

    def __init__(self, c: ChernClass, d3: Sequence[Sequence[int]] | None = None, lift: str = "hnf"):
        self.c = c
        self.Q = q_group(c)
        self.L, self.B2, self.iota = iota_map(c)
        self.K = kernel(self.iota)
        nK = self.K.group.ngens
        CA = self.Q.coker_alpha
        d3 = [CA.reduce(v) for v in d3] if d3 is not None else [CA.zero_element() for _ in range(nK)]
        if len(d3) != nK:
            raise ValueError(f"d3 needs {nK} images")
        self.d3 = FgAbMap.from_images(self.K.group, CA, d3) if nK else FgAbMap.zero(self.K.group, CA)
        H3 = self.Q.H3
        s_cols = []
        for v in d3:
            g = self.Q.coker.lift(v) if CA.ngens else H3.zero_element()
            if lift == "shifted" and self.Q.alpha.source.ngens:
                g = H3.add(g, self.Q.alpha.column(0))
            elif lift not in ("hnf", "shifted"):
                raise ValueError(f"unknown lift {lift!r}")
            s_cols.append(g)
        self.s = FgAbMap.from_images(self.K.group, H3, s_cols) if nK else FgAbMap.zero(self.K.group, H3)

    @cached_property
    def _alpha_plus_s(self) -> list[tuple[int, ...]]:
        a = [self.Q.alpha.column(k) for k in range(self.Q.alpha.source.ngens)]
        return a + [self.s.column(k) for k in range(self.s.source.ngens)]

    @cached_property
    def A(self) -> FgAb:
        """``H^3(B) / (im alpha + im s)``."""
        return quotient_by(self.Q.H3, self._alpha_plus_s).group

    @cached_property
    def gamma(self) -> FgAb:
        """``(im alpha + im s) / im alpha`` inside ``coker alpha``."""
        gens = [self.Q.coker.projection(g) for g in self._alpha_plus_s]
        CA = self.Q.coker_alpha
        M = FgAbMap.from_images(FgAb.free(len(gens)), CA, gens) if gens else FgAbMap.zero(FgAb.zero(), CA)
        return image(M).group

    @cached_property
    def gamma_generators(self) -> list[tuple[int, ...]]:
        return [self.Q.coker.projection(g) for g in self._alpha_plus_s if any(self.Q.coker.projection(g))]

    @cached_property
    def _bpart(self):
        q = cokernel_map(self.iota)
        C = q.group
        beta = self.Q.beta
        cols = [beta(q.lift(C.gen(k))) for k in range(C.ngens)]
        bbar = FgAbMap.from_images(C, beta.target, cols) if C.ngens else FgAbMap.zero(C, beta.target)
        return q, kernel(bbar)

    @property
    def Bpart(self) -> FgAb:
        """``ker(beta_bar: H^2(B; Z^n) / im iota_c -> H^4)``."""
        return self._bpart[1].group

    @property
    def f2_group(self) -> FgAb | None:
        """``F^2 H^3(E)`` when the graded pieces determine it (``Ext(Bpart, A) = 0``)."""
        if ext1(self.Bpart, self.A).is_trivial:
            return direct_sum([self.A, self.Bpart])[0]
        return None

    def symbol_class(self, e21_blocks: Sequence[Sequence[int]]) -> tuple[int, ...]:
        """Class of an ``E^{2,1}`` symbol in ``H^2(B; Z^n) / im iota_c``."""
        return self._bpart[0].projection(self.B2.pack(e21_blocks))

    def to_json(self) -> dict:
        f2 = self.f2_group
        return {
            "K": str(self.K.group),
            "A": str(self.A),
            "Bpart": str(self.Bpart),
            "Gamma": str(self.gamma),
            "F2H3": str(f2) if f2 is not None else None,
        }


def filtration_model(c: ChernClass, d3: Sequence[Sequence[int]] | None = None, lift: str = "hnf") -> FiltrationModel:
    return FiltrationModel(c, d3, lift)


def gysin_h3(c: ChernClass) -> FgAb | None:
    """``H^3`` of a circle bundle from the Gysin sequence.

    ``0 -> coker(cup c: H^1 -> H^3) -> H^3(E) -> ker(cup c: H^2 -> H^4) -> 0``; the
    result is returned when the extension is forced to split.
    """
    if c.n != 1:
        raise ValueError("the Gysin oracle handles circle bundles")
    R = c.base
    (c1,) = c.components
    H1, H2, H3, H4 = (R.group(k) for k in (1, 2, 3, 4))
    m1 = FgAbMap.from_images(H1, H3, [R.cup(1, 2, H1.gen(k), c1) for k in range(H1.ngens)]) if H1.ngens else FgAbMap.zero(H1, H3)
    m2 = FgAbMap.from_images(H2, H4, [R.cup(2, 2, H2.gen(k), c1) for k in range(H2.ngens)]) if H2.ngens else FgAbMap.zero(H2, H4)
    left = cokernel_map(m1).group
    right = kernel(m2).group
    if ext1(right, left).is_trivial:
        return direct_sum([left, right])[0]
    return None


# ---------------------------------------------------------------------------
# pairs, triples and duals


@dataclass(frozen=True)
class HFlux:
    """Graded coordinates of ``h in H^3(E)``; empty slots mean zero."""

    e03: tuple[int, ...] = ()
    e12: tuple = ()
    e21: tuple = ()
    e30: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {"e03": list(self.e03), "e12": [list(x) for x in self.e12],
                "e21": [list(x) for x in self.e21], "e30": list(self.e30)}

    @classmethod
    def from_json(cls, data: dict) -> "HFlux":
        try:
            return cls(
                tuple(int(x) for x in data.get("e03", [])),
                tuple(tuple(int(y) for y in x) for x in data.get("e12", [])),
                tuple(tuple(int(y) for y in x) for x in data.get("e21", [])),
                tuple(int(x) for x in data.get("e30", [])),
            )
        except (TypeError, ValueError, AttributeError) as e:
            raise ValueError(f"malformed flux: {e}") from None


@dataclass(frozen=True)
class PairClass:
    c: ChernClass
    h: HFlux = field(default_factory=HFlux)

    def __post_init__(self):
        n, R = self.c.n, self.c.base
        if self.h.e03 and len(self.h.e03) != len(list(itertools.combinations(range(n), 3))):
            raise ValueError("E^{0,3} slot has wrong length")
        if self.h.e12 and len(self.h.e12) != len(_pairs(n)):
            raise ValueError("E^{1,2} slot has wrong length")
        if self.h.e21 and len(self.h.e21) != n:
            raise ValueError("E^{2,1} slot has wrong length")
        if self.h.e30 and len(self.h.e30) != R.group(3).ngens:
            raise ValueError("E^{3,0} slot has wrong length")

    def e21_blocks(self) -> tuple[tuple[int, ...], ...]:
        H2 = self.c.base.group(2)
        return self.h.e21 or tuple(H2.zero_element() for _ in range(self.c.n))

    def e30(self) -> tuple[int, ...]:
        return self.h.e30 or self.c.base.group(3).zero_element()


def exists_tdual(p: PairClass) -> bool:
    """A dual exists iff ``h`` lies in ``F^2``: the ``E^{0,3}`` and ``E^{1,2}`` symbols vanish."""
    H1 = p.c.base.group(1)
    top = any(p.h.e03)
    mid = any(not H1.is_zero(x) for x in p.h.e12)
    return not top and not mid


@dataclass(frozen=True)
class TripleClass:
    """``c``, dual class ``c_hat`` (normalized ``H^2(B; Z^n)`` coordinates) and ``u in coker alpha``."""

    c: ChernClass
    c_hat: tuple[int, ...]
    u: tuple[int, ...]


def phi_data(t: TripleClass) -> QElement:
    """Triple to Picard class: ``c_hat`` is kept and ``u`` becomes the ``coker alpha`` part."""
    Q = q_group(t.c)
    return Q.element(t.c_hat, t.u)


def psi_data(q: QElement, c: ChernClass) -> TripleClass:
    Q = q_group(c)
    if not Q.beta_vanishes(q.c_hat):
        raise ValueError("element does not lie over ker beta")
    return TripleClass(c, Q.B2.group.reduce(q.c_hat), Q.coker_alpha.reduce(q.t))


def gamma_action(g: Sequence[int], q: QElement, c: ChernClass) -> QElement:
    return q_group(c).act(g, q)


def triple_action(g: Sequence[int], t: TripleClass) -> TripleClass:
    """``H^3(B)`` acts on triples by tensoring the gerbe with the pulled-back class."""
    Q = q_group(t.c)
    return TripleClass(t.c, t.c_hat, Q.coker_alpha.add(t.u, Q.coker.projection(g)))


def underlying_pair(t: TripleClass) -> PairClass:
    Q = q_group(t.c)
    g = Q.coker.lift(t.u) if Q.coker_alpha.ngens else Q.H3.zero_element()
    return PairClass(t.c, HFlux(e21=Q.B2.unpack(t.c_hat), e30=tuple(g)))


@dataclass(frozen=True)
class DualOrbit:
    c_hat: tuple[tuple[int, ...], ...]
    representative: TripleClass
    gamma: FgAb
    gamma_generators: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {"c_hat": [list(x) for x in self.c_hat], "orbit": {"gamma": str(self.gamma), "representative_u": list(self.representative.u)}}


def enumerate_duals(p: PairClass, window: int = 2, d3: Sequence[Sequence[int]] | None = None) -> list[DualOrbit]:
    """One triple per ``c_hat`` compatible with ``h``, each with its ``Gamma_E``-orbit.

    ``c_hat`` runs over the symbol class ``e21 + im iota_c``; when that image is
    infinite the coefficients of ``iota_c`` are limited to ``[-window, window]``.
    """
    if not exists_tdual(p):
        raise ValueError("pair is not dualizable: h is not in F^2 H^3(E)")
    F = filtration_model(p.c, d3)
    Q = F.Q
    base = F.B2.pack(p.e21_blocks())
    if not Q.beta_vanishes(base):
        raise ValueError("E^{2,1} symbol is not in ker beta")
    L = F.L.group
    seen = {}
    for lam in itertools.product(range(-window, window + 1), repeat=L.ngens):
        lam = L.reduce(lam)
        ch = Q.B2.group.add(base, F.iota(lam))
        if ch in seen:
            continue
        u = Q.coker.projection(p.e30()) if Q.coker_alpha.ngens else ()
        t = TripleClass(p.c, ch, tuple(u))
        seen[ch] = DualOrbit(Q.B2.unpack(ch), t, F.gamma, tuple(F.gamma_generators))
    return [seen[k] for k in sorted(seen)]


def pic_class_of(q: QElement, c: ChernClass) -> PicClass:
    """The Picard class with ``H^-1 = T`` and ``H^0 = Z + T^n`` carrying ``(t, c_hat)``.

    The ``(Z, T)`` block holds a lift of ``t`` to ``H^3`` and block ``(1 + i, 0)``
    holds ``c_hat_i``.  For ``c = 0`` this is exactly ``Ext^2(Z + T^n, T)``.
    """
    Q = q_group(c)
    g = Q.coker.lift(q.t) if Q.coker_alpha.ngens else Q.H3.zero_element()
    blocks = [((0, 0), tuple(g))]
    for i, y in enumerate(Q.B2.unpack(q.c_hat)):
        blocks.append(((1 + i, 0), y))
    return PicClass(FtLca(t=1), FtLca(z=1, t=c.n), tuple(blocks), ExtBackend(c.base))


def q_element_of_pic(P: PicClass, c: ChernClass) -> QElement:
    """Inverse of :func:`pic_class_of` for either the class or its dual.

    The dual has ``H^-1 = T + Z^n`` and ``H^0 = Z``; its blocks are ``(0, 0)`` for
    ``H^3`` and ``(0, j)`` for the ``Z`` factors of ``H^-1``.
    """
    Q = q_group(c)
    if P.H0 == FtLca(z=1, t=c.n) and P.Hminus1 == FtLca(t=1):
        g = P.component(0, 0)
        ys = [P.component(1 + i, 0) for i in range(c.n)]
    elif P.H0 == FtLca(z=1) and P.Hminus1 == FtLca(z=c.n, t=1):
        g = P.component(0, c.n)
        ys = [P.component(0, i) for i in range(c.n)]
    else:
        raise ValueError("Picard class is not of the form modeled for Q")
    return Q.element(Q.B2.pack(ys), Q.coker.projection(g))


def classify(base: CohRing, c: ChernClass, h: HFlux, window: int = 2, d3=None) -> dict:
    """Report used by the command line."""
    p = PairClass(c, h)
    Q = q_group(c)
    out = {"dualizable": exists_tdual(p), "q_group": Q.to_json()}
    F = filtration_model(c, d3)
    out["filtration"] = F.to_json()
    out["gamma_order"] = F.gamma.order() if F.gamma.is_finite else 0
    out["duals"] = [d.to_json() for d in enumerate_duals(p, window, d3)] if out["dualizable"] else []
    return out
