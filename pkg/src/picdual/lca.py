"""Finite-type locally compact abelian groups ``Z^a + F + T^b + R^c``.

Pontrjagin duality swaps ``Z`` and ``T`` and fixes ``R`` and finite groups.  A
finite group ``F = sum Z/n_i`` is identified with its character group by the
pairing ``(x, y) -> x*y/n_i mod 1`` on each cyclic factor; this identification
is fixed once and used everywhere.

>>> dual(FtLca(z=2, t=1, r=1, finite=FgAb.of(4)))
FtLca(z=1, t=2, r=1, finite=FgAb(free_rank=0, factors=(4,)))
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .fgab import FgAb, FgAbMap, hom

__all__ = [
    "FtLca",
    "LcaMap",
    "AdmissibilityVerdict",
    "dual",
    "double_dual_check",
    "hom_group",
    "two_three_condition",
    "two_rank",
    "admissible",
    "character_pairing",
    "random_ftlca",
]


@dataclass(frozen=True)
class FtLca:
    z: int = 0
    t: int = 0
    r: int = 0
    finite: FgAb = field(default_factory=FgAb)

    def __post_init__(self):
        if min(self.z, self.t, self.r) < 0:
            raise ValueError("ranks must be nonnegative")
        if not isinstance(self.finite, FgAb):
            object.__setattr__(self, "finite", FgAb.of(*self.finite))
        if self.finite.free_rank:
            raise ValueError("finite part must be torsion")

    @classmethod
    def Z(cls, n: int = 1) -> "FtLca":
        return cls(z=n)

    @classmethod
    def T(cls, n: int = 1) -> "FtLca":
        return cls(t=n)

    @classmethod
    def R(cls, n: int = 1) -> "FtLca":
        return cls(r=n)

    @classmethod
    def F(cls, *orders: int) -> "FtLca":
        return cls(finite=FgAb.of(*orders))

    def __add__(self, other: "FtLca") -> "FtLca":
        return FtLca(self.z + other.z, self.t + other.t, self.r + other.r,
                     FgAb.of(*(self.finite.factors + other.finite.factors)))

    @property
    def is_trivial(self) -> bool:
        return not (self.z or self.t or self.r or self.finite.ngens)

    @property
    def is_discrete(self) -> bool:
        return self.t == 0 and self.r == 0

    @property
    def is_compact(self) -> bool:
        return self.z == 0 and self.r == 0

    @property
    def counts(self) -> dict[str, int]:
        return {"Z": self.z, "F": self.finite.ngens, "T": self.t, "R": self.r}

    def __str__(self) -> str:
        parts = []
        for name, n in (("Z", self.z), ("T", self.t), ("R", self.r)):
            if n:
                parts.append(name if n == 1 else f"{name}^{n}")
        if self.finite.ngens:
            parts.append(str(self.finite))
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        out: dict = {}
        if self.z:
            out["z"] = self.z
        if self.t:
            out["t"] = self.t
        if self.r:
            out["r"] = self.r
        if self.finite.factors:
            out["finite"] = list(self.finite.factors)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "FtLca":
        if not isinstance(data, dict):
            raise ValueError("LCA group must be a JSON object")
        unknown = set(data) - {"z", "t", "r", "finite"}
        if unknown:
            raise ValueError(f"unknown LCA fields {sorted(unknown)}")
        vals = {k: data.get(k, 0) for k in ("z", "t", "r")}
        fin = data.get("finite", [])
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in vals.values()):
            raise ValueError("ranks must be integers")
        if not isinstance(fin, list) or not all(isinstance(d, int) and d >= 1 for d in fin):
            raise ValueError("finite must be a list of positive integers")
        return cls(vals["z"], vals["t"], vals["r"], FgAb.of(*fin))


def dual(G: FtLca) -> FtLca:
    """Pontrjagin dual: ``Z^a -> T^a``, ``T^b -> Z^b``, ``R -> R``, ``F -> F``."""
    return FtLca(z=G.t, t=G.z, r=G.r, finite=G.finite)


def double_dual_check(G: FtLca) -> bool:
    return dual(dual(G)) == G


def character_pairing(F: FgAb, x: Sequence[int], y: Sequence[int]) -> Fraction:
    """The fixed pairing ``F x F -> Q/Z`` identifying ``F`` with its dual."""
    if not F.is_finite:
        raise ValueError("pairing is defined on finite groups")
    s = sum(Fraction(a * b, n) for a, b, n in zip(F.reduce(x), F.reduce(y), F.factors))
    return s - (s.numerator // s.denominator)


def hom_group(G: FtLca, H: FtLca) -> FtLca:
    """Continuous homomorphisms ``G -> H`` assembled blockwise.

    Blocks: ``Z->X = X``; ``T->T = Z``; ``R->T = R->R = R``; ``F->T = F``;
    ``F->F' = Hom(F, F')``; all remaining blocks vanish.
    """
    a, b, c, F = G.z, G.t, G.r, G.finite
    a2, b2, c2, F2 = H.z, H.t, H.r, H.finite
    z = a * a2 + b * b2
    t = a * b2
    r = a * c2 + c * c2 + c * b2
    fin = list(F2.factors) * a + list(F.factors) * b2 + list(hom(F, F2).factors)
    return FtLca(z=z, t=t, r=r, finite=FgAb.of(*fin))


def two_rank(G: FtLca) -> int:
    """Rank of the 2-torsion ``G[2] = (Z/2)^k``: even finite factors plus the torus rank."""
    return sum(1 for d in G.finite.factors if d % 2 == 0) + G.t


def two_three_condition(G: FtLca) -> bool:
    """Both clauses hold on the finite-type class.

    Every elementary 2-subquotient is a subquotient of ``G[2]`` extended by
    ``Z/2``-pieces of ``Z^a``, hence finite of rank at most ``two_rank(G) + a``.
    Multiplication by 3 is onto on the divisible part ``T^b + R^c``.
    """
    bound = two_rank(G) + G.z
    return bound >= 0 and _cokernel_of_three_on_identity_component(G) == 0


def _cokernel_of_three_on_identity_component(G: FtLca) -> int:
    # T^b x R^c is divisible, so the cokernel of x -> 3x is trivial
    return 0


SITES = ("S", "S_lc", "S_lc-acyc")


@dataclass(frozen=True)
class AdmissibilityVerdict:
    admissible: bool
    site: str
    reasons: tuple[str, ...]

    def holds_on(self, site: str) -> bool:
        """Admissibility on a site implies it on the smaller ones."""
        if site not in SITES:
            raise ValueError(f"unknown site {site!r}")
        return self.admissible and SITES.index(site) >= SITES.index(self.site)

    def to_json(self) -> dict:
        return {"admissible": self.admissible, "site": self.site, "reasons": list(self.reasons)}


def admissible(G: FtLca) -> AdmissibilityVerdict:
    """Verdict with the strongest site derivable from the factor results.

    Finitely generated groups, ``T`` and ``R`` are admissible on the big site and
    admissibility is stable under finite products, so every finite-type group is
    admissible on ``S``.  The structural clause for ``S_lc`` (an open subgroup
    ``C x R^n`` with finitely generated discrete quotient) is recorded as well.
    """
    reasons = []
    if G.z or G.finite.ngens:
        reasons.append("finitely generated discrete factor Z^a + F is admissible")
    if G.t:
        reasons.append("the circle T is admissible")
    if G.r:
        reasons.append("R is admissible as an extension of T by Z")
    if sum(1 for x in (G.z + G.finite.ngens, G.t, G.r) if x) > 1:
        reasons.append("admissibility is closed under finite products")
    reasons.append("admissible on S implies admissible on S_lc and S_lc-acyc")
    reasons.append(
        f"open subgroup T^{G.t} x R^{G.r} with finitely generated quotient Z^{G.z} + F; "
        "two-three condition holds"
    )
    return AdmissibilityVerdict(True, "S", tuple(reasons))


# ---------------------------------------------------------------------------
# morphisms

KINDS = ("Z", "F", "T", "R")
ALLOWED = {
    ("Z", "Z"), ("Z", "F"), ("Z", "T"), ("Z", "R"),
    ("F", "F"), ("F", "T"),
    ("T", "T"),
    ("R", "R"), ("R", "T"),
}


def _frac_mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


class LcaMap:
    """A morphism of finite-type groups as a matrix of typed blocks.

    ``blocks[(X, Y)]`` is a ``count(Y) x count(X)`` matrix: integers for
    ``Z->Z``, ``Z->F``, ``F->F``, ``T->T``; rationals mod 1 for ``Z->T`` and
    ``F->T``; rationals for ``Z->R``, ``R->R``, ``R->T`` (the last read mod 1
    after evaluation).  All other blocks are forced to vanish.
    """

    def __init__(self, source: FtLca, target: FtLca, blocks: dict | None = None):
        self.source = source
        self.target = target
        sc, tc = source.counts, target.counts
        out = {}
        blocks = dict(blocks or {})
        for key in blocks:
            if key not in ALLOWED:
                M = blocks[key]
                if any(any(x for x in row) for row in M):
                    raise ValueError(f"block {key[0]}->{key[1]} must vanish")
        for X, Y in ALLOWED:
            M = blocks.get((X, Y))
            rows, cols = tc[Y], sc[X]
            if M is None:
                M = [[0] * cols for _ in range(rows)]
            if len(M) != rows or any(len(r) != cols for r in M):
                raise ValueError(f"block {X}->{Y} has wrong shape")
            out[(X, Y)] = self._normalize(X, Y, M)
        self.blocks = out

    def _normalize(self, X: str, Y: str, M) -> tuple:
        F = self.target.finite
        rows = []
        for i, row in enumerate(M):
            r = []
            for j, x in enumerate(row):
                if (X, Y) in {("Z", "Z"), ("Z", "F"), ("F", "F"), ("T", "T")}:
                    if Fraction(x).denominator != 1:
                        raise ValueError(f"block {X}->{Y} must be integral")
                    x = int(x)
                    if Y == "F":
                        x %= F.factors[i]
                elif (X, Y) in {("Z", "T"), ("F", "T")}:
                    x = _frac_mod1(Fraction(x))
                else:
                    x = Fraction(x)
                r.append(x)
            rows.append(tuple(r))
        if (X, Y) == ("F", "F"):
            FgAbMap(self.source.finite, F, [list(r) for r in rows])
        if (X, Y) == ("F", "T"):
            for j, n in enumerate(self.source.finite.factors):
                for i in range(len(rows)):
                    if (rows[i][j] * n).denominator != 1:
                        raise ValueError("character values must be killed by the order")
        return tuple(rows)

    def __matmul__(self, other: "LcaMap") -> "LcaMap":
        """Composition ``self o other``."""
        if other.target != self.source:
            raise ValueError("maps are not composable")
        A, B, C = other.source.counts, self.source.counts, self.target.counts
        blocks = {}
        for X in KINDS:
            for Z in KINDS:
                M = [[Fraction(0)] * A[X] for _ in range(C[Z])]
                for Y in KINDS:
                    if (X, Y) not in ALLOWED or (Y, Z) not in ALLOWED:
                        continue
                    f, g = other.blocks[(X, Y)], self.blocks[(Y, Z)]
                    for i in range(C[Z]):
                        for j in range(A[X]):
                            M[i][j] += sum((Fraction(g[i][k]) * f[k][j] for k in range(B[Y])), Fraction(0))
                if (X, Z) in ALLOWED:
                    blocks[(X, Z)] = M
                elif any(any(x for x in row) for row in M):
                    raise AssertionError(f"composition produced a nonzero {X}->{Z} block")
        return LcaMap(other.source, self.target, blocks)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LcaMap):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.blocks == other.blocks

    def __hash__(self) -> int:
        return hash((self.source, self.target, tuple(sorted(self.blocks.items()))))

    @classmethod
    def identity(cls, G: FtLca) -> "LcaMap":
        c = G.counts
        eye = lambda n: [[int(i == j) for j in range(n)] for i in range(n)]
        return cls(G, G, {("Z", "Z"): eye(c["Z"]), ("F", "F"): eye(c["F"]), ("T", "T"): eye(c["T"]), ("R", "R"): eye(c["R"])})

    @classmethod
    def random(cls, source: FtLca, target: FtLca, rng: random.Random) -> "LcaMap":
        sc, tc = source.counts, target.counts
        blocks = {}
        for X, Y in ALLOWED:
            rows, cols = tc[Y], sc[X]
            if (X, Y) == ("F", "F"):
                continue
            if (X, Y) == ("F", "T"):
                M = [[Fraction(rng.randrange(n), n) for n in source.finite.factors] for _ in range(rows)]
            elif (X, Y) in {("Z", "T"), ("Z", "R"), ("R", "R"), ("R", "T")}:
                M = [[Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(cols)] for _ in range(rows)]
            else:
                M = [[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)]
            blocks[(X, Y)] = M
        # a random well-formed F->F block: generator j goes to an element killed by n_j
        S, T = source.finite, target.finite
        cols = []
        for n in S.factors:
            cols.append([rng.randrange(m) * (m // _gcd(m, n)) % m for m in T.factors])
        blocks[("F", "F")] = [[cols[j][i] for j in range(len(cols))] for i in range(T.ngens)]
        return cls(source, target, blocks)


def _gcd(a: int, b: int) -> int:
    from math import gcd
    return gcd(a, b)


def random_ftlca(rng: random.Random, max_rank: int = 3, max_factors: int = 3, max_order: int = 12) -> FtLca:
    orders = [rng.randint(2, max_order) for _ in range(rng.randint(0, max_factors))]
    return FtLca(rng.randint(0, max_rank), rng.randint(0, max_rank), rng.randint(0, max_rank), FgAb.of(*orders))
