"""Picard stacks over a base, represented by classification data ``(H^-1, H^0, phi)``.

Coefficient sheaves are finite-type groups restricted to the base ``B``; the
class ``phi`` lies in ``Ext^2(H^0, H^-1)``, which splits over the factor pairs
of the two groups.  Each factor pair is identified with a cohomology group of
``B`` by the backend:

==========  ==================  ==================
 pair        Ext^2 group         dual pair
==========  ==================  ==================
 (Z, T)      H^3(B; Z)           (Z, T), negated
 (Z, Z)      H^2(B; Z)           (T, T)
 (T, T)      H^2(B; Z)           (Z, Z)
 (Z, Z/m)    H^2(B; Z/m)         (Z/m, T)
 (Z/m, T)    H^2(B; Z/m)         (Z, Z/m)
 (R, T)      0                   (Z, R)
 (Z, R)      0                   (R, T)
==========  ==================  ==================

The duality map on classes is the identity through these identifications
except on ``(Z, T)``, where it is negation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fgab import FgAb, direct_sum, tensor, tor
from .lca import FtLca, admissible, dual
from .simplicial import CohRing, point_ring

__all__ = [
    "ExtBackend",
    "PicClass",
    "UnsupportedDuality",
    "DualizabilityCertificate",
    "dual_pic",
    "is_dualizable",
    "ch_of_sheaf",
    "b_of_sheaf",
    "dual_ch",
    "dual_b",
    "local_model",
    "factor_list",
]


class UnsupportedDuality(ValueError):
    """Duality data the backend cannot model, with the failing clause."""


def factor_list(G: FtLca) -> list[tuple[str, int]]:
    """Cyclic factors in canonical order: ``Z``s, finite, ``T``s, ``R``s."""
    out = [("Z", 0)] * G.z
    out += [("F", d) for d in G.finite.factors]
    out += [("T", 0)] * G.t + [("R", 0)] * G.r
    return out


def _dual_factor(f: tuple[str, int]) -> tuple[str, int]:
    return {"Z": ("T", 0), "T": ("Z", 0)}.get(f[0], f)


@dataclass(frozen=True)
class ExtBackend:
    """Identifications of sheaf ``Ext^2`` groups over ``B`` with cohomology of ``B``."""

    ring: CohRing = field(default_factory=point_ring)

    @property
    def name(self) -> str:
        return self.ring.name or "base"

    def cohomology(self, k: int, coeff: int = 0) -> FgAb:
        """``H^k(B; Z/coeff)``; ``coeff = 0`` means ``Z`` (universal coefficients)."""
        H = self.ring.group(k)
        if coeff == 0:
            return H
        m = FgAb.cyclic(coeff)
        return direct_sum([tensor(H, m), tor(self.ring.group(k + 1), m)])[0]

    def ext2(self, X: tuple[str, int], Y: tuple[str, int]) -> FgAb:
        key = (X[0], Y[0])
        if key == ("Z", "T"):
            return self.ring.group(3)
        if key in {("Z", "Z"), ("T", "T")}:
            return self.ring.group(2)
        if key == ("Z", "F"):
            return self.cohomology(2, Y[1])
        if key == ("F", "T"):
            return self.cohomology(2, X[1])
        if key in {("R", "T"), ("Z", "R"), ("R", "R")}:
            return FgAb.zero()
        raise UnsupportedDuality(f"Ext^2({X[0]}, {Y[0]}) is not modeled by the backend")

    def ext1(self, X: tuple[str, int], Y: tuple[str, int]) -> FgAb:
        """``Ext^1`` over the base; only the pairs needed for the duality formulas."""
        key = (X[0], Y[0])
        if key == ("Z", "T"):
            return self.ring.group(2)
        if key in {("Z", "Z"), ("T", "T")}:
            return self.ring.group(1)
        if key == ("F", "T"):
            return self.cohomology(1, X[1])
        if key == ("Z", "F"):
            return self.cohomology(1, Y[1])
        if key in {("R", "T"), ("Z", "R"), ("R", "R")}:
            return FgAb.zero()
        raise UnsupportedDuality(f"Ext^1({X[0]}, {Y[0]}) is not modeled by the backend")

    def ext2_group(self, H0: FtLca, Hm1: FtLca) -> tuple[FgAb, list[tuple[int, int, FgAb]]]:
        """``Ext^2(H0, Hm1)`` as a sum over factor pairs, with the block layout."""
        blocks = []
        for i, X in enumerate(factor_list(H0)):
            for j, Y in enumerate(factor_list(Hm1)):
                blocks.append((i, j, self.ext2(X, Y)))
        return direct_sum([b[2] for b in blocks])[0], blocks

    def ext1_sheaf_to_T(self, F: FtLca) -> FgAb:
        """Global ``Ext^1(F, T)`` over the base, summed over factors."""
        parts = [self.ext1(X, ("T", 0)) for X in factor_list(F)]
        return direct_sum(parts)[0] if parts else FgAb.zero()


@dataclass(frozen=True)
class PicClass:
    """``phi`` is stored blockwise: ``phi[(i, j)]`` for factor ``i`` of ``H0`` and ``j`` of ``Hminus1``."""

    Hminus1: FtLca
    H0: FtLca
    phi: tuple = ()
    backend: ExtBackend = field(default_factory=ExtBackend)
    forced_nonadmissible: bool = False

    def __post_init__(self):
        _, blocks = self.backend.ext2_group(self.H0, self.Hminus1)
        given = dict(self.phi)
        norm = []
        for i, j, G in blocks:
            v = given.pop((i, j), None)
            v = G.reduce(v) if v is not None else G.zero_element()
            if len(v) != G.ngens:
                raise ValueError(f"class component ({i},{j}) has wrong length")
            norm.append(((i, j), v))
        if given:
            raise ValueError(f"unknown class components {sorted(given)}")
        object.__setattr__(self, "phi", tuple(norm))

    def component(self, i: int, j: int) -> tuple[int, ...]:
        return dict(self.phi)[(i, j)]

    def h3_components(self) -> dict:
        """Components living in ``Ext^2(Z, T) = H^3(B; Z)``."""
        F0, F1 = factor_list(self.H0), factor_list(self.Hminus1)
        return {k: v for k, v in self.phi if F0[k[0]][0] == "Z" and F1[k[1]][0] == "T"}

    def to_json(self) -> dict:
        return {
            "backend": self.backend.name,
            "Hminus1": self.Hminus1.to_json(),
            "H0": self.H0.to_json(),
            "phi": [{"block": list(k), "value": list(v)} for k, v in self.phi if any(v)],
        }

    @classmethod
    def from_json(cls, data: dict, backend: ExtBackend | None = None) -> "PicClass":
        try:
            Hm1, H0 = FtLca.from_json(data["Hminus1"]), FtLca.from_json(data["H0"])
            phi = tuple((tuple(e["block"]), tuple(e["value"])) for e in data.get("phi", []))
        except (KeyError, TypeError) as e:
            raise ValueError(f"malformed Picard class: {e}") from None
        return cls(Hm1, H0, phi, backend or ExtBackend())


@dataclass(frozen=True)
class DualizabilityCertificate:
    dualizable: bool
    reasons: tuple[str, ...]
    double_dual_matches: bool | None = None

    def __bool__(self) -> bool:
        return self.dualizable

    def to_json(self) -> dict:
        return {"dualizable": self.dualizable, "reasons": list(self.reasons), "double_dual_matches": self.double_dual_matches}


def _transport(X: tuple[str, int], Y: tuple[str, int], v: tuple[int, ...], G: FgAb) -> tuple[int, ...]:
    """Duality on the block ``Ext^2(X, Y) -> Ext^2(DY, DX)``."""
    if (X[0], Y[0]) == ("Z", "T"):
        return G.neg(v)
    return v


def dual_pic(P: PicClass) -> PicClass:
    """``(D H0, D H^-1, D phi)``; requires ``H0`` admissible."""
    if P.forced_nonadmissible:
        raise UnsupportedDuality("H0 is flagged non-admissible: the dual acquires Ext^1/Ext^2 correction terms")
    verdict = admissible(P.H0)
    if not verdict.admissible:
        raise UnsupportedDuality("H0 is not admissible")
    F0, F1 = factor_list(P.H0), factor_list(P.Hminus1)
    newHm1, newH0 = dual(P.H0), dual(P.Hminus1)
    D0, D1 = factor_list(newH0), factor_list(newHm1)
    # factor j of Hminus1 becomes factor pos0[j] of the new H0, factor i of H0 becomes pos1[i] of the new Hminus1
    pos0 = _position_map(F1, D0)
    pos1 = _position_map(F0, D1)
    phi = []
    for (i, j), v in P.phi:
        G = P.backend.ext2(F0[i], F1[j])
        phi.append(((pos0[j], pos1[i]), _transport(F0[i], F1[j], v, G)))
    return PicClass(newHm1, newH0, tuple(phi), P.backend)


def _position_map(src: list[tuple[str, int]], dst: list[tuple[str, int]]) -> list[int]:
    """Index in ``dst`` of the dual of each factor of ``src``, matching in order."""
    used: set[int] = set()
    out = []
    for f in src:
        g = _dual_factor(f)
        k = next(k for k, h in enumerate(dst) if h == g and k not in used)
        used.add(k)
        out.append(k)
    return out


def is_dualizable(P: PicClass) -> DualizabilityCertificate:
    """Both cohomology sheaves must be dualizable and ``H0``, ``D(H^-1)`` admissible."""
    reasons = ["H0 and H^-1 are finite-type groups, hence dualizable"]
    if P.forced_nonadmissible:
        return DualizabilityCertificate(False, (*reasons, "H0 is flagged non-admissible"))
    for label, G in (("H0", P.H0), ("D(H^-1)", dual(P.Hminus1))):
        v = admissible(G)
        if not v.admissible:
            return DualizabilityCertificate(False, (*reasons, f"{label} is not admissible"))
        reasons.append(f"{label} is admissible on {v.site}")
    try:
        back = dual_pic(dual_pic(P))
    except UnsupportedDuality as e:
        return DualizabilityCertificate(False, (*reasons, str(e)))
    return DualizabilityCertificate(True, tuple(reasons), back == P)


def ch_of_sheaf(F: FtLca, backend: ExtBackend | None = None) -> PicClass:
    """``ch(F)``: ``F`` in degree 0."""
    return PicClass(FtLca(), F, (), backend or ExtBackend())


def b_of_sheaf(F: FtLca, backend: ExtBackend | None = None) -> PicClass:
    """``B F``: ``F`` in degree -1."""
    return PicClass(F, FtLca(), (), backend or ExtBackend())


def dual_b(F: FtLca, backend: ExtBackend | None = None) -> PicClass:
    """``D(B F) = ch(D F)``."""
    return dual_pic(b_of_sheaf(F, backend))


@dataclass(frozen=True)
class DualOfCh:
    """``D(ch F)`` when ``Ext^1(F, T)`` may be nonzero: ``H^-1 = D F`` and ``H^0 = Ext^1(F, T)``."""

    Hminus1: FtLca
    H0_ext1: FgAb
    clean: bool

    def as_pic(self) -> PicClass:
        if not self.clean:
            raise UnsupportedDuality("Ext^1(F, T) is nonzero; the dual is not B(D F)")
        return PicClass(self.Hminus1, FtLca())


def dual_ch(F: FtLca, backend: ExtBackend | None = None) -> DualOfCh:
    """``D(ch F) = B(D F)`` when ``Ext^1(F, T)`` vanishes; otherwise ``H^0`` picks up that group."""
    backend = backend or ExtBackend()
    e1 = backend.ext1_sheaf_to_T(F)
    return DualOfCh(dual(F), e1, e1.is_trivial)


def local_model(n: int, backend: ExtBackend | None = None) -> PicClass:
    """``B T x T^n x Z``: ``H^-1 = T`` and ``H^0 = Z + T^n`` with trivial class."""
    return PicClass(FtLca(t=1), FtLca(z=1, t=n), (), backend or ExtBackend())
