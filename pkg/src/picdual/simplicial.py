"""Finite simplicial complexes, integral cohomology and cup products.

Cochains live on ordered simplices (vertices increasing).  The cup product is
the Alexander-Whitney front-face/back-face formula, which is graded commutative
only on cohomology; that is where :class:`CohRing` stores it.

>>> T = torus()
>>> R = ring_of(T)
>>> [str(R.group(k)) for k in range(3)]
['Z', 'Z^2', 'Z']
>>> R.cup(1, 1, (1, 0), (0, 1)) == R.group(2).neg(R.cup(1, 1, (0, 1), (1, 0)))
True
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .fgab import FgAb, SubquotientHomology, matvec

__all__ = [
    "SimplicialComplex",
    "CohRing",
    "RingError",
    "boundary_of_simplex",
    "rp2",
    "torus",
    "sphere",
    "cohomology",
    "fundamental_cycle",
    "evaluate",
    "surface_basis",
    "cup_cochains",
    "cup_classes",
    "ring_of",
    "load_ring",
    "cp2_ring",
    "exterior_ring",
    "point_ring",
    "RING_VERSION",
    "COMPLEX_VERSION",
]

RING_VERSION = 1
COMPLEX_VERSION = 1
MAX_DEGREE = 4


class SimplicialComplex:
    """Closure of a list of simplices on vertices ``0 .. n-1``."""

    def __init__(self, n_vertices: int, simplices: Sequence[Sequence[int]]):
        self.n_vertices = n_vertices
        faces: set[tuple[int, ...]] = {(v,) for v in range(n_vertices)}
        for s in simplices:
            s = tuple(sorted(set(s)))
            if not s or s[0] < 0 or s[-1] >= n_vertices:
                raise ValueError(f"bad simplex {s}")
            for k in range(1, len(s) + 1):
                faces.update(itertools.combinations(s, k))
        self.dim = max(len(f) for f in faces) - 1
        self.simplices = [sorted(f for f in faces if len(f) == k + 1) for k in range(self.dim + 1)]
        self.index = [{s: i for i, s in enumerate(level)} for level in self.simplices]

    def count(self, k: int) -> int:
        return len(self.simplices[k]) if 0 <= k <= self.dim else 0

    def coboundary(self, k: int) -> list[list[int]]:
        """Matrix of ``delta: C^k -> C^{k+1}`` with ``(delta f)(s) = sum (-1)^i f(d_i s)``."""
        rows = self.count(k + 1)
        cols = self.count(k)
        M = [[0] * cols for _ in range(rows)]
        if rows == 0 or cols == 0:
            return M
        for r, s in enumerate(self.simplices[k + 1]):
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                M[r][self.index[k][face]] += -1 if i % 2 else 1
        return M

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * self.count(k) for k in range(self.dim + 1))

    def to_json(self) -> dict:
        top = [list(s) for level in self.simplices for s in level]
        return {"version": COMPLEX_VERSION, "vertices": self.n_vertices, "simplices": top}

    @classmethod
    def from_json(cls, data: dict) -> "SimplicialComplex":
        if not isinstance(data, dict) or "vertices" not in data or "simplices" not in data:
            raise ValueError("simplicial complex needs 'vertices' and 'simplices'")
        if data.get("version", COMPLEX_VERSION) != COMPLEX_VERSION:
            raise ValueError(f"unsupported complex version {data.get('version')}")
        return cls(int(data["vertices"]), [list(map(int, s)) for s in data["simplices"]])


def boundary_of_simplex(n: int = 3) -> SimplicialComplex:
    """The boundary of the ``n``-simplex, a triangulated ``S^{n-1}``."""
    return SimplicialComplex(n + 1, list(itertools.combinations(range(n + 1), n)))


def sphere(dim: int = 2) -> SimplicialComplex:
    return boundary_of_simplex(dim + 1)


def rp2() -> SimplicialComplex:
    """Six-vertex real projective plane."""
    faces = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
             (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)]
    return SimplicialComplex(6, faces)


def torus() -> SimplicialComplex:
    """Seven-vertex (Moebius) torus: triangles ``{i, i+1, i+3}`` and ``{i, i+2, i+3}`` mod 7."""
    faces = []
    for i in range(7):
        faces.append((i, (i + 1) % 7, (i + 3) % 7))
        faces.append((i, (i + 2) % 7, (i + 3) % 7))
    return SimplicialComplex(7, faces)


# ---------------------------------------------------------------------------
# cohomology


class _Degree:
    """``H^k`` as a subquotient of ``C^k`` with class maps."""

    def __init__(self, X: SimplicialComplex, k: int):
        n = X.count(k)
        d_in = X.coboundary(k - 1) if k > 0 else [[] for _ in range(n)]
        d_out = X.coboundary(k)
        self.sq = SubquotientHomology(d_in, d_out, n, X.count(k - 1) if k > 0 else 0, X.count(k + 1))
        self.group = self.sq.group


def _degree(X: SimplicialComplex, k: int) -> _Degree:
    cache = X.__dict__.setdefault("_degrees", {})
    if k not in cache:
        cache[k] = _Degree(X, k)
    return cache[k]


def cohomology(X: SimplicialComplex, k: int, coeff: int = 1) -> FgAb:
    """``H^k(X; Z^coeff)``, the ``coeff``-fold sum of integral cohomology."""
    if k < 0:
        raise ValueError("degree must be nonnegative")
    if k > X.dim:
        return FgAb.zero()
    H = _degree(X, k).group
    return FgAb.of(*([*H.factors, *([0] * H.free_rank)] * coeff))


def cup_cochains(X: SimplicialComplex, p: int, q: int, a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Alexander-Whitney: ``(a cup b)(v_0..v_{p+q}) = a(v_0..v_p) b(v_p..v_{p+q})``."""
    if p + q > X.dim:
        return []
    out = []
    for s in X.simplices[p + q]:
        out.append(a[X.index[p][s[:p + 1]]] * b[X.index[q][s[p:]]])
    return out


def cup_classes(X: SimplicialComplex, p: int, q: int, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Class in ``H^{p+q}`` of the cup product of two cocycles."""
    if p + q > X.dim:
        return ()
    return _degree(X, p + q).sq.class_of(cup_cochains(X, p, q, a, b))


def representative(X: SimplicialComplex, k: int, x: Sequence[int]) -> list[int]:
    return _degree(X, k).sq.representative(x)


def coboundary_of(X: SimplicialComplex, k: int, f: Sequence[int]) -> list[int]:
    """``delta f`` for a ``k``-cochain ``f``."""
    if k + 1 > X.dim:
        return []
    return matvec(X.coboundary(k), f)


def fundamental_cycle(X: SimplicialComplex) -> list[int]:
    """Top-dimensional integral cycle of an oriented pseudomanifold, positive on the first face."""
    n = X.dim
    d = X.coboundary(n - 1)  # rows: n-simplices, so a cycle z has z^T d = 0
    m = X.count(n)
    z = [0] * m
    z[0] = 1
    queue = [0]
    # propagate a coherent orientation across shared codimension-one faces
    cols: dict[int, list[int]] = {}
    for r in range(m):
        for c, v in enumerate(d[r]):
            if v:
                cols.setdefault(c, []).append(r)
    while queue:
        r = queue.pop()
        for c, v in enumerate(d[r]):
            if not v:
                continue
            for r2 in cols[c]:
                if r2 != r and z[r2] == 0:
                    z[r2] = -z[r] * v * d[r2][c]
                    queue.append(r2)
    if any(sum(z[r] * d[r][c] for r in range(m)) for c in range(X.count(n - 1))):
        raise ValueError("complex is not an oriented pseudomanifold")
    return z


def evaluate(X: SimplicialComplex, k: int, x: Sequence[int], chain: Sequence[int]) -> int:
    """Kronecker pairing of the class ``x in H^k`` with an integral ``k``-cycle."""
    return sum(a * b for a, b in zip(representative(X, k, x), chain))


def surface_basis(X: SimplicialComplex) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """``(a, b, [X])`` for a closed oriented surface with ``H^1 = Z^2``.

    ``[X]`` is the generator of ``H^2`` that is ``+1`` on the fundamental cycle and
    the order of ``a, b`` is chosen so that ``a cup b = [X]``.
    """
    H1, H2 = cohomology(X, 1), cohomology(X, 2)
    if H1 != FgAb.free(2) or H2 != FgAb.free(1):
        raise ValueError("surface_basis needs H^1 = Z^2 and H^2 = Z")
    z = fundamental_cycle(X)
    sign = evaluate(X, 2, (1,), z)
    if abs(sign) != 1:
        raise ValueError("fundamental cycle does not generate H_2")
    fund = (sign,)
    a, b = (1, 0), (0, 1)
    if cup_classes(X, 1, 1, representative(X, 1, a), representative(X, 1, b)) != fund:
        a, b = b, a
    return a, b, fund


# ---------------------------------------------------------------------------
# cohomology rings


class RingError(ValueError):
    """A ring table that violates an axiom."""


@dataclass
class CohRing:
    """Graded groups ``H^0..H^4`` and cup tables on generators.

    ``tables[(p, q)][i][j]`` is the product of generator ``i`` of ``H^p`` with
    generator ``j`` of ``H^q``; missing tables mean the product is unknown.
    """

    groups: list[FgAb]
    tables: dict = field(default_factory=dict)
    unit: tuple[int, ...] = ()
    name: str = ""

    def __post_init__(self):
        self.groups = list(self.groups) + [FgAb.zero()] * (MAX_DEGREE + 1 - len(self.groups))
        self.unit = tuple(self.unit)

    def group(self, k: int) -> FgAb:
        return self.groups[k] if 0 <= k <= MAX_DEGREE else FgAb.zero()

    def power(self, k: int, n: int) -> FgAb:
        """``H^k(B; Z^n)``."""
        H = self.group(k)
        return FgAb.of(*([*H.factors, *([0] * H.free_rank)] * n))

    def has_table(self, p: int, q: int) -> bool:
        if p + q > MAX_DEGREE:
            return False
        if not self.group(p).ngens or not self.group(q).ngens or not self.group(p + q).ngens:
            return True
        return (p, q) in self.tables

    def cup(self, p: int, q: int, x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
        """Bilinear extension of the generator table."""
        if p + q > MAX_DEGREE:
            return ()
        T = self.group(p + q)
        out = T.zero_element()
        if not T.ngens or not self.group(p).ngens or not self.group(q).ngens:
            return out
        if (p, q) not in self.tables:
            raise RingError(f"missing cup table H^{p} x H^{q}")
        tab = self.tables[(p, q)]
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if yj:
                    out = T.add(out, T.scale(xi * yj, tab[i][j]))
        return out

    def validate(self) -> None:
        """Raise :class:`RingError` unless the table is a graded-commutative unital ring."""
        for (p, q), tab in self.tables.items():
            P, Q, T = self.group(p), self.group(q), self.group(p + q)
            if len(tab) != P.ngens or any(len(row) != Q.ngens for row in tab):
                raise RingError(f"cup table H^{p} x H^{q} has wrong shape")
            for i, row in enumerate(tab):
                for j, v in enumerate(row):
                    if len(v) != T.ngens:
                        raise RingError(f"entry ({i},{j}) of H^{p} x H^{q} has wrong length")
                    # torsion generators must multiply into elements killed by their order
                    for m in (P.orders[i], Q.orders[j]):
                        if m and not T.is_zero(T.scale(m, v)):
                            raise RingError(f"H^{p} x H^{q} entry ({i},{j}) ignores torsion relations")
        for p in range(MAX_DEGREE + 1):
            for q in range(MAX_DEGREE + 1 - p):
                if not self.has_table(p, q):
                    continue
                for i in range(self.group(p).ngens):
                    for j in range(self.group(q).ngens):
                        a, b = self.group(p).gen(i), self.group(q).gen(j)
                        ab = self.cup(p, q, a, b)
                        ba = self.cup(q, p, b, a) if self.has_table(q, p) else None
                        if ba is not None:
                            T = self.group(p + q)
                            expect = ba if (p * q) % 2 == 0 else T.neg(ba)
                            if ab != expect:
                                raise RingError(f"graded commutativity fails for H^{p} x H^{q} generators ({i},{j})")
        H0 = self.group(0)
        if H0.ngens:
            if len(self.unit) != H0.ngens:
                raise RingError("unit has wrong length")
            for k in range(MAX_DEGREE + 1):
                if not self.has_table(0, k):
                    continue
                for j in range(self.group(k).ngens):
                    g = self.group(k).gen(j)
                    if self.cup(0, k, self.unit, g) != g:
                        raise RingError(f"unit does not act as identity on H^{k}")
        for p, q, r in itertools.product(range(MAX_DEGREE + 1), repeat=3):
            if p + q + r > MAX_DEGREE:
                continue
            if not (self.has_table(p, q) and self.has_table(p + q, r) and self.has_table(q, r) and self.has_table(p, q + r)):
                continue
            for i, j, k in itertools.product(range(self.group(p).ngens), range(self.group(q).ngens), range(self.group(r).ngens)):
                a, b, c = self.group(p).gen(i), self.group(q).gen(j), self.group(r).gen(k)
                if self.cup(p + q, r, self.cup(p, q, a, b), c) != self.cup(p, q + r, a, self.cup(q, r, b, c)):
                    raise RingError(f"associativity fails in degrees ({p},{q},{r})")

    def to_json(self) -> dict:
        return {
            "version": RING_VERSION,
            "name": self.name,
            "groups": [g.to_json() for g in self.groups],
            "cup": {f"{p},{q}": [[list(v) for v in row] for row in tab] for (p, q), tab in sorted(self.tables.items())},
            "unit": list(self.unit),
        }

    @classmethod
    def from_json(cls, data: dict) -> "CohRing":
        if not isinstance(data, dict):
            raise RingError("ring must be a JSON object")
        if data.get("version") != RING_VERSION:
            raise RingError(f"unsupported ring version {data.get('version')!r}")
        try:
            groups = [FgAb.from_json(g) for g in data["groups"]]
            tables = {}
            for key, tab in data.get("cup", {}).items():
                p, q = (int(x) for x in key.split(","))
                tables[(p, q)] = [[tuple(int(x) for x in v) for v in row] for row in tab]
            unit = tuple(int(x) for x in data.get("unit", []))
        except (KeyError, TypeError, AttributeError) as e:
            raise RingError(f"malformed ring: {e}") from None
        except ValueError as e:
            raise RingError(f"malformed ring: {e}") from None
        if len(groups) > MAX_DEGREE + 1:
            raise RingError("at most degrees 0..4 are supported")
        R = cls(groups, tables, unit, str(data.get("name", "")))
        R.tables = {k: [[R.group(k[0] + k[1]).reduce(v) for v in row] for row in tab] for k, tab in tables.items()}
        R.validate()
        return R


def ring_of(X: SimplicialComplex, name: str = "") -> CohRing:
    """Cohomology ring in degrees ``0..4`` with Alexander-Whitney tables."""
    top = min(X.dim, MAX_DEGREE)
    groups = [_degree(X, k).group for k in range(top + 1)]
    reps = {k: _degree(X, k).sq.generator_representatives() for k in range(top + 1)}
    tables = {}
    for p in range(top + 1):
        for q in range(top + 1 - p):
            if not groups[p].ngens or not groups[q].ngens or not groups[p + q].ngens:
                continue
            tables[(p, q)] = [[cup_classes(X, p, q, a, b) for b in reps[q]] for a in reps[p]]
    unit = _degree(X, 0).sq.class_of([1] * X.n_vertices)
    R = CohRing(groups, tables, unit, name)
    R.validate()
    return R


def load_ring(path: str | Path) -> CohRing:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise RingError(f"{path}: invalid JSON: {e}") from None
    return CohRing.from_json(data)


# ---------------------------------------------------------------------------
# formal rings


def point_ring() -> CohRing:
    return CohRing([FgAb.free(1)], {(0, 0): [[(1,)]]}, (1,), "point")


def cp2_ring() -> CohRing:
    """``Z[x]/x^3`` with ``|x| = 2``."""
    Z = FgAb.free(1)
    tables = {(0, 0): [[(1,)]], (0, 2): [[(1,)]], (2, 0): [[(1,)]], (0, 4): [[(1,)]], (4, 0): [[(1,)]], (2, 2): [[(1,)]]}
    R = CohRing([Z, FgAb.zero(), Z, FgAb.zero(), Z], tables, (1,), "CP2")
    R.validate()
    return R


def exterior_ring(k: int, name: str = "") -> CohRing:
    """Cohomology of the ``k``-torus: exterior algebra on ``k`` degree-one classes.

    Degree ``p`` has basis the increasing ``p``-subsets of ``0..k-1``.
    """
    bases = [list(itertools.combinations(range(k), p)) for p in range(MAX_DEGREE + 1)]
    groups = [FgAb.free(len(b)) for b in bases]
    tables = {}
    for p in range(MAX_DEGREE + 1):
        for q in range(MAX_DEGREE + 1 - p):
            if not bases[p] or not bases[q] or not bases[p + q]:
                continue
            index = {s: i for i, s in enumerate(bases[p + q])}
            tab = []
            for s in bases[p]:
                row = []
                for t in bases[q]:
                    v = [0] * len(bases[p + q])
                    if not set(s) & set(t):
                        merged = s + t
                        inversions = sum(1 for a in range(len(merged)) for b in range(a + 1, len(merged)) if merged[a] > merged[b])
                        v[index[tuple(sorted(merged))]] = -1 if inversions % 2 else 1
                    row.append(tuple(v))
                tab.append(row)
            tables[(p, q)] = tab
    R = CohRing(groups, tables, (1,), name or f"T{k}")
    R.validate()
    return R


def perturb(X: SimplicialComplex, k: int, f: Sequence[int], rng: random.Random, bound: int = 3) -> list[int]:
    """``f + delta g`` for a random ``(k-1)``-cochain ``g``."""
    if k == 0:
        return list(f)
    g = [rng.randint(-bound, bound) for _ in range(X.count(k - 1))]
    dg = coboundary_of(X, k - 1, g)
    return [a + b for a, b in zip(f, dg)]
