"""Exact arithmetic on finitely generated abelian groups.

Groups are stored in invariant-factor normal form ``Z^r + Z/d_1 + ... + Z/d_k``
with ``d_1 | d_2 | ... | d_k`` and every ``d_i >= 2``.  Generators are ordered
torsion first, free last.  A homomorphism is an integer matrix whose column
``j`` is the image of source generator ``j``.

>>> coker = cokernel(FgAbMap(FgAb(2), FgAb(2), [[2, 4], [6, 8]]))
>>> coker
FgAb(free_rank=0, factors=(2, 4))
>>> str(ext1(FgAb.cyclic(6), FgAb.cyclic(4)))
'Z/2'
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, reduce
from math import gcd
from typing import Iterator, Sequence

__all__ = [
    "Matrix",
    "zeros",
    "identity",
    "matmul",
    "matvec",
    "transpose",
    "hstack",
    "vstack",
    "block_diag",
    "smith_normal_form",
    "hermite_normal_form",
    "Lattice",
    "integer_kernel",
    "solve_integer",
    "FgAb",
    "FgAbMap",
    "Presentation",
    "present",
    "direct_sum",
    "Subgroup",
    "kernel",
    "image",
    "cokernel",
    "Quotient",
    "cokernel_map",
    "preimage",
    "is_exact",
    "hom",
    "ext1",
    "tensor",
    "tor",
    "lambda2",
    "lambda3",
    "SubquotientHomology",
]

Matrix = list  # list of rows, each a list of ints


# ---------------------------------------------------------------------------
# dense integer matrices


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def shape(A: Matrix, ncols: int | None = None) -> tuple[int, int]:
    if not A:
        return 0, (ncols or 0)
    return len(A), len(A[0])


def matmul(A: Matrix, B: Matrix, inner: int | None = None, ncols: int | None = None) -> Matrix:
    """Product of integer matrices.  ``inner``/``ncols`` disambiguate empty shapes."""
    m = len(A)
    k = len(A[0]) if A else (inner if inner is not None else len(B))
    n = len(B[0]) if B else (ncols or 0)
    if B and len(B) != k:
        raise ValueError(f"shape mismatch {m}x{k} @ {len(B)}x{n}")
    out = []
    for row in A:
        acc = [0] * n
        for t, a in enumerate(row):
            if a:
                brow = B[t]
                for j in range(n):
                    b = brow[j]
                    if b:
                        acc[j] += a * b
        out.append(acc)
    return out


def matvec(A: Matrix, v: Sequence[int]) -> list[int]:
    return [sum(a * x for a, x in zip(row, v) if a and x) for row in A]


def transpose(A: Matrix, nrows: int = 0) -> Matrix:
    if not A:
        return []
    return [list(col) for col in zip(*A)]


def hstack(*blocks: Matrix, nrows: int | None = None) -> Matrix:
    rows = nrows if nrows is not None else max((len(b) for b in blocks), default=0)
    out = [[] for _ in range(rows)]
    for b in blocks:
        if not b:
            continue
        if len(b) != rows:
            raise ValueError("hstack: row counts differ")
        for i in range(rows):
            out[i].extend(b[i])
    return out


def vstack(*blocks: Matrix) -> Matrix:
    out: Matrix = []
    for b in blocks:
        out.extend(list(r) for r in b)
    return out


def block_diag(blocks: Sequence[tuple[Matrix, int, int]]) -> Matrix:
    """Block diagonal matrix from ``(block, rows, cols)`` triples (shapes needed for empty blocks)."""
    total_r = sum(r for _, r, _ in blocks)
    total_c = sum(c for _, _, c in blocks)
    out = zeros(total_r, total_c)
    r0 = c0 = 0
    for b, r, c in blocks:
        for i in range(r):
            for j in range(c):
                out[r0 + i][c0 + j] = b[i][j]
        r0 += r
        c0 += c
    return out


def columns(A: Matrix, nrows: int) -> list[list[int]]:
    if not A:
        return []
    return [list(col) for col in zip(*A)]


def from_columns(cols: Sequence[Sequence[int]], nrows: int) -> Matrix:
    if not cols:
        return [[] for _ in range(nrows)]
    return [[c[i] for c in cols] for i in range(nrows)]


# ---------------------------------------------------------------------------
# Smith and Hermite normal forms


@dataclass
class SmithForm:
    """``U @ M @ V == D`` with ``Uinv = U^-1`` and ``Vinv = V^-1`` tracked alongside."""

    U: Matrix
    D: Matrix
    V: Matrix
    Uinv: Matrix
    Vinv: Matrix
    rank: int

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(self.rank)]


def _nearest_quotient(b: int, p: int) -> int:
    q = b // p
    return q + 1 if abs(b - (q + 1) * p) < abs(b - q * p) else q


def _snf(M: Matrix, m: int, n: int, track: bool = True) -> SmithForm:
    A = [list(r) for r in M]
    U = identity(m) if track else None
    Ui = identity(m) if track else None
    V = identity(n) if track else None
    Vi = identity(n) if track else None

    def add_row(src: int, dst: int, q: int) -> None:
        # row_dst -= q * row_src
        A[dst] = [b - q * a for a, b in zip(A[src], A[dst])]
        if track:
            U[dst] = [b - q * a for a, b in zip(U[src], U[dst])]
            for row in Ui:
                row[src] += q * row[dst]

    def add_col(src: int, dst: int, q: int) -> None:
        # col_dst -= q * col_src
        for row in A:
            row[dst] -= q * row[src]
        if track:
            for row in V:
                row[dst] -= q * row[src]
            Vi[src] = [a + q * b for a, b in zip(Vi[src], Vi[dst])]

    def swap_rows(i: int, j: int) -> None:
        if i == j:
            return
        A[i], A[j] = A[j], A[i]
        if track:
            U[i], U[j] = U[j], U[i]
            for row in Ui:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i: int, j: int) -> None:
        if i == j:
            return
        for row in A:
            row[i], row[j] = row[j], row[i]
        if track:
            for row in V:
                row[i], row[j] = row[j], row[i]
            Vi[i], Vi[j] = Vi[j], Vi[i]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                a = row[j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(t, i, _nearest_quotient(A[i][t], p))
                    clean = clean and not A[i][t]
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(t, j, _nearest_quotient(A[t][j], p))
                    clean = clean and not A[t][j]
            if not clean:
                # a smaller remainder appeared: make it the pivot and repeat
                best = (abs(A[t][t]), t, t)
                for i in range(t + 1, m):
                    if A[i][t] and abs(A[i][t]) < best[0]:
                        best = (abs(A[i][t]), i, t)
                for j in range(t + 1, n):
                    if A[t][j] and abs(A[t][j]) < best[0]:
                        best = (abs(A[t][j]), t, j)
                swap_rows(t, best[1])
                swap_cols(t, best[2])
                continue
            bad = None
            for i in range(t + 1, m):
                if any(x % p for x in A[i][t + 1:]):
                    bad = i
                    break
            if bad is None:
                break
            add_row(bad, t, -1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            if track:
                U[t] = [-a for a in U[t]]
                for row in Ui:
                    row[t] = -row[t]
        t += 1
    return SmithForm(U or [], A, V or [], Ui or [], Vi or [], t)


def smith_normal_form(M: Matrix, ncols: int | None = None) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``U M V = D``; ``D`` diagonal with ``d_1 | d_2 | ...``.

    >>> smith_normal_form([[2, 4], [6, 8]])[1]
    [[2, 0], [0, 4]]
    """
    m, n = shape(M, ncols)
    sf = _snf(M, m, n)
    return sf.U, sf.D, sf.V


def smith_form(M: Matrix, m: int, n: int) -> SmithForm:
    return _snf(M, m, n)


def elementary_divisors(M: Matrix, m: int, n: int) -> list[int]:
    return _snf(M, m, n, track=False).diagonal


def hermite_normal_form(gens: Sequence[Sequence[int]], dim: int) -> list[tuple[int, list[int]]]:
    """Canonical echelon basis of the lattice spanned by ``gens`` in ``Z^dim``.

    Returns ``[(pivot_row, column), ...]`` with strictly increasing pivot rows,
    positive pivots, zeros above each pivot, and entries of earlier basis
    vectors in later pivot rows reduced into ``[0, pivot)``.
    """
    cols = [list(v) for v in gens if any(v)]
    basis: list[tuple[int, list[int]]] = []
    for r in range(dim):
        live = [c for c in cols if c[r]]
        rest = [c for c in cols if not c[r]]
        if not live:
            cols = rest
            continue
        while len(live) > 1:
            live.sort(key=lambda c: abs(c[r]))
            p = live[0]
            nxt = [p]
            for c in live[1:]:
                q = c[r] // p[r]
                c2 = [a - q * b for a, b in zip(c, p)]
                if c2[r]:
                    nxt.append(c2)
                elif any(c2):
                    rest.append(c2)
            live = nxt
        p = live[0]
        if p[r] < 0:
            p = [-a for a in p]
        basis.append((r, p))
        cols = rest
    for k in range(len(basis)):
        r, p = basis[k]
        for idx in range(k):
            rr, b = basis[idx]
            q = b[r] // p[r]
            if q:
                basis[idx] = (rr, [x - q * y for x, y in zip(b, p)])
    return basis


def hnf_contains(basis: list[tuple[int, list[int]]], v: Sequence[int]) -> bool:
    w = list(v)
    for r, p in basis:
        if w[r] % p[r]:
            return False
        q = w[r] // p[r]
        if q:
            w = [x - q * y for x, y in zip(w, p)]
    return not any(w)


def integer_kernel(A: Matrix, m: int, n: int) -> list[list[int]]:
    """Basis of ``{x in Z^n : A x = 0}`` (saturated, as columns)."""
    sf = _snf(A, m, n)
    V = sf.V
    return [[V[i][j] for i in range(n)] for j in range(sf.rank, n)]


def solve_integer(A: Matrix, m: int, n: int, b: Sequence[int], sf: SmithForm | None = None) -> list[int] | None:
    """An integer solution of ``A x = b`` or ``None``."""
    sf = sf or _snf(A, m, n)
    y = matvec(sf.U, b) if m else []
    x = [0] * n
    for i in range(m):
        if i < sf.rank:
            d = sf.D[i][i]
            if y[i] % d:
                return None
            x[i] = y[i] // d
        elif y[i]:
            return None
    return matvec(sf.V, x) if n else []


class Lattice:
    """A sublattice of ``Z^dim`` with a basis and exact coordinates."""

    def __init__(self, gens: Sequence[Sequence[int]], dim: int):
        self.dim = dim
        gens = [list(g) for g in gens]
        sf = _snf(from_columns(gens, dim), dim, len(gens))
        self._sf = sf
        self.basis = [[sf.D[i][i] * sf.Uinv[r][i] for r in range(dim)] for i in range(sf.rank)]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coords(self, v: Sequence[int]) -> list[int] | None:
        sf = self._sf
        y = matvec(sf.U, v)
        out = []
        for i in range(self.dim):
            if i < sf.rank:
                d = sf.D[i][i]
                if y[i] % d:
                    return None
                out.append(y[i] // d)
            elif y[i]:
                return None
        return out

    def contains(self, v: Sequence[int]) -> bool:
        return self.coords(v) is not None

    @cached_property
    def hnf(self) -> list[tuple[int, list[int]]]:
        return hermite_normal_form(self.basis, self.dim)

    def same_as(self, other: "Lattice") -> bool:
        a = [(r, p) for r, p in self.hnf]
        b = [(r, p) for r, p in other.hnf]
        return a == b


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class FgAb:
    """``Z^free_rank + Z/factors[0] + ...`` in invariant-factor form."""

    free_rank: int = 0
    factors: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(d) for d in self.factors))
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for d in self.factors:
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2")
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a:
                raise ValueError(f"divisibility chain broken: {a} does not divide {b}")

    # constructors
    @classmethod
    def of(cls, *orders: int) -> "FgAb":
        """Normalize a direct sum of cyclic groups; order 0 means ``Z``."""
        free = sum(1 for d in orders if d == 0)
        tors = [abs(d) for d in orders if d not in (0, 1, -1)]
        n = len(tors)
        if n == 0:
            return cls(free, ())
        divs = elementary_divisors([[tors[i] if i == j else 0 for j in range(n)] for i in range(n)], n, n)
        return cls(free, tuple(d for d in divs if d != 1))

    @classmethod
    def cyclic(cls, n: int) -> "FgAb":
        return cls.of(n)

    @classmethod
    def free(cls, r: int) -> "FgAb":
        return cls(r)

    @classmethod
    def zero(cls) -> "FgAb":
        return cls(0)

    # basic data
    @property
    def torsion_count(self) -> int:
        return len(self.factors)

    @property
    def ngens(self) -> int:
        return len(self.factors) + self.free_rank

    @property
    def orders(self) -> tuple[int, ...]:
        """Order of each generator, ``0`` for free generators."""
        return self.factors + (0,) * self.free_rank

    @property
    def is_trivial(self) -> bool:
        return self.ngens == 0

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_free(self) -> bool:
        return not self.factors

    def order(self) -> int:
        if self.free_rank:
            raise ValueError("infinite group")
        return reduce(lambda a, b: a * b, self.factors, 1)

    def exponent(self) -> int:
        if self.free_rank:
            return 0
        return self.factors[-1] if self.factors else 1

    def torsion_subgroup(self) -> "FgAb":
        return FgAb(0, self.factors)

    def relation_matrix(self) -> Matrix:
        n = self.ngens
        return [[self.factors[i] if (i == j) else 0 for j in range(len(self.factors))] for i in range(n)]

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.ngens:
            raise ValueError(f"element of length {len(v)} for group with {self.ngens} generators")
        k = len(self.factors)
        return tuple((x % self.factors[i]) if i < k else x for i, x in enumerate(v))

    def zero_element(self) -> tuple[int, ...]:
        return (0,) * self.ngens

    def gen(self, i: int) -> tuple[int, ...]:
        return tuple(1 if j == i else 0 for j in range(self.ngens))

    def add(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return self.reduce([x + y for x, y in zip(a, b)])

    def neg(self, a: Sequence[int]) -> tuple[int, ...]:
        return self.reduce([-x for x in a])

    def scale(self, m: int, a: Sequence[int]) -> tuple[int, ...]:
        return self.reduce([m * x for x in a])

    def is_zero(self, a: Sequence[int]) -> bool:
        return not any(self.reduce(a))

    def element_order(self, a: Sequence[int]) -> int:
        a = self.reduce(a)
        if any(a[len(self.factors):]):
            return 0
        o = 1
        for x, d in zip(a, self.factors):
            if x:
                o = o * (d // gcd(x, d)) // gcd(o, d // gcd(x, d))
        return o

    def elements(self) -> Iterator[tuple[int, ...]]:
        if self.free_rank:
            raise ValueError("cannot enumerate an infinite group")
        return itertools.product(*(range(d) for d in self.factors))

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        for d in self.factors:
            parts.append(f"Z/{d}")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "factors": list(self.factors)}

    @classmethod
    def from_json(cls, data: dict) -> "FgAb":
        if not isinstance(data, dict):
            raise ValueError("group must be a JSON object")
        unknown = set(data) - {"free_rank", "factors"}
        if unknown:
            raise ValueError(f"unknown group fields {sorted(unknown)}")
        fr = data.get("free_rank", 0)
        fac = data.get("factors", [])
        if not isinstance(fr, int) or not isinstance(fac, list) or not all(isinstance(d, int) for d in fac):
            raise ValueError("group fields must be integers")
        return cls(fr, tuple(fac))


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True)
class FgAbMap:
    source: FgAb
    target: FgAb
    matrix: tuple

    def __init__(self, source: FgAb, target: FgAb, matrix: Matrix | Sequence[Sequence[int]] | None = None, check: bool = True):
        m, n = target.ngens, source.ngens
        if matrix is None:
            matrix = zeros(m, n)
        rows = [list(r) for r in matrix]
        if len(rows) != m or any(len(r) != n for r in rows):
            raise ValueError(f"matrix shape does not match {m}x{n}")
        k = target.torsion_count
        for i in range(k):
            d = target.factors[i]
            rows[i] = [x % d for x in rows[i]]
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "matrix", tuple(tuple(r) for r in rows))
        if check:
            for j, dj in enumerate(source.factors):
                col = [rows[i][j] * dj for i in range(m)]
                if any(target.reduce(col)):
                    raise ValueError(f"map does not respect relation of order {dj} on generator {j}")

    @property
    def rows(self) -> Matrix:
        return [list(r) for r in self.matrix]

    def __call__(self, v: Sequence[int]) -> tuple[int, ...]:
        return self.target.reduce(matvec(self.matrix, v) if self.target.ngens else [])

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.matrix)

    @classmethod
    def identity(cls, G: FgAb) -> "FgAbMap":
        return cls(G, G, identity(G.ngens), check=False)

    @classmethod
    def zero(cls, S: FgAb, T: FgAb) -> "FgAbMap":
        return cls(S, T, zeros(T.ngens, S.ngens), check=False)

    @classmethod
    def from_images(cls, S: FgAb, T: FgAb, images: Sequence[Sequence[int]]) -> "FgAbMap":
        return cls(S, T, from_columns(list(images), T.ngens))

    def __matmul__(self, other: "FgAbMap") -> "FgAbMap":
        if other.target != self.source:
            raise ValueError("maps are not composable")
        prod = matmul(self.rows, other.rows, inner=self.source.ngens, ncols=other.source.ngens)
        return FgAbMap(other.source, self.target, prod, check=False)

    def _same(self, other: "FgAbMap") -> None:
        if self.source != other.source or self.target != other.target:
            raise ValueError("maps have different source or target")

    def __add__(self, other: "FgAbMap") -> "FgAbMap":
        self._same(other)
        return FgAbMap(self.source, self.target, [[a + b for a, b in zip(r, s)] for r, s in zip(self.matrix, other.matrix)], check=False)

    def __neg__(self) -> "FgAbMap":
        return FgAbMap(self.source, self.target, [[-a for a in r] for r in self.matrix], check=False)

    def __sub__(self, other: "FgAbMap") -> "FgAbMap":
        return self + (-other)

    def scaled(self, m: int) -> "FgAbMap":
        return FgAbMap(self.source, self.target, [[m * a for a in r] for r in self.matrix], check=False)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.matrix)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FgAbMap):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.matrix))

    # lattice data
    def _stacked(self) -> tuple[Matrix, int, int]:
        """``[M | R_T]``: its integer kernel describes preimages of target relations."""
        T = self.target
        rel = T.relation_matrix()
        A = hstack(self.rows, rel, nrows=T.ngens)
        return A, T.ngens, self.source.ngens + T.torsion_count

    @cached_property
    def _stacked_snf(self) -> SmithForm:
        A, m, n = self._stacked()
        return _snf(A, m, n)

    @cached_property
    def kernel_lattice(self) -> Lattice:
        """Sublattice of ``Z^{ngens(source)}`` mapping into the target relations."""
        A, m, n = self._stacked()
        ns = self.source.ngens
        if m == 0:
            return Lattice(identity(ns), ns)
        sf = self._stacked_snf
        gens = [[sf.V[i][j] for i in range(ns)] for j in range(sf.rank, n)]
        return Lattice(gens, ns)

    def image_lattice(self) -> Lattice:
        """Image plus target relations as a sublattice of ``Z^{ngens(target)}``."""
        A, m, n = self._stacked()
        return Lattice(columns(A, m), m)

    def preimage(self, t: Sequence[int]) -> tuple[int, ...] | None:
        A, m, n = self._stacked()
        if m == 0:
            return (0,) * self.source.ngens
        x = solve_integer(A, m, n, list(t), self._stacked_snf)
        if x is None:
            return None
        return self.source.reduce(x[: self.source.ngens])

    def is_injective(self) -> bool:
        return kernel(self).group.is_trivial

    def is_surjective(self) -> bool:
        return cokernel(self).is_trivial

    def is_iso(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def inverse(self) -> "FgAbMap":
        if not self.is_iso():
            raise ValueError("map is not an isomorphism")
        cols = [self.preimage(self.target.gen(i)) for i in range(self.target.ngens)]
        return FgAbMap.from_images(self.target, self.source, cols)

    def to_json(self) -> dict:
        return {"source": self.source.to_json(), "target": self.target.to_json(), "matrix": [list(r) for r in self.matrix]}


# ---------------------------------------------------------------------------
# presentations


@dataclass
class Presentation:
    """``Z^n / span(relations)`` normalized: ``to_group`` and ``section`` are mutually inverse up to relations."""

    group: FgAb
    n: int
    P: Matrix  # ngens(group) x n
    Q: Matrix  # n x ngens(group)

    def to_group(self, v: Sequence[int]) -> tuple[int, ...]:
        return self.group.reduce(matvec(self.P, v)) if self.group.ngens else ()

    def section(self, g: Sequence[int]) -> list[int]:
        return matvec(self.Q, g) if self.n else []


def present(n: int, relations: Sequence[Sequence[int]]) -> Presentation:
    """Normalize ``Z^n`` modulo the span of the given relation vectors."""
    rels = [list(r) for r in relations if any(r)]
    R = from_columns(rels, n)
    sf = _snf(R, n, len(rels))
    diag = [sf.D[i][i] if i < sf.rank else 0 for i in range(n)]
    keep = [i for i in range(n) if diag[i] != 1]
    tors = [i for i in keep if diag[i] != 0]
    free = [i for i in keep if diag[i] == 0]
    group = FgAb(len(free), tuple(diag[i] for i in tors))
    order = tors + free
    P = [list(sf.U[i]) for i in order]
    Q = [[sf.Uinv[r][i] for i in order] for r in range(n)]
    return Presentation(group, n, P, Q)


def direct_sum(groups: Sequence[FgAb]) -> tuple[FgAb, list[FgAbMap], list[FgAbMap]]:
    """Normalized direct sum with injections and projections."""
    n = sum(G.ngens for G in groups)
    rels = []
    offset = 0
    for G in groups:
        for j, d in enumerate(G.factors):
            v = [0] * n
            v[offset + j] = d
            rels.append(v)
        offset += G.ngens
    pres = present(n, rels)
    S = pres.group
    inj, proj = [], []
    offset = 0
    for G in groups:
        cols = [pres.to_group([1 if k == offset + j else 0 for k in range(n)]) for j in range(G.ngens)]
        inj.append(FgAbMap.from_images(G, S, cols) if G.ngens else FgAbMap.zero(G, S))
        pcols = [pres.section(S.gen(i))[offset: offset + G.ngens] for i in range(S.ngens)]
        proj.append(FgAbMap.from_images(S, G, pcols) if S.ngens else FgAbMap.zero(S, G))
        offset += G.ngens
    return S, inj, proj


@dataclass
class Subgroup:
    """A subgroup given by its abstract group and an injective inclusion."""

    group: FgAb
    inclusion: FgAbMap

    def contains(self, v: Sequence[int]) -> bool:
        return self.inclusion.preimage(v) is not None

    def coords(self, v: Sequence[int]) -> tuple[int, ...] | None:
        return self.inclusion.preimage(v)


def _subgroup_from_lattice(L: Lattice, S: FgAb) -> Subgroup:
    """Subgroup of ``S`` generated by the image of the lattice ``L`` in ``Z^{ngens S}``, assuming ``L`` contains the relations."""
    rels = []
    for j, d in enumerate(S.factors):
        v = [0] * S.ngens
        v[j] = d
        c = L.coords(v)
        if c is None:
            raise AssertionError("lattice does not contain source relations")
        rels.append(c)
    pres = present(L.rank, rels)
    basis_cols = L.basis
    imgs = []
    for i in range(pres.group.ngens):
        y = pres.section(pres.group.gen(i))
        imgs.append([sum(basis_cols[k][r] * y[k] for k in range(L.rank)) for r in range(S.ngens)])
    return Subgroup(pres.group, FgAbMap.from_images(pres.group, S, imgs) if pres.group.ngens else FgAbMap.zero(pres.group, S))


def kernel(f: FgAbMap) -> Subgroup:
    S = f.source
    return _subgroup_from_lattice(f.kernel_lattice, S)


def image(f: FgAbMap) -> Subgroup:
    """Image of ``f`` as ``source / ker``, included into the target."""
    S = f.source
    L = f.kernel_lattice
    pres = present(S.ngens, L.basis)
    imgs = [f(pres.section(pres.group.gen(i))) for i in range(pres.group.ngens)]
    G = pres.group
    return Subgroup(G, FgAbMap.from_images(G, f.target, imgs) if G.ngens else FgAbMap.zero(G, f.target))


@dataclass
class Quotient:
    group: FgAb
    projection: FgAbMap

    def lift(self, g: Sequence[int]) -> tuple[int, ...]:
        x = self.projection.preimage(g)
        assert x is not None
        return x


def cokernel_map(f: FgAbMap) -> Quotient:
    T = f.target
    A, m, n = f._stacked()
    pres = present(m, columns(A, m))
    C = pres.group
    proj = FgAbMap(T, C, pres.P if C.ngens else zeros(0, T.ngens), check=True)
    return Quotient(C, proj)


def cokernel(f: FgAbMap) -> FgAb:
    return cokernel_map(f).group


def quotient_by(S: FgAb, gens: Sequence[Sequence[int]]) -> Quotient:
    """``S / <gens>`` with its projection."""
    G = FgAb.free(len(gens))
    inc = FgAbMap.from_images(G, S, gens) if gens else FgAbMap.zero(G, S)
    return cokernel_map(inc)


def preimage(f: FgAbMap, t: Sequence[int]) -> tuple[int, ...] | None:
    return f.preimage(t)


def is_exact(seq: Sequence[FgAbMap]) -> bool:
    """True iff image equals kernel at every interior node of the sequence."""
    for f, g in zip(seq, seq[1:]):
        if f.target != g.source:
            raise ValueError("sequence is not composable")
    for f, g in zip(seq, seq[1:]):
        im = f.image_lattice()
        ker = g.kernel_lattice
        # ker lattice contains the relations of the middle group; so does im
        if not im.same_as(ker):
            return False
    return True


# ---------------------------------------------------------------------------
# functors on cyclic decompositions


def _cyc(G: FgAb) -> list[int]:
    return list(G.orders)


def _g(a: int, b: int) -> int:
    return gcd(a, b)


def hom(A: FgAb, B: FgAb) -> FgAb:
    out = []
    for a in _cyc(A):
        for b in _cyc(B):
            if a == 0:
                out.append(b)
            elif b == 0:
                continue
            else:
                out.append(_g(a, b))
    return FgAb.of(*out)


def ext1(A: FgAb, B: FgAb) -> FgAb:
    out = []
    for a in _cyc(A):
        if a == 0:
            continue
        for b in _cyc(B):
            out.append(a if b == 0 else _g(a, b))
    return FgAb.of(*out)


def tensor(A: FgAb, B: FgAb) -> FgAb:
    return FgAb.of(*[_g(a, b) for a in _cyc(A) for b in _cyc(B)])


def tor(A: FgAb, B: FgAb) -> FgAb:
    return FgAb.of(*[_g(a, b) for a in _cyc(A) for b in _cyc(B) if a and b])


def lambda2(A: FgAb) -> FgAb:
    c = _cyc(A)
    return FgAb.of(*[_g(c[i], c[j]) for i, j in itertools.combinations(range(len(c)), 2)])


def lambda3(A: FgAb) -> FgAb:
    c = _cyc(A)
    return FgAb.of(*[_g(_g(c[i], c[j]), c[k]) for i, j, k in itertools.combinations(range(len(c)), 3)])


# ---------------------------------------------------------------------------
# cohomology of a free complex at one spot


class SubquotientHomology:
    """``ker(d_out) / im(d_in)`` for free modules with class maps and representatives.

    ``d_in`` is ``n x a`` (into the middle ``Z^n``) and ``d_out`` is ``b x n``.
    """

    def __init__(self, d_in: Matrix, d_out: Matrix, n: int, a: int | None = None, b: int | None = None):
        self.n = n
        a = a if a is not None else (len(d_in[0]) if d_in else 0)
        b = b if b is not None else len(d_out)
        cyc = integer_kernel(d_out, b, n) if b else [[1 if i == j else 0 for i in range(n)] for j in range(n)]
        self.cycles = Lattice(cyc, n)
        self.cycle_basis = self.cycles.basis
        bnd = columns(d_in, n) if a else []
        rels = []
        for v in bnd:
            c = self.cycles.coords(v)
            if c is None:
                raise ValueError("d_out @ d_in != 0")
            rels.append(c)
        self.pres = present(self.cycles.rank, rels)
        self.group = self.pres.group

    def representative(self, g: Sequence[int]) -> list[int]:
        y = self.pres.section(g)
        out = [0] * self.n
        for k, yk in enumerate(y):
            if yk:
                col = self.cycle_basis[k]
                for r in range(self.n):
                    out[r] += yk * col[r]
        return out

    def generator_representatives(self) -> list[list[int]]:
        return [self.representative(self.group.gen(i)) for i in range(self.group.ngens)]

    def class_of(self, z: Sequence[int]) -> tuple[int, ...]:
        c = self.cycles.coords(z)
        if c is None:
            raise ValueError("not a cycle")
        return self.pres.to_group(c)

    def induced(self, other: "SubquotientHomology", F: Matrix) -> FgAbMap:
        """Map ``self.group -> other.group`` induced by the chain-level matrix ``F``."""
        imgs = [other.class_of(matvec(F, r)) for r in self.generator_representatives()]
        if not self.group.ngens:
            return FgAbMap.zero(self.group, other.group)
        return FgAbMap.from_images(self.group, other.group, imgs)
