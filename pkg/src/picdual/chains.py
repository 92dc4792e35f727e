"""Sparse based chain complexes and their algebraic reduction.

A cell ``a`` of degree ``k`` and a face ``b`` of degree ``k-1`` whose incidence
is a unit can be cancelled.  Repeating this yields a much smaller complex that
is chain homotopy equivalent to the original; the projection ``pi`` and the
inclusion ``iota`` of that equivalence are kept so that chain maps can be
transported to the small complex.
"""

from __future__ import annotations

import heapq
from typing import Callable, Iterable

from .fgab import FgAbMap, SubquotientHomology, hermite_normal_form, transpose, zeros

Chain = dict  # cell index -> coefficient


def _axpy(target: dict, coeff: int, src: dict) -> None:
    for k, v in src.items():
        s = target.get(k, 0) + coeff * v
        if s:
            target[k] = s
        else:
            target.pop(k, None)


class SparseChainComplex:
    """Homologically graded complex ``C_0 <- C_1 <- ... <- C_top`` on explicit cell bases.

    ``boundary[k][c]`` is a dict ``{face: coefficient}`` for cell ``c`` of degree ``k >= 1``.
    """

    def __init__(self, sizes: list[int], boundary: dict[int, list[dict]]):
        self.sizes = list(sizes)
        self.top = len(sizes) - 1
        self.boundary = boundary

    def check_dd(self) -> bool:
        for k in range(2, self.top + 1):
            for c in range(self.sizes[k]):
                acc: dict = {}
                for f, x in self.boundary[k][c].items():
                    _axpy(acc, x, self.boundary[k - 1][f])
                if acc:
                    return False
        return True

    def dense(self, k: int) -> list[list[int]]:
        """Matrix of ``d_k : C_k -> C_{k-1}``."""
        M = zeros(self.sizes[k - 1], self.sizes[k])
        for c, bd in enumerate(self.boundary[k]):
            for f, x in bd.items():
                M[f][c] = x
        return M

    def reduce(self, track: Iterable[int] = ()) -> "ReducedComplex":
        return ReducedComplex(self, set(track))


class ReducedComplex:
    """Result of cancelling unit pairs in a :class:`SparseChainComplex`.

    Exact in every degree below ``top``; the top degree only supplies boundaries.
    ``track`` lists degrees in which ``iota`` (survivor -> original chain) is recorded.
    """

    def __init__(self, C: SparseChainComplex, track: set[int]):
        top = C.top
        self.top = top
        self.original_sizes = list(C.sizes)
        bd = {k: [dict(b) for b in C.boundary[k]] for k in range(1, top + 1)}
        alive = [[True] * C.sizes[k] for k in range(top + 1)]
        cobd = {k: [set() for _ in range(C.sizes[k])] for k in range(top)}
        for k in range(1, top + 1):
            for c, b in enumerate(bd[k]):
                for f in b:
                    cobd[k - 1][f].add(c)
        rep = {k: {c: {c: 1} for c in range(C.sizes[k])} for k in track if 0 <= k <= top}
        # projection data for tracked degrees: (b, u, gamma) applied in order
        proj_steps: dict[int, list] = {k: [] for k in track}

        def cancel(k: int, a: int, b: int, u: int) -> None:
            bdk = bd[k]
            da = bdk[a]
            if (k - 1) in proj_steps:
                proj_steps[k - 1].append((b, u, {f: x for f, x in da.items() if f != b}))
            for c in list(cobd[k - 1][b]):
                if c == a:
                    continue
                lam = bdk[c][b]
                coef = -lam * u
                old = bdk[c]
                for f, x in da.items():
                    s = old.get(f, 0) + coef * x
                    if s:
                        if f not in old:
                            cobd[k - 1][f].add(c)
                        old[f] = s
                    elif f in old:
                        del old[f]
                        cobd[k - 1][f].discard(c)
                if k in rep:
                    _axpy(rep[k][c], coef, rep[k][a])
            for f in da:
                cobd[k - 1][f].discard(a)
            if k < top:
                for e in cobd[k][a]:
                    del bd[k + 1][e][a]
                cobd[k][a] = set()
            bdk[a] = {}
            alive[k][a] = False
            if k - 1 >= 1:
                for f in bd[k - 1][b]:
                    cobd[k - 2][f].discard(b)
                bd[k - 1][b] = {}
            alive[k - 1][b] = False
            cobd[k - 1][b] = set()
            if k in rep:
                rep[k].pop(a, None)
            if (k - 1) in rep:
                rep[k - 1].pop(b, None)

        # Markowitz-style ordering: a heap keyed by the fill-in estimate
        # (|cofaces(b)| - 1) * (|faces(a)| - 1), validated lazily on pop.
        def best_pair(k: int, a: int):
            da = bd[k][a]
            cob = cobd[k - 1]
            choice = None
            la = len(da) - 1
            for f, x in da.items():
                if x == 1 or x == -1:
                    cost = (len(cob[f]) - 1) * la
                    if choice is None or cost < choice[0]:
                        choice = (cost, f, x)
                        if cost == 0:
                            break
            return choice

        heap = []
        for k in range(1, top + 1):
            for a in range(C.sizes[k]):
                ch = best_pair(k, a)
                if ch is not None:
                    heap.append((ch[0], k, a))
        heapq.heapify(heap)
        while heap:
            cost, k, a = heapq.heappop(heap)
            if not alive[k][a]:
                continue
            ch = best_pair(k, a)
            if ch is None:
                continue
            if ch[0] > cost:
                heapq.heappush(heap, (ch[0], k, a))
                continue
            _, b, u = ch
            touched = [c for c in cobd[k - 1][b] if c != a]
            cancel(k, a, b, u)
            for c in touched:
                nc = best_pair(k, c)
                if nc is not None:
                    heapq.heappush(heap, (nc[0], k, c))

        self.survivors = [[c for c in range(C.sizes[k]) if alive[k][c]] for k in range(top + 1)]
        self.index = [{c: i for i, c in enumerate(s)} for s in self.survivors]
        self.sizes = [len(s) for s in self.survivors]
        self.d = {}
        for k in range(1, top + 1):
            M = zeros(self.sizes[k - 1], self.sizes[k])
            idx = self.index[k - 1]
            for j, c in enumerate(self.survivors[k]):
                for f, x in bd[k][c].items():
                    M[idx[f]][j] = x
            self.d[k] = M
        if top >= 1:
            # only the column lattice of the top boundary matters below the top degree
            n = self.sizes[top - 1]
            basis = hermite_normal_form([list(c) for c in zip(*self.d[top])] if self.d[top] and self.d[top][0] else [], n)
            self.sizes[top] = len(basis)
            self.d[top] = [[col[i] for _, col in basis] for i in range(n)]
        self._rep = rep
        self._proj = proj_steps

    # maps of the homotopy equivalence
    def project(self, k: int, chain: Chain) -> list[int]:
        if k not in self._proj:
            raise ValueError(f"degree {k} was not tracked")
        y = dict(chain)
        for b, u, gamma in self._proj[k]:
            yb = y.pop(b, 0)
            if yb:
                _axpy(y, -u * yb, gamma)
        idx = self.index[k]
        out = [0] * self.sizes[k]
        for c, x in y.items():
            i = idx.get(c)
            if i is not None:
                out[i] = x
        return out

    def include(self, k: int, i: int) -> Chain:
        if k not in self._rep:
            raise ValueError(f"degree {k} was not tracked")
        return dict(self._rep[k][self.survivors[k][i]])

    def transported(self, k: int, F: Callable[[Chain], Chain]) -> list[list[int]]:
        """Matrix of ``pi o F o iota`` in degree ``k``."""
        cols = [self.project(k, F(self.include(k, i))) for i in range(self.sizes[k])]
        return [[cols[j][i] for j in range(self.sizes[k])] for i in range(self.sizes[k])]


class DenseComplex:
    """Small homological complex given by dense matrices ``d[k] : C_k -> C_{k-1}``, valid below ``top``."""

    def __init__(self, sizes: list[int], d: dict[int, list[list[int]]]):
        self.sizes = list(sizes)
        self.top = len(sizes) - 1
        self.d = d

    @classmethod
    def from_reduced(cls, R: ReducedComplex) -> "DenseComplex":
        return cls(R.sizes, R.d)

    def _din(self, k: int):
        return self.d.get(k + 1) if k + 1 <= self.top else None

    def homology(self, k: int) -> SubquotientHomology:
        if not 0 <= k < self.top:
            raise ValueError(f"degree {k} outside the computed range")
        n = self.sizes[k]
        d_in = self.d[k + 1]
        d_out = self.d[k] if k >= 1 else []
        return SubquotientHomology(d_in, d_out, n, self.sizes[k + 1], self.sizes[k - 1] if k >= 1 else 0)

    def cohomology(self, k: int) -> SubquotientHomology:
        """Cohomology of the dual cochain complex ``Hom(C_*, Z)`` in degree ``k``."""
        if not 0 <= k < self.top:
            raise ValueError(f"degree {k} outside the computed range")
        n = self.sizes[k]
        d_out = transpose(self.d[k + 1]) if self.sizes[k + 1] and n else []
        d_in = transpose(self.d[k]) if k >= 1 and self.sizes[k - 1] and n else []
        a = self.sizes[k - 1] if k >= 1 else 0
        if not d_in:
            a = 0
        b = self.sizes[k + 1] if d_out else 0
        return SubquotientHomology(d_in if d_in else [[] for _ in range(n)], d_out, n, a, b)

    def tensor(self, other: "DenseComplex") -> "TensorComplex":
        return TensorComplex(self, other)


class TensorComplex(DenseComplex):
    """``C (x) D`` with ``d(x (x) y) = dx (x) y + (-1)^|x| x (x) dy``, truncated at the smaller top."""

    def __init__(self, C: DenseComplex, D: DenseComplex):
        top = min(C.top, D.top)
        self.C, self.D = C, D
        self.blocks = []  # per degree: list of (i, j, offset)
        sizes = []
        for n in range(top + 1):
            off = 0
            bl = []
            for i in range(n + 1):
                j = n - i
                bl.append((i, j, off))
                off += C.sizes[i] * D.sizes[j]
            self.blocks.append(bl)
            sizes.append(off)
        d = {}
        for n in range(1, top + 1):
            M = zeros(sizes[n - 1], sizes[n])
            prev = {(i, j): off for i, j, off in self.blocks[n - 1]}
            for i, j, off in self.blocks[n]:
                nd = D.sizes[j]
                for x in range(C.sizes[i]):
                    for y in range(nd):
                        col = off + x * nd + y
                        if i >= 1:
                            o2 = prev[(i - 1, j)]
                            dC = C.d[i]
                            for x2 in range(C.sizes[i - 1]):
                                v = dC[x2][x]
                                if v:
                                    M[o2 + x2 * nd + y][col] += v
                        if j >= 1:
                            o2 = prev[(i, j - 1)]
                            dD = D.d[j]
                            nd2 = D.sizes[j - 1]
                            sign = -1 if i % 2 else 1
                            for y2 in range(nd2):
                                v = dD[y2][y]
                                if v:
                                    M[o2 + x * nd2 + y2][col] += sign * v
            d[n] = M
        super().__init__(sizes, d)

    def tensor_map(self, n: int, F: dict[int, list[list[int]]], G: dict[int, list[list[int]]]) -> list[list[int]]:
        """Matrix of ``F (x) G`` in degree ``n`` from degreewise matrices of chain maps on the factors."""
        N = self.sizes[n]
        M = zeros(N, N)
        for i, j, off in self.blocks[n]:
            nd = self.D.sizes[j]
            Fi, Gj = F[i], G[j]
            for x in range(self.C.sizes[i]):
                for y in range(nd):
                    col = off + x * nd + y
                    for x2 in range(self.C.sizes[i]):
                        a = Fi[x2][x]
                        if not a:
                            continue
                        for y2 in range(nd):
                            b = Gj[y2][y]
                            if b:
                                M[off + x2 * nd + y2][col] += a * b
        return M


def induced_on_cohomology(H: SubquotientHomology, F: list[list[int]]) -> FgAbMap:
    """Endomorphism of a cohomology group induced by a chain map with matrix ``F`` (chains -> chains).

    On cochains the map is ``phi -> phi o F``, i.e. the transpose.
    """
    return H.induced(H, transpose(F) if F else [])


def induced_on_homology(H: SubquotientHomology, F: list[list[int]]) -> FgAbMap:
    return H.induced(H, F)
