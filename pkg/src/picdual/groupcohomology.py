"""Bar-complex (co)homology of finite abelian groups and the multiplicative weight action.

The bar complex has ``C_n = Z[G^n]`` with ``d = sum (-1)^i d_i`` where ``d_0``
drops ``g_1``, ``d_i`` multiplies ``g_i g_{i+1}`` and ``d_n`` drops ``g_n``.
``Psi^m`` acts diagonally, ``[g_1|...|g_n] -> [m g_1|...|m g_n]``.

Degrees are computed by cancelling unit incidences (see :mod:`picdual.chains`)
and taking Smith normal forms of what remains.  When the unreduced complex is
larger than ``SIZE_BUDGET`` cells in its top degree the normalized complex
(cells with a zero entry removed) is used instead.  Groups with several cyclic
factors whose bar complex is still too large are handled through the
Eilenberg-Zilber equivalence ``B(G x H) ~ B(G) (x) B(H)``, which is natural,
so the weight action is computed factorwise.

>>> str(cohomology_Z(FgAb.cyclic(3), 4))
'Z/3'
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .chains import DenseComplex, SparseChainComplex, TensorComplex, induced_on_cohomology
from .fgab import FgAb, FgAbMap, SubquotientHomology, direct_sum, lambda2, tensor, tor, zeros

__all__ = [
    "SIZE_BUDGET",
    "BarComplex",
    "GroupModel",
    "model",
    "homology",
    "cohomology_Z",
    "lambda_compare",
    "weight_matrix",
    "verify_weight",
    "verify_23_extension",
    "cohomology_table",
    "homology_table",
    "kunneth_homology",
    "KComplex",
    "kcomplex_cohomology",
]

SIZE_BUDGET = 40_000


class _Elements:
    """Elements of a finite abelian group indexed ``0..|G|-1`` (index 0 is the identity)."""

    def __init__(self, G: FgAb):
        if not G.is_finite:
            raise ValueError("bar complexes are only built for finite groups")
        self.G = G
        self.elems = list(G.elements())
        self.index = {e: i for i, e in enumerate(self.elems)}
        N = len(self.elems)
        self.N = N
        self.add = [[self.index[G.add(a, b)] for b in self.elems] for a in self.elems]

    def scale_table(self, m: int) -> list[int]:
        return [self.index[self.G.scale(m, e)] for e in self.elems]


@dataclass
class BarComplex:
    """Bar complex of ``G`` in degrees ``0..max_degree``.

    ``normalized`` drops every cell with an identity entry; that quotient is
    chain homotopy equivalent to the full complex.
    """

    group: FgAb
    max_degree: int
    normalized: bool = False
    _el: _Elements = field(init=False, repr=False)

    def __post_init__(self):
        self._el = _Elements(self.group)

    @property
    def alphabet(self) -> list[int]:
        N = self._el.N
        return list(range(1, N)) if self.normalized else list(range(N))

    def cells(self, n: int) -> list[tuple[int, ...]]:
        return list(itertools.product(self.alphabet, repeat=n))

    def size(self, n: int) -> int:
        return len(self.alphabet) ** n

    def _encode(self, n: int):
        alph = self.alphabet
        base = len(alph)
        shift = 1 if self.normalized else 0

        def enc(t: tuple[int, ...]) -> int:
            x = 0
            for g in t:
                x = x * base + (g - shift)
            return x

        return enc

    def faces(self, cell: tuple[int, ...]) -> list[tuple[int, tuple[int, ...]]]:
        """``[(sign, face)]`` for ``d = sum (-1)^i d_i``; degenerate faces omitted when normalized."""
        n = len(cell)
        add = self._el.add
        out = [(1, cell[1:])]
        for i in range(1, n):
            s = add[cell[i - 1]][cell[i]]
            if self.normalized and s == 0:
                continue
            out.append(((-1) ** i, cell[: i - 1] + (s,) + cell[i + 1:]))
        out.append(((-1) ** n, cell[:-1]))
        return out

    def sparse(self) -> SparseChainComplex:
        sizes = [self.size(n) for n in range(self.max_degree + 1)]
        boundary = {}
        for n in range(1, self.max_degree + 1):
            enc = self._encode(n - 1)
            col = []
            for cell in self.cells(n):
                bd: dict[int, int] = {}
                for sgn, f in self.faces(cell):
                    j = enc(f)
                    v = bd.get(j, 0) + sgn
                    if v:
                        bd[j] = v
                    else:
                        bd.pop(j, None)
                col.append(bd)
            boundary[n] = col
        return SparseChainComplex(sizes, boundary)

    def psi(self, m: int, n: int):
        """Chain-level ``Psi^m`` in degree ``n`` as a function on sparse chains."""
        table = self._el.scale_table(m)
        cells = self.cells(n)
        enc = self._encode(n)

        def F(chain: dict) -> dict:
            out: dict[int, int] = {}
            for c, x in chain.items():
                img = tuple(table[g] for g in cells[c])
                if self.normalized and 0 in img:
                    continue
                j = enc(img)
                v = out.get(j, 0) + x
                if v:
                    out[j] = v
                else:
                    out.pop(j, None)
            return out

        return F


def _choose_normalized(G: FgAb, top: int) -> bool:
    return G.order() ** top > SIZE_BUDGET


class GroupModel:
    """A small complex chain-equivalent to the bar complex of ``G`` in degrees ``< top``, with ``Psi^m`` on it."""

    def __init__(self, G: FgAb, top: int, route: str = "auto", weights: bool = False):
        self.group = G
        self.top = top
        self.weights = weights
        if route == "auto":
            route = "bar"
            if len(G.factors) > 1 and (G.order() - 1) ** top > SIZE_BUDGET:
                route = "product"
        self.route = route
        self._psi_cache: dict[int, dict[int, list[list[int]]]] = {}
        if route == "bar":
            self.bar = BarComplex(G, top, normalized=_choose_normalized(G, top))
            S = self.bar.sparse()
            self.reduced = S.reduce(track=range(top) if weights else ())
            self.complex = DenseComplex.from_reduced(self.reduced)
        elif route == "product":
            self.factors = [model(FgAb.of(d), top, weights=weights) for d in G.factors]
            cx = self.factors[0].complex
            for f in self.factors[1:]:
                cx = TensorComplex(cx, f.complex)
            self.complex = cx
        else:
            raise ValueError(f"unknown route {route!r}")

    def psi_matrix(self, m: int, n: int) -> list[list[int]]:
        """Matrix of the transported ``Psi^m`` on the small complex in degree ``n``."""
        if not self.weights:
            raise ValueError("model was built without the weight action")
        cache = self._psi_cache.setdefault(m, {})
        if n in cache:
            return cache[n]
        if self.route == "bar":
            M = self.reduced.transported(n, self.bar.psi(m, n))
        else:
            M = self._product_psi(m, n)
        cache[n] = M
        return M

    def _product_psi(self, m: int, n: int) -> list[list[int]]:
        # rebuild the nested tensor maps degree by degree
        mats = [{k: f.psi_matrix(m, k) for k in range(self.top)} for f in self.factors]
        cx = self.factors[0].complex
        cur = mats[0]
        for f, fm in zip(self.factors[1:], mats[1:]):
            t = TensorComplex(cx, f.complex)
            cur = {k: t.tensor_map(k, cur, fm) for k in range(t.top)}
            cx = t
        return cur[n]

    def homology(self, i: int) -> SubquotientHomology:
        return self.complex.homology(i)

    def cohomology(self, i: int) -> SubquotientHomology:
        return self.complex.cohomology(i)


@lru_cache(maxsize=None)
def _model(G: FgAb, top: int, route: str, weights: bool) -> GroupModel:
    return GroupModel(G, top, route, weights)


def model(G: FgAb, top: int, route: str = "auto", weights: bool = False) -> GroupModel:
    """Cached model valid for (co)homology in degrees ``< top``."""
    return _model(G, top, route, weights)


def _check_group(G: FgAb) -> None:
    if not G.is_finite:
        raise ValueError("group must be finite")


def homology(G: FgAb, i: int, route: str = "auto") -> FgAb:
    """``H_i(G; Z)`` from the bar complex."""
    _check_group(G)
    if i < 0:
        raise ValueError("negative degree")
    return model(G, i + 1, route).homology(i).group


def cohomology_Z(G: FgAb, i: int, route: str = "auto") -> FgAb:
    """``H^i(G; Z)``: cohomology of ``Hom(bar complex, Z)``."""
    _check_group(G)
    if i < 0:
        raise ValueError("negative degree")
    return model(G, i + 1, route).cohomology(i).group


def exterior_power(G: FgAb, i: int) -> FgAb:
    if i == 0:
        return FgAb(1)
    if i == 1:
        return G
    if i == 2:
        return lambda2(G)
    raise ValueError("only degrees 0, 1, 2 are compared")


def lambda_compare(G: FgAb, i: int) -> bool:
    """True iff ``Lambda^i G`` and ``H_i(G; Z)`` agree as abstract groups."""
    if not 0 <= i <= 2:
        raise ValueError("i must lie in {0, 1, 2}")
    return exterior_power(G, i) == homology(G, i)


def weight_matrix(G: FgAb, m: int, i: int, route: str = "auto") -> FgAbMap:
    """``Psi^m`` acting on ``H^i(G; Z)`` in its canonical generators."""
    M = model(G, i + 1, route, weights=True)
    H = M.cohomology(i)
    return induced_on_cohomology(H, M.psi_matrix(m, i))


def verify_weight(G: FgAb, i: int, k: int, ms, route: str = "auto") -> bool:
    """``Psi^m = m^k`` on ``H^i`` for every ``m`` in ``ms``."""
    for m in ms:
        W = weight_matrix(G, m, i, route)
        if W != FgAbMap.identity(W.source).scaled(m ** k):
            return False
    return True


def verify_23_extension(G: FgAb, i: int, vs, word_budget: int = 1, route: str = "auto") -> bool:
    """Check that ``H^i`` is annihilated by words in ``P_2 = Psi^v - v^2`` and ``P_3 = Psi^v - v^3``.

    With ``word_budget = 1`` only ``P_2 P_3`` is tried.  Larger budgets allow
    ``P_2^a P_3^b`` with ``1 <= a, b <= word_budget``; each element may use its
    own word.
    """
    for v in vs:
        W = weight_matrix(G, v, i, route)
        H = W.source
        I = FgAbMap.identity(H)
        P2 = W - I.scaled(v ** 2)
        P3 = W - I.scaled(v ** 3)
        words = []
        for a in range(1, word_budget + 1):
            for b in range(1, word_budget + 1):
                w = I
                for _ in range(a):
                    w = P2 @ w
                for _ in range(b):
                    w = P3 @ w
                words.append(w)
        if any(w.is_zero() for w in words):
            continue
        if not H.is_finite:
            return False
        for x in H.elements():
            if not any(H.is_zero(w(x)) for w in words):
                return False
    return True


def cohomology_table(G: FgAb, max_degree: int, route: str = "auto") -> list[FgAb]:
    """``[H^0, ..., H^max_degree]`` of ``G`` with integer coefficients from one bar complex."""
    _check_group(G)
    M = model(G, max_degree + 1, route)
    return [M.cohomology(i).group for i in range(max_degree + 1)]


def homology_table(G: FgAb, max_degree: int, route: str = "auto") -> list[FgAb]:
    _check_group(G)
    M = model(G, max_degree + 1, route)
    return [M.homology(i).group for i in range(max_degree + 1)]


def kunneth_homology(HG: list[FgAb], HH: list[FgAb], n: int) -> FgAb:
    """Kunneth assembly of ``H_n(G x H)`` from the homology of the factors."""
    parts = []
    for i in range(n + 1):
        parts.append(tensor(HG[i], HH[n - i]))
    for i in range(n):
        parts.append(tor(HG[i], HH[n - 1 - i]))
    return direct_sum(parts)[0]


# ---------------------------------------------------------------------------
# the complex K^q = Z^q


class KComplex:
    """Cochain complex ``K^q = Z^q`` (``q >= 1``) with ``d = sum_{i=0}^{q+1} (-1)^i d_i``.

    ``d_0`` prepends a zero, ``d_{q+1}`` appends a zero and for ``1 <= i <= q``
    the face ``d_i`` repeats the ``i``-th entry.
    """

    @staticmethod
    def face(q: int, i: int) -> list[list[int]]:
        """Matrix ``Z^q -> Z^{q+1}`` of the face ``d_i``."""
        M = zeros(q + 1, q)
        if i == 0:
            for r in range(q):
                M[r + 1][r] = 1
        elif i == q + 1:
            for r in range(q):
                M[r][r] = 1
        else:
            for r in range(q + 1):
                src = r if r < i else r - 1
                M[r][src] = 1
        return M

    @classmethod
    def differential(cls, q: int) -> list[list[int]]:
        M = zeros(q + 1, q)
        for i in range(q + 2):
            F = cls.face(q, i)
            s = (-1) ** i
            for r in range(q + 1):
                for c in range(q):
                    M[r][c] += s * F[r][c]
        return M


def kcomplex_cohomology(q_max: int) -> list[FgAb]:
    """``[H^1, ..., H^{q_max}]`` of the complex ``K``; ``K^0 = 0``."""
    if q_max < 2:
        raise ValueError("q_max must be at least 2")
    out = []
    for q in range(1, q_max + 1):
        d_out = KComplex.differential(q)
        d_in = KComplex.differential(q - 1) if q >= 2 else [[] for _ in range(q)]
        a = q - 1
        H = SubquotientHomology(d_in, d_out, q, a, q + 1)
        out.append(H.group)
    return out
