"""Acceptance checks shared by the test suite and ``picdual check-all``.

Each check returns a :class:`CheckResult`; expected values that come from
closed formulas are frozen here rather than recomputed by the code under test.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from typing import Callable

from . import complexes as cx
from .extensions import baer_sum, class_of, ext_model, from_class
from .fgab import FgAb, ext1
from .groupcohomology import (
    cohomology_table,
    kcomplex_cohomology,
    lambda_compare,
    verify_23_extension,
    verify_weight,
)
from .lca import FtLca, dual, random_ftlca
from .picard import PicClass, dual_b, dual_pic, local_model
from .simplicial import (
    cohomology,
    cp2_ring,
    cup_classes,
    exterior_ring,
    perturb,
    representative,
    ring_of,
    rp2,
    sphere,
    surface_basis,
    torus,
)
from .tduality import (
    ChernClass,
    HFlux,
    PairClass,
    check_exactness,
    enumerate_duals,
    filtration_model,
    gamma_action,
    gysin_h3,
    phi_data,
    pic_class_of,
    psi_data,
    q_element_of_pic,
    q_group,
    triple_action,
)


@dataclass(frozen=True)
class CheckResult:
    number: int
    name: str
    ok: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.ok else 'FAIL'}] {self.number:2d} {self.name}: {self.detail} ({self.seconds:.2f}s)"

    def to_json(self) -> dict:
        return {"number": self.number, "name": self.name, "ok": self.ok, "detail": self.detail}


Z = FgAb.free(1)
ZERO = FgAb.zero()


def _backends():
    return {"torus": ring_of(torus(), "torus"), "S2": ring_of(sphere(2), "S2"), "CP2": cp2_ring()}


def _chern_classes(R, n: int, bound: int = 2):
    H2 = R.group(2)
    vals = list(itertools.product(range(-bound, bound + 1), repeat=H2.ngens))
    for comps in itertools.product(vals, repeat=n):
        yield ChernClass(R, n, comps)


# ---------------------------------------------------------------------------
# the checks


def check_pontrjagin(seed: int = 0) -> tuple[bool, str]:
    rng = random.Random(seed)
    bad = 0
    for _ in range(200):
        G = random_ftlca(rng)
        D = dual(G)
        if dual(D) != G or (D.z, D.t, D.r, D.finite) != (G.t, G.z, G.r, G.finite):
            bad += 1
    return bad == 0, f"200 random groups, {bad} failures"


ZP_TABLE = {
    # H^i(Z/p; Z) for i = 0..6: Z, 0, Z/p, 0, Z/p, 0, Z/p
    p: [Z, ZERO, FgAb.of(p), ZERO, FgAb.of(p), ZERO, FgAb.of(p)]
    for p in (2, 3, 5)
}


def check_zp_table(seed: int = 0) -> tuple[bool, str]:
    bad = [p for p, want in ZP_TABLE.items() if cohomology_table(FgAb.of(p), 6) != want]
    return not bad, "p in {2,3,5}, degrees 0-6" + (f"; mismatch for p={bad}" if bad else "")


def check_weights(seed: int = 0) -> tuple[bool, str]:
    G1, G2 = FgAb.of(5), FgAb.of(5, 5)
    checks = {
        "Z/5 H^2 weight 1": verify_weight(G1, 2, 1, (2, 3, 4)),
        "Z/5 H^4 weight 2": verify_weight(G1, 4, 2, (2, 3, 4)),
        "(Z/5)^2 H^2 weight 1": verify_weight(G2, 2, 1, (2, 3, 4)),
        "(Z/5)^2 H^3 weight 2": verify_weight(G2, 3, 2, (2, 3, 4)),
        "(Z/5)^2 H^4 weight 2-3": verify_23_extension(G2, 4, (2, 3)),
    }
    bad = [k for k, v in checks.items() if not v]
    return not bad, f"{len(checks)} weight statements" + (f"; failed: {bad}" if bad else "")


def abelian_groups_up_to(n: int) -> list[FgAb]:
    """Every finite abelian group of order at most ``n``, by invariant factors."""
    out = [FgAb.zero()]

    def extend(factors, order):
        for d in range(2, n // order + 1):
            if factors and d % factors[-1]:
                continue
            fs = factors + [d]
            out.append(FgAb.of(*fs))
            extend(fs, order * d)

    extend([], 1)
    return out


def check_lambda(seed: int = 0) -> tuple[bool, str]:
    groups = abelian_groups_up_to(16)
    bad = [str(G) for G in groups for i in (0, 1, 2) if not lambda_compare(G, i)]
    return not bad, f"{len(groups)} groups, i in {{0,1,2}}" + (f"; failed: {bad}" if bad else "")


def check_kcomplex(seed: int = 0) -> tuple[bool, str]:
    got = kcomplex_cohomology(8)
    want = [Z] + [ZERO] * 7
    return got == want, "H^1..H^8 = " + ", ".join(map(str, got))


def _small_group(rng: random.Random) -> FgAb:
    torsion = rng.choice([(), (2,), (3,), (4,), (2, 2), (5,), (6,), (7,), (8,), (2, 4), (2, 2, 2)])
    return FgAb.of(*torsion, *([0] * rng.randint(0, 2)))


def check_witnesses(seed: int = 0) -> tuple[bool, str]:
    rng = random.Random(seed)
    bad = 0
    for _ in range(100):
        X, Y = _small_group(rng), _small_group(rng)
        Kx = cx.FourTermExact.from_map(cx.random_map(X, Y, rng))
        h1, h2 = cx.homotopy_witnesses(Kx)
        maps = (h1.f, h1.g, h2.g)
        if not (all(f.is_chain_map() for f in maps) and h1.verify() and h2.verify()):
            bad += 1
    return bad == 0, f"100 random four-term sequences, {bad} failures"


def check_rhom(seed: int = 0) -> tuple[bool, str]:
    rng = random.Random(seed)
    bad = 0
    for _ in range(100):
        Ks = []
        for _ in range(2):
            A, B = cx.random_group(rng), cx.random_group(rng)
            Ks.append(cx.TwoTerm(A, B, cx.random_map(A, B, rng)))
        if cx.rhom(*Ks) != cx.rhom_via_resolution(*Ks):
            bad += 1
    return bad == 0, f"100 random pairs of two-term complexes, {bad} mismatches"


def check_extensions(seed: int = 0) -> tuple[bool, str]:
    bad = []
    pairs = 0
    for a in range(1, 9):
        for b in range(1, 9):
            G, H = FgAb.of(a), FgAb.of(b)
            M = ext_model(G, H)
            if M.group != ext1(G, H):
                bad.append((a, b, "group"))
                continue
            elems = list(M.elements())
            exts = {x: from_class(G, H, x) for x in elems}
            if any(class_of(E) != x or not E.is_valid() for x, E in exts.items()):
                bad.append((a, b, "round trip"))
            for x, y in itertools.product(elems, repeat=2):
                pairs += 1
                if class_of(baer_sum(exts[x], exts[y])) != M.group.add(x, y):
                    bad.append((a, b, "sum"))
                    break
    return not bad, f"64 cyclic pairs, {pairs} Baer sums" + (f"; failed: {bad[:5]}" if bad else "")


def check_sequence(seed: int = 0) -> tuple[bool, str]:
    bad, count = [], 0
    for name, R in _backends().items():
        for n in (1, 2):
            for c in _chern_classes(R, n):
                count += 1
                if not check_exactness(c, samples=8, seed=seed)["ok"]:
                    bad.append((name, c.components))
    return not bad, f"{count} Chern classes on torus, S2, CP2 for n=1,2" + (f"; failed: {bad[:5]}" if bad else "")


def check_uniqueness(seed: int = 0) -> tuple[bool, str]:
    bad, count = [], 0
    for name, R in _backends().items():
        for c in _chern_classes(R, 1, bound=3):
            F = filtration_model(c)
            Q = F.Q
            kb = Q.ker_beta
            symbols = [kb.inclusion(kb.group.reduce(v)) for v in itertools.product(range(-2, 3), repeat=kb.group.ngens)]
            for y in symbols:
                count += 1
                duals = enumerate_duals(PairClass(c, HFlux(e21=Q.B2.unpack(y))))
                if not F.gamma.is_trivial or len(duals) != 1:
                    bad.append((name, c.components, y))
    return not bad, f"{count} circle-bundle pairs, each with Gamma_E = 0 and one dual" + (f"; failed: {bad[:5]}" if bad else "")


def check_hopf(seed: int = 0) -> tuple[bool, str]:
    c = ChernClass(ring_of(sphere(2), "S2"), 1, ((1,),))
    f2 = filtration_model(c).f2_group
    gy = gysin_h3(c)
    s3 = cohomology(sphere(3), 3)
    ok = f2 == Z and gy == Z and s3 == Z
    return ok, f"F^2 H^3 = {f2}, Gysin H^3 = {gy}, simplicial H^3(S^3) = {s3}"


def check_triples(seed: int = 0) -> tuple[bool, str]:
    rng = random.Random(seed)
    rings = [ring_of(torus(), "torus"), ring_of(sphere(2), "S2"), cp2_ring(), exterior_ring(3)]
    bad = 0
    for k in range(100):
        R = rings[k % len(rings)]
        n = rng.randint(1, 2)
        H2 = R.group(2)
        c = ChernClass(R, n, tuple(tuple(rng.randint(-2, 2) for _ in range(H2.ngens)) for _ in range(n)))
        Q = q_group(c)
        q = Q.random_element(rng)
        t = psi_data(q, c)
        g = tuple(rng.randint(-3, 3) for _ in range(Q.H3.ngens))
        ok = (
            phi_data(t) == q
            and psi_data(phi_data(t), c) == t
            and t.c_hat == q.c_hat
            and phi_data(t).c_hat == t.c_hat
            and phi_data(triple_action(g, t)) == gamma_action(g, phi_data(t), c)
        )
        bad += not ok
    return bad == 0, f"100 seeded triples, {bad} failures"


def check_sign(seed: int = 0) -> tuple[bool, str]:
    rng = random.Random(seed)
    bad = []
    for R in (exterior_ring(3), ring_of(sphere(2), "S2"), ring_of(torus(), "torus")):
        for n in (1, 2):
            c = ChernClass.zero(R, n)
            Q = q_group(c)
            for _ in range(10):
                q = Q.random_element(rng)
                P = pic_class_of(q, c)
                D = dual_pic(P)
                back = q_element_of_pic(D, c)
                h3 = P.h3_components()
                G3 = R.group(3)
                negated = list(D.h3_components().values()) == [G3.neg(v) for v in h3.values()]
                if back != Q.element(q.c_hat, Q.coker_alpha.neg(q.t)) or dual_pic(D) != P or not negated:
                    bad.append((R.name, n))
    for n in (1, 2, 3):
        if dual_b(FtLca(t=n)) != PicClass(FtLca(), FtLca(z=n)):
            bad.append(("B T^n", n))
        D = dual_pic(local_model(n))
        if D.Hminus1 != FtLca(z=n, t=1) or D.H0 != FtLca(z=1) or any(any(v) for _, v in D.phi):
            bad.append(("local model", n))
    return not bad, "negation on H^3, involution, B T^n and the local model" + (f"; failed: {bad[:5]}" if bad else "")


def check_simplicial(seed: int = 0) -> tuple[bool, str]:
    rng = random.Random(seed)
    T = torus()
    R = ring_of(T, "torus")
    a, b, fund = surface_basis(T)
    H2 = R.group(2)
    cups = R.cup(1, 1, a, b) == fund and R.cup(1, 1, b, a) == H2.neg(fund)
    squares = H2.is_zero(R.cup(1, 1, a, a)) and H2.is_zero(R.cup(1, 1, b, b))
    rp = cohomology(rp2(), 2) == FgAb.of(2)
    ra, rb = representative(T, 1, a), representative(T, 1, b)
    stable = all(cup_classes(T, 1, 1, perturb(T, 1, ra, rng), perturb(T, 1, rb, rng)) == fund for _ in range(50))
    ok = cups and squares and rp and stable
    return ok, f"a.b=[T] {cups}, a.a=b.b=0 {squares}, RP2 H^2=Z/2 {rp}, 50 perturbations {stable}"


CHECKS: list[tuple[int, str, Callable[[int], tuple[bool, str]]]] = [
    (1, "pontrjagin-involution", check_pontrjagin),
    (2, "cyclic-group-cohomology-table", check_zp_table),
    (3, "weight-actions", check_weights),
    (4, "exterior-powers-vs-homology", check_lambda),
    (5, "k-complex", check_kcomplex),
    (6, "yoneda-homotopy-witnesses", check_witnesses),
    (7, "rhom-two-routes", check_rhom),
    (8, "extension-calculus", check_extensions),
    (9, "q-sequence-exactness", check_sequence),
    (10, "circle-bundle-uniqueness", check_uniqueness),
    (11, "hopf-cross-check", check_hopf),
    (12, "triples-and-picard-classes", check_triples),
    (13, "duality-sign-and-local-model", check_sign),
    (14, "simplicial-cup-products", check_simplicial),
]


def run_check(number: int, seed: int = 0) -> CheckResult:
    num, name, fn = CHECKS[number - 1]
    t0 = time.perf_counter()
    try:
        ok, detail = fn(seed)
    except Exception as e:  # a crash is a failed criterion, reported with its cause
        ok, detail = False, f"{type(e).__name__}: {e}"
    return CheckResult(num, name, bool(ok), detail, time.perf_counter() - t0)


def run_all(seed: int = 0) -> list[CheckResult]:
    return [run_check(k, seed) for k in range(1, len(CHECKS) + 1)]
