"""Verification suites.

Each suite is a function ``(Params) -> list[Check]``.  Suites run in the
fixed order of ``SUITES``; within a suite checks are emitted in a fixed
order too, so a report depends only on the parameters and the seed.
"""

from __future__ import annotations

import random
import sys
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable

from . import chrings as C
from . import paths as P
from . import recurrences as R
from . import trees as T
from .algebra import Poly3, ZeroPolynomialError
from .nrs2 import CubicInput, InputError, errfrac_check
from .report import FAIL, PASS, SKIP, Check, VerificationReport

MAX_COUNTEREXAMPLES = 5


@dataclass(frozen=True)
class Params:
    max_n: int = 6
    grid_bound: int = 12
    seed: int = 0
    deep: bool = False
    timing: bool = False

    def to_dict(self) -> dict:
        return asdict(self)


def _log(msg: str):
    print(msg, file=sys.stderr, flush=True)


class _Collector:
    def __init__(self, params: Params):
        self.params = params
        self.checks: list[Check] = []

    def run(self, cid: str, citation: str, fn: Callable[[], list | None]):
        """Run ``fn``; an empty list passes, a non-empty list of counterexamples
        fails, None skips.  Exceptions fail with their message."""
        t0 = time.perf_counter()
        try:
            bad = fn()
        except Exception as exc:  # any crash is a failed check, with its reason
            bad = [{"error": f"{type(exc).__name__}: {exc}"}]
        ms = int((time.perf_counter() - t0) * 1000) if self.params.timing else 0
        if bad is None:
            self.checks.append(Check(cid, citation, SKIP, None, ms))
        elif bad:
            self.checks.append(Check(cid, citation, FAIL, bad[:MAX_COUNTEREXAMPLES], ms))
        else:
            self.checks.append(Check(cid, citation, PASS, None, ms))


def _limited(items, limit=MAX_COUNTEREXAMPLES):
    out = []
    for x in items:
        out.append(x)
        if len(out) >= limit:
            break
    return out


# ---------------------------------------------------------------------------
# random inputs


def random_poly(rng: random.Random, terms: int = 4, max_exp: int = 3) -> Poly3:
    d = {}
    for _ in range(rng.randint(0, terms)):
        m = tuple(rng.randint(0, max_exp) for _ in range(3))
        d[m] = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    return Poly3(d)


def random_point(rng: random.Random) -> tuple[Fraction, Fraction, Fraction]:
    return tuple(Fraction(rng.randint(-20, 20), rng.randint(1, 7)) for _ in range(3))


def random_distinct_nonzero(rng: random.Random) -> tuple[Fraction, Fraction, Fraction]:
    while True:
        u = tuple(Fraction(rng.randint(-12, 12), rng.randint(1, 6)) for _ in range(3))
        if 0 not in u and len(set(u)) == 3:
            inp = CubicInput(*u)
            if inp.a1 != 0 and inp.a2 != 0:
                return u


def random_tilde(rng: random.Random, bound: int = 8, terms: int = 4) -> C.TildeChVec:
    return C.TildeChVec(
        {rng.randint(-bound, bound): rng.randint(-5, 5) for _ in range(rng.randint(0, terms))}
    )


def random_canonical(rng: random.Random, bound: int = 10, terms: int = 4) -> C.TildeChVec:
    return C.TildeChVec(
        {rng.randint(0, bound): rng.randint(-5, 5) for _ in range(rng.randint(0, terms))}
    )


# ---------------------------------------------------------------------------
# polynomial arithmetic and base cases


def suite_algebra(p: Params) -> list[Check]:
    col = _Collector(p)
    rng = random.Random(f"{p.seed}:algebra")

    def axioms():
        bad = []
        for _ in range(1000):
            a, b, c = random_poly(rng), random_poly(rng), random_poly(rng)
            if a * (b * c) != (a * b) * c:
                bad.append({"law": "associativity", "a": str(a), "b": str(b), "c": str(c)})
            if a * (b + c) != a * b + a * c:
                bad.append({"law": "distributivity", "a": str(a), "b": str(b), "c": str(c)})
            if a * b != b * a or a + b != b + a:
                bad.append({"law": "commutativity", "a": str(a), "b": str(b)})
            if len(bad) >= MAX_COUNTEREXAMPLES:
                break
        return bad

    def eval_hom():
        bad = []
        for _ in range(300):
            a, b, pt = random_poly(rng), random_poly(rng), random_point(rng)
            if (a * b).eval(pt) != a.eval(pt) * b.eval(pt) or (a + b).eval(pt) != a.eval(pt) + b.eval(pt):
                bad.append({"a": str(a), "b": str(b), "point": [str(x) for x in pt]})
        return bad

    def lead():
        bad = []
        for _ in range(300):
            a = random_poly(rng)
            if a.is_zero():
                continue
            rest = a.lead_u3() * Poly3.monomial((0, 0, a.deg_u3())) - a
            if not rest.is_zero() and rest.deg_u3() >= a.deg_u3():
                bad.append({"p": str(a)})
        try:
            Poly3().deg_u3()
            bad.append({"p": "0", "error": "degree of zero did not raise"})
        except ZeroPolynomialError:
            pass
        return bad

    col.run("poly.ring-axioms", "poly.ring-axioms", axioms)
    col.run("poly.eval-homomorphism", "poly.eval-homomorphism", eval_hom)
    col.run("poly.lead-u3", "poly.lead-u3", lead)
    col.run("orr.base-case", "orr.base-case", check_orr_base)
    col.run("mrr.base-case", "mrr.base-case", check_mrr_base)
    col.run("mlcr.base-case", "mlcr.base-case", check_mlcr_base)
    return col.checks


ORR_BASE = (
    "(u1^2 + u1*u2 + u2^2)*u3",
    "(u1 + u2)*u3*(u1 + u2 + u3)",
    "u1*u2*(u1*u2 + u1*u3 + u2*u3)",
)
MRR_BASE = ("u1^2 + u1*u2 + u2^2", "u1 + u2", "1 + u3*(u1 + u2)")
MLCR_BASE = ("u1^2 + u1*u2 + u2^2", "u1 + u2", "u1 + u2")


def _compare_base(got, texts):
    bad = []
    for name, g, text in zip(("0", "1", "-1"), got, texts):
        want = Poly3.parse(text)
        if g != want:
            bad.append({"component": name, "got": str(g), "expected": str(want)})
    return bad


def check_orr_base():
    return _compare_base(R.orr_initial().components(), ORR_BASE)


def check_mrr_base():
    return _compare_base(R.mrr_initial().components(), MRR_BASE)


def check_mlcr_base():
    return _compare_base(R.mlcr_initial().components(), MLCR_BASE)


# ---------------------------------------------------------------------------
# ring identities


def grid_associativity(bound: int, rng: random.Random | None = None, random_cases: int = 1000):
    bad = []
    rng_ = rng or random.Random(0)
    gens = [C.ht(i) for i in range(-bound, bound + 1)]
    for a in gens:
        for b in gens:
            ab = a * b
            for c in gens:
                if ab * c != a * (b * c):
                    bad.append({"ring": "tilde", "a": str(a), "b": str(b), "c": str(c)})
                    if len(bad) >= MAX_COUNTEREXAMPLES:
                        return bad
    hs = [C.h(i) for i in range(bound + 1)]
    for a in hs:
        for b in hs:
            ab = a * b
            for c in hs:
                if ab * c != a * (b * c):
                    bad.append({"ring": "CH2", "a": str(a), "b": str(b), "c": str(c)})
    for _ in range(random_cases):
        a, b, c = random_tilde(rng_), random_tilde(rng_), random_tilde(rng_)
        if (a * b) * c != a * (b * c):
            bad.append({"ring": "tilde", "a": str(a), "b": str(b), "c": str(c)})
        la, lb, lc = C.L_map(a), C.L_map(b), C.L_map(c)
        if (la * lb) * lc != la * (lb * lc):
            bad.append({"ring": "CH2", "a": str(la), "b": str(lb), "c": str(lc)})
    return bad


def grid_L_homomorphism(bound: int, rng: random.Random | None = None, random_cases: int = 1000):
    bad = []
    rng_ = rng or random.Random(0)
    pairs = [(C.ht(i), C.ht(j)) for i in range(-bound, bound + 1) for j in range(-bound, bound + 1)]
    pairs += [(random_tilde(rng_), random_tilde(rng_)) for _ in range(random_cases)]
    for a, b in pairs:
        if C.L_map(a * b) != C.L_map(a) * C.L_map(b):
            bad.append({"a": str(a), "b": str(b)})
            if len(bad) >= MAX_COUNTEREXAMPLES:
                break
    return bad


def grid_kernel_action(bound: int):
    bad = []
    for g in C.kernel_generators(bound):
        for j in range(-bound, bound + 1):
            prod = g * C.ht(j)
            if not prod.is_zero():
                bad.append({"kernel": str(g), "right": f"h~[{j}]", "product": str(prod)})
    return _limited(bad)


def grid_shift_contraction(bound: int):
    bad = []
    ht = C.ht
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            lhs = ht(a) * ht(b) - ht(a - 1) * ht(b - 1)
            if lhs != ht(a + b):
                bad.append({"identity": "shift-one", "a": a, "b": b, "lhs": str(lhs)})
            lhs2 = ht(a) * ht(b) - ht(a - 2) * ht(b)
            if lhs2 != ht(b + a) + ht(b - a):
                bad.append({"identity": "shift-two", "a": a, "b": b, "lhs": str(lhs2)})
            if len(bad) >= MAX_COUNTEREXAMPLES:
                return bad
    return bad


def grid_U(bound: int):
    bad = []
    ht, U = C.ht, C.U_elem
    r = range(-bound, bound + 1)
    for a in r:
        for b in r:
            for c in r:
                lhs = ht(a + b) * ht(c) - ht(b) * ht(a + c)
                if lhs != U(a, b, c):
                    bad.append({"identity": "even", "a": a, "b": b, "c": c, "lhs": str(lhs)})
                lhs2 = (ht(b + a) + ht(b - a)) * ht(c - 1) - ht(b) * ht(a + c - 1)
                if lhs2 != U(b + 1, a, c):
                    bad.append({"identity": "odd", "a": a, "b": b, "c": c, "lhs": str(lhs2)})
                if len(bad) >= MAX_COUNTEREXAMPLES:
                    return bad
    return bad


def grid_U_kernel(bound: int):
    bad = []
    U = C.U_elem
    r = range(-bound, bound + 1)
    for a in r:
        for b in r:
            if not C.in_kernel(U(a, b, b)):
                bad.append({"element": "U(a,b,b)", "a": a, "b": b})
            for c1 in r:
                for c2 in r:
                    if not C.in_kernel(U(a, b, c1) + U(a, c1 + c2 - b, c2)):
                        bad.append({"element": "U(a,b,c1)+U(a,c1+c2-b,c2)", "a": a, "b": b, "c1": c1, "c2": c2})
                        if len(bad) >= MAX_COUNTEREXAMPLES:
                            return bad
    return bad


def canonical_injectivity(rng: random.Random, cases: int = 1000):
    bad = []
    for _ in range(cases):
        v = random_canonical(rng)
        if C.canonicalize(v) != v:
            bad.append({"v": str(v), "canonical": str(C.canonicalize(v))})
        w = random_tilde(rng)
        cw = C.canonicalize(w)
        if not cw.is_canonical() or C.L_map(cw) != C.L_map(w):
            bad.append({"v": str(w), "canonical": str(cw)})
    return _limited(bad)


def grid_embed_product(bound: int):
    bad = []
    for i in range(bound + 1):
        for j in range(bound + 1):
            lhs = C.embed(C.h(i) * C.h(j), i + j)
            rhs = C.embed(C.h(i), i) * C.embed(C.h(j), j)
            if lhs != rhs:
                bad.append({"i": i, "j": j})
    return bad


def suite_rings(p: Params) -> list[Check]:
    col = _Collector(p)
    b = p.grid_bound
    rng = random.Random(f"{p.seed}:rings")
    col.run(f"ring.associativity.b{b}", "ring.associativity", lambda: grid_associativity(b, rng))
    col.run(f"ring.L-homomorphism.b{b}", "ring.L-homomorphism", lambda: grid_L_homomorphism(b, rng))
    col.run(f"ring.kernel-left-action.b{b}", "ring.kernel-left-action", lambda: grid_kernel_action(b))
    col.run(f"ring.shift-contraction.b{b}", "ring.shift-contraction", lambda: grid_shift_contraction(b))
    bu = min(b, 10)
    col.run(f"ring.U-identity.b{bu}", "ring.U-identity", lambda: grid_U(bu))
    bk = min(b, 8)
    col.run(f"ring.U-kernel.b{bk}", "ring.U-kernel", lambda: grid_U_kernel(bk))
    col.run("ring.canonical-injective", "ring.canonical-injective", lambda: canonical_injectivity(rng))
    be = min(b, 10)
    col.run(f"ring.embed-product.b{be}", "ring.embed-product", lambda: grid_embed_product(be))
    return col.checks


# ---------------------------------------------------------------------------
# centered paths


def suite_paths(p: Params) -> list[Check]:
    col = _Collector(p)

    def lemma():
        bad = []
        for r1 in range(7):
            for r2 in range(7):
                bad.extend({"r1": r1, "r2": r2, "violation": v} for v in P.check_product_lemma(r1, r2))
        return bad

    col.run("paths.product-lemma.r6", "paths.product-lemma", lemma)
    return col.checks


# ---------------------------------------------------------------------------
# recurrences


class _Orbits:
    """Orbits shared between suites of one verify run."""

    def __init__(self, max_n: int):
        self.max_n = max_n
        self._mrr = None
        self._mlcr = None
        self._tilde = None

    @property
    def mrr(self):
        if self._mrr is None:
            self._mrr = R.mrr_orbit(self.max_n, exact_through=min(self.max_n, 4))
        return self._mrr

    @property
    def mlcr(self):
        if self._mlcr is None:
            self._mlcr = R.mlcr_orbit(self.max_n)
        return self._mlcr

    @property
    def tilde(self):
        if self._tilde is None:
            self._tilde = C.tilde_err_orbit(self.max_n)
        return self._tilde


def check_degrees(orbit):
    bad = []
    for t in orbit:
        got = t.degrees()
        want = R.expected_u3_degrees(t.n)
        if got != want:
            bad.append({"n": t.n, "degrees": list(got), "expected": list(want)})
    return bad


def check_leads(orbit, mlcr):
    bad = []
    for t, m in zip(orbit, mlcr):
        lp = R.lead_of_mrr(t)
        for name, a, b in zip(("0", "1", "-1"), lp.components(), m.components()):
            if a != b:
                bad.append({"n": t.n, "component": name, "lead_terms": len(a), "mlcr_terms": len(b)})
    return bad


def check_reduced(mlcr):
    bad = []
    red = R.reduced_orbit(len(mlcr) - 1)
    for m, (r0, r1) in zip(mlcr, red):
        if m.lm1 != m.l1:
            bad.append({"n": m.n, "issue": "err0(n,-1) != err0(n,1)"})
        if (m.l0, m.l1) != (r0, r1):
            bad.append({"n": m.n, "issue": "reduced system disagrees"})
        if m.n:
            prev = mlcr[m.n - 1]
            if prev.lm1 == prev.l1:
                step = R.mlcr_step(R.LeadPair(prev.n, prev.l0, prev.l1, prev.l1))
                if step.lm1 != step.l1:
                    bad.append({"n": m.n, "issue": "mlcr_step does not keep lm1 = l1"})
    return bad


def check_homogeneity(mlcr):
    bad = []
    for m in mlcr:
        n = m.n
        for name, poly, deg in (("0", m.l0, 2 * 3**n), ("1", m.l1, 2 * 3**n - 1), ("-1", m.lm1, 2 * 3**n - 1)):
            if not poly.is_homogeneous() or poly.total_degree() != deg:
                bad.append({"n": n, "component": name, "issue": f"not homogeneous of degree {deg}"})
            if poly.swap_u1_u2() != poly:
                bad.append({"n": n, "component": name, "issue": "not symmetric in u1, u2"})
            if any(mono.e3 for mono in poly.terms()):
                bad.append({"n": n, "component": name, "issue": "depends on u3"})
    return bad


def check_bridge(tilde, mlcr):
    bad = []
    for pt, m in zip(tilde, mlcr):
        n = pt.n
        if C.embed(C.L_map(pt.e0), 2 * 3**n) != m.l0:
            bad.append({"n": n, "component": "0"})
        if C.embed(C.L_map(pt.e1), 2 * 3**n - 1) != m.l1:
            bad.append({"n": n, "component": "1"})
    return bad


def check_shift_equivalence(tilde):
    bad = []
    for pt in tilde:
        e = T.e_by_transfer(pt.n)
        if C.canonicalize(C.shift(-1, e)) != C.canonicalize(pt.e1):
            bad.append({"n": pt.n, "e1": str(pt.e1), "shifted": str(C.canonicalize(C.shift(-1, e)))})
    return bad


def suite_degree(p: Params, orbits: _Orbits) -> list[Check]:
    col = _Collector(p)
    col.run(f"mrr.u3-degree.n{p.max_n}", "mrr.u3-degree", lambda: check_degrees(orbits.mrr))
    return col.checks


def suite_mlcr(p: Params, orbits: _Orbits) -> list[Check]:
    col = _Collector(p)
    n = p.max_n
    col.run(f"mlcr.lead-consistency.n{n}", "mlcr.lead-consistency", lambda: check_leads(orbits.mrr, orbits.mlcr))
    col.run(f"mlcr.reduced-equivalence.n{n}", "mlcr.reduced-equivalence", lambda: check_reduced(orbits.mlcr))
    col.run(f"mlcr.homogeneity.n{n}", "mlcr.homogeneity", lambda: check_homogeneity(orbits.mlcr))
    return col.checks


def suite_bridge(p: Params, orbits: _Orbits) -> list[Check]:
    col = _Collector(p)
    n = p.max_n
    col.run(f"bridge.embed-L.n{n}", "bridge.embed-L", lambda: check_bridge(orbits.tilde, orbits.mlcr))
    col.run(f"tilde.shift-equivalence.n{n}", "tilde.shift-equivalence", lambda: check_shift_equivalence(orbits.tilde))
    return col.checks


ERRFRAC_POINTS = 20


def errfrac_points(seed: int, count: int = ERRFRAC_POINTS):
    rng = random.Random(f"{seed}:errfrac")
    pts = [(Fraction(1), Fraction(2), Fraction(3))]
    while len(pts) < count + 1:
        u = random_distinct_nonzero(rng)
        if u not in pts:
            pts.append(u)
    return pts


def check_errfrac(points, n_max: int):
    bad = []
    for u in points:
        try:
            rows = errfrac_check(n_max, CubicInput(*u))
        except InputError as exc:
            bad.append({"u": [str(x) for x in u], "error": str(exc)})
            continue
        for row in rows:
            if not row.ok:
                bad.append({"u": [str(x) for x in u], "n": row.n, "note": row.note,
                            "ok0": row.ok0, "ok1": row.ok1})
    return bad


def suite_errfrac(p: Params) -> list[Check]:
    col = _Collector(p)
    n = min(p.max_n, 4)
    pts = errfrac_points(p.seed)
    col.run(f"nrs2.errfrac.points{len(pts)}.n{n}", "nrs2.errfrac", lambda: check_errfrac(pts, n))
    return col.checks


def suite_pipeline(p: Params) -> list[Check]:
    col = _Collector(p)
    n_max = min(p.max_n, 2)
    levels = R.orr_to_mrr_diagnostic(n_max)
    for lv in levels:
        def chk(lv=lv):
            if lv.matches and lv.factor_is_expected_power:
                return []
            return [lv.to_dict()]
        col.run(f"pipeline.level{lv.n}.residual-power{lv.expected_power}", "pipeline.orr-to-mrr", chk)
    return col.checks


# ---------------------------------------------------------------------------
# trees


KNOWN_COUNTS = {0: 1, 1: 3, 2: 135, 3: 22179825}


def check_count(n: int):
    got = sum(1 for _ in T.enumerate_trees(n))
    bad = []
    if got != T.count_trees(n) or (n in KNOWN_COUNTS and got != KNOWN_COUNTS[n]):
        bad.append({"n": n, "enumerated": got, "formula": T.count_trees(n), "expected": KNOWN_COUNTS.get(n)})
    return bad


def check_inv(n: int):
    bad = []
    for t in T.enumerate_trees(n):
        i = T.inv(t)
        if T.inv(i) != t:
            bad.append({"tree": str(t), "issue": "Inv(Inv(T)) != T"})
        elif t.label + i.label != 2 ** (n + 2):
            bad.append({"tree": str(t), "issue": f"val sum {t.label + i.label}"})
        elif i.height != t.height or (t.kids and i.t2 != t.t2):
            bad.append({"tree": str(t), "issue": "height or range determiner changed"})
    return _limited(bad)


def check_signed_sum(n: int, tilde0):
    e = T.e_by_trees(n)
    bad = []
    if C.L_map(e) != C.L_map(tilde0):
        bad.append({"n": n, "tree_sum": str(e), "tilde_err": str(tilde0)})
    if e != T.e_by_transfer(n):
        bad.append({"n": n, "issue": "tree sum differs from the transfer recursion"})
    return bad


def check_positive_sum(n: int):
    signed, positive = T.e_by_trees(n), T.e_by_trees(n, positive_only=True)
    if signed != positive:
        return [{"n": n, "signed": str(signed), "positive": str(positive)}]
    return []


def check_partition(n: int):
    try:
        part = T.build_partition(n)
    except T.PartitionError as exc:
        return [exc.counterexample()]
    return T.check_partition(part, T.plus_set(n))


def check_iota(N: int):
    bad = []
    part = T.build_partition(N)
    for t2, partner in T.iota_pairs(N):
        if C.tau(partner.label) != C.tau(t2.label):
            bad.append({"tree": str(t2), "issue": "tau(val) changed"})
        if C.sgn(partner.label + 1) != -C.sgn(t2.label + 1):
            bad.append({"tree": str(t2), "issue": "sgn(val+1) not flipped"})
        if not T.violates(partner) or T.iota(partner, part) != t2:
            bad.append({"tree": str(t2), "issue": "iota is not an involution on violators"})
    return _limited(bad)


def w_sample(n: int, width: int = 3) -> list[T.RvTree]:
    """Trees of W_n whose first failing subtree is the root: violating range
    determiners under the first few RV+ outer pairs, all labels."""
    violators = [t for t in T.build_partition(n - 1).trees() if T.violates(t)]
    outer = [t for t in T.rv_level(n - 1) if T.is_plus(t)][:width]
    out = []
    for t1 in outer:
        for t3 in outer:
            for t2 in violators:
                s, w = t1.label + t3.label, C.tau(t2.label)
                out.extend(T.RvTree(l, (t1, t2, t3)) for l in range(s - w, s + w + 1, 2))
    return out



def suite_trees(p: Params, orbits: _Orbits) -> list[Check]:
    col = _Collector(p)
    top = min(p.max_n, 2)
    for n in range(top + 1):
        col.run(f"trees.count.n{n}", "trees.count", lambda n=n: check_count(n))
        col.run(f"trees.inv.n{n}", "trees.inv", lambda n=n: check_inv(n))
        col.run(f"trees.signed-sum.n{n}", "trees.signed-sum",
                lambda n=n: check_signed_sum(n, orbits.tilde[n].e0))
        col.run(f"trees.positive-sum.n{n}", "trees.positive-sum", lambda n=n: check_positive_sum(n))
        col.run(f"trees.partition.n{n}", "trees.partition", lambda n=n: check_partition(n))
        col.run(f"trees.iota.N{n}", "trees.iota", lambda n=n: check_iota(n))
    if p.max_n >= 3:
        col.run("trees.involution.n3.sample", "trees.involution",
                lambda: T.involution_defects(w_sample(3)))
    for n in range(min(p.max_n, 4) + 1):
        col.run(f"trees.path-statistics.n{n}", "trees.path-statistics", lambda n=n: _path_stats(n))
        col.run(f"trees.sum-prime.n{n}.next-level", "trees.sum-prime", lambda n=n: _sum_prime(n))
    if p.deep and p.max_n >= 3:
        _deep_level3(col, orbits)
    return col.checks


def _path_stats(n: int):
    table = T.plus_statistics(n)
    bad = [{"n": n, "defect": d} for d in T.path_decomposition_defects(n, table)]
    if T.sum_from_statistics(table) != T.e_by_transfer(n):
        bad.append({"n": n, "issue": "RV+ statistics do not sum to E(n)"})
    return bad


def _sum_prime(n: int):
    readings = T.sum_prime_readings(n)
    return [] if readings["next_level"] else [{"n": n, "readings": readings}]


def _deep_level3(col: _Collector, orbits: _Orbits):
    state = {}

    def scan():
        _log("deep: streaming RV_{3;2}")
        sc = T.scan_level(3, progress=lambda c: _log(f"deep: {c} trees"))
        state["scan"] = sc
        bad = []
        if sc.count != KNOWN_COUNTS[3]:
            bad.append({"n": 3, "count": sc.count})
        if C.L_map(sc.signed) != C.L_map(orbits.tilde[3].e0):
            bad.append({"n": 3, "issue": "L(signed sum) != L(tilde-err(3,0))"})
        return bad

    col.run("trees.signed-sum.n3.stream", "trees.signed-sum", scan)

    def positive():
        sc = state.get("scan")
        if sc is None:
            return None
        return [] if sc.positive == sc.signed else [{"n": 3, "issue": "signed != RV+ sum"}]

    def involution():
        sc = state.get("scan")
        if sc is None:
            return None
        return T.involution_defects(sc.outside)

    col.run("trees.positive-sum.n3.stream", "trees.positive-sum", positive)
    col.run("trees.involution.n3.full", "trees.involution", involution)


# ---------------------------------------------------------------------------
# coefficient tables


def check_coeffs(n: int):
    ct = T.coeff_table(n)
    bad = [{"n": n, "check": k} for k, v in ct.checks.items() if not v]
    bad.extend({"n": n, "defect": d} for d in ct.defects)
    return bad


def suite_coeffs(p: Params) -> list[Check]:
    col = _Collector(p)
    for n in range(p.max_n + 1):
        col.run(f"coeffs.positivity.n{n}", "coeffs.positivity", lambda n=n: check_coeffs(n))
    return col.checks


# ---------------------------------------------------------------------------


SUITES = (
    "algebra", "rings", "paths", "degree", "mlcr", "bridge",
    "errfrac", "pipeline", "trees", "coeffs",
)


def run_verify(p: Params, only: tuple[str, ...] | None = None) -> VerificationReport:
    if p.max_n < 0:
        raise ValueError("max_n must be non-negative")
    orbits = _Orbits(p.max_n)
    runners = {
        "algebra": lambda: suite_algebra(p),
        "rings": lambda: suite_rings(p),
        "paths": lambda: suite_paths(p),
        "degree": lambda: suite_degree(p, orbits),
        "mlcr": lambda: suite_mlcr(p, orbits),
        "bridge": lambda: suite_bridge(p, orbits),
        "errfrac": lambda: suite_errfrac(p),
        "pipeline": lambda: suite_pipeline(p),
        "trees": lambda: suite_trees(p, orbits),
        "coeffs": lambda: suite_coeffs(p),
    }
    report = VerificationReport("verify", p.to_dict())
    for name in SUITES:
        if only is not None and name not in only:
            continue
        report.checks.extend(runners[name]())
    return report
