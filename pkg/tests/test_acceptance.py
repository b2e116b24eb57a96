"""The ten acceptance criteria, one test each.

Every test asserts exact equality (or zero violations) plus the runtime
budget of its criterion.  A PASS/FAIL line per criterion is printed in the
terminal summary.
"""

import random
import time

import pytest

from nrs2bench import chrings as C
from nrs2bench import recurrences as R
from nrs2bench import trees as T
from nrs2bench.algebra import Poly3
from nrs2bench.nrs2 import CubicInput, errfrac_check
from nrs2bench.paths import check_product_lemma
from nrs2bench.suites import (
    grid_associativity, grid_kernel_action, grid_L_homomorphism,
    grid_shift_contraction, grid_U, grid_U_kernel, random_distinct_nonzero,
)

ONE_MINUTE = 60.0


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        if exc[0] is None:
            assert self.elapsed < self.seconds, f"took {self.elapsed:.1f} s, budget {self.seconds} s"


@pytest.fixture(scope="module")
def mrr6():
    return R.mrr_orbit(6, exact_through=4)


def test_criterion_01_base_cases():
    """criterion 1: level-0 closed forms of orr, mrr and mlcr (exact, < 1 s)"""
    with Budget(1.0):
        P = Poly3.parse
        t = R.orr_initial()
        assert t.e0 == P("(u1^2 + u1*u2 + u2^2)*u3")
        assert t.e1 == P("(u1 + u2)*u3*(u1 + u2 + u3)")
        assert t.em1 == P("u1*u2*(u1*u2 + u1*u3 + u2*u3)")
        m = R.mrr_initial()
        assert (m.e0, m.e1, m.em1) == (P("u1^2 + u1*u2 + u2^2"), P("u1 + u2"), P("1 + u3*(u1 + u2)"))
        lc = R.mlcr_initial()
        assert (lc.l0, lc.l1, lc.lm1) == (P("u1^2 + u1*u2 + u2^2"), P("u1 + u2"), P("u1 + u2"))


def test_criterion_02_degree_lemma():
    """criterion 2: u3-degrees of the mrr orbit, n = 0..5 (exact, seconds)"""
    with Budget(ONE_MINUTE):
        orbit = R.mrr_orbit(5, exact_through=4)
        for t in orbit:
            d0, d1, dm = t.degrees()
            assert (dm, d0, d1) == (2 * 3**t.n - 1, 2 * (3**t.n - 2**t.n), 2 * (3**t.n - 2**t.n)), t.n


def test_criterion_03_leading_coefficients(mrr6):
    """criterion 3: lead_of_mrr = mlcr orbit and err0(n,-1) = err0(n,1), n = 0..6 (exact, < 1 min)"""
    with Budget(ONE_MINUTE):
        mlcr = R.mlcr_orbit(6)
        for t, m in zip(mrr6, mlcr):
            assert R.lead_of_mrr(t) == m, t.n
            assert m.lm1 == m.l1, t.n
        assert len(mlcr) == 7


def test_criterion_04_nrs2_oracle():
    """criterion 4: errfrac identities, 20 random rational triples, n = 0..4 (exact, < 1 min)"""
    with Budget(ONE_MINUTE):
        rng = random.Random(20240)
        points = set()
        while len(points) < 20:
            points.add(random_distinct_nonzero(rng))
        for u in sorted(points):
            assert len(set(u)) == 3 and 0 not in u
            rows = errfrac_check(4, CubicInput(*u))
            assert [r.n for r in rows] == [0, 1, 2, 3, 4]
            for r in rows:
                assert r.ok0 is True and r.ok1 is True, (u, r)


def test_criterion_05_ring_identity_grids():
    """criterion 5: associativity, L homomorphism, kernel action, contraction and U identities (0 violations, < 1 min)"""
    with Budget(ONE_MINUTE):
        rng = random.Random(5)
        assert grid_associativity(12, rng) == []
        assert grid_L_homomorphism(12, rng) == []
        assert grid_kernel_action(12) == []
        assert grid_shift_contraction(12) == []
        assert grid_U(10) == []
        assert grid_U_kernel(8) == []


def test_criterion_06_centered_paths():
    """criterion 6: product-path lemma i-iv for r1, r2 <= 6 (0 violations, seconds)"""
    with Budget(10.0):
        for r1 in range(7):
            for r2 in range(7):
                assert check_product_lemma(r1, r2) == [], (r1, r2)


def test_criterion_07_bridge_identity():
    """criterion 7: embed(L(tilde-err(n,i))) = err0(n,i), n = 0..5 (exact, < 1 min)"""
    with Budget(ONE_MINUTE):
        tilde = C.tilde_err_orbit(5)
        mlcr = R.mlcr_orbit(5)
        for p, m in zip(tilde, mlcr):
            n = p.n
            assert C.embed(C.L_map(p.e0), 2 * 3**n) == m.l0, n
            assert C.embed(C.L_map(p.e1), 2 * 3**n - 1) == m.l1, n


@pytest.mark.slow
def test_criterion_08_signed_tree_sum():
    """criterion 8: L(signed tree sum) = L(tilde-err(n,0)), n = 0,1,2 exhaustive and n = 3 streamed (< 30 min)"""
    with Budget(30 * 60.0):
        tilde = C.tilde_err_orbit(3)
        for n, size in ((0, 1), (1, 3), (2, 135)):
            trees = list(T.enumerate_trees(n))
            assert len(trees) == size == len(set(trees))
            signed = T.e_by_trees(n)
            assert C.L_map(signed) == C.L_map(tilde[n].e0), n
        scan = T.scan_level(3)
        assert scan.count == 22179825
        assert C.L_map(scan.signed) == C.L_map(tilde[3].e0)


def test_criterion_09_coefficient_tables():
    """criterion 9: c_2k > 0, symmetry, unimodality, support and maximum, n = 0..6 (exact, < 1 min)"""
    with Budget(ONE_MINUTE):
        for n in range(7):
            e = T.e_by_transfer(n)
            c = dict(e.items())
            center, r = 2 ** (n + 1), 3**n - 2**n
            assert all(v > 0 for v in c.values()), n
            assert min(c) >= center - 2 * r and max(c) <= center + 2 * r, n
            assert max(c) == 2 * 3**n, n
            for i in range(r + 1):
                assert c.get(center - 2 * i, 0) == c.get(center + 2 * i, 0), (n, i)
                assert c.get(center - 2 * i, 0) >= c.get(center - 2 * i - 2, 0), (n, i)
            assert T.coeff_table(n).checks["positive"]
            assert C.canonicalize(e) == C.tilde_err_orbit(n)[n].e0


def test_criterion_10_partition():
    """criterion 10: build_partition covers RV+ by centered paths with properties i-iii, n = 0,1,2 (seconds)"""
    with Budget(10.0):
        for n in range(3):
            part = T.build_partition(n)
            plus = T.plus_set(n)
            assert len(part) == len(plus) == sum(p.radius + 1 for p in part.paths)
            assert T.check_partition(part, plus) == [], n
            for p in part.paths:
                assert p.radius % 2 == 0
                assert p.central.label == 2 ** (n + 1)
                for j, t in p.items():
                    assert T.ind(t) == j and T.rad(t) == p.radius
        # a broken partition is reported with a reproducible tree
        part = T.build_partition(2)
        broken = T.Partition(2, part.paths[1:])
        bad = T.check_partition(broken, T.plus_set(2))
        assert bad and bad[0]["tree"] is not None
        assert T.RvTree.parse(bad[0]["tree"]) in T.plus_set(2)
