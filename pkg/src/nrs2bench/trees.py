"""Radius-value trees.

A tree of height 0 is a single even label.  A tree of height n+1 is
(l, T1, T2, T3) with the T_i of height n and |l - val(T1) - val(T3)| <=
tau(val(T2)).  The workbench works inside RV_{n;2}, where every leaf is 2.

Serialization: leaves are bare labels, nodes are ``(l t1 t2 t3)``.
"""

from __future__ import annotations

import re
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .chrings import L_map, TildeChVec, ChVec, canonicalize, ht, index_convolution, sgn, tau
from .paths import CenteredPath, product_path, rho


class TreeError(ValueError):
    pass


class RvTree:
    __slots__ = ("label", "kids", "height", "sign", "_hash")

    def __init__(self, label: int, kids: tuple = ()):
        if label % 2:
            raise TreeError(f"odd label {label}")
        kids = tuple(kids)
        if kids:
            if len(kids) != 3:
                raise TreeError("a node has exactly three subtrees")
            t1, t2, t3 = kids
            if not (t1.height == t2.height == t3.height):
                raise TreeError("subtrees of unequal height")
            if abs(label - t1.label - t3.label) > tau(t2.label):
                raise TreeError(
                    f"label {label} outside {t1.label + t3.label} +/- {tau(t2.label)}"
                )
        self._init(label, kids)

    def _init(self, label, kids):
        self.label = label
        self.kids = kids
        if kids:
            t1, t2, t3 = kids
            self.height = t1.height + 1
            self.sign = sgn(t2.label + 1) * t1.sign * t2.sign * t3.sign
        else:
            self.height = 0
            self.sign = 1
        self._hash = None

    @classmethod
    def _trusted(cls, label, kids):
        t = cls.__new__(cls)
        t._init(label, kids)
        return t

    @property
    def val(self) -> int:
        return self.label

    @property
    def is_leaf(self) -> bool:
        return not self.kids

    @property
    def t1(self):
        return self.kids[0]

    @property
    def t2(self):
        return self.kids[1]

    @property
    def t3(self):
        return self.kids[2]

    def leaves(self) -> Iterator[int]:
        if not self.kids:
            yield self.label
        else:
            for k in self.kids:
                yield from k.leaves()

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, RvTree):
            return NotImplemented
        return self.label == other.label and self.kids == other.kids

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.label, self.kids))
        return self._hash

    def __str__(self):
        if not self.kids:
            return str(self.label)
        return "(" + " ".join([str(self.label)] + [str(k) for k in self.kids]) + ")"

    def __repr__(self):
        return f"RvTree<{self}>"

    @classmethod
    def parse(cls, text: str) -> "RvTree":
        tokens = re.findall(r"\(|\)|-?\d+", text)
        pos = 0

        def read():
            nonlocal pos
            if pos >= len(tokens):
                raise TreeError("unexpected end of tree text")
            tok = tokens[pos]
            pos += 1
            if tok == "(":
                label = int(tokens[pos])
                pos += 1
                kids = (read(), read(), read())
                if tokens[pos] != ")":
                    raise TreeError("expected ')'")
                pos += 1
                return cls(label, kids)
            if tok == ")":
                raise TreeError("unexpected ')'")
            return cls(int(tok))

        t = read()
        if pos != len(tokens):
            raise TreeError("trailing tokens after tree")
        return t


LEAF2 = RvTree(2)


def node(label: int, t1: RvTree, t2: RvTree, t3: RvTree) -> RvTree:
    return RvTree(label, (t1, t2, t3))


# ---------------------------------------------------------------------------
# enumeration


def _children(prev) -> Iterator[RvTree]:
    for t1 in prev:
        for t2 in prev:
            w = tau(t2.label)
            for t3 in prev:
                s = t1.label + t3.label
                kids = (t1, t2, t3)
                for l in range(s - w, s + w + 1, 2):
                    yield RvTree._trusted(l, kids)


@lru_cache(maxsize=None)
def rv_level(n: int) -> tuple[RvTree, ...]:
    """All of RV_{n;2}, materialised; intended for n <= 2."""
    if n < 0:
        raise ValueError("height must be non-negative")
    if n == 0:
        return (LEAF2,)
    return tuple(_children(rv_level(n - 1)))


def enumerate_trees(n: int) -> Iterator[RvTree]:
    """Stream RV_{n;2}, each tree once.

    Order: height 0 is the single leaf; height n+1 runs over (T1, T2, T3)
    lexicographically in the height-n order, then the root label ascending.
    Only height n-1 is held in memory.
    """
    if n == 0:
        yield LEAF2
        return
    yield from _children(rv_level(n - 1))


def count_trees(n: int) -> int:
    if n == 0:
        return 1
    prev = rv_level(n - 1)
    return len(prev) ** 2 * sum(tau(t.label) + 1 for t in prev)


# ---------------------------------------------------------------------------
# statistics


@dataclass(frozen=True)
class TreeStats:
    val: int
    ind: int
    rad: int
    sgn: int


def ind(t: RvTree) -> int:
    return t.label - 2 ** (t.height + 1)


# memo tables only below this height, so streaming a level keeps constant memory
_CACHE_HEIGHT = 2
_rad_memo: dict = {}
_plus_memo: dict = {}


def rad(t: RvTree) -> int:
    if not t.kids:
        return 0
    if t.height <= _CACHE_HEIGHT:
        r = _rad_memo.get(t)
        if r is None:
            r = _rad_memo[t] = _rad(t)
        return r
    return _rad(t)


def _rad(t: RvTree) -> int:
    t1, t2, t3 = t.kids
    r13 = pair_radius(t1, t3)
    offset = t.label - t1.label - t3.label
    return rho(r13, tau(t2.label), ind(t1) + ind(t3), offset)


def pair_radius(t1: RvTree, t3: RvTree) -> int:
    return rho(rad(t1), rad(t3), ind(t1), ind(t3))


def stats(t: RvTree, n: int) -> TreeStats:
    if t.height != n:
        raise TreeError(f"tree has height {t.height}, expected {n}")
    return TreeStats(t.label, ind(t), rad(t), t.sign)


def inv(t: RvTree) -> RvTree:
    if not t.kids:
        return t
    t1, t2, t3 = t.kids
    j = t.label - t1.label - t3.label
    i1, i3 = inv(t1), inv(t3)
    return RvTree(i1.label + i3.label - j, (i1, t2, i3))


def plus_condition(t2: RvTree, parent_height: int) -> bool:
    """Range-determiner condition val(T2) >= max(rad(T2) - 2^n, 0)."""
    return t2.label >= max(rad(t2) - 2**parent_height, 0)


def is_plus(t: RvTree) -> bool:
    if not t.kids:
        return True
    if t.height <= _CACHE_HEIGHT:
        r = _plus_memo.get(t)
        if r is None:
            r = _plus_memo[t] = _is_plus(t)
        return r
    return _is_plus(t)


def _is_plus(t: RvTree) -> bool:
    return all(is_plus(k) for k in t.kids) and plus_condition(t.t2, t.height)


# ---------------------------------------------------------------------------
# generating elements


def e_by_trees(n: int, positive_only: bool = False) -> TildeChVec:
    """sum sgn(T) h~_val(T) over RV_{n;2}, or sum h~_val(T) over RV+."""
    acc: dict[int, int] = defaultdict(int)
    for t in enumerate_trees(n):
        if positive_only:
            if is_plus(t):
                acc[t.label] += 1
        else:
            acc[t.label] += t.sign
    return TildeChVec(dict(acc))


@lru_cache(maxsize=None)
def e_by_transfer(n: int) -> TildeChVec:
    """E(n) from the tree recursion, without enumerating trees.

    Summing over (l, T1, T2, T3) gives E(n+1) = E(n) * (E(n) conv E(n)),
    where conv adds indices and the outer product is the tilde-CH2 product
    (its left factor supplies the signed range sum_l h~_l of each T2).
    """
    if n == 0:
        return ht(2)
    e = e_by_transfer(n - 1)
    return e * index_convolution(e, e)


# ---------------------------------------------------------------------------
# partition into centered paths


class PartitionError(AssertionError):
    def __init__(self, message: str, tree: RvTree | None = None, path_id: int | None = None):
        detail = message
        if tree is not None:
            detail += f"; tree={tree}"
        if path_id is not None:
            detail += f"; path={path_id}"
        super().__init__(detail)
        self.tree = tree
        self.path_id = path_id

    def counterexample(self) -> dict:
        return {
            "message": self.args[0],
            "tree": None if self.tree is None else str(self.tree),
            "path": self.path_id,
        }


@dataclass
class Partition:
    n: int
    paths: list[CenteredPath]
    where: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.where:
            for pid, p in enumerate(self.paths):
                for j, t in p.items():
                    if t in self.where:
                        raise PartitionError("tree lies on two paths", t, pid)
                    self.where[t] = (pid, j)

    def trees(self) -> Iterator[RvTree]:
        for p in self.paths:
            yield from p.vertices

    def __len__(self):
        return len(self.where)


def _next_partition(prev: Partition) -> Partition:
    N = prev.n
    pairs = [
        product_path(p1, p3, k)
        for p1 in prev.paths
        for p3 in prev.paths
        for k in range(min(p1.radius, p3.radius) + 1)
    ]
    determiners = [t for t in prev.trees() if plus_condition(t, N + 1)]
    out = []
    for q in pairs:
        for t2 in determiners:
            v = t2.label
            pt2 = CenteredPath.from_indexed(v, lambda j, t2=t2: (j, t2))
            for k in range(min(q.radius, v) + 1):
                pp = product_path(q, pt2, k)
                verts = tuple(
                    RvTree._trusted(t1.label + t3.label + j, (t1, t2, t3))
                    for (t1, t3), (j, _) in pp.vertices
                )
                out.append(CenteredPath(pp.radius, verts))
    return Partition(N + 1, out)


@lru_cache(maxsize=None)
def build_partition(n: int) -> Partition:
    """Paths_n: centered paths of trees covering RV+_{n;2}, built level by level."""
    if n == 0:
        return Partition(0, [CenteredPath(0, (LEAF2,))])
    return _next_partition(build_partition(n - 1))


def check_partition(part: Partition, reference: set | None = None) -> list[dict]:
    """Verify the partition properties; returns counterexamples (empty = pass).

    Checks: even radii, index = ind(T), rad(T) = path radius, central value
    2^(n+1), validity of every vertex tree, and (with ``reference``) that
    the vertex union is exactly the reference set.
    """
    n = part.n
    bad = []
    for pid, p in enumerate(part.paths):
        if p.radius % 2:
            bad.append(PartitionError("odd radius", None, pid).counterexample())
            continue
        if p.central.label != 2 ** (n + 1):
            bad.append(PartitionError("central value", p.central, pid).counterexample())
        for j, t in p.items():
            try:
                RvTree(t.label, t.kids)
            except TreeError as exc:
                bad.append(PartitionError(f"invalid tree: {exc}", t, pid).counterexample())
            if ind(t) != j:
                bad.append(PartitionError(f"index {j} != ind {ind(t)}", t, pid).counterexample())
            if rad(t) != p.radius:
                bad.append(
                    PartitionError(f"rad {rad(t)} != path radius {p.radius}", t, pid).counterexample()
                )
    if reference is not None:
        got = set(part.where)
        for t in sorted(reference - got, key=str)[:5]:
            bad.append(PartitionError("tree of RV+ not covered", t).counterexample())
        for t in sorted(got - reference, key=str)[:5]:
            bad.append(PartitionError("covered tree outside RV+", t).counterexample())
    return bad


def plus_set(n: int) -> set:
    return {t for t in enumerate_trees(n) if is_plus(t)}


# ---------------------------------------------------------------------------
# the pairing iota and the sign-reversing involution


class IotaError(ValueError):
    pass


def violates(t2: RvTree) -> bool:
    """t2 in RV+_N fails the condition for a range determiner at height N+1."""
    return not plus_condition(t2, t2.height + 1)


def iota(t2: RvTree, part: Partition) -> RvTree:
    """Partner of a violating range determiner on its path of Paths_N."""
    N = t2.height
    if part.n != N:
        raise IotaError(f"partition level {part.n} does not match height {N}")
    if t2 not in part.where:
        raise IotaError(f"{t2} is not in RV+_{N}")
    if not violates(t2):
        raise IotaError(f"{t2} satisfies the range-determiner condition")
    pid, j = part.where[t2]
    path = part.paths[pid]
    partner = -(2 ** (N + 2)) - j - 2
    if not path.has_index(partner):
        raise IotaError(f"partner index {partner} not on path {pid} (radius {path.radius})")
    return path[partner]


def iota_pairs(N: int) -> list[tuple[RvTree, RvTree]]:
    part = build_partition(N)
    return [(t, iota(t, part)) for t in part.trees() if violates(t)]


def _subtrees_at_depth(t: RvTree, depth: int, pos=()):
    if depth == 0:
        yield pos, t
        return
    for i, k in enumerate(t.kids):
        yield from _subtrees_at_depth(k, depth - 1, pos + (i,))


def _replace(t: RvTree, pos: tuple, new: RvTree) -> RvTree:
    if not pos:
        return new
    kids = list(t.kids)
    kids[pos[0]] = _replace(kids[pos[0]], pos[1:], new)
    return RvTree(t.label, tuple(kids))


def first_failing_subtree(t: RvTree):
    """(position, subtree) of the leftmost non-RV+ subtree of minimal height."""
    for height in range(1, t.height + 1):
        for pos, s in _subtrees_at_depth(t, t.height - height):
            if not is_plus(s):
                return pos, s
    return None


def sign_reversing_involution(t: RvTree) -> RvTree:
    """Swap the range determiner of the first failing subtree for its iota partner."""
    found = first_failing_subtree(t)
    if found is None:
        raise IotaError(f"{t} is in RV+")
    pos, s = found
    t1, t2, t3 = s.kids
    partner = iota(t2, build_partition(t2.height))
    return _replace(t, pos, RvTree(s.label, (t1, partner, t3)))


# ---------------------------------------------------------------------------
# aggregated (val, rad) statistics of RV+


def plus_statistics(n: int) -> Counter:
    """Counter {(val, rad): #trees} over RV+_{n;2}, from the rad recursion only."""
    cur = Counter({(2, 0): 1})
    for N in range(n):
        c = 2 ** (N + 1)
        pairs = Counter()
        for (v1, r1), a in cur.items():
            for (v3, r3), b in cur.items():
                x = v1 - c + v3 - c
                pairs[(rho(r1, r3, v1 - c, v3 - c), x)] += a * b
        det = Counter()
        for (v2, r2), a in cur.items():
            if v2 >= max(r2 - 2 ** (N + 1), 0):
                det[v2] += a
        nxt = Counter()
        for (R, x), a in pairs.items():
            for v2, b in det.items():
                ab = a * b
                for j in range(-v2, v2 + 1, 2):
                    nxt[(x + j + 2 ** (N + 2), rho(R, v2, x, j))] += ab
        cur = nxt
    return cur


def path_decomposition_defects(n: int, table: Counter | None = None) -> list[str]:
    """If RV+_n is a union of centered paths with ind = index and rad = radius,
    then for each radius r the counts at ind = -r..r (step 2) are equal and
    vanish elsewhere.  Returns the radii where this fails."""
    table = plus_statistics(n) if table is None else table
    center = 2 ** (n + 1)
    by_rad: dict[int, dict[int, int]] = defaultdict(dict)
    for (v, r), cnt in table.items():
        by_rad[r][v - center] = cnt
    bad = []
    for r, row in sorted(by_rad.items()):
        expected = set(range(-r, r + 1, 2))
        counts = {row.get(i, 0) for i in expected}
        if set(row) - expected or len(counts) != 1:
            bad.append(f"radius {r}: counts {sorted(row.items())}")
    return bad


def sum_from_statistics(table: Counter) -> TildeChVec:
    acc: dict[int, int] = defaultdict(int)
    for (v, _), c in table.items():
        acc[v] += c
    return TildeChVec(dict(acc))


def rv_prime_sum(table: Counter, threshold: int) -> ChVec:
    """sum h_val over trees of the table with val >= max(rad - threshold, 0)."""
    acc: dict[int, int] = defaultdict(int)
    for (v, r), c in table.items():
        if v >= max(r - threshold, 0):
            acc[v] += c
    return ChVec(dict(acc))


def sum_prime_readings(n: int) -> dict[str, bool]:
    """Which reading of RV' makes L(E(n)) = sum_{RV'} h_val hold.

    ``next_level``: T qualifies as a range determiner one level up,
    val >= max(rad - 2^(n+1), 0).  ``same_level``: the threshold 2^n.
    """
    table = plus_statistics(n)
    target = L_map(e_by_transfer(n))
    return {
        "next_level": rv_prime_sum(table, 2 ** (n + 1)) == target,
        "same_level": rv_prime_sum(table, 2**n) == target,
    }


# ---------------------------------------------------------------------------
# coefficient tables


@dataclass
class CoeffTable:
    n: int
    rows: list[tuple[int, int]]
    folded: list[tuple[int, int]]
    checks: dict[str, bool]
    defects: list[str]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "rows": [[k, str(c)] for k, c in self.rows],
            "folded": [[k, str(c)] for k, c in self.folded],
            "checks": dict(self.checks),
            "defects": list(self.defects),
        }


def coeff_table(n: int) -> CoeffTable:
    """Coefficients c_2k of E(n) with support, symmetry and positivity checks.

    E(n) is computed by the transfer recursion (unfolded, so negative
    indices appear from n = 2 on).  ``folded`` is the L-image in CH2.
    """
    e = e_by_transfer(n)
    rows = e.items()
    center = 2 ** (n + 1)
    r = 3**n - 2**n
    defects = []
    support = [k for k, _ in rows]
    coeff = dict(rows)

    lo_ok = bool(support) and support[0] >= center - 2 * r and support[-1] <= center + 2 * r
    if not lo_ok:
        defects.append(f"n={n}: support {support[:1]}..{support[-1:]} outside {center} +/- {2 * r}")
    max_ok = bool(support) and support[-1] == 2 * 3**n
    if not max_ok:
        defects.append(f"n={n}: maximum index {support[-1:]} != {2 * 3 ** n}")
    pos_ok = all(c > 0 for c in coeff.values())
    for k, c in rows:
        if c <= 0:
            defects.append(f"n={n}, 2k={k}: c={c} not positive")
    even_ok = all(k % 2 == 0 for k in support)
    contiguous = bool(support) and support == list(range(support[0], support[-1] + 1, 2))
    sym_ok = True
    mono_ok = True
    i = 0
    while center + 2 * i <= (support[-1] if support else center):
        a, b = coeff.get(center - 2 * i, 0), coeff.get(center + 2 * i, 0)
        if a != b:
            sym_ok = False
            defects.append(f"n={n}, i={i}: c({center - 2 * i})={a} != c({center + 2 * i})={b}")
        nxt = coeff.get(center - 2 * i - 2, 0)
        if a < nxt:
            mono_ok = False
            defects.append(f"n={n}, i={i}: c({center - 2 * i})={a} < c({center - 2 * i - 2})={nxt}")
        i += 1
    folded = L_map(e).items()
    checks = {
        "support_within_bounds": lo_ok,
        "maximum_value": max_ok,
        "positive": pos_ok,
        "even_support": even_ok,
        "contiguous_support": contiguous,
        "symmetric": sym_ok,
        "unimodal": mono_ok,
        "matches_tilde_recurrence": canonicalize(e) == _tilde_e0(n),
        "folded_positive": all(c > 0 for _, c in folded),
    }
    return CoeffTable(n, rows, folded, checks, defects)


@lru_cache(maxsize=None)
def _tilde_e0(n: int) -> TildeChVec:
    from .chrings import tilde_err_orbit

    return tilde_err_orbit(n)[n].e0


# ---------------------------------------------------------------------------
# one streaming pass over a level


@dataclass
class LevelScan:
    n: int
    count: int
    signed: TildeChVec
    positive: TildeChVec
    outside: list[RvTree]


def scan_level(n: int, progress=None, every: int = 2_000_000) -> LevelScan:
    """Signed sum, RV+ sum and the complement W_n in one pass, constant memory
    apart from W_n itself."""
    signed: dict[int, int] = defaultdict(int)
    positive: dict[int, int] = defaultdict(int)
    outside = []
    count = 0
    for t in enumerate_trees(n):
        count += 1
        signed[t.label] += t.sign
        if is_plus(t):
            positive[t.label] += 1
        else:
            outside.append(t)
        if progress is not None and count % every == 0:
            progress(count)
    return LevelScan(n, count, TildeChVec(dict(signed)), TildeChVec(dict(positive)), outside)


def involution_defects(outside: list[RvTree], limit: int = 5) -> list[dict]:
    """Check that the swap is a fixed-point-free, sign-reversing, value-preserving
    involution of W_n."""
    members = set(outside)
    bad = []
    for t in outside:
        try:
            s = sign_reversing_involution(t)
        except (IotaError, TreeError) as exc:
            bad.append({"tree": str(t), "message": str(exc)})
        else:
            msg = None
            if s not in members:
                msg = f"image {s} not in W"
            elif s == t:
                msg = "fixed point"
            elif s.sign != -t.sign:
                msg = f"sign not reversed (image {s})"
            elif s.label != t.label:
                msg = f"value changed (image {s})"
            elif sign_reversing_involution(s) != t:
                msg = f"not an involution (image {s})"
            if msg:
                bad.append({"tree": str(t), "message": msg})
        if len(bad) >= limit:
            break
    return bad
