"""The rings CH2 and tilde-CH2 on complete homogeneous symbols.

CH2 has basis h_i (i >= 0) with h_i h_j = sum_{k=0}^{min(i,j)} h_{|i-j|+2k}.
tilde-CH2 has basis h~_i for every integer i and the left-acting rule

    h~_i h~_j = 0                               if i = -1
              = sum_{k=0}^{i} h~_{j-i+2k}       if i >= 0
              = -h~_{tau(i)} h~_j               if i < -1

with tau(i) = |i+1| - 1.  Products are exact integer vectors.  The product
in tilde-CH2 is not commutative on vectors; only its image under L is.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass
from typing import Iterable, Mapping

from .algebra import Poly3, convolve


def tau(i: int) -> int:
    return abs(i + 1) - 1


def sgn(x: int) -> int:
    return (x > 0) - (x < 0)


class _Vec:
    __slots__ = ("_c", "_hash")
    symbol = "h"

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] | None = None):
        d: dict[int, int] = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else (coeffs or ())
        for i, c in items:
            if not isinstance(i, int) or not isinstance(c, int):
                raise TypeError("indices and coefficients must be integers")
            d[i] = d.get(i, 0) + c
        self._c = {i: c for i, c in d.items() if c}
        self._check()
        self._hash = None

    def _check(self):
        pass

    @classmethod
    def gen(cls, i: int, c: int = 1):
        return cls({i: c})

    @classmethod
    def _raw(cls, d: dict[int, int]):
        v = cls.__new__(cls)
        v._c = d
        v._hash = None
        v._check()
        return v

    def items(self):
        return sorted(self._c.items())

    def support(self) -> list[int]:
        return sorted(self._c)

    def __getitem__(self, i: int) -> int:
        return self._c.get(i, 0)

    def __len__(self):
        return len(self._c)

    def __bool__(self):
        return bool(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __eq__(self, other):
        if type(other) is type(self):
            return self._c == other._c
        if other == 0:
            return not self._c
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._c.items())))
        return self._hash

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        d = dict(self._c)
        for i, c in other._c.items():
            d[i] = d.get(i, 0) + c
        return type(self)._raw({i: c for i, c in d.items() if c})

    def __neg__(self):
        return type(self)._raw({i: -c for i, c in self._c.items()})

    def __sub__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self + (-other)

    def scale(self, k: int):
        if k == 0:
            return type(self)()
        return type(self)._raw({i: k * c for i, c in self._c.items()})

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for n, (i, c) in enumerate(self.items()):
            body = f"{abs(c)}*{self.symbol}[{i}]"
            if n == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"

    @classmethod
    def parse(cls, text: str):
        text = text.strip()
        if text == "0":
            return cls()
        pat = re.compile(r"([+-]?)\s*(\d+)\*" + re.escape(cls.symbol) + r"\[(-?\d+)\]")
        d = {}
        pos = 0
        for m in pat.finditer(text.replace(" ", "")):
            if m.start() != pos:
                raise ValueError(f"cannot parse vector at {text[pos:]!r}")
            c = int(m.group(2)) * (-1 if m.group(1) == "-" else 1)
            d[int(m.group(3))] = d.get(int(m.group(3)), 0) + c
            pos = m.end()
        if pos != len(text.replace(" ", "")):
            raise ValueError(f"cannot parse vector {text!r}")
        return cls(d)


class ChVec(_Vec):
    """Element of CH2 in the h-basis."""

    __slots__ = ()
    symbol = "h"

    def _check(self):
        if any(i < 0 for i in self._c):
            raise ValueError("CH2 indices must be non-negative")

    def __mul__(self, other):
        if isinstance(other, ChVec):
            return mul_ch(self, other)
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented


class TildeChVec(_Vec):
    """Element of tilde-CH2; indices range over all integers."""

    __slots__ = ()
    symbol = "h~"

    def __mul__(self, other):
        if isinstance(other, TildeChVec):
            return mul_tilde(self, other)
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def is_canonical(self) -> bool:
        return all(i >= 0 for i in self._c)


def h(i: int) -> ChVec:
    return ChVec.gen(i)


def ht(i: int) -> TildeChVec:
    return TildeChVec.gen(i)


# ---------------------------------------------------------------------------
# products


def mul_ch(a: ChVec, b: ChVec) -> ChVec:
    out: dict[int, int] = {}
    for i, x in a._c.items():
        for j, y in b._c.items():
            lo = abs(i - j)
            xy = x * y
            for k in range(min(i, j) + 1):
                idx = lo + 2 * k
                out[idx] = out.get(idx, 0) + xy
    return ChVec._raw({i: c for i, c in out.items() if c})


def generator_product(i: int, j: int) -> TildeChVec:
    """h~_i h~_j straight from the three-case rule."""
    if i == -1:
        return TildeChVec()
    if i >= 0:
        return TildeChVec({j - i + 2 * k: 1 for k in range(i + 1)})
    return -generator_product(tau(i), j)


def _fold_left(a: TildeChVec) -> dict[int, int]:
    # left factor rewritten on generators i >= 0 via the i = -1 and i < -1 cases
    acc: dict[int, int] = {}
    for i, c in a._c.items():
        if i == -1:
            continue
        if i >= 0:
            acc[i] = acc.get(i, 0) + c
        else:
            t = tau(i)
            acc[t] = acc.get(t, 0) - c
    return {i: c for i, c in acc.items() if c}


def mul_tilde(a: TildeChVec, b: TildeChVec) -> TildeChVec:
    """Bilinear extension of :func:`generator_product`.

    With the left factor folded onto generators i >= 0, h~_i acts on index
    sequences as convolution with the box kernel x^-i + x^-i+2 + ... + x^i.
    The summed kernel has coefficient sum_{i >= |m|, i = m mod 2} a_i at m,
    so the whole product is a single convolution.
    """
    acc = _fold_left(a)
    if not acc or not b:
        return TildeChVec()
    top = max(acc)
    suffix = [0] * (top + 3)
    for i in range(top, -1, -1):
        suffix[i] = acc.get(i, 0) + suffix[i + 2]
    kernel = [suffix[abs(m)] for m in range(-top, top + 1)]
    blo, bhi = min(b._c), max(b._c)
    seq = [b._c.get(j, 0) for j in range(blo, bhi + 1)]
    conv = convolve(kernel, seq)
    base = blo - top
    return TildeChVec._raw({base + k: c for k, c in enumerate(conv) if c})


def index_convolution(a: TildeChVec, b: TildeChVec) -> TildeChVec:
    """sum a_i b_j h~_{i+j}; equal to a*b - S_-1(a)*S_-1(b) on vectors."""
    if not a or not b:
        return TildeChVec()
    alo, ahi = min(a._c), max(a._c)
    blo, bhi = min(b._c), max(b._c)
    conv = convolve(
        [a._c.get(i, 0) for i in range(alo, ahi + 1)],
        [b._c.get(j, 0) for j in range(blo, bhi + 1)],
    )
    return TildeChVec._raw({alo + blo + k: c for k, c in enumerate(conv) if c})


# ---------------------------------------------------------------------------
# linear maps


def shift(k: int, v: TildeChVec) -> TildeChVec:
    return TildeChVec._raw({i + k: c for i, c in v._c.items()})


def L_map(v: TildeChVec) -> ChVec:
    out: dict[int, int] = {}
    for i, c in v._c.items():
        s = sgn(i + 1)
        if s:
            t = tau(i)
            out[t] = out.get(t, 0) + s * c
    return ChVec._raw({i: c for i, c in out.items() if c})


def lift(c: ChVec) -> TildeChVec:
    return TildeChVec._raw(dict(c._c))


def canonicalize(v: TildeChVec) -> TildeChVec:
    """Representative of v modulo Ker(L) with every index >= 0."""
    return lift(L_map(v))


def in_kernel(v: TildeChVec) -> bool:
    return canonicalize(v).is_zero()


def kernel_generators(bound: int) -> list[TildeChVec]:
    gens = [ht(-1)]
    gens.extend(ht(-i) + ht(i - 2) for i in range(2, bound + 1))
    return gens


def U_elem(a: int, b: int, c: int) -> TildeChVec:
    if a == 0:
        return TildeChVec()
    n = abs(a)
    s = sgn(a)
    out: dict[int, int] = {}
    for j in range(n):
        idx = c - b - n + 2 * j
        out[idx] = out.get(idx, 0) + s
    return TildeChVec(out)


# ---------------------------------------------------------------------------
# the tilde recurrences


@dataclass(frozen=True)
class ErrPairTilde:
    n: int
    e0: TildeChVec
    e1: TildeChVec


def tilde_err_initial() -> ErrPairTilde:
    return ErrPairTilde(0, ht(2), ht(1))


def tilde_err_step(p: ErrPairTilde, canonical: bool = True) -> ErrPairTilde:
    """Level n+1 from level n (right-hand sides read at level n)."""
    e0, e1 = p.e0, p.e1
    sq0 = e0 * e0
    n0 = (sq0 - e1 * e1) * e0
    n1 = (sq0.scale(2) - (ht(1) * e1) * e0) * e1
    if canonical:
        n0, n1 = canonicalize(n0), canonicalize(n1)
    return ErrPairTilde(p.n + 1, n0, n1)


def tilde_err_orbit(n_max: int, canonical: bool = True) -> list[ErrPairTilde]:
    out = [tilde_err_initial()]
    for _ in range(n_max):
        out.append(tilde_err_step(out[-1], canonical))
    return out


# ---------------------------------------------------------------------------
# polynomial realisation


def embed(c: ChVec, t: int) -> Poly3:
    """Polynomial in u1, u2 of total degree t represented by c.

    h_i stands for (u1 u2)^((t-i)/2) * sum_k u1^k u2^(i-k).
    """
    terms: dict[tuple[int, int, int], int] = {}
    for i, coef in c._c.items():
        if i > t or (t - i) % 2:
            raise ValueError(f"h_{i} cannot be placed in total degree {t}")
        p = (t - i) // 2
        for k in range(i + 1):
            m = (p + k, p + i - k, 0)
            terms[m] = terms.get(m, 0) + coef
    return Poly3(terms)


def coefficient_csv(rows: Iterable[tuple[int, int, int]], header=("n", "index", "coefficient")) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(r)
    return buf.getvalue()
