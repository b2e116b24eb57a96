"""Exact scalar and trivariate polynomial arithmetic in u1, u2, u3.

Scalars are :class:`fractions.Fraction`.  Polynomials are sparse maps from
exponent triples to rationals; the multiplication kernel is FLINT's
``fmpq_mpoly`` so that the NRS(2) recurrence orbits stay tractable.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Union

import flint

BigRational = Fraction

_CTX = flint.fmpq_mpoly_ctx.get(("u1", "u2", "u3"), "deglex")

Scalar = Union[int, Fraction]


_PARSE_CHARS = re.compile(r"[u0-9+\-*/^() \t]*")
_NAME = re.compile(r"[A-Za-z_]\w*")


class ZeroPolynomialError(ValueError):
    """Raised when a degree or leading coefficient of 0 is requested."""


class Monomial3(NamedTuple):
    e1: int = 0
    e2: int = 0
    e3: int = 0

    @property
    def degree(self) -> int:
        return self.e1 + self.e2 + self.e3

    def sort_key(self):
        # graded lex, u1 > u2 > u3; sorted() with reverse=True gives the print order
        return (self.degree, self.e1, self.e2, self.e3)


def _to_fmpq(c: Scalar) -> flint.fmpq:
    if isinstance(c, Fraction):
        return flint.fmpq(c.numerator, c.denominator)
    if isinstance(c, int):
        return flint.fmpq(c)
    if isinstance(c, flint.fmpq):
        return c
    raise TypeError(f"not an exact scalar: {c!r}")


def _to_fraction(c: flint.fmpq) -> Fraction:
    return Fraction(int(c.p), int(c.q))


def format_rational(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


class Poly3:
    """Immutable polynomial in u1, u2, u3 with rational coefficients."""

    __slots__ = ("_p",)

    def __init__(self, terms: Mapping[tuple, Scalar] | None = None, *, _raw=None):
        if _raw is not None:
            self._p = _raw
            return
        d = {}
        for mono, c in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != 3 or any(e < 0 for e in mono):
                raise ValueError(f"bad exponent triple {mono!r}")
            if c:
                d[mono] = _to_fmpq(c)
        self._p = _CTX.from_dict(d)

    # constructors -----------------------------------------------------
    @classmethod
    def constant(cls, c: Scalar) -> "Poly3":
        return cls({(0, 0, 0): c})

    @classmethod
    def monomial(cls, m: Iterable[int], c: Scalar = 1) -> "Poly3":
        return cls({tuple(m): c})

    @classmethod
    def gens(cls) -> tuple["Poly3", "Poly3", "Poly3"]:
        return tuple(cls(_raw=g) for g in _CTX.gens())

    @classmethod
    def parse(cls, text: str) -> "Poly3":
        """Inverse of ``str()``: ``'u1^2 - 3/2*u1*u3 + 1'``."""
        if not _PARSE_CHARS.fullmatch(text) or set(_NAME.findall(text)) - {"u1", "u2", "u3"}:
            raise ValueError(f"not a polynomial in u1, u2, u3: {text!r}")
        u1, u2, u3 = _CTX.gens()
        env = {"u1": u1, "u2": u2, "u3": u3, "fmpq": flint.fmpq}
        src = text.replace("^", "**")
        # rational literals p/q must not become float division
        src = re.sub(r"(\d+)/(\d+)", r"fmpq(\1,\2)", src)
        try:
            val = eval(src, {"__builtins__": {}}, env)  # noqa: S307 - input whitelisted above
        except (SyntaxError, TypeError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse polynomial {text!r}: {exc}") from None
        if not isinstance(val, flint.fmpq_mpoly):
            val = _CTX.from_dict({(0, 0, 0): flint.fmpq(val)} if val else {})
        return cls(_raw=val)

    # access -----------------------------------------------------------
    def terms(self) -> dict[Monomial3, Fraction]:
        return {Monomial3(*map(int, m)): _to_fraction(c) for m, c in self._p.to_dict().items()}

    def __len__(self) -> int:
        return len(self._p)

    def is_zero(self) -> bool:
        return self._p.is_zero()

    def __bool__(self) -> bool:
        return not self._p.is_zero()

    def total_degree(self) -> int:
        if self.is_zero():
            raise ZeroPolynomialError("degree of the zero polynomial")
        return self._p.total_degree()

    def is_homogeneous(self) -> bool:
        degs = {sum(m) for m in self._p.monoms()}
        return len(degs) <= 1

    # arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, Poly3):
            return other._p
        if isinstance(other, (int, Fraction)):
            return _to_fmpq(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Poly3(_raw=self._p + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Poly3(_raw=self._p - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Poly3(_raw=o - self._p)

    def __neg__(self):
        return Poly3(_raw=-self._p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Poly3(_raw=self._p * o)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        return Poly3(_raw=self._p**k)

    def __eq__(self, other):
        if isinstance(other, Poly3):
            return self._p == other._p
        if isinstance(other, (int, Fraction)):
            return self._p == _CTX.from_dict({(0, 0, 0): _to_fmpq(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._p.to_dict().items()))

    def divides_into(self, other: "Poly3") -> "Poly3 | None":
        """Exact quotient ``other / self`` or None when it does not divide."""
        if self.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        q, r = divmod(other._p, self._p)
        return Poly3(_raw=q) if r.is_zero() else None

    # u3 structure -----------------------------------------------------
    def deg_u3(self) -> int:
        if self.is_zero():
            raise ZeroPolynomialError("u3-degree of the zero polynomial")
        return self._p.degrees()[2]

    def u3_slice(self, k: int) -> "Poly3":
        """Coefficient of u3^k, a polynomial in u1, u2."""
        d = {(a, b, 0): c for (a, b, e), c in self._p.to_dict().items() if e == k}
        return Poly3(_raw=_CTX.from_dict(d))

    def lead_u3(self) -> "Poly3":
        return self.u3_slice(self.deg_u3())

    def top_u3(self, depth: int) -> "Poly3":
        """Keep only the terms whose u3-exponent is within ``depth`` of the top."""
        if self.is_zero():
            return self
        floor = self.deg_u3() - depth
        d = {m: c for m, c in self._p.to_dict().items() if m[2] >= floor}
        return Poly3(_raw=_CTX.from_dict(d))

    def truncate_below_u3(self, floor: int) -> "Poly3":
        d = {m: c for m, c in self._p.to_dict().items() if m[2] >= floor}
        return Poly3(_raw=_CTX.from_dict(d))

    def substitute_u3(self) -> "Poly3":
        u1, u2, u3 = _CTX.gens()
        return Poly3(_raw=self._p.compose(u1, u2, u1 * u2 * u3))

    def scale_by_monomial(self, m: Iterable[int]) -> "Poly3":
        m = tuple(m)
        if any(e < 0 for e in m):
            raise ValueError(f"bad exponent triple {m!r}")
        return Poly3(_raw=self._p * _CTX.from_dict({m: 1}))

    def swap_u1_u2(self) -> "Poly3":
        u1, u2, u3 = _CTX.gens()
        return Poly3(_raw=self._p.compose(u2, u1, u3))

    # evaluation and printing ------------------------------------------
    def eval(self, point: tuple[Scalar, Scalar, Scalar]) -> Fraction:
        x = [_to_fmpq(v) for v in point]
        return _to_fraction(self._p(*x))

    def sorted_terms(self) -> list[tuple[Monomial3, Fraction]]:
        return sorted(self.terms().items(), key=lambda kv: kv[0].sort_key(), reverse=True)

    def __str__(self) -> str:
        items = self.sorted_terms()
        if not items:
            return "0"
        out = []
        for i, (m, c) in enumerate(items):
            mono = "*".join(
                f"u{v + 1}" + (f"^{e}" if e > 1 else "") for v, e in enumerate(m) if e
            )
            mag = abs(c)
            if not mono:
                body = format_rational(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_rational(mag)}*{mono}"
            if i == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)

    def __repr__(self) -> str:
        return f"Poly3({str(self)!r})"


U1, U2, U3 = Poly3.gens()
ONE = Poly3.constant(1)
ZERO = Poly3()


# Functional aliases.
def add(p: Poly3, q: Poly3) -> Poly3:
    return p + q


def mul(p: Poly3, q: Poly3) -> Poly3:
    return p * q


def evaluate(p: Poly3, point) -> Fraction:
    return p.eval(point)


def deg_u3(p: Poly3) -> int:
    return p.deg_u3()


def lead_u3(p: Poly3) -> Poly3:
    return p.lead_u3()


def substitute_u3(p: Poly3) -> Poly3:
    return p.substitute_u3()


def scale_by_monomial(p: Poly3, m) -> Poly3:
    return p.scale_by_monomial(m)


# Integer sequence convolution -------------------------------------------

_DIRECT_CUTOFF = 24


def convolve(a: list[int], b: list[int]) -> list[int]:
    """Full linear convolution of two integer sequences.

    Long inputs go through Kronecker substitution: each sequence is packed
    into a single big integer with fixed-width signed slots and the product
    is unpacked slot by slot.  Exact for any coefficient sizes.
    """
    if not a or not b:
        return []
    if min(len(a), len(b)) <= _DIRECT_CUTOFF:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return out
    ma = max(abs(x) for x in a)
    mb = max(abs(y) for y in b)
    if ma == 0 or mb == 0:
        return [0] * (len(a) + len(b) - 1)
    bound = ma * mb * min(len(a), len(b))
    nbytes = (bound.bit_length() + 2 + 7) // 8
    width = 8 * nbytes
    A = _pack(a, nbytes)
    B = _pack(b, nbytes)
    n = len(a) + len(b) - 1
    prod = A * B
    half = 1 << (width - 1)
    bias = int.from_bytes((b"\x00" * (nbytes - 1) + b"\x80") * n, "little")
    raw = (prod + bias).to_bytes(n * nbytes, "little")
    return [
        int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half for i in range(n)
    ]


def _pack(seq: list[int], nbytes: int) -> int:
    pos = b"".join((x if x > 0 else 0).to_bytes(nbytes, "little") for x in seq)
    neg = b"".join((-x if x < 0 else 0).to_bytes(nbytes, "little") for x in seq)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")
