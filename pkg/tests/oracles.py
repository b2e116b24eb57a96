"""Independent reference implementations used only by the tests.

Nothing here imports the package: polynomials are plain dicts
{(e1, e2, e3): Fraction}, trees are nested tuples (label, t1, t2, t3).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product


# -- polynomials as dicts ----------------------------------------------------


def pmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (i1, i2, i3), x in a.items():
        for (j1, j2, j3), y in b.items():
            m = (i1 + j1, i2 + j2, i3 + j3)
            out[m] = out.get(m, 0) + x * y
    return {m: c for m, c in out.items() if c}


def padd(*ps: dict) -> dict:
    out: dict = {}
    for p in ps:
        for m, c in p.items():
            out[m] = out.get(m, 0) + c
    return {m: c for m, c in out.items() if c}


def pscale(p: dict, k) -> dict:
    return {m: c * k for m, c in p.items() if c * k}


def pprod(*ps: dict) -> dict:
    out = {(0, 0, 0): Fraction(1)}
    for p in ps:
        out = pmul(out, p)
    return out


def peval(p: dict, pt) -> Fraction:
    total = Fraction(0)
    for (e1, e2, e3), c in p.items():
        total += c * Fraction(pt[0]) ** e1 * Fraction(pt[1]) ** e2 * Fraction(pt[2]) ** e3
    return total


U1 = {(1, 0, 0): Fraction(1)}
U2 = {(0, 1, 0): Fraction(1)}
U3 = {(0, 0, 1): Fraction(1)}


def const(c) -> dict:
    return {(0, 0, 0): Fraction(c)} if c else {}


def complete_h(k: int) -> dict:
    return {(k - i, i, 0): Fraction(1) for i in range(k + 1)}


# -- CH2 product straight from the generator rule -----------------------------


def ch_generator(i: int, j: int) -> dict:
    lo = abs(j - i)
    top = (j + i - abs(j - i)) // 2
    return {lo + 2 * k: 1 for k in range(top + 1)}


def tau(i: int) -> int:
    return abs(i + 1) - 1


def tilde_generator(i: int, j: int) -> dict:
    if i == -1:
        return {}
    if i < -1:
        return {k: -c for k, c in tilde_generator(tau(i), j).items()}
    return {j - i + 2 * k: 1 for k in range(i + 1)}


def tilde_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for i, x in a.items():
        for j, y in b.items():
            for k, c in tilde_generator(i, j).items():
                out[k] = out.get(k, 0) + x * y * c
    return {k: c for k, c in out.items() if c}


# -- radius-value trees as tuples --------------------------------------------


def brute_trees(n: int) -> list:
    """RV_{n;2} as nested tuples, by direct construction."""
    if n == 0:
        return [2]
    prev = brute_trees(n - 1)
    out = []
    for t1, t2, t3 in product(prev, repeat=3):
        v1, v2, v3 = val(t1), val(t2), val(t3)
        w = tau(v2)
        for l in range(v1 + v3 - abs(w) - 2, v1 + v3 + abs(w) + 3):
            if l % 2 == 0 and abs(l - v1 - v3) <= w:
                out.append((l, t1, t2, t3))
    return out


def val(t) -> int:
    return t if isinstance(t, int) else t[0]


def height(t) -> int:
    return 0 if isinstance(t, int) else 1 + height(t[1])


def sign(t) -> int:
    if isinstance(t, int):
        return 1
    s = 1 if val(t[2]) + 1 > 0 else (-1 if val(t[2]) + 1 < 0 else 0)
    return s * sign(t[1]) * sign(t[2]) * sign(t[3])


def rho(r1, r2, x, y):
    return r1 + y if y >= -x + r2 - r1 else r2 - x


def ind(t) -> int:
    return val(t) - 2 ** (height(t) + 1)


def rad(t) -> int:
    if isinstance(t, int):
        return 0
    l, t1, t2, t3 = t
    r13 = rho(rad(t1), rad(t3), ind(t1), ind(t3))
    return rho(r13, tau(val(t2)), ind(t1) + ind(t3), l - val(t1) - val(t3))


def serialize(t) -> str:
    if isinstance(t, int):
        return str(t)
    return "(" + " ".join([str(t[0])] + [serialize(k) for k in t[1:]]) + ")"


# -- finite differences -------------------------------------------------------


def central_difference(f, x0, x1, h):
    """2x2 matrix of central differences of a pair-valued function."""
    def d(i, j):
        if j == 0:
            a, b = f(x0 + h, x1), f(x0 - h, x1)
        else:
            a, b = f(x0, x1 + h), f(x0, x1 - h)
        return (a[i] - b[i]) / (2 * h)

    return ((d(0, 0), d(0, 1)), (d(1, 0), d(1, 1)))
