"""Error-term recurrences for NRS(2) on a cubic.

Three systems live here:

* the original relations on ``err(n, i)``, written over any commutative
  ring (``Poly3`` for symbolic orbits, ``Fraction`` for evaluation at a
  parameter point);
* the modified relations on ``err'(n, i)`` obtained after the change of
  variables, with an optional *top window* mode that keeps only the highest
  u3-slices exactly;
* the u3-leading-coefficient relations on ``err0(n, i)`` and their reduced
  two-component form.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .algebra import ONE, U1, U2, U3, Poly3, ZeroPolynomialError


class WindowExhaustedError(ArithmeticError):
    """A truncated orbit cancelled through its whole exact window."""


# ---------------------------------------------------------------------------
# original relations


@dataclass(frozen=True)
class ErrTriple:
    n: int
    e0: Any
    e1: Any
    em1: Any

    def components(self):
        return (self.e0, self.e1, self.em1)


def orr_initial(u=(U1, U2, U3)) -> ErrTriple:
    u1, u2, u3 = u
    return ErrTriple(
        0,
        (u1 * u1 + u1 * u2 + u2 * u2) * u3,
        (u1 + u2) * u3 * (u1 + u2 + u3),
        u1 * u2 * (u1 * u2 + u1 * u3 + u2 * u3),
    )


def orr_step(t: ErrTriple, u=(U1, U2, U3)) -> ErrTriple:
    u1, u2, u3 = u
    e0, e1, em = t.e0, t.e1, t.em1
    s = u1 + u2 + u3
    x = u1 * u2
    e00 = e0 * e0
    ne0 = -x * u3 * u3 * e0 * em * e1 + x * u3 * s * e00 * em + x * u3 * u3 * s * e00 * e0
    ne1 = (
        u3 * s * (x - u1 * u3 - u2 * u3) * e0 * e1 * em
        + u3 * u3 * s * s * e00 * em
        + x * u3 * u3 * s * e00 * e1
    )
    nem = em * (
        (u1 - u3) * (u2 - u3) * s * em * em
        - x * u3 * u3 * e1 * em
        + u3 * s * (3 * x - u1 * u3 - u2 * u3) * e0 * em
        + 2 * x * u3 * u3 * s * e00
    )
    return ErrTriple(t.n + 1, ne0, ne1, nem)


def orr_orbit(n_max: int, u=(U1, U2, U3)) -> list[ErrTriple]:
    out = [orr_initial(u)]
    for _ in range(n_max):
        out.append(orr_step(out[-1], u))
    return out


# ---------------------------------------------------------------------------
# modified relations


@dataclass(frozen=True)
class ModErrTriple:
    """Level-n triple (err'(n,0), err'(n,1), err'(n,-1)).

    ``window`` is None for exact polynomials.  An integer w means every
    component is exact only on its u3-slices of degree ``deg - w .. deg``;
    lower terms have been discarded.
    """

    n: int
    e0: Poly3
    e1: Poly3
    em1: Poly3
    window: int | None = None

    def components(self):
        return (self.e0, self.e1, self.em1)

    def degrees(self) -> tuple[int, int, int]:
        return tuple(p.deg_u3() for p in self.components())


def mrr_initial() -> ModErrTriple:
    return ModErrTriple(0, U1 * U1 + U1 * U2 + U2 * U2, U1 + U2, 1 + U3 * (U1 + U2))


def _u3(k: int) -> Poly3:
    return Poly3.monomial((0, 0, k))


def mrr_step(t: ModErrTriple) -> ModErrTriple:
    if t.window is not None:
        return _mrr_step_window(t)
    e0, e1, em = t.components()
    s = 2 ** (t.n + 1)
    us, us1, u2s = _u3(s), _u3(s + 1), _u3(2 * s)
    x = U1 * U2
    h1 = U1 + U2
    c = e0 * e0
    ne0 = e0 * (em * (e0 - e1 * x * U3) + c * us)
    ne1 = e0 * (em * (e1 + e0 * U3 - e1 * h1 * U3) + e0 * e1 * us)
    inner = em * (1 - h1 * U3 + x * U3 * U3) + e0 * (3 * us - h1 * us1) - e1 * x * us1
    nem = em * (em * inner + 2 * c * u2s)
    return ModErrTriple(t.n + 1, ne0, ne1, nem)


# Each modified rule as a list of summands (coefficient poly, u3 shift, factors);
# factors index (e0, e1, em1).  Used only by the windowed step, where every
# summand's naive u3-degree must be known.
def _mrr_summands(n: int):
    s = 2 ** (n + 1)
    x = U1 * U2
    h1 = U1 + U2
    E0, E1, EM = 0, 1, 2
    rule0 = [
        (ONE, 0, (E0, EM, E0)),
        (-x, 1, (E0, EM, E1)),
        (ONE, s, (E0, E0, E0)),
    ]
    rule1 = [
        (ONE, 0, (E0, EM, E1)),
        (ONE, 1, (E0, EM, E0)),
        (-h1, 1, (E0, EM, E1)),
        (ONE, s, (E0, E0, E1)),
    ]
    rulem = [
        (ONE, 0, (EM, EM, EM)),
        (-h1, 1, (EM, EM, EM)),
        (x, 2, (EM, EM, EM)),
        (Poly3.constant(3), s, (EM, EM, E0)),
        (Poly3.constant(2), 2 * s, (EM, E0, E0)),
        (-h1, s + 1, (EM, EM, E0)),
        (-x, s + 1, (EM, EM, E1)),
    ]
    return rule0, rule1, rulem


def _mrr_step_window(t: ModErrTriple) -> ModErrTriple:
    w = t.window
    comps = t.components()
    degs = t.degrees()
    new_comps, new_windows = [], []
    for rule in _mrr_summands(t.n):
        naive = [shift + sum(degs[f] for f in fs) for _, shift, fs in rule]
        top = max(naive)
        floor = top - w
        acc = Poly3()
        for (coef, shift, fs), d in zip(rule, naive):
            if d < floor:
                continue
            term = coef * _u3(shift)
            for f in fs:
                term = term * comps[f]
            acc = acc + term.truncate_below_u3(floor)
        acc = acc.truncate_below_u3(floor)
        if acc.is_zero():
            raise WindowExhaustedError(
                f"level {t.n + 1}: all u3-slices in [{floor}, {top}] cancelled"
            )
        new_comps.append(acc)
        new_windows.append(w - (top - acc.deg_u3()))
    nw = min(new_windows)
    if nw < 0:
        raise WindowExhaustedError(f"level {t.n + 1}: window exhausted")
    e0, e1, em = (p.top_u3(nw) for p in new_comps)
    return ModErrTriple(t.n + 1, e0, e1, em, window=nw)


def truncate_window(t: ModErrTriple, window: int) -> ModErrTriple:
    if t.window is not None and t.window < window:
        raise ValueError("cannot widen a truncated window")
    return ModErrTriple(t.n, *(p.top_u3(window) for p in t.components()), window=window)


def mrr_orbit(n_max: int, exact_through: int | None = None, window: int = 2) -> list[ModErrTriple]:
    """Modified-relation orbit for levels 0..n_max.

    Levels up to ``exact_through`` are full polynomials; later levels are
    computed on a top window of the given depth, which still determines the
    u3-degree and the u3-leading coefficient exactly.
    """
    if exact_through is None:
        exact_through = n_max
    out = [mrr_initial()]
    for n in range(n_max):
        cur = out[-1]
        if cur.window is None and n >= exact_through:
            cur = truncate_window(cur, window)
        out.append(mrr_step(cur))
    return out


def expected_u3_degrees(n: int) -> tuple[int, int, int]:
    """(deg err'(n,0), deg err'(n,1), deg err'(n,-1)) claimed by the degree lemma."""
    d = 2 * (3**n - 2**n)
    return (d, d, 2 * 3**n - 1)


# ---------------------------------------------------------------------------
# leading coefficients


@dataclass(frozen=True)
class LeadPair:
    n: int
    l0: Poly3
    l1: Poly3
    lm1: Poly3

    def components(self):
        return (self.l0, self.l1, self.lm1)


def mlcr_initial() -> LeadPair:
    return LeadPair(0, U1 * U1 + U1 * U2 + U2 * U2, U1 + U2, U1 + U2)


def mlcr_step(t: LeadPair) -> LeadPair:
    l0, l1, lm = t.components()
    x = U1 * U2
    h1 = U1 + U2
    n0 = (l0 * l0 - x * lm * l1) * l0
    n1 = l0 * l0 * (lm + l1) - h1 * lm * l1 * l0
    nm = lm * (x * (lm * lm - lm * l1) + 2 * l0 * l0 - h1 * l0 * lm)
    return LeadPair(t.n + 1, n0, n1, nm)


def reduced_step(l0: Poly3, l1: Poly3) -> tuple[Poly3, Poly3]:
    x = U1 * U2
    h1 = U1 + U2
    sq = l0 * l0
    return (sq - x * l1 * l1) * l0, (2 * sq - h1 * l1 * l0) * l1


def mlcr_orbit(n_max: int) -> list[LeadPair]:
    out = [mlcr_initial()]
    for _ in range(n_max):
        out.append(mlcr_step(out[-1]))
    return out


def reduced_orbit(n_max: int) -> list[tuple[Poly3, Poly3]]:
    l0, l1 = U1 * U1 + U1 * U2 + U2 * U2, U1 + U2
    out = [(l0, l1)]
    for _ in range(n_max):
        l0, l1 = reduced_step(l0, l1)
        out.append((l0, l1))
    return out


def lead_of_mrr(t: ModErrTriple) -> LeadPair:
    try:
        return LeadPair(t.n, *(p.lead_u3() for p in t.components()))
    except ZeroPolynomialError as exc:
        raise ZeroPolynomialError(f"level {t.n}: zero component") from exc


def err0_csv(pairs: list[LeadPair]) -> str:
    """Coefficient table with columns n, component, e1, e2, coefficient."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "component", "e1", "e2", "coefficient"])
    for lp in pairs:
        for name, p in (("0", lp.l0), ("1", lp.l1), ("-1", lp.lm1)):
            for m, c in p.sorted_terms():
                w.writerow([lp.n, name, m.e1, m.e2, c])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# change-of-variables pipeline, as a diagnostic


@dataclass
class PipelineLevel:
    n: int
    e1_divisible: bool
    rescale_exact: bool
    matches: bool
    common_factor: str | None
    factor_is_expected_power: bool
    expected_power: int
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "e1_divisible_by_sum": self.e1_divisible,
            "rescale_exact": self.rescale_exact,
            "projectively_equal": self.matches,
            "residual_factor": self.common_factor,
            "residual_is_expected_power": self.factor_is_expected_power,
            "expected_power": self.expected_power,
            "notes": list(self.notes),
        }


def transform_orr_level(t: ErrTriple) -> tuple[list[Poly3 | None], list[str]]:
    """Apply the change of variables to one original-relation level.

    Returns the three transformed components (None where a stated division
    was not exact) and notes describing every failed division.
    """
    n = t.n
    notes = []
    s = U1 + U2 + U3
    e1 = s.divides_into(t.e1)
    if e1 is None:
        notes.append("err(n,1) not divisible by u1+u2+u3")
    k_e = (5 * 3**n - 3) // 2
    k_m = (5 * 3**n - 1) // 2
    j = 2 ** (n + 1) - 1
    comps = []
    for p, k, jj in ((t.e0, k_e, j), (e1, k_e, j), (t.em1, k_m, 0)):
        if p is None:
            comps.append(None)
            continue
        q = Poly3.monomial((k, k, jj)).divides_into(p.substitute_u3())
        if q is None:
            notes.append(f"rescaling by (u1u2)^{k} u3^{jj} not exact")
        comps.append(q)
    return comps, notes


def orr_to_mrr_diagnostic(n_max: int) -> list[PipelineLevel]:
    """Compare the transformed original orbit with the modified orbit.

    The two orbits are expected to agree projectively: the common factors
    of (u1+u2+u3) that the fractions cancel are not removed from the
    original orbit, so level n keeps a residual T(u1+u2+u3)^m(n) with
    m(0) = 0, m(n+1) = 3 m(n) + 1, where T is u3 -> u1*u2*u3.  The residual
    is recorded rather than assumed.
    """
    orr = orr_orbit(n_max)
    mrr = mrr_orbit(n_max)
    ts = (U1 + U2 + U3).substitute_u3()
    m = 0
    out = []
    for t, mt in zip(orr, mrr):
        comps, notes = transform_orr_level(t)
        e1_ok = not any("divisible" in s for s in notes)
        exact = all(c is not None for c in comps)
        matches = False
        factor = None
        is_power = False
        if exact:
            ratios = [mp.divides_into(c) for c, mp in zip(comps, mt.components())]
            if all(r is not None for r in ratios) and ratios[0] == ratios[1] == ratios[2]:
                matches = True
                factor = ratios[0]
                is_power = factor == ts**m
            else:
                notes.append("transformed triple is not a common multiple of the modified triple")
        out.append(
            PipelineLevel(
                t.n, e1_ok, exact, matches,
                None if factor is None else str(factor),
                is_power, m, notes,
            )
        )
        m = 3 * m + 1
    return out


def errfrac_values(n_max: int, u: tuple[Fraction, Fraction, Fraction]) -> list[ErrTriple]:
    """Original-relation orbit evaluated at a rational point."""
    return orr_orbit(n_max, tuple(Fraction(v) for v in u))
