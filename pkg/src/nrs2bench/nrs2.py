"""NRS(2) on a cubic with exact rational parameters.

f(z) = (1 - u1 z)(1 - u2 z)(1 - u3 z) = a0 + a1 z + a2 z^2 + a3 z^3, a0 = 1.
The iteration starts at (-a1/a2, -a1/a2) and applies a Newton step to the
degree-3 auxiliary functions f0, f1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .recurrences import errfrac_values


class InputError(ValueError):
    pass


class SingularJacobianError(ArithmeticError):
    def __init__(self, n: int, state: "IterState"):
        super().__init__(f"singular Jacobian at iteration {n}: ({state.c0}, {state.c1})")
        self.n = n
        self.state = state


@dataclass(frozen=True)
class CubicInput:
    u1: Fraction
    u2: Fraction
    u3: Fraction

    def __post_init__(self):
        for name in ("u1", "u2", "u3"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @property
    def a0(self) -> Fraction:
        return Fraction(1)

    @property
    def a1(self) -> Fraction:
        return -(self.u1 + self.u2 + self.u3)

    @property
    def a2(self) -> Fraction:
        return self.u1 * self.u2 + self.u1 * self.u3 + self.u2 * self.u3

    @property
    def a3(self) -> Fraction:
        return -self.u1 * self.u2 * self.u3

    @property
    def point(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.u1, self.u2, self.u3)

    def check(self):
        if self.a1 == 0:
            raise InputError("a1 = 0: auxiliary function f0 is undefined")
        if self.a2 == 0:
            raise InputError("a2 = 0: auxiliary functions are undefined")


@dataclass(frozen=True)
class IterState:
    n: int
    c0: Fraction
    c1: Fraction


def start_state(inp: CubicInput) -> IterState:
    inp.check()
    c = -inp.a1 / inp.a2
    return IterState(0, c, c)


def aux_f(state, inp: CubicInput) -> tuple[Fraction, Fraction]:
    """(f0, f1) at (x0, x1); ``state`` is an IterState or a pair."""
    inp.check()
    x0, x1 = _xy(state)
    a0, a1, a2, a3 = inp.a0, inp.a1, inp.a2, inp.a3
    f0 = x0 + a1 / a2 + x0 * x0 * a3 / a2 + x1 * a0 * a3 / (a1 * a2)
    f1 = x1 + a1 / a2 + x0 * x1 * a3 / a2
    return f0, f1


def jacobian(state, inp: CubicInput) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
    inp.check()
    x0, x1 = _xy(state)
    a0, a1, a2, a3 = inp.a0, inp.a1, inp.a2, inp.a3
    k = a3 / a2
    return ((1 + 2 * x0 * k, a0 * a3 / (a1 * a2)), (x1 * k, 1 + x0 * k))


def step(state: IterState, inp: CubicInput) -> IterState:
    f0, f1 = aux_f(state, inp)
    (a, b), (c, d) = jacobian(state, inp)
    det = a * d - b * c
    if det == 0:
        raise SingularJacobianError(state.n, state)
    d0 = (d * f0 - b * f1) / det
    d1 = (a * f1 - c * f0) / det
    return IterState(state.n + 1, state.c0 - d0, state.c1 - d1)


def run(inp: CubicInput, steps: int) -> list[IterState]:
    out = [start_state(inp)]
    for _ in range(steps):
        out.append(step(out[-1], inp))
    return out


def _xy(state):
    if isinstance(state, IterState):
        return Fraction(state.c0), Fraction(state.c1)
    x0, x1 = state
    return Fraction(x0), Fraction(x1)


@dataclass
class ErrfracRow:
    n: int
    c0: Fraction | None
    c1: Fraction | None
    frac0: Fraction | None
    frac1: Fraction | None
    ok0: bool | None
    ok1: bool | None
    note: str = ""

    @property
    def ok(self) -> bool:
        return bool(self.ok0) and bool(self.ok1)


def errfrac_check(n_max: int, inp: CubicInput) -> list[ErrfracRow]:
    """Compare the iteration with the error fractions of the original relations.

    For each n the identities checked are
        err(n,0)/err(n,-1) = (u1+u2)/(u1 u2) - c(n,0)
        err(n,1)/err(n,-1) = (u1+u2+u3)/(u1 u2) - c(n,1)
    with err evaluated exactly at the parameter point.  Vanishing
    denominators and singular steps are recorded per level.
    """
    u1, u2, u3 = inp.point
    if u1 * u2 == 0:
        raise InputError("u1*u2 = 0")
    errs = errfrac_values(n_max, inp.point)
    rows = []
    try:
        states = run(inp, n_max)
        failure = ""
    except SingularJacobianError as exc:
        states = run(inp, exc.n)
        failure = str(exc)
    base0 = (u1 + u2) / (u1 * u2)
    base1 = (u1 + u2 + u3) / (u1 * u2)
    for t in errs:
        if t.n >= len(states):
            rows.append(ErrfracRow(t.n, None, None, None, None, None, None, failure))
            continue
        st = states[t.n]
        if t.em1 == 0:
            rows.append(ErrfracRow(t.n, st.c0, st.c1, None, None, None, None, "err(n,-1) vanishes"))
            continue
        q0, q1 = t.e0 / t.em1, t.e1 / t.em1
        rows.append(ErrfracRow(t.n, st.c0, st.c1, q0, q1, q0 == base0 - st.c0, q1 == base1 - st.c1))
    return rows
