"""Verification reports: checks, citation registry and renderers."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any

PASS, FAIL, SKIP = "pass", "fail", "skip"

# Every check cites exactly one entry of this registry.
CITATIONS: dict[str, str] = {
    "poly.ring-axioms": "polynomial ring axioms on random triples",
    "poly.eval-homomorphism": "evaluation is a ring homomorphism",
    "poly.lead-u3": "leading u3 coefficient strictly lowers the u3 degree",
    "orr.base-case": "closed forms of the original relations at level 0",
    "mrr.base-case": "closed forms of the modified relations at level 0",
    "mlcr.base-case": "closed forms of the leading-coefficient relations at level 0",
    "ring.associativity": "associativity of the CH2 and tilde-CH2 products",
    "ring.L-homomorphism": "L is multiplicative",
    "ring.kernel-left-action": "kernel generators annihilate from the left",
    "ring.shift-contraction": "odd/even contraction identities",
    "ring.U-identity": "U(a,b,c) difference identities",
    "ring.U-kernel": "U sums lying in Ker(L)",
    "ring.canonical-injective": "L is injective on canonical vectors",
    "ring.embed-product": "CH2 product matches polynomial multiplication",
    "paths.product-lemma": "product paths partition the vertex grid",
    "mrr.u3-degree": "u3-degrees of the modified orbit",
    "mlcr.lead-consistency": "leading coefficients of the modified orbit",
    "mlcr.reduced-equivalence": "err0(n,-1) = err0(n,1) and the reduced system",
    "mlcr.homogeneity": "homogeneity and u1<->u2 symmetry of err0",
    "bridge.embed-L": "embed(L(tilde-err)) equals err0",
    "tilde.shift-equivalence": "tilde-err(n,1) = S_-1 E(n) modulo Ker(L)",
    "nrs2.errfrac": "iteration values satisfy the error-fraction identities",
    "pipeline.orr-to-mrr": "change of variables from original to modified relations",
    "trees.count": "cardinality of RV_{n;2}",
    "trees.inv": "Inv is an involution with val(T) + val(Inv T) = 2^{n+2}",
    "trees.signed-sum": "signed tree sum equals E(n) modulo Ker(L)",
    "trees.positive-sum": "signed sum equals the RV+ sum",
    "trees.partition": "centered-path partition of RV+",
    "trees.iota": "iota pairs violating range determiners, preserving tau(val)",
    "trees.involution": "sign-reversing involution on the complement of RV+",
    "trees.sum-prime": "L(E(n)) as a sum over RV' (reading comparison)",
    "trees.path-statistics": "(val, rad) statistics of RV+ are path-decomposable",
    "coeffs.positivity": "coefficient table: support, maximum, positivity, symmetry, unimodality",
}


@dataclass
class Check:
    id: str
    citation: str
    status: str
    counterexample: Any = None
    millis: int = 0

    def __post_init__(self):
        if self.citation not in CITATIONS:
            raise KeyError(f"unregistered citation {self.citation!r}")
        if self.status not in (PASS, FAIL, SKIP):
            raise ValueError(f"bad status {self.status!r}")

    def to_dict(self) -> dict:
        d = {"id": self.id, "citation": self.citation, "status": self.status}
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample
        d["millis"] = self.millis
        return d


@dataclass
class VerificationReport:
    suite: str
    params: dict
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "params": dict(self.params),
            "checks": [c.to_dict() for c in self.checks],
        }

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"
        if fmt == "csv":
            return self._csv()
        if fmt == "text":
            return self._text()
        raise ValueError(f"unknown format {fmt!r}")

    def _csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["id", "citation", "status", "millis", "counterexample"])
        for c in self.checks:
            ce = "" if c.counterexample is None else json.dumps(c.counterexample, sort_keys=True)
            w.writerow([c.id, c.citation, c.status, c.millis, ce])
        return buf.getvalue()

    def _text(self) -> str:
        lines = [f"suite {self.suite}"]
        lines.append("params " + " ".join(f"{k}={v}" for k, v in self.params.items()))
        for c in self.checks:
            line = f"{c.status.upper():4} {c.id} [{c.citation}]"
            if c.millis:
                line += f" {c.millis} ms"
            lines.append(line)
            if c.counterexample is not None and c.status == FAIL:
                lines.append("     " + json.dumps(c.counterexample, sort_keys=True))
        counts = {s: sum(1 for c in self.checks if c.status == s) for s in (PASS, FAIL, SKIP)}
        lines.append(f"{counts[PASS]} passed, {counts[FAIL]} failed, {counts[SKIP]} skipped")
        return "\n".join(lines) + "\n"
