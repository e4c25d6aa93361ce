"""Checking identities modulo a Groebner basis, with replayable certificates."""
from __future__ import annotations

from dataclasses import dataclass, field

from .groebner import ArityError, GroebnerBasis
from .poly import Polynomial
from .rewriting import Step
from .symmetrize import IdentityExpr, orbit_polynomials


@dataclass
class Reduction:
    """Certificate for one orbit polynomial."""
    start: Polynomial
    steps: list
    normal_form: Polynomial

    def to_dict(self) -> dict:
        return {
            "input": self.start.render(),
            "steps": [s.to_dict() for s in self.steps],
            "normal_form": self.normal_form.render(),
        }


@dataclass
class Verdict:
    identity: str
    holds: bool
    reductions: list = field(default_factory=list)

    @property
    def result(self) -> str:
        return "holds" if self.holds else "fails"

    def witnesses(self) -> list[Polynomial]:
        return [r.normal_form for r in self.reductions if not r.normal_form.is_zero()]

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "result": self.result,
            "orbit_size": len(self.reductions),
            "certificate": [r.to_dict() for r in self.reductions],
        }


def _resolve_ops(basis: GroebnerBasis, identity: IdentityExpr, ops):
    table = {o.name: o for o in (ops if ops is not None else basis.ops)}
    missing = identity.ops_used() - set(table)
    if missing:
        raise KeyError(f"identity {identity.name!r} uses operations {sorted(missing)} "
                       "not present in the presentation")
    return table


def verify_identity(basis: GroebnerBasis, identity: IdentityExpr, ops=None) -> Verdict:
    """Reduce every orbit polynomial of ``identity``; it holds iff all vanish.

    Operation symmetries come from ``ops`` (default: the presentation the
    basis was computed from).
    """
    if identity.arity > basis.certified_arity:
        raise ArityError(f"identity {identity.name!r} has arity {identity.arity}, "
                         f"basis certified only through {basis.certified_arity}")
    table = _resolve_ops(basis, identity, ops)
    reductions = []
    for p in orbit_polynomials(identity, table, basis.order):
        nf, steps = basis.normal_form(p)
        reductions.append(Reduction(p, steps, nf))
    holds = all(r.normal_form.is_zero() for r in reductions)
    return Verdict(identity.name, holds, reductions)


def check_certificate(basis: GroebnerBasis, verdict: Verdict) -> bool:
    """Replay every recorded reduction; raises ``ValueError`` on any mismatch."""
    for r in verdict.reductions:
        final = basis.replay(r.start, r.steps)
        if final != r.normal_form:
            raise ValueError("replayed normal form differs from the recorded one")
        if not basis.is_normal_polynomial(final):
            raise ValueError("recorded normal form is still reducible")
    if verdict.holds != all(r.normal_form.is_zero() for r in verdict.reductions):
        raise ValueError("verdict disagrees with its normal forms")
    return True


__all__ = ["Reduction", "Verdict", "verify_identity", "check_certificate", "Step"]
