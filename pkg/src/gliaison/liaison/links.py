"""Linkage by ideal quotients and its verification."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..polyring import Ideal, quotient, saturate
from .schemes import LiaisonError, Subscheme, require_codim2


@dataclass
class LinkVerification:
    ok: bool
    checks: dict = field(default_factory=dict)
    error: str | None = None

    def to_json(self) -> dict:
        d = {"ok": self.ok, "checks": dict(self.checks)}
        if self.error:
            d["error"] = self.error
        return d


def as_subscheme(ambient, Y, name: str = "Y") -> Subscheme:
    return Y if isinstance(Y, Subscheme) else Subscheme(ambient, Y, name)


def linking_kind(Y: Subscheme) -> str:
    """'CI' when I_Y / I_X has two generators, otherwise 'AG'."""
    return "CI" if Y.is_CI_in_X else "AG"


def check_linking_scheme(C: Subscheme, Y: Subscheme):
    if not Y.ideal.is_subset(C.ideal):
        raise LiaisonError(f"{C.name or 'C'} is not contained in {Y.name or 'Y'}")
    if Y.codim_in_X != 2:
        raise LiaisonError(f"{Y.name or 'Y'} has codimension {Y.codim_in_X} in X, expected 2")
    if not Y.is_CI_in_X and not Y.classification.is_AG:
        raise LiaisonError(f"{Y.name or 'Y'} is not arithmetically Gorenstein")


def link(C: Subscheme, Y, name: str | None = None) -> Subscheme:
    """The residual C' with I_C' = I_Y : I_C."""
    require_codim2(C)
    Y = as_subscheme(C.ambient, Y)
    check_linking_scheme(C, Y)
    J = quotient(Y.ideal, C.ideal)
    return Subscheme(C.ambient, J, name or (f"{C.name}'" if C.name else None))


def verify_link(C: Subscheme, C2: Subscheme, Y) -> LinkVerification:
    """Containments, codimension, double quotient and degree additivity."""
    checks = {}
    try:
        Y = as_subscheme(C.ambient, Y)
        checks["Y_in_C"] = Y.ideal.is_subset(C.ideal)
        checks["Y_in_C2"] = Y.ideal.is_subset(C2.ideal)
        checks["codim_Y"] = Y.codim_in_X == 2
        checks["codim_C"] = C.codim_in_X == 2
        checks["codim_C2"] = C2.codim_in_X == 2
        checks["Y_gorenstein"] = bool(Y.is_CI_in_X or Y.classification.is_AG)
        checks["residual"] = quotient(Y.ideal, C.ideal) == C2.ideal
        checks["double_quotient"] = quotient(Y.ideal, C2.ideal) == C.ideal
        checks["degree_additivity"] = C.degree + C2.degree == Y.degree
    except LiaisonError as e:
        return LinkVerification(False, checks, str(e))
    return LinkVerification(all(checks.values()), checks)


def random_ci_in_x_containing(C: Subscheme, degrees, seed: int = 0, retries: int = 8) -> Ideal:
    """I_X + (f, g) with f, g random forms of I_C in the given degrees, certified codim 2 in X."""
    A = C.ambient
    S = A.S
    R = A.R
    a, b = degrees
    for d in (a, b):
        have = len(C.ideal.graded_piece(d))
        base = len(A.ideal.graded_piece(d)) if A.ideal.gens else 0
        if have <= base:
            raise LiaisonError(f"no element of I_C of degree {d} outside I_X")
    rng = np.random.default_rng(seed)
    target = A.ideal.dim() - 2
    for _ in range(retries):
        f = R.reduce(C.ideal.random_element(a, rng))
        g = R.reduce(C.ideal.random_element(b, rng))
        if f.is_zero() or g.is_zero():
            continue
        Y = Ideal(S, list(A.ideal.gens) + [f, g])
        if Y.dim() == target:
            return Y.minimalized() if A.ideal.gens else Ideal(S, [f, g])
    raise LiaisonError(f"retry bound exhausted ({retries} attempts) for degrees {tuple(degrees)}")


def intersection_split_check(C: Subscheme, Yd: Ideal, Zd: Ideal) -> bool:
    """True when C is the scheme-theoretic intersection of the divisors Y and Z."""
    A = C.ambient
    require_codim2(C)
    for name, D in (("Y", Yd), ("Z", Zd)):
        DD = Ideal(A.S, list(A.ideal.gens) + list(D.gens))
        if A.ideal.dim() - DD.dim() != 1:
            raise LiaisonError(f"{name} is not a divisor on X")
    J = Ideal(A.S, list(A.ideal.gens) + list(Yd.gens) + list(Zd.gens))
    return saturate(J) == C.ideal
