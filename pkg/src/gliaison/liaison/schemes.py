"""Ambient AG schemes and their codimension-two subschemes."""
from __future__ import annotations

from functools import cached_property

from ..fpmod import FPModule
from ..graded import QuotientRing
from ..polyring import Ideal, PolyRing, Polynomial
from ..resolve import Classification, classify


class LiaisonError(ValueError):
    """A precondition of a liaison operation failed."""


class AmbientScheme:
    """X = Proj(S/I_X), arithmetically Gorenstein, with omega_X = O_X(ell)."""

    def __init__(self, S: PolyRing, ideal: Ideal | None = None, ell: int | None = None,
                 name: str = "X", check: bool = True):
        self.S = S
        self.ideal = ideal.minimalized() if ideal is not None else Ideal(S, [])
        self.name = name
        self.R = QuotientRing(S, self.ideal)
        self.classification: Classification = classify(self.ideal)
        if check and not self.classification.is_AG:
            raise LiaisonError(f"ambient {name} is not arithmetically Gorenstein")
        self.is_CI = self.classification.is_CI
        if ell is None:
            # omega_X = O_X(top - n - 1), top = degree of the last syzygy of S/I_X
            B = self.classification.betti
            L = B.length()
            top = [j for (i, j) in B.data if i == L]
            ell = top[0] - S.nvars
        self.ell = ell
        self.dimension = self.ideal.dim() - 1          # projective dimension
        if check and self.dimension < 2:
            raise LiaisonError("ambient must have dimension at least 2")

    @property
    def nvars(self) -> int:
        return self.S.nvars

    def is_quadric(self) -> bool:
        g = self.ideal.mingens()
        return len(g) == 1 and g[0].degree() == 2

    def is_projective_space(self) -> bool:
        return not self.ideal.gens

    def to_json(self) -> dict:
        return {"name": self.name, "variables": list(self.S.variables),
                "characteristic": self.S.p, "ideal": self.ideal.to_strings(),
                "ell": self.ell, "dimension": self.dimension, "is_CI": self.is_CI}

    def __repr__(self):
        return f"AmbientScheme({self.name}, dim={self.dimension}, ell={self.ell})"


def make_ambient(S: PolyRing, I_X: Ideal | None = None, ell: int | None = None,
                 name: str = "X") -> AmbientScheme:
    return AmbientScheme(S, I_X, ell, name)


class Subscheme:
    """Closed subscheme C of X given by a saturated ideal I_C containing I_X."""

    def __init__(self, ambient: AmbientScheme, ideal: Ideal, name: str | None = None,
                 check_saturated: bool = False):
        self.ambient = ambient
        S = ambient.S
        if ideal.ring != S:
            raise LiaisonError("ideal lives in a different ring")
        gens = list(ideal.gens)
        extra = [g for g in ambient.ideal.gens if not ideal.contains(g)]
        if extra:
            raise LiaisonError(f"ideal of {name or 'C'} does not contain I_X")
        self.ideal = Ideal(S, gens, name).minimalized()
        self.name = name
        if check_saturated and not self.ideal.is_saturated():
            raise LiaisonError(f"ideal of {name or 'C'} is not saturated")

    # numerical data ----------------------------------------------------
    @cached_property
    def codim_in_X(self) -> int:
        return self.ambient.ideal.dim() - self.ideal.dim()

    @cached_property
    def degree(self) -> int:
        return self.ideal.degree()

    @cached_property
    def dimension(self) -> int:
        return self.ideal.dim() - 1

    @cached_property
    def classification(self) -> Classification:
        return classify(self.ideal)

    @property
    def is_ACM(self) -> bool:
        return self.classification.is_CM

    @cached_property
    def generators_mod_X(self) -> list[Polynomial]:
        """Minimal generators of I_C / I_X (reduced modulo I_X)."""
        _, gens = FPModule.from_ideal(self.ideal, self.ambient.R)
        return gens

    @property
    def is_CI_in_X(self) -> bool:
        return len(self.generators_mod_X) == self.codim_in_X

    @cached_property
    def rao(self):
        from .resolution import rao_module
        return rao_module(self)

    def contains(self, other: "Subscheme | Ideal") -> bool:
        """C contains other as schemes, i.e. I_C is inside I_other."""
        J = other.ideal if isinstance(other, Subscheme) else other
        return self.ideal.is_subset(J)

    def same_as(self, other: "Subscheme") -> bool:
        return self.ideal == other.ideal

    def to_json(self) -> dict:
        return {"name": self.name, "ideal": [g.canonical() for g in self.ideal.gens],
                "degree": self.degree, "codim_in_X": self.codim_in_X}

    def __repr__(self):
        return f"Subscheme({self.name or '?'}: {[str(g) for g in self.ideal.gens]})"


def require_codim2(C: Subscheme):
    if C.codim_in_X != 2:
        raise LiaisonError(f"{C.name or 'C'} has codimension {C.codim_in_X} in X, expected 2")
