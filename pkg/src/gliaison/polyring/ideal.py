"""Homogeneous ideals: Groebner bases, membership, and ideal operations."""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .groebner import GBEngine, Layout, minimal_generators
from .hilbert import HilbertSeries, independent_sets_dimension, monomial_numerator
from .parse import InhomogeneousError
from .ring import PolyRing, Polynomial


def _layout1(ring: PolyRing) -> Layout:
    lay = getattr(ring, "_layout1", None)
    if lay is None:
        lay = Layout(ring, [0])
        ring._layout1 = lay
    return lay


class Ideal:
    """Homogeneous ideal of a PolyRing given by generators."""

    def __init__(self, ring: PolyRing, gens: Iterable = (), name: str | None = None):
        self.ring = ring
        out = []
        for i, g in enumerate(gens):
            g = ring(g)
            if g.is_zero():
                continue
            if not g.is_homogeneous():
                degs = sorted({ring.key_degree(k) for k in g.terms})
                raise InhomogeneousError(name or "?", i, degs)
            out.append(g)
        self.gens = tuple(out)
        self.name = name
        self._engine = None
        self._gb = None
        self._hs = None
        self._mingens = None

    # -- Groebner machinery -------------------------------------------
    def engine(self) -> GBEngine:
        if self._engine is None:
            lay = _layout1(self.ring)
            E = GBEngine(lay)
            E.add_many(lay.encode([g]) for g in self.gens)
            E.complete()
            self._engine = E
        return self._engine

    def groebner_basis(self) -> list[Polynomial]:
        """Reduced Groebner basis, sorted by increasing leading monomial."""
        if self._gb is None:
            E = self.engine()
            lay = E.L
            self._gb = [lay.decode(v)[0] for v in E.reduced()]
        return list(self._gb)

    def normal_form(self, f) -> Polynomial:
        f = self.ring(f)
        if f.is_zero() or not self.gens:
            return f
        lay = _layout1(self.ring)
        E = self.engine()
        return lay.decode(E.reduce(lay.encode([f])))[0]

    def contains(self, f) -> bool:
        return self.normal_form(f).is_zero()

    __contains__ = contains

    def is_subset(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.gens)

    def __le__(self, other):
        return self.is_subset(other)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if other.ring != self.ring:
            return False
        return [g.terms for g in self.groebner_basis()] == [g.terms for g in other.groebner_basis()]

    def __hash__(self):
        return hash(tuple(self.groebner_basis()))

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.groebner_basis())

    def lead_exponents(self) -> list[tuple]:
        return [g.lead_exponents() for g in self.groebner_basis()]

    # -- numerical invariants -------------------------------------------
    def hilbert_series(self) -> HilbertSeries:
        """Hilbert series of S/I."""
        if self._hs is None:
            n = self.ring.nvars
            self._hs = HilbertSeries(monomial_numerator(self.lead_exponents(), n), n)
        return self._hs

    def hilbert_function(self, d: int) -> int:
        return self.hilbert_series().value(d)

    def dim(self) -> int:
        """Krull dimension of S/I (-1 for the unit ideal)."""
        return self.hilbert_series().dim

    def krull_dim_independent_sets(self) -> int:
        return independent_sets_dimension(self.lead_exponents(), self.ring.nvars)

    def codim(self) -> int:
        d = self.dim()
        return self.ring.nvars - d if d >= 0 else self.ring.nvars + 1

    def degree(self) -> int:
        return self.hilbert_series().degree

    # -- generators -------------------------------------------------------
    def mingens(self) -> list[Polynomial]:
        """A minimal homogeneous generating set (degree-sorted)."""
        if self._mingens is None:
            lay = _layout1(self.ring)
            vecs = [lay.encode([g]) for g in self.gens]
            keep = minimal_generators(lay, vecs)
            self._mingens = [self.gens[i] for i in keep]
        return list(self._mingens)

    def minimalized(self) -> "Ideal":
        J = Ideal(self.ring, self.mingens(), self.name)
        J._engine, J._gb, J._hs = self._engine, self._gb, self._hs
        J._mingens = J.gens
        return J

    def generator_degrees(self) -> list[int]:
        return sorted(g.degree() for g in self.mingens())

    def graded_piece(self, d: int) -> list[Polynomial]:
        """Basis of the degree-d part I_d, in row-reduced form."""
        r = self.ring
        mons = r.monomials_of_degree(d)
        if not mons:
            return []
        cols = {k: i for i, k in enumerate(mons)}
        rows = []
        for g in self.gens:
            e = d - g.degree()
            if e < 0:
                continue
            for m in r.monomials_of_degree(e):
                h = g.mul_term(m, 1)
                row = np.zeros(len(mons), dtype=np.int64)
                for k, c in h.terms.items():
                    row[cols[k]] = c
                rows.append(row)
        if not rows:
            return []
        from ..linalg import rref
        R, piv = rref(np.array(rows), r.p)
        out = []
        for i in range(len(piv)):
            out.append(Polynomial(r, {mons[j]: int(R[i, j]) for j in np.nonzero(R[i])[0]}))
        return out

    def random_element(self, d: int, rng: np.random.Generator) -> Polynomial:
        basis = self.graded_piece(d)
        r = self.ring
        f = r.zero()
        for b in basis:
            f = f + b.scale(int(rng.integers(0, r.p)))
        return f

    # -- operations -----------------------------------------------------
    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.gens + tuple(other.gens))

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, [f * g for f in self.gens for g in other.gens]).minimalized()

    def power(self, k: int) -> "Ideal":
        J = Ideal(self.ring, [self.ring.one()])
        for _ in range(k):
            J = J * self
        return J

    def intersect(self, other: "Ideal") -> "Ideal":
        return intersect(self, other)

    def quotient(self, other) -> "Ideal":
        return quotient(self, other)

    def saturate(self, other: "Ideal | None" = None) -> "Ideal":
        return saturate(self, other)

    def is_saturated(self) -> bool:
        return quotient(self, maximal_ideal(self.ring)) == self

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.gens]})"

    def to_strings(self) -> list[str]:
        return [g.canonical() for g in self.gens]


def maximal_ideal(ring: PolyRing) -> Ideal:
    return Ideal(ring, ring.gens())


def unit_ideal(ring: PolyRing) -> Ideal:
    return Ideal(ring, [ring.one()])


def _eliminate(ring: PolyRing, twists, blocks, vectors, comp: int) -> list[Polynomial]:
    lay = Layout(ring, twists, blocks)
    E = GBEngine(lay)
    E.add_many(lay.encode(v) for v in vectors)
    E.complete()
    out = []
    for v in E.reduced():
        if lay.block(max(v)) == 0:
            out.append(lay.decode(v)[comp])
    return out


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I cap J, from the submodule of S^2 spanned by (f, f) and (g, 0)."""
    r = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(r, [])
    z = r.zero()
    vecs = [[f, f] for f in I.gens] + [[g, z] for g in J.gens]
    gens = _eliminate(r, [0, 0], [1, 0], vecs, 1)
    return Ideal(r, gens).minimalized()


def quotient(I: Ideal, J) -> Ideal:
    """I : J.  ``J`` may be an Ideal or a single polynomial.

    Uses the submodule of S^(s+1) spanned by (g_1, ..., g_s, 1) and f*e_k;
    its elements with vanishing first s coordinates are exactly the a with
    a*g_k in I for all k.
    """
    r = I.ring
    if isinstance(J, Polynomial):
        J = Ideal(r, [J])
    gs = [g for g in J.mingens()] if len(J.gens) > 1 else list(J.gens)
    if not gs:
        return unit_ideal(r)
    if I.is_zero():
        return Ideal(r, [])
    s = len(gs)
    z = r.zero()
    twists = [-g.degree() for g in gs] + [0]
    blocks = [1] * s + [0]
    vecs = [gs + [r.one()]]
    for k in range(s):
        for f in I.gens:
            v = [z] * (s + 1)
            v[k] = f
            vecs.append(v)
    gens = _eliminate(r, twists, blocks, vecs, s)
    return Ideal(r, gens).minimalized()


def _saturate_linear_form(I: Ideal, coeffs: Sequence[int]) -> Ideal:
    """I : l^infinity for l = x_{n-1} + sum c_i x_i, via grevlex division."""
    r = I.ring
    n = r.nvars
    X = r.gens()
    last = X[n - 1]
    fwd = X[:n - 1] + [last - sum((X[i].scale(coeffs[i]) for i in range(n - 1)), r.zero())]
    back = X[:n - 1] + [last + sum((X[i].scale(coeffs[i]) for i in range(n - 1)), r.zero())]
    Ip = Ideal(r, [g.substitute(fwd) for g in I.gens])
    out = []
    for g in Ip.groebner_basis():
        e = min(r.exponents(k)[n - 1] for k in g.terms)
        if e:
            g = g.divide_exact(Polynomial(r, {r.var_key(n - 1, e): 1}))
        out.append(g)
    J = Ideal(r, [g.substitute(back) for g in out])
    return Ideal(r, J.groebner_basis()).minimalized()


def _power_annihilated(I: Ideal, J: Ideal, kmax: int = 60) -> bool:
    """True if m^k J is contained in I for some k <= kmax."""
    r = I.ring
    from ..linalg import row_space_basis
    X = r.gens()
    for g in J.gens:
        cur = [I.normal_form(g)]
        cur = [c for c in cur if c]
        k = 0
        while cur:
            k += 1
            if k > kmax:
                return False
            nxt = [I.normal_form(x * c) for c in cur for x in X]
            nxt = [c for c in nxt if c]
            if not nxt:
                break
            mons = sorted({m for c in nxt for m in c.terms}, reverse=True)
            idx = {m: i for i, m in enumerate(mons)}
            A = np.zeros((len(nxt), len(mons)), dtype=np.int64)
            for i, c in enumerate(nxt):
                for m, v in c.terms.items():
                    A[i, idx[m]] = v
            B = row_space_basis(A, r.p)
            cur = [Polynomial(r, {mons[j]: int(row[j]) for j in np.nonzero(row)[0]}) for row in B]
    return True


def saturate(I: Ideal, J: Ideal | None = None) -> Ideal:
    """Saturation I : J^infinity (J defaults to the irrelevant ideal).

    For the irrelevant ideal a random-coordinate grevlex division is tried
    first and certified by checking that a power of the maximal ideal maps
    the candidate into I; otherwise repeated quotients are used until they
    stabilise.
    """
    r = I.ring
    if I.is_zero():
        return I
    if J is None:
        rng = np.random.default_rng(12345)
        for _ in range(2):
            coeffs = [int(c) for c in rng.integers(1, r.p, size=r.nvars)]
            cand = _saturate_linear_form(I, coeffs)
            if _power_annihilated(I, cand):
                return cand
        J = maximal_ideal(r)
    cur = I
    while True:
        nxt = quotient(cur, J)
        if nxt == cur:
            return cur
        cur = nxt
