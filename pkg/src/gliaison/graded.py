"""Graded free modules and homogeneous matrices over R = S/I.

Everything is computed with module Groebner bases over S; the ideal I of the
base ring enters through the extra generators g*e_i (g in a Groebner basis of
I), so all statements hold over R.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .polyring import GBEngine, Ideal, Layout, PolyRing, Polynomial, minimal_generators
from .polyring.hilbert import HilbertSeries, monomial_numerator


class QuotientRing:
    """R = S / I for a homogeneous ideal I (possibly zero)."""

    def __init__(self, S: PolyRing, ideal: Ideal | None = None):
        self.S = S
        if ideal is None:
            ideal = Ideal(S, [])
        if ideal.ring != S:
            raise ValueError("ideal lives in another ring")
        self.ideal = ideal
        self.gb = ideal.groebner_basis() if ideal.gens else []

    @property
    def nvars(self) -> int:
        return self.S.nvars

    @property
    def p(self) -> int:
        return self.S.p

    def is_polynomial_ring(self) -> bool:
        return not self.gb

    def reduce(self, f: Polynomial) -> Polynomial:
        if not self.gb or f.is_zero():
            return f
        return self.ideal.normal_form(f)

    def hilbert_series(self) -> HilbertSeries:
        return self.ideal.hilbert_series()

    def dim(self) -> int:
        return self.ideal.dim()

    def base_vectors(self, lay: Layout, comps: Iterable[int]) -> list[dict]:
        """The vectors g*e_c spanning I*F on the given components."""
        out = []
        cb = lay.cb
        for c in comps:
            b = lay.base[c]
            for g in self.gb:
                out.append({b + (k << cb): v for k, v in g.terms.items()})
        return out

    def __eq__(self, other):
        return isinstance(other, QuotientRing) and (self is other or (
            self.S == other.S and self.ideal == other.ideal))

    def __hash__(self):
        return hash((self.S, len(self.gb)))

    def __repr__(self):
        if not self.gb:
            return f"QuotientRing({self.S.variables})"
        return f"QuotientRing({self.S.variables} / {[str(g) for g in self.ideal.gens]})"


@dataclass(frozen=True)
class GradedFreeModule:
    """Free module sum R(-d_i); ``degrees`` lists the generator degrees d_i."""

    ring: QuotientRing
    degrees: tuple

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))

    @property
    def rank(self) -> int:
        return len(self.degrees)

    def twist(self, s: int) -> "GradedFreeModule":
        """F(s): generator degrees drop by s."""
        return GradedFreeModule(self.ring, tuple(d - s for d in self.degrees))

    def dual(self) -> "GradedFreeModule":
        return GradedFreeModule(self.ring, tuple(-d for d in self.degrees))

    def __add__(self, other: "GradedFreeModule") -> "GradedFreeModule":
        return GradedFreeModule(self.ring, self.degrees + other.degrees)

    def __repr__(self):
        if not self.degrees:
            return "0"
        from collections import Counter
        c = Counter(self.degrees)
        return " + ".join(f"R({-d})^{m}" if m > 1 else f"R({-d})" for d, m in sorted(c.items()))


class GradedMatrix:
    """Homogeneous map between graded free modules over a QuotientRing.

    ``entries[i][j]`` is the coefficient of target generator i in the image of
    source generator j, so it has degree ``src[j] - tgt[i]``.  Entries are
    kept reduced modulo the ideal of the base ring.
    """

    def __init__(self, ring: QuotientRing, tgt: Sequence[int], src: Sequence[int],
                 entries: Sequence[Sequence[Polynomial]], check: bool = True, reduce: bool = True):
        self.ring = ring
        self.tgt = tuple(int(d) for d in tgt)
        self.src = tuple(int(d) for d in src)
        S = ring.S
        rows = []
        for row in entries:
            r = [S(e) for e in row]
            if reduce and ring.gb:
                r = [ring.reduce(e) for e in r]
            rows.append(r)
        if len(rows) != len(self.tgt):
            raise ValueError("row count does not match target rank")
        for r in rows:
            if len(r) != len(self.src):
                raise ValueError("column count does not match source rank")
        self.entries = rows
        if check:
            self.check_homogeneous()

    # construction helpers
    @classmethod
    def zero(cls, ring, tgt, src):
        z = ring.S.zero()
        return cls(ring, tgt, src, [[z] * len(src) for _ in tgt], check=False, reduce=False)

    @classmethod
    def identity(cls, ring, degrees):
        S = ring.S
        n = len(degrees)
        return cls(ring, degrees, degrees,
                   [[S.one() if i == j else S.zero() for j in range(n)] for i in range(n)],
                   check=False, reduce=False)

    @classmethod
    def from_columns(cls, ring, tgt, columns, src=None, reduce=True):
        tgt = tuple(tgt)
        cols = [list(c) for c in columns]
        if src is None:
            src = [column_degree(tgt, c) for c in cols]
            if any(d is None for d in src):
                raise ValueError("cannot infer the degree of a zero column")
        z = ring.S.zero()
        entries = [[cols[j][i] if cols[j] else z for j in range(len(cols))] for i in range(len(tgt))]
        return cls(ring, tgt, src, entries, reduce=reduce)

    def check_homogeneous(self):
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                if e.terms:
                    d = self.src[j] - self.tgt[i]
                    fb = e.ring.fbits
                    for k in e.terms:
                        if (k >> fb) != d:
                            raise ValueError(f"entry ({i},{j}) is not homogeneous of degree {d}")

    # shape
    @property
    def nrows(self):
        return len(self.tgt)

    @property
    def ncols(self):
        return len(self.src)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def source(self) -> GradedFreeModule:
        return GradedFreeModule(self.ring, self.src)

    def target(self) -> GradedFreeModule:
        return GradedFreeModule(self.ring, self.tgt)

    def column(self, j) -> list[Polynomial]:
        return [row[j] for row in self.entries]

    def columns(self) -> list[list[Polynomial]]:
        return [self.column(j) for j in range(self.ncols)]

    def row(self, i) -> list[Polynomial]:
        return list(self.entries[i])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    # algebra
    def __matmul__(self, other: "GradedMatrix") -> "GradedMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        S = self.ring.S
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = S.zero()
                for k in range(self.ncols):
                    a = self.entries[i][k]
                    if a.terms:
                        b = other.entries[k][j]
                        if b.terms:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return GradedMatrix(self.ring, self.tgt, other.src, out, check=False)

    def apply(self, vec: Sequence[Polynomial]) -> list[Polynomial]:
        S = self.ring.S
        out = []
        for i in range(self.nrows):
            acc = S.zero()
            for k in range(self.ncols):
                a = self.entries[i][k]
                if a.terms and vec[k].terms:
                    acc = acc + a * vec[k]
            out.append(self.ring.reduce(acc))
        return out

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return GradedMatrix(self.ring, self.tgt, self.src,
                            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
                            check=False)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "GradedMatrix":
        return GradedMatrix(self.ring, self.tgt, self.src,
                            [[e * c for e in row] for row in self.entries], check=False)

    def transpose(self) -> "GradedMatrix":
        """Dual map F0^* -> F1^* (degrees negated)."""
        ent = [[self.entries[i][j] for i in range(self.nrows)] for j in range(self.ncols)]
        return GradedMatrix(self.ring, [-d for d in self.src], [-d for d in self.tgt], ent,
                            check=False, reduce=False)

    def twist(self, s: int) -> "GradedMatrix":
        return GradedMatrix(self.ring, [d - s for d in self.tgt], [d - s for d in self.src],
                            self.entries, check=False, reduce=False)

    def hstack(self, other: "GradedMatrix") -> "GradedMatrix":
        if self.tgt != other.tgt:
            raise ValueError("targets differ")
        ent = [r1 + r2 for r1, r2 in zip(self.entries, other.entries)]
        return GradedMatrix(self.ring, self.tgt, self.src + other.src, ent, check=False, reduce=False)

    def vstack(self, other: "GradedMatrix") -> "GradedMatrix":
        if self.src != other.src:
            raise ValueError("sources differ")
        return GradedMatrix(self.ring, self.tgt + other.tgt, self.src,
                            [list(r) for r in self.entries] + [list(r) for r in other.entries],
                            check=False, reduce=False)

    def block_diag(self, other: "GradedMatrix") -> "GradedMatrix":
        z = self.ring.S.zero()
        ent = [list(r) + [z] * other.ncols for r in self.entries]
        ent += [[z] * self.ncols + list(r) for r in other.entries]
        return GradedMatrix(self.ring, self.tgt + other.tgt, self.src + other.src, ent,
                            check=False, reduce=False)

    def submatrix(self, rows=None, cols=None) -> "GradedMatrix":
        rows = range(self.nrows) if rows is None else list(rows)
        cols = range(self.ncols) if cols is None else list(cols)
        return GradedMatrix(self.ring, [self.tgt[i] for i in rows], [self.src[j] for j in cols],
                            [[self.entries[i][j] for j in cols] for i in rows],
                            check=False, reduce=False)

    def __eq__(self, other):
        return isinstance(other, GradedMatrix) and self.tgt == other.tgt and \
            self.src == other.src and all(a == b for r1, r2 in zip(self.entries, other.entries)
                                          for a, b in zip(r1, r2))

    def unit_position(self):
        """Some (i, j) holding a nonzero constant, or None."""
        for j in range(self.ncols):
            for i in range(self.nrows):
                e = self.entries[i][j]
                if e.terms and self.src[j] == self.tgt[i]:
                    return i, j
        return None

    def constant_part(self) -> np.ndarray:
        """Matrix of the constant (degree-0) entries."""
        A = np.zeros(self.shape, dtype=np.int64)
        for i in range(self.nrows):
            for j in range(self.ncols):
                if self.src[j] == self.tgt[i]:
                    A[i, j] = self.entries[i][j].constant_coeff()
        return A

    def to_strings(self) -> list[list[str]]:
        return [[e.canonical() for e in row] for row in self.entries]

    def __repr__(self):
        rows = "\n  ".join("[" + ", ".join(str(e) for e in r) + "]" for r in self.entries)
        return f"GradedMatrix(tgt={list(self.tgt)}, src={list(self.src)},\n  {rows})"


def column_degree(tgt: Sequence[int], col: Sequence[Polynomial]):
    for d, e in zip(tgt, col):
        if e.terms:
            return e.degree() + d
    return None


# -- Groebner helpers on submodules of free modules ---------------------

def encode_column(lay: Layout, col: Sequence[Polynomial], offset: int = 0) -> dict:
    out = {}
    cb = lay.cb
    for i, f in enumerate(col):
        b = lay.base[i + offset]
        for k, v in f.terms.items():
            out[b + (k << cb)] = v
    return out


def decode_column(lay: Layout, vec: dict, lo: int, hi: int) -> list[Polynomial]:
    parts = lay.decode(vec)
    return parts[lo:hi]


class Submodule:
    """U = image(columns) + I*F inside F = sum R(-tgt_i), with a Groebner basis."""

    def __init__(self, ring: QuotientRing, tgt: Sequence[int], columns: Sequence[Sequence[Polynomial]]):
        self.ring = ring
        self.tgt = tuple(tgt)
        self.layout = Layout(ring.S, self.tgt)
        E = GBEngine(self.layout)
        E.add_many(ring.base_vectors(self.layout, range(len(self.tgt))))
        E.add_many(v for v in (encode_column(self.layout, c) for c in columns) if v)
        E.complete()
        self.engine = E

    @classmethod
    def of_matrix(cls, M: GradedMatrix) -> "Submodule":
        return cls(M.ring, M.tgt, M.columns())

    def normal_form(self, col: Sequence[Polynomial]) -> list[Polynomial]:
        v = encode_column(self.layout, col)
        return self.layout.decode(self.engine.reduce(v))

    def contains(self, col) -> bool:
        return not self.engine.reduce(encode_column(self.layout, col))

    def lead_by_component(self) -> list[list[tuple]]:
        out = [[] for _ in self.tgt]
        S = self.ring.S
        for t in self.engine.lead_terms():
            c, k = self.layout.split(t)
            out[c].append(S.exponents(k))
        return out

    def quotient_hilbert_series(self) -> HilbertSeries:
        n = self.ring.nvars
        num: dict = {}
        for d, leads in zip(self.tgt, self.lead_by_component()):
            for k, v in monomial_numerator(leads, n).items():
                num[k + d] = num.get(k + d, 0) + v
        return HilbertSeries(num, n)

    def standard_monomials(self, d: int) -> list[tuple[int, int]]:
        """(component, monomial key) pairs spanning (F/U)_d, decreasing order."""
        S = self.ring.S
        leads = self.lead_by_component()
        lead_keys = [[S.key(e) for e in L] for L in leads]
        out = []
        for c, tw in enumerate(self.tgt):
            for m in S.monomials_of_degree(d - tw):
                if not any(S.key_divides(l, m) for l in lead_keys[c]):
                    out.append((c, m))
        out.sort(key=lambda cm: self.layout.term(cm[0], cm[1]), reverse=True)
        return out


def mingens_indices(ring: QuotientRing, tgt: Sequence[int], columns: Sequence[Sequence[Polynomial]]) -> list[int]:
    """Indices of a minimal generating subset of the columns (mod I*F)."""
    lay = Layout(ring.S, tgt)
    vecs = [encode_column(lay, c) for c in columns]
    base = ring.base_vectors(lay, range(len(tgt)))
    return minimal_generators(lay, vecs, base)


def minimal_columns(M: GradedMatrix) -> GradedMatrix:
    keep = mingens_indices(M.ring, M.tgt, M.columns())
    return M.submatrix(cols=keep)


class Lifter:
    """Solve M a = v (mod I*F) for columns v, via an augmented Groebner basis."""

    def __init__(self, M: GradedMatrix):
        self.M = M
        R = M.ring
        r, m = M.nrows, M.ncols
        self.r, self.m = r, m
        lay = Layout(R.S, list(M.tgt) + list(M.src), [1] * r + [0] * m)
        self.layout = lay
        E = GBEngine(lay)
        E.add_many(R.base_vectors(lay, range(r + m)))
        S = R.S
        for j in range(m):
            col = M.column(j) + [S.zero()] * m
            col[r + j] = S.one()
            E.add(encode_column(lay, col))
        self.engine = E
        self._complete = False

    def _ensure(self, d=None):
        if d is None:
            if not self._complete:
                self.engine.complete()
                self._complete = True
        elif not self._complete and not self.engine.is_complete_to(d):
            self.engine.complete(d)

    def lift(self, v: Sequence[Polynomial]):
        """Coefficient column a with M a = v, or None if v is not in the image."""
        S = self.M.ring.S
        if all(f.is_zero() for f in v):
            return [S.zero()] * self.m
        d = column_degree(self.M.tgt, v)
        self._ensure(d)
        col = list(v) + [S.zero()] * self.m
        rem = self.engine.reduce(encode_column(self.layout, col))
        lay = self.layout
        if any(lay.block(t) == 1 for t in rem):
            return None
        parts = lay.decode(rem)
        return [self.M.ring.reduce(-f) for f in parts[self.r:]]

    def kernel(self) -> GradedMatrix:
        """Minimal generators of {a : M a = 0 in R-module terms}."""
        self._ensure()
        lay = self.layout
        R = self.M.ring
        cand = []
        for vec in self.engine.reduced():
            if lay.block(max(vec)) == 0:
                parts = lay.decode(vec)[self.r:]
                cand.append([R.reduce(f) for f in parts])
        src_tgt = self.M.src
        cand = [c for c in cand if any(f.terms for f in c)]
        keep = mingens_indices(R, src_tgt, cand)
        cols = [cand[i] for i in keep]
        return GradedMatrix.from_columns(R, src_tgt, cols, reduce=False)


def kernel(M: GradedMatrix) -> GradedMatrix:
    """Minimal generators of the syzygy module of the columns of M over R."""
    if M.ncols == 0:
        return GradedMatrix.zero(M.ring, (), ())
    return Lifter(M).kernel()


def lift(M: GradedMatrix, v: Sequence[Polynomial]):
    return Lifter(M).lift(v)


def random_combination(ring: QuotientRing, tgt, gens: Sequence[Sequence[Polynomial]], gen_degrees,
                       d: int, rng: np.random.Generator) -> list[Polynomial]:
    """A random element of degree d of the submodule spanned by ``gens``."""
    S = ring.S
    out = [S.zero() for _ in tgt]
    p = S.p
    for g, dg in zip(gens, gen_degrees):
        e = d - dg
        if e < 0:
            continue
        coeff = S.zero()
        for m in S.monomials_of_degree(e):
            c = int(rng.integers(0, p))
            if c:
                coeff = coeff + Polynomial(S, {m: c})
        if coeff.terms:
            out = [a + coeff * b for a, b in zip(out, g)]
    return [ring.reduce(f) for f in out]
