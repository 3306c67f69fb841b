"""Finitely presented graded modules over R = S/I_X.

An FPModule is coker(P : F1 -> F0).  Homomorphism spaces in a fixed degree
are computed by plain linear algebra on standard-monomial bases, which is
what most of the liaison machinery needs (isomorphism tests, splitting off
free summands, lifting maps).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import linalg
from .graded import (GradedMatrix, GradedFreeModule, QuotientRing, Submodule, column_degree,
                     encode_column, kernel, Lifter, mingens_indices, random_combination)
from .polyring import Ideal, Polynomial
from .polyring.hilbert import HilbertSeries
from .resolve import BettiTable, FreeResolution, free_resolution, prune_presentation

__all__ = [
    "FPModule", "FiniteLengthModule", "ModuleMap", "minimal_cover", "syzygy_module", "dual",
    "hom_module", "hom_degree", "ext_module", "graded_dual", "is_MCM", "strip_free", "no_invertible_hom",
    "stable_compare", "StableComparison", "is_isomorphic", "free_module", "direct_sum",
    "subquotient", "depth",
]


class FPModule:
    """coker(P) for a GradedMatrix P; generators sit in degrees ``P.tgt``."""

    def __init__(self, presentation: GradedMatrix, name: str | None = None):
        self.presentation = presentation
        self.ring: QuotientRing = presentation.ring
        self.name = name
        self._sub = None
        self._pruned = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def free(cls, ring: QuotientRing, degrees: Sequence[int]) -> "FPModule":
        return cls(GradedMatrix.zero(ring, tuple(degrees), ()))

    @classmethod
    def cokernel(cls, P: GradedMatrix) -> "FPModule":
        return cls(P)

    @classmethod
    def from_ideal(cls, I: Ideal, ring: QuotientRing) -> tuple["FPModule", list[Polynomial]]:
        """The R-module (I + I_X)/I_X with its generators (minimal mod I_X)."""
        gens = [ring.reduce(g) for g in I.mingens()]
        gens = [g for g in gens if g.terms]
        idx = mingens_indices(ring, (0,), [[g] for g in gens])
        gens = [gens[i] for i in idx]
        row = GradedMatrix.from_columns(ring, (0,), [[g] for g in gens])
        K = kernel(row)
        return cls(K), gens

    # -- basic data -------------------------------------------------------
    @property
    def gens(self) -> tuple:
        return self.presentation.tgt

    @property
    def ngens(self) -> int:
        return len(self.presentation.tgt)

    def submodule(self) -> Submodule:
        if self._sub is None:
            self._sub = Submodule.of_matrix(self.presentation)
        return self._sub

    def normal_form(self, vec: Sequence[Polynomial]) -> list[Polynomial]:
        return self.submodule().normal_form(vec)

    def is_zero_element(self, vec) -> bool:
        return self.submodule().contains(vec)

    def hilbert_series(self) -> HilbertSeries:
        return self.submodule().quotient_hilbert_series()

    def hilbert_function(self, d: int) -> int:
        return self.hilbert_series().value(d)

    def is_zero(self) -> bool:
        return self.hilbert_series().is_zero()

    def dim(self) -> int:
        return self.hilbert_series().dim

    def rank(self) -> int:
        """Rank over R (generic rank, 0 for torsion modules)."""
        hs = self.hilbert_series()
        hr = self.ring.hilbert_series()
        if hs.is_zero() or hs.dim < hr.dim:
            return 0
        e, er = hs.degree, hr.degree
        if e % er:
            raise ValueError("multiplicity is not a multiple of the ring degree")
        return e // er

    def twist(self, s: int) -> "FPModule":
        """M(s)."""
        return FPModule(self.presentation.twist(s))

    def __add__(self, other: "FPModule") -> "FPModule":
        return direct_sum(self, other)

    # -- minimal presentation ----------------------------------------------
    def prune(self):
        """(pruned module, transform old->new coordinates, kept generator indices)."""
        if self._pruned is None:
            pr = prune_presentation(self.presentation)
            M = FPModule(pr.presentation, self.name)
            M._pruned = (M, GradedMatrix.identity(self.ring, M.gens), list(range(M.ngens)))
            self._pruned = (M, pr.transform, pr.kept)
        return self._pruned

    def minimal(self) -> "FPModule":
        return self.prune()[0]

    def minimal_generator_degrees(self) -> list[int]:
        return sorted(self.minimal().gens)

    def is_free(self) -> bool:
        return self.minimal().presentation.ncols == 0

    def betti(self, length: int | None = None) -> BettiTable:
        return free_resolution(self, length).betti()

    # -- linear algebra in a fixed degree ------------------------------------
    def basis(self, d: int) -> list[tuple[int, int]]:
        return self.submodule().standard_monomials(d)

    def coordinates(self, vec: Sequence[Polynomial], d: int, basis=None) -> np.ndarray:
        """Coefficients of NF(vec) on the standard-monomial basis of degree d."""
        basis = basis if basis is not None else self.basis(d)
        idx = {b: i for i, b in enumerate(basis)}
        out = np.zeros(len(basis), dtype=np.int64)
        nf = self.normal_form(vec)
        for c, f in enumerate(nf):
            for k, v in f.terms.items():
                out[idx[(c, k)]] = v
        return out

    def element(self, coeffs, d: int, basis=None) -> list[Polynomial]:
        basis = basis if basis is not None else self.basis(d)
        S = self.ring.S
        parts = [dict() for _ in self.gens]
        for (c, k), v in zip(basis, coeffs):
            v = int(v) % S.p
            if v:
                parts[c][k] = v
        return [Polynomial(S, t) for t in parts]

    def random_element(self, d: int, rng: np.random.Generator) -> list[Polynomial]:
        basis = self.basis(d)
        return self.element(rng.integers(0, self.ring.p, size=len(basis)), d, basis)

    def __repr__(self):
        return f"FPModule(gens={list(self.gens)}, relations={self.presentation.ncols})"


def free_module(ring: QuotientRing, degrees: Sequence[int]) -> FPModule:
    return FPModule.free(ring, degrees)


def direct_sum(*mods: FPModule) -> FPModule:
    P = mods[0].presentation
    for M in mods[1:]:
        P = P.block_diag(M.presentation)
    return FPModule(P)


@dataclass
class ModuleMap:
    """Homogeneous map M -> N of degree ``degree``; column i is the image of gen i."""

    source: FPModule
    target: FPModule
    matrix: GradedMatrix
    degree: int = 0

    def is_well_defined(self) -> bool:
        rel = self.matrix @ self.source.presentation
        return all(self.target.is_zero_element(c) for c in rel.columns())

    def is_zero(self) -> bool:
        return all(self.target.is_zero_element(c) for c in self.matrix.columns())

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        if other.target.gens != self.source.gens:
            raise ValueError("maps are not composable")
        return ModuleMap(other.source, self.target, self.matrix @ other.matrix,
                         self.degree + other.degree)

    def apply(self, vec):
        return self.target.normal_form(self.matrix.apply(vec))

    def constant_block(self) -> np.ndarray:
        return self.matrix.constant_part()

    def is_surjective(self) -> bool:
        cols = self.matrix.columns() + self.target.presentation.columns()
        return Submodule(self.target.ring, self.target.gens, cols).quotient_hilbert_series().is_zero()


def _map_matrix(M: FPModule, N: FPModule, d: int, images: Sequence[Sequence[Polynomial]]) -> GradedMatrix:
    src = [g + d for g in M.gens]
    return GradedMatrix(M.ring, N.gens, src, [[images[i][k] for i in range(M.ngens)]
                                               for k in range(N.ngens)], check=False)


def hom_degree(M: FPModule, N: FPModule, d: int = 0) -> list[ModuleMap]:
    """Basis of Hom(M, N)_d (maps raising degrees by d), as ModuleMaps."""
    R = M.ring
    p = R.p
    S = R.S
    bases = [N.basis(g + d) for g in M.gens]
    offsets = np.cumsum([0] + [len(b) for b in bases])
    nunk = int(offsets[-1])
    if nunk == 0:
        return []
    P = M.presentation
    ncon_blocks = []
    for j in range(P.ncols):
        dj = P.src[j] + d
        tb = N.basis(dj)
        if not tb:
            continue
        idx = {b: i for i, b in enumerate(tb)}
        A = np.zeros((len(tb), nunk), dtype=np.int64)
        for i in range(M.ngens):
            e = P.entries[i][j]
            if not e.terms:
                continue
            for u, (c, m) in enumerate(bases[i]):
                vec = [S.zero()] * N.ngens
                vec[c] = e.mul_term(m, 1)
                nf = N.normal_form(vec)
                col = offsets[i] + u
                for cc, f in enumerate(nf):
                    for k, v in f.terms.items():
                        A[idx[(cc, k)], col] = (A[idx[(cc, k)], col] + v) % p
        ncon_blocks.append(A)
    if ncon_blocks:
        A = np.concatenate(ncon_blocks, axis=0)
        ker = linalg.nullspace(A, p)
    else:
        ker = np.eye(nunk, dtype=np.int64)
    out = []
    for row in ker:
        images = [N.element(row[offsets[i]:offsets[i + 1]], M.gens[i] + d, bases[i])
                  for i in range(M.ngens)]
        out.append(ModuleMap(M, N, _map_matrix(M, N, d, images), d))
    return out


def random_hom(M: FPModule, N: FPModule, d: int, rng: np.random.Generator,
               basis: list[ModuleMap] | None = None) -> ModuleMap | None:
    basis = basis if basis is not None else hom_degree(M, N, d)
    if not basis:
        return None
    S = M.ring.S
    mat = basis[0].matrix.scale(int(rng.integers(1, S.p)))
    for b in basis[1:]:
        mat = mat + b.matrix.scale(int(rng.integers(0, S.p)))
    return ModuleMap(M, N, mat, d)


def is_isomorphic(M: FPModule, N: FPModule, rng: np.random.Generator | None = None,
                  tries: int = 8):
    """Search for a degree-0 isomorphism M -> N.

    Returns the ModuleMap when one is found (a certificate: it is surjective
    and the Hilbert series agree), False when a numerical invariant differs or
    no random element of Hom_0 is invertible after ``tries`` attempts.
    """
    rng = rng if rng is not None else np.random.default_rng(0)
    M = M.minimal()
    N = N.minimal()
    if sorted(M.gens) != sorted(N.gens) or M.hilbert_series() != N.hilbert_series():
        return False
    if M.ngens == 0:
        return ModuleMap(M, N, GradedMatrix.zero(M.ring, (), ()), 0)
    basis = hom_degree(M, N, 0)
    if not basis:
        return False
    p = M.ring.p
    for _ in range(tries):
        f = random_hom(M, N, 0, rng, basis)
        C = f.constant_block()
        if linalg.det_nonzero(C, p):
            return f
    return False


def minimal_cover(M: FPModule):
    """(L, P) with L the minimal free cover of M and P the minimal presentation."""
    Mm = M.minimal()
    return GradedFreeModule(M.ring, Mm.gens), Mm.presentation


def syzygy_module(M: FPModule) -> FPModule:
    """sigma(M): kernel of the minimal cover L -> M, presented on the relation columns."""
    Mm = M.minimal()
    P = Mm.presentation
    if P.ncols == 0:
        return FPModule.free(M.ring, ())
    K = kernel(P)
    out = FPModule(K)
    out.embedding = P
    return out


def dual(M: FPModule) -> FPModule:
    """M^dual = Hom_R(M, R), generated by the minimal generators of ker(P^T).

    The generator matrix (columns in F0^*) is kept as ``result.embedding``.
    """
    R = M.ring
    P = M.presentation
    if M.ngens == 0:
        out = FPModule.free(R, ())
        out.embedding = GradedMatrix.zero(R, (), ())
        return out
    if P.ncols == 0:
        Psi = GradedMatrix.identity(R, [-d for d in M.gens])
    else:
        Psi = kernel(P.transpose())
    out = FPModule(kernel(Psi)) if Psi.ncols else FPModule.free(R, ())
    out.embedding = Psi
    return out


def subquotient(K: GradedMatrix, D: GradedMatrix | None) -> FPModule:
    """im(K) / im(D) for maps into the same free module with im D inside im K."""
    R = K.ring
    if K.ncols == 0:
        return FPModule.free(R, ())
    if D is None or D.ncols == 0:
        rel = kernel(K)
    else:
        Z = kernel(K.hstack(D))
        rel = Z.submatrix(rows=range(K.ncols))
        nz = [j for j in range(rel.ncols) if any(rel.entries[i][j].terms for i in range(rel.nrows))]
        rel = rel.submatrix(cols=nz)
    return FPModule(rel)


def hom_module(M: FPModule, N: FPModule) -> FPModule:
    """Hom_R(M, N) as a finitely presented module.

    An element is a matrix phi : F0(M) -> F0(N) with phi*P_M in im(P_N); the
    module is the set of such phi modulo those landing in im(P_N).
    Coordinates on Hom(F0(M), F0(N)) are indexed by (k, i) -> k*m + i.
    """
    R = M.ring
    S = R.S
    z = S.zero()
    PM, PN = M.presentation, N.presentation
    m, n = M.ngens, N.ngens
    a, b = PM.ncols, PN.ncols
    # free module H0 = Hom(F0M, F0N) has generator (k, i) of degree N_k - M_i
    h0 = [N.gens[k] - M.gens[i] for k in range(n) for i in range(m)]
    # Phi: H0 -> Hom(F1M, F0N) ; (k, j) coordinate gets sum_i phi_{k,i} PM[i,j]
    h1 = [N.gens[k] - PM.src[j] for k in range(n) for j in range(a)]
    Phi = [[z] * len(h0) for _ in h1]
    for k in range(n):
        for j in range(a):
            for i in range(m):
                Phi[k * a + j][k * m + i] = PM.entries[i][j]
    # Q1 : Hom(F1M, F1N) -> Hom(F1M, F0N),  psi -> PN psi
    g1 = [PN.src[l] - PM.src[j] for l in range(b) for j in range(a)]
    Q1 = [[z] * len(g1) for _ in h1]
    for k in range(n):
        for j in range(a):
            for l in range(b):
                Q1[k * a + j][l * a + j] = PN.entries[k][l]
    Phi = GradedMatrix(R, h1, h0, Phi, check=False)
    Q1 = GradedMatrix(R, h1, g1, Q1, check=False)
    # elements of H0 mapping into im(Q1)
    if a:
        Z = kernel(Phi.hstack(Q1))
        K = Z.submatrix(rows=range(len(h0)))
        nz = [j for j in range(K.ncols) if any(K.entries[i][j].terms for i in range(K.nrows))]
        K = K.submatrix(cols=nz)
    else:
        K = GradedMatrix.identity(R, h0)
    # trivial homs: Hom(F0M, F1N) -> H0, psi -> PN psi
    g0 = [PN.src[l] - M.gens[i] for l in range(b) for i in range(m)]
    if b:
        D = [[z] * len(g0) for _ in h0]
        for k in range(n):
            for i in range(m):
                for l in range(b):
                    D[k * m + i][l * m + i] = PN.entries[k][l]
        D = GradedMatrix(R, h0, g0, D, check=False)
    else:
        D = None
    if K.ncols:
        idx = mingens_indices(R, K.tgt, K.columns())
        K = K.submatrix(cols=idx)
    out = subquotient(K, D)
    out.generators_matrix = K
    out.shape_mn = (n, m)
    return out


def ext_module(i: int, M, twist: int = 0, ring: QuotientRing | None = None) -> FPModule:
    """Ext^i_S(M, S(twist)) over the polynomial ring of ``M.ring``.

    ``M`` is an FPModule or an Ideal I (meaning S/I).  Computed as homology
    of the dual of a minimal free resolution.
    """
    if isinstance(M, Ideal):
        S = M.ring
        res = free_resolution(M)
    else:
        R0 = M.ring
        S = R0.S
        QS = QuotientRing(S)
        P = M.presentation
        # view M as an S-module: add I_X * F0 to the relations
        cols = P.columns()
        for c in range(len(P.tgt)):
            for g in R0.gb:
                v = [S.zero()] * len(P.tgt)
                v[c] = g
                cols.append(v)
        Ps = GradedMatrix.from_columns(QS, P.tgt, cols) if cols else GradedMatrix.zero(QS, P.tgt, ())
        res = free_resolution(FPModule(Ps))
    QS = res.ring
    L = res.length
    if i < 0 or i > L:
        return FPModule.free(QS, ())
    Fi = res.modules[i]
    if i == L:
        K = GradedMatrix.identity(QS, [-g for g in Fi.degrees])
    else:
        K = kernel(res.maps[i].transpose())
    D = res.maps[i - 1].transpose() if i >= 1 else None
    H = subquotient(K, D)
    return H.twist(twist)


def depth(M: FPModule) -> int:
    """depth over S via Auslander-Buchsbaum (nvars - pd_S)."""
    return M.ring.nvars - pd_over_polynomial_ring(M)


def pd_over_polynomial_ring(M: FPModule) -> int:
    R0 = M.ring
    S = R0.S
    QS = QuotientRing(S)
    P = M.presentation
    cols = P.columns()
    for c in range(len(P.tgt)):
        for g in R0.gb:
            v = [S.zero()] * len(P.tgt)
            v[c] = g
            cols.append(v)
    Ps = GradedMatrix.from_columns(QS, P.tgt, cols) if cols else GradedMatrix.zero(QS, P.tgt, ())
    res = free_resolution(FPModule(Ps))
    return res.length


def is_MCM(M: FPModule) -> bool:
    """Maximal Cohen-Macaulay over R: depth M = dim R (and M nonzero)."""
    M = M.minimal()
    if M.ngens == 0:
        return False
    R = M.ring
    codim = R.nvars - R.dim()
    return pd_over_polynomial_ring(M) == codim


class FiniteLengthModule:
    """Finite-dimensional graded module: dims per degree and x_i actions.

    ``mult[(i, d)]`` is the matrix of x_i : M_d -> M_{d+1}.
    """

    def __init__(self, p: int, nvars: int, dims: dict, mult: dict):
        self.p = p
        self.nvars = nvars
        self.dims = {d: v for d, v in dims.items() if v}
        self.mult = mult

    @classmethod
    def from_module(cls, M: FPModule) -> "FiniteLengthModule":
        hs = M.hilbert_series()
        if hs.is_zero():
            return cls(M.ring.p, M.ring.nvars, {}, {})
        if hs.dim != 0:
            raise ValueError("module does not have finite length")
        degs = sorted(hs.q)
        lo, hi = degs[0], degs[-1]
        S = M.ring.S
        bases = {d: M.basis(d) for d in range(lo, hi + 2)}
        dims = {d: len(bases[d]) for d in range(lo, hi + 1)}
        mult = {}
        for d in range(lo, hi + 1):
            for i in range(S.nvars):
                A = np.zeros((len(bases[d + 1]), len(bases[d])), dtype=np.int64)
                xk = S.var_key(i)
                for j, (c, m) in enumerate(bases[d]):
                    vec = [S.zero()] * M.ngens
                    vec[c] = Polynomial(S, {S.key_mul(m, xk): 1})
                    if bases[d + 1]:
                        A[:, j] = M.coordinates(vec, d + 1, bases[d + 1])
                mult[(i, d)] = A
        return cls(S.p, S.nvars, dims, mult)

    def length(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return not self.dims

    def degrees(self) -> list[int]:
        return sorted(self.dims)

    def dim_vector(self) -> dict:
        return dict(sorted(self.dims.items()))

    def action(self, i: int, d: int) -> np.ndarray:
        A = self.mult.get((i, d))
        if A is None:
            return np.zeros((self.dims.get(d + 1, 0), self.dims.get(d, 0)), dtype=np.int64)
        return A

    def graded_dual(self) -> "FiniteLengthModule":
        dims = {-d: v for d, v in self.dims.items()}
        mult = {}
        for (i, d), A in self.mult.items():
            # x_i : M_d -> M_{d+1} dualises to M*_{-d-1} -> M*_{-d}
            mult[(i, -d - 1)] = A.T.copy()
        return FiniteLengthModule(self.p, self.nvars, dims, mult)

    def twist(self, s: int) -> "FiniteLengthModule":
        return FiniteLengthModule(self.p, self.nvars, {d - s: v for d, v in self.dims.items()},
                                  {(i, d - s): A for (i, d), A in self.mult.items()})

    def annihilated_by_maximal_ideal(self) -> bool:
        return all(not A.any() for A in self.mult.values())

    def isomorphic(self, other: "FiniteLengthModule", rng=None, tries: int = 8):
        """Shift s with self(s) ~ other, None if no degree-preserving iso exists up to shift,
        or the string 'undecided'."""
        if self.is_zero() or other.is_zero():
            return 0 if self.is_zero() and other.is_zero() else None
        if self.length() != other.length() or self.nvars != other.nvars:
            return None
        s = min(self.dims) - min(other.dims)
        A = self.twist(s)
        if A.dims != other.dims:
            return None
        p = self.p
        degs = sorted(A.dims)
        # unknown T_d (dim x dim) for each degree, T_{d+1} x_i = x_i T_d
        offs = {}
        tot = 0
        for d in degs:
            offs[d] = tot
            tot += A.dims[d] * A.dims[d]
        rows = []
        for d in degs:
            if d + 1 not in A.dims:
                continue
            n0, n1 = A.dims[d], A.dims[d + 1]
            for i in range(self.nvars):
                X = A.action(i, d) % p        # n1 x n0
                Y = other.action(i, d) % p    # n1 x n0
                # (T_{d+1} X - Y T_d)[a, b] = 0
                for a_ in range(n1):
                    for b_ in range(n0):
                        row = np.zeros(tot, dtype=np.int64)
                        for c_ in range(n1):
                            row[offs[d + 1] + a_ * n1 + c_] += X[c_, b_]
                        for c_ in range(n0):
                            row[offs[d] + c_ * n0 + b_] -= Y[a_, c_]
                        rows.append(row % p)
        N = linalg.nullspace(np.array(rows), p) if rows else np.eye(tot, dtype=np.int64)
        if N.shape[0] == 0:
            return None
        rng = rng if rng is not None else np.random.default_rng(0)
        for _ in range(tries):
            v = linalg.matmul(rng.integers(0, p, size=(1, N.shape[0])), N, p)[0]
            ok = True
            for d in degs:
                n = A.dims[d]
                T = v[offs[d]:offs[d] + n * n].reshape(n, n)
                if not linalg.det_nonzero(T, p):
                    ok = False
                    break
            if ok:
                return -s
        return "undecided"

    def to_json(self) -> dict:
        return {"dims": {str(d): v for d, v in sorted(self.dims.items())},
                "length": self.length()}

    def __repr__(self):
        return f"FiniteLengthModule(dims={self.dim_vector()})"


def graded_dual(M: FiniteLengthModule | FPModule) -> FiniteLengthModule:
    if isinstance(M, FPModule):
        M = FiniteLengthModule.from_module(M)
    return M.graded_dual()


def strip_free(M: FPModule) -> tuple[FPModule, list[int]]:
    """Split off free summands: returns (M0, degrees) with M = M0 + sum R(-a).

    A summand R(-a) splits off exactly when some degree-0 map M -> R(-a) has
    a unit coefficient on a generator; the complement is M modulo that
    generator.  When no basis element of Hom_0(M, R(-a)) has a unit, no free
    summand of that degree exists.
    """
    R = M.ring
    M = M.minimal()
    frees = []
    while M.ngens:
        split = None
        for a in sorted(set(M.gens)):
            F = FPModule.free(R, [a])
            for f in hom_degree(M, F, 0):
                row = f.constant_block()[0]
                nz = [i for i in range(M.ngens) if row[i] % R.p]
                if nz:
                    split = (a, nz[0])
                    break
            if split:
                break
        if split is None:
            break
        a, i = split
        S = R.S
        col = [S.one() if k == i else S.zero() for k in range(M.ngens)]
        P = M.presentation.hstack(GradedMatrix(R, M.gens, [M.gens[i]], [[c] for c in col], check=False))
        M = FPModule(P).minimal()
        frees.append(a)
    return M, sorted(frees)


@dataclass
class StableComparison:
    """Outcome of comparing modules up to free summands: True, False or 'undecided'."""

    equal: object
    shift: int | None = None
    reason: str = ""
    isomorphism: ModuleMap | None = field(default=None, repr=False)

    def to_json(self):
        return {"equal": self.equal, "shift": self.shift, "reason": self.reason}


def stable_compare(M: FPModule, N: FPModule, betti_steps: int = 3,
                   rng: np.random.Generator | None = None) -> StableComparison:
    """Decide whether M + free = N(s) + free for some shift s."""
    M0, _ = strip_free(M)
    N0, _ = strip_free(N)
    if M0.ngens == 0 and N0.ngens == 0:
        return StableComparison(True, 0, "both stably zero")
    if M0.ngens == 0 or N0.ngens == 0:
        return StableComparison(False, None, "exactly one side is stably zero")
    s = min(N0.gens) - min(M0.gens)
    Ns = N0.twist(s)
    if sorted(M0.gens) != sorted(Ns.gens):
        return StableComparison(False, None, "generator degrees differ")
    if M0.hilbert_series() != Ns.hilbert_series():
        return StableComparison(False, None, "Hilbert series differ")
    bm = M0.betti(betti_steps)
    bn = Ns.betti(betti_steps)
    if bm != bn:
        return StableComparison(False, None, "Betti tables differ")
    if no_invertible_hom(M0.minimal(), Ns.minimal()):
        return StableComparison(False, None, "no degree-0 map has an invertible constant block")
    f = is_isomorphic(M0, Ns, rng)
    if f:
        return StableComparison(True, s, "explicit isomorphism of the non-free parts", f)
    return StableComparison("undecided", s, "invariants agree but no isomorphism was found")


def no_invertible_hom(M: FPModule, N: FPModule) -> bool:
    """True when provably no element of Hom_0(M, N) is an isomorphism.

    Every constant block of a combination of basis maps has its columns in
    the span of all basis blocks' columns (and likewise for rows), so a
    deficient joint span rules out an invertible block.  M and N must be
    minimally presented with the same number of generators.
    """
    n = M.ngens
    basis = hom_degree(M, N, 0)
    if not basis:
        return True
    blocks = [b.constant_block() % M.ring.p for b in basis]
    p = M.ring.p
    return linalg.rank(np.hstack(blocks), p) < n or linalg.rank(np.vstack(blocks), p) < n
