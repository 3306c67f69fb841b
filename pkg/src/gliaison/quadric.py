"""Smooth quadric ambients: spinor matrix factorizations and MCM decompositions.

Over R = S/(q) every maximal Cohen-Macaulay module without free summands is
the cokernel of a square matrix A with A*B = q*Id.  For a quadric threefold
the only indecomposable one is the spinor module (up to twist); a smooth
quadric surface has two.  ``mcm_decompose`` splits a module into free and
spinor summands by finding explicit degree-0 inclusions and retractions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import linalg
from .fpmod import (FPModule, ModuleMap, direct_sum, hom_degree, is_isomorphic, is_MCM,
                    random_hom, strip_free)
from .graded import GradedMatrix, QuotientRing
from .polyring import Ideal, PolyRing, Polynomial


class QuadricError(ValueError):
    pass


# -- quadratic forms ---------------------------------------------------------

def gram_matrix(q: Polynomial) -> np.ndarray:
    """Symmetric G over GF(p) with q(x) = x^T G x (needs p odd)."""
    S = q.ring
    p = S.p
    if p == 2:
        raise QuadricError("characteristic 2 is not supported for quadrics")
    if not q.is_homogeneous() or q.degree() != 2:
        raise QuadricError("q must be a nonzero quadratic form")
    n = S.nvars
    G = np.zeros((n, n), dtype=np.int64)
    half = pow(2, p - 2, p)
    for k, c in q.terms.items():
        e = S.exponents(k)
        idx = [i for i, v in enumerate(e) for _ in range(v)]
        i, j = idx
        if i == j:
            G[i, i] = c % p
        else:
            G[i, j] = c * half % p
            G[j, i] = c * half % p
    return G


def sqrt_mod(a: int, p: int):
    """A square root of a modulo the odd prime p, or None."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def _bil(G, u, v, p):
    return int(linalg.matmul(linalg.matmul(np.asarray(u).reshape(1, -1), G, p),
                             np.asarray(v).reshape(-1, 1), p)[0, 0])


def hyperbolic_basis(G: np.ndarray, p: int, rng: np.random.Generator):
    """Columns V with V^T G V = sum of hyperbolic planes [[0,1/2],[1/2,0]] (+ [c]).

    Returns (V, c) where c is the coefficient of the final square (None for
    an even number of variables).
    """
    n = G.shape[0]
    if linalg.rank(G, p) < n:
        raise QuadricError("the quadratic form is singular")
    half = pow(2, p - 2, p)
    W = np.eye(n, dtype=np.int64)          # columns span the current subspace
    cols = []
    while W.shape[1] >= 2:
        m = W.shape[1]
        u = None
        for _ in range(200):
            v = linalg.matmul(W, rng.integers(0, p, size=(m, 1)), p)[:, 0]
            w = linalg.matmul(W, rng.integers(0, p, size=(m, 1)), p)[:, 0]
            qv, qw, bvw = _bil(G, v, v, p), _bil(G, w, w, p), _bil(G, v, w, p)
            if not w.any():
                continue
            if qw == 0:
                u = w
                break
            disc = (bvw * bvw - qv * qw) % p
            r = sqrt_mod(disc, p)
            if r is None:
                continue
            t = (-bvw + r) * pow(qw, p - 2, p) % p
            cand = (v + t * w) % p
            if cand.any():
                u = cand
                break
        if u is None:
            raise QuadricError("no isotropic vector found: the form is not split over the base field")
        # partner with B(u, w) = 1/2
        Bu = linalg.matmul(np.asarray(u).reshape(1, -1), G, p)[0]
        e = None
        for j in range(m):
            cand = W[:, j]
            if int((Bu @ cand) % p):
                e = cand
                break
        if e is None:
            raise QuadricError("degenerate restriction")
        s = _bil(G, u, e, p)
        w = e * (half * pow(s, p - 2, p) % p) % p
        qw = _bil(G, w, w, p)
        w2 = (w - qw * u) % p
        cols += [u % p, w2]
        # orthogonal complement inside span(W)
        cons = linalg.matmul(np.stack([u, w2]), linalg.matmul(G, W, p), p)
        N = linalg.nullspace(cons, p)
        W = linalg.matmul(W, N.T, p) if N.shape[0] else np.zeros((n, 0), dtype=np.int64)
    c = None
    if W.shape[1] == 1:
        v = W[:, 0]
        c = _bil(G, v, v, p)
        cols.append(v)
    V = np.stack(cols, axis=1) % p
    return V, c


@dataclass
class MatrixFactorization:
    """Square matrices A, B of linear forms with A*B = B*A = q*Id."""

    q: Polynomial
    A: list
    B: list

    @property
    def size(self) -> int:
        return len(self.A)

    @property
    def ring(self) -> PolyRing:
        return self.q.ring

    def verify(self) -> bool:
        n = self.size
        S = self.ring
        for X, Y in ((self.A, self.B), (self.B, self.A)):
            for i in range(n):
                for j in range(n):
                    acc = S.zero()
                    for k in range(n):
                        acc = acc + X[i][k] * Y[k][j]
                    if acc != (self.q if i == j else S.zero()):
                        return False
        return True

    def matrix(self, R: QuotientRing, which: str = "A", twist: int = 0) -> GradedMatrix:
        M = self.A if which == "A" else self.B
        n = self.size
        return GradedMatrix(R, [-twist] * n, [1 - twist] * n, M)

    def module(self, R: QuotientRing, which: str = "A", twist: int = 0) -> FPModule:
        """coker of A (or B) over R, twisted: generators in degree -twist."""
        return FPModule(self.matrix(R, which, twist), name=f"Spin{'' if which == 'A' else '*'}({twist})")

    def to_json(self) -> dict:
        return {"q": self.q.canonical(), "size": self.size,
                "A": [[e.canonical() for e in r] for r in self.A],
                "B": [[e.canonical() for e in r] for r in self.B]}


def _knorrer(ring: PolyRing, pairs: Sequence[tuple], square):
    """Iterated factorization of sum(u*v) + c*w^2 from linear forms."""
    S = ring
    if square is not None:
        c, w = square
        A = [[w.scale(c)]]
        B = [[w]]
        rest = list(pairs)
    else:
        u, v = pairs[0]
        A, B = [[u]], [[v]]
        rest = list(pairs[1:])
    for u, v in rest:
        n = len(A)
        Z = S.zero()
        I = lambda f: [[f if i == j else Z for j in range(n)] for i in range(n)]
        uI, vI, muI, mvI = I(u), I(v), I(-u), I(-v)
        A2 = [A[i] + uI[i] for i in range(n)] + [mvI[i] + B[i] for i in range(n)]
        B2 = [B[i] + muI[i] for i in range(n)] + [vI[i] + A[i] for i in range(n)]
        A, B = A2, B2
    return A, B


def spinor_mf(q: Polynomial, seed: int = 0) -> MatrixFactorization:
    """Linear matrix factorization of a smooth quadric (size 4 for 5 variables)."""
    S = q.ring
    p = S.p
    G = gram_matrix(q)
    rng = np.random.default_rng(seed)
    n = S.nvars
    # fast path: already sum of x_{2i} x_{2i+1} (+ c x_last^2)
    V, c = _standard_form(q)
    if V is None:
        V, c = hyperbolic_basis(G, p, rng)
    Vinv = linalg.inverse(V, p)
    X = S.gens()
    ys = []
    for i in range(n):
        f = S.zero()
        for j in range(n):
            if int(Vinv[i, j]):
                f = f + X[j].scale(int(Vinv[i, j]))
        ys.append(f)
    pairs = [(ys[2 * i], ys[2 * i + 1]) for i in range(n // 2)]
    square = (c, ys[-1]) if n % 2 else None
    A, B = _knorrer(S, pairs, square)
    mf = MatrixFactorization(q, A, B)
    if not mf.verify():
        raise QuadricError("internal error: factorization identity failed")
    return mf


def _standard_form(q: Polynomial):
    """If q = x0x1 + x2x3 + ... (+ c*x_last^2) literally, return (identity, c)."""
    S = q.ring
    n = S.nvars
    want = {}
    for i in range(n // 2):
        e = [0] * n
        e[2 * i] = e[2 * i + 1] = 1
        want[S.key(e)] = 1
    c = None
    if n % 2:
        e = [0] * n
        e[-1] = 2
        k = S.key(e)
        c = q.terms.get(k)
        if not c:
            return None, None
        want[k] = c
    if dict(q.terms) != want:
        return None, None
    return np.eye(n, dtype=np.int64), c


# -- decomposition ---------------------------------------------------------

@dataclass
class MCMDecomposition:
    free: list                 # generator degrees of the free part
    spinors: list              # (label, twist) per summand, sorted
    certified: bool
    transcript: dict = field(default_factory=dict)

    def multiset(self) -> dict:
        from collections import Counter
        out = Counter()
        for d in self.free:
            out[("R", -d)] += 1
        for lab, a in self.spinors:
            out[(lab, a)] += 1
        return dict(out)

    def summary(self) -> list:
        from collections import Counter
        return [{"label": lab, "twist": a, "multiplicity": m}
                for (lab, a), m in sorted(Counter(self.spinors).items())]

    def to_json(self) -> dict:
        from collections import Counter
        return {"free": [{"twist": -d, "multiplicity": m} for d, m in sorted(Counter(self.free).items())],
                "spinors": self.summary(), "certified": self.certified,
                "transcript": self.transcript}


def spinor_modules(R: QuotientRing, mf: MatrixFactorization | None = None) -> list[tuple[str, FPModule]]:
    """The indecomposable non-free MCM modules with generators in degree 0."""
    q = R.ideal.gens[0] if len(R.ideal.gens) == 1 else None
    if q is None:
        raise QuadricError("ambient is not a hypersurface")
    mf = mf or spinor_mf(q)
    n = R.nvars
    if n % 2:
        return [("Spin", mf.module(R, "A"))]
    return [("Spin+", mf.module(R, "A")), ("Spin-", mf.module(R, "B"))]


def _split_off(M0: FPModule, Sp: FPModule, rng, tries: int = 4):
    """Try to split Sp (generators in M0's degree) off M0; returns complement or None."""
    inc = hom_degree(Sp, M0, 0)
    if not inc:
        return None
    ret = hom_degree(M0, Sp, 0)
    if not ret:
        return None
    p = M0.ring.p
    for _ in range(tries):
        i = random_hom(Sp, M0, 0, rng, inc)
        r = random_hom(M0, Sp, 0, rng, ret)
        comp = (r.matrix @ i.matrix).constant_part()
        if linalg.det_nonzero(comp, p):
            P = M0.presentation.hstack(
                GradedMatrix(M0.ring, M0.gens, i.matrix.src, i.matrix.entries, check=False))
            return FPModule(P).minimal()
    return None


def mcm_decompose(M: FPModule, spinors: list[tuple[str, FPModule]] | None = None,
                  seed: int = 0, certify: bool = True, check_mcm: bool = False) -> MCMDecomposition:
    """Split an MCM module over a quadric into free and spinor summands."""
    R = M.ring
    if spinors is None:
        spinors = spinor_modules(R)
    if check_mcm and not is_MCM(M):
        raise QuadricError("input is not maximal Cohen-Macaulay")
    rng = np.random.default_rng(seed)
    M0, frees = strip_free(M)
    found = []
    cur = M0
    while cur.ngens:
        hit = None
        for g in sorted(set(cur.gens)):
            for lab, Sp in spinors:
                SpA = Sp.twist(-g)
                comp = _split_off(cur, SpA, rng)
                if comp is not None:
                    hit = (lab, -g, comp)
                    break
            if hit:
                break
        if hit is None:
            return MCMDecomposition(frees, sorted(found), False,
                                    {"status": "decomposition not found",
                                     "remaining_generators": list(cur.gens)})
        lab, a, comp = hit
        found.append((lab, a))
        cur = comp
        if cur.ngens and cur.is_free():
            # only a free part is left (should not happen after strip_free)
            frees += list(cur.gens)
            break
    found.sort()
    transcript = {"status": "decomposed"}
    ok = True
    if certify:
        pieces = [FPModule.free(R, frees)] if frees else []
        lookup = dict(spinors)
        pieces += [lookup[lab].twist(a) for lab, a in found]
        if pieces:
            total = direct_sum(*pieces)
            f = is_isomorphic(total, M, rng)
            ok = bool(f)
        else:
            ok = M.minimal().ngens == 0
        transcript["reassembly_isomorphism"] = ok
    return MCMDecomposition(sorted(frees), found, ok, transcript)


# -- AG subschemes from sections -------------------------------------------

def ag_scheme_from_section(E: FPModule, d: int, seed: int = 0, ambient=None, retries: int = 8):
    """Zero scheme of a random section of E in degree d: an AG codim-2 subscheme.

    Returns an ``AGSection`` (see liaison) whose N-type resolution is
    0 -> R(-d) -> E -> I_Y -> 0 after normalising degrees.
    """
    from .liaison import ag_from_section
    return ag_from_section(E, d, seed=seed, ambient=ambient, retries=retries)


def decide_glicci_and_even_class(C1, C2=None, construct: bool = False, seed: int = 0) -> dict:
    """Glicci / even-class report for curves on a quadric threefold."""
    from .liaison import decide_even_class
    return decide_even_class(C1, C2, construct=construct, seed=seed)
