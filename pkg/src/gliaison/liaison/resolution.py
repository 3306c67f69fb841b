"""Two-term resolutions 0 -> A -> B -> I_C -> 0 and the transforms that act on them.

Everything is normalised so that B -> I_C has degree 0: a generator of B of
degree e maps to a form of degree e.  ``alpha`` gives the images of the
generators of A in coordinates on the generators of B.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..fpmod import FPModule, FiniteLengthModule, direct_sum, dual, ext_module, hom_degree, is_MCM
from ..graded import GradedMatrix, Lifter, QuotientRing, kernel
from ..linalg import nullspace
from ..polyring import Ideal, Polynomial
from ..resolve import BettiTable, prune_presentation
from .schemes import AmbientScheme, LiaisonError, Subscheme, require_codim2

CERT_WINDOW_PAD = 6


@dataclass
class ResolutionOfIdeal:
    kind: str                 # "E", "N" or "plain"
    A: FPModule
    B: FPModule
    alpha: GradedMatrix       # B.gens x A.gens
    images: list              # image in R of each generator of B
    twist: int = 0
    certification: dict = field(default_factory=dict)

    @property
    def ring(self) -> QuotientRing:
        return self.B.ring

    def ideal(self) -> Ideal:
        R = self.ring
        gens = list(R.ideal.gens) + [g for g in self.images if g.terms]
        return Ideal(R.S, gens).minimalized()

    def cokernel(self) -> FPModule:
        """B / alpha(A), which is isomorphic to I_C / I_X when the sequence is exact."""
        return FPModule(self.B.presentation.hstack(self.alpha))

    # -- checks ------------------------------------------------------------
    def certify(self, C: Subscheme, mcm_check: bool = True) -> dict:
        R = self.ring
        S = R.S
        out = {}
        z = all(R.reduce(sum((self.images[k] * self.alpha.entries[k][j]
                              for k in range(self.B.ngens)), S.zero())).is_zero()
                for j in range(self.A.ngens))
        out["composite_zero"] = bool(z)
        rel = self.alpha @ self.A.presentation
        out["alpha_well_defined"] = all(self.B.is_zero_element(c) for c in rel.columns())
        out["surjective"] = self.ideal() == C.ideal
        hs_ideal = R.hilbert_series() - C.ideal.hilbert_series()
        out["cokernel_matches_ideal"] = self.cokernel().hilbert_series() == hs_ideal
        out["injective"] = self.A.hilbert_series() == self.B.hilbert_series() - hs_ideal
        if self.kind == "E":
            out["B_free"] = self.B.is_free()
        elif self.kind == "N":
            out["A_free"] = self.A.is_free()
        info = {}
        if mcm_check and self.kind in ("E", "N"):
            mid = self.A if self.kind == "E" else self.B
            mcm = is_MCM(mid) if mid.minimal().ngens else False
            acm = C.is_ACM
            info["middle_module_MCM"] = mcm
            info["C_ACM"] = acm
            # C is ACM exactly when E (resp. N) is MCM
            out["acm_criterion_consistent"] = (mcm == acm)
        gens = [g for g in self.B.gens] + list(self.A.gens)
        info["window"] = [min(gens, default=0), max(gens, default=0) + CERT_WINDOW_PAD]
        info["method"] = "exact Hilbert series comparison"
        ok = all(out.values())
        self.certification = {"ok": ok, "checks": out, "info": info}
        return self.certification

    # -- simplification ---------------------------------------------------------
    def minimalized(self) -> "ResolutionOfIdeal":
        """Prune both modules; when B is free also cancel unit entries of alpha."""
        R = self.ring
        S = R.S
        Bm, T, kept = self.B.prune()
        alpha = T @ self.alpha if self.alpha.ncols else GradedMatrix.zero(R, Bm.gens, self.A.gens)
        images = [self.images[k] for k in kept]
        Am, _, keptA = self.A.prune()
        alpha = GradedMatrix(R, Bm.gens, Am.gens, [[alpha.entries[i][j] for j in keptA]
                                                       for i in range(alpha.nrows)], check=False)
        A, B = Am, Bm
        while B.presentation.ncols == 0:
            pos = alpha.unit_position()
            if pos is None:
                break
            i, j = pos
            PB = B.presentation.hstack(alpha.submatrix(cols=[j]))
            prB = prune_presentation(PB)
            col = GradedMatrix(R, A.gens, [A.gens[j]],
                               [[S.one() if k == j else S.zero()] for k in range(A.ngens)], check=False)
            prA = prune_presentation(A.presentation.hstack(col))
            rest = alpha.submatrix(cols=prA.kept)
            alpha = prB.transform @ rest if rest.ncols else GradedMatrix.zero(R, prB.presentation.tgt, ())
            images = [images[k] for k in prB.kept]
            B = FPModule(prB.presentation)
            A = FPModule(prA.presentation)
        return ResolutionOfIdeal(self.kind, A, B, alpha, images, self.twist)

    def betti_data(self, length: int | None = None) -> BettiTable:
        """Betti table of the ideal module computed from this resolution."""
        if self.A.is_free() and self.B.is_free():
            r = self.minimalized()
            if r.alpha.unit_position() is None:
                return BettiTable.from_modules([r.B.gens, r.A.gens] if r.A.ngens else [r.B.gens])
        return self.cokernel().betti(length)

    # -- serialisation ------------------------------------------------------------
    def to_json(self) -> dict:
        return {"kind": self.kind, "twist": self.twist,
                "A": matrix_to_json(self.A.presentation), "B": matrix_to_json(self.B.presentation),
                "alpha": matrix_to_json(self.alpha), "images": [g.canonical() for g in self.images]}

    @classmethod
    def from_json(cls, R: QuotientRing, d: dict) -> "ResolutionOfIdeal":
        A = FPModule(matrix_from_json(R, d["A"]))
        B = FPModule(matrix_from_json(R, d["B"]))
        alpha = matrix_from_json(R, d["alpha"])
        images = [R.S.parse(s) for s in d["images"]]
        return cls(d["kind"], A, B, alpha, images, d.get("twist", 0))


def matrix_to_json(M: GradedMatrix) -> dict:
    return {"tgt": list(M.tgt), "src": list(M.src), "entries": M.to_strings()}


def matrix_from_json(R: QuotientRing, d: dict) -> GradedMatrix:
    return GradedMatrix(R, d["tgt"], d["src"], [[R.S.parse(e) for e in row] for row in d["entries"]])


# -- constructions -------------------------------------------------------------

def etype_resolution(C: Subscheme) -> ResolutionOfIdeal:
    """0 -> E -> L -> I_C -> 0 with L the minimal free cover of I_C / I_X."""
    require_codim2(C)
    R = C.ambient.R
    M, gens = FPModule.from_ideal(C.ideal, R)
    K = M.presentation
    E = FPModule(kernel(K))
    if E.gens != K.src:
        E = FPModule.free(R, K.src)
    L = FPModule.free(R, K.tgt)
    return ResolutionOfIdeal("E", E, L, K, gens)


def ntype_resolution(C: Subscheme, eres: ResolutionOfIdeal | None = None) -> ResolutionOfIdeal:
    """N-type resolution 0 -> M^dual -> G -> I_C -> 0 built from the E-type one.

    With 0 -> E -> L -> I_C -> 0 and M -> E^dual the minimal cover, G is the
    pushout of L <- E -> M^dual, i.e. coker of E -> L + M^dual.  G is an
    extension of the syzygy-dual E^(dual sigma dual) by L.
    """
    eres = eres or etype_resolution(C)
    R = eres.ring
    K = eres.alpha
    PE = eres.A.presentation
    Egens = list(eres.A.gens)
    if PE.ncols == 0:
        Psi = GradedMatrix.identity(R, [-d for d in Egens])
    else:
        Psi = kernel(PE.transpose())
    J = Psi.transpose()                      # rows: generators of M^dual
    G = K.vstack(J.scale(-1))
    A = FPModule.free(R, [-d for d in Psi.src])
    z = GradedMatrix.zero(R, K.tgt, A.gens)
    alpha = z.vstack(GradedMatrix.identity(R, A.gens))
    images = list(eres.images) + [R.S.zero()] * A.ngens
    res = ResolutionOfIdeal("N", A, FPModule(G), alpha, images).minimalized()
    return res


def rao_module(C: Subscheme) -> FiniteLengthModule:
    """M_C = H^1_*(I_C) by local duality: dual of Ext^{n-1}_S(S/I_C, S(-n))."""
    S = C.ambient.S
    n = S.nvars
    Ext = ext_module(n - 1, C.ideal, twist=-n)
    Ext = Ext.minimal()
    hs = Ext.hilbert_series()
    if not hs.is_zero() and hs.dim != 0:
        raise LiaisonError("H^1 of the ideal sheaf is not of finite length for this subscheme")
    return FiniteLengthModule.from_module(Ext).graded_dual()


def rank_one_ideal(Q: FPModule, S_ideal_X: Ideal, max_search: int = 40):
    """Identify a rank-one torsion-free module Q with a twisted ideal.

    Finds the lowest degree delta with Hom(Q, R)_delta nonzero; this space
    must be one-dimensional, and the image of its generator, plus I_X, is an
    ideal J with Q isomorphic to J shifted by delta (checked with Hilbert
    series).  Returns (J, delta, images of the generators of Q).
    """
    R = Q.ring
    S = R.S
    Qm, T, kept = Q.prune()
    if Qm.ngens == 0:
        raise LiaisonError("module is zero")
    RR = FPModule.free(R, [0])
    H = []
    delta = None
    start = 1 - max(Qm.gens)
    for dl in range(start, start + max_search):
        H = hom_degree(Qm, RR, dl)
        if H:
            delta = dl
            break
    if not H:
        raise LiaisonError("no homomorphism to R found: module has no rank one")
    if len(H) != 1:
        raise LiaisonError("module is not rank-one torsion-free")
    psi = H[0].matrix.entries[0]
    # images of the original generators of Q: psi composed with the transform
    imgs = []
    for k in range(len(Q.gens)):
        acc = S.zero()
        for i in range(Qm.ngens):
            t = T.entries[i][k]
            if t.terms and psi[i].terms:
                acc = acc + psi[i] * t
        imgs.append(R.reduce(acc))
    J = Ideal(S, list(S_ideal_X.gens) + [g for g in psi if g.terms]).minimalized()
    hsJ = R.hilbert_series() - J.hilbert_series()
    if Qm.hilbert_series() != hsJ.shift(-delta):
        raise LiaisonError("module is not isomorphic to a twisted ideal")
    return J, delta, imgs


@dataclass
class AGSection:
    """AG subscheme Y cut out by a section s of a rank-2 MCM module E."""

    Y: Subscheme
    resolution: ResolutionOfIdeal        # N-type: A = R(-deg s), B = E (normalised)
    section: list
    degree: int
    delta: int
    seed: int
    attempts: int

    def to_json(self) -> dict:
        return {"Y": self.Y.to_json(), "degree": self.degree, "seed": self.seed,
                "attempts": self.attempts, "section": [g.canonical() for g in self.section],
                "resolution": self.resolution.to_json(),
                "classification": self.Y.classification.to_json()}


def ag_from_section(E: FPModule, d: int, seed: int = 0, ambient: AmbientScheme | None = None,
                    retries: int = 8) -> AGSection:
    R = E.ring
    if ambient is None:
        ambient = AmbientScheme(R.S, R.ideal)
    E = E.minimal()
    if not E.basis(d):
        raise LiaisonError(f"no sections in degree {d}")
    rng = np.random.default_rng(seed)
    last = "no attempt"
    for attempt in range(retries):
        s = E.random_element(d, rng)
        if E.is_zero_element(s):
            last = "zero section"
            continue
        col = GradedMatrix(R, E.gens, [d], [[c] for c in s])
        Q = FPModule(E.presentation.hstack(col))
        try:
            J, delta, imgs = rank_one_ideal(Q, ambient.ideal)
        except LiaisonError as e:
            last = str(e)
            continue
        Y = Subscheme(ambient, J, "Y")
        if Y.codim_in_X != 2:
            last = "zero scheme has the wrong codimension"
            continue
        if not Y.classification.is_AG:
            last = "zero scheme is not AG"
            continue
        B = FPModule(E.presentation.twist(-delta))
        A = FPModule.free(R, [d + delta])
        alpha = GradedMatrix(R, B.gens, A.gens, [[c] for c in s], check=False)
        res = ResolutionOfIdeal("N", A, B, alpha, imgs)
        res.certify(Y)
        return AGSection(Y, res, s, d, delta, seed, attempt + 1)
    raise LiaisonError(f"retries exhausted ({retries}): {last}")


def ag_resolution(Y: Subscheme, max_search: int = 40, seed: int = 0) -> ResolutionOfIdeal:
    """N-type resolution 0 -> R(-d) -> E -> I_Y -> 0 of an AG subscheme, E of rank 2.

    The free summands of the N-type module are stripped; a general map
    E -> R whose image generates I_Y mod I_X is found degree by degree and
    the section is the generator of its kernel.
    """
    from ..fpmod import strip_free
    require_codim2(Y)
    if not (Y.is_CI_in_X or Y.classification.is_AG):
        raise LiaisonError("Y is not arithmetically Gorenstein")
    R = Y.ambient.R
    S = R.S
    if Y.is_CI_in_X:
        # Koszul: 0 -> R(-a-b) -> R(-a) + R(-b) -> I_Y / I_X -> 0
        f, g = Y.generators_mod_X
        a, b = f.degree(), g.degree()
        B = FPModule.free(R, [a, b])
        A = FPModule.free(R, [a + b])
        alpha = GradedMatrix(R, B.gens, A.gens, [[g], [R.reduce(-f)]])
        res = ResolutionOfIdeal("N", A, B, alpha, [f, g])
        res.certify(Y)
        return res
    N0, frees = strip_free(ntype_resolution(Y).B)
    if N0.ngens == 0:
        N0 = FPModule.free(R, frees)
    N0 = N0.minimal()
    if N0.rank() != 2:
        raise LiaisonError(f"stripped N-type module has rank {N0.rank()}, expected 2")
    rng = np.random.default_rng(seed)
    RR = FPModule.free(R, [0])
    start = -max(N0.gens)
    for dl in range(start, start + max_search):
        H = hom_degree(N0, RR, dl)
        if not H:
            continue
        # restrict to maps landing in I_Y: normal forms mod I_Y must vanish
        nfs = [[Y.ideal.normal_form(e) for e in h.matrix.entries[0]] for h in H]
        keys = sorted({(i, k) for v in nfs for i, f in enumerate(v) for k in f.terms})
        if keys:
            Mx = np.zeros((len(keys), len(H)), dtype=np.int64)
            pos = {kk: r for r, kk in enumerate(keys)}
            for j, v in enumerate(nfs):
                for i, f in enumerate(v):
                    for k, c in f.terms.items():
                        Mx[pos[(i, k)], j] = c
            ns = nullspace(Mx, R.p)
            combos = list(ns)
        else:
            combos = [np.eye(len(H), dtype=np.int64)[:, j] for j in range(len(H))]
        if not combos:
            continue
        coef = sum((int(rng.integers(1, R.p)) * c % R.p for c in combos), np.zeros(len(H), dtype=np.int64)) % R.p
        psi = [S.zero()] * N0.ngens
        for c, h in zip(coef, H):
            if c:
                psi = [a + b.scale(int(c)) for a, b in zip(psi, h.matrix.entries[0])]
        psi = [R.reduce(g) for g in psi]
        J = Ideal(S, list(R.ideal.gens) + [g for g in psi if g.terms])
        if not J == Y.ideal:
            continue
        K = kernel(_row(R, psi, N0.gens))
        cands = [(K.src[j], K.column(j)) for j in range(K.ncols)
                 if not N0.is_zero_element(K.column(j))]
        if not cands:
            break
        d, s = min(cands, key=lambda t: t[0])
        B = FPModule(N0.presentation.twist(-dl))
        A = FPModule.free(R, [d + dl])
        alpha = GradedMatrix(R, B.gens, A.gens, [[c] for c in s], check=False)
        res = ResolutionOfIdeal("N", A, B, alpha, psi)
        cert = res.certify(Y)
        if cert["ok"]:
            return res
    raise LiaisonError("no single-section N-type resolution found for Y")


def _row(R: QuotientRing, images, degs) -> GradedMatrix:
    return GradedMatrix(R, (0,), degs, [list(images)], check=False)


def _ci_pair(C: Subscheme, Y: "Subscheme | Ideal"):
    if not isinstance(Y, Subscheme):
        Y = Subscheme(C.ambient, Y, "Y")
    g = Y.generators_mod_X
    if len(g) != 2 or Y.codim_in_X != 2:
        raise LiaisonError("linking scheme is not a complete intersection of two forms in X")
    return Y, g[0], g[1]


def mapping_cone_link(C: Subscheme, res: ResolutionOfIdeal, Y, verify: bool = True) -> ResolutionOfIdeal:
    """Resolution of the residual C' of C in the complete intersection Y = X cap (f, g).

    From 0 -> A -> B -> I_C -> 0, the dual of the mapping cone over the
    Koszul complex of (f, g) gives
    0 -> B^dual(-a-b) -> A^dual(-a-b) + R(-b) + R(-a) -> I_C' -> 0,
    and the kinds E and N are exchanged.
    """
    from .links import link
    Y, f, g = _ci_pair(C, Y)
    if not Y.ideal.is_subset(C.ideal):
        raise LiaisonError("C is not contained in Y")
    R = res.ring
    S = R.S
    A, B, alpha = res.A, res.B, res.alpha
    a_, b_ = f.degree(), g.degree()
    s = a_ + b_
    Lh = Lifter(_row(R, res.images, B.gens))
    bf, bg = Lh.lift([f]), Lh.lift([g])
    if bf is None or bg is None:
        raise LiaisonError("lifting failure: certification gap in the input resolution")
    v = [R.reduce(g * x - f * y) for x, y in zip(bf, bg)]
    big = alpha.hstack(B.presentation) if B.presentation.ncols else alpha
    x = Lifter(big).lift(v)
    if x is None:
        raise LiaisonError("lifting failure: Koszul syzygy does not come from A")
    a0 = x[:A.ngens]
    dA, dB = dual(A), dual(B)
    Psi, Omega = dA.embedding, dB.embedding
    # new middle module A^dual(-s) + R(-b) + R(-a)
    Adual = dA
    newB = direct_sum(Adual.twist(-s), FPModule.free(R, [b_]), FPModule.free(R, [a_])) \
        if Adual.ngens else direct_sum(FPModule.free(R, [b_]), FPModule.free(R, [a_]))
    images = []
    for k in range(Psi.ncols):
        acc = S.zero()
        for i in range(A.ngens):
            if Psi.entries[i][k].terms and a0[i].terms:
                acc = acc + Psi.entries[i][k] * a0[i]
        images.append(R.reduce(acc))
    images += [R.reduce(-g), f]
    # new left module B^dual(-s), mapping omega to (omega o alpha, omega(bf), omega(bg))
    newA = FPModule(dB.presentation).twist(-s) if Omega.ncols else FPModule.free(R, ())
    LPsi = Lifter(Psi) if Psi.ncols else None
    cols = []
    for l in range(Omega.ncols):
        om = Omega.column(l)
        r = [R.reduce(sum((om[k] * alpha.entries[k][i] for k in range(B.ngens)), S.zero()))
             for i in range(A.ngens)]
        c = LPsi.lift(r) if LPsi is not None else []
        if c is None:
            raise LiaisonError("functional on A is not in the span of the dual generators")
        wf = R.reduce(sum((om[k] * bf[k] for k in range(B.ngens)), S.zero()))
        wg = R.reduce(sum((om[k] * bg[k] for k in range(B.ngens)), S.zero()))
        cols.append(list(c) + [wf, wg])
    alpha2 = GradedMatrix(R, newB.gens, newA.gens,
                          [[cols[l][i] for l in range(len(cols))] for i in range(newB.ngens)])
    kind = {"E": "N", "N": "E"}.get(res.kind, "plain")
    out = ResolutionOfIdeal(kind, newA, newB, alpha2, images).minimalized()
    if verify:
        C2 = link(C, Y)
        cert = out.certify(C2)
        direct = FPModule.from_ideal(C2.ideal, R)[0]
        length = None if R.is_polynomial_ring() else 3
        b_cone = out.betti_data(length)
        b_direct = direct.betti(length)
        cert["cone"] = {"betti_cone": b_cone.to_json(), "betti_direct": b_direct.to_json(),
                        "betti_equal": b_cone == b_direct, "kind_in": res.kind, "kind_out": kind,
                        "linked_ideal": C2.ideal.to_strings()}
        cert["ok"] = cert["ok"] and b_cone == b_direct
        out.certification = cert
    return out


def gliaison_transform(C: Subscheme, res: ResolutionOfIdeal, Ysec: "AGSection | ResolutionOfIdeal",
                       Y: Subscheme | None = None, verify: bool = True) -> ResolutionOfIdeal:
    """N-type resolution of the residual of C in an AG scheme Y = zero locus of s in E_Y.

    G is the pushout (E_Y^dual + L^dual + M^dual) / N^dual, where M is the
    cover of N; it maps onto I_C' by (psi, mu, m) -> psi(s) - mu(lambda_s).
    """
    from .links import link
    if isinstance(Ysec, AGSection):
        Y, yres = Ysec.Y, Ysec.resolution
    else:
        yres = Ysec
        if Y is None:
            raise LiaisonError("Y must be given with its resolution")
    if res.kind != "N" or not res.A.is_free():
        raise LiaisonError("gliaison_transform needs an N-type resolution of C")
    if yres.A.ngens != 1:
        raise LiaisonError("Y must be given by a single section")
    if not Y.ideal.is_subset(C.ideal):
        raise LiaisonError("C is not contained in Y")
    R = res.ring
    S = R.S
    N, Lm, aC = res.B, res.A, res.alpha
    E = yres.B
    sY = yres.alpha.column(0)
    ds = yres.A.gens[0]
    nL, nN, nE = Lm.ngens, N.ngens, E.ngens
    Lh = Lifter(_row(R, res.images, N.gens))
    lifts = []
    for j in range(nE):
        x = Lh.lift([yres.images[j]])
        if x is None:
            raise LiaisonError("map E_Y -> I_C does not lift to N")
        lifts.append(x)
    phi = GradedMatrix(R, N.gens, E.gens, [[lifts[j][k] for j in range(nE)] for k in range(nN)])
    big = aC.hstack(N.presentation) if N.presentation.ncols else aC
    Lb = Lifter(big)
    PE = E.presentation
    if PE.ncols:
        # correct phi by alpha o lam so that relations of E_Y map to zero in N
        mu = []
        for r in range(PE.ncols):
            v = phi.apply(PE.column(r))
            x = Lb.lift(v)
            if x is None:
                raise LiaisonError("relation image is not in the kernel")
            mu.append(x[:nL])
        LT = Lifter(PE.transpose())
        lam_rows = []
        for k in range(nL):
            rowv = [R.reduce(-mu[r][k]) for r in range(PE.ncols)]
            y = LT.lift(rowv)
            if y is None:
                raise LiaisonError("extension obstruction: E_Y -> I_C lifts to no module map")
            lam_rows.append(y)
        lam = GradedMatrix(R, Lm.gens, E.gens, lam_rows, check=False)
        phi = phi + (aC @ lam)
    x = Lb.lift(phi.apply(sY))
    if x is None:
        raise LiaisonError("section does not map into L")
    lam_s = x[:nL]
    dE, dN = dual(E), dual(N)
    PsiY, Omega = dE.embedding, dN.embedding
    LPsi = Lifter(PsiY)
    g0 = list(PsiY.src) + [-d for d in Lm.gens] + [-d for d in N.gens]
    nPsi = PsiY.ncols
    cols, srcs = [], []
    KP = dE.presentation
    for j in range(KP.ncols):
        cols.append(KP.column(j) + [S.zero()] * (nL + nN))
        srcs.append(KP.src[j])
    for l in range(Omega.ncols):
        om = Omega.column(l)
        r = [R.reduce(sum((phi.entries[k][j] * om[k] for k in range(nN)), S.zero())) for j in range(nE)]
        c = LPsi.lift(r)
        if c is None:
            raise LiaisonError("pushout presentation degenerates: functional not in E_Y^dual")
        u = [R.reduce(sum((aC.entries[k][i] * om[k] for k in range(nN)), S.zero())) for i in range(nL)]
        cols.append(list(c) + u + [R.reduce(-w) for w in om])
        srcs.append(Omega.src[l])
    P = GradedMatrix(R, g0, srcs, [[cols[j][i] for j in range(len(cols))] for i in range(len(g0))])
    P = P.twist(-ds)
    images = []
    for k in range(nPsi):
        acc = S.zero()
        for j in range(nE):
            if PsiY.entries[j][k].terms and sY[j].terms:
                acc = acc + PsiY.entries[j][k] * sY[j]
        images.append(R.reduce(acc))
    images += [R.reduce(-w) for w in lam_s] + [S.zero()] * nN
    A2 = FPModule.free(R, [-d + ds for d in N.gens])
    off = nPsi + nL
    alpha2 = GradedMatrix(R, P.tgt, A2.gens,
                          [[S.one() if (i - off) == j else S.zero() for j in range(nN)]
                           for i in range(len(g0))], check=False)
    out = ResolutionOfIdeal("N", A2, FPModule(P), alpha2, images).minimalized()
    if verify:
        C2 = link(C, Y)
        cert = out.certify(C2)
        cert["linked_ideal_matches"] = out.ideal() == C2.ideal
        cert["ok"] = cert["ok"] and cert["linked_ideal_matches"]
        out.certification = cert
    return out
