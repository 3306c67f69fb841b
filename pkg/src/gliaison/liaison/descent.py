"""Peeling rank-2 summands off N-type resolutions, and glicci descent."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..fpmod import FPModule, direct_sum, stable_compare, strip_free
from ..graded import GradedMatrix, Lifter
from ..polyring import Ideal
from .links import link, random_ci_in_x_containing, verify_link
from .resolution import ResolutionOfIdeal, ntype_resolution, rank_one_ideal
from .schemes import LiaisonError, Subscheme, require_codim2
from .trace import LiaisonTrace

DEFAULT_RETRIES = 8
DEFAULT_MAX_STEPS = 12


@dataclass
class PeelResult:
    D: Subscheme
    trace: LiaisonTrace
    resolution: ResolutionOfIdeal       # N-type resolution of D with middle module N'
    details: dict = field(default_factory=dict)


def _mat(R, tgt, src, cols):
    return GradedMatrix(R, tgt, src, [[cols[j][i] for j in range(len(cols))] for i in range(len(tgt))])


def _dot(R, u, v):
    S = R.S
    return R.reduce(sum((a * b for a, b in zip(u, v) if a.terms and b.terms), S.zero()))


def peel_descend(C: Subscheme, res: ResolutionOfIdeal, E: FPModule, Nprime: FPModule,
                 seed: int = 0, retries: int = DEFAULT_RETRIES) -> PeelResult:
    """Replace the N-type module E + N' of C by N', moving within the even class.

    Builds C' with N-type resolution R(-b)^(r+1) -> E + N' (so C' is evenly
    CI-linked to C), an AG scheme Y containing C' from a section of E and a
    complete intersection Z, and returns D with C' ~Y D' ~Z D.
    """
    require_codim2(C)
    A = C.ambient
    R = A.R
    S = R.S
    if E.rank() != 2:
        raise LiaisonError("the summand to peel must have rank 2")
    rN = Nprime.rank()
    if rN < 2:
        raise LiaisonError("rank of the complementary summand is too small (need at least 2)")
    E = E.minimal()
    Nprime = Nprime.minimal()
    W = direct_sum(E, Nprime)
    cmp_ = stable_compare(res.B, W)
    if cmp_.equal is not True:
        raise LiaisonError(f"split decomposition not verified: {cmp_.reason}")
    rng = np.random.default_rng(seed)
    k = rN - 1
    b0 = max(W.gens)
    schedule = [b0, b0, b0, b0 + 1, b0 + 1, b0 + 1, b0 + 2, b0 + 2][:retries]
    log = []
    nE = E.ngens
    for attempt, b in enumerate(schedule):
        note = {"attempt": attempt + 1, "b": b}
        log.append(note)
        try:
            cols = [Nprime.random_element(b, rng) for _ in range(k)]
            phiD = _mat(R, Nprime.gens, [b] * k, cols)
            Q = FPModule(Nprime.presentation.hstack(phiD))
            JD, delta, hD = rank_one_ideal(Q, A.ideal)
            D = Subscheme(A, JD, "D")
            if D.codim_in_X != 2:
                note["fail"] = "D has wrong codimension"
                continue
            nf = Nprime.random_element(b, rng)
            ng = Nprime.random_element(b, rng)
            f, g = _dot(R, hD, nf), _dot(R, hD, ng)
            if f.is_zero() or g.is_zero():
                note["fail"] = "zero form for Z"
                continue
            Zi = Ideal(S, list(A.ideal.gens) + [f, g])
            if Zi.dim() != A.ideal.dim() - 2:
                note["fail"] = "Z is not a complete intersection in X"
                continue
            v = [R.reduce(g * x - f * y) for x, y in zip(nf, ng)]
            big = phiD.hstack(Nprime.presentation) if Nprime.presentation.ncols else phiD
            x = Lifter(big).lift(v)
            if x is None:
                note["fail"] = "Koszul syzygy does not lift"
                continue
            c = [R.reduce(-h) for h in x[:k]] + [g, R.reduce(-f)]
            ts = [E.random_element(b, rng) for _ in range(k + 2)]
            s = [R.reduce(sum((ci * t[j] for ci, t in zip(c, ts)), S.zero())) for j in range(nE)]
            if E.is_zero_element(s):
                note["fail"] = "zero section"
                continue
            ds = 2 * b + delta
            QY = FPModule(E.presentation.hstack(GradedMatrix(R, E.gens, [ds], [[e] for e in s])))
            JY, _, _ = rank_one_ideal(QY, A.ideal)
            Y = Subscheme(A, JY, "Y")
            if Y.codim_in_X != 2 or not Y.classification.is_AG:
                note["fail"] = "Y is not an AG codimension-2 scheme"
                continue
            Tcols = [list(ts[i]) + list(([*cols, nf, ng])[i]) for i in range(k + 2)]
            Tm = _mat(R, W.gens, [b] * (k + 2), Tcols)
            QC = FPModule(W.presentation.hstack(Tm))
            JC, deltaC, hC = rank_one_ideal(QC, A.ideal)
            Cp = Subscheme(A, JC, "C'")
            if Cp.codim_in_X != 2:
                note["fail"] = "C' has wrong codimension"
                continue
            if not Y.ideal.is_subset(Cp.ideal) or not Zi.is_subset(D.ideal):
                note["fail"] = "containment failed"
                continue
            Dp = link(D, Zi, "D'")
            ver1 = verify_link(Cp, Dp, Y)
            ver2 = verify_link(Dp, D, Zi)
            if not (ver1.ok and ver2.ok):
                note["fail"] = "link verification failed"
                note["verifications"] = [ver1.to_json(), ver2.to_json()]
                continue
        except LiaisonError as e:
            note["fail"] = str(e)
            continue
        # resolutions for the certificates
        Wn = FPModule(W.presentation.twist(-deltaC))
        Cres = ResolutionOfIdeal("N", FPModule.free(R, [b + deltaC] * (k + 2)), Wn,
                                 GradedMatrix(R, Wn.gens, [b + deltaC] * (k + 2), Tm.entries, check=False), hC)
        cc = Cres.certify(Cp, mcm_check=False)
        Nn = FPModule(Nprime.presentation.twist(-delta))
        Dres = ResolutionOfIdeal("N", FPModule.free(R, [b + delta] * k), Nn,
                                 GradedMatrix(R, Nn.gens, [b + delta] * k, phiD.entries, check=False), hD)
        dc = Dres.certify(D, mcm_check=False)
        if not (cc["ok"] and dc["ok"]):
            note["fail"] = "resolution certification failed"
            continue
        comparison = stable_compare(res.B, Wn)
        tr = LiaisonTrace(C)
        tr.add_equivalence(C, Cp, res, Cres, comparison.to_json(),
                           {"peeled_rank": 2, "b": b, "sections": k})
        tr.add_link(Cp, Dp, Y, ver1, {"role": "AG link from a section of the peeled summand"})
        tr.add_link(Dp, D, Zi, ver2, {"role": "CI link by two sections of the twisted ideal of D",
                                      "degrees_Y": [f.degree(), g.degree()]})
        details = {"b": b, "attempts": attempt + 1, "log": log,
                   "split_certificate": cmp_.to_json(),
                   "D_ntype_stably_Nprime": stable_compare(Dres.B, Nprime).to_json()}
        if C.dimension >= 1:
            try:
                details["rao_equal_up_to_twist"] = C.rao.isomorphic(D.rao)
            except LiaisonError as e:
                details["rao_equal_up_to_twist"] = f"unavailable: {e}"
        else:
            details["rao_equal_up_to_twist"] = "not applicable: zero-dimensional"
        return PeelResult(D, tr, Dres, details)
    raise LiaisonError(f"genericity retries exhausted ({len(schedule)}): {log[-1].get('fail')}")


def peel_plan(C: Subscheme, res: ResolutionOfIdeal | None = None, seed: int = 0, spinors=None) -> dict:
    """Choose a rank-2 spinor block E and the complement N' of the N-type module of C.

    N' is the remaining spinor summands, padded with free summands up to
    rank 2; when E is the only spinor block, D ends up with a dissocie
    rank-2 N-type module and is a complete intersection in X.
    """
    from ..quadric import mcm_decompose, spinor_modules
    A = C.ambient
    R = A.R
    res = res or ntype_resolution(C)
    N0, frees = strip_free(res.B)
    if N0.ngens == 0:
        raise LiaisonError("N-type module is free: nothing to peel")
    if not A.is_quadric():
        raise LiaisonError("MCM decomposition undecided on a non-quadric ambient")
    spinors = spinors or spinor_modules(R)
    dec = mcm_decompose(N0, spinors, seed=seed)
    if not dec.certified or dec.free:
        raise LiaisonError(f"decomposition not found: {dec.transcript}")
    lookup = dict(spinors)
    mods = [lookup[l].twist(t) for l, t in dec.spinors]
    # one spinor on odd-dimensional quadrics, a pair otherwise
    take, rk = 0, 0
    while take < len(mods) and rk < 2:
        rk += mods[take].rank()
        take += 1
    if rk != 2:
        raise LiaisonError("no rank-2 block of spinor summands")
    E = direct_sum(*mods[:take]) if take > 1 else mods[0]
    # the N-type module only matters up to free summands, so the free part
    # is replaced by the smallest padding that keeps rank N' >= 2
    rest = mods[take:]
    Np = direct_sum(*rest) if rest else None
    added = []
    have = Np.rank() if Np is not None else 0
    if have < 2:
        added = [min(E.minimal().gens) - 1] * (2 - have)
        M = FPModule.free(R, added)
        Np = direct_sum(Np, M) if Np is not None else M
    return {"E": E, "Nprime": Np, "summands": [list(x) for x in dec.spinors[:take]],
            "added_free": added, "decomposition": dec, "resolution": res, "spinors": spinors}


def _gaeta_link(cur: Subscheme, seed: int, retries: int):
    gens = sorted(cur.generators_mod_X, key=lambda g: g.degree())
    a, b = gens[0].degree(), gens[1].degree()
    Y = random_ci_in_x_containing(cur, (a, b), seed=seed, retries=retries)
    nxt = link(cur, Y, f"C{seed}")
    return Y, nxt


def glicci_descent(C: Subscheme, strategy: str = "auto", seed: int = 0,
                   max_steps: int = DEFAULT_MAX_STEPS, retries: int = DEFAULT_RETRIES):
    """Drive C to a complete intersection by verified links; returns (trace, outcome).

    On a quadric ambient the N-type module is split into free and spinor
    summands and spinors are peeled one at a time; a free N-type module is
    reduced by Gaeta-style CI links in the two lowest generator degrees.
    A nonzero Rao module stops the descent, since it survives every link
    up to twist and duality.
    """
    require_codim2(C)
    trace = LiaisonTrace(C)
    trace.meta = {"seed": seed, "max_steps": max_steps, "retries": retries, "strategy": strategy}
    cur = C
    spinors = None
    for step in range(max_steps):
        if cur.is_CI_in_X:
            trace.outcome = "reached_CI"
            return trace, "reached_CI"
        if not cur.is_ACM:
            try:
                rao = cur.rao.to_json()
            except LiaisonError as e:
                rao = {"error": str(e)}
            trace.obstruction = {"reason": "Rao module is a nonzero liaison invariant; "
                                           "the curve is not ACM, hence not glicci",
                                 "rao_module": rao}
            trace.outcome = "stalled"
            return trace, "stalled"
        sd = seed + 1000 * (step + 1)
        res = ntype_resolution(cur)
        N0, frees = strip_free(res.B)
        if N0.ngens == 0:
            try:
                Y, nxt = _gaeta_link(cur, sd, retries)
            except LiaisonError as e:
                trace.obstruction = {"reason": f"no complete intersection found: {e}"}
                break
            ver = verify_link(cur, nxt, Y)
            if not ver.ok:
                trace.obstruction = {"reason": "link verification failed", "transcript": ver.to_json()}
                break
            trace.add_link(cur, nxt, Y, ver, {"role": "CI link on two minimal generators"})
            cur = nxt
            continue
        try:
            plan = peel_plan(cur, res, seed=sd, spinors=spinors)
        except LiaisonError as e:
            trace.obstruction = {"reason": str(e), "nonfree_generators": list(N0.gens)}
            break
        spinors = plan["spinors"]
        E, Np, lab, added = plan["E"], plan["Nprime"], plan["summands"], plan["added_free"]
        try:
            pr = peel_descend(cur, res, E, Np, seed=sd, retries=retries)
        except LiaisonError as e:
            trace.obstruction = {"reason": f"peel failed: {e}"}
            break
        for st in pr.trace.steps:
            st.data.setdefault("peeled", {"summands": lab, "added_free": added})
        trace.extend(pr.trace)
        cur = pr.D
    else:
        if cur.is_CI_in_X:
            trace.outcome = "reached_CI"
            return trace, "reached_CI"
        trace.obstruction = {"reason": f"max_steps={max_steps} reached"}
    trace.outcome = "stalled"
    return trace, "stalled"


def decide_even_class(C1: Subscheme, C2: Subscheme | None = None, construct: bool = False,
                      seed: int = 0) -> dict:
    """Glicci verdict for C1 and, for a pair, the even-class verdict via Rao modules."""
    from ..quadric import mcm_decompose
    A = C1.ambient
    if not A.is_quadric() or A.dimension != 3:
        raise LiaisonError("decision procedure requires a smooth quadric threefold ambient")
    report = {"orientability": "asserted"}

    def single(C):
        out = {}
        r = C.rao
        out["rao"] = r.to_json()
        if r.is_zero():
            out["ACM"] = True
            out["glicci"] = True
            res = ntype_resolution(C)
            N0, frees = strip_free(res.B)
            if N0.ngens:
                dec = mcm_decompose(N0)
                out["certificate"] = dec.to_json()
                out["certificate"]["free"] = [{"twist": -d} for d in frees]
            else:
                out["certificate"] = {"free": [{"twist": -d} for d in frees], "spinors": [],
                                      "certified": True, "note": "N-type module is free (licci)"}
            if construct:
                tr, outcome = glicci_descent(C, seed=seed)
                out["descent"] = {"outcome": outcome, "trace": tr.to_json()}
        else:
            out["ACM"] = False
            out["glicci"] = False
            out["reason"] = "nonzero Rao module; glicci curves are ACM"
        return out

    report["C1"] = single(C1)
    if C2 is not None:
        report["C2"] = single(C2)
        r1, r2 = C1.rao, C2.rao
        iso = r1.isomorphic(r2)
        if iso == "undecided":
            report["same_even_class"] = "undecided"
        elif iso is None:
            report["same_even_class"] = False
        else:
            report["same_even_class"] = True
            report["rao_shift"] = iso
    return report
