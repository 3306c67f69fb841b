"""Command-line front end: ``liaison <verb> --file F ...``.

Exit codes: 0 success, 1 a verification or computation failed, 2 usage or
input error.  Reports are JSON by default and carry the package version,
the seed and the computation caps; wall-clock time lives under ``timing``
so that runs can be compared byte for byte after dropping that field.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
import time

from . import __version__
from .fpmod import direct_sum, strip_free
from .polyring import GBLimitError, Ideal, InhomogeneousError, ParseError, parse_file
from .resolve import betti, classify, free_resolution

VERBS = ("gb", "hf", "betti", "res", "classify", "link", "rao", "etype", "ntype", "cone",
         "gtransform", "peel", "mcm", "spinor", "descend", "evenclass", "splitcheck", "replay")

CAPS = {"gb_max_degree": 40, "gb_max_pairs": 10**6, "retries": 8, "window_pad": 6}


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    def __init__(self, msg, report=None):
        super().__init__(msg)
        self.report = report


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="liaison", description=__doc__.splitlines()[0])
    ap.add_argument("verb", choices=VERBS)
    ap.add_argument("--file", help="input file with ring and ideal declarations (a trace for replay)")
    ap.add_argument("--ambient", help="ideal name of the ambient X, or Pn for projective space")
    ap.add_argument("--curve", help="ideal name of the subscheme C")
    ap.add_argument("--by", help="ideal name of the linking scheme (splitcheck: Y,Z; evenclass: C2)")
    ap.add_argument("--degrees", help="a,b degrees of a random complete intersection")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--window", help="lo,hi degree window (hf)")
    ap.add_argument("--max-steps", type=int, default=12)
    ap.add_argument("--degree", type=int, help="section degree (spinor)")
    ap.add_argument("--construct", action="store_true", help="evenclass: also build descent traces")
    ap.add_argument("--trace-out", help="write the liaison trace JSON to this path")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    return ap


def _pair(s: str, what: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in s.split(","))
    except ValueError:
        raise UsageError(f"--{what} expects two integers a,b, got {s!r}") from None
    return a, b


class Context:
    def __init__(self, args):
        self.args = args
        if not args.file:
            raise UsageError("--file is required")
        try:
            with open(args.file) as fh:
                text = fh.read()
        except OSError as e:
            raise UsageError(f"cannot read {args.file}: {e.strerror}") from None
        self.text = text
        self._parsed = None

    @property
    def parsed(self):
        if self._parsed is None:
            try:
                self._parsed = parse_file(self.text)
            except (ParseError, InhomogeneousError) as e:
                raise UsageError(f"{self.args.file}: {e}") from None
        return self._parsed

    @property
    def S(self):
        return self.parsed.ring

    def ideal(self, name: str | None, flag: str) -> Ideal:
        if not name:
            raise UsageError(f"--{flag} is required for this verb")
        if name not in self.parsed.ideals:
            raise UsageError(f"no ideal named {name!r} in {self.args.file}")
        return Ideal(self.S, self.parsed.ideals[name], name)

    def ambient(self):
        from .liaison import AmbientScheme
        name = self.args.ambient
        if name is None or re.fullmatch(r"P\d+", name) and name not in self.parsed.ideals:
            if name is not None and int(name[1:]) != self.S.nvars - 1:
                raise UsageError(f"{name} does not match the {self.S.nvars} variables of the ring")
            return AmbientScheme(self.S, None, name=name or f"P{self.S.nvars - 1}")
        return AmbientScheme(self.S, self.ideal(name, "ambient"), name=name)

    def sub(self, X, name, flag="curve"):
        from .liaison import Subscheme
        return Subscheme(X, self.ideal(name, flag), name)

    def linking(self, X, C):
        from .liaison import random_ci_in_x_containing
        if self.args.by:
            return self.ideal(self.args.by, "by")
        if self.args.degrees:
            return random_ci_in_x_containing(C, _pair(self.args.degrees, "degrees"), seed=self.args.seed,
                                             retries=CAPS["retries"])
        raise UsageError("give the linking scheme with --by or --degrees a,b")


def _gens(I):
    return [g.canonical() for g in I.gens]


def _res_json(res):
    return {"kind": res.kind, "A_degrees": list(res.A.gens), "B_degrees": list(res.B.gens),
            "B_free": res.B.is_free(), "A_free": res.A.is_free(),
            "resolution": res.to_json(), "certification": res.certification}


def _require(ok: bool, msg: str, report: dict):
    if not ok:
        raise VerificationFailed(msg, report)


# -- verbs ----------------------------------------------------------------------

def v_gb(cx):
    I = cx.ideal(cx.args.curve, "curve")
    return {"ideal": cx.args.curve, "groebner_basis": [g.canonical() for g in I.groebner_basis()]}


def v_hf(cx):
    I = cx.ideal(cx.args.curve, "curve")
    lo, hi = _pair(cx.args.window, "window") if cx.args.window else (0, 10)
    hs = I.hilbert_series()
    return {"window": [lo, hi], "values": {str(d): hs.value(d) for d in range(lo, hi + 1)},
            "numerator": {str(k): v for k, v in sorted(hs.numerator.items())},
            "dim": I.dim(), "degree": I.degree()}


def v_betti(cx):
    I = cx.ideal(cx.args.curve, "curve")
    B = betti(I)
    return {"betti": B.to_json(), "totals": B.totals(), "_text": str(B)}


def v_res(cx):
    I = cx.ideal(cx.args.curve, "curve")
    F = free_resolution(I)
    return {"complete": F.complete, "modules": [list(m.degrees) for m in F.modules],
            "maps": [m.to_strings() for m in F.maps], "betti": F.betti().to_json(),
            "_text": str(F.betti())}


def v_classify(cx):
    I = cx.ideal(cx.args.curve, "curve")
    out = classify(I).to_json()
    out["degree"] = I.degree()
    if cx.args.ambient:
        X = cx.ambient()
        C = cx.sub(X, cx.args.curve)
        out["codim_in_X"] = C.codim_in_X
        out["is_CI_in_X"] = C.is_CI_in_X
        out["generators_mod_X"] = len(C.generators_mod_X)
    return out


def v_link(cx):
    from .liaison import link, verify_link
    X = cx.ambient()
    C = cx.sub(X, cx.args.curve)
    Y = cx.linking(X, C)
    C2 = link(C, Y)
    ver = verify_link(C, C2, Y)
    out = {"Y": _gens(Y), "linked": _gens(C2.ideal), "degree": C2.degree, "verification": ver.to_json()}
    _require(ver.ok, "link verification failed", out)
    return out


def v_rao(cx):
    from .liaison import rao_module
    X = cx.ambient()
    C = cx.sub(X, cx.args.curve)
    M = rao_module(C)
    degs = M.degrees()
    return {"dims": {str(d): M.dims[d] for d in degs}, "length": M.length(),
            "window": [degs[0], degs[-1]] if degs else None, "ACM": C.is_ACM}


def _certified(res, C, label):
    cert = res.certify(C)
    out = _res_json(res)
    _require(cert["ok"], f"{label} resolution failed certification", out)
    return out


def v_etype(cx):
    from .liaison import etype_resolution
    X = cx.ambient()
    C = cx.sub(X, cx.args.curve)
    return _certified(etype_resolution(C), C, "E-type")


def v_ntype(cx):
    from .liaison import ntype_resolution
    X = cx.ambient()
    C = cx.sub(X, cx.args.curve)
    res = ntype_resolution(C)
    out = _certified(res, C, "N-type")
    N0, frees = strip_free(res.B)
    out["stripped"] = {"nonfree_generators": list(N0.gens), "free_degrees": list(frees)}
    return out


def v_cone(cx):
    from .liaison import etype_resolution, mapping_cone_link
    X = cx.ambient()
    C = cx.sub(X, cx.args.curve)
    Y = cx.linking(X, C)
    res = etype_resolution(C)
    res.certify(C)
    out = mapping_cone_link(C, res, Y)
    rep = _res_json(out)
    rep["Y"] = _gens(Y)
    _require(out.certification.get("ok", False), "mapping cone certification failed", rep)
    return rep


def v_gtransform(cx):
    from .liaison import ag_resolution, gliaison_transform, ntype_resolution
    X = cx.ambient()
    C = cx.sub(X, cx.args.curve)
    Y = cx.sub(X, cx.args.by, "by")
    yres = ag_resolution(Y, seed=cx.args.seed)
    out = gliaison_transform(C, ntype_resolution(C), yres, Y)
    rep = _res_json(out)
    rep["Y_resolution"] = _res_json(yres)
    rep["linked"] = _gens(out.ideal())
    _require(out.certification.get("ok", False), "G-liaison transform certification failed", rep)
    return rep


def v_peel(cx):
    from .liaison import peel_descend, peel_plan
    X = cx.ambient()
    C = cx.sub(X, cx.args.curve)
    plan = peel_plan(C, seed=cx.args.seed)
    pr = peel_descend(C, plan["resolution"], plan["E"], plan["Nprime"], seed=cx.args.seed,
                      retries=CAPS["retries"])
    rep = {"peeled": plan["summands"], "added_free": plan["added_free"],
           "D": _gens(pr.D.ideal), "D_is_CI": pr.D.classification.is_CI,
           "D_is_CI_in_X": pr.D.is_CI_in_X, "details": pr.details, "trace": pr.trace.to_json()}
    _write_trace(cx, pr.trace)
    _require(pr.trace.is_verified(), "peel trace failed verification", rep)
    return rep


def v_mcm(cx):
    from .liaison import ntype_resolution
    from .quadric import mcm_decompose
    X = cx.ambient()
    C = cx.sub(X, cx.args.curve)
    res = ntype_resolution(C)
    dec = mcm_decompose(res.B, check_mcm=True)
    rep = {"module": "N-type module of " + cx.args.curve, "decomposition": dec.to_json()}
    _require(dec.certified, "decomposition not certified", rep)
    return rep


def v_spinor(cx):
    from .quadric import ag_scheme_from_section, spinor_mf, spinor_modules
    X = cx.ambient()
    if not X.is_quadric():
        raise UsageError("spinor needs a quadric hypersurface ambient")
    mf = spinor_mf(X.ideal.mingens()[0], seed=cx.args.seed)
    rep = {"matrix_factorization": mf.to_json(), "AB_equals_qI": mf.verify()}
    if cx.args.degree is not None:
        mods = [m for _, m in spinor_modules(X.R, mf)]
        # rank-one spinors on an even-dimensional quadric: use Spin+ + Spin-
        Sp = mods[0] if mods[0].rank() == 2 else direct_sum(*mods[:2])
        ag = ag_scheme_from_section(Sp, cx.args.degree, seed=cx.args.seed, ambient=X)
        rep["section"] = ag.to_json()
    _require(rep["AB_equals_qI"], "matrix factorization identity failed", rep)
    return rep


def _write_trace(cx, trace):
    if cx.args.trace_out:
        from .liaison import emit_trace
        emit_trace(trace, cx.args.trace_out)


def v_descend(cx):
    from .liaison import glicci_descent
    X = cx.ambient()
    C = cx.sub(X, cx.args.curve)
    trace, outcome = glicci_descent(C, seed=cx.args.seed, max_steps=cx.args.max_steps,
                                    retries=CAPS["retries"])
    _write_trace(cx, trace)
    rep = {"outcome": outcome, "trace": trace.to_json()}
    _require(trace.is_verified(), "descent produced an unverified step", rep)
    return rep


def v_evenclass(cx):
    from .liaison import decide_even_class
    X = cx.ambient()
    C1 = cx.sub(X, cx.args.curve)
    C2 = cx.sub(X, cx.args.by, "by") if cx.args.by else None
    return decide_even_class(C1, C2, construct=cx.args.construct, seed=cx.args.seed)


def v_splitcheck(cx):
    from .liaison import intersection_split_check
    X = cx.ambient()
    C = cx.sub(X, cx.args.curve)
    if not cx.args.by or "," not in cx.args.by:
        raise UsageError("splitcheck needs --by Y,Z naming two divisor ideals")
    yn, zn = cx.args.by.split(",", 1)
    return {"split": intersection_split_check(C, cx.ideal(yn, "by"), cx.ideal(zn, "by"))}


def v_replay(cx):
    from .liaison import replay
    try:
        json.loads(cx.text)
    except ValueError:
        raise UsageError(f"{cx.args.file} is not a JSON trace") from None
    r = replay(cx.text)
    rep = r.to_json()
    _require(r.ok, f"replay failed at step {r.failed_step}", rep)
    return rep


DISPATCH = {v: globals()["v_" + v] for v in VERBS}


def _text(result: dict, indent: int = 0) -> str:
    if "_text" in result:
        return result["_text"]
    pad = "  " * indent
    lines = []
    for k, v in result.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_text(v, indent + 1))
        else:
            lines.append(f"{pad}{k}: {json.dumps(v) if isinstance(v, list) else v}")
    return "\n".join(lines)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    from .liaison import LiaisonError
    from .quadric import QuadricError
    t0 = time.perf_counter()
    status, result, error = 0, None, None
    try:
        cx = Context(args)
        result = DISPATCH[args.verb](cx)
    except UsageError as e:
        print(f"liaison: error: {e}", file=stderr)
        return 2
    except VerificationFailed as e:
        status, result, error = 1, e.report, str(e)
    except (LiaisonError, QuadricError, GBLimitError) as e:
        status, error = 1, str(e)
    report = {"tool": "liaison", "version": __version__, "verb": args.verb, "seed": args.seed,
              "caps": dict(CAPS, max_steps=args.max_steps), "status": "ok" if status == 0 else "failed"}
    if result is not None:
        report["result"] = {k: v for k, v in result.items() if k != "_text"}
    if error:
        report["error"] = error
    report["timing"] = {"seconds": round(time.perf_counter() - t0, 3)}
    if args.format == "json":
        print(json.dumps(report, sort_keys=True, indent=2), file=stdout)
    else:
        if result is not None:
            print(_text(result), file=stdout)
        if error:
            print(f"error: {error}", file=stdout)
    if error:
        print(f"liaison: {error}", file=stderr)
    return status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
