"""Liaison traces: append-only chains of verified links, with JSON replay."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..fpmod import stable_compare
from ..polyring import Ideal, PolyRing
from .links import LinkVerification, as_subscheme, verify_link
from .resolution import ResolutionOfIdeal
from .schemes import AmbientScheme, Subscheme

SCHEMA_VERSION = 1


@dataclass
class LiaisonStep:
    kind: str                  # "CI", "AG" or "equivalence"
    before: Subscheme
    after: Subscheme
    Y: Ideal | None = None
    data: dict = field(default_factory=dict)
    transcript: dict = field(default_factory=dict)
    certificate: dict = field(default_factory=dict)   # equivalence steps only

    @property
    def is_link(self) -> bool:
        return self.kind in ("CI", "AG")

    def to_json(self) -> dict:
        d = {"kind": self.kind,
             "before": [g.canonical() for g in self.before.ideal.gens],
             "after": [g.canonical() for g in self.after.ideal.gens],
             "data": self.data, "transcript": self.transcript}
        if self.Y is not None:
            d["Y"] = [g.canonical() for g in self.Y.gens]
        if self.certificate:
            d["certificate"] = self.certificate
        return d


class LiaisonTrace:
    """Start subscheme plus a list of steps; each link step carries its verification."""

    def __init__(self, start: Subscheme):
        self.start = start
        self.steps: list[LiaisonStep] = []
        self.outcome: str | None = None
        self.obstruction: dict | None = None
        self.meta: dict = {}

    @property
    def ambient(self) -> AmbientScheme:
        return self.start.ambient

    @property
    def end(self) -> Subscheme:
        return self.steps[-1].after if self.steps else self.start

    @property
    def num_links(self) -> int:
        return sum(1 for s in self.steps if s.is_link)

    @property
    def parity(self) -> str:
        return "even" if self.num_links % 2 == 0 else "odd"

    def add_link(self, before: Subscheme, after: Subscheme, Y, verification: LinkVerification | None = None,
                 data: dict | None = None) -> LiaisonStep:
        from .links import linking_kind
        Ys = as_subscheme(before.ambient, Y)
        ver = verification or verify_link(before, after, Ys)
        data = dict(data or {})
        data.setdefault("degree_Y", Ys.degree)
        if Ys.is_CI_in_X:
            data.setdefault("degrees_Y", sorted(g.degree() for g in Ys.generators_mod_X))
        step = LiaisonStep(linking_kind(Ys), before, after, Ys.ideal, data, ver.to_json())
        self.steps.append(step)
        return step

    def add_equivalence(self, before: Subscheme, after: Subscheme, before_res: ResolutionOfIdeal,
                        after_res: ResolutionOfIdeal, comparison: dict, data: dict | None = None):
        cert = {"before_resolution": before_res.to_json(), "after_resolution": after_res.to_json(),
                "stable_comparison": comparison,
                "reason": "N-type modules stably equivalent up to shift: same even CI-liaison class"}
        step = LiaisonStep("equivalence", before, after, None, dict(data or {}),
                           {"ok": bool(comparison.get("equal") is True)}, cert)
        self.steps.append(step)
        return step

    def extend(self, other: "LiaisonTrace"):
        self.steps.extend(other.steps)

    def is_verified(self) -> bool:
        return all(s.transcript.get("ok") for s in self.steps)

    def to_json(self) -> dict:
        A = self.ambient
        d = {"schema_version": SCHEMA_VERSION,
             "ambient": A.to_json(),
             "start": [g.canonical() for g in self.start.ideal.gens],
             "steps": [s.to_json() for s in self.steps],
             "num_links": self.num_links, "parity": self.parity,
             "outcome": self.outcome,
             "end": {"ideal": [g.canonical() for g in self.end.ideal.gens],
                     "is_CI": self.end.is_CI_in_X or self.end.classification.is_CI,
                     "is_CI_in_X": self.end.is_CI_in_X,
                     "degree": self.end.degree}}
        if self.obstruction is not None:
            d["obstruction"] = self.obstruction
        if self.meta:
            d["meta"] = self.meta
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


def emit_trace(trace: LiaisonTrace, path) -> str:
    text = trace.dumps()
    with open(path, "w") as fh:
        fh.write(text + "\n")
    return text


@dataclass
class ReplayResult:
    ok: bool
    failed_step: int | None = None
    reason: str = ""
    steps_checked: int = 0

    def to_json(self):
        return {"ok": self.ok, "failed_step": self.failed_step, "reason": self.reason,
                "steps_checked": self.steps_checked}


def _ambient_from_json(d: dict) -> AmbientScheme:
    S = PolyRing(d["variables"], d["characteristic"])
    I = Ideal(S, [S.parse(g) for g in d["ideal"]])
    return AmbientScheme(S, I, d.get("ell"), d.get("name", "X"))


def replay(source) -> ReplayResult:
    """Re-run every verification stored in a trace (path, JSON text or dict)."""
    if isinstance(source, dict):
        d = source
    else:
        text = source
        if not str(source).lstrip().startswith("{"):
            with open(source) as fh:
                text = fh.read()
        d = json.loads(text)
    if d.get("schema_version") != SCHEMA_VERSION:
        return ReplayResult(False, None, "unsupported schema version")
    try:
        A = _ambient_from_json(d["ambient"])
        S = A.S
        sub = lambda gens, nm=None: Subscheme(A, Ideal(S, [S.parse(g) for g in gens]), nm)
        cur = sub(d["start"], "C")
    except Exception as e:   # malformed header
        return ReplayResult(False, None, f"cannot rebuild trace: {e}")
    for i, st in enumerate(d["steps"]):
        try:
            before = sub(st["before"])
            after = sub(st["after"])
            if not before.same_as(cur):
                return ReplayResult(False, i, "step does not start where the previous one ended", i)
            if st["kind"] in ("CI", "AG"):
                Y = sub(st["Y"], "Y")
                from .links import linking_kind
                if linking_kind(Y) != st["kind"]:
                    return ReplayResult(False, i, "linking scheme kind mismatch", i)
                ver = verify_link(before, after, Y)
                if not ver.ok:
                    bad = [k for k, v in ver.checks.items() if not v]
                    return ReplayResult(False, i, f"link verification failed: {bad or ver.error}", i)
            elif st["kind"] == "equivalence":
                cert = st["certificate"]
                rb = ResolutionOfIdeal.from_json(A.R, cert["before_resolution"])
                ra = ResolutionOfIdeal.from_json(A.R, cert["after_resolution"])
                for nm, r, C in (("before", rb, before), ("after", ra, after)):
                    c = r.certify(C, mcm_check=False)
                    if not c["ok"]:
                        return ReplayResult(False, i, f"{nm} resolution does not certify", i)
                sc = stable_compare(rb.B, ra.B)
                if sc.equal is not True:
                    return ReplayResult(False, i, f"N-type modules not stably equal: {sc.reason}", i)
            else:
                return ReplayResult(False, i, f"unknown step kind {st['kind']}", i)
        except Exception as e:
            return ReplayResult(False, i, f"step could not be rebuilt: {e}", i)
        cur = after
    end = d.get("end")
    if end is not None:
        try:
            if not sub(end["ideal"]).same_as(cur):
                return ReplayResult(False, len(d["steps"]), "recorded end differs from last step",
                                    len(d["steps"]))
        except Exception as e:
            return ReplayResult(False, len(d["steps"]), f"end could not be rebuilt: {e}", len(d["steps"]))
    return ReplayResult(True, None, "all steps verified", len(d["steps"]))
