import json

import numpy as np
import pytest

from gliaison.fpmod import FPModule, stable_compare
from gliaison.liaison import (LiaisonError, LiaisonTrace, Subscheme, ag_resolution, decide_even_class,
                              emit_trace, etype_resolution, gliaison_transform, glicci_descent,
                              intersection_split_check, link, mapping_cone_link, ntype_resolution,
                              peel_descend, peel_plan, random_ci_in_x_containing, rao_module, replay,
                              verify_link)
from gliaison.polyring import Ideal

from conftest import ideal


def test_link_line_in_two_quadrics(P3, p3_curves):
    S = P3.S
    Y = ideal(S, "x*z", "y*w")
    C2 = link(p3_curves["line"], Y)
    assert C2.ideal == ideal(S, "x*z", "y*w", "z*w") and C2.degree == 3
    ver = verify_link(p3_curves["line"], C2, Y)
    assert ver.ok and all(ver.checks.values())


def test_link_preconditions(P3, p3_curves):
    S = P3.S
    with pytest.raises(LiaisonError, match="not contained"):
        link(p3_curves["line"], ideal(S, "z", "w"))
    with pytest.raises(LiaisonError, match="codimension"):
        link(p3_curves["line"], ideal(S, "x*y"))
    with pytest.raises(LiaisonError, match="Gorenstein"):
        link(p3_curves["line"], ideal(S, "x^2", "x*y", "y^2"))


def test_random_ci_is_deterministic(Q3, q3_curves):
    C = q3_curves["cubic"]
    Y1 = random_ci_in_x_containing(C, (2, 2), seed=5)
    Y2 = random_ci_in_x_containing(C, (2, 2), seed=5)
    assert Y1 == Y2
    with pytest.raises(LiaisonError):
        random_ci_in_x_containing(q3_curves["conic"], (0, 2))


def test_double_link_and_degrees(Q3, q3_curves):
    for i, name in enumerate(("line", "skew", "cubic", "conic")):
        C = q3_curves[name]
        Y = random_ci_in_x_containing(C, (2, 2), seed=i)
        C2 = link(C, Y)
        assert link(C2, Y).ideal == C.ideal
        assert C.degree + C2.degree == Subscheme(Q3, Y).degree


def test_rao_modules(P3, Q3, p3_curves, q3_curves):
    assert rao_module(p3_curves["line"]).is_zero()
    assert rao_module(p3_curves["skew"]).dims == {0: 1}
    assert rao_module(q3_curves["skew"]).dims == {0: 1}
    assert rao_module(q3_curves["conicline"]).dims == {0: 1}


def test_link_dualizes_rao(P3):
    from gliaison.polyring import intersect
    S = P3.S
    # a line and a twisted cubic that miss each other: Rao dims 1, 2 in degrees 0, 1
    I = intersect(ideal(S, "x + w", "y - z"), ideal(S, "x*z - y^2", "x*w - y*z", "y*w - z^2"))
    C = Subscheme(P3, I, "line+cubic")
    M = rao_module(C)
    assert M.dims == {0: 1, 1: 2}
    for seed in range(2):
        Y = random_ci_in_x_containing(C, (3, 3), seed=seed)
        M2 = rao_module(link(C, Y))
        assert [M2.dims[d] for d in M2.degrees()] == [2, 1]
        assert M.graded_dual().isomorphic(M2) is not None


def test_etype_ntype_certify(P3, Q3, p3_curves, q3_curves):
    for C in (p3_curves["skew"], p3_curves["cubic"], q3_curves["cubic"], q3_curves["skew"]):
        e = etype_resolution(C)
        assert e.certify(C)["ok"] and e.B.is_free()
        n = ntype_resolution(C)
        assert n.certify(C)["ok"] and n.A.is_free()


def test_mapping_cone_flips_kind(Q3, q3_curves):
    C = q3_curves["cubic"]
    Y = random_ci_in_x_containing(C, (2, 2), seed=0)
    e = etype_resolution(C)
    out = mapping_cone_link(C, e, Y)
    assert out.kind == "N" and out.certification["ok"]
    assert out.certification["cone"]["betti_equal"]
    C2 = link(C, Y)
    back = mapping_cone_link(C2, out, Y)
    assert back.kind == "E" and back.certification["ok"]


def test_mapping_cone_p3_line(P3, p3_curves):
    S = P3.S
    out = mapping_cone_link(p3_curves["line"], etype_resolution(p3_curves["line"]), ideal(S, "x", "y*z"))
    assert out.ideal() == ideal(S, "x", "z")
    assert out.certification["ok"]


def test_ag_resolution_and_transform(Q3, quintic):
    res = ag_resolution(quintic.Y)
    assert res.A.ngens == 1 and res.B.rank() == 2 and res.certification["ok"]
    E = quintic.resolution.B
    pr = peel_descend(quintic.Y, quintic.resolution, E, FPModule.free(Q3.R, [min(E.gens) - 1] * 2))
    st = pr.trace.steps[1]
    Cp, Y = st.before, Subscheme(Q3, st.Y)
    out = gliaison_transform(Cp, ntype_resolution(Cp), ag_resolution(Y), Y)
    assert out.certification["ok"] and out.certification["linked_ideal_matches"]
    assert out.ideal() == st.after.ideal
    # the AG link keeps ACM curves ACM
    assert st.after.classification.is_CM


def test_transform_requires_containment(Q3, q3_curves, quintic):
    C = q3_curves["skew"]
    with pytest.raises(LiaisonError):
        gliaison_transform(C, ntype_resolution(C), quintic.resolution, quintic.Y)


def test_peel_ci_with_free_summand(Q3):
    S = Q3.S
    C = Subscheme(Q3, ideal(S, "x0", "x1", "x2*x3 + x4^2"), "ci")
    res = ntype_resolution(C)
    R = Q3.R
    pr = peel_descend(C, res, FPModule.free(R, [1, 1]), FPModule.free(R, [1, 1]), seed=1)
    assert pr.D.is_CI_in_X


def test_peel_rank_too_small(Q3, quintic, spin):
    with pytest.raises(LiaisonError, match="rank"):
        peel_descend(quintic.Y, quintic.resolution, quintic.resolution.B, FPModule.free(Q3.R, [0]))


def test_peel_ends_at_complete_intersection(Q3, Q2, quintic):
    E = quintic.resolution.B
    pr = peel_descend(quintic.Y, quintic.resolution, E, FPModule.free(Q3.R, [min(E.gens) - 1] * 2))
    assert pr.D.classification.is_CI and pr.trace.is_verified()
    assert pr.details["D_ntype_stably_Nprime"]["equal"] is True
    assert pr.details["rao_equal_up_to_twist"] == 0
    assert replay(pr.trace.dumps()).ok
    pt = Subscheme(Q2, ideal(Q2.S, "x0", "x2", "x3"), "point")
    plan = peel_plan(pt)
    pr = peel_descend(pt, plan["resolution"], plan["E"], plan["Nprime"])
    assert pr.D.classification.is_CI and pr.D.is_CI_in_X


def test_split_check(Q3, q3_curves):
    S = Q3.S
    C = Subscheme(Q3, ideal(S, "x0", "x1", "x2*x3 + x4^2"))
    assert intersection_split_check(C, ideal(S, "x0"), ideal(S, "x1"))
    assert not intersection_split_check(q3_curves["skew"], ideal(S, "x4"), ideal(S, "x0*x3 - x1*x2"))
    with pytest.raises(LiaisonError):
        intersection_split_check(C, ideal(S, "x0", "x1"), ideal(S, "x1"))


def test_descent_outcomes(Q3, q3_curves):
    tr, out = glicci_descent(q3_curves["conic"])
    assert out == "reached_CI" and tr.steps == []
    tr, out = glicci_descent(q3_curves["skew"])
    assert out == "stalled" and "Rao" in tr.obstruction["reason"]
    tr, out = glicci_descent(q3_curves["line"], seed=0)
    assert out == "reached_CI" and tr.is_verified() and tr.end.is_CI_in_X
    assert replay(json.loads(tr.dumps())).ok


def test_descent_p3_gaeta(P3, p3_curves):
    tr, out = glicci_descent(p3_curves["cubic"])
    assert out == "reached_CI" and tr.num_links == 1
    again, _ = glicci_descent(p3_curves["cubic"])
    assert again.dumps() == tr.dumps()


def test_even_class_decisions(Q3, q3_curves):
    r = decide_even_class(q3_curves["skew"], q3_curves["conicline"])
    assert r["same_even_class"] is True
    r = decide_even_class(q3_curves["skew"], q3_curves["conic"])
    assert r["same_even_class"] is False
    r = decide_even_class(q3_curves["conic"])
    assert r["C1"]["glicci"] is True


def test_even_links_preserve_stable_ntype(Q3, q3_curves):
    C = q3_curves["cubic"]
    Y1 = random_ci_in_x_containing(C, (2, 2), seed=3)
    C1 = link(C, Y1)
    Y2 = random_ci_in_x_containing(C1, (2, 3), seed=4)
    C2 = link(C1, Y2)
    c = stable_compare(ntype_resolution(C).B, ntype_resolution(C2).B)
    assert c.equal is True


def test_trace_roundtrip_and_tamper(tmp_path, P3, p3_curves):
    tr, _ = glicci_descent(p3_curves["cubic"])
    path = tmp_path / "t.json"
    emit_trace(tr, path)
    assert replay(str(path)).ok
    d = json.loads(path.read_text())
    d["steps"][0]["Y"][0] = d["steps"][0]["Y"][0] + " + x^2"
    r = replay(d)
    assert not r.ok and r.failed_step == 0
    empty = LiaisonTrace(p3_curves["line"])
    assert replay(empty.dumps()).ok
