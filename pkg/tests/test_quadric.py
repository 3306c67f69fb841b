import itertools

import numpy as np
import pytest

from gliaison.fpmod import FPModule, direct_sum, is_MCM, stable_compare, strip_free, syzygy_module
from gliaison.liaison import LiaisonError, Subscheme
from gliaison.polyring import PolyRing
from gliaison.quadric import (QuadricError, ag_scheme_from_section, gram_matrix, mcm_decompose,
                              spinor_mf, spinor_modules, sqrt_mod)


def test_sqrt_mod():
    p = 32003
    for a in (2, 5, 10, 12345):
        r = sqrt_mod(a * a % p, p)
        assert r * r % p == a * a % p
    assert sqrt_mod(3, 7) is None


def test_spinor_mf_standard(Q3):
    q = Q3.ideal.gens[0]
    mf = spinor_mf(q)
    assert mf.size == 4 and mf.verify()
    for row in mf.A + mf.B:
        assert all(e.is_zero() or e.degree() == 1 for e in row)


def test_spinor_mf_general_form():
    S = PolyRing(["a", "b", "c", "d", "e"], 32003)
    q = S.parse("a^2 + 3*b^2 - c*d + 7*e^2 + a*e - 2*b*c")
    assert np.linalg.matrix_rank(gram_matrix(q).astype(float)) == 5
    mf = spinor_mf(q, seed=3)
    assert mf.verify()


def test_spinor_mf_errors():
    S = PolyRing(["x0", "x1", "x2", "x3", "x4"], 32003)
    with pytest.raises(QuadricError):
        spinor_mf(S.parse("x0^2"))
    with pytest.raises(QuadricError):
        spinor_mf(S.parse("x0^3"))


def test_spin_is_rank_two_mcm(Q3, spin):
    assert spin.rank() == 2 and is_MCM(spin)
    assert strip_free(spin)[1] == []
    # two-periodicity: sigma(Spin) is a twist of Spin
    c = stable_compare(syzygy_module(spin), spin)
    assert c.equal is True


def test_twist_shifts_cover(Q3, spin):
    assert spin.twist(1).gens == tuple(d - 1 for d in spin.gens)


def test_quadric_surface_has_two_spinors(Q2):
    mods = spinor_modules(Q2.R)
    assert [l for l, _ in mods] == ["Spin+", "Spin-"]
    assert all(m.rank() == 1 and is_MCM(m) for _, m in mods)
    assert stable_compare(mods[0][1], mods[1][1]).equal is False


def test_decompose_examples(Q3, spin):
    R = Q3.R
    d = mcm_decompose(direct_sum(FPModule.free(R, [1]), spin))
    assert d.certified and d.multiset() == {("R", -1): 1, ("Spin", 0): 1}
    d = mcm_decompose(direct_sum(spin, spin.twist(-1)))
    assert d.multiset() == {("Spin", 0): 1, ("Spin", -1): 1}
    d = mcm_decompose(FPModule.free(R, [0]))
    assert d.multiset() == {("R", 0): 1} and d.spinors == []


def test_decompose_rejects_non_mcm(Q3):
    S = Q3.S
    from gliaison.graded import GradedMatrix
    M = FPModule(GradedMatrix(Q3.R, [0], [1, 1, 1], [[S.parse("x0"), S.parse("x2"), S.parse("x4")]]))
    with pytest.raises(QuadricError):
        mcm_decompose(M, check_mcm=True)


def test_decompose_small_sums(Q3, spin):
    R = Q3.R
    sp = spinor_modules(R)
    types = [("R", a) for a in (-1, 0)] + [("Spin", a) for a in (-1, 0)]
    for combo in itertools.combinations_with_replacement(types, 2):
        M = direct_sum(*[FPModule.free(R, [-a]) if l == "R" else spin.twist(a) for l, a in combo])
        d = mcm_decompose(M, sp)
        want = {}
        for c in combo:
            want[c] = want.get(c, 0) + 1
        assert d.certified and d.multiset() == want


def test_ag_from_spinor_section(Q3, spin, quintic):
    Y = quintic.Y
    assert Y.classification.is_AG and not Y.classification.is_CI
    assert not Y.is_CI_in_X and Y.degree == 5
    again = ag_scheme_from_section(spin, 1, seed=0, ambient=Q3)
    assert again.Y.ideal == Y.ideal
    line = ag_scheme_from_section(spin, 0, seed=0, ambient=Q3).Y
    assert line.degree == 1 and line.classification.is_CI and not line.is_CI_in_X


def test_ag_from_free_section(Q3):
    Y = ag_scheme_from_section(FPModule.free(Q3.R, [0, 0]), 1, seed=2, ambient=Q3).Y
    assert Y.is_CI_in_X and Y.degree == 2


def test_ag_no_sections(Q3, spin):
    with pytest.raises(LiaisonError):
        ag_scheme_from_section(spin, -1, ambient=Q3)
