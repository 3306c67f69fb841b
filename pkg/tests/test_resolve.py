from math import comb

import sympy

from gliaison.graded import GradedMatrix, QuotientRing
from gliaison.polyring import Ideal, PolyRing
from gliaison.resolve import BettiTable, betti, classify, free_resolution, hilbert_function

from conftest import ideal


def sympy_hf(I: Ideal, d: int) -> int:
    """Count standard monomials of degree d from sympy's Groebner basis."""
    S = I.ring
    syms = sympy.symbols(list(S.variables))
    loc = dict(zip(S.variables, syms))
    polys = [sympy.sympify(str(g).replace("^", "**"), locals=loc) for g in I.gens]
    G = sympy.groebner(polys, *syms, order="grevlex", modulus=S.p)
    leads = [sympy.Poly(g, *syms).monoms(order="grevlex")[0] for g in G.exprs]
    n = len(syms)
    count = 0
    for m in _monomials(n, d):
        if not any(all(a >= b for a, b in zip(m, l)) for l in leads):
            count += 1
    return count


def _monomials(n, d):
    if n == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in _monomials(n - 1, d - a):
            yield (a,) + rest


def betti_hf(B: BettiTable, n: int, d: int) -> int:
    return sum((-1) ** i * v * comb(d - j + n - 1, n - 1) for (i, j), v in B.data.items() if d >= j)


def check_against_oracle(I, expected):
    B = betti(I)
    assert B == BettiTable(expected)
    n = I.ring.nvars
    for d in range(0, 8):
        assert betti_hf(B, n, d) == sympy_hf(I, d)
    return B


def test_twisted_cubic_betti():
    S = PolyRing(["x", "y", "z", "w"], 32003)
    I = ideal(S, "x*z - y^2", "x*w - y*z", "y*w - z^2")
    check_against_oracle(I, {(0, 0): 1, (1, 2): 3, (2, 3): 2})
    c = classify(I)
    assert c.is_CM and not c.is_AG and not c.is_CI


def test_koszul_ci():
    S = PolyRing(["x", "y", "z", "w"], 32003)
    for a, b, f, g in ((2, 3, "x^2 + y*z", "y^3 + z*w^2"), (1, 4, "x + w", "y^4 - z^3*w")):
        I = ideal(S, f, g)
        check_against_oracle(I, {(0, 0): 1, (1, a): 1, (1, b): 1, (2, a + b): 1})
        c = classify(I)
        assert c.is_CI and c.is_AG and c.is_CM


def test_artinian_gorenstein():
    S = PolyRing(["x", "y", "z"], 32003)
    I = ideal(S, "x^2 - y^2", "y^2 - z^2", "x*y", "x*z", "y*z")
    check_against_oracle(I, {(0, 0): 1, (1, 2): 5, (2, 3): 5, (3, 5): 1})
    c = classify(I)
    assert c.is_AG and not c.is_CI and c.num_generators == 5


def test_resolution_is_minimal_complex():
    S = PolyRing(["x", "y", "z", "w"], 32003)
    I = ideal(S, "x*z", "x*w", "y*z", "y*w")
    F = free_resolution(I)
    assert F.complete and F.is_complex() and F.is_minimal()
    assert betti(I) == BettiTable({(0, 0): 1, (1, 2): 4, (2, 3): 4, (3, 4): 1})
    assert not classify(I).is_CM


def test_module_resolution_over_quotient():
    # the residue field over k[x,y]/(xy) has an infinite 2-periodic linear resolution
    S = PolyRing(["x", "y"], 101)
    R = QuotientRing(S, ideal(S, "x*y"))
    P = GradedMatrix(R, [0], [1, 1], [[S.parse("x"), S.parse("y")]])
    F = free_resolution(P, length=4, ring=R)
    assert not F.complete
    assert F.betti().totals() == [1, 2, 2, 2, 2]
    assert F.is_complex()


def test_hilbert_function_window():
    S = PolyRing(["x", "y", "z"], 7)
    I = ideal(S, "x^2", "y^2", "z^2")
    assert hilbert_function(I, (0, 4)) == {0: 1, 1: 3, 2: 3, 3: 1, 4: 0}
