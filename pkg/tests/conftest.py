import os

import pytest

from gliaison.polyring import Ideal, PolyRing

DATA = os.path.join(os.path.dirname(__file__), "data")
P = 32003


def ideal(S, *gens):
    return Ideal(S, [S.parse(g) for g in gens])


@pytest.fixture(scope="session")
def P3():
    from gliaison.liaison import AmbientScheme
    S = PolyRing(["x", "y", "z", "w"], P)
    return AmbientScheme(S, None, name="P3")


@pytest.fixture(scope="session")
def Q3():
    from gliaison.liaison import AmbientScheme
    S = PolyRing(["x0", "x1", "x2", "x3", "x4"], P)
    return AmbientScheme(S, ideal(S, "x0*x1 + x2*x3 + x4^2"), name="X")


@pytest.fixture(scope="session")
def Q2():
    from gliaison.liaison import AmbientScheme
    S = PolyRing(["x0", "x1", "x2", "x3"], P)
    return AmbientScheme(S, ideal(S, "x0*x1 + x2*x3"), name="X")


@pytest.fixture(scope="session")
def p3_curves(P3):
    from gliaison.liaison import Subscheme
    S = P3.S
    return {
        "line": Subscheme(P3, ideal(S, "x", "y"), "line"),
        "skew": Subscheme(P3, ideal(S, "x*z", "x*w", "y*z", "y*w"), "skew"),
        "cubic": Subscheme(P3, ideal(S, "x*z - y^2", "x*w - y*z", "y*w - z^2"), "cubic"),
        "conic": Subscheme(P3, ideal(S, "w", "x*y - z^2"), "conic"),
    }


@pytest.fixture(scope="session")
def q3_curves(Q3):
    from gliaison.liaison import Subscheme
    from gliaison.polyring import intersect
    S = Q3.S
    q = "x0*x1 + x2*x3 + x4^2"
    L1 = ideal(S, "x0", "x2", "x4")
    L2 = ideal(S, "x1", "x3", "x4")
    conic = ideal(S, "x0 - x1", "x2 + x3", q)
    return {
        "line": Subscheme(Q3, L1, "line"),
        "skew": Subscheme(Q3, intersect(L1, L2), "skew"),
        "cubic": Subscheme(Q3, ideal(S, "x4", "x0*x2 - x3^2", q, "x1*x3 + x2^2"), "cubic"),
        "conic": Subscheme(Q3, conic, "conic"),
        "conicline": Subscheme(Q3, intersect(conic, L1), "conicline"),
    }


@pytest.fixture(scope="session")
def spin(Q3):
    from gliaison.quadric import spinor_modules
    return spinor_modules(Q3.R)[0][1]


@pytest.fixture(scope="session")
def quintic(Q3, spin):
    from gliaison.quadric import ag_scheme_from_section
    return ag_scheme_from_section(spin, 1, seed=0, ambient=Q3)
