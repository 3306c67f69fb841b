"""Peel a point on the quadric surface down to a complete intersection."""
from gliaison.liaison import AmbientScheme, Subscheme, peel_descend, peel_plan
from gliaison.polyring import Ideal, PolyRing

S = PolyRing(["x0", "x1", "x2", "x3"], 32003)
X = AmbientScheme(S, Ideal(S, [S.parse("x0*x1 + x2*x3")]), name="X")
pt = Subscheme(X, Ideal(S, [S.parse(v) for v in ("x0", "x2", "x3")]), "point")

plan = peel_plan(pt)
print("N-type decomposition:", plan["decomposition"])
pr = peel_descend(pt, plan["resolution"], plan["E"], plan["Nprime"])
for st in pr.trace.steps:
    print(st.kind, "->", [g.canonical() for g in st.after.ideal.gens])
print("D is a complete intersection:", pr.D.classification.is_CI)
