"""Link the twisted cubic and a line-plus-cubic in P^3; watch the Rao module flip."""
import os

from gliaison.liaison import (AmbientScheme, Subscheme, link, random_ci_in_x_containing, rao_module,
                              verify_link)
from gliaison.polyring import Ideal, intersect, parse_file

HERE = os.path.dirname(os.path.abspath(__file__))
with open(os.path.join(HERE, "..", "tests", "data", "p3.lk")) as fh:
    pf = parse_file(fh.read())
I = {k: Ideal(pf.ring, v) for k, v in pf.ideals.items()}
S = pf.ring

P3 = AmbientScheme(S, None, name="P3")
cubic = Subscheme(P3, I["cubic"], "cubic")
Y = random_ci_in_x_containing(cubic, (2, 2), seed=0)
C2 = link(cubic, Y)
print("cubic linked by two quadrics:", C2.ideal.to_strings(), "degree", C2.degree)
print("verified:", verify_link(cubic, C2, Y).ok)

line = Ideal(S, [S.parse("x + w"), S.parse("y - z")])
C = Subscheme(P3, intersect(line, I["cubic"]), "line+cubic")
M = rao_module(C)
M2 = rao_module(link(C, random_ci_in_x_containing(C, (3, 3), seed=1)))
print("Rao dims before:", M.dims, "after one link:", M2.dims)
