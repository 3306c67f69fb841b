"""Descend ACM curves on the quadric threefold to complete intersections, then replay the traces."""
import os
import time

from gliaison.liaison import AmbientScheme, Subscheme, glicci_descent, replay
from gliaison.polyring import Ideal, parse_file
from gliaison.quadric import ag_scheme_from_section, spinor_modules

HERE = os.path.dirname(os.path.abspath(__file__))
with open(os.path.join(HERE, "..", "tests", "data", "q3.lk")) as fh:
    pf = parse_file(fh.read())
I = {k: Ideal(pf.ring, v) for k, v in pf.ideals.items()}
S = pf.ring
X = AmbientScheme(S, I["X"], name="X")

curves = [(n, Subscheme(X, I[n], n)) for n in ("L1", "cubic", "skew")]
spin = spinor_modules(X.R)[0][1]
curves.append(("quintic", ag_scheme_from_section(spin, 1, seed=0, ambient=X).Y))

for name, C in curves:
    t0 = time.time()
    tr, out = glicci_descent(C, seed=0)
    print(f"{name}: {out}, {tr.num_links} links, {time.time() - t0:.1f}s,"
          f" replay ok = {replay(tr.dumps()).ok}")
    if tr.obstruction:
        print("   obstruction:", tr.obstruction["reason"])
