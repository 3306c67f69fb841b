"""Free resolutions, Betti tables and homological classification."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .graded import (GradedFreeModule, GradedMatrix, Lifter, QuotientRing, kernel,
                     minimal_columns, mingens_indices, Submodule)
from .polyring import Ideal, PolyRing, Polynomial
from .polyring.hilbert import HilbertSeries

__all__ = [
    "QuotientRing", "GradedFreeModule", "GradedMatrix", "FreeResolution", "BettiTable",
    "syzygies", "free_resolution", "minimalize", "betti", "hilbert_function", "classify",
    "prune_presentation", "Classification", "kernel",
]


class BettiTable:
    """Graded Betti numbers beta_{i,j}: generators of F_i in degree j."""

    def __init__(self, data: dict):
        self.data = {(int(i), int(j)): int(v) for (i, j), v in data.items() if v}

    @classmethod
    def from_modules(cls, modules: Sequence[Sequence[int]]):
        d = {}
        for i, degs in enumerate(modules):
            for j, c in Counter(degs).items():
                d[(i, j)] = c
        return cls(d)

    def __getitem__(self, ij) -> int:
        return self.data.get(tuple(ij), 0)

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.data == other.data

    def __hash__(self):
        return hash(tuple(sorted(self.data.items())))

    def totals(self) -> list[int]:
        if not self.data:
            return []
        L = max(i for i, _ in self.data)
        return [sum(v for (i, _), v in self.data.items() if i == k) for k in range(L + 1)]

    def length(self) -> int:
        return max((i for i, _ in self.data), default=-1)

    def truncate(self, n: int) -> "BettiTable":
        return BettiTable({k: v for k, v in self.data.items() if k[0] <= n})

    def shift(self, s: int) -> "BettiTable":
        """Betti table of M(-s)."""
        return BettiTable({(i, j + s): v for (i, j), v in self.data.items()})

    def shift_index(self, k: int, s: int = 0) -> "BettiTable":
        return BettiTable({(i + k, j + s): v for (i, j), v in self.data.items()})

    def to_json(self) -> dict:
        return {f"{i},{j}": v for (i, j), v in sorted(self.data.items())}

    @classmethod
    def from_json(cls, d: dict) -> "BettiTable":
        return cls({tuple(int(x) for x in k.split(",")): v for k, v in d.items()})

    def __str__(self):
        if not self.data:
            return "(zero)"
        L = self.length()
        rows = sorted({j - i for i, j in self.data})
        width = max(len(str(v)) for v in self.data.values()) + 1
        head = "      " + "".join(f"{i:>{width}}" for i in range(L + 1))
        tot = "total:" + "".join(f"{t:>{width}}" for t in self.totals())
        lines = [head, tot]
        for r in range(rows[0], rows[-1] + 1):
            cells = []
            for i in range(L + 1):
                v = self.data.get((i, i + r), 0)
                cells.append(f"{v if v else '.':>{width}}")
            lines.append(f"{r:>5}:" + "".join(cells))
        return "\n".join(lines)

    __repr__ = __str__


class FreeResolution:
    """F_0 <- F_1 <- ... with maps d_i : F_i -> F_{i-1} (``maps[i-1]``)."""

    def __init__(self, ring: QuotientRing, f0: Sequence[int], maps: Sequence[GradedMatrix],
                 complete: bool):
        self.ring = ring
        self.f0 = tuple(f0)
        self.maps = list(maps)
        self.complete = complete

    @property
    def modules(self) -> list[GradedFreeModule]:
        out = [GradedFreeModule(self.ring, self.f0)]
        for m in self.maps:
            out.append(GradedFreeModule(self.ring, m.src))
        return out

    @property
    def length(self) -> int:
        return len(self.maps)

    def d(self, i: int) -> GradedMatrix:
        return self.maps[i - 1]

    def betti(self) -> BettiTable:
        return BettiTable.from_modules([m.degrees for m in self.modules])

    def is_minimal(self) -> bool:
        return all(m.unit_position() is None for m in self.maps)

    def is_complex(self) -> bool:
        for a, b in zip(self.maps, self.maps[1:]):
            if not (a @ b).is_zero():
                return False
        return True

    def __repr__(self):
        mods = " <- ".join(repr(m) for m in self.modules)
        return f"FreeResolution({mods}{'' if self.complete else ' <- ...'})"


@dataclass
class Pruned:
    """Result of pruning: a smaller presentation of the same module.

    ``transform`` maps coordinates on the old generators to coordinates on the
    new ones (new = transform @ old), and ``kept`` lists the old generator
    indices that survive; they are the new generators, in order.
    """

    presentation: GradedMatrix
    transform: GradedMatrix
    kept: list


def prune_presentation(P: GradedMatrix, minimal_relations: bool = True) -> Pruned:
    """Remove generator/relation pairs joined by unit entries, then drop redundant relations."""
    R = P.ring
    S = R.S
    p = S.p
    ent = [list(r) for r in P.entries]
    tgt = list(P.tgt)
    src = list(P.src)
    kept = list(range(len(tgt)))
    # T: rows = current gens, cols = old gens; starts as identity
    T = [[S.one() if i == j else S.zero() for j in range(len(tgt))] for i in range(len(tgt))]
    while True:
        pos = None
        for j in range(len(src)):
            for i in range(len(tgt)):
                e = ent[i][j]
                if e.terms and src[j] == tgt[i]:
                    pos = (i, j)
                    break
            if pos:
                break
        if pos is None:
            break
        i, j = pos
        c = ent[i][j].constant_coeff()
        inv = pow(c, p - 2, p)
        colj = [ent[k][j] for k in range(len(tgt))]
        rowi = ent[i]
        new = []
        newT = []
        for k in range(len(tgt)):
            if k == i:
                continue
            f = colj[k].scale(inv) if colj[k].terms else None
            row = []
            for l in range(len(src)):
                if l == j:
                    continue
                e = ent[k][l]
                if f is not None and rowi[l].terms:
                    e = R.reduce(e - f * rowi[l])
                row.append(e)
            new.append(row)
            trow = list(T[k])
            if f is not None:
                trow = [R.reduce(a - f * b) if b.terms else a for a, b in zip(trow, T[i])]
            newT.append(trow)
        ent = new
        T = newT
        del tgt[i]
        del kept[i]
        del src[j]
    Q = GradedMatrix(R, tgt, src, ent, check=False, reduce=False)
    # drop zero columns and, optionally, redundant relations
    nz = [j for j in range(Q.ncols) if any(Q.entries[i][j].terms for i in range(Q.nrows))]
    Q = Q.submatrix(cols=nz)
    if minimal_relations and Q.ncols:
        Q = minimal_columns(Q)
    Tm = GradedMatrix(R, tgt, P.tgt, T, check=False, reduce=False)
    return Pruned(Q, Tm, kept)


def _presentation_of(obj, ring: QuotientRing | None):
    if isinstance(obj, Ideal):
        R = ring if ring is not None else QuotientRing(obj.ring)
        gens = [g for g in obj.mingens() if not R.reduce(g).is_zero()] if R.gb else obj.mingens()
        if R.gb:
            idx = mingens_indices(R, (0,), [[R.reduce(g)] for g in gens])
            gens = [R.reduce(gens[i]) for i in idx]
        return GradedMatrix.from_columns(R, (0,), [[g] for g in gens])
    if isinstance(obj, GradedMatrix):
        return obj
    pres = getattr(obj, "presentation", None)
    if isinstance(pres, GradedMatrix):
        return pres
    raise TypeError(f"cannot resolve {type(obj).__name__}")


def syzygies(M: GradedMatrix) -> GradedMatrix:
    """Minimal generators of the syzygies of the columns of M."""
    return kernel(M)


def free_resolution(obj, length: int | None = None, ring: QuotientRing | None = None) -> FreeResolution:
    """Minimal free resolution of S/I (for an Ideal), coker(P) or an FPModule.

    Over a polynomial ring the resolution is computed to the end.  Over a
    proper quotient ``length`` bounds the number of maps (default nvars + 1).
    """
    P = _presentation_of(obj, ring)
    R = P.ring
    if length is None:
        length = R.nvars + 1 if not R.is_polynomial_ring() else R.nvars + 2
    pr = prune_presentation(P)
    P = pr.presentation
    maps = []
    complete = True
    if P.ncols:
        maps.append(P)
        cur = P
        while True:
            if len(maps) >= length:
                complete = False
                break
            K = kernel(cur)
            if K.ncols == 0:
                break
            maps.append(K)
            cur = K
    if length == 0:
        maps = []
        complete = P.ncols == 0
    return FreeResolution(R, P.tgt, maps, complete)


def minimalize(res: FreeResolution) -> FreeResolution:
    """Strip unit entries from a (non-minimal) free complex/resolution."""
    R = res.ring
    S = R.S
    p = S.p
    maps = [[list(r) for r in m.entries] for m in res.maps]
    degs = [list(res.f0)] + [list(m.src) for m in res.maps]
    changed = True
    while changed:
        changed = False
        for k, d in enumerate(maps):
            # d : F_{k+1} -> F_k
            pos = None
            for j, dj in enumerate(degs[k + 1]):
                for i, di in enumerate(degs[k]):
                    if di == dj and d[i][j].terms:
                        pos = (i, j)
                        break
                if pos:
                    break
            if pos is None:
                continue
            i, j = pos
            inv = pow(d[i][j].constant_coeff(), p - 2, p)
            new = []
            for a in range(len(degs[k])):
                if a == i:
                    continue
                f = d[a][j].scale(inv) if d[a][j].terms else None
                row = []
                for b in range(len(degs[k + 1])):
                    if b == j:
                        continue
                    e = d[a][b]
                    if f is not None and d[i][b].terms:
                        e = R.reduce(e - f * d[i][b])
                    row.append(e)
                new.append(row)
            maps[k] = new
            if k + 1 < len(maps):
                del maps[k + 1][j]          # drop row j of d_{k+2}
            if k >= 1:
                for row in maps[k - 1]:      # drop column i of d_k
                    del row[i]
            del degs[k][i]
            del degs[k + 1][j]
            changed = True
            break
    out = []
    for k, d in enumerate(maps):
        out.append(GradedMatrix(R, degs[k], degs[k + 1], d, check=False, reduce=False))
    while out and out[-1].ncols == 0:
        out.pop()
    return FreeResolution(R, degs[0], out, res.complete)


def betti(obj, length: int | None = None, ring: QuotientRing | None = None) -> BettiTable:
    if isinstance(obj, FreeResolution):
        return obj.betti()
    return free_resolution(obj, length, ring).betti()


def hilbert_function(obj, window: tuple[int, int], ring: QuotientRing | None = None) -> dict:
    """Hilbert function on [lo, hi] of S/I or of a module (coker of a matrix)."""
    lo, hi = window
    if isinstance(obj, Ideal):
        hs = obj.hilbert_series()
    elif isinstance(obj, HilbertSeries):
        hs = obj
    elif hasattr(obj, "hilbert_series"):
        hs = obj.hilbert_series()
    else:
        P = _presentation_of(obj, ring)
        hs = Submodule.of_matrix(P).quotient_hilbert_series()
    return {d: hs.value(d) for d in range(lo, hi + 1)}


@dataclass
class Classification:
    pd: int
    codim: int
    num_generators: int
    is_CM: bool
    is_AG: bool
    is_CI: bool
    betti: BettiTable = field(repr=False)

    def to_json(self) -> dict:
        return {"pd": self.pd, "codim": self.codim, "num_generators": self.num_generators,
                "is_CM": self.is_CM, "is_AG": self.is_AG, "is_CI": self.is_CI,
                "betti": self.betti.to_json()}


def classify(I: Ideal) -> Classification:
    """Cohen-Macaulay / arithmetically Gorenstein / complete intersection tests for S/I."""
    res = free_resolution(I)
    B = res.betti()
    pd = res.length
    codim = I.codim()
    mu = len(I.mingens())
    cm = pd == codim
    last = B.totals()[-1] if B.totals() else 0
    ag = cm and last == 1
    ci = cm and mu == codim
    return Classification(pd, codim, mu, cm, ag, ci, B)
