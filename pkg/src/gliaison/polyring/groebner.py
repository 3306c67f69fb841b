"""Buchberger's algorithm for homogeneous submodules of graded free modules.

A module term is one Python int::

    T = (block << (DEGB + F + CB)) + ((twist + OFF) << (F + CB)) + (key << CB) + code

so integer comparison gives: block elimination first, then twisted degree,
then grevlex on the monomial, then the component (position over term inside a
degree).  Multiplying a term by a monomial never touches ``code`` or the
block, hence ``T * u = T + ((key(u) - CC) << CB)`` and a reducer of ``t`` with
lead ``l`` is applied by shifting all its terms by ``t - l``.

Vectors are dicts ``{term: coeff}`` with coefficients in [0, p).
"""
from __future__ import annotations

import heapq
from typing import Iterable, Sequence

from .ring import PolyRing, Polynomial

DEGB = 16
OFF = 1 << 14


class GBLimitError(RuntimeError):
    """Raised when a computation exceeds the degree or pair budget."""


class Layout:
    """Packing of (component, monomial) pairs for a free module with twists.

    ``twists[c]`` is the degree of the basis vector e_c, so a term m*e_c has
    degree deg(m) + twists[c].
    """

    def __init__(self, ring: PolyRing, twists: Sequence[int], blocks: Sequence[int] | None = None):
        self.ring = ring
        self.twists = tuple(int(t) for t in twists)
        r = self.rank = len(self.twists)
        self.blocks = tuple(blocks) if blocks is not None else (0,) * r
        self.cb = cb = max(1, (max(r, 1) - 1).bit_length())
        self.cmask = (1 << cb) - 1
        fb = ring.fbits
        self.dshift = fb + cb
        self.bshift = DEGB + fb + cb
        base = []
        self.comp_of_code = {}
        for c in range(r):
            code = r - 1 - c
            self.comp_of_code[code] = c
            base.append((self.blocks[c] << self.bshift) + ((self.twists[c] + OFF) << self.dshift) + code)
        self.base = base
        self.code = [r - 1 - c for c in range(r)]
        self.ccs = ring.cc << cb
        self.guards = ring.guard << cb

    def term(self, c: int, key: int) -> int:
        return self.base[c] + (key << self.cb)

    def comp(self, t: int) -> int:
        return self.comp_of_code[t & self.cmask]

    def split(self, t: int) -> tuple[int, int]:
        c = self.comp_of_code[t & self.cmask]
        return c, (t - self.base[c]) >> self.cb

    def tdeg(self, t: int) -> int:
        return ((t >> self.dshift) & ((1 << DEGB) - 1)) - OFF

    def block(self, t: int) -> int:
        return t >> self.bshift

    def encode(self, vec: Sequence[Polynomial]) -> dict:
        if len(vec) != self.rank:
            raise ValueError("vector length does not match module rank")
        out = {}
        cb = self.cb
        for c, f in enumerate(vec):
            b = self.base[c]
            for k, v in f.terms.items():
                out[b + (k << cb)] = v
        return out

    def decode(self, d: dict) -> list[Polynomial]:
        parts = [dict() for _ in range(self.rank)]
        cb = self.cb
        for t, v in d.items():
            c = self.comp_of_code[t & self.cmask]
            parts[c][(t - self.base[c]) >> cb] = v
        return [Polynomial(self.ring, p) for p in parts]

    def degree_of(self, d: dict) -> int:
        return self.tdeg(next(iter(d)))


class GBEngine:
    """Incremental, degree-by-degree Buchberger with Gebauer-Moeller pruning.

    Inputs must be homogeneous.  ``complete(d)`` makes the basis a Groebner
    basis in all degrees <= d, after which ``reduce`` gives normal forms of
    vectors of degree <= d.
    """

    def __init__(self, layout: Layout, max_degree: int = 40, max_pairs: int = 10**6):
        self.L = layout
        self.ring = layout.ring
        self.p = layout.ring.p
        self.max_degree = max_degree
        self.max_pairs = max_pairs
        self.product_criterion = layout.rank == 1
        self.tails: list[dict] = []     # basis element minus its (monic) lead
        self.lead: list[int] = []
        self.alive: list[bool] = []
        self.by_comp: dict[int, list] = {}   # code -> [(lead, idx)] of alive elements
        self.pairs: dict = {}                # (i, j) -> lcm term
        self.queue: list = []
        self._seq = 0
        self.pairs_done = 0
        self.done_degree = None   # None means nothing completed yet

    # -- queue ---------------------------------------------------------
    def add(self, vec: dict) -> None:
        if not vec:
            return
        degs = {self.L.tdeg(t) for t in vec}
        if len(degs) != 1:
            raise ValueError(f"inhomogeneous vector (degrees {sorted(degs)})")
        d = degs.pop()
        self._seq += 1
        heapq.heappush(self.queue, (d, 0, self._seq, dict(vec)))
        if self.done_degree is not None and d <= self.done_degree:
            self.done_degree = d - 1

    def add_many(self, vecs: Iterable[dict]) -> None:
        for v in vecs:
            self.add(v)

    def complete(self, upto: int | None = None) -> None:
        q = self.queue
        while q and (upto is None or q[0][0] <= upto):
            d, kind, aux, payload = heapq.heappop(q)
            if d > self.max_degree:
                heapq.heappush(q, (d, kind, aux, payload))
                raise GBLimitError(f"degree cap {self.max_degree} exceeded (next degree {d})")
            if kind == 0:
                h = self.reduce(payload)
            else:
                i, j = payload
                if self.pairs.pop((i, j), None) is None:
                    continue
                self.pairs_done += 1
                if self.pairs_done > self.max_pairs:
                    raise GBLimitError(f"pair cap {self.max_pairs} exceeded")
                h = self.reduce(self._spoly(i, j, aux))
            if h:
                self._insert(h)
        if upto is None:
            self.done_degree = float("inf")
        else:
            self.done_degree = upto if self.done_degree is None else max(self.done_degree, upto)

    # -- reduction -----------------------------------------------------
    def _find(self, t: int):
        lst = self.by_comp.get(t & self.L.cmask)
        if not lst:
            return None
        ccs = self.L.ccs
        gs = self.L.guards
        for lt, idx in lst:
            dd = t - lt + ccs
            if dd >= 0 and not (dd & gs):
                return lt, idx
        return None

    def reduce(self, vec: dict, full: bool = True) -> dict:
        f = dict(vec)
        rem = {}
        p = self.p
        find = self._find
        tails = self.tails
        while f:
            t = max(f)
            c = f.pop(t)
            r = find(t)
            if r is None:
                if not full:
                    rem[t] = c
                    rem.update(f)
                    return rem
                rem[t] = c
                continue
            lt, idx = r
            sh = t - lt
            get = f.get
            for tg, cg in tails[idx].items():
                k = tg + sh
                v = (get(k, 0) - c * cg) % p
                if v:
                    f[k] = v
                else:
                    del f[k]
        return rem

    def _spoly(self, i: int, j: int, lcm: int) -> dict:
        p = self.p
        f = {}
        sh = lcm - self.lead[i]
        for t, c in self.tails[i].items():
            f[t + sh] = c
        sh = lcm - self.lead[j]
        get = f.get
        for t, c in self.tails[j].items():
            k = t + sh
            v = (get(k, 0) - c) % p
            if v:
                f[k] = v
            else:
                f.pop(k, None)
        return f

    def _term_lcm(self, a: int, b: int) -> int:
        c, ka = self.L.split(a)
        _, kb = self.L.split(b)
        return self.L.term(c, self.ring.key_lcm(ka, kb))

    def _divides(self, a: int, b: int) -> bool:
        if (a & self.L.cmask) != (b & self.L.cmask):
            return False
        dd = b - a + self.L.ccs
        return dd >= 0 and not (dd & self.L.guards)

    def _coprime(self, a: int, b: int) -> bool:
        _, ka = self.L.split(a)
        _, kb = self.L.split(b)
        r = self.ring
        return r.key_degree(r.key_lcm(ka, kb)) == r.key_degree(ka) + r.key_degree(kb)

    def _insert(self, h: dict) -> int:
        p = self.p
        lt = max(h)
        c = h[lt]
        if c != 1:
            inv = pow(c, p - 2, p)
            h = {t: v * inv % p for t, v in h.items()}
        del h[lt]
        idx = len(self.lead)
        self.lead.append(lt)
        self.tails.append(h)
        self.alive.append(True)
        code = lt & self.L.cmask
        group = self.by_comp.setdefault(code, [])
        self._update_pairs(idx, [g for _, g in group])
        # drop elements whose leads are now redundant
        keep = []
        for l2, g in group:
            if self._divides(lt, l2):
                self.alive[g] = False
            else:
                keep.append((l2, g))
        keep.append((lt, idx))
        keep.sort(key=lambda x: self.ring.key_degree(self.L.split(x[0])[1]))
        self.by_comp[code] = keep
        return idx

    def _update_pairs(self, h: int, group: list[int]) -> None:
        lh = self.lead[h]
        cand = [(self._term_lcm(lh, self.lead[g]), g) for g in group]
        prod = self.product_criterion
        # chain criterion among the new pairs
        D = []
        for k, (m, g) in enumerate(cand):
            if prod and self._coprime(lh, self.lead[g]):
                D.append((m, g, True))
                continue
            redundant = False
            for k2, (m2, g2) in enumerate(cand):
                if k2 > k and self._divides(m2, m):
                    redundant = True
                    break
            if not redundant:
                for m2, g2, _ in D:
                    if self._divides(m2, m):
                        redundant = True
                        break
            if not redundant:
                D.append((m, g, False))
        # prune old pairs
        code = lh & self.L.cmask
        dead = []
        for (i, j), m in self.pairs.items():
            if (m & self.L.cmask) != code:
                continue
            if self._divides(lh, m):
                if self._term_lcm(self.lead[i], lh) != m and self._term_lcm(self.lead[j], lh) != m:
                    dead.append((i, j))
        for key in dead:
            del self.pairs[key]
        for m, g, coprime in D:
            if coprime:
                continue
            key = (g, h)
            self.pairs[key] = m
            heapq.heappush(self.queue, (self.L.tdeg(m), 1, m, key))

    # -- results -------------------------------------------------------
    def elements(self) -> list[dict]:
        """Alive basis elements (lead included, monic)."""
        out = []
        for i, a in enumerate(self.alive):
            if a:
                v = dict(self.tails[i])
                v[self.lead[i]] = 1
                out.append(v)
        return out

    def lead_terms(self) -> list[int]:
        return [self.lead[i] for i, a in enumerate(self.alive) if a]

    def reduced(self) -> list[dict]:
        """Reduced Groebner basis (of what has been completed), sorted by lead."""
        out = []
        for i, a in enumerate(self.alive):
            if not a:
                continue
            lt = self.lead[i]
            tail = self._reduce_tail(self.tails[i])
            self.tails[i] = tail
            v = dict(tail)
            v[lt] = 1
            out.append(v)
        out.sort(key=lambda v: max(v))
        return out

    def _reduce_tail(self, tail: dict) -> dict:
        return self.reduce(tail, full=True)

    def is_complete_to(self, d) -> bool:
        return self.done_degree is not None and self.done_degree >= d


def minimal_generators(layout: Layout, vectors: Sequence[dict], base: Sequence[dict] = (),
                       engine: GBEngine | None = None) -> list[int]:
    """Indices of a minimal generating subset of ``vectors`` modulo ``base``.

    The submodule generated by ``base`` (e.g. I_X times the free module) is
    treated as already present.  Candidates are processed degree by degree; a
    candidate is kept exactly when it is nonzero modulo everything of lower
    degree plus the kept candidates of the same degree.
    """
    E = engine if engine is not None else GBEngine(layout)
    E.add_many(base)
    order = sorted((layout.degree_of(v), i) for i, v in enumerate(vectors) if v)
    keep = []
    for d, i in order:
        E.complete(d)
        h = E.reduce(vectors[i])
        if h:
            keep.append(i)
            E._insert(h)
    return keep
