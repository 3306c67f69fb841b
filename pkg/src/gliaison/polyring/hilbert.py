"""Hilbert series of monomial ideals and graded modules with monomial relations.

Series are represented by numerator polynomials ``{degree: coeff}`` over the
denominator ``(1 - t)^n``.
"""
from __future__ import annotations

from itertools import combinations
from math import comb
from typing import Iterable, Sequence


def _minimalize(gens: list[tuple]) -> list[tuple]:
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def _padd(a: dict, b: dict, shift: int = 0) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k + shift] = out.get(k + shift, 0) + v
    return {k: v for k, v in out.items() if v}


def _pmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for i, u in a.items():
        for j, v in b.items():
            out[i + j] = out.get(i + j, 0) + u * v
    return {k: v for k, v in out.items() if v}


def monomial_numerator(gens: Iterable[Sequence[int]], nvars: int) -> dict:
    """Numerator K(t) with HS(S/J) = K(t) / (1-t)^nvars for monomial J."""
    return _num(_minimalize([tuple(g) for g in gens]), nvars)


def _num(gens: list[tuple], n: int) -> dict:
    if not gens:
        return {0: 1}
    if any(sum(g) == 0 for g in gens):
        return {}
    # coprime generators: product formula
    support = [frozenset(i for i, e in enumerate(g) if e) for g in gens]
    used: set = set()
    coprime = True
    for s in support:
        if used & s:
            coprime = False
            break
        used |= s
    if coprime:
        out = {0: 1}
        for g in gens:
            out = _pmul(out, {0: 1, sum(g): -1})
        return out
    # pivot on the variable occurring most often in non-trivial generators
    counts = [0] * n
    for g, s in zip(gens, support):
        if len(s) > 1:
            for i in s:
                counts[i] += 1
    v = max(range(n), key=lambda i: counts[i])
    # smallest exponent of x_v among mixed generators keeps both branches smaller
    e = min(g[v] for g, s in zip(gens, support) if len(s) > 1 and g[v])
    piv = tuple(e if i == v else 0 for i in range(n))
    plus = _minimalize(gens + [piv])
    colon = _minimalize([tuple(max(a - b, 0) for a, b in zip(g, piv)) for g in gens])
    return _padd(_num(plus, n), _num(colon, n), e)


def numerator_value(num: dict, t: int | float = 1):
    return sum(c * t**k for k, c in num.items())


def reduce_numerator(num: dict, n: int) -> tuple[dict, int]:
    """Cancel factors (1-t) to get HS = Q(t)/(1-t)^d with Q(1) != 0."""
    q = dict(num)
    d = n
    while q and d > 0 and sum(q.values()) == 0:
        # divide by (1 - t): synthetic division from the bottom
        lo, hi = min(q), max(q)
        out = {}
        acc = 0
        for k in range(lo, hi):
            acc += q.get(k, 0)
            if acc:
                out[k] = acc
        q = out
        d -= 1
    return q, d


class HilbertSeries:
    """HS(t) = numerator(t) / (1 - t)^nvars with a Laurent numerator."""

    def __init__(self, numerator: dict, nvars: int):
        self.numerator = {k: v for k, v in numerator.items() if v}
        self.nvars = nvars
        self.q, self.dim = reduce_numerator(self.numerator, nvars)
        if not self.q:
            self.dim = -1

    def __eq__(self, other):
        return isinstance(other, HilbertSeries) and self.nvars == other.nvars and \
            self.numerator == other.numerator

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.numerator.items()))))

    def __repr__(self):
        return f"HilbertSeries(Q={dict(sorted(self.q.items()))}, dim={self.dim})"

    def shift(self, s: int) -> "HilbertSeries":
        """Series of M(-s), i.e. multiply by t^s."""
        return HilbertSeries({k + s: v for k, v in self.numerator.items()}, self.nvars)

    def __add__(self, other):
        return HilbertSeries(_padd(self.numerator, other.numerator), self.nvars)

    def __sub__(self, other):
        return HilbertSeries(_padd(self.numerator, {k: -v for k, v in other.numerator.items()}),
                             self.nvars)

    def is_zero(self) -> bool:
        return not self.numerator

    @property
    def degree(self) -> int:
        """Multiplicity Q(1) (0 for the zero module)."""
        return sum(self.q.values()) if self.q else 0

    def value(self, d: int) -> int:
        """Hilbert function at d."""
        n = self.nvars
        tot = 0
        for k, c in self.numerator.items():
            m = d - k
            if m >= 0:
                tot += c * comb(m + n - 1, n - 1) if n > 0 else (c if m == 0 else 0)
        return tot

    def values(self, lo: int, hi: int) -> list[int]:
        return [self.value(d) for d in range(lo, hi + 1)]

    def hilbert_polynomial_value(self, d: int) -> int:
        if self.dim <= 0:
            return 0
        e = self.dim
        return sum(c * _binom_poly(d - k + e - 1, e - 1) for k, c in self.q.items())

    def regularity_index(self) -> int:
        """First degree from which HF agrees with the Hilbert polynomial."""
        if self.dim <= 0:
            return max(self.q) + 1 if self.q else 0
        return max(self.q) - self.dim + 1


def _binom_poly(x: int, k: int) -> int:
    """Polynomial binomial coefficient x(x-1)...(x-k+1)/k! for any integer x."""
    num = 1
    for i in range(k):
        num *= x - i
    den = 1
    for i in range(1, k + 1):
        den *= i
    return num // den


def independent_sets_dimension(gens: Iterable[Sequence[int]], nvars: int) -> int:
    """Krull dimension of S/J (J monomial) via maximal independent sets."""
    sup = [frozenset(i for i, e in enumerate(g) if e) for g in gens]
    if any(not s for s in sup):
        return -1
    for size in range(nvars, 0, -1):
        for U in combinations(range(nvars), size):
            U = frozenset(U)
            if all(not s <= U for s in sup):
                return size
    return 0
