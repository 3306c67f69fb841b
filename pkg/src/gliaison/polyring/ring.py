"""Graded polynomial rings over prime fields.

Monomials are stored as packed integers.  Each variable owns an 8-bit field
holding ``MASK - exponent`` and the total degree sits above all fields, so that
integer comparison of keys is exactly the graded reverse lexicographic order
(variable ``n-1`` lives in the most significant field).  Multiplying monomials
is ``key_a + key_b - CC`` where ``CC`` is the key of the all-zero exponent
field pattern.  The top bit of every field is a guard bit used for cheap
divisibility tests.
"""
from __future__ import annotations

import re
from typing import Iterable, Mapping, Sequence

FIELD = 8
MASK = 127          # largest exponent allowed per variable
GUARD = 128
DEFAULT_CHAR = 32003


class RingError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class PolyRing:
    """Standard graded ring k[x_0..x_{n-1}] with k = GF(p) and grevlex order."""

    def __init__(self, variables: Sequence[str] | int, characteristic: int = DEFAULT_CHAR):
        if isinstance(variables, int):
            variables = [f"x{i}" for i in range(variables)]
        variables = tuple(variables)
        if not variables:
            raise RingError("a ring needs at least one variable")
        if len(set(variables)) != len(variables):
            raise RingError("duplicate variable names")
        for v in variables:
            if not _NAME_RE.match(v):
                raise RingError(f"bad variable name {v!r}")
        if not is_prime(characteristic):
            raise RingError(f"characteristic {characteristic} is not prime")
        if characteristic >= 2**31:
            raise RingError("characteristic must be below 2^31")
        self.variables = variables
        self.p = characteristic
        self.nvars = n = len(variables)
        self.fbits = n * FIELD
        self.cc = sum(MASK << (FIELD * i) for i in range(n))
        self.guard = sum(GUARD << (FIELD * i) for i in range(n))
        self.fmask = (1 << self.fbits) - 1
        self.one_key = self.cc
        self._var_index = {v: i for i, v in enumerate(variables)}

    # -- monomial keys -------------------------------------------------
    def key(self, exps: Sequence[int]) -> int:
        if len(exps) != self.nvars:
            raise RingError("exponent vector has wrong length")
        k = 0
        d = 0
        for i, e in enumerate(exps):
            if e < 0 or e > MASK:
                raise RingError(f"exponent {e} out of range")
            k |= (MASK - e) << (FIELD * i)
            d += e
        return (d << self.fbits) | k

    def exponents(self, key: int) -> tuple[int, ...]:
        return tuple(MASK - ((key >> (FIELD * i)) & 0xFF) for i in range(self.nvars))

    def key_degree(self, key: int) -> int:
        return key >> self.fbits

    def var_key(self, i: int, e: int = 1) -> int:
        exps = [0] * self.nvars
        exps[i] = e
        return self.key(exps)

    def key_mul(self, a: int, b: int) -> int:
        return a + b - self.cc

    def key_divides(self, a: int, b: int) -> bool:
        d = b - a + self.cc
        return d >= 0 and not (d & self.guard)

    def key_div(self, b: int, a: int) -> int:
        return b - a + self.cc

    def key_lcm(self, a: int, b: int) -> int:
        k = 0
        d = 0
        for i in range(self.nvars):
            sh = FIELD * i
            fa = (a >> sh) & 0xFF
            fb = (b >> sh) & 0xFF
            f = fa if fa < fb else fb
            k |= f << sh
            d += MASK - f
        return (d << self.fbits) | k

    def monomials_of_degree(self, d: int) -> list[int]:
        """All monomial keys of degree d, in decreasing order."""
        if d < 0:
            return []
        out = []
        n = self.nvars

        def rec(i, left, acc):
            if i == n - 1:
                out.append(self.key(acc + [left]))
                return
            for e in range(left, -1, -1):
                rec(i + 1, left - e, acc + [e])

        rec(0, d, [])
        out.sort(reverse=True)
        return out

    # -- constructors --------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, PolyRing) and other.p == self.p and other.variables == self.variables

    def __hash__(self):
        return hash((self.p, self.variables))

    def __repr__(self):
        return f"PolyRing({list(self.variables)}, characteristic={self.p})"

    def index(self, name: str) -> int:
        try:
            return self._var_index[name]
        except KeyError:
            raise RingError(f"unknown variable {name!r}") from None

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {self.one_key: 1})

    def const(self, c: int) -> "Polynomial":
        c %= self.p
        return Polynomial(self, {self.one_key: c} if c else {})

    def gens(self) -> list["Polynomial"]:
        return [Polynomial(self, {self.var_key(i): 1}) for i in range(self.nvars)]

    def var(self, name: str | int) -> "Polynomial":
        i = name if isinstance(name, int) else self.index(name)
        return Polynomial(self, {self.var_key(i): 1})

    def monomial(self, exps: Sequence[int], coeff: int = 1) -> "Polynomial":
        c = coeff % self.p
        return Polynomial(self, {self.key(exps): c} if c else {})

    def from_dict(self, d: Mapping[tuple, int]) -> "Polynomial":
        terms = {}
        for e, c in d.items():
            c %= self.p
            if c:
                k = self.key(e)
                c = (terms.get(k, 0) + c) % self.p
                if c:
                    terms[k] = c
                else:
                    terms.pop(k, None)
        return Polynomial(self, terms)

    def parse(self, text: str) -> "Polynomial":
        from .parse import parse_polynomial
        return parse_polynomial(self, text)

    def __call__(self, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            if x.ring != self:
                raise RingError("polynomial from a different ring")
            return x
        if isinstance(x, int):
            return self.const(x)
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {type(x).__name__}")

    def inv(self, c: int) -> int:
        c %= self.p
        if not c:
            raise ZeroDivisionError("inverse of zero")
        return pow(c, self.p - 2, self.p)

    def monomial_str(self, key: int) -> str:
        parts = []
        for v, e in zip(self.variables, self.exponents(key)):
            if e == 1:
                parts.append(v)
            elif e > 1:
                parts.append(f"{v}^{e}")
        return "*".join(parts)


class Polynomial:
    """Immutable polynomial: a dict from monomial keys to nonzero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def lead_key(self) -> int:
        return max(self.terms)

    def lead_coeff(self) -> int:
        return self.terms[max(self.terms)]

    def lead_exponents(self) -> tuple:
        return self.ring.exponents(self.lead_key())

    def degree(self) -> int:
        if not self.terms:
            return -1
        fb = self.ring.fbits
        return max(k >> fb for k in self.terms)

    def is_homogeneous(self) -> bool:
        fb = self.ring.fbits
        return len({k >> fb for k in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(k == self.ring.one_key for k in self.terms)

    def constant_coeff(self) -> int:
        return self.terms.get(self.ring.one_key, 0)

    def coefficient(self, exps: Sequence[int]) -> int:
        return self.terms.get(self.ring.key(exps), 0)

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        p = self.ring.p
        inv = self.ring.inv(self.lead_coeff())
        return Polynomial(self.ring, {k: c * inv % p for k, c in self.terms.items()})

    def items(self):
        """(exponent tuple, coefficient) pairs in decreasing monomial order."""
        ex = self.ring.exponents
        return [(ex(k), self.terms[k]) for k in sorted(self.terms, reverse=True)]

    # arithmetic
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingError("polynomials from different rings")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        t = dict(self.terms)
        for k, c in other.terms.items():
            v = (t.get(k, 0) + c) % p
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        return Polynomial(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {k: (p - c) for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c: int) -> "Polynomial":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {k: v * c % p for k, v in self.terms.items()})

    def mul_term(self, key: int, c: int) -> "Polynomial":
        p = self.ring.p
        sh = key - self.ring.cc
        return Polynomial(self.ring, {k + sh: v * c % p for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        cc = self.ring.cc
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        t: dict = {}
        get = t.get
        for kb, cb in b.items():
            sh = kb - cc
            for ka, ca in a.items():
                k = ka + sh
                t[k] = (get(k, 0) + ca * cb) % p
        return Polynomial(self.ring, {k: v for k, v in t.items() if v})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms and self.ring == other.ring

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def homogeneous_part(self, d: int) -> "Polynomial":
        fb = self.ring.fbits
        return Polynomial(self.ring, {k: c for k, c in self.terms.items() if k >> fb == d})

    def divide_exact(self, g: "Polynomial") -> "Polynomial":
        """Exact division self / g; raises if g does not divide self."""
        if g.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        r = self.ring
        p = r.p
        f = dict(self.terms)
        q: dict = {}
        lg = g.lead_key()
        inv = r.inv(g.terms[lg])
        while f:
            t = max(f)
            if not r.key_divides(lg, t):
                raise ArithmeticError("division is not exact")
            qk = r.key_div(t, lg)
            c = f[t] * inv % p
            q[qk] = c
            sh = qk - r.cc
            for k, v in g.terms.items():
                kk = k + sh
                nv = (f.get(kk, 0) - c * v) % p
                if nv:
                    f[kk] = nv
                else:
                    f.pop(kk, None)
        return Polynomial(r, q)

    def derivative(self, i: int) -> "Polynomial":
        r = self.ring
        out = {}
        for k, c in self.terms.items():
            e = list(r.exponents(k))
            if e[i]:
                c2 = c * e[i] % r.p
                e[i] -= 1
                if c2:
                    kk = r.key(e)
                    out[kk] = (out.get(kk, 0) + c2) % r.p
        return Polynomial(r, {k: v for k, v in out.items() if v})

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Ring map x_i -> images[i] (images may live in another ring)."""
        tgt = images[0].ring
        out = tgt.zero()
        cache: dict = {}
        for k, c in self.terms.items():
            term = tgt.const(c)
            for i, e in enumerate(self.ring.exponents(k)):
                if e:
                    key = (i, e)
                    if key not in cache:
                        cache[key] = images[i] ** e
                    term = term * cache[key]
            out = out + term
        return out

    # printing
    def to_str(self, signed: bool = True) -> str:
        """Render with terms in decreasing order.

        With ``signed`` coefficients above p/2 are printed as negatives, which
        is easier to read; otherwise coefficients are the canonical
        representatives in [0, p).
        """
        if not self.terms:
            return "0"
        r = self.ring
        p = r.p
        out = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            neg = False
            if signed and c > p // 2:
                c = p - c
                neg = True
            m = r.monomial_str(k)
            if not m:
                body = str(c)
            elif c == 1:
                body = m
            else:
                body = f"{c}*{m}"
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def canonical(self) -> str:
        return self.to_str(signed=False)

    def __str__(self):
        return self.to_str(True)

    def __repr__(self):
        return f"Polynomial({self.to_str(True)!r})"


def as_polys(ring: PolyRing, items: Iterable) -> list[Polynomial]:
    return [ring(x) for x in items]
