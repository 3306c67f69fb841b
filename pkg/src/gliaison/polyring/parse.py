"""Text input: polynomials and ``ring``/``ideal`` declaration files.

File grammar (``#`` starts a comment)::

    ring 32003 x0 x1 x2 x3 x4
    ideal X
      x0*x1 + x2*x3 + x4^2
    end
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .ring import PolyRing, Polynomial, RingError


class ParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}, column {column}: "
        super().__init__(where + msg)


class InhomogeneousError(ValueError):
    def __init__(self, name: str, index: int, degrees: list[int], line: int | None = None):
        self.name = name
        self.index = index
        self.degrees = degrees
        loc = f" (line {line})" if line is not None else ""
        super().__init__(f"generator {index} of ideal {name}{loc} is not homogeneous: "
                         f"its terms have degrees {degrees}")


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\^)|(\*)|([+-]))")


def parse_polynomial(ring: PolyRing, text: str, line: int | None = None,
                     col0: int = 1) -> Polynomial:
    """Parse a sum of signed terms like ``3*x^2*y - z^3``."""
    pos = 0
    n = len(text)
    toks = []
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col0 + pos)
        start = m.start(m.lastindex)
        kind = m.lastindex
        toks.append((kind, m.group(kind), col0 + start))
        pos = m.end()
    if not toks:
        raise ParseError("empty polynomial", line, col0)

    i = 0
    p = ring.p
    terms: dict = {}

    def err(msg, k):
        c = toks[k][2] if k < len(toks) else col0 + len(text)
        raise ParseError(msg, line, c)

    first = True
    while i < len(toks):
        sign = 1
        if toks[i][0] == 5:
            sign = -1 if toks[i][1] == "-" else 1
            i += 1
        elif not first:
            err("expected '+' or '-'", i)
        first = False
        coeff = 1
        exps = [0] * ring.nvars
        seen = False
        while i < len(toks):
            kind, val, _ = toks[i]
            if kind == 1:
                coeff = coeff * int(val) % p
                i += 1
                seen = True
            elif kind == 2:
                if val not in ring._var_index:
                    err(f"unknown variable {val!r}", i)
                e = 1
                i += 1
                if i < len(toks) and toks[i][0] == 3:
                    i += 1
                    if i >= len(toks) or toks[i][0] != 1:
                        err("expected exponent after '^'", i)
                    e = int(toks[i][1])
                    i += 1
                exps[ring._var_index[val]] += e
                seen = True
            else:
                if not seen:
                    err("expected a coefficient or variable", i)
                break
            if i < len(toks) and toks[i][0] == 4:
                i += 1
                if i >= len(toks) or toks[i][0] not in (1, 2):
                    err("expected a factor after '*'", i)
                continue
            if i < len(toks) and toks[i][0] in (1, 2):
                continue
            break
        if not seen:
            err("expected a term", i)
        try:
            k = ring.key(exps)
        except RingError as e:
            err(str(e), i - 1)
        c = (terms.get(k, 0) + sign * coeff) % p
        if c:
            terms[k] = c
        else:
            terms.pop(k, None)
    return Polynomial(ring, terms)


@dataclass
class ParsedFile:
    ring: PolyRing
    ideals: dict = field(default_factory=dict)   # name -> list[Polynomial]
    order: list = field(default_factory=list)


def parse_file(text: str, require_homogeneous: bool = True) -> ParsedFile:
    ring = None
    out = None
    current = None
    cur_line = None
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        stripped = body.strip()
        if not stripped:
            continue
        col = body.index(stripped[0]) + 1
        words = stripped.split()
        if current is not None:
            if words == ["end"]:
                out.ideals[current] = out.ideals.get(current, [])
                current = None
                continue
            f = parse_polynomial(ring, stripped, ln, col)
            if require_homogeneous and not f.is_homogeneous():
                degs = sorted({ring.key_degree(k) for k in f.terms})
                raise InhomogeneousError(current, len(out.ideals[current]), degs, ln)
            if not f.is_zero():
                out.ideals[current].append(f)
            continue
        if words[0] == "ring":
            if ring is not None:
                raise ParseError("ring declared twice", ln, col)
            if len(words) < 3:
                raise ParseError("expected 'ring <prime> <variables...>'", ln, col)
            try:
                char = int(words[1])
            except ValueError:
                raise ParseError(f"characteristic must be an integer, got {words[1]!r}",
                                 ln, col + len("ring ")) from None
            try:
                ring = PolyRing(words[2:], char)
            except RingError as e:
                raise ParseError(str(e), ln, col) from None
            out = ParsedFile(ring)
        elif words[0] == "ideal":
            if ring is None:
                raise ParseError("ideal declared before ring", ln, col)
            if len(words) != 2:
                raise ParseError("expected 'ideal <name>'", ln, col)
            current = words[1]
            if current in out.ideals:
                raise ParseError(f"ideal {current!r} declared twice", ln, col)
            out.ideals[current] = []
            out.order.append(current)
            cur_line = ln
        else:
            raise ParseError(f"unknown declaration {words[0]!r}", ln, col)
    if current is not None:
        raise ParseError(f"ideal {current!r} (line {cur_line}) is missing 'end'",
                         ln if text else 1, 1)
    if ring is None:
        raise ParseError("no ring declaration", 1, 1)
    return out
