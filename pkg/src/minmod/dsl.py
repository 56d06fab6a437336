"""Text format for algebra presentations and morphisms.

Grammar (one statement per line, ``#`` comments)::

    param NAME = INT
    gen NAME : DEGREE-EXPR
    d NAME = EXPR
    volume EXPR
    f NAME = EXPR          (morphism files only)

Expressions support ``+ - * ^``, integer and rational (``p/q``) literals and
parentheses; ``^`` binds tightest and is right-associative with integer
exponents.  Param names may appear anywhere a number may, so family
presentations like ``x1^(19 + i)`` stay readable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .gca import Element, FreeGCA, Generator, StructureError
from .sullivan import SullivanAlgebra

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<op>[-+*^/()=:]))"
)


class ParseError(ValueError):
    def __init__(self, message, line=None, col=None):
        loc = f" (line {line}, column {col})" if line is not None else ""
        super().__init__(message + loc)
        self.line = line
        self.col = col


@dataclass
class Token:
    kind: str
    value: str
    line: int
    col: int


def _tokenize(text: str, line_no: int):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos and not text[pos:].strip():
            break
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line_no, pos + 1)
        if m.end() == pos:
            raise ParseError(f"unexpected character {text[m.start():].strip()[0]!r}", line_no, pos + 1)
        kind = m.lastgroup
        out.append(Token(kind, m.group(kind), line_no, m.start(kind) + 1))
        pos = m.end()
    if text[pos:].strip():
        raise ParseError(f"unexpected character {text[pos:].strip()[0]!r}", line_no, pos + 1)
    return out


class _ExprParser:
    """Recursive descent over one token list; precedence ^ > unary- > * > +/-."""

    def __init__(self, tokens, line, symbols):
        self.toks = tokens
        self.i = 0
        self.line = line
        self.symbols = symbols  # name -> Element or Fraction (params)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, value=None):
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of expression", self.line, 0)
        if value is not None and t.value != value:
            raise ParseError(f"expected {value!r}, got {t.value!r}", t.line, t.col)
        self.i += 1
        return t

    def parse(self):
        v = self.sum()
        t = self.peek()
        if t is not None:
            raise ParseError(f"trailing input {t.value!r}", t.line, t.col)
        return v

    def sum(self):
        t = self.peek()
        neg = False
        if t and t.value in "+-":
            self.take()
            neg = t.value == "-"
        v = self.product()
        if neg:
            v = -v
        while (t := self.peek()) and t.value in "+-":
            self.take()
            rhs = self.product()
            v = v - rhs if t.value == "-" else v + rhs
        return v

    def product(self):
        v = self.power()
        while (t := self.peek()) and t.value in "*/":
            self.take()
            rhs = self.power()
            if t.value == "*":
                v = v * rhs
            else:
                if not isinstance(rhs, Fraction):
                    raise ParseError("division only by rational literals", t.line, t.col)
                v = v * (1 / rhs)
        return v

    def power(self):
        base = self.atom()
        t = self.peek()
        if t and t.value == "^":
            self.take()
            exp = self.power()  # right-associative
            if isinstance(exp, Fraction):
                if exp.denominator != 1 or exp < 0:
                    raise ParseError(f"exponent must be a non-negative integer, got {exp}", t.line, t.col)
                exp = int(exp)
            else:
                raise ParseError("exponent must be numeric", t.line, t.col)
            result = base ** exp
            if isinstance(base, Element) and base and exp >= 2 and not result:
                raise ParseError("power vanishes: odd factor squared", t.line, t.col)
            return result
        return base

    def atom(self):
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of expression", self.line, 0)
        if t.value == "(":
            self.take()
            v = self.sum()
            self.take(")")
            return v
        if t.kind == "num":
            self.take()
            return Fraction(int(t.value))
        if t.kind == "name":
            self.take()
            if t.value not in self.symbols:
                raise ParseError(f"unknown name {t.value!r}", t.line, t.col)
            return self.symbols[t.value]
        if t.value == "-":
            self.take()
            return -self.atom()
        raise ParseError(f"unexpected token {t.value!r}", t.line, t.col)


def _eval_expr(tokens, line, symbols):
    v = _ExprParser(tokens, line, symbols).parse()
    return v


@dataclass
class AlgebraFile:
    """A parsed presentation: generators, differentials, optional volume."""

    name: str
    params: dict
    generators: list          # [Generator]
    differentials: dict       # name -> Element
    volume: Element | None
    algebra: SullivanAlgebra = field(repr=False, default=None)


def parse_algebra(text: str, name: str = "") -> AlgebraFile:
    """Parse a presentation into a structurally validated SullivanAlgebra."""
    params: dict = {}
    gen_decls: list = []  # (name, degree)
    diff_lines: list = []  # (gen name, tokens, line_no)
    volume_tokens = None

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = _tokenize(line, line_no)
        head = toks[0]
        if head.value == "param":
            if len(toks) < 4 or toks[2].value != "=":
                raise ParseError("expected: param NAME = INT", line_no, head.col)
            val = _eval_expr(toks[3:], line_no, dict(params))
            if not isinstance(val, Fraction) or val.denominator != 1:
                raise ParseError("param value must be an integer", line_no, toks[3].col)
            params[toks[1].value] = Fraction(val)
        elif head.value == "gen":
            if len(toks) < 4 or toks[1].kind != "name" or toks[2].value != ":":
                raise ParseError("expected: gen NAME : DEGREE", line_no, head.col)
            deg = _eval_expr(toks[3:], line_no, dict(params))
            if not isinstance(deg, Fraction) or deg.denominator != 1 or deg < 2:
                raise ParseError(f"degree must be an integer >= 2, got {deg}", line_no, toks[3].col)
            gen_decls.append((toks[1].value, int(deg)))
        elif head.value == "d":
            if len(toks) < 4 or toks[1].kind != "name" or toks[2].value != "=":
                raise ParseError("expected: d NAME = EXPR", line_no, head.col)
            diff_lines.append((toks[1].value, toks[3:], line_no))
        elif head.value == "volume":
            volume_tokens = (toks[1:], line_no)
        else:
            raise ParseError(f"unknown statement {head.value!r}", line_no, head.col)

    names = [n for n, _ in gen_decls]
    dupes = {n for n in names if names.count(n) > 1}
    if dupes:
        raise ParseError(f"duplicate generator declarations: {sorted(dupes)}", 0, 0)
    free = FreeGCA(Generator(n, d) for n, d in gen_decls)
    symbols = dict(params)
    for n, _ in gen_decls:
        symbols[n] = free.gen(n)

    diff: dict = {}
    for gname, toks, line_no in diff_lines:
        if gname not in free.index:
            raise ParseError(f"differential for unknown generator {gname!r}", line_no, 1)
        try:
            val = _eval_expr(toks, line_no, symbols)
        except StructureError as exc:
            raise ParseError(str(exc), line_no, 1) from exc
        if isinstance(val, Fraction):
            if val != 0:
                raise ParseError(f"d {gname} must be an algebra element", line_no, 1)
            val = free.zero()
        want = free.generators[free.index[gname]].degree + 1
        if val and (not val.is_homogeneous() or val.degree() != want):
            raise ParseError(
                f"d {gname} must be homogeneous of degree {want}, got degrees {val.degrees_present()}",
                line_no, 1)
        diff[gname] = val

    volume = None
    if volume_tokens is not None:
        toks, line_no = volume_tokens
        volume = _eval_expr(toks, line_no, symbols)
        if isinstance(volume, Fraction):
            raise ParseError("volume must be an algebra element", line_no, 1)

    try:
        alg = SullivanAlgebra(free, diff, name=name)
    except StructureError as exc:
        raise ParseError(str(exc), 0, 0) from exc
    return AlgebraFile(name, {k: int(v) for k, v in params.items()},
                       list(free.generators), diff, volume, alg)


def parse_element(alg: SullivanAlgebra, text: str) -> Element:
    """Parse a single expression in the context of an algebra."""
    symbols = {g.name: alg.gen(g.name) for g in alg.generators}
    toks = _tokenize(text, 1)
    v = _eval_expr(toks, 1, symbols)
    if isinstance(v, Fraction):
        return alg.free.one().scale(v)
    return v


def parse_morphism(alg: SullivanAlgebra, text: str) -> dict:
    """Parse ``f NAME = EXPR`` lines into a generator-image map."""
    images: dict = {}
    symbols = {g.name: alg.gen(g.name) for g in alg.generators}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = _tokenize(line, line_no)
        if toks[0].value != "f" or len(toks) < 4 or toks[1].kind != "name" or toks[2].value != "=":
            raise ParseError("expected: f NAME = EXPR", line_no, 1)
        gname = toks[1].value
        if gname not in alg.free.index:
            raise ParseError(f"unknown generator {gname!r}", line_no, toks[1].col)
        val = _eval_expr(toks[3:], line_no, symbols)
        if isinstance(val, Fraction):
            val = alg.free.one().scale(val) if val else alg.free.zero()
        images[gname] = val
    for g in alg.generators:
        if g.name not in images:
            raise ParseError(f"morphism gives no image for generator {g.name}", 0, 0)
    return images


# -- printing --------------------------------------------------------------


def element_str(e: Element) -> str:
    """Round-trippable rendering of an element (parse_element inverse)."""
    if not e:
        return "0"
    parts = []
    for m in sorted(e.terms):
        c = e.terms[m]
        mono = e.alg.monomial_str(m)
        if mono == "1":
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append(f"-{mono}")
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")


def print_algebra(af: AlgebraFile) -> str:
    """Render a presentation back to DSL text (params already substituted)."""
    lines = []
    for g in af.generators:
        lines.append(f"gen {g.name} : {g.degree}")
    for g in af.generators:
        d = af.differentials.get(g.name)
        if d:
            lines.append(f"d {g.name} = {element_str(d)}")
    if af.volume is not None:
        lines.append(f"volume {element_str(af.volume)}")
    return "\n".join(lines) + "\n"
