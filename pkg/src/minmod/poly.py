"""Multivariate polynomials over Q in named unknowns.

Used as the coefficient ring for symbolic self-map ansatz elements and as
the constraint language of the degree-spectrum solver.  Terms map a sorted
``((var, exp), ...)`` tuple to a nonzero Fraction; the empty tuple is the
constant term.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not a rational scalar: {x!r}")


def _mul_keys(k1, k2):
    exps = dict(k1)
    for v, e in k2:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


class MPoly:
    """Immutable multivariate polynomial with exact rational coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        object.__setattr__(self, "terms", dict(terms or {}))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):
        raise AttributeError("MPoly is immutable")

    @staticmethod
    def const(q) -> "MPoly":
        q = _as_fraction(q)
        return MPoly({(): q} if q else {})

    @staticmethod
    def var(name: str, exp: int = 1) -> "MPoly":
        if exp == 0:
            return MPoly.const(1)
        return MPoly({((name, exp),): ONE})

    @staticmethod
    def monomial(exps: dict, coeff=ONE) -> "MPoly":
        coeff = _as_fraction(coeff)
        if not coeff:
            return MPoly()
        key = tuple(sorted((v, e) for v, e in exps.items() if e))
        return MPoly({key: coeff})

    # -- ring structure ----------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(): _as_fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(frozenset(self.terms.items()))
            object.__setattr__(self, "_hash", h)
        return h

    def _coerce(self, other):
        if isinstance(other, MPoly):
            return other
        return MPoly.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            s = terms.get(k, ZERO) + c
            if s:
                terms[k] = s
            else:
                terms.pop(k, None)
        return MPoly(terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        terms: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = _mul_keys(k1, k2)
                s = terms.get(k, ZERO) + c1 * c2
                if s:
                    terms[k] = s
                else:
                    terms.pop(k, None)
        return MPoly(terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = MPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    # -- structure queries -------------------------------------------------

    def variables(self) -> set:
        return {v for k in self.terms for v, _ in k}

    def constant_value(self):
        """The Fraction value if constant, else None."""
        if not self.terms:
            return ZERO
        if len(self.terms) == 1 and () in self.terms:
            return self.terms[()]
        return None

    def bare_linear_var(self):
        """A variable appearing exactly once, as a term ``c*v``: ``(v, c)``.

        Such a variable can be eliminated by ``v := -(rest)/c``.  Returns the
        smallest such variable for determinism, or None.
        """
        counts: dict = {}
        for k in self.terms:
            for v, e in k:
                counts[v] = counts.get(v, 0) + 1
        best = None
        for k, c in self.terms.items():
            if len(k) == 1 and k[0][1] == 1:
                v = k[0][0]
                if counts[v] == 1 and (best is None or v < best[0]):
                    best = (v, c)
        return best

    def eliminate(self, var, coeff) -> "MPoly":
        """Solve ``self == 0`` for the bare linear ``var``: the substitution value."""
        rest = MPoly({k: c for k, c in self.terms.items() if k != ((var, 1),)})
        return rest * (Fraction(-1) / coeff)

    def monomial_content(self) -> dict:
        """Variables (with multiplicity) dividing every term."""
        if not self.terms:
            return {}
        content = None
        for k in self.terms:
            exps = dict(k)
            if content is None:
                content = exps
            else:
                content = {v: min(e, exps[v]) for v, e in content.items() if v in exps}
            if not content:
                return {}
        return content

    def divide_monomial(self, exps: dict) -> "MPoly":
        terms = {}
        for k, c in self.terms.items():
            d = dict(k)
            for v, e in exps.items():
                d[v] -= e
                if d[v] < 0:
                    raise ValueError("not divisible")
                if d[v] == 0:
                    del d[v]
            terms[tuple(sorted(d.items()))] = c
        return MPoly(terms)

    def as_single_monomial(self):
        """``(coeff, {var: exp})`` if the polynomial has exactly one term."""
        if len(self.terms) != 1:
            return None
        (k, c), = self.terms.items()
        return c, dict(k)

    def as_binomial(self):
        """``((c1, e1), (c2, e2))`` for a two-term polynomial."""
        if len(self.terms) != 2:
            return None
        (k1, c1), (k2, c2) = sorted(self.terms.items())
        return (c1, dict(k1)), (c2, dict(k2))

    def substitute(self, assignment: dict) -> "MPoly":
        """Substitute variables by MPoly/Fraction values (others untouched)."""
        if not any(v in assignment for k in self.terms for v, _ in k):
            return self
        out = MPoly()
        for k, c in self.terms.items():
            if not any(v in assignment for v, _ in k):
                out = out + MPoly({k: c})
                continue
            term = MPoly.const(c)
            for v, e in k:
                if v in assignment:
                    val = assignment[v]
                    if not isinstance(val, MPoly):
                        val = MPoly.const(val)
                    term = term * val ** e
                else:
                    term = term * MPoly.var(v, e)
            out = out + term
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            c = self.terms[k]
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__
