"""Exact multivariate Laurent polynomials over the rationals.

Text grammar (whitespace is ignored)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := ('+' | '-') factor | atom ('^' integer)?
    atom   := integer | name | '(' expr ')'

Division and negative powers are allowed only by units (nonzero monomials).
Canonical printing lists terms in decreasing lexicographic order of exponent
vectors, e.g. ``q^2 - q``, ``-1/2*p*q^-1 + 3``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    LaurentSyntaxError,
    NotAUnit,
    NotExactDivision,
    ParameterMismatch,
    UnknownParameter,
    ZeroAssignedToInvertedParameter,
)

Exponent = tuple[int, ...]
Scalar = int | Fraction


class LaurentPoly:
    __slots__ = ("params", "terms", "_hash")

    def __init__(self, params: Sequence[str], terms: Mapping[Exponent, Scalar] | None = None):
        self.params = tuple(params)
        clean = {}
        if terms:
            k = len(self.params)
            for e, c in terms.items():
                if c:
                    if len(e) != k:
                        raise ParameterMismatch(f"exponent {e} does not match {self.params}")
                    clean[tuple(e)] = Fraction(c)
        self.terms: dict[Exponent, Fraction] = clean
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def _raw(cls, params: tuple[str, ...], terms: dict) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj.params = params
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, params: Sequence[str], c: Scalar) -> "LaurentPoly":
        return cls(params, {(0,) * len(params): c})

    @classmethod
    def zero(cls, params: Sequence[str]) -> "LaurentPoly":
        return cls(params)

    @classmethod
    def one(cls, params: Sequence[str]) -> "LaurentPoly":
        return cls.constant(params, 1)

    @classmethod
    def var(cls, params: Sequence[str], name: str, power: int = 1) -> "LaurentPoly":
        params = tuple(params)
        if name not in params:
            raise UnknownParameter(name, params)
        e = [0] * len(params)
        e[params.index(name)] = power
        return cls(params, {tuple(e): 1})

    @classmethod
    def parse(cls, text: str, params: Sequence[str] | None = None) -> "LaurentPoly":
        return laurent_parse(text, params)

    # -- predicates and accessors --------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.params), Fraction(0))

    def is_unit(self) -> bool:
        return len(self.terms) == 1

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.params, frozenset(self.terms.items())))
        return self._hash

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.params == other.params and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self.terms
            return self.terms == {(0,) * len(self.params): Fraction(other)}
        return NotImplemented

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.params != self.params:
                raise ParameterMismatch(f"parameters {self.params} vs {other.params}")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(self.params, other)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def __add__(self, other) -> "LaurentPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            v = terms.get(e, 0) + c
            if v:
                terms[e] = v
            else:
                terms.pop(e, None)
        return LaurentPoly._raw(self.params, terms)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(self.params, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPoly._raw(self.params, {})
            return LaurentPoly._raw(self.params, {e: c * other for e, c in self.terms.items()})
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = terms.get(e, 0) + c1 * c2
                if v:
                    terms[e] = v
                else:
                    del terms[e]
        return LaurentPoly._raw(self.params, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            return self.unit_inverse() ** (-k)
        result = LaurentPoly.one(self.params)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def unit_inverse(self) -> "LaurentPoly":
        if len(self.terms) != 1:
            raise NotAUnit(f"{self} is not a unit (not a nonzero monomial)")
        (e, c), = self.terms.items()
        return LaurentPoly._raw(self.params, {tuple(-x for x in e): 1 / c})

    def __truediv__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        return self * self._coerce(other).unit_inverse()

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Quotient ``self / other`` when it is a Laurent polynomial."""
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self:
            return LaurentPoly._raw(self.params, {})
        if len(other.terms) == 1:
            return self * other.unit_inverse()
        k = len(self.params)
        lo = [min(e[i] for e in self.terms) - min(e[i] for e in other.terms) for i in range(k)]
        hi = [max(e[i] for e in self.terms) - max(e[i] for e in other.terms) for i in range(k)]
        lead_e = max(other.terms)
        lead_c = other.terms[lead_e]
        rem = dict(self.terms)
        quot: dict[Exponent, Fraction] = {}
        while rem:
            e = max(rem)
            qe = tuple(a - b for a, b in zip(e, lead_e))
            if any(x < l or x > h for x, l, h in zip(qe, lo, hi)):
                raise NotExactDivision(f"{self} is not divisible by {other}")
            qc = rem[e] / lead_c
            quot[qe] = qc
            for oe, oc in other.terms.items():
                te = tuple(a + b for a, b in zip(qe, oe))
                v = rem.get(te, 0) - qc * oc
                if v:
                    rem[te] = v
                else:
                    rem.pop(te, None)
        return LaurentPoly._raw(self.params, quot)

    # -- substitutions ------------------------------------------------------

    def specialize(self, assignment: Mapping[str, Scalar]) -> Fraction:
        values = []
        for name in self.params:
            if name not in assignment:
                raise UnknownParameter(name, tuple(assignment))
            values.append(Fraction(assignment[name]))
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for v, x, name in zip(values, e, self.params):
                if x < 0 and v == 0:
                    raise ZeroAssignedToInvertedParameter(
                        f"{name} = 0 in a term with a negative power"
                    )
                term *= v**x
            total += term
        return total

    def substitute(self, assignment: Mapping[str, Scalar]) -> "LaurentPoly":
        """Evaluate some parameters, keeping the parameter list."""
        idx = {name: i for i, name in enumerate(self.params)}
        out = LaurentPoly._raw(self.params, {})
        for e, c in self.terms.items():
            e = list(e)
            for name, v in assignment.items():
                i = idx[name]
                if e[i] < 0 and Fraction(v) == 0:
                    raise ZeroAssignedToInvertedParameter(f"{name} = 0")
                c = c * Fraction(v) ** e[i]
                e[i] = 0
            out = out + LaurentPoly._raw(self.params, {tuple(e): c} if c else {})
        return out

    def with_params(self, params: Sequence[str]) -> "LaurentPoly":
        """Re-express over a parameter list containing every parameter used here."""
        params = tuple(params)
        idx = []
        for name in self.params:
            if name in params:
                idx.append(params.index(name))
            else:
                idx.append(None)
        terms = {}
        for e, c in self.terms.items():
            new = [0] * len(params)
            for x, i, name in zip(e, idx, self.params):
                if x and i is None:
                    raise UnknownParameter(name, params)
                if i is not None:
                    new[i] = x
            terms[tuple(new)] = c
        return LaurentPoly(params, terms)

    def degree_in(self, name: str) -> int:
        i = self.params.index(name)
        return max((e[i] for e in self.terms), default=0)

    def coefficients_in(self, name: str) -> dict[int, "LaurentPoly"]:
        """Split by the exponent of ``name``; the returned parts drop that parameter."""
        i = self.params.index(name)
        rest = self.params[:i] + self.params[i + 1 :]
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            parts.setdefault(e[i], {})[e[:i] + e[i + 1 :]] = c
        return {k: LaurentPoly(rest, t) for k, t in parts.items()}

    # -- printing -----------------------------------------------------------

    def __str__(self) -> str:
        return laurent_print(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({laurent_print(self)!r}, params={list(self.params)})"


@dataclass(frozen=True)
class ParamInvolution:
    """Ring automorphism sending each inverted parameter ``x`` to ``x^-1``."""

    inverted: frozenset[str]

    def __init__(self, inverted: Iterable[str]):
        object.__setattr__(self, "inverted", frozenset(inverted))

    def fixed(self, params: Sequence[str]) -> frozenset[str]:
        return frozenset(params) - self.inverted

    def __call__(self, p: LaurentPoly) -> LaurentPoly:
        return laurent_involution(self, p)


def laurent_involution(inv: ParamInvolution, p: LaurentPoly) -> LaurentPoly:
    signs = tuple(-1 if name in inv.inverted else 1 for name in p.params)
    return LaurentPoly._raw(
        p.params, {tuple(s * x for s, x in zip(signs, e)): c for e, c in p.terms.items()}
    )


def laurent_specialize(p: LaurentPoly, assignment: Mapping[str, Scalar]) -> Fraction:
    return p.specialize(assignment)


def laurent_unit_inverse(p: LaurentPoly) -> LaurentPoly:
    return p.unit_inverse()


# -- printing -----------------------------------------------------------------


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _fmt_monomial(params: Sequence[str], e: Exponent) -> str:
    parts = []
    for name, x in zip(params, e):
        if x == 1:
            parts.append(name)
        elif x:
            parts.append(f"{name}^{x}")
    return "*".join(parts)


def laurent_print(p: LaurentPoly) -> str:
    if not p.terms:
        return "0"
    out = []
    for e in sorted(p.terms, reverse=True):
        c = p.terms[e]
        mono = _fmt_monomial(p.params, e)
        mag = abs(c)
        if not mono:
            body = _fmt_coeff(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_fmt_coeff(mag)}*{mono}"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise LaurentSyntaxError(f"unexpected character {text[bad]!r}", text, bad)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def _names_in(text: str) -> list[str]:
    return sorted({v for k, v, _ in _tokenize(text) if k == "name"})


class _Parser:
    def __init__(self, text: str, params: tuple[str, ...]):
        self.text = text
        self.params = params
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg: str, tok=None):
        tok = tok or self.peek()
        raise LaurentSyntaxError(msg, self.text, tok[2])

    def parse(self) -> LaurentPoly:
        if self.peek()[0] == "end":
            self.error("empty expression")
        value = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return value

    def expr(self) -> LaurentPoly:
        value = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> LaurentPoly:
        value = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op_tok = self.take()
            rhs = self.factor()
            if op_tok[1] == "*":
                value = value * rhs
            else:
                if not rhs.is_unit():
                    self.error("division by a non-unit", op_tok)
                value = value * rhs.unit_inverse()
        return value

    def factor(self) -> LaurentPoly:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            inner = self.factor()
            return -inner if tok[1] == "-" else inner
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            sign = 1
            while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
                if self.take()[1] == "-":
                    sign = -sign
            num = self.peek()
            if num[0] != "num":
                self.error("expected an integer exponent")
            self.take()
            k = sign * int(num[1])
            if k < 0 and not base.is_unit():
                self.error("negative power of a non-unit", num)
            base = base**k
        return base

    def atom(self) -> LaurentPoly:
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            return LaurentPoly.constant(self.params, int(val))
        if kind == "name":
            if val not in self.params:
                raise UnknownParameter(val, self.params)
            return LaurentPoly.var(self.params, val)
        if kind == "op" and val == "(":
            inner = self.expr()
            close = self.take()
            if close[1] != ")":
                self.error("expected ')'", close)
            return inner
        self.error(f"unexpected {val or 'end of input'!r}", tok)


def laurent_parse(text: str, params: Sequence[str] | None = None) -> LaurentPoly:
    """Parse ``text``; with ``params=None`` the names found in it are used, sorted."""
    if params is None:
        params = _names_in(text)
    return _Parser(text, tuple(params)).parse()
