"""Hecke algebras of cycle sets over Laurent-polynomial coefficient rings.

The algebra ``H(S, P)`` is the free module on ``{T_g : g in germ}``.  Products
are computed by left multiplication with generators: ``T_s T_g = T_{sg}`` when
the product is length-additive, and otherwise ``g = (s*s)^{[ld-1]} h`` and the
polynomial relation rewrites ``T_s T_{(s*s)^{[ld-1]}}`` as
``sum_{k<l} (-a_k/a_l) T_{s^{[kd]}}``.  A basis element ``T_g`` acts as the
product of generators along any reduced word of ``g``.

One polynomial is attached to each orbit of the cycle set; its degree fixes
the germ modulus of that orbit.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg
from .cycleset import CycleSet, lambda_orbits, orbit_index, retract
from .errors import (
    ConstantCoefficientNotUnit,
    DegreeMismatch,
    InputError,
    InvolutionRootMismatch,
    LeadingCoefficientNotUnit,
    NotGroupAlgebraPoint,
    OrderTooLarge,
    ParameterMismatch,
    PolynomialNotSplit,
)
from .germ import GermContext, GermElement, PivotChooser, dehornoy_class, make_germ_context
from .laurent import LaurentPoly, ParamInvolution, _names_in, laurent_parse

DEFAULT_MAX_ORDER = 4096
DEFAULT_GRAM_CAP = 256
CLASSICAL_POLY = "X^2-(q-1)*X-q"


# -- the defining polynomial ----------------------------------------------------


@dataclass(frozen=True)
class HeckePolySpec:
    """``P(X) = sum a_k X^k`` with coefficients ``a_0..a_l``; optionally split.

    The split form is ``scale * prod (X - root)``.
    """

    coeffs: tuple[LaurentPoly, ...]
    scale: LaurentPoly | None = None
    roots: tuple[LaurentPoly, ...] | None = None

    def __post_init__(self):
        if len(self.coeffs) < 2 or not self.coeffs[-1]:
            raise DegreeMismatch("the polynomial must have degree at least 1")
        params = self.coeffs[0].params
        if any(c.params != params for c in self.coeffs):
            raise ParameterMismatch("coefficients over different parameter lists")
        if self.roots is not None:
            if self.scale is None or len(self.roots) != self.degree:
                raise PolynomialNotSplit("split form needs a scale and one root per degree")
            if expand_roots(self.scale, self.roots) != self.coeffs:
                raise PolynomialNotSplit("split form does not expand to the coefficients")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def params(self) -> tuple[str, ...]:
        return self.coeffs[0].params

    @property
    def leading(self) -> LaurentPoly:
        return self.coeffs[-1]

    @classmethod
    def from_text(
        cls, text: str, params: Sequence[str] | None = None, var: str = "X"
    ) -> "HeckePolySpec":
        if params is None:
            params = [p for p in _names_in(text) if p != var]
        params = tuple(params)
        if var in params:
            raise InputError(f"the polynomial variable {var!r} clashes with a parameter")
        full = laurent_parse(text, params + (var,))
        parts = full.coefficients_in(var)
        if any(k < 0 for k in parts):
            raise InputError(f"negative power of {var} in {text!r}")
        deg = max(parts, default=0)
        zero = LaurentPoly.zero(params)
        return cls(tuple(parts.get(k, zero) for k in range(deg + 1)))

    @classmethod
    def from_roots(cls, scale: LaurentPoly, roots: Sequence[LaurentPoly]) -> "HeckePolySpec":
        roots = tuple(roots)
        return cls(expand_roots(scale, roots), scale, roots)

    def with_split(self) -> "HeckePolySpec":
        """Attach a split form found by a bounded monomial-root search."""
        if self.roots is not None:
            return self
        roots = monomial_roots(self)
        if roots is None:
            raise PolynomialNotSplit(f"{self} has no split form with monomial roots")
        return HeckePolySpec(self.coeffs, self.leading, roots)

    def compose_power(self, k: int) -> "HeckePolySpec":
        """``P(X^k)``."""
        zero = LaurentPoly.zero(self.params)
        out = [zero] * (self.degree * k + 1)
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return HeckePolySpec(tuple(out))

    def evaluate(self, x, one):
        acc = one * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c * one
        return acc

    def __str__(self) -> str:
        out = ""
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("X" if k == 1 else f"X^{k}")
            text = str(c)
            neg = text.startswith("-")
            if len(c.terms) > 1:
                body = f"({text})"
                neg = False
            else:
                body = text.lstrip("-")
            if mono:
                body = mono if body == "1" else f"{body}*{mono}"
            if not out:
                out = f"-{body}" if neg else body
            else:
                out += f" - {body}" if neg else f" + {body}"
        return out


def parse_polys(texts: Sequence[str], var: str = "X") -> list[HeckePolySpec]:
    """Parse several polynomials over the union of their parameter names."""
    names = sorted({p for t in texts for p in _names_in(t) if p != var})
    return [HeckePolySpec.from_text(t, names, var) for t in texts]


def expand_roots(scale: LaurentPoly, roots: Sequence[LaurentPoly]) -> tuple[LaurentPoly, ...]:
    coeffs = [scale]
    for r in roots:
        nxt = [LaurentPoly.zero(scale.params)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - c * r
        coeffs = nxt
    return tuple(coeffs)


def _synthetic_div(coeffs: Sequence[LaurentPoly], root: LaurentPoly):
    """Divide by ``X - root``; return (quotient coeffs, remainder)."""
    n = len(coeffs) - 1
    q = [None] * n
    acc = coeffs[n]
    for i in range(n - 1, -1, -1):
        q[i] = acc
        acc = coeffs[i] + acc * root
    return q, acc


def monomial_roots(spec: HeckePolySpec, bound: int | None = None):
    """Search for ``±c * x^e`` roots; ``None`` when the polynomial does not split so."""
    params = spec.params
    if bound is None:
        bound = max(
            (abs(x) for c in spec.coeffs for e in c.terms for x in e), default=0
        ) + 1
    scalars = {Fraction(1)}
    for c in (spec.coeffs[0], spec.coeffs[-1]):
        for v in c.terms.values():
            for a in _divisors(abs(v.numerator)):
                for b in _divisors(v.denominator):
                    scalars.add(Fraction(a, b))
    candidates = []
    for e in itertools.product(range(-bound, bound + 1), repeat=len(params)):
        for c in sorted(scalars):
            for sgn in (1, -1):
                candidates.append(LaurentPoly(params, {e: sgn * c}))
    coeffs = list(spec.coeffs)
    roots = []
    while len(coeffs) > 1:
        for r in candidates:
            quot, rem = _synthetic_div(coeffs, r)
            if not rem:
                roots.append(r)
                coeffs = quot
                break
        else:
            return None
    return tuple(roots)


def _divisors(k: int) -> list[int]:
    if k == 0:
        return [1]
    if k > 10**6:
        return [1, k]
    return [i for i in range(1, k + 1) if k % i == 0]


# -- algebra elements -------------------------------------------------------------


class HeckeElement:
    """Finite linear combination ``sum c_g T_g`` with Laurent coefficients."""

    __slots__ = ("params", "terms")

    def __init__(self, params: Sequence[str], terms: Mapping[GermElement, LaurentPoly] | None = None):
        self.params = tuple(params)
        self.terms: dict[GermElement, LaurentPoly] = {
            tuple(g): c for g, c in (terms or {}).items() if c
        }

    @classmethod
    def _raw(cls, params, terms) -> "HeckeElement":
        obj = cls.__new__(cls)
        obj.params = params
        obj.terms = terms
        return obj

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, g: GermElement) -> LaurentPoly:
        return self.terms.get(tuple(g), LaurentPoly.zero(self.params))

    def items(self):
        return self.terms.items()

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.params == other.params and self.terms == other.terms

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        terms = dict(self.terms)
        for g, c in other.terms.items():
            v = terms[g] + c if g in terms else c
            if v:
                terms[g] = v
            else:
                terms.pop(g, None)
        return HeckeElement._raw(self.params, terms)

    def __neg__(self) -> "HeckeElement":
        return HeckeElement._raw(self.params, {g: -c for g, c in self.terms.items()})

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + (-other)

    def scale(self, c) -> "HeckeElement":
        out = {}
        for g, x in self.terms.items():
            v = x * c
            if v:
                out[g] = v
        return HeckeElement._raw(self.params, out)

    def __mul__(self, c):
        if isinstance(c, (LaurentPoly, int, Fraction)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def to_json(self) -> list:
        return [[str(self.terms[g]), list(g)] for g in sorted(self.terms)]

    @classmethod
    def from_json(cls, data: Iterable, params: Sequence[str]) -> "HeckeElement":
        out = cls(params)
        try:
            for coeff, coords in data:
                c = laurent_parse(str(coeff), params)
                out = out + cls(params, {tuple(int(x) for x in coords): c})
        except (TypeError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError("a Hecke element is a list of [coefficient, [coords...]] pairs") from exc
        return out

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({self.terms[g]})*T{list(g)}" for g in sorted(self.terms))

    __repr__ = __str__


# -- the algebra -------------------------------------------------------------------


class HeckeAlgebra:
    """``H(S, P)`` for one polynomial per orbit, with the germ as basis index set."""

    def __init__(
        self,
        germ: GermContext,
        polys: Sequence[HeckePolySpec],
        max_order: int = DEFAULT_MAX_ORDER,
        gram_cap: int = DEFAULT_GRAM_CAP,
    ):
        cs = germ.cs
        self.germ = germ
        self.orbits = lambda_orbits(cs)
        self.orbit_of = orbit_index(cs)
        self.max_order = max_order
        self.gram_cap = gram_cap
        polys = list(polys)
        if len(polys) == 1 and len(self.orbits) > 1:
            polys = polys * len(self.orbits)
        if len(polys) != len(self.orbits):
            raise DegreeMismatch(f"need one polynomial per orbit ({len(self.orbits)}), got {len(polys)}")
        self.params = polys[0].params
        for k, (p, block) in enumerate(zip(polys, self.orbits)):
            if p.params != self.params:
                raise ParameterMismatch("all polynomials must share one parameter list")
            if p.degree != germ.degrees[block[0]]:
                raise DegreeMismatch(
                    f"orbit {k} has degree {germ.degrees[block[0]]} but its polynomial has degree {p.degree}"
                )
            if not p.leading.is_unit():
                raise LeadingCoefficientNotUnit(f"leading coefficient {p.leading} is not a unit")
        self.polys = tuple(polys)
        self._zero = LaurentPoly.zero(self.params)
        self._one = LaurentPoly.one(self.params)
        self._relation = tuple(
            tuple(-(a * p.leading.unit_inverse()) for a in p.coeffs[:-1]) for p in self.polys
        )
        self._gen_cache: dict[tuple[int, GermElement], tuple] = {}
        self._basis_products: dict[tuple[GermElement, GermElement], HeckeElement] = {}
        self._inv_cache: dict[GermElement, HeckeElement] = {}
        self._trace_cache: dict[GermElement, LaurentPoly] = {}

    # basics

    @property
    def dim(self) -> int:
        return self.germ.order

    @property
    def cs(self) -> CycleSet:
        return self.germ.cs

    def basis(self) -> list[GermElement]:
        return list(self.germ.elements())

    def poly_of(self, s: int) -> HeckePolySpec:
        return self.polys[self.orbit_of[s]]

    def zero(self) -> HeckeElement:
        return HeckeElement(self.params)

    def one(self) -> HeckeElement:
        return self.gen(self.germ.identity)

    def gen(self, g: GermElement) -> HeckeElement:
        return HeckeElement._raw(self.params, {tuple(g): self._one})

    def generator(self, s: int) -> HeckeElement:
        return self.gen(self.germ.basis_vector(s))

    def scalar(self, c) -> HeckeElement:
        return self.one().scale(c)

    def coeff(self, text_or_poly) -> LaurentPoly:
        if isinstance(text_or_poly, LaurentPoly):
            return text_or_poly
        if isinstance(text_or_poly, (int, Fraction)):
            return LaurentPoly.constant(self.params, text_or_poly)
        return laurent_parse(text_or_poly, self.params)

    # multiplication

    def _left_gen_terms(self, s: int, g: GermElement) -> tuple:
        key = (s, g)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        G = self.germ
        if G.is_left_reduced(s, g):
            out = ((self._one, G.mul(G.basis_vector(s), g)),)
        else:
            t = self.cs.star(s, s)
            gamma = G.power_element(t, G.moduli[t] - 1)
            h = G.mul(G.inv(gamma), g)
            rel = self._relation[self.orbit_of[s]]
            out = tuple(
                (c, G.mul(G.power_element(s, k * G.d), h)) for k, c in enumerate(rel) if c
            )
        self._gen_cache[key] = out
        return out

    def left_mul_gen(self, s: int, x: HeckeElement) -> HeckeElement:
        terms: dict[GermElement, LaurentPoly] = {}
        for g, c in x.terms.items():
            for r, h in self._left_gen_terms(s, g):
                v = c * r
                if h in terms:
                    v = terms[h] + v
                if v:
                    terms[h] = v
                else:
                    terms.pop(h, None)
        return HeckeElement._raw(self.params, terms)

    def mul_word(self, word: Sequence[int], y: HeckeElement) -> HeckeElement:
        """``T_{w_1} ... T_{w_k} y``."""
        for s in reversed(word):
            y = self.left_mul_gen(s, y)
        return y

    def basis_product(self, g: GermElement, h: GermElement) -> HeckeElement:
        key = (g, h)
        hit = self._basis_products.get(key)
        if hit is not None:
            return hit
        if not any(g):
            result = self.gen(h)
        else:
            word = self.germ.reduced_word(g)
            s = word[0]
            rest = self.germ.word_product(word[1:])
            result = self.left_mul_gen(s, self.basis_product(rest, h))
        self._basis_products[key] = result
        return result

    def mul(self, x: HeckeElement, y: HeckeElement) -> HeckeElement:
        terms: dict[GermElement, LaurentPoly] = {}
        for g, a in x.terms.items():
            for h, b in y.terms.items():
                ab = a * b
                for k, c in self.basis_product(g, h).terms.items():
                    v = ab * c
                    if k in terms:
                        v = terms[k] + v
                    if v:
                        terms[k] = v
                    else:
                        terms.pop(k, None)
        return HeckeElement._raw(self.params, terms)

    def mul_via_word(
        self, x: HeckeElement, y: HeckeElement, pivot: PivotChooser | None = None
    ) -> HeckeElement:
        """Product computed by folding a (possibly non-canonical) reduced word per term."""
        out = self.zero()
        for g, a in x.terms.items():
            out = out + self.mul_word(self.germ.reduced_word(g, pivot), y).scale(a)
        return out

    def socle_generator(self, s: int) -> HeckeElement:
        """``T_{s^{[d]}}`` as the product along a word for ``d e_s`` in the structure group.

        With degree 1 the germ coordinate of ``d e_s`` is already zero, so the
        basis element ``T_{(d e_s mod m)}`` would be ``1``; the word product
        carries the polynomial relation instead.
        """
        G = self.germ
        word = G.reduced_word(tuple(G.d if i == s else 0 for i in range(G.n)))
        return self.mul_word(word, self.one())

    def power(self, x: HeckeElement, k: int) -> HeckeElement:
        result = self.one()
        for _ in range(k):
            result = self.mul(result, x)
        return result

    def evaluate_poly(self, spec: HeckePolySpec, x: HeckeElement) -> HeckeElement:
        acc = self.zero()
        for c in reversed(spec.coeffs):
            acc = self.mul(acc, x) + self.scalar(c)
        return acc

    # inverses and the anti-involution

    def inv_gen(self, s: int) -> HeckeElement:
        P = self.poly_of(s)
        a0 = P.coeffs[0]
        if not a0.is_unit():
            raise ConstantCoefficientNotUnit(f"constant coefficient {a0} is not a unit")
        a0_inv = a0.unit_inverse()
        t = self.cs.star(s, s)
        G = self.germ
        terms = {}
        for k in range(1, P.degree + 1):
            c = -(P.coeffs[k] * a0_inv)
            if c:
                terms[G.power_element(t, k * G.d - 1)] = c
        return HeckeElement(self.params, terms)

    def inv(self, g: GermElement) -> HeckeElement:
        g = tuple(g)
        hit = self._inv_cache.get(g)
        if hit is not None:
            return hit
        word = self.germ.reduced_word(g)
        result = self.one()
        for s in word:
            result = self.mul(self.inv_gen(s), result)
        self._inv_cache[g] = result
        return result

    def check_involution(self, inv: ParamInvolution) -> None:
        for p in self.polys:
            split = p.with_split()
            for r in split.roots:
                if inv(r) != r.unit_inverse():
                    raise InvolutionRootMismatch(
                        f"the involution sends root {r} to {inv(r)}, not {r.unit_inverse()}"
                    )
            if not p.coeffs[0].is_unit():
                raise ConstantCoefficientNotUnit(f"constant coefficient {p.coeffs[0]} is not a unit")

    def anti_involution(self, inv: ParamInvolution, x: HeckeElement) -> HeckeElement:
        self.check_involution(inv)
        out = self.zero()
        for g, c in x.terms.items():
            out = out + self.inv(g).scale(inv(c))
        return out

    # specialization to the germ group algebra

    def default_assignment(self) -> dict[str, Fraction]:
        return {p: Fraction(1) for p in self.params}

    def check_group_algebra_point(self, assignment: Mapping[str, Fraction]) -> None:
        for p in self.polys:
            vals = [c.specialize(assignment) for c in p.coeffs]
            want = [Fraction(-1)] + [Fraction(0)] * (p.degree - 1) + [Fraction(1)]
            if vals != want:
                raise NotGroupAlgebraPoint(
                    f"{p} specializes to coefficients {[str(v) for v in vals]}, not X^{p.degree} - 1"
                )

    def specialize(
        self, x: HeckeElement, assignment: Mapping[str, Fraction] | None = None
    ) -> dict[GermElement, Fraction]:
        assignment = assignment or self.default_assignment()
        self.check_group_algebra_point(assignment)
        out = {}
        for g, c in x.terms.items():
            v = c.specialize(assignment)
            if v:
                out[g] = v
        return out

    def group_algebra_mul(self, u: Mapping, v: Mapping) -> dict[GermElement, Fraction]:
        out: dict[GermElement, Fraction] = {}
        for g, a in u.items():
            for h, b in v.items():
                k = self.germ.mul(g, h)
                out[k] = out.get(k, 0) + a * b
        return {k: c for k, c in out.items() if c}

    # traces

    def _guard(self, limit: int | None = None) -> None:
        limit = self.max_order if limit is None else limit
        if self.dim > limit:
            raise OrderTooLarge(self.dim, limit)

    def left_matrix(self, x: HeckeElement) -> linalg.Matrix:
        """Matrix of ``y -> x y`` in the basis order of :meth:`basis`."""
        self._guard()
        basis = self.basis()
        index = {g: i for i, g in enumerate(basis)}
        m = linalg.zeros(len(basis), len(basis), self._zero)
        for j, h in enumerate(basis):
            for k, c in self.mul(x, self.gen(h)).terms.items():
                m[index[k]][j] = c
        return m

    def basis_trace(self, g: GermElement) -> LaurentPoly:
        hit = self._trace_cache.get(g)
        if hit is None:
            acc = self._zero
            for h in self.germ.elements():
                acc = acc + self.basis_product(g, h).coeff(h)
            hit = self._trace_cache[g] = acc
        return hit

    def trace(self, x: HeckeElement) -> LaurentPoly:
        self._guard()
        acc = self._zero
        for g, c in x.terms.items():
            acc = acc + c * self.basis_trace(g)
        return acc

    def tau(self, x: HeckeElement) -> LaurentPoly:
        return x.coeff(self.germ.identity)

    def gram(self) -> linalg.Matrix:
        self._guard()
        self._guard(self.gram_cap)
        basis = self.basis()
        return [[self.trace(self.basis_product(g, h)) for h in basis] for g in basis]

    def gram_determinant(self) -> LaurentPoly:
        return linalg.det_bareiss(self.gram(), self._zero, self._one, LaurentPoly.exact_div)

    # relation checks in the regular representation

    def relation_report(self) -> dict:
        """Closure plus both relation families in the regular representation.

        A matrix identity between left-multiplication operators holds iff it
        holds on every basis column, so each side is applied to every ``T_h``.
        """
        self._guard()
        G = self.germ
        basis = self.basis()
        basis_set = set(basis)
        closed = all(
            set(self.basis_product(g, h).terms) <= basis_set for g in basis for h in basis
        )
        quadratic = all(
            self.left_mul_gen(s, self.left_mul_gen(self.cs.star(s, t), self.gen(h)))
            == self.left_mul_gen(t, self.left_mul_gen(self.cs.star(t, s), self.gen(h)))
            for s in range(G.n)
            for t in range(G.n)
            for h in basis
        )
        polynomial = True
        for s in range(G.n):
            big = self.socle_generator(s)
            P = self.poly_of(s)
            for h in basis:
                acc = self.zero()
                for c in reversed(P.coeffs):
                    acc = self.mul(big, acc) + self.gen(h).scale(c)
                if acc:
                    polynomial = False
        return {
            "dimension": self.dim,
            "closure": closed,
            "quadratic_relations": quadratic,
            "polynomial_relations": polynomial,
        }


def make_hecke_context(
    cs: CycleSet,
    degrees,
    polys: HeckePolySpec | Sequence[HeckePolySpec],
    max_order: int = DEFAULT_MAX_ORDER,
    gram_cap: int = DEFAULT_GRAM_CAP,
) -> HeckeAlgebra:
    if isinstance(polys, HeckePolySpec):
        polys = [polys]
    germ = make_germ_context(cs, degrees)
    return HeckeAlgebra(germ, polys, max_order=max_order, gram_cap=gram_cap)


def classical(cs: CycleSet, **kwargs) -> HeckeAlgebra:
    """The ``X^2 - (q-1)X - q`` algebra (degree 2 on every orbit)."""
    spec = HeckePolySpec.from_text(CLASSICAL_POLY, ("q",))
    return make_hecke_context(cs, 2, spec, **kwargs)


# -- retraction -------------------------------------------------------------------


class RetractionMorphism:
    """``H(S, P(X)) -> H(S', P(X^{d/d'}))`` induced by ``s -> class(s)``."""

    def __init__(self, source: HeckeAlgebra):
        if len(set(source.polys)) != 1 or len(set(source.germ.degrees)) != 1:
            raise InputError("the retraction morphism needs one polynomial of uniform degree")
        self.source = source
        self.retract, self.projection = retract(source.cs)
        self.d = source.germ.d
        self.d_prime = dehornoy_class(self.retract)
        ratio = self.d // self.d_prime
        P = source.polys[0]
        Q = P.compose_power(ratio)
        self.ratio = ratio
        self.target = make_hecke_context(
            self.retract, Q.degree, Q, max_order=source.max_order, gram_cap=source.gram_cap
        )
        self._cache: dict[GermElement, HeckeElement] = {}

    def image_of_basis(self, g: GermElement) -> HeckeElement:
        hit = self._cache.get(g)
        if hit is None:
            word = [self.projection[s] for s in self.source.germ.reduced_word(g)]
            hit = self._cache[g] = self.target.mul_word(word, self.target.one())
        return hit

    def __call__(self, x: HeckeElement) -> HeckeElement:
        out = self.target.zero()
        for g, c in x.terms.items():
            out = out + self.image_of_basis(g).scale(c)
        return out

    def is_multiplicative(self, x: HeckeElement, y: HeckeElement) -> bool:
        return self(self.source.mul(x, y)) == self.target.mul(self(x), self(y))

    def check_generator_pairs(self) -> bool:
        n = self.source.germ.n
        return all(
            self.is_multiplicative(self.source.generator(s), self.source.generator(t))
            for s in range(n)
            for t in range(n)
        )

    def check_generator_actions(self) -> bool:
        """``phi(T_s T_g) = phi(T_s) phi(T_g)`` for every generator and basis element."""
        src = self.source
        return all(
            self.is_multiplicative(src.generator(s), src.gen(g))
            for s in range(src.germ.n)
            for g in src.germ.elements()
        )


def hecke_retraction_map(source: HeckeAlgebra) -> RetractionMorphism:
    return RetractionMorphism(source)


def random_coefficient(rng: random.Random, params: Sequence[str], terms: int = 2) -> LaurentPoly:
    out = {}
    for _ in range(terms):
        e = tuple(rng.randint(-1, 2) for _ in params)
        out[e] = out.get(e, 0) + rng.choice((-3, -2, -1, 1, 2, 3))
    return LaurentPoly(params, out)


def random_element(alg: HeckeAlgebra, rng: random.Random, terms: int = 3) -> HeckeElement:
    """A sparse element with small random Laurent coefficients."""
    basis = alg.basis()
    out = alg.zero()
    for _ in range(terms):
        g = rng.choice(basis)
        out = out + alg.gen(g).scale(random_coefficient(rng, alg.params))
    return out
