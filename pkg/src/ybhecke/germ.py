"""The finite germ of a structure group, in additive coordinates.

An element of the structure group ``G`` of a cycle set is identified with its
coordinate vector in ``Z^n`` (the brace structure), so that
``a * b = a + lambda_a(b)`` where ``lambda_a`` permutes the coordinates.  The
germ is the quotient by ``l_i * d * e_i`` for every generator; its elements are
tuples of residues and multiply through :meth:`GermContext.mul`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import lcm, prod
from typing import Callable, Iterator, Sequence

from . import perm
from .cycleset import CycleSet, lambda_orbits
from .errors import CapExceeded, DegreesNotOrbitConstant, InputError
from .perm import Permutation

GermElement = tuple[int, ...]
PivotChooser = Callable[[GermElement], int]

DEFAULT_CLASS_CAP = 10**6


def _least_pivot(v: GermElement) -> int:
    for i, x in enumerate(v):
        if x:
            return i
    raise ValueError("zero vector has no pivot")


def transport(p: Permutation, v: Sequence[int]) -> tuple[int, ...]:
    """Apply the coordinate permutation: ``out[p[t]] = v[t]``."""
    out = [0] * len(v)
    for t, x in enumerate(v):
        out[p[t]] = x
    return tuple(out)


def _peel(cs: CycleSet, s: int, v: Sequence[int]) -> tuple[int, ...]:
    """``lambda_{e_s}^{-1}(v - e_s)``, the remainder after splitting ``v = e_s * w``."""
    w = list(v)
    w[s] -= 1
    return transport(cs.psi(s), w)


def lambda_perm_raw(
    cs: CycleSet, v: Sequence[int], pivot: PivotChooser | None = None
) -> Permutation:
    """``lambda_v`` for a nonnegative vector ``v`` of the structure group."""
    choose = pivot or _least_pivot
    result = perm.identity(cs.size)
    w = tuple(v)
    while any(w):
        s = choose(w)
        if w[s] <= 0:
            raise ValueError(f"pivot {s} has no positive coordinate in {w}")
        result = perm.compose(result, cs.psi_inv(s))
        w = _peel(cs, s, w)
    return result


def generator_period(cs: CycleSet, s: int, cap: int = DEFAULT_CLASS_CAP) -> int:
    """Least ``k >= 1`` with ``lambda_{k e_s} = id``.

    Uses ``k e_s = s * (s*s) * ... * T^{k-1}(s)``, so the permutation is the
    running product of ``psi(T^i(s))^{-1}``.
    """
    diag = cs.diagonal()
    ident = perm.identity(cs.size)
    current = ident
    t = s
    for k in range(1, cap + 1):
        current = perm.compose(current, cs.psi_inv(t))
        t = diag[t]
        if current == ident:
            return k
    raise CapExceeded(cap)


def dehornoy_class(cs: CycleSet, cap: int = DEFAULT_CLASS_CAP) -> int:
    """The least ``d`` with ``lambda_{d e_s} = id`` for every generator."""
    d = lcm(*(generator_period(cs, s, cap) for s in range(cs.size)))
    if d > cap:
        raise CapExceeded(cap)
    return d


def _normalize_degrees(cs: CycleSet, degrees) -> tuple[int, ...]:
    orbits = lambda_orbits(cs)
    if isinstance(degrees, int):
        per_index = [degrees] * cs.size
    else:
        degrees = [int(x) for x in degrees]
        if len(degrees) == len(orbits):
            per_index = [0] * cs.size
            for l, block in zip(degrees, orbits):
                for i in block:
                    per_index[i] = l
        elif len(degrees) == cs.size:
            per_index = degrees
            for block in orbits:
                if len({per_index[i] for i in block}) > 1:
                    raise DegreesNotOrbitConstant(
                        f"degrees differ inside the orbit {[i + 1 for i in block]}"
                    )
        else:
            raise InputError(
                f"expected {len(orbits)} per-orbit degrees (or {cs.size} per-index), "
                f"got {len(degrees)}"
            )
    if any(l < 1 for l in per_index):
        raise InputError("degrees must be positive")
    return tuple(per_index)


@dataclass(frozen=True)
class GermContext:
    cs: CycleSet
    d: int
    degrees: tuple[int, ...]
    moduli: tuple[int, ...]
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def n(self) -> int:
        return self.cs.size

    @property
    def order(self) -> int:
        return prod(self.moduli)

    @property
    def identity(self) -> GermElement:
        return (0,) * self.n

    def elements(self) -> Iterator[GermElement]:
        """All germ elements in lexicographic order of coordinates."""
        return itertools.product(*(range(m) for m in self.moduli))

    def reduce(self, v: Sequence[int]) -> GermElement:
        return tuple(x % m for x, m in zip(v, self.moduli))

    def basis_vector(self, s: int) -> GermElement:
        return self.power_element(s, 1)

    def power_element(self, s: int, k: int) -> GermElement:
        v = [0] * self.n
        v[s] = k % self.moduli[s]
        return tuple(v)

    def lambda_perm(self, v: GermElement, pivot: PivotChooser | None = None) -> Permutation:
        """Permutation ``pi`` with ``lambda_v(e_t) = e_{pi(t)}``."""
        if pivot is not None:
            return lambda_perm_raw(self.cs, v, pivot)
        cache = self._cache.setdefault("lambda", {})
        p = cache.get(v)
        if p is None:
            p = cache[v] = lambda_perm_raw(self.cs, v)
        return p

    def lambda_apply(self, a: GermElement, b: Sequence[int]) -> GermElement:
        return transport(self.lambda_perm(a), b)

    def lambda_inv_apply(self, a: GermElement, b: Sequence[int]) -> GermElement:
        return transport(perm.inverse(self.lambda_perm(a)), b)

    def mul(self, a: GermElement, b: GermElement) -> GermElement:
        lb = self.lambda_apply(a, b)
        return tuple((x + y) % m for x, y, m in zip(a, lb, self.moduli))

    def add(self, a: GermElement, b: GermElement) -> GermElement:
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def neg(self, a: GermElement) -> GermElement:
        return tuple(-x % m for x, m in zip(a, self.moduli))

    def inv(self, a: GermElement) -> GermElement:
        return self.neg(self.lambda_inv_apply(a, a))

    def length(self, a: GermElement) -> int:
        return sum(a)

    def reduced_word(self, a: GermElement, pivot: PivotChooser | None = None) -> list[int]:
        """Generator indices ``(i_1, ..., i_k)`` with ``e_{i_1} * ... * e_{i_k} = a``."""
        choose = pivot or _least_pivot
        word = []
        w = tuple(a)
        while any(w):
            s = choose(w)
            if w[s] <= 0:
                raise ValueError(f"pivot {s} has no positive coordinate in {w}")
            word.append(s)
            w = _peel(self.cs, s, w)
        return word

    def word_product(self, word: Sequence[int]) -> GermElement:
        g = self.identity
        for s in reversed(word):
            g = self.mul(self.basis_vector(s), g)
        return g

    def is_left_reduced(self, s: int, g: GermElement) -> bool:
        """True iff ``length(e_s * g) == length(g) + 1``."""
        t = self.cs.star(s, s)
        return g[t] != self.moduli[t] - 1

    def rho(self, s: int) -> GermElement:
        """``(d-1) e_{s*s}``, the complement with ``s * rho_s = d e_s``."""
        return self.power_element(self.cs.star(s, s), self.d - 1)

    def gamma(self, s: int, k: int) -> GermElement:
        """``(k d - 1) e_{s*s}``, so that ``s * gamma = k d e_s``."""
        return self.power_element(self.cs.star(s, s), k * self.d - 1)

    def render_diagram(self, a: GermElement) -> str:
        return render_diagram(self, a)


def make_germ_context(cs: CycleSet, degrees=1, cap: int = DEFAULT_CLASS_CAP) -> GermContext:
    """Germ of ``cs`` with per-orbit degrees (an int applies to every orbit)."""
    d = dehornoy_class(cs, cap)
    per_index = _normalize_degrees(cs, degrees)
    return GermContext(cs, d, per_index, tuple(l * d for l in per_index))


def orbit_degrees(ctx: GermContext) -> list[int]:
    """Per-orbit degrees in :func:`lambda_orbits` order."""
    return [ctx.degrees[block[0]] for block in lambda_orbits(ctx.cs)]


def render_diagram(ctx: GermContext, a: GermElement) -> str:
    """ASCII marked permutation diagram of a germ element.

    Strand ``i`` starts at top column ``i`` and carries ``a[i]`` marks ``*``.
    Reading bottom to top, bottom column ``j`` is joined to top column
    ``pi(j)`` where ``pi = lambda_perm(a)``.  Each adjacent crossing takes
    three rows.
    """
    n = ctx.n
    width = 4
    pi = ctx.lambda_perm(a)

    def blank() -> list[str]:
        return [" "] * (width * n)

    def wires(row: list[str], skip: tuple[int, ...] = ()) -> list[str]:
        for c in range(n):
            if c not in skip:
                row[width * c + 1] = "|"
        return row

    def label_row() -> str:
        return "".join(str(i + 1).center(width) for i in range(n)).rstrip()

    lines = [label_row()]
    for r in range(max(a, default=0)):
        row = wires(blank())
        for i in range(n):
            if a[i] > r:
                row[width * i + 1] = "*"
        lines.append("".join(row).rstrip())
    lines.append("".join(wires(blank())).rstrip())

    # order[c] = strand occupying column c; the target puts strand pi(j) at column j
    order = list(range(n))
    target_col = {pi[j]: j for j in range(n)}
    swapped = True
    while swapped:
        swapped = False
        for c in range(n - 1):
            if target_col[order[c]] > target_col[order[c + 1]]:
                order[c], order[c + 1] = order[c + 1], order[c]
                x = width * c + 1
                for glyphs in (("\\", " ", "/"), (" ", "X", " "), ("/", " ", "\\")):
                    row = wires(blank(), skip=(c, c + 1))
                    row[x], row[x + 2], row[x + 4] = glyphs
                    lines.append("".join(row).rstrip())
                swapped = True
    lines.append("".join(wires(blank())).rstrip())
    lines.append(label_row())
    return "\n".join(lines) + "\n"
