"""Permutations of ``range(n)`` stored as image tuples: ``p[i]`` is the image of ``i``."""

from math import lcm
from typing import Sequence

Permutation = tuple[int, ...]


def identity(n: int) -> Permutation:
    return tuple(range(n))


def is_permutation(images: Sequence[int]) -> bool:
    n = len(images)
    return sorted(images) == list(range(n))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p ∘ q`` (apply ``q`` first)."""
    return tuple(p[i] for i in q)


def inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def cycles(p: Permutation) -> list[tuple[int, ...]]:
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = p[i]
        out.append(tuple(cyc))
    return out


def order(p: Permutation) -> int:
    return lcm(*(len(c) for c in cycles(p))) if p else 1


def cycle_notation(p: Permutation, one_based: bool = True) -> str:
    """``(1 2)(3 4)``-style string; fixed points omitted, ``()`` for the identity."""
    off = 1 if one_based else 0
    parts = [
        "(" + " ".join(str(i + off) for i in c) + ")" for c in cycles(p) if len(c) > 1
    ]
    return "".join(parts) or "()"
