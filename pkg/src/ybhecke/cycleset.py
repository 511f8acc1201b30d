"""Finite cycle sets: validation, the diagonal map, orbits and retraction.

A cycle set of size ``n`` is stored as its star table, ``table[i][j]`` being
the index of ``s_i * s_j`` (0-based).  On disk the same table is written
1-based inside ``{"size": n, "table": [[...], ...]}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import perm
from .errors import CycleLawViolation, InducedTableAmbiguous, InputError, RowNotBijective
from .perm import Permutation


@dataclass(frozen=True)
class CycleSet:
    """A validated cycle set.  Build it with :func:`validate_cycle_set`."""

    table: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.table)

    def star(self, i: int, j: int) -> int:
        return self.table[i][j]

    def psi(self, i: int) -> Permutation:
        return self.table[i]

    def psi_inv(self, i: int) -> Permutation:
        return perm.inverse(self.table[i])

    def diagonal(self) -> Permutation:
        """The map ``T(s) = s*s``."""
        return tuple(self.table[i][i] for i in range(self.size))

    def to_json(self) -> dict:
        return {"size": self.size, "table": [[x + 1 for x in row] for row in self.table]}

    def __repr__(self) -> str:
        rows = ", ".join(perm.cycle_notation(r) for r in self.table)
        return f"CycleSet(n={self.size}, psi=[{rows}])"


def validate_cycle_set(table: Sequence[Sequence[int]]) -> CycleSet:
    """Check a 0-based star table and wrap it.

    Every row must be a permutation and the cycle-set law
    ``(i*j)*(i*k) = (j*i)*(j*k)`` must hold on all triples.
    """
    n = len(table)
    if n == 0:
        raise InputError("a cycle set needs at least one element")
    rows = []
    for i, row in enumerate(table):
        row = tuple(int(x) for x in row)
        if len(row) != n or any(not 0 <= x < n for x in row):
            raise InputError(f"row {i} must have {n} entries in [0, {n})")
        rows.append(row)
    for i, row in enumerate(rows):
        if not perm.is_permutation(row):
            raise RowNotBijective(i)
    for i in range(n):
        ri = rows[i]
        for j in range(n):
            rj = rows[j]
            a = rows[ri[j]]
            b = rows[rj[i]]
            for k in range(n):
                if a[ri[k]] != b[rj[k]]:
                    raise CycleLawViolation(i, j, k)
    return CycleSet(tuple(rows))


def from_permutations(psis: Sequence[Sequence[int]]) -> CycleSet:
    """Build from the list of rows ``psi(s_i)`` (0-based images)."""
    return validate_cycle_set(psis)


def constant(sigma: Sequence[int]) -> CycleSet:
    """The cycle set with ``psi(s) = sigma`` for every ``s``."""
    return validate_cycle_set([list(sigma)] * len(sigma))


def trivial(n: int) -> CycleSet:
    return constant(range(n))


def parse_cycle_set(data: dict | str) -> CycleSet:
    """Parse the 1-based JSON document (text or already-decoded dict)."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc.msg} at position {exc.pos}") from exc
    if not isinstance(data, dict) or "table" not in data:
        raise InputError('expected an object with keys "size" and "table"')
    table = data["table"]
    if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
        raise InputError('"table" must be a list of rows')
    size = data.get("size", len(table))
    if size != len(table):
        raise InputError(f'"size" is {size} but the table has {len(table)} rows')
    try:
        zero_based = [[int(x) - 1 for x in row] for row in table]
    except (TypeError, ValueError) as exc:
        raise InputError("table entries must be integers") from exc
    return validate_cycle_set(zero_based)


def load_cycle_set(path: str | Path) -> CycleSet:
    return parse_cycle_set(Path(path).read_text())


def diagonal_order(cs: CycleSet) -> int:
    return perm.order(cs.diagonal())


def lambda_orbits(cs: CycleSet) -> list[tuple[int, ...]]:
    """Orbits of the group generated by all ``psi(s)``, ordered by least member."""
    n = cs.size
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for row in cs.table:
        for j, k in enumerate(row):
            a, b = find(j), find(k)
            if a != b:
                parent[max(a, b)] = min(a, b)
    blocks: dict[int, list[int]] = {}
    for i in range(n):
        blocks.setdefault(find(i), []).append(i)
    return sorted((tuple(b) for b in blocks.values()), key=lambda b: b[0])


def orbit_index(cs: CycleSet) -> tuple[int, ...]:
    """``orbit_index(cs)[i]`` is the position of ``i``'s block in :func:`lambda_orbits`."""
    idx = [0] * cs.size
    for k, block in enumerate(lambda_orbits(cs)):
        for i in block:
            idx[i] = k
    return tuple(idx)


def retract(cs: CycleSet) -> tuple[CycleSet, tuple[int, ...]]:
    """Identify elements with equal ``psi``; return the quotient and the class map."""
    classes: dict[Permutation, int] = {}
    projection = []
    reps = []
    for i in range(cs.size):
        row = cs.psi(i)
        if row not in classes:
            classes[row] = len(reps)
            reps.append(i)
        projection.append(classes[row])
    m = len(reps)
    table = [[None] * m for _ in range(m)]
    for i in range(cs.size):
        for j in range(cs.size):
            a, b = projection[i], projection[j]
            c = projection[cs.star(i, j)]
            if table[a][b] is None:
                table[a][b] = c
            elif table[a][b] != c:
                raise InducedTableAmbiguous(i, j)
    return validate_cycle_set(table), tuple(projection)
