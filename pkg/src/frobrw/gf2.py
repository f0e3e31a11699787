"""Linear algebra over GF(2) with int bitsets: bit j of a row is column j."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


def bits(vector: Sequence[int]) -> int:
    """Pack a 0/1 sequence into an int, coordinate j at bit j."""
    out = 0
    for j, x in enumerate(vector):
        if x & 1:
            out |= 1 << j
    return out


def unbits(row: int, dim: int) -> tuple[int, ...]:
    return tuple((row >> j) & 1 for j in range(dim))


def rref(rows: Iterable[int], pivot_order: Sequence[int]) -> tuple[list[int], list[int]]:
    """Reduced row-echelon form, choosing pivots in the given column order.

    Returns (rows, pivots) with rows[i] pivoting on pivots[i]. Columns absent
    from ``pivot_order`` never become pivots.
    """
    work = [r for r in rows if r]
    out: list[int] = []
    pivots: list[int] = []
    for col in pivot_order:
        mask = 1 << col
        hit = next((i for i, r in enumerate(work) if r & mask), None)
        if hit is None:
            continue
        piv = work.pop(hit)
        work = [r ^ piv if r & mask else r for r in work]
        out = [r ^ piv if r & mask else r for r in out]
        out.append(piv)
        pivots.append(col)
        work = [r for r in work if r]
    return out, pivots


def rank(rows: Iterable[int], ncols: int) -> int:
    return len(rref(rows, range(ncols))[0])


def nullspace(rows: Iterable[int], ncols: int) -> list[int]:
    """Basis of {x : r.x = 0 for every row r}."""
    reduced, pivots = rref(rows, range(ncols))
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = 1 << f
        for r, p in zip(reduced, pivots):
            if (r >> f) & 1:
                vec |= 1 << p
        basis.append(vec)
    return basis


def eliminate(rows: Iterable[int], columns: Sequence[int], ncols: int) -> list[int]:
    """Rows of the row space that vanish on ``columns`` (projection of the solution set away from them)."""
    gone = set(columns)
    order = list(columns) + [c for c in range(ncols) if c not in gone]
    reduced, pivots = rref(rows, order)
    return [r for r, p in zip(reduced, pivots) if p not in gone]


@dataclass(frozen=True)
class Subspace2:
    """A subspace of GF(2)^dim, stored as its canonical RREF basis."""
    dim: int
    basis: tuple[int, ...]

    @classmethod
    def span(cls, dim: int, vectors: Iterable[int]) -> Subspace2:
        vectors = list(vectors)
        if any(v >> dim for v in vectors):
            raise ValueError("vector exceeds ambient dimension")
        reduced, pivots = rref(vectors, range(dim))
        order = sorted(range(len(pivots)), key=pivots.__getitem__)
        return cls(dim, tuple(reduced[i] for i in order))

    @classmethod
    def solutions(cls, dim: int, equations: Iterable[int]) -> Subspace2:
        return cls.span(dim, nullspace(equations, dim))

    @classmethod
    def full(cls, dim: int) -> Subspace2:
        return cls.span(dim, [1 << j for j in range(dim)])

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, vector: int) -> bool:
        return rank(list(self.basis) + [vector], self.dim) == self.rank

    def orthogonal_complement(self) -> Subspace2:
        return Subspace2.solutions(self.dim, self.basis)

    def vectors(self) -> list[int]:
        """Every element (2^rank of them)."""
        out = [0]
        for b in self.basis:
            out += [v ^ b for v in out]
        return sorted(out)

    def basis_tuples(self) -> list[tuple[int, ...]]:
        return [unbits(b, self.dim) for b in self.basis]


def orthogonal_complement(s: Subspace2) -> Subspace2:
    return s.orthogonal_complement()


def subspace_equal(a: Subspace2, b: Subspace2) -> bool:
    return a.dim == b.dim and a.basis == b.basis
