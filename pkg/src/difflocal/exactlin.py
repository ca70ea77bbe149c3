"""Exact linear algebra over the rationals on integer-coefficient row vectors.

Vectors are plain tuples of Python ints (arbitrary precision), one coefficient
per variable x_1..x_k.  An ``ExactBasis`` stores the canonical basis of the
rational span of a family of such vectors: reduced row echelon form over Q,
with every row rescaled to a primitive integer vector (entry gcd 1) whose
pivot entry is positive.  This canonical form is unique for a given subspace,
so two spans are equal iff their bases compare equal as tuples.

All elimination is fraction-free (cross-multiplication followed by gcd
renormalization), so no Fraction objects are created on the hot paths and no
rounding can occur anywhere.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

ExactVector = tuple  # alias: a row vector, tuple[int, ...]


def is_zero_sum(vec: Sequence[int]) -> bool:
    """True iff the coefficients sum to zero."""
    return sum(vec) == 0


def _content_gcd(vec: Iterable[int]) -> int:
    g = 0
    for x in vec:
        if x:
            g = gcd(g, x)
            if g == 1:
                return 1
    return g


def _leading(vec: Sequence[int]) -> int | None:
    for j, x in enumerate(vec):
        if x:
            return j
    return None


def _normalize(row: list[int], pivot: int) -> None:
    # Primitive integer row with positive pivot entry.
    g = _content_gcd(row)
    if row[pivot] < 0:
        g = -g
    if g != 1:
        for j, x in enumerate(row):
            row[j] = x // g


@dataclass(frozen=True)
class ExactBasis:
    """Canonical (RREF, primitive, positive-pivot) basis of a rational span."""

    ambient_dim: int
    rows: tuple[tuple[int, ...], ...]

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(_leading(r) for r in self.rows)  # type: ignore[misc]

    @property
    def rank(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)


def reduce(vectors: Iterable[Sequence[int]], ambient_dim: int | None = None) -> ExactBasis:
    """Canonical basis of the rational span of ``vectors``.

    Idempotent, and identical for any generating set of the same span.
    ``ambient_dim`` is required when ``vectors`` is empty.
    """
    vecs = [tuple(v) for v in vectors]
    if ambient_dim is None:
        if not vecs:
            raise ValueError("ambient_dim required for an empty generating set")
        ambient_dim = len(vecs[0])
    rows: list[list[int]] = []
    pivots: list[int] = []
    for v in vecs:
        if len(v) != ambient_dim:
            raise ValueError(f"dimension mismatch: expected {ambient_dim}, got {len(v)}")
        w = _eliminate(list(v), rows, pivots)
        j = _leading(w)
        if j is None:
            continue
        _normalize(w, j)
        pos = bisect_left(pivots, j)
        rows.insert(pos, w)
        pivots.insert(pos, j)
        piv = w[j]
        for idx, r in enumerate(rows):
            if idx == pos or r[j] == 0:
                continue
            f = r[j]
            for col in range(ambient_dim):
                r[col] = r[col] * piv - w[col] * f
            _normalize(r, pivots[idx])
    return ExactBasis(ambient_dim, tuple(tuple(r) for r in rows))


def _eliminate(w: list[int], rows: Sequence[Sequence[int]], pivots: Sequence[int]) -> list[int]:
    # Cross-multiplied elimination of w against pivot rows; result is a
    # positive rational multiple of the true residue.
    n = len(w)
    for r, p in zip(rows, pivots):
        wp = w[p]
        if wp:
            rp = r[p]
            for col in range(n):
                w[col] = w[col] * rp - r[col] * wp
    return w


def member(basis: ExactBasis, v: Sequence[int]) -> bool:
    """True iff ``v`` lies in the rational span of ``basis``."""
    if len(v) != basis.ambient_dim:
        raise ValueError(f"dimension mismatch: expected {basis.ambient_dim}, got {len(v)}")
    w = _eliminate(list(v), basis.rows, basis.pivots)
    return not any(w)


def residue(basis: ExactBasis, v: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Canonical residue of ``v`` modulo the span, as a pair ``(w, den)``.

    The true residue equals ``w / den`` with ``den > 0`` and
    ``gcd(gcd(w), den) == 1``; two vectors are congruent modulo the span iff
    their residue pairs compare equal.
    """
    if len(v) != basis.ambient_dim:
        raise ValueError(f"dimension mismatch: expected {basis.ambient_dim}, got {len(v)}")
    w = list(v)
    den = 1
    for r, p in zip(basis.rows, basis.pivots):
        wp = w[p]
        if wp:
            rp = r[p]
            for col in range(basis.ambient_dim):
                w[col] = w[col] * rp - r[col] * wp
            den *= rp
    g = gcd(_content_gcd(w), den)
    if g > 1:
        w = [x // g for x in w]
        den //= g
    return tuple(w), den


def rank_of_columns(basis: ExactBasis, columns: Sequence[int]) -> int:
    """Rank of the basis matrix restricted to the given 0-based columns."""
    r = basis.rank
    if r == 0 or not columns:
        return 0
    mat = [[row[c] for c in columns] for row in basis.rows]
    width = len(columns)
    rank = 0
    for col in range(width):
        piv_row = None
        for i in range(rank, r):
            if mat[i][col]:
                piv_row = i
                break
        if piv_row is None:
            continue
        mat[rank], mat[piv_row] = mat[piv_row], mat[rank]
        pv = mat[rank][col]
        for i in range(rank + 1, r):
            f = mat[i][col]
            if f:
                row_i = mat[i]
                row_p = mat[rank]
                for c2 in range(col, width):
                    row_i[c2] = row_i[c2] * pv - row_p[c2] * f
                g = _content_gcd(row_i)
                if g > 1:
                    for c2 in range(col, width):
                        row_i[c2] //= g
        rank += 1
        if rank == r:
            break
    return rank


def section_dim(basis: ExactBasis, support: Iterable[int]) -> tuple[int, ExactBasis]:
    """Dimension and canonical basis of the span vectors supported inside S.

    ``support`` is a set of 1-based variable indices.  Returns
    ``(t, section_basis)`` where ``t = dim {v in span : supp(v) subseteq S}``.
    """
    k = basis.ambient_dim
    supp = set(support)
    for s in supp:
        if not 1 <= s <= k:
            raise ValueError(f"support index {s} outside 1..{k}")
    cols = [j for j in range(k) if (j + 1) not in supp]
    r = basis.rank
    if r == 0:
        return 0, ExactBasis(k, ())
    if not cols:
        return r, basis
    # Kernel of the restriction map, via elimination on augmented rows.
    width = len(cols)
    aug = [[basis.rows[i][c] for c in cols] + [1 if j == i else 0 for j in range(r)] for i in range(r)]
    done = 0
    for col in range(width):
        piv_row = None
        for i in range(done, r):
            if aug[i][col]:
                piv_row = i
                break
        if piv_row is None:
            continue
        aug[done], aug[piv_row] = aug[piv_row], aug[done]
        pv = aug[done][col]
        for i in range(done + 1, r):
            f = aug[i][col]
            if f:
                row_i = aug[i]
                row_p = aug[done]
                for c2 in range(col, width + r):
                    row_i[c2] = row_i[c2] * pv - row_p[c2] * f
                g = _content_gcd(row_i)
                if g > 1:
                    for c2 in range(width + r):
                        row_i[c2] //= g
        done += 1
        if done == r:
            break
    combos = []
    for i in range(done, r):
        coeffs = aug[i][width:]
        vec = [0] * k
        for j, cf in enumerate(coeffs):
            if cf:
                row = basis.rows[j]
                for c in range(k):
                    vec[c] += cf * row[c]
        combos.append(vec)
    section = reduce(combos, k)
    return section.rank, section
