"""Minimal implications among explicit difference equalities.

A set of independent difference equalities *minimally implies* a further
difference equality when that equality is a linear combination of the set
with every coefficient nonzero.  For such implications whose equations are
jointly 2-good, strong structure holds: the combination coefficients are all
+-1, the variables split as 2t+2 each appearing twice or 2t+1 with a single
variable appearing four times, and the produced equality is unique.  This
module enumerates minimal implications, checks those structural clauses, and
classifies how two equalities through a common variable align (equal sums vs
equal differences).

Produced equalities are stored in one orientation; a content and its negation
are treated as the same equality throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from . import exactlin
from .configuration import (
    DifferenceEquality,
    from_equalities,
    render_content,
)
from .goodness import GoodnessReport, is_c_good

MAX_PREMISES = 16


@dataclass(frozen=True)
class MinimalImplication:
    """Independent premises, one produced difference equality, its coefficients."""

    premises: tuple[DifferenceEquality, ...]
    product: tuple[int, ...]
    coefficients: tuple[Fraction, ...]

    @property
    def size(self) -> int:
        return len(self.premises)

    def __str__(self) -> str:
        terms = ", ".join(str(p) for p in self.premises)
        return f"[{terms}] => {render_content(self.product)} = 0"


class Alignment(Enum):
    SUM_ALIGNED = "sum_aligned"
    DIFFERENCE_ALIGNED = "difference_aligned"
    NEITHER = "neither"


def _canonical_sign(vec: Sequence[int]) -> tuple[int, ...]:
    for x in vec:
        if x:
            return tuple(vec) if x > 0 else tuple(-y for y in vec)
    return tuple(vec)


def _candidate_products(basis: exactlin.ExactBasis, variables: Sequence[int]) -> list[tuple[int, ...]]:
    """Span members with exactly four +-1 entries, canonically oriented.

    For each 4-subset of the candidate variables whose section is nonempty,
    the (at most three, up to sign) zero-sum unit vectors on that support are
    tested for membership.
    """
    k = basis.ambient_dim
    out = []
    seen = set()
    for quad in itertools.combinations(sorted(variables), 4):
        t, section = exactlin.section_dim(basis, quad)
        if t == 0:
            continue
        a, b, c, d = (q - 1 for q in quad)
        patterns = (
            ((a, 1), (b, 1), (c, -1), (d, -1)),
            ((a, 1), (b, -1), (c, 1), (d, -1)),
            ((a, 1), (b, -1), (c, -1), (d, 1)),
        )
        for pat in patterns:
            vec = [0] * k
            for idx, val in pat:
                vec[idx] = val
            if exactlin.member(section, vec):
                key = tuple(vec)
                if key not in seen:
                    seen.add(key)
                    out.append(key)
    return out


def _solve_coefficients(
    premises: Sequence[DifferenceEquality], target: Sequence[int]
) -> Optional[tuple[Fraction, ...]]:
    """Solve target = sum c_i * premise_i exactly; None when unsolvable."""
    k = premises[0].k
    t = len(premises)
    # Column-major augmented system over Q, one row per variable.
    rows = [[Fraction(p.content[v]) for p in premises] + [Fraction(target[v])] for v in range(k)]
    done = 0
    piv_cols: list[int] = []
    for col in range(t):
        piv = next((i for i in range(done, k) if rows[i][col]), None)
        if piv is None:
            continue
        rows[done], rows[piv] = rows[piv], rows[done]
        pv = rows[done][col]
        for i in range(k):
            if i != done and rows[i][col]:
                f = rows[i][col] / pv
                for c2 in range(col, t + 1):
                    rows[i][c2] -= f * rows[done][c2]
        piv_cols.append(col)
        done += 1
    for i in range(done, k):
        if rows[i][t]:
            return None
    coeffs = [Fraction(0)] * t
    for row_idx, col in enumerate(piv_cols):
        coeffs[col] = rows[row_idx][t] / rows[row_idx][col]
    return tuple(coeffs)


def minimal_implications(
    equalities: Sequence[DifferenceEquality], max_t: int
) -> list[MinimalImplication]:
    """All subsets of size <= max_t that minimally imply a new difference equality.

    One implication per qualifying subset: the first produced equality in a
    deterministic candidate order (support-lexicographic, then sign pattern).
    Results are ordered lexicographically by premise index set.
    """
    eqs = list(equalities)
    if len(eqs) > MAX_PREMISES:
        raise ValueError(f"at most {MAX_PREMISES} equalities supported, got {len(eqs)}")
    if max_t > len(eqs):
        raise ValueError(f"max_t={max_t} exceeds the number of equalities {len(eqs)}")
    if not eqs:
        return []
    k = eqs[0].k
    if any(e.k != k for e in eqs):
        raise ValueError("mixed ambient dimensions")
    results: list[tuple[tuple[int, ...], MinimalImplication]] = []
    for size in range(1, max_t + 1):
        for idx_subset in itertools.combinations(range(len(eqs)), size):
            subset = [eqs[i] for i in idx_subset]
            basis = exactlin.reduce([e.content for e in subset], k)
            if basis.rank != size:
                continue  # dependent premises cannot minimally imply
            variables = sorted({v for e in subset for v in e.support})
            premise_keys = {e.canonical_content for e in subset}
            for cand in _candidate_products(basis, variables):
                if _canonical_sign(cand) in premise_keys:
                    continue
                coeffs = _solve_coefficients(subset, cand)
                if coeffs is None or any(c == 0 for c in coeffs):
                    continue
                results.append((idx_subset, MinimalImplication(tuple(subset), cand, coeffs)))
                break
    results.sort(key=lambda pair: pair[0])
    return [impl for _, impl in results]


@dataclass(frozen=True)
class StructureReport:
    """Clause-by-clause verdicts for one minimal implication."""

    precondition_2good: bool
    goodness: GoodnessReport
    variable_counts_ok: bool
    variable_count: int
    appearance_profile: tuple[tuple[int, int], ...]  # (variable, appearances), quadruple first
    signs_pm1_ok: bool
    unique_product_ok: bool
    second_product: Optional[tuple[int, ...]] = None

    @property
    def all_clauses_pass(self) -> bool:
        return self.variable_counts_ok and self.signs_pm1_ok and self.unique_product_ok


def check_structure(impl: MinimalImplication) -> StructureReport:
    """Verify the structural clauses for a minimal implication.

    The 2-goodness of premises plus product is checked first and reported
    distinctly; the clauses are still evaluated so that a failure can be
    traced to the violated hypothesis.
    """
    k = impl.premises[0].k
    config = from_equalities(k, impl.premises)
    goodness = is_c_good(config, Fraction(2))

    equations = [p.content for p in impl.premises] + [impl.product]
    t = len(impl.premises)
    appearances: dict[int, int] = {}
    for eq in equations:
        for j, x in enumerate(eq):
            if x:
                appearances[j + 1] = appearances.get(j + 1, 0) + 1
    n_vars = len(appearances)
    counts = sorted(appearances.values())
    case_two = n_vars == 2 * t + 2 and counts == [2] * n_vars
    case_four = (
        n_vars == 2 * t + 1
        and counts == [2] * (n_vars - 1) + [4]
    )
    profile = tuple(sorted(appearances.items(), key=lambda kv: (-kv[1], kv[0])))

    signs_ok = all(abs(c) == 1 for c in impl.coefficients)

    basis = exactlin.reduce([p.content for p in impl.premises], k)
    variables = sorted({v for p in impl.premises for v in p.support})
    product_key = _canonical_sign(impl.product)
    premise_keys = {p.canonical_content for p in impl.premises}
    second = None
    for cand in _candidate_products(basis, variables):
        key = _canonical_sign(cand)
        if key == product_key or key in premise_keys:
            continue
        coeffs = _solve_coefficients(list(impl.premises), cand)
        if coeffs is not None and all(c != 0 for c in coeffs):
            second = cand
            break
    return StructureReport(
        precondition_2good=goodness.c_good,
        goodness=goodness,
        variable_counts_ok=case_two or case_four,
        variable_count=n_vars,
        appearance_profile=profile,
        signs_pm1_ok=signs_ok,
        unique_product_ok=second is None,
        second_product=second,
    )


def is_2_full(equalities: Sequence[DifferenceEquality]) -> bool:
    """True iff t independent equalities span exactly 2t + 1 variables."""
    eqs = list(equalities)
    if not eqs:
        raise ValueError("empty collection")
    k = eqs[0].k
    basis = exactlin.reduce([e.content for e in eqs], k)
    if basis.rank != len(eqs):
        raise ValueError("equalities are linearly dependent")
    variables = {v for e in eqs for v in e.support}
    return len(variables) == 2 * len(eqs) + 1


def classify_alignment(a: DifferenceEquality, b: DifferenceEquality, i: int) -> Alignment:
    """How two equalities through x_i align, after normalizing x_i to +1.

    They are difference-aligned when they share exactly one other variable and
    it carries the opposite sign to x_i in both (x_i - u = ... twice: three
    pairs with equal differences), sum-aligned when it carries the same sign
    as x_i in both (x_i + u = ... twice: three pairs with equal sums), and
    neither otherwise.
    """
    vecs = []
    for eq in (a, b):
        if not 1 <= i <= eq.k:
            raise ValueError(f"index {i} outside 1..{eq.k}")
        coeff = eq.content[i - 1]
        if coeff == 0:
            raise ValueError(f"x{i} does not appear in {eq}")
        if abs(coeff) != 1:
            raise ValueError(f"x{i} must carry a unit coefficient in {eq}")
        vecs.append(eq.content if coeff > 0 else tuple(-x for x in eq.content))
    va, vb = vecs
    shared = [
        j + 1
        for j in range(len(va))
        if j + 1 != i and va[j] and vb[j]
    ]
    if len(shared) != 1:
        return Alignment.NEITHER
    u = shared[0] - 1
    if va[u] == vb[u] == -1:
        return Alignment.DIFFERENCE_ALIGNED
    if va[u] == vb[u] == 1:
        return Alignment.SUM_ALIGNED
    return Alignment.NEITHER
