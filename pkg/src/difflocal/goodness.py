"""Classify configurations: validity, collinearity, c-lightness, stars.

A configuration is *valid* when it implies no equation x_i = x_j,
*collinearity-free* when its span contains no nonzero vector supported on
exactly three variables, and *c-light* (for rational 1 < c <= 2) when every
collection of t >= 1 independent implied equations spans at least c*t + 1
variables.  A configuration that is all three is *c-good*.

The c-lightness search enumerates variable subsets S in increasing size
(lexicographic within a size) and tests t = dim{v in span : supp(v) in S}
against |S| < c*t + 1; subsets larger than c*rank cannot witness heaviness,
which bounds the enumeration.  The first witness in that order is returned,
and is automatically support-closed (its section basis supports cover it):
the closure of any witness is a witness found no later.

A *star of size 2p* is p pairwise-disjoint index pairs whose sums are all
forced equal by the span; single sum-equal pairs (p = 1) do not count.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from math import comb

from . import exactlin
from .configuration import KConfiguration, distinct_difference_count, from_equalities, from_points

Rational = Fraction


@dataclass(frozen=True)
class HeavinessWitness:
    """A variable set S and t independent implied equations with |S| < c*t + 1."""

    variables: tuple[int, ...]
    t: int
    section_basis: exactlin.ExactBasis


@dataclass(frozen=True)
class StarWitness:
    """Disjoint index pairs whose pairwise sum-equalities lie in the span."""

    pairs: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return 2 * len(self.pairs)


@dataclass(frozen=True)
class GoodnessReport:
    """Verdicts for one configuration at one value of c (checks short-circuit)."""

    c: Fraction
    valid: bool
    collinearity_free: Optional[bool]
    c_light: Optional[bool]
    equality_witness: Optional[tuple[int, int]] = None
    collinearity_witness: Optional[tuple[int, ...]] = None
    heaviness_witness: Optional[HeavinessWitness] = None

    @property
    def c_good(self) -> bool:
        return bool(self.valid) and bool(self.collinearity_free) and bool(self.c_light)


def is_valid(config: KConfiguration) -> tuple[bool, Optional[tuple[int, int]]]:
    """False, with the first witness pair (i, j), iff some e_i - e_j is implied."""
    k = config.k
    zero = ((0,) * k, 1)
    residues = config._pair_residues
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            if residues[(i, j)] == zero:
                return False, (i, j)
    return True, None


def is_collinearity_free(config: KConfiguration) -> tuple[bool, Optional[tuple[int, ...]]]:
    """False, with a support-3 span member, iff some 3-variable equation is implied.

    Sections over all 3-element variable subsets decide this: a section of
    dimension 1 witnesses iff its generator has full support; a section of
    dimension 2 is the whole zero-sum space on S and always contains one.
    """
    k = config.k
    if config.rank == 0:
        return True, None
    for subset in itertools.combinations(range(1, k + 1), 3):
        t, section = exactlin.section_dim(config.basis, subset)
        if t == 0:
            continue
        if t == 1:
            row = section.rows[0]
            if sum(1 for x in row if x) == 3:
                return False, row
            continue
        # t == 2: the section is every zero-sum vector on S.
        a, b, c = (s - 1 for s in subset)
        vec = [0] * k
        vec[a], vec[b], vec[c] = 1, -2, 1
        return False, tuple(vec)
    return True, None


def _heaviness_sweep(
    config: KConfiguration, cs: Sequence[Fraction]
) -> list[Optional[HeavinessWitness]]:
    """First heaviness witness per c (shared sweep; section dims are c-free)."""
    k = config.k
    r = config.rank
    found: list[Optional[HeavinessWitness]] = [None] * len(cs)
    if r == 0:
        return found
    c_max = max(cs)
    # any witness satisfies |S| < c*t + 1 <= c_max*r + 1
    size_cap = min(k, _max_int_below(c_max * r + 1))
    cols_all = list(range(k))
    for size in range(1, size_cap + 1):
        pending = [i for i, w in enumerate(found) if w is None and size < cs[i] * r + 1]
        if not pending:
            break
        for subset in itertools.combinations(range(1, k + 1), size):
            comp = [c0 for c0 in cols_all if (c0 + 1) not in subset]
            t = r - exactlin.rank_of_columns(config.basis, comp)
            if t < 1:
                continue
            hit = [i for i in pending if size < cs[i] * t + 1]
            if not hit:
                continue
            _, section = exactlin.section_dim(config.basis, subset)
            witness = HeavinessWitness(tuple(subset), t, section)
            for i in hit:
                found[i] = witness
            pending = [i for i in pending if found[i] is None]
            if not pending:
                break
    return found


def _max_int_below(bound: Fraction) -> int:
    # largest integer strictly less than the (positive) bound
    return (bound.numerator - 1) // bound.denominator


def is_c_light(config: KConfiguration, c: Rational) -> tuple[bool, Optional[HeavinessWitness]]:
    """True iff no t >= 1 independent implied equations fit in < c*t + 1 variables."""
    c = Fraction(c)
    if not Fraction(1) < c <= Fraction(2):
        raise ValueError(f"c must lie in (1, 2], got {c}")
    witness = _heaviness_sweep(config, [c])[0]
    return witness is None, witness


def is_c_good(config: KConfiguration, c: Rational) -> GoodnessReport:
    """Aggregate verdict; checks run in the order valid, collinearity-free, c-light."""
    c = Fraction(c)
    if not Fraction(1) < c <= Fraction(2):
        raise ValueError(f"c must lie in (1, 2], got {c}")
    valid, eq_witness = is_valid(config)
    if not valid:
        return GoodnessReport(c, False, None, None, equality_witness=eq_witness)
    coll_free, coll_witness = is_collinearity_free(config)
    if not coll_free:
        return GoodnessReport(c, True, False, None, collinearity_witness=coll_witness)
    light, heavy_witness = is_c_light(config, c)
    return GoodnessReport(c, True, True, light, heaviness_witness=heavy_witness)


def points_c_good(points: Sequence, c: Rational) -> bool:
    """Whether the configuration formed by the points is c-good.

    Fast path: a tuple whose C(k,2) differences are pairwise distinct forms
    the rank-0 configuration (every difference-equality content it satisfies
    would repeat a positive difference), which is c-good outright.
    """
    if distinct_difference_count(points) == comb(len(points), 2):
        return True
    return is_c_good(from_points(points), c).c_good


def max_matching(edges: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    """Exact maximum matching in a small graph, first maximum in search order.

    Branch and bound over the lexicographically smallest uncovered vertex:
    either match it along one of its edges or leave it uncovered.  Exponential
    in the worst case but exact, deterministic, and fast at the sizes used
    here (graphs on at most C(k,2) edges for small k).
    """
    edge_list = sorted(set((min(e), max(e)) for e in edges))

    def best(avail: list[tuple[int, int]]) -> list[tuple[int, int]]:
        if not avail:
            return []
        v = min(e[0] for e in avail)
        at_v = [e for e in avail if e[0] == v]
        rest = [e for e in avail if e[0] != v]
        champion: list[tuple[int, int]] = []
        for e in at_v:
            remaining = [f for f in rest if e[1] not in f]
            cand = [e] + best(remaining)
            if len(cand) > len(champion):
                champion = cand
        skip = best(rest)
        if len(skip) > len(champion):
            champion = skip
        return champion

    return best(edge_list)


def largest_star(config: KConfiguration) -> tuple[int, Optional[StarWitness]]:
    """Size 2p of the largest implied star, with disjoint witness pairs.

    Index pairs are grouped into sum-equality classes ({a,b} ~ {c,d} iff
    e_a + e_b - e_c - e_d lies in the span; this relation is transitive inside
    the span), and the largest set of pairwise-disjoint pairs in a class is
    taken by exact maximum matching.  A single sum-equal pair is no star:
    anything below two pairs reports size 0.
    """
    k = config.k
    base = [0] * k
    classes: dict[tuple, list[tuple[int, int]]] = {}
    for a in range(1, k + 1):
        for b in range(a + 1, k + 1):
            base[a - 1] = 1
            base[b - 1] = 1
            res = exactlin.residue(config.basis, base)
            base[a - 1] = 0
            base[b - 1] = 0
            classes.setdefault(res, []).append((a, b))
    best_pairs: list[tuple[int, int]] = []
    for pairs in classes.values():
        if len(pairs) < 2 or len(pairs) <= len(best_pairs):
            continue
        matched = max_matching(pairs)
        if len(matched) > len(best_pairs):
            best_pairs = matched
    if len(best_pairs) < 2:
        return 0, None
    return 2 * len(best_pairs), StarWitness(tuple(best_pairs))


def star_configuration(k: int, pairs: Sequence[tuple[int, int]]) -> KConfiguration:
    """The configuration {x_{i1}+x_{i2} = x_{i3}+x_{i4} = ...} on k variables."""
    if len(pairs) < 2:
        raise ValueError("a star needs at least two pairs")
    seen: set[int] = set()
    for a, b in pairs:
        if a == b or not (1 <= a <= k and 1 <= b <= k):
            raise ValueError(f"bad star pair ({a}, {b})")
        if a in seen or b in seen:
            raise ValueError("star pairs must be pairwise disjoint")
        seen.update((a, b))
    a0, b0 = pairs[0]
    contents = []
    for a, b in pairs[1:]:
        vec = [0] * k
        vec[a0 - 1] += 1
        vec[b0 - 1] += 1
        vec[a - 1] -= 1
        vec[b - 1] -= 1
        contents.append(vec)
    return from_equalities(k, contents)
