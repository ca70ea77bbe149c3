"""Desk-scale falsification scans and equality-case reproductions.

``scan_ground`` classifies every k-subset of [1..N]: each subset's
configuration is checked for c-goodness and its certified-pair count is
computed through the configuration machinery, cross-checked against direct
difference counting on every subset.  The report records the maximum
certified count among c-good configurations against the parity bound
(k^2 - 2k)/4 for even k and (k-1)(k-3)/4 + 3 for odd k, whether every
maximal attainer is a size-k star, and whether classification at c and at
c = 2 ever diverge (they are expected to coincide at these sizes, and any
divergence is reported loudly).

``star_bound_check`` and ``odd_equality_case`` reproduce the equality cases
exactly: stars realized with power-of-four offsets have no stray
coincidences, and the odd-k equality configuration (a star of size k-1 plus
one extra equation through x_k) is realized by seeded search that rejects any
tuple whose configuration rank exceeds the intended system's.

``lemma_property_suite`` stress-tests the structural lemmas on seeded random
instances plus fixed hand-built systems.
"""

from __future__ import annotations

import itertools
import os
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Optional, Sequence

from . import exactlin
from .configuration import (
    DifferenceEquality,
    KConfiguration,
    distinct_difference_count,
    from_equalities,
    from_points,
)
from .goodness import (
    _heaviness_sweep,
    is_c_good,
    is_collinearity_free,
    is_valid,
    largest_star,
)
from .implications import (
    Alignment,
    MinimalImplication,
    check_structure,
    classify_alignment,
    is_2_full,
    minimal_implications,
)
from .verifier import BudgetExceededError, default_budget

PAPER_C = Fraction(2) - Fraction(1, 2**29)
TWO = Fraction(2)


def certified_bound(k: int) -> int:
    """Maximum certified pairs for a c-good k-configuration, by parity of k."""
    if k % 2 == 0:
        return (k * k - 2 * k) // 4
    return (k - 1) * (k - 3) // 4 + 3


def default_threads() -> int:
    return min(8, os.cpu_count() or 1)


@dataclass
class ScanReport:
    ground_n: int
    k: int
    c: Fraction
    subsets_scanned: int = 0
    good_count: int = 0
    bad_count: int = 0
    histogram: Counter = field(default_factory=Counter)
    max_certified: int = -1
    max_certified_witness: Optional[tuple[int, ...]] = None
    attainer_count: int = 0
    non_star_attainers: int = 0
    first_non_star_witness: Optional[tuple[int, ...]] = None
    c2_divergences: int = 0
    cross_check_failures: int = 0

    @property
    def bound(self) -> int:
        return certified_bound(self.k)

    @property
    def bound_respected(self) -> bool:
        return self.max_certified <= self.bound

    def to_report(self) -> dict:
        hist = [
            {"certified": value, "subsets": count}
            for value, count in sorted(self.histogram.items())
        ]
        return {
            "report": "scan",
            "ground_n": self.ground_n,
            "k": self.k,
            "c": self.c,
            "subsets_scanned": self.subsets_scanned,
            "good": self.good_count,
            "bad": self.bad_count,
            "bound": self.bound,
            "bound_respected": self.bound_respected,
            "max_certified": self.max_certified,
            "max_certified_witness": list(self.max_certified_witness or []),
            "attainers": self.attainer_count,
            "non_star_attainers": self.non_star_attainers,
            "histogram": hist,
            "c2_divergences": self.c2_divergences,
            "cross_check_failures": self.cross_check_failures,
        }


def _goodness_pair(config: KConfiguration, c: Fraction) -> tuple[bool, bool]:
    """(good at c, good at 2); validity and collinearity are shared, the
    heaviness sweep computes section dimensions once for both thresholds."""
    valid, _ = is_valid(config)
    if not valid:
        return False, False
    coll_free, _ = is_collinearity_free(config)
    if not coll_free:
        return False, False
    if c == TWO:
        light = _heaviness_sweep(config, [TWO])[0] is None
        return light, light
    w_c, w_2 = _heaviness_sweep(config, [c, TWO])
    return w_c is None, w_2 is None


def _scan_chunk(payload: tuple) -> dict:
    ground_n, k, c, leads = payload
    total_pairs = comb(k, 2)
    bound = certified_bound(k)
    out = {
        "scanned": 0,
        "good": 0,
        "bad": 0,
        "hist": Counter(),
        "max_certified": -1,
        "max_witness": None,
        "attainers": 0,
        "non_star": 0,
        "non_star_witness": None,
        "divergences": 0,
        "cross_failures": 0,
    }
    for lead in leads:
        for rest in itertools.combinations(range(lead + 1, ground_n + 1), k - 1):
            points = (lead,) + rest
            out["scanned"] += 1
            diffs = set()
            for i in range(k):
                pi = points[i]
                for j in range(i + 1, k):
                    diffs.add(points[j] - pi)
            distinct = len(diffs)
            if distinct == total_pairs:
                # rank-0 configuration: c-good, certifies nothing
                out["good"] += 1
                out["hist"][0] += 1
                if out["max_certified"] < 0:
                    out["max_certified"] = 0
                    out["max_witness"] = points
                continue
            config = from_points(points)
            certified = config.certified_count()
            if certified != total_pairs - distinct:
                out["cross_failures"] += 1
            good_c, good_2 = _goodness_pair(config, c)
            if good_c != good_2:
                out["divergences"] += 1
            if not good_c:
                out["bad"] += 1
                continue
            out["good"] += 1
            out["hist"][certified] += 1
            if certified > out["max_certified"] or (
                certified == out["max_certified"] and points < out["max_witness"]
            ):
                out["max_certified"] = certified
                out["max_witness"] = points
            if certified == bound:
                out["attainers"] += 1
                star_size, _ = largest_star(config)
                if star_size != k:
                    out["non_star"] += 1
                    if out["non_star_witness"] is None:
                        out["non_star_witness"] = points
    return out


def scan_ground(
    ground_n: int,
    k: int,
    c: Fraction | str | float,
    *,
    threads: int | None = None,
    budget: int | None = None,
) -> ScanReport:
    """Classify every k-subset of [1..N]; see the module docstring."""
    c = parse_c(c)
    if k < 2 or ground_n < k:
        raise ValueError(f"need 2 <= k <= N, got k={k}, N={ground_n}")
    limit = default_budget() if budget is None else budget
    total = comb(ground_n, k)
    if total > limit:
        raise BudgetExceededError(
            f"scan infeasible: C({ground_n},{k}) = {total} exceeds budget {limit}"
        )
    workers = default_threads() if threads is None else max(1, threads)
    leads = list(range(1, ground_n - k + 2))
    report = ScanReport(ground_n=ground_n, k=k, c=c)
    if workers == 1 or len(leads) <= 1:
        partials = [_scan_chunk((ground_n, k, c, tuple(leads)))]
    else:
        from concurrent.futures import ProcessPoolExecutor

        payloads = [(ground_n, k, c, (lead,)) for lead in leads]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(_scan_chunk, payloads))
    for part in partials:
        report.subsets_scanned += part["scanned"]
        report.good_count += part["good"]
        report.bad_count += part["bad"]
        report.histogram.update(part["hist"])
        report.attainer_count += part["attainers"]
        report.non_star_attainers += part["non_star"]
        report.c2_divergences += part["divergences"]
        report.cross_check_failures += part["cross_failures"]
        if part["max_certified"] > report.max_certified or (
            part["max_certified"] == report.max_certified
            and part["max_witness"] is not None
            and (report.max_certified_witness is None or part["max_witness"] < report.max_certified_witness)
        ):
            report.max_certified = part["max_certified"]
            report.max_certified_witness = part["max_witness"]
        if part["non_star_witness"] is not None and report.first_non_star_witness is None:
            report.first_non_star_witness = part["non_star_witness"]
    return report


def parse_c(c: Fraction | str | float) -> Fraction:
    """Accept a Fraction, an exact decimal/fraction string, or the word "paper"."""
    if isinstance(c, str):
        if c.strip().lower() == "paper":
            return PAPER_C
        value = Fraction(c.strip())
    elif isinstance(c, float):
        value = Fraction(str(c))
    else:
        value = Fraction(c)
    if not Fraction(1) < value <= TWO:
        raise ValueError(f"c must lie in (1, 2], got {value}")
    return value


def realize_star(p: int, offset_base: int = 4) -> tuple[int, ...]:
    """2p points S +- base^j around S = base^p: the only coincidences are the
    star's own (sums, differences and doubles of distinct powers never collide).
    """
    s = offset_base**p
    points: list[int] = []
    for j in range(p):
        d = offset_base**j
        points.extend((s + d, s - d))
    return tuple(points)


def star_bound_check(p_range: Iterable[int]) -> list[dict]:
    """Realize stars of size 2p and verify count p^2 - p and 2-goodness."""
    rows = []
    for p in p_range:
        if not 2 <= p <= 8:
            raise ValueError(f"p must lie in 2..8, got {p}")
        points = realize_star(p)
        config = from_points(points)
        certified = config.certified_count()
        expected = p * p - p
        good = is_c_good(config, TWO).c_good
        star_size, _ = largest_star(config)
        row = {
            "p": p,
            "points": list(points),
            "certified": certified,
            "expected": expected,
            "two_good": good,
            "largest_star": star_size,
        }
        if certified != expected or not good or star_size != 2 * p:
            raise AssertionError(f"star equality case failed: {row}")
        rows.append(row)
    return rows


def odd_equality_case(k: int, seed: int = 0, max_tries: int = 500) -> dict:
    """Find a realization of the odd-k equality configuration and verify it.

    The configuration is a star of size k-1 on x_1..x_{k-1} plus the extra
    equation x_k - x_1 = x_3 - x_5; realizations with any additional implied
    equality (detected by rank excess) are rejected.
    """
    if k % 2 == 0 or not 7 <= k <= 13:
        raise ValueError(f"k must be odd in 7..13, got {k}")
    p = (k - 1) // 2
    expected = (k - 1) * (k - 3) // 4 + 3
    rng = random.Random(seed)
    big = 10**6
    for _ in range(max_tries):
        offsets = rng.sample(range(1, big), p)
        s = 4 * big
        points = []
        for d in offsets:
            points.extend((s + d, s - d))
        x_k = points[0] + points[2] - points[4]
        points.append(x_k)
        if len(set(points)) != k:
            continue
        config = from_points(points)
        if config.rank != p:
            continue
        certified = config.certified_count()
        certified_pairs = config.certified_pairs()
        has_extras = all(pair in certified_pairs for pair in ((k, 1), (k, 3), (k, 6)))
        good = is_c_good(config, TWO).c_good
        row = {
            "k": k,
            "points": list(points),
            "rank": config.rank,
            "certified": certified,
            "expected": expected,
            "includes_k_1_3_6": has_extras,
            "two_good": good,
        }
        if certified != expected or not has_extras or not good:
            raise AssertionError(f"odd equality case failed: {row}")
        return row
    raise AssertionError(
        f"no realization of the odd-k equality configuration found for k={k} "
        f"after {max_tries} tries; this signals a bug"
    )


# ---------------------------------------------------------------------------
# Lemma property suite


def _eq(k: int, content: Sequence[int]) -> DifferenceEquality:
    return DifferenceEquality.from_content(k, tuple(content))


def sec5_figure_premises() -> list[DifferenceEquality]:
    """The four-premise system x1-x2-x3+x4, x1+x2-x5-x6, x1+x4-x7-x8, x1-x5+x7-x9."""
    return [
        _eq(9, (1, -1, -1, 1, 0, 0, 0, 0, 0)),
        _eq(9, (1, 1, 0, 0, -1, -1, 0, 0, 0)),
        _eq(9, (1, 0, 0, 1, 0, 0, -1, -1, 0)),
        _eq(9, (1, 0, 0, 0, -1, 0, 1, 0, -1)),
    ]


def subbox_figure_premises() -> list[DifferenceEquality]:
    """x1-x2-x3+x4, x1+x2-x5-x6, x1+x4-x5-x7, x1+x7-x8-x9 (first three 2-full)."""
    return [
        _eq(9, (1, -1, -1, 1, 0, 0, 0, 0, 0)),
        _eq(9, (1, 1, 0, 0, -1, -1, 0, 0, 0)),
        _eq(9, (1, 0, 0, 1, -1, 0, -1, 0, 0)),
        _eq(9, (1, 0, 0, 0, 0, 0, 1, -1, -1)),
    ]


def three_implication_figure() -> list[DifferenceEquality]:
    """x7-x1-x2+x3, x7+x1-x4-x5, x7+x3-x4-x6: a 2-full 3-implication at hub x7."""
    return [
        _eq(7, (-1, -1, 1, 0, 0, 0, 1)),
        _eq(7, (1, 0, 0, -1, -1, 0, 1)),
        _eq(7, (0, 0, 1, -1, 0, -1, 1)),
    ]


def intersection_figure() -> tuple[list[DifferenceEquality], list[DifferenceEquality]]:
    """Two overlapping 2-full families on 13 variables with a 2-full core."""
    core = [
        _eq(13, (1, -1, -1, 1) + (0,) * 9),
        _eq(13, (1, 1, 0, 0, -1, -1) + (0,) * 7),
        _eq(13, (1, 0, 0, 1, -1, 0, -1) + (0,) * 6),
    ]
    t1 = core + [_eq(13, (1, 0, 0, 0, 0, 0, 1, -1, -1, 0, 0, 0, 0))]
    t2 = core + [
        _eq(13, (1, 0, 0, 0, 0, 0, 1, 0, 0, -1, -1, 0, 0)),
        _eq(13, (0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, -1, -1)),
    ]
    return t1, t2


def _random_hub_equality(rng: random.Random, k: int, hub: int) -> DifferenceEquality:
    others = rng.sample(range(1, k), 3)
    plus = rng.randrange(3)
    vec = [0] * k
    vec[hub - 1] = 1
    for pos, var in enumerate(others):
        vec[var - 1] = 1 if pos == plus else -1
    return _eq(k, vec)


def _random_hub_family(rng: random.Random) -> Optional[list[DifferenceEquality]]:
    """Independent difference equalities through x_k, jointly c-good at PAPER_C."""
    k = rng.randint(7, 10)
    hub = k
    target = rng.randint(2, 5)
    eqs: list[DifferenceEquality] = []
    contents: list[tuple[int, ...]] = []
    for _ in range(60):
        if len(eqs) == target:
            break
        cand = _random_hub_equality(rng, k, hub)
        trial = contents + [cand.content]
        if exactlin.reduce(trial, k).rank != len(trial):
            continue
        if not is_c_good(from_equalities(k, trial), PAPER_C).c_good:
            continue
        eqs.append(cand)
        contents.append(cand.content)
    return eqs if len(eqs) >= 2 else None


def _random_general_equality(rng: random.Random, k: int) -> DifferenceEquality:
    vec = [0] * k
    if rng.random() < 0.25:
        a, b, c = rng.sample(range(k), 3)
        vec[a], vec[b], vec[c] = 1, -2, 1
    else:
        a, b, c, d = rng.sample(range(k), 4)
        vec[a], vec[b], vec[c], vec[d] = 1, 1, -1, -1
    return _eq(k, vec)


def _random_2full_family(rng: random.Random) -> Optional[list[DifferenceEquality]]:
    """A chain family: a 2-full hub triple extended by equalities that reuse two
    pooled variables and introduce two fresh ones each."""
    extensions = rng.randint(1, 3)
    k = 7 + 2 * extensions
    base = [
        (1, -1, -1, 1, 0, 0, 0),
        (1, 1, 0, 0, -1, -1, 0),
        (1, 0, 0, 1, -1, 0, -1),
    ]
    contents = [vec + (0,) * (k - 7) for vec in base]
    pool = list(range(1, 8))
    next_fresh = 8
    for _ in range(extensions):
        for _ in range(30):
            u, v = rng.sample(pool, 2)
            su = rng.choice((1, -1))
            sv = rng.choice((1, -1))
            fill = -(su + sv)
            if fill == 0:
                sx, sy = 1, -1
            else:
                sx = sy = fill // 2
            vec = [0] * k
            vec[u - 1], vec[v - 1] = su, sv
            vec[next_fresh - 1], vec[next_fresh] = sx, sy
            trial = contents + [tuple(vec)]
            if exactlin.reduce(trial, k).rank == len(trial):
                contents = trial
                pool.extend((next_fresh, next_fresh + 1))
                next_fresh += 2
                break
        else:
            return None
    return [_eq(k, vec) for vec in contents]


def _check_hub_family(eqs: Sequence[DifferenceEquality], hub: int, outcomes: list) -> None:
    k = eqs[0].k
    impls = minimal_implications(list(eqs), max_t=len(eqs))
    for impl in impls:
        outcomes.append(("hub-implication-size<=4", impl.size <= 4, impl))
        report = check_structure(impl)
        if report.precondition_2good:
            outcomes.append(("structure-clauses", report.all_clauses_pass, impl))
        if impl.size == 3:
            cfg = from_equalities(k, impl.premises)
            certified = sum(1 for j in range(1, hub) if cfg.certifies((hub, j)))
            outcomes.append(("3-implication-certifies<=5", certified <= 5, impl))
        if impl.size == 2:
            alignment = classify_alignment(impl.premises[0], impl.premises[1], hub)
            outcomes.append(("2-implication-aligned", alignment is not Alignment.NEITHER, impl))
    _check_subbox_prefixes(impls, outcomes)


def _check_subbox_prefixes(impls: Sequence[MinimalImplication], outcomes: list) -> None:
    from .configuration import is_difference_content

    for impl in impls:
        if any(abs(c) != 1 for c in impl.coefficients):
            continue
        try:
            if not is_2_full(impl.premises):
                continue
        except ValueError:
            continue
        k = impl.premises[0].k
        for cut in range(1, impl.size):
            prefix = impl.premises[:cut]
            try:
                if not is_2_full(prefix):
                    continue
            except ValueError:
                continue
            partial = [0] * k
            for coeff, premise in zip(impl.coefficients[:cut], prefix):
                for col in range(k):
                    partial[col] += coeff * premise.content[col]
            vec = tuple(int(x) for x in partial)
            ok = is_difference_content(vec) and sorted(abs(x) for x in vec if x) == [1, 1, 1, 1]
            outcomes.append(("box-subbox-partial-sum", ok, (impl, cut, vec)))


def _check_pair_claim(rng: random.Random, outcomes: list) -> bool:
    k = rng.randint(6, 9)
    for _ in range(60):
        a = _random_general_equality(rng, k)
        b = _random_general_equality(rng, k)
        if a.canonical_content == b.canonical_content:
            continue
        config = from_equalities(k, (a, b))
        if config.rank != 2:
            continue
        if not is_valid(config)[0] or not is_collinearity_free(config)[0]:
            continue
        variables = set(a.support) | set(b.support)
        outcomes.append(("pair-six-variables", len(variables) >= 6, (a, b)))
        return True
    return False


def _check_intersection(rng: random.Random, outcomes: list) -> bool:
    family = _random_2full_family(rng)
    if family is None:
        return False
    n = len(family)
    for _ in range(40):
        mask1 = [rng.random() < 0.7 for _ in range(n)]
        mask2 = [rng.random() < 0.7 for _ in range(n)]
        t1 = [eq for eq, keep in zip(family, mask1) if keep]
        t2 = [eq for eq, keep in zip(family, mask2) if keep]
        common = [eq for eq, k1, k2 in zip(family, mask1, mask2) if k1 and k2]
        union = [eq for eq, k1, k2 in zip(family, mask1, mask2) if k1 or k2]
        if not common or not t1 or not t2 or t1 == t2:
            continue
        try:
            if not (is_2_full(t1) and is_2_full(t2)):
                continue
        except ValueError:
            continue
        k = family[0].k
        if not is_c_good(from_equalities(k, union), TWO).c_good:
            continue
        try:
            conclusion = is_2_full(common)
        except ValueError:
            conclusion = False
        outcomes.append(("2-full-intersection", conclusion, (t1, t2)))
        return True
    return False


def _harvest_hub_equalities(config: KConfiguration, hub: int) -> list[DifferenceEquality]:
    """A maximal independent family of implied 4-variable equalities through x_hub."""
    k = config.k
    found: list[DifferenceEquality] = []
    contents: list[tuple[int, ...]] = []
    for trio in itertools.combinations([v for v in range(1, k + 1) if v != hub], 3):
        for plus in range(3):
            vec = [0] * k
            vec[hub - 1] = 1
            for pos, var in enumerate(trio):
                vec[var - 1] = 1 if pos == plus else -1
            if config.implies(vec):
                trial = contents + [tuple(vec)]
                if exactlin.reduce(trial, k).rank == len(trial):
                    contents.append(tuple(vec))
                    found.append(_eq(k, vec))
    return found


def _check_points_instance(rng: random.Random, outcomes: list) -> bool:
    k = rng.randint(6, 9)
    points = tuple(sorted(rng.sample(range(1, 400), k)))
    config = from_points(points)
    certified = config.certified_count()
    distinct = distinct_difference_count(points)
    outcomes.append(("cross-check", certified == comb(k, 2) - distinct, points))
    if not is_c_good(config, PAPER_C).c_good:
        return True
    family = _harvest_hub_equalities(config, k)
    if len(family) >= 2:
        _check_hub_family(family[:6], k, outcomes)
    return True


def lemma_property_suite(seed: int = 0, instance_count: int = 1000) -> dict:
    """Seeded structural-lemma stress test; returns pass counts and any
    counterexamples verbatim (none are expected)."""
    rng = random.Random(seed)
    outcomes: list[tuple[str, bool, object]] = []
    instances = 0

    # figure-derived fixed instances
    _check_hub_family(three_implication_figure(), 7, outcomes)
    instances += 1
    sec5 = sec5_figure_premises()
    impls = minimal_implications(sec5, 4)
    four = [im for im in impls if im.size == 4]
    outcomes.append(("sec5-figure-produces", bool(four), sec5))
    if four:
        report = check_structure(four[0])
        outcomes.append(("sec5-figure-structure", report.all_clauses_pass, four[0]))
    instances += 1
    sub = minimal_implications(subbox_figure_premises(), 4)
    _check_subbox_prefixes([im for im in sub if im.size == 4], outcomes)
    instances += 1
    t1, t2 = intersection_figure()
    union = t1 + [eq for eq in t2 if all(eq.content != f.content for f in t1)]
    ok = (
        is_2_full(t1)
        and is_2_full(t2)
        and is_c_good(from_equalities(13, union), TWO).c_good
        and is_2_full([eq for eq in t1 if any(eq.content == f.content for f in t2)])
    )
    outcomes.append(("intersection-figure", ok, (t1, t2)))
    instances += 1

    categories = ("hub", "pair", "intersect", "points")
    while instances < instance_count:
        category = categories[instances % len(categories)]
        produced = False
        if category == "hub":
            family = _random_hub_family(rng)
            if family is not None:
                _check_hub_family(family, family[0].k, outcomes)
                produced = True
        elif category == "pair":
            produced = _check_pair_claim(rng, outcomes)
        elif category == "intersect":
            produced = _check_intersection(rng, outcomes)
        else:
            produced = _check_points_instance(rng, outcomes)
        instances += 1 if produced else 0
        if not produced:
            instances += 1  # generation miss still consumes an instance slot
    failures = [(name, data) for name, passed, data in outcomes if not passed]
    by_check: Counter = Counter(name for name, _, _ in outcomes)
    return {
        "instances": instances,
        "checks_run": len(outcomes),
        "failures": len(failures),
        "counterexamples": [f"{name}: {data}" for name, data in failures[:10]],
        "checks_by_name": dict(sorted(by_check.items())),
    }
