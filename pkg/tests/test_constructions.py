import itertools
from fractions import Fraction
from math import comb

import pytest

from difflocal import constructions as con
from difflocal.configuration import from_points
from difflocal.goodness import is_c_good


def coefficient_triples(kappa):
    return [
        (a, b, g)
        for a in range(-kappa, kappa + 1)
        for b in range(-kappa, kappa + 1)
        for g in range(-kappa, kappa + 1)
        if a and b and g and a + b + g == 0
    ]


def assert_avoids(elements, kappa):
    triples = coefficient_triples(kappa)
    for s1, s2, s3 in itertools.permutations(elements, 3):
        for a, b, g in triples:
            assert a * s1 + b * s2 + g * s3 != 0, (s1, s2, s3, a, b, g)


class TestBehrendSet:
    def test_worked_example_d2_m3(self):
        art = con.behrend_set(d=2, m=3, kappa=2)
        params = art.provenance["parameters"]
        assert params["base"] == 96
        assert params["r"] == 5  # slice {(1,2),(2,1)}; ties broken to smallest r
        assert art.elements == (98, 193)

    def test_injectivity_output_size_equals_slice(self):
        for d, m, kappa in [(2, 5, 2), (3, 4, 1), (3, 6, 2)]:
            art = con.behrend_set(d=d, m=m, kappa=kappa)
            assert len(art.elements) == art.provenance["parameters"]["slice_size"]
            assert len(set(art.elements)) == len(art.elements)

    def test_r_maximizes_slice_with_smallest_tie(self):
        from collections import Counter

        for d, m in [(2, 3), (2, 4), (3, 4)]:
            art = con.behrend_set(d=d, m=m, kappa=2)
            hist = Counter(
                sum(x * x for x in v) for v in itertools.product(range(1, m + 1), repeat=d)
            )
            best = max(hist.values())
            best_r = min(r for r, cnt in hist.items() if cnt == best)
            assert art.provenance["parameters"]["r"] == best_r
            assert len(art.elements) == best

    def test_avoidance_small(self):
        art = con.behrend_set(d=3, m=5, kappa=2)
        assert len(art.elements) >= 3
        assert_avoids(art.elements, 2)

    def test_single_vector_box(self):
        art = con.behrend_set(d=2, m=1, kappa=2)
        assert len(art.elements) == 1

    def test_elements_within_interval(self):
        art = con.behrend_set(d=3, m=6, kappa=2)
        base = art.provenance["parameters"]["base"]
        assert all(1 <= e <= base**3 for e in art.elements)

    def test_degenerate_parameters(self):
        with pytest.raises(con.ConstructionError):
            con.behrend_set(d=1, m=3, kappa=2)
        with pytest.raises(con.ConstructionError):
            con.behrend_set(d=2, m=0, kappa=2)
        with pytest.raises(con.ConstructionError):
            con.behrend_set(d=12, m=10, kappa=2, max_enumeration=10**6)


class TestBehrendAuto:
    def test_million_gives_d3_and_3ap_free(self):
        art = con.behrend_auto(10**6, 2)
        # d = floor(sqrt(ln 1e6)) = 3 per the formulas
        assert art.provenance["parameters"]["d"] == 3
        assert art.elements[-1] <= 10**6
        if len(art.elements) >= 3:
            assert_avoids(art.elements, 2)

    def test_collapsed_m_is_loud(self):
        with pytest.raises(con.ConstructionError, match="m"):
            con.behrend_auto(16, 2)

    def test_max_element_never_exceeds_n(self):
        for n in (10**6, 10**7):
            art = con.behrend_auto(n, 2)
            assert art.elements[-1] <= n


class TestDigitGroundSet:
    def test_base3_stanley_within_640(self):
        ground = con.digit_ground_set(640, 2)
        assert len(ground) == 64
        assert ground[0] == 1 and ground[-1] == 365
        assert_avoids(ground[:20], 2)  # spot check the avoidance guarantee

    def test_avoidance_exhaustive_small(self):
        for kappa in (2, 3):
            ground = con.digit_ground_set(200, kappa)
            assert_avoids(ground, kappa)

    def test_kappa1_is_every_integer(self):
        # no zero-sum pattern has three nonzero coefficients of magnitude 1
        assert con.digit_ground_set(10, 1) == list(range(1, 11))


class TestPowerFloor:
    def test_exact_roots(self):
        assert con.iroot(27, 3) == 3
        assert con.iroot(26, 3) == 2
        assert con.power_floor(30, Fraction(19, 10)) == 640
        assert con.power_floor(100, Fraction(2)) == 10000

    def test_against_float_for_safe_sizes(self):
        for n in (10, 30, 100):
            for c in (Fraction(3, 2), Fraction(19, 10), Fraction(2)):
                assert con.power_floor(n, c) == int(float(n) ** float(c) + 1e-9)


class TestRandomLocalSet:
    def test_end_to_end_n30_k4(self):
        art = con.random_local_set(30, 4, Fraction(19, 10), seed=7)
        assert len(art.elements) == 30
        assert art.elements[-1] <= 640

    def test_same_seed_is_bit_identical(self):
        a = con.random_local_set(20, 4, Fraction(19, 10), seed=11)
        b = con.random_local_set(20, 4, Fraction(19, 10), seed=11)
        assert a.elements == b.elements
        assert a.provenance == b.provenance

    def test_postcondition_all_subsets_good(self):
        art = con.random_local_set(12, 4, Fraction(19, 10), seed=3)
        for subset in itertools.combinations(art.elements, 4):
            assert is_c_good(from_points(subset), Fraction(19, 10)).c_good

    def test_alteration_deletes_and_logs(self):
        # kappa=1 ground is all of [1..limit]: plenty of bad subsets to delete
        art = con.random_local_set(8, 4, Fraction(2), kappa=1, seed=5)
        assert len(art.elements) == 8
        log = art.provenance["deletion_log"]
        assert log, "expected at least one alteration deletion"
        for entry in log:
            assert entry["deleted"] == max(entry["subset"])
            assert not is_c_good(from_points(entry["subset"]), Fraction(2)).c_good

    def test_deletion_log_replays(self):
        import random as _random

        art = con.random_local_set(8, 4, Fraction(2), kappa=1, seed=5)
        prov = art.provenance
        ground = con.digit_ground_set(prov["limit"], prov["parameters"]["kappa"])
        rho = Fraction(prov["rho"])
        if rho >= 1:
            sampled = list(ground)
        else:
            rng = _random.Random(prov["seed_used"])
            threshold = float(rho)
            sampled = [g for g in ground if rng.random() < threshold]
        assert len(sampled) == prov["sampled_size"]
        deleted = {entry["deleted"] for entry in prov["deletion_log"]}
        survivors = [e for e in sampled if e not in deleted]
        replayed = [e for e in survivors if e not in set(prov["trimmed"])]
        assert tuple(replayed) == art.elements

    def test_difference_set_within_interval_bound(self):
        from difflocal.verifier import difference_set

        art = con.random_local_set(20, 4, Fraction(19, 10), seed=1)
        limit = con.power_floor(20, Fraction(19, 10))
        assert len(difference_set(art.elements)) <= limit

    def test_infeasible_parameters(self):
        with pytest.raises(con.ConstructionError):
            con.random_local_set(60, 4, Fraction(11, 10), seed=0)  # ground too small
        with pytest.raises(con.ConstructionError):
            con.random_local_set(10, 3, Fraction(19, 10), seed=0)  # k below 4
        with pytest.raises(con.ConstructionError):
            con.random_local_set(10, 4, Fraction(5, 2), seed=0)  # c out of range


class TestBehrendSampling:
    def test_sampling_mode_is_explicit_and_deterministic(self):
        exhaustive = con.behrend_set(d=3, m=20, kappa=2)
        sampled = con.behrend_set(
            d=3, m=20, kappa=2, max_enumeration=1000, sample=30000, sample_seed=1
        )
        assert set(sampled.elements) <= set(exhaustive.elements)
        again = con.behrend_set(
            d=3, m=20, kappa=2, max_enumeration=1000, sample=30000, sample_seed=1
        )
        assert sampled.elements == again.elements

    def test_oversized_box_without_sampling_is_an_error(self):
        with pytest.raises(con.ConstructionError, match="sample"):
            con.behrend_set(d=3, m=20, kappa=2, max_enumeration=1000)
