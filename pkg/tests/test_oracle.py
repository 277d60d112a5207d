from fractions import Fraction

import pytest

from amschan.battery import rand_channel, rand_source
from amschan.errors import BudgetExceededError
from amschan.gallery import constant_source
from amschan.oracle import (
    brute_force_channel_prob,
    brute_force_event_prob,
    brute_force_word_probs,
    cesaro_partial,
    monte_carlo,
)
from amschan.rng import SplitMix64
from amschan.seqcore import Alphabet, CylinderEvent, event
from amschan.sources import cyl_prob, event_prob, stationary_mean

AB = Alphabet(("a", "b"))
F = Fraction


def test_brute_force_examples(s1, s3):
    assert brute_force_event_prob(s1, event(AB, [("a", "b")])) == 1
    for w in AB.words(3):
        assert brute_force_event_prob(s3, event(AB, [w])) == F(1, 8)


def test_brute_force_matches_forward_exactly():
    rng = SplitMix64(71)
    for _ in range(12):
        src = rand_source(rng, AB, n_states=3, zero_prob=0.35)
        words4 = list(AB.words(4))
        e = CylinderEvent(
            AB, 4, frozenset(w for w in words4 if rng.uniform() < 0.4)
        )
        assert brute_force_event_prob(src, e) == event_prob(src, e)
        table = brute_force_word_probs(src, 3)
        for w in AB.words(3):
            assert table.get(w, 0) == cyl_prob(src, w)


def test_brute_force_budget(s3):
    with pytest.raises(BudgetExceededError):
        brute_force_event_prob(s3, event(AB, [("a",) * 4]), budget=10)


def test_brute_force_channel_prob(bsc25):
    rng = SplitMix64(73)
    for _ in range(6):
        ch = rand_channel(rng, AB, AB, n_states=2)
        for w in AB.words(2):
            for v in AB.words(2):
                from amschan.channels import channel_cyl_prob

                assert brute_force_channel_prob(ch, w, v) == channel_cyl_prob(
                    ch, w, v
                )


def test_cesaro_partial_examples(s1, s2):
    e = event(AB, [("a",)])
    assert cesaro_partial(s1, e, 5) == F(3, 5)
    assert cesaro_partial(s2, e, 4) == F(1, 4)


def test_cesaro_partial_converges_to_mean():
    rng = SplitMix64(79)
    from amschan.sources import as_float_source

    total_small = total_big = 0.0
    for _ in range(6):
        src = rand_source(rng, AB, n_states=3, zero_prob=0.3)
        srcf = as_float_source(src)
        meanf = as_float_source(stationary_mean(src))
        for w in AB.words_upto(2):
            e = event(AB, [w])
            target = event_prob(meanf, e)
            total_small += abs(cesaro_partial(srcf, e, 128) - target)
            total_big += abs(cesaro_partial(srcf, e, 256) - target)
    assert total_big <= 0.7 * total_small + 1e-12


def test_monte_carlo_deterministic(s3):
    t1 = monte_carlo(s3, 3, 500, seed=11)
    t2 = monte_carlo(s3, 3, 500, seed=11)
    assert t1.freq == t2.freq
    assert monte_carlo(s3, 3, 500, seed=12).freq != t1.freq


def test_monte_carlo_point_mass():
    src = constant_source("b", AB)
    t = monte_carlo(src, 4, 200, seed=3)
    assert t.freq == {("b",) * 4: F(1)}


def test_monte_carlo_binomial_ci(s3):
    t = monte_carlo(s3, 1, 10_000, seed=5)
    freq_a = float(t.freq[("a",)])
    assert abs(freq_a - 0.5) <= 0.015
    assert 0.014 <= t.ci_half_width(("a",)) <= 0.016


def test_monte_carlo_joint_hookup(s3, bsc25):
    from amschan.channels import hookup

    joint = hookup(s3, bsc25).source
    t = monte_carlo(joint, 1, 10_000, seed=17)
    freq = float(t.freq[(("a", "a"),)])
    assert abs(freq - 0.375) <= 0.015


def test_monte_carlo_exact_value_inside_ci_mostly():
    rng = SplitMix64(83)
    cells = hits = 0
    for k in range(6):
        src = rand_source(rng, AB, n_states=3, zero_prob=0.25)
        t = monte_carlo(src, 2, 4000, seed=1000 + k)
        for w in AB.words(2):
            p = float(cyl_prob(src, w))
            cells += 1
            if abs(float(t.freq.get(w, 0)) - p) <= max(t.ci_half_width(w), 3 * (p * (1 - p) / 4000) ** 0.5):
                hits += 1
    assert hits / cells >= 0.98
