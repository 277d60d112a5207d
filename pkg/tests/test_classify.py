from fractions import Fraction

import pytest

from amschan.battery import rand_dense_channel, rand_dense_source
from amschan.channels import channel_cyl_prob, hookup
from amschan.classify import (
    THEOREMS,
    check_qs_mean_ergodic_identities,
    classify_channel,
    is_channel_ams_wrt,
    is_channel_ergodic_wrt,
    is_channel_recurrent_wrt,
    is_channel_stationary,
    is_quasi_stationary_wrt,
    resolve_theorem_id,
    run_theorem_suite,
)
from amschan.errors import PreconditionError, UnknownTheoremError
from amschan.gallery import coin_flip_once_channel
from amschan.rng import SplitMix64
from amschan.seqcore import Alphabet
from amschan.sources import stationary_mean

AB = Alphabet(("a", "b"))
F = Fraction


# ---------------------------------------------------------------------------
# individual checkers
# ---------------------------------------------------------------------------


def test_channel_stationarity(bsc25, copy, ct):
    assert is_channel_stationary(bsc25, 4).holds
    assert is_channel_stationary(copy, 4).holds
    verdict = is_channel_stationary(ct, 2)
    assert not verdict.holds
    w, v = verdict.witness
    # the returned witness genuinely violates the shift identity
    late = sum(channel_cyl_prob(ct, w, (b,) + v) for b in ct.out_alphabet)
    assert late != channel_cyl_prob(ct, w[1:], v)
    # the canonical deeper witness violates it too
    assert sum(
        channel_cyl_prob(ct, ("b", "b"), (b, "b")) for b in ct.out_alphabet
    ) == 1 != channel_cyl_prob(ct, ("b",), ("b",))


def test_quasi_stationarity(bsc25, ct, s1, s3):
    assert is_quasi_stationary_wrt(bsc25, s3, 3).holds
    verdict = is_quasi_stationary_wrt(ct, s3, 3)
    assert not verdict.holds
    assert verdict.witness == (("b",), ("a",))
    with pytest.raises(PreconditionError):
        is_quasi_stationary_wrt(bsc25, s1, 3)  # non-stationary source rejected


def test_quasi_stationarity_randomized_stationary_channels():
    from amschan.battery import rand_stationary_channel, rand_stationary_source

    rng = SplitMix64(3)
    for _ in range(10):
        ch = rand_stationary_channel(rng, n_states=2)
        src = rand_stationary_source(rng, n_states=2)
        assert is_quasi_stationary_wrt(ch, src, 3).holds


def test_channel_recurrence(copy, bsc25, ct, s2, s3):
    assert is_channel_recurrent_wrt(copy, s3, 3).holds
    assert is_channel_recurrent_wrt(bsc25, s3, 2).holds
    verdict = is_channel_recurrent_wrt(ct, s3, 1)
    assert not verdict.holds
    assert verdict.witness == (("b",), ("a",))
    with pytest.raises(PreconditionError):
        is_channel_recurrent_wrt(copy, s2, 2)  # non-recurrent source rejected


def test_channel_ams(ct, copy, s1, s3):
    v = is_channel_ams_wrt(ct, s3, 3)
    assert v.holds and v.evidence.constant >= 0 and v.dominated.holds
    # the stationary mean of the transient-copy hookup is the copy hookup
    from amschan.sources import are_equivalent

    assert are_equivalent(
        v.stationary_mean.source, hookup(s3, copy).source, max_len=4
    )
    v2 = is_channel_ams_wrt(copy, s1, 3)
    assert v2.holds
    assert are_equivalent(
        v2.stationary_mean.source,
        hookup(stationary_mean(s1), copy).source,
        max_len=4,
    )


def test_channel_ams_deviation_halves(s3):
    rng = SplitMix64(9)
    from amschan.battery import rand_markov_channel

    ch = rand_markov_channel(rng, n_states=2)
    v = is_channel_ams_wrt(ch, s3, 3)
    assert v.holds
    ev = v.evidence
    if ev.dev_small > 1e-12:
        assert 0.3 <= ev.dev_big / ev.dev_small <= 0.7


def test_channel_ergodicity(bsc25, copy, s1, s3, s2):
    assert is_channel_ergodic_wrt(bsc25, s3, 3).ergodic
    flip = coin_flip_once_channel()
    assert not is_channel_ergodic_wrt(flip, s3, 3).ergodic
    assert is_channel_ergodic_wrt(copy, stationary_mean(s1), 3).ergodic
    from amschan.gallery import two_loop_source

    with pytest.raises(PreconditionError):
        is_channel_ergodic_wrt(bsc25, two_loop_source(), 3)


# ---------------------------------------------------------------------------
# the classifier
# ---------------------------------------------------------------------------


def test_classify_channel_bsc(bsc25, s1, s3):
    verdict = classify_channel(bsc25, [s3, stationary_mean(s1)], 3)
    assert verdict.stationary.holds
    for row in verdict.per_source:
        assert row.quasi_stationary.holds
        assert row.recurrent.holds
        assert row.ams.holds and row.r_ams
        assert row.ergodic.ergodic


def test_classify_channel_ct_strict_separation(ct, s3):
    verdict = classify_channel(ct, [s3], 3)
    assert not verdict.stationary.holds
    row = verdict.per_source[0]
    assert row.quasi_stationary is not None and not row.quasi_stationary.holds
    assert row.recurrent is not None and not row.recurrent.holds
    assert row.ams.holds
    assert row.r_ams is False


def test_classify_channel_precondition_routing(copy, s1, s3):
    verdict = classify_channel(copy, [s1, s3], 3)
    row_s1, row_s3 = verdict.per_source
    assert row_s1.quasi_stationary is None
    assert "quasi_stationary" in row_s1.rejections
    assert row_s1.recurrent is not None  # the cycle source is recurrent
    assert row_s3.quasi_stationary.holds


# ---------------------------------------------------------------------------
# quasi-stationary mean identities
# ---------------------------------------------------------------------------


def test_qs_identity_report_stationary_source(s3, copy):
    report = check_qs_mean_ergodic_identities(copy, s3, 2)
    assert report.all_passed


def test_qs_identity_report_nonstationary_ergodic_source(copy, s1):
    report = check_qs_mean_ergodic_identities(copy, s1, 2)
    assert report.all_passed


def test_qs_identity_random_ergodic_instances():
    rng = SplitMix64(15)
    for _ in range(5):
        src = rand_dense_source(rng, AB, n_states=2, cover=True)
        ch = rand_dense_channel(rng, AB, AB, n_states=2)
        assert check_qs_mean_ergodic_identities(ch, src, 2).all_passed


def test_qs_identity_reports_bad_preconditions(copy, s2):
    report = check_qs_mean_ergodic_identities(copy, s2, 2)
    assert not report.all_passed  # absorbing source is not recurrent
    names = {i.name: i.passed for i in report.items}
    assert names["pre source-recurrent"] is False


def test_qs_dichotomy_disjoint_supports(copy):
    from amschan.gallery import constant_source

    src_a = constant_source("a", AB)
    src_b = constant_source("b", AB)
    report = check_qs_mean_ergodic_identities(copy, src_a, 2, partners=(src_b,))
    assert report.all_passed
    assert any("dichotomy" in item.name for item in report.items)


# ---------------------------------------------------------------------------
# the claim registry
# ---------------------------------------------------------------------------


def test_resolve_theorem_ids():
    assert resolve_theorem_id("prop8") == "prop8"
    assert resolve_theorem_id("Prop 8") == "prop8"
    assert resolve_theorem_id("cascade-quasi-stationary") == "prop8"
    assert resolve_theorem_id("stationary_hookup") == "stationary_hookup"
    with pytest.raises(UnknownTheoremError):
        resolve_theorem_id("prop99")


def test_registry_covers_all_claims():
    expected = {f"prop{i}" for i in (1, 2, 3, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16)}
    expected |= {"lemma7", "lemma8", "stationary_hookup"}
    assert set(THEOREMS) == expected


def test_suite_reports_are_deterministic():
    a = run_theorem_suite("prop8", 3, 3, seed=7).to_text()
    b = run_theorem_suite("prop8", 3, 3, seed=7).to_text()
    assert a == b
    c = run_theorem_suite("prop8", 3, 3, seed=8).to_text()
    assert a != c


def test_every_suite_passes_smoke():
    for tid in sorted(THEOREMS):
        report = run_theorem_suite(tid, 2, 3, seed=123)
        assert report.all_passed, (tid, [i.detail for i in report.items if not i.passed])


def test_suite_counterexample_serialization():
    # reports carry serialized models when trials fail; build a fake failing
    # trial by running a claim against a tiny trial count and checking shape
    report = run_theorem_suite("prop3", 2, 3, seed=5)
    assert report.counterexamples == []
    text = report.to_text()
    assert text.startswith("check prop3:") and text.endswith("result: PASS 2/2\n")
