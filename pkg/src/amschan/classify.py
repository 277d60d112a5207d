"""Stability verdicts for channels and the executable claim registry.

The stability hierarchy
    stationary  =>  quasi-stationary  =>  recurrent-and-AMS  =>  AMS
is asserted, never merely observed: `classify_channel` hard-fails on an
inversion instead of reporting one.

Finite semantics of the verdicts:

* channel stationarity is checked as an identity between shifted kernel
  evaluations on all input/output cylinder pairs up to the given depth;
* quasi-stationarity with respect to a stationary source is shift
  invariance of the hookup on product cylinders up to the depth;
* channel recurrence with respect to a recurrent source demands zero
  recurrence defect for every positive-mass rectangle up to the depth;
* the AMS verdict is always affirmative for finite models; its value is the
  constructive evidence: the exact stationary mean of the hookup, observed
  O(1/n) Cesaro convergence toward it, and asymptotic domination by it.

Almost-everywhere quantifiers are exercised on positive-mass cylinders and
on eventually periodic (lasso) inputs; universal quantifiers over sources
are exercised on a configurable battery.  `run_theorem_suite` packages one
randomized check per bundled claim, deterministic per seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .battery import (
    battery_stationary_sources,
    rand_channel,
    rand_dense_channel,
    rand_dense_source,
    rand_ergodic_stationary_source,
    rand_lassos,
    rand_markov_channel,
    rand_recurrent_channel,
    rand_source,
    rand_stationary_channel,
    rand_stationary_source,
)
from .channels import (
    FsmChannel,
    JointSource,
    LassoInput,
    cascade,
    channel_cyl_prob,
    channel_output_measure,
    conditional_table,
    hookup,
    joint_shifted,
    joint_stationary_mean,
    kernel_stationary_mean,
    lift_to_pair_input,
    nu_partial_mean_table,
    output_marginal,
    qs_mean_table_wrt_ams,
    quasi_stationary_mean,
    rect_prob,
    table_agreement_witness,
    table_coherence_witness,
)
from .errors import HierarchyViolationError, PreconditionError, UnknownTheoremError
from .gallery import coin_flip_once_channel, cycle_source, iid_uniform, transient_copy_channel
from .linalg import vec_mat
from .models import channel_to_json, source_to_json
from .rng import SplitMix64, derive_seed
from .scalars import is_positive, scalar_eq, to_float
from .seqcore import Alphabet, Word, sort_words
from .sources import (
    AmsEvidence,
    DominationVerdict,
    ErgodicVerdict,
    FsmSource,
    _stationary_precondition,
    ams_evidence,
    asymptotic_support,
    asymptotically_dominates,
    cyl_prob,
    dominates,
    equivalence_witness,
    is_ergodic,
    is_recurrent,
    positive_words,
    shifted_source,
    stationary_mean,
    with_init,
)

# ---------------------------------------------------------------------------
# channel-level verdicts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StationarityVerdict:
    holds: bool
    depth: int
    witness: tuple[Word, Word] | None = None

    def __bool__(self) -> bool:
        return self.holds


def is_channel_stationary(ch: FsmChannel, depth: int) -> StationarityVerdict:
    """Kernel shift identity on cylinders: for every input word w (length
    m+1 <= depth+1) and output word v (length m), the mass the channel gives
    [v] one step late on [w] equals the mass it gives [v] on the shifted
    input.  Constant on such cylinders, so this checks the identity at every
    input point up to the depth."""
    for m in range(depth + 1):
        for w in ch.in_alphabet.words(m + 1):
            for v in ch.out_alphabet.words(m):
                late = sum(
                    channel_cyl_prob(ch, w, (b,) + v) for b in ch.out_alphabet
                )
                if not scalar_eq(late, channel_cyl_prob(ch, w[1:], v)):
                    return StationarityVerdict(False, depth, (w, v))
    return StationarityVerdict(True, depth)


@dataclass(frozen=True)
class QuasiStationarityVerdict:
    holds: bool
    depth: int
    witness: tuple[Word, Word] | None = None

    def __bool__(self) -> bool:
        return self.holds


def _split_product_word(word: Word) -> tuple[Word, Word]:
    return tuple(a for a, _ in word), tuple(b for _, b in word)


def is_quasi_stationary_wrt(
    ch: FsmChannel, src: FsmSource, depth: int
) -> QuasiStationarityVerdict:
    """Shift invariance of the hookup on product cylinders up to the depth.

    A non-stationary source is rejected with an error, not a false verdict:
    quasi-stationarity is defined against stationary inputs only.
    """
    if not _stationary_precondition(src):
        raise PreconditionError("quasi-stationarity is defined against a stationary source")
    joint = hookup(src, ch).source
    w = equivalence_witness(joint, shifted_source(joint, 1), max_len=depth)
    if w is None:
        return QuasiStationarityVerdict(True, depth)
    return QuasiStationarityVerdict(False, depth, _split_product_word(w))


@dataclass(frozen=True)
class ChannelRecurrenceVerdict:
    holds: bool
    depth: int
    witness: tuple[Word, Word] | None = None

    def __bool__(self) -> bool:
        return self.holds


def is_channel_recurrent_wrt(
    ch: FsmChannel, src: FsmSource, depth: int
) -> ChannelRecurrenceVerdict:
    """Zero recurrence defect for every positive-mass rectangle [w] x [v]
    (equal depths <= depth) of the hookup.  Needs a recurrent source."""
    if not is_recurrent(src, depth):
        raise PreconditionError("channel recurrence is defined against a recurrent source")
    verdict = is_recurrent(hookup(src, ch).source, depth)
    if verdict.recurrent:
        return ChannelRecurrenceVerdict(True, depth)
    return ChannelRecurrenceVerdict(
        False, depth, _split_product_word(verdict.witness)
    )


@dataclass(frozen=True)
class ChannelAmsVerdict:
    """Affirmative for every finite model; the content is the evidence."""

    holds: bool
    evidence: AmsEvidence
    dominated: DominationVerdict
    stationary_mean: JointSource = field(repr=False, compare=False, default=None)

    def __bool__(self) -> bool:
        return self.holds


def is_channel_ams_wrt(ch: FsmChannel, src: FsmSource, depth: int) -> ChannelAmsVerdict:
    """Compute the exact stationary mean of the hookup, then certify (a)
    Cesaro partial sums converge to it on rectangles and (b) it dominates
    the hookup asymptotically (support form)."""
    joint = hookup(src, ch)
    jbar = joint_stationary_mean(joint)
    evidence = ams_evidence(joint.source, depth=min(depth, 2))
    dominated = asymptotically_dominates(jbar.source, joint.source, depth)
    return ChannelAmsVerdict(
        evidence.converged and dominated.holds, evidence, dominated, jbar
    )


def is_channel_ergodic_wrt(ch: FsmChannel, src: FsmSource, depth: int) -> ErgodicVerdict:
    """Single positive-mass closed class of the joint chain.

    The verdict is depth-free (the joint chain is inspected directly); the
    depth argument only mirrors the other checkers' signatures.  Rejects
    non-ergodic sources."""
    if not is_ergodic(src):
        raise PreconditionError("channel ergodicity is defined against an ergodic source")
    return is_ergodic(hookup(src, ch).source)


# ---------------------------------------------------------------------------
# the classifier
# ---------------------------------------------------------------------------


@dataclass
class SourceChecks:
    """Per-source verdicts; None marks a rejected (inadmissible) check."""

    label: str
    quasi_stationary: QuasiStationarityVerdict | None
    recurrent: ChannelRecurrenceVerdict | None
    ams: ChannelAmsVerdict
    r_ams: bool | None
    ergodic: ErgodicVerdict | None
    rejections: dict


@dataclass
class ChannelVerdict:
    stationary: StationarityVerdict
    depth: int
    per_source: list[SourceChecks]


def classify_channel(
    ch: FsmChannel,
    sources: list[FsmSource],
    depth: int = 3,
    labels: list[str] | None = None,
) -> ChannelVerdict:
    """Run every checker against every admissible source and assert the
    hierarchy.  Checks whose precondition the source fails are recorded as
    rejections, never as false verdicts."""
    stationary = is_channel_stationary(ch, depth)
    rows: list[SourceChecks] = []
    for k, src in enumerate(sources):
        label = labels[k] if labels else f"source{k}"
        rejections: dict = {}
        quasi = None
        if _stationary_precondition(src):
            quasi = is_quasi_stationary_wrt(ch, src, depth)
        else:
            rejections["quasi_stationary"] = "source is not stationary"
        recurrent = None
        if is_recurrent(src, depth):
            recurrent = is_channel_recurrent_wrt(ch, src, depth)
        else:
            rejections["recurrent"] = "source is not recurrent at this depth"
        ams = is_channel_ams_wrt(ch, src, depth)
        r_ams = None if recurrent is None else (recurrent.holds and ams.holds)
        ergodic = None
        if is_ergodic(src):
            ergodic = is_channel_ergodic_wrt(ch, src, depth)
        else:
            rejections["ergodic"] = "source is not ergodic"

        if stationary.holds and quasi is not None and not quasi.holds:
            raise HierarchyViolationError(
                f"{label}: stationary channel with non-stationary hookup"
            )
        if quasi is not None and quasi.holds and r_ams is not None and not r_ams:
            raise HierarchyViolationError(
                f"{label}: quasi-stationary hookup that is not recurrent-and-AMS"
            )
        if not ams.holds:
            raise HierarchyViolationError(
                f"{label}: AMS evidence failed on a finite model"
            )
        rows.append(
            SourceChecks(label, quasi, recurrent, ams, r_ams, ergodic, rejections)
        )
    return ChannelVerdict(stationary, depth, rows)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckItem:
    name: str
    passed: bool
    detail: str


@dataclass
class TheoremCheckReport:
    theorem: str
    description: str
    depth: int
    seed: int | None
    items: list[CheckItem]
    counterexamples: list[tuple[str, dict]] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(item.passed for item in self.items)

    def to_text(self) -> str:
        lines = [f"check {self.theorem}: {self.description}"]
        params = f"items={len(self.items)} depth={self.depth}"
        if self.seed is not None:
            params += f" seed={self.seed}"
        lines.append(params)
        for item in self.items:
            status = "pass" if item.passed else "FAIL"
            lines.append(f"{item.name}: {status} - {item.detail}")
        passed = sum(1 for i in self.items if i.passed)
        verdict = "PASS" if self.all_passed else "FAIL"
        lines.append(f"result: {verdict} {passed}/{len(self.items)}")
        return "\n".join(lines) + "\n"


def _wstr(word: Word) -> str:
    if all(isinstance(s, str) and len(s) == 1 for s in word):
        return "".join(word) if word else "()"
    return repr(word)


# ---------------------------------------------------------------------------
# quasi-stationary mean identities (ergodic case)
# ---------------------------------------------------------------------------


def check_qs_mean_ergodic_identities(
    ch: FsmChannel,
    src: FsmSource,
    depth: int,
    partners: tuple[FsmSource, ...] = (),
) -> TheoremCheckReport:
    """For an ergodic recurrent source, the channel factor of the hookup's
    stationary mean taken against the source equals the quasi-stationary
    mean taken against the source's stationary mean, exactly on positive
    inputs.  For partner sources, equal stationary means force equal tables
    and disjoint supports force disjoint hookup-mean supports.

    Precondition failures are reported as failing items, never skipped
    silently.
    """
    items: list[CheckItem] = []
    mubar = stationary_mean(src)
    pre = [
        ("pre source-ergodic", bool(is_ergodic(src)), "single positive closed class"),
        ("pre source-recurrent", bool(is_recurrent(src, depth)), f"depth {depth}"),
    ]
    channel_ok = True
    if pre[0][1]:
        channel_ok = bool(is_channel_ergodic_wrt(ch, mubar, depth))
        pre.append(("pre channel-ergodic", channel_ok, "wrt the stationary mean"))
        rec_ok = bool(is_channel_recurrent_wrt(ch, mubar, depth))
        pre.append(("pre channel-recurrent", rec_ok, "wrt the stationary mean"))
        channel_ok = channel_ok and rec_ok
    for name, ok, detail in pre:
        items.append(CheckItem(name, ok, detail))
    admissible = all(ok for _, ok, _ in pre) and channel_ok

    if admissible:
        t_src = qs_mean_table_wrt_ams(src, ch, depth)
        t_mean = quasi_stationary_mean(mubar, ch, depth)
        wit = table_agreement_witness(t_src, t_mean)
        items.append(
            CheckItem(
                "qs-mean identity",
                wit is None,
                "tables agree on positive inputs"
                if wit is None
                else f"tables differ at ({_wstr(wit[0])}, {_wstr(wit[1])})",
            )
        )
    else:
        items.append(CheckItem("qs-mean identity", False, "preconditions not met"))

    for k, other in enumerate(partners):
        name = f"dichotomy vs partner{k}"
        if not (is_ergodic(other) and is_recurrent(other, depth)):
            items.append(CheckItem(name, False, "partner fails preconditions"))
            continue
        obar = stationary_mean(other)
        supp1 = set(positive_words(mubar, depth))
        supp2 = set(positive_words(obar, depth))
        if not (supp1 & supp2):
            j1 = joint_stationary_mean(hookup(mubar, ch)).source
            j2 = joint_stationary_mean(hookup(obar, ch)).source
            joint_overlap = set(positive_words(j1, depth)) & set(
                positive_words(j2, depth)
            )
            items.append(
                CheckItem(
                    name,
                    not joint_overlap,
                    "singular means give disjoint hookup-mean supports"
                    if not joint_overlap
                    else f"overlap {_wstr(sorted(joint_overlap)[0])}",
                )
            )
        elif equivalence_witness(mubar, obar) is None:
            wit = table_agreement_witness(
                quasi_stationary_mean(mubar, ch, depth),
                quasi_stationary_mean(obar, ch, depth),
            )
            items.append(
                CheckItem(
                    name,
                    wit is None,
                    "equal means give equal tables"
                    if wit is None
                    else f"tables differ at ({_wstr(wit[0])}, {_wstr(wit[1])})",
                )
            )
        else:
            items.append(
                CheckItem(
                    name,
                    True,
                    "means neither equal nor support-singular at this depth; "
                    "dichotomy not decidable here",
                )
            )
    return TheoremCheckReport(
        "qs-mean-identities",
        "quasi-stationary means against an ergodic source and its stationary mean",
        depth,
        None,
        items,
    )


# ---------------------------------------------------------------------------
# the claim registry
# ---------------------------------------------------------------------------

#: trial outcome: (passed, detail, counterexample-or-None)
Trial = tuple[bool, str, dict | None]


def _models(**named) -> dict:
    out = {}
    for key, value in named.items():
        if isinstance(value, FsmSource):
            out[key] = source_to_json(value)
        elif isinstance(value, FsmChannel):
            out[key] = channel_to_json(value)
        else:
            out[key] = value
    return out


def _trial_hookup_stationarity_iff(rng: SplitMix64, depth: int) -> Trial:
    src = (
        rand_stationary_source(rng, n_states=2)
        if rng.uniform() < 0.5
        else rand_source(rng, n_states=2)
    )
    ch = rand_channel(rng, n_states=2, zero_prob=0.3)
    joint = hookup(src, ch)
    joint_stat = equivalence_witness(joint.source, shifted_source(joint.source, 1), depth) is None
    src_stat = equivalence_witness(src, shifted_source(src, 1), depth) is None
    shifted_joint = joint_shifted(joint, 1)
    shifted_hookup = hookup(shifted_source(src, 1), ch)
    identity = True
    for w in src.alphabet.words_upto(depth):
        for k in range(len(w) + 1):
            for v in ch.out_alphabet.words(k):
                if not scalar_eq(
                    rect_prob(shifted_joint, w, v), rect_prob(shifted_hookup, w, v)
                ):
                    identity = False
    ok = joint_stat == (src_stat and identity)
    detail = f"hookup-stationary={joint_stat} input-stationary={src_stat} identity={identity}"
    return ok, detail, None if ok else _models(source=src, channel=ch)


def _trial_recurrence_iff(rng: SplitMix64, depth: int) -> Trial:
    transient = rng.uniform() < 0.4
    if transient:
        ch = transient_copy_channel(first=rng.choice(("a", "b")))
    else:
        ch = rand_dense_channel(rng, n_states=2)
    src = iid_uniform() if rng.uniform() < 0.5 else rand_dense_source(rng, n_states=2)

    # Pointwise recurrence is probed on purely periodic inputs: stems create
    # transient patterns in even a noiseless output law, which the hookup
    # never sees because point irregularities carry no source mass.  The
    # constant inputs must always be present: a transient output prefix is
    # only visible against a cycle that cannot reproduce it.
    cycles = [
        LassoInput((), (sym,))
        for sym in src.alphabet
        if is_positive(cyl_prob(src, (sym,)))
    ] + [LassoInput((), x.stem + x.cycle) for x in rand_lassos(rng, src, 2, depth=3)]

    def both_sides(L: int) -> tuple[bool, bool]:
        lhs = is_channel_recurrent_wrt(ch, src, L).holds
        rhs = all(
            is_recurrent(channel_output_measure(ch, x), L).recurrent for x in cycles
        )
        return lhs, rhs

    lhs, rhs = both_sides(depth)
    if lhs != rhs:
        lhs, rhs = both_sides(depth + 1)  # rule out a depth artifact
    ok = lhs == rhs
    return (
        ok,
        f"hookup-recurrent={lhs} kernels-recurrent={rhs} (transient={transient})",
        None if ok else _models(source=src, channel=ch),
    )


def _trial_hierarchy(rng: SplitMix64, depth: int) -> Trial:
    ch = rand_channel(rng, n_states=2, zero_prob=0.25 + 0.5 * rng.uniform())
    sources = [rand_stationary_source(rng, n_states=2), rand_source(rng, n_states=2)]
    try:
        verdict = classify_channel(ch, sources, depth)
    except HierarchyViolationError as exc:
        return False, f"hierarchy inversion: {exc}", _models(
            channel=ch, source0=sources[0], source1=sources[1]
        )
    flags = []
    for row in verdict.per_source:
        q = "-" if row.quasi_stationary is None else str(row.quasi_stationary.holds)
        r = "-" if row.r_ams is None else str(row.r_ams)
        flags.append(f"{row.label}: quasi={q} r-ams={r} ams={row.ams.holds}")
    return True, "; ".join(flags), None


def _trial_kernel_r_ams(rng: SplitMix64, depth: int) -> Trial:
    src = rand_ergodic_stationary_source(rng, n_states=2)
    ch = rand_dense_channel(rng, n_states=2)
    cycles = [
        LassoInput((), x.stem + x.cycle) for x in rand_lassos(rng, src, 3, depth=3)
    ]
    hyp = all(
        is_recurrent(channel_output_measure(ch, x), depth).recurrent for x in cycles
    )
    concl = (
        is_channel_recurrent_wrt(ch, src, depth).holds
        and is_channel_ams_wrt(ch, src, depth).holds
    )
    ok = hyp and concl
    return (
        ok,
        f"kernels-recurrent={hyp} hookup-r-ams={concl}",
        None if ok else _models(source=src, channel=ch),
    )


def _trial_ams_asymptotic_domination(rng: SplitMix64, depth: int) -> Trial:
    src = rand_stationary_source(rng, n_states=2)
    ch = rand_channel(rng, n_states=2, zero_prob=0.3)
    hook_ok = is_channel_ams_wrt(ch, src, depth).holds
    lasso_ok = True
    for x in rand_lassos(rng, src, 2, depth=3):
        out = channel_output_measure(ch, x)
        if not asymptotically_dominates(kernel_stationary_mean(ch, x), out, depth):
            lasso_ok = False
    ok = hook_ok and lasso_ok
    return (
        ok,
        f"hookup-level={hook_ok} lasso-level={lasso_ok}",
        None if ok else _models(source=src, channel=ch),
    )


def _trial_kernel_ams(rng: SplitMix64, depth: int) -> Trial:
    if rng.uniform() < 0.5:
        ch = rand_markov_channel(rng, n_states=2)
        kind = "markov"
    else:
        ch = rand_channel(rng, n_states=2, zero_prob=0.3)
        kind = "transducer"
    src = rand_stationary_source(rng, n_states=2)
    v = is_channel_ams_wrt(ch, src, depth)
    ok = v.holds
    detail = (
        f"{kind}: converged={v.evidence.converged} "
        f"C={v.evidence.constant:.3g} dominated={v.dominated.holds}"
    )
    return ok, detail, None if ok else _models(source=src, channel=ch)


def _trial_cascade_quasi_stationary(rng: SplitMix64, depth: int) -> Trial:
    c1 = rand_stationary_channel(rng, n_states=2)
    c2 = rand_stationary_channel(rng, n_states=2)
    casc = cascade(c1, c2)
    sanity = (
        is_channel_stationary(c1, min(depth, 2)).holds
        and is_channel_stationary(c2, min(depth, 2)).holds
    )
    srcs = [iid_uniform(), rand_stationary_source(rng, n_states=2)]
    results = [is_quasi_stationary_wrt(casc, s, depth).holds for s in srcs]
    ok = sanity and all(results)
    return (
        ok,
        f"factors-stationary={sanity} cascade-quasi-stationary={results}",
        None if ok else _models(first=c1, second=c2),
    )


def _trial_cascade_recurrent(rng: SplitMix64, depth: int) -> Trial:
    c2 = rand_recurrent_channel(rng)
    deterministic = all(
        len(entries) == 1 for entries in c2.kernel.values()
    )
    srcs = [iid_uniform(), rand_dense_source(rng, n_states=2)]
    c1 = rand_channel(rng, n_states=2, zero_prob=0.3)
    if deterministic:
        # A noiseless second stage transmits the first stage's transient
        # irregularities, so its per-output-law recurrence hypothesis must
        # hold against the actual intermediate process: keep the first
        # channel's hookups recurrent.
        for _ in range(30):
            if all(
                is_recurrent(hookup(s, c1).source, depth).recurrent for s in srcs
            ):
                break
            c1 = rand_channel(rng, n_states=2, zero_prob=0.3)
        else:
            c1 = rand_dense_channel(rng, n_states=2)
    casc = cascade(c1, c2)
    results = [is_channel_recurrent_wrt(casc, s, depth).holds for s in srcs]
    ok = all(results)
    return (
        ok,
        f"cascade-recurrent={results} (noiseless-second={deterministic})",
        None if ok else _models(first=c1, second=c2),
    )


def _dominating_pair_tables(src: FsmSource, c1: FsmChannel, c2: FsmChannel, depth: int):
    """Exact stationary mean of the first hookup (against the input's
    stationary mean) and the quasi-stationary-mean table of the second
    channel against that mean's output marginal."""
    mubar = stationary_mean(src)
    jbar1 = joint_stationary_mean(hookup(mubar, c1))
    etabar = output_marginal(jbar1)
    return jbar1, quasi_stationary_mean(etabar, c2, depth)


def _triple_words_ok(words, jbar1, table) -> tuple[bool, str]:
    """Support of the triple process must be covered by the dominating pair:
    each positive ((a,b),c) word needs positive mass of (a,b) under the
    first mean and a positive table entry for (b,c)."""
    for word in words:
        w = tuple(s[0][0] for s in word)
        u = tuple(s[0][1] for s in word)
        v = tuple(s[1] for s in word)
        if not is_positive(rect_prob(jbar1, w, u)):
            return False, f"pair mass vanishes on ({_wstr(w)},{_wstr(u)})"
        if u in table.flagged or not is_positive(table.entry(u, v)):
            return False, f"table entry vanishes on ({_wstr(u)},{_wstr(v)})"
    return True, "covered"


def _trial_cascade_r_ams(rng: SplitMix64, depth: int) -> Trial:
    c1 = rand_dense_channel(rng, n_states=2)
    c2 = rand_dense_channel(rng, n_states=1 if rng.uniform() < 0.6 else 2)
    casc = cascade(c1, c2)
    src = (
        rand_ergodic_stationary_source(rng, n_states=2)
        if rng.uniform() < 0.5
        else cycle_source()
    )
    rec = is_channel_recurrent_wrt(casc, src, depth).holds
    ams = is_channel_ams_wrt(casc, src, depth).holds
    mubar = stationary_mean(src)
    pair_dom = dominates(
        joint_stationary_mean(hookup(mubar, casc)).source,
        hookup(src, casc).source,
        depth,
    ).holds
    triple = hookup(hookup(src, c1).source, lift_to_pair_input(c2, src.alphabet))
    triple_bar = hookup(
        hookup(mubar, c1).source, lift_to_pair_input(c2, src.alphabet)
    )
    tdepth = min(depth, 2)
    supp_incl = dominates(triple_bar.source, triple.source, tdepth).holds
    jbar1, table = _dominating_pair_tables(src, c1, c2, tdepth)
    covered, why = _triple_words_ok(positive_words(triple.source, tdepth), jbar1, table)
    ok = rec and ams and pair_dom and supp_incl and covered
    detail = (
        f"recurrent={rec} ams={ams} pair-dominated={pair_dom} "
        f"triple-support={supp_incl} pair-tables={covered} ({why})"
    )
    return ok, detail, None if ok else _models(first=c1, second=c2, source=src)


def _trial_cascade_ams(rng: SplitMix64, depth: int) -> Trial:
    c1 = rand_channel(rng, n_states=2, zero_prob=0.4)
    c2 = rand_channel(rng, n_states=1 if rng.uniform() < 0.6 else 2, zero_prob=0.4)
    casc = cascade(c1, c2)
    src = (
        rand_stationary_source(rng, n_states=2)
        if rng.uniform() < 0.5
        else rand_source(rng, n_states=2)
    )
    ams = is_channel_ams_wrt(casc, src, depth).holds
    tdepth = min(depth, 2)
    triple = hookup(hookup(src, c1).source, lift_to_pair_input(c2, src.alphabet))
    jbar1, table = _dominating_pair_tables(src, c1, c2, tdepth)
    support = sort_words(asymptotic_support(triple.source, tdepth), triple.source.alphabet)
    covered, why = _triple_words_ok(support, jbar1, table)
    ok = ams and covered
    return (
        ok,
        f"ams={ams} asymptotic-support-covered={covered} ({why})",
        None if ok else _models(first=c1, second=c2, source=src),
    )


def _trial_qs_mean_shift_collapse(rng: SplitMix64, depth: int) -> Trial:
    src = rand_stationary_source(rng, n_states=2)
    ch = rand_channel(rng, n_states=2, zero_prob=0.3)
    t = quasi_stationary_mean(src, ch, depth)
    coherent = table_coherence_witness(t) is None
    jbar = joint_stationary_mean(hookup(src, ch))
    shifted_init = vec_mat(jbar.source.init, jbar.source.trans)
    t_shift = conditional_table(jbar, src, depth, init=shifted_init)
    collapsed = table_agreement_witness(t, t_shift) is None
    ok = coherent and collapsed
    return (
        ok,
        f"coherent={coherent} shift-collapsed={collapsed}",
        None if ok else _models(source=src, channel=ch),
    )


def _table_deviation(t1, t2) -> float:
    dev = 0.0
    for key, x in t1.entries.items():
        y = t2.entries.get(key)
        if y is not None:
            dev += abs(to_float(x) - to_float(y))
    return dev


def _trial_qs_mean_convergence(rng: SplitMix64, depth: int) -> Trial:
    src = rand_stationary_source(rng, n_states=2)
    ch = rand_channel(rng, n_states=2, zero_prob=0.25)
    exact_table = quasi_stationary_mean(src, ch, depth)
    d1 = _table_deviation(nu_partial_mean_table(src, ch, 128, depth, exact=False), exact_table)
    d2 = _table_deviation(nu_partial_mean_table(src, ch, 256, depth, exact=False), exact_table)
    ok = d1 <= 1e-9 or d2 <= 0.7 * d1 + 1e-12
    return (
        ok,
        f"dev(128)={d1:.3e} dev(256)={d2:.3e}",
        None if ok else _models(source=src, channel=ch),
    )


def _trial_ergodicity_conditions(rng: SplitMix64, depth: int) -> Trial:
    ch = coin_flip_once_channel() if rng.uniform() < 0.3 else rand_dense_channel(rng, n_states=2)
    src_s = rand_ergodic_stationary_source(rng, n_states=2)
    src_r = rand_dense_source(rng, n_states=2)
    lhs = (
        is_channel_ergodic_wrt(ch, src_s, depth).ergodic
        and is_channel_ergodic_wrt(ch, src_r, depth).ergodic
    )
    rhs = (
        is_ergodic(stationary_mean(hookup(src_s, ch).source)).ergodic
        and is_ergodic(stationary_mean(hookup(src_r, ch).source)).ergodic
    )
    ok = lhs == rhs
    return (
        ok,
        f"hookups-ergodic={lhs} qs-means-ergodic={rhs}",
        None if ok else _models(channel=ch, source=src_s),
    )


def _trial_qs_mean_identities(rng: SplitMix64, depth: int) -> Trial:
    src = rand_dense_source(rng, n_states=2, cover=True)
    ch = rand_dense_channel(rng, n_states=2)
    report = check_qs_mean_ergodic_identities(ch, src, depth)
    ok = report.all_passed
    failing = [i.name for i in report.items if not i.passed]
    return (
        ok,
        "identity holds" if ok else f"failed: {failing}",
        None if ok else _models(source=src, channel=ch),
    )


def _trial_qs_mean_dichotomy(rng: SplitMix64, depth: int) -> Trial:
    abc = Alphabet(("a", "b", "c"))
    if rng.uniform() < 0.5:
        # singular branch: label-disjoint ergodic sources
        src1 = rand_dense_source(rng, Alphabet(("a", "b")), n_states=2, cover=True)
        src1 = FsmSource(abc, src1.states, src1.init, src1.trans, src1.labels)
        src2 = FsmSource(
            abc,
            ("u",),
            (1,),
            ((1,),),
            ("c",),
        )
        branch = "singular"
    else:
        chain = rand_dense_source(rng, Alphabet(("a", "b")), n_states=2, cover=True)
        chain = FsmSource(abc, chain.states, chain.init, chain.trans, chain.labels)
        src1 = chain
        src2 = with_init(chain, rng.rational_row(2))
        branch = "equal-mean"
    ch = rand_dense_channel(rng, abc, Alphabet(("a", "b")), n_states=1)
    report = check_qs_mean_ergodic_identities(ch, src1, depth, partners=(src2,))
    ok = report.all_passed
    failing = [i.name for i in report.items if not i.passed]
    return (
        ok,
        f"{branch}: " + ("dichotomy respected" if ok else f"failed: {failing}"),
        None if ok else _models(source1=src1, source2=src2, channel=ch),
    )


def _trial_source_dominance(rng: SplitMix64, depth: int) -> Trial:
    if rng.uniform() < 0.5:
        eta = rand_dense_source(rng, n_states=2, cover=True)
        mu = rand_source(rng, n_states=2)
        how = "dense dominator"
    else:
        eta = rand_source(rng, n_states=3)
        peak = max(range(len(eta.init)), key=lambda i: to_float(eta.init[i]))
        point = tuple(1 if i == peak else 0 for i in range(len(eta.init)))
        mu = with_init(eta, point)
        how = "restricted init"
    hyp = dominates(eta, mu, depth).holds
    ch = rand_channel(rng, n_states=2, zero_prob=0.3)
    concl = dominates(hookup(eta, ch).source, hookup(mu, ch).source, depth).holds
    ok = (not hyp) or concl
    return (
        ok,
        f"{how}: dominated={hyp} hookup-dominated={concl}",
        None if ok else _models(eta=eta, mu=mu, channel=ch),
    )


def _trial_kernel_vs_hookup_dominance(rng: SplitMix64, depth: int) -> Trial:
    mu = rand_source(rng, n_states=2)
    nu1 = rand_channel(rng, n_states=2, zero_prob=0.4)
    nu2 = rand_channel(rng, n_states=2, zero_prob=0.4)
    kernel_side = True
    for w in positive_words(mu, depth):
        for k in range(len(w) + 1):
            for v in nu1.out_alphabet.words(k):
                if scalar_eq(channel_cyl_prob(nu2, w, v), 0) and not scalar_eq(
                    channel_cyl_prob(nu1, w, v), 0
                ):
                    kernel_side = False
    hookup_side = dominates(
        hookup(mu, nu2).source, hookup(mu, nu1).source, depth
    ).holds
    ok = kernel_side == hookup_side
    return (
        ok,
        f"kernel-dominance={kernel_side} hookup-dominance={hookup_side}",
        None if ok else _models(source=mu, first=nu1, second=nu2),
    )


def _trial_stationary_hookup(rng: SplitMix64, depth: int) -> Trial:
    ch = rand_stationary_channel(rng, n_states=2)
    src = battery_stationary_sources(rng, randoms=1)[rng.randint(5)]
    sanity = is_channel_stationary(ch, min(depth, 2)).holds
    verdict = is_quasi_stationary_wrt(ch, src, depth)
    ok = sanity and verdict.holds
    return (
        ok,
        f"channel-stationary={sanity} hookup-stationary={verdict.holds}",
        None if ok else _models(source=src, channel=ch),
    )


@dataclass(frozen=True)
class _Claim:
    description: str
    trial: object


THEOREMS: dict[str, _Claim] = {
    "prop1": _Claim(
        "a hookup is stationary iff its input is stationary and the shifted-kernel identity holds",
        _trial_hookup_stationarity_iff,
    ),
    "prop2": _Claim(
        "channel recurrence wrt a source matches source recurrence plus per-input recurrence",
        _trial_recurrence_iff,
    ),
    "prop3": _Claim(
        "no inversion in the stability hierarchy across randomized classifications",
        _trial_hierarchy,
    ),
    "prop5": _Claim(
        "per-input recurrent laws give a recurrent-and-AMS channel wrt stationary inputs",
        _trial_kernel_r_ams,
    ),
    "prop6": _Claim(
        "AMS hookups and per-input laws are asymptotically dominated by stationary means",
        _trial_ams_asymptotic_domination,
    ),
    "prop7": _Claim(
        "per-input AMS laws (incl. input-driven Markov chains) give an AMS channel",
        _trial_kernel_ams,
    ),
    "prop8": _Claim(
        "a cascade of quasi-stationary channels is quasi-stationary",
        _trial_cascade_quasi_stationary,
    ),
    "prop9": _Claim(
        "a cascade ending in a recurrent channel is recurrent",
        _trial_cascade_recurrent,
    ),
    "prop10": _Claim(
        "a cascade of recurrent AMS channels is recurrent AMS with the domination chain",
        _trial_cascade_r_ams,
    ),
    "prop11": _Claim(
        "a cascade of AMS channels is AMS with the asymptotic domination chain",
        _trial_cascade_ams,
    ),
    "prop12": _Claim(
        "quasi-stationary mean tables are coherent and shift-collapsed",
        _trial_qs_mean_shift_collapse,
    ),
    "prop13": _Claim(
        "shifted-family partial means converge to the quasi-stationary mean at rate C/n",
        _trial_qs_mean_convergence,
    ),
    "prop14": _Claim(
        "hookup ergodicity matches ergodicity of the quasi-stationary means",
        _trial_ergodicity_conditions,
    ),
    "prop15": _Claim(
        "quasi-stationary means wrt an ergodic source and wrt its stationary mean coincide",
        _trial_qs_mean_identities,
    ),
    "prop16": _Claim(
        "singular ergodic sources give support-disjoint means; equal means give equal tables",
        _trial_qs_mean_dichotomy,
    ),
    "lemma7": _Claim(
        "source domination is preserved by every hookup",
        _trial_source_dominance,
    ),
    "lemma8": _Claim(
        "kernel-level dominance iff hookup-level dominance",
        _trial_kernel_vs_hookup_dominance,
    ),
    "stationary_hookup": _Claim(
        "a stationary channel hooked to a stationary source gives a stationary joint law",
        _trial_stationary_hookup,
    ),
}

_ALIASES = {
    "hierarchy": "prop3",
    "stationaryhookup": "stationary_hookup",
    "cascadequasistationary": "prop8",
    "cascaderecurrent": "prop9",
    "cascaderams": "prop10",
    "cascadeams": "prop11",
    "kernelrams": "prop5",
    "kernelams": "prop7",
    "sourcedominance": "lemma7",
    "kernelvshookupdominance": "lemma8",
    "qsmeanconvergence": "prop13",
    "qsmeanidentities": "prop15",
    "qsmeandichotomy": "prop16",
    "recurrenceiff": "prop2",
    "hookupstationarityiff": "prop1",
    "ergodicityconditions": "prop14",
    "qsmeanshiftcollapse": "prop12",
    "amsasymptoticdomination": "prop6",
}


def resolve_theorem_id(theorem: str) -> str:
    key = theorem.strip().lower().replace(" ", "").replace("-", "").replace("_", "")
    for canonical in THEOREMS:
        if key == canonical.replace("_", ""):
            return canonical
    if key in _ALIASES:
        return _ALIASES[key]
    raise UnknownTheoremError(
        f"unknown check id {theorem!r}; known: {', '.join(sorted(THEOREMS))}"
    )


def run_theorem_trial(theorem: str, seed: int, index: int, depth: int) -> tuple[bool, str, dict | None]:
    """One deterministic trial; trial streams derive from (seed, index) so
    trials can run in any order or in parallel and merge identically."""
    canonical = resolve_theorem_id(theorem)
    rng = SplitMix64(derive_seed(seed, index))
    return THEOREMS[canonical].trial(rng, depth)


def run_theorem_suite(
    theorem: str, trials: int, depth: int = 3, seed: int = 0
) -> TheoremCheckReport:
    """Randomized hypothesis/conclusion checks for one bundled claim.

    Deterministic per (seed, trials, depth): identical inputs produce
    byte-identical reports.  Failing trials carry serialized counterexample
    models in the report.
    """
    canonical = resolve_theorem_id(theorem)
    claim = THEOREMS[canonical]
    items: list[CheckItem] = []
    counterexamples: list[tuple[str, dict]] = []
    for i in range(trials):
        passed, detail, ce = run_theorem_trial(canonical, seed, i, depth)
        name = f"trial {i:03d}"
        items.append(CheckItem(name, passed, detail))
        if ce is not None:
            counterexamples.append((name, ce))
    return TheoremCheckReport(
        canonical, claim.description, depth, seed, items, counterexamples
    )
