"""Finite-state hidden-Markov measures on one-sided sequence spaces.

A source is a Moore-style labeled Markov chain: state s emits the fixed
symbol label(s), so the measure of a cylinder [w] is the total probability of
state paths whose labels spell w.  Every measure-level notion used by the
classifiers reduces to finite linear algebra on the chain:

* shifting the measure replaces the initial distribution by pi P^n;
* the Cesaro limit matrix PI = lim (1/n) sum_k P^k always exists for a finite
  stochastic matrix and is assembled from the chain's communicating classes:
  PI[i][j] = sum over closed classes C of h(i,C) * pi_C(j), where h(i,C) is
  the absorption probability into C and pi_C its unique stationary law;
* the stationary mean of a source is the same chain started from pi PI;
* the recurrence defect of an event F, mu(F minus all later returns to F),
  is computed by pairing the chain with a multi-word matching automaton over
  F's words and solving a hitting-probability system on the product.

Exactness policy: with rational inputs every verdict here is exact; float
inputs degrade comparisons to the EPS tolerance of `scalars`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import AlphabetMismatchError, InvariantError, PreconditionError
from .linalg import Matrix, Vector, solve, vec_mat
from .scalars import EPS, Scalar, is_positive, is_zero, scalar_eq, to_float
from .seqcore import Alphabet, CylinderEvent, Word, check_word, sort_words


@dataclass
class FsmSource:
    """Finite-state source: (alphabet, states, init law, transitions, labels)."""

    alphabet: Alphabet
    states: tuple[str, ...]
    init: Vector
    trans: Matrix
    labels: tuple
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.states)
        if len(self.init) != n or len(self.trans) != n or len(self.labels) != n:
            raise InvariantError("init/trans/labels size must match the state count")
        for sym in self.labels:
            if sym not in self.alphabet:
                raise AlphabetMismatchError(f"label {sym!r} not in alphabet")
        _check_distribution(self.init, "init")
        for row in self.trans:
            if len(row) != n:
                raise InvariantError("transition matrix must be square")
            _check_distribution(row, "transition row")

    @property
    def is_exact(self) -> bool:
        return not (
            any(isinstance(x, float) for x in self.init)
            or any(isinstance(x, float) for row in self.trans for x in row)
        )


def _check_distribution(vec: Vector, what: str) -> None:
    for x in vec:
        if isinstance(x, float):
            if x < -EPS:
                raise InvariantError(f"{what} has a negative entry")
        elif x < 0:
            raise InvariantError(f"{what} has a negative entry")
    if not scalar_eq(sum(vec), 1):
        raise InvariantError(f"{what} does not sum to 1")


def with_init(src: FsmSource, init: Vector) -> FsmSource:
    return FsmSource(src.alphabet, src.states, tuple(init), src.trans, src.labels)


def as_float_source(src: FsmSource) -> FsmSource:
    return FsmSource(
        src.alphabet,
        src.states,
        tuple(to_float(x) for x in src.init),
        tuple(tuple(to_float(x) for x in row) for row in src.trans),
        src.labels,
    )


# ---------------------------------------------------------------------------
# cylinder evaluation
# ---------------------------------------------------------------------------


def forward_vector(src: FsmSource, word: Word, init: Vector | None = None) -> Vector:
    """Mass per end state of generating `word` (forward algorithm)."""
    vec = list(src.init if init is None else init)
    n = len(vec)
    for t, sym in enumerate(word):
        if t == 0:
            vec = [vec[j] if src.labels[j] == sym else 0 for j in range(n)]
        else:
            nxt = vec_mat(tuple(vec), src.trans)
            vec = [nxt[j] if src.labels[j] == sym else 0 for j in range(n)]
    return tuple(vec)


def cyl_prob(src: FsmSource, word: Word) -> Scalar:
    """mu([w]); the empty word has measure 1."""
    word = check_word(src.alphabet, word)
    if not word:
        return 1
    return sum(forward_vector(src, word))


def event_prob(src: FsmSource, e: CylinderEvent) -> Scalar:
    if e.alphabet != src.alphabet:
        raise AlphabetMismatchError("event alphabet differs from source alphabet")
    return sum(cyl_prob(src, w) for w in e.words)


def shifted_source(src: FsmSource, n: int) -> FsmSource:
    """The measure of the n-times shifted process: init becomes pi P^n."""
    if n < 0:
        raise InvariantError("shift count must be >= 0")
    init = src.init
    for _ in range(n):
        init = vec_mat(init, src.trans)
    return with_init(src, init) if n else src


def positive_words(src: FsmSource, max_len: int) -> list[Word]:
    """All words of length <= max_len with positive measure, canonical order."""
    out: list[Word] = []
    level: list[tuple[Word, Vector]] = [((), src.init)]
    for t in range(max_len):
        nxt: list[tuple[Word, Vector]] = []
        for word, vec in level:
            base = vec if t == 0 else vec_mat(vec, src.trans)
            for sym in src.alphabet:
                masked = tuple(
                    base[j] if src.labels[j] == sym else 0 for j in range(len(base))
                )
                if is_positive(sum(masked)):
                    nxt.append((word + (sym,), masked))
        out.extend(w for w, _ in nxt)
        level = nxt
    return sort_words(out, src.alphabet)


# ---------------------------------------------------------------------------
# communicating classes and the Cesaro limit
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassDecomposition:
    """Strongly connected components of the positive-transition graph.

    `closed` lists the indices (into sccs) of closed (recurrent) classes;
    `absorb[i][c]` is the probability of eventual absorption into the c-th
    closed class from state i; `classdist[c]` is that class's stationary law,
    written over the full state set with zeros outside the class.
    """

    sccs: tuple[tuple[int, ...], ...]
    closed: tuple[int, ...]
    absorb: Matrix
    classdist: tuple[Vector, ...]


@dataclass(frozen=True)
class CesaroLimitMatrix:
    """PI = lim (1/n) sum_{k<n} P^k with its supporting decomposition."""

    matrix: Matrix
    decomposition: ClassDecomposition


def _positive_edges(trans: Matrix) -> list[list[int]]:
    n = len(trans)
    return [[j for j in range(n) if is_positive(trans[i][j])] for i in range(n)]


def _sccs(adj: list[list[int]]) -> list[list[int]]:
    """Kosaraju's algorithm, iterative; components in topological order."""
    n = len(adj)
    seen = [False] * n
    order: list[int] = []
    for s in range(n):
        if seen[s]:
            continue
        stack: list[tuple[int, int]] = [(s, 0)]
        seen[s] = True
        while stack:
            v, i = stack.pop()
            if i < len(adj[v]):
                stack.append((v, i + 1))
                w = adj[v][i]
                if not seen[w]:
                    seen[w] = True
                    stack.append((w, 0))
            else:
                order.append(v)
    radj: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        for w in adj[v]:
            radj[w].append(v)
    comp = [-1] * n
    comps: list[list[int]] = []
    for s in reversed(order):
        if comp[s] != -1:
            continue
        cur = [s]
        comp[s] = len(comps)
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in radj[v]:
                if comp[w] == -1:
                    comp[w] = len(comps)
                    cur.append(w)
                    queue.append(w)
        comps.append(sorted(cur))
    return comps


def class_decomposition(trans: Matrix) -> ClassDecomposition:
    n = len(trans)
    for row in trans:
        _check_distribution(row, "transition row")
    adj = _positive_edges(trans)
    comps = _sccs(adj)
    comp_of = [0] * n
    for c, members in enumerate(comps):
        for v in members:
            comp_of[v] = c
    closed = tuple(
        c
        for c, members in enumerate(comps)
        if all(comp_of[j] == c for i in members for j in adj[i])
    )
    closed_states = {c: set(comps[c]) for c in closed}

    classdist = tuple(_class_stationary(trans, comps[c]) for c in closed)

    transient = [i for i in range(n) if comp_of[i] not in closed]
    absorb_rows: list[list[Scalar]] = [[0] * len(closed) for _ in range(n)]
    for ci, c in enumerate(closed):
        for s in closed_states[c]:
            absorb_rows[s][ci] = 1
    if transient:
        t_index = {s: k for k, s in enumerate(transient)}
        a = [
            [
                (1 if i == j else 0) - trans[transient[i]][transient[j]]
                for j in range(len(transient))
            ]
            for i in range(len(transient))
        ]
        for ci, c in enumerate(closed):
            b = [
                sum(trans[s][j] for j in closed_states[c]) for s in transient
            ]
            h = solve(a, b)
            for s in transient:
                absorb_rows[s][ci] = h[t_index[s]]
    absorb = tuple(tuple(row) for row in absorb_rows)
    return ClassDecomposition(
        tuple(tuple(c) for c in comps), closed, absorb, classdist
    )


def _class_stationary(trans: Matrix, members: tuple[int, ...] | list[int]) -> Vector:
    """Unique stationary law of an irreducible closed class."""
    k = len(members)
    idx = {s: i for i, s in enumerate(members)}
    a: list[list[Scalar]] = []
    b: list[Scalar] = []
    for row in range(k - 1):
        j = members[row]
        a.append(
            [trans[i][j] - (1 if i == j else 0) for i in members]
        )
        b.append(0)
    a.append([1] * k)
    b.append(1)
    x = solve(a, b)
    n = len(trans)
    full = [0] * n
    for s in members:
        full[s] = x[idx[s]]
    return tuple(full)


def cesaro_limit(trans: Matrix) -> CesaroLimitMatrix:
    """Cesaro limit matrix of a finite stochastic matrix (exact when the
    input is rational).

    Row i of the result is the long-run average occupation law started from
    state i; it is row-stochastic and satisfies PI P = P PI = PI PI = PI.
    """
    # exact and float matrices can compare equal (Fraction(1,2) == 0.5), so
    # the arithmetic mode must be part of the memoization key
    has_float = any(isinstance(x, float) for row in trans for x in row)
    return _cesaro_limit_cached(trans, has_float)


@lru_cache(maxsize=512)
def _cesaro_limit_cached(trans: Matrix, _has_float: bool) -> CesaroLimitMatrix:
    deco = class_decomposition(trans)
    n = len(trans)
    rows = []
    for i in range(n):
        row = [0] * n
        for ci in range(len(deco.closed)):
            h = deco.absorb[i][ci]
            if is_zero(h):
                continue
            dist = deco.classdist[ci]
            for j in range(n):
                if not is_zero(dist[j]):
                    row[j] = row[j] + h * dist[j]
        rows.append(tuple(row))
    return CesaroLimitMatrix(tuple(rows), deco)


def decomposition(src: FsmSource) -> ClassDecomposition:
    deco = src._cache.get("deco")
    if deco is None:
        deco = cesaro_limit(src.trans).decomposition
        src._cache["deco"] = deco
    return deco


def stationary_mean(src: FsmSource) -> FsmSource:
    """Same chain restarted from pi PI; its law is the Cesaro limit of the
    shifted laws, and it is stationary."""
    limit = cesaro_limit(src.trans)
    return with_init(src, vec_mat(src.init, limit.matrix))


# ---------------------------------------------------------------------------
# measure equality and stationarity
# ---------------------------------------------------------------------------


def equivalence_witness(
    s1: FsmSource, s2: FsmSource, max_len: int | None = None
) -> Word | None:
    """Shortest word (canonical order) on which the two measures differ.

    Checking all words up to |S1|+|S2| characterizes equality of finite-state
    measures, so a None result with the default bound is reported as full
    measure equality.  Subtrees where both measures vanish are pruned.
    """
    if s1.alphabet != s2.alphabet:
        raise AlphabetMismatchError("sources live over different alphabets")
    bound = max_len if max_len is not None else len(s1.states) + len(s2.states)
    queue: deque[tuple[Word, Vector, Vector]] = deque([((), s1.init, s2.init)])
    while queue:
        word, v1, v2 = queue.popleft()
        if len(word) == bound:
            continue
        first = len(word) == 0
        b1 = v1 if first else vec_mat(v1, s1.trans)
        b2 = v2 if first else vec_mat(v2, s2.trans)
        for sym in s1.alphabet:
            m1 = tuple(b1[j] if s1.labels[j] == sym else 0 for j in range(len(b1)))
            m2 = tuple(b2[j] if s2.labels[j] == sym else 0 for j in range(len(b2)))
            p1, p2 = sum(m1), sum(m2)
            if not scalar_eq(p1, p2):
                return word + (sym,)
            if is_positive(p1) or is_positive(p2):
                queue.append((word + (sym,), m1, m2))
    return None


def are_equivalent(s1: FsmSource, s2: FsmSource, max_len: int | None = None) -> bool:
    return equivalence_witness(s1, s2, max_len) is None


def is_stationary(src: FsmSource, max_len: int | None = None) -> bool:
    """Shift invariance: the measure equals its own one-step shift."""
    return are_equivalent(src, shifted_source(src, 1), max_len)


def _stationary_precondition(src: FsmSource) -> bool:
    """Cheap-first stationarity test for precondition checks.

    An init vector fixed by the transition matrix forces stationarity of the
    measure (this covers every stationary mean, whatever the state count);
    otherwise fall back to the measure-level check, which is only feasible
    for small chains.
    """
    if all(scalar_eq(a, b) for a, b in zip(vec_mat(src.init, src.trans), src.init)):
        return True
    return is_stationary(src)


# ---------------------------------------------------------------------------
# recurrence via pattern automata
# ---------------------------------------------------------------------------


class PatternAutomaton:
    """Multi-word matching automaton with totalized transitions.

    Built from a set of equal-length words: states are trie nodes, failure
    links give the longest suffix that is again a prefix of some word, and
    `delta` resolves every (state, symbol) pair.  `match[q]` is true when the
    path into q ends with one of the words.
    """

    def __init__(self, alphabet: Alphabet, words):
        self.alphabet = alphabet
        children: list[dict] = [{}]
        terminal: list[bool] = [False]
        for w in words:
            node = 0
            for sym in w:
                nxt = children[node].get(sym)
                if nxt is None:
                    nxt = len(children)
                    children[node][sym] = nxt
                    children.append({})
                    terminal.append(False)
                node = nxt
            terminal[node] = True

        n = len(children)
        fail = [0] * n
        delta: list[dict] = [dict() for _ in range(n)]
        match = list(terminal)
        queue = deque()
        for sym in alphabet:
            child = children[0].get(sym)
            if child is None:
                delta[0][sym] = 0
            else:
                delta[0][sym] = child
                fail[child] = 0
                queue.append(child)
        while queue:
            u = queue.popleft()
            match[u] = match[u] or match[fail[u]]
            for sym in alphabet:
                child = children[u].get(sym)
                if child is None:
                    delta[u][sym] = delta[fail[u]][sym]
                else:
                    fail[child] = delta[fail[u]][sym]
                    delta[u][sym] = child
                    queue.append(child)
        self.delta = delta
        self.match = match
        self.size = n

    def walk(self, word: Word, start: int = 0) -> int:
        node = start
        for sym in word:
            node = self.delta[node][sym]
        return node


class _AvoidanceProblem:
    """Product of a source chain with a pattern automaton.

    Splits the product states by the fate of the matching process: `sure`
    states hit a match with probability one, `never` states cannot, and the
    remaining states need a linear solve.  The split alone decides whether a
    recurrence defect vanishes; the solve gives its exact value.
    """

    def __init__(self, src: FsmSource, ac: PatternAutomaton):
        self.src = src
        self.ac = ac
        self.n_states = len(src.states)
        self.size = self.n_states * ac.size
        adj: list[list[tuple[int, Scalar]]] = [[] for _ in range(self.size)]
        for s in range(self.n_states):
            for s2 in range(self.n_states):
                p = src.trans[s][s2]
                if not is_positive(p):
                    continue
                for q in range(ac.size):
                    q2 = ac.delta[q][src.labels[s2]]
                    adj[s * ac.size + q].append((s2 * ac.size + q2, p))
        self.adj = adj
        self.is_match = [ac.match[z % ac.size] for z in range(self.size)]

        radj: list[list[int]] = [[] for _ in range(self.size)]
        for z in range(self.size):
            if self.is_match[z]:
                continue  # absorbing for the hitting analysis
            for z2, _ in adj[z]:
                radj[z2].append(z)

        reach_match = self._reverse_reach(
            radj, [z for z in range(self.size) if self.is_match[z]]
        )
        self.never = [
            not self.is_match[z] and z not in reach_match for z in range(self.size)
        ]
        reach_never = self._reverse_reach(
            radj, [z for z in range(self.size) if self.never[z]]
        )
        # product states with a positive chance of never matching again
        self.can_avoid = [
            (z in reach_never) and not self.is_match[z] for z in range(self.size)
        ]
        self._hit: list[Scalar] | None = None

    @staticmethod
    def _reverse_reach(radj: list[list[int]], seeds: list[int]) -> set[int]:
        seen = set(seeds)
        queue = deque(seeds)
        while queue:
            z = queue.popleft()
            for p in radj[z]:
                if p not in seen:
                    seen.add(p)
                    queue.append(p)
        return seen

    def hit_probabilities(self) -> list[Scalar]:
        """P(visit a match state at some time >= 0) per product state."""
        if self._hit is not None:
            return self._hit
        h: list[Scalar] = [0] * self.size
        unknown = []
        for z in range(self.size):
            if self.is_match[z]:
                h[z] = 1
            elif self.never[z]:
                h[z] = 0
            elif not self.can_avoid[z]:
                h[z] = 1
            else:
                unknown.append(z)
        if unknown:
            pos = {z: k for k, z in enumerate(unknown)}
            a = [[0] * len(unknown) for _ in unknown]
            b: list[Scalar] = [0] * len(unknown)
            for z in unknown:
                i = pos[z]
                a[i][i] = 1
                for z2, p in self.adj[z]:
                    if z2 in pos:
                        a[i][pos[z2]] = a[i][pos[z2]] - p
                    else:
                        b[i] = b[i] + p * h[z2]
            x = solve(a, b)
            for z in unknown:
                h[z] = x[pos[z]]
        self._hit = h
        return h

    def avoid_forever(self, z: int) -> Scalar:
        """P(no match at any time >= 1 | start at z now)."""
        h = self.hit_probabilities()
        return 1 - sum(p * h[z2] for z2, p in self.adj[z])

    def can_avoid_forever(self, z: int) -> bool:
        """Graph-only test for avoid_forever(z) > 0."""
        return any(self.can_avoid[z2] or self.never[z2] for z2, _ in self.adj[z])


def recurrence_defect(src: FsmSource, e: CylinderEvent) -> Scalar:
    """Exact mass of the event that never recurs: mu(F minus union of T^{-k}F).

    Paths realizing a word of F land in a product state of chain x automaton;
    from there the defect weight is the probability of never matching again.
    An empty event has defect 0 by convention.
    """
    if e.alphabet != src.alphabet:
        raise AlphabetMismatchError("event alphabet differs from source alphabet")
    if e.is_empty:
        return Fraction(0) if src.is_exact else 0.0
    ac = PatternAutomaton(src.alphabet, e.words)
    prob = _AvoidanceProblem(src, ac)
    total: Scalar = 0
    for w in e.words:
        vec = forward_vector(src, w)
        q = ac.walk(w)
        for s in range(len(vec)):
            if is_positive(vec[s]):
                total = total + vec[s] * prob.avoid_forever(s * ac.size + q)
    return total


@dataclass(frozen=True)
class RecurrenceVerdict:
    """Depth-tagged recurrence verdict: refutations are exact and final,
    confirmations only cover generating words up to `depth`."""

    recurrent: bool
    depth: int
    witness: Word | None = None

    def __bool__(self) -> bool:
        return self.recurrent


def is_recurrent(src: FsmSource, depth: int) -> RecurrenceVerdict:
    """Check defect == 0 for every positive-probability word of length <= depth.

    Uses the graph split of the avoidance problem only (no linear solve): the
    defect of w vanishes iff no realizing path ends in a product state that
    can still escape future matches.
    """
    if depth < 1:
        raise InvariantError("recurrence depth must be >= 1")
    for w in positive_words(src, depth):
        ac = PatternAutomaton(src.alphabet, [w])
        prob = _AvoidanceProblem(src, ac)
        q = ac.walk(w)
        vec = forward_vector(src, w)
        for s in range(len(vec)):
            if is_positive(vec[s]) and prob.can_avoid_forever(s * ac.size + q):
                return RecurrenceVerdict(False, depth, w)
    return RecurrenceVerdict(True, depth)


# ---------------------------------------------------------------------------
# support, domination, ergodicity
# ---------------------------------------------------------------------------


def asymptotic_support(src: FsmSource, max_len: int) -> set[Word]:
    """Words (length <= max_len) generable from the reachable closed classes.

    This is the eventual support of the shifted laws: transient mass dies
    out, so for a word outside this set mu(T^{-n}[w]) -> 0, and inside it the
    stationary mean gives [w] positive measure.
    """
    deco = decomposition(src)
    n = len(src.states)
    adj = _positive_edges(src.trans)
    start = [i for i in range(n) if is_positive(src.init[i])]
    reachable = set(start)
    queue = deque(start)
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in reachable:
                reachable.add(w)
                queue.append(w)
    core: set[int] = set()
    for ci in deco.closed:
        members = deco.sccs[ci]
        if any(s in reachable for s in members):
            core.update(members)

    out: set[Word] = set()
    level: dict[Word, frozenset[int]] = {(): frozenset(core)}
    for t in range(max_len):
        nxt: dict[Word, frozenset[int]] = {}
        for word, states in level.items():
            for sym in src.alphabet:
                if t == 0:
                    cell = frozenset(s for s in states if src.labels[s] == sym)
                else:
                    cell = frozenset(
                        j for s in states for j in adj[s] if src.labels[j] == sym
                    )
                if cell:
                    nxt[word + (sym,)] = cell
        out.update(nxt)
        level = nxt
    return out


@dataclass(frozen=True)
class DominationVerdict:
    """Depth-tagged domination verdict with the first violating word."""

    holds: bool
    depth: int
    witness: Word | None = None

    def __bool__(self) -> bool:
        return self.holds


def dominates(eta: FsmSource, mu: FsmSource, depth: int) -> DominationVerdict:
    """eta-null words must be mu-null, for all words of length <= depth."""
    if eta.alphabet != mu.alphabet:
        raise AlphabetMismatchError("sources live over different alphabets")
    for w in positive_words(mu, depth):
        if is_zero(cyl_prob(eta, w)):
            return DominationVerdict(False, depth, w)
    return DominationVerdict(True, depth)


def asymptotically_dominates(
    eta_stationary: FsmSource, mu: FsmSource, depth: int
) -> DominationVerdict:
    """eta-null words must leave the support of the shifted laws of mu.

    The dominating measure must be stationary (checked; rejected otherwise):
    for a stationary eta, asymptotic domination at cylinder level is exactly
    "every eta-null word is outside the asymptotic support of mu".
    """
    if eta_stationary.alphabet != mu.alphabet:
        raise AlphabetMismatchError("sources live over different alphabets")
    if not _stationary_precondition(eta_stationary):
        raise PreconditionError("asymptotic domination needs a stationary dominator")
    for w in sort_words(asymptotic_support(mu, depth), mu.alphabet):
        if is_zero(cyl_prob(eta_stationary, w)):
            return DominationVerdict(False, depth, w)
    return DominationVerdict(True, depth)


@dataclass(frozen=True)
class ErgodicVerdict:
    """State-level ergodicity verdict.

    A negative verdict carries the caveat that distinct closed classes could
    in principle induce the same label law; the state-level test is
    sufficient for ergodicity but possibly not necessary.
    """

    ergodic: bool
    caveat: str
    positive_classes: tuple[tuple[str, ...], ...]

    def __bool__(self) -> bool:
        return self.ergodic


_ERGODIC_CAVEAT = "state-level test; negative verdicts are up to output-equivalence"


def is_ergodic(src: FsmSource) -> ErgodicVerdict:
    """Ergodic iff exactly one closed class carries mass in the long run."""
    deco = decomposition(src)
    mean_init = vec_mat(src.init, cesaro_limit(src.trans).matrix)
    positive = []
    for ci in deco.closed:
        members = deco.sccs[ci]
        if is_positive(sum(mean_init[s] for s in members)):
            positive.append(tuple(src.states[s] for s in members))
    return ErgodicVerdict(len(positive) == 1, _ERGODIC_CAVEAT, tuple(positive))


# ---------------------------------------------------------------------------
# source-level classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AmsEvidence:
    """Observed Cesaro convergence of shifted laws toward the stationary mean.

    dev(n) aggregates |partial mean - stationary mean| over a word battery;
    `constant` is the empirical C with dev(n) <= C/n at the small n.
    """

    n_small: int
    n_big: int
    dev_small: float
    dev_big: float

    @property
    def constant(self) -> float:
        return self.n_small * self.dev_small

    @property
    def converged(self) -> bool:
        return self.dev_small <= 1e-12 or self.dev_big <= 0.7 * self.dev_small + 1e-12


def ams_evidence(
    src: FsmSource, depth: int = 2, n_small: int = 128, n_big: int = 256
) -> AmsEvidence:
    """Finite-n convergence certificate (float arithmetic; sizes only)."""
    f = as_float_source(src)
    mean = as_float_source(stationary_mean(src))
    words = [w for n in range(1, depth + 1) for w in f.alphabet.words(n)]
    target = {w: cyl_prob(mean, w) for w in words}

    def deviation(n: int) -> float:
        avg = [0.0] * len(f.init)
        cur = list(f.init)
        for _ in range(n):
            for i, x in enumerate(cur):
                avg[i] += x
            cur = list(vec_mat(tuple(cur), f.trans))
        avg_init = tuple(x / n for x in avg)
        probe = with_init(f, avg_init)
        return sum(abs(cyl_prob(probe, w) - target[w]) for w in words)

    return AmsEvidence(n_small, n_big, deviation(n_small), deviation(n_big))


@dataclass(frozen=True)
class SourceVerdict:
    """Verdicts for one source, consistent with the stability hierarchy."""

    stationary: bool
    recurrent: RecurrenceVerdict
    ams: AmsEvidence
    ergodic: ErgodicVerdict
    dominated_by_mean: DominationVerdict
    asymptotically_dominated: DominationVerdict


def classify_source(src: FsmSource, depth: int = 4) -> SourceVerdict:
    """Full source report: stationarity, recurrence (depth-tagged), AMS
    convergence evidence, ergodicity, and both domination checks against the
    stationary mean."""
    mean = stationary_mean(src)
    verdict = SourceVerdict(
        stationary=is_stationary(src),
        recurrent=is_recurrent(src, depth),
        ams=ams_evidence(src, depth=min(depth, 2)),
        ergodic=is_ergodic(src),
        dominated_by_mean=dominates(mean, src, depth),
        asymptotically_dominated=asymptotically_dominates(mean, src, depth),
    )
    # A stationary measure is recurrent, and the recurrence check refutes by
    # exact cylinder defects, so this inversion can only be a bug.
    if verdict.stationary and not verdict.recurrent.recurrent:
        raise InvariantError("stationary source classified non-recurrent")
    return verdict
