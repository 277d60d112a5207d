import pytest

from amschan.errors import AlphabetMismatchError, InvariantError
from amschan.rng import SplitMix64
from amschan.seqcore import (
    Alphabet,
    CylinderEvent,
    RectEvent,
    complement,
    difference,
    empty_event,
    event,
    event_algebra,
    full_event,
    intersect,
    product_alphabet,
    refine,
    shift_preimage,
    sort_words,
    union,
)

AB = Alphabet(("a", "b"))


def test_alphabet_invariants():
    with pytest.raises(InvariantError):
        Alphabet(())
    with pytest.raises(InvariantError):
        Alphabet(("a", "a"))
    assert len(AB) == 2 and "a" in AB and AB.index("b") == 1


def test_words_enumeration_order():
    assert list(AB.words(2)) == [
        ("a", "a"), ("a", "b"), ("b", "a"), ("b", "b"),
    ]
    assert list(AB.words_upto(2))[:3] == [("a",), ("b",), ("a", "a")]


def test_event_validation():
    with pytest.raises(InvariantError):
        event(AB, [("a",), ("a", "b")])
    with pytest.raises(AlphabetMismatchError):
        event(AB, [("c",)])
    with pytest.raises(InvariantError):
        CylinderEvent(AB, 0, frozenset())


def test_shift_preimage_singleton():
    e = event(AB, [("a",)])
    shifted = shift_preimage(e, 1)
    assert shifted.depth == 2
    assert shifted.words == {("a", "a"), ("b", "a")}


def test_shift_preimage_identity_and_full():
    e = event(AB, [("a", "b")])
    assert shift_preimage(e, 0) is e
    f = shift_preimage(full_event(AB, 1), 3)
    assert f.is_full and f.depth == 4


def test_shift_preimage_composes():
    e = event(AB, [("a", "b")])
    assert shift_preimage(e, 3).words == shift_preimage(shift_preimage(e, 1), 2).words


def test_event_algebra_examples():
    ea = event(AB, [("a",)])
    eb = event(AB, [("b",)])
    assert union(ea, eb).is_full
    assert difference(ea, ea).is_empty
    deep = event(AB, [("a", "b"), ("b", "b")])
    assert intersect(ea, deep).words == {("a", "b")}
    assert event_algebra("union", ea, eb).is_full
    with pytest.raises(InvariantError):
        event_algebra("intersect", ea)
    with pytest.raises(InvariantError):
        event_algebra("xor", ea, eb)


def test_event_algebra_alphabet_mismatch():
    other = Alphabet(("x", "y"))
    with pytest.raises(AlphabetMismatchError):
        union(event(AB, [("a",)]), event(other, [("x",)]))


def test_complement_involution_and_de_morgan():
    rng = SplitMix64(11)
    words3 = list(AB.words(3))
    for _ in range(25):
        w1 = frozenset(w for w in words3 if rng.uniform() < 0.4)
        w2 = frozenset(w for w in words3 if rng.uniform() < 0.4)
        e1 = CylinderEvent(AB, 3, w1)
        e2 = CylinderEvent(AB, 3, w2)
        assert complement(complement(e1)).words == e1.words
        assert complement(union(e1, e2)).words == intersect(
            complement(e1), complement(e2)
        ).words
        assert complement(intersect(e1, e2)).words == union(
            complement(e1), complement(e2)
        ).words


def test_refinement_preserves_measure():
    # refining an event must not change its probability under any source
    from amschan.battery import rand_source
    from amschan.sources import event_prob

    rng = SplitMix64(5)
    for _ in range(10):
        src = rand_source(rng, AB, n_states=3)
        e = CylinderEvent(
            AB, 2, frozenset(w for w in AB.words(2) if rng.uniform() < 0.5)
        )
        p = event_prob(src, e)
        for deeper in (3, 4):
            assert event_prob(src, refine(e, deeper)) == p
    with pytest.raises(InvariantError):
        refine(event(AB, [("a", "b")]), 1)


def test_rect_event():
    r = RectEvent(event(AB, [("a",)]), event(AB, [("b",)]))
    joint = r.to_product_event(product_alphabet(AB, AB))
    assert joint.words == {(("a", "b"),)}
    with pytest.raises(InvariantError):
        RectEvent(event(AB, [("a",)]), event(AB, [("a", "b")]))


def test_sort_words_canonical():
    ws = [("b",), ("a", "a"), ("a",)]
    assert sort_words(ws, AB) == [("a",), ("b",), ("a", "a")]


def test_empty_event_operations():
    e = empty_event(AB, 2)
    assert e.is_empty and not e.is_full
    assert union(e, e).is_empty
    assert complement(e).is_full
