"""Model files: JSON descriptions of sources and channels.

Probabilities are serialized as "num/den" strings so exact values survive
the trip through text.  Parsers also accept {"num": ..., "den": ...}
objects, decimal strings, and plain JSON numbers; in exact mode JSON
decimals are read as exact decimal fractions, in float mode everything
becomes a float and distributions within 1e-12 of normalized are
renormalized with a warning.

Product symbols (labels of joint processes) are nested arrays: "a" stays a
string, ("a", "b") becomes ["a", "b"].
"""

from __future__ import annotations

import warnings
from fractions import Fraction

from .channels import ConditionalKernelTable, FsmChannel
from .errors import ModelParseError
from .scalars import Scalar, format_scalar, to_float
from .seqcore import Alphabet, sort_words
from .sources import FsmSource

NORMALIZATION_SLACK = 1e-12


def parse_prob(obj, float_mode: bool = False) -> Scalar:
    try:
        if isinstance(obj, dict):
            value = Fraction(int(obj["num"]), int(obj["den"]))
        elif isinstance(obj, bool):
            raise ModelParseError(f"not a probability: {obj!r}")
        elif isinstance(obj, int):
            value = Fraction(obj)
        elif isinstance(obj, float):
            value = Fraction(repr(obj)) if not float_mode else obj
        elif isinstance(obj, str):
            value = Fraction(obj)
        else:
            raise ModelParseError(f"not a probability: {obj!r}")
    except (ValueError, KeyError, ZeroDivisionError) as exc:
        raise ModelParseError(f"bad probability {obj!r}: {exc}") from exc
    return to_float(value) if float_mode else value


def _sym_to_json(sym):
    if isinstance(sym, tuple):
        return [_sym_to_json(s) for s in sym]
    return sym


def _sym_from_json(obj):
    if isinstance(obj, list):
        return tuple(_sym_from_json(s) for s in obj)
    if isinstance(obj, str):
        return obj
    raise ModelParseError(f"bad symbol {obj!r}")


def _parse_alphabet(obj) -> Alphabet:
    if not isinstance(obj, list) or not obj:
        raise ModelParseError("alphabet must be a nonempty array")
    return Alphabet(tuple(_sym_from_json(s) for s in obj))


def _normalize(vec: list[Scalar], what: str, float_mode: bool) -> tuple[Scalar, ...]:
    total = sum(vec)
    if float_mode and total and abs(total - 1.0) <= NORMALIZATION_SLACK and total != 1.0:
        warnings.warn(f"{what} renormalized (off by {total - 1.0:.2e})")
        return tuple(x / total for x in vec)
    return tuple(vec)


def source_to_json(src: FsmSource) -> dict:
    return {
        "kind": "source",
        "alphabet": [_sym_to_json(s) for s in src.alphabet],
        "states": [
            {"name": name, "label": _sym_to_json(lab)}
            for name, lab in zip(src.states, src.labels)
        ],
        "init": [format_scalar(x) for x in src.init],
        "trans": [[format_scalar(x) for x in row] for row in src.trans],
    }


def channel_to_json(ch: FsmChannel) -> dict:
    entries = []
    for q, name in enumerate(ch.states):
        for a in ch.in_alphabet:
            for b, q2, p in ch.kernel[(q, a)]:
                entries.append(
                    {
                        "state": name,
                        "in": _sym_to_json(a),
                        "out": _sym_to_json(b),
                        "next": ch.states[q2],
                        "prob": format_scalar(p),
                    }
                )
    return {
        "kind": "channel",
        "in_alphabet": [_sym_to_json(s) for s in ch.in_alphabet],
        "out_alphabet": [_sym_to_json(s) for s in ch.out_alphabet],
        "states": list(ch.states),
        "init": [format_scalar(x) for x in ch.init],
        "kernel": entries,
    }


def parse_model(obj, float_mode: bool = False) -> FsmSource | FsmChannel:
    if not isinstance(obj, dict):
        raise ModelParseError("model file must be a JSON object")
    kind = obj.get("kind")
    if kind == "source":
        return parse_source(obj, float_mode)
    if kind == "channel":
        return parse_channel(obj, float_mode)
    raise ModelParseError(f"unknown model kind {kind!r}")


def parse_source(obj, float_mode: bool = False) -> FsmSource:
    try:
        alphabet = _parse_alphabet(obj["alphabet"])
        states = obj["states"]
        names = tuple(s["name"] for s in states)
        labels = tuple(_sym_from_json(s["label"]) for s in states)
        init = _normalize(
            [parse_prob(x, float_mode) for x in obj["init"]], "init", float_mode
        )
        trans = tuple(
            _normalize(
                [parse_prob(x, float_mode) for x in row], "transition row", float_mode
            )
            for row in obj["trans"]
        )
    except (KeyError, TypeError) as exc:
        raise ModelParseError(f"malformed source model: {exc!r}") from exc
    return FsmSource(alphabet, names, init, trans, labels)


def parse_channel(obj, float_mode: bool = False) -> FsmChannel:
    try:
        in_alphabet = _parse_alphabet(obj["in_alphabet"])
        out_alphabet = _parse_alphabet(obj["out_alphabet"])
        names = tuple(
            s["name"] if isinstance(s, dict) else s for s in obj["states"]
        )
        index = {name: i for i, name in enumerate(names)}
        init = _normalize(
            [parse_prob(x, float_mode) for x in obj["init"]], "channel init", float_mode
        )
        rows: dict[tuple[int, object], dict] = {
            (q, a): {} for q in range(len(names)) for a in in_alphabet
        }
        for entry in obj["kernel"]:
            q = index[entry["state"]]
            a = _sym_from_json(entry["in"])
            b = _sym_from_json(entry["out"])
            q2 = index[entry["next"]]
            p = parse_prob(entry["prob"], float_mode)
            key = (b, q2)
            if (q, a) not in rows:
                raise ModelParseError(f"kernel entry for unknown input {a!r}")
            rows[(q, a)][key] = rows[(q, a)].get(key, 0) + p
    except (KeyError, TypeError) as exc:
        raise ModelParseError(f"malformed channel model: {exc!r}") from exc
    kernel = {}
    for key, acc in rows.items():
        vec = _normalize(list(acc.values()), "kernel row", float_mode)
        kernel[key] = tuple(
            (b, q2, p) for ((b, q2), p) in zip(acc.keys(), vec)
        )
    return FsmChannel(in_alphabet, out_alphabet, names, init, kernel)


def table_to_json(t: ConditionalKernelTable) -> dict:
    """Conditional table with entries in canonical lexicographic order."""
    in_words = sort_words({w for (w, _) in t.entries}, t.in_alphabet)
    entries = []
    for w in in_words:
        vs = sort_words({v for (w2, v) in t.entries if w2 == w}, t.out_alphabet)
        for v in vs:
            entries.append(
                {
                    "input": [_sym_to_json(s) for s in w],
                    "output": [_sym_to_json(s) for s in v],
                    "prob": format_scalar(t.entries[(w, v)]),
                }
            )
    return {
        "kind": "table",
        "depth": t.depth,
        "in_alphabet": [_sym_to_json(s) for s in t.in_alphabet],
        "out_alphabet": [_sym_to_json(s) for s in t.out_alphabet],
        "entries": entries,
        "flagged": [
            [_sym_to_json(s) for s in w] for w in sort_words(t.flagged, t.in_alphabet)
        ],
    }
