"""
Versioned JSON schemas for every value the CLI reads or writes.

All documents carry ``"format": 1`` and a ``"type"`` tag; readers refuse
unknown versions.  Polynomials travel in the plain text form
(``3*q^-2 + q + 5*q^3``) with an array-of-pairs alternative accepted on
input.
"""

from __future__ import annotations

import json
from typing import Any

from .diagrams import BraidWord, DiagramError, SliceWord, ThetaTangle
from .moves import LinkModel, MoveSite
from .polynomials import LaurentPoly
from .surfaces import RibbonSurface

__all__ = [
    "FormatError", "to_json", "from_json", "dump", "load",
    "poly_to_json", "poly_from_json",
]

FORMAT = 1


class FormatError(ValueError):
    """Unknown schema version or malformed document."""


def poly_to_json(p: LaurentPoly) -> str:
    return p.text()

def poly_from_json(obj) -> LaurentPoly:
    if isinstance(obj, str):
        return LaurentPoly.parse(obj)
    if isinstance(obj, list):
        # array of [s_exponent, coefficient] pairs
        return LaurentPoly({int(e): int(c) for e, c in obj})
    raise FormatError(f"cannot read polynomial from {type(obj).__name__}")


def to_json(value) -> dict:
    """Serialize a supported value to a JSON-ready dictionary."""
    if isinstance(value, ThetaTangle):
        return {
            "format": FORMAT,
            "type": "theta_tangle",
            "events": [[k, p] for k, p in value.tangle.events],
            "orientations": list(value.tangle.orientations),
            "edge_labels": list(value.edge_labels),
        }
    if isinstance(value, SliceWord):
        return {
            "format": FORMAT,
            "type": "slice_word",
            "events": [[k, p] for k, p in value.events],
            "arity_in": value.arity_in,
            "arity_out": value.arity_out,
            "orientations": list(value.orientations),
            "labels": list(value.labels),
        }
    if isinstance(value, BraidWord):
        return {
            "format": FORMAT,
            "type": "braid_word",
            "strands": value.strands,
            "word": list(value.word),
        }
    if isinstance(value, LinkModel):
        return {
            "format": FORMAT,
            "type": "link_model",
            "order": value.k,
            "alpha": to_json(value.alpha),
            "beta": [list(p) for p in value.beta],
        }
    if isinstance(value, MoveSite):
        return {
            "format": FORMAT,
            "type": "move_site",
            "gap": value.gap,
            "attachments": [[p, bool(o)] for p, o in value.attachments],
        }
    if isinstance(value, RibbonSurface):
        return {
            "format": FORMAT,
            "type": "ribbon_surface",
            "core": to_json(value.core),
            "twists": list(value.twists),
            "halves": list(value.halves),
        }
    raise FormatError(f"no schema for {type(value).__name__}")


def from_json(doc: dict):
    """Deserialize a document produced by :func:`to_json`."""
    if not isinstance(doc, dict):
        raise FormatError("expected a JSON object")
    if doc.get("format") != FORMAT:
        raise FormatError(f"unsupported format version {doc.get('format')!r}")
    kind = doc.get("type")
    try:
        if kind == "slice_word":
            return SliceWord(
                events=tuple((k, int(p)) for k, p in doc["events"]),
                arity_in=int(doc.get("arity_in", 0)),
                arity_out=int(doc.get("arity_out", 0)),
                orientations=tuple(doc.get("orientations", ())),
                labels=tuple(doc.get("labels", ())),
            )
        if kind == "theta_tangle":
            word = SliceWord(
                events=tuple((k, int(p)) for k, p in doc["events"]),
                arity_in=3, arity_out=3,
                orientations=tuple(doc.get("orientations", ())),
            )
            return ThetaTangle(word, edge_labels=tuple(doc.get(
                "edge_labels", ("e1", "e2", "e3"))))
        if kind == "braid_word":
            return BraidWord(int(doc["strands"]), tuple(doc["word"]))
        if kind == "link_model":
            return LinkModel(
                k=int(doc["order"]),
                alpha=from_json(doc["alpha"]),
                beta=tuple((int(a), int(b)) for a, b in doc["beta"]),
            )
        if kind == "move_site":
            return MoveSite(
                gap=int(doc["gap"]),
                attachments=tuple((int(p), bool(o))
                                  for p, o in doc["attachments"]),
            )
        if kind == "ribbon_surface":
            return RibbonSurface(
                core=from_json(doc["core"]),
                twists=tuple(int(t) for t in doc["twists"]),
                halves=tuple(int(h) for h in doc["halves"]),
            )
    except (KeyError, TypeError, ValueError, DiagramError) as exc:
        raise FormatError(f"malformed {kind} document: {exc}") from exc
    raise FormatError(f"unknown document type {kind!r}")


def dump(value, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(to_json(value), fh, indent=1, sort_keys=True)
        fh.write("\n")


def load(path):
    with open(path, encoding="utf-8") as fh:
        return from_json(json.load(fh))
