"""JSON manifests: ``{"schema": 1, "kind": ..., "payload": ...}``.

Payload shapes:

* category: ``objects``, ``morphisms`` (``{id, src, tgt}``) and ``compose``
  (``[g, f, g∘f]`` triples).  Identities are ``id_<object>`` unless an
  ``identities`` map says otherwise; composites with an identity factor are
  implied.
* group: ``elements`` and ``table`` (rows in element order).
* gaction: ``group``, ``category`` and ``sigma`` (per element, object and
  morphism maps).
* sset: ``dims`` mapping ``n`` to ``[{id, faces: [{ref, degeneracy}]}]``;
  optional ``dim`` for the truncation.
* ogdiagram: ``group``, ``values`` (by subgroup name) and ``restrictions``
  (by orbit-category morphism id).
* functor: ``source``, ``target``, ``objects``, ``morphisms``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import SchemaError
from .fincat import FinCat, FinFunctor, validate_category, validate_functor
from .gaction import GCategory, OGDiagram, validate_gcategory, validate_ogdiagram
from .group import FinGroup, orbit_category, validate_group
from .sset import TruncSSet, surj_to_word, validate_sset, word_to_surj

SCHEMA = 1
KINDS = ("category", "group", "gaction", "sset", "ogdiagram", "functor")


def _need(d: Any, key: str, kind: str):
    if not isinstance(d, dict) or key not in d:
        raise SchemaError(f"{kind} payload needs a {key!r} field")
    return d[key]


# ---------------------------------------------------------------- categories

def category_to_json(C: FinCat) -> dict:
    out = {
        "objects": list(C.objects),
        "morphisms": [{"id": m, "src": C.src[m], "tgt": C.tgt[m]} for m in C.morphisms],
        "compose": [[g, f, h] for (g, f), h in C.table.items()
                    if not C.is_identity(g) and not C.is_identity(f)],
    }
    if any(i != "id_" + x for x, i in C.identities.items()):
        out["identities"] = dict(C.identities)
    return out


def category_from_json(d: dict) -> FinCat:
    objects = _need(d, "objects", "category")
    try:
        morphisms = [(m["id"], m["src"], m["tgt"]) for m in _need(d, "morphisms", "category")]
        compose = {}
        for g, f, h in _need(d, "compose", "category"):
            if (g, f) in compose:
                raise SchemaError(f"composite {g}∘{f} listed twice")
            compose[g, f] = h
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError(f"malformed category payload: {e}") from None
    # without an explicit map, missing id_<x> morphisms are added
    return validate_category(objects, morphisms, compose, d.get("identities"))


# ---------------------------------------------------------------- groups and actions

def group_to_json(G: FinGroup) -> dict:
    out = {"elements": list(G.elements), "table": G.rows()}
    if G.name:
        out["name"] = G.name
    return out


def group_from_json(d: dict) -> FinGroup:
    return validate_group(_need(d, "elements", "group"), _need(d, "table", "group"), d.get("name", ""))


def _functor_maps(F: FinFunctor) -> dict:
    return {"objects": dict(F.ob), "morphisms": dict(F.mor)}


def gaction_to_json(X: GCategory) -> dict:
    return {"group": group_to_json(X.group), "category": category_to_json(X.base),
            "sigma": {g: _functor_maps(X.action[g]) for g in X.group.elements}}


def gaction_from_json(d: dict) -> GCategory:
    G = group_from_json(_need(d, "group", "gaction"))
    C = category_from_json(_need(d, "category", "gaction"))
    sigma = _need(d, "sigma", "gaction")
    return validate_gcategory(G, C, {g: {"objects": s.get("objects", {}), "morphisms": s.get("morphisms", {})}
                                     for g, s in sigma.items()})


def functor_to_json(F: FinFunctor) -> dict:
    return {"source": category_to_json(F.source), "target": category_to_json(F.target), **_functor_maps(F)}


def functor_from_json(d: dict) -> FinFunctor:
    C = category_from_json(_need(d, "source", "functor"))
    D = category_from_json(_need(d, "target", "functor"))
    return validate_functor(C, D, d.get("objects", {}), d.get("morphisms", {}))


def ogdiagram_to_json(Y: OGDiagram) -> dict:
    return {"group": group_to_json(Y.group),
            "values": {h: category_to_json(C) for h, C in Y.values.items()},
            "restrictions": {f: _functor_maps(R) for f, R in Y.restrictions.items()}}


def ogdiagram_from_json(d: dict) -> OGDiagram:
    G = group_from_json(_need(d, "group", "ogdiagram"))
    O = orbit_category(G)
    values = {h: category_from_json(c) for h, c in _need(d, "values", "ogdiagram").items()}
    restrictions = {}
    for f, maps in _need(d, "restrictions", "ogdiagram").items():
        if f not in O.cells:
            raise SchemaError(f"{f!r} is not a morphism of the orbit category")
        h, k, _ = O.cells[f]
        if h not in values or k not in values:
            raise SchemaError(f"restriction {f!r} refers to a missing value")
        restrictions[f] = FinFunctor(values[k], values[h], maps.get("objects", {}), maps.get("morphisms", {}))
    return validate_ogdiagram(OGDiagram(G, O, values, restrictions))


# ---------------------------------------------------------------- simplicial sets

def sset_to_json(X: TruncSSet) -> dict:
    dims = {}
    for n in range(X.dim + 1):
        dims[str(n)] = [{"id": x, "faces": [{"ref": r, "degeneracy": surj_to_word(s)} for r, s in X.faces.get(x, ())]}
                        for x in X.simplices[n]]
    return {"dim": X.dim, "dims": dims}


def sset_from_json(d: dict) -> TruncSSet:
    dims = _need(d, "dims", "sset")
    try:
        parsed = {int(n): v for n, v in dims.items()}
    except ValueError:
        raise SchemaError("sset dimensions must be integers") from None
    dim = int(d.get("dim", max(parsed, default=0)))
    if any(n < 0 or n > dim for n in parsed):
        raise SchemaError("sset dimension outside 0..dim")
    simplices, faces = {}, {}
    for n, entries in parsed.items():
        simplices[n] = []
        for e in entries:
            x = _need(e, "id", "sset")
            simplices[n].append(x)
            fs = e.get("faces", [])
            if n:
                try:
                    faces[x] = [(f["ref"], word_to_surj(f.get("degeneracy", []), n - 1)) for f in fs]
                except (KeyError, TypeError):
                    raise SchemaError(f"malformed face record on {x!r}") from None
            elif fs:
                raise SchemaError(f"vertex {x!r} cannot have faces")
    return validate_sset(TruncSSet(dim, simplices, faces))


# ---------------------------------------------------------------- manifests

_WRITERS = {
    FinCat: ("category", category_to_json),
    FinGroup: ("group", group_to_json),
    GCategory: ("gaction", gaction_to_json),
    TruncSSet: ("sset", sset_to_json),
    OGDiagram: ("ogdiagram", ogdiagram_to_json),
    FinFunctor: ("functor", functor_to_json),
}

_READERS = {
    "category": category_from_json,
    "group": group_from_json,
    "gaction": gaction_from_json,
    "sset": sset_from_json,
    "ogdiagram": ogdiagram_from_json,
    "functor": functor_from_json,
}


def to_manifest(obj) -> dict:
    for cls, (kind, writer) in _WRITERS.items():
        if isinstance(obj, cls):
            return {"schema": SCHEMA, "kind": kind, "payload": writer(obj)}
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def from_manifest(d: dict, expect: str | tuple[str, ...] | None = None):
    if not isinstance(d, dict) or d.get("schema") != SCHEMA:
        raise SchemaError(f"not a schema {SCHEMA} manifest")
    kind = d.get("kind")
    if kind not in _READERS:
        raise SchemaError(f"unknown kind {kind!r}")
    if expect is not None and kind not in ((expect,) if isinstance(expect, str) else expect):
        raise SchemaError(f"expected {expect}, got {kind!r}")
    return _READERS[kind](_need(d, "payload", kind))


def dumps(obj) -> str:
    """Deterministic JSON text of a manifest or plain report."""
    d = obj if isinstance(obj, dict) else to_manifest(obj)
    return json.dumps(d, indent=2, ensure_ascii=False) + "\n"


def load(path: str | Path, expect=None):
    try:
        d = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: invalid JSON ({e})") from None
    return from_manifest(d, expect)


def save(obj, path: str | Path) -> None:
    Path(path).write_text(dumps(obj))
