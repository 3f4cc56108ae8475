"""JSON instance and result files.

An instance file names a group, a space and a twist::

    {"version": 1,
     "group": {"named": "klein"},
     "space": {"type": "point"},
     "twist": {"type": "cocycle", "modulus": 2, "exponents": [[...], ...]}}

Groups may also be given as ``{"order": n, "mult_table": [...]}`` or as
``{"degree": d, "generators": [[...], ...]}`` (permutation image lists).
Spaces are ``point``, ``circle``, ``gset`` (``action``), ``translation``,
``cosets`` (``subgroup`` as a list of element indices) and ``union``
(``parts``).  Twists are ``trivial``, ``cocycle`` and ``hom``.  Optional keys
``name``, ``tag`` and ``expected`` are carried along untouched.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import cocycles, groups
from .errors import InvalidInput
from .kblocks import (CircleHom, DisjointUnion, GroupCocycle, Instance, Point, Trivial, TrivialCircle,
                      coset_gset, make_gset, translation_gset)

FORMAT_VERSION = 1


def _ints(value, what: str) -> list:
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise InvalidInput(f"{what} must be a list of integers")
    return list(value)


def _int_rows(value, what: str) -> list[list[int]]:
    if not isinstance(value, list):
        raise InvalidInput(f"{what} must be a list of integer lists")
    return [_ints(r, what) for r in value]


def _require(d: dict, key: str, where: str):
    if not isinstance(d, dict):
        raise InvalidInput(f"{where} must be an object")
    if key not in d:
        raise InvalidInput(f"{where} is missing {key!r}")
    return d[key]


# ---------------------------------------------------------------------------
# groups


def parse_group(obj: dict) -> groups.GroupTable:
    if not isinstance(obj, dict):
        raise InvalidInput("group must be an object")
    if "named" in obj:
        if not isinstance(obj["named"], str):
            raise InvalidInput("group.named must be a string")
        return groups.named(obj["named"])
    if "mult_table" in obj:
        table = _int_rows(obj["mult_table"], "group.mult_table")
        if "order" in obj and obj["order"] != len(table):
            raise InvalidInput(f"group.order is {obj['order']} but the table has {len(table)} rows")
        labels = obj.get("labels")
        if labels is not None and not (isinstance(labels, list) and all(isinstance(x, str) for x in labels)):
            raise InvalidInput("group.labels must be a list of strings")
        return groups.from_mult_table(table, labels, name=obj.get("name", "G"))
    if "generators" in obj:
        gens = _int_rows(obj["generators"], "group.generators")
        degree = obj.get("degree")
        if degree is not None and (not isinstance(degree, int) or degree < 1):
            raise InvalidInput("group.degree must be a positive integer")
        return groups.from_permutations(gens, degree, name=obj.get("name", "G"))
    raise InvalidInput("group needs one of 'named', 'mult_table' or 'generators'")


def _canonical_group(obj: dict) -> dict:
    if "named" in obj:
        return {"named": obj["named"]}
    keep = ("order", "mult_table", "labels", "name") if "mult_table" in obj else ("degree", "generators", "name")
    return {k: obj[k] for k in keep if k in obj}


# ---------------------------------------------------------------------------
# spaces and twists


def parse_space(G: groups.GroupTable, obj: dict):
    kind = _require(obj, "type", "space")
    if kind == "point":
        return Point()
    if kind == "circle":
        return TrivialCircle()
    if kind == "gset":
        return make_gset(G, _int_rows(_require(obj, "action", "gset space"), "space.action"))
    if kind == "translation":
        return translation_gset(G)
    if kind == "cosets":
        H = _ints(_require(obj, "subgroup", "cosets space"), "space.subgroup")
        if any(not 0 <= h < G.order for h in H):
            raise InvalidInput("space.subgroup has an element index out of range")
        return coset_gset(G, H)
    if kind == "union":
        parts = _require(obj, "parts", "union space")
        if not isinstance(parts, list) or not parts:
            raise InvalidInput("space.parts must be a non-empty list")
        return DisjointUnion(tuple(parse_space(G, p) for p in parts))
    raise InvalidInput(f"unknown space type {kind!r}")


def _canonical_space(obj: dict) -> dict:
    kind = obj["type"]
    if kind == "gset":
        return {"type": kind, "action": obj["action"]}
    if kind == "cosets":
        return {"type": kind, "subgroup": sorted(obj["subgroup"])}
    if kind == "union":
        return {"type": kind, "parts": [_canonical_space(p) for p in obj["parts"]]}
    return {"type": kind}


def parse_twist(G: groups.GroupTable, obj: dict | None):
    if obj is None:
        return Trivial()
    kind = _require(obj, "type", "twist")
    if kind == "trivial":
        return Trivial()
    modulus = _require(obj, "modulus", f"{kind} twist")
    if not isinstance(modulus, int) or modulus < 1:
        raise InvalidInput("twist.modulus must be a positive integer")
    if kind == "cocycle":
        table = _int_rows(_require(obj, "exponents", "cocycle twist"), "twist.exponents")
        return GroupCocycle(cocycles.check_cocycle(G, modulus, table))
    if kind == "hom":
        return CircleHom(cocycles.check_hom(G, modulus, _ints(_require(obj, "exponents", "hom twist"),
                                                               "twist.exponents")))
    raise InvalidInput(f"unknown twist type {kind!r}")


def _canonical_twist(obj: dict | None) -> dict:
    if obj is None or obj["type"] == "trivial":
        return {"type": "trivial"}
    return {"type": obj["type"], "modulus": obj["modulus"], "exponents": obj["exponents"]}


# ---------------------------------------------------------------------------
# instance files


@dataclass(eq=False)
class InstanceFile:
    """A parsed instance file: the validated instance plus its canonical source form."""

    instance: Instance
    source: dict
    extras: dict = field(default_factory=dict)

    @property
    def name(self) -> str:
        return self.extras.get("name", "instance")


def parse(data: Any) -> InstanceFile:
    if not isinstance(data, dict):
        raise InvalidInput("instance file must be a JSON object")
    version = data.get("version")
    if version != FORMAT_VERSION:
        raise InvalidInput(f"unsupported instance file version {version!r}")
    G = parse_group(_require(data, "group", "instance"))
    space = parse_space(G, _require(data, "space", "instance"))
    twist = parse_twist(G, data.get("twist"))
    inst = Instance(G, space, twist)
    source = {
        "group": _canonical_group(data["group"]),
        "space": _canonical_space(data["space"]),
        "twist": _canonical_twist(data.get("twist")),
    }
    extras = {k: data[k] for k in ("name", "tag", "expected") if k in data}
    return InstanceFile(inst, source, extras)


def dump(f: InstanceFile) -> dict:
    out = {"version": FORMAT_VERSION, **f.source, **f.extras}
    return out


def to_text(obj: dict) -> str:
    """Deterministic JSON text (sorted keys, two-space indent, trailing newline)."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_text(text: str) -> InstanceFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"not valid JSON: {exc}") from None
    return parse(data)


def load(path: str) -> tuple[InstanceFile, str]:
    """Parse a file; also returns the sha256 of its bytes."""
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError:
        raise InvalidInput(f"{path} is not UTF-8") from None
    return load_text(text), hashlib.sha256(raw).hexdigest()


def instance_document(G: groups.GroupTable, space: dict, twist: dict | None = None, **extras) -> dict:
    """An instance file for a group given by its multiplication table."""
    group = {"order": G.order, "mult_table": [list(r) for r in G.product], "labels": list(G.labels)}
    doc = {"version": FORMAT_VERSION, "group": group, "space": space}
    if twist is not None:
        doc["twist"] = twist
    doc.update(extras)
    return doc


# ---------------------------------------------------------------------------
# result files


def _q(x) -> str:
    return str(Fraction(x))


def _parse_q(s: str) -> Fraction:
    if not isinstance(s, str):
        raise InvalidInput("basis entries must be rational strings")
    try:
        return Fraction(s)
    except ValueError:
        raise InvalidInput(f"bad rational {s!r}") from None


@dataclass(frozen=True)
class ResultFile:
    dims: dict
    per_summand: tuple | None
    basis: dict | None
    provenance: dict

    def to_dict(self) -> dict:
        out: dict = {"version": FORMAT_VERSION, "dims": {str(d): v for d, v in sorted(self.dims.items())},
                     "provenance": dict(self.provenance)}
        if self.per_summand is not None:
            out["per_summand"] = [dict(row) for row in self.per_summand]
        if self.basis is not None:
            out["basis"] = {str(d): [[_q(x) for x in v] for v in vecs] for d, vecs in sorted(self.basis.items())}
        return out


def parse_result(data: Any) -> ResultFile:
    if not isinstance(data, dict) or data.get("version") != FORMAT_VERSION:
        raise InvalidInput("result file must be a version 1 object")
    dims = {int(k): v for k, v in _require(data, "dims", "result").items()}
    per = data.get("per_summand")
    per = None if per is None else tuple(tuple(sorted(row.items())) for row in per)
    basis = data.get("basis")
    if basis is not None:
        basis = {int(k): tuple(tuple(_parse_q(x) for x in v) for v in vecs) for k, vecs in basis.items()}
    return ResultFile(dims, per, basis, _require(data, "provenance", "result"))
