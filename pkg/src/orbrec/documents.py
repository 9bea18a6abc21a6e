"""JSON documents for models and atlases.

A model document looks like::

    {
      "dimension": 2,
      "strata": [{"id": "origin", "codim": 2, "label": "s = t = 0", "order": 6}, ...],
      "frontier": [["mirror+", "regular"], ...],
      "germs": {"origin": "-s^6 + t^2"},
      "model": {"variables": ["s", "t"], "equalities": [], "inequalities": ["s^6 - t^2", "s"]}
    }

``order`` and ``dense`` are omitted when unset, ``model`` when absent.
Serialisation is canonical: fixed key order, frontier sorted, germs sorted by
stratum id, polynomials in graded-lex order.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .atlas import AtlasDescriptor, OrbifoldInputModel
from .poly import Poly, PolySyntaxError, parse_poly, variables_in
from .quotients import IsotropyGroupKind, SemialgebraicModel
from .strata import StratifiedModel, Stratum, validate


class DocumentError(ValueError):
    pass


@dataclass(frozen=True)
class ModelDocument:
    model: OrbifoldInputModel
    semialgebraic: SemialgebraicModel | None = None


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def model_to_json(doc: ModelDocument) -> dict:
    m = doc.model
    strata = []
    for s in m.stratified.strata:
        entry = {"id": s.id, "codim": s.codim, "label": s.label}
        if s.order is not None:
            entry["order"] = s.order
        if s.dense:
            entry["dense"] = True
        strata.append(entry)
    out = {
        "dimension": m.dimension,
        "strata": strata,
        "frontier": [list(p) for p in m.stratified.sorted_frontier()],
        "germs": {sid: str(g) for sid, g in m.germs.items()},
    }
    if doc.semialgebraic is not None:
        sa = doc.semialgebraic
        out["model"] = {
            "variables": list(sa.variables),
            "equalities": [str(p) for p in sa.equalities],
            "inequalities": [str(p) for p in sa.inequalities],
        }
    return out


def serialize_model(doc: ModelDocument) -> str:
    return _dump(model_to_json(doc))


def _require(obj: dict, key: str, kind, where: str):
    if key not in obj:
        raise DocumentError(f"{where}: missing field {key!r}")
    value = obj[key]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise DocumentError(f"{where}: field {key!r} must be an integer")
    if kind is not int and not isinstance(value, kind):
        raise DocumentError(f"{where}: field {key!r} must be {kind.__name__}")
    return value


def _poly(text, names, where: str) -> Poly:
    if not isinstance(text, str):
        raise DocumentError(f"{where}: polynomial must be a string")
    try:
        return parse_poly(text, names)
    except PolySyntaxError as exc:
        raise DocumentError(f"{where}: {exc}") from None


def parse_model(text: str) -> ModelDocument:
    """Parse and validate a model document."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(raw, dict):
        raise DocumentError("document must be a JSON object")
    unknown = set(raw) - {"dimension", "strata", "frontier", "germs", "model"}
    if unknown:
        raise DocumentError(f"unknown fields {sorted(unknown)}")
    dimension = _require(raw, "dimension", int, "document")
    strata = []
    for i, entry in enumerate(_require(raw, "strata", list, "document")):
        where = f"strata[{i}]"
        if not isinstance(entry, dict):
            raise DocumentError(f"{where}: must be an object")
        extra = set(entry) - {"id", "codim", "label", "order", "dense"}
        if extra:
            raise DocumentError(f"{where}: unknown fields {sorted(extra)}")
        order = entry.get("order")
        if order is not None and (isinstance(order, bool) or not isinstance(order, int)):
            raise DocumentError(f"{where}: field 'order' must be an integer")
        dense = entry.get("dense", False)
        if not isinstance(dense, bool):
            raise DocumentError(f"{where}: field 'dense' must be a boolean")
        strata.append(Stratum(
            _require(entry, "id", str, where),
            _require(entry, "codim", int, where),
            entry.get("label", ""),
            order,
            dense,
        ))
    frontier = []
    for i, pair in enumerate(raw.get("frontier", [])):
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(x, str) for x in pair)):
            raise DocumentError(f"frontier[{i}]: must be a pair of stratum ids")
        frontier.append(tuple(pair))
    stratified = StratifiedModel(tuple(strata), frozenset(frontier))
    problems = validate(stratified)
    if problems:
        raise DocumentError("invalid stratification: " + "; ".join(problems))

    semialgebraic = None
    names = None
    if "model" in raw:
        sa = raw["model"]
        if not isinstance(sa, dict):
            raise DocumentError("model: must be an object")
        names = tuple(_require(sa, "variables", list, "model"))
        semialgebraic = SemialgebraicModel(
            names,
            tuple(_poly(p, names, "model.equalities") for p in sa.get("equalities", [])),
            tuple(_poly(p, names, "model.inequalities") for p in sa.get("inequalities", [])),
        )
    germs = {}
    raw_germs = raw.get("germs", {})
    if not isinstance(raw_germs, dict):
        raise DocumentError("germs: must be an object")
    for sid, text_poly in raw_germs.items():
        germ_names = names if names is not None else variables_in(text_poly) if isinstance(text_poly, str) else None
        germs[sid] = _poly(text_poly, germ_names, f"germs[{sid!r}]")
    if semialgebraic is not None and len(germs) == 1:
        semialgebraic = SemialgebraicModel(
            semialgebraic.variables, semialgebraic.equalities, semialgebraic.inequalities,
            next(iter(germs.values())),
        )
    return ModelDocument(OrbifoldInputModel(dimension, stratified, germs), semialgebraic)


def _group_json(g: IsotropyGroupKind | None) -> dict:
    if g is None:
        return {"kind": "unknown"}
    if g.kind == "trivial":
        return {"kind": "trivial"}
    return {"kind": g.kind, "k": g.k}


def atlas_to_json(atlas: AtlasDescriptor) -> dict:
    return {
        "charts": [
            {
                "stratum": c.stratum,
                "dimension": c.dimension,
                "isotropy": str(c.isotropy),
                "group": _group_json(c.isotropy),
                "order": c.order,
                "model": c.model,
            }
            for c in atlas.charts
        ]
    }


def serialize_atlas(atlas: AtlasDescriptor) -> str:
    return _dump(atlas_to_json(atlas))
