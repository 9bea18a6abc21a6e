"""Finite combinatorial stratified models.

A model lists strata with their codimension and an optional point order, plus
frontier pairs ``(lower, upper)`` meaning ``lower`` lies in the closure of
``upper`` minus ``upper``.  Frontier pairs need not be transitively closed.
"""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Stratum:
    id: str
    codim: int
    label: str = ""
    order: int | None = None
    dense: bool = False


@dataclass(frozen=True)
class StratifiedModel:
    strata: tuple[Stratum, ...]
    frontier: frozenset[tuple[str, str]] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "strata", tuple(self.strata))
        object.__setattr__(self, "frontier", frozenset(tuple(p) for p in self.frontier))

    def ids(self) -> list[str]:
        return [s.id for s in self.strata]

    def get(self, stratum_id: str) -> Stratum:
        for s in self.strata:
            if s.id == stratum_id:
                return s
        raise KeyError(f"unknown stratum {stratum_id!r}")

    def sorted_frontier(self) -> list[tuple[str, str]]:
        return sorted(self.frontier)

    def max_codim(self) -> int:
        return max((s.codim for s in self.strata), default=0)

    def replace(self, stratum_id: str, **changes) -> "StratifiedModel":
        new = []
        for s in self.strata:
            if s.id == stratum_id:
                s = Stratum(**{**s.__dict__, **changes})
            new.append(s)
        return StratifiedModel(tuple(new), self.frontier)

    def closure_relation(self) -> set[tuple[str, str]]:
        """Transitive closure of the frontier pairs."""
        succ: dict[str, set[str]] = {}
        for lo, hi in self.frontier:
            succ.setdefault(lo, set()).add(hi)
        closed = set()
        for start in succ:
            stack = list(succ[start])
            seen = set()
            while stack:
                node = stack.pop()
                if node in seen:
                    continue
                seen.add(node)
                closed.add((start, node))
                stack.extend(succ.get(node, ()))
        return closed


@dataclass(frozen=True)
class PointClassDescriptor:
    codim: int
    mirror_adjacent: bool = False
    order: int | None = None


def validate(model: StratifiedModel) -> list[str]:
    """All frontier-condition and bookkeeping violations; empty means ok."""
    problems = []
    ids = model.ids()
    seen = set()
    for sid in ids:
        if sid in seen:
            problems.append(f"duplicate id: stratum {sid!r} listed twice")
        seen.add(sid)
    codim = {s.id: s.codim for s in model.strata}

    for s in model.strata:
        if s.codim < 0:
            problems.append(f"negative codim: stratum {s.id!r}")
        if s.order is not None:
            if s.order < 1:
                problems.append(f"order placement: stratum {s.id!r} has order {s.order} < 1")
            elif s.codim == 1 and s.order != 2:
                problems.append(f"order placement: mirror stratum {s.id!r} has order {s.order}, expected 2")
            elif s.codim not in (1, 2):
                problems.append(f"order placement: stratum {s.id!r} of codim {s.codim} carries an order")
        if s.dense and s.codim != 0:
            problems.append(f"dense flag: stratum {s.id!r} has codim {s.codim}")
    dense = [s.id for s in model.strata if s.dense]
    if len(dense) > 1:
        problems.append(f"dense flag: several open dense strata {dense}")

    known = True
    for lo, hi in model.sorted_frontier():
        for sid in (lo, hi):
            if sid not in codim:
                problems.append(f"unknown id: frontier pair ({lo!r}, {hi!r}) names {sid!r}")
                known = False
        if lo == hi:
            problems.append(f"partial order: frontier pair ({lo!r}, {hi!r}) is reflexive")
        elif lo in codim and hi in codim and codim[lo] <= codim[hi]:
            problems.append(
                f"codim monotonicity: {lo!r} (codim {codim[lo]}) below {hi!r} (codim {codim[hi]})"
            )
    if known:
        cyclic = sorted({a for a, b in model.closure_relation() if a == b})
        if cyclic:
            problems.append(f"partial order: frontier has a cycle through {cyclic}")
    return problems


def is_valid(model: StratifiedModel) -> bool:
    return not validate(model)


def point_class(model: StratifiedModel, stratum_id: str) -> PointClassDescriptor:
    s = model.get(stratum_id)
    mirror = False
    if s.codim == 2:
        codim = {t.id: t.codim for t in model.strata}
        mirror = any(lo == stratum_id and codim.get(hi) == 1 for lo, hi in model.frontier)
    return PointClassDescriptor(s.codim, mirror, s.order)
