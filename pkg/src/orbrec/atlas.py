"""Reconstruct the orbifold atlas of a dimension <= 2 orbifold from its
stratification and the singular-locus germs at codimension-2 strata.

Two independent routes recover each codimension-2 isotropy group:

* codimension route: order = cod(germ) + 1, then cyclic vs dihedral from
  whether the stratum lies in the closure of a mirror;
* fundamental-group route: the local orbifold fundamental group presentation,
  enumerated by Todd-Coxeter and classified from its multiplication table.

``reconstruct_atlas`` insists that the two agree.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

from .grouprec import (
    DEFAULT_TC_LIMIT,
    LocalSingularityDescriptor,
    classify_finite_group,
    hnd_local_presentation,
)
from .localalg import DEFAULT_NMAX, INFINITE, milnor_codimension
from .poly import Poly
from .quotients import IsotropyGroupKind, semialgebraic_model, stratify
from .strata import PointClassDescriptor, StratifiedModel, point_class, validate


class InconsistentModel(ValueError):
    pass


class UnsupportedDimension(ValueError):
    pass


@dataclass(frozen=True)
class OrbifoldInputModel:
    dimension: int
    stratified: StratifiedModel
    germs: Mapping[str, Poly] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "germs", dict(sorted(self.germs.items())))

    def __hash__(self):
        return hash((self.dimension, self.stratified, tuple(self.germs.items())))


@dataclass(frozen=True)
class Chart:
    stratum: str
    dimension: int
    isotropy: IsotropyGroupKind
    order: int

    @property
    def model(self) -> str:
        return f"R^{self.dimension}/{self.isotropy.symbol()}"


@dataclass(frozen=True)
class AtlasDescriptor:
    charts: tuple[Chart, ...]

    def chart(self, stratum_id: str) -> Chart:
        for c in self.charts:
            if c.stratum == stratum_id:
                return c
        raise KeyError(f"no chart for stratum {stratum_id!r}")


def recover_order(germ: Poly, n_max: int = DEFAULT_NMAX) -> int:
    """Order of the isotropy group at a codimension-2 point: cod(germ) + 1."""
    cod = milnor_codimension(germ, n_max)
    if cod is INFINITE:
        raise InconsistentModel(
            f"germ {germ} does not define an isolated orbifold singularity "
            f"(codimension did not stabilise below degree {n_max})"
        )
    return cod + 1


def classify_isotropy(pc: PointClassDescriptor) -> IsotropyGroupKind:
    if pc.codim == 0:
        return IsotropyGroupKind.trivial()
    if pc.codim == 1:
        return IsotropyGroupKind.dihedral(1)
    if pc.codim != 2:
        raise UnsupportedDimension(f"codimension {pc.codim} strata need the induction on dimension")
    if pc.order is None:
        raise InconsistentModel("codimension-2 stratum without an order")
    if pc.mirror_adjacent:
        if pc.order % 2:
            raise InconsistentModel(f"corner point with odd order {pc.order}")
        return IsotropyGroupKind.dihedral(pc.order // 2)
    return IsotropyGroupKind.cyclic(pc.order)


def local_descriptor(pc: PointClassDescriptor) -> LocalSingularityDescriptor:
    if pc.codim == 0:
        return LocalSingularityDescriptor.regular()
    if pc.codim == 1:
        return LocalSingularityDescriptor.mirror_edge()
    if pc.order is None:
        raise InconsistentModel("codimension-2 stratum without an order")
    if pc.mirror_adjacent:
        if pc.order % 2:
            raise InconsistentModel(f"corner point with odd order {pc.order}")
        return LocalSingularityDescriptor.corner_point(pc.order)
    return LocalSingularityDescriptor.cone_point(pc.order)


def fundamental_group_route(pc: PointClassDescriptor, tc_limit: int = DEFAULT_TC_LIMIT):
    d = local_descriptor(pc)
    return classify_finite_group(
        hnd_local_presentation(d), tc_limit, reflections=d.kind in ("mirror", "corner")
    )


def check_input(m: OrbifoldInputModel) -> None:
    if m.dimension >= 3:
        raise UnsupportedDimension(
            f"dimension {m.dimension}: charts in dimension >= 3 need links and "
            "universal orbifold covers (induction on dimension); only 0, 1, 2 are supported"
        )
    if m.dimension < 0:
        raise InconsistentModel(f"negative dimension {m.dimension}")
    problems = validate(m.stratified)
    if problems:
        raise InconsistentModel("invalid stratification: " + "; ".join(problems))
    if m.stratified.max_codim() > m.dimension:
        raise InconsistentModel(
            f"stratum of codimension {m.stratified.max_codim()} in a {m.dimension}-dimensional model"
        )
    ids = set(m.stratified.ids())
    for sid in m.germs:
        if sid not in ids:
            raise InconsistentModel(f"germ attached to unknown stratum {sid!r}")
        if m.stratified.get(sid).codim != 2:
            raise InconsistentModel(f"germ attached to stratum {sid!r} of codimension != 2")
    for s in m.stratified.strata:
        if s.codim == 2 and s.order is None and s.id not in m.germs:
            raise InconsistentModel(f"codimension-2 stratum {s.id!r} has neither an order nor a germ")


def reconstruct_atlas(
    m: OrbifoldInputModel, n_max: int = DEFAULT_NMAX, tc_limit: int = DEFAULT_TC_LIMIT
) -> AtlasDescriptor:
    check_input(m)
    charts = []
    for s in m.stratified.strata:
        order = s.order
        if s.id in m.germs:
            recovered = recover_order(m.germs[s.id], n_max)
            if order is not None and order != recovered:
                raise InconsistentModel(
                    f"stratum {s.id!r}: stored order {order} but germ gives cod + 1 = {recovered}"
                )
            order = recovered
        pc = point_class(m.stratified, s.id)
        pc = PointClassDescriptor(pc.codim, pc.mirror_adjacent, order)
        isotropy = classify_isotropy(pc)
        if s.codim == 2:
            other = fundamental_group_route(pc, tc_limit)
            if other != isotropy:
                raise InconsistentModel(
                    f"stratum {s.id!r}: codimension route gives {isotropy}, "
                    f"fundamental group route gives {other}"
                )
        charts.append(Chart(s.id, m.dimension, isotropy, isotropy.order()))
    return AtlasDescriptor(tuple(charts))


def quotient_input_model(group: IsotropyGroupKind, keep_orders: bool = True) -> OrbifoldInputModel:
    """Input model of R^2/group: its stratification plus the singular germ.

    With ``keep_orders=False`` the codimension-2 order is left for the
    pipeline to recover from the germ.
    """
    strat = stratify(group)
    germ = semialgebraic_model(group).germ
    germs = {}
    if germ is not None:
        germs["origin"] = germ
        if not keep_orders:
            strat = strat.replace("origin", order=None)
    return OrbifoldInputModel(2, strat, germs)


def round_trip(
    group: IsotropyGroupKind,
    germ_transform: Callable[[Poly], Poly] | None = None,
    n_max: int = DEFAULT_NMAX,
    tc_limit: int = DEFAULT_TC_LIMIT,
) -> bool:
    """Rebuild the atlas of R^2/group and compare the origin chart with group."""
    m = quotient_input_model(group, keep_orders=False)
    if germ_transform is not None:
        m = OrbifoldInputModel(m.dimension, m.stratified, {k: germ_transform(v) for k, v in m.germs.items()})
    atlas = reconstruct_atlas(m, n_max, tc_limit)
    if "origin" not in m.stratified.ids():
        return [c.isotropy for c in atlas.charts] == [IsotropyGroupKind.trivial()]
    return atlas.chart("origin").isotropy == group
