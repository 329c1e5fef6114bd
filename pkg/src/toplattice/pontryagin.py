"""Neighborhood-basis conditions for group topologies on a finite group.

A family of identity-containing subsets is a neighborhood basis at the
identity for some group topology exactly when it satisfies five closure
conditions (products shrink, inverses shrink, translations shrink,
conjugations shrink, intersections refine); a sixth condition, trivial
intersection, characterizes the Hausdorff case, which on a finite group
means the discrete topology.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidArgumentError, PreconditionError, ToplatticeError
from .groups import FiniteGroup, SubgroupSet, _indices_to_mask, is_normal
from .topologies import GroupTopology, _iter_bits, _product_set_mask

__all__ = [
    "NeighborhoodFamily",
    "ConditionReport",
    "PontryaginReport",
    "check_conditions",
    "generate_topology",
    "family_from_json",
    "verify_pontryagin_roundtrip",
]


@dataclass(frozen=True)
class NeighborhoodFamily:
    """A non-empty list of identity-containing subsets, held as masks."""

    group: FiniteGroup
    sets: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.sets:
            raise InvalidArgumentError("the family must contain at least one set")
        e = self.group.identity
        for i, m in enumerate(self.sets):
            if m <= 0 or m >> self.group.order:
                raise InvalidArgumentError(f"set {i} is out of range for the group")
            if not (m >> e) & 1:
                raise InvalidArgumentError(f"set {i} does not contain the identity")

    @classmethod
    def from_indices(cls, group: FiniteGroup,
                     sets: Sequence[Iterable[int]]) -> "NeighborhoodFamily":
        return cls(group, tuple(_indices_to_mask(s) for s in sets))


@dataclass(frozen=True)
class ConditionReport:
    holds: bool
    witness_set: int | None = None      # index into the family
    witness_element: int | None = None  # group element where applicable

    def to_dict(self) -> dict:
        return {"holds": self.holds, "set": self.witness_set, "element": self.witness_element}


@dataclass(frozen=True)
class PontryaginReport:
    """Per-condition outcome; witnesses carry the least failing indices."""

    conditions: dict[str, ConditionReport]

    def basis_ok(self) -> bool:
        """Conditions i..v: the family generates a group topology."""
        return all(self.conditions[key].holds for key in ("i", "ii", "iii", "iv", "v"))

    @property
    def hausdorff(self) -> bool:
        return self.conditions["vi"].holds

    def to_dict(self) -> dict:
        return {key: rep.to_dict() for key, rep in self.conditions.items()}


def _inverse_mask(g: FiniteGroup, m: int) -> int:
    return _indices_to_mask(int(g.inverse[i]) for i in _iter_bits(m))


def _left_translate(g: FiniteGroup, x: int, m: int) -> int:
    return _indices_to_mask(int(g.table[x, i]) for i in _iter_bits(m))


def _conjugate_mask(g: FiniteGroup, x: int, m: int) -> int:
    xi = int(g.inverse[x])
    return _indices_to_mask(int(g.table[g.table[x, i], xi]) for i in _iter_bits(m))


def check_conditions(fam: NeighborhoodFamily) -> PontryaginReport:
    """Evaluate the five basis conditions and the Hausdorff condition.

    Failures are reported, not raised; each report carries the least family
    index (and group element, where one is quantified) witnessing it.
    """
    g = fam.group
    sets = fam.sets
    out: dict[str, ConditionReport] = {}

    def exists_subset(target: int) -> bool:
        return any(v & ~target == 0 for v in sets)

    # (i) for each U some V with V*V inside U
    wit = next((u for u, um in enumerate(sets)
                if not any(_product_set_mask(g, v, v) & ~um == 0 for v in sets)), None)
    out["i"] = ConditionReport(wit is None, wit)

    # (ii) for each U some V with V^-1 inside U
    wit = next((u for u, um in enumerate(sets)
                if not any(_inverse_mask(g, v) & ~um == 0 for v in sets)), None)
    out["ii"] = ConditionReport(wit is None, wit)

    # (iii) for each U and x in U, some V with x*V inside U
    hit: tuple[int, int] | None = None
    for u, um in enumerate(sets):
        for x in _iter_bits(um):
            if not any(_left_translate(g, x, v) & ~um == 0 for v in sets):
                hit = (u, x)
                break
        if hit:
            break
    out["iii"] = ConditionReport(hit is None, *(hit or (None, None)))

    # (iv) for each U and every x, some V with x*V*x^-1 inside U
    hit = None
    for u, um in enumerate(sets):
        for x in range(g.order):
            if not any(_conjugate_mask(g, x, v) & ~um == 0 for v in sets):
                hit = (u, x)
                break
        if hit:
            break
    out["iv"] = ConditionReport(hit is None, *(hit or (None, None)))

    # (v) for each pair U, V some W inside U and V
    pair: tuple[int, int] | None = None
    for u, um in enumerate(sets):
        for v, vm in enumerate(sets):
            if not exists_subset(um & vm):
                pair = (u, v)
                break
        if pair:
            break
    out["v"] = ConditionReport(pair is None, pair[0] if pair else None,
                               pair[1] if pair else None)

    # (vi) the whole family intersects to the identity alone
    inter = sets[0]
    for m in sets[1:]:
        inter &= m
    out["vi"] = ConditionReport(inter == 1 << g.identity)

    return PontryaginReport(out)


def generate_topology(fam: NeighborhoodFamily) -> GroupTopology:
    """Topology generated by a family passing the five basis conditions.

    Its kernel is the intersection of the family, which those conditions
    force to be a normal subgroup on a finite group; that consequence is
    asserted rather than assumed, so a violation signals a checker bug
    instead of silently producing a bogus topology.
    """
    report = check_conditions(fam)
    if not report.basis_ok():
        failing = [k for k in ("i", "ii", "iii", "iv", "v")
                   if not report.conditions[k].holds]
        raise PreconditionError(
            f"family violates basis conditions {','.join(failing)}: "
            f"{report.to_dict()}"
        )
    g = fam.group
    inter = fam.sets[0]
    for m in fam.sets[1:]:
        inter &= m
    try:
        kernel = SubgroupSet(g, inter)
    except InvalidArgumentError as exc:  # pragma: no cover - soundness guard
        raise ToplatticeError(
            "basis conditions passed but the intersection is not a subgroup; "
            "the checker is unsound"
        ) from exc
    if not is_normal(g, kernel):  # pragma: no cover - soundness guard
        raise ToplatticeError(
            "basis conditions passed but the intersection is not normal; "
            "the checker is unsound"
        )
    return GroupTopology(g, kernel)


def family_from_json(data: dict, *, caps=None) -> NeighborhoodFamily:
    """Family input: {"group": <spec string or inline table>, "sets": [[indices]]}."""
    from .config import DEFAULT_CAPS
    from .corpus import parse_group_spec
    from .groups import group_from_json

    caps = caps if caps is not None else DEFAULT_CAPS
    if not isinstance(data, dict) or "group" not in data or "sets" not in data:
        raise InvalidArgumentError("family JSON needs 'group' and 'sets' fields")
    ref = data["group"]
    if isinstance(ref, str):
        group = parse_group_spec(ref, caps=caps)
    elif isinstance(ref, dict):
        group = group_from_json(ref, caps=caps)
    else:
        raise InvalidArgumentError("'group' must be a spec string or an inline table")
    return NeighborhoodFamily.from_indices(group, data["sets"])


def verify_pontryagin_roundtrip(g: FiniteGroup, *, caps=None,
                                label: str | None = None):
    """Each normal subgroup, as a singleton family, passes the basis
    conditions and regenerates itself as a kernel; each non-normal subgroup
    fails the conjugation condition with a witness."""
    from .config import DEFAULT_CAPS
    from .groups import all_subgroups
    from .topologies import SweepReport

    caps = caps if caps is not None else DEFAULT_CAPS
    checked = 0
    fails: list[dict] = []
    for h in all_subgroups(g, caps=caps):
        checked += 1
        fam = NeighborhoodFamily(g, (h.mask,))
        rep = check_conditions(fam)
        if is_normal(g, h):
            if not rep.basis_ok():
                fails.append({"law": "normal-basis", "subgroup": list(h.indices),
                              "report": rep.to_dict()})
                continue
            tau = generate_topology(fam)
            if tau.kernel.mask != h.mask:
                fails.append({"law": "kernel-roundtrip", "subgroup": list(h.indices)})
            if rep.hausdorff != tau.is_discrete:
                fails.append({"law": "hausdorff-is-discrete", "subgroup": list(h.indices)})
        else:
            cond = rep.conditions["iv"]
            if cond.holds:
                fails.append({"law": "non-normal-conjugation", "subgroup": list(h.indices)})
            elif cond.witness_element is None:
                fails.append({"law": "missing-witness", "subgroup": list(h.indices)})
    name = label if label is not None else f"group-of-order-{g.order}"
    return SweepReport("pontryagin-roundtrip", name, not fails, checked, tuple(fails))
