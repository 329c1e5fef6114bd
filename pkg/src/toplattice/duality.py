"""Character duality for finite abelian groups.

Characters take values in the integers modulo the group exponent m, standing
in for the circle group: every homomorphism from a finite group into the
circle lands in the m-torsion anyway, so integer arithmetic loses nothing.
The dual group is enumerated from an independent cyclic basis found by
splitting off elements of maximal order; annihilators then realize the
order isomorphism between subgroups of the dual and group topologies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product as iproduct

import numpy as np

from .config import Caps, DEFAULT_CAPS
from .errors import InvalidArgumentError, ToplatticeError
from .groups import (
    FiniteGroup,
    SubgroupSet,
    _indices_to_mask,
    all_subgroups,
    element_order,
    quotient,
    realize_subgroup,
    subgroup_generated,
)
from .lattices import FiniteLattice, build_lattice
from .topologies import TopologyLattice, topology_lattice

__all__ = [
    "Character",
    "DualGroup",
    "abelian_basis",
    "dual_group",
    "annihilator",
    "dual_annihilator",
    "ComfortRossReport",
    "comfort_ross_map",
]


@dataclass(frozen=True)
class Character:
    """A homomorphism into the cyclic group of order exp(source), as a value
    vector over source elements."""

    source: FiniteGroup
    modulus: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        g = self.source
        if len(self.values) != g.order:
            raise InvalidArgumentError("value vector length must equal the group order")
        vals = np.asarray(self.values, dtype=np.int64)
        if self.modulus < 1 or (vals < 0).any() or (vals >= max(self.modulus, 1)).any():
            raise InvalidArgumentError("character values must be reduced modulo the exponent")
        if vals[g.identity] != 0:
            raise InvalidArgumentError("a character must vanish at the identity")
        if not np.array_equal(vals[g.table], (vals[:, None] + vals[None, :]) % self.modulus):
            raise InvalidArgumentError("value vector is not additive on products")

    def __call__(self, x: int) -> int:
        return self.values[x]


@dataclass(frozen=True)
class DualGroup:
    """All characters of a finite abelian group under pointwise addition."""

    source: FiniteGroup
    group: FiniteGroup
    modulus: int
    characters: tuple[Character, ...]
    _value_matrix: np.ndarray = field(repr=False, compare=False, default=None)

    def values(self) -> np.ndarray:
        """(dual order, source order) value matrix."""
        return self._value_matrix

    def to_json(self) -> dict:
        """Characters exported as value tables modulo the exponent."""
        return {
            "order": self.group.order,
            "modulus": self.modulus,
            "characters": [list(c.values) for c in self.characters],
        }


def _primary_subgroup(g: FiniteGroup, p: int, orders: tuple[int, ...]) -> SubgroupSet:
    members = [x for x in range(g.order) if _is_p_power(orders[x], p)]
    return SubgroupSet.from_indices(g, members)


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def _p_group_basis(g: FiniteGroup) -> list[int]:
    """Independent generators of an abelian p-group by maximal-order splitting.

    Picks an element of maximal order, recurses on the quotient by it, and
    corrects each lifted generator by a power of the split element so its
    order is preserved; classical for p-groups because the split element has
    maximal order.
    """
    if g.order == 1:
        return []
    orders = [element_order(g, x) for x in range(g.order)]
    x1 = max(range(g.order), key=lambda x: (orders[x], -x))
    c = subgroup_generated(g, [x1])
    q, proj = quotient(g, c)
    lifted: list[int] = [x1]
    for b in _p_group_basis(q):
        ob = element_order(q, b)
        y = next(x for x in range(g.order) if proj.mapping[x] == b)
        yq = g.power(y, ob)
        t = next(t for t in range(orders[x1]) if g.power(x1, t) == yq)
        if t % ob:
            raise ToplatticeError("basis lift failed; the splitting argument broke")
        z = g.mul(y, g.power(x1, -(t // ob)))
        lifted.append(z)
    return lifted


def abelian_basis(g: FiniteGroup) -> list[int]:
    """Element indices generating g as a direct sum of cyclic subgroups.

    Found per prime: each primary part is split into cyclic factors by the
    maximal-order argument; the union over primes is independent because the
    primary parts intersect trivially.  The span is verified exhaustively.
    """
    if not g.abelian:
        raise InvalidArgumentError("cyclic decomposition requires an abelian group")
    if g.order == 1:
        return []
    _, orders = _exponent_orders(g)
    primes = _prime_factors(g.order)
    basis: list[int] = []
    for p in primes:
        part = _primary_subgroup(g, p, orders)
        sub, embed = realize_subgroup(g, part)
        basis.extend(embed.mapping[b] for b in _p_group_basis(sub))
    _verify_basis(g, basis)
    return basis


def _exponent_orders(g: FiniteGroup) -> tuple[int, tuple[int, ...]]:
    orders = tuple(element_order(g, x) for x in range(g.order))
    return math.lcm(*orders), orders


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _verify_basis(g: FiniteGroup, basis: list[int]) -> dict[tuple[int, ...], int]:
    """Exhaustively check that coordinate tuples enumerate g bijectively."""
    ords = [element_order(g, b) for b in basis]
    coords: dict[tuple[int, ...], int] = {}
    for combo in iproduct(*[range(d) for d in ords]):
        acc = g.identity
        for b, c in zip(basis, combo):
            acc = g.mul(acc, g.power(b, c))
        coords[combo] = acc
    if len(set(coords.values())) != g.order or len(coords) != g.order:
        raise ToplatticeError("cyclic decomposition does not span the group")
    return coords


def dual_group(g: FiniteGroup, *, caps: Caps = DEFAULT_CAPS) -> DualGroup:
    """Enumerate all characters and assemble them into a group.

    A character is fixed by its values on a basis; the value on a generator
    of order d ranges over the multiples of m/d modulo the exponent m, and
    every assignment extends because the basis is independent.
    """
    if not g.abelian:
        raise InvalidArgumentError("the dual is defined here for abelian groups only")
    basis = abelian_basis(g)
    ords = [element_order(g, b) for b in basis]
    m = math.lcm(1, *ords)
    coords = _verify_basis(g, basis)
    coord_of = {elem: combo for combo, elem in coords.items()}

    value_rows: list[tuple[int, ...]] = []
    for assign in iproduct(*[range(d) for d in ords]):
        steps = [a * (m // d) for a, d in zip(assign, ords)]
        row = tuple(
            sum(s * c for s, c in zip(steps, coord_of[x])) % m if basis else 0
            for x in range(g.order)
        )
        value_rows.append(row)
    value_rows.sort()
    if len(set(value_rows)) != g.order:
        raise ToplatticeError("character enumeration produced duplicates")

    chars = tuple(Character(g, m, row) for row in value_rows)
    index = {row: i for i, row in enumerate(value_rows)}
    n = g.order
    table = np.empty((n, n), dtype=np.int32)
    for i, ri in enumerate(value_rows):
        for j, rj in enumerate(value_rows):
            table[i, j] = index[tuple((a + b) % m for a, b in zip(ri, rj))]
    dual = FiniteGroup(table, identity=index[tuple([0] * n)],
                       names=[f"chi{i}" for i in range(n)],
                       caps=caps, assume_associative=True)
    if not dual.abelian or dual.order != g.order:
        raise ToplatticeError("dual group construction violated its own invariants")
    vm = np.asarray(value_rows, dtype=np.int64)
    vm.setflags(write=False)
    return DualGroup(g, dual, m, chars, vm)


def annihilator(dual: DualGroup, h: SubgroupSet) -> SubgroupSet:
    """Elements of the source killed by every character in h."""
    if h.group != dual.group:
        raise InvalidArgumentError("subgroup must live in the dual group")
    rows = dual.values()[np.asarray(h.indices, dtype=np.intp)]
    killed = (rows == 0).all(axis=0)
    return SubgroupSet(dual.source, _indices_to_mask(int(i) for i in np.flatnonzero(killed)))


def dual_annihilator(dual: DualGroup, k: SubgroupSet) -> SubgroupSet:
    """Characters killing every element of a subgroup of the source."""
    if k.group != dual.source:
        raise InvalidArgumentError("subgroup must live in the source group")
    cols = dual.values()[:, np.asarray(k.indices, dtype=np.intp)]
    killing = (cols == 0).all(axis=1)
    return SubgroupSet(dual.group, _indices_to_mask(int(i) for i in np.flatnonzero(killing)))


@dataclass
class ComfortRossReport:
    """Verdict of the subgroups-of-the-dual vs topology-lattice comparison."""

    group_label: str
    size: int
    bijective: bool
    order_preserving: bool
    meets_preserved: bool
    joins_preserved: bool
    bottom_to_antidiscrete: bool
    top_to_discrete: bool

    @property
    def passed(self) -> bool:
        return (self.bijective and self.order_preserving and self.meets_preserved
                and self.joins_preserved and self.bottom_to_antidiscrete
                and self.top_to_discrete)

    def to_dict(self) -> dict:
        return {
            "check": "comfort-ross",
            "group": self.group_label,
            "size": self.size,
            "bijective": self.bijective,
            "order_preserving": self.order_preserving,
            "meets_preserved": self.meets_preserved,
            "joins_preserved": self.joins_preserved,
            "bottom_to_antidiscrete": self.bottom_to_antidiscrete,
            "top_to_discrete": self.top_to_discrete,
            "passed": self.passed,
        }


def comfort_ross_map(g: FiniteGroup, *, caps: Caps = DEFAULT_CAPS,
                     label: str | None = None) -> ComfortRossReport:
    """Map each subgroup of the dual to the topology whose kernel is its
    annihilator, and verify a full lattice isomorphism.

    Bijectivity, order preservation in both directions, and meet/join table
    transport are each checked over every pair.
    """
    dual = dual_group(g, caps=caps)
    subs = all_subgroups(dual.group, caps=caps)
    sub_lat: FiniteLattice = build_lattice(
        subs, lambda a, b: a.mask & ~b.mask == 0, caps=caps
    )
    tl: TopologyLattice = topology_lattice(g, caps=caps)

    perm = np.asarray(
        [tl.index_of(annihilator(dual, s).mask) for s in subs], dtype=np.intp
    )
    bijective = len(set(perm.tolist())) == len(tl.topologies) == len(subs)
    order_preserving = bool(
        np.array_equal(tl.lattice.leq[np.ix_(perm, perm)], sub_lat.leq)
    )
    perm32 = perm.astype(np.int32)
    meets = bool(np.array_equal(perm32[sub_lat.meet_table],
                                tl.lattice.meet_table[perm[:, None], perm[None, :]]))
    joins = bool(np.array_equal(perm32[sub_lat.join_table],
                                tl.lattice.join_table[perm[:, None], perm[None, :]]))
    bottom_ok = int(perm[sub_lat.bottom]) == tl.antidiscrete_index
    top_ok = int(perm[sub_lat.top]) == tl.discrete_index
    name = label if label is not None else f"group-of-order-{g.order}"
    return ComfortRossReport(
        group_label=name,
        size=len(subs),
        bijective=bijective,
        order_preserving=order_preserving,
        meets_preserved=meets,
        joins_preserved=joins,
        bottom_to_antidiscrete=bottom_ok,
        top_to_discrete=top_ok,
    )
