"""Finite groups as Cayley tables over 0-based element indices.

Every group, regardless of how it was first realized (residues, permutations,
matrices, pairs), is normalized to an order x order multiplication table, so
all downstream algorithms are uniform across group families.  Groups and
subgroup sets are immutable after construction and safe to share.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .config import Caps, DEFAULT_CAPS, HARD_MAX_ORDER
from .errors import InvalidArgumentError, PreconditionError, ResourceLimitError

__all__ = [
    "FiniteGroup",
    "ProductMarker",
    "SubgroupSet",
    "GroupHomomorphism",
    "make_cyclic",
    "make_elementary_abelian",
    "make_dihedral",
    "make_quaternion",
    "make_heisenberg",
    "make_symmetric",
    "direct_product",
    "product_embeddings",
    "subgroup_generated",
    "all_cyclic_subgroups",
    "all_subgroups",
    "is_normal",
    "all_normal_subgroups",
    "quotient",
    "realize_subgroup",
    "center",
    "commutator_subgroup",
    "upper_central_series",
    "nilpotency_class",
    "is_nilpotent",
    "element_order",
    "exponent_and_element_orders",
    "coprime_component",
    "are_isomorphic_groups",
    "group_to_json",
    "group_from_json",
    "load_group_json",
    "is_prime",
]


def is_prime(p: int) -> bool:
    """Primality by trial division; adequate for orders below the hard cap."""
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _mask_to_indices(mask: int, order: int) -> tuple[int, ...]:
    bits = np.unpackbits(
        np.frombuffer(mask.to_bytes((order + 7) // 8, "little"), dtype=np.uint8),
        bitorder="little",
    )[:order]
    return tuple(int(i) for i in np.flatnonzero(bits))


def _indices_to_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << int(i)
    return mask


def _bool_to_mask(bits: np.ndarray) -> int:
    packed = np.packbits(bits.astype(np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


@dataclass(frozen=True)
class ProductMarker:
    """Factor data retained by direct_product so product-specific checks
    never need an isomorphism search."""

    left: "FiniteGroup"
    right: "FiniteGroup"


class FiniteGroup:
    """A finite group given by its Cayley table.

    Invariants verified at construction: the table is a Latin square, the
    identity acts trivially on both sides, every element has a two-sided
    inverse, and associativity holds (checked for orders up to the
    configured cap; formula-built constructors may skip the check above it).
    """

    __slots__ = ("order", "table", "identity", "names", "product",
                 "inverse", "abelian", "_hash")

    def __init__(
        self,
        table: Sequence[Sequence[int]] | np.ndarray,
        identity: int | None = None,
        names: Sequence[str] | None = None,
        product: ProductMarker | None = None,
        *,
        caps: Caps = DEFAULT_CAPS,
        assume_associative: bool = False,
    ) -> None:
        arr = np.ascontiguousarray(np.asarray(table, dtype=np.int32))
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise InvalidArgumentError(
                f"multiplication table must be square and non-empty, got shape {arr.shape}"
            )
        n = int(arr.shape[0])
        if n > HARD_MAX_ORDER:
            raise ResourceLimitError(
                f"group order {n} exceeds the hard limit {HARD_MAX_ORDER}"
            )
        if arr.min() < 0 or arr.max() >= n:
            raise InvalidArgumentError("table entries must be element indices in [0, order)")

        ref = np.arange(n, dtype=np.int32)
        if not (np.array_equal(np.sort(arr, axis=1), np.broadcast_to(ref, arr.shape))
                and np.array_equal(np.sort(arr, axis=0), np.broadcast_to(ref[:, None], arr.shape))):
            raise InvalidArgumentError("table is not a Latin square")

        if identity is None:
            hits = [e for e in range(n)
                    if np.array_equal(arr[e], ref) and np.array_equal(arr[:, e], ref)]
            if len(hits) != 1:
                raise InvalidArgumentError("table has no two-sided identity element")
            identity = hits[0]
        else:
            identity = int(identity)
            if not (0 <= identity < n):
                raise InvalidArgumentError(f"identity index {identity} out of range")
            if not (np.array_equal(arr[identity], ref) and np.array_equal(arr[:, identity], ref)):
                raise InvalidArgumentError(f"index {identity} is not a two-sided identity")

        rows, cols = np.nonzero(arr == identity)
        inverse = np.full(n, -1, dtype=np.int32)
        inverse[rows] = cols
        if (inverse < 0).any() or not np.array_equal(arr[inverse, ref], np.full(n, identity)):
            raise InvalidArgumentError("some element lacks a two-sided inverse")

        if n <= caps.assoc_verify_order or not assume_associative:
            witness = _associativity_witness(arr)
            if witness is not None:
                i, j, k = witness
                raise InvalidArgumentError(
                    f"table is not associative: ({i}*{j})*{k} != {i}*({j}*{k})"
                )

        arr.setflags(write=False)
        inverse.setflags(write=False)
        object.__setattr__(self, "order", n)
        object.__setattr__(self, "table", arr)
        object.__setattr__(self, "identity", identity)
        object.__setattr__(self, "names", tuple(names) if names is not None else None)
        object.__setattr__(self, "product", product)
        object.__setattr__(self, "inverse", inverse)
        object.__setattr__(self, "abelian", bool(np.array_equal(arr, arr.T)))
        object.__setattr__(self, "_hash", hash((n, identity, arr.tobytes())))
        if self.names is not None and len(self.names) != n:
            raise InvalidArgumentError("names length does not match group order")

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("FiniteGroup is immutable")

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return (self.order == other.order
                and self.identity == other.identity
                and np.array_equal(self.table, other.table))

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def power(self, x: int, k: int) -> int:
        """x**k by binary exponentiation; negative exponents use the inverse."""
        if k < 0:
            x, k = self.inv(x), -k
        acc, base = self.identity, x
        while k:
            if k & 1:
                acc = int(self.table[acc, base])
            base = int(self.table[base, base])
            k >>= 1
        return acc

    def conjugate(self, g: int, x: int) -> int:
        """g * x * g^-1."""
        return int(self.table[self.table[g, x], self.inverse[g]])

    def name_of(self, i: int) -> str:
        if self.names is not None:
            return self.names[i]
        return str(i)


def _associativity_witness(table: np.ndarray) -> tuple[int, int, int] | None:
    """Return the least (i, j, k) with (ij)k != i(jk), or None."""
    n = table.shape[0]
    block = 1 + (1 << 21) // max(n * n, 1)
    for i0 in range(0, n, block):
        rows = table[i0:i0 + block]            # (b, n)
        lhs = table[rows]                      # lhs[b, j, k] = T[T[i, j], k]
        rhs = rows[:, table]                   # rhs[b, j, k] = T[i, T[j, k]]
        if not np.array_equal(lhs, rhs):
            bad = np.argwhere(lhs != rhs)[0]
            return (i0 + int(bad[0]), int(bad[1]), int(bad[2]))
    return None


# ---------------------------------------------------------------------------
# constructors


def make_cyclic(n: int, *, caps: Caps = DEFAULT_CAPS) -> FiniteGroup:
    """Cyclic group of order n with additive notation modulo n."""
    if n < 1:
        raise InvalidArgumentError(f"cyclic group order must be at least 1, got {n}")
    if n > HARD_MAX_ORDER:
        raise ResourceLimitError(f"order {n} exceeds the hard limit {HARD_MAX_ORDER}")
    idx = np.arange(n, dtype=np.int32)
    table = (idx[:, None] + idx[None, :]) % n
    return FiniteGroup(table, identity=0, names=[str(i) for i in range(n)],
                       caps=caps, assume_associative=True)


def make_elementary_abelian(p: int, k: int, *, caps: Caps = DEFAULT_CAPS) -> FiniteGroup:
    """Direct power of k copies of the cyclic group of prime order p.

    Elements are the base-p digit tuples in lexicographic order, most
    significant digit first, so index arithmetic is positional.
    """
    if not is_prime(p):
        raise InvalidArgumentError(f"{p} is not prime")
    if k < 1:
        raise InvalidArgumentError(f"exponent must be at least 1, got {k}")
    n = p ** k
    if n > HARD_MAX_ORDER:
        raise ResourceLimitError(f"order {n} exceeds the hard limit {HARD_MAX_ORDER}")
    weights = p ** np.arange(k - 1, -1, -1, dtype=np.int64)
    digits = (np.arange(n)[:, None] // weights[None, :]) % p      # (n, k)
    sums = (digits[:, None, :] + digits[None, :, :]) % p          # (n, n, k)
    table = (sums * weights[None, None, :]).sum(axis=2).astype(np.int32)
    names = ["(" + ",".join(str(d) for d in row) + ")" for row in digits]
    return FiniteGroup(table, identity=0, names=names, caps=caps, assume_associative=True)


def make_dihedral(n: int, *, caps: Caps = DEFAULT_CAPS) -> FiniteGroup:
    """Dihedral group of order 2n: rotations r^i and reflections s*r^i."""
    if n < 1:
        raise InvalidArgumentError(f"dihedral parameter must be at least 1, got {n}")
    if 2 * n > HARD_MAX_ORDER:
        raise ResourceLimitError(f"order {2 * n} exceeds the hard limit {HARD_MAX_ORDER}")
    idx = np.arange(2 * n)
    r, f = idx % n, idx // n
    sign = np.where(f == 0, 1, -1)
    rr = (r[:, None] + sign[:, None] * r[None, :]) % n
    ff = (f[:, None] + f[None, :]) % 2
    table = (ff * n + rr).astype(np.int32)
    names = [f"r{i}" for i in range(n)] + [f"sr{i}" for i in range(n)]
    return FiniteGroup(table, identity=0, names=names, caps=caps, assume_associative=True)


def make_quaternion(*, caps: Caps = DEFAULT_CAPS) -> FiniteGroup:
    """The quaternion group of order 8 on the units {1, -1, i, -i, j, -j, k, -k}."""
    # unit products: unit_mul[a][b] = (sign, unit) for units 1, i, j, k
    unit_mul = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    table = np.zeros((8, 8), dtype=np.int32)
    for a in range(8):
        ua, sa = a // 2, 1 - 2 * (a % 2)
        for b in range(8):
            ub, sb = b // 2, 1 - 2 * (b % 2)
            sgn, unit = unit_mul[(ua, ub)]
            s = sa * sb * sgn
            table[a, b] = unit * 2 + (0 if s == 1 else 1)
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    return FiniteGroup(table, identity=0, names=names, caps=caps, assume_associative=True)


def make_heisenberg(p: int, *, caps: Caps = DEFAULT_CAPS) -> FiniteGroup:
    """Upper unitriangular 3x3 matrices over the field with p elements.

    An element is the triple (a, b, c) of strictly-upper entries; the product
    rule is (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b') mod p.
    """
    if not is_prime(p):
        raise InvalidArgumentError(f"{p} is not prime")
    n = p ** 3
    if n > HARD_MAX_ORDER:
        raise ResourceLimitError(f"order {n} exceeds the hard limit {HARD_MAX_ORDER}")
    idx = np.arange(n)
    a, rem = idx // (p * p), idx % (p * p)
    b, c = rem // p, rem % p
    aa = (a[:, None] + a[None, :]) % p
    bb = (b[:, None] + b[None, :]) % p
    cc = (c[:, None] + c[None, :] + a[:, None] * b[None, :]) % p
    table = (aa * p * p + bb * p + cc).astype(np.int32)
    names = [f"({ai},{bi},{ci})" for ai, bi, ci in zip(a, b, c)]
    return FiniteGroup(table, identity=0, names=names, caps=caps, assume_associative=True)


def make_symmetric(n: int, *, caps: Caps = DEFAULT_CAPS) -> FiniteGroup:
    """Symmetric group on n letters; elements are permutations in lexicographic order."""
    if n < 1:
        raise InvalidArgumentError(f"degree must be at least 1, got {n}")
    order = math.factorial(n)
    if order > HARD_MAX_ORDER:
        raise ResourceLimitError(f"order {order} exceeds the hard limit {HARD_MAX_ORDER}")
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = np.zeros((order, order), dtype=np.int32)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            table[i, j] = index[tuple(p[q[x]] for x in range(n))]
    names = ["(" + ",".join(map(str, p)) + ")" for p in perms]
    return FiniteGroup(table, identity=0, names=names, caps=caps, assume_associative=True)


def direct_product(g: FiniteGroup, h: FiniteGroup, *, caps: Caps = DEFAULT_CAPS) -> FiniteGroup:
    """Componentwise product; the pair (a, b) gets index a*|H| + b.

    The result keeps a marker with both factors so factor embeddings are
    recoverable without any isomorphism search.
    """
    order = g.order * h.order
    if order > HARD_MAX_ORDER:
        raise ResourceLimitError(f"order {order} exceeds the hard limit {HARD_MAX_ORDER}")
    idx = np.arange(order)
    a, b = idx // h.order, idx % h.order
    table = (g.table[np.ix_(a, a)] * h.order + h.table[np.ix_(b, b)]).astype(np.int32)
    names = [f"({g.name_of(x)},{h.name_of(y)})" for x, y in zip(a, b)]
    return FiniteGroup(table, identity=g.identity * h.order + h.identity,
                       names=names, product=ProductMarker(g, h),
                       caps=caps, assume_associative=True)


def product_embeddings(g: FiniteGroup) -> tuple["SubgroupSet", "SubgroupSet"]:
    """Canonical images of the two factors inside a marked direct product."""
    marker = g.product
    if marker is None:
        raise InvalidArgumentError("group was not constructed by direct_product")
    nh = marker.right.order
    left = _indices_to_mask(a * nh + marker.right.identity for a in range(marker.left.order))
    right = _indices_to_mask(marker.left.identity * nh + b for b in range(nh))
    return SubgroupSet(g, left), SubgroupSet(g, right)


# ---------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True)
class SubgroupSet:
    """A subset of element indices closed under product and inverse.

    The membership data is a bitmask over element indices; closure under
    the group operations and membership of the identity are verified at
    construction.
    """

    group: FiniteGroup
    mask: int

    def __post_init__(self) -> None:
        g = self.group
        if self.mask <= 0 or self.mask >> g.order:
            raise InvalidArgumentError("membership mask out of range for the group order")
        if not (self.mask >> g.identity) & 1:
            raise InvalidArgumentError("subgroup must contain the identity")
        idx = np.asarray(_mask_to_indices(self.mask, g.order), dtype=np.intp)
        object.__setattr__(self, "_indices", tuple(int(i) for i in idx))
        memb = np.zeros(g.order, dtype=bool)
        memb[idx] = True
        if not memb[g.table[np.ix_(idx, idx)]].all():
            raise InvalidArgumentError("set is not closed under the group product")
        if not memb[g.inverse[idx]].all():
            raise InvalidArgumentError("set is not closed under inverses")

    @classmethod
    def from_indices(cls, group: FiniteGroup, indices: Iterable[int]) -> "SubgroupSet":
        return cls(group, _indices_to_mask(indices))

    @classmethod
    def trivial(cls, group: FiniteGroup) -> "SubgroupSet":
        return cls(group, 1 << group.identity)

    @classmethod
    def whole(cls, group: FiniteGroup) -> "SubgroupSet":
        return cls(group, (1 << group.order) - 1)

    @property
    def indices(self) -> tuple[int, ...]:
        return self._indices  # type: ignore[attr-defined]

    @property
    def size(self) -> int:
        return len(self.indices)

    @property
    def members(self) -> tuple[bool, ...]:
        """Boolean membership vector over element indices."""
        mask = self.mask
        return tuple(bool((mask >> i) & 1) for i in range(self.group.order))

    def contains(self, x: int) -> bool:
        return bool((self.mask >> x) & 1)

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        """Canonical ordering key: by size, then by membership vector."""
        return (self.size, self.indices)

    def __repr__(self) -> str:
        return f"SubgroupSet({{{','.join(map(str, self.indices))}}})"


def _closure_mask(g: FiniteGroup, mask: int) -> int:
    """Smallest product-closed superset of ``mask`` containing the identity."""
    cur = mask | (1 << g.identity)
    while True:
        idx = np.asarray(_mask_to_indices(cur, g.order), dtype=np.intp)
        prods = g.table[np.ix_(idx, idx)]
        bits = np.zeros(g.order, dtype=bool)
        bits[idx] = True
        bits[prods.ravel()] = True
        new = _bool_to_mask(bits)
        if new == cur:
            return cur
        cur = new


def subgroup_generated(g: FiniteGroup, seed: Iterable[int]) -> SubgroupSet:
    """Smallest subgroup containing the seed, by closure iteration to a fixpoint."""
    mask = 0
    for x in seed:
        x = int(x)
        if not (0 <= x < g.order):
            raise InvalidArgumentError(f"seed index {x} out of range")
        mask |= 1 << x
    return SubgroupSet(g, _closure_mask(g, mask))


def all_cyclic_subgroups(g: FiniteGroup) -> list[SubgroupSet]:
    """Subgroups generated by single elements, including the trivial one."""
    masks = {_closure_mask(g, 1 << x) for x in range(g.order)}
    masks.add(1 << g.identity)
    subs = [SubgroupSet(g, m) for m in masks]
    subs.sort(key=SubgroupSet.sort_key)
    return subs


def all_subgroups(g: FiniteGroup, *, caps: Caps = DEFAULT_CAPS) -> list[SubgroupSet]:
    """Complete duplicate-free list of subgroups in canonical order.

    Starts from all cyclic subgroups and repeatedly joins pairs (closure of
    the union) until no new subgroup appears.  Joining against cyclic seeds
    only reaches the same fixpoint: every subgroup is a join of cyclic ones.
    """
    if g.order > min(caps.subgroup_enum_order, HARD_MAX_ORDER):
        raise ResourceLimitError(
            f"subgroup enumeration refused for order {g.order} above cap "
            f"{min(caps.subgroup_enum_order, HARD_MAX_ORDER)}"
        )
    cyclic = [_closure_mask(g, 1 << x) for x in range(g.order)]
    cyclic = sorted(set(cyclic) | {1 << g.identity})
    known: set[int] = set(cyclic)
    queue: list[int] = list(cyclic)
    qi = 0
    while qi < len(queue):
        m = queue[qi]
        qi += 1
        for c in cyclic:
            if c & ~m == 0:
                continue
            j = _closure_mask(g, m | c)
            if j not in known:
                known.add(j)
                queue.append(j)
    subs = [SubgroupSet(g, m) for m in known]
    subs.sort(key=SubgroupSet.sort_key)
    return subs


def is_normal(g: FiniteGroup, h: SubgroupSet) -> bool:
    """True iff x*H*x^-1 = H for every x."""
    if h.group != g:
        raise InvalidArgumentError("subgroup belongs to a different group")
    idx = np.asarray(h.indices, dtype=np.intp)
    memb = np.zeros(g.order, dtype=bool)
    memb[idx] = True
    xh = g.table[:, idx]                              # (n, |H|): x*h
    conj = g.table[xh, g.inverse[:, None]]            # (x*h)*x^-1
    return bool(memb[conj].all())


def all_normal_subgroups(g: FiniteGroup, *, caps: Caps = DEFAULT_CAPS) -> list[SubgroupSet]:
    return [h for h in all_subgroups(g, caps=caps) if is_normal(g, h)]


@dataclass(frozen=True)
class GroupHomomorphism:
    """A verified homomorphism given by the image index of every source element."""

    source: FiniteGroup
    target: FiniteGroup
    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        m = np.asarray(self.mapping, dtype=np.int32)
        if m.shape != (self.source.order,):
            raise InvalidArgumentError("mapping length must equal the source order")
        if m.min() < 0 or m.max() >= self.target.order:
            raise InvalidArgumentError("mapping contains out-of-range target indices")
        if int(m[self.source.identity]) != self.target.identity:
            raise InvalidArgumentError("mapping does not send identity to identity")
        st = self.source.table
        if not np.array_equal(self.target.table[m[:, None], m[None, :]], m[st]):
            raise InvalidArgumentError("mapping is not multiplicative")

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def kernel(self) -> SubgroupSet:
        tgt_e = self.target.identity
        return SubgroupSet.from_indices(
            self.source, (i for i, v in enumerate(self.mapping) if v == tgt_e)
        )

    def image_mask(self) -> int:
        return _indices_to_mask(set(self.mapping))

    def is_bijective(self) -> bool:
        return (self.source.order == self.target.order
                and len(set(self.mapping)) == self.source.order)


def quotient(g: FiniteGroup, n: SubgroupSet, *, caps: Caps = DEFAULT_CAPS
             ) -> tuple[FiniteGroup, GroupHomomorphism]:
    """Coset group modulo a normal subgroup, with the canonical projection.

    Coset representatives are the least element index in each coset; quotient
    elements are numbered by ascending representative.
    """
    if n.group != g:
        raise InvalidArgumentError("subgroup belongs to a different group")
    if not is_normal(g, n):
        raise InvalidArgumentError("quotient requires a normal subgroup")
    sub_idx = np.asarray(n.indices, dtype=np.intp)
    leader = np.full(g.order, -1, dtype=np.int64)
    reps: list[int] = []
    for x in range(g.order):
        if leader[x] < 0:
            coset = g.table[x, sub_idx]
            leader[coset] = x
            reps.append(x)
    rep_arr = np.asarray(reps, dtype=np.intp)
    qindex = {r: i for i, r in enumerate(reps)}
    qmap = np.asarray([qindex[int(leader[x])] for x in range(g.order)], dtype=np.int32)
    qtable = qmap[g.table[np.ix_(rep_arr, rep_arr)]]
    names = ["{" + ",".join(g.name_of(i) for i in sorted(map(int, g.table[r, sub_idx]))) + "}"
             for r in reps]
    q = FiniteGroup(qtable, identity=int(qmap[g.identity]), names=names,
                    caps=caps, assume_associative=True)
    proj = GroupHomomorphism(g, q, tuple(int(v) for v in qmap))
    return q, proj


def realize_subgroup(g: FiniteGroup, s: SubgroupSet, *, caps: Caps = DEFAULT_CAPS
                     ) -> tuple[FiniteGroup, GroupHomomorphism]:
    """The subgroup as a group in its own right, with the inclusion map.

    Elements are numbered by ascending index in the ambient group, so two
    calls on equal subgroup sets produce equal groups.
    """
    if s.group != g:
        raise InvalidArgumentError("subgroup belongs to a different group")
    idx = np.asarray(s.indices, dtype=np.intp)
    local = {int(x): i for i, x in enumerate(idx)}
    table = np.asarray([[local[int(g.table[a, b])] for b in idx] for a in idx],
                       dtype=np.int32)
    names = [g.name_of(int(x)) for x in idx]
    sub = FiniteGroup(table, identity=local[g.identity], names=names,
                      caps=caps, assume_associative=True)
    embed = GroupHomomorphism(sub, g, tuple(int(x) for x in idx))
    return sub, embed


# ---------------------------------------------------------------------------
# structure invariants


def center(g: FiniteGroup) -> SubgroupSet:
    """Elements commuting with everything."""
    central = (g.table == g.table.T).all(axis=1)
    return SubgroupSet(g, _bool_to_mask(central))


def commutator_subgroup(g: FiniteGroup) -> SubgroupSet:
    """Subgroup generated by all commutators x^-1 y^-1 x y."""
    n = g.order
    ix = np.repeat(np.arange(n), n)
    iy = np.tile(np.arange(n), n)
    t = g.table[g.inverse[ix], g.inverse[iy]]
    t = g.table[t, ix]
    t = g.table[t, iy]
    return subgroup_generated(g, set(int(v) for v in t))


def upper_central_series(g: FiniteGroup) -> list[SubgroupSet]:
    """Ascending central series computed by iterated center-of-quotient.

    Starts at the trivial subgroup and stops when the series stabilizes,
    whether or not it reaches the whole group.
    """
    series = [SubgroupSet.trivial(g)]
    full = (1 << g.order) - 1
    while series[-1].mask != full:
        q, proj = quotient(g, series[-1])
        central_q = center(q)
        pre = _indices_to_mask(
            x for x in range(g.order) if central_q.contains(proj.mapping[x])
        )
        if pre == series[-1].mask:
            break
        series.append(SubgroupSet(g, pre))
    return series


def nilpotency_class(g: FiniteGroup) -> int | None:
    """Length of the upper central series, or None when it stops short of G."""
    series = upper_central_series(g)
    if series[-1].mask == (1 << g.order) - 1:
        return len(series) - 1
    return None


def is_nilpotent(g: FiniteGroup) -> bool:
    return nilpotency_class(g) is not None


def element_order(g: FiniteGroup, x: int) -> int:
    k, acc = 1, x
    while acc != g.identity:
        acc = int(g.table[acc, x])
        k += 1
    return k


def exponent_and_element_orders(g: FiniteGroup) -> tuple[int, tuple[int, ...]]:
    orders = tuple(element_order(g, x) for x in range(g.order))
    return math.lcm(*orders), orders


def coprime_component(g: FiniteGroup, y: int, m: int) -> int:
    """The unique m-th root of y inside the cyclic subgroup generated by y.

    Requires gcd(ord(y), m) = 1; the root is y**k for k the inverse of m
    modulo ord(y), so an m-th power x**m recovers x whenever m is coprime
    to the order of x.
    """
    if not (0 <= y < g.order):
        raise InvalidArgumentError(f"element index {y} out of range")
    d = element_order(g, y)
    if math.gcd(d, m) != 1:
        raise PreconditionError(f"gcd(ord(y)={d}, m={m}) is not 1")
    k = pow(m % d, -1, d) if d > 1 else 0
    return g.power(y, k)


# ---------------------------------------------------------------------------
# isomorphism testing (test utility, brute-force generator mapping)


def _generating_set(g: FiniteGroup) -> list[int]:
    gens: list[int] = []
    cur = 1 << g.identity
    for x in range(g.order):
        if not (cur >> x) & 1:
            gens.append(x)
            cur = _closure_mask(g, cur | (1 << x))
            if cur == (1 << g.order) - 1:
                break
    return gens


def are_isomorphic_groups(g: FiniteGroup, h: FiniteGroup, *,
                          caps: Caps = DEFAULT_CAPS) -> list[int] | None:
    """Brute-force generator-mapping isomorphism search.

    Returns the image list of an isomorphism, or None.  Capped by
    caps.group_iso_order because the search is exponential.
    """
    if g.order != h.order:
        return None
    if g.order > caps.group_iso_order:
        raise ResourceLimitError(
            f"group isomorphism search capped at order {caps.group_iso_order}"
        )
    g_orders = [element_order(g, x) for x in range(g.order)]
    h_orders = [element_order(h, x) for x in range(h.order)]
    if sorted(g_orders) != sorted(h_orders) or g.abelian != h.abelian:
        return None
    gens = _generating_set(g)
    candidates = [[y for y in range(h.order) if h_orders[y] == g_orders[x]] for x in gens]

    def extend(images: list[int]) -> list[int] | None:
        known: dict[int, int] = {g.identity: h.identity}
        for a, b in zip(gens[: len(images)], images):
            known[a] = b
        changed = True
        while changed:
            changed = False
            items = list(known.items())
            for (a1, b1) in items:
                for (a2, b2) in items:
                    a, b = g.mul(a1, a2), h.mul(b1, b2)
                    if a in known:
                        if known[a] != b:
                            return None
                    else:
                        known[a] = b
                        changed = True
        if len(known) < g.order:
            return []  # consistent but not yet total; only possible mid-assignment
        image = [known[x] for x in range(g.order)]
        if len(set(image)) != g.order:
            return None
        m = np.asarray(image, dtype=np.int32)
        if not np.array_equal(h.table[m[:, None], m[None, :]], m[g.table]):
            return None
        return image

    def search(pos: int, images: list[int]) -> list[int] | None:
        if pos == len(gens):
            out = extend(images)
            return out if out else None
        for y in candidates[pos]:
            out = extend(images + [y])
            if out is None:
                continue
            if out:
                return out
            deeper = search(pos + 1, images + [y])
            if deeper:
                return deeper
        return None

    if not gens:  # trivial group
        return [h.identity]
    return search(0, [])


# ---------------------------------------------------------------------------
# JSON interchange


def group_to_json(g: FiniteGroup) -> dict:
    out: dict = {"order": g.order, "table": g.table.tolist()}
    if g.names is not None:
        out["names"] = list(g.names)
    return out


def group_from_json(data: dict, *, caps: Caps = DEFAULT_CAPS) -> FiniteGroup:
    """Load and fully validate a group from its JSON form."""
    if not isinstance(data, dict) or "table" not in data:
        raise InvalidArgumentError("group JSON must be an object with a 'table' field")
    table = data["table"]
    if "order" in data and len(table) != data["order"]:
        raise InvalidArgumentError("declared order does not match the table size")
    names = data.get("names")
    return FiniteGroup(table, names=names, caps=caps, assume_associative=False)


def load_group_json(path: str, *, caps: Caps = DEFAULT_CAPS) -> FiniteGroup:
    with open(path, "r", encoding="utf-8") as fh:
        return group_from_json(json.load(fh), caps=caps)
