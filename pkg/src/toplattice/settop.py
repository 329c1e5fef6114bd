"""The lattice of all topologies on a small finite point set.

Topologies on n points biject with preorders (reflexive transitive
relations): the minimal open set of a point is its down-set.  Enumeration
goes through preorders for speed; a naive filter over all families of
subsets is retained as an independent oracle for up to three points, so the
counts are derived twice rather than copied from anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import Caps, DEFAULT_CAPS
from .errors import InvalidArgumentError, ResourceLimitError
from .groups import FiniteGroup
from .lattices import (
    CheckResult,
    FiniteLattice,
    has_dual_birkhoff,
    is_distributive,
)
from .topologies import GroupTopology, TopologyLattice

__all__ = [
    "SetTopology",
    "enumerate_topologies",
    "brute_force_topologies",
    "top_meet",
    "top_join",
    "toplattice",
    "ClassicalFactsReport",
    "verify_classical_facts",
    "group_topology_as_set_topology",
    "EmbeddingReport",
    "embed_group_topologies",
    "dump_topologies",
    "parse_topology_dump",
]


@dataclass(frozen=True)
class SetTopology:
    """Open-set family over points 0..points-1, as sorted subset masks."""

    points: int
    opens: tuple[int, ...]

    def __post_init__(self) -> None:
        full = (1 << self.points) - 1
        fam = set(self.opens)
        if self.opens != tuple(sorted(fam)):
            raise InvalidArgumentError("open sets must be sorted and duplicate-free")
        if 0 not in fam or full not in fam:
            raise InvalidArgumentError("a topology contains the empty and full sets")
        for a in fam:
            if a & ~full:
                raise InvalidArgumentError("open set out of range")
            for b in fam:
                if a & b not in fam or a | b not in fam:
                    raise InvalidArgumentError("family not closed under union/intersection")

    @property
    def size(self) -> int:
        return len(self.opens)

    def minimal_open(self, x: int) -> int:
        m = (1 << self.points) - 1
        for s in self.opens:
            if (s >> x) & 1:
                m &= s
        return m


def enumerate_topologies(n: int, *, caps: Caps = DEFAULT_CAPS) -> list[SetTopology]:
    """All labeled topologies on n points, via the preorder bijection.

    Preorders are enumerated as reflexive boolean matrices filtered by a
    vectorized transitivity test; each preorder expands to the family of its
    down-closed sets.  The result is sorted by (family size, family).
    """
    if n < 1:
        raise InvalidArgumentError("point count must be at least 1")
    if n > caps.settop_enum_points:
        raise ResourceLimitError(
            f"topology enumeration capped at {caps.settop_enum_points} points"
        )
    m = n * (n - 1)
    positions = [(i, j) for i in range(n) for j in range(n) if i != j]
    out: list[SetTopology] = []
    batch = 1 << 16
    for lo in range(0, 1 << m, batch):
        count = min(batch, (1 << m) - lo)
        codes = np.arange(lo, lo + count, dtype=np.int64)
        rel = np.zeros((count, n, n), dtype=np.uint8)
        rel[:, np.arange(n), np.arange(n)] = 1
        for bit, (i, j) in enumerate(positions):
            rel[:, i, j] = (codes >> bit) & 1
        sq = np.einsum("bij,bjk->bik", rel, rel)
        ok = ~((sq > 0) & (rel == 0)).any(axis=(1, 2))
        for r in rel[ok]:
            cols = [int("".join("1" if r[x, y] else "0" for x in range(n))[::-1], 2)
                    for y in range(n)]
            opens = []
            for s in range(1 << n):
                cl = 0
                rem = s
                while rem:
                    y = (rem & -rem).bit_length() - 1
                    rem &= rem - 1
                    cl |= cols[y]
                if cl == s:
                    opens.append(s)
            out.append(SetTopology(n, tuple(opens)))
    fams = {t.opens for t in out}
    if len(fams) != len(out):
        raise RuntimeError("preorder expansion produced duplicate topologies")
    out.sort(key=lambda t: (t.size, t.opens))
    return out


def brute_force_topologies(n: int) -> list[SetTopology]:
    """Independent oracle: filter every family of subsets of an n-set.

    Exponential in 2**n, so capped at three points; kept as the
    anti-hallucination cross-check for the preorder enumeration.
    """
    if not 1 <= n <= 3:
        raise ResourceLimitError("the naive family filter is capped at 3 points")
    full = (1 << n) - 1
    subsets = list(range(1 << n))
    out: list[SetTopology] = []
    for code in range(1 << len(subsets)):
        fam = [s for s in subsets if (code >> s) & 1]
        if 0 not in fam or full not in fam:
            continue
        fs = set(fam)
        if all(a & b in fs and a | b in fs for a in fam for b in fam):
            out.append(SetTopology(n, tuple(sorted(fam))))
    out.sort(key=lambda t: (t.size, t.opens))
    return out


def top_meet(t1: SetTopology, t2: SetTopology) -> SetTopology:
    """Meet in the lattice of topologies: intersect the families."""
    if t1.points != t2.points:
        raise InvalidArgumentError("topologies live on different point sets")
    return SetTopology(t1.points, tuple(sorted(set(t1.opens) & set(t2.opens))))


def top_join(t1: SetTopology, t2: SetTopology) -> SetTopology:
    """Join: close the union of the families under intersections and unions."""
    if t1.points != t2.points:
        raise InvalidArgumentError("topologies live on different point sets")
    fam = set(t1.opens) | set(t2.opens)
    while True:
        new = set()
        items = sorted(fam)
        for a in items:
            for b in items:
                if a & b not in fam:
                    new.add(a & b)
                if a | b not in fam:
                    new.add(a | b)
        if not new:
            return SetTopology(t1.points, tuple(sorted(fam)))
        fam |= new


def _family_mask(t: SetTopology) -> int:
    m = 0
    for s in t.opens:
        m |= 1 << s
    return m


def toplattice(n: int, *, caps: Caps = DEFAULT_CAPS) -> FiniteLattice:
    """The lattice of all topologies on n points, ordered by inclusion of
    open-set families (finer topologies are larger)."""
    if n > caps.settop_lattice_points:
        raise ResourceLimitError(
            f"full toplattice construction capped at {caps.settop_lattice_points} points"
        )
    tops = enumerate_topologies(n, caps=caps)
    masks = [_family_mask(t) for t in tops]
    size = len(tops)
    leq = np.empty((size, size), dtype=bool)
    for i, mi in enumerate(masks):
        row = leq[i]
        for j, mj in enumerate(masks):
            row[j] = mi & ~mj == 0
    return FiniteLattice(leq, labels=tops, caps=caps)


@dataclass
class ClassicalFactsReport:
    """Classical structure of the toplattice at one point count."""

    points: int
    count: int
    oracle_count: int | None
    distributive: CheckResult
    dual_birkhoff: CheckResult | None
    join_is_least_upper_bound: bool

    @property
    def passed(self) -> bool:
        if self.oracle_count is not None and self.oracle_count != self.count:
            return False
        if not self.join_is_least_upper_bound:
            return False
        if self.points >= 3 and self.distributive.holds:
            return False
        if self.points <= 2 and not self.distributive.holds:
            return False
        if self.dual_birkhoff is not None and not self.dual_birkhoff.holds:
            return False
        return True

    def to_dict(self) -> dict:
        return {
            "check": "toplattice-classical",
            "points": self.points,
            "count": self.count,
            "oracle_count": self.oracle_count,
            "distributive": {"holds": self.distributive.holds,
                             "witness": None if self.distributive.witness is None
                             else list(self.distributive.witness)},
            "dual_birkhoff": None if self.dual_birkhoff is None
            else {"holds": self.dual_birkhoff.holds,
                  "witness": None if self.dual_birkhoff.witness is None
                  else list(self.dual_birkhoff.witness)},
            "join_is_least_upper_bound": self.join_is_least_upper_bound,
            "passed": self.passed,
        }


def verify_classical_facts(n: int, *, caps: Caps = DEFAULT_CAPS) -> ClassicalFactsReport:
    """Build the full toplattice and check the classical facts about it.

    The enumeration count is compared against the naive oracle (three points
    or fewer), non-distributivity must show a witness from three points on,
    the dual Birkhoff property is swept over all pairs within its cap, and
    the pairwise family join must be the lattice's least upper bound.
    """
    lat = toplattice(n, caps=caps)
    tops: list[SetTopology] = list(lat.labels)  # type: ignore[arg-type]
    oracle = len(brute_force_topologies(n)) if n <= 3 else None
    distributive = is_distributive(lat)
    dual_b = has_dual_birkhoff(lat) if n <= caps.settop_birkhoff_points else None

    index = {t.opens: i for i, t in enumerate(tops)}
    join_ok = True
    for i, a in enumerate(tops):
        for j, b in enumerate(tops):
            if index[top_join(a, b).opens] != lat.join(i, j):
                join_ok = False
    return ClassicalFactsReport(
        points=n,
        count=len(tops),
        oracle_count=oracle,
        distributive=distributive,
        dual_birkhoff=dual_b,
        join_is_least_upper_bound=join_ok,
    )


def dump_topologies(tops: list[SetTopology]) -> str:
    """One line per topology: the open sets as sorted subset masks."""
    return "\n".join(" ".join(str(s) for s in t.opens) for t in tops) + "\n"


def parse_topology_dump(text: str, points: int) -> list[SetTopology]:
    return [SetTopology(points, tuple(int(v) for v in line.split()))
            for line in text.splitlines() if line.strip()]


def group_topology_as_set_topology(tau: GroupTopology) -> SetTopology:
    """The open-set family of a group topology, on the group's own points."""
    return SetTopology(tau.group.order, tuple(tau.open_sets()))


@dataclass
class EmbeddingReport:
    """How the group-topology lattice sits inside the full toplattice."""

    group_label: str
    pairs: int
    joins_agree: bool
    meet_disagreements: tuple[tuple[int, int], ...]

    @property
    def passed(self) -> bool:
        return self.joins_agree

    def to_dict(self) -> dict:
        return {
            "check": "toplattice-embedding",
            "group": self.group_label,
            "pairs": self.pairs,
            "joins_agree": self.joins_agree,
            "meet_disagreement_count": len(self.meet_disagreements),
            "meet_disagreements": [list(p) for p in self.meet_disagreements],
            "passed": self.passed,
        }


def embed_group_topologies(tl: TopologyLattice, *, caps: Caps = DEFAULT_CAPS,
                           label: str | None = None) -> EmbeddingReport:
    """Compare group-topology joins and meets with the ambient toplattice.

    Joins must agree pair by pair (the family join of two group topologies
    is again a group topology); pairs whose family meet differs from the
    group-topology meet are listed, with none expected at these orders.
    """
    g: FiniteGroup = tl.group
    if g.order > 4:
        raise ResourceLimitError("ambient toplattice comparison capped at order 4")
    sets = [group_topology_as_set_topology(t) for t in tl.topologies]
    lat = tl.lattice
    joins_agree = True
    disagreements: list[tuple[int, int]] = []
    pairs = 0
    for i in range(len(sets)):
        for j in range(len(sets)):
            pairs += 1
            if top_join(sets[i], sets[j]).opens != sets[lat.join(i, j)].opens:
                joins_agree = False
            if top_meet(sets[i], sets[j]).opens != sets[lat.meet(i, j)].opens:
                disagreements.append((i, j))
    name = label if label is not None else f"group-of-order-{g.order}"
    return EmbeddingReport(name, pairs, joins_agree, tuple(disagreements))
