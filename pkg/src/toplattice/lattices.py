"""Generic finite-lattice engine.

A lattice is stored as an order matrix plus precomputed cover matrix and
meet/join tables; the property checkers below are triple- or pair-quantified
table scans, so the tables dominate the cost and are built once, vectorized.
Witnesses reported by the checkers are always the lexicographically least
violating tuple.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .config import Caps, DEFAULT_CAPS
from .errors import (
    InvalidArgumentError,
    InvalidIntervalError,
    NotALatticeError,
    NotAPosetError,
    ResourceLimitError,
)

__all__ = [
    "FiniteLattice",
    "Chain",
    "CheckResult",
    "JordanHolderReport",
    "build_lattice",
    "lattice_from_leq",
    "is_modular",
    "is_distributive",
    "is_semimodular",
    "is_dually_semimodular",
    "has_birkhoff",
    "has_dual_birkhoff",
    "maximal_chains",
    "jordan_holder_check",
    "k_maximal_elements",
    "refines",
    "is_refinable",
    "interval",
    "product_lattice",
    "are_isomorphic",
    "enumerate_lattices",
    "lattice_to_dot",
    "load_poset_json",
]

if sys.byteorder != "little":  # pragma: no cover - x86/arm only
    raise RuntimeError("bit-packed lattice kernels assume a little-endian host")


# ---------------------------------------------------------------------------
# packed-bitset helpers (bit j of word w = element index w*64 + j)


def _pack_rows(mat: np.ndarray) -> np.ndarray:
    n = mat.shape[1]
    words = (n + 63) // 64
    packed = np.packbits(mat, axis=1, bitorder="little")
    out = np.zeros((mat.shape[0], words * 8), dtype=np.uint8)
    out[:, : packed.shape[1]] = packed
    return np.ascontiguousarray(out).view(np.uint64)


def _log2_exact(x: np.ndarray) -> np.ndarray:
    # x holds exact powers of two below 2**32 (or zeros); log2 is exact there
    return np.rint(np.log2(np.maximum(x, 1).astype(np.float64))).astype(np.int64)


def _floor_log2_u32(x: np.ndarray) -> np.ndarray:
    return np.floor(np.log2(np.maximum(x, 1).astype(np.float64))).astype(np.int64)


_LOW32 = np.uint64(0xFFFFFFFF)
_SHIFT32 = np.uint64(32)


def _lowest_bits(rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per row: index of the lowest set bit, and whether any bit is set."""
    nz = rows != 0
    has = nz.any(axis=1)
    w = nz.argmax(axis=1)
    word = rows[np.arange(rows.shape[0]), w]
    lsb = word & (np.uint64(0) - word)
    lo = lsb & _LOW32
    hi = lsb >> _SHIFT32
    bit = np.where(lo != 0, _log2_exact(lo), 32 + _log2_exact(hi))
    return w * 64 + bit, has


def _highest_bits(rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per row: index of the highest set bit, and whether any bit is set."""
    nz = rows != 0
    has = nz.any(axis=1)
    w = rows.shape[1] - 1 - nz[:, ::-1].argmax(axis=1)
    word = rows[np.arange(rows.shape[0]), w]
    lo = word & _LOW32
    hi = word >> _SHIFT32
    bit = np.where(hi != 0, 32 + _floor_log2_u32(hi), _floor_log2_u32(lo))
    return w * 64 + bit, has


def _bool_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a.astype(np.float32) @ b.astype(np.float32)) > 0.5


# ---------------------------------------------------------------------------
# construction


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a lattice-law check; witness is the least violating tuple."""

    holds: bool
    witness: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.holds


class FiniteLattice:
    """Finite lattice: order matrix, cover matrix, meet and join tables."""

    __slots__ = ("size", "leq", "labels", "covers", "meet_table", "join_table",
                 "bottom", "top", "_preceq")

    def __init__(self, leq: np.ndarray, labels: Sequence | None = None, *,
                 caps: Caps = DEFAULT_CAPS) -> None:
        leq = np.ascontiguousarray(np.asarray(leq, dtype=bool))
        n = leq.shape[0]
        if leq.ndim != 2 or leq.shape != (n, n) or n == 0:
            raise InvalidArgumentError("order matrix must be square and non-empty")
        if n > caps.lattice_elements:
            raise ResourceLimitError(
                f"lattice size {n} exceeds cap {caps.lattice_elements}"
            )
        _check_poset(leq)
        covers, meet_t, join_t, bottom, top = _lattice_tables(leq)
        leq.setflags(write=False)
        covers.setflags(write=False)
        meet_t.setflags(write=False)
        join_t.setflags(write=False)
        object.__setattr__(self, "size", n)
        object.__setattr__(self, "leq", leq)
        object.__setattr__(self, "labels", tuple(labels) if labels is not None else tuple(range(n)))
        object.__setattr__(self, "covers", covers)
        object.__setattr__(self, "meet_table", meet_t)
        object.__setattr__(self, "join_table", join_t)
        object.__setattr__(self, "bottom", bottom)
        object.__setattr__(self, "top", top)
        object.__setattr__(self, "_preceq", covers | np.eye(n, dtype=bool))
        if len(self.labels) != n:
            raise InvalidArgumentError("labels length does not match size")

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("FiniteLattice is immutable")

    def __repr__(self) -> str:
        return f"FiniteLattice(size={self.size})"

    def le(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b])

    def meet(self, a: int, b: int) -> int:
        return int(self.meet_table[a, b])

    def join(self, a: int, b: int) -> int:
        return int(self.join_table[a, b])

    def big_meet(self, items: Iterable[int]) -> int:
        """Meet of a set; the empty meet is the top element."""
        acc = self.top
        for x in items:
            acc = int(self.meet_table[acc, x])
        return acc

    def big_join(self, items: Iterable[int]) -> int:
        """Join of a set; the empty join is the bottom element."""
        acc = self.bottom
        for x in items:
            acc = int(self.join_table[acc, x])
        return acc

    def is_cover(self, below: int, above: int) -> bool:
        return bool(self.covers[below, above])

    def preceq(self, below: int, above: int) -> bool:
        """below is above, or is covered by it."""
        return bool(self._preceq[below, above])

    def up_set(self, a: int) -> np.ndarray:
        return np.flatnonzero(self.leq[a])

    def down_set(self, a: int) -> np.ndarray:
        return np.flatnonzero(self.leq[:, a])

    def height(self) -> int:
        """Length of a longest chain from bottom to top."""
        order = np.argsort(self.leq.sum(axis=0), kind="stable")
        h = np.zeros(self.size, dtype=np.int64)
        for x in order:
            below = self.covers[:, x]
            if below.any():
                h[x] = h[below].max() + 1
        return int(h[self.top])


def _check_poset(leq: np.ndarray) -> None:
    n = leq.shape[0]
    if not leq.diagonal().all():
        i = int(np.flatnonzero(~leq.diagonal())[0])
        raise NotAPosetError(f"order not reflexive at element {i}")
    sym = leq & leq.T & ~np.eye(n, dtype=bool)
    if sym.any():
        i, j = map(int, np.argwhere(sym)[0])
        raise NotAPosetError(f"order not antisymmetric: {i} <= {j} <= {i}")
    reach = _bool_matmul(leq, leq)
    broken = reach & ~leq
    if broken.any():
        i, k = map(int, np.argwhere(broken)[0])
        raise NotAPosetError(f"order not transitive: {i} reaches {k} but {i} <= {k} fails")


def _lattice_tables(leq: np.ndarray):
    """Cover matrix, meet/join tables, bottom, top; raises NotALatticeError."""
    n = leq.shape[0]
    bottom_hits = np.flatnonzero(np.all(leq, axis=1))
    top_hits = np.flatnonzero(np.all(leq, axis=0))
    if len(bottom_hits) != 1:
        mins = np.flatnonzero(leq.sum(axis=0) == 1)
        a, b = (int(mins[0]), int(mins[1])) if len(mins) > 1 else (int(mins[0]), int(mins[0]))
        raise NotALatticeError(f"no minimum element; minimal elements include {a} and {b}")
    if len(top_hits) != 1:
        maxs = np.flatnonzero(leq.sum(axis=1) == 1)
        a, b = (int(maxs[0]), int(maxs[1])) if len(maxs) > 1 else (int(maxs[0]), int(maxs[0]))
        raise NotALatticeError(f"no maximum element; maximal elements include {a} and {b}")
    bottom, top = int(bottom_hits[0]), int(top_hits[0])

    lt = leq & ~np.eye(n, dtype=bool)
    covers = lt & ~_bool_matmul(lt, lt)

    n_below = leq.sum(axis=0)
    perm = np.argsort(n_below, kind="stable").astype(np.intp)
    inv = np.empty(n, dtype=np.intp)
    inv[perm] = np.arange(n)
    leq_t = leq[np.ix_(perm, perm)]
    up = _pack_rows(leq_t)
    down = _pack_rows(leq_t.T)

    join_int = np.empty((n, n), dtype=np.int32)
    meet_int = np.empty((n, n), dtype=np.int32)
    arange = np.arange(n)
    for a in range(n):
        ub = up & up[a][None, :]
        cand, has = _lowest_bits(ub)
        if not has.all():
            b = int(np.flatnonzero(~has)[0])
            raise NotALatticeError(
                f"elements {int(perm[a])} and {int(perm[b])} have no upper bound"
            )
        ok = ((up[cand] & ub) == ub).all(axis=1)
        if not ok.all():
            b = int(np.flatnonzero(~ok)[0])
            raise NotALatticeError(
                f"elements {int(perm[a])} and {int(perm[b])} have no least upper bound"
            )
        join_int[a] = cand

        lb = down & down[a][None, :]
        cand, has = _highest_bits(lb)
        if not has.all():
            b = int(np.flatnonzero(~has)[0])
            raise NotALatticeError(
                f"elements {int(perm[a])} and {int(perm[b])} have no lower bound"
            )
        ok = ((down[cand] & lb) == lb).all(axis=1)
        if not ok.all():
            b = int(np.flatnonzero(~ok)[0])
            raise NotALatticeError(
                f"elements {int(perm[a])} and {int(perm[b])} have no greatest lower bound"
            )
        meet_int[a] = cand

    perm32 = perm.astype(np.int32)
    join_t = np.empty((n, n), dtype=np.int32)
    meet_t = np.empty((n, n), dtype=np.int32)
    join_t[np.ix_(perm, perm)] = perm32[join_int]
    meet_t[np.ix_(perm, perm)] = perm32[meet_int]
    return covers, meet_t, join_t, bottom, top


def lattice_from_leq(leq: np.ndarray, labels: Sequence | None = None, *,
                     caps: Caps = DEFAULT_CAPS) -> FiniteLattice:
    return FiniteLattice(leq, labels, caps=caps)


def build_lattice(elements: Sequence, order: Callable[[object, object], bool] | np.ndarray,
                  *, caps: Caps = DEFAULT_CAPS) -> FiniteLattice:
    """Build and fully verify a lattice from elements and an order predicate.

    ``order`` may be a callable on element payloads or a precomputed boolean
    matrix.  Construction fails with a witness if the input is not a poset or
    some pair lacks a least upper or greatest lower bound.
    """
    n = len(elements)
    if isinstance(order, np.ndarray):
        leq = order
    else:
        leq = np.empty((n, n), dtype=bool)
        for i, a in enumerate(elements):
            for j, b in enumerate(elements):
                leq[i, j] = bool(order(a, b))
    return FiniteLattice(leq, labels=elements, caps=caps)


# ---------------------------------------------------------------------------
# law checkers


def is_modular(lat: FiniteLattice) -> CheckResult:
    """Check a or (b and c) = (a or b) and c for all triples with a <= c."""
    mt, jt = lat.meet_table, lat.join_table
    chunk = max(1, (1 << 20) // max(lat.size, 1))
    for a in range(lat.size):
        cs = np.flatnonzero(lat.leq[a])
        ja = jt[a]
        best: tuple[int, int] | None = None
        for lo in range(0, len(cs), chunk):
            cols = cs[lo:lo + chunk]
            mbc = mt[:, cols]
            lhs = ja[mbc]
            rhs = mt[ja[:, None], cols[None, :]]
            bad = lhs != rhs
            if bad.any():
                b, ci = map(int, np.argwhere(bad)[0])
                cand = (b, int(cols[ci]))
                if best is None or cand < best:
                    best = cand
        if best is not None:
            return CheckResult(False, (a, best[0], best[1]))
    return CheckResult(True)


def is_distributive(lat: FiniteLattice) -> CheckResult:
    """Check a and (b or c) = (a and b) or (a and c) for all triples."""
    mt, jt = lat.meet_table, lat.join_table
    for a in range(lat.size):
        ma = mt[a]
        lhs = ma[jt]
        rhs = jt[ma[:, None], ma[None, :]]
        bad = lhs != rhs
        if bad.any():
            b, c = map(int, np.argwhere(bad)[0])
            return CheckResult(False, (a, b, c))
    return CheckResult(True)


def is_semimodular(lat: FiniteLattice) -> CheckResult:
    """Upper covering condition: b covered by a forces b∨c ⪯ a∨c for every c."""
    jt = lat.join_table
    pre = lat._preceq
    for b, a in np.argwhere(lat.covers):
        ok = pre[jt[b], jt[a]]
        if not ok.all():
            c = int(np.flatnonzero(~ok)[0])
            return CheckResult(False, (int(b), int(a), c))
    return CheckResult(True)


def is_dually_semimodular(lat: FiniteLattice) -> CheckResult:
    """Lower covering condition: b covered by a forces b∧c ⪯ a∧c for every c."""
    mt = lat.meet_table
    pre = lat._preceq
    for b, a in np.argwhere(lat.covers):
        ok = pre[mt[b], mt[a]]
        if not ok.all():
            c = int(np.flatnonzero(~ok)[0])
            return CheckResult(False, (int(b), int(a), c))
    return CheckResult(True)


def has_dual_birkhoff(lat: FiniteLattice) -> CheckResult:
    """If a and b are both covered by a∨b then both cover a∧b."""
    mt, jt, cov = lat.meet_table, lat.join_table, lat.covers
    n = lat.size
    rng = np.arange(n)
    for a in range(n):
        j = jt[a]
        hyp = cov[a, j] & cov[rng, j]
        if not hyp.any():
            continue
        m = mt[a]
        ok = ~hyp | (cov[m, a] & cov[m, rng])
        if not ok.all():
            b = int(np.flatnonzero(~ok)[0])
            return CheckResult(False, (a, b))
    return CheckResult(True)


def has_birkhoff(lat: FiniteLattice) -> CheckResult:
    """If a and b both cover a∧b then both are covered by a∨b."""
    mt, jt, cov = lat.meet_table, lat.join_table, lat.covers
    n = lat.size
    rng = np.arange(n)
    for a in range(n):
        m = mt[a]
        hyp = cov[m, a] & cov[m, rng]
        if not hyp.any():
            continue
        j = jt[a]
        ok = ~hyp | (cov[a, j] & cov[rng, j])
        if not ok.all():
            b = int(np.flatnonzero(~ok)[0])
            return CheckResult(False, (a, b))
    return CheckResult(True)


# ---------------------------------------------------------------------------
# chains


@dataclass(frozen=True)
class Chain:
    """A strictly increasing sequence of lattice elements."""

    lattice: FiniteLattice
    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.elements:
            raise InvalidArgumentError("chain must be non-empty")
        for x, y in zip(self.elements, self.elements[1:]):
            if x == y or not self.lattice.le(x, y):
                raise InvalidArgumentError(f"chain elements {x}, {y} not strictly increasing")

    @property
    def length(self) -> int:
        """Number of links: elements minus one."""
        return len(self.elements) - 1

    @property
    def endpoints(self) -> tuple[int, int]:
        return self.elements[0], self.elements[-1]


def _interval_members(lat: FiniteLattice, a: int, b: int) -> np.ndarray:
    if not lat.le(a, b):
        raise InvalidIntervalError(f"{a} is not below {b}")
    return lat.leq[a] & lat.leq[:, b]


def maximal_chains(lat: FiniteLattice, a: int, b: int, *,
                   caps: Caps = DEFAULT_CAPS) -> list[Chain]:
    """All maximal chains of [a, b], by DFS over the cover graph of the
    interval, children visited in ascending element order."""
    member = _interval_members(lat, a, b)
    kids: dict[int, list[int]] = {}
    out: list[Chain] = []
    path = [a]

    def ups(x: int) -> list[int]:
        if x not in kids:
            kids[x] = [int(y) for y in np.flatnonzero(lat.covers[x] & member)]
        return kids[x]

    def walk(x: int) -> None:
        if x == b:
            if len(out) >= caps.chain_count:
                raise ResourceLimitError(
                    f"more than {caps.chain_count} maximal chains in the interval"
                )
            out.append(Chain(lat, tuple(path)))
            return
        for y in ups(x):
            path.append(y)
            walk(y)
            path.pop()

    sys.setrecursionlimit(max(sys.getrecursionlimit(), lat.size * 4 + 100))
    walk(a)
    return out


@dataclass(frozen=True)
class JordanHolderReport:
    """Uniform-length report for the maximal chains of one interval."""

    uniform: bool
    lengths: tuple[int, ...]
    length: int | None
    witness: tuple[Chain, Chain] | None


def _chain_length_masks(lat: FiniteLattice, member: np.ndarray, target: int) -> dict[int, int]:
    """For each interval element x, the bitmask of achievable maximal-chain
    lengths from x up to ``target`` along covers inside the interval."""
    nodes = np.flatnonzero(member)
    order = nodes[np.argsort(lat.leq.sum(axis=0)[nodes], kind="stable")]
    masks: dict[int, int] = {int(target): 1}
    for x in order[::-1]:
        x = int(x)
        if x == target:
            continue
        acc = 0
        for y in np.flatnonzero(lat.covers[x] & member):
            acc |= masks[int(y)] << 1
        masks[x] = acc
    return masks


def jordan_holder_check(lat: FiniteLattice, a: int, b: int) -> JordanHolderReport:
    """Whether all maximal chains of [a, b] share one length.

    Computed by dynamic programming over the cover graph (the set of
    achievable chain lengths per element), which agrees with enumerating
    every maximal chain but never materializes them.  On failure the report
    carries one shortest and one longest chain as witnesses.
    """
    member = _interval_members(lat, a, b)
    masks = _chain_length_masks(lat, member, b)
    lengths = tuple(i for i in range(masks[a].bit_length()) if (masks[a] >> i) & 1)
    if len(lengths) == 1:
        return JordanHolderReport(True, lengths, lengths[0], None)

    def walk(pick_min: bool) -> Chain:
        path = [a]
        want = lengths[0] if pick_min else lengths[-1]
        x, remaining = a, want
        while x != b:
            for y in np.flatnonzero(lat.covers[x] & member):
                y = int(y)
                if (masks[y] >> (remaining - 1)) & 1:
                    path.append(y)
                    x, remaining = y, remaining - 1
                    break
            else:  # pragma: no cover - DP guarantees a successor
                raise RuntimeError("length mask inconsistent")
        return Chain(lat, tuple(path))

    return JordanHolderReport(False, lengths, None, (walk(True), walk(False)))


def k_maximal_elements(lat: FiniteLattice, k: int) -> tuple[int, ...]:
    """Elements whose maximal chains up to the top all have length exactly k."""
    if k < 0:
        raise InvalidArgumentError("k must be non-negative")
    member = np.ones(lat.size, dtype=bool)
    masks = _chain_length_masks(lat, member, lat.top)
    return tuple(x for x in range(lat.size) if masks[x] == (1 << k))


def refines(c: Chain, d: Chain) -> bool:
    """True iff c refines d: same endpoints, d inside c, c inside d's span."""
    if c.lattice is not d.lattice:
        raise InvalidArgumentError("chains live in different lattices")
    if c.endpoints != d.endpoints:
        raise InvalidArgumentError("chains must share endpoints")
    if not set(d.elements) <= set(c.elements):
        return False
    lo, hi = d.endpoints
    return all(c.lattice.le(lo, x) and c.lattice.le(x, hi) for x in c.elements)


def is_refinable(c: Chain) -> int | None:
    """The least element strictly insertable between consecutive chain
    entries, or None when the chain admits no proper refinement."""
    lat = c.lattice
    best: int | None = None
    for x, y in zip(c.elements, c.elements[1:]):
        between = lat.leq[x] & lat.leq[:, y]
        between[x] = between[y] = False
        hits = np.flatnonzero(between)
        if len(hits):
            z = int(hits[0])
            best = z if best is None else min(best, z)
    return best


# ---------------------------------------------------------------------------
# derived lattices


def interval(lat: FiniteLattice, a: int, b: int, *, caps: Caps = DEFAULT_CAPS) -> FiniteLattice:
    """The interval [a, b] as a lattice with induced order and labels."""
    idx = np.flatnonzero(_interval_members(lat, a, b))
    leq = lat.leq[np.ix_(idx, idx)]
    labels = [lat.labels[int(i)] for i in idx]
    return FiniteLattice(leq, labels, caps=caps)


def interval_indices(lat: FiniteLattice, a: int, b: int) -> tuple[int, ...]:
    """Ambient indices of the interval [a, b], ascending."""
    return tuple(int(i) for i in np.flatnonzero(_interval_members(lat, a, b)))


def product_lattice(l1: FiniteLattice, l2: FiniteLattice, *,
                    caps: Caps = DEFAULT_CAPS) -> FiniteLattice:
    """Cartesian product with componentwise order; (i, j) has index i*|L2|+j."""
    n = l1.size * l2.size
    if n > caps.lattice_elements:
        raise ResourceLimitError(f"product size {n} exceeds cap {caps.lattice_elements}")
    leq = np.kron(l1.leq.astype(np.uint8), l2.leq.astype(np.uint8)).astype(bool)
    labels = [(x, y) for x in l1.labels for y in l2.labels]
    return FiniteLattice(leq, labels, caps=caps)


def are_isomorphic(l1: FiniteLattice, l2: FiniteLattice, *,
                   caps: Caps = DEFAULT_CAPS) -> list[int] | None:
    """Order-isomorphism witness (image list) or None.

    Uses cover-graph digraph isomorphism (VF2 via networkx) after cheap
    invariant screening; a found mapping is re-verified against both order
    matrices before being returned.
    """
    if l1.size != l2.size:
        return None
    if l1.size > caps.lattice_iso_elements:
        raise ResourceLimitError(
            f"lattice isomorphism search capped at {caps.lattice_iso_elements} elements"
        )
    if int(l1.covers.sum()) != int(l2.covers.sum()):
        return None

    def profile(lat: FiniteLattice) -> list[tuple[int, ...]]:
        return sorted(
            zip(
                lat.covers.sum(axis=0).tolist(),
                lat.covers.sum(axis=1).tolist(),
                lat.leq.sum(axis=0).tolist(),
                lat.leq.sum(axis=1).tolist(),
            )
        )

    if profile(l1) != profile(l2):
        return None

    import networkx as nx

    def digraph(lat: FiniteLattice) -> "nx.DiGraph":
        g = nx.DiGraph()
        g.add_nodes_from(range(lat.size))
        g.add_edges_from((int(i), int(j)) for i, j in np.argwhere(lat.covers))
        return g

    matcher = nx.algorithms.isomorphism.DiGraphMatcher(digraph(l1), digraph(l2))
    if not matcher.is_isomorphic():
        return None
    mapping = [matcher.mapping[i] for i in range(l1.size)]
    perm = np.asarray(mapping, dtype=np.intp)
    if not np.array_equal(l2.leq[np.ix_(perm, perm)], l1.leq):  # pragma: no cover
        raise RuntimeError("isomorphism backend returned a non-order-preserving map")
    return mapping


# ---------------------------------------------------------------------------
# exhaustive small-lattice generation (for checker self-consistency sweeps)


def _labeled_lattices(n: int):
    """Yield the down-set masks of every labeled lattice on 0..n-1 whose
    numbering is a linear extension with 0 the bottom element."""
    if n == 1:
        yield [1]
        return

    def closed_downsets(down: list[int], i: int) -> list[int]:
        out = []
        for d in range(1, 1 << i):
            if not d & 1:
                continue
            ok = True
            rem = d
            while rem:
                j = (rem & -rem).bit_length() - 1
                rem &= rem - 1
                if down[j] & ~d:
                    ok = False
                    break
            if ok:
                out.append(d)
        return out

    def meets_ok(down: list[int], cand: int, i: int) -> bool:
        full = cand | (1 << i)
        for j in range(i):
            t = full & down[j]
            m = t.bit_length() - 1
            if t & ~down[m]:
                return False
        return True

    def rec(down: list[int]):
        i = len(down)
        if i == n:
            covered = 0
            for j in range(n):
                covered |= down[j] & ~(1 << j)
            maxima = ((1 << n) - 1) & ~covered
            if maxima.bit_count() == 1:
                yield list(down)
            return
        for cand in closed_downsets(down, i):
            if meets_ok(down, cand, i):
                down.append(cand | (1 << i))
                yield from rec(down)
                down.pop()

    yield from rec([1])


def enumerate_lattices(max_size: int, *, caps: Caps = DEFAULT_CAPS) -> list[FiniteLattice]:
    """All lattices with at most max_size elements, up to isomorphism.

    Generated by extending topologically numbered down-set systems that keep
    every pair's meet unique, then requiring a unique maximal element; a
    finite meet-semilattice with a top is a lattice.
    """
    if max_size < 1:
        raise InvalidArgumentError("max_size must be at least 1")
    if max_size > 7:
        raise ResourceLimitError("exhaustive lattice generation capped at 7 elements")
    found: list[FiniteLattice] = []
    for n in range(1, max_size + 1):
        reps: list[FiniteLattice] = []
        for down in _labeled_lattices(n):
            leq = np.zeros((n, n), dtype=bool)
            for j in range(n):
                rem = down[j]
                while rem:
                    i = (rem & -rem).bit_length() - 1
                    rem &= rem - 1
                    leq[i, j] = True
            lat = FiniteLattice(leq, caps=caps)
            if not any(are_isomorphic(lat, other, caps=caps) for other in reps):
                reps.append(lat)
        found.extend(reps)
    return found


# ---------------------------------------------------------------------------
# interchange


def lattice_to_dot(lat: FiniteLattice, label_of: Callable[[object], str] = str) -> str:
    """Hasse diagram in DOT form: nodes labeled, edges are covers, bottom at
    rank 0 (drawn bottom-up)."""
    lines = ["digraph lattice {", "  rankdir=BT;", "  node [shape=box];"]
    for i in range(lat.size):
        text = label_of(lat.labels[i]).replace('"', "'")
        lines.append(f'  n{i} [label="{text}"];')
    for i, j in np.argwhere(lat.covers):
        lines.append(f"  n{int(i)} -> n{int(j)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def load_poset_json(data: dict) -> np.ndarray:
    """Order matrix from {'size', 'leq'} or {'size', 'covers'} JSON.

    Cover input is closed reflexively and transitively before validation.
    """
    if "size" not in data:
        raise InvalidArgumentError("poset JSON requires a 'size' field")
    n = int(data["size"])
    if "leq" in data:
        leq = np.asarray(data["leq"], dtype=bool)
        if leq.shape != (n, n):
            raise InvalidArgumentError("leq matrix shape does not match size")
        return leq
    if "covers" in data:
        leq = np.eye(n, dtype=bool)
        for i, j in data["covers"]:
            if not (0 <= i < n and 0 <= j < n):
                raise InvalidArgumentError(f"cover pair ({i},{j}) out of range")
            leq[i, j] = True
        for k in range(n):
            leq |= leq[:, k][:, None] & leq[k, :][None, :]
        return leq
    raise InvalidArgumentError("poset JSON requires 'leq' or 'covers'")


def poset_json_from_path(path: str) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        return load_poset_json(json.load(fh))
