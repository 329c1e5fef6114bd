from __future__ import annotations

import json
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import (
    brute_force_lattice_count,
    brute_force_maximal_chain_lengths,
    brute_force_posets,
    is_lattice_poset,
)
from toplattice.errors import (
    InvalidArgumentError,
    InvalidIntervalError,
    NotALatticeError,
    NotAPosetError,
    ResourceLimitError,
)
from toplattice.config import DEFAULT_CAPS
from toplattice.lattices import (
    Chain,
    FiniteLattice,
    are_isomorphic,
    build_lattice,
    enumerate_lattices,
    has_birkhoff,
    has_dual_birkhoff,
    interval,
    is_distributive,
    is_dually_semimodular,
    is_modular,
    is_refinable,
    is_semimodular,
    jordan_holder_check,
    k_maximal_elements,
    lattice_from_leq,
    lattice_to_dot,
    load_poset_json,
    maximal_chains,
    product_lattice,
    refines,
)


def test_build_lattice_from_predicate():
    subs = [frozenset(), frozenset({1}), frozenset({2}), frozenset({1, 2})]
    lat = build_lattice(subs, lambda a, b: a <= b)
    assert lat.size == 4
    assert lat.labels[lat.bottom] == frozenset()
    assert lat.labels[lat.top] == frozenset({1, 2})
    assert is_distributive(lat).holds


def test_single_element_lattice():
    lat = lattice_from_leq(np.ones((1, 1), dtype=bool))
    assert lat.bottom == lat.top == 0
    assert maximal_chains(lat, 0, 0)[0].length == 0


def test_poset_axioms_rejected():
    bad = np.array([[1, 1], [1, 1]], dtype=bool)  # antisymmetry fails
    with pytest.raises(NotAPosetError):
        lattice_from_leq(bad)
    bad = np.eye(3, dtype=bool)
    bad[0, 1] = bad[1, 2] = True  # transitivity fails
    with pytest.raises(NotAPosetError):
        lattice_from_leq(bad)
    bad = np.eye(2, dtype=bool)
    bad[0, 0] = False
    with pytest.raises(NotAPosetError):
        lattice_from_leq(bad)


def test_not_a_lattice_witnesses():
    # two maximal elements: no top
    leq = np.eye(3, dtype=bool)
    leq[0, 1] = leq[0, 2] = True
    with pytest.raises(NotALatticeError):
        lattice_from_leq(leq)
    # bowtie: pair with two minimal upper bounds
    leq = np.eye(6, dtype=bool)
    for i, j in [(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)]:
        leq[i, j] = True
    for k in range(6):
        leq |= leq[:, k][:, None] & leq[k, :][None, :]
    with pytest.raises(NotALatticeError):
        lattice_from_leq(leq)


def test_meet_join_identities(diamond):
    lat = diamond
    for x in range(lat.size):
        assert lat.meet(lat.top, x) == x
        assert lat.join(lat.bottom, x) == x
    assert lat.big_meet([]) == lat.top
    assert lat.big_join([]) == lat.bottom
    assert lat.big_meet([1, 2, 3]) == lat.bottom
    assert lat.big_join([1, 2]) == lat.top


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
def test_lattice_algebra_properties(a, b, c):
    leq = np.eye(5, dtype=bool)
    for i, j in [(0, 1), (1, 4), (0, 2), (2, 3), (3, 4)]:
        leq[i, j] = True
    for k in range(5):
        leq |= leq[:, k][:, None] & leq[k, :][None, :]
    lat = lattice_from_leq(leq)
    assert lat.meet(a, b) == lat.meet(b, a)
    assert lat.join(a, b) == lat.join(b, a)
    assert lat.meet(a, lat.meet(b, c)) == lat.meet(lat.meet(a, b), c)
    assert lat.join(a, lat.join(b, c)) == lat.join(lat.join(a, b), c)
    assert lat.join(a, lat.meet(a, b)) == a
    assert lat.meet(a, lat.join(a, b)) == a


def test_pentagon_classification(pentagon):
    r = is_modular(pentagon)
    assert not r.holds
    a, b, c = r.witness
    # the witness really violates the law and is lexicographically least
    lat = pentagon
    assert lat.le(a, c)
    assert lat.join(a, lat.meet(b, c)) != lat.meet(lat.join(a, b), c)
    for aa in range(lat.size):
        for bb in range(lat.size):
            for cc in range(lat.size):
                if lat.le(aa, cc) and lat.join(aa, lat.meet(bb, cc)) != lat.meet(lat.join(aa, bb), cc):
                    assert (a, b, c) <= (aa, bb, cc)
                    break
            else:
                continue
            break
    assert not is_distributive(pentagon).holds
    assert not is_semimodular(pentagon).holds
    assert pentagon.join(1, 2) == pentagon.top


def test_diamond_classification(diamond):
    assert is_modular(diamond).holds
    r = is_distributive(diamond)
    assert not r.holds
    a, b, c = r.witness
    assert diamond.meet(a, diamond.join(b, c)) != diamond.join(diamond.meet(a, b), diamond.meet(a, c))


def test_chain_lattices_modular():
    for n in (1, 2, 5):
        leq = np.triu(np.ones((n, n), dtype=bool))
        lat = lattice_from_leq(leq)
        assert is_modular(lat).holds
        assert is_semimodular(lat).holds and is_dually_semimodular(lat).holds
        assert has_birkhoff(lat).holds and has_dual_birkhoff(lat).holds


def test_centered_hexagon(centered_hexagon):
    assert is_semimodular(centered_hexagon).holds
    assert not is_dually_semimodular(centered_hexagon).holds
    assert not is_modular(centered_hexagon).holds
    assert jordan_holder_check(centered_hexagon, 0, 6).uniform


def test_modular_implies_cover_conditions(boolean3, diamond):
    for lat in (boolean3, diamond):
        assert is_semimodular(lat).holds
        assert is_dually_semimodular(lat).holds
        assert has_birkhoff(lat).holds
        assert has_dual_birkhoff(lat).holds


def test_maximal_chains(boolean3, diamond, pentagon):
    b2 = product_lattice(_chain(2), _chain(2))
    chains = maximal_chains(b2, b2.bottom, b2.top)
    assert len(chains) == 2 and all(c.length == 2 for c in chains)
    chains = maximal_chains(diamond, 0, 4)
    assert len(chains) == 3 and all(c.length == 2 for c in chains)
    assert len(maximal_chains(boolean3, boolean3.bottom, boolean3.top)) == 6
    lens = sorted(c.length for c in maximal_chains(pentagon, 0, 4))
    assert lens == [2, 3]
    with pytest.raises(InvalidIntervalError):
        maximal_chains(pentagon, 4, 0)


def _chain(n: int) -> FiniteLattice:
    return lattice_from_leq(np.triu(np.ones((n, n), dtype=bool)))


def test_chain_count_cap(boolean3):
    from dataclasses import replace
    capped = replace(DEFAULT_CAPS, chain_count=3)
    with pytest.raises(ResourceLimitError):
        maximal_chains(boolean3, boolean3.bottom, boolean3.top, caps=capped)


def test_jordan_holder(pentagon, centered_hexagon, diamond):
    rep = jordan_holder_check(pentagon, 0, 4)
    assert not rep.uniform and rep.lengths == (2, 3)
    w1, w2 = rep.witness
    assert {w1.length, w2.length} == {2, 3}
    assert jordan_holder_check(diamond, 0, 4).length == 2
    assert jordan_holder_check(centered_hexagon, 0, 6).length == 3
    # uniform on every interval of a modular lattice
    for a in range(diamond.size):
        for b in range(diamond.size):
            if diamond.le(a, b):
                assert jordan_holder_check(diamond, a, b).uniform


def test_maximal_chains_are_non_refinable(pentagon, centered_hexagon, diamond):
    for lat in (pentagon, centered_hexagon, diamond):
        for c in maximal_chains(lat, lat.bottom, lat.top):
            assert is_refinable(c) is None


def test_jordan_holder_matches_enumeration(pentagon, centered_hexagon, boolean3):
    for lat in (pentagon, centered_hexagon, boolean3):
        for a in range(lat.size):
            for b in range(lat.size):
                if not lat.le(a, b):
                    continue
                listed = sorted({c.length for c in maximal_chains(lat, a, b)})
                rep = jordan_holder_check(lat, a, b)
                assert list(rep.lengths) == listed
                oracle = sorted(set(brute_force_maximal_chain_lengths(lat.leq, a, b)))
                assert listed == oracle


def test_k_maximal(boolean3, pentagon):
    assert k_maximal_elements(boolean3, 0) == (boolean3.top,)
    assert len(k_maximal_elements(boolean3, 1)) == 3
    assert len(k_maximal_elements(boolean3, 2)) == 3
    assert k_maximal_elements(boolean3, 3) == (boolean3.bottom,)
    # k-sets are disjoint antichains
    seen: set[int] = set()
    for k in range(4):
        elems = k_maximal_elements(boolean3, k)
        assert not (seen & set(elems))
        seen |= set(elems)
        for x in elems:
            for y in elems:
                assert x == y or not boolean3.le(x, y)
    # coatoms of N5: every maximal chain from them to top has length 1
    coats = k_maximal_elements(pentagon, 1)
    assert set(coats) == {1, 3}


def test_refines_and_refinable(pentagon):
    full = Chain(pentagon, (0, 2, 3, 4))
    partial = Chain(pentagon, (0, 3, 4))
    assert refines(full, partial)
    assert refines(full, full)
    assert not refines(partial, Chain(pentagon, (0, 2, 4)))
    assert is_refinable(full) is None  # made of covers
    # 0 < 3 < 4 refines by inserting 2
    assert is_refinable(partial) == 2
    assert is_refinable(Chain(pentagon, (0, 1, 4))) is None
    assert not refines(full, Chain(pentagon, (0, 1, 4)))  # 1 never joins full
    with pytest.raises(InvalidArgumentError):
        refines(full, Chain(pentagon, (0, 3)))  # endpoint mismatch
    with pytest.raises(InvalidArgumentError):
        Chain(pentagon, (1, 0))


def test_interval_and_product(diamond, pentagon):
    assert are_isomorphic(interval(diamond, 0, 4), diamond) is not None
    sub = interval(pentagon, 0, 3)
    assert sub.size == 3
    b2 = product_lattice(_chain(2), _chain(2))
    subs = [frozenset(), frozenset({1}), frozenset({2}), frozenset({1, 2})]
    boolean2 = build_lattice(subs, lambda a, b: a <= b)
    assert are_isomorphic(b2, boolean2) is not None
    # products preserve modularity
    prod = product_lattice(_chain(3), diamond)
    assert is_modular(prod).holds
    # and a product with a non-modular factor is non-modular
    assert not is_modular(product_lattice(_chain(2), pentagon)).holds


def test_are_isomorphic(diamond, pentagon):
    assert are_isomorphic(diamond, pentagon) is None
    relabeled = lattice_from_leq(diamond.leq[np.ix_([4, 2, 0, 1, 3], [4, 2, 0, 1, 3])])
    mapping = are_isomorphic(diamond, relabeled)
    assert mapping is not None
    perm = np.asarray(mapping)
    assert np.array_equal(relabeled.leq[np.ix_(perm, perm)], diamond.leq)


def test_enumerate_lattices_counts():
    lats = enumerate_lattices(5)
    counts = Counter(l.size for l in lats)
    for n in (1, 2, 3, 4, 5):
        assert counts[n] == brute_force_lattice_count(n)
    # pairwise non-isomorphic within each size
    by_size: dict[int, list] = {}
    for lat in lats:
        by_size.setdefault(lat.size, []).append(lat)
    for group in by_size.values():
        for i, a in enumerate(group):
            for b in group[i + 1:]:
                assert are_isomorphic(a, b) is None


def test_constructor_agrees_with_lattice_oracle():
    """Over every labeled poset on 4 points, construction succeeds exactly
    when the brute-force oracle says the poset is a lattice, and the tables
    agree with oracle bounds."""
    for leq in brute_force_posets(4):
        if is_lattice_poset(leq):
            lat = lattice_from_leq(leq)
            for a in range(4):
                for b in range(4):
                    j, m = lat.join(a, b), lat.meet(a, b)
                    assert leq[a, j] and leq[b, j]
                    assert all(leq[j, c] for c in range(4) if leq[a, c] and leq[b, c])
                    assert leq[m, a] and leq[m, b]
                    assert all(leq[c, m] for c in range(4) if leq[c, a] and leq[c, b])
        else:
            with pytest.raises(NotALatticeError):
                lattice_from_leq(leq)


def test_poset_brute_force_is_sane():
    # labeled poset counts on up to 4 points: 1, 3, 19, 219
    assert [len(brute_force_posets(n)) for n in (1, 2, 3, 4)] == [1, 3, 19, 219]
    # the only 3-element lattices are chains: one per labeling
    assert sum(is_lattice_poset(m) for m in brute_force_posets(3)) == 6


def test_dot_export(diamond):
    dot = lattice_to_dot(diamond)
    assert dot.count("label=") == 5
    assert dot.count("->") == 6
    assert dot.splitlines()[0] == "digraph lattice {"


def test_load_poset_json(tmp_path):
    leq = load_poset_json({"size": 3, "covers": [[0, 1], [1, 2]]})
    lat = lattice_from_leq(leq)
    assert lat.bottom == 0 and lat.top == 2
    leq2 = load_poset_json({"size": 2, "leq": [[True, True], [False, True]]})
    assert lattice_from_leq(leq2).size == 2
    with pytest.raises(InvalidArgumentError):
        load_poset_json({"covers": [[0, 1]]})
    path = tmp_path / "poset.json"
    path.write_text(json.dumps({"size": 2, "covers": [[0, 1]]}))
    from toplattice.lattices import poset_json_from_path
    assert lattice_from_leq(poset_json_from_path(str(path))).size == 2
