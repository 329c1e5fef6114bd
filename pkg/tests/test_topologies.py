from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from toplattice.errors import InvalidArgumentError, ResourceLimitError
from toplattice.groups import (
    SubgroupSet,
    all_normal_subgroups,
    all_subgroups,
    direct_product,
    make_cyclic,
    make_dihedral,
    make_elementary_abelian,
    make_quaternion,
    make_symmetric,
    product_embeddings,
    subgroup_generated,
)
from toplattice.lattices import are_isomorphic, is_distributive, is_modular
from toplattice.topologies import (
    GroupTopology,
    analyze,
    decompose_product_topology,
    join_topologies,
    meet_topologies,
    prodanov_lattice,
    quotient_topology,
    restrict,
    saturate,
    topology_lattice,
    topology_lattice_dot,
    verify_cover_transfer,
    verify_meet_basis,
    verify_merzon,
    verify_product_decomposition,
    verify_quotient_meet,
    verify_restriction_join,
    verify_saturation_join,
    verify_semimodular_transfer,
)


def test_topology_requires_normal_kernel(s3):
    transposition = next(x for x in range(6) if s3.power(x, 2) == 0 and x != 0)
    h = subgroup_generated(s3, [transposition])
    with pytest.raises(InvalidArgumentError):
        GroupTopology(s3, h)


def test_prime_cyclic_is_two_chain():
    for p in (2, 3, 5, 7):
        tl = topology_lattice(make_cyclic(p))
        assert len(tl.topologies) == 2
        assert tl.lattice.height() == 1
        assert tl.lattice.bottom == tl.antidiscrete_index
        assert tl.lattice.top == tl.discrete_index


def test_klein_lattice_is_diamond(klein, diamond):
    tl = topology_lattice(klein)
    assert len(tl.topologies) == 5
    assert are_isomorphic(tl.lattice, diamond) is not None
    assert is_modular(tl.lattice).holds
    assert not is_distributive(tl.lattice).holds


def test_s3_lattice_is_three_chain(s3):
    tl = topology_lattice(s3)
    assert len(tl.topologies) == 3
    assert tl.lattice.height() == 2
    kernels = sorted(t.kernel.size for t in tl.topologies)
    assert kernels == [1, 3, 6]


def test_order_anti_isomorphism(q8):
    tl = topology_lattice(q8)
    for i, s in enumerate(tl.topologies):
        for j, t in enumerate(tl.topologies):
            assert tl.lattice.le(i, j) == (t.kernel.mask & ~s.kernel.mask == 0)


def test_join_meet_kernels_exhaustive(d4):
    tl = topology_lattice(d4)
    lat = tl.lattice
    for i, s in enumerate(tl.topologies):
        for j, t in enumerate(tl.topologies):
            join_kernel = tl.topologies[lat.join(i, j)].kernel
            assert join_kernel.mask == s.kernel.mask & t.kernel.mask
            meet_kernel = tl.topologies[lat.meet(i, j)].kernel
            assert meet_topologies(s, t).kernel.mask == meet_kernel.mask
            assert join_topologies(s, t).kernel.mask == join_kernel.mask


def test_restrict(z2z4):
    tl = topology_lattice(z2z4)
    n = [h for h in all_subgroups(z2z4) if h.size == 4][0]
    for t in tl.topologies:
        r = restrict(t, n)
        assert r.group.order == 4
        assert r.kernel.size == bin(t.kernel.mask & n.mask).count("1")
    discrete = tl.topologies[tl.discrete_index]
    assert restrict(discrete, n).is_discrete
    anti = tl.topologies[tl.antidiscrete_index]
    assert restrict(anti, n).is_antidiscrete


def test_restrict_diagonal():
    g = direct_product(make_cyclic(2), make_cyclic(2))
    left, right = product_embeddings(g)
    diag = SubgroupSet.from_indices(g, [0, 3])
    tau = GroupTopology(g, diag)
    assert restrict(tau, left).kernel.size == 1
    assert restrict(tau, right).kernel.size == 1


def test_quotient_topology(s3):
    tl = topology_lattice(s3)
    a3 = next(t.kernel for t in tl.topologies if t.kernel.size == 3)
    tau = GroupTopology(s3, a3)
    q = quotient_topology(tau, a3)
    assert q.group.order == 2 and q.is_discrete
    anti = tl.topologies[tl.antidiscrete_index]
    assert quotient_topology(anti, a3).is_antidiscrete
    trivial = SubgroupSet.trivial(s3)
    for t in tl.topologies:
        qt = quotient_topology(t, trivial)
        assert qt.kernel.size == t.kernel.size


def test_saturate(z2z4):
    tl = topology_lattice(z2z4)
    trivial = SubgroupSet.trivial(z2z4)
    for t in tl.topologies:
        assert saturate(t, trivial) == t
    discrete = tl.topologies[tl.discrete_index]
    for n in all_normal_subgroups(z2z4):
        assert saturate(discrete, n).kernel.mask == n.mask


def test_monotone_operators(d4):
    tl = topology_lattice(d4)
    subs = all_subgroups(d4)
    normals = all_normal_subgroups(d4)
    for i, s in enumerate(tl.topologies):
        for j, t in enumerate(tl.topologies):
            if not tl.lattice.le(i, j):
                continue
            for n in subs:
                assert restrict(s, n).le(restrict(t, n))
            for n in normals:
                assert quotient_topology(s, n).le(quotient_topology(t, n))


@pytest.mark.parametrize("build,label", [
    (lambda: make_elementary_abelian(2, 2), "klein"),
    (lambda: make_quaternion(), "q8"),
    (lambda: make_dihedral(4), "d4"),
    (lambda: make_symmetric(3), "s3"),
    (lambda: direct_product(make_cyclic(2), make_cyclic(4)), "z2z4"),
])
def test_sweeps_pass(build, label):
    g = build()
    assert verify_merzon(g, label=label).passed
    assert verify_restriction_join(g, label=label).passed
    assert verify_quotient_meet(g, label=label).passed
    assert verify_saturation_join(g, label=label).passed
    assert verify_cover_transfer(g, label=label).passed
    assert verify_meet_basis(g, label=label).passed
    assert verify_semimodular_transfer(g, label=label).passed


def test_cover_transfer_heisenberg(heis3):
    rep = verify_cover_transfer(heis3)
    assert rep.passed and rep.checked > 0


def test_semimodular_transfer_z3q8():
    g = direct_product(make_cyclic(3), make_quaternion())
    rep = verify_semimodular_transfer(g)
    assert rep.passed
    assert rep.details["semimodular"] is True


def test_decompose_coprime_product():
    g = direct_product(make_cyclic(3), make_quaternion())
    tl = topology_lattice(g)
    for t in tl.topologies:
        dec = decompose_product_topology(g, t)
        assert dec.success
        nh = g.product.right.order
        rebuilt = {a * nh + b for a in dec.left.kernel.indices
                   for b in dec.right.kernel.indices}
        assert rebuilt == set(t.kernel.indices)


def test_decompose_diagonal_witness():
    g = direct_product(make_cyclic(2), make_cyclic(2))
    tau = GroupTopology(g, SubgroupSet.from_indices(g, [0, 3]))
    dec = decompose_product_topology(g, tau)
    assert not dec.success and dec.witness == 3
    with pytest.raises(InvalidArgumentError):
        decompose_product_topology(make_cyclic(4), GroupTopology(
            make_cyclic(4), SubgroupSet.trivial(make_cyclic(4))))


def test_product_verification_report():
    g = direct_product(make_elementary_abelian(3, 2), make_dihedral(4))
    caps = __import__("toplattice.config", fromlist=["DEFAULT_CAPS"]).DEFAULT_CAPS.with_max_order(128)
    rep = verify_product_decomposition(g, caps=caps)
    assert rep.passed
    assert rep.details["topologies"] == 36
    assert rep.details["isomorphic"] and rep.details["modular"]


def test_prodanov_reports(klein, z6):
    rep = prodanov_lattice(klein)
    assert len(rep.coatoms) == 3
    assert rep.closure_failure_count == 3
    assert all(len(b) == 2 for b in rep.closure_failures)
    assert rep.closure_laws_ok
    assert rep.closure(rep.closure_failures[0]) == frozenset(rep.coatoms)
    assert rep.closure([]) == frozenset()

    rep6 = prodanov_lattice(z6)
    assert rep6.closure_failure_count == 0
    for g in (make_cyclic(4), make_cyclic(9)):
        r = prodanov_lattice(g)
        assert len(r.coatoms) == 1 and r.closure_failure_count == 0


def test_prodanov_closure_laws_exhaustive(klein):
    rep = prodanov_lattice(klein)
    import itertools
    coats = rep.coatoms
    for r in range(len(coats) + 1):
        for b in itertools.combinations(coats, r):
            cl = rep.closure(b)
            assert set(b) <= cl
            assert rep.closure(cl) == cl
            for c in itertools.combinations(coats, r):
                if set(b) <= set(c):
                    assert cl <= rep.closure(c)


def test_analyze_reports(q8, s3):
    rep = analyze(q8, label="q8")
    assert rep.nilpotency_class == 2
    assert rep.semimodular.holds and rep.jordan_holder_uniform
    assert rep.modular.holds  # normal subgroup lattices are modular
    assert rep.passed
    rep = analyze(s3, label="s3")
    assert rep.nilpotency_class is None
    assert rep.passed
    d = rep.to_dict()
    assert d["group"] == "s3" and d["k_maximal_sizes"] == [1, 1, 1]


def test_topology_lattice_dot(q8):
    tl = topology_lattice(q8)
    dot = topology_lattice_dot(tl)
    assert dot.count("label=") == 6
    assert "{0,1}" in dot  # the center's kernel label


def test_enumeration_cap():
    with pytest.raises(ResourceLimitError):
        topology_lattice(direct_product(make_elementary_abelian(3, 2), make_dihedral(4)))


def test_trivial_and_tiny_groups_edge_cases():
    z1 = make_cyclic(1)
    tl = topology_lattice(z1)
    assert len(tl.topologies) == 1
    assert tl.discrete_index == tl.antidiscrete_index == 0
    for sweep in (verify_merzon, verify_restriction_join, verify_quotient_meet,
                  verify_saturation_join, verify_cover_transfer,
                  verify_meet_basis, verify_semimodular_transfer):
        assert sweep(z1).passed
    rep = prodanov_lattice(z1)
    assert rep.coatoms == () and rep.closure_laws_ok
    assert analyze(z1).passed
    z2 = make_cyclic(2)
    rep2 = prodanov_lattice(z2)
    assert len(rep2.coatoms) == 1 and rep2.closure_failure_count == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 9), st.integers(0, 9))
def test_meet_join_against_subgroup_arithmetic(i, j):
    g = make_dihedral(6)
    tl = topology_lattice(g)
    n = len(tl.topologies)
    s, t = tl.topologies[i % n], tl.topologies[j % n]
    join = join_topologies(s, t)
    meet = meet_topologies(s, t)
    assert join.kernel.mask == s.kernel.mask & t.kernel.mask
    generated = subgroup_generated(g, list(s.kernel.indices) + list(t.kernel.indices))
    assert meet.kernel.mask == generated.mask
