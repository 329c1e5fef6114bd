from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from toplattice.errors import InvalidArgumentError, PreconditionError
from toplattice.groups import (
    all_normal_subgroups,
    all_subgroups,
    is_normal,
    make_cyclic,
    make_dihedral,
    make_quaternion,
    make_symmetric,
    subgroup_generated,
)
from toplattice.pontryagin import (
    NeighborhoodFamily,
    check_conditions,
    family_from_json,
    generate_topology,
    verify_pontryagin_roundtrip,
)


def test_family_validation(s3):
    with pytest.raises(InvalidArgumentError):
        NeighborhoodFamily(s3, ())
    with pytest.raises(InvalidArgumentError):
        NeighborhoodFamily.from_indices(s3, [[1, 2]])  # missing identity


def test_singleton_identity_family(q8):
    fam = NeighborhoodFamily.from_indices(q8, [[0]])
    rep = check_conditions(fam)
    assert rep.basis_ok() and rep.hausdorff
    assert generate_topology(fam).is_discrete


def test_whole_group_family(q8):
    fam = NeighborhoodFamily(q8, ((1 << 8) - 1,))
    rep = check_conditions(fam)
    assert rep.basis_ok() and not rep.hausdorff
    assert generate_topology(fam).is_antidiscrete


def test_non_normal_fails_conjugation(s3):
    transposition = next(x for x in range(6)
                         if x != 0 and s3.power(x, 2) == 0)
    h = subgroup_generated(s3, [transposition])
    fam = NeighborhoodFamily(s3, (h.mask,))
    rep = check_conditions(fam)
    assert not rep.conditions["iv"].holds
    x = rep.conditions["iv"].witness_element
    # the witness really conjugates the subgroup out of itself
    assert any(not h.contains(s3.conjugate(x, t)) for t in h.indices)
    with pytest.raises(PreconditionError):
        generate_topology(fam)


def test_non_subgroup_set_fails_products():
    z3 = make_cyclic(3)
    fam = NeighborhoodFamily.from_indices(z3, [[0, 1]])
    rep = check_conditions(fam)
    assert not rep.conditions["i"].holds
    assert rep.conditions["i"].witness_set == 0


def test_two_set_family(s3):
    a3 = next(h for h in all_normal_subgroups(s3) if h.size == 3)
    fam = NeighborhoodFamily(s3, ((1 << 6) - 1, a3.mask))
    rep = check_conditions(fam)
    assert rep.basis_ok()
    tau = generate_topology(fam)
    assert tau.kernel.mask == a3.mask


@pytest.mark.parametrize("build", [
    lambda: make_quaternion(),
    lambda: make_dihedral(4),
    lambda: make_symmetric(3),
    lambda: make_cyclic(12),
    lambda: make_dihedral(6),
])
def test_roundtrip_sweep(build):
    g = build()
    rep = verify_pontryagin_roundtrip(g)
    assert rep.passed
    assert rep.checked == len(all_subgroups(g))


def test_hausdorff_iff_discrete(d4):
    for h in all_normal_subgroups(d4):
        fam = NeighborhoodFamily(d4, (h.mask,))
        rep = check_conditions(fam)
        tau = generate_topology(fam)
        assert rep.hausdorff == tau.is_discrete == (h.size == 1)


def test_family_from_json(q8):
    from toplattice.groups import group_to_json
    fam = family_from_json({"group": "Q8", "sets": [[0, 1]]})
    assert fam.group == q8
    assert generate_topology(fam).kernel.indices == (0, 1)
    fam2 = family_from_json({"group": group_to_json(q8), "sets": [[0], [0, 1]]})
    assert len(fam2.sets) == 2
    with pytest.raises(InvalidArgumentError):
        family_from_json({"sets": [[0]]})
    with pytest.raises(InvalidArgumentError):
        family_from_json({"group": 7, "sets": [[0]]})


@settings(max_examples=50, deadline=None)
@given(st.lists(st.sets(st.integers(0, 7)), min_size=1, max_size=3))
def test_generated_kernel_is_always_normal(sets):
    """Whenever the basis conditions pass, the intersection must come out a
    normal subgroup; the generator asserts this soundness internally."""
    g = make_dihedral(4)
    fam = NeighborhoodFamily.from_indices(g, [s | {0} for s in sets])
    rep = check_conditions(fam)
    if rep.basis_ok():
        tau = generate_topology(fam)
        assert is_normal(g, tau.kernel)
        inter = fam.sets[0]
        for m in fam.sets[1:]:
            inter &= m
        assert tau.kernel.mask == inter
