import pytest

from holobrace.abelian import make_group
from holobrace.errors import InvalidInputError
from holobrace.presentations import DIHEDRAL, QUATERNION
from holobrace.regular import search_regular
from holobrace.structured import (
    StructuredRangeError,
    canonical_cyclic_pair,
    census_kernel_keys,
    instantiated_is_regular,
    solve_cyclic,
    solve_family,
    solve_rank2,
    subgroup_elements,
)

FAMILIES = (QUATERNION, DIHEDRAL)


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_solve_cyclic_counts(n, family):
    res = solve_cyclic(n, family)
    assert (res.r, res.c) == (1, 1)
    assert len(res.pairs) == 1


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("n", [5, 6, 7])
def test_solve_rank2_counts(n, family):
    res = solve_rank2(n, family)
    assert (res.r, res.c) == (16, 6)
    assert len(res.pairs) == 8
    assert res.class_sizes == (2, 2, 2, 2, 4, 4)


@pytest.mark.parametrize("family", FAMILIES)
def test_range_guards(family):
    with pytest.raises(StructuredRangeError):
        solve_cyclic(3, family)
    with pytest.raises(StructuredRangeError):
        solve_rank2(4, family)
    with pytest.raises(StructuredRangeError):
        solve_family(make_group([4, 4]), family)


@pytest.mark.parametrize("family", FAMILIES)
def test_canonical_pair_matches_solution(family):
    for n in (4, 5, 6):
        pair = canonical_cyclic_pair(n, family)
        assert instantiated_is_regular(pair)
        solved = solve_cyclic(n, family)
        assert subgroup_elements(pair) == subgroup_elements(solved.pairs[0])


@pytest.mark.parametrize("family", FAMILIES)
def test_cyclic_agrees_with_engine_subgroup_for_subgroup(family):
    for n in (4, 5):
        solved = solve_cyclic(n, family)
        engine = search_regular(make_group([1 << n]), solved.kind)
        assert census_kernel_keys(solved) == engine.keys


@pytest.mark.parametrize("family", FAMILIES)
def test_rank2_agrees_with_engine_subgroup_for_subgroup(family):
    solved = solve_rank2(5, family)
    engine = search_regular(make_group([2, 16]), solved.kind)
    assert census_kernel_keys(solved) == engine.keys
    assert engine.c == 6 and engine.r == 16
    assert sorted(c.orbit_size for c in engine.classes) == list(solved.class_sizes)


@pytest.mark.parametrize("family", FAMILIES)
def test_rank2_oracle_at_n6(family):
    solved = solve_rank2(6, family)
    engine = search_regular(make_group([2, 32]), solved.kind)
    assert census_kernel_keys(solved) == engine.keys
    assert (engine.r, engine.c) == (16, 6)


@pytest.mark.parametrize("family", FAMILIES)
def test_instantiation_property_up_to_bound(family, bound=12):
    """Every solved pair generates a regular subgroup of the right kind."""
    for n in range(4, bound + 1):
        pair = canonical_cyclic_pair(n, family)
        assert instantiated_is_regular(pair)
    for n in range(5, bound + 1):
        res = solve_rank2(n, family)
        for pair in res.pairs:
            assert instantiated_is_regular(pair)


@pytest.mark.parametrize("family", FAMILIES)
def test_pairs_classify_correctly(family):
    from holobrace.presentations import classify_subgroup
    from holobrace.structured import _closure

    for n in (5, 6):
        res = solve_rank2(n, family)
        pair = res.pairs[0]
        elems = list(_closure(list(pair.instantiate()), 2 * pair.kind.order).values())
        assert classify_subgroup(elems) == pair.kind


@pytest.mark.parametrize("family", FAMILIES)
def test_y_uniqueness(family):
    """For each solved X there is exactly one subgroup: solving over all Y
    never produces a second one."""
    n = 5
    res = solve_rank2(n, family)
    engine = search_regular(make_group([2, 16]), res.kind)
    # each subgroup contains exactly 2^{n-2} = 8 generators X of <x>, and
    # 16 subgroups carry all 2^{n+2} = 128 admissible X matrices
    x_orders = {}
    from holobrace.kernel import get_kernel

    kern = get_kernel(make_group([2, 16]))
    for sub in engine.subgroups:
        count = sum(1 for e in sub.elements if kern.order(e) == res.kind.x_order and kern.trans_index(e) != 0 and _generates_index2_cyclic(kern, e, res.kind))
        x_orders[sub.key] = count
    assert all(v == 8 for v in x_orders.values())


def _generates_index2_cyclic(kern, e, kind):
    # order 2^{n-1} with a faithful translation orbit
    pows = kern.power_list(e, kind.x_order)
    return len({kern.trans_index(p) for p in pows}) == kind.x_order


def test_fundamental_distinctness():
    for family in FAMILIES:
        res = solve_rank2(5, family)
        keys = {subgroup_elements(p) for p in res.pairs}
        assert len(keys) == 8


def test_solve_family_dispatch():
    assert solve_family(make_group([32]), QUATERNION).r == 1
    assert solve_family(make_group([2, 16]), DIHEDRAL).r == 16
    with pytest.raises(InvalidInputError):
        solve_family(make_group([3, 8]), QUATERNION)
