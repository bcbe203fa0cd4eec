import json

import pytest

from holobrace.abelian import make_group, parse_group
from holobrace.brace import (
    BraceTable,
    brace_from_subgroup,
    brace_violation,
    lambda_is_homomorphism,
    verify_brace,
    ybe_solution,
)
from holobrace.errors import InvalidInputError
from holobrace.holomorph import hol_from_translation, to_kernel
from holobrace.kernel import get_kernel
from holobrace.presentations import TargetKind, parse_kind
from holobrace.regular import _subgroup, search_regular


def translation_subgroup(orders):
    g = make_group(orders)
    kern = get_kernel(g)
    elems = [to_kernel(hol_from_translation(g, v)) for v in g.elements()]
    return _subgroup(kern, TargetKind("quaternion", 2, max(1, g.odd_order)), elems)


def test_trivial_brace_from_translations():
    bt = brace_from_subgroup(translation_subgroup([8]))
    assert verify_brace(bt)
    assert bt.is_trivial()


def test_cyclic_canonical_quaternion_brace():
    res = search_regular(make_group([16]), parse_kind("q16"))
    bt = brace_from_subgroup(res.subgroups[0])
    assert verify_brace(bt)
    assert not bt.is_trivial()
    # multiplicative group is Q16, additive is C16
    assert res.subgroups[0].kind == parse_kind("q16")


def test_verify_brace_negative_control():
    bt = brace_from_subgroup(translation_subgroup([8]))
    rows = [list(r) for r in bt.circ]
    rows[3][4], rows[3][5] = rows[3][5], rows[3][4]  # corrupt one row
    bad = BraceTable(bt.group, tuple(tuple(r) for r in rows), bt.lam)
    assert not verify_brace(bad)
    assert brace_violation(bad) is not None


def test_all_small_braces_verify():
    checked = 0
    for nspec, kind in [("c8", "q8"), ("c2xc4", "q8"), ("c2xc4", "d8"), ("c8", "d8"),
                        ("c4", "q4"), ("c2xc2", "d4"), ("c16", "d16"), ("c2xc8", "q16")]:
        res = search_regular(parse_group(nspec), parse_kind(kind))
        for cls in res.classes:
            bt = brace_from_subgroup(cls.representative)
            assert verify_brace(bt)
            assert lambda_is_homomorphism(bt)
            checked += 1
    assert checked >= 10


def test_lambda_reconstructs_subgroup():
    """a -> (a, lambda_a) recovers exactly the subgroup's elements."""
    g = parse_group("c2xc8")
    kern = get_kernel(g)
    res = search_regular(g, parse_kind("d16"))
    sub = res.subgroups[0]
    bt = brace_from_subgroup(sub)
    # g_a acts as b -> a o b, so the circ rows are exactly the subgroup's perms
    rebuilt = {tuple(bt.circ[a]) for a in range(g.order)}
    original = {tuple(kern.apply(e, b) for b in range(g.order)) for e in sub.elements}
    assert rebuilt == original


def test_brace_from_non_regular_rejected():
    g = make_group([8])
    kern = get_kernel(g)
    # duplicate translation parts: not regular
    elems = [to_kernel(hol_from_translation(g, (v % 4,))) for v in range(8)]
    sub = _subgroup(kern, parse_kind("q8"), elems)
    with pytest.raises(InvalidInputError):
        brace_from_subgroup(sub)


def test_ybe_trivial_brace_is_flip():
    bt = brace_from_subgroup(translation_subgroup([2, 4]))
    sol = ybe_solution(bt)
    n = bt.size
    assert all(sol.apply(x, y) == (y, x) for x in range(n) for y in range(n))


def test_ybe_checks_hold_for_order8_braces():
    for nspec, kind in [("c8", "q8"), ("c2xc4", "q8"), ("c2xc4", "d8"), ("c2xc2xc2", "d8")]:
        res = search_regular(parse_group(nspec), parse_kind(kind))
        for cls in res.classes:
            sol = ybe_solution(brace_from_subgroup(cls.representative))
            assert sol.left_bijective and sol.right_bijective


def test_conjugate_subgroups_give_isomorphic_braces():
    """Aut-conjugacy matches brace isomorphism (checked by direct search)."""
    g = parse_group("c2xc8")
    res = search_regular(g, parse_kind("d16"))
    from holobrace.endo import aut_apply, enumerate_aut

    auts = list(enumerate_aut(g))
    elems = list(g.elements())
    index = {e: i for i, e in enumerate(elems)}

    def braces_isomorphic(b1, b2):
        for aut in auts:
            perm = [index[aut_apply(g, aut, e)] for e in elems]
            if all(
                perm[b1.circ[a][b]] == b2.circ[perm[a]][perm[b]]
                for a in range(len(elems))
                for b in range(len(elems))
            ):
                return True
        return False

    reps = [brace_from_subgroup(c.representative) for c in res.classes]
    # distinct classes: pairwise non-isomorphic braces
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            assert not braces_isomorphic(reps[i], reps[j])
    # same class: conjugate subgroup gives an isomorphic brace
    cls = res.classes[0]
    same_orbit = [s for s in res.subgroups if s.key != cls.representative.key]
    partner = next(
        s
        for s in same_orbit
        if braces_isomorphic(brace_from_subgroup(cls.representative), brace_from_subgroup(s))
    )
    assert partner is not None


def test_brace_export_json():
    bt = brace_from_subgroup(translation_subgroup([8]))
    payload = json.loads(bt.dump())
    assert payload["schema"] == "v1"
    assert payload["factors"] == [8]
    assert len(payload["circ"]) == 8 and all(len(r) == 8 for r in payload["circ"])
