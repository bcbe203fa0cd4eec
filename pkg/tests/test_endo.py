import itertools

import pytest

from holobrace.abelian import make_group
from holobrace.endo import (
    endo_apply,
    endo_compose,
    enumerate_aut,
    identity_endo,
    invert,
    is_unit,
    make_endo,
    sylow_p_aut,
    zero_endo,
    aut_order,
)
from holobrace.errors import CapacityError, InvalidInputError


def gl_count_oracle(r, p=2):
    """Brute-force count of invertible r x r matrices over F_p."""

    def rank(rows):
        m = [list(row) for row in rows]
        rk = 0
        for col in range(r):
            piv = next((i for i in range(rk, r) if m[i][col] % p), None)
            if piv is None:
                continue
            m[rk], m[piv] = m[piv], m[rk]
            inv = pow(m[rk][col], -1, p)
            for i in range(r):
                if i != rk and m[i][col]:
                    f = (m[i][col] * inv) % p
                    m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rk])]
            rk += 1
        return rk

    count = 0
    for flat in itertools.product(range(p), repeat=r * r):
        rows = [flat[i * r : (i + 1) * r] for i in range(r)]
        if rank(rows) == r:
            count += 1
    return count


def test_endo_apply_identity_and_zero():
    g = make_group([2, 8])
    ident = identity_endo(2, (1, 3))
    zero = zero_endo(2, (1, 3))
    for e in g.elements():
        assert endo_apply(ident, e) == e
        assert endo_apply(zero, e) == (0, 0)


def test_endo_apply_row_moduli():
    # rows [1,1],[4,1] on C2 x C8: row 1 mod 2, row 2 mod 8
    m = make_endo(2, (1, 3), [[1, 1], [4, 1]])
    assert endo_apply(m, (1, 1)) == (0, 5)


def test_divisibility_constraint_enforced():
    with pytest.raises(InvalidInputError):
        make_endo(2, (1, 3), [[1, 0], [2, 1]])  # (2,1) entry must be divisible by 4
    make_endo(2, (1, 3), [[1, 0], [4, 1]])  # and 4 is fine


def test_kernel_of_representation():
    # adding p^{a_i} multiples to entries does not change the canonical matrix
    base = make_endo(2, (1, 3), [[1, 1], [4, 3]])
    lifted = make_endo(2, (1, 3), [[1 + 2, 1 + 2], [4 + 8, 3 + 8]])
    assert base == lifted
    g = make_group([2, 8])
    for e in g.elements():
        assert endo_apply(base, e) == endo_apply(lifted, e)


def test_compose_identity_and_nilpotent():
    m = make_endo(2, (1, 3), [[1, 1], [4, 3]])
    ident = identity_endo(2, (1, 3))
    assert endo_compose(m, ident) == m
    nil = make_endo(2, (1, 1), [[0, 1], [0, 0]])
    assert endo_compose(nil, nil) == zero_endo(2, (1, 1))


def test_is_unit_examples():
    assert is_unit(identity_endo(2, (1, 3)))
    assert not is_unit(zero_endo(2, (1, 3)))


def test_unit_count_c2xc8():
    # |Aut(C2 x C8)| = 2^4
    assert enumerate_aut(make_group([2, 8])).order == 16


def test_enumerate_aut_against_gl_oracle():
    assert enumerate_aut(make_group([2, 2, 2])).order == gl_count_oracle(3) == 168
    assert enumerate_aut(make_group([2, 2])).order == gl_count_oracle(2) == 6
    assert enumerate_aut(make_group([3])).order == 2


@pytest.mark.slow
def test_enumerate_aut_gl4_oracle():
    assert enumerate_aut(make_group([2, 2, 2, 2])).order == gl_count_oracle(4) == 20160


def test_enumerate_aut_orders_table():
    # the |Aut(N)| values behind the order-16 table rows
    assert enumerate_aut(make_group([16])).order == 8
    assert enumerate_aut(make_group([4, 4])).order == 96
    assert enumerate_aut(make_group([2, 2, 4])).order == 192
    assert enumerate_aut(make_group([4, 8])).order == 128


def test_enumerate_aut_cap():
    with pytest.raises(CapacityError):
        enumerate_aut(make_group([2, 2, 2, 2]), cap=1000)


def test_aut_order_uses_phi_for_odd_cyclic():
    assert aut_order(make_group([3])) == 2
    assert aut_order(make_group([9])) == 6
    assert aut_order(make_group([3, 8])) == 2 * 4
    assert aut_order(make_group([5, 2, 8])) == 4 * 16


def test_sylow_p_aut_counts():
    # C2^4: unitriangular binary matrices, 2^6 of them
    p4 = sylow_p_aut(make_group([2, 2, 2, 2]), 2)
    assert len(p4) == 64
    # C16 (rank 1): every unit is 1 mod 2
    p1 = sylow_p_aut(make_group([16]), 2)
    assert len(p1) == 8
    # C2 x C8: |Aut| = 16 is a 2-group, so P is everything
    p2 = sylow_p_aut(make_group([2, 8]), 2)
    assert len(p2) == 16
    assert {m for m in p2} == set(enumerate_aut(make_group([2, 8])).blocks[0])


def test_sylow_p_aut_is_exact_p_part():
    for orders in ([2, 2], [2, 4], [2, 2, 2], [4, 4], [2, 2, 4], [16]):
        g = make_group(orders)
        total = enumerate_aut(g).order
        p_part = 1
        while total % 2 == 0:
            total //= 2
            p_part *= 2
        assert len(sylow_p_aut(g, 2)) == p_part


def test_sylow_p_aut_members_are_units():
    for m in sylow_p_aut(make_group([2, 2, 4]), 2):
        assert is_unit(m)


def test_invert_examples():
    ident = identity_endo(2, (4,))
    assert invert(ident) == ident
    three = make_endo(2, (4,), [[3]])
    assert invert(three) == make_endo(2, (4,), [[11]])
    with pytest.raises(InvalidInputError):
        invert(zero_endo(2, (4,)))


def test_invert_random_units_by_search():
    g = make_group([2, 8])
    block = enumerate_aut(g).blocks[0]
    ident = identity_endo(2, (1, 3))
    for m in block[::3]:
        inv = invert(m)
        # oracle: the inverse is the unique unit composing to the identity
        matches = [u for u in block if endo_compose(m, u) == ident]
        assert matches == [inv]


@pytest.mark.parametrize(
    "orders", [[2], [4], [2, 2], [8], [2, 4], [2, 2, 2], [16], [2, 8], [4, 4], [2, 2, 4], [3], [9], [3, 3], [27], [3, 9]]
)
def test_ring_hom_soundness(orders):
    """apply(compose(M1, M2), g) = apply(M1, apply(M2, g)) for all g."""
    g = make_group(orders)
    p = g.primes[0]
    exps = g.exponents(p)
    mats = _matrix_sample(p, exps, limit=24)
    elems = list(g.elements())
    for m1 in mats:
        for m2 in mats:
            comp = endo_compose(m1, m2)
            for e in elems:
                assert endo_apply(comp, e) == endo_apply(m1, endo_apply(m2, e))


def _matrix_sample(p, exps, limit):
    """Deterministic spread of valid matrices, all of them when few."""
    r = len(exps)
    ranges = []
    for i in range(r):
        for j in range(r):
            step = p ** max(0, exps[i] - exps[j])
            ranges.append(range(0, p ** exps[i], step))
    all_flat = list(itertools.product(*ranges))
    if len(all_flat) > limit:
        stride = len(all_flat) // limit
        all_flat = all_flat[::stride][:limit]
    return [
        make_endo(p, exps, [flat[i * r : (i + 1) * r] for i in range(r)]) for flat in all_flat
    ]


@pytest.mark.parametrize("orders", [[4], [2, 2], [2, 4], [8], [2, 2, 2], [9], [3, 3], [2, 8], [4, 4]])
def test_unit_criterion_matches_bijectivity(orders):
    """is_unit(M) iff the induced map is a bijection on N, exhaustively."""
    g = make_group(orders)
    p = g.primes[0]
    exps = g.exponents(p)
    elems = list(g.elements())
    r = len(exps)
    ranges = []
    for i in range(r):
        for j in range(r):
            step = p ** max(0, exps[i] - exps[j])
            ranges.append(range(0, p ** exps[i], step))
    for flat in itertools.product(*ranges):
        m = make_endo(p, exps, [flat[i * r : (i + 1) * r] for i in range(r)])
        images = {endo_apply(m, e) for e in elems}
        assert is_unit(m) == (len(images) == len(elems))


def test_autgroup_closure_spotcheck():
    assert enumerate_aut(make_group([2, 4])).verify()
    assert enumerate_aut(make_group([2, 2, 2])).verify()


def test_autgroup_generators_generate():
    g = make_group([2, 2, 2])
    autgroup = enumerate_aut(g)
    gens = autgroup.generators()
    assert gens
    block = set(autgroup.blocks[0])
    closure = {identity_endo(2, (1, 1, 1))}
    frontier = list(closure)
    while frontier:
        cur = frontier.pop()
        for gen in gens:
            for nxt in (endo_compose(cur, gen[0]), endo_compose(gen[0], cur)):
                if nxt not in closure:
                    closure.add(nxt)
                    frontier.append(nxt)
    assert closure == block


def test_endo_json_roundtrip():
    from holobrace.endo import from_json

    m = make_endo(2, (1, 3), [[1, 1], [4, 3]])
    assert from_json(m.to_json()) == m
