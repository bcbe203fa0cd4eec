"""Matrix model of End(N) and Aut(N) for finite abelian p-groups.

An endomorphism of Z/p^{a_1} x ... x Z/p^{a_r} (a_1 <= ... <= a_r) is an
r x r matrix whose (i, j) entry is a residue mod p^{a_i}, with the entry
divisible by p^{a_i - a_j} whenever a_i > a_j.  Units are exactly the
matrices whose mod-p reduction is invertible; they form Aut(N).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as _product
from math import prod

from . import config
from .abelian import Element, GroupSpec
from .errors import CapacityError, InternalConsistencyError, InvalidInputError


@dataclass(frozen=True)
class EndoMatrix:
    p: int
    exponents: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.exponents)

    def flat(self) -> tuple[int, ...]:
        return tuple(v for row in self.rows for v in row)

    def to_json(self) -> dict:
        return {"p": self.p, "exponents": list(self.exponents), "rows": [list(r) for r in self.rows]}


def make_endo(p: int, exponents, rows) -> EndoMatrix:
    """Reduce an integer matrix into canonical form and validate it.

    Rows are reduced mod p^{a_i}; the divisibility constraint must hold after
    reduction or the matrix does not define an endomorphism.
    """
    exponents = tuple(exponents)
    r = len(exponents)
    if len(rows) != r or any(len(row) != r for row in rows):
        raise InvalidInputError(f"need a {r}x{r} matrix, got {rows!r}")
    reduced = tuple(
        tuple(int(rows[i][j]) % p ** exponents[i] for j in range(r)) for i in range(r)
    )
    for i in range(r):
        for j in range(r):
            d = exponents[i] - exponents[j]
            if d > 0 and reduced[i][j] % p**d:
                raise InvalidInputError(
                    f"entry ({i},{j})={reduced[i][j]} not divisible by {p}^{d}"
                )
    return EndoMatrix(p, exponents, reduced)


def from_json(data: dict) -> EndoMatrix:
    return make_endo(data["p"], tuple(data["exponents"]), data["rows"])


def identity_endo(p: int, exponents) -> EndoMatrix:
    r = len(exponents)
    return make_endo(p, exponents, [[int(i == j) for j in range(r)] for i in range(r)])


def zero_endo(p: int, exponents) -> EndoMatrix:
    r = len(exponents)
    return make_endo(p, exponents, [[0] * r for _ in range(r)])


def endo_apply(m: EndoMatrix, g: Element) -> Element:
    """Matrix-vector product with row-i arithmetic mod p^{a_i}."""
    if len(g) != m.rank:
        raise InvalidInputError(f"element {g!r} has wrong length for rank {m.rank}")
    p = m.p
    return tuple(
        sum(m.rows[i][j] * g[j] for j in range(m.rank)) % p ** m.exponents[i]
        for i in range(m.rank)
    )


def endo_compose(m1: EndoMatrix, m2: EndoMatrix) -> EndoMatrix:
    """Matrix product, canonical form: apply(compose(m1, m2), g) = m1(m2(g))."""
    if (m1.p, m1.exponents) != (m2.p, m2.exponents):
        raise InvalidInputError("matrices live over different p-groups")
    r = m1.rank
    rows = [
        [sum(m1.rows[i][k] * m2.rows[k][j] for k in range(r)) for j in range(r)]
        for i in range(r)
    ]
    return make_endo(m1.p, m1.exponents, rows)


def endo_add(m1: EndoMatrix, m2: EndoMatrix) -> EndoMatrix:
    if (m1.p, m1.exponents) != (m2.p, m2.exponents):
        raise InvalidInputError("matrices live over different p-groups")
    rows = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(m1.rows, m2.rows)]
    return make_endo(m1.p, m1.exponents, rows)


def _invertible_mod_p(rows, p: int, r: int) -> bool:
    """Gaussian elimination over F_p."""
    m = [[v % p for v in row] for row in rows]
    for col in range(r):
        pivot = next((i for i in range(col, r) if m[i][col]), None)
        if pivot is None:
            return False
        m[col], m[pivot] = m[pivot], m[col]
        inv = pow(m[col][col], -1, p)
        for i in range(col + 1, r):
            f = (m[i][col] * inv) % p
            if f:
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[col])]
    return True


def is_unit(m: EndoMatrix) -> bool:
    """True iff the mod-p reduction is invertible over F_p."""
    return _invertible_mod_p(m.rows, m.p, m.rank)


def _inverse_mod_p(rows, p: int, r: int) -> list[list[int]]:
    aug = [[rows[i][j] % p for j in range(r)] + [int(i == j) for j in range(r)] for i in range(r)]
    for col in range(r):
        pivot = next(i for i in range(col, r) if aug[i][col])
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = pow(aug[col][col], -1, p)
        aug[col] = [(v * inv) % p for v in aug[col]]
        for i in range(r):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [(a - f * b) % p for a, b in zip(aug[i], aug[col])]
    return [row[r:] for row in aug]


def invert(m: EndoMatrix) -> EndoMatrix:
    """Inverse of a unit, by Newton lifting of the mod-p inverse."""
    if not is_unit(m):
        raise InvalidInputError("matrix is not a unit")
    p, r = m.p, m.rank
    q = p ** m.exponents[-1]
    a = [list(row) for row in m.rows]
    x = _inverse_mod_p(m.rows, p, r)
    prec = 1
    while p**prec < q:
        # X <- X (2I - A X), doubling the precision each pass
        ax = [[sum(a[i][k] * x[k][j] for k in range(r)) % q for j in range(r)] for i in range(r)]
        t = [[(2 * (i == j) - ax[i][j]) % q for j in range(r)] for i in range(r)]
        x = [[sum(x[i][k] * t[k][j] for k in range(r)) % q for j in range(r)] for i in range(r)]
        prec *= 2
    out = make_endo(p, m.exponents, x)
    check = endo_compose(m, out)
    if check != identity_endo(p, m.exponents):
        raise InternalConsistencyError("Newton lift failed to produce an inverse")
    return out


# -- enumeration -------------------------------------------------------------


def _column_pool(spec: GroupSpec, j: int) -> list[Element]:
    """Elements of order dividing p^{a_j}: the legal j-th columns."""
    p = spec.primes[0]
    a_j = spec.exponents(p)[j]
    pool = []
    for g in spec.elements():
        if all(v * p**a_j % q == 0 for v, q in zip(g, spec.factors)):
            pool.append(g)
    return pool


def _unit_block(spec: GroupSpec, cap: int) -> tuple[EndoMatrix, ...]:
    """All units of End(N_p), canonically sorted."""
    p = spec.primes[0]
    exps = spec.exponents(p)
    r = len(exps)
    pools = [_column_pool(spec, j) for j in range(r)]
    n_cand = prod(len(pool) for pool in pools)
    if n_cand > cap:
        raise CapacityError(
            f"prime block p={p}, exponents {exps}: {n_cand} candidates exceed cap {cap}",
            needed=n_cand,
            cap=cap,
        )
    units = []
    for cols in _product(*pools):
        rows = tuple(tuple(cols[j][i] for j in range(r)) for i in range(r))
        if _invertible_mod_p(rows, p, r):
            units.append(EndoMatrix(p, exps, rows))
    units.sort(key=lambda m: m.flat())
    return tuple(units)


# An automorphism of a general N is a tuple of per-prime blocks, aligned with
# GroupSpec.primes.
Aut = tuple[EndoMatrix, ...]


@dataclass(frozen=True)
class AutGroup:
    group: GroupSpec
    blocks: tuple[tuple[EndoMatrix, ...], ...]

    @property
    def order(self) -> int:
        return prod(len(b) for b in self.blocks) if self.blocks else 1

    def __iter__(self):
        if not self.blocks:
            return iter([()])
        return _product(*self.blocks)

    def identity(self) -> Aut:
        return tuple(identity_endo(b[0].p, b[0].exponents) for b in self.blocks)

    def generators(self) -> tuple[Aut, ...]:
        """A small generating set, greedily extracted in canonical order."""
        gens: list[Aut] = []
        for k, block in enumerate(self.blocks):
            for m in _block_generators(block):
                aut = list(self.identity())
                aut[k] = m
                gens.append(tuple(aut))
        return tuple(gens)

    def verify(self, stride: int = 101) -> bool:
        """Spot-check closure under composition and inverses."""
        for block in self.blocks:
            members = set(block)
            picks = block[::stride] if len(block) > stride else block
            for m in picks:
                if invert(m) not in members:
                    return False
                for m2 in picks:
                    if endo_compose(m, m2) not in members:
                        return False
        return True


def _block_generators(block: tuple[EndoMatrix, ...]) -> list[EndoMatrix]:
    """Greedy generators for one unit block (deterministic candidate order)."""
    if len(block) == 1:
        return []
    ident = identity_endo(block[0].p, block[0].exponents)
    gens: list[EndoMatrix] = []
    closure = {ident}
    for cand in block:
        if cand in closure:
            continue
        gens.append(cand)
        frontier = [cand]
        closure.add(cand)
        while frontier:
            cur = frontier.pop()
            for g in gens:
                for nxt in (endo_compose(cur, g), endo_compose(g, cur)):
                    if nxt not in closure:
                        closure.add(nxt)
                        frontier.append(nxt)
        if len(closure) == len(block):
            break
    return gens


@lru_cache(maxsize=None)
def _enumerate_aut_cached(group: GroupSpec, cap: int) -> AutGroup:
    blocks = tuple(_unit_block(group.component(p), cap) for p in group.primes)
    return AutGroup(group, blocks)


def enumerate_aut(group: GroupSpec, cap: int | None = None) -> AutGroup:
    """Exhaustive Aut(N), one canonical representative per unit.

    Mixed-order groups get one block per prime; iteration yields the product.
    """
    return _enumerate_aut_cached(group, cap if cap is not None else config.aut_candidate_cap())


def aut_order(group: GroupSpec, cap: int | None = None) -> int:
    """|Aut(N)|; odd cyclic blocks use phi directly, others are enumerated."""
    total = 1
    for p in group.primes:
        comp = group.component(p)
        exps = comp.exponents(p)
        if len(exps) == 1:
            total *= p ** exps[0] - p ** (exps[0] - 1)
        else:
            total *= len(_enumerate_aut_cached(comp, cap or config.aut_candidate_cap()).blocks[0])
    return total


def sylow_p_aut(group: GroupSpec, p: int, cap: int | None = None) -> tuple[EndoMatrix, ...]:
    """The distinguished Sylow p-subgroup of Aut(N): units whose mod-p
    reduction is unipotent upper triangular."""
    if group.primes != (p,):
        raise InvalidInputError(f"{group} is not a {p}-group")
    cap = cap if cap is not None else config.aut_candidate_cap()
    exps = group.exponents(p)
    r = len(exps)
    ranges = []
    for i in range(r):
        for j in range(r):
            mod = p ** exps[i]
            if i == j:
                ranges.append(range(1, mod, p))  # diagonal: 1 mod p
            elif i > j:
                step = p ** max(1, exps[i] - exps[j])  # below: 0 mod p and divisible
                ranges.append(range(0, mod, step))
            else:
                ranges.append(range(mod))  # above: free (a_i <= a_j)
    n_cand = prod(len(rg) for rg in ranges)
    if n_cand > cap:
        raise CapacityError(
            f"Sylow block p={p}: {n_cand} candidates exceed cap {cap}", needed=n_cand, cap=cap
        )
    out = []
    for flat in _product(*ranges):
        rows = tuple(tuple(flat[i * r + j] for j in range(r)) for i in range(r))
        out.append(EndoMatrix(p, exps, rows))
    out.sort(key=lambda m: m.flat())
    return tuple(out)


# -- automorphisms of the whole group ----------------------------------------


def aut_apply(group: GroupSpec, aut: Aut, g: Element) -> Element:
    group.check_element(g)
    out: list[int] = []
    for p, block in zip(group.primes, aut):
        sl = group.prime_slice(p)
        out.extend(endo_apply(block, tuple(g[sl])))
    return tuple(out)


def aut_compose(aut1: Aut, aut2: Aut) -> Aut:
    return tuple(endo_compose(a, b) for a, b in zip(aut1, aut2))


def aut_invert(aut: Aut) -> Aut:
    return tuple(invert(a) for a in aut)


def identity_aut(group: GroupSpec) -> Aut:
    return tuple(identity_endo(p, group.exponents(p)) for p in group.primes)
