"""Byte-permutation model of Hol(N) = prod_p Hol(N_p).

Each Sylow component gets a `PrimeSpace`: its elements are indexed and an
affine map is stored as a length-m `bytes` permutation of those indices.
A holomorph element of the whole group is a tuple with one permutation per
prime, composed componentwise.  This keeps the hot loops (composition,
orders, conjugation) on C-speed bytes operations.
"""

from __future__ import annotations

from functools import lru_cache
from math import lcm, prod

from . import config
from .abelian import Element, GroupSpec
from .endo import (
    Aut,
    AutGroup,
    EndoMatrix,
    endo_apply,
    enumerate_aut,
    make_endo,
    sylow_p_aut,
)
from .errors import CapacityError, InvalidInputError

KernelElement = tuple[bytes, ...]


class PrimeSpace:
    """Permutations of one Sylow component N_p, as bytes of length |N_p|."""

    def __init__(self, spec: GroupSpec):
        if spec.order > 255:
            raise CapacityError(
                f"component {spec} has {spec.order} elements; bytes kernel handles <= 255"
            )
        self.spec = spec
        self.m = spec.order
        self.elems: list[Element] = list(spec.elements())
        self.index: dict[Element, int] = {g: i for i, g in enumerate(self.elems)}
        m = self.m
        self._pad = bytes(256 - m)
        # translation permutations; row v is the perm g -> g + v
        self.add_rows: list[bytes] = [
            bytes(self.index[spec.add(g, v)] for g in self.elems) for v in self.elems
        ]
        self.neg_idx: list[int] = [self.index[spec.neg(g)] for g in self.elems]
        self.identity: bytes = bytes(range(m))
        # mixed-radix helpers for building linear maps image-by-image:
        # index i differs from prev[i] by one step of basis vector which[i]
        strides = spec.strides
        r = len(spec.factors)
        self._basis_idx = [self.index[tuple(int(k == j) for k in range(r))] for j in range(r)]
        prev = [0] * m
        which = [0] * m
        for i in range(1, m):
            g = spec.element_at(i)
            pos = max(j for j in range(r) if g[j])
            prev[i] = i - strides[pos]
            which[i] = pos
        self._prev = prev
        self._which = which
        self._order_memo: dict[bytes, int] = {}
        self._aut_perm_memo: dict[EndoMatrix, bytes] = {}

    # -- permutation algebra -------------------------------------------------

    def compose(self, p: bytes, q: bytes) -> bytes:
        """(p o q)(i) = p[q[i]]."""
        return q.translate(p + self._pad)

    def inverse(self, p: bytes) -> bytes:
        out = bytearray(self.m)
        for i, v in enumerate(p):
            out[v] = i
        return bytes(out)

    def order(self, p: bytes) -> int:
        memo = self._order_memo
        cached = memo.get(p)
        if cached is not None:
            return cached
        seen = bytearray(self.m)
        result = 1
        for start in range(self.m):
            if seen[start]:
                continue
            length = 0
            cur = start
            while not seen[cur]:
                seen[cur] = 1
                cur = p[cur]
                length += 1
            result = lcm(result, length)
        memo[p] = result
        return result

    def cycle_through(self, p: bytes, i: int) -> int:
        length = 1
        cur = p[i]
        while cur != i:
            cur = p[cur]
            length += 1
        return length

    # -- affine maps ----------------------------------------------------------

    def linear_perm(self, col_idx: list[int]) -> bytes:
        """Permutation of the linear map sending basis vector j to col_idx[j]."""
        img = bytearray(self.m)
        add_rows, prev, which = self.add_rows, self._prev, self._which
        for i in range(1, self.m):
            img[i] = add_rows[img[prev[i]]][col_idx[which[i]]]
        return bytes(img)

    def aut_perm(self, m: EndoMatrix) -> bytes:
        cached = self._aut_perm_memo.get(m)
        if cached is None:
            cols = [self.index[endo_apply(m, self.elems[b])] for b in self._basis_idx]
            cached = self.linear_perm(cols)
            self._aut_perm_memo[m] = cached
        return cached

    def hol_perm(self, aut_bytes: bytes, v_idx: int) -> bytes:
        """g -> A(g) + v as a permutation."""
        return self.compose(self.add_rows[v_idx], aut_bytes)

    def decode(self, p: bytes) -> tuple[EndoMatrix, Element] | None:
        """Recover (A, v) from an affine permutation; None if p is not affine."""
        v_idx = p[0]
        lin = self.compose(self.add_rows[self.neg_idx[v_idx]], p)
        cols = [lin[b] for b in self._basis_idx]
        if self.linear_perm(cols) != lin:
            return None
        exps = self.spec.exponents(self.spec.primes[0]) if self.spec.factors else ()
        r = len(self.spec.factors)
        rows = tuple(tuple(self.elems[cols[j]][i] for j in range(r)) for i in range(r))
        mat = make_endo(self.spec.primes[0], exps, rows) if r else None
        return mat, self.elems[v_idx]

    # -- element pools ---------------------------------------------------------

    def aut_perms(self, cap: int | None = None) -> list[bytes]:
        block = enumerate_aut(self.spec, cap).blocks[0] if self.spec.factors else ()
        return [self.aut_perm(m) for m in block] or [self.identity]

    def sylow_aut_perms(self, cap: int | None = None) -> list[bytes]:
        if not self.spec.factors:
            return [self.identity]
        mats = sylow_p_aut(self.spec, self.spec.primes[0], cap)
        return [self.aut_perm(m) for m in mats]

    def hol_elements(self, aut_list: list[bytes]) -> list[bytes]:
        return [self.hol_perm(a, v) for a in aut_list for v in range(self.m)]


@lru_cache(maxsize=None)
def _prime_space(spec: GroupSpec) -> PrimeSpace:
    return PrimeSpace(spec)


class HolKernel:
    """Hol(N) as tuples of per-component affine byte permutations."""

    def __init__(self, group: GroupSpec):
        self.group = group
        self.primes = group.primes
        self.spaces = tuple(_prime_space(group.component(p)) for p in self.primes)
        self.n = group.order
        sizes = [sp.m for sp in self.spaces]
        self.sizes = sizes
        strides = []
        acc = 1
        for m in reversed(sizes):
            strides.append(acc)
            acc *= m
        self.strides = list(reversed(strides))
        # combined index <-> per-component index tables
        self.split_tabs: list[list[int]] = []
        for k in range(len(sizes)):
            self.split_tabs.append([(i // self.strides[k]) % sizes[k] for i in range(self.n)])
        # element (combined residue tuple) index must agree with abelian's
        # lexicographic order: components are contiguous prime slices, so the
        # combined index is the mixed-radix mix of component indices.
        self.identity: KernelElement = tuple(sp.identity for sp in self.spaces)
        self._pool_cache: dict[tuple[str, int], list[KernelElement]] = {}

    # -- algebra ----------------------------------------------------------------

    def compose(self, x: KernelElement, y: KernelElement) -> KernelElement:
        return tuple(sp.compose(a, b) for sp, a, b in zip(self.spaces, x, y))

    def invert(self, x: KernelElement) -> KernelElement:
        return tuple(sp.inverse(a) for sp, a in zip(self.spaces, x))

    def order(self, x: KernelElement) -> int:
        return lcm(*(sp.order(a) for sp, a in zip(self.spaces, x))) if x else 1

    def code(self, x: KernelElement) -> bytes:
        return b"".join(x)

    def power_list(self, x: KernelElement, count: int) -> list[KernelElement]:
        out = [self.identity]
        cur = self.identity
        for _ in range(count - 1):
            cur = self.compose(x, cur)
            out.append(cur)
        return out

    def merge_index(self, comp_idx) -> int:
        return sum(i * s for i, s in zip(comp_idx, self.strides))

    def trans_index(self, x: KernelElement) -> int:
        return sum(a[0] * s for a, s in zip(x, self.strides))

    def apply(self, x: KernelElement, idx: int) -> int:
        out = 0
        for k, (sp, a) in enumerate(zip(self.spaces, x)):
            out += a[self.split_tabs[k][idx]] * self.strides[k]
        return out

    # -- element <-> algebraic form ----------------------------------------------

    def from_parts(self, aut: Aut, trans: Element) -> KernelElement:
        self.group.check_element(trans)
        out = []
        for k, (p, sp) in enumerate(zip(self.primes, self.spaces)):
            sl = self.group.prime_slice(p)
            v_idx = sp.index[tuple(trans[sl])]
            out.append(sp.hol_perm(sp.aut_perm(aut[k]), v_idx))
        return tuple(out)

    def to_parts(self, x: KernelElement) -> tuple[Aut, Element]:
        blocks = []
        trans: list[int] = []
        for sp, a in zip(self.spaces, x):
            decoded = sp.decode(a)
            if decoded is None:
                raise InvalidInputError("permutation is not affine")
            mat, v = decoded
            blocks.append(mat)
            trans.extend(v)
        return tuple(blocks), tuple(trans)

    def affine_from_images(self, img: list[int]) -> KernelElement | None:
        """Reassemble a per-component affine element from a combined image map.

        Returns None unless the map splits as a product of per-component
        bijections that are each affine.
        """
        perms: list[bytes] = []
        for k, sp in enumerate(self.spaces):
            tab = self.split_tabs[k]
            comp_img: list[int | None] = [None] * sp.m
            for i, out in enumerate(img):
                a, b = tab[i], tab[out]
                known = comp_img[a]
                if known is None:
                    comp_img[a] = b
                elif known != b:
                    return None
            if None in comp_img or len(set(comp_img)) != sp.m:
                return None
            perm = bytes(comp_img)  # type: ignore[arg-type]
            if sp.decode(perm) is None:
                return None
            perms.append(perm)
        return tuple(perms)

    # -- pools ---------------------------------------------------------------------

    def aut_group(self, cap: int | None = None) -> AutGroup:
        return enumerate_aut(self.group, cap)

    def aut_perm_tuple(self, aut: Aut) -> KernelElement:
        return tuple(sp.aut_perm(m) for sp, m in zip(self.spaces, aut))

    def aut_perm_tuples(self, cap: int | None = None):
        for aut in self.aut_group(cap):
            yield self.aut_perm_tuple(aut)

    def aut_generator_tuples(self, cap: int | None = None) -> list[KernelElement]:
        return [self.aut_perm_tuple(a) for a in self.aut_group(cap).generators()]

    def hol_order(self) -> int:
        return self.group.order * self.aut_group().order

    def full_pool(self, cap: int | None = None) -> list[KernelElement]:
        """Every element of Hol(N), as the product of per-component pools."""
        cap = cap if cap is not None else config.full_hol_cap()
        total = self.hol_order()
        if total > cap:
            raise CapacityError(
                f"|Hol({self.group})| = {total} exceeds cap {cap}", needed=total, cap=cap
            )
        cached = self._pool_cache.get(("full", cap))
        if cached is None:
            cached = self._pool([sp.hol_elements(sp.aut_perms()) for sp in self.spaces])
            self._pool_cache[("full", cap)] = cached
        return cached

    def sylow_pool(self, cap: int | None = None) -> list[KernelElement]:
        """Odd components in full, 2-component restricted to N_2 x P."""
        cap = cap if cap is not None else config.full_hol_cap()
        cached = self._pool_cache.get(("sylow", cap))
        if cached is not None:
            return cached
        lists = []
        for p, sp in zip(self.primes, self.spaces):
            auts = sp.sylow_aut_perms() if p == 2 else sp.aut_perms()
            lists.append(sp.hol_elements(auts))
        total = prod(len(l) for l in lists)
        if total > cap:
            raise CapacityError(
                f"Sylow-restricted pool for {self.group} has {total} elements, cap {cap}",
                needed=total,
                cap=cap,
            )
        cached = self._pool(lists)
        self._pool_cache[("sylow", cap)] = cached
        return cached

    @staticmethod
    def _pool(lists: list[list[bytes]]) -> list[KernelElement]:
        out = [()]
        for lst in lists:
            out = [prefix + (p,) for prefix in out for p in lst]
        return out

    # -- conjugation -------------------------------------------------------------

    def conjugator(self, aut_tuple: KernelElement):
        """Memoized x -> a x a^{-1} acting componentwise."""
        invs = tuple(sp.inverse(a) for sp, a in zip(self.spaces, aut_tuple))
        memos: list[dict[bytes, bytes]] = [{} for _ in self.spaces]

        def conj(x: KernelElement) -> KernelElement:
            out = []
            for k, sp in enumerate(self.spaces):
                memo = memos[k]
                b = x[k]
                got = memo.get(b)
                if got is None:
                    got = sp.compose(aut_tuple[k], sp.compose(b, invs[k]))
                    memo[b] = got
                out.append(got)
            return tuple(out)

        return conj


@lru_cache(maxsize=None)
def get_kernel(group: GroupSpec) -> HolKernel:
    if group.order < 2:
        raise InvalidInputError("kernel needs a nontrivial group")
    return HolKernel(group)
