"""Exact arithmetic in finite abelian groups given by prime-power factors.

A group is a `GroupSpec`: a canonical tuple of prime powers sorted by
(prime, exponent), so two isomorphic inputs always produce equal specs.
Elements are plain tuples of residues, one per factor, least nonnegative.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product as _product
from math import gcd, lcm, prod
from typing import Iterator

from .errors import InvalidInputError

Element = tuple[int, ...]


def _factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of n as (p, multiplicity) pairs, p ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


@dataclass(frozen=True)
class GroupSpec:
    """Canonical presentation of a finite abelian group.

    `factors` holds prime powers grouped per prime with nondecreasing
    exponents within a prime; primes appear in ascending order.
    """

    factors: tuple[int, ...]

    @cached_property
    def order(self) -> int:
        return prod(self.factors) if self.factors else 1

    @cached_property
    def prime_of_factor(self) -> tuple[tuple[int, int], ...]:
        """(p, a) for each factor, aligned with `factors`."""
        return tuple(_factorize(q)[0] for q in self.factors)

    @cached_property
    def primes(self) -> tuple[int, ...]:
        seen = []
        for p, _ in self.prime_of_factor:
            if p not in seen:
                seen.append(p)
        return tuple(seen)

    def exponents(self, p: int) -> tuple[int, ...]:
        """The exponent list (a_1 <= ... <= a_r) of the p-part."""
        return tuple(a for q, a in self.prime_of_factor if q == p)

    def rank(self, p: int) -> int:
        return len(self.exponents(p))

    def exponent(self, p: int) -> int:
        exps = self.exponents(p)
        return p ** exps[-1] if exps else 1

    def prime_slice(self, p: int) -> slice:
        """Positions of the p-part factors (contiguous by canonicality)."""
        idxs = [i for i, (q, _) in enumerate(self.prime_of_factor) if q == p]
        if not idxs:
            return slice(0, 0)
        return slice(idxs[0], idxs[-1] + 1)

    def component(self, p: int) -> "GroupSpec":
        return GroupSpec(tuple(q for q, (pp, _) in zip(self.factors, self.prime_of_factor) if pp == p))

    @cached_property
    def strides(self) -> tuple[int, ...]:
        """Mixed-radix strides; first factor is most significant."""
        out = []
        acc = 1
        for q in reversed(self.factors):
            out.append(acc)
            acc *= q
        return tuple(reversed(out))

    # -- element arithmetic ------------------------------------------------

    def identity(self) -> Element:
        return (0,) * len(self.factors)

    def check_element(self, g: Element) -> None:
        if len(g) != len(self.factors) or any(
            not (0 <= r < q) for r, q in zip(g, self.factors)
        ):
            raise InvalidInputError(f"{g!r} is not an element of {self}")

    def add(self, g: Element, h: Element) -> Element:
        self.check_element(g)
        self.check_element(h)
        return tuple((a + b) % q for a, b, q in zip(g, h, self.factors))

    def neg(self, g: Element) -> Element:
        self.check_element(g)
        return tuple((-a) % q for a, q in zip(g, self.factors))

    def sub(self, g: Element, h: Element) -> Element:
        return self.add(g, self.neg(h))

    def scale(self, k: int, g: Element) -> Element:
        self.check_element(g)
        return tuple((k * a) % q for a, q in zip(g, self.factors))

    def element_order(self, g: Element) -> int:
        """Least k >= 1 with k*g = 0; the lcm of per-factor residue orders."""
        self.check_element(g)
        return lcm(*(q // gcd(a, q) for a, q in zip(g, self.factors))) if g else 1

    # -- indexing and iteration ---------------------------------------------

    def elements(self) -> Iterator[Element]:
        """All elements in lexicographic order over residue vectors."""
        return _product(*(range(q) for q in self.factors))

    def index(self, g: Element) -> int:
        self.check_element(g)
        return sum(a * s for a, s in zip(g, self.strides))

    def element_at(self, idx: int) -> Element:
        if not (0 <= idx < self.order):
            raise InvalidInputError(f"index {idx} out of range for {self}")
        out = []
        for s in self.strides:
            out.append(idx // s)
            idx %= s
        return tuple(out)

    # -- structure ----------------------------------------------------------

    @cached_property
    def odd_order(self) -> int:
        return prod(q for q, (p, _) in zip(self.factors, self.prime_of_factor) if p != 2) or 1

    @cached_property
    def two_adic(self) -> int:
        """n with 2^n the order of the 2-part."""
        return sum(a for p, a in self.prime_of_factor if p == 2)

    def is_cyclic(self) -> bool:
        return all(self.rank(p) == 1 for p in self.primes)

    def display_name(self) -> str:
        """Display name: cyclic odd part first, then 2-parts ascending."""
        if not self.factors:
            return "1"
        odd = [q for q, (p, _) in zip(self.factors, self.prime_of_factor) if p != 2]
        two = [q for q, (p, _) in zip(self.factors, self.prime_of_factor) if p == 2]
        parts = []
        if odd:
            odd_spec = GroupSpec(tuple(odd))
            if odd_spec.is_cyclic():
                parts.append(f"C_{odd_spec.order}")
            else:
                parts.extend(f"C_{q}" for q in odd)
        parts.extend(f"C_{q}" for q in two)
        return "×".join(parts)

    def __str__(self) -> str:
        return self.display_name()


@lru_cache(maxsize=None)
def _canonical(orders: tuple[int, ...]) -> GroupSpec:
    if not orders:
        raise InvalidInputError("need at least one cyclic order")
    prime_powers = []
    for q in orders:
        if not isinstance(q, int) or q < 2:
            raise InvalidInputError(f"cyclic order {q!r} must be an integer >= 2")
        for p, e in _factorize(q):
            prime_powers.append((p, e))
    prime_powers.sort()
    return GroupSpec(tuple(p**e for p, e in prime_powers))


def make_group(orders) -> GroupSpec:
    """Canonicalize a list of cyclic orders into a GroupSpec.

    Orders are factored into prime powers, grouped per prime and sorted, so
    [4, 2], [2, 4] and [8] vs [2, 2, 2] behave predictably: isomorphic inputs
    give identical specs.
    """
    return _canonical(tuple(orders))


_SPEC_BRACKET = re.compile(r"^\[([0-9,\s]*)\]$")
_SPEC_CFORM = re.compile(r"^c(\d+)(?:xc(\d+))*$")


def parse_group(text: str) -> GroupSpec:
    """Parse "c2xc8"-style names or bracketed lists like "[3,2,8]"."""
    squeezed = "".join(text.split()).lower()
    m = _SPEC_BRACKET.match(squeezed)
    if m:
        body = m.group(1).strip()
        if not body:
            raise InvalidInputError(f"empty group spec: {text!r}")
        return make_group([int(tok) for tok in body.split(",") if tok])
    if _SPEC_CFORM.match(squeezed):
        return make_group([int(tok) for tok in squeezed[1:].split("xc")])
    raise InvalidInputError(f"cannot parse group spec {text!r}")


@dataclass(frozen=True)
class SylowSplitter:
    """Bijection N <-> N_s x N_2 induced by the canonical factor layout."""

    group: GroupSpec
    odd: GroupSpec
    two: GroupSpec

    def split(self, g: Element) -> tuple[Element, Element]:
        self.group.check_element(g)
        k = len(self.two.factors)
        return g[k:], g[:k]

    def merge(self, g_odd: Element, g_two: Element) -> Element:
        self.odd.check_element(g_odd)
        self.two.check_element(g_two)
        return g_two + g_odd


def sylow_decompose(group: GroupSpec) -> tuple[GroupSpec, GroupSpec, SylowSplitter]:
    """Split N into its odd part N_s and 2-part N_2 with an element bijection."""
    odd = GroupSpec(tuple(q for q, (p, _) in zip(group.factors, group.prime_of_factor) if p != 2))
    two = group.component(2)
    return odd, two, SylowSplitter(group, odd, two)
