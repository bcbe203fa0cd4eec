"""Generalized quaternion and dihedral targets: recognition and Aut orders.

Q_{2^n s} = <x, y : x^{2^{n-1} s} = 1, y x y^{-1} = x^{-1}, y^2 = x^{2^{n-2} s}>
D_{2^n s} = <x, y : x^{2^{n-1} s} = 1, y x y^{-1} = x^{-1}, y^2 = 1>

with n >= 2, s odd, and x of order exactly 2^{n-1} s.  The degenerate cases
are included: Q_4 ~ C_4 and D_4 ~ C_2 x C_2.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .abelian import GroupSpec, make_group
from .errors import InvalidInputError
from .holomorph import HolElement, to_kernel
from .kernel import HolKernel, KernelElement, get_kernel

QUATERNION = "quaternion"
DIHEDRAL = "dihedral"


@dataclass(frozen=True)
class TargetKind:
    family: str
    n: int
    s: int

    def __post_init__(self):
        if self.family not in (QUATERNION, DIHEDRAL):
            raise InvalidInputError(f"unknown family {self.family!r}")
        if self.n < 2 or self.s < 1 or self.s % 2 == 0:
            raise InvalidInputError(f"need n >= 2 and s odd >= 1, got n={self.n} s={self.s}")

    @property
    def order(self) -> int:
        return (1 << self.n) * self.s

    @property
    def x_order(self) -> int:
        return (1 << (self.n - 1)) * self.s

    def label(self) -> str:
        return ("q" if self.family == QUATERNION else "d") + str(self.order)

    def display_name(self) -> str:
        if self.n == 2 and self.s == 1:
            return "C_4" if self.family == QUATERNION else "C_2×C_2"
        return ("Q_" if self.family == QUATERNION else "D_") + str(self.order)

    def sylow2(self) -> "TargetKind":
        return TargetKind(self.family, self.n, 1)


def quaternion_kind(order: int) -> TargetKind:
    return _kind_of_order(QUATERNION, order)


def dihedral_kind(order: int) -> TargetKind:
    return _kind_of_order(DIHEDRAL, order)


def _kind_of_order(family: str, order: int) -> TargetKind:
    n = 0
    s = order
    while s % 2 == 0:
        s //= 2
        n += 1
    if n < 2:
        raise InvalidInputError(f"order {order} is not 2^n*s with n >= 2")
    return TargetKind(family, n, s)


def parse_kind(text: str) -> TargetKind:
    t = text.strip().lower()
    if len(t) < 2 or t[0] not in "qd" or not t[1:].isdigit():
        raise InvalidInputError(f"cannot parse target kind {text!r}")
    return _kind_of_order(QUATERNION if t[0] == "q" else DIHEDRAL, int(t[1:]))


def aut_order(kind: TargetKind) -> int:
    """|Aut| of the abstract target group.

    2^{2n-3} for s = 1 (quaternion n != 3, dihedral n >= 3) and
    2^{2n-3} s phi(s) for s >= 3; the three exceptional s = 1 groups are
    pinned to their known orders.
    """
    n, s = kind.n, kind.s
    if s == 1:
        if kind.family == QUATERNION and n == 3:
            return 24  # Q_8
        if kind.family == DIHEDRAL and n == 2:
            return 6  # C_2 x C_2
        return 1 << (2 * n - 3)
    phi = sum(1 for k in range(1, s) if gcd(k, s) == 1)
    return (1 << (2 * n - 3)) * s * phi


def admissible_types(n: int) -> list[GroupSpec]:
    """Abelian 2-groups of order 2^n that can carry a regular target subgroup."""
    if n < 2:
        raise InvalidInputError("need n >= 2")
    rows: list[list[int]] = [[2**n], [2, 2 ** (n - 1)]]
    if n >= 3:
        rows.append([4, 2 ** (n - 2)])
        rows.append([2, 2, 2 ** (n - 2)])
    if n >= 4:
        rows.append([2, 2, 2, 2 ** (n - 3)])
    out: list[GroupSpec] = []
    for row in rows:
        spec = make_group([q for q in row if q > 1])
        if spec not in out:
            out.append(spec)
    return out


# -- recognition ---------------------------------------------------------------


def _classify_kernel(kern: HolKernel, elems: frozenset[KernelElement], check_closed: bool = True):
    """Kind plus (x, y) witnesses, or None.  `elems` must form a subgroup."""
    if check_closed:
        for a in elems:
            if kern.invert(a) not in elems:
                raise InvalidInputError("input set is not closed under inversion")
            for b in elems:
                if kern.compose(a, b) not in elems:
                    raise InvalidInputError("input set is not closed under composition")
    size = len(elems)
    n = 0
    s = size
    while s % 2 == 0:
        s //= 2
        n += 1
    if n < 2:
        return None
    mx = (1 << (n - 1)) * s
    half = (1 << (n - 2)) * s
    ident = kern.identity
    for x in sorted(elems, key=kern.code):
        if kern.order(x) != mx:
            continue
        pows = kern.power_list(x, mx)
        in_x = set(pows)
        x_inv = kern.invert(x)
        x_half = pows[half]
        for y in sorted(elems - in_x, key=kern.code):
            if kern.compose(kern.compose(y, x), kern.invert(y)) != x_inv:
                continue
            y2 = kern.compose(y, y)
            if y2 == x_half:
                return TargetKind(QUATERNION, n, s), (x, y)
            if y2 == ident:
                return TargetKind(DIHEDRAL, n, s), (x, y)
        # in Q/D every element outside <x> works, so one <x> decides
        return None
    return None


def classify_subgroup(elems) -> TargetKind | None:
    """Recognize a subgroup of Hol(N) as quaternion/dihedral via witnesses.

    `elems` is a collection of HolElement forming a subgroup.  Returns the
    TargetKind, or None when the group is neither (degenerate order-4 cases
    report C_4 as quaternion and C_2 x C_2 as dihedral).
    """
    elems = list(elems)
    if not elems:
        raise InvalidInputError("empty element set")
    if not isinstance(elems[0], HolElement):
        raise InvalidInputError("classify_subgroup expects HolElement values")
    group = elems[0].group
    kern = get_kernel(group)
    kelems = frozenset(to_kernel(e) for e in elems)
    if len(kelems) != len(elems):
        raise InvalidInputError("duplicate elements in subgroup")
    got = _classify_kernel(kern, kelems)
    return got[0] if got else None
