"""Search for regular quaternion/dihedral subgroups of Hol(N).

The engine scans candidate generators X of order exactly 2^{n-1} s whose
translation orbit is faithful, then builds each admissible partner Y
directly from the relations: Y is determined on all of N by the target point
t = Y(0) together with Y X Y^{-1} = X^{-1} and the kind's Y^2 relation, so
only affine-ness has to be checked.  Two search spaces are supported: all of
Hol(N), or the Sylow-restricted subset (2-part automorphisms unipotent upper
triangular) followed by Aut(N)-orbit expansion.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Optional

from . import config
from .abelian import GroupSpec
from .errors import CapacityError, InternalConsistencyError, InvalidInputError
from .holomorph import HolElement, exponent_bound, from_kernel, to_kernel
from .kernel import HolKernel, KernelElement, get_kernel
from .presentations import QUATERNION, TargetKind, _classify_kernel

EXHAUSTIVE_CLASSIFY_MAX = 1 << 15  # beyond this, conjugacy uses generator BFS

SubgroupKey = tuple[bytes, ...]


@dataclass(frozen=True)
class RegularSubgroup:
    """A regular subgroup of Hol(N), canonically keyed by its element codes."""

    group: GroupSpec
    kind: TargetKind
    key: SubgroupKey
    elements: tuple[KernelElement, ...]
    witness: Optional[tuple[KernelElement, KernelElement]] = None

    def hol_elements(self) -> tuple[HolElement, ...]:
        return tuple(from_kernel(self.group, e) for e in self.elements)

    def witnesses(self) -> tuple[HolElement, HolElement]:
        pair = self.witness
        if pair is None:
            got = _classify_kernel(get_kernel(self.group), frozenset(self.elements), False)
            if got is None:
                raise InternalConsistencyError("stored subgroup lost its target shape")
            pair = got[1]
        return from_kernel(self.group, pair[0]), from_kernel(self.group, pair[1])


@dataclass(frozen=True)
class ConjugacyClass:
    representative: RegularSubgroup
    orbit_size: int
    stabilizer_order: int


def _subgroup(kern: HolKernel, kind: TargetKind, elements, witness=None) -> RegularSubgroup:
    ordered = tuple(sorted(elements, key=kern.code))
    key = tuple(kern.code(e) for e in ordered)
    return RegularSubgroup(kern.group, kind, key, ordered, witness)


# -- spec-level helpers ----------------------------------------------------------


def is_regular(elems: Iterable[HolElement]) -> bool:
    """True iff the translation parts exhaust N (the orbit of 0 is all of N)."""
    elems = list(elems)
    if not elems:
        raise InvalidInputError("empty element set")
    group = elems[0].group
    if len(elems) != group.order:
        raise InvalidInputError(f"need |S| = |N| = {group.order}, got {len(elems)}")
    return len({e.trans for e in elems}) == group.order


def generate_closure(gens: Iterable[HolElement], cap: int) -> set[HolElement]:
    """Subgroup generated by `gens`; CapacityError once the closure passes cap."""
    gens = list(gens)
    if not gens:
        raise InvalidInputError("need at least one generator")
    group = gens[0].group
    kern = get_kernel(group)
    kgens = [to_kernel(g) for g in gens]
    closure = {kern.identity}
    frontier = [kern.identity]
    while frontier:
        cur = frontier.pop()
        for g in kgens:
            nxt = kern.compose(cur, g)
            if nxt not in closure:
                if len(closure) >= cap:
                    raise CapacityError(f"closure exceeded cap {cap}", cap=cap)
                closure.add(nxt)
                frontier.append(nxt)
    return {from_kernel(group, e) for e in closure}


# -- the search ---------------------------------------------------------------------


def _build_y(kern: HolKernel, orb0: list[int], orbt: list[int], quat: bool, half: int):
    mx = len(orb0)
    img = [0] * kern.n
    for i in range(mx):
        img[orb0[i]] = orbt[-i % mx]
        img[orbt[i]] = orb0[(half - i) % mx] if quat else orb0[-i % mx]
    return kern.affine_from_images(img)


def _seed_search(kern: HolKernel, kind: TargetKind, pool: Iterable[KernelElement]):
    """All regular `kind` subgroups generated inside `pool` (X there, Y free)."""
    if kern.group.order != kind.order:
        raise InvalidInputError(f"|N| = {kern.group.order} but target has order {kind.order}")
    if kind.s == 1 and kind.x_order > exponent_bound(kern.group, 2):
        return {}  # order-bound prune: Hol(N) has no element of order 2^{n-1}
    mx = kind.x_order
    half = (1 << (kind.n - 2)) * kind.s
    quat = kind.family == QUATERNION
    n = kern.n
    seen_x: set[bytes] = set()
    found: dict[SubgroupKey, tuple] = {}
    for x in pool:
        if kern.order(x) != mx:
            continue
        if kern.code(x) in seen_x:
            continue
        pows = kern.power_list(x, mx)
        for k in range(1, mx):
            if gcd(k, mx) == 1:
                seen_x.add(kern.code(pows[k]))
        orb0 = [kern.trans_index(p) for p in pows]
        orb0_set = set(orb0)
        if len(orb0_set) != mx:
            continue
        handled = set(orb0_set)
        for t in range(n):
            if t in handled:
                continue
            orbt = [t]
            cur = t
            for _ in range(mx - 1):
                cur = kern.apply(x, cur)
                orbt.append(cur)
            handled.update(orbt)
            if len(set(orbt)) != mx:
                continue
            y = _build_y(kern, orb0, orbt, quat, half)
            if y is None:
                continue
            elems = pows + [kern.compose(p, y) for p in pows]
            key = tuple(sorted(kern.code(e) for e in elems))
            if key not in found:
                found[key] = (tuple(elems), x, y)
    return found


def _expand_orbits(kern: HolKernel, seeds: dict, aut_order: int, gens: list[KernelElement]):
    """Aut(N)-orbit closure of the seed subgroups.

    Returns (all_subgroups: dict key -> elements, classes: list of
    (rep_key, orbit_size, stabilizer_order)).
    """
    conjs = [kern.conjugator(g) for g in gens]
    visited: dict[SubgroupKey, tuple] = {}
    classes = []
    for seed_key in sorted(seeds):
        if seed_key in visited:
            continue
        elements = seeds[seed_key][0]
        orbit: dict[SubgroupKey, tuple] = {seed_key: elements}
        frontier = [elements]
        while frontier:
            els = frontier.pop()
            for conj in conjs:
                nels = tuple(conj(e) for e in els)
                nk = tuple(sorted(kern.code(e) for e in nels))
                if nk not in orbit:
                    orbit[nk] = nels
                    frontier.append(nels)
        stab, rem = divmod(aut_order, len(orbit))
        if rem:
            raise InternalConsistencyError("orbit size does not divide |Aut(N)|")
        rep_key = min(orbit)
        classes.append((rep_key, len(orbit), stab))
        visited.update(orbit)
    return visited, classes


def _pool_for(kern: HolKernel, method: str, cap: int | None):
    if method == "full":
        return kern.full_pool(cap)
    if method == "sylow":
        return kern.sylow_pool(cap)
    raise InvalidInputError(f"unknown search method {method!r}")


def _auto_method(kern: HolKernel, cap: int | None) -> str:
    cap = cap if cap is not None else config.full_hol_cap()
    return "full" if kern.hol_order() <= cap else "sylow"


@dataclass(frozen=True)
class SearchResult:
    group: GroupSpec
    kind: TargetKind
    subgroups: tuple[RegularSubgroup, ...]
    classes: tuple[ConjugacyClass, ...]
    method: str

    @property
    def r(self) -> int:
        return len(self.subgroups)

    @property
    def c(self) -> int:
        return len(self.classes)

    @property
    def keys(self) -> frozenset:
        return frozenset(s.key for s in self.subgroups)


def search_regular(group: GroupSpec, kind: TargetKind, method: str = "auto", cap: int | None = None) -> SearchResult:
    """Complete census of regular `kind` subgroups with conjugacy classes."""
    kern = get_kernel(group)
    if method == "auto":
        method = _auto_method(kern, cap)
    return _search_cached(group, kind, method, cap if cap is not None else config.full_hol_cap())


@lru_cache(maxsize=None)
def _search_cached(group: GroupSpec, kind: TargetKind, method: str, cap: int) -> SearchResult:
    kern = get_kernel(group)
    seeds = _seed_search(kern, kind, _pool_for(kern, method, cap))
    aut = kern.aut_group()
    if method == "sylow":
        gens = kern.aut_generator_tuples()
        all_subs, raw_classes = _expand_orbits(kern, seeds, aut.order, gens)
        subgroups = tuple(
            _subgroup(kern, kind, all_subs[k], (seeds[k][1], seeds[k][2]) if k in seeds else None)
            for k in sorted(all_subs)
        )
        by_key = {s.key: s for s in subgroups}
        classes = tuple(
            ConjugacyClass(by_key[rk], size, stab) for rk, size, stab in raw_classes
        )
    else:
        subgroups = tuple(
            _subgroup(kern, kind, elems, (x, y)) for key, (elems, x, y) in sorted(seeds.items())
        )
        classes = classify(subgroups)
    total = sum(c.orbit_size for c in classes)
    if total != len(subgroups):
        raise InternalConsistencyError(
            f"classes cover {total} subgroups but {len(subgroups)} were found"
        )
    return SearchResult(group, kind, subgroups, tuple(classes), method)


def find_regular(group: GroupSpec, kind: TargetKind, method: str = "auto", cap: int | None = None) -> tuple[RegularSubgroup, ...]:
    """The complete, duplicate-free list of regular `kind` subgroups of Hol(N)."""
    return search_regular(group, kind, method, cap).subgroups


def find_regular_sylow(group: GroupSpec, kind: TargetKind, cap: int | None = None) -> SearchResult:
    """Sylow-restricted search plus orbit expansion; complete by conjugacy."""
    return search_regular(group, kind, "sylow", cap)


def classify(subgroups: Iterable[RegularSubgroup], aut_group=None) -> tuple[ConjugacyClass, ...]:
    """Partition a complete list of subgroups into Aut(N)-conjugacy orbits."""
    subgroups = list(subgroups)
    if not subgroups:
        return ()
    group = subgroups[0].group
    if any(s.group != group for s in subgroups):
        raise InvalidInputError("subgroups over different N")
    kern = get_kernel(group)
    aut = aut_group if aut_group is not None else kern.aut_group()
    by_key = {s.key: s for s in subgroups}
    classes = []
    visited: set[SubgroupKey] = set()
    for sub in sorted(subgroups, key=lambda s: s.key):
        if sub.key in visited:
            continue
        if aut.order <= EXHAUSTIVE_CLASSIFY_MAX:
            orbit_keys = set()
            stab = 0
            for a in aut:
                at = kern.aut_perm_tuple(a)
                conj = kern.conjugator(at)
                nk = tuple(sorted(kern.code(conj(e)) for e in sub.elements))
                orbit_keys.add(nk)
                if nk == sub.key:
                    stab += 1
            if stab * len(orbit_keys) != aut.order:
                raise InternalConsistencyError("orbit-stabilizer identity failed")
        else:
            gens = [kern.aut_perm_tuple(a) for a in aut.generators()]
            seed = {sub.key: (sub.elements,)}
            orbit, raw = _expand_orbits(kern, seed, aut.order, gens)
            orbit_keys = set(orbit)
            stab = raw[0][2]
        rep_key = min(orbit_keys)
        rep = by_key.get(rep_key)
        if rep is None:
            raise InvalidInputError("input list is not closed under conjugation")
        classes.append(ConjugacyClass(rep, len(orbit_keys), stab))
        visited.update(orbit_keys)
    return tuple(classes)
