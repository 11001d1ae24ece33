"""Finite carriers, set maps, and down-closed families of null subsets.

A subset of a carrier is a bitmask over the carrier's declared element
order.  Families of subsets are frozensets of masks, and the family-level
operations (preimage tests, unions, intersections, downward closure) are
integer arithmetic, which keeps the exhaustive searches cheap and makes
serialization order-stable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .fincat import EngineError


@dataclass(frozen=True)
class FiniteSet:
    """Ordered carrier of distinct element ids."""

    elements: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.elements)) != len(self.elements):
            raise EngineError(f"carrier has duplicate elements: {self.elements}")

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.elements)) - 1

    def index(self, elem: str) -> int:
        try:
            return self.elements.index(elem)
        except ValueError:
            raise EngineError(f"{elem!r} is not in carrier {self.elements}") from None

    def mask_of(self, elems) -> int:
        m = 0
        for e in elems:
            m |= 1 << self.index(e)
        return m

    def elems_of(self, mask: int) -> tuple[str, ...]:
        return tuple(e for i, e in enumerate(self.elements) if mask >> i & 1)

    def label(self, mask: int) -> str:
        return "{" + ",".join(self.elems_of(mask)) + "}"

    def all_masks(self) -> range:
        return range(1 << len(self.elements))


@dataclass(frozen=True)
class SetMap:
    """Map between carriers, stored as a codomain index per domain element."""

    dom: FiniteSet
    cod: FiniteSet
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != self.dom.size:
            raise EngineError("set map images do not cover the domain")
        if any(i < 0 or i >= self.cod.size for i in self.images):
            raise EngineError("set map image index out of range")

    @staticmethod
    def from_dict(dom: FiniteSet, cod: FiniteSet, table: dict[str, str]) -> "SetMap":
        missing = [e for e in dom.elements if e not in table]
        if missing:
            raise EngineError(f"set map table missing images for {missing}")
        return SetMap(dom, cod, tuple(cod.index(table[e]) for e in dom.elements))

    @staticmethod
    def identity(s: FiniteSet) -> "SetMap":
        return SetMap(s, s, tuple(range(s.size)))

    def apply(self, elem: str) -> str:
        return self.cod.elements[self.images[self.dom.index(elem)]]

    def image_mask(self, mask: int) -> int:
        out = 0
        for i, j in enumerate(self.images):
            if mask >> i & 1:
                out |= 1 << j
        return out

    def preimage_mask(self, mask: int) -> int:
        out = 0
        for i, j in enumerate(self.images):
            if mask >> j & 1:
                out |= 1 << i
        return out

    def then(self, other: "SetMap") -> "SetMap":
        """other after self."""
        if self.cod != other.dom:
            raise EngineError("set maps not composable")
        return SetMap(self.dom, other.cod, tuple(other.images[j] for j in self.images))

    def is_identity(self) -> bool:
        return self.dom == self.cod and self.images == tuple(range(self.dom.size))

    def as_dict(self) -> dict[str, str]:
        return {e: self.cod.elements[self.images[i]] for i, e in enumerate(self.dom.elements)}


def is_down_closed(masks: frozenset[int], n_bits: int) -> bool:
    """Closed under removing one element at a time, hence under all subsets."""
    for m in masks:
        for i in range(n_bits):
            if m >> i & 1 and (m & ~(1 << i)) not in masks:
                return False
    return True


@dataclass(frozen=True)
class NullityStructure:
    """A down-closed family of null subsets of a carrier, containing the empty set."""

    carrier: FiniteSet
    masks: frozenset[int]

    def __post_init__(self):
        full = self.carrier.full_mask
        for m in self.masks:
            if m & ~full:
                raise EngineError("null mask outside carrier")
        if 0 not in self.masks:
            raise EngineError("nullity structure must contain the empty set")
        if not is_down_closed(self.masks, self.carrier.size):
            bad = min(m for m in self.masks if any(
                m >> i & 1 and (m & ~(1 << i)) not in self.masks
                for i in range(self.carrier.size)
            ))
            raise EngineError(
                f"nullity family not down-closed at {self.carrier.label(bad)}"
            )

    def __contains__(self, mask: int) -> bool:
        return mask in self.masks

    def subseteq(self, other: "NullityStructure") -> bool:
        return self.carrier == other.carrier and self.masks <= other.masks

    def is_full(self) -> bool:
        return len(self.masks) == 1 << self.carrier.size

    def is_trivial(self) -> bool:
        return self.masks == frozenset({0})

    def sorted_labels(self) -> list[str]:
        return [self.carrier.label(m) for m in sorted(self.masks)]


def trivial_nullity(carrier: FiniteSet) -> NullityStructure:
    return NullityStructure(carrier, frozenset({0}))


def full_nullity(carrier: FiniteSet) -> NullityStructure:
    return NullityStructure(carrier, frozenset(carrier.all_masks()))


def proper_nullity(carrier: FiniteSet) -> NullityStructure:
    """Every subset except the whole carrier; illegal on an empty carrier."""
    if carrier.size == 0:
        raise EngineError("proper nullity needs a nonempty carrier")
    return NullityStructure(
        carrier, frozenset(m for m in carrier.all_masks() if m != carrier.full_mask)
    )


def cardinality_nullity(carrier: FiniteSet, k: int) -> NullityStructure:
    """Subsets of size at most k."""
    return NullityStructure(
        carrier, frozenset(m for m in carrier.all_masks() if bin(m).count("1") <= k)
    )


def down_closure(carrier: FiniteSet, masks) -> NullityStructure:
    """Smallest legal structure containing the given masks."""
    seen = {0}
    stack = list(masks)
    for m in stack:
        if m & ~carrier.full_mask:
            raise EngineError("mask outside carrier in down_closure")
    while stack:
        m = stack.pop()
        if m in seen:
            continue
        seen.add(m)
        for i in range(carrier.size):
            if m >> i & 1:
                stack.append(m & ~(1 << i))
    return NullityStructure(carrier, frozenset(seen))


def union_structures(a: NullityStructure, b: NullityStructure) -> NullityStructure:
    if a.carrier != b.carrier:
        raise EngineError("union of structures on different carriers")
    return NullityStructure(a.carrier, a.masks | b.masks)


def intersect_structures(a: NullityStructure, b: NullityStructure) -> NullityStructure:
    if a.carrier != b.carrier:
        raise EngineError("intersection of structures on different carriers")
    return NullityStructure(a.carrier, a.masks & b.masks)


def union_all(carrier: FiniteSet, structures) -> NullityStructure:
    """Union of a family; the empty family gives the trivial structure."""
    out = frozenset({0})
    for s in structures:
        if s.carrier != carrier:
            raise EngineError("union_all carrier mismatch")
        out |= s.masks
    return NullityStructure(carrier, out)


def intersect_all(carrier: FiniteSet, structures) -> NullityStructure:
    """Intersection of a family; the empty family gives the full power set."""
    out = None
    for s in structures:
        if s.carrier != carrier:
            raise EngineError("intersect_all carrier mismatch")
        out = s.masks if out is None else out & s.masks
    if out is None:
        return full_nullity(carrier)
    return NullityStructure(carrier, out)


def preimage_nullity(f: SetMap, n: NullityStructure) -> NullityStructure:
    """Structure on cod(f) of subsets whose preimage is null in dom(f)."""
    if n.carrier != f.dom:
        raise EngineError("preimage_nullity: structure does not live on dom(f)")
    masks = frozenset(
        s for s in f.cod.all_masks() if f.preimage_mask(s) in n.masks
    )
    return NullityStructure(f.cod, masks)


def pushforward_closure(f: SetMap, n: NullityStructure) -> NullityStructure:
    """Downward closure on cod(f) of the images of the null sets of dom(f)."""
    if n.carrier != f.dom:
        raise EngineError("pushforward_closure: structure does not live on dom(f)")
    return down_closure(f.cod, (f.image_mask(m) for m in n.masks))


def image_violation(
    f: SetMap, n_dom: NullityStructure, n_cod: NullityStructure
) -> int | None:
    """None if f maps every null set to a null set, else a witness mask."""
    if n_dom.carrier != f.dom or n_cod.carrier != f.cod:
        raise EngineError("image_violation: carrier mismatch")
    for m in sorted(n_dom.masks):
        if f.image_mask(m) not in n_cod.masks:
            return m
    return None


def image_preserves(
    f: SetMap, n_dom: NullityStructure, n_cod: NullityStructure
) -> bool:
    return image_violation(f, n_dom, n_cod) is None


def all_down_sets(carrier: FiniteSet, bound: int = 4) -> list[frozenset[int]]:
    """Every legal null family on the carrier, in deterministic order.

    Exhaustive over the power set of the power set, so the carrier is
    capped (2^2^4 = 65536 candidates is still fine, 2^2^5 is not).
    """
    n = carrier.size
    if n > bound:
        raise EngineError(f"all_down_sets: carrier size {n} exceeds bound {bound}")
    nonempty = [m for m in carrier.all_masks() if m != 0]
    out = []
    for extra in itertools.chain.from_iterable(
        itertools.combinations(nonempty, r) for r in range(len(nonempty) + 1)
    ):
        masks = frozenset({0, *extra})
        if is_down_closed(masks, n):
            out.append(masks)
    return sorted(out, key=lambda ms: (len(ms), sorted(ms)))


def is_preorder(p) -> bool:
    """At most one morphism between any ordered pair of objects."""
    seen = set()
    for m in p.morphisms:
        if (m.dom, m.cod) in seen:
            return False
        seen.add((m.dom, m.cod))
    return True


@dataclass(frozen=True)
class DownSet:
    """A downward-closed set of objects of a preorder category."""

    preorder: "object"
    members: frozenset[str]

    def __post_init__(self):
        p = self.preorder
        for x in self.members:
            if x not in set(p.objects):
                raise EngineError(f"down-set member {x!r} not in {p.name}")
        for m in p.morphisms:
            if m.cod in self.members and m.dom not in self.members:
                raise EngineError(
                    f"not downward closed: {m.dom} <= {m.cod} but only the "
                    "larger is a member"
                )


def downward_closure(p, seed) -> DownSet:
    """Smallest down-set of the preorder p containing the seed objects."""
    if not is_preorder(p):
        raise EngineError(f"{p.name} is not a preorder")
    members = set()
    stack = list(seed)
    for x in stack:
        if x not in set(p.objects):
            raise EngineError(f"seed object {x!r} not in {p.name}")
    below = {}
    for m in p.morphisms:
        below.setdefault(m.cod, []).append(m.dom)
    while stack:
        x = stack.pop()
        if x in members:
            continue
        members.add(x)
        stack.extend(below.get(x, ()))
    return DownSet(p, frozenset(members))


def union_down(a: DownSet, b: DownSet) -> DownSet:
    if not a.preorder.same_table(b.preorder):
        raise EngineError("union of down-sets over different preorders")
    return DownSet(a.preorder, a.members | b.members)


def intersect_down(a: DownSet, b: DownSet) -> DownSet:
    if not a.preorder.same_table(b.preorder):
        raise EngineError("intersection of down-sets over different preorders")
    return DownSet(a.preorder, a.members & b.members)
