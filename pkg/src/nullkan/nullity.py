"""Materialized set and nullity categories, carrier actions, assignments.

The nullity category over a batch of carriers has one object per (carrier,
null family) pair and one morphism per set map that sends null sets to null
sets.  Materializing it keeps the universal-property searches honest: they
run inside a real finite category rather than a shortcut lattice.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .fincat import (
    EngineError,
    FinCategory,
    FunctorData,
    Mor,
    ValidationReport,
    Violation,
    _violation,
    build_preorder,
)
from .order import (
    FiniteSet,
    NullityStructure,
    SetMap,
    all_down_sets,
    cardinality_nullity,
    image_violation,
    preimage_nullity,
    proper_nullity,
    trivial_nullity,
    union_all,
)


def carrier_id(s: FiniteSet) -> str:
    return "[" + ",".join(s.elements) + "]"


def family_id(s: FiniteSet, masks) -> str:
    return "|".join(s.label(m) for m in sorted(masks))


def _map_id(dom_id: str, cod_id: str, images: tuple[int, ...]) -> str:
    return f"{dom_id}>{cod_id}#{','.join(map(str, images))}"


def all_set_maps(dom: FiniteSet, cod: FiniteSet):
    """Every map dom -> cod as an images tuple, in lexicographic order."""
    return itertools.product(range(cod.size), repeat=dom.size)


def set_category(name: str, carriers) -> tuple[FinCategory, dict, dict]:
    """The full category of the given carriers and all maps between them.

    Returns (category, object id -> FiniteSet, morphism id -> SetMap).
    """
    distinct: list[FiniteSet] = []
    for c in carriers:
        if c not in distinct:
            distinct.append(c)
    obj_ids = [carrier_id(c) for c in distinct]
    if len(set(obj_ids)) != len(obj_ids):
        raise EngineError("set_category: carrier label collision")
    obj_carrier = dict(zip(obj_ids, distinct))

    mors: list[Mor] = []
    mor_map: dict[str, SetMap] = {}
    by_data: dict[tuple[str, str, tuple[int, ...]], str] = {}
    for d_id, d in zip(obj_ids, distinct):
        for c_id, c in zip(obj_ids, distinct):
            for images in all_set_maps(d, c):
                mid = _map_id(d_id, c_id, images)
                mors.append(Mor(mid, d_id, c_id))
                mor_map[mid] = SetMap(d, c, images)
                by_data[(d_id, c_id, images)] = mid

    identity = {
        o: by_data[(o, o, tuple(range(obj_carrier[o].size)))] for o in obj_ids
    }
    comp = {}
    for g in mors:
        for f in mors:
            if f.cod == g.dom:
                gf = mor_map[f.name].then(mor_map[g.name])
                comp[(g.name, f.name)] = by_data[(f.dom, g.cod, gf.images)]
    cat = FinCategory(name, obj_ids, mors, identity, comp)
    return cat, obj_carrier, mor_map


@dataclass
class MaterializedNullity:
    category: FinCategory
    structure: dict[str, NullityStructure]  # object id -> structure
    setmap: dict[str, SetMap]  # morphism id -> underlying map
    _index: dict[tuple[tuple[str, ...], frozenset[int]], str]

    def object_of(self, s: NullityStructure) -> str:
        try:
            return self._index[(s.carrier.elements, s.masks)]
        except KeyError:
            raise EngineError("structure not present in materialized category") from None

    def morphism_of(self, a: str, b: str, f: SetMap) -> str:
        mid = _map_id(a, b, f.images)
        if mid not in self.setmap:
            raise EngineError(
                f"{self.category.name}: {mid} is not a nullity morphism "
                "(the map does not preserve null sets)"
            )
        return mid


def materialize_nullity_category(
    name: str, carriers, max_carrier: int = 3
) -> MaterializedNullity:
    """All null families on the given carriers and all null-preserving maps."""
    distinct: list[FiniteSet] = []
    for c in carriers:
        if c.size > max_carrier:
            raise EngineError(
                f"materialize: carrier size {c.size} exceeds bound {max_carrier}"
            )
        if c not in distinct:
            distinct.append(c)

    objects: list[str] = []
    structure: dict[str, NullityStructure] = {}
    index: dict[tuple[tuple[str, ...], frozenset[int]], str] = {}
    for c in distinct:
        cid = carrier_id(c)
        for masks in all_down_sets(c):
            oid = f"{cid}{family_id(c, masks)}"
            if oid in structure:
                raise EngineError("materialize: object label collision")
            objects.append(oid)
            structure[oid] = NullityStructure(c, masks)
            index[(c.elements, masks)] = oid

    mors: list[Mor] = []
    setmap: dict[str, SetMap] = {}
    by_data: dict[tuple[str, str, tuple[int, ...]], str] = {}
    for a in objects:
        na = structure[a]
        for b in objects:
            nb = structure[b]
            for images in all_set_maps(na.carrier, nb.carrier):
                f = SetMap(na.carrier, nb.carrier, images)
                if image_violation(f, na, nb) is None:
                    mid = _map_id(a, b, images)
                    mors.append(Mor(mid, a, b))
                    setmap[mid] = f
                    by_data[(a, b, images)] = mid

    identity = {
        o: by_data[(o, o, tuple(range(structure[o].carrier.size)))] for o in objects
    }

    by_cod: dict[str, list[Mor]] = {o: [] for o in objects}
    for f in mors:
        by_cod[f.cod].append(f)
    compose_images: dict[tuple[tuple[int, ...], tuple[int, ...]], tuple[int, ...]] = {}
    comp = {}
    for g in mors:
        gi = setmap[g.name].images
        for f in by_cod[g.dom]:
            fi = setmap[f.name].images
            key = (gi, fi)
            gf = compose_images.get(key)
            if gf is None:
                gf = tuple(gi[j] for j in fi)
                compose_images[key] = gf
            comp[(g.name, f.name)] = by_data[(f.dom, g.cod, gf)]

    cat = FinCategory(name, objects, mors, identity, comp)
    return MaterializedNullity(cat, structure, setmap, index)


def nullity_fiber_preorder(carrier: FiniteSet) -> tuple[FinCategory, dict[str, frozenset[int]]]:
    """All null families on one carrier, ordered by inclusion.

    This is the single-carrier, identity-maps-only face of the nullity
    category; joins and meets exist here, so it is where the brute-force
    cross-checks of the fast union/intersection paths run.
    """
    fams = all_down_sets(carrier)
    ids = {family_id(carrier, ms): ms for ms in fams}
    labels = [family_id(carrier, ms) for ms in fams]
    leq = [
        (la, lb)
        for la in labels
        for lb in labels
        if ids[la] <= ids[lb]
    ]
    return build_preorder(f"downsets{carrier_id(carrier)}", labels, leq), ids


# ---------------------------------------------------------------------------
# Carrier actions (set-valued payloads riding on a functor).


def carrier_of(gamma: FunctorData, x: str) -> FiniteSet:
    if gamma.carrier_obj is None or x not in gamma.carrier_obj:
        raise EngineError(f"functor {gamma.name} has no carrier for object {x!r}")
    return gamma.carrier_obj[x]


def setmap_of(gamma: FunctorData, m: str) -> SetMap:
    if gamma.carrier_mor is None or m not in gamma.carrier_mor:
        raise EngineError(f"functor {gamma.name} has no set map for morphism {m!r}")
    return gamma.carrier_mor[m]


def check_carrier_action(gamma: FunctorData, *, max_violations: int = 20) -> ValidationReport:
    """Check that the carrier payload is itself functorial.

    Endpoints must match the object carriers, identities must be identity
    maps, and payload composition must agree with the source's table.
    """
    src = gamma.source
    violations: list[Violation] = []
    checked = {"endpoints": 0, "identities": 0, "composition": 0}
    for m in src.morphisms:
        checked["endpoints"] += 1
        sm = setmap_of(gamma, m.name)
        if sm.dom != carrier_of(gamma, m.dom) or sm.cod != carrier_of(gamma, m.cod):
            violations.append(_violation("carrier-endpoints", morphism=m.name))
    for x in src.objects:
        checked["identities"] += 1
        if not setmap_of(gamma, src.id_of(x)).is_identity():
            violations.append(_violation("carrier-identity", object=x))
    for g, f in src.composable_pairs():
        checked["composition"] += 1
        lhs = setmap_of(gamma, f).then(setmap_of(gamma, g))
        if lhs != setmap_of(gamma, src.compose(g, f)):
            violations.append(_violation("carrier-composition", g=g, f=f))
        if len(violations) >= max_violations:
            break
    return ValidationReport(not violations, checked, violations)


def carrier_functor(name: str, src: FinCategory, obj: dict, mor: dict) -> FunctorData:
    """Package a carrier action as an honest functor into its set category."""
    cat, obj_carrier, mor_setmap = set_category(f"Set[{name}]", list(obj.values()))
    rev = {carrier_id(c): oid for oid, c in obj_carrier.items()}
    obj_map = {x: rev[carrier_id(obj[x])] for x in src.objects}
    mor_map = {}
    for m in src.morphisms:
        sm = mor[m.name]
        mor_map[m.name] = _map_id(obj_map[m.dom], obj_map[m.cod], sm.images)
    return FunctorData(name, src, cat, obj_map, mor_map, carrier_obj=dict(obj), carrier_mor=dict(mor))


# ---------------------------------------------------------------------------
# Nullity assignments along a carrier action.


def check_nullity_assignment(
    gamma: FunctorData,
    assignment: dict[str, NullityStructure],
    *,
    max_violations: int = 20,
) -> ValidationReport:
    """Does every morphism send null sets to null sets?

    This is exactly the condition for the assignment to lift the carrier
    action to a functor into the nullity category.
    """
    src = gamma.source
    violations: list[Violation] = []
    checked = {"objects": 0, "morphisms": 0}
    for x in src.objects:
        checked["objects"] += 1
        n = assignment.get(x)
        if n is None:
            violations.append(_violation("assignment-missing", object=x))
        elif n.carrier != carrier_of(gamma, x):
            violations.append(_violation("assignment-carrier", object=x))
    if violations:
        return ValidationReport(False, checked, violations[:max_violations])
    for m in src.morphisms:
        checked["morphisms"] += 1
        bad = image_violation(setmap_of(gamma, m.name), assignment[m.dom], assignment[m.cod])
        if bad is not None:
            violations.append(
                _violation(
                    "null-not-preserved",
                    morphism=m.name,
                    null_set=assignment[m.dom].carrier.label(bad),
                )
            )
            if len(violations) >= max_violations:
                break
    return ValidationReport(not violations, checked, violations)


def bar_null(
    gamma: FunctorData, assignment: dict[str, NullityStructure]
) -> dict[str, NullityStructure]:
    """Saturation sweep: a set is null at x when some incoming morphism
    pulls it back to a null set.

    Always contains the original assignment (identities are incoming) and
    applying it twice changes nothing.
    """
    src = gamma.source
    out: dict[str, NullityStructure] = {}
    for x in src.objects:
        pieces = []
        for m in src.morphisms:
            if m.cod == x:
                pieces.append(preimage_nullity(setmap_of(gamma, m.name), assignment[m.dom]))
        out[x] = union_all(carrier_of(gamma, x), pieces)
    return out


def is_saturated(gamma: FunctorData, assignment: dict[str, NullityStructure]) -> bool:
    bar = bar_null(gamma, assignment)
    return all(bar[x].masks == assignment[x].masks for x in gamma.source.objects)


def check_nullity_morphism(
    phi: SetMap, a: NullityStructure, b: NullityStructure
) -> bool:
    """The category's morphism rule: images of null sets are null."""
    return image_violation(phi, a, b) is None


def check_conullity_morphism(
    phi: SetMap, a: NullityStructure, b: NullityStructure
) -> bool:
    """Diagnostic alternate rule: preimages of null sets are null.

    Not the Nullity category's morphism rule; exposed so models can report
    which maps would survive the stricter reading.
    """
    if a.carrier != phi.dom or b.carrier != phi.cod:
        raise EngineError("check_conullity_morphism: carrier mismatch")
    return all(phi.preimage_mask(s) in a.masks for s in b.masks)


def base_nullity(kind: str, carrier: FiniteSet, k: int | None = None) -> NullityStructure:
    """Finite surrogate base structures: trivial, proper, cardinality k."""
    if kind == "trivial":
        return trivial_nullity(carrier)
    if kind == "proper":
        return proper_nullity(carrier)
    if kind == "cardinality":
        if k is None:
            raise EngineError("base_nullity: cardinality kind needs k")
        return cardinality_nullity(carrier, k)
    raise EngineError(f"base_nullity: unknown kind {kind!r}")
