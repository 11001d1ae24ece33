"""Pointwise Kan extensions for nullity-valued diagrams.

The pipeline's extensions are computed per target object over the FIBER of
that object (source objects mapping onto it, morphisms mapping onto its
identity), as the join (left) or meet (right) of the value families in the
down-set lattice of the object's carrier.  That is exactly the union /
intersection optimization the construction is built around, and a brute
cross-check path replays it through the generic universal-cocone search of
fincat inside the lattice.

Textbook comma-shaped slices are also provided; those run the general
(co)limit search in a materialized nullity category and are what the
Kan-identity lemma checks use.  Empty slices follow the lattice units:
left extensions give the trivial structure, right extensions the full
power set, on the target object's carrier.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .comma import CommaCategory, build_comma, const_functor, terminal_category
from .fincat import (
    DEFAULT_BUDGET,
    EngineError,
    FinCategory,
    FunctorData,
    ValidationReport,
    Violation,
    _violation,
    colimit,
    discrete_category,
    limit,
)
from .nullity import materialize_nullity_category, nullity_fiber_preorder
from .order import (
    FiniteSet,
    NullityStructure,
    SetMap,
    full_nullity,
    image_violation,
    intersect_all,
    trivial_nullity,
    union_all,
)


class NonCocomplete(EngineError):
    def __init__(self, obj: str, reason: str):
        super().__init__(f"no colimit over the slice at {obj}: {reason}")
        self.obj = obj
        self.reason = reason


class NonComplete(EngineError):
    def __init__(self, obj: str, reason: str):
        super().__init__(f"no limit over the slice at {obj}: {reason}")
        self.obj = obj
        self.reason = reason


@dataclass
class NullityDiagram:
    """Per-object structures and per-morphism carrier transports."""

    source: FinCategory
    values: dict[str, NullityStructure]
    transport: dict[str, SetMap] | None = None

    def check(self, *, max_violations: int = 20) -> ValidationReport:
        violations: list[Violation] = []
        checked = {"objects": 0, "transports": 0}
        for x in self.source.objects:
            checked["objects"] += 1
            if x not in self.values:
                violations.append(_violation("diagram-value-missing", object=x))
        if self.transport is not None and not violations:
            for m in self.source.morphisms:
                checked["transports"] += 1
                t = self.transport.get(m.name)
                if t is None:
                    violations.append(_violation("diagram-transport-missing", morphism=m.name))
                    continue
                if (
                    t.dom != self.values[m.dom].carrier
                    or t.cod != self.values[m.cod].carrier
                ):
                    violations.append(_violation("diagram-transport-endpoints", morphism=m.name))
                if len(violations) >= max_violations:
                    break
        return ValidationReport(not violations, checked, violations[:max_violations])

    def preservation_violations(self) -> list[Violation]:
        """Morphisms whose transport fails to send null sets to null sets."""
        if self.transport is None:
            return []
        out = []
        for m in self.source.morphisms:
            bad = image_violation(
                self.transport[m.name], self.values[m.dom], self.values[m.cod]
            )
            if bad is not None:
                out.append(
                    _violation(
                        "nullity-not-preserved",
                        morphism=m.name,
                        null_set=self.values[m.dom].carrier.label(bad),
                    )
                )
        return out


@dataclass
class KanResult:
    side: str
    mode: str
    extension: dict[str, NullityStructure]
    path: dict[str, str]
    slice_sizes: dict[str, int]
    comparison_ok: bool
    diagnostics: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# Slices.


def slice_comma(K: FunctorData, d: str, side: str) -> CommaCategory:
    """Textbook slice as a comma category over the terminal cospan leg."""
    star = terminal_category()
    anchor = const_functor(star, K.target, d, name=f"at[{d}]")
    if side == "left":
        return build_comma(K, anchor, f"({K.name}/{d})")
    if side == "right":
        return build_comma(anchor, K, f"({d}/{K.name})")
    raise EngineError(f"slice_comma: unknown side {side!r}")


def fiber_category(K: FunctorData, d: str) -> tuple[FinCategory, FunctorData]:
    """Subcategory of K's source lying strictly over d and its identity."""
    src = K.source
    idd = K.target.id_of(d)
    objs = [x for x in src.objects if K.on_obj(x) == d]
    keep = {
        m.name
        for m in src.morphisms
        if m.dom in set(objs) and m.cod in set(objs) and K.on_mor(m.name) == idd
    }
    mors = [(m.name, m.dom, m.cod) for m in src.morphisms if m.name in keep]
    identity = {x: src.id_of(x) for x in objs}
    comp = {
        (g, f): h
        for (g, f), h in src.composition.items()
        if g in keep and f in keep and src.cod(f) == src.dom(g)
    }
    cat = FinCategory(f"fiber[{K.name}@{d}]", objs, mors, identity, comp)
    incl = FunctorData(
        f"incl[{cat.name}]", cat, src, {x: x for x in objs}, {m: m for m in keep}
    )
    return cat, incl


def slice_diagram(
    K: FunctorData, d: str, side: str, mode: str = "comma"
) -> FunctorData:
    """Projection from the slice index at d to K's source."""
    if mode == "comma":
        sl = slice_comma(K, d, side)
        return sl.forget1 if side == "left" else sl.forget2
    if mode == "fiber":
        return fiber_category(K, d)[1]
    raise EngineError(f"slice_diagram: unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# The fiber path.


def _lattice_check(
    carrier: FiniteSet,
    pieces: list[NullityStructure],
    expected: NullityStructure,
    side: str,
    budget: int,
) -> bool:
    """Replay the join/meet through the generic universal search."""
    lattice, fams = nullity_fiber_preorder(carrier)
    node_of = {masks: node for node, masks in fams.items()}
    idx = discrete_category(f"disc{len(pieces)}", [f"i{k}" for k in range(len(pieces))])
    diag = FunctorData(
        "fiber-values",
        idx,
        lattice,
        {f"i{k}": node_of[p.masks] for k, p in enumerate(pieces)},
        {idx.id_of(f"i{k}"): lattice.id_of(node_of[p.masks]) for k, p in enumerate(pieces)},
    )
    res = colimit(diag, budget) if side == "left" else limit(diag, budget)
    if res.cone is None:
        return False
    return fams[res.cone.tip] == expected.masks


def _kan_fiber(
    K: FunctorData,
    diag: NullityDiagram,
    target_carriers: dict[str, FiniteSet],
    side: str,
    cross_check: bool,
    budget: int,
) -> KanResult:
    if not diag.source.same_table(K.source):
        raise EngineError("kan: diagram and K have different sources")
    extension: dict[str, NullityStructure] = {}
    path: dict[str, str] = {}
    sizes: dict[str, int] = {}
    bad_squares: list[Violation] = []
    comparison_ok = True

    for d in K.target.objects:
        carrier = target_carriers[d]
        fiber, _ = fiber_category(K, d)
        pieces = []
        for x in fiber.objects:
            v = diag.values[x]
            if v.carrier != carrier:
                raise EngineError(
                    f"kan: value at {x} lives on {v.carrier.elements}, "
                    f"expected the carrier of {d}"
                )
            pieces.append(v)
        if side == "left":
            ext = union_all(carrier, pieces) if pieces else trivial_nullity(carrier)
        else:
            ext = intersect_all(carrier, pieces) if pieces else full_nullity(carrier)
        extension[d] = ext
        sizes[d] = len(pieces)
        path[d] = "fast"
        if diag.transport is not None:
            for m in fiber.morphisms:
                if fiber.is_identity(m.name):
                    continue
                bad = image_violation(
                    diag.transport[m.name], diag.values[m.dom], diag.values[m.cod]
                )
                if bad is not None:
                    bad_squares.append(
                        _violation(
                            "fiber-square-not-null-preserving",
                            target=d,
                            morphism=m.name,
                            null_set=diag.values[m.dom].carrier.label(bad),
                        )
                    )
        if cross_check:
            if not _lattice_check(carrier, pieces, ext, side, budget):
                comparison_ok = False
            path[d] = "fast+brute"

    # Unit (left) / counit (right) components are carrier-identity
    # inclusions; record that they are well formed.
    unit_bad = []
    for x in K.source.objects:
        v, e = diag.values[x], extension[K.on_obj(x)]
        ok = v.masks <= e.masks if side == "left" else e.masks <= v.masks
        if not ok:
            unit_bad.append(x)
    return KanResult(
        side=side,
        mode="fiber",
        extension=extension,
        path=path,
        slice_sizes=sizes,
        comparison_ok=comparison_ok and not unit_bad,
        diagnostics={
            "fiber_squares_not_preserving": [v.as_dict() for v in bad_squares],
            "comparison_failures": unit_bad,
        },
    )


# ---------------------------------------------------------------------------
# The general comma-slice path.


def _kan_comma(
    K: FunctorData,
    diag: NullityDiagram,
    target_carriers: dict[str, FiniteSet],
    side: str,
    budget: int,
    max_carrier: int,
) -> KanResult:
    if diag.transport is None:
        raise EngineError("kan: comma mode needs transports for slice comparisons")
    carriers = [v.carrier for v in diag.values.values()] + list(target_carriers.values())
    mat = materialize_nullity_category("kan-nullity", carriers, max_carrier)

    extension: dict[str, NullityStructure] = {}
    path: dict[str, str] = {}
    sizes: dict[str, int] = {}
    for d in K.target.objects:
        sl = slice_comma(K, d, side)
        proj = sl.forget1 if side == "left" else sl.forget2
        sizes[d] = len(sl.category.objects)
        if not sl.category.objects:
            extension[d] = (
                trivial_nullity(target_carriers[d])
                if side == "left"
                else full_nullity(target_carriers[d])
            )
            path[d] = "empty"
            continue
        obj_map = {
            o: mat.object_of(diag.values[proj.on_obj(o)]) for o in sl.category.objects
        }
        mor_map = {}
        for m in sl.category.morphisms:
            u = proj.on_mor(m.name)
            mor_map[m.name] = mat.morphism_of(
                obj_map[m.dom], obj_map[m.cod], diag.transport[u]
            )
        diagram = FunctorData("slice-values", sl.category, mat.category, obj_map, mor_map)
        res = colimit(diagram, budget) if side == "left" else limit(diagram, budget)
        if res.cone is None:
            err = NonCocomplete if side == "left" else NonComplete
            raise err(d, res.reason or "no universal cone")
        extension[d] = mat.structure[res.cone.tip]
        path[d] = "brute"
    return KanResult(
        side=side,
        mode="comma",
        extension=extension,
        path=path,
        slice_sizes=sizes,
        comparison_ok=True,
        diagnostics={},
    )


def left_kan(
    K: FunctorData,
    diag: NullityDiagram,
    target_carriers: dict[str, FiniteSet],
    *,
    mode: str = "fiber",
    cross_check: bool = False,
    budget: int = DEFAULT_BUDGET,
    max_carrier: int = 3,
) -> KanResult:
    if mode == "fiber":
        return _kan_fiber(K, diag, target_carriers, "left", cross_check, budget)
    if mode == "comma":
        return _kan_comma(K, diag, target_carriers, "left", budget, max_carrier)
    raise EngineError(f"left_kan: unknown mode {mode!r}")


def right_kan(
    K: FunctorData,
    diag: NullityDiagram,
    target_carriers: dict[str, FiniteSet],
    *,
    mode: str = "fiber",
    cross_check: bool = False,
    budget: int = DEFAULT_BUDGET,
    max_carrier: int = 3,
) -> KanResult:
    if mode == "fiber":
        return _kan_fiber(K, diag, target_carriers, "right", cross_check, budget)
    if mode == "comma":
        return _kan_comma(K, diag, target_carriers, "right", budget, max_carrier)
    raise EngineError(f"right_kan: unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# Universality against competitors.


def enumerate_assignments(
    target: FinCategory,
    target_carriers: dict[str, FiniteSet],
    target_transports: dict[str, SetMap] | None,
    budget: int,
):
    """All per-object structures, filtered to functorial ones if transports
    are given; deterministic order."""
    from .order import all_down_sets

    per_obj = {d: all_down_sets(target_carriers[d]) for d in target.objects}
    total = 1
    for fams in per_obj.values():
        total *= len(fams)
        if total > budget:
            raise EngineError(
                f"enumerate_assignments: {total}+ candidates exceed budget {budget}"
            )
    import itertools

    objs = list(target.objects)
    for combo in itertools.product(*(per_obj[d] for d in objs)):
        cand = {
            d: NullityStructure(target_carriers[d], masks)
            for d, masks in zip(objs, combo)
        }
        if target_transports is not None:
            ok = all(
                image_violation(
                    target_transports[m.name], cand[m.dom], cand[m.cod]
                )
                is None
                for m in target.morphisms
            )
            if not ok:
                continue
        yield cand


def check_universal(
    K: FunctorData,
    diag: NullityDiagram,
    candidate: KanResult,
    *,
    target_carriers: dict[str, FiniteSet],
    target_transports: dict[str, SetMap] | None = None,
    competitors=None,
    budget: int = DEFAULT_BUDGET,
    max_violations: int = 20,
) -> ValidationReport:
    """Check the candidate extension against every competitor.

    Left side: the unit F(x) <= cand(Kx) must exist, and every competitor H
    admitting a comparison F(x) <= H(Kx) must factor through the candidate
    (cand(d) <= H(d) for all d).  Right side dual.
    """
    side = candidate.side
    violations: list[Violation] = []
    checked = {"unit_components": 0, "competitors": 0}

    for x in K.source.objects:
        checked["unit_components"] += 1
        v, e = diag.values[x], candidate.extension[K.on_obj(x)]
        ok = v.masks <= e.masks if side == "left" else e.masks <= v.masks
        if not ok:
            violations.append(
                _violation(
                    "kan-unit-missing" if side == "left" else "kan-counit-missing",
                    object=x,
                )
            )

    if competitors is None:
        competitors = enumerate_assignments(
            K.target, target_carriers, target_transports, budget
        )
    for H in competitors:
        checked["competitors"] += 1
        if side == "left":
            admits = all(
                diag.values[x].masks <= H[K.on_obj(x)].masks for x in K.source.objects
            )
            factors = all(
                candidate.extension[d].masks <= H[d].masks for d in K.target.objects
            )
        else:
            admits = all(
                H[K.on_obj(x)].masks <= diag.values[x].masks for x in K.source.objects
            )
            factors = all(
                H[d].masks <= candidate.extension[d].masks for d in K.target.objects
            )
        if admits and not factors:
            bad = next(
                d
                for d in K.target.objects
                if not (
                    candidate.extension[d].masks <= H[d].masks
                    if side == "left"
                    else H[d].masks <= candidate.extension[d].masks
                )
            )
            violations.append(
                _violation(
                    "kan-not-universal",
                    object=bad,
                    competitor=H[bad].carrier.label(
                        min(
                            (H[bad].masks ^ candidate.extension[bad].masks),
                            default=0,
                        )
                    ),
                )
            )
        if len(violations) >= max_violations:
            break
    return ValidationReport(not violations, checked, violations[:max_violations])
