"""Finite categories as explicit tables, with exhaustive and deterministic checks.

A category here is a finite list of objects, a finite list of named morphisms,
an identity assignment and a total composition table.  Every operation walks
these tables in declared order, so equal inputs give byte-equal outputs, and
every law check can produce a concrete witness when it fails.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

DEFAULT_BUDGET = 200_000
MAX_OBJECTS = 64
MAX_MORPHISMS = 4096


class EngineError(Exception):
    """Structurally bad input: unresolved names, broken tables, illegal sizes."""


class BudgetExceeded(EngineError):
    """An exhaustive search ran past its step budget."""

    def __init__(self, what: str, budget: int):
        super().__init__(f"budget exceeded in {what} (budget={budget})")
        self.what = what
        self.budget = budget


@dataclass(frozen=True)
class Mor:
    """A named morphism with explicit endpoints."""

    name: str
    dom: str
    cod: str


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple[tuple[str, str], ...]

    def as_dict(self) -> dict:
        return {"law": self.law, "witness": dict(self.witness)}


def _violation(law: str, **witness: str) -> Violation:
    return Violation(law, tuple(sorted(witness.items())))


@dataclass
class ValidationReport:
    ok: bool
    checked: dict[str, int]
    violations: list[Violation]

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "checked": dict(sorted(self.checked.items())),
            "violations": [v.as_dict() for v in self.violations],
        }


class FinCategory:
    """Explicit finite category.

    `composition[(g, f)]` is the name of g after f, defined exactly when
    cod(f) == dom(g).  Referential integrity is enforced on construction;
    the categorical laws are checked separately by `validate_category` so
    that deliberately broken tables can be built and then rejected.
    """

    def __init__(
        self,
        name: str,
        objects: tuple[str, ...] | list[str],
        morphisms,
        identity: dict[str, str],
        composition: dict[tuple[str, str], str],
    ):
        self.name = name
        self.objects = tuple(objects)
        self.morphisms = tuple(
            m if isinstance(m, Mor) else Mor(*m) for m in morphisms
        )
        self.identity = dict(identity)
        self.composition = dict(composition)

        if len(set(self.objects)) != len(self.objects):
            raise EngineError(f"{name}: duplicate object names")
        self._mor = {}
        for m in self.morphisms:
            if m.name in self._mor:
                raise EngineError(f"{name}: duplicate morphism name {m.name!r}")
            if m.dom not in set(self.objects) or m.cod not in set(self.objects):
                raise EngineError(f"{name}: morphism {m.name!r} has unknown endpoint")
            self._mor[m.name] = m
        for x, i in self.identity.items():
            if x not in set(self.objects) or i not in self._mor:
                raise EngineError(f"{name}: identity table references unknown name")
        for (g, f), h in self.composition.items():
            if g not in self._mor or f not in self._mor or h not in self._mor:
                raise EngineError(f"{name}: composition table references unknown name")

        self._obj_index = {x: i for i, x in enumerate(self.objects)}
        self._mor_index = {m.name: i for i, m in enumerate(self.morphisms)}
        self._hom: dict[tuple[str, str], list[str]] = {}
        self._by_cod: dict[str, list[str]] = {x: [] for x in self.objects}
        for m in self.morphisms:
            self._hom.setdefault((m.dom, m.cod), []).append(m.name)
            self._by_cod[m.cod].append(m.name)

    def mor(self, name: str) -> Mor:
        try:
            return self._mor[name]
        except KeyError:
            raise EngineError(f"{self.name}: no morphism {name!r}") from None

    def dom(self, name: str) -> str:
        return self.mor(name).dom

    def cod(self, name: str) -> str:
        return self.mor(name).cod

    def id_of(self, obj: str) -> str:
        try:
            return self.identity[obj]
        except KeyError:
            raise EngineError(f"{self.name}: no identity for object {obj!r}") from None

    def is_identity(self, name: str) -> bool:
        m = self.mor(name)
        return self.identity.get(m.dom) == name and m.dom == m.cod

    def compose(self, g: str, f: str) -> str:
        """g after f."""
        try:
            return self.composition[(g, f)]
        except KeyError:
            raise EngineError(
                f"{self.name}: composition table has no entry for ({g!r}, {f!r})"
            ) from None

    def compose_path(self, *names: str) -> str:
        """Compose a whole path written outermost-first: compose_path(h, g, f)."""
        out = names[0]
        for f in names[1:]:
            out = self.compose(out, f)
        return out

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        return tuple(self._hom.get((a, b), ()))

    def endos(self, a: str) -> tuple[str, ...]:
        return self.hom(a, a)

    def composable_pairs(self):
        """Yield (g, f) with cod(f) == dom(g), in deterministic order."""
        for g in self.morphisms:
            for f in self._by_cod[g.dom]:
                yield g.name, f

    def same_table(self, other: "FinCategory") -> bool:
        return (
            self.objects == other.objects
            and self.morphisms == other.morphisms
            and self.identity == other.identity
            and self.composition == other.composition
        )

    def __repr__(self):
        return (
            f"FinCategory({self.name!r}, {len(self.objects)} objects, "
            f"{len(self.morphisms)} morphisms)"
        )


def _composition_triples(cat: FinCategory) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The composition table as parallel (g, f, gf) index arrays."""
    if not cat.composition:
        empty = np.empty(0, dtype=np.int32)
        return empty, empty, empty
    ix = cat._mor_index
    trip = [(ix[g], ix[f], ix[h]) for (g, f), h in cat.composition.items()]
    garr, farr, harr = (np.array(c, dtype=np.int32) for c in zip(*trip))
    return garr, farr, harr


def validate_category(
    cat: FinCategory,
    *,
    max_objects: int = MAX_OBJECTS,
    max_morphisms: int = MAX_MORPHISMS,
    max_violations: int = 20,
) -> ValidationReport:
    """Check the full category laws, collecting witnesses for failures.

    Identity and unit problems are found by direct table walks; totality
    and associativity are swept with vectorized passes over the whole
    composition table, grouped so large hom-sets stay cheap.
    """
    if len(cat.objects) > max_objects:
        raise EngineError(
            f"{cat.name}: {len(cat.objects)} objects exceeds bound {max_objects}"
        )
    if len(cat.morphisms) > max_morphisms:
        raise EngineError(
            f"{cat.name}: {len(cat.morphisms)} morphisms exceeds bound {max_morphisms}"
        )

    violations: list[Violation] = []
    checked = {"identity": 0, "unit": 0, "totality": 0, "associativity": 0}

    def add(v: Violation) -> bool:
        violations.append(v)
        return len(violations) >= max_violations

    full = False
    for x in cat.objects:
        checked["identity"] += 1
        i = cat.identity.get(x)
        if i is None:
            full = add(_violation("identity-missing", object=x))
        else:
            m = cat.mor(i)
            if m.dom != x or m.cod != x:
                full = add(_violation("identity-endpoints", object=x, identity=i))
        if full:
            return ValidationReport(False, checked, violations)

    # Totality and endpoint sanity of the composition table. Index arithmetic
    # covers the whole table; the per-pair witness walk only runs once the
    # entry count proves some composable pair has no entry.
    names = [m.name for m in cat.morphisms]
    dom_ix = np.array([cat._obj_index[m.dom] for m in cat.morphisms], dtype=np.int32)
    cod_ix = np.array([cat._obj_index[m.cod] for m in cat.morphisms], dtype=np.int32)
    n_obj = len(cat.objects)
    n_pairs = int(
        np.bincount(dom_ix, minlength=n_obj) @ np.bincount(cod_ix, minlength=n_obj)
    )
    checked["totality"] = n_pairs
    garr, farr, harr = _composition_triples(cat)
    composable = cod_ix[farr] == dom_ix[garr]
    for i in np.nonzero(~composable)[0]:
        if add(_violation("composition-spurious", g=names[garr[i]], f=names[farr[i]])):
            return ValidationReport(False, checked, violations)
    bad_ends = composable & (
        (dom_ix[harr] != dom_ix[farr]) | (cod_ix[harr] != cod_ix[garr])
    )
    for i in np.nonzero(bad_ends)[0]:
        if add(
            _violation(
                "composition-endpoints",
                g=names[garr[i]],
                f=names[farr[i]],
                composite=names[harr[i]],
            )
        ):
            return ValidationReport(False, checked, violations)
    if int(composable.sum()) < n_pairs:
        have = set(cat.composition)
        for g, f in cat.composable_pairs():
            if (g, f) not in have:
                if add(_violation("composition-missing", g=g, f=f)):
                    return ValidationReport(False, checked, violations)

    # Unit laws.
    for m in cat.morphisms:
        checked["unit"] += 1
        lid = cat.identity.get(m.cod)
        rid = cat.identity.get(m.dom)
        if lid is not None and cat.composition.get((lid, m.name)) != m.name:
            if add(_violation("left-unit", morphism=m.name, identity=lid)):
                return ValidationReport(False, checked, violations)
        if rid is not None and cat.composition.get((m.name, rid)) != m.name:
            if add(_violation("right-unit", morphism=m.name, identity=rid)):
                return ValidationReport(False, checked, violations)

    n_assoc, assoc_viols = _associativity_sweep(cat, max_violations - len(violations))
    checked["associativity"] = n_assoc
    violations.extend(assoc_viols)
    return ValidationReport(not violations, checked, violations)


def _associativity_sweep(cat: FinCategory, limit: int) -> tuple[int, list[Violation]]:
    n_mor = len(cat.morphisms)
    n_obj = len(cat.objects)
    if n_mor == 0 or limit <= 0:
        return 0, []
    dom = np.array([cat._obj_index[m.dom] for m in cat.morphisms], dtype=np.int32)
    cod = np.array([cat._obj_index[m.cod] for m in cat.morphisms], dtype=np.int32)
    table = np.full((n_mor, n_mor), -1, dtype=np.int32)
    garr, farr, harr = _composition_triples(cat)
    ok = cod[farr] == dom[garr]
    table[garr[ok], farr[ok]] = harr[ok]

    gs, fs = np.nonzero(table >= 0)
    gf = table[gs, fs]
    order = np.argsort(cod[gs], kind="stable")
    gs, fs, gf = gs[order], fs[order], gf[order]
    bounds = np.searchsorted(cod[gs], np.arange(n_obj + 1))

    names = [m.name for m in cat.morphisms]
    total = 0
    viols: list[Violation] = []
    for c in range(n_obj):
        lo, hi = int(bounds[c]), int(bounds[c + 1])
        if lo == hi:
            continue
        hs = np.nonzero(dom == c)[0]
        if hs.size == 0:
            continue
        pf, pg, pgf = fs[lo:hi], gs[lo:hi], gf[lo:hi]
        for h0 in range(0, hs.size, 64):
            hh = hs[h0 : h0 + 64][:, None]
            lhs = table[hh, pgf[None, :]]
            hg = table[hh, pg[None, :]]
            rhs = table[np.where(hg >= 0, hg, 0), pf[None, :]]
            valid = hg >= 0
            total += int(valid.sum())
            bad = np.nonzero(valid & (lhs != rhs))
            for bi, bj in zip(*bad):
                viols.append(
                    _violation(
                        "associativity",
                        h=names[int(hh[bi, 0])],
                        g=names[int(pg[bj])],
                        f=names[int(pf[bj])],
                    )
                )
                if len(viols) >= limit:
                    return total, viols
    return total, viols


# ---------------------------------------------------------------------------
# Standard small categories.


def discrete_category(name: str, objects) -> FinCategory:
    objects = tuple(objects)
    ids = {x: f"id:{x}" for x in objects}
    mors = [Mor(ids[x], x, x) for x in objects]
    comp = {(ids[x], ids[x]): ids[x] for x in objects}
    return FinCategory(name, objects, mors, ids, comp)


def build_preorder(name: str, elements, leq) -> FinCategory:
    """Category of a preorder: one morphism le:x>y per related pair.

    `leq` is any iterable of (x, y) pairs; it must be reflexive and
    transitive over `elements` or this raises with a witness.
    """
    elements = tuple(elements)
    rel = set(leq)
    eset = set(elements)
    for x, y in rel:
        if x not in eset or y not in eset:
            raise EngineError(f"{name}: relation mentions unknown element ({x!r}, {y!r})")
    for x in elements:
        if (x, x) not in rel:
            raise EngineError(f"{name}: relation not reflexive at {x!r}")
    for x, y in rel:
        for y2, z in rel:
            if y2 == y and (x, z) not in rel:
                raise EngineError(
                    f"{name}: relation not transitive: ({x!r},{y!r}) and ({y!r},{z!r})"
                )

    def mname(x, y):
        return f"le:{x}>{y}"

    pairs = [(x, y) for x in elements for y in elements if (x, y) in rel]
    mors = [Mor(mname(x, y), x, y) for x, y in pairs]
    ids = {x: mname(x, x) for x in elements}
    comp = {}
    for x, y in pairs:
        for y2, z in pairs:
            if y2 == y:
                comp[(mname(y, z), mname(x, y))] = mname(x, z)
    return FinCategory(name, elements, mors, ids, comp)


def chain_preorder(name: str, labels) -> FinCategory:
    """Total order on `labels` in the given order."""
    labels = tuple(labels)
    leq = [
        (labels[i], labels[j])
        for i in range(len(labels))
        for j in range(i, len(labels))
    ]
    return build_preorder(name, labels, leq)


def subset_label(elements: tuple[str, ...], mask: int) -> str:
    inner = ",".join(e for i, e in enumerate(elements) if mask >> i & 1)
    return "{" + inner + "}"


def power_set_preorder(name: str, elements, bound: int = 5) -> FinCategory:
    """All subsets of `elements` ordered by inclusion."""
    elements = tuple(elements)
    if len(elements) > bound:
        raise EngineError(f"{name}: {len(elements)} elements exceeds bound {bound}")
    masks = list(range(1 << len(elements)))
    labels = {m: subset_label(elements, m) for m in masks}
    leq = [
        (labels[a], labels[b]) for a in masks for b in masks if a & b == a
    ]
    return build_preorder(name, [labels[m] for m in masks], leq)


# ---------------------------------------------------------------------------
# Functors and natural transformations.


@dataclass
class FunctorData:
    """A functor given by explicit object and morphism tables.

    `carrier_obj` / `carrier_mor` are optional payloads used when the
    functor assigns concrete finite sets and set maps (see nullity.py);
    the categorical checks ignore them.
    """

    name: str
    source: FinCategory
    target: FinCategory
    obj_map: dict[str, str]
    mor_map: dict[str, str]
    carrier_obj: dict | None = None
    carrier_mor: dict | None = None

    def on_obj(self, x: str) -> str:
        try:
            return self.obj_map[x]
        except KeyError:
            raise EngineError(f"functor {self.name}: no image for object {x!r}") from None

    def on_mor(self, m: str) -> str:
        try:
            return self.mor_map[m]
        except KeyError:
            raise EngineError(f"functor {self.name}: no image for morphism {m!r}") from None


def check_functor(F: FunctorData, *, max_violations: int = 20) -> ValidationReport:
    violations: list[Violation] = []
    checked = {"objects": 0, "morphisms": 0, "identities": 0, "composition": 0}
    src, tgt = F.source, F.target

    for x in src.objects:
        checked["objects"] += 1
        y = F.obj_map.get(x)
        if y is None or y not in tgt._obj_index:
            violations.append(_violation("functor-object", object=x, image=str(y)))
    for m in src.morphisms:
        checked["morphisms"] += 1
        fm = F.mor_map.get(m.name)
        if fm is None or fm not in tgt._mor_index:
            violations.append(_violation("functor-morphism", morphism=m.name, image=str(fm)))
            continue
        im = tgt.mor(fm)
        if im.dom != F.obj_map.get(m.dom) or im.cod != F.obj_map.get(m.cod):
            violations.append(_violation("functor-endpoints", morphism=m.name, image=fm))
    if violations:
        return ValidationReport(False, checked, violations[:max_violations])

    for x in src.objects:
        checked["identities"] += 1
        if F.mor_map[src.id_of(x)] != tgt.id_of(F.obj_map[x]):
            violations.append(_violation("functor-identity", object=x))
    for g, f in src.composable_pairs():
        checked["composition"] += 1
        lhs = F.mor_map[src.compose(g, f)]
        rhs = tgt.compose(F.mor_map[g], F.mor_map[f])
        if lhs != rhs:
            violations.append(_violation("functor-composition", g=g, f=f))
        if len(violations) >= max_violations:
            break
    return ValidationReport(not violations, checked, violations)


def identity_functor(C: FinCategory) -> FunctorData:
    return FunctorData(
        f"id[{C.name}]",
        C,
        C,
        {x: x for x in C.objects},
        {m.name: m.name for m in C.morphisms},
    )


def compose_functors(G: FunctorData, F: FunctorData, name: str | None = None) -> FunctorData:
    """G after F."""
    if F.target is not G.source and not F.target.same_table(G.source):
        raise EngineError(f"cannot compose {G.name} after {F.name}: middle mismatch")
    return FunctorData(
        name or f"{G.name}.{F.name}",
        F.source,
        G.target,
        {x: G.on_obj(F.on_obj(x)) for x in F.source.objects},
        {m.name: G.on_mor(F.on_mor(m.name)) for m in F.source.morphisms},
    )


def functor_equal(F: FunctorData, G: FunctorData) -> bool:
    return (
        F.source.same_table(G.source)
        and F.target.same_table(G.target)
        and all(F.obj_map[x] == G.obj_map[x] for x in F.source.objects)
        and all(F.mor_map[m.name] == G.mor_map[m.name] for m in F.source.morphisms)
    )


@dataclass
class NatTransData:
    name: str
    source: FunctorData
    target: FunctorData
    components: dict[str, str]  # source-category object -> target-category morphism


def check_natural(t: NatTransData, *, max_violations: int = 20) -> ValidationReport:
    F, G = t.source, t.target
    tgt = F.target
    violations: list[Violation] = []
    checked = {"components": 0, "naturality": 0}
    for x in F.source.objects:
        checked["components"] += 1
        c = t.components.get(x)
        if c is None or c not in tgt._mor_index:
            violations.append(_violation("component-missing", object=x))
            continue
        m = tgt.mor(c)
        if m.dom != F.obj_map[x] or m.cod != G.obj_map[x]:
            violations.append(_violation("component-endpoints", object=x, component=c))
    if violations:
        return ValidationReport(False, checked, violations[:max_violations])
    for m in F.source.morphisms:
        checked["naturality"] += 1
        lhs = tgt.compose(t.components[m.cod], F.mor_map[m.name])
        rhs = tgt.compose(G.mor_map[m.name], t.components[m.dom])
        if lhs != rhs:
            violations.append(_violation("naturality", morphism=m.name))
            if len(violations) >= max_violations:
                break
    return ValidationReport(not violations, checked, violations)


def find_nat_trans(
    F: FunctorData, G: FunctorData, budget: int = DEFAULT_BUDGET
) -> NatTransData | None:
    """First natural transformation F => G in component order, or None.

    Depth-first over source objects; a partial assignment is pruned as soon
    as some morphism between already-assigned objects breaks naturality.
    """
    tgt = F.target
    objs = F.source.objects
    mors = F.source.morphisms
    steps = 0

    def extend(i: int, comp: dict[str, str]) -> dict[str, str] | None:
        nonlocal steps
        if i == len(objs):
            return dict(comp)
        x = objs[i]
        assigned = set(list(comp) + [x])
        for c in tgt.hom(F.obj_map[x], G.obj_map[x]):
            steps += 1
            if steps > budget:
                raise BudgetExceeded("find_nat_trans", budget)
            comp[x] = c
            ok = True
            for m in mors:
                if m.dom in assigned and m.cod in assigned and (m.dom == x or m.cod == x):
                    if tgt.compose(comp[m.cod], F.mor_map[m.name]) != tgt.compose(
                        G.mor_map[m.name], comp[m.dom]
                    ):
                        ok = False
                        break
            if ok:
                out = extend(i + 1, comp)
                if out is not None:
                    return out
            del comp[x]
        return None

    found = extend(0, {})
    if found is None:
        return None
    return NatTransData(f"nt[{F.name}=>{G.name}]", F, G, found)


def enumerate_functors(
    X: FinCategory, Y: FinCategory, budget: int = DEFAULT_BUDGET
):
    """Yield every functor X -> Y, deterministically.

    Identity images are forced; other morphisms are assigned depth-first
    with incremental composition checks.  Exhaustive, so keep X and Y tiny.
    """
    objs = X.objects
    non_id = [m for m in X.morphisms if not X.is_identity(m.name)]
    pairs = [
        (g, f)
        for g, f in X.composable_pairs()
        if not X.is_identity(g) and not X.is_identity(f)
    ]
    steps = 0

    def assign_mors(obj_map, i, mor_map):
        nonlocal steps
        if i == len(non_id):
            yield FunctorData(
                f"cand:{Y.name}^{X.name}",
                X,
                Y,
                dict(obj_map),
                dict(mor_map),
            )
            return
        m = non_id[i]
        for c in Y.hom(obj_map[m.dom], obj_map[m.cod]):
            steps += 1
            if steps > budget:
                raise BudgetExceeded("enumerate_functors", budget)
            mor_map[m.name] = c
            ok = True
            for g, f in pairs:
                if g not in mor_map or f not in mor_map:
                    continue
                comp = X.compose(g, f)
                if X.is_identity(comp):
                    img = Y.id_of(obj_map[X.dom(f)])
                elif comp in mor_map:
                    img = mor_map[comp]
                else:
                    continue
                if Y.compose(mor_map[g], mor_map[f]) != img:
                    ok = False
                    break
            if ok:
                yield from assign_mors(obj_map, i + 1, mor_map)
            del mor_map[m.name]

    for combo in itertools.product(Y.objects, repeat=len(objs)):
        steps += 1
        if steps > budget:
            raise BudgetExceeded("enumerate_functors", budget)
        obj_map = dict(zip(objs, combo))
        mor_map = {X.id_of(x): Y.id_of(obj_map[x]) for x in objs}
        yield from assign_mors(obj_map, 0, mor_map)


def check_half_right_adjoint(
    T: FunctorData, Tstar: FunctorData, kind: str, budget: int = DEFAULT_BUDGET
) -> NatTransData | None:
    """Comparison transformation making Tstar a pre/post right adjoint of T.

    pre:  some  T.Tstar => Id_Y;   post:  some  Id_Y => T.Tstar.
    """
    comp = compose_functors(T, Tstar)
    idY = identity_functor(T.target)
    if kind == "pre":
        return find_nat_trans(comp, idY, budget)
    if kind == "post":
        return find_nat_trans(idY, comp, budget)
    raise EngineError(f"unknown adjoint kind {kind!r}")


def check_pre_right_adjoint(
    T: FunctorData, Tstar: FunctorData, budget: int = DEFAULT_BUDGET
) -> bool:
    return check_half_right_adjoint(T, Tstar, "pre", budget) is not None


def check_post_right_adjoint(
    T: FunctorData, Tstar: FunctorData, budget: int = DEFAULT_BUDGET
) -> bool:
    return check_half_right_adjoint(T, Tstar, "post", budget) is not None


def search_half_right_adjoint(
    T: FunctorData, kind: str, budget: int = DEFAULT_BUDGET
) -> tuple[FunctorData, NatTransData] | None:
    """Exhaustively search for a pre/post right adjoint of T, or None."""
    for cand in enumerate_functors(T.target, T.source, budget):
        nt = check_half_right_adjoint(T, cand, kind, budget)
        if nt is not None:
            cand.name = f"{kind}-radj[{T.name}]"
            return cand, nt
    return None


def find_retraction(F: FunctorData, budget: int = DEFAULT_BUDGET) -> FunctorData | None:
    """First functor R with R.F = Id on the source of F, or None."""
    idX = identity_functor(F.source)
    for cand in enumerate_functors(F.target, F.source, budget):
        if functor_equal(compose_functors(cand, F), idX):
            cand.name = f"retraction[{F.name}]"
            return cand
    return None


def find_section(F: FunctorData, budget: int = DEFAULT_BUDGET) -> FunctorData | None:
    """First functor S with F.S = Id on the target of F (a right inverse)."""
    idY = identity_functor(F.target)
    for cand in enumerate_functors(F.target, F.source, budget):
        if functor_equal(compose_functors(F, cand), idY):
            cand.name = f"section[{F.name}]"
            return cand
    return None


# ---------------------------------------------------------------------------
# Limits and colimits by exhaustive universal-cocone search.


@dataclass
class Cone:
    tip: str
    legs: dict[str, str]  # index object -> ambient morphism


@dataclass
class UniversalResult:
    kind: str  # "limit" | "colimit"
    cone: Cone | None
    cones_seen: int
    reason: str | None = None


def _cocones(F: FunctorData, budget: int):
    """All cocones over F, tips in ambient order, legs in lexicographic order."""
    C = F.target
    J = F.source
    objs = J.objects
    steps = 0
    for tip in C.objects:
        legs: dict[str, str] = {}

        def extend(i):
            nonlocal steps
            if i == len(objs):
                yield Cone(tip, dict(legs))
                return
            j = objs[i]
            for leg in C.hom(F.obj_map[j], tip):
                steps += 1
                if steps > budget:
                    raise BudgetExceeded("cocone search", budget)
                legs[j] = leg
                ok = True
                for w in J.morphisms:
                    if w.dom in legs and w.cod in legs and (w.dom == j or w.cod == j):
                        if C.compose(legs[w.cod], F.mor_map[w.name]) != legs[w.dom]:
                            ok = False
                            break
                if ok:
                    yield from extend(i + 1)
                del legs[j]

        yield from extend(0)


def _cones(F: FunctorData, budget: int):
    C = F.target
    J = F.source
    objs = J.objects
    steps = 0
    for tip in C.objects:
        legs: dict[str, str] = {}

        def extend(i):
            nonlocal steps
            if i == len(objs):
                yield Cone(tip, dict(legs))
                return
            j = objs[i]
            for leg in C.hom(tip, F.obj_map[j]):
                steps += 1
                if steps > budget:
                    raise BudgetExceeded("cone search", budget)
                legs[j] = leg
                ok = True
                for w in J.morphisms:
                    if w.dom in legs and w.cod in legs and (w.dom == j or w.cod == j):
                        if C.compose(F.mor_map[w.name], legs[w.dom]) != legs[w.cod]:
                            ok = False
                            break
                if ok:
                    yield from extend(i + 1)
                del legs[j]

        yield from extend(0)


def colimit(F: FunctorData, budget: int = DEFAULT_BUDGET) -> UniversalResult:
    """First universal cocone over F in deterministic order, else Absent.

    Universality is literal: against every other cocone there must be
    exactly one mediating morphism commuting with all legs.
    """
    C = F.target
    all_cocones = list(_cocones(F, budget))
    if not all_cocones:
        return UniversalResult("colimit", None, 0, "no cocone")
    steps = 0
    for cand in all_cocones:
        universal = True
        for other in all_cocones:
            mediators = 0
            for phi in C.hom(cand.tip, other.tip):
                steps += 1
                if steps > budget:
                    raise BudgetExceeded("colimit universality", budget)
                if all(
                    C.compose(phi, cand.legs[j]) == other.legs[j]
                    for j in F.source.objects
                ):
                    mediators += 1
                    if mediators > 1:
                        break
            if mediators != 1:
                universal = False
                break
        if universal:
            return UniversalResult("colimit", cand, len(all_cocones))
    return UniversalResult("colimit", None, len(all_cocones), "no universal cocone")


def limit(F: FunctorData, budget: int = DEFAULT_BUDGET) -> UniversalResult:
    C = F.target
    all_cones = list(_cones(F, budget))
    if not all_cones:
        return UniversalResult("limit", None, 0, "no cone")
    steps = 0
    for cand in all_cones:
        universal = True
        for other in all_cones:
            mediators = 0
            for phi in C.hom(other.tip, cand.tip):
                steps += 1
                if steps > budget:
                    raise BudgetExceeded("limit universality", budget)
                if all(
                    C.compose(cand.legs[j], phi) == other.legs[j]
                    for j in F.source.objects
                ):
                    mediators += 1
                    if mediators > 1:
                        break
            if mediators != 1:
                universal = False
                break
        if universal:
            return UniversalResult("limit", cand, len(all_cones))
    return UniversalResult("limit", None, len(all_cones), "no universal cone")


def find_iso(C: FinCategory, a: str, b: str) -> tuple[str, str] | None:
    """An isomorphism pair (f: a->b, g: b->a), or None."""
    for f in C.hom(a, b):
        for g in C.hom(b, a):
            if C.compose(g, f) == C.id_of(a) and C.compose(f, g) == C.id_of(b):
                return f, g
    return None
