"""Finite set-valued functors and exhaustive natural-transformation search.

A contravariant functor here is an object of the presheaf category over its
base; a covariant one is an object of the copresheaf category. Enumeration
of natural transformations is a backtracking search over component values
with forward propagation of every naturality constraint, guarded by an
explicit node budget.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fincat import FinCategory, StructuralError

COVARIANT = "covariant"
CONTRAVARIANT = "contravariant"

DEFAULT_BUDGET = 10_000_000


class BudgetExceeded(RuntimeError):
    def __init__(self, cap: int):
        super().__init__(f"enumeration budget exceeded (cap {cap} node expansions)")
        self.cap = cap


class Budget:
    """Mutable node-expansion counter shared across nested enumerations."""

    __slots__ = ("cap", "used")

    def __init__(self, cap: int = DEFAULT_BUDGET):
        if cap <= 0:
            raise ValueError("budget cap must be positive")
        self.cap = int(cap)
        self.used = 0

    def charge(self, amount: int = 1) -> None:
        self.used += amount
        if self.used > self.cap:
            raise BudgetExceeded(self.cap)

    @classmethod
    def coerce(cls, budget: "Budget | int | None") -> "Budget":
        if budget is None:
            return cls()
        if isinstance(budget, Budget):
            return budget
        return cls(int(budget))


class FunctorLawError(ValueError):
    """A functor candidate that breaks typing, identity, or composition."""

    def __init__(self, law: str, witness: tuple[str, ...], detail: str):
        super().__init__(f"functor law {law!r} fails at {witness}: {detail}")
        self.law = law
        self.witness = witness


class NaturalityError(ValueError):
    """A component family that fails some naturality square."""

    def __init__(self, morphism: str, detail: str):
        super().__init__(f"naturality fails at morphism {morphism!r}: {detail}")
        self.morphism = morphism


@dataclass(frozen=True)
class FinSet:
    elements: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.elements)) != len(self.elements):
            raise ValueError(f"duplicate element labels in {self.elements}")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, item) -> bool:
        return item in self.elements


@dataclass(frozen=True)
class SetFunction:
    dom: FinSet
    cod: FinSet
    mapping: dict[str, str]

    def __post_init__(self):
        for e in self.dom.elements:
            if e not in self.mapping:
                raise ValueError(f"element {e!r} has no image")
        for e, img in self.mapping.items():
            if e not in self.dom:
                raise ValueError(f"mapping defined on {e!r} outside the domain")
            if img not in self.cod:
                raise ValueError(f"image {img!r} of {e!r} lies outside the codomain")

    def __call__(self, element: str) -> str:
        return self.mapping[element]

    def is_bijection(self) -> bool:
        return len(self.dom) == len(self.cod) == len(set(self.mapping.values()))

    def inverse(self) -> "SetFunction":
        if not self.is_bijection():
            raise ValueError("not a bijection")
        return SetFunction(self.cod, self.dom, {v: k for k, v in self.mapping.items()})


def identity_function(carrier: FinSet) -> SetFunction:
    return SetFunction(carrier, carrier, {e: e for e in carrier.elements})


def compose_functions(second: SetFunction, first: SetFunction) -> SetFunction:
    if first.cod != second.dom:
        raise ValueError("functions not composable")
    return SetFunction(first.dom, second.cod, {e: second.mapping[first.mapping[e]] for e in first.dom.elements})


@dataclass(frozen=True)
class SetValuedFunctor:
    base: FinCategory
    variance: str
    on_objects: dict[str, FinSet]
    on_morphisms: dict[str, SetFunction]

    def at(self, obj: str) -> FinSet:
        return self.on_objects[obj]

    def act(self, morphism: str) -> SetFunction:
        return self.on_morphisms[morphism]


def validate_functor(
    base: FinCategory,
    variance: str,
    on_objects: dict,
    on_morphisms: dict,
) -> SetValuedFunctor:
    """Build a functor after exhaustively checking the functor laws.

    ``on_objects`` values may be FinSets or plain label sequences, and
    ``on_morphisms`` values FinSet functions or plain mapping dicts.
    Identity actions may be omitted; they are filled in as identities.
    Raises FunctorLawError with a witness morphism on the first law failure.
    """
    if variance not in (COVARIANT, CONTRAVARIANT):
        raise ValueError(f"variance must be {COVARIANT!r} or {CONTRAVARIANT!r}, got {variance!r}")

    objects: dict[str, FinSet] = {}
    for obj in base.objects:
        if obj not in on_objects:
            raise StructuralError(f"no value set declared for object {obj!r}")
        value = on_objects[obj]
        objects[obj] = value if isinstance(value, FinSet) else FinSet(tuple(value))
    for obj in on_objects:
        if obj not in objects:
            raise StructuralError(f"value set declared for undeclared object {obj!r}")

    morphisms: dict[str, SetFunction] = {}
    for m in base.morphisms:
        dom_obj, cod_obj = (m.src, m.tgt) if variance == COVARIANT else (m.tgt, m.src)
        dom, cod = objects[dom_obj], objects[cod_obj]
        if m.label not in on_morphisms:
            if base.is_identity(m.label):
                morphisms[m.label] = identity_function(dom)
                continue
            raise StructuralError(f"no action declared for morphism {m.label!r}")
        raw = on_morphisms[m.label]
        if isinstance(raw, SetFunction):
            if raw.dom != dom or raw.cod != cod:
                raise FunctorLawError("typing", (m.label,), f"action endpoints do not match value sets of {dom_obj!r} -> {cod_obj!r}")
            morphisms[m.label] = raw
        else:
            try:
                morphisms[m.label] = SetFunction(dom, cod, dict(raw))
            except ValueError as exc:
                raise FunctorLawError("typing", (m.label,), str(exc)) from None
    for label in on_morphisms:
        if label not in morphisms:
            raise StructuralError(f"action declared for undeclared morphism {label!r}")

    for obj in base.objects:
        ident = base.identity[obj]
        if morphisms[ident].mapping != {e: e for e in objects[obj].elements}:
            raise FunctorLawError("identity", (ident,), f"action of {ident!r} is not the identity on the value set of {obj!r}")

    for (g, f), r in base.table.items():
        if variance == COVARIANT:
            expected = compose_functions(morphisms[g], morphisms[f])
        else:
            expected = compose_functions(morphisms[f], morphisms[g])
        if morphisms[r].mapping != expected.mapping:
            raise FunctorLawError("composition", (g, f, r), "action of the composite differs from the composite of the actions")

    return SetValuedFunctor(base, variance, objects, morphisms)


@dataclass(frozen=True)
class NatTransformation:
    source: SetValuedFunctor
    target: SetValuedFunctor
    components: dict[str, SetFunction]

    def component(self, obj: str) -> SetFunction:
        return self.components[obj]


def component_signature(t: NatTransformation) -> tuple:
    """Canonical flattened image tuple; equal iff structurally equal
    (for transformations between the same pair of functors)."""
    return tuple(
        tuple(t.components[obj].mapping[e] for e in t.source.at(obj).elements)
        for obj in t.source.base.objects
    )


def _require_parallel(source: SetValuedFunctor, target: SetValuedFunctor) -> None:
    if source.base != target.base:
        raise ValueError("functors live over different base categories")
    if source.variance != target.variance:
        raise ValueError("functors have different variance")


def naturality_witness(t: NatTransformation) -> tuple[str, str] | None:
    """First (morphism, element) pair whose naturality square fails, or None."""
    source, target = t.source, t.target
    covariant = source.variance == COVARIANT
    for m in source.base.morphisms:
        start, end = (m.src, m.tgt) if covariant else (m.tgt, m.src)
        fu, gu = source.act(m.label), target.act(m.label)
        comp_start, comp_end = t.components[start], t.components[end]
        for e in source.at(start).elements:
            if comp_end.mapping[fu.mapping[e]] != gu.mapping[comp_start.mapping[e]]:
                return m.label, e
    return None


def make_transformation(
    source: SetValuedFunctor,
    target: SetValuedFunctor,
    components: dict[str, SetFunction],
) -> NatTransformation:
    """Construct a transformation and verify every naturality square."""
    _require_parallel(source, target)
    for obj in source.base.objects:
        if obj not in components:
            raise ValueError(f"missing component at object {obj!r}")
        comp = components[obj]
        if comp.dom != source.at(obj) or comp.cod != target.at(obj):
            raise ValueError(f"component at {obj!r} has wrong endpoints")
    t = NatTransformation(source, target, dict(components))
    witness = naturality_witness(t)
    if witness is not None:
        raise NaturalityError(witness[0], f"square fails on element {witness[1]!r}")
    return t


def identity_nat(functor: SetValuedFunctor) -> NatTransformation:
    return NatTransformation(
        functor, functor, {obj: identity_function(functor.at(obj)) for obj in functor.base.objects}
    )


def compose_nat(second: NatTransformation, first: NatTransformation) -> NatTransformation:
    """Vertical composite: first then second."""
    if first.target != second.source:
        raise ValueError("transformations not composable: endpoints differ")
    comps = {
        obj: compose_functions(second.components[obj], first.components[obj])
        for obj in first.source.base.objects
    }
    return NatTransformation(first.source, second.target, comps)


def invert_nat(t: NatTransformation) -> NatTransformation:
    """Componentwise inverse, verified natural."""
    inverse = {obj: comp.inverse() for obj, comp in t.components.items()}
    return make_transformation(t.target, t.source, inverse)


def is_natural_iso(t: NatTransformation) -> bool:
    if not all(comp.is_bijection() for comp in t.components.values()):
        return False
    try:
        invert_nat(t)
    except NaturalityError:
        return False
    return True


def enumerate_nat(
    source: SetValuedFunctor,
    target: SetValuedFunctor,
    budget: Budget | int | None = None,
) -> list[NatTransformation]:
    """All natural transformations source => target, in canonical order.

    The search assigns component values slot by slot (objects in base
    declaration order, elements in value-set order, candidate images in
    target-set order) and propagates each assignment through every
    naturality constraint before descending, so inconsistent branches are
    pruned at the first definite conflict. Every forced or attempted
    assignment charges the budget; exhausting it raises BudgetExceeded
    rather than truncating silently.
    """
    _require_parallel(source, target)
    b = Budget.coerce(budget)
    base = source.base
    covariant = source.variance == COVARIANT

    slots: list[tuple[str, str]] = []
    for obj in base.objects:
        slots.extend((obj, e) for e in source.at(obj).elements)
    pos = {slot: i for i, slot in enumerate(slots)}

    # Assigning eta(obj)(elem) = v forces, along each base morphism u
    # leaving obj (entering, for contravariant), the value
    # eta(end)(F(u)(elem)) = G(u)(v).
    outgoing: dict[str, list[tuple[SetFunction, SetFunction, str]]] = {obj: [] for obj in base.objects}
    for m in base.morphisms:
        start, end = (m.src, m.tgt) if covariant else (m.tgt, m.src)
        outgoing[start].append((source.act(m.label), target.act(m.label), end))

    values: list[str | None] = [None] * len(slots)
    results: list[NatTransformation] = []

    def force(slot: tuple[str, str], value: str, trail: list[int]) -> bool:
        stack = [(slot, value)]
        while stack:
            s, v = stack.pop()
            b.charge()
            i = pos[s]
            current = values[i]
            if current is not None:
                if current != v:
                    return False
                continue
            values[i] = v
            trail.append(i)
            obj, elem = s
            for fu, gu, end in outgoing[obj]:
                stack.append(((end, fu.mapping[elem]), gu.mapping[v]))
        return True

    def snapshot() -> NatTransformation:
        comps = {}
        for obj in base.objects:
            dom, cod = source.at(obj), target.at(obj)
            comps[obj] = SetFunction(dom, cod, {e: values[pos[(obj, e)]] for e in dom.elements})
        return NatTransformation(source, target, comps)

    def extend(i: int) -> None:
        while i < len(slots) and values[i] is not None:
            i += 1
        if i == len(slots):
            results.append(snapshot())
            return
        obj, _ = slots[i]
        for v in target.at(obj).elements:
            trail: list[int] = []
            if force(slots[i], v, trail):
                extend(i + 1)
            for j in reversed(trail):
                values[j] = None

    extend(0)
    return results


def yoneda(category: FinCategory, obj: str) -> SetValuedFunctor:
    """The representable presheaf of morphisms into ``obj``."""
    on_objects = {a: FinSet(tuple(category.hom_set(a, obj))) for a in category.objects}
    on_morphisms = {}
    for m in category.morphisms:
        # contravariant: hom(tgt(u), obj) -> hom(src(u), obj), h -> h . u
        on_morphisms[m.label] = {h: category.compose(h, m.label) for h in on_objects[m.tgt].elements}
    return validate_functor(category, CONTRAVARIANT, on_objects, on_morphisms)


def coyoneda(category: FinCategory, obj: str) -> SetValuedFunctor:
    """The representable copresheaf of morphisms out of ``obj``."""
    on_objects = {a: FinSet(tuple(category.hom_set(obj, a))) for a in category.objects}
    on_morphisms = {}
    for m in category.morphisms:
        # covariant: hom(obj, src(u)) -> hom(obj, tgt(u)), h -> u . h
        on_morphisms[m.label] = {h: category.compose(m.label, h) for h in on_objects[m.src].elements}
    return validate_functor(category, COVARIANT, on_objects, on_morphisms)


def yoneda_on_morphism(category: FinCategory, morphism: str) -> NatTransformation:
    """Postcomposition transformation y(src(u)) => y(tgt(u)) induced by u."""
    m = category.morphism(morphism)
    src_f, tgt_f = yoneda(category, m.src), yoneda(category, m.tgt)
    comps = {
        a: SetFunction(
            src_f.at(a),
            tgt_f.at(a),
            {h: category.compose(morphism, h) for h in src_f.at(a).elements},
        )
        for a in category.objects
    }
    return make_transformation(src_f, tgt_f, comps)


def coyoneda_on_morphism(category: FinCategory, morphism: str) -> NatTransformation:
    """Precomposition transformation z(tgt(u)) => z(src(u)) induced by u."""
    m = category.morphism(morphism)
    src_f, tgt_f = coyoneda(category, m.tgt), coyoneda(category, m.src)
    comps = {
        a: SetFunction(
            src_f.at(a),
            tgt_f.at(a),
            {h: category.compose(h, morphism) for h in src_f.at(a).elements},
        )
        for a in category.objects
    }
    return make_transformation(src_f, tgt_f, comps)


@dataclass(frozen=True)
class Bijection:
    forward: SetFunction
    backward: SetFunction

    def __post_init__(self):
        if self.forward.dom != self.backward.cod or self.forward.cod != self.backward.dom:
            raise ValueError("forward and backward endpoints do not match")
        for e in self.forward.dom.elements:
            if self.backward.mapping[self.forward.mapping[e]] != e:
                raise ValueError(f"backward . forward is not the identity at {e!r}")
        for e in self.backward.dom.elements:
            if self.forward.mapping[self.backward.mapping[e]] != e:
                raise ValueError(f"forward . backward is not the identity at {e!r}")


@dataclass(frozen=True)
class YonedaWitness:
    """The bijection nat(y(X), F) <-> F(X), with the realizing
    transformations kept in enumeration order under labels n0, n1, ..."""

    transformations: list[NatTransformation]
    labels: FinSet
    bijection: Bijection


def yoneda_lemma_bijection(
    presheaf: SetValuedFunctor,
    obj: str,
    budget: Budget | int | None = None,
) -> YonedaWitness:
    """Exhibit nat(y(obj), F) <-> F(obj).

    Forward evaluates a transformation at the identity of ``obj``; backward
    sends a value to the transformation acting by the functor itself. Both
    round trips are verified.
    """
    if presheaf.variance != CONTRAVARIANT:
        raise ValueError("the representable comparison needs a contravariant functor")
    base = presheaf.base
    hom_into = yoneda(base, obj)
    nats = enumerate_nat(hom_into, presheaf, budget)
    labels = FinSet(tuple(f"n{i}" for i in range(len(nats))))
    index = {component_signature(t): i for i, t in enumerate(nats)}
    ident = base.identity_of(obj)

    forward = {f"n{i}": t.components[obj].mapping[ident] for i, t in enumerate(nats)}
    backward = {}
    for a in presheaf.at(obj).elements:
        comps = {
            w: SetFunction(
                hom_into.at(w),
                presheaf.at(w),
                {u: presheaf.act(u).mapping[a] for u in hom_into.at(w).elements},
            )
            for w in base.objects
        }
        t = make_transformation(hom_into, presheaf, comps)
        sig = component_signature(t)
        if sig not in index:
            raise RuntimeError("enumeration missed a transformation required by the representable bijection")
        backward[a] = f"n{index[sig]}"

    bijection = Bijection(
        SetFunction(labels, presheaf.at(obj), forward),
        SetFunction(presheaf.at(obj), labels, backward),
    )
    return YonedaWitness(nats, labels, bijection)


def pointwise_sum(left: SetValuedFunctor, right: SetValuedFunctor) -> SetValuedFunctor:
    """Objectwise disjoint union, elements tagged ``L.`` / ``R.``."""
    _require_parallel(left, right)
    base = left.base
    on_objects = {
        obj: FinSet(
            tuple(f"L.{e}" for e in left.at(obj).elements)
            + tuple(f"R.{e}" for e in right.at(obj).elements)
        )
        for obj in base.objects
    }
    on_morphisms = {}
    for m in base.morphisms:
        lf, rf = left.act(m.label), right.act(m.label)
        mapping = {f"L.{e}": f"L.{img}" for e, img in lf.mapping.items()}
        mapping.update({f"R.{e}": f"R.{img}" for e, img in rf.mapping.items()})
        on_morphisms[m.label] = mapping
    return validate_functor(base, left.variance, on_objects, on_morphisms)


def iso_check(
    left: SetValuedFunctor,
    right: SetValuedFunctor,
    budget: Budget | int | None = None,
) -> NatTransformation | None:
    """First natural isomorphism left => right in canonical order, if any."""
    _require_parallel(left, right)
    if any(len(left.at(obj)) != len(right.at(obj)) for obj in left.base.objects):
        return None  # cardinality obstruction, no search needed
    for t in enumerate_nat(left, right, budget):
        if is_natural_iso(t):
            return t
    return None
