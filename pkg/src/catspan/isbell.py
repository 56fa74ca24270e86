"""Conjugation between presheaves and copresheaves, the adjunction
transpose, the comparison map into the double conjugate, and a scanner
for functors on which that comparison is an isomorphism.

Convention, fixed once and used everywhere: the conjugate of a presheaf F
takes an object X to the transformations F => y(X); the conjugate of a
copresheaf G takes X to the transformations G => z(X). Hom-sets between a
conjugate and a copresheaf are read in the opposite functor category, so
"hom(F*, G)" is computed as transformations G => F*. With this reading the
two conjugations are adjoint on the right and the transpose below is a
bijection.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .fincat import FinCategory
from .setfunc import (
    CONTRAVARIANT,
    COVARIANT,
    Bijection,
    Budget,
    FinSet,
    FunctorLawError,
    NatTransformation,
    SetFunction,
    SetValuedFunctor,
    component_signature,
    compose_nat,
    coyoneda,
    coyoneda_on_morphism,
    enumerate_nat,
    is_natural_iso,
    make_transformation,
    validate_functor,
    yoneda,
    yoneda_on_morphism,
)


@dataclass(frozen=True)
class ConjugatePair:
    """A functor together with its conjugate and, for every object, the
    transformations realizing the conjugate's elements. Element ``t<i>`` of
    the conjugate at X is evaluation_tables[X][i]; downstream consumers
    look transformations up here instead of re-enumerating."""

    original: SetValuedFunctor
    conjugate: SetValuedFunctor
    evaluation_tables: dict[str, list[NatTransformation]]

    def label_of(self, obj: str, t: NatTransformation) -> str:
        sig = component_signature(t)
        for i, entry in enumerate(self.evaluation_tables[obj]):
            if component_signature(entry) == sig:
                return f"t{i}"
        raise RuntimeError(f"transformation not present in the evaluation table at {obj!r}")

    def realize(self, obj: str, label: str) -> NatTransformation:
        return self.evaluation_tables[obj][int(label[1:])]


def _labels(n: int) -> FinSet:
    return FinSet(tuple(f"t{i}" for i in range(n)))


def conjugate_presheaf(presheaf: SetValuedFunctor, budget: Budget | int | None = None) -> ConjugatePair:
    """The covariant conjugate: object X carries the transformations from
    the presheaf into the representable y(X), labeled t0, t1, ... in
    enumeration order; a morphism acts by postcomposition with the induced
    transformation between representables."""
    if presheaf.variance != CONTRAVARIANT:
        raise ValueError("presheaf conjugation needs a contravariant functor")
    b = Budget.coerce(budget)
    base = presheaf.base

    tables = {obj: enumerate_nat(presheaf, yoneda(base, obj), b) for obj in base.objects}
    index = {
        obj: {component_signature(t): i for i, t in enumerate(entries)}
        for obj, entries in tables.items()
    }
    on_objects = {obj: _labels(len(tables[obj])) for obj in base.objects}
    on_morphisms = {}
    for m in base.morphisms:
        induced = yoneda_on_morphism(base, m.label)
        mapping = {}
        for i, t in enumerate(tables[m.src]):
            composite = compose_nat(induced, t)
            mapping[f"t{i}"] = f"t{index[m.tgt][component_signature(composite)]}"
        on_morphisms[m.label] = mapping
    conjugate = validate_functor(base, COVARIANT, on_objects, on_morphisms)
    return ConjugatePair(presheaf, conjugate, tables)


def conjugate_copresheaf(copresheaf: SetValuedFunctor, budget: Budget | int | None = None) -> ConjugatePair:
    """The contravariant conjugate: object X carries the transformations
    from the copresheaf into the representable z(X); a morphism acts by
    postcomposition with the precomposition transformation it induces."""
    if copresheaf.variance != COVARIANT:
        raise ValueError("copresheaf conjugation needs a covariant functor")
    b = Budget.coerce(budget)
    base = copresheaf.base

    tables = {obj: enumerate_nat(copresheaf, coyoneda(base, obj), b) for obj in base.objects}
    index = {
        obj: {component_signature(t): i for i, t in enumerate(entries)}
        for obj, entries in tables.items()
    }
    on_objects = {obj: _labels(len(tables[obj])) for obj in base.objects}
    on_morphisms = {}
    for m in base.morphisms:
        induced = coyoneda_on_morphism(base, m.label)  # z(tgt) => z(src)
        mapping = {}
        for i, t in enumerate(tables[m.tgt]):
            composite = compose_nat(induced, t)
            mapping[f"t{i}"] = f"t{index[m.src][component_signature(composite)]}"
        on_morphisms[m.label] = mapping
    conjugate = validate_functor(base, CONTRAVARIANT, on_objects, on_morphisms)
    return ConjugatePair(copresheaf, conjugate, tables)


def conjugate_transform(
    h: NatTransformation,
    source_pair: ConjugatePair,
    target_pair: ConjugatePair,
) -> NatTransformation:
    """Conjugation applied to a transformation h: F' => F, yielding the
    precomposition map F* => F'* (likewise for copresheaf conjugates)."""
    comps = {}
    base = source_pair.original.base
    for obj in base.objects:
        mapping = {}
        for i, t in enumerate(source_pair.evaluation_tables[obj]):
            mapping[f"t{i}"] = target_pair.label_of(obj, compose_nat(t, h))
        comps[obj] = SetFunction(source_pair.conjugate.at(obj), target_pair.conjugate.at(obj), mapping)
    return make_transformation(source_pair.conjugate, target_pair.conjugate, comps)


@dataclass(frozen=True)
class AdjunctionWitness:
    """Both hom-sets of the conjugation adjunction for a presheaf F and a
    copresheaf G, with the transpose bijection between them. Left entries
    (transformations G => F*) are labeled l0, l1, ...; right entries
    (F => G*) r0, r1, ...; round trips are identities by construction."""

    presheaf: SetValuedFunctor
    copresheaf: SetValuedFunctor
    left_homset: list[NatTransformation]
    right_homset: list[NatTransformation]
    transpose: Bijection
    presheaf_pair: ConjugatePair
    copresheaf_pair: ConjugatePair


def _transpose_left_to_right(
    phi: NatTransformation,
    presheaf: SetValuedFunctor,
    copresheaf: SetValuedFunctor,
    presheaf_pair: ConjugatePair,
    copresheaf_pair: ConjugatePair,
) -> NatTransformation:
    # Through the pairing p(X, Y): F(X) x G(Y) -> hom(X, Y) with
    # p(X, Y)(s, t) = alpha_X(s) where alpha realizes phi_Y(t); currying p
    # in the first variable yields the right-hand transformation F => G*.
    base = presheaf.base
    gstar = copresheaf_pair.conjugate
    comps = {}
    for x in base.objects:
        z_x = coyoneda(base, x)
        mapping = {}
        for s in presheaf.at(x).elements:
            beta_comps = {}
            for y in base.objects:
                images = {}
                for t in copresheaf.at(y).elements:
                    alpha = presheaf_pair.realize(y, phi.components[y].mapping[t])
                    images[t] = alpha.components[x].mapping[s]
                beta_comps[y] = SetFunction(copresheaf.at(y), z_x.at(y), images)
            beta = make_transformation(copresheaf, z_x, beta_comps)
            mapping[s] = copresheaf_pair.label_of(x, beta)
        comps[x] = SetFunction(presheaf.at(x), gstar.at(x), mapping)
    return make_transformation(presheaf, gstar, comps)


def _transpose_right_to_left(
    psi: NatTransformation,
    presheaf: SetValuedFunctor,
    copresheaf: SetValuedFunctor,
    presheaf_pair: ConjugatePair,
    copresheaf_pair: ConjugatePair,
) -> NatTransformation:
    # Same pairing, curried in the second variable: p(X, Y)(s, t) =
    # beta_Y(t) where beta realizes psi_X(s).
    base = presheaf.base
    fstar = presheaf_pair.conjugate
    comps = {}
    for y in base.objects:
        y_y = yoneda(base, y)
        mapping = {}
        for t in copresheaf.at(y).elements:
            alpha_comps = {}
            for x in base.objects:
                images = {}
                for s in presheaf.at(x).elements:
                    beta = copresheaf_pair.realize(x, psi.components[x].mapping[s])
                    images[s] = beta.components[y].mapping[t]
                alpha_comps[x] = SetFunction(presheaf.at(x), y_y.at(x), images)
            alpha = make_transformation(presheaf, y_y, alpha_comps)
            mapping[t] = presheaf_pair.label_of(y, alpha)
        comps[y] = SetFunction(copresheaf.at(y), fstar.at(y), mapping)
    return make_transformation(copresheaf, fstar, comps)


def adjunction_transpose(
    presheaf: SetValuedFunctor,
    copresheaf: SetValuedFunctor,
    budget: Budget | int | None = None,
) -> AdjunctionWitness:
    """Compute both hom-sets of the adjunction and the transpose between
    them, verifying every round trip element by element."""
    if presheaf.variance != CONTRAVARIANT or copresheaf.variance != COVARIANT:
        raise ValueError("adjunction needs a contravariant and a covariant functor")
    if presheaf.base != copresheaf.base:
        raise ValueError("functors live over different base categories")
    b = Budget.coerce(budget)

    presheaf_pair = conjugate_presheaf(presheaf, b)
    copresheaf_pair = conjugate_copresheaf(copresheaf, b)
    left = enumerate_nat(copresheaf, presheaf_pair.conjugate, b)
    right = enumerate_nat(presheaf, copresheaf_pair.conjugate, b)

    left_index = {component_signature(t): i for i, t in enumerate(left)}
    right_index = {component_signature(t): i for i, t in enumerate(right)}
    forward = {}
    for i, phi in enumerate(left):
        psi = _transpose_left_to_right(phi, presheaf, copresheaf, presheaf_pair, copresheaf_pair)
        sig = component_signature(psi)
        if sig not in right_index:
            raise RuntimeError("transpose produced a transformation outside the enumerated hom-set")
        forward[f"l{i}"] = f"r{right_index[sig]}"
    backward = {}
    for j, psi in enumerate(right):
        phi = _transpose_right_to_left(psi, presheaf, copresheaf, presheaf_pair, copresheaf_pair)
        sig = component_signature(phi)
        if sig not in left_index:
            raise RuntimeError("transpose produced a transformation outside the enumerated hom-set")
        backward[f"r{j}"] = f"l{left_index[sig]}"

    left_labels = FinSet(tuple(f"l{i}" for i in range(len(left))))
    right_labels = FinSet(tuple(f"r{j}" for j in range(len(right))))
    transpose = Bijection(
        SetFunction(left_labels, right_labels, forward),
        SetFunction(right_labels, left_labels, backward),
    )
    return AdjunctionWitness(
        presheaf, copresheaf, left, right, transpose, presheaf_pair, copresheaf_pair
    )


def double_conjugate(presheaf: SetValuedFunctor, budget: Budget | int | None = None) -> tuple[ConjugatePair, ConjugatePair]:
    """The pair (F*, F**) with their evaluation tables."""
    b = Budget.coerce(budget)
    star = conjugate_presheaf(presheaf, b)
    dstar = conjugate_copresheaf(star.conjugate, b)
    return star, dstar


def unit(presheaf: SetValuedFunctor, budget: Budget | int | None = None) -> NatTransformation:
    """The canonical comparison from a presheaf into its double conjugate.

    At an object X, a value s is sent to the transformation from the
    conjugate into z(X) that evaluates each realizing alpha at s; the
    result is located in the double conjugate's evaluation table.
    """
    b = Budget.coerce(budget)
    star, dstar = double_conjugate(presheaf, b)
    base = presheaf.base
    comps = {}
    for x in base.objects:
        z_x = coyoneda(base, x)
        mapping = {}
        for s in presheaf.at(x).elements:
            beta_comps = {}
            for y in base.objects:
                images = {
                    f"t{i}": alpha.components[x].mapping[s]
                    for i, alpha in enumerate(star.evaluation_tables[y])
                }
                beta_comps[y] = SetFunction(star.conjugate.at(y), z_x.at(y), images)
            beta = make_transformation(star.conjugate, z_x, beta_comps)
            mapping[s] = dstar.label_of(x, beta)
        comps[x] = SetFunction(presheaf.at(x), dstar.conjugate.at(x), mapping)
    return make_transformation(presheaf, dstar.conjugate, comps)


@dataclass(frozen=True)
class ReflexiveVerdict:
    functor: SetValuedFunctor
    description: str
    reflexive: bool


def _describe(base: FinCategory, functor: SetValuedFunctor, action_morphisms: list[str]) -> str:
    sizes = ",".join(f"{obj}={len(functor.at(obj))}" for obj in base.objects)
    if not action_morphisms:
        return sizes
    actions = []
    for label in action_morphisms:
        fn = functor.act(label)
        body = ",".join(f"{e}>{fn.mapping[e]}" for e in fn.dom.elements)
        actions.append(f"{label}:[{body}]")
    return f"{sizes}; {' '.join(actions)}"


def reflexive_scan(
    category: FinCategory,
    max_set_size: int = 2,
    budget: Budget | int | None = None,
) -> list[ReflexiveVerdict]:
    """Enumerate every contravariant functor with value sets of at most the
    given size (structural duplicates included, isomorphic ones not merged),
    compute the comparison into its double conjugate, and report whether it
    is an isomorphism. Value-set size vectors and morphism actions are both
    swept in lexicographic order, so the report order is deterministic.
    """
    if max_set_size < 0:
        raise ValueError("max_set_size must be nonnegative")
    b = Budget.coerce(budget)
    non_identity = [m for m in category.morphisms if not category.is_identity(m.label)]
    verdicts: list[ReflexiveVerdict] = []

    for sizes in itertools.product(range(max_set_size + 1), repeat=len(category.objects)):
        on_objects = {
            obj: FinSet(tuple(f"x{k}" for k in range(n)))
            for obj, n in zip(category.objects, sizes)
        }
        choice_lists = []
        feasible = True
        for m in non_identity:
            dom = on_objects[m.tgt].elements  # contravariant action
            cod = on_objects[m.src].elements
            functions = [dict(zip(dom, pick)) for pick in itertools.product(cod, repeat=len(dom))]
            if not functions:
                feasible = False
                break
            choice_lists.append(functions)
        if not feasible:
            continue
        for picks in itertools.product(*choice_lists):
            b.charge()
            on_morphisms = {m.label: pick for m, pick in zip(non_identity, picks)}
            try:
                functor = validate_functor(category, CONTRAVARIANT, on_objects, on_morphisms)
            except FunctorLawError:
                continue
            comparison = unit(functor, b)
            verdicts.append(
                ReflexiveVerdict(
                    functor,
                    _describe(category, functor, [m.label for m in non_identity]),
                    is_natural_iso(comparison),
                )
            )
    return verdicts
