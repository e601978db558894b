"""The property suite and the golden examples, run on a pool of actors.

Every property is a named check. A check yields ``(case, thunk)`` pairs;
the worker evaluates each thunk and records the case as failed when it
returns something falsy or raises a :class:`GroupoidError`. A
:class:`CapacityError` aborts the run instead, since the configured
isomorphism bound is too small for the fixtures.
"""

import argparse
import dataclasses
import itertools
import logging
import random

import pykka
import sympy

from transchromatic import (
    characters,
    groupoids,
    groups,
    linalg,
    linsys,
    loops,
    spans,
    translator,
    utils,
)
from transchromatic.errors import (
    CapacityError,
    GroupoidError,
    InvalidInputError,
)

logger = logging.getLogger(__name__)

GROUP_NAMES = (
    "C1",
    "C2",
    "C3",
    "C4",
    "V4",
    "S3",
    "C5",
    "C6",
    "D4",
    "Q8",
    "A4",
)
CHARACTER_GROUPS = ("S3", "S4", "D4", "Q8", "A4")
CHROMATIC_PRIMES = (2, 3, 5)
CHARACTER_PRIMES = (2, 3)

# Groupoids beyond these morphism counts are left out of the costly checks.
SMALL = 12
MEDIUM = 36


@dataclasses.dataclass
class CheckResult:
    name: str
    cases: int
    failures: list
    passed: bool


class Fixtures:
    """Deterministic inputs of the suite, drawn from ``random.Random(seed)``."""

    def __init__(self, seed=2024, span_pairs=100, bound=None):
        self.seed = seed
        self.bound = bound or groups.DEFAULT_ISOMORPHISM_BOUND
        self._random = random.Random(seed)
        with utils.time_logger("Building suite fixtures", level=logging.DEBUG):
            self.groups = [groups.named_group(name) for name in GROUP_NAMES]
            self.systems = {}
            self.groupoids = self._build_groupoids()
            self.maps = self._build_maps()
            self.norm_instances = self._build_norm_instances()
            self.squares = self._build_squares()
            self.span_pairs = self._build_span_pairs(span_pairs)
            self.character_instances = self._build_character_instances()
        logger.info(
            f"Suite fixtures: {len(self.groupoids)} groupoids, "
            f"{len(self.maps)} maps, {len(self.squares)} squares, "
            f"{len(self.span_pairs)} span pairs, "
            f"{len(self.character_instances)} character instances"
        )

    def _add_groupoid(self, found, grpd, group=None, projection=None):
        if grpd in found:
            return False
        found.append(grpd)
        systems = [linsys.constant(grpd, 1)]
        if group is not None and group.order <= 6:
            regular = characters.regular_rep(group).to_local_system()
            if projection is None:
                systems.append(regular)
            else:
                systems.append(linsys.pullback_system(projection, regular))
        elif len(grpd.objects) <= 3:
            systems.append(linsys.constant(grpd, 2))
        self.systems[grpd] = systems
        return True

    def _build_groupoids(self):
        found = []
        self._projections = []
        for group in self.groups:
            self._add_groupoid(found, groupoids.delooping(group), group)
        for n in range(5):
            self._add_groupoid(found, groupoids.discrete(n))

        actions = []
        for name in ("C2", "C3", "V4", "S3", "D4", "Q8"):
            group = groups.named_group(name)
            actions.append((group, groupoids.conjugation_groupoid(group)))
        for name in ("C2", "C3", "S3"):
            group = groups.named_group(name)
            actions.append((group, groupoids.translation_groupoid(group)))
        for name in ("C4", "S3", "D4", "A4"):
            group = groups.named_group(name)
            degree = len(group.perms[0])
            actions.append(
                (
                    group,
                    groupoids.action_groupoid(
                        group,
                        range(degree),
                        lambda g, s, group=group: group.perms[g][s],
                    ),
                )
            )
        for group, grpd in actions:
            projection = groupoids.GroupoidMap.from_labels(
                grpd,
                groupoids.delooping(group),
                lambda s: "*",
                lambda a: a[0],
            )
            self._projections.append(projection)
            self._add_groupoid(found, grpd, group, projection)

        small = [g for g in found if 0 < len(g.morphisms) <= SMALL]
        self.unions, self.products = [], []
        while len(self.unions) < 14:
            parts = self._random.sample(small, 2)
            union = groupoids.disjoint_union(parts)
            if self._add_groupoid(found, union):
                self.unions.append((union, parts))
        while len(self.products) < 10:
            first, second = self._random.sample(small, 2)
            if len(first.morphisms) * len(second.morphisms) > MEDIUM:
                continue
            if self._add_groupoid(found, groupoids.product(first, second)):
                self.products.append((first, second))
        return found

    def _build_maps(self):
        maps = []
        for grpd in self.groupoids:
            maps.append(groupoids.identity_map(grpd))
            maps.append(groupoids.terminal_map(grpd))
        maps.extend(self._projections)

        for union, parts in self.unions:
            maps.extend(
                groupoids.summand_inclusion(union, parts, i)
                for i in range(len(parts))
            )
        for first, second in self.products:
            maps.extend(groupoids.product_projections(first, second))
        for grpd in self.groupoids:
            if len(grpd.morphisms) <= 6:
                maps.append(groupoids.diagonal(grpd))
            if 0 < len(grpd.morphisms) <= SMALL:
                maps.append(loops.free_loop(grpd).base_projection)

        small_groups = [g for g in self.groups if g.order <= 8]
        for source, target in itertools.product(small_groups, repeat=2):
            nontrivial = [
                phi
                for phi in itertools.islice(
                    groups.homomorphisms(source, target), 8
                )
                if any(x != target.identity for x in phi)
            ]
            if nontrivial:
                phi = self._random.choice(nontrivial)
                maps.append(groupoids.group_map(source, target, phi))

        for name in ("S3", "D4", "Q8"):
            group = groups.named_group(name)
            for elements in group.subgroups():
                maps.append(characters.inclusion_map(group, elements)[0])
        return maps

    def systems_on(self, grpd):
        if grpd not in self.systems:
            self.systems[grpd] = [linsys.constant(grpd, 1)]
        return self.systems[grpd]

    def _build_norm_instances(self):
        instances = []
        for f in self.maps:
            if len(f.source.morphisms) > 24 or len(f.target.morphisms) > MEDIUM:
                continue
            for system in self.systems_on(f.source):
                if max(system.dims, default=0) <= 6:
                    instances.append((f, system))
        return instances

    def _build_squares(self):
        small = [
            f
            for f in self.maps
            if len(f.source.morphisms) <= SMALL
            and len(f.target.morphisms) <= SMALL
        ]
        by_target = {}
        for f in small:
            by_target.setdefault(f.target, []).append(f)
        pairs = [
            (f, g)
            for target_maps in by_target.values()
            for f, g in itertools.product(target_maps, repeat=2)
        ]
        chosen = self._random.sample(pairs, min(60, len(pairs)))
        squares = []
        for f, g in chosen:
            square = groupoids.homotopy_pullback(f, g)
            system = self._random.choice(self.systems_on(f.source))
            squares.append((square, system))
        for f in small[:12]:
            square, _ = linsys.diagonal_square(f)
            squares.append((square, self.systems_on(f.source)[0]))
        return squares

    def _build_span_pairs(self, count):
        candidates = [
            f
            for f in self.maps
            if len(f.source.morphisms) <= SMALL
            and len(f.target.morphisms) <= SMALL
            and len(f.target.skeleton) <= 4
            and len(f.source.skeleton) <= 4
        ]
        by_source, by_target = {}, {}
        for f in candidates:
            by_source.setdefault(f.source, []).append(f)
            by_target.setdefault(f.target, []).append(f)
        apexes = list(by_source)
        pairs = []
        for _ in range(count):
            apex = self._random.choice(apexes)
            first = spans.Span(
                self._random.choice(by_source[apex]),
                self._random.choice(by_source[apex]),
            )
            middle = first.right_foot
            left = self._random.choice(
                by_target.get(middle) or [groupoids.identity_map(middle)]
            )
            right = self._random.choice(
                by_source.get(left.source)
                or [groupoids.identity_map(left.source)]
            )
            pairs.append((first, spans.Span(left, right)))
        return pairs

    def _build_character_instances(self):
        instances = []
        for name in CHARACTER_GROUPS:
            group = groups.named_group(name)
            for elements in group.subgroups():
                inclusion, subgroup = characters.inclusion_map(group, elements)
                for rep in _representations_of(subgroup):
                    instances.append((name, elements, inclusion, rep))
        return instances


def _representations_of(group):
    """Trivial, regular and distinct transitive permutation representations."""
    reps = [characters.trivial_rep(group), characters.regular_rep(group)]
    seen = {characters.character(rep).values for rep in reps}
    for elements in group.subgroups():
        if len(elements) in (1, group.order):
            continue
        rep = characters.coset_rep(group, elements)
        values = characters.character(rep).values
        if values not in seen:
            seen.add(values)
            reps.append(rep)
    return reps


CHECKS = {}


def check(name):
    def decorator(func):
        CHECKS[name] = func
        return func

    return decorator


@check("cardinality-delooping")
def _cardinality_of_deloopings(fx):
    for group in fx.groups:
        yield repr(group), lambda: groupoids.cardinality(
            groupoids.delooping(group)
        ) == sympy.Rational(1, group.order)


@check("cardinality-free-loop")
def _free_loop_counts_components(fx):
    for grpd in fx.groupoids:
        if len(grpd.morphisms) > MEDIUM:
            continue
        yield repr(grpd), lambda: groupoids.cardinality(
            loops.free_loop(grpd).underlying
        ) == len(grpd.skeleton)


@check("cardinality-additive")
def _cardinality_sum_and_product(fx):
    small = [g for g in fx.groupoids if len(g.morphisms) <= 6]
    for first, second in itertools.combinations(small, 2):
        yield f"{first!r} and {second!r}", lambda: (
            groupoids.cardinality(groupoids.disjoint_union([first, second]))
            == groupoids.cardinality(first) + groupoids.cardinality(second)
            and groupoids.cardinality(groupoids.product(first, second))
            == groupoids.cardinality(first) * groupoids.cardinality(second)
        )


@check("fiber-fubini")
def _fiber_cardinalities(fx):
    for f in fx.maps:
        if len(f.source.morphisms) > MEDIUM:
            continue
        yield repr(f), lambda: groupoids.cardinality(f.source) == sum(
            (
                groupoids.cardinality(groupoids.homotopy_fiber(f, y))
                / aut.order
                for y, aut in f.target.skeleton.components
            ),
            sympy.Rational(0),
        )


@check("diagonal-pullback-free-loop")
def _diagonal_pullback_is_free_loop(fx):
    for grpd in fx.groupoids:
        if len(grpd.morphisms) > 6:
            continue
        yield repr(grpd), lambda: groupoids.equivalence_check(
            groupoids.homotopy_pullback(
                groupoids.diagonal(grpd), groupoids.diagonal(grpd)
            ).groupoid,
            loops.free_loop(grpd).underlying,
            bound=fx.bound,
        )


@check("loop-commuting-tuples")
def _iterated_loops_against_tuples(fx):
    cases = [(group, 3) for group in fx.groups]
    cases.append((groups.named_group("S4"), 2))
    for group, top in cases:
        for p in CHARACTER_PRIMES:
            for h in range(top + 1):
                params = loops.PAdicLoopParams(p, h)
                yield f"{group!r} p={p} h={h}", lambda: (
                    groupoids.equivalence_check(
                        loops.iterated_p_free_loop(
                            groupoids.delooping(group), params
                        ),
                        loops.commuting_tuples_direct(group, params),
                        bound=fx.bound,
                    )
                )


@check("loop-functoriality")
def _loop_map_composes(fx):
    by_source = {}
    for f in fx.maps:
        if max(len(f.source.morphisms), len(f.target.morphisms)) <= SMALL:
            by_source.setdefault(f.source, []).append(f)
    for f in fx.maps:
        if len(f.source.morphisms) > SMALL or len(f.target.morphisms) > SMALL:
            continue
        for g in by_source.get(f.target, [])[:2]:
            params = loops.PAdicLoopParams(2, 1)
            yield f"{g!r} after {f!r}", lambda: loops.loop_map(
                groupoids.compose_maps(g, f), params
            ) == groupoids.compose_maps(
                loops.loop_map(g, params), loops.loop_map(f, params)
            )


@check("loop-pullback")
def _loops_preserve_pullbacks(fx):
    for square, _ in fx.squares:
        if len(square.groupoid.morphisms) > MEDIUM:
            continue
        for p in CHARACTER_PRIMES:
            params = loops.PAdicLoopParams(p, 1)
            yield f"{square.groupoid!r} p={p}", lambda: (
                loops.pullback_comparison(square, params)[0].is_equivalence()
            )


@check("span-functoriality")
def _linearize_composes(fx):
    for i, (first, second) in enumerate(fx.span_pairs):
        yield f"pair {i}", lambda: linalg.equal(
            spans.linearize(spans.span_compose(first, second)),
            linalg.multiply(spans.linearize(second), spans.linearize(first)),
        )


@check("projection-formula")
def _projection_formula(fx):
    for f in fx.maps:
        if len(f.source.morphisms) > MEDIUM:
            continue
        rng = random.Random(f"{fx.seed}:{len(f.source.objects)}")
        phi = spans.ClassFunction(
            f.source, [rng.randint(-3, 3) for _ in f.source.skeleton.components]
        )
        psi = spans.ClassFunction(
            f.target, [rng.randint(-3, 3) for _ in f.target.skeleton.components]
        )
        yield repr(f), lambda: spans.integrate(
            f, spans.restrict(f, psi) * phi
        ) == psi * spans.integrate(f, phi)


@check("zigzag")
def _zigzag_identities(fx):
    for f, system in fx.norm_instances:
        target_system = fx.systems_on(f.target)[0]
        yield repr(f), lambda: all(
            composite.is_identity()
            for composite in linsys.zigzag_composites(
                f, system, target_system
            ).values()
        )


@check("norm-invertible")
def _norm_invertible(fx):
    for f, system in fx.norm_instances:
        yield f"{f!r} {system!r}", lambda: linsys.norm_structural(
            f, system
        ).is_invertible()


@check("dualizing-invertible")
def _dualizing_invertible(fx):
    for f, system in fx.norm_instances:
        yield f"{f!r} {system!r}", lambda: linsys.dualizing_map(f, system)[
            1
        ].is_invertible()


@check("norm-agrees-direct")
def _norm_agrees_with_direct(fx):
    for f, system in fx.norm_instances:
        yield f"{f!r} {system!r}", lambda: _identified_norm(
            f, system
        ) == linsys.norm_direct(f, system)


@check("normalized-norm")
def _normalized_norm(fx):
    for f, system in fx.norm_instances:
        yield f"{f!r} {system!r}", lambda: linsys.normalized_norm(
            f, system
        ) == linsys.norm_direct(f, system)


@check("beck-chevalley")
def _beck_chevalley(fx):
    for square, system in fx.squares:
        yield repr(square.groupoid), lambda: (
            linsys.beck_chevalley_shriek(square, system).is_invertible()
            and linsys.beck_chevalley_star(square, system).is_invertible()
        )


@check("cardinality-linear")
def _linear_cardinality(fx):
    for grpd in fx.groupoids:
        if len(grpd.morphisms) > MEDIUM:
            continue
        yield repr(grpd), lambda: linsys.cardinality_linear(
            grpd
        ) == groupoids.cardinality(grpd)


@check("categorical-cardinality")
def _categorical_cardinality(fx):
    for grpd in fx.groupoids:
        yield repr(grpd), lambda: linsys.categorical_cardinality(grpd) == len(
            loops.free_loop(grpd).underlying.skeleton
        )


@check("integrate-linear")
def _linear_integration(fx):
    for f, _ in fx.norm_instances:
        if len(f.source.morphisms) > SMALL:
            continue
        phi = spans.ClassFunction(
            f.source, range(1, len(f.source.skeleton) + 1)
        )
        yield repr(f), lambda: linsys.integrate_linear(
            f, phi
        ) == spans.integrate(f, phi)


@check("pushforward-character")
def _pushforward_character(fx):
    for f, system in fx.norm_instances:
        if len(f.source.morphisms) > SMALL or len(f.target.morphisms) > SMALL:
            continue
        yield f"{f!r} {system!r}", lambda: (
            characters.verify_pushforward_character(f, system).holds
        )


@check("character-additive")
def _character_sum_and_product(fx):
    for name in CHARACTER_GROUPS:
        group = groups.named_group(name)
        reps = [
            characters.trivial_rep(group),
            characters.sign_rep(group),
            characters.permutation_rep(
                group,
                range(len(group.perms[0])),
                lambda g, s: group.perms[g][s],
            ),
        ]
        for first, second in itertools.combinations_with_replacement(reps, 2):
            yield f"{name} dims {first.dim}, {second.dim}", lambda: (
                characters.character(characters.direct_sum(first, second))
                == characters.character(first) + characters.character(second)
                and characters.character(
                    characters.tensor_product(first, second)
                )
                == characters.character(first) * characters.character(second)
            )


@check("induction-square")
def _induction_square(fx):
    for name, elements, inclusion, rep in fx.character_instances:
        yield f"{name} > {list(elements)} dim {rep.dim}", lambda: (
            characters.verify_induction_square(inclusion, rep).holds
        )


@check("p-typical-square")
def _p_typical_square(fx):
    for name, elements, inclusion, rep in fx.character_instances:
        for p in CHARACTER_PRIMES:
            yield f"{name} > {list(elements)} dim {rep.dim} p={p}", lambda: (
                characters.p_typical_character_square(inclusion, rep, p).holds
            )


@check("induction-transitive")
def _induction_in_steps(fx):
    for name in CHARACTER_GROUPS:
        group = groups.named_group(name)
        subgroups = group.subgroups()
        for small, middle in itertools.product(subgroups, repeat=2):
            if small == middle or not set(small) <= set(middle):
                continue
            if len(middle) == group.order:
                continue
            yield f"{name} > {list(middle)} > {list(small)}", lambda: (
                _induce_in_steps(group, small, middle)
            )


def _induce_in_steps(group, small, middle):
    outer, middle_group = characters.inclusion_map(group, middle)
    embedding = outer.mor_map
    inner, small_group = characters.inclusion_map(
        middle_group, [embedding.index(g) for g in small]
    )
    direct, direct_group = characters.inclusion_map(group, small)
    two_steps = characters.induce(
        outer, characters.induce(inner, characters.regular_rep(small_group))
    )
    one_step = characters.induce(
        direct, characters.regular_rep(direct_group)
    )
    return characters.character(two_steps) == characters.character(one_step)


@check("chromatic-oracle")
def _chromatic_against_oracle(fx):
    for group in fx.groups:
        for p in CHROMATIC_PRIMES:
            for n in range(4):
                yield f"{group!r} p={p} n={n}", lambda: (
                    characters.chromatic_cardinality(
                        groupoids.delooping(group), p, n
                    )
                    == characters.chromatic_cardinality_oracle(group, p, n)
                )


@check("chromatic-height-zero")
def _chromatic_height_zero(fx):
    for grpd in fx.groupoids:
        yield repr(grpd), lambda: characters.chromatic_cardinality(
            grpd, 2, 0
        ) == groupoids.cardinality(grpd)


@check("transchromatic")
def _transchromatic(fx):
    for group in fx.groups:
        grpd = groupoids.delooping(group)
        for p in CHARACTER_PRIMES:
            for t in range(3):
                yield f"{group!r} p={p} t={t}", lambda: (
                    characters.transchromatic_cardinality(grpd, p, 2, t)
                    == characters.chromatic_cardinality(grpd, p, 2)
                )


@check("pullback-symmetric")
def _pullback_is_symmetric(fx):
    for square, _ in fx.squares:
        if len(square.groupoid.morphisms) > MEDIUM:
            continue
        yield repr(square.groupoid), lambda: groupoids.equivalence_check(
            square.groupoid,
            groupoids.homotopy_pullback(square.g, square.f).groupoid,
            bound=fx.bound,
        )


@check("loops-of-groups")
def _loops_of_groups(fx):
    for group in fx.groups:
        yield repr(group), lambda: _loops_follow_conjugacy(group)


def _loops_follow_conjugacy(group):
    """Components of ``L BG`` are classes with centralizers as automorphisms."""
    loop = loops.free_loop(groupoids.delooping(group)).underlying
    skeleton = loop.skeleton
    component = {
        g: skeleton.component_of[w] for w, (_, g) in enumerate(loop.objects)
    }
    classes = group.conjugacy_classes()
    if len(classes) != len(skeleton):
        return False
    return all(
        len({component[g] for g in cls}) == 1
        and skeleton.aut_order(component[cls[0]])
        == len(group.centralizer(cls[0]))
        for cls in classes
    )


@check("p-loops-full")
def _p_loops_are_full(fx):
    for grpd in fx.groupoids:
        if len(grpd.morphisms) > SMALL:
            continue
        for p in CHARACTER_PRIMES:
            yield f"{grpd!r} p={p}", lambda: groupoids.equivalence_check(
                _p_part_of_free_loop(grpd, p),
                loops.p_free_loop(grpd, p).underlying,
                bound=fx.bound,
            )


def _p_part_of_free_loop(grpd, p):
    free = loops.free_loop(grpd).underlying
    objects = [
        w
        for w, (_, g) in enumerate(free.objects)
        if groups.is_power_of(grpd.morphism_order(g), p)
    ]
    return groupoids.full_subgroupoid(free, objects)[0]


@check("p-loops-sum-product")
def _p_loops_sum_and_product(fx):
    def looped(grpd):
        return loops.p_free_loop(grpd, 2).underlying

    for union, parts in fx.unions:
        yield repr(union), lambda: groupoids.equivalence_check(
            looped(union),
            groupoids.disjoint_union([looped(part) for part in parts]),
            bound=fx.bound,
        )
    for first, second in fx.products:
        yield f"{first!r} x {second!r}", lambda: groupoids.equivalence_check(
            looped(groupoids.product(first, second)),
            groupoids.product(looped(first), looped(second)),
            bound=fx.bound,
        )


@check("integration-functoriality")
def _integration_composes(fx):
    for f, g in _composable_pairs(fx.maps, SMALL):
        yield f"{g!r} after {f!r}", lambda: linalg.equal(
            spans.integration_matrix(groupoids.compose_maps(g, f)),
            linalg.multiply(
                spans.integration_matrix(g), spans.integration_matrix(f)
            ),
        )


def _composable_pairs(maps, size):
    small = [
        f
        for f in maps
        if len(f.source.morphisms) <= size and len(f.target.morphisms) <= size
    ]
    by_source = {}
    for f in small:
        by_source.setdefault(f.source, []).append(f)
    for f in small:
        for g in by_source.get(f.target, [])[:2]:
            yield f, g


@check("composite-pushforward")
def _composite_pushforward(fx):
    for f, g in _composable_pairs(fx.maps, SMALL):
        system = fx.systems_on(f.source)[-1]
        yield f"{g!r} after {f!r}", lambda: all(
            linsys.transport_system(phi) == phi.target
            for phi in linsys.composite_comparison(f, g, system)
        )


@check("restriction-square")
def _restriction_square(fx):
    for name in CHARACTER_GROUPS:
        group = groups.named_group(name)
        reps = _representations_of(group) + [characters.sign_rep(group)]
        for elements in group.subgroups():
            inclusion, _ = characters.inclusion_map(group, elements)
            for rep in reps:
                yield f"{name} > {list(elements)} dim {rep.dim}", lambda: (
                    characters.verify_restriction_square(inclusion, rep).holds
                )


def _group(name):
    return groups.named_group(name)


def _b(name):
    return groupoids.delooping(_group(name))


def _identified_norm(f, system):
    _, comparison = linsys.dualizing_map(f, system)
    return linsys.compose_system_maps(
        linsys.norm_structural(f, system),
        linsys.pushforward_left_map(f, comparison.inverse()),
    )


def _conjugation(name):
    return groupoids.conjugation_groupoid(_group(name))


def _iterated_cardinality(name, p, h):
    looped = loops.iterated_p_free_loop(_b(name), loops.PAdicLoopParams(p, h))
    return groupoids.cardinality(looped)


def _fmt(value):
    return linalg.format_rational(value)


def _orders(grpd):
    return " ".join(str(aut.order) for _, aut in grpd.skeleton.components)


def _subgroup_map(group_name, elements):
    return characters.inclusion_map(_group(group_name), elements)[0]


def _transposition_subgroup():
    return _subgroup_map("S3", [0, 1])


def _rotation_subgroup():
    s3 = _group("S3")
    rotations = [s3.perms.index((1, 2, 0)), s3.perms.index((2, 0, 1))]
    return _subgroup_map("S3", [0, *rotations])


def _sign_of_c2():
    group = characters.group_of(_transposition_subgroup().source)
    return characters.RationalRep(
        group, [linalg.scalar(1), linalg.scalar(-1)]
    )


def _looped_fibers_are_discrete():
    looped = loops.loop_map(
        _transposition_subgroup(), loops.PAdicLoopParams(2, 1)
    )
    return all(
        aut.order == 1
        for y in range(len(looped.target.objects))
        for _, aut in groupoids.homotopy_fiber(looped, y).skeleton.components
    )


def _size_and_cardinality(grpd):
    return f"{len(grpd.objects)} {_fmt(groupoids.cardinality(grpd))}"


def _regular(name):
    return characters.regular_rep(_group(name)).to_local_system()


def _norm_direct_at_point(system):
    f = groupoids.terminal_map(system.base)
    return translator.plain_matrix(linsys.norm_direct(f, system).components[0])


def _natural_rep(name):
    group = _group(name)
    return characters.permutation_rep(
        group, range(len(group.perms[0])), lambda g, s: group.perms[g][s]
    )


def _pt_span(grpd):
    to_point = groupoids.terminal_map(grpd)
    return spans.Span(to_point, to_point)


def _cli(command, document, **flags):
    from transchromatic import commands

    args = dict(p=None, h=1, n=None, t=None, seed=None, only=None)
    args.update(flags)
    output = getattr(commands, command)(
        document, argparse.Namespace(**args), {"isomorphism_bound": 128}
    )
    return output.plain


def _square_report(report):
    return " ".join(_fmt(v) for v in report.induced) + (
        "" if report.holds else " (FAIL)"
    )


GOLDENS = [
    (
        "permutations C2",
        lambda: str(groups.group_from_permutations([[1, 0]]).order),
        "2",
    ),
    (
        "permutations S3",
        lambda: str(
            groups.group_from_permutations([[1, 0, 2], [1, 2, 0]]).order
        ),
        "6",
    ),
    (
        "permutations trivial",
        lambda: str(groups.group_from_permutations([], degree=1).order),
        "1",
    ),
    ("delooping C1", lambda: str(len(_b("C1").morphisms)), "1"),
    ("delooping C2", lambda: str(len(_b("C2").morphisms)), "2"),
    ("delooping S3", lambda: str(len(_b("S3").morphisms)), "6"),
    (
        "trivial action on 3 points",
        lambda: _orders(
            groupoids.action_groupoid(_group("C1"), range(3), lambda g, s: s)
        ),
        "1 1 1",
    ),
    (
        "translation C2",
        lambda: _fmt(
            groupoids.cardinality(groupoids.translation_groupoid(_group("C2")))
        ),
        "1",
    ),
    (
        "conjugation S3 components",
        lambda: _orders(_conjugation("S3")),
        "6 2 3",
    ),
    ("skeleton discrete 4", lambda: _orders(groupoids.discrete(4)), "1 1 1 1"),
    ("skeleton BS3", lambda: _orders(_b("S3")), "6"),
    (
        "skeleton BC2 + BC3",
        lambda: _orders(groupoids.disjoint_union([_b("C2"), _b("C3")])),
        "2 3",
    ),
    ("cardinality BC6", lambda: _fmt(groupoids.cardinality(_b("C6"))), "1/6"),
    (
        "cardinality discrete 3",
        lambda: _fmt(groupoids.cardinality(groupoids.discrete(3))),
        "3",
    ),
    (
        "cardinality S3//S3",
        lambda: _fmt(
            groupoids.cardinality(_conjugation("S3"))
        ),
        "1",
    ),
    (
        "product with a point",
        lambda: str(
            groupoids.equivalence_check(
                groupoids.product(_b("S3"), groupoids.point()), _b("S3")
            )
        ),
        "True",
    ),
    (
        "product BC2 x BC2",
        lambda: str(
            groupoids.equivalence_check(
                groupoids.product(_b("C2"), _b("C2")), _b("V4")
            )
        ),
        "True",
    ),
    (
        "cardinality BC2 x discrete 3",
        lambda: _fmt(
            groupoids.cardinality(
                groupoids.product(_b("C2"), groupoids.discrete(3))
            )
        ),
        "3/2",
    ),
    (
        "pullback over a point",
        lambda: str(
            groupoids.equivalence_check(
                groupoids.homotopy_pullback(
                    groupoids.terminal_map(_b("C2")),
                    groupoids.terminal_map(groupoids.discrete(3)),
                ).groupoid,
                groupoids.product(_b("C2"), groupoids.discrete(3)),
            )
        ),
        "True",
    ),
    (
        "pullback BC2 -> BS3 <- pt",
        lambda: _fmt(
            groupoids.cardinality(
                groupoids.homotopy_pullback(
                    _transposition_subgroup(),
                    groupoids.point_inclusion(_b("S3"), 0),
                ).groupoid
            )
        ),
        "3",
    ),
    (
        "pullback of the diagonal",
        lambda: str(
            groupoids.equivalence_check(
                groupoids.homotopy_pullback(
                    groupoids.diagonal(_b("S3")), groupoids.diagonal(_b("S3"))
                ).groupoid,
                loops.free_loop(_b("S3")).underlying,
            )
        ),
        "True",
    ),
    (
        "fiber of an identity",
        lambda: _orders(
            groupoids.homotopy_fiber(groupoids.identity_map(_b("S3")), 0)
        ),
        "1",
    ),
    (
        "fiber of BC2 -> BS3",
        lambda: _orders(groupoids.homotopy_fiber(_transposition_subgroup(), 0)),
        "1 1 1",
    ),
    (
        "fiber over a point",
        lambda: str(
            groupoids.equivalence_check(
                groupoids.homotopy_fiber(
                    groupoids.terminal_map(
                        _conjugation("S3")
                    ),
                    0,
                ),
                _conjugation("S3"),
            )
        ),
        "True",
    ),
    (
        "equivalence with itself",
        lambda: str(groupoids.equivalence_check(_b("D4"), _b("D4"))),
        "True",
    ),
    (
        "equivalence BC4 and BV4",
        lambda: str(groupoids.equivalence_check(_b("C4"), _b("V4"))),
        "False",
    ),
    (
        "equivalence discrete 2 and BC2",
        lambda: str(
            groupoids.equivalence_check(groupoids.discrete(2), _b("C2"))
        ),
        "False",
    ),
    (
        "free loop of discrete 3",
        lambda: _orders(loops.free_loop(groupoids.discrete(3)).underlying),
        "1 1 1",
    ),
    (
        "free loop of BS3",
        lambda: str(
            groupoids.equivalence_check(
                loops.free_loop(_b("S3")).underlying,
                _conjugation("S3"),
            )
        ),
        "True",
    ),
    (
        "cardinality of L BS3",
        lambda: _fmt(
            groupoids.cardinality(loops.free_loop(_b("S3")).underlying)
        ),
        "1",
    ),
    (
        "2-adic loops of BC3",
        lambda: _orders(loops.p_free_loop(_b("C3"), 2).underlying),
        "3",
    ),
    (
        "2-adic loops of BC2",
        lambda: _fmt(
            groupoids.cardinality(loops.p_free_loop(_b("C2"), 2).underlying)
        ),
        "1",
    ),
    (
        "2-adic loops of BS3",
        lambda: _fmt(
            groupoids.cardinality(loops.p_free_loop(_b("S3"), 2).underlying)
        ),
        "2/3",
    ),
    (
        "iterated loops h=0",
        lambda: str(
            loops.iterated_p_free_loop(_b("S3"), loops.PAdicLoopParams(2, 0))
            == _b("S3")
        ),
        "True",
    ),
    (
        "iterated loops BC3 h=3",
        lambda: _fmt(_iterated_cardinality("C3", 3, 3)),
        "9",
    ),
    (
        "iterated loops BS3 p=2 h=2",
        lambda: _fmt(_iterated_cardinality("S3", 2, 2)),
        "5/3",
    ),
    (
        "commuting tuples C2",
        lambda: _orders(
            loops.commuting_tuples_direct(
                _group("C2"), loops.PAdicLoopParams(2, 1)
            )
        ),
        "2 2",
    ),
    (
        "commuting pairs S3",
        lambda: _size_and_cardinality(
            loops.commuting_tuples_direct(
                _group("S3"), loops.PAdicLoopParams(2, 2)
            )
        ),
        "10 5/3",
    ),
    (
        "commuting pairs C3",
        lambda: _size_and_cardinality(
            loops.commuting_tuples_direct(
                _group("C3"), loops.PAdicLoopParams(3, 2)
            )
        ),
        "9 3",
    ),
    (
        "loops of BC2 -> BS3 have discrete fibers",
        lambda: str(_looped_fibers_are_discrete()),
        "True",
    ),
    (
        "identity span of a point",
        lambda: str(
            linalg.to_rows(
                spans.linearize(spans.span_identity(groupoids.point()))
            )
        ),
        "[[1]]",
    ),
    (
        "identity span",
        lambda: str(
            linalg.equal(
                spans.linearize(
                    spans.span_identity(_conjugation("S3"))
                ),
                linalg.identity(3),
            )
        ),
        "True",
    ),
    (
        "induction then restriction along BC2 -> BS3",
        lambda: _fmt(
            spans.linearize(
                spans.span_compose(
                    spans.span_from_map_fwd(_transposition_subgroup()),
                    spans.span_from_map_bwd(_transposition_subgroup()),
                )
            )[0, 0]
        ),
        "3",
    ),
    (
        "cardinality span of BS3",
        lambda: _fmt(spans.linearize(_pt_span(_b("S3")))[0, 0]),
        "1/6",
    ),
    (
        "cardinality span after the point",
        lambda: _fmt(
            spans.linearize(
                spans.span_compose(
                    spans.span_identity(groupoids.point()), _pt_span(_b("S3"))
                )
            )[0, 0]
        ),
        "1/6",
    ),
    (
        "pt -> BS3 -> pt through pullback",
        lambda: _fmt(
            spans.linearize(
                spans.span_compose(
                    spans.Span(
                        groupoids.identity_map(groupoids.point()),
                        groupoids.point_inclusion(_b("S3"), 0),
                    ),
                    spans.Span(
                        groupoids.point_inclusion(_b("S3"), 0),
                        groupoids.identity_map(groupoids.point()),
                    ),
                )
            )[0, 0]
        ),
        "6",
    ),
    (
        "integration of the constant function",
        lambda: _fmt(
            spans.integrate(
                groupoids.terminal_map(_conjugation("S3")),
                spans.ClassFunctionSpace(_conjugation("S3")).constant(),
            ).values[0]
        ),
        "1",
    ),
    (
        "integration of the sign character",
        lambda: _fmt(
            spans.integrate(
                groupoids.terminal_map(loops.free_loop(_b("C2")).underlying),
                spans.ClassFunction(
                    loops.free_loop(_b("C2")).underlying, [1, -1]
                ),
            ).values[0]
        ),
        "0",
    ),
    (
        "regular S3 restricted to C2 has 3 invariants",
        lambda: str(
            linsys.pushforward_right(
                groupoids.terminal_map(_transposition_subgroup().source),
                linsys.pullback_system(
                    _transposition_subgroup(), _regular("S3")
                ),
            ).system.dims[0]
        ),
        "3",
    ),
    (
        "invariants of regular S3",
        lambda: str(
            linsys.pushforward_right(
                groupoids.terminal_map(_b("S3")), _regular("S3")
            ).system.dims[0]
        ),
        "1",
    ),
    (
        "coinvariants of regular S3",
        lambda: str(
            linsys.pushforward_left(
                groupoids.terminal_map(_b("S3")), _regular("S3")
            ).system.dims[0]
        ),
        "1",
    ),
    (
        "pushforwards of discrete 2",
        lambda: " ".join(
            str(
                push(
                    groupoids.terminal_map(groupoids.discrete(2)),
                    linsys.LocalSystem(
                        groupoids.discrete(2),
                        [1, 2],
                        [linalg.identity(1), linalg.identity(2)],
                    ),
                ).system.dims[0]
            )
            for push in (linsys.pushforward_right, linsys.pushforward_left)
        ),
        "3 3",
    ),
    (
        "zigzag along BC2 -> pt",
        lambda: str(
            linsys.zigzag_composites(
                groupoids.terminal_map(_b("C2")),
                _regular("C2"),
                linsys.constant(groupoids.point()),
            )["shriek-counit"].is_identity()
        ),
        "True",
    ),
    (
        "unit of constant Q along BS3 -> pt",
        lambda: _fmt(
            linsys.unit_star(
                groupoids.terminal_map(_b("S3")),
                linsys.constant(groupoids.point()),
            ).components[0][0, 0]
        ),
        "1",
    ),
    (
        "Beck-Chevalley of the diagonal of BC2 -> BS3",
        lambda: str(
            linsys.beck_chevalley_shriek(
                linsys.diagonal_square(_transposition_subgroup())[0],
                linsys.constant(_b("C2")),
            ).is_invertible()
        ),
        "True",
    ),
    (
        "Beck-Chevalley of a product square",
        lambda: (
            lambda square: str(
                linsys.beck_chevalley_shriek(
                    square, linsys.constant(_b("C2"))
                ).is_invertible()
                and linsys.beck_chevalley_star(
                    square, linsys.constant(_b("C2"))
                ).is_invertible()
            )
        )(
            groupoids.homotopy_pullback(
                groupoids.terminal_map(_b("C2")),
                groupoids.terminal_map(groupoids.discrete(2)),
            )
        ),
        "True",
    ),
    (
        "Beck-Chevalley of an identity square",
        lambda: str(
            linsys.beck_chevalley_shriek(
                groupoids.homotopy_pullback(
                    groupoids.identity_map(_b("C2")),
                    groupoids.identity_map(_b("C2")),
                ),
                linsys.constant(_b("C2")),
            ).components[0][0, 0]
        ),
        "1",
    ),
    (
        "norm of constant Q along BS3 -> pt",
        lambda: _fmt(
            linsys.normalized_norm(
                groupoids.terminal_map(_b("S3")), linsys.constant(_b("S3"))
            ).components[0][0, 0]
        ),
        "6",
    ),
    (
        "norm along discrete 2 -> pt",
        lambda: _norm_direct_at_point(linsys.constant(groupoids.discrete(2))),
        "1 0\n0 1",
    ),
    (
        "norm of an identity is invertible",
        lambda: str(
            linsys.norm_structural(
                groupoids.identity_map(_b("S3")), _regular("S3")
            ).is_invertible()
        ),
        "True",
    ),
    (
        "2-adic loop functor of an identity",
        lambda: str(
            loops.loop_map(
                groupoids.identity_map(_b("S3")), loops.PAdicLoopParams(2)
            )
            == groupoids.identity_map(loops.p_free_loop(_b("S3"), 2).underlying)
        ),
        "True",
    ),
    (
        "linearized identity of S3//S3",
        lambda: translator.plain_matrix(
            spans.linearize(
                spans.span_from_map_bwd(
                    groupoids.identity_map(_conjugation("S3"))
                )
            )
        ),
        "1 0 0\n0 1 0\n0 0 1",
    ),
    (
        "class functions of L BS3 restricted to L BC2",
        lambda: " ".join(
            str(v)
            for v in spans.restrict(
                loops.free_loop_map(_transposition_subgroup()),
                spans.ClassFunction(
                    loops.free_loop(_b("S3")).underlying, [5, 7, 11]
                ),
            ).values
        ),
        "5 7",
    ),
    (
        "identified norm of an identity",
        lambda: str(
            _identified_norm(
                groupoids.identity_map(_b("S3")), _regular("S3")
            ).is_identity()
        ),
        "True",
    ),
    (
        "dualizing comparison of an identity",
        lambda: str(
            linsys.dualizing_map(
                groupoids.identity_map(_b("C3")), _regular("C3")
            )[1].is_invertible()
        ),
        "True",
    ),
    (
        "dualizing comparison of regular C2",
        lambda: str(
            linsys.dualizing_map(
                groupoids.terminal_map(_b("C2")), _regular("C2")
            )[1].is_invertible()
        ),
        "True",
    ),
    (
        "dualizing comparison of permutation S3",
        lambda: str(
            linsys.dualizing_map(
                groupoids.terminal_map(_b("S3")),
                _natural_rep("S3").to_local_system(),
            )[1].is_invertible()
        ),
        "True",
    ),
    (
        "direct norm of constant Q on BS3",
        lambda: _norm_direct_at_point(linsys.constant(_b("S3"))),
        "6",
    ),
    (
        "direct norm of the sign of C2",
        lambda: _norm_direct_at_point(_sign_of_c2().to_local_system()),
        "[] (0x0)",
    ),
    (
        "direct norm of regular C3",
        lambda: _norm_direct_at_point(_regular("C3")),
        "1",
    ),
    (
        "linear cardinality of a point",
        lambda: _fmt(linsys.cardinality_linear(groupoids.point())),
        "1",
    ),
    (
        "linear cardinality of BS3",
        lambda: _fmt(linsys.cardinality_linear(_b("S3"))),
        "1/6",
    ),
    (
        "linear cardinality of S3//S3",
        lambda: _fmt(
            linsys.cardinality_linear(_conjugation("S3"))
        ),
        "1",
    ),
    (
        "character of trivial S3",
        lambda: " ".join(
            _fmt(v)
            for v in characters.character(
                characters.trivial_rep(_group("S3"))
            ).values
        ),
        "1 1 1",
    ),
    (
        "character of regular S3",
        lambda: " ".join(
            _fmt(v)
            for v in characters.character(
                characters.regular_rep(_group("S3"))
            ).values
        ),
        "6 0 0",
    ),
    (
        "character of permutation S3",
        lambda: " ".join(
            _fmt(v) for v in characters.character(_natural_rep("S3")).values
        ),
        "3 1 0",
    ),
    (
        "induced trivial from C2",
        lambda: " ".join(
            _fmt(v)
            for v in characters.character(
                characters.induce(
                    _transposition_subgroup(),
                    characters.trivial_rep(
                        characters.group_of(_transposition_subgroup().source)
                    ),
                )
            ).values
        ),
        "3 1 0",
    ),
    (
        "induced sign from C2",
        lambda: " ".join(
            _fmt(v)
            for v in characters.character(
                characters.induce(_transposition_subgroup(), _sign_of_c2())
            ).values
        ),
        "3 -1 0",
    ),
    (
        "integrated sign character from C2",
        lambda: " ".join(
            _fmt(v)
            for v in characters.induced_character_via_integration(
                _transposition_subgroup(), characters.character(_sign_of_c2())
            ).values
        ),
        "3 -1 0",
    ),
    (
        "induction square for the sign of C2",
        lambda: _square_report(
            characters.verify_induction_square(
                _transposition_subgroup(), _sign_of_c2()
            )
        ),
        "3 -1 0",
    ),
    (
        "induction square for regular A3",
        lambda: _square_report(
            characters.verify_induction_square(
                _rotation_subgroup(),
                characters.regular_rep(
                    characters.group_of(_rotation_subgroup().source)
                ),
            )
        ),
        "6 0 0",
    ),
    (
        "2-typical square for the sign of C2",
        lambda: _square_report(
            characters.p_typical_character_square(
                _transposition_subgroup(), _sign_of_c2(), 2
            )
        ),
        "3 -1",
    ),
    (
        "3-typical square for regular A3",
        lambda: _square_report(
            characters.p_typical_character_square(
                _rotation_subgroup(),
                characters.regular_rep(
                    characters.group_of(_rotation_subgroup().source)
                ),
                3,
            )
        ),
        "6 0",
    ),
    (
        "5-typical square for the sign of C2",
        lambda: _square_report(
            characters.p_typical_character_square(
                _transposition_subgroup(), _sign_of_c2(), 5
            )
        ),
        "3",
    ),
    (
        "chromatic cardinality of a point",
        lambda: _fmt(characters.chromatic_cardinality(groupoids.point(), 3, 2)),
        "1",
    ),
    (
        "chromatic cardinality BC2 n=2",
        lambda: _fmt(characters.chromatic_cardinality(_b("C2"), 2, 2)),
        "2",
    ),
    (
        "chromatic cardinality BC3 n=3",
        lambda: _fmt(characters.chromatic_cardinality(_b("C3"), 3, 3)),
        "9",
    ),
    (
        "chromatic cardinality BS3 p=2 n=1",
        lambda: _fmt(characters.chromatic_cardinality(_b("S3"), 2, 1)),
        "2/3",
    ),
    (
        "chromatic cardinality BS3 p=2 n=2",
        lambda: _fmt(characters.chromatic_cardinality(_b("S3"), 2, 2)),
        "5/3",
    ),
    (
        "oracle C3 n=2",
        lambda: _fmt(
            characters.chromatic_cardinality_oracle(_group("C3"), 3, 2)
        ),
        "3",
    ),
    (
        "oracle S3 p=2 n=2",
        lambda: _fmt(
            characters.chromatic_cardinality_oracle(_group("S3"), 2, 2)
        ),
        "5/3",
    ),
    (
        "oracle trivial group",
        lambda: _fmt(
            characters.chromatic_cardinality_oracle(_group("C1"), 5, 3)
        ),
        "1",
    ),
    (
        "cli cardinality of BC6",
        lambda: _cli("cardinality_command", {"named": "C6"}),
        "1/6",
    ),
    (
        "cli chrom-card of S3",
        lambda: _cli("chrom_card_command", {"named": "S3"}, p=2, n=1),
        "2/3",
    ),
    (
        "cli induce-check of the sign of C2",
        lambda: _cli(
            "induce_check_command",
            {
                "subgroup": {"group": {"named": "S3"}, "elements": [0, 1]},
                "rep": {"kind": "matrices", "images": [[[1]], [[-1]]]},
            },
        ),
        "PASS\nclasses: 0 1 3\nvalues: 3 -1 0",
    ),
]

for _name, _thunk, _expected in GOLDENS:
    CHECKS[f"golden: {_name}"] = (
        lambda fx, thunk=_thunk, expected=_expected: iter(
            [(expected.replace("\n", " | "), lambda: thunk() == expected)]
        )
    )


def run_check(name, fixtures):
    """Evaluate every case of the named check."""
    cases, failures = 0, []
    with utils.time_logger(f"Check {name}"):
        try:
            for case, thunk in CHECKS[name](fixtures):
                cases += 1
                try:
                    holds = thunk()
                except CapacityError:
                    raise
                except GroupoidError as exc:
                    failures.append(f"{case}: {exc}")
                    continue
                if not holds:
                    failures.append(case)
        except CapacityError:
            logger.warning(f"Check {name} exceeded the isomorphism bound")
            raise
        except GroupoidError as exc:
            failures.append(f"setup: {exc}")
    if failures:
        logger.warning(f"Check {name} failed {len(failures)} of {cases} cases")
    else:
        logger.debug(f"Check {name} passed {cases} cases")
    return CheckResult(name, cases, failures, passed=not failures)


class CheckWorker(pykka.ThreadingActor):
    def __init__(self, fixtures):
        super().__init__()
        self._fixtures = fixtures

    def on_start(self):
        logger.debug(f"Check worker {self.actor_urn} started")

    def run_check(self, name):
        return run_check(name, self._fixtures)


def select_checks(only=None):
    if not only:
        return list(CHECKS)
    selected = [
        name for name in CHECKS if any(name.startswith(o) for o in only)
    ]
    if not selected:
        raise InvalidInputError(f"No check matches {', '.join(only)}")
    return selected


def run_suite(
    seed=2024, span_pairs=100, parallelism=1, only=None, bound=None
):
    """Run the selected checks; results come back in check order."""
    names = select_checks(only)
    fixtures = Fixtures(seed=seed, span_pairs=span_pairs, bound=bound)
    size = max(1, min(parallelism, len(names)))
    refs = [CheckWorker.start(fixtures) for _ in range(size)]
    try:
        workers = [ref.proxy() for ref in refs]
        futures = [
            workers[i % len(workers)].run_check(name)
            for i, name in enumerate(names)
        ]
        results = pykka.get_all(futures)
    finally:
        for ref in refs:
            ref.stop()
    passed = sum(r.passed for r in results)
    logger.info(f"Suite: {passed} of {len(results)} checks passed")
    return results
