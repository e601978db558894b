import collections
import functools
import logging
import random

import sympy

from transchromatic import groups, utils
from transchromatic.errors import InvalidInputError

logger = logging.getLogger(__name__)

# Beyond this many composable triples associativity is checked on a fixed
# pseudo-random sample of ASSOCIATIVITY_SAMPLES triples.
ASSOCIATIVITY_CHECK_BOUND = 250_000
ASSOCIATIVITY_SAMPLES = 20_000


def _trace(*args, **kwargs):
    logger.log(utils.TRACE, *args, **kwargs)


class FiniteGroupoid:
    """A finite groupoid with explicit objects, morphisms and composition.

    ``objects`` is a sequence of hashable labels, ``morphisms`` a sequence of
    ``(label, src, tgt)`` triples with ``src``/``tgt`` object indices, and
    ``compose(g, f)`` returns the label of ``g`` after ``f``. Everything is
    stored by index afterwards; labels only name things.
    """

    def __init__(self, objects, morphisms, compose, name=None):
        self.objects = tuple(objects)
        self.name = name
        self._object_index = {x: i for i, x in enumerate(self.objects)}
        if len(self._object_index) != len(self.objects):
            raise InvalidInputError("Object labels must be distinct")

        morphisms = list(morphisms)
        self.morphisms = tuple(label for label, _, _ in morphisms)
        self.src = tuple(src for _, src, _ in morphisms)
        self.tgt = tuple(tgt for _, _, tgt in morphisms)
        self._morphism_index = {a: i for i, a in enumerate(self.morphisms)}
        if len(self._morphism_index) != len(self.morphisms):
            raise InvalidInputError("Morphism labels must be distinct")
        n = len(self.objects)
        if any(not (0 <= x < n) for x in self.src + self.tgt):
            raise InvalidInputError("Morphism endpoint out of range")

        homs = collections.defaultdict(list)
        for a in range(len(self.morphisms)):
            homs[(self.src[a], self.tgt[a])].append(a)
        self._homs = homs
        self._out = [[] for _ in self.objects]
        for a in range(len(self.morphisms)):
            self._out[self.src[a]].append(a)

        self.comp = self._build_composition(compose)
        self.identities = self._find_identities()
        for x, e in enumerate(self.identities):
            hom = homs[(x, x)]
            hom.remove(e)
            hom.insert(0, e)
        self.inverse = self._find_inverses()
        self._check_associative()
        self._hash = hash((self.objects, self.morphisms, self.src, self.tgt))
        _trace(
            f"Built groupoid with {len(self.objects)} objects and "
            f"{len(self.morphisms)} morphisms"
        )

    def _build_composition(self, compose):
        comp = {}
        for f in range(len(self.morphisms)):
            for g in self._out[self.tgt[f]]:
                label = compose(self.morphisms[g], self.morphisms[f])
                try:
                    h = self._morphism_index[label]
                except KeyError:
                    raise InvalidInputError(
                        f"Composite {label!r} is not a morphism"
                    )
                if self.src[h] != self.src[f] or self.tgt[h] != self.tgt[g]:
                    raise InvalidInputError(
                        f"Composite {label!r} has the wrong endpoints"
                    )
                comp[(g, f)] = h
        return comp

    def _find_identities(self):
        identities = []
        for x in range(len(self.objects)):
            candidates = [
                e for e in self._homs[(x, x)] if self.comp[(e, e)] == e
            ]
            if len(candidates) != 1:
                raise InvalidInputError(f"Object {x} has no unique identity")
            e = candidates[0]
            for f in self._out[x]:
                g_after = self.comp[(f, e)]
                if g_after != f:
                    raise InvalidInputError(f"Identity of {x} is not unital")
            for f in range(len(self.morphisms)):
                if self.tgt[f] == x and self.comp[(e, f)] != f:
                    raise InvalidInputError(f"Identity of {x} is not unital")
            identities.append(e)
        return tuple(identities)

    def _find_inverses(self):
        inverse = []
        for f in range(len(self.morphisms)):
            x, y = self.src[f], self.tgt[f]
            for g in self._homs[(y, x)]:
                if (
                    self.comp[(g, f)] == self.identities[x]
                    and self.comp[(f, g)] == self.identities[y]
                ):
                    inverse.append(g)
                    break
            else:
                raise InvalidInputError(f"Morphism {f} is not invertible")
        return tuple(inverse)

    def _check_associative(self):
        n = len(self.objects)
        sizes = [[len(self._homs[(x, y)]) for y in range(n)] for x in range(n)]
        incoming = [sum(sizes[x][y] for x in range(n)) for y in range(n)]
        outgoing = [sum(sizes[y][z] for z in range(n)) for y in range(n)]
        triples = sum(
            incoming[y] * sizes[y][z] * outgoing[z]
            for y in range(n)
            for z in range(n)
        )
        if triples > ASSOCIATIVITY_CHECK_BOUND:
            _trace(
                f"Checking associativity on {ASSOCIATIVITY_SAMPLES} of "
                f"{triples} composable triples"
            )
            candidates = self._sampled_triples(ASSOCIATIVITY_SAMPLES)
        else:
            candidates = self._composable_triples()
        comp = self.comp
        for f, g, h in candidates:
            if comp[(h, comp[(g, f)])] != comp[(comp[(h, g)], f)]:
                raise InvalidInputError(
                    f"Composition is not associative at ({h}, {g}, {f})"
                )

    def _composable_triples(self):
        for f in range(len(self.morphisms)):
            for g in self._out[self.tgt[f]]:
                for h in self._out[self.tgt[g]]:
                    yield f, g, h

    def _sampled_triples(self, count):
        rng = random.Random(len(self.morphisms))
        for _ in range(count):
            f = rng.randrange(len(self.morphisms))
            g = rng.choice(self._out[self.tgt[f]])
            h = rng.choice(self._out[self.tgt[g]])
            yield f, g, h

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, FiniteGroupoid)
            and self._hash == other._hash
            and self.objects == other.objects
            and self.morphisms == other.morphisms
            and self.src == other.src
            and self.tgt == other.tgt
            and self.comp == other.comp
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        label = self.name or "FiniteGroupoid"
        return (
            f"<{label} with {len(self.objects)} objects and "
            f"{len(self.morphisms)} morphisms>"
        )

    def object_index(self, label):
        return self._object_index[label]

    def morphism_index(self, label):
        return self._morphism_index[label]

    def hom(self, x, y):
        """Morphisms ``x -> y`` by index; the identity comes first."""
        return tuple(self._homs.get((x, y), ()))

    def out(self, x):
        return tuple(self._out[x])

    def compose(self, *morphisms):
        """Compose right to left: ``compose(h, g, f)`` is ``h g f``."""
        result = morphisms[-1]
        for g in reversed(morphisms[:-1]):
            result = self.comp[(g, result)]
        return result

    def morphism_order(self, a):
        """Order of an automorphism."""
        order, current = 1, a
        identity = self.identities[self.src[a]]
        while current != identity:
            current = self.comp[(a, current)]
            order += 1
        return order

    @functools.cached_property
    def skeleton(self):
        return Skeleton(self)


class Skeleton:
    """Connected components of a groupoid with chosen representatives.

    ``components[c]`` is ``(rep, aut)`` where ``aut`` is the automorphism
    group of ``rep`` with element ``i`` named by morphism
    ``aut_morphisms[c][i]``. Representatives are the lowest object index of
    each component; ``iso_to_rep[x]`` is the first morphism ``x -> rep``.
    """

    def __init__(self, groupoid):
        self.groupoid = groupoid
        n = len(groupoid.objects)
        component_of = [None] * n
        components = []
        aut_morphisms = []
        for x in range(n):
            if component_of[x] is not None:
                continue
            c = len(components)
            component_of[x] = c
            queue = collections.deque([x])
            while queue:
                y = queue.popleft()
                for a in groupoid.out(y):
                    z = groupoid.tgt[a]
                    if component_of[z] is None:
                        component_of[z] = c
                        queue.append(z)
            autos = groupoid.hom(x, x)
            position = {a: i for i, a in enumerate(autos)}
            mul = [
                [position[groupoid.comp[(a, b)]] for b in autos]
                for a in autos
            ]
            components.append((x, groups.FiniteGroup(mul)))
            aut_morphisms.append(autos)

        self.components = tuple(components)
        self.component_of = tuple(component_of)
        self.aut_morphisms = tuple(aut_morphisms)
        self.iso_to_rep = tuple(
            groupoid.hom(x, components[component_of[x]][0])[0] for x in range(n)
        )

    def __len__(self):
        return len(self.components)

    @property
    def representatives(self):
        return tuple(rep for rep, _ in self.components)

    def aut_order(self, c):
        return self.components[c][1].order

    def members(self, c):
        return tuple(
            x for x, comp in enumerate(self.component_of) if comp == c
        )

    def generating_morphisms(self):
        """Morphisms generating the groupoid under composition.

        The spanning isomorphisms to representatives, their inverses and
        generators of every automorphism group. Two functors (or natural
        transformations) agreeing on these agree everywhere.
        """
        g = self.groupoid
        generators = set()
        for x, t in enumerate(self.iso_to_rep):
            if t != g.identities[x]:
                generators.update((t, g.inverse[t]))
        for (rep, aut), autos in zip(self.components, self.aut_morphisms):
            generators.update(autos[i] for i in aut.generators())
        return tuple(sorted(generators))


class GroupoidMap:
    """A functor between finite groupoids, stored as index tables."""

    def __init__(self, source, target, obj_map, mor_map, name=None):
        self.source = source
        self.target = target
        self.obj_map = tuple(obj_map)
        self.mor_map = tuple(mor_map)
        self.name = name
        self._check()
        self._hash = hash((source, target, self.obj_map, self.mor_map))

    @classmethod
    def from_labels(cls, source, target, obj_fn, mor_fn, name=None):
        obj_map = [target.object_index(obj_fn(x)) for x in source.objects]
        mor_map = [target.morphism_index(mor_fn(a)) for a in source.morphisms]
        return cls(source, target, obj_map, mor_map, name=name)

    def _check(self):
        s, t = self.source, self.target
        if len(self.obj_map) != len(s.objects):
            raise InvalidInputError("Object table has the wrong length")
        if len(self.mor_map) != len(s.morphisms):
            raise InvalidInputError("Morphism table has the wrong length")
        if any(not 0 <= y < len(t.objects) for y in self.obj_map):
            raise InvalidInputError("Object image out of range")
        if any(not 0 <= b < len(t.morphisms) for b in self.mor_map):
            raise InvalidInputError("Morphism image out of range")
        for a, b in enumerate(self.mor_map):
            if (t.src[b], t.tgt[b]) != (
                self.obj_map[s.src[a]],
                self.obj_map[s.tgt[a]],
            ):
                raise InvalidInputError(
                    f"Morphism {a} is sent to {b}, wrong ends"
                )
        for x, e in enumerate(s.identities):
            if self.mor_map[e] != t.identities[self.obj_map[x]]:
                raise InvalidInputError(f"Identity of object {x} not preserved")
        for g in s.skeleton.generating_morphisms():
            for f in range(len(s.morphisms)):
                if s.tgt[f] != s.src[g]:
                    continue
                gf = self.mor_map[s.comp[(g, f)]]
                if gf != t.comp[(self.mor_map[g], self.mor_map[f])]:
                    raise InvalidInputError(
                        f"Composition of {g} and {f} is not preserved"
                    )

    def __eq__(self, other):
        return (
            isinstance(other, GroupoidMap)
            and self.obj_map == other.obj_map
            and self.mor_map == other.mor_map
            and self.source == other.source
            and self.target == other.target
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"<GroupoidMap {self.source!r} -> {self.target!r}>"

    def is_fully_faithful(self):
        s, t = self.source, self.target
        for x in range(len(s.objects)):
            for y in range(len(s.objects)):
                images = {self.mor_map[a] for a in s.hom(x, y)}
                target_hom = t.hom(self.obj_map[x], self.obj_map[y])
                if len(images) != len(s.hom(x, y)) or len(images) != len(
                    target_hom
                ):
                    return False
        return True

    def is_essentially_surjective(self):
        skeleton = self.target.skeleton
        hit = {skeleton.component_of[y] for y in self.obj_map}
        return len(hit) == len(skeleton)

    def is_equivalence(self):
        return self.is_essentially_surjective() and self.is_fully_faithful()


class HomotopyPullback:
    """The iso-comma groupoid of ``f: X -> Z`` and ``g: Y -> Z``.

    Objects are labelled ``(x, y, phi)`` with ``phi: f(x) -> g(y)`` in ``Z``
    and morphisms ``(alpha, beta, phi)`` naming the pair ``(alpha, beta)``
    out of ``(src alpha, src beta, phi)``. ``connecting[w]`` is the ``phi``
    component of the natural isomorphism ``f left => g right``.
    """

    def __init__(self, f, g):
        if f.target != g.target:
            raise InvalidInputError("Maps of a pullback need a common target")
        self.f, self.g = f, g
        x_grpd, y_grpd, z_grpd = f.source, g.source, f.target

        objects = [
            (x, y, phi)
            for x in range(len(x_grpd.objects))
            for y in range(len(y_grpd.objects))
            for phi in z_grpd.hom(f.obj_map[x], g.obj_map[y])
        ]
        index = {label: i for i, label in enumerate(objects)}
        morphisms = []
        for w, (x, y, phi) in enumerate(objects):
            for alpha in x_grpd.out(x):
                for beta in y_grpd.out(y):
                    target_phi = z_grpd.compose(
                        g.mor_map[beta], phi, z_grpd.inverse[f.mor_map[alpha]]
                    )
                    target = (x_grpd.tgt[alpha], y_grpd.tgt[beta], target_phi)
                    morphisms.append(((alpha, beta, phi), w, index[target]))

        def compose(second, first):
            return (
                x_grpd.comp[(second[0], first[0])],
                y_grpd.comp[(second[1], first[1])],
                first[2],
            )

        self.groupoid = FiniteGroupoid(objects, morphisms, compose)
        self.left = GroupoidMap.from_labels(
            self.groupoid,
            x_grpd,
            lambda w: x_grpd.objects[w[0]],
            lambda a: x_grpd.morphisms[a[0]],
        )
        self.right = GroupoidMap.from_labels(
            self.groupoid,
            y_grpd,
            lambda w: y_grpd.objects[w[1]],
            lambda a: y_grpd.morphisms[a[1]],
        )
        self.connecting = tuple(phi for _, _, phi in objects)


def delooping(group, name=None):
    return FiniteGroupoid(
        ["*"],
        [(g, 0, 0) for g in group.elements],
        lambda g, f: group.mul[g][f],
        name=name or (f"B{group.name}" if group.name else None),
    )


def discrete(n, labels=None):
    labels = list(labels) if labels is not None else list(range(n))
    return FiniteGroupoid(
        labels,
        [(("id", x), i, i) for i, x in enumerate(labels)],
        lambda g, f: f,
        name=f"discrete({n})",
    )


def point():
    return discrete(1)


def action_groupoid(group, points, act, name=None):
    """The action groupoid ``S // G`` of ``act(g, s) = g . s``.

    Morphisms are labelled ``(g, s)`` and go ``s -> g . s``.
    """
    points = list(points)
    for s in points:
        if act(group.identity, s) != s:
            raise InvalidInputError(f"Identity does not fix {s!r}")
    for g in group.elements:
        for h in group.elements:
            gh = group.mul[g][h]
            for s in points:
                if act(g, act(h, s)) != act(gh, s):
                    raise InvalidInputError(
                        f"Action is not compatible at ({g}, {h}, {s!r})"
                    )
    index = {s: i for i, s in enumerate(points)}
    morphisms = [
        ((g, s), index[s], index[act(g, s)])
        for s in points
        for g in group.elements
    ]
    return FiniteGroupoid(
        points,
        morphisms,
        lambda second, first: (group.mul[second[0]][first[0]], first[1]),
        name=name,
    )


def conjugation_groupoid(group):
    return action_groupoid(
        group,
        list(group.elements),
        group.conjugate,
        name=f"{group.name}//{group.name}" if group.name else None,
    )


def translation_groupoid(group):
    return action_groupoid(
        group, list(group.elements), lambda g, s: group.mul[g][s]
    )


def disjoint_union(groupoids):
    groupoids = list(groupoids)
    objects, morphisms, offsets = [], [], []
    for i, grpd in enumerate(groupoids):
        offsets.append(len(objects))
        objects.extend((i, x) for x in grpd.objects)
    for i, grpd in enumerate(groupoids):
        for a, label in enumerate(grpd.morphisms):
            morphisms.append(
                ((i, label), offsets[i] + grpd.src[a], offsets[i] + grpd.tgt[a])
            )

    def compose(second, first):
        grpd = groupoids[first[0]]
        a = grpd.comp[
            (grpd.morphism_index(second[1]), grpd.morphism_index(first[1]))
        ]
        return (first[0], grpd.morphisms[a])

    return FiniteGroupoid(objects, morphisms, compose)


def summand_inclusion(union, groupoids, i):
    return GroupoidMap.from_labels(
        groupoids[i], union, lambda x: (i, x), lambda a: (i, a)
    )


def product(x_grpd, y_grpd):
    objects = [
        (x, y)
        for x in range(len(x_grpd.objects))
        for y in range(len(y_grpd.objects))
    ]
    index = {label: i for i, label in enumerate(objects)}
    morphisms = [
        (
            (a, b),
            index[(x_grpd.src[a], y_grpd.src[b])],
            index[(x_grpd.tgt[a], y_grpd.tgt[b])],
        )
        for a in range(len(x_grpd.morphisms))
        for b in range(len(y_grpd.morphisms))
    ]
    return FiniteGroupoid(
        objects,
        morphisms,
        lambda second, first: (
            x_grpd.comp[(second[0], first[0])],
            y_grpd.comp[(second[1], first[1])],
        ),
    )


def product_projections(x_grpd, y_grpd, prod=None):
    prod = prod or product(x_grpd, y_grpd)
    first = GroupoidMap(
        prod,
        x_grpd,
        [x for x, _ in prod.objects],
        [a for a, _ in prod.morphisms],
    )
    second = GroupoidMap(
        prod,
        y_grpd,
        [y for _, y in prod.objects],
        [b for _, b in prod.morphisms],
    )
    return first, second


def diagonal(grpd):
    prod = product(grpd, grpd)
    return GroupoidMap.from_labels(
        grpd,
        prod,
        lambda x: (grpd.object_index(x), grpd.object_index(x)),
        lambda a: (grpd.morphism_index(a), grpd.morphism_index(a)),
    )


def full_subgroupoid(grpd, objects):
    """The full subgroupoid on the given object indices, with its inclusion."""
    objects = list(objects)
    index = {x: i for i, x in enumerate(objects)}
    morphisms = [
        (a, index[x], index[grpd.tgt[a]])
        for x in objects
        for a in grpd.out(x)
        if grpd.tgt[a] in index
    ]
    sub = FiniteGroupoid(
        objects, morphisms, lambda second, first: grpd.comp[(second, first)]
    )
    inclusion = GroupoidMap(sub, grpd, objects, list(sub.morphisms))
    return sub, inclusion


def identity_map(grpd):
    return GroupoidMap(
        grpd, grpd, range(len(grpd.objects)), range(len(grpd.morphisms))
    )


def compose_maps(second, first):
    """``second`` after ``first``."""
    if first.target != second.source:
        raise InvalidInputError("Maps are not composable")
    return GroupoidMap(
        first.source,
        second.target,
        [second.obj_map[y] for y in first.obj_map],
        [second.mor_map[b] for b in first.mor_map],
    )


def terminal_map(grpd):
    pt = point()
    return GroupoidMap(
        grpd, pt, [0] * len(grpd.objects), [0] * len(grpd.morphisms)
    )


def point_inclusion(grpd, y):
    if not 0 <= y < len(grpd.objects):
        raise IndexError(f"Object {y} out of range")
    return GroupoidMap(point(), grpd, [y], [grpd.identities[y]])


def group_map(source_group, target_group, phi):
    """The functor ``BH -> BG`` of a homomorphism given as an image tuple."""
    if not groups.is_homomorphism(source_group, target_group, phi):
        raise InvalidInputError("Element map is not a homomorphism")
    return GroupoidMap(
        delooping(source_group), delooping(target_group), [0], list(phi)
    )


def skeletize(grpd):
    return grpd.skeleton


def cardinality(grpd):
    """Baez-Dolan cardinality: the sum of ``1/|Aut|`` over components."""
    skeleton = skeletize(grpd)
    return sum(
        (
            sympy.Rational(1, skeleton.aut_order(c))
            for c in range(len(skeleton))
        ),
        sympy.Rational(0),
    )


def homotopy_pullback(f, g):
    return HomotopyPullback(f, g)


@utils.memoized
def homotopy_fiber(f, y):
    """The homotopy fiber of ``f`` over the object ``y`` of its target.

    Objects are labelled ``(x, phi)`` with ``phi: f(x) -> y``; this is the
    homotopy pullback against the inclusion of ``y``. Objects whose ``phi``
    is an identity are listed first so they become representatives.
    """
    target = f.target
    if not 0 <= y < len(target.objects):
        raise IndexError(f"Object {y} out of range")
    source = f.source
    candidates = [
        (x, phi)
        for x in range(len(source.objects))
        for phi in target.hom(f.obj_map[x], y)
    ]
    objects = sorted(
        candidates, key=lambda o: (o[1] != target.identities[y], o)
    )
    index = {label: i for i, label in enumerate(objects)}
    morphisms = []
    for w, (x, phi) in enumerate(objects):
        for alpha in source.out(x):
            moved = target.comp[(phi, target.inverse[f.mor_map[alpha]])]
            end = index[(source.tgt[alpha], moved)]
            morphisms.append(((alpha, phi), w, end))
    return FiniteGroupoid(
        objects,
        morphisms,
        lambda second, first: (source.comp[(second[0], first[0])], first[1]),
    )


@utils.memoized
def fiber_projection(f, y):
    fiber = homotopy_fiber(f, y)
    return GroupoidMap(
        fiber,
        f.source,
        [x for x, _ in fiber.objects],
        [alpha for alpha, _ in fiber.morphisms],
    )


def equivalence_check(x_grpd, y_grpd, bound=groups.DEFAULT_ISOMORPHISM_BOUND):
    """Decide ``X ~ Y`` by matching components with isomorphic groups."""
    x_auts = [aut for _, aut in x_grpd.skeleton.components]
    y_auts = [aut for _, aut in y_grpd.skeleton.components]
    if len(x_auts) != len(y_auts):
        return False
    unmatched = list(y_auts)
    for aut in x_auts:
        for i, candidate in enumerate(unmatched):
            if groups.is_isomorphic(aut, candidate, bound=bound):
                del unmatched[i]
                break
        else:
            return False
    return True
