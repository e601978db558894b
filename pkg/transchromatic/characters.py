import dataclasses
import itertools
import logging

import sympy

from transchromatic import groupoids, groups, linalg, linsys, loops, spans
from transchromatic.errors import (
    InternalInconsistency,
    InvalidInputError,
    ShapeError,
    TheoremViolation,
)

logger = logging.getLogger(__name__)


class RationalRep:
    """A representation of a finite group by rational matrices.

    ``images[g]`` is the ``dim x dim`` matrix of element ``g``.
    """

    def __init__(self, group, images, dim=None):
        self.group = group
        self.images = tuple(images)
        if dim is None:
            dim = self.images[0].rows if self.images else 0
        self.dim = dim
        self._check()

    def _check(self):
        group = self.group
        if len(self.images) != group.order:
            raise ShapeError(f"Expected {group.order} matrices")
        if any(m.shape != (self.dim, self.dim) for m in self.images):
            raise ShapeError(f"Every matrix must be {self.dim}x{self.dim}")
        if not linalg.equal(
            self.images[group.identity], linalg.identity(self.dim)
        ):
            raise InvalidInputError("Identity must act trivially")
        for s in group.generators():
            for h in group.elements:
                product = linalg.multiply(self.images[s], self.images[h])
                if not linalg.equal(self.images[group.mul[s][h]], product):
                    raise InvalidInputError(
                        f"Not a homomorphism at ({s}, {h})"
                    )

    def __repr__(self):
        return f"<RationalRep of dimension {self.dim} of {self.group!r}>"

    def to_local_system(self):
        grpd = groupoids.delooping(self.group)
        return linsys.LocalSystem(grpd, [self.dim], self.images)


@dataclasses.dataclass
class SquareReport:
    """Both sides of a character square, by component of the loop groupoid."""

    classes: list
    induced: list
    integrated: list

    @property
    def holds(self):
        return self.induced == self.integrated

    def __bool__(self):
        return self.holds


def trivial_rep(group, dim=1):
    return RationalRep(group, [linalg.identity(dim)] * group.order, dim=dim)


def permutation_rep(group, points, act):
    """Permutation matrices of ``act(g, point)`` on ``points``."""
    points = list(points)
    index = {x: i for i, x in enumerate(points)}
    images = []
    for g in group.elements:
        entries = [[0] * len(points) for _ in points]
        for i, x in enumerate(points):
            image = act(g, x)
            if image not in index:
                raise InvalidInputError(
                    f"Element {g} sends point {x!r} outside the point set"
                )
            entries[index[image]][i] = 1
        images.append(linalg.matrix(len(points), len(points), entries))
    return RationalRep(group, images, dim=len(points))


def regular_rep(group):
    return permutation_rep(group, group.elements, lambda g, x: group.mul[g][x])


def coset_rep(group, subgroup):
    """The permutation representation on the left cosets of ``subgroup``."""
    cosets = _left_cosets(group, subgroup)
    owner = {g: i for i, (_, coset) in enumerate(cosets) for g in coset}
    return permutation_rep(
        group,
        range(len(cosets)),
        lambda g, i: owner[group.mul[g][cosets[i][0]]],
    )


def sign_rep(group):
    return RationalRep(
        group, [linalg.scalar(group.sign(g)) for g in group.elements], dim=1
    )


def direct_sum(first, second):
    return RationalRep(
        first.group,
        [
            linalg.block_diagonal([a, b])
            for a, b in zip(first.images, second.images)
        ],
        dim=first.dim + second.dim,
    )


def tensor_product(first, second):
    return RationalRep(
        first.group,
        [linalg.kronecker(a, b) for a, b in zip(first.images, second.images)],
        dim=first.dim * second.dim,
    )


def restrict_rep(rep, subgroup, embedding):
    return RationalRep(
        subgroup, [rep.images[g] for g in embedding], dim=rep.dim
    )


def group_of(grpd):
    """The group whose delooping is the one-object groupoid ``grpd``."""
    if len(grpd.objects) != 1:
        raise InvalidInputError("Expected a groupoid with one object")
    morphisms = range(len(grpd.morphisms))
    return groups.FiniteGroup(
        [[grpd.comp[(a, b)] for b in morphisms] for a in morphisms]
    )


def inclusion_map(group, subgroup_elements):
    """``BH -> BG`` for the subgroup with the given elements."""
    subgroup, embedding = group.subgroup(subgroup_elements)
    return groupoids.group_map(subgroup, group, embedding), subgroup


def _left_cosets(group, subgroup):
    """Left cosets ``r H`` with ``r`` the lowest element of each coset."""
    covered, cosets = set(), []
    for g in group.elements:
        if g in covered:
            continue
        coset = tuple(sorted(group.mul[g][h] for h in subgroup))
        covered.update(coset)
        cosets.append((g, coset))
    return cosets


def _check_injective(inclusion):
    if len(set(inclusion.mor_map)) != len(inclusion.mor_map):
        raise InvalidInputError("Map of groups is not injective")


def character(rep):
    return _trace_character(rep, None)


def p_character(rep, p):
    """The character restricted to loops of p-power order."""
    return _trace_character(rep, p)


def _trace_character(rep, p):
    grpd = groupoids.delooping(rep.group)
    if p is None:
        loop = loops.free_loop(grpd).underlying
    else:
        loop = loops.p_free_loop(grpd, p).underlying
    skeleton = loop.skeleton
    values = [None] * len(skeleton)
    for w, (_, g) in enumerate(loop.objects):
        value = linalg.trace(rep.images[g])
        c = skeleton.component_of[w]
        if values[c] is None:
            values[c] = value
        elif values[c] != value:
            raise InternalInconsistency(
                f"Trace is not constant on the class of {g}"
            )
    return spans.ClassFunction(loop, values)


def system_character(system):
    """Trace of each loop acting on its fiber, a class function on ``L X``."""
    loop = loops.free_loop(system.base).underlying
    values = [
        linalg.trace(system.mats[g])
        for _, g in (loop.objects[rep] for rep in loop.skeleton.representatives)
    ]
    return spans.ClassFunction(loop, values)


def verify_pushforward_character(f, system):
    """Character of ``f_! F`` against integration along ``L f``."""
    pushed = linsys.pushforward_left(f, system).system
    lhs = system_character(pushed)
    rhs = spans.integrate(loops.free_loop_map(f), system_character(system))
    return SquareReport(
        classes=list(lhs.base.skeleton.representatives),
        induced=list(lhs.values),
        integrated=list(rhs.values),
    )


def induce(inclusion, rep):
    """Induce ``rep`` along an injective ``BH -> BG``.

    The induced space is a sum of copies of ``rep`` indexed by left cosets,
    with the lowest element of each coset as its representative.
    """
    _check_injective(inclusion)
    if groupoids.delooping(rep.group) != inclusion.source:
        raise InvalidInputError("Representation is not of the source group")
    group = group_of(inclusion.target)
    embedding = inclusion.mor_map
    position = {g: h for h, g in enumerate(embedding)}
    cosets = _left_cosets(group, embedding)
    owner = {g: i for i, (_, coset) in enumerate(cosets) for g in coset}
    sizes = [rep.dim] * len(cosets)

    images = []
    for s in group.elements:
        blocks = {}
        for i, (r, _) in enumerate(cosets):
            moved = group.mul[s][r]
            j = owner[moved]
            h = group.mul[group.inv[cosets[j][0]]][moved]
            blocks[(j, i)] = rep.images[position[h]]
        images.append(linalg.block(sizes, sizes, blocks))
    logger.debug(
        f"Induced a {rep.dim}-dimensional representation over "
        f"{len(cosets)} cosets"
    )
    return RationalRep(group, images, dim=rep.dim * len(cosets))


def induced_character_via_integration(inclusion, phi):
    return spans.integrate(loops.free_loop_map(inclusion), phi)


def _square(lhs, rhs):
    return SquareReport(
        classes=[
            lhs.base.objects[rep][1]
            for rep in lhs.base.skeleton.representatives
        ],
        induced=list(lhs.values),
        integrated=list(rhs.values),
    )


def verify_induction_square(inclusion, rep):
    """Compare the character of the induced representation with integration."""
    lhs = character(induce(inclusion, rep))
    rhs = induced_character_via_integration(inclusion, character(rep))
    return _square(lhs, rhs)


def verify_restriction_square(f, rep):
    """Compare the character of ``rep`` restricted along ``f: BH -> BG`` with
    restriction of class functions along ``L f``.
    """
    if groupoids.delooping(rep.group) != f.target:
        raise InvalidInputError("Representation is not of the target group")
    restricted = restrict_rep(rep, group_of(f.source), f.mor_map)
    lhs = character(restricted)
    rhs = spans.restrict(loops.free_loop_map(f), character(rep))
    return _square(lhs, rhs)


def p_typical_character_square(inclusion, rep, p):
    params = loops.PAdicLoopParams(p, 1)
    lhs = p_character(induce(inclusion, rep), p)
    rhs = spans.integrate(
        loops.loop_map(inclusion, params), p_character(rep, p)
    )
    return _square(lhs, rhs)


def chromatic_cardinality(grpd, p, n):
    """``|L_p^n X|``; from height one on it must be p-locally integral."""
    params = loops.PAdicLoopParams(p, n)
    value = groupoids.cardinality(loops.iterated_p_free_loop(grpd, params))
    if n > 0 and value.q % p == 0:
        raise TheoremViolation(
            f"Cardinality {linalg.format_rational(value)} is not {p}-local"
        )
    return value


def transchromatic_cardinality(grpd, p, n, t):
    """Height ``t`` cardinality of ``L_p^(n-t) X``, equal to height ``n``."""
    if not 0 <= t <= n:
        raise InvalidInputError(f"Height {t} must lie between 0 and {n}")
    looped = loops.iterated_p_free_loop(grpd, loops.PAdicLoopParams(p, n - t))
    return chromatic_cardinality(looped, p, t)


def chromatic_cardinality_oracle(group, p, n):
    """Commuting ``n``-tuples of p-power elements, divided by ``|G|``."""
    loops.PAdicLoopParams(p, n)
    p_elements = [g for g in group.elements if group.is_p_element(g, p)]
    count = sum(
        1
        for t in itertools.product(p_elements, repeat=n)
        if all(group.mul[a][b] == group.mul[b][a] for a in t for b in t)
    )
    return sympy.Rational(count, group.order)
