"""Free loop groupoids and their p-adic parts.

For a groupoid ``X`` the free loop groupoid has objects ``(x, g)`` with ``g``
an automorphism of ``x`` and morphisms ``(alpha, g)`` going from ``(x, g)``
to ``(x', alpha g alpha^-1)``. The p-adic part keeps the loops of p-power
order; iterating it ``h`` times models maps out of ``B(Z_p^h)``.
"""

import dataclasses
import itertools
import logging

from transchromatic import groupoids, groups, utils
from transchromatic.errors import InternalInconsistency, InvalidInputError

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class PAdicLoopParams:
    p: int
    h: int = 1

    def __post_init__(self):
        if not groups.is_prime(self.p):
            raise InvalidInputError(f"{self.p} is not a prime")
        if not isinstance(self.h, int) or self.h < 0:
            raise InvalidInputError(f"Loop count {self.h} must be at least 0")


class LoopGroupoid:
    """A loop groupoid together with the projection to its base."""

    def __init__(self, base, p=None):
        self.base = base
        self.p = p
        objects = [
            (x, g)
            for x in range(len(base.objects))
            for g in base.hom(x, x)
            if p is None or groups.is_power_of(base.morphism_order(g), p)
        ]
        index = {label: i for i, label in enumerate(objects)}
        morphisms = []
        for w, (x, g) in enumerate(objects):
            for alpha in base.out(x):
                moved = base.compose(alpha, g, base.inverse[alpha])
                end = index[(base.tgt[alpha], moved)]
                morphisms.append(((alpha, g), w, end))

        self.underlying = groupoids.FiniteGroupoid(
            objects,
            morphisms,
            lambda second, first: (base.comp[(second[0], first[0])], first[1]),
            name=f"L{base.name}" if base.name else None,
        )
        self.base_projection = groupoids.GroupoidMap(
            self.underlying,
            base,
            [x for x, _ in objects],
            [alpha for alpha, _ in self.underlying.morphisms],
        )
        logger.debug(
            f"Loop groupoid with p={p} has {len(objects)} objects "
            f"over {len(base.objects)}"
        )

    def __repr__(self):
        return f"<LoopGroupoid p={self.p} of {self.base!r}>"


@utils.memoized
def _loop_groupoid(base, p):
    return LoopGroupoid(base, p)


@utils.memoized
def _loop_functor(f, p):
    source = _loop_groupoid(f.source, p).underlying
    target = _loop_groupoid(f.target, p).underlying
    return groupoids.GroupoidMap.from_labels(
        source,
        target,
        lambda o: (f.obj_map[o[0]], f.mor_map[o[1]]),
        lambda a: (f.mor_map[a[0]], f.mor_map[a[1]]),
    )


def free_loop(grpd):
    return _loop_groupoid(grpd, None)


def p_free_loop(grpd, p):
    if not groups.is_prime(p):
        raise InvalidInputError(f"{p} is not a prime")
    return _loop_groupoid(grpd, p)


def iterated_p_free_loop(grpd, params):
    for _ in range(params.h):
        grpd = _loop_groupoid(grpd, params.p).underlying
    return grpd


def commuting_tuples_direct(group, params):
    """The groupoid of commuting ``h``-tuples of p-power elements.

    Tuples are ordered lexicographically and ``G`` acts by simultaneous
    conjugation; this is built in one step, without iterating loops.
    """
    p_elements = [
        g for g in group.elements if group.is_p_element(g, params.p)
    ]
    tuples = [
        t
        for t in itertools.product(p_elements, repeat=params.h)
        if all(group.commute(a, b) for a, b in itertools.combinations(t, 2))
    ]
    return groupoids.action_groupoid(
        group,
        tuples,
        lambda g, t: tuple(group.conjugate(g, x) for x in t),
    )


def free_loop_map(f):
    return _loop_functor(f, None)


def loop_map(f, params):
    """The functor induced by ``f`` on ``h``-fold p-adic loop groupoids."""
    for _ in range(params.h):
        f = _loop_functor(f, params.p)
    return f


def _comparison_once(square, p):
    loops_of_apex = _loop_groupoid(square.groupoid, p).underlying
    f_loop = _loop_functor(square.f, p)
    g_loop = _loop_functor(square.g, p)
    target = groupoids.HomotopyPullback(f_loop, g_loop)
    x_loops, y_loops = f_loop.source, g_loop.source
    z_loops = f_loop.target
    apex = square.groupoid
    f = square.f

    def connecting(phi, alpha):
        return z_loops.morphism_index((phi, f.mor_map[alpha]))

    def on_objects(label):
        w, gamma = label
        alpha, beta, phi = apex.morphisms[gamma]
        x, y, _ = apex.objects[w]
        return (
            x_loops.object_index((x, alpha)),
            y_loops.object_index((y, beta)),
            connecting(phi, alpha),
        )

    def on_morphisms(label):
        delta, gamma = label
        a, b, _ = apex.morphisms[delta]
        alpha, beta, phi = apex.morphisms[gamma]
        return (
            x_loops.morphism_index((a, alpha)),
            y_loops.morphism_index((b, beta)),
            connecting(phi, alpha),
        )

    comparison = groupoids.GroupoidMap.from_labels(
        loops_of_apex, target.groupoid, on_objects, on_morphisms
    )
    return comparison, target


def pullback_comparison(square, params):
    """Compare the loops of a homotopy pullback with the pullback of loops.

    Returns ``(comparison, pullback)`` where ``comparison`` goes from
    ``L^h P`` to the homotopy pullback of the looped legs. The comparison
    is checked to be an equivalence of groupoids.
    """
    comparison, current = None, square
    for _ in range(params.h):
        step, target = _comparison_once(current, params.p)
        if comparison is None:
            comparison = step
        else:
            comparison = groupoids.compose_maps(
                step, _loop_functor(comparison, params.p)
            )
        current = target
    if comparison is None:
        comparison = groupoids.identity_map(square.groupoid)
    if not comparison.is_equivalence():
        raise InternalInconsistency(
            "Loops do not preserve this homotopy pullback"
        )
    return comparison, current
