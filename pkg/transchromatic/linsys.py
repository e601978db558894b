"""Rational local systems on finite groupoids.

A local system assigns a vector space ``Q^dims[x]`` to every object and an
invertible matrix to every morphism. Pushforwards along a map ``f: X -> Y``
are computed fiberwise: at an object ``y`` the homotopy fiber of ``f`` is
presented through its skeleton, the limit as the invariants of each
representative and the colimit as its coinvariants. Both sit inside the
product ``Pi_y`` of the values at all fiber objects through the matrices of a
:class:`FiberPresentation`.
"""

import logging

import sympy

from transchromatic import groupoids, linalg, spans, utils
from transchromatic.errors import (
    CompositionError,
    InternalInconsistency,
    InvalidInputError,
    ShapeError,
)

logger = logging.getLogger(__name__)


def _trace(*args, **kwargs):
    logger.log(utils.TRACE, *args, **kwargs)


class LocalSystem:
    """A functor from a finite groupoid to rational vector spaces."""

    def __init__(self, base, dims, mats, check=True):
        self.base = base
        self.dims = tuple(dims)
        self.mats = tuple(mats)
        if check:
            self._check()
        self._hash = hash((base, self.dims, self.mats))

    def _check(self):
        base = self.base
        if len(self.dims) != len(base.objects):
            raise ShapeError("Dimension list has the wrong length")
        if len(self.mats) != len(base.morphisms):
            raise ShapeError("Matrix list has the wrong length")
        if any(d < 0 for d in self.dims):
            raise ShapeError("Dimensions must be nonnegative")
        for a, m in enumerate(self.mats):
            expected = (self.dims[base.tgt[a]], self.dims[base.src[a]])
            if m.shape != expected:
                raise ShapeError(
                    f"Matrix of morphism {a} has shape {m.shape}, "
                    f"expected {expected}"
                )
        for x, e in enumerate(base.identities):
            if not linalg.equal(self.mats[e], linalg.identity(self.dims[x])):
                raise InvalidInputError(f"Identity of object {x} not preserved")
        for g in base.skeleton.generating_morphisms():
            for f in range(len(base.morphisms)):
                if base.tgt[f] != base.src[g]:
                    continue
                composite = linalg.multiply(self.mats[g], self.mats[f])
                if not linalg.equal(self.mats[base.comp[(g, f)]], composite):
                    raise InvalidInputError(
                        f"Composition of {g} and {f} is not preserved"
                    )

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, LocalSystem)
            and self._hash == other._hash
            and self.base == other.base
            and self.dims == other.dims
            and all(
                linalg.equal(a, b) for a, b in zip(self.mats, other.mats)
            )
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"<LocalSystem of dims {list(self.dims)} on {self.base!r}>"


class LinearMapOfSystems:
    """A natural transformation between local systems on one groupoid."""

    def __init__(self, source, target, components, check=True):
        if source.base != target.base:
            raise ShapeError("Systems live on different groupoids")
        self.source = source
        self.target = target
        self.components = tuple(components)
        if check:
            self._check()

    @property
    def base(self):
        return self.source.base

    def _check(self):
        base = self.base
        if len(self.components) != len(base.objects):
            raise ShapeError("Component list has the wrong length")
        for x, m in enumerate(self.components):
            expected = (self.target.dims[x], self.source.dims[x])
            if m.shape != expected:
                raise ShapeError(
                    f"Component at {x} has shape {m.shape}, expected {expected}"
                )
        for a in base.skeleton.generating_morphisms():
            x, y = base.src[a], base.tgt[a]
            left = linalg.multiply(self.target.mats[a], self.components[x])
            right = linalg.multiply(self.components[y], self.source.mats[a])
            if not linalg.equal(left, right):
                raise InternalInconsistency(
                    f"Map of systems is not natural at morphism {a}"
                )

    def __eq__(self, other):
        return (
            isinstance(other, LinearMapOfSystems)
            and self.source == other.source
            and self.target == other.target
            and all(
                linalg.equal(a, b)
                for a, b in zip(self.components, other.components)
            )
        )

    __hash__ = None

    def __repr__(self):
        return f"<LinearMapOfSystems {self.source!r} -> {self.target!r}>"

    def is_invertible(self):
        return all(linalg.is_invertible(m) for m in self.components)

    def inverse(self):
        if not self.is_invertible():
            raise ShapeError("Map of systems is not invertible")
        return LinearMapOfSystems(
            self.target,
            self.source,
            [linalg.inverse(m) for m in self.components],
            check=False,
        )

    def is_identity(self):
        return self.source == self.target and self == identity_system_map(
            self.source
        )


class FiberPresentation:
    """The limit and colimit of ``F`` over the homotopy fiber at ``y``.

    ``sizes[w]`` is the dimension at fiber object ``w``; ``inclusion`` and
    ``retraction`` embed the limit into ``Pi_y`` and project back, while
    ``quotient`` and ``section`` present the colimit as a quotient of
    ``Pi_y``.
    """

    def __init__(self, f, system, y):
        self.fiber = groupoids.homotopy_fiber(f, y)
        self.projection = groupoids.fiber_projection(f, y)
        self.point = y
        self.system = system
        fiber, skeleton = self.fiber, self.fiber.skeleton
        self.sizes = [system.dims[x] for x in self.projection.obj_map]

        limit_sizes, colimit_sizes = [], []
        inclusion, retraction, quotient, section = {}, {}, {}, {}
        bases, quotients = [], []
        for c, (rep, aut) in enumerate(skeleton.components):
            n = self.sizes[rep]
            autos = skeleton.aut_morphisms[c]
            deltas = [
                linalg.subtract(self.matrix(autos[i]), linalg.identity(n))
                for i in aut.generators()
            ]
            basis = linalg.kernel(linalg.vstack(deltas, n))
            coinvariants, lift = linalg.cokernel(linalg.hstack(deltas, n), n)
            bases.append(basis)
            quotients.append(coinvariants)
            limit_sizes.append(basis.cols)
            colimit_sizes.append(coinvariants.rows)
            retraction[(c, rep)] = linalg.left_inverse(basis)
            section[(rep, c)] = lift

        for w in range(len(fiber.objects)):
            c = skeleton.component_of[w]
            t = skeleton.iso_to_rep[w]
            inclusion[(w, c)] = linalg.multiply(
                self.matrix(fiber.inverse[t]), bases[c]
            )
            quotient[(c, w)] = linalg.multiply(quotients[c], self.matrix(t))

        self.limit_dimension = sum(limit_sizes)
        self.colimit_dimension = sum(colimit_sizes)
        self.inclusion = linalg.block(self.sizes, limit_sizes, inclusion)
        self.retraction = linalg.block(limit_sizes, self.sizes, retraction)
        self.quotient = linalg.block(colimit_sizes, self.sizes, quotient)
        self.section = linalg.block(self.sizes, colimit_sizes, section)
        _trace(
            f"Fiber at {y} has {len(fiber.objects)} objects, limit of "
            f"dimension {self.limit_dimension} and colimit of dimension "
            f"{self.colimit_dimension}"
        )

    @property
    def total(self):
        return sum(self.sizes)

    def matrix(self, a):
        """The matrix of the system at fiber morphism ``a``."""
        return self.system.mats[self.projection.mor_map[a]]

    def injection(self, w):
        return linalg.block(
            self.sizes,
            [self.sizes[w]],
            {(w, 0): linalg.identity(self.sizes[w])},
        )

    def selection(self, w):
        return linalg.block(
            [self.sizes[w]],
            self.sizes,
            {(0, w): linalg.identity(self.sizes[w])},
        )

    def base_object(self, x, target):
        """The fiber object ``(x, id)``."""
        return self.fiber.object_index((x, target.identities[self.point]))


class PushforwardResult:
    def __init__(self, system, structure_maps, kind):
        self.system = system
        self.structure_maps = structure_maps
        self.kind = kind

    def __repr__(self):
        return f"<PushforwardResult {self.kind} {self.system!r}>"


@utils.memoized
def _presentation(f, system, y):
    return FiberPresentation(f, system, y)


def _presentations(f, system):
    if system.base != f.source:
        raise ShapeError("System does not live on the source of the map")
    return {
        y: _presentation(f, system, y) for y in range(len(f.target.objects))
    }


def _transport(f, before, after, beta):
    """Block permutation moving ``(x, phi)`` to ``(x, beta phi)``."""
    target = f.target
    blocks = {}
    for w, (x, phi) in enumerate(before.fiber.objects):
        moved = after.fiber.object_index((x, target.comp[(beta, phi)]))
        blocks[(moved, w)] = linalg.identity(before.sizes[w])
    return linalg.block(after.sizes, before.sizes, blocks)


def _block_diagonal_at(pres, components):
    return linalg.block_diagonal(
        [components[x] for x in pres.projection.obj_map]
    )


def constant(base, dim=1):
    return LocalSystem(
        base,
        [dim] * len(base.objects),
        [linalg.identity(dim)] * len(base.morphisms),
    )


def identity_system_map(system):
    return LinearMapOfSystems(
        system,
        system,
        [linalg.identity(d) for d in system.dims],
        check=False,
    )


def transport_system(phi):
    """``phi.source`` with every matrix conjugated by the invertible ``phi``.

    Equal to ``phi.target`` exactly when ``phi`` is natural.
    """
    source, inverse = phi.source, phi.inverse()
    base = source.base
    return LocalSystem(
        base,
        phi.target.dims,
        [
            linalg.multiply(
                phi.components[base.tgt[a]], m, inverse.components[base.src[a]]
            )
            for a, m in enumerate(source.mats)
        ],
    )


def compose_system_maps(*maps):
    """Compose right to left: ``compose_system_maps(h, g, f)`` is ``h g f``."""
    result = maps[-1]
    for second in reversed(maps[:-1]):
        if result.target != second.source:
            raise CompositionError(
                f"Cannot compose {second!r} after {result!r}"
            )
        result = LinearMapOfSystems(
            result.source,
            second.target,
            [
                linalg.multiply(b, a)
                for a, b in zip(result.components, second.components)
            ],
            check=False,
        )
    return result


def pullback_system(f, system):
    if system.base != f.target:
        raise ShapeError("System does not live on the target of the map")
    return LocalSystem(
        f.source,
        [system.dims[y] for y in f.obj_map],
        [system.mats[b] for b in f.mor_map],
        check=False,
    )


def pullback_map(f, phi):
    return LinearMapOfSystems(
        pullback_system(f, phi.source),
        pullback_system(f, phi.target),
        [phi.components[y] for y in f.obj_map],
        check=False,
    )


@utils.memoized
def pushforward_right(f, system):
    """Fiberwise limits: invariants of each fiber component."""
    with utils.time_logger(f"Right pushforward along {f!r}"):
        structure = _presentations(f, system)
        target = f.target
        mats = []
        for beta in range(len(target.morphisms)):
            before = structure[target.src[beta]]
            after = structure[target.tgt[beta]]
            mats.append(
                linalg.multiply(
                    after.retraction,
                    _transport(f, before, after, beta),
                    before.inclusion,
                )
            )
        pushed = LocalSystem(
            target, [structure[y].limit_dimension for y in structure], mats
        )
    return PushforwardResult(pushed, structure, "right")


@utils.memoized
def pushforward_left(f, system):
    """Fiberwise colimits: coinvariants of each fiber component."""
    with utils.time_logger(f"Left pushforward along {f!r}"):
        structure = _presentations(f, system)
        target = f.target
        mats = []
        for beta in range(len(target.morphisms)):
            before = structure[target.src[beta]]
            after = structure[target.tgt[beta]]
            mats.append(
                linalg.multiply(
                    after.quotient,
                    _transport(f, before, after, beta),
                    before.section,
                )
            )
        pushed = LocalSystem(
            target, [structure[y].colimit_dimension for y in structure], mats
        )
    return PushforwardResult(pushed, structure, "left")


def pushforward_left_map(f, phi):
    before = pushforward_left(f, phi.source)
    after = pushforward_left(f, phi.target)
    components = [
        linalg.multiply(
            after.structure_maps[y].quotient,
            _block_diagonal_at(pres, phi.components),
            pres.section,
        )
        for y, pres in sorted(before.structure_maps.items())
    ]
    return LinearMapOfSystems(before.system, after.system, components)


def pushforward_right_map(f, phi):
    before = pushforward_right(f, phi.source)
    after = pushforward_right(f, phi.target)
    components = [
        linalg.multiply(
            after.structure_maps[y].retraction,
            _block_diagonal_at(pres, phi.components),
            pres.inclusion,
        )
        for y, pres in sorted(before.structure_maps.items())
    ]
    return LinearMapOfSystems(before.system, after.system, components)


def unit_shriek(f, system):
    """``F -> f^* f_! F``: a vector goes to its class at ``(x, id)``."""
    pushed = pushforward_left(f, system)
    components = []
    for x in range(len(f.source.objects)):
        pres = pushed.structure_maps[f.obj_map[x]]
        w = pres.base_object(x, f.target)
        components.append(linalg.multiply(pres.quotient, pres.injection(w)))
    return LinearMapOfSystems(
        system, pullback_system(f, pushed.system), components
    )


def counit_shriek(f, system):
    """``f_! f^* G -> G``, sending ``u`` at ``(x, phi)`` to ``G(phi) u``."""
    pushed = pushforward_left(f, pullback_system(f, system))
    components = []
    for y, pres in sorted(pushed.structure_maps.items()):
        moves = [system.mats[phi] for _, phi in pres.fiber.objects]
        components.append(
            linalg.multiply(
                linalg.hstack(moves, system.dims[y]), pres.section
            )
        )
    return LinearMapOfSystems(pushed.system, system, components)


def unit_star(f, system):
    """``G -> f_* f^* G``: ``v`` goes to the section ``G(phi)^-1 v``."""
    pushed = pushforward_right(f, pullback_system(f, system))
    target = f.target
    components = []
    for y, pres in sorted(pushed.structure_maps.items()):
        moves = [
            system.mats[target.inverse[phi]] for _, phi in pres.fiber.objects
        ]
        components.append(
            linalg.multiply(
                pres.retraction, linalg.vstack(moves, system.dims[y])
            )
        )
    return LinearMapOfSystems(system, pushed.system, components)


def counit_star(f, system):
    """``f^* f_* F -> F``: a section is evaluated at ``(x, id)``."""
    pushed = pushforward_right(f, system)
    components = []
    for x in range(len(f.source.objects)):
        pres = pushed.structure_maps[f.obj_map[x]]
        w = pres.base_object(x, f.target)
        components.append(linalg.multiply(pres.selection(w), pres.inclusion))
    return LinearMapOfSystems(
        pullback_system(f, pushed.system), system, components
    )


def zigzag_composites(f, system, target_system):
    """The four triangle composites of ``f_! -| f^* -| f_*``.

    ``system`` lives on the source of ``f`` and ``target_system`` on its
    target; every composite returned is an identity.
    """
    left = pushforward_left(f, system).system
    right = pushforward_right(f, system).system
    pulled = pullback_system(f, target_system)
    return {
        "shriek-counit": compose_system_maps(
            counit_shriek(f, left),
            pushforward_left_map(f, unit_shriek(f, system)),
        ),
        "shriek-unit": compose_system_maps(
            pullback_map(f, counit_shriek(f, target_system)),
            unit_shriek(f, pulled),
        ),
        "star-counit": compose_system_maps(
            counit_star(f, pulled),
            pullback_map(f, unit_star(f, target_system)),
        ),
        "star-unit": compose_system_maps(
            pushforward_right_map(f, counit_star(f, system)),
            unit_star(f, right),
        ),
    }


def transport_along(square, system):
    """``(f p1)^* H -> (g p2)^* H`` through the connecting isomorphisms."""
    source = pullback_system(square.left, pullback_system(square.f, system))
    target = pullback_system(square.right, pullback_system(square.g, system))
    return LinearMapOfSystems(
        source, target, [system.mats[phi] for phi in square.connecting]
    )


def beck_chevalley_shriek(square, system):
    """``p2_! p1^* F -> g^* f_! F`` for a homotopy pullback square."""
    f, p1, p2 = square.f, square.left, square.right
    pushed = pushforward_left(f, system).system
    inner = compose_system_maps(
        transport_along(square, pushed),
        pullback_map(p1, unit_shriek(f, system)),
    )
    return compose_system_maps(
        counit_shriek(p2, pullback_system(square.g, pushed)),
        pushforward_left_map(p2, inner),
    )


def beck_chevalley_star(square, system):
    """``g^* f_* F -> p2_* p1^* F`` for a homotopy pullback square."""
    f, p1, p2 = square.f, square.left, square.right
    pushed = pushforward_right(f, system).system
    inner = compose_system_maps(
        pullback_map(p1, counit_star(f, system)),
        transport_along(square, pushed).inverse(),
    )
    return compose_system_maps(
        pushforward_right_map(p2, inner),
        unit_star(p2, pullback_system(square.g, pushed)),
    )


@utils.memoized
def diagonal_square(f):
    """``X x_Y X`` for ``f: X -> Y`` with the diagonal ``X -> X x_Y X``."""
    square = groupoids.homotopy_pullback(f, f)
    source, target = f.source, f.target
    delta = groupoids.GroupoidMap.from_labels(
        source,
        square.groupoid,
        lambda x: (
            source.object_index(x),
            source.object_index(x),
            target.identities[f.obj_map[source.object_index(x)]],
        ),
        lambda a: _diagonal_morphism(f, source.morphism_index(a)),
    )
    return square, delta


def _diagonal_morphism(f, a):
    phi = f.target.identities[f.obj_map[f.source.src[a]]]
    return (a, a, phi)


def composite_comparison_shriek(f, g, system):
    """``(g f)_! F -> g_! f_! F``."""
    source = pushforward_left(groupoids.compose_maps(g, f), system)
    inner = pushforward_left(f, system)
    outer = pushforward_left(g, inner.system)
    components = []
    for z, pres in sorted(source.structure_maps.items()):
        outer_pres = outer.structure_maps[z]
        blocks = {}
        for w, (x, psi) in enumerate(pres.fiber.objects):
            y = f.obj_map[x]
            inner_pres = inner.structure_maps[y]
            w0 = inner_pres.base_object(x, f.target)
            blocks[(outer_pres.fiber.object_index((y, psi)), w)] = (
                linalg.multiply(inner_pres.quotient, inner_pres.injection(w0))
            )
        middle = linalg.block(outer_pres.sizes, pres.sizes, blocks)
        components.append(
            linalg.multiply(outer_pres.quotient, middle, pres.section)
        )
    return LinearMapOfSystems(source.system, outer.system, components)


def composite_comparison_star(f, g, system):
    """``g_* f_* F -> (g f)_* F``."""
    target = pushforward_right(groupoids.compose_maps(g, f), system)
    inner = pushforward_right(f, system)
    outer = pushforward_right(g, inner.system)
    components = []
    for z, pres in sorted(target.structure_maps.items()):
        outer_pres = outer.structure_maps[z]
        blocks = {}
        for w, (x, psi) in enumerate(pres.fiber.objects):
            y = f.obj_map[x]
            inner_pres = inner.structure_maps[y]
            w0 = inner_pres.base_object(x, f.target)
            blocks[(w, outer_pres.fiber.object_index((y, psi)))] = (
                linalg.multiply(inner_pres.selection(w0), inner_pres.inclusion)
            )
        middle = linalg.block(pres.sizes, outer_pres.sizes, blocks)
        components.append(
            linalg.multiply(pres.retraction, middle, outer_pres.inclusion)
        )
    return LinearMapOfSystems(outer.system, target.system, components)


def composite_comparison(f, g, system):
    return (
        composite_comparison_shriek(f, g, system),
        composite_comparison_star(f, g, system),
    )


def norm_structural(f, system):
    """The norm ``f_! D_f F -> f_* F`` assembled from its four constituents.

    With ``P = X x_Y X``, projections ``p1``, ``p2`` and diagonal ``d``: the
    unit of ``f^* -| f_*``, the inverse Beck-Chevalley map of the square
    defining ``P``, the counit of ``p1^* -| p1_*`` and the identification
    ``p2_! d_! F = F``.
    """
    square, delta = diagonal_square(f)
    p1, p2 = square.left, square.right
    shriek_delta = pushforward_left(delta, system).system
    dualized = pushforward_right(p1, shriek_delta).system
    pushed = pushforward_left(f, dualized).system

    unit = unit_star(f, pushed)
    exchange = beck_chevalley_shriek(square, dualized)
    if not exchange.is_invertible():
        raise InternalInconsistency(
            f"Beck-Chevalley map of the diagonal of {f!r} is not invertible"
        )
    counit = pushforward_left_map(p2, counit_star(p1, shriek_delta))
    collapse = composite_comparison_shriek(delta, p2, system)
    if collapse.source != system:
        raise InternalInconsistency("Pushforward along an identity moved")
    return compose_system_maps(
        pushforward_right_map(f, collapse.inverse()),
        pushforward_right_map(f, counit),
        pushforward_right_map(f, exchange.inverse()),
        unit,
    )


def dualizing_map(f, system):
    """Return ``(D_f F, c)`` with ``c: D_f F -> F`` the canonical comparison.

    ``D_f F = p1_* d_! F`` and ``c`` is ``p1_*`` of the normalized norm of the
    diagonal followed by ``p1_* d_* F = F``. The diagonal is one truncation
    level lower than ``f``, so the recursion stops at an equivalence.
    """
    square, delta = diagonal_square(f)
    p1 = square.left
    dualized = pushforward_right(p1, pushforward_left(delta, system).system)
    comparison = compose_system_maps(
        composite_comparison_star(delta, p1, system),
        pushforward_right_map(p1, normalized_norm(delta, system)),
    )
    if comparison.target != system:
        raise InternalInconsistency("Pushforward along an identity moved")
    if not comparison.is_invertible():
        raise InternalInconsistency(
            f"Dualizing comparison of {f!r} is not invertible"
        )
    return dualized.system, comparison


def normalized_norm(f, system):
    """The norm ``f_! F -> f_* F`` after identifying ``D_f F`` with ``F``.

    An equivalence ``f`` has ``F = f^* f_! F`` and the norm is built
    directly from the units; otherwise the structural norm is precomposed
    with the inverse dualizing comparison.
    """
    if f.is_equivalence():
        unit = unit_shriek(f, system)
        if not unit.is_invertible():
            raise InternalInconsistency(
                f"Unit along the equivalence {f!r} is not invertible"
            )
        return compose_system_maps(
            pushforward_right_map(f, unit.inverse()),
            unit_star(f, pushforward_left(f, system).system),
        )
    _, comparison = dualizing_map(f, system)
    return compose_system_maps(
        norm_structural(f, system),
        pushforward_left_map(f, comparison.inverse()),
    )


def norm_direct(f, system):
    """Fiberwise norm: sum ``F(alpha)`` over fiber morphisms out of ``x``."""
    left = pushforward_left(f, system)
    right = pushforward_right(f, system)
    components = []
    for y, pres in sorted(left.structure_maps.items()):
        fiber = pres.fiber
        blocks = {}
        for w in range(len(fiber.objects)):
            for v in range(len(fiber.objects)):
                terms = [pres.matrix(a) for a in fiber.hom(w, v)]
                if terms:
                    total = terms[0]
                    for term in terms[1:]:
                        total = linalg.add(total, term)
                    blocks[(v, w)] = total
        summed = linalg.block(pres.sizes, pres.sizes, blocks)
        components.append(
            linalg.multiply(
                right.structure_maps[y].retraction, summed, pres.section
            )
        )
    return LinearMapOfSystems(left.system, right.system, components)


def cardinality_linear(grpd):
    """``Q -> f_* f^* Q -> f_! f^* Q -> Q`` along ``f: X -> pt``.

    The middle arrow is the inverse of the normalized norm.
    """
    f = groupoids.terminal_map(grpd)
    unit_line = constant(f.target)
    pulled = pullback_system(f, unit_line)
    norm = normalized_norm(f, pulled)
    if not norm.is_invertible():
        raise InternalInconsistency(f"Norm along {f!r} is not invertible")
    composite = compose_system_maps(
        counit_shriek(f, unit_line), norm.inverse(), unit_star(f, unit_line)
    )
    return sympy.Rational(composite.components[0][0, 0])


def integrate_linear(f, phi):
    """Integrate a class function through the inverse norm and the counit.

    ``phi`` is read as a section of ``f_* Q`` (constant on fiber
    components), sent back to ``f_! Q`` and summed by the counit.
    """
    if phi.base != f.source:
        raise ShapeError("Class function does not live on the source")
    unit_line = constant(f.target)
    pulled = pullback_system(f, unit_line)
    norm = normalized_norm(f, pulled)
    if not norm.is_invertible():
        raise InternalInconsistency(f"Norm along {f!r} is not invertible")
    inverse = norm.inverse()
    counit = counit_shriek(f, unit_line)
    right = pushforward_right(f, pulled)
    values = []
    for y, _ in f.target.skeleton.components:
        pres = right.structure_maps[y]
        column = [[phi.at(x)] for x in pres.projection.obj_map]
        section = linalg.multiply(
            pres.retraction, linalg.matrix(len(column), 1, column)
        )
        value = linalg.multiply(
            counit.components[y], inverse.components[y], section
        )
        values.append(value[0, 0])
    return spans.ClassFunction(f.target, values)


def categorical_cardinality(grpd):
    """Dimension of the colimit of ``Q`` over ``X``; equals ``|L X|``."""
    f = groupoids.terminal_map(grpd)
    return pushforward_left(f, constant(grpd)).system.dims[0]
