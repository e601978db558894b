"""Spans of finite groupoids and their linearization to class functions."""

import logging

import sympy

from transchromatic import groupoids, linalg, utils
from transchromatic.errors import (
    CompositionError,
    InternalInconsistency,
    InvalidInputError,
    ShapeError,
)

logger = logging.getLogger(__name__)


class Span:
    """A span ``left_foot <- apex -> right_foot``."""

    def __init__(self, left_leg, right_leg):
        if left_leg.source != right_leg.source:
            raise InvalidInputError("Legs of a span need a common apex")
        self.left_leg = left_leg
        self.right_leg = right_leg

    @property
    def apex(self):
        return self.left_leg.source

    @property
    def left_foot(self):
        return self.left_leg.target

    @property
    def right_foot(self):
        return self.right_leg.target

    def __repr__(self):
        return (
            f"<Span {self.left_foot!r} <- {self.apex!r} "
            f"-> {self.right_foot!r}>"
        )


class ClassFunctionSpace:
    """Rational class functions on ``base``, one coordinate per component."""

    def __init__(self, base):
        self.base = base
        self.skeleton = groupoids.skeletize(base)
        self.dimension = len(self.skeleton)

    def __contains__(self, phi):
        return isinstance(phi, ClassFunction) and phi.base == self.base

    def constant(self, value=1):
        return ClassFunction(self.base, [value] * self.dimension)

    def from_vector(self, vector):
        if vector.shape != (self.dimension, 1):
            raise ShapeError(
                f"Expected a {self.dimension}x1 vector, got "
                f"{vector.rows}x{vector.cols}"
            )
        return ClassFunction(
            self.base, [vector[i, 0] for i in range(self.dimension)]
        )

    def __repr__(self):
        return f"<ClassFunctionSpace of dimension {self.dimension}>"


class ClassFunction:
    """A rational value on each component of ``base``, in skeleton order."""

    def __init__(self, base, values):
        self.base = base
        self.values = tuple(sympy.Rational(v) for v in values)
        if len(self.values) != len(base.skeleton):
            raise ShapeError(
                f"Expected {len(base.skeleton)} values, got {len(self.values)}"
            )

    def at(self, x):
        """Value at the component of object ``x``."""
        return self.values[self.base.skeleton.component_of[x]]

    def as_vector(self):
        return linalg.matrix(len(self.values), 1, [[v] for v in self.values])

    def _check_base(self, other):
        if self.base != other.base:
            raise ShapeError("Class functions live on different groupoids")

    def __add__(self, other):
        self._check_base(other)
        return ClassFunction(
            self.base, [a + b for a, b in zip(self.values, other.values)]
        )

    def __mul__(self, other):
        self._check_base(other)
        return ClassFunction(
            self.base, [a * b for a, b in zip(self.values, other.values)]
        )

    def __eq__(self, other):
        return (
            isinstance(other, ClassFunction)
            and self.base == other.base
            and self.values == other.values
        )

    def __hash__(self):
        return hash((self.base, self.values))

    def __repr__(self):
        values = ", ".join(linalg.format_rational(v) for v in self.values)
        return f"ClassFunction({values})"


def span_identity(grpd):
    identity = groupoids.identity_map(grpd)
    return Span(identity, identity)


def span_from_map_fwd(f):
    return Span(groupoids.identity_map(f.source), f)


def span_from_map_bwd(f):
    return Span(f, groupoids.identity_map(f.source))


def span_compose(first, second):
    """The span ``first`` then ``second``, through a homotopy pullback."""
    if first.right_foot != second.left_foot:
        raise CompositionError(
            f"Cannot compose a span into {first.right_foot!r} "
            f"with a span out of {second.left_foot!r}"
        )
    square = groupoids.homotopy_pullback(first.right_leg, second.left_leg)
    return Span(
        groupoids.compose_maps(first.left_leg, square.left),
        groupoids.compose_maps(second.right_leg, square.right),
    )


@utils.memoized
def restriction_matrix(f):
    source, target = f.source.skeleton, f.target.skeleton
    entries = [[0] * len(target) for _ in range(len(source))]
    for c, (rep, _) in enumerate(source.components):
        entries[c][target.component_of[f.obj_map[rep]]] = 1
    return linalg.matrix(len(source), len(target), entries)


@utils.memoized
def integration_matrix(f):
    """Matrix of integration along ``f`` on class functions.

    Row ``[y]`` sums over fiber components at ``y`` weighted by the inverse
    order of their automorphism groups. Every object of the target is
    evaluated and objects of one component must agree.
    """
    source, target = f.source.skeleton, f.target.skeleton
    rows = [None] * len(target)
    with utils.time_logger(f"Integration matrix of {f!r}"):
        for y in range(len(f.target.objects)):
            row = _fiber_weights(f, y, len(source))
            c = target.component_of[y]
            if rows[c] is None:
                rows[c] = row
            elif rows[c] != row:
                raise InternalInconsistency(
                    f"Integral along {f!r} depends on the object {y}"
                )
    return linalg.matrix(len(target), len(source), rows)


def _fiber_weights(f, y, width):
    fiber = groupoids.homotopy_fiber(f, y)
    projection = groupoids.fiber_projection(f, y)
    source = f.source.skeleton
    row = [sympy.Rational(0)] * width
    for rep, aut in fiber.skeleton.components:
        x = projection.obj_map[rep]
        row[source.component_of[x]] += sympy.Rational(1, aut.order)
    return row


def restrict(f, phi):
    if phi not in ClassFunctionSpace(f.target):
        raise ShapeError("Class function does not live on the target")
    vector = linalg.multiply(restriction_matrix(f), phi.as_vector())
    return ClassFunctionSpace(f.source).from_vector(vector)


def integrate(f, phi):
    if phi not in ClassFunctionSpace(f.source):
        raise ShapeError("Class function does not live on the source")
    vector = linalg.multiply(integration_matrix(f), phi.as_vector())
    return ClassFunctionSpace(f.target).from_vector(vector)


def linearize(span):
    """Integrate along the right leg after restricting along the left leg."""
    return linalg.multiply(
        integration_matrix(span.right_leg), restriction_matrix(span.left_leg)
    )
