import collections
import itertools
import logging

import sympy
from sympy.combinatorics import Permutation, PermutationGroup
from sympy.combinatorics.named_groups import (
    AlternatingGroup,
    CyclicGroup,
    DihedralGroup,
    SymmetricGroup,
)

from transchromatic import utils
from transchromatic.errors import (
    CapacityError,
    FormatError,
    InvalidInputError,
)

logger = logging.getLogger(__name__)

DEFAULT_ISOMORPHISM_BOUND = 128


def _trace(*args, **kwargs):
    logger.log(utils.TRACE, *args, **kwargs)


class FiniteGroup:
    """A finite group given by its multiplication table.

    Elements are the indices ``0..order-1`` and ``mul[g][h]`` is the index of
    the product ``g * h``. When the group was built from permutations,
    ``perms[g]`` is the permutation realizing ``g``.
    """

    def __init__(self, mul, name=None, perms=None):
        self.mul = tuple(tuple(row) for row in mul)
        self.order = len(self.mul)
        self.name = name
        self.perms = tuple(tuple(p) for p in perms) if perms else None

        if self.order == 0:
            raise InvalidInputError("A group needs at least one element")
        if any(len(row) != self.order for row in self.mul):
            raise InvalidInputError("Multiplication table is not square")
        if any(not 0 <= g < self.order for row in self.mul for g in row):
            raise InvalidInputError("Multiplication table entry out of range")

        self.identity = self._find_identity()
        self.inv = self._find_inverses()
        self._check_associative()
        self._hash = hash(self.mul)

    def _find_identity(self):
        for e in range(self.order):
            if all(
                self.mul[e][g] == g and self.mul[g][e] == g
                for g in range(self.order)
            ):
                return e
        raise InvalidInputError("Multiplication table has no identity")

    def _find_inverses(self):
        inv = []
        for g in range(self.order):
            for h in range(self.order):
                if (
                    self.mul[g][h] == self.identity
                    and self.mul[h][g] == self.identity
                ):
                    inv.append(h)
                    break
            else:
                raise InvalidInputError(f"Element {g} has no inverse")
        return tuple(inv)

    def _check_associative(self):
        mul = self.mul
        for a, b, c in itertools.product(range(self.order), repeat=3):
            if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                raise InvalidInputError(
                    f"Multiplication is not associative at ({a}, {b}, {c})"
                )

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.mul == other.mul

    def __hash__(self):
        return self._hash

    def __repr__(self):
        label = self.name or "FiniteGroup"
        return f"<{label} of order {self.order}>"

    @property
    def elements(self):
        return range(self.order)

    def power(self, g, k):
        result = self.identity
        for _ in range(k):
            result = self.mul[result][g]
        return result

    def element_order(self, g):
        order, current = 1, g
        while current != self.identity:
            current = self.mul[current][g]
            order += 1
        return order

    def is_p_element(self, g, p):
        return is_power_of(self.element_order(g), p)

    def conjugate(self, s, g):
        """Return ``s g s^-1``."""
        return self.mul[self.mul[s][g]][self.inv[s]]

    def commute(self, g, h):
        return self.mul[g][h] == self.mul[h][g]

    def centralizer(self, g):
        return tuple(s for s in self.elements if self.commute(s, g))

    def conjugacy_classes(self):
        seen = set()
        classes = []
        for g in self.elements:
            if g in seen:
                continue
            conjugacy_class = sorted(
                {self.conjugate(s, g) for s in self.elements}
            )
            seen.update(conjugacy_class)
            classes.append(tuple(conjugacy_class))
        return classes

    def closure(self, elements):
        """The subgroup generated by ``elements``, as a sorted tuple."""
        generated = {self.identity}
        queue = collections.deque([self.identity])
        elements = list(elements)
        while queue:
            x = queue.popleft()
            for s in elements:
                y = self.mul[x][s]
                if y not in generated:
                    generated.add(y)
                    queue.append(y)
        return tuple(sorted(generated))

    def generators(self):
        """A small generating set, chosen greedily by lowest index."""
        gens = []
        generated = {self.identity}
        for g in self.elements:
            if g not in generated:
                gens.append(g)
                generated = set(self.closure(gens))
        return tuple(gens)

    def subgroup(self, elements, name=None):
        """Return ``(H, embedding)`` for a subset closed under multiplication.

        ``embedding[h]`` is the element of this group that ``h`` names.
        """
        embedding = tuple(sorted(set(elements)))
        if self.closure(embedding) != embedding:
            raise InvalidInputError(
                f"Elements {list(embedding)} do not form a subgroup"
            )
        position = {g: i for i, g in enumerate(embedding)}
        mul = [[position[self.mul[a][b]] for b in embedding] for a in embedding]
        perms = [self.perms[g] for g in embedding] if self.perms else None
        return FiniteGroup(mul, name=name, perms=perms), embedding

    def subgroups(self):
        """All subgroups, as sorted element tuples ordered by size."""
        found = {(self.identity,)}
        frontier = [(self.identity,)]
        while frontier:
            next_frontier = []
            for subgroup in frontier:
                members = set(subgroup)
                for g in self.elements:
                    if g in members:
                        continue
                    bigger = self.closure(subgroup + (g,))
                    if bigger not in found:
                        found.add(bigger)
                        next_frontier.append(bigger)
            frontier = next_frontier
        return sorted(found, key=lambda s: (len(s), s))

    def sign(self, g):
        if self.perms is None:
            raise InvalidInputError("Group has no permutation realization")
        return Permutation(self.perms[g]).signature()


def is_prime(p):
    return isinstance(p, int) and p >= 2 and sympy.isprime(p)


def is_power_of(n, p):
    while n % p == 0:
        n //= p
    return n == 1


def from_permutation_group(pgroup, name=None):
    """Tabulate a sympy permutation group.

    Elements are numbered by the lexicographic order of their array forms,
    so the identity is element ``0``. ``mul[a][b]`` is ``a`` after ``b``.
    """
    elements = sorted(pgroup.generate(), key=lambda p: p.array_form)
    index = {tuple(p.array_form): i for i, p in enumerate(elements)}
    mul = [
        [index[tuple((b * a).array_form)] for b in elements] for a in elements
    ]
    _trace(
        f"Permutation group on {pgroup.degree} points has order {len(mul)}"
    )
    return FiniteGroup(
        mul, name=name, perms=[p.array_form for p in elements]
    )


def group_from_permutations(generators, degree=None, name=None):
    generators = [tuple(g) for g in generators]
    if degree is None:
        degree = len(generators[0]) if generators else 1
    if degree < 1:
        raise FormatError("A permutation group needs at least one point")
    for g in generators:
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise FormatError(
                f"{list(g)} is not a permutation of {degree} points"
            )
    perms = [Permutation(list(g)) for g in generators]
    if not perms:
        perms = [Permutation(list(range(degree)))]
    return from_permutation_group(PermutationGroup(perms), name=name)


def cyclic(n):
    return from_permutation_group(CyclicGroup(n), name=f"C{n}")


def symmetric(n):
    return from_permutation_group(SymmetricGroup(n), name=f"S{n}")


def alternating(n):
    return from_permutation_group(AlternatingGroup(n), name=f"A{n}")


def dihedral(n):
    """The symmetry group of the ``n``-gon, of order ``2n``."""
    return from_permutation_group(DihedralGroup(n), name=f"D{n}")


_UNIT_PRODUCTS = {
    (1, 1): (-1, 0),
    (1, 2): (1, 3),
    (1, 3): (-1, 2),
    (2, 1): (-1, 3),
    (2, 2): (-1, 0),
    (2, 3): (1, 1),
    (3, 1): (1, 2),
    (3, 2): (-1, 1),
    (3, 3): (-1, 0),
}


def quaternion():
    """The quaternion group, acting on itself by left multiplication."""

    def product(a, b):
        (sa, ua), (sb, ub) = a, b
        if ua == 0 or ub == 0:
            sign, unit = 1, ua or ub
        else:
            sign, unit = _UNIT_PRODUCTS[(ua, ub)]
        return (sa * sb * sign, unit)

    elements = [(sign, unit) for sign in (1, -1) for unit in range(4)]
    position = {x: i for i, x in enumerate(elements)}
    gens = [
        [position[product(g, x)] for x in elements]
        for g in ((1, 1), (1, 2))
    ]
    return group_from_permutations(gens, name="Q8")


def direct_product(g, h, name=None):
    """``G x H`` with ``(a, b)`` at index ``a * |H| + b``."""
    mul = [
        [
            g.mul[a1][a2] * h.order + h.mul[b1][b2]
            for a2 in g.elements
            for b2 in h.elements
        ]
        for a1 in g.elements
        for b1 in h.elements
    ]
    perms = None
    if g.perms and h.perms:
        shift = len(g.perms[0])
        perms = [
            g.perms[a] + tuple(shift + i for i in h.perms[b])
            for a in g.elements
            for b in h.elements
        ]
    if name is None and g.name and h.name:
        name = f"{g.name}x{h.name}"
    return FiniteGroup(mul, name=name, perms=perms)


def named_group(name):
    """Look up one of the standard groups, e.g. ``S3``, ``C6`` or ``Q8``."""
    family, rest = name[:1].upper(), name[1:]
    if name.upper() == "Q8":
        return quaternion()
    if name.upper() in ("V4", "K4"):
        return direct_product(cyclic(2), cyclic(2), name="V4")
    if not rest.isdigit():
        raise FormatError(f"Unknown group name {name!r}")
    n = int(rest)
    constructors = {
        "C": cyclic,
        "S": symmetric,
        "A": alternating,
        "D": dihedral,
    }
    if family not in constructors or n < 1:
        raise FormatError(f"Unknown group name {name!r}")
    return constructors[family](n)


def homomorphisms(g, h):
    """Yield every homomorphism ``G -> H`` as a tuple of images.

    Candidates are generator images whose orders divide the generator
    orders; each candidate is extended along right multiplication and kept
    when consistent.
    """
    gens = g.generators()
    candidates = [
        [t for t in h.elements if g.element_order(s) % h.element_order(t) == 0]
        for s in gens
    ]
    for images in itertools.product(*candidates):
        phi = _extend(g, h, gens, images)
        if phi is not None:
            yield phi


def find_isomorphism(g, h, bound=DEFAULT_ISOMORPHISM_BOUND):
    for group in (g, h):
        if group.order > bound:
            raise CapacityError(group.order, bound)
    if g.order != h.order:
        return None
    g_orders = sorted(g.element_order(x) for x in g.elements)
    h_orders = sorted(h.element_order(x) for x in h.elements)
    if g_orders != h_orders:
        return None

    gens = g.generators()
    candidates = [
        [t for t in h.elements if h.element_order(t) == g.element_order(s)]
        for s in gens
    ]
    for images in itertools.product(*candidates):
        phi = _extend(g, h, gens, images)
        if phi is not None and len(set(phi)) == h.order:
            return phi
    return None


def is_isomorphic(g, h, bound=DEFAULT_ISOMORPHISM_BOUND):
    return find_isomorphism(g, h, bound=bound) is not None


def is_homomorphism(g, h, phi):
    return all(
        phi[g.mul[a][b]] == h.mul[phi[a]][phi[b]]
        for a in g.elements
        for b in g.elements
    )


def _extend(g, h, gens, images):
    phi = {g.identity: h.identity}
    queue = collections.deque([g.identity])
    while queue:
        x = queue.popleft()
        for s, t in zip(gens, images):
            y = g.mul[x][s]
            image = h.mul[phi[x]][t]
            if y in phi:
                if phi[y] != image:
                    return None
            else:
                phi[y] = image
                queue.append(y)
    return tuple(phi[x] for x in g.elements)
