import pytest

from transchromatic import groups
from transchromatic.errors import CapacityError, FormatError, InvalidInputError


class TestGroupFromPermutations:
    def test_single_transposition(self):
        group = groups.group_from_permutations([[1, 0]])

        assert group.order == 2

    def test_transposition_and_cycle_give_s3(self):
        group = groups.group_from_permutations([[1, 0, 2], [1, 2, 0]])

        assert group.order == 6
        assert groups.is_isomorphic(group, groups.symmetric(3))

    def test_no_generators(self):
        group = groups.group_from_permutations([], degree=1)

        assert group.order == 1
        assert group.identity == 0

    def test_identity_comes_first(self):
        group = groups.group_from_permutations([[1, 2, 0]])

        assert group.perms[0] == (0, 1, 2)
        assert group.identity == 0

    def test_elements_are_numbered_lexicographically(self):
        group = groups.group_from_permutations([[1, 0, 2], [1, 2, 0]])

        assert group.perms == (
            (0, 1, 2),
            (0, 2, 1),
            (1, 0, 2),
            (1, 2, 0),
            (2, 0, 1),
            (2, 1, 0),
        )

    def test_generators_do_not_change_the_table(self, s3):
        group = groups.group_from_permutations([[0, 2, 1], [2, 0, 1]])

        assert group == s3

    def test_product_is_composition(self, s3, transposition, three_cycle):
        product = s3.mul[transposition][three_cycle]

        # (1, 0, 2) after (1, 2, 0)
        assert s3.perms[product] == (0, 2, 1)

    def test_rejects_non_bijection(self):
        with pytest.raises(FormatError):
            groups.group_from_permutations([[0, 0, 1]])


class TestFiniteGroup:
    def test_rejects_non_associative_table(self):
        # A Latin square with identity 0 that is not associative.
        mul = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ]
        with pytest.raises(InvalidInputError):
            groups.FiniteGroup(mul)

    def test_rejects_table_without_identity(self):
        with pytest.raises(InvalidInputError):
            groups.FiniteGroup([[1, 0], [0, 0]])

    def test_inverses(self, s3):
        for g in s3.elements:
            assert s3.mul[g][s3.inv[g]] == s3.identity

    def test_equality_follows_table(self):
        assert groups.cyclic(3) == groups.named_group("C3")
        assert hash(groups.cyclic(3)) == hash(groups.named_group("C3"))

    def test_element_orders_of_s3(self, s3):
        orders = sorted(s3.element_order(g) for g in s3.elements)

        assert orders == [1, 2, 2, 2, 3, 3]

    def test_conjugacy_classes_of_s3(self, s3):
        sizes = [len(c) for c in s3.conjugacy_classes()]

        assert sizes == [1, 3, 2]

    def test_centralizer_of_transposition(self, s3, transposition):
        assert s3.centralizer(transposition) == (0, transposition)

    def test_conjugate(self, s3, transposition, three_cycle):
        conjugated = s3.conjugate(three_cycle, transposition)

        assert s3.element_order(conjugated) == 2
        assert conjugated != transposition

    def test_subgroup_renumbers_elements(self, s3, three_cycle):
        subgroup, embedding = s3.subgroup(s3.closure([three_cycle]))

        assert subgroup.order == 3
        assert embedding[0] == 0
        assert groups.is_isomorphic(subgroup, groups.cyclic(3))

    def test_subgroup_must_be_closed(self, s3, transposition, three_cycle):
        with pytest.raises(InvalidInputError):
            s3.subgroup([0, transposition, three_cycle])

    @pytest.mark.parametrize(
        "name,count", [("C1", 1), ("S3", 6), ("Q8", 6), ("D4", 10), ("S4", 30)]
    )
    def test_subgroup_counts(self, name, count):
        assert len(groups.named_group(name).subgroups()) == count

    def test_sign(self, s3, transposition, three_cycle):
        assert s3.sign(transposition) == -1
        assert s3.sign(three_cycle) == 1

    def test_sign_needs_permutations(self):
        group = groups.FiniteGroup([[0, 1], [1, 0]])

        with pytest.raises(InvalidInputError):
            group.sign(1)


@pytest.mark.parametrize(
    "name,order",
    [
        ("C6", 6),
        ("S4", 24),
        ("A4", 12),
        ("D4", 8),
        ("Q8", 8),
        ("V4", 4),
        ("C1", 1),
        ("D1", 2),
        ("D2", 4),
        ("D3", 6),
        ("A3", 3),
        ("S1", 1),
    ],
)
def test_named_groups(name, order):
    assert groups.named_group(name).order == order


@pytest.mark.parametrize("name", ["X3", "S", "C0", ""])
def test_unknown_group_names(name):
    with pytest.raises(FormatError):
        groups.named_group(name)


def test_quaternion_has_one_involution():
    q8 = groups.quaternion()

    assert [q8.element_order(g) for g in q8.elements].count(2) == 1


def test_direct_product_indexing():
    product = groups.direct_product(groups.cyclic(2), groups.cyclic(3))

    assert product.order == 6
    assert groups.is_isomorphic(product, groups.cyclic(6))


def test_homomorphisms_from_c2_to_s3(s3):
    images = list(groups.homomorphisms(groups.cyclic(2), s3))

    # The trivial map and one for each transposition.
    assert len(images) == 4


def test_is_homomorphism(s3):
    assert groups.is_homomorphism(s3, s3, tuple(s3.elements))
    assert not groups.is_homomorphism(
        groups.cyclic(3), groups.cyclic(3), (0, 1, 1)
    )


def test_isomorphism_c4_and_v4():
    assert not groups.is_isomorphic(groups.cyclic(4), groups.named_group("V4"))


def test_isomorphism_bound():
    s4 = groups.symmetric(4)

    with pytest.raises(CapacityError):
        groups.find_isomorphism(s4, s4, bound=12)


@pytest.mark.parametrize(
    "n,expected", [(2, True), (3, True), (4, False), (1, False), (97, True)]
)
def test_is_prime(n, expected):
    assert groups.is_prime(n) is expected


def test_small_dihedral_groups():
    assert groups.is_isomorphic(groups.dihedral(1), groups.cyclic(2))
    assert groups.is_isomorphic(groups.dihedral(2), groups.named_group("V4"))
    assert groups.is_isomorphic(groups.dihedral(3), groups.symmetric(3))
