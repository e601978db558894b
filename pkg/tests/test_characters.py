import pytest
import sympy

from transchromatic import characters, groupoids, groups, linalg
from transchromatic.errors import InvalidInputError, ShapeError


def test_trivial_rep(s3):
    rep = characters.trivial_rep(s3, dim=2)

    assert rep.dim == 2
    assert characters.character(rep).values == (2, 2, 2)


def test_regular_character(s3):
    rep = characters.regular_rep(s3)

    assert rep.dim == 6
    assert characters.character(rep).values == (6, 0, 0)


def test_sign_character(s3):
    assert characters.character(characters.sign_rep(s3)).values == (1, -1, 1)


def test_coset_character_counts_fixed_points(s3, transposition):
    rep = characters.coset_rep(s3, [0, transposition])

    assert characters.character(rep).values == (3, 1, 0)


def test_direct_sum_and_tensor_product(s3):
    sign = characters.sign_rep(s3)
    regular = characters.regular_rep(s3)

    assert characters.direct_sum(sign, regular).dim == 7
    assert characters.character(
        characters.tensor_product(sign, sign)
    ).values == (1, 1, 1)


def test_restriction_to_subgroup(s3, three_cycle):
    subgroup, embedding = s3.subgroup(s3.closure([three_cycle]))

    rep = characters.restrict_rep(characters.sign_rep(s3), subgroup, embedding)

    assert characters.character(rep).values == (1, 1, 1)


def test_rep_needs_one_matrix_per_element(c2):
    with pytest.raises(ShapeError):
        characters.RationalRep(c2, [linalg.identity(1)])


def test_permutation_rep_needs_images_among_the_points(c2):
    with pytest.raises(InvalidInputError):
        characters.permutation_rep(c2, range(2), lambda g, i: i + g * 5)


def test_rep_must_be_a_homomorphism(c3):
    with pytest.raises(InvalidInputError):
        characters.RationalRep(
            c3, [linalg.identity(1), linalg.scalar(-1), linalg.scalar(-1)]
        )


def test_group_of_delooping(s3, bs3):
    assert characters.group_of(bs3) == s3


def test_group_of_needs_one_object(conjugation_s3):
    with pytest.raises(InvalidInputError):
        characters.group_of(conjugation_s3)


class TestInduction:
    def test_induced_sign(self, c2_in_s3, sign_of_c2):
        induced = characters.induce(c2_in_s3, sign_of_c2)

        assert induced.dim == 3
        assert characters.character(induced).values == (3, -1, 0)

    def test_induction_square(self, c2_in_s3, sign_of_c2):
        report = characters.verify_induction_square(c2_in_s3, sign_of_c2)

        assert report.holds
        assert report.classes == [0, 1, 3]
        assert report.induced == [3, -1, 0]

    def test_induction_from_a3(self, a3_in_s3):
        trivial = characters.trivial_rep(
            characters.group_of(a3_in_s3.source)
        )

        report = characters.verify_induction_square(a3_in_s3, trivial)

        assert report
        assert report.induced == [2, 0, 2]

    def test_p_typical_square(self, c2_in_s3, sign_of_c2):
        report = characters.p_typical_character_square(
            c2_in_s3, sign_of_c2, 2
        )

        assert report.holds
        assert report.classes == [0, 1]
        assert report.induced == [3, -1]

    def test_p_typical_square_away_from_the_subgroup(
        self, c2_in_s3, sign_of_c2
    ):
        report = characters.p_typical_character_square(
            c2_in_s3, sign_of_c2, 3
        )

        assert report.holds
        assert report.integrated == [3, 0]

    def test_non_injective_map(self, c2):
        collapse = groupoids.group_map(c2, groups.cyclic(1), (0, 0))

        with pytest.raises(InvalidInputError):
            characters.induce(collapse, characters.trivial_rep(c2))

    def test_rep_of_the_wrong_group(self, c2_in_s3, c3):
        with pytest.raises(InvalidInputError):
            characters.induce(c2_in_s3, characters.trivial_rep(c3))


class TestRestriction:
    def test_regular_s3_on_c2(self, s3, c2_in_s3):
        report = characters.verify_restriction_square(
            c2_in_s3, characters.regular_rep(s3)
        )

        assert report.holds
        assert report.classes == [0, 1]
        assert report.induced == [6, 0]

    def test_sign_on_a3(self, s3, a3_in_s3):
        report = characters.verify_restriction_square(
            a3_in_s3, characters.sign_rep(s3)
        )

        assert report.holds
        assert report.integrated == [1, 1, 1]

    def test_rep_of_the_wrong_group(self, c2_in_s3, c3):
        with pytest.raises(InvalidInputError):
            characters.verify_restriction_square(
                c2_in_s3, characters.trivial_rep(c3)
            )


def test_pushforward_character(c2_in_s3, sign_of_c2):
    report = characters.verify_pushforward_character(
        c2_in_s3, sign_of_c2.to_local_system()
    )

    assert report.holds
    assert report.induced == [3, -1, 0]


class TestChromaticCardinality:
    @pytest.mark.parametrize(
        "p,n,expected",
        [
            (2, 0, sympy.Rational(1, 6)),
            (2, 1, sympy.Rational(2, 3)),
            (3, 1, sympy.Rational(1, 2)),
            (2, 2, sympy.Rational(5, 3)),
        ],
    )
    def test_s3(self, bs3, p, n, expected):
        assert characters.chromatic_cardinality(bs3, p, n) == expected

    @pytest.mark.parametrize("name", ["C4", "V4", "S3", "Q8"])
    @pytest.mark.parametrize("n", [1, 2])
    def test_agrees_with_counting_tuples(self, name, n):
        group = groups.named_group(name)

        looped = characters.chromatic_cardinality(
            groupoids.delooping(group), 2, n
        )

        assert looped == characters.chromatic_cardinality_oracle(group, 2, n)

    @pytest.mark.parametrize("t", [0, 1, 2])
    def test_transchromatic_heights_agree(self, bs3, t):
        value = characters.transchromatic_cardinality(bs3, 2, 2, t)

        assert value == sympy.Rational(5, 3)

    def test_height_must_not_exceed_n(self, bs3):
        with pytest.raises(InvalidInputError):
            characters.transchromatic_cardinality(bs3, 2, 1, 2)

    def test_needs_a_prime(self, bs3):
        with pytest.raises(InvalidInputError):
            characters.chromatic_cardinality(bs3, 6, 1)
