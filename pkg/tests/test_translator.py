import pytest
import sympy

from transchromatic import groupoids, linalg, translator
from transchromatic.errors import (
    CompositionError,
    FormatError,
    InvalidInputError,
)

S3_GENERATORS = {"perm_gens": [[1, 0, 2], [1, 2, 0]], "degree": 3}


class TestLoadDocument:
    def test_plain_document(self):
        assert translator.load_document('{"named": "S3"}') == {"named": "S3"}

    def test_schema_version_one_is_accepted(self):
        document = translator.load_document('{"schema": 1, "discrete": 2}')

        assert document["discrete"] == 2

    @pytest.mark.parametrize("text", ["", "{", '{"schema": 2}'])
    def test_malformed(self, text):
        with pytest.raises(FormatError):
            translator.load_document(text)


class TestToRational:
    @pytest.mark.parametrize(
        "value,expected",
        [
            (3, sympy.Rational(3)),
            ("-3/4", sympy.Rational(-3, 4)),
            ("2", sympy.Rational(2)),
            (" 6 / 4 ", sympy.Rational(3, 2)),
        ],
    )
    def test_successful_translation(self, value, expected):
        assert translator.to_rational(value) == expected

    @pytest.mark.parametrize("value", ["1/0", "0.5", True, None, [1], "a/b"])
    def test_rejects(self, value):
        with pytest.raises(FormatError):
            translator.to_rational(value)


class TestToMatrix:
    def test_successful_translation(self):
        m = translator.to_matrix([[1, "1/2"], [0, -1]])

        assert m.shape == (2, 2)
        assert m[0, 1] == sympy.Rational(1, 2)

    def test_empty_matrix_takes_the_expected_shape(self):
        assert translator.to_matrix([], (0, 3)).shape == (0, 3)

    def test_ragged_rows(self):
        with pytest.raises(FormatError):
            translator.to_matrix([[1, 2], [3]])

    def test_wrong_shape(self):
        with pytest.raises(FormatError):
            translator.to_matrix([[1]], (2, 2))


class TestToGroup:
    def test_named(self):
        assert translator.to_group({"named": "Q8"}).order == 8

    def test_permutations(self):
        group = translator.to_group(S3_GENERATORS)

        assert group.order == 6
        assert group.perms[1] == (0, 2, 1)

    def test_table(self):
        group = translator.to_group(
            {"mul": [[0, 1], [1, 0]], "order": 2, "name": "Z2"}
        )

        assert group.name == "Z2"
        assert group.inv == (0, 1)

    def test_table_order_must_match(self):
        with pytest.raises(FormatError):
            translator.to_group({"mul": [[0, 1], [1, 0]], "order": 3})

    def test_table_must_be_a_group(self):
        with pytest.raises(InvalidInputError):
            translator.to_group({"mul": [[0, 0], [0, 0]]})

    @pytest.mark.parametrize(
        "data",
        [
            {},
            [],
            {"named": "S3", "mul": [[0]]},
            {"perm_gens": [[0, 0]]},
            {"perm_gens": [["a", "b"]]},
            {"perm_gens": 5},
            {"perm_gens": [5]},
            {"perm_gens": [[]]},
            {"mul": 5},
            {"mul": [5]},
        ],
    )
    def test_malformed(self, data):
        with pytest.raises(FormatError):
            translator.to_group(data)


class TestToGroupoid:
    def test_group(self, bs3):
        assert translator.to_groupoid({"group": {"named": "S3"}}) == bs3

    def test_discrete(self):
        grpd = translator.to_groupoid({"discrete": 3})

        assert groupoids.cardinality(grpd) == 3

    def test_action_table(self):
        grpd = translator.to_groupoid(
            {"action": {"group": {"named": "C2"}, "table": [[0, 1], [1, 0]]}}
        )

        assert len(grpd.skeleton) == 1
        assert groupoids.cardinality(grpd) == 1

    def test_action_table_must_be_an_action(self):
        with pytest.raises(InvalidInputError):
            translator.to_groupoid(
                {
                    "action": {
                        "group": {"named": "C2"},
                        "table": [[1, 0], [1, 0]],
                    }
                }
            )

    @pytest.mark.parametrize(
        "kind,cardinality",
        [
            ("conjugation", 1),
            ("translation", 1),
            ("natural", sympy.Rational(1, 2)),
        ],
    )
    def test_action_kinds(self, kind, cardinality):
        grpd = translator.to_groupoid(
            {"action": {"group": {"named": "S3"}, "kind": kind}}
        )

        assert groupoids.cardinality(grpd) == cardinality

    def test_natural_action_needs_permutations(self):
        with pytest.raises(FormatError):
            translator.to_groupoid(
                {
                    "action": {
                        "group": {"mul": [[0, 1], [1, 0]]},
                        "kind": "natural",
                    }
                }
            )

    def test_disjoint_union_and_product(self):
        union = translator.to_groupoid(
            {"disjoint_union": [{"discrete": 1}, {"group": {"named": "C2"}}]}
        )
        prod = translator.to_groupoid(
            {"product": [{"group": {"named": "C2"}}, {"discrete": 3}]}
        )

        assert groupoids.cardinality(union) == sympy.Rational(3, 2)
        assert groupoids.cardinality(prod) == sympy.Rational(3, 2)

    @pytest.mark.parametrize(
        "data",
        [
            {"product": []},
            {"disjoint_union": {"discrete": 1}},
            {"discrete": -1},
            {"discrete": True},
            {"action": {"group": {"named": "C2"}, "kind": "spin"}},
            {"action": {"group": {"named": "C2"}, "table": [[0, 2], [1, 0]]}},
            {"group": {"mul": 5}},
            {"group": {"perm_gens": 5}},
            {"action": {"group": {"named": "C2"}, "table": 5}},
        ],
    )
    def test_malformed(self, data):
        with pytest.raises(FormatError):
            translator.to_groupoid(data)


class TestToMap:
    def test_tables(self):
        f = translator.to_map(
            {
                "source": {"discrete": 2},
                "target": {"discrete": 1},
                "objects": [0, 0],
                "morphisms": [0, 0],
            }
        )

        assert f == groupoids.terminal_map(groupoids.discrete(2))

    def test_homomorphism(self, transposition):
        f = translator.to_map(
            {
                "homomorphism": {
                    "source": {"named": "C2"},
                    "target": {"named": "S3"},
                    "images": [0, transposition],
                }
            }
        )

        assert f.mor_map == (0, transposition)

    def test_subgroup(self, c2_in_s3, transposition):
        f = translator.to_map(
            {
                "subgroup": {
                    "group": {"named": "S3"},
                    "elements": [0, transposition],
                }
            }
        )

        assert f == c2_in_s3

    def test_identity_and_terminal(self, bs3):
        identity = translator.to_map({"identity": {"group": {"named": "S3"}}})
        terminal = translator.to_map({"terminal": {"group": {"named": "S3"}}})

        assert identity == groupoids.identity_map(bs3)
        assert terminal == groupoids.terminal_map(bs3)

    def test_subgroup_must_be_closed(self):
        with pytest.raises(InvalidInputError):
            translator.to_map(
                {"subgroup": {"group": {"named": "S3"}, "elements": [0, 1, 2]}}
            )


class TestToRep:
    @pytest.mark.parametrize(
        "data,dim",
        [
            ({"kind": "trivial", "dim": 2}, 2),
            ({"kind": "regular"}, 6),
            ({"kind": "sign"}, 1),
            ({"kind": "cosets", "subgroup": [0, 1]}, 3),
            (
                {
                    "kind": "permutation",
                    "table": [[0], [0], [0], [0], [0], [0]],
                },
                1,
            ),
        ],
    )
    def test_kinds(self, s3, data, dim):
        assert translator.to_rep(data, s3).dim == dim

    def test_matrices(self, c2):
        rep = translator.to_rep(
            {"kind": "matrices", "images": [[[1]], [[-1]]]}, c2
        )

        assert linalg.to_rows(rep.images[1]) == [[-1]]

    def test_sign_needs_permutations(self):
        group = translator.to_group({"mul": [[0, 1], [1, 0]]})

        with pytest.raises(FormatError):
            translator.to_rep({"kind": "sign"}, group)

    def test_unknown_kind(self, s3):
        with pytest.raises(FormatError):
            translator.to_rep({"kind": "adjoint"}, s3)

    @pytest.mark.parametrize(
        "data",
        [
            {"kind": "permutation"},
            {"kind": "permutation", "table": 5},
            {"kind": "permutation", "table": [[0], [1]]},
            {"kind": "permutation", "table": [[0, 1], [0]]},
            {"kind": "matrices", "images": 5},
        ],
    )
    def test_malformed(self, c2, data):
        with pytest.raises(FormatError):
            translator.to_rep(data, c2)


class TestToSystem:
    def test_constant(self, bs3):
        system = translator.to_system({"constant": 2}, bs3)

        assert system.dims == (2,)

    def test_rep(self, bs3):
        system = translator.to_system({"rep": {"kind": "regular"}}, bs3)

        assert system.dims == (6,)

    def test_explicit(self, bc2):
        system = translator.to_system(
            {"dims": [1], "mats": [[[1]], [[-1]]]}, bc2
        )

        assert linalg.to_rows(system.mats[1]) == [[-1]]

    def test_explicit_must_match_groupoid(self, bc2):
        with pytest.raises(FormatError):
            translator.to_system({"dims": [1], "mats": [[[1]]]}, bc2)

    def test_explicit_matrix_shapes(self, bc2):
        with pytest.raises(FormatError):
            translator.to_system(
                {"dims": [1], "mats": [[[1]], [[1, 0]]]}, bc2
            )

    def test_explicit_must_be_a_functor(self, bc2):
        with pytest.raises(InvalidInputError):
            translator.to_system({"dims": [1], "mats": [[[1]], [[2]]]}, bc2)


class TestToSpan:
    def test_identity(self, bs3):
        span = translator.to_span({"identity": {"group": {"named": "S3"}}})

        assert span.apex == bs3

    def test_legs(self, bs3):
        span = translator.to_span(
            {
                "left": {"identity": {"group": {"named": "S3"}}},
                "right": {"terminal": {"group": {"named": "S3"}}},
            }
        )

        assert span.left_foot == bs3
        assert span.right_foot == groupoids.point()

    def test_compose_checks_feet(self):
        with pytest.raises(CompositionError):
            translator.to_span(
                {
                    "compose": [
                        {"forward": {"terminal": {"discrete": 2}}},
                        {"forward": {"terminal": {"discrete": 2}}},
                    ]
                }
            )

    def test_legs_need_common_apex(self):
        with pytest.raises(InvalidInputError):
            translator.to_span(
                {
                    "left": {"terminal": {"discrete": 2}},
                    "right": {"terminal": {"discrete": 3}},
                }
            )


def test_to_square(c2_in_s3):
    s3 = {"named": "S3"}
    f = {"subgroup": {"group": s3, "elements": [0, 2]}}
    g = {"subgroup": {"group": s3, "elements": [0]}}

    square = translator.to_square({"square": {"f": f, "g": g}})

    assert square.f == c2_in_s3
    assert groupoids.cardinality(square.groupoid) == 3


def test_plain_matrix():
    m = linalg.matrix(2, 2, [[1, sympy.Rational(1, 2)], [0, -3]])

    assert translator.plain_matrix(m) == "1 1/2\n0 -3"
    assert translator.plain_matrix(linalg.zeros(0, 0)) == "[] (0x0)"


def test_web_matrix():
    m = linalg.matrix(1, 2, [[sympy.Rational(-2, 3), 4]])

    assert translator.web_matrix(m) == [["-2/3", "4"]]


def test_dump_sorts_keys():
    assert translator.dump({"b": 1, "a": ["1/2"]}) == '{"a": ["1/2"], "b": 1}'
