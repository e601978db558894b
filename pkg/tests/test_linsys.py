from unittest import mock

import pytest
import sympy

from transchromatic import characters, groupoids, groups, linalg, linsys, spans
from transchromatic.errors import (
    CompositionError,
    InternalInconsistency,
    InvalidInputError,
    ShapeError,
)

C3 = groups.named_group("C3")


@pytest.fixture
def sign_on_bc2(bc2):
    return linsys.LocalSystem(
        bc2, [1], [linalg.identity(1), linalg.scalar(-1)]
    )


def _traces(system):
    return [linalg.trace(m) for m in system.mats]


class TestLocalSystem:
    def test_constant(self, bs3):
        system = linsys.constant(bs3, 2)

        assert system.dims == (2,)
        assert all(linalg.equal(m, linalg.identity(2)) for m in system.mats)

    def test_wrong_number_of_dimensions(self, bc2):
        with pytest.raises(ShapeError):
            linsys.LocalSystem(bc2, [1, 1], [linalg.identity(1)] * 2)

    def test_wrong_matrix_shape(self, bc2):
        with pytest.raises(ShapeError):
            linsys.LocalSystem(bc2, [1], [linalg.identity(2)] * 2)

    def test_identity_must_act_trivially(self, bc2):
        with pytest.raises(InvalidInputError):
            linsys.LocalSystem(bc2, [1], [linalg.scalar(-1)] * 2)

    def test_must_preserve_composition(self, bc2):
        with pytest.raises(InvalidInputError):
            linsys.LocalSystem(
                bc2, [1], [linalg.identity(1), linalg.scalar(2)]
            )

    def test_equality(self, sign_on_bc2, bc2):
        again = linsys.LocalSystem(
            bc2, [1], [linalg.identity(1), linalg.scalar(-1)]
        )

        assert sign_on_bc2 == again
        assert sign_on_bc2 != linsys.constant(bc2)


class TestLinearMapOfSystems:
    def test_must_be_natural(self, sign_on_bc2, bc2):
        with pytest.raises(InternalInconsistency):
            linsys.LinearMapOfSystems(
                sign_on_bc2, linsys.constant(bc2), [linalg.identity(1)]
            )

    def test_zero_map_is_not_invertible(self, sign_on_bc2):
        zero = linsys.LinearMapOfSystems(
            sign_on_bc2, sign_on_bc2, [linalg.zeros(1, 1)]
        )

        with pytest.raises(ShapeError):
            zero.inverse()

    def test_composition_checks_endpoints(self, sign_on_bc2, bc2):
        first = linsys.identity_system_map(sign_on_bc2)
        second = linsys.identity_system_map(linsys.constant(bc2))

        with pytest.raises(CompositionError):
            linsys.compose_system_maps(second, first)

    def test_scaling_map_inverts(self, sign_on_bc2):
        double = linsys.LinearMapOfSystems(
            sign_on_bc2, sign_on_bc2, [linalg.scalar(2)]
        )

        composite = linsys.compose_system_maps(double.inverse(), double)

        assert composite.is_identity()


class TestPushforward:
    def test_constant_along_terminal_map(self, bs3):
        f = groupoids.terminal_map(bs3)
        system = linsys.constant(bs3)

        assert linsys.pushforward_left(f, system).system.dims == (1,)
        assert linsys.pushforward_right(f, system).system.dims == (1,)

    def test_sign_has_no_invariants(self, sign_of_c2):
        system = sign_of_c2.to_local_system()
        f = groupoids.terminal_map(system.base)

        assert linsys.pushforward_right(f, system).system.dims == (0,)
        assert linsys.pushforward_left(f, system).system.dims == (0,)

    def test_regular_rep_has_one_invariant(self, bs3, regular_s3):
        f = groupoids.terminal_map(bs3)

        assert linsys.pushforward_right(f, regular_s3).system.dims == (1,)

    def test_along_inclusion_gives_coset_rep(
        self, c2_in_s3, transposition, three_cycle
    ):
        pushed = linsys.pushforward_left(
            c2_in_s3, linsys.constant(c2_in_s3.source)
        )
        traces = _traces(pushed.system)

        assert pushed.system.dims == (3,)
        assert traces[transposition] == 1
        assert traces[three_cycle] == 0

    def test_along_inclusion_induces_sign(
        self, c2_in_s3, sign_of_c2, transposition, three_cycle
    ):
        for pushforward in (linsys.pushforward_left, linsys.pushforward_right):
            pushed = pushforward(c2_in_s3, sign_of_c2.to_local_system())
            traces = _traces(pushed.system)

            assert traces[0] == 3
            assert traces[transposition] == -1
            assert traces[three_cycle] == 0

    def test_pullback_checks_the_base(self, c2_in_s3):
        with pytest.raises(ShapeError):
            linsys.pullback_system(
                c2_in_s3, linsys.constant(c2_in_s3.source)
            )

    def test_pushforward_checks_the_base(self, c2_in_s3, regular_s3):
        with pytest.raises(ShapeError):
            linsys.pushforward_left(c2_in_s3, regular_s3)


def test_zigzag_composites_are_identities(c2_in_s3, sign_of_c2, regular_s3):
    composites = linsys.zigzag_composites(
        c2_in_s3, sign_of_c2.to_local_system(), regular_s3
    )

    assert sorted(composites) == [
        "shriek-counit",
        "shriek-unit",
        "star-counit",
        "star-unit",
    ]
    assert all(m.is_identity() for m in composites.values())


def test_beck_chevalley_of_identity_square(bc2):
    identity = groupoids.identity_map(bc2)
    square = groupoids.homotopy_pullback(identity, identity)

    shriek = linsys.beck_chevalley_shriek(square, linsys.constant(bc2))

    assert linalg.to_rows(shriek.components[0]) == [[1]]


def test_beck_chevalley_maps_are_invertible(c2_in_s3, bs3):
    square = groupoids.homotopy_pullback(
        c2_in_s3, groupoids.point_inclusion(bs3, 0)
    )
    system = linsys.constant(c2_in_s3.source)

    assert linsys.beck_chevalley_shriek(square, system).is_invertible()
    assert linsys.beck_chevalley_star(square, system).is_invertible()


def test_diagonal_square(c2_in_s3):
    square, delta = linsys.diagonal_square(c2_in_s3)

    assert delta.source == c2_in_s3.source
    assert delta.target == square.groupoid
    assert delta.is_fully_faithful()


def test_composite_comparisons_are_invertible(c2_in_s3, bs3, sign_of_c2):
    shriek, star = linsys.composite_comparison(
        c2_in_s3, groupoids.terminal_map(bs3), sign_of_c2.to_local_system()
    )

    assert shriek.is_invertible()
    assert star.is_invertible()
    assert linsys.transport_system(shriek) == shriek.target
    assert linsys.transport_system(star) == star.target


class TestNorm:
    def test_direct_norm_of_constant_on_bs3(self, bs3):
        f = groupoids.terminal_map(bs3)

        norm = linsys.norm_direct(f, linsys.constant(bs3))

        assert linalg.to_rows(norm.components[0]) == [[6]]

    def test_direct_norm_of_regular_c3(self, c3):
        system = characters.regular_rep(c3).to_local_system()
        f = groupoids.terminal_map(system.base)

        norm = linsys.norm_direct(f, system)

        assert linalg.to_rows(norm.components[0]) == [[1]]

    def test_normalized_norm_matches_direct(self, c2_in_s3, sign_of_c2):
        system = sign_of_c2.to_local_system()

        assert linsys.normalized_norm(c2_in_s3, system) == linsys.norm_direct(
            c2_in_s3, system
        )

    def test_structural_norm_is_invertible(self, bs3, regular_s3):
        f = groupoids.terminal_map(bs3)

        assert linsys.norm_structural(f, regular_s3).is_invertible()

    def test_dualizing_comparison(self, c2_in_s3):
        system = linsys.constant(c2_in_s3.source)

        dualized, comparison = linsys.dualizing_map(c2_in_s3, system)

        assert dualized.dims == system.dims
        assert comparison.is_invertible()

    def test_dualizing_comparison_does_not_use_the_direct_norm(
        self, bc2, sign_on_bc2
    ):
        f = groupoids.terminal_map(bc2)

        with mock.patch.object(
            linsys, "norm_direct", side_effect=AssertionError
        ) as direct:
            _, comparison = linsys.dualizing_map(f, sign_on_bc2)
            linsys.normalized_norm(f, sign_on_bc2)

        assert comparison.is_invertible()
        direct.assert_not_called()

    @pytest.mark.parametrize(
        "f,system",
        [
            (
                groupoids.terminal_map(groupoids.discrete(2)),
                linsys.constant(groupoids.discrete(2)),
            ),
            (
                groupoids.point_inclusion(groupoids.discrete(2), 1),
                linsys.constant(groupoids.point(), 2),
            ),
            (
                groupoids.identity_map(groupoids.delooping(C3)),
                linsys.constant(groupoids.delooping(C3)),
            ),
            (
                groupoids.terminal_map(groupoids.delooping(C3)),
                linsys.constant(groupoids.delooping(C3)),
            ),
        ],
    )
    def test_identified_structural_norm_is_the_direct_norm(self, f, system):
        _, comparison = linsys.dualizing_map(f, system)

        identified = linsys.compose_system_maps(
            linsys.norm_structural(f, system),
            linsys.pushforward_left_map(f, comparison.inverse()),
        )

        assert identified == linsys.norm_direct(f, system)

    def test_faithful_map_goes_through_the_structural_norm(
        self, c2_in_s3, sign_of_c2
    ):
        system = sign_of_c2.to_local_system()

        with mock.patch.object(
            linsys, "norm_structural", wraps=linsys.norm_structural
        ) as structural:
            linsys.normalized_norm(c2_in_s3, system)

        assert structural.call_count >= 1

    def test_norm_of_an_identity_is_the_identity(self, bs3, regular_s3):
        f = groupoids.identity_map(bs3)
        _, comparison = linsys.dualizing_map(f, regular_s3)

        identified = linsys.compose_system_maps(
            linsys.norm_structural(f, regular_s3),
            linsys.pushforward_left_map(f, comparison.inverse()),
        )

        assert identified.is_identity()
        assert linsys.normalized_norm(f, regular_s3).is_identity()


def test_cardinality_linear_of_delooping(bs3):
    assert linsys.cardinality_linear(bs3) == sympy.Rational(1, 6)


def test_cardinality_linear_of_discrete():
    assert linsys.cardinality_linear(groupoids.discrete(2)) == 2


def test_cardinality_linear_of_conjugation(conjugation_s3):
    assert linsys.cardinality_linear(conjugation_s3) == 1


def test_categorical_cardinality_counts_loop_components(conjugation_s3, bs3):
    assert linsys.categorical_cardinality(bs3) == 1
    assert linsys.categorical_cardinality(conjugation_s3) == 3


def test_integrate_linear_agrees_with_fiber_counting(c2_in_s3):
    phi = spans.ClassFunctionSpace(c2_in_s3.source).constant()

    assert linsys.integrate_linear(c2_in_s3, phi) == spans.integrate(
        c2_in_s3, phi
    )
