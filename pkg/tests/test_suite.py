from fractions import Fraction
from unittest import mock

import pytest

from transchromatic import groupoids, groups, linsys, suite
from transchromatic.errors import (
    CapacityError,
    InvalidInputError,
    TheoremViolation,
)


@pytest.fixture
def fixtures():
    return mock.sentinel.fixtures


def test_every_golden_is_registered():
    for name, _, _ in suite.GOLDENS:
        assert f"golden: {name}" in suite.CHECKS


@pytest.mark.parametrize(
    "name",
    [
        "golden: cardinality BC6",
        "golden: 2-adic loops of BS3",
        "golden: cli cardinality of BC6",
        "golden: cli chrom-card of S3",
        "golden: cli induce-check of the sign of C2",
    ],
)
def test_golden_passes(name, fixtures):
    result = suite.run_check(name, fixtures)

    assert result == suite.CheckResult(name, 1, [], passed=True)


def test_failing_case_is_recorded(fixtures, caplog):
    def broken(fx):
        yield "always false", lambda: False

    with mock.patch.dict(suite.CHECKS, {"broken": broken}):
        result = suite.run_check("broken", fixtures)

    assert not result.passed
    assert result.failures == ["always false"]
    assert "Check broken failed 1 of 1 cases" in caplog.text


def test_errors_fail_only_their_case(fixtures):
    def raising():
        raise TheoremViolation("not local")

    def mixed(fx):
        yield "raises", raising
        yield "holds", lambda: True

    with mock.patch.dict(suite.CHECKS, {"mixed": mixed}):
        result = suite.run_check("mixed", fixtures)

    assert result.cases == 2
    assert result.failures == ["raises: not local"]


def test_capacity_errors_stop_the_run(fixtures, caplog):
    def too_big():
        raise CapacityError(200, 128)

    def capped(fx):
        yield "too big", too_big
        yield "holds", lambda: True

    with mock.patch.dict(suite.CHECKS, {"capped": capped}):
        with pytest.raises(CapacityError):
            suite.run_check("capped", fixtures)

    assert "Check capped exceeded the isomorphism bound" in caplog.text


def test_check_timing_is_logged(fixtures, caplog):
    suite.run_check("golden: cardinality BC6", fixtures)

    assert "Check golden: cardinality BC6 took" in caplog.text


def test_select_checks_by_prefix():
    selected = suite.select_checks(["golden: cli"])

    assert selected == [
        "golden: cli cardinality of BC6",
        "golden: cli chrom-card of S3",
        "golden: cli induce-check of the sign of C2",
    ]


def test_select_all_checks():
    assert suite.select_checks(None) == list(suite.CHECKS)


def test_select_unknown_check():
    with pytest.raises(InvalidInputError):
        suite.select_checks(["no such check"])


@pytest.mark.parametrize("parallelism", [1, 3])
def test_run_suite_keeps_check_order(parallelism):
    with mock.patch.object(suite, "Fixtures") as fixtures_mock:
        results = suite.run_suite(
            seed=7, parallelism=parallelism, only=["golden: cli"]
        )

    fixtures_mock.assert_called_once_with(seed=7, span_pairs=100, bound=None)
    assert [r.name for r in results] == suite.select_checks(["golden: cli"])
    assert all(r.passed for r in results)


def test_fixtures_are_deterministic():
    first = suite.Fixtures(seed=3, span_pairs=5)
    second = suite.Fixtures(seed=3, span_pairs=5)

    assert first.groupoids == second.groupoids
    assert first.maps == second.maps
    assert len(first.span_pairs) == 5


@pytest.mark.slow
def test_full_suite_passes():
    results = suite.run_suite(span_pairs=10, parallelism=2)

    assert [r.failures for r in results if not r.passed] == []


@pytest.mark.parametrize(
    "name",
    [
        "pullback-symmetric",
        "loops-of-groups",
        "p-loops-full",
        "p-loops-sum-product",
        "integration-functoriality",
        "composite-pushforward",
        "restriction-square",
        "norm-agrees-direct",
        "normalized-norm",
    ],
)
def test_property_checks_are_registered(name):
    assert name in suite.CHECKS


@pytest.fixture
def small_fixtures(c2_in_s3, a3_in_s3, bc2, bs3):
    fx = mock.Mock()
    fx.bound = groups.DEFAULT_ISOMORPHISM_BOUND
    fx.groups = [groups.named_group(name) for name in ("S3", "Q8", "D4")]
    fx.groupoids = [bc2, bs3, groupoids.discrete(2)]
    fx.maps = [
        c2_in_s3,
        a3_in_s3,
        groupoids.terminal_map(bs3),
        groupoids.identity_map(bs3),
    ]
    fx.squares = [
        (groupoids.homotopy_pullback(c2_in_s3, a3_in_s3), None),
        (groupoids.homotopy_pullback(c2_in_s3, c2_in_s3), None),
    ]
    union = groupoids.disjoint_union([bc2, bs3])
    fx.unions = [(union, [bc2, bs3])]
    fx.products = [(bc2, groupoids.discrete(2))]
    fx.systems_on.side_effect = lambda grpd: [linsys.constant(grpd)]
    return fx


@pytest.mark.parametrize(
    "name",
    [
        "pullback-symmetric",
        "loops-of-groups",
        "p-loops-full",
        "p-loops-sum-product",
        "integration-functoriality",
        "composite-pushforward",
    ],
)
def test_property_check_passes_on_small_fixtures(name, small_fixtures):
    result = suite.run_check(name, small_fixtures)

    assert result.cases > 0
    assert result.failures == []


def test_loops_follow_conjugacy_classes(s3):
    assert suite._loops_follow_conjugacy(s3)
    assert suite._loops_follow_conjugacy(groups.named_group("A4"))


def test_p_part_of_free_loop_is_a_full_subgroupoid(bs3):
    part = suite._p_part_of_free_loop(bs3, 3)

    assert len(part.objects) == 3
    assert groupoids.cardinality(part) == Fraction(1, 2)


def test_identified_norm_of_a_subgroup_inclusion(c2_in_s3, sign_of_c2):
    system = sign_of_c2.to_local_system()

    identified = suite._identified_norm(c2_in_s3, system)

    assert identified == linsys.norm_direct(c2_in_s3, system)
