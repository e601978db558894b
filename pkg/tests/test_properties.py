from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from transchromatic import (
    characters,
    groupoids,
    groups,
    linalg,
    spans,
    translator,
)

SMALL_GROUPS = ("C1", "C2", "C3", "C4", "V4", "S3", "C6")

small_groupoids = st.one_of(
    st.sampled_from(SMALL_GROUPS).map(
        lambda name: groupoids.delooping(groups.named_group(name))
    ),
    st.integers(min_value=0, max_value=3).map(groupoids.discrete),
)

S3_SUBGROUPS = groups.named_group("S3").subgroups()


@settings(deadline=None, max_examples=30)
@given(small_groupoids, small_groupoids)
def test_cardinality_is_additive(first, second):
    union = groupoids.disjoint_union([first, second])

    assert groupoids.cardinality(union) == groupoids.cardinality(
        first
    ) + groupoids.cardinality(second)


@settings(deadline=None, max_examples=30)
@given(small_groupoids, small_groupoids)
def test_cardinality_is_multiplicative(first, second):
    prod = groupoids.product(first, second)

    assert groupoids.cardinality(prod) == groupoids.cardinality(
        first
    ) * groupoids.cardinality(second)


@settings(deadline=None, max_examples=20)
@given(
    st.sampled_from(SMALL_GROUPS),
    st.sampled_from((2, 3)),
    st.integers(min_value=0, max_value=2),
)
def test_chromatic_cardinality_counts_commuting_tuples(name, p, n):
    group = groups.named_group(name)

    looped = characters.chromatic_cardinality(groupoids.delooping(group), p, n)

    assert looped == characters.chromatic_cardinality_oracle(group, p, n)


@given(st.fractions(max_denominator=1000))
def test_rationals_read_back_what_they_print(x):
    text = translator.format_rational(translator.to_rational(str(x)))

    assert Fraction(text) == x


@settings(deadline=None, max_examples=20)
@given(st.sampled_from(S3_SUBGROUPS), st.sampled_from(S3_SUBGROUPS))
def test_linearization_respects_composition(inner, outer):
    s3 = groups.named_group("S3")
    f, _ = characters.inclusion_map(s3, inner)
    g, _ = characters.inclusion_map(s3, outer)
    first = spans.span_from_map_fwd(f)
    second = spans.span_from_map_bwd(g)

    composite = spans.span_compose(first, second)

    assert linalg.equal(
        spans.linearize(composite),
        linalg.multiply(spans.linearize(second), spans.linearize(first)),
    )
