import pytest

from transchromatic import characters, groupoids, groups, utils


@pytest.fixture
def caplog(caplog):
    caplog.set_level(utils.TRACE)
    return caplog


@pytest.fixture
def s3():
    return groups.named_group("S3")


@pytest.fixture
def c2():
    return groups.named_group("C2")


@pytest.fixture
def c3():
    return groups.named_group("C3")


@pytest.fixture
def bs3(s3):
    return groupoids.delooping(s3)


@pytest.fixture
def bc2(c2):
    return groupoids.delooping(c2)


@pytest.fixture
def conjugation_s3(s3):
    return groupoids.conjugation_groupoid(s3)


@pytest.fixture
def transposition(s3):
    return s3.perms.index((1, 0, 2))


@pytest.fixture
def three_cycle(s3):
    return s3.perms.index((1, 2, 0))


@pytest.fixture
def c2_in_s3(s3, transposition):
    """The inclusion ``BC2 -> BS3`` of the subgroup ``{e, (0 1)}``."""
    inclusion, _ = characters.inclusion_map(s3, [0, transposition])
    return inclusion


@pytest.fixture
def a3_in_s3(s3, three_cycle):
    inclusion, _ = characters.inclusion_map(s3, s3.closure([three_cycle]))
    return inclusion


@pytest.fixture
def sign_of_c2(s3, transposition):
    _, subgroup = characters.inclusion_map(s3, [0, transposition])
    return characters.sign_rep(subgroup)


@pytest.fixture
def regular_s3(s3):
    return characters.regular_rep(s3).to_local_system()
