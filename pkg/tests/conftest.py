import pytest

from superchar import builtin_group, dixon_character_table, make_family


@pytest.fixture(scope="session")
def s3():
    return builtin_group("s3")


@pytest.fixture(scope="session")
def s4():
    return builtin_group("s4")


@pytest.fixture(scope="session")
def s3_table(s3):
    return dixon_character_table(s3)


@pytest.fixture(scope="session")
def s4_table(s4):
    return dixon_character_table(s4)


@pytest.fixture(scope="session")
def s3_classical(s3):
    return make_family(s3, "classical")


@pytest.fixture(scope="session")
def s3_maximal(s3):
    return make_family(s3, "maximal")


@pytest.fixture(scope="session")
def s4_classical(s4):
    return make_family(s4, "classical")
