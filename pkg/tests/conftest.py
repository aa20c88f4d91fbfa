import pytest
from hypothesis import HealthCheck, settings

from hurwitz_lab.groups import builtin_group

settings.register_profile(
    "repo",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


def pair(group, rep):
    G = builtin_group(group)
    return G, G.conjugacy_class(G.element_index(rep))


@pytest.fixture(scope="session")
def s3():
    return pair("S3", "(12)")


@pytest.fixture(scope="session")
def s4():
    return pair("S4", "(12)")


@pytest.fixture(scope="session")
def z2():
    return pair("Z2", "1")


@pytest.fixture(scope="session")
def z4():
    return pair("Z4", "1")


@pytest.fixture(scope="session")
def a4():
    return pair("A4", "(123)")


@pytest.fixture(scope="session")
def d5():
    return pair("D5", "(25)(34)")


@pytest.fixture(autouse=True, scope="session")
def _isolated_cache(tmp_path_factory):
    # keep orbit-table cache files out of the user's home during tests
    import os

    from hurwitz_lab.braids import CACHE_ENV

    old = os.environ.get(CACHE_ENV)
    os.environ[CACHE_ENV] = str(tmp_path_factory.mktemp("orbit-cache"))
    yield
    if old is None:
        os.environ.pop(CACHE_ENV, None)
    else:
        os.environ[CACHE_ENV] = old
