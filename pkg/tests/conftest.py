import pytest
from hypothesis import HealthCheck, settings

from nach1.corpus import get_group, index_two_subgroups, inversion_module
from nach1.gmodule import trivial_module

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture
def C2():
    return get_group("C2")


@pytest.fixture
def C3():
    return get_group("C3")


@pytest.fixture
def C4():
    return get_group("C4")


@pytest.fixture
def S3():
    return get_group("S3")


def inverting(G, A):
    return inversion_module(G, A, index_two_subgroups(G)[0])


@pytest.fixture
def c2_inv_c3():
    return inverting(get_group("C2"), get_group("C3"))


@pytest.fixture
def c2_inv_c4():
    return inverting(get_group("C2"), get_group("C4"))


@pytest.fixture
def c2_triv_c2():
    return trivial_module(get_group("C2"), get_group("C2"))


def sub_quotient_sequence(M, members):
    """``0 -> N -> A -> A/N -> 0`` for a stable subgroup ``N`` of ``M``."""
    from nach1.gmodule import quotient_module, submodule
    from nach1.group import Subgroup
    from nach1.sequences import make_ses

    N = Subgroup(M.A, tuple(members))
    _, iota = submodule(M, N)
    _, pi = quotient_module(M, N)
    return make_ses(iota, pi)


@pytest.fixture
def c4_central_trivial():
    return sub_quotient_sequence(trivial_module(get_group("C2"), get_group("C4")), (0, 2))


@pytest.fixture
def c4_inverted():
    return sub_quotient_sequence(inverting(get_group("C2"), get_group("C4")), (0, 2))
