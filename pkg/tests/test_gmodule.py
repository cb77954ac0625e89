import pytest
from hypothesis import given
from hypothesis import strategies as st

from nach1.corpus import corpus_modules, get_group, index_two_subgroups, inversion_module
from nach1.errors import IllDefinedAction, NotAnAction, NotEquivariant, NotNormal
from nach1.gmodule import (
    conjugation_module,
    fixed_points,
    make_module,
    make_module_hom,
    quotient_acting_module,
    quotient_action_data,
    quotient_module,
    restrict_module,
    submodule,
    trivial_module,
)
from nach1.group import Subgroup, all_subgroups, center, make_hom, normal_subgroups

MODULES = [nm.module for nm in corpus_modules() if nm.module.G.order * nm.module.A.order <= 64]


def test_trivial_action_is_valid(C2, C3):
    M = make_module(C2, C3, [[0, 1, 2], [0, 1, 2]])
    assert M.is_trivial and M == trivial_module(C2, C3)


def test_inversion_action_is_valid(C2, C3):
    M = make_module(C2, C3, [[0, 1, 2], [0, 2, 1]])
    assert not M.is_trivial


@pytest.mark.parametrize(
    "rows, fragment",
    [
        ([[0, 1, 2, 3], [1, 2, 3, 0]], "automorphism"),
        ([[1, 2, 3, 0], [0, 1, 2, 3]], "identity does not act trivially"),
        ([[0, 1, 2, 3], [0, 0, 2, 2]], "bijectively"),
    ],
)
def test_invalid_actions(C2, C4, rows, fragment):
    with pytest.raises(NotAnAction, match=fragment):
        make_module(C2, C4, rows)


def test_not_a_left_action(C4, C3):
    # generator inverts, but its square also inverts
    inv = [0, 2, 1]
    with pytest.raises(NotAnAction, match="left action"):
        make_module(C4, C3, [[0, 1, 2], inv, inv, inv])


def test_conjugation_module_abelian_is_trivial():
    G = get_group("C2xC4")
    assert conjugation_module(G) == trivial_module(G, G)


def test_conjugation_module_s3(S3):
    M = conjugation_module(S3)
    t = next(x for x in S3.elements if S3.element_order(x) == 2)
    c = next(x for x in S3.elements if S3.element_order(x) == 3)
    assert M.act[t][c] == S3.inv[c]
    assert fixed_points(M) == center(S3)
    assert fixed_points(M).members == (0,)


def test_fixed_points(C2, C3, C4):
    assert fixed_points(trivial_module(C2, C4)).members == (0, 1, 2, 3)
    assert fixed_points(inversion_module(C2, C3, index_two_subgroups(C2)[0])).members == (0,)
    assert fixed_points(inversion_module(C2, C4, index_two_subgroups(C2)[0])).members == (0, 2)


def test_restrict_module(C3, C4):
    M = inversion_module(C4, C3, index_two_subgroups(C4)[0])
    assert restrict_module(M, Subgroup(C4, (0,))).is_trivial
    R = restrict_module(M, Subgroup(C4, (0, 2)))
    assert R.G.order == 2 and R.is_trivial
    assert restrict_module(M, Subgroup(C4, (0, 1, 2, 3))) is M


def test_quotient_acting_module(C3, C4):
    M = inversion_module(C4, C3, index_two_subgroups(C4)[0])
    full = quotient_acting_module(M, Subgroup(C4, (0, 1, 2, 3)))
    assert full.G.order == 1 and full.A.order == 1  # A^G is trivial here
    same = quotient_acting_module(M, Subgroup(C4, (0,)))
    assert same.G.order == 4 and same.act == M.act
    Q = quotient_acting_module(M, Subgroup(C4, (0, 2)))
    assert Q.G.order == 2 and Q.A.order == 3
    assert Q.act[1] == (0, 2, 1)


def test_quotient_acting_module_errors(S3):
    M = trivial_module(S3, get_group("C2"))
    t = next(x for x in S3.elements if S3.element_order(x) == 2)
    with pytest.raises(NotNormal):
        quotient_acting_module(M, Subgroup(S3, tuple(sorted((0, t)))))
    assert issubclass(IllDefinedAction, Exception)


def test_equivariance_is_checked(C2, C4):
    M = inversion_module(C2, C4, index_two_subgroups(C2)[0])
    T = trivial_module(C2, C4)
    ident = make_hom(C4, C4, [0, 1, 2, 3])
    with pytest.raises(NotEquivariant):
        make_module_hom(M, T, ident)
    make_module_hom(M, M, ident)


def test_sub_and_quotient_modules(C2, C4):
    M = inversion_module(C2, C4, index_two_subgroups(C2)[0])
    N = Subgroup(C4, (0, 2))
    S, iota = submodule(M, N)
    Q, pi = quotient_module(M, N)
    assert S.is_trivial and Q.is_trivial
    assert iota.image == (0, 2) and pi.image == (0, 1, 0, 1)


@given(st.sampled_from(MODULES), st.data())
def test_fixed_points_shrink_as_subgroups_grow(M, data):
    subs = all_subgroups(M.G)
    S1 = data.draw(st.sampled_from(subs))
    S2 = data.draw(st.sampled_from([S for S in subs if S1.member_set <= S.member_set]))
    F1, F2 = fixed_points(M, S1), fixed_points(M, S2)
    assert F2.member_set <= F1.member_set
    for a in F2.members:
        for b in F2.members:
            assert M.A.mul[a][b] in F2.member_set


@given(st.sampled_from(MODULES), st.data())
def test_inflating_the_quotient_action_recovers_the_original(M, data):
    N = data.draw(st.sampled_from(normal_subgroups(M.G)))
    Q = quotient_action_data(M, N)
    for g in M.G.elements:
        q = Q.projection.image[g]
        for i, a in enumerate(Q.fixed.members):
            assert Q.fixed.members[Q.module.act[q][i]] == M.act[g][a]
