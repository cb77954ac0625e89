import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import inverting, sub_quotient_sequence
from nach1.abelian import AbelianStructure
from nach1.cohomology import (
    H1,
    cohomologous,
    compose_pointed,
    delta0,
    delta1,
    enumerate_derivations,
    factor_set_violation,
    h0,
    h1,
    hu_coboundary,
    hu_cohomology,
    induced_h0,
    induced_h1,
    make_cochain,
    make_derivation,
    principal_derivation,
    twist,
    zero_cochain,
)
from nach1.config import override_limits
from nach1.corpus import corpus_modules, get_group
from nach1.errors import ModuleMismatch, NotADerivation, NotAbelian, NotCentral, SizeLimitExceeded
from nach1.gmodule import (
    compose_module_homs,
    conjugation_module,
    identity_module_hom,
    make_module_hom,
    trivial_module,
)
from nach1.group import make_hom
from nach1.sequences import make_section

SMALL = [nm.module for nm in corpus_modules() if nm.module.A.order ** nm.module.G.order <= 5000]
ABELIAN = [M for M in SMALL if M.A.is_abelian]


def test_trivial_group_has_one_derivation():
    M = trivial_module(get_group("trivial"), get_group("C5"))
    assert [d.values for d in enumerate_derivations(M)] == [(0,)]


def test_derivation_counts(c2_triv_c2, c2_inv_c3):
    assert [d.values for d in enumerate_derivations(c2_triv_c2)] == [(0, 0), (0, 1)]
    assert [d.values for d in enumerate_derivations(c2_inv_c3)] == [(0, 0), (0, 1), (0, 2)]


def test_make_derivation_rejects_non_cocycle(c2_triv_c2):
    with pytest.raises(NotADerivation):
        make_derivation(c2_triv_c2, [1, 0])


def test_derivation_cap():
    M = trivial_module(get_group("S4"), get_group("C5"))
    with override_limits(max_enum=10):
        with pytest.raises(SizeLimitExceeded):
            enumerate_derivations(M)


@given(st.sampled_from(SMALL))
def test_enumeration_matches_oracle(M):
    assert [d.values for d in enumerate_derivations(M)] == oracles.derivations(M)


def test_cohomologous_examples(c2_inv_c3, c2_triv_c2):
    a = make_derivation(c2_inv_c3, [0, 1])
    b = make_derivation(c2_inv_c3, [0, 0])
    assert cohomologous(a, a) == 0
    assert cohomologous(a, b) == 2
    assert cohomologous(make_derivation(c2_triv_c2, [0, 1]), make_derivation(c2_triv_c2, [0, 0])) is None


def test_cohomologous_needs_same_module(c2_inv_c3, c2_triv_c2):
    with pytest.raises(ModuleMismatch):
        cohomologous(make_derivation(c2_inv_c3, [0, 0]), make_derivation(c2_triv_c2, [0, 0]))


@given(st.sampled_from(SMALL), st.data())
def test_cohomologous_witness_is_valid_and_least(M, data):
    ders = enumerate_derivations(M)
    a = data.draw(st.sampled_from(ders))
    b = data.draw(st.sampled_from(ders))
    w = cohomologous(a, b)
    valid = [x for x in M.A.elements if twist(a, x).values == b.values]
    assert w == (valid[0] if valid else None)


@given(st.sampled_from(SMALL), st.data())
def test_cohomologous_is_an_equivalence(M, data):
    ders = enumerate_derivations(M)
    a, b, c = (data.draw(st.sampled_from(ders)) for _ in range(3))
    assert cohomologous(a, a) is not None
    assert (cohomologous(a, b) is None) == (cohomologous(b, a) is None)
    if cohomologous(a, b) is not None and cohomologous(b, c) is not None:
        assert cohomologous(a, c) is not None


def test_principal_derivations_form_the_basepoint(S3):
    M = conjugation_module(S3)
    H = h1(M)
    for a in S3.elements:
        assert H.class_of(principal_derivation(M, a).values) is H.basepoint


def test_h0_examples(C2, C3, c2_inv_c3, S3):
    assert h0(trivial_module(C2, C3)).members == (0, 1, 2)
    assert h0(c2_inv_c3).members == (0,)
    assert h0(conjugation_module(S3)).members == (0,)


def test_h1_sizes(c2_inv_c3, c2_triv_c2, C2, S3):
    assert len(h1(c2_inv_c3)) == 1
    assert len(h1(c2_triv_c2)) == 2
    H = h1(trivial_module(C2, S3))
    assert H.derivation_count == 4
    assert [len(c) for c in H] == [1, 3]


def test_h1_basepoint_first(c2_triv_c2):
    H = h1(c2_triv_c2)
    assert H.basepoint.key == (0, 0)
    assert H.pointed.basepoint == (0, 0)


@given(st.sampled_from(SMALL))
def test_h1_partition_matches_oracle(M):
    ours = [[d.values for d in c.members] for c in h1(M)]
    assert ours == oracles.h1_classes(M)
    for c in h1(M):
        assert c.representative.values == min(d.values for d in c.members)


def small_c4_inclusion():
    C2, C4 = get_group("C2"), get_group("C4")
    MA = trivial_module(C2, C2)
    MB = trivial_module(C2, C4)
    return make_module_hom(MA, MB, make_hom(C2, C4, [0, 2]))


def test_induced_h0_examples(C2, C4):
    f = small_c4_inclusion()
    assert induced_h0(f).mapping == {0: 0, 1: 2}
    assert induced_h0(identity_module_hom(f.cod)).mapping == {a: a for a in C4.elements}
    M = inverting(C2, C4)
    proj = make_module_hom(M, trivial_module(C2, C2), make_hom(C4, C2, [0, 1, 0, 1]))
    assert set(induced_h0(proj).mapping.values()) == {0}


def test_induced_h1_examples(C2, C4):
    f = small_c4_inclusion()
    F = induced_h1(f)
    assert F((0, 1)) == (0, 2)
    assert F.is_injective
    ident = induced_h1(identity_module_hom(f.cod))
    assert all(k == v for k, v in ident.mapping.items())
    to_trivial = make_module_hom(f.cod, trivial_module(C2, get_group("trivial")), make_hom(C4, get_group("trivial"), [0] * 4))
    assert set(induced_h1(to_trivial).mapping.values()) == {(0, 0)}


def test_induced_h1_composes(C2):
    C4, C8 = get_group("C4"), get_group("C8")
    M2, M4, M8 = (trivial_module(C2, X) for X in (C2, C4, C8))
    f = make_module_hom(M2, M4, make_hom(C2, C4, [0, 2]))
    g = make_module_hom(M4, M8, make_hom(C4, C8, [0, 2, 4, 6]))
    gf = compose_module_homs(g, f)
    assert induced_h1(gf).mapping == compose_pointed(induced_h1(g), induced_h1(f)).mapping


def test_hu_coboundary_examples(c2_triv_c2):
    assert hu_coboundary(zero_cochain(c2_triv_c2, 0)).values == (0, 0)
    kappa = make_cochain(c2_triv_c2, 1, [0, 1])
    assert hu_coboundary(kappa).values == (0, 0, 0, 0)


def test_hu_coboundary_needs_abelian(C2, S3):
    with pytest.raises(NotAbelian):
        hu_coboundary(zero_cochain(trivial_module(C2, S3), 1))


@given(st.sampled_from(ABELIAN), st.integers(0, 2), st.data())
def test_coboundary_squares_to_zero(M, n, data):
    size = M.G.order**n
    c = make_cochain(M, n, data.draw(st.lists(st.integers(0, M.A.order - 1), min_size=size, max_size=size)))
    d = hu_coboundary(c)
    assert d.values == oracles.coboundary(M, n, c.values)
    assert not any(hu_coboundary(d).values)


def test_hu_cohomology_examples(c2_triv_c2, c2_inv_c3):
    triv = trivial_module(get_group("trivial"), get_group("C6"))
    assert hu_cohomology(triv, 0).cyclic_orders == (6,)
    assert all(hu_cohomology(triv, n).order == 1 for n in (1, 2, 3))
    assert hu_cohomology(c2_triv_c2, 2) == AbelianStructure((2,))
    assert hu_cohomology(c2_inv_c3, 1).order == len(h1(c2_inv_c3)) == 1


def test_hu_cohomology_s3_degree_three():
    assert hu_cohomology(trivial_module(get_group("S3"), get_group("C6")), 3).cyclic_orders == (6,)


def test_hu_cohomology_rank_cap(c2_triv_c2):
    with pytest.raises(SizeLimitExceeded):
        hu_cohomology(c2_triv_c2, 3, max_rank=4)


@given(st.sampled_from([M for M in ABELIAN if M.A.order ** (M.G.order**2) <= 5000]), st.integers(0, 2))
def test_hu_cohomology_order_matches_enumeration(M, n):
    assert hu_cohomology(M, n).order == oracles.cohomology_order(M, n)


@given(st.sampled_from(ABELIAN))
def test_h1_counts_agree_across_engines(M):
    assert hu_cohomology(M, 1).order == len(h1(M))


def test_delta0_examples(c4_inverted):
    S = c4_inverted
    H1A = h1(S.A)
    assert delta0(S, 0) is H1A.basepoint
    k = delta0(S, 1)
    assert k is not H1A.basepoint
    assert k.key == (0, 1)  # value 2 of C4 is element 1 of {0, 2}
    T = sub_quotient_sequence(trivial_module(get_group("trivial"), get_group("C4")), (0, 2))
    assert delta0(T, 1) is h1(T.A).basepoint


def test_delta1_examples(c4_central_trivial):
    S = c4_central_trivial
    H1C = h1(S.C)
    s = make_section(S, [0, 1])
    nontrivial = delta1(S, H1C[1], s)
    assert nontrivial.factor_set(1, 1) == 1
    assert not nontrivial.is_coboundary
    assert nontrivial.structure == AbelianStructure((2,))
    assert factor_set_violation(nontrivial.factor_set) is None
    for sec in ([0, 1], [0, 3]):
        assert delta1(S, H1C.basepoint, make_section(S, sec)).is_coboundary


def test_delta1_needs_central(S3):
    from nach1.corpus import corpus_sequences

    S = next(ns.sequence for ns in corpus_sequences() if not ns.sequence.central)
    with pytest.raises(NotCentral):
        delta1(S, h1(S.C).basepoint)


def test_h1_is_an_h1_object(c2_triv_c2):
    assert isinstance(h1(c2_triv_c2), H1)
