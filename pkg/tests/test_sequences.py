import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import inverting, sub_quotient_sequence
from nach1.cohomology import compose_pointed, h1
from nach1.corpus import corpus_modules, corpus_sequences, get_group
from nach1.errors import NotASection, NotCentral, NotCocompatible, NotEquivariant, NotExact, NotNormal
from nach1.gmodule import GModuleHom, identity_module_hom, make_module_hom, product_module, restrict_module, trivial_module
from nach1.group import Subgroup, all_subgroups, compose, identity_hom, make_hom, trivial_subgroup, whole_group
from nach1.sequences import (
    alternative_sections,
    choose_section,
    cocompatible_star,
    inf_res_check,
    inflation_map,
    make_ses,
    make_section,
    quotient_action_on_h1N,
    restriction_map,
    seven_term,
    six_term,
)

SEQUENCES = [ns.sequence for ns in corpus_sequences()]
CENTRAL = [S for S in SEQUENCES if S.central]
DESK = [nm.module for nm in corpus_modules() if nm.module.G.order * nm.module.A.order <= 48]

SIX_NAMES = ["H0(G,A)", "iota0* injective", "H0(G,B)", "H0(G,C)", "H1(G,A)", "H1(G,B)"]


def three_cycle_subgroup(S3):
    return Subgroup(S3, tuple(x for x in S3.elements if S3.element_order(x) in (1, 3)))


def test_identity_sequence_with_trivial_kernel(C2):
    A = get_group("S3")
    M = trivial_module(C2, A)
    one = trivial_module(C2, get_group("trivial"))
    iota = make_module_hom(one, M, make_hom(one.A, A, [0]))
    S = make_ses(iota, identity_module_hom(M))
    assert S.central
    assert choose_section(S).values == tuple(A.elements)


def test_c4_sequence_is_central(c4_inverted, c4_central_trivial):
    assert c4_inverted.central and c4_central_trivial.central
    assert choose_section(c4_central_trivial).values == (0, 1)


def test_doubling_then_reduction(C2):
    C4 = get_group("C4")
    MA, MB = trivial_module(C2, C2), trivial_module(C2, C4)
    iota = make_module_hom(MA, MB, make_hom(C2, C4, [0, 2]))
    pi = make_module_hom(MB, MA, make_hom(C4, C2, [0, 1, 0, 1]))
    S = make_ses(iota, pi)
    assert S.iota_inverse == {0: 0, 2: 1}


def test_not_exact_witnesses(C2):
    C4 = get_group("C4")
    MA, MB = trivial_module(C2, C2), trivial_module(C2, C4)
    zero = make_module_hom(MA, MB, make_hom(C2, C4, [0, 0]))
    pi = make_module_hom(MB, MA, make_hom(C4, C2, [0, 1, 0, 1]))
    with pytest.raises(NotExact, match="not injective"):
        make_ses(zero, pi)
    iota = make_module_hom(MA, MB, make_hom(C2, C4, [0, 2]))
    with pytest.raises(NotExact, match="not surjective"):
        make_ses(iota, make_module_hom(MB, MA, make_hom(C4, C2, [0, 0, 0, 0])))
    MC = trivial_module(C2, C4)
    with pytest.raises(NotExact, match="kernel"):
        make_ses(iota, identity_module_hom(MC))


def test_sequences_must_share_the_acting_group(C2, C3):
    C4 = get_group("C4")
    MA = trivial_module(C2, C2)
    MB = trivial_module(C2, C4)
    MC = trivial_module(C3, C2)
    iota = make_module_hom(MA, MB, make_hom(C2, C4, [0, 2]))
    # built directly: make_module_hom would refuse the mismatch itself
    pi = GModuleHom(MB, MC, make_hom(C4, C2, [0, 1, 0, 1]))
    with pytest.raises(NotEquivariant):
        make_ses(iota, pi)


def test_sections(c4_central_trivial):
    S = c4_central_trivial
    with pytest.raises(NotASection):
        make_section(S, [0, 2])
    secs = alternative_sections(S)
    assert [s.values for s in secs] == [(0, 1), (0, 3), (2, 3)]


def test_section_for_trivial_quotient(C2):
    M = trivial_module(C2, get_group("C4"))
    S = sub_quotient_sequence(M, (0, 1, 2, 3))
    assert choose_section(S).values == (0,)


def test_six_term_trivial_group():
    S = sub_quotient_sequence(trivial_module(get_group("trivial"), get_group("C4")), (0, 2))
    seq = six_term(S)
    assert [j.name for j in seq.report.junctions] == SIX_NAMES
    assert seq.report.all_exact
    assert [len(seq.terms[k]) for k in ("H0(G,A)", "H0(G,B)", "H0(G,C)")] == [2, 4, 2]


def test_six_term_flagship(c4_inverted):
    seq = six_term(c4_inverted)
    assert seq.report.all_exact
    p0 = seq.maps["pi0*"]
    assert p0.image() == [0]
    d0 = seq.maps["delta0"]
    assert d0(1) != d0(0)
    assert set(seq.maps["iota1*"].kernel()) == {d0(0), d0(1)}


def test_six_term_split_sequence(C2):
    MA = trivial_module(C2, C2)
    MB = product_module(MA, inverting(C2, get_group("C3")))
    S = sub_quotient_sequence(MB, [b for b in MB.A.elements if MB.A.element_order(b) <= 2])
    seq = six_term(S)
    assert seq.report.all_exact
    assert set(seq.maps["delta0"].mapping.values()) == {seq.terms["H1(G,A)"].basepoint}


def test_seven_term_example(c4_central_trivial):
    seq = seven_term(c4_central_trivial)
    assert len(seq.report) == 7 and seq.report.all_exact
    assert seq.maps["pi1*"].image() == [(0, 0)]
    assert seq.maps["delta1"].kernel() == [(0, 0)]
    j = seq.report.junctions[-1]
    assert j.name == "H1(G,C)" and j.holds and j.witness is None


def test_seven_term_split_sequence(C2):
    M = trivial_module(C2, get_group("V4"))
    S = sub_quotient_sequence(M, (0, 1))
    seq = seven_term(S)
    assert seq.report.all_exact
    assert seq.maps["pi1*"].is_surjective
    assert set(seq.maps["delta1"].mapping.values()) == {0}


def test_seven_term_trivial_group():
    S = sub_quotient_sequence(trivial_module(get_group("trivial"), get_group("C4")), (0, 2))
    seq = seven_term(S)
    assert seq.report.all_exact and len(seq.terms["H1(G,C)"]) == 1


def test_seven_term_needs_central():
    S = next(S for S in SEQUENCES if not S.central)
    with pytest.raises(NotCentral):
        seven_term(S)


def test_report_serializes(c4_central_trivial):
    d = seven_term(c4_central_trivial).report.to_dict()
    assert d["all_exact"] is True and len(d["junctions"]) == 7


@given(st.sampled_from(SEQUENCES))
def test_six_term_is_exact_on_corpus(S):
    assert six_term(S).report.all_exact


@given(st.sampled_from(CENTRAL))
def test_seven_term_verdicts_do_not_depend_on_section(S):
    verdicts = {tuple(j.holds for j in seven_term(S, s).report.junctions) for s in alternative_sections(S)}
    assert verdicts == {(True,) * 7}


def test_restriction_examples(C4):
    M = trivial_module(C4, get_group("C2"))
    res = restriction_map(M, Subgroup(C4, (0, 2)))
    assert set(res.mapping.values()) == {(0, 0)}
    assert all(k == v for k, v in restriction_map(M, whole_group(C4)).mapping.items())
    assert len(set(restriction_map(M, trivial_subgroup(C4)).mapping.values())) == 1


def test_inflation_examples(C4):
    M = trivial_module(C4, get_group("C2"))
    inf = inflation_map(M, Subgroup(C4, (0, 2)))
    assert len(inf.dom) == 2 and inf.is_surjective and inf.is_injective
    assert inflation_map(M, trivial_subgroup(C4)).is_injective
    assert len(inflation_map(M, whole_group(C4)).dom) == 1


def test_cocompatible_identity(c2_inv_c4):
    M = c2_inv_c4
    star = cocompatible_star(M, M, identity_hom(M.G), identity_hom(M.A))
    assert all(k == v for k, v in star.mapping.items())


def test_cocompatible_rejects_incompatible_pair(c2_inv_c4, C2):
    T = trivial_module(C2, get_group("C4"))
    with pytest.raises(NotCocompatible):
        cocompatible_star(c2_inv_c4, T, identity_hom(C2), identity_hom(T.A))


@given(st.sampled_from(DESK), st.data())
def test_restrictions_compose(M, data):
    subs = all_subgroups(M.G)
    H = data.draw(st.sampled_from(subs))
    K = data.draw(st.sampled_from([K for K in subs if K.member_set <= H.member_set]))
    MH = restrict_module(M, H)
    KinH = Subgroup(MH.G, tuple(H.position[k] for k in K.members))
    MK = restrict_module(MH, KinH)
    idA = identity_hom(M.A)
    first = cocompatible_star(M, MH, H.inclusion, idA)
    second = cocompatible_star(MH, MK, KinH.inclusion, idA)
    both = cocompatible_star(M, MK, compose(H.inclusion, KinH.inclusion), idA)
    assert compose_pointed(second, first).mapping == both.mapping


def test_quotient_action_s3(S3):
    M = trivial_module(S3, get_group("C3"))
    qa = quotient_action_on_h1N(M, three_cycle_subgroup(S3))
    assert len(qa.h1) == 3 and qa.quotient.order == 2
    assert len(qa.fixed_points()) == 1
    keys = [c.key for c in qa.h1]
    assert qa.act(1, keys[1]) == keys[2]


def test_quotient_action_trivial_cases(S3, C4):
    M = trivial_module(C4, get_group("C2"))
    qa = quotient_action_on_h1N(M, Subgroup(C4, (0, 2)))
    assert len(qa.fixed_points()) == len(qa.h1)
    full = quotient_action_on_h1N(inverting(S3, get_group("C3")), whole_group(S3))
    assert full.quotient.order == 1


def test_quotient_action_needs_normal(S3):
    t = next(x for x in S3.elements if S3.element_order(x) == 2)
    with pytest.raises(NotNormal):
        quotient_action_on_h1N(trivial_module(S3, get_group("C2")), Subgroup(S3, (0, t)))


def test_inf_res_examples(C4, S3):
    rep = inf_res_check(trivial_module(C4, get_group("C2")), Subgroup(C4, (0, 2)))
    assert rep.all_exact and len(rep) == 3
    assert len(rep.junctions[1].right) == 2
    assert inf_res_check(trivial_module(C4, get_group("C2")), trivial_subgroup(C4)).all_exact
    M = trivial_module(S3, get_group("C3"))
    rep = inf_res_check(M, three_cycle_subgroup(S3))
    assert rep.all_exact and len(h1(M)) == 1


@given(st.sampled_from(DESK), st.data())
def test_inflation_restriction_on_corpus(M, data):
    from nach1.group import normal_subgroups

    N = data.draw(st.sampled_from(normal_subgroups(M.G)))
    assert inf_res_check(M, N).all_exact
