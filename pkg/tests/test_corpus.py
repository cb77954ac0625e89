import pytest

import oracles
from nach1.bruteforce import cochain_count, cohomology_by_enumeration
from nach1.cohomology import hu_cohomology
from nach1.corpus import (
    GROUP_NAMES,
    corpus_modules,
    corpus_normal_pairs,
    corpus_semidirect_modules,
    corpus_sequences,
    cyclic_group,
    get_group,
    get_module,
)
from nach1.errors import InputError
from nach1.gmodule import make_module
from nach1.group import is_normal, make_group_from_table


@pytest.mark.parametrize("name", GROUP_NAMES)
def test_corpus_groups_pass_full_validation(name):
    G = get_group(name)
    again = make_group_from_table([list(r) for r in G.mul], trust_table=False)
    assert again.order == G.order
    assert list(G.element_orders) == oracles.element_orders(G.mul)


@pytest.mark.parametrize(
    "name, order, abelian",
    [("trivial", 1, True), ("C16", 16, True), ("V4", 4, True), ("S3", 6, False), ("S4", 24, False), ("D4", 8, False), ("Q8", 8, False)],
)
def test_named_groups(name, order, abelian):
    G = get_group(name)
    assert (G.order, G.is_abelian) == (order, abelian)


def test_q8_has_one_involution():
    Q = get_group("Q8")
    assert sum(1 for x in Q.elements if Q.element_order(x) == 2) == 1


def test_unknown_names():
    with pytest.raises(InputError):
        get_group("C0")
    with pytest.raises(InputError):
        get_module("no such module")
    with pytest.raises(InputError):
        cyclic_group(0)


def test_every_corpus_module_revalidates():
    names = [nm.name for nm in corpus_modules()]
    assert len(names) == len(set(names))
    for nm in corpus_modules():
        M = nm.module
        assert make_module(M.G, M.A, M.act) == M
        assert get_module(nm.name) == M


def test_instance_counts():
    seqs = corpus_sequences()
    assert len(seqs) >= 50
    assert sum(1 for ns in seqs if ns.sequence.central) >= 20
    sd = corpus_semidirect_modules()
    assert len(sd) >= 30
    assert all(nm.module.G.order <= 8 and nm.module.A.order <= 9 for nm in sd)
    assert any(not nm.module.A.is_abelian for nm in sd)
    assert all(ns.sequence.B.A.order <= 16 for ns in seqs)


def test_normal_pairs_are_normal():
    for nm, N in corpus_normal_pairs():
        assert is_normal(nm.module.G, N)


@pytest.mark.parametrize("name, n", [("C2 trivial on C2", 2), ("C2 inverts C3 (via index-2 subgroup 0)", 1), ("C3 trivial on C3", 2)])
def test_enumeration_engine_against_oracle(name, n):
    M = get_module(name)
    assert cochain_count(M, n) == M.A.order ** (M.G.order**n)
    assert cohomology_by_enumeration(M, n).order == oracles.cohomology_order(M, n)
    assert cohomology_by_enumeration(M, n) == hu_cohomology(M, n)
