import os
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nach1 import _kernels_py, kernels
from nach1.corpus import GROUP_NAMES, corpus_modules, get_group
from nach1.group import generating_set, spanning_tree

ckernels = pytest.importorskip("nach1._ckernels", reason="compiled kernels not built")

MODULES = [nm.module for nm in corpus_modules() if nm.module.A.order ** len(generating_set(nm.module.G)) <= 20000]


def test_compiled_backend_is_preferred():
    forced = os.environ.get("NACH1_PURE_PYTHON", "") in ("1", "true", "yes")
    assert kernels.BACKEND == ("python" if forced else "cython")


@pytest.mark.parametrize("name", GROUP_NAMES)
def test_associativity_parity(name):
    mul = [list(r) for r in get_group(name).mul]
    assert ckernels.associativity_witness(mul) is None
    assert _kernels_py.associativity_witness(mul) is None


def test_associativity_witness_parity():
    bad = [[0, 1, 2], [1, 0, 1], [2, 2, 0]]
    assert ckernels.associativity_witness(bad) == _kernels_py.associativity_witness(bad)
    rng = random.Random(7)
    triples = [tuple(rng.randrange(3) for _ in range(3)) for _ in range(50)]
    assert ckernels.associativity_witness_sampled(bad, triples) == _kernels_py.associativity_witness_sampled(bad, triples)


@given(st.sampled_from(MODULES))
def test_derivation_tables_parity(M):
    gens = generating_set(M.G)
    order, parent, via = spanning_tree(M.G, gens)
    args = (M.G.mul, M.A.mul, M.act, gens, order, parent, via)
    assert sorted(ckernels.derivation_tables(*args)) == sorted(_kernels_py.derivation_tables(*args))


@given(st.sampled_from(MODULES), st.data())
def test_principal_orbit_parity(M, data):
    values = data.draw(st.tuples(*(st.integers(0, M.A.order - 1) for _ in M.G.elements)))
    args = (values, M.A.mul, M.A.inv, M.act)
    assert list(ckernels.principal_orbit(*args)) == list(_kernels_py.principal_orbit(*args))
