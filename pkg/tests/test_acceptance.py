"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Every check is exact (set equality or integer equality); the only tolerance
is the wall-clock budget given per criterion.
"""

import time

import pytest

import oracles
from conftest import inverting, sub_quotient_sequence
from nach1.cli import main
from nach1.cohomology import delta0, delta1, h1, hu_cohomology
from nach1.corpus import corpus_sequences, get_group
from nach1.gmodule import trivial_module
from nach1.sequences import alternative_sections, make_section
from nach1.suite import check_engines, check_inflation_restriction, check_semidirect, check_seven_term, check_six_term


@pytest.fixture
def verdict(capsys):
    def _verdict(n, what, ok, elapsed, budget):
        within = elapsed < budget
        status = "PASS" if ok and within else "FAIL"
        with capsys.disabled():
            print(f"\n{status} criterion {n}: {what} ({elapsed:.1f} s, budget {budget} s)")
        assert ok, what
        assert within, f"took {elapsed:.1f} s, budget {budget} s"

    return _verdict


def timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t0


def describe(tally):
    text = f"{tally.name}, {tally.passed}/{tally.instances} instances"
    if tally.failures:
        text += f", first failure {tally.failures[0]}"
    return text


def test_criterion_1_six_term(verdict):
    tally, dt = timed(check_six_term)
    verdict(1, describe(tally), tally.ok and tally.instances >= 50, dt, 60)


def test_criterion_2_seven_term(verdict):
    tally, dt = timed(check_seven_term)
    central = [ns.sequence for ns in corpus_sequences() if ns.sequence.central]
    two_sections = all(len(alternative_sections(S)) >= 2 for S in central if S.B.A.order > S.C.A.order)
    ok = tally.ok and tally.instances > 0 and two_sections
    verdict(2, describe(tally) + f", {len(central)} central sequences", ok, dt, 60)


@pytest.fixture(scope="module")
def semidirect_run():
    return timed(check_semidirect)


def test_criterion_3_complement_correspondence(verdict, semidirect_run):
    (corr, _), dt = semidirect_run
    verdict(3, describe(corr), corr.ok and corr.instances >= 30, dt, 120)


def test_criterion_4_complement_classes(verdict, semidirect_run):
    (_, classes), dt = semidirect_run
    verdict(4, describe(classes), classes.ok and classes.instances >= 30, dt, 120)


def test_criterion_5_inflation_restriction(verdict):
    (action, infres), dt = timed(check_inflation_restriction)
    ok = action.ok and infres.ok and infres.instances > 0
    verdict(5, describe(action) + "; " + describe(infres), ok, dt, 60)


def test_criterion_6_engine_agreement(verdict):
    tally, dt = timed(check_engines)
    verdict(6, describe(tally), tally.ok and tally.instances > 0, dt, 120)


def named_fixtures():
    C2, C3, C4, S3 = (get_group(n) for n in ("C2", "C3", "C4", "S3"))
    inv_c3 = inverting(C2, C3)
    triv_c2 = trivial_module(C2, C2)
    triv_s3 = trivial_module(C2, S3)
    results = {
        "|H1(C2, C3 inv)| = 1": len(h1(inv_c3)) == 1 == len(oracles.h1_classes(inv_c3)),
        "|H1(C2, C2 triv)| = 2": len(h1(triv_c2)) == 2 == len(oracles.h1_classes(triv_c2)),
        "|H1(C2, S3 triv)| = 2": len(h1(triv_s3)) == 2 == len(oracles.h1_classes(triv_s3)),
        "|H2(C2, C2 triv)| = 2": hu_cohomology(triv_c2, 2).order == 2 == oracles.cohomology_order(triv_c2, 2),
    }
    S = sub_quotient_sequence(inverting(C2, C4), (0, 2))
    results["delta0(1) nontrivial"] = delta0(S, 1) is not h1(S.A).basepoint
    T = sub_quotient_sequence(trivial_module(C2, C4), (0, 2))
    identity_class = h1(T.C).class_of((0, 1))
    k = delta1(T, identity_class, make_section(T, [0, 1]))
    # the oracle: no 1-cochain of the 4 possible has this coboundary
    cobs = {oracles.coboundary(T.A, 1, (a, b)) for a in range(2) for b in range(2)}
    results["delta1(identity class) not a coboundary"] = (not k.is_coboundary) and k.factor_set.values not in cobs
    return results


def test_criterion_7_named_fixtures(verdict):
    results, dt = timed(named_fixtures)
    failed = [name for name, ok in results.items() if not ok]
    what = f"{len(results) - len(failed)}/{len(results)} named fixtures" + (f", failed {failed}" if failed else "")
    verdict(7, what, not failed, dt, 60)


def test_criterion_8_no_internal_check_fires(verdict, capsys):
    code, dt = timed(main, ["corpus", "run-all"])
    capsys.readouterr()
    verdict(8, f"corpus run-all exit code {code}", code == 0, dt, 120)
