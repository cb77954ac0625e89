"""The full property run over the built-in corpus."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .bruteforce import DEFAULT_LIMIT, cochain_count, cohomology_by_enumeration
from .cohomology import h1, hu_cohomology
from .corpus import (
    corpus_modules,
    corpus_normal_pairs,
    corpus_semidirect_modules,
    corpus_sequences,
)
from .semidirect import check_correspondence, complement_classes, complements_bruteforce, semidirect
from .sequences import (
    alternative_sections,
    inf_res_check,
    quotient_action_on_h1N,
    restriction_map,
    seven_term,
    six_term,
)


@dataclass
class CheckTally:
    name: str
    instances: int = 0
    passed: int = 0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.passed == self.instances

    def record(self, label: str, holds: bool, witness=None) -> None:
        self.instances += 1
        if holds:
            self.passed += 1
        else:
            self.failures.append((label, witness))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "instances": self.instances,
            "passed": self.passed,
            "failures": [[label, str(w)] for label, w in self.failures],
            "notes": list(self.notes),
        }


@dataclass
class SuiteReport:
    tallies: list[CheckTally]
    counts: dict

    @property
    def ok(self) -> bool:
        return all(t.ok for t in self.tallies)

    def tally(self, name: str) -> CheckTally:
        return next(t for t in self.tallies if t.name == name)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "counts": dict(self.counts),
            "checks": [t.to_dict() for t in self.tallies],
        }


def check_six_term(tally: Optional[CheckTally] = None) -> CheckTally:
    tally = tally or CheckTally("six-term exactness")
    for ns in corpus_sequences():
        rep = six_term(ns.sequence).report
        bad = next((j for j in rep.junctions if not j.holds), None)
        tally.record(ns.name, rep.all_exact, bad and (bad.name, bad.witness))
    return tally


def check_seven_term(tally: Optional[CheckTally] = None) -> CheckTally:
    """Every central sequence, once per alternative section."""
    tally = tally or CheckTally("seven-term exactness")
    multi = 0
    for ns in corpus_sequences():
        S = ns.sequence
        if not S.central:
            continue
        sections = alternative_sections(S)
        multi += len(sections) >= 2
        verdicts = []
        for i, s in enumerate(sections):
            rep = seven_term(S, s).report
            verdicts.append(tuple(j.holds for j in rep.junctions))
            bad = next((j for j in rep.junctions if not j.holds), None)
            tally.record(f"{ns.name} / section {i}", rep.all_exact, bad and (bad.name, bad.witness))
        if len(set(verdicts)) > 1:
            tally.record(f"{ns.name} / section independence", False, verdicts)
    tally.notes.append(f"{multi} sequences checked under at least two sections")
    return tally


def check_semidirect(
    correspondence: Optional[CheckTally] = None, classes: Optional[CheckTally] = None
) -> tuple[CheckTally, CheckTally]:
    correspondence = correspondence or CheckTally("complement correspondence")
    classes = classes or CheckTally("complement classes")
    for nm in corpus_semidirect_modules():
        SP = semidirect(nm.module)
        comps = complements_bruteforce(SP)
        c = check_correspondence(SP, comps)
        correspondence.record(nm.name, c.holds, c.witness)
        cc = complement_classes(SP, comps)
        holds = cc.surjective and (cc.injective or not SP.A.is_abelian)
        if len(cc.h1) == 1:
            holds = holds and len(cc.classes) == 1
        classes.record(nm.name, holds)
        if cc.collisions:
            classes.notes.append(f"{nm.name}: H1 classes {cc.collisions} share a conjugacy class")
    return correspondence, classes


def check_inflation_restriction(
    action: Optional[CheckTally] = None, infres: Optional[CheckTally] = None
) -> tuple[CheckTally, CheckTally]:
    action = action or CheckTally("quotient action")
    infres = infres or CheckTally("inflation-restriction")
    for nm, N in corpus_normal_pairs():
        label = f"{nm.name} / N={list(N.members)}"
        qa = quotient_action_on_h1N(nm.module, N)
        fixed = set(qa.fixed_points())
        res = restriction_map(nm.module, N)
        extra = sorted(set(res.image()) - fixed)
        action.record(label, not extra, extra[0] if extra else None)
        rep = inf_res_check(nm.module, N)
        bad = next((j for j in rep.junctions if not j.holds), None)
        infres.record(label, rep.all_exact, bad and (bad.name, bad.witness))
    return action, infres


def check_engines(tally: Optional[CheckTally] = None, max_degree: int = 2) -> CheckTally:
    """Class counts against the derivation engine, and structures against
    exhaustive enumeration where there are at most ``DEFAULT_LIMIT`` cochains."""
    tally = tally or CheckTally("engine agreement")
    for nm in corpus_modules():
        M = nm.module
        if not M.A.is_abelian:
            continue
        hu1 = hu_cohomology(M, 1)
        n1 = len(h1(M))
        tally.record(f"{nm.name} / H1 count", hu1.order == n1, (str(hu1), n1))
        for n in range(max_degree + 1):
            if cochain_count(M, n) > DEFAULT_LIMIT:
                continue
            a, b = hu_cohomology(M, n), cohomology_by_enumeration(M, n)
            tally.record(f"{nm.name} / H{n} enumeration", a == b, (str(a), str(b)))
    return tally


def run_all() -> SuiteReport:
    """Runs every check in a fixed order; the report is deterministic."""
    six = check_six_term()
    seven = check_seven_term()
    corr, classes = check_semidirect()
    action, infres = check_inflation_restriction()
    engines = check_engines()
    counts = {
        "modules": len(corpus_modules()),
        "sequences": len(corpus_sequences()),
        "central sequences": sum(1 for ns in corpus_sequences() if ns.sequence.central),
        "semidirect products": len(corpus_semidirect_modules()),
        "normal subgroup pairs": len(corpus_normal_pairs()),
    }
    return SuiteReport([six, seven, corr, classes, action, infres, engines], counts)
