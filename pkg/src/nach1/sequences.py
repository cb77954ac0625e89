"""Short exact sequences of modules and the exact sequences they induce in
low-degree cohomology, plus inflation and restriction along a normal
subgroup.

Every check here is exhaustive: kernels and images are compared as sets of
canonical keys and a failure records the least offending key.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Optional, Sequence

from .cohomology import (
    H1,
    H2Class,
    PointedMap,
    PointedSet,
    _class_tables,
    delta0,
    delta1,
    h0_pointed,
    h1,
    induced_h0,
    induced_h1,
    same_h2_class,
)
from .errors import (
    NotASection,
    NotCentral,
    NotCocompatible,
    NotEquivariant,
    NotExact,
    NotNormalInB,
    TheoremCheckFailed,
)
from .gmodule import (
    GModule,
    GModuleHom,
    make_module_hom,
    quotient_action_data,
    restrict_module,
)
from .group import GroupHom, Subgroup, identity_hom, is_normal, quotient_group


@dataclass(frozen=True, eq=False)
class ShortExactSequence:
    iota: GModuleHom
    pi: GModuleHom
    central: bool

    @property
    def A(self) -> GModule:
        return self.iota.dom

    @property
    def B(self) -> GModule:
        return self.iota.cod

    @property
    def C(self) -> GModule:
        return self.pi.cod

    @cached_property
    def iota_inverse(self) -> dict:
        return {b: a for a, b in enumerate(self.iota.hom.image)}


def make_ses(iota: GModuleHom, pi: GModuleHom) -> ShortExactSequence:
    if iota.cod != pi.dom:
        raise NotExact("codomain of iota is not the domain of pi")
    if iota.dom.G != pi.cod.G:
        raise NotEquivariant("modules are over different groups")
    make_module_hom(iota.dom, iota.cod, iota.hom)
    make_module_hom(pi.dom, pi.cod, pi.hom)
    img = iota.hom.image
    if len(set(img)) != len(img):
        first = {}
        for a, b in enumerate(img):
            if b in first:
                raise NotExact(f"iota is not injective: iota({first[b]}) = iota({a})")
            first[b] = a
    if not pi.hom.is_surjective:
        missing = min(set(pi.cod.A.elements) - set(pi.hom.image))
        raise NotExact(f"pi is not surjective: {missing} has no preimage")
    image = set(img)
    kernel = set(pi.hom.kernel.members)
    if image != kernel:
        w = min(image ^ kernel)
        raise NotExact(f"image of iota differs from kernel of pi at element {w} of B")
    B = iota.cod.A
    sub = Subgroup(B, tuple(sorted(image)))
    if not is_normal(B, sub):
        raise NotNormalInB("image of iota is not normal in B")
    central = all(B.mul[a][b] == B.mul[b][a] for a in image for b in B.elements)
    return ShortExactSequence(iota, pi, central)


@dataclass(frozen=True)
class Section:
    values: tuple[int, ...]


def make_section(S: ShortExactSequence, values: Sequence[int]) -> Section:
    values = tuple(values)
    p = S.pi.hom.image
    if len(values) != S.C.A.order or any(p[values[c]] != c for c in S.C.A.elements):
        raise NotASection("pi o s is not the identity")
    return Section(values)


def choose_section(S: ShortExactSequence) -> Section:
    """Least preimage of every element; the identity goes to the identity."""
    pre = S.pi.hom.preimages
    return Section(tuple(pre[c][0] for c in S.C.A.elements))


def alternative_sections(S: ShortExactSequence) -> list[Section]:
    """Distinct sections to test choice-independence: least preimages,
    greatest preimages (normalised), and greatest preimages throughout."""
    pre = S.pi.hom.preimages
    cs = S.C.A.elements
    out = [choose_section(S)]
    for s in (
        Section(tuple(0 if c == 0 else pre[c][-1] for c in cs)),
        Section(tuple(pre[c][-1] for c in cs)),
    ):
        if s not in out:
            out.append(s)
    return out


# -- exactness reports ------------------------------------------------------------


@dataclass(frozen=True)
class Junction:
    """One checked statement: ``kind`` is ``exact`` (image equals kernel),
    ``injective`` or ``inclusion`` (left set inside right set)."""

    name: str
    kind: str
    left: tuple
    right: tuple
    holds: bool
    witness: Any = None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "left": [_jsonable(x) for x in self.left],
            "right": [_jsonable(x) for x in self.right],
            "holds": self.holds,
            "witness": _jsonable(self.witness),
        }


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(y) for y in x]
    return x


@dataclass
class ExactnessReport:
    junctions: list[Junction] = field(default_factory=list)

    @property
    def all_exact(self) -> bool:
        return all(j.holds for j in self.junctions)

    def __len__(self):
        return len(self.junctions)

    def to_dict(self) -> dict:
        return {"all_exact": self.all_exact, "junctions": [j.to_dict() for j in self.junctions]}


def exact_at(name: str, incoming: Optional[PointedMap], outgoing: PointedMap) -> Junction:
    if incoming is None:
        image = [outgoing.dom.basepoint]
    else:
        image = incoming.image()
    kernel = outgoing.kernel()
    diff = set(image) ^ set(kernel)
    return Junction(
        name, "exact", tuple(image), tuple(kernel), not diff, min(diff) if diff else None
    )


def injective(name: str, f: PointedMap) -> Junction:
    seen: dict = {}
    witness = None
    for x in f.dom.elements:
        y = f.mapping[x]
        if y in seen:
            witness = (seen[y], x)
            break
        seen[y] = x
    return Junction(
        name, "injective", tuple(f.dom.elements), tuple(f.image()), witness is None, witness
    )


def contained(name: str, left: Sequence, right: Sequence) -> Junction:
    extra = set(left) - set(right)
    return Junction(
        name, "inclusion", tuple(left), tuple(right), not extra, min(extra) if extra else None
    )


# -- six and seven terms --------------------------------------------------------------


@dataclass
class LongSequence:
    """Terms and maps of the induced sequence, with its exactness report."""

    terms: dict[str, PointedSet]
    maps: dict[str, PointedMap]
    report: ExactnessReport
    h2: dict = field(default_factory=dict)


def _delta0_map(S: ShortExactSequence, H1A: H1) -> PointedMap:
    H0C = h0_pointed(S.C)
    mapping = {c: delta0(S, c, H1A).key for c in H0C.elements}
    return PointedMap(H0C, H1A.pointed, mapping)


def six_term(S: ShortExactSequence) -> LongSequence:
    """``0 -> H0(A) -> H0(B) -> H0(C) -> H1(A) -> H1(B) -> H1(C)``.

    Six checks: trivial kernel and injectivity of the first map, then
    exactness at H0(B), H0(C), H1(A) and H1(B).
    """
    H1A, H1B, H1C = h1(S.A), h1(S.B), h1(S.C)
    i0 = induced_h0(S.iota)
    p0 = induced_h0(S.pi)
    d0 = _delta0_map(S, H1A)
    i1 = induced_h1(S.iota, H1A, H1B)
    p1 = induced_h1(S.pi, H1B, H1C)
    terms = {
        "H0(G,A)": i0.dom,
        "H0(G,B)": p0.dom,
        "H0(G,C)": d0.dom,
        "H1(G,A)": H1A.pointed,
        "H1(G,B)": H1B.pointed,
        "H1(G,C)": H1C.pointed,
    }
    maps = {"iota0*": i0, "pi0*": p0, "delta0": d0, "iota1*": i1, "pi1*": p1}
    report = ExactnessReport(
        [
            exact_at("H0(G,A)", None, i0),
            injective("iota0* injective", i0),
            exact_at("H0(G,B)", i0, p0),
            exact_at("H0(G,C)", p0, d0),
            exact_at("H1(G,A)", d0, i1),
            exact_at("H1(G,B)", i1, p1),
        ]
    )
    return LongSequence(terms, maps, report)


def _delta1_map(S: ShortExactSequence, H1C: H1, section: Optional[Section]):
    """``delta1`` as a pointed map into H^2 classes numbered by first appearance."""
    results: dict = {}
    reps: list[H2Class] = []
    mapping = {}
    for c in H1C.classes:
        cls = delta1(S, c, section, with_structure=False)
        results[c.key] = cls
        if cls.is_coboundary:
            mapping[c.key] = 0
            continue
        for i, r in enumerate(reps, start=1):
            if same_h2_class(cls.factor_set, r.factor_set):
                mapping[c.key] = i
                break
        else:
            reps.append(cls)
            mapping[c.key] = len(reps)
    H2 = PointedSet(tuple(range(len(reps) + 1)), 0)
    return PointedMap(H1C.pointed, H2, mapping), results


def seven_term(S: ShortExactSequence, section: Optional[Section] = None) -> LongSequence:
    """The six-term sequence continued by ``delta1`` into H^2(G, A)."""
    if not S.central:
        raise NotCentral("image of A is not central in B")
    seq = six_term(S)
    H1C = h1(S.C)
    d1, results = _delta1_map(S, H1C, section)
    seq.terms["H2(G,A) classes hit by delta1"] = d1.cod
    seq.maps["delta1"] = d1
    seq.h2 = results
    seq.report.junctions.append(exact_at("H1(G,C)", seq.maps["pi1*"], d1))
    return seq


# -- inflation and restriction -----------------------------------------------------------


def cocompatible_star(
    M: GModule,
    M2: GModule,
    phi: GroupHom,
    psi: GroupHom,
    source: Optional[H1] = None,
    target: Optional[H1] = None,
) -> PointedMap:
    """``[alpha] -> [psi o alpha o phi]`` from ``H1(G, A)`` to ``H1(G', A')``.

    ``phi: G' -> G`` and ``psi: A -> A'`` must satisfy
    ``psi(phi(g').a) = g'.psi(a)``.
    """
    if phi.dom != M2.G or phi.cod != M.G or psi.dom != M.A or psi.cod != M2.A:
        raise NotCocompatible("maps do not match the groups of the two modules")
    f, p = phi.image, psi.image
    for g2 in M2.G.elements:
        row, row2 = M.act[f[g2]], M2.act[g2]
        for a in M.A.elements:
            if p[row[a]] != row2[p[a]]:
                raise NotCocompatible(f"psi({f[g2]}.{a}) != {g2}.psi({a})")
    source = source or h1(M)
    target = target or h1(M2)
    mapping = {}
    for c in source.classes:
        keys = {target.key_of(tuple(p[t[f[g2]]] for g2 in M2.G.elements)) for t in _class_tables(c)}
        if len(keys) != 1:
            raise TheoremCheckFailed("induced map is not well defined on classes")
        mapping[c.key] = keys.pop()
    return PointedMap(source.pointed, target.pointed, mapping)


def restriction_map(M: GModule, N: Subgroup) -> PointedMap:
    MN = restrict_module(M, N)
    return cocompatible_star(M, MN, N.inclusion, identity_hom(M.A))


def inflation_map(M: GModule, N: Subgroup) -> PointedMap:
    Q = quotient_action_data(M, N)
    return cocompatible_star(Q.module, M, Q.projection, Q.inclusion)


@dataclass(frozen=True, eq=False)
class QuotientAction:
    """``G/N`` acting on the classes of ``H1(N, A)``; ``mapping[(q, key)]``."""

    quotient: Any
    h1: H1
    mapping: dict

    def act(self, q: int, key: tuple) -> tuple:
        return self.mapping[(q, key)]

    def fixed_points(self) -> list:
        return [
            c.key
            for c in self.h1.classes
            if all(self.mapping[(q, c.key)] == c.key for q in self.quotient.elements)
        ]


def quotient_action_on_h1N(M: GModule, N: Subgroup) -> QuotientAction:
    """``gN . [alpha] = [n -> g.alpha(g^-1 n g)]``.

    Re-verified: independent of the coset representative and of the class
    representative, the identity acts trivially, and it composes as an action.
    """
    if not is_normal(M.G, N):
        from .errors import NotNormal

        raise NotNormal(f"{list(N.members)} is not normal")
    G = M.G
    H = h1(restrict_module(M, N))
    Q, proj = quotient_group(G, N)
    pos = N.position
    members = N.members
    cosets: dict = {}
    for g in G.elements:
        cosets.setdefault(proj.image[g], []).append(g)
    mapping = {}
    for q, reps in cosets.items():
        for c in H.classes:
            keys = set()
            for g in reps:
                gi = G.inv[g]
                row = M.act[g]
                conj = [pos[G.conj(gi, n)] for n in members]
                for t in _class_tables(c):
                    keys.add(H.key_of(tuple(row[t[conj[i]]] for i in range(len(members)))))
            if len(keys) != 1:
                raise TheoremCheckFailed("action on H1(N, A) depends on representatives")
            mapping[(q, c.key)] = keys.pop()
    for c in H.classes:
        if mapping[(0, c.key)] != c.key:
            raise TheoremCheckFailed("identity coset moves a class")
        for q1 in Q.elements:
            for q2 in Q.elements:
                lhs = mapping[(Q.mul[q1][q2], c.key)]
                if lhs != mapping[(q1, mapping[(q2, c.key)])]:
                    raise TheoremCheckFailed("not an action on H1(N, A)")
    return QuotientAction(Q, H, mapping)


def inf_res_check(M: GModule, N: Subgroup) -> ExactnessReport:
    """``1 -> H1(G/N, A^N) -> H1(G, A) -> H1(N, A)^(G/N)``."""
    inf = inflation_map(M, N)
    res = restriction_map(M, N)
    action = quotient_action_on_h1N(M, N)
    return ExactnessReport(
        [
            injective("Inf1 injective", inf),
            exact_at("H1(G,A): Ker Res1 = Im Inf1", inf, res),
            contained("Im Res1 in H1(N,A)^(G/N)", res.image(), action.fixed_points()),
        ]
    )
