"""Semidirect products ``G x| A`` and complements of ``A``.

Pairs ``(g, a)`` are stored at index ``g*|A| + a`` and multiply as
``(g, a)(h, b) = (gh, h^-1.a * b)``.  With this twist ``(g, a)`` is the
product ``embed_G(g) * embed_A(a)`` and conjugating ``embed_A(a)`` by
``embed_G(g)`` gives ``embed_A(g.a)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

from .cohomology import H1, Derivation, _class_tables, h1, make_derivation
from .config import limits
from .errors import NotAComplement, SizeLimitExceeded, TheoremCheckFailed
from .gmodule import GModule
from .group import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    _closure,
    conjugate_subgroup,
    make_group_from_table,
)


@dataclass(frozen=True, eq=False)
class SemidirectProduct:
    module: GModule
    E: FiniteGroup
    embed_G: GroupHom
    embed_A: GroupHom

    @property
    def G(self) -> FiniteGroup:
        return self.module.G

    @property
    def A(self) -> FiniteGroup:
        return self.module.A

    def pair(self, e: int) -> tuple[int, int]:
        return divmod(e, self.A.order)

    def index(self, g: int, a: int) -> int:
        return g * self.A.order + a

    @cached_property
    def normal_A(self) -> Subgroup:
        return Subgroup(self.E, tuple(range(self.A.order)))

    def pair_string(self, e: int) -> str:
        g, a = self.pair(e)
        return f"({self.G.name(g)},{self.A.name(a)})"


def semidirect(M: GModule, max_size: Optional[int] = None) -> SemidirectProduct:
    cap = max_size if max_size is not None else limits().max_semidirect
    G, A = M.G, M.A
    na, n = A.order, G.order * A.order
    if n > cap:
        raise SizeLimitExceeded(f"|G|*|A| = {n} exceeds the cap {cap}")
    act = M.act
    table = []
    for x in range(n):
        g, a = divmod(x, na)
        row = []
        for y in range(n):
            h, b = divmod(y, na)
            row.append(G.mul[g][h] * na + A.mul[act[G.inv[h]][a]][b])
        table.append(row)
    E = make_group_from_table(table, f"{G.label or 'G'} x| {A.label or 'A'}")
    eg = GroupHom(G, E, tuple(g * na for g in G.elements))
    ea = GroupHom(A, E, tuple(A.elements))
    _check_product(M, E, na)
    return SemidirectProduct(M, E, eg, ea)


def _check_product(M: GModule, E: FiniteGroup, na: int) -> None:
    G, A = M.G, M.A
    for g in G.elements:
        for h in G.elements:
            if E.mul[g * na][h * na] != G.mul[g][h] * na:
                raise TheoremCheckFailed("G does not embed as a subgroup")
    for a in A.elements:
        for b in A.elements:
            if E.mul[a][b] != A.mul[a][b]:
                raise TheoremCheckFailed("A does not embed as a subgroup")
    for g in G.elements:
        for a in A.elements:
            if E.mul[g * na][a] != g * na + a:
                raise TheoremCheckFailed(f"({g},{a}) is not embed_G({g}) * embed_A({a})")
            if E.conj(g * na, a) != M.act[g][a]:
                raise TheoremCheckFailed(f"conjugation by {g} does not realise the action on {a}")
    for e in E.elements:
        for a in A.elements:
            if E.conj(e, a) >= na:
                raise TheoremCheckFailed("A is not normal in the product")


@dataclass(frozen=True)
class Complement:
    members: tuple[int, ...]

    def __contains__(self, e: int) -> bool:
        return e in self.members

    def __len__(self):
        return len(self.members)


def is_complement(SP: SemidirectProduct, members) -> Optional[str]:
    """Reason why ``members`` is not a complement, or ``None``."""
    E, na = SP.E, SP.A.order
    s = set(members)
    if 0 not in s:
        return "does not contain the identity"
    for x in s:
        for y in s:
            if E.mul[x][y] not in s:
                return f"not closed under products at ({x}, {y})"
    if len(s) != SP.G.order:
        return f"has order {len(s)}, expected {SP.G.order}"
    meet = sorted(x for x in s if x < na)
    if meet != [0]:
        return f"meets A in {meet}"
    if len({E.mul[x][a] for x in s for a in range(na)}) != E.order:
        return "X * A is not the whole group"
    return None


def _require_complement(SP: SemidirectProduct, X: Complement) -> None:
    why = is_complement(SP, X.members)
    if why is not None:
        raise NotAComplement(f"{list(X.members)} {why}")


def complements_bruteforce(SP: SemidirectProduct, max_g: Optional[int] = None) -> list[Complement]:
    """Every complement of ``A``, found by closing sets of at most three
    elements outside ``A``; no derivations are involved.

    Subgroups that already meet ``A`` are pruned, since no complement contains them.
    """
    cap = max_g if max_g is not None else limits().max_complement_g
    if SP.G.order > cap:
        raise SizeLimitExceeded(f"|G| = {SP.G.order} exceeds the complement search cap {cap}")
    E, na, target = SP.E, SP.A.order, SP.G.order
    outside = range(na, E.order)
    found: set = set()
    seen = {frozenset((0,))}
    layer = [frozenset((0,))]
    for _ in range(3):
        nxt = []
        for X in layer:
            if len(X) == target:
                continue
            for e in outside:
                if e in X:
                    continue
                Y = frozenset(_closure(E, X, [e]))
                if Y in seen or len(Y) > target or any(y < na for y in Y if y):
                    continue
                seen.add(Y)
                nxt.append(Y)
        layer = nxt
    for X in seen:
        if len(X) == target:
            found.add(tuple(sorted(X)))
    if target == 1:
        found.add((0,))
    return [Complement(m) for m in sorted(found)]


def derivation_from_complement(SP: SemidirectProduct, X: Complement) -> Derivation:
    """``alpha_X(g) = n`` where ``g^-1 = x * n`` with ``x`` in ``X`` and ``n`` in ``A``."""
    _require_complement(SP, X)
    E, G, na = SP.E, SP.G, SP.A.order
    values = []
    for g in G.elements:
        e = G.inv[g] * na
        ns = [E.mul[E.inv[x]][e] for x in X.members]
        ns = [n for n in ns if n < na]
        if len(ns) != 1:
            raise TheoremCheckFailed(f"factorisation of embed_G({g})^-1 is not unique")
        values.append(ns[0])
    try:
        return make_derivation(SP.module, values)
    except Exception as exc:
        raise TheoremCheckFailed(f"complement gives a non-derivation: {exc}") from exc


def complement_from_derivation(SP: SemidirectProduct, alpha) -> Complement:
    """``X_alpha = {embed_A(alpha(g)) * embed_G(g)}``."""
    values = alpha.values if isinstance(alpha, Derivation) else tuple(alpha)
    make_derivation(SP.module, values)
    E, na = SP.E, SP.A.order
    members = tuple(sorted(E.mul[values[g]][g * na] for g in SP.G.elements))
    why = is_complement(SP, members)
    if why is not None:
        raise TheoremCheckFailed(f"X_alpha {why}")
    return Complement(members)


@dataclass
class Correspondence:
    """Outcome of matching derivations against brute-force complements."""

    derivations: int
    complements: int
    holds: bool
    witness: Optional[str] = None


def check_correspondence(SP: SemidirectProduct, complements=None) -> Correspondence:
    """Both maps between derivations and complements, checked to be mutually
    inverse bijections against the independent complement search."""
    from .cohomology import enumerate_derivations

    ders = enumerate_derivations(SP.module)
    comps = complements if complements is not None else complements_bruteforce(SP)
    images = [complement_from_derivation(SP, d) for d in ders]
    n, m = len(ders), len(comps)
    if len(set(images)) != n:
        return Correspondence(n, m, False, "two derivations give the same complement")
    if set(images) != set(comps):
        extra = sorted(set(images) ^ set(comps), key=lambda c: c.members)[0]
        return Correspondence(n, m, False, f"complement {list(extra.members)} unmatched")
    for d, X in zip(ders, images):
        if derivation_from_complement(SP, X) != d:
            return Correspondence(n, m, False, f"round trip fails for {list(d.values)}")
    for X in comps:
        if complement_from_derivation(SP, derivation_from_complement(SP, X)) != X:
            return Correspondence(n, m, False, f"round trip fails for {list(X.members)}")
    return Correspondence(n, m, True)


@dataclass
class ComplementClasses:
    """Conjugacy classes of complements and the map from H1 onto them.

    ``mapping`` sends an H1 class key to the index of a conjugacy class.
    ``collisions`` lists pairs of H1 classes sharing a conjugacy class; this can
    only happen for non-abelian coefficients.
    """

    classes: list[list[Complement]]
    h1: H1
    mapping: dict
    surjective: bool
    injective: bool
    collisions: list = field(default_factory=list)

    @property
    def h1_size(self) -> int:
        return len(self.h1)


def conjugacy_classes_of_complements(SP: SemidirectProduct, comps: list[Complement]):
    E = SP.E
    where = {X.members: None for X in comps}
    classes: list[list[Complement]] = []
    for X in comps:
        if where[X.members] is not None:
            continue
        sub = Subgroup(E, X.members)
        conj = {conjugate_subgroup(E, e, sub).members for e in E.elements}
        cls = [Y for Y in comps if Y.members in conj]
        if len(cls) != len(conj):
            raise TheoremCheckFailed("a conjugate of a complement was not found by the search")
        for Y in cls:
            where[Y.members] = len(classes)
        classes.append(cls)
    return classes, where


def complement_classes(SP: SemidirectProduct, comps=None) -> ComplementClasses:
    comps = comps if comps is not None else complements_bruteforce(SP)
    classes, where = conjugacy_classes_of_complements(SP, comps)
    H = h1(SP.module)
    mapping = {}
    for c in H.classes:
        idx = {where[complement_from_derivation(SP, t).members] for t in _class_tables(c)}
        if len(idx) != 1:
            raise TheoremCheckFailed("cohomologous derivations give non-conjugate complements")
        mapping[c.key] = idx.pop()
    hit = set(mapping.values())
    surjective = len(hit) == len(classes)
    by_class: dict = {}
    for key, i in mapping.items():
        by_class.setdefault(i, []).append(key)
    collisions = [tuple(keys) for keys in by_class.values() if len(keys) > 1]
    injective = not collisions
    if not surjective:
        raise TheoremCheckFailed("some conjugacy class of complements is missed by H1")
    if SP.A.is_abelian and not injective:
        raise TheoremCheckFailed("map from H1 to complement classes is not injective")
    if len(H) == 1 and len(classes) != 1:
        raise TheoremCheckFailed("H1 is trivial but complements are not all conjugate")
    return ComplementClasses(classes, H, mapping, surjective, injective, collisions)
