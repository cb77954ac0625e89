"""Finite groups acting on finite groups by automorphisms.

``act[g][a]`` is the index of ``g.a``.  The action is on the left:
``act[gh][a] == act[g][act[h][a]]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import IllDefinedAction, NotAnAction, NotEquivariant, NotNormal
from .group import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    compose,
    direct_product,
    identity_hom,
    is_normal,
    quotient_group,
)


@dataclass(frozen=True, eq=False)
class GModule:
    G: FiniteGroup
    A: FiniteGroup
    act: tuple[tuple[int, ...], ...]

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, GModule):
            return NotImplemented
        return self.act == other.act and self.G == other.G and self.A == other.A

    def __hash__(self):
        return hash(self.act)

    def __repr__(self):
        return f"GModule(|G|={self.G.order}, |A|={self.A.order})"

    def __call__(self, g: int, a: int) -> int:
        return self.act[g][a]

    @cached_property
    def is_trivial(self) -> bool:
        return all(row == tuple(range(self.A.order)) for row in self.act)


def _check_action(G: FiniteGroup, A: FiniteGroup, act) -> None:
    na = A.order
    ident = tuple(range(na))
    if act[0] != ident:
        a = next(a for a in range(na) if act[0][a] != a)
        raise NotAnAction(f"identity does not act trivially: 1.{a} = {act[0][a]}")
    for g in G.elements:
        row = act[g]
        if len(set(row)) != na:
            raise NotAnAction(f"element {g} does not act bijectively")
        for a in A.elements:
            for b in A.elements:
                if row[A.mul[a][b]] != A.mul[row[a]][row[b]]:
                    raise NotAnAction(
                        f"element {g} does not act by an automorphism: "
                        f"{g}.({a}*{b}) != ({g}.{a})*({g}.{b})"
                    )
    for g in G.elements:
        for h in G.elements:
            gh = act[G.mul[g][h]]
            rg, rh = act[g], act[h]
            for a in A.elements:
                if gh[a] != rg[rh[a]]:
                    raise NotAnAction(f"not a left action: ({g}*{h}).{a} != {g}.({h}.{a})")


def make_module(G: FiniteGroup, A: FiniteGroup, act_table: Sequence[Sequence[int]]) -> GModule:
    if len(act_table) != G.order:
        raise NotAnAction(f"action table has {len(act_table)} rows, expected {G.order}")
    act = []
    for g, row in enumerate(act_table):
        row = tuple(row)
        if len(row) != A.order:
            raise NotAnAction(f"action row {g} has length {len(row)}, expected {A.order}")
        if any(not 0 <= v < A.order for v in row):
            raise NotAnAction(f"action row {g} has an out-of-range entry")
        act.append(row)
    act = tuple(act)
    _check_action(G, A, act)
    return GModule(G, A, act)


def trivial_module(G: FiniteGroup, A: FiniteGroup) -> GModule:
    row = tuple(range(A.order))
    return GModule(G, A, tuple(row for _ in G.elements))


def conjugation_module(G: FiniteGroup) -> GModule:
    return GModule(G, G, tuple(tuple(G.conj(g, a) for a in G.elements) for g in G.elements))


def module_from_hom(G: FiniteGroup, A: FiniteGroup, rho: GroupHom, automorphisms) -> GModule:
    """Action through ``rho: G -> K`` where ``automorphisms[k]`` is the table of ``k``."""
    return make_module(G, A, [automorphisms[rho.image[g]] for g in G.elements])


def fixed_points(M: GModule, S: Subgroup | None = None) -> Subgroup:
    """``{a : s.a = a for all s in S}`` (all of G when ``S`` is omitted)."""
    rows = [M.act[s] for s in (S.members if S is not None else M.G.elements)]
    return Subgroup(M.A, tuple(a for a in M.A.elements if all(r[a] == a for r in rows)))


def restrict_module(M: GModule, N: Subgroup) -> GModule:
    """Same coefficients, acted on by ``N`` re-indexed as its own group."""
    if N.order == M.G.order:
        return M
    return GModule(N.as_group, M.A, tuple(M.act[n] for n in N.members))


@dataclass(frozen=True, eq=False)
class QuotientModule:
    """``G/N`` acting on ``A^N``, with the maps relating it to the original."""

    module: GModule
    projection: GroupHom  # G -> G/N
    fixed: Subgroup  # A^N inside A
    inclusion: GroupHom  # A^N -> A


def quotient_acting_module(M: GModule, N: Subgroup) -> GModule:
    return quotient_action_data(M, N).module


def quotient_action_data(M: GModule, N: Subgroup) -> QuotientModule:
    if not is_normal(M.G, N):
        raise NotNormal(f"{list(N.members)} is not normal")
    Q, pi = quotient_group(M.G, N)
    fixed = fixed_points(M, N)
    if N.order == 1:
        return QuotientModule(GModule(Q, M.A, M.act), pi, fixed, identity_hom(M.A))
    AN = fixed.as_group
    pos = fixed.position
    act: list = [None] * Q.order
    for g in M.G.elements:
        q = pi.image[g]
        row = tuple(pos.get(M.act[g][a], -1) for a in fixed.members)
        if -1 in row:
            raise IllDefinedAction(f"element {g} moves A^N outside itself")
        if act[q] is None:
            act[q] = row
        elif act[q] != row:
            raise IllDefinedAction(f"coset representatives of coset {q} act differently")
    return QuotientModule(GModule(Q, AN, tuple(act)), pi, fixed, fixed.inclusion)


@dataclass(frozen=True, eq=False)
class GModuleHom:
    dom: GModule
    cod: GModule
    hom: GroupHom

    def __call__(self, a: int) -> int:
        return self.hom.image[a]

    @property
    def image(self) -> tuple[int, ...]:
        return self.hom.image


def make_module_hom(dom: GModule, cod: GModule, hom: GroupHom) -> GModuleHom:
    if dom.G != cod.G:
        raise NotEquivariant("modules are over different groups")
    if hom.dom != dom.A or hom.cod != cod.A:
        raise NotEquivariant("homomorphism does not match the coefficient groups")
    f = hom.image
    for g in dom.G.elements:
        rd, rc = dom.act[g], cod.act[g]
        for a in dom.A.elements:
            if f[rd[a]] != rc[f[a]]:
                raise NotEquivariant(f"f({g}.{a}) != {g}.f({a})")
    return GModuleHom(dom, cod, hom)


def identity_module_hom(M: GModule) -> GModuleHom:
    return GModuleHom(M, M, identity_hom(M.A))


def compose_module_homs(f: GModuleHom, g: GModuleHom) -> GModuleHom:
    """``f o g``."""
    return GModuleHom(g.dom, f.cod, compose(f.hom, g.hom))


def is_stable(M: GModule, N: Subgroup) -> bool:
    """True when ``N <= A`` is mapped into itself by every ``g``."""
    s = N.member_set
    return all(M.act[g][n] in s for g in M.G.elements for n in N.members)


def submodule(M: GModule, N: Subgroup) -> tuple[GModule, GModuleHom]:
    """A stable subgroup as a module, with its inclusion."""
    if not is_stable(M, N):
        raise NotAnAction(f"{list(N.members)} is not stable under the action")
    pos = N.position
    act = tuple(tuple(pos[M.act[g][n]] for n in N.members) for g in M.G.elements)
    S = GModule(M.G, N.as_group, act)
    return S, GModuleHom(S, M, N.inclusion)


def quotient_module(M: GModule, N: Subgroup) -> tuple[GModule, GModuleHom]:
    """``A/N`` for a stable normal ``N``, with the projection."""
    if not is_normal(M.A, N):
        raise NotNormal(f"{list(N.members)} is not normal in the coefficients")
    if not is_stable(M, N):
        raise NotAnAction(f"{list(N.members)} is not stable under the action")
    C, pi = quotient_group(M.A, N)
    reps = C.coset_reps
    act = tuple(tuple(pi.image[M.act[g][r]] for r in reps) for g in M.G.elements)
    Q = GModule(M.G, C, act)
    return Q, GModuleHom(M, Q, pi)


def product_module(M1: GModule, M2: GModule) -> GModule:
    """Diagonal action on ``A1 x A2`` (pairs stored as ``a1*|A2| + a2``)."""
    if M1.G != M2.G:
        raise NotAnAction("modules are over different groups")
    n2 = M2.A.order
    A = direct_product(M1.A, M2.A)
    act = tuple(
        tuple(M1.act[g][x // n2] * n2 + M2.act[g][x % n2] for x in A.elements)
        for g in M1.G.elements
    )
    return GModule(M1.G, A, act)


def pullback_module(M: GModule, phi: GroupHom) -> GModule:
    """``A`` as an ``H``-module through ``phi: H -> G``."""
    return GModule(phi.dom, M.A, tuple(M.act[phi.image[h]] for h in phi.dom.elements))
