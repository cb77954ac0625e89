"""Built-in groups, actions and the instance sets the property checks run over."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

from .errors import InputError
from .gmodule import (
    GModule,
    conjugation_module,
    make_module,
    quotient_module,
    submodule,
    trivial_module,
)
from .group import (
    FiniteGroup,
    Subgroup,
    _trusted_group,
    all_subgroups,
    direct_product,
    make_group_from_permutations,
    normal_subgroups,
)

# -- groups ---------------------------------------------------------------------


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise InputError("cyclic group order must be positive")
    return _trusted_group([[(a + b) % n for b in range(n)] for a in range(n)], f"C{n}")


def _quaternion_group() -> FiniteGroup:
    def qmul(p, q):
        a1, b1, c1, d1 = p
        a2, b2, c2, d2 = q
        return (
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    units = [(1, 0, 0, 0), (-1, 0, 0, 0)]
    for axis in range(1, 4):
        for sign in (1, -1):
            v = [0, 0, 0, 0]
            v[axis] = sign
            units.append(tuple(v))
    index = {u: i for i, u in enumerate(units)}
    names = ("1", "-1", "i", "-i", "j", "-j", "k", "-k")
    table = [[index[qmul(p, q)] for q in units] for p in units]
    return _trusted_group(table, "Q8", names)


def _build(name: str) -> FiniteGroup:
    if name in ("trivial", "1"):
        return cyclic_group(1)
    if name[0] == "C" and name[1:].isdigit():
        n = int(name[1:])
        if not 1 <= n <= 16:
            raise InputError(f"built-in cyclic groups have order 1..16, got {n}")
        return cyclic_group(n)
    if name in ("V4", "Klein", "C2xC2"):
        return _relabel(direct_product(cyclic_group(2), cyclic_group(2)), "V4")
    if name == "C2xC4":
        return _relabel(direct_product(cyclic_group(2), cyclic_group(4)), name)
    if name == "C3xC3":
        return _relabel(direct_product(cyclic_group(3), cyclic_group(3)), name)
    if name == "C2xC2xC2":
        return _relabel(direct_product(get_group("V4"), cyclic_group(2)), name)
    if name == "S3":
        return make_group_from_permutations(3, [(1, 0, 2), (1, 2, 0)], "S3")
    if name == "S4":
        return make_group_from_permutations(4, [(1, 0, 2, 3), (1, 2, 3, 0)], "S4")
    if name == "D4":
        return make_group_from_permutations(4, [(1, 2, 3, 0), (0, 3, 2, 1)], "D4")
    if name == "Q8":
        return _quaternion_group()
    raise InputError(f"unknown built-in group {name!r}")


def _relabel(G: FiniteGroup, label: str) -> FiniteGroup:
    return _trusted_group(G.mul, label, G.names)


@lru_cache(maxsize=None)
def get_group(name: str) -> FiniteGroup:
    """A built-in group by name: ``trivial``, ``C1``..``C16``, ``V4`` (also
    ``Klein``), ``C2xC4``, ``C3xC3``, ``C2xC2xC2``, ``S3``, ``S4``, ``D4``, ``Q8``."""
    return _build(name)


GROUP_NAMES = tuple(
    ["trivial"]
    + [f"C{n}" for n in range(1, 17)]
    + ["V4", "C2xC4", "C3xC3", "C2xC2xC2", "S3", "S4", "D4", "Q8"]
)


# -- actions ----------------------------------------------------------------------


def action_from_generators(
    G: FiniteGroup, A: FiniteGroup, gens: Sequence[int], images: Sequence[Sequence[int]]
) -> GModule:
    """The action sending ``gens[i]`` to the automorphism ``images[i]``.

    The table is extended along words in the generators and then validated in
    full, so inconsistent images raise :class:`NotAnAction`.
    """
    ident = tuple(range(A.order))
    act: list = [None] * G.order
    act[0] = ident
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for s, img in zip(gens, images):
                y = G.mul[x][s]
                if act[y] is None:
                    act[y] = tuple(act[x][img[a]] for a in A.elements)
                    nxt.append(y)
        frontier = nxt
    if any(row is None for row in act):
        raise InputError("generators do not generate the acting group")
    return make_module(G, A, act)


def index_two_subgroups(G: FiniteGroup) -> list[Subgroup]:
    return [H for H in all_subgroups(G) if 2 * H.order == G.order]


def inversion_module(G: FiniteGroup, A: FiniteGroup, kernel: Subgroup) -> GModule:
    """Elements outside the index-2 subgroup ``kernel`` invert the abelian ``A``."""
    flip = tuple(A.inv)
    ident = tuple(range(A.order))
    return make_module(G, A, [ident if g in kernel else flip for g in G.elements])


def _mult_aut(n: int, k: int) -> tuple[int, ...]:
    return tuple((k * a) % n for a in range(n))


def _inner(A: FiniteGroup, x: int) -> tuple[int, ...]:
    return tuple(A.conj(x, a) for a in A.elements)


def _find(A: FiniteGroup, order: int, skip: int = 0) -> int:
    hits = [x for x in A.elements if A.element_order(x) == order]
    return hits[skip]


def _named_actions() -> list[tuple[str, Callable[[], GModule]]]:
    """Actions beyond trivial, inversion and conjugation."""
    g = get_group
    v4 = g("V4")
    # V4 = C2 x C2 stored as 0, (0,1), (1,0), (1,1)
    cyc3 = (0, 2, 3, 1)
    swap = (0, 2, 1, 3)
    s3 = g("S3")
    s3_gens = [1, 2]  # the transposition and the 3-cycle as numbered by closure

    def s3_on_v4():
        perms = s3.permutations
        # S3 permuting the three non-identity elements 1, 2, 3 of V4
        return action_from_generators(
            s3, v4, s3_gens, [(0,) + tuple(1 + perms[x][i] for i in range(3)) for x in s3_gens]
        )

    c33 = g("C3xC3")
    swap33 = tuple((a % 3) * 3 + a // 3 for a in range(9))
    rot33 = tuple(((a % 3) * 3 + (-(a // 3)) % 3) for a in range(9))  # (x, y) -> (y, -x)
    c2x4 = g("C2xC4")
    inv_c4_only = tuple((a // 4) * 4 + (-(a % 4)) % 4 for a in range(8))

    return [
        ("C3 cycles V4", lambda: action_from_generators(g("C3"), v4, [1], [cyc3])),
        ("C2 swaps V4", lambda: action_from_generators(g("C2"), v4, [1], [swap])),
        ("C4 swaps V4", lambda: action_from_generators(g("C4"), v4, [1], [swap])),
        ("S3 permutes V4", s3_on_v4),
        ("C2 swaps C3xC3", lambda: action_from_generators(g("C2"), c33, [1], [swap33])),
        ("C4 rotates C3xC3", lambda: action_from_generators(g("C4"), c33, [1], [rot33])),
        ("V4 on C3xC3", lambda: action_from_generators(
            v4, c33, [1, 2], [swap33, tuple(c33.inv)])),
        ("C2 on C2xC4 inverting C4", lambda: action_from_generators(
            g("C2"), c2x4, [1], [inv_c4_only])),
        ("C4 on C5 by 2", lambda: action_from_generators(g("C4"), g("C5"), [1], [_mult_aut(5, 2)])),
        ("C2 on C5 by 4", lambda: action_from_generators(g("C2"), g("C5"), [1], [_mult_aut(5, 4)])),
        ("C3 on C7 by 2", lambda: action_from_generators(g("C3"), g("C7"), [1], [_mult_aut(7, 2)])),
        ("C2 on C8 by 3", lambda: action_from_generators(g("C2"), g("C8"), [1], [_mult_aut(8, 3)])),
        ("C2 on C8 by 5", lambda: action_from_generators(g("C2"), g("C8"), [1], [_mult_aut(8, 5)])),
        ("V4 on C8 by 3 and 5", lambda: action_from_generators(
            v4, g("C8"), [1, 2], [_mult_aut(8, 3), _mult_aut(8, 5)])),
        ("C2 on S3 by a transposition", lambda: action_from_generators(
            g("C2"), s3, [1], [_inner(s3, _find(s3, 2))])),
        ("C3 on S3 by a 3-cycle", lambda: action_from_generators(
            g("C3"), s3, [1], [_inner(s3, _find(s3, 3))])),
        ("C2 on D4 by a reflection", lambda: action_from_generators(
            g("C2"), g("D4"), [1], [_inner(g("D4"), _find(g("D4"), 2, 1))])),
        ("C2 on Q8 by i", lambda: action_from_generators(
            g("C2"), g("Q8"), [1], [_inner(g("Q8"), 2)])),
        ("C2 on D4 by a rotation", lambda: action_from_generators(
            g("C2"), g("D4"), [1], [_inner(g("D4"), _find(g("D4"), 4))])),
    ]


@dataclass(frozen=True)
class NamedModule:
    name: str
    module: GModule


ACTING = ("trivial", "C2", "C3", "C4", "V4", "S3")
COEFFICIENTS = ("C2", "C3", "C4", "V4", "C5", "C6", "S3", "C8", "C2xC4", "D4", "Q8", "C3xC3", "C9")


@lru_cache(maxsize=None)
def corpus_modules() -> tuple[NamedModule, ...]:
    """Deterministic list of validated modules, duplicates (same tables) removed."""
    out: list[NamedModule] = []
    seen: set = set()

    def add(name: str, M: GModule) -> None:
        key = (M.G.mul, M.A.mul, M.act)
        if key not in seen:
            seen.add(key)
            out.append(NamedModule(name, M))

    for gname in ACTING:
        G = get_group(gname)
        for aname in COEFFICIENTS:
            A = get_group(aname)
            add(f"{gname} trivial on {aname}", trivial_module(G, A))
            if A.is_abelian:
                for i, K in enumerate(index_two_subgroups(G)):
                    add(f"{gname} inverts {aname} (via index-2 subgroup {i})",
                        inversion_module(G, A, K))
        if G.order > 1:
            add(f"{gname} by conjugation", conjugation_module(G))
    for name, build in _named_actions():
        add(name, build())
    return tuple(out)


def get_module(name: str) -> GModule:
    for nm in corpus_modules():
        if nm.name == name:
            return nm.module
    raise InputError(f"unknown corpus module {name!r}")


# -- instance sets -------------------------------------------------------------------


@dataclass(frozen=True)
class NamedSequence:
    name: str
    sequence: object  # ShortExactSequence


def stable_normal_subgroups(M: GModule) -> list[Subgroup]:
    return [
        N for N in normal_subgroups(M.A)
        if all(M.act[g][n] in N.member_set for g in M.G.elements for n in N.members)
    ]


@lru_cache(maxsize=None)
def corpus_sequences(max_b: int = 16) -> tuple[NamedSequence, ...]:
    """``1 -> N -> B -> B/N -> 1`` for every module ``B`` of order at most
    ``max_b`` and every stable normal ``N``."""
    from .sequences import make_ses

    out = []
    for nm in corpus_modules():
        M = nm.module
        if M.A.order > max_b:
            continue
        for N in stable_normal_subgroups(M):
            _, iota = submodule(M, N)
            _, pi = quotient_module(M, N)
            S = make_ses(iota, pi)
            out.append(NamedSequence(f"{nm.name} / N={list(N.members)}", S))
    return tuple(out)


@lru_cache(maxsize=None)
def corpus_semidirect_modules(max_g: int = 8, max_a: int = 9) -> tuple[NamedModule, ...]:
    return tuple(
        nm for nm in corpus_modules() if nm.module.G.order <= max_g and nm.module.A.order <= max_a
    )


@lru_cache(maxsize=None)
def corpus_normal_pairs() -> tuple[tuple[NamedModule, Subgroup], ...]:
    """Every corpus module with every normal subgroup of its acting group."""
    return tuple((nm, N) for nm in corpus_modules() for N in normal_subgroups(nm.module.G))
