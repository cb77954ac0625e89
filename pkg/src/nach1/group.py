"""Finite groups as validated multiplication tables.

Elements are the integers ``0..n-1`` and the identity is always ``0``.  All
objects here are immutable; derived data is cached lazily.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

from . import kernels
from .config import limits
from .errors import (
    InvalidSubgroup,
    InvalidTable,
    NotAHomomorphism,
    NotAPermutation,
    NotNormal,
    SizeLimitExceeded,
)

Table = tuple[tuple[int, ...], ...]

EXHAUSTIVE_ASSOCIATIVITY_BOUND = 256


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    mul: Table
    inv: tuple[int, ...]
    label: Optional[str] = None
    names: Optional[tuple[str, ...]] = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return len(self.mul)

    def __len__(self) -> int:
        return len(self.mul)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.mul == other.mul

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash(self.mul)

    def __repr__(self):
        return f"FiniteGroup(order={self.order}, label={self.label!r})"

    @property
    def elements(self) -> range:
        return range(len(self.mul))

    def m(self, x: int, y: int) -> int:
        return self.mul[x][y]

    def prod(self, *xs: int) -> int:
        r = 0
        for x in xs:
            r = self.mul[r][x]
        return r

    def conj(self, g: int, x: int) -> int:
        """``g x g^-1``."""
        return self.mul[self.mul[g][x]][self.inv[g]]

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv[x], -k
        r = 0
        for _ in range(k):
            r = self.mul[r][x]
        return r

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for x in self.elements:
            k, y = 1, x
            while y != 0:
                y = self.mul[y][x]
                k += 1
            out.append(k)
        return tuple(out)

    def element_order(self, x: int) -> int:
        return self.element_orders[x]

    @cached_property
    def is_abelian(self) -> bool:
        mul = self.mul
        return all(mul[x][y] == mul[y][x] for x in self.elements for y in range(x))

    def name(self, x: int) -> str:
        if self.names is not None:
            return self.names[x]
        return str(x)


def _inverses(mul: Sequence[Sequence[int]]) -> tuple[int, ...]:
    n = len(mul)
    inv = [-1] * n
    for x in range(n):
        row = mul[x]
        for y in range(n):
            if row[y] == 0 and mul[y][x] == 0:
                inv[x] = y
                break
        if inv[x] < 0:
            raise InvalidTable(f"element {x} has no two-sided inverse")
    return tuple(inv)


def _trusted_group(mul, label=None, names=None) -> FiniteGroup:
    """Builds a group from a table already known to satisfy the axioms."""
    mul = tuple(tuple(r) for r in mul)
    return FiniteGroup(mul, _inverses(mul), label, names)


def make_group_from_table(
    table: Sequence[Sequence[int]],
    label: Optional[str] = None,
    trust_table: Optional[bool] = None,
    names: Optional[Sequence[str]] = None,
) -> FiniteGroup:
    """Validate a Cayley table and relabel so that the identity is ``0``.

    The non-identity elements keep their relative order.  Associativity is
    checked exhaustively up to order 256; above that a seeded sample of
    256**3 triples is tested unless ``trust_table`` is set (by default it
    follows the process-wide ``trust_tables`` setting).
    """
    if trust_table is None:
        trust_table = limits().trust_tables
    n = len(table)
    if n == 0:
        raise InvalidTable("empty table")
    rows = []
    for i, row in enumerate(table):
        row = list(row)
        if len(row) != n:
            raise InvalidTable(f"row {i} has length {len(row)}, expected {n}")
        for j, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < n:
                raise InvalidTable(f"entry ({i}, {j}) = {v!r} is out of range [0, {n})")
        rows.append(row)

    ident = None
    for e in range(n):
        if all(rows[e][x] == x and rows[x][e] == x for x in range(n)):
            ident = e
            break
    if ident is None:
        raise InvalidTable("no identity element")

    new_to_old = [ident] + [x for x in range(n) if x != ident]
    old_to_new = {old: new for new, old in enumerate(new_to_old)}
    mul = tuple(
        tuple(old_to_new[rows[new_to_old[i]][new_to_old[j]]] for j in range(n))
        for i in range(n)
    )
    inv = _inverses(mul)

    if n <= EXHAUSTIVE_ASSOCIATIVITY_BOUND:
        bad = kernels.associativity_witness(mul)
    elif trust_table:
        bad = None
    else:
        rng = random.Random(n)
        samples = EXHAUSTIVE_ASSOCIATIVITY_BOUND**3
        triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(samples))
        bad = kernels.associativity_witness_sampled(mul, triples)
    if bad is not None:
        x, y, z = (new_to_old[t] for t in bad)
        raise InvalidTable(f"not associative at triple ({x}, {y}, {z}) of the input table")

    if names is not None:
        names = tuple(names[new_to_old[i]] for i in range(n))
    group = FiniteGroup(mul, inv, label, names)
    # input_order[i] is the row of the input table that became element i
    object.__setattr__(group, "input_order", tuple(new_to_old))
    return group


def _check_perm(p, degree: int) -> tuple[int, ...]:
    p = tuple(p)
    if len(p) != degree or sorted(p) != list(range(degree)):
        raise NotAPermutation(f"{list(p)} is not a permutation of {degree} points")
    return p


def cycle_string(p: Sequence[int]) -> str:
    seen = set()
    parts = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


def make_group_from_permutations(
    degree: int,
    generators: Iterable[Sequence[int]],
    label: Optional[str] = None,
    max_order: Optional[int] = None,
) -> FiniteGroup:
    """Close a set of permutations (one-line notation) breadth first.

    Products are ``x*y = x o y`` (apply ``y`` first).  Elements are numbered in
    order of discovery, so the identity is ``0`` and then come the generators.
    """
    if max_order is None:
        max_order = limits().max_order
    gens = [_check_perm(g, degree) for g in generators]
    ident = tuple(range(degree))
    elems = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple(x[g[i]] for i in range(degree))
            if y not in index:
                if len(elems) >= max_order:
                    raise SizeLimitExceeded(
                        f"generated group exceeds the order cap {max_order}"
                    )
                index[y] = len(elems)
                elems.append(y)
                queue.append(y)
    mul = tuple(
        tuple(index[tuple(x[y[i]] for i in range(degree))] for y in elems) for x in elems
    )
    group = _trusted_group(mul, label, tuple(cycle_string(p) for p in elems))
    object.__setattr__(group, "permutations", tuple(elems))
    return group


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    members: tuple[int, ...]

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.members == other.members and self.parent == other.parent

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        return f"Subgroup({list(self.members)} of {self.parent!r})"

    def __contains__(self, x: int) -> bool:
        return x in self.member_set

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    @property
    def order(self) -> int:
        return len(self.members)

    @cached_property
    def member_set(self) -> frozenset:
        return frozenset(self.members)

    @cached_property
    def position(self) -> dict:
        return {x: i for i, x in enumerate(self.members)}

    @cached_property
    def as_group(self) -> FiniteGroup:
        """The subgroup re-indexed as a group in its own right (ascending)."""
        pos = self.position
        mul = self.parent.mul
        table = [[pos[mul[x][y]] for y in self.members] for x in self.members]
        names = None
        if self.parent.names is not None:
            names = tuple(self.parent.names[x] for x in self.members)
        return _trusted_group(table, None, names)

    @cached_property
    def inclusion(self) -> "GroupHom":
        return GroupHom(self.as_group, self.parent, tuple(self.members))


def make_subgroup(G: FiniteGroup, members: Iterable[int]) -> Subgroup:
    ms = tuple(sorted(set(members)))
    if not ms or ms[0] != 0:
        raise InvalidSubgroup("a subgroup must contain the identity 0")
    if ms[-1] >= G.order or ms[0] < 0:
        raise InvalidSubgroup(f"member out of range [0, {G.order})")
    s = set(ms)
    for x in ms:
        if G.inv[x] not in s:
            raise InvalidSubgroup(f"not closed under inverses at {x}")
        for y in ms:
            if G.mul[x][y] not in s:
                raise InvalidSubgroup(f"not closed under products at ({x}, {y})")
    return Subgroup(G, ms)


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (0,))


def whole_group(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(G.elements))


def _closure(G: FiniteGroup, start: Iterable[int], seeds: Iterable[int]) -> set:
    """Subgroup generated by ``start`` together with ``seeds``."""
    gens = sorted(set(start) | set(seeds))
    members = {0}
    frontier = [0]
    mul = G.mul
    # right multiplication by generators reaches every word in a finite group
    while frontier:
        nxt = []
        for x in frontier:
            row = mul[x]
            for s in gens:
                y = row[s]
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    return members


def subgroup_generated(G: FiniteGroup, seeds: Iterable[int]) -> Subgroup:
    seeds = list(seeds)
    for s in seeds:
        if not 0 <= s < G.order:
            raise IndexError(f"element {s} out of range [0, {G.order})")
    # finite group: closing under right multiplication by the seeds suffices
    return Subgroup(G, tuple(sorted(_closure(G, (), seeds))))


def join(G: FiniteGroup, H: Subgroup, x: int) -> Subgroup:
    return Subgroup(G, tuple(sorted(_closure(G, H.members, [x]))))


def is_normal(G: FiniteGroup, N: Subgroup) -> bool:
    s = N.member_set
    return all(G.conj(g, n) in s for g in G.elements for n in N.members)


def conjugate_subgroup(G: FiniteGroup, g: int, X: Subgroup) -> Subgroup:
    """``g X g^-1``."""
    return Subgroup(G, tuple(sorted(G.conj(g, x) for x in X.members)))


def are_conjugate_subgroups(G: FiniteGroup, X: Subgroup, Y: Subgroup) -> Optional[int]:
    """Least ``g`` with ``g X g^-1 = Y``, or ``None``."""
    if X.order != Y.order:
        return None
    target = Y.members
    for g in G.elements:
        if conjugate_subgroup(G, g, X).members == target:
            return g
    return None


def center(G: FiniteGroup) -> Subgroup:
    mul = G.mul
    return Subgroup(
        G, tuple(z for z in G.elements if all(mul[z][g] == mul[g][z] for g in G.elements))
    )


@dataclass(frozen=True, eq=False)
class GroupHom:
    dom: FiniteGroup
    cod: FiniteGroup
    image: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.image[x]

    def __eq__(self, other):
        if not isinstance(other, GroupHom):
            return NotImplemented
        return self.image == other.image and self.dom == other.dom and self.cod == other.cod

    def __hash__(self):
        return hash(self.image)

    @cached_property
    def kernel(self) -> Subgroup:
        return Subgroup(self.dom, tuple(x for x in self.dom.elements if self.image[x] == 0))

    @cached_property
    def image_subgroup(self) -> Subgroup:
        return Subgroup(self.cod, tuple(sorted(set(self.image))))

    @property
    def is_injective(self) -> bool:
        return len(set(self.image)) == len(self.image)

    @property
    def is_surjective(self) -> bool:
        return len(set(self.image)) == self.cod.order

    @cached_property
    def preimages(self) -> dict:
        """Ascending preimage lists keyed by image element."""
        out: dict = {}
        for x, y in enumerate(self.image):
            out.setdefault(y, []).append(x)
        return out


def make_hom(dom: FiniteGroup, cod: FiniteGroup, image: Sequence[int]) -> GroupHom:
    image = tuple(image)
    if len(image) != dom.order:
        raise NotAHomomorphism(f"image table has length {len(image)}, expected {dom.order}")
    for x, y in enumerate(image):
        if not 0 <= y < cod.order:
            raise NotAHomomorphism(f"image of {x} is out of range")
    dm, cm = dom.mul, cod.mul
    for x in dom.elements:
        for y in dom.elements:
            if image[dm[x][y]] != cm[image[x]][image[y]]:
                raise NotAHomomorphism(f"f({x}*{y}) != f({x})*f({y})")
    return GroupHom(dom, cod, image)


def identity_hom(G: FiniteGroup) -> GroupHom:
    return GroupHom(G, G, tuple(G.elements))


def compose(f: GroupHom, g: GroupHom) -> GroupHom:
    """``f o g`` (apply ``g`` first)."""
    if g.cod != f.dom:
        raise NotAHomomorphism("cannot compose: codomain and domain differ")
    return GroupHom(g.dom, f.cod, tuple(f.image[y] for y in g.image))


def quotient_group(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, GroupHom]:
    """``G/N`` with cosets ordered by least representative, and the projection."""
    if not is_normal(G, N):
        raise NotNormal(f"{list(N.members)} is not normal")
    coset_of = [-1] * G.order
    reps = []
    for g in G.elements:
        if coset_of[g] < 0:
            idx = len(reps)
            reps.append(g)
            for n in N.members:
                coset_of[G.mul[g][n]] = idx
    table = [[coset_of[G.mul[a][b]] for b in reps] for a in reps]
    names = None
    if G.names is not None:
        names = tuple(G.names[r] + "N" if r else "N" for r in reps)
    Q = _trusted_group(table, f"{G.label or 'G'}/N", names)
    object.__setattr__(Q, "coset_reps", tuple(reps))
    return Q, GroupHom(G, Q, tuple(coset_of))


def direct_product(G: FiniteGroup, H: FiniteGroup, label: Optional[str] = None) -> FiniteGroup:
    """Pairs ``(g, h)`` stored at index ``g*|H| + h``."""
    nh = H.order
    n = G.order * nh
    table = [
        [G.mul[x // nh][y // nh] * nh + H.mul[x % nh][y % nh] for y in range(n)]
        for x in range(n)
    ]
    return _trusted_group(table, label)


def generating_set(G: FiniteGroup) -> tuple[int, ...]:
    """Greedy: scan elements in index order, keep those outside the span so far."""
    gens: list[int] = []
    span: set = {0}
    for x in G.elements:
        if x not in span:
            gens.append(x)
            span = _closure(G, span, [x])
            if len(span) == G.order:
                break
    return tuple(gens)


def spanning_tree(G: FiniteGroup, gens: Sequence[int]):
    """Breadth-first words: ``e = parent[e] * gens[via[e]]``.

    Returns ``(order, parent, via)`` where ``order`` lists non-identity
    elements so that every parent precedes its children.
    """
    n = G.order
    parent = [0] * n
    via = [0] * n
    seen = [False] * n
    seen[0] = True
    order = []
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for i, s in enumerate(gens):
                y = G.mul[x][s]
                if not seen[y]:
                    seen[y] = True
                    parent[y] = x
                    via[y] = i
                    order.append(y)
                    nxt.append(y)
        frontier = nxt
    if len(order) != n - 1:
        raise ValueError("the given elements do not generate the group")
    return order, parent, via


def enumerate_homs(G: FiniteGroup, H: FiniteGroup) -> list[GroupHom]:
    """All homomorphisms ``G -> H`` in lexicographic order of image tables."""
    gens = generating_set(G)
    order, parent, via = spanning_tree(G, gens)
    trivial = tuple(tuple(range(H.order)) for _ in G.elements)
    tables = kernels.derivation_tables(G.mul, H.mul, trivial, gens, order, parent, via)
    return [GroupHom(G, H, t) for t in sorted(tables)]


def all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every subgroup, sorted by (order, members)."""
    seen = {(0,)}
    stack = [frozenset((0,))]
    while stack:
        H = stack.pop()
        for x in G.elements:
            if x in H:
                continue
            K = frozenset(_closure(G, H, [x]))
            key = tuple(sorted(K))
            if key not in seen:
                seen.add(key)
                stack.append(K)
    return [Subgroup(G, m) for m in sorted(seen, key=lambda m: (len(m), m))]


def normal_subgroups(G: FiniteGroup) -> list[Subgroup]:
    return [N for N in all_subgroups(G) if is_normal(G, N)]
