"""Derivations, H^0 and H^1 with arbitrary coefficients, the standard cochain
complex for abelian coefficients, and the connecting maps.

Derivations are value tables ``values[g] = alpha(g)`` obeying
``alpha(gh) = alpha(g) * g.alpha(h)``.  Two derivations are cohomologous when
``beta(g) = a^-1 * alpha(g) * g.a`` for one ``a``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import TYPE_CHECKING, Any, Hashable, Iterable, Optional, Sequence

from . import kernels
from .abelian import (
    AbelianStructure,
    IntMatrixHom,
    abelian_structure,
    solve_congruences,
    solve_hom,
    subquotient_orders,
)
from .config import DESK_SCALE, limits
from .errors import (
    ModuleMismatch,
    NotAbelian,
    NotADerivation,
    NotCentral,
    NotCocycle,
    SizeLimitExceeded,
    TheoremCheckFailed,
    ValueNotInA,
)
from .gmodule import GModule, GModuleHom, fixed_points
from .group import Subgroup, generating_set, spanning_tree

if TYPE_CHECKING:
    from .sequences import Section, ShortExactSequence


# -- pointed sets --------------------------------------------------------------


@dataclass(frozen=True)
class PointedSet:
    elements: tuple
    basepoint: Hashable

    def __post_init__(self):
        if self.basepoint not in self.elements:
            raise ValueError("basepoint is not an element")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


@dataclass(frozen=True, eq=False)
class PointedMap:
    dom: PointedSet
    cod: PointedSet
    mapping: dict

    def __post_init__(self):
        if set(self.mapping) != set(self.dom.elements):
            raise TheoremCheckFailed("pointed map is not total on its domain")
        if self.mapping[self.dom.basepoint] != self.cod.basepoint:
            raise TheoremCheckFailed("pointed map does not preserve the basepoint")

    def __call__(self, x):
        return self.mapping[x]

    def kernel(self) -> list:
        return [x for x in self.dom.elements if self.mapping[x] == self.cod.basepoint]

    def image(self) -> list:
        seen = set(self.mapping.values())
        return [y for y in self.cod.elements if y in seen]

    @property
    def is_injective(self) -> bool:
        return len(set(self.mapping.values())) == len(self.mapping)

    @property
    def is_surjective(self) -> bool:
        return set(self.mapping.values()) == set(self.cod.elements)


def compose_pointed(f: PointedMap, g: PointedMap) -> PointedMap:
    """``f o g``."""
    return PointedMap(g.dom, f.cod, {x: f.mapping[g.mapping[x]] for x in g.dom.elements})


# -- derivations ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Derivation:
    module: GModule
    values: tuple[int, ...]

    def __call__(self, g: int) -> int:
        return self.values[g]

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.values == other.values and self.module == other.module

    def __hash__(self):
        return hash(self.values)

    def __lt__(self, other):
        return self.values < other.values

    def __repr__(self):
        return f"Derivation({list(self.values)})"


def cocycle_violation(M: GModule, values: Sequence[int]) -> Optional[tuple[int, int]]:
    """First pair ``(g, h)`` breaking the derivation law, or ``None``."""
    mg, ma, act = M.G.mul, M.A.mul, M.act
    for g in M.G.elements:
        vg, ag = values[g], act[g]
        for h in M.G.elements:
            if values[mg[g][h]] != ma[vg][ag[values[h]]]:
                return (g, h)
    return None


def make_derivation(M: GModule, values: Sequence[int]) -> Derivation:
    values = tuple(values)
    if len(values) != M.G.order or any(not 0 <= v < M.A.order for v in values):
        raise NotADerivation("value table has the wrong length or out-of-range entries")
    bad = cocycle_violation(M, values)
    if bad is not None:
        g, h = bad
        raise NotADerivation(f"alpha({g}*{h}) != alpha({g}) * {g}.alpha({h})")
    return Derivation(M, values)


def trivial_derivation(M: GModule) -> Derivation:
    return Derivation(M, (0,) * M.G.order)


def principal_derivation(M: GModule, a: int) -> Derivation:
    """``g -> a^-1 * g.a``."""
    A = M.A
    return Derivation(M, tuple(A.mul[A.inv[a]][M.act[g][a]] for g in M.G.elements))


def twist(alpha: Derivation, a: int) -> Derivation:
    """``g -> a^-1 * alpha(g) * g.a``."""
    M = alpha.module
    A = M.A
    ai = A.inv[a]
    return Derivation(
        M, tuple(A.mul[A.mul[ai][alpha.values[g]]][M.act[g][a]] for g in M.G.elements)
    )


def _orbit(M: GModule, values: Sequence[int]) -> list[tuple[int, ...]]:
    return kernels.principal_orbit(tuple(values), M.A.mul, M.A.inv, M.act)


def canonical_key(M: GModule, values: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least table cohomologous to ``values``."""
    return min(_orbit(M, values))


def enumerate_derivations(M: GModule, max_enum: Optional[int] = None) -> list[Derivation]:
    """Every derivation, in lexicographic order of value tables.

    Values are assigned to a greedy generating set and propagated along a
    breadth-first spanning tree; an assignment survives when the result obeys
    the derivation law on the whole table.
    """
    if max_enum is None:
        max_enum = limits().max_enum
    G = M.G
    gens = generating_set(G)
    if M.A.order ** len(gens) > max_enum:
        raise SizeLimitExceeded(
            f"{M.A.order}^{len(gens)} generator assignments exceed the cap {max_enum}"
        )
    order, parent, via = spanning_tree(G, gens)
    tables = kernels.derivation_tables(G.mul, M.A.mul, M.act, gens, order, parent, via)
    return [Derivation(M, t) for t in sorted(tables)]


def cohomologous(alpha: Derivation, beta: Derivation) -> Optional[int]:
    """Least ``a`` with ``beta(g) = a^-1 alpha(g) g.a`` for all ``g``, or ``None``."""
    if alpha.module != beta.module:
        raise ModuleMismatch("derivations belong to different modules")
    for a, t in enumerate(_orbit(alpha.module, alpha.values)):
        if t == beta.values:
            return a
    return None


# -- H^0 and H^1 -----------------------------------------------------------------


def h0(M: GModule) -> Subgroup:
    return fixed_points(M)


def h0_pointed(M: GModule) -> PointedSet:
    return PointedSet(h0(M).members, 0)


@dataclass(frozen=True, eq=False)
class H1Class:
    representative: Derivation
    members: Optional[tuple[Derivation, ...]]

    @property
    def key(self) -> tuple[int, ...]:
        return self.representative.values

    def __len__(self):
        return len(self.members) if self.members is not None else 0

    def __repr__(self):
        n = "?" if self.members is None else len(self.members)
        return f"H1Class({list(self.key)}, size={n})"


@dataclass(frozen=True, eq=False)
class H1:
    """``H^1(G, A)`` as a pointed set of classes; the basepoint class is first."""

    module: GModule
    classes: tuple[H1Class, ...]
    derivation_count: int

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __getitem__(self, i: int) -> H1Class:
        return self.classes[i]

    @property
    def basepoint(self) -> H1Class:
        return self.classes[0]

    @property
    def index(self) -> dict:
        idx = self.__dict__.get("_index")
        if idx is None:
            idx = {c.key: i for i, c in enumerate(self.classes)}
            object.__setattr__(self, "_index", idx)
        return idx

    def key_of(self, values: Sequence[int]) -> tuple[int, ...]:
        key = canonical_key(self.module, values)
        if key not in self.index:
            raise TheoremCheckFailed(f"{list(values)} is not a derivation of this module")
        return key

    def class_of(self, values: Sequence[int]) -> H1Class:
        return self.classes[self.index[self.key_of(values)]]

    @property
    def pointed(self) -> PointedSet:
        return PointedSet(tuple(c.key for c in self.classes), self.classes[0].key)


@lru_cache(maxsize=256)
def _h1_cached(M: GModule, max_enum: int) -> H1:
    ders = enumerate_derivations(M, max_enum)
    keep = len(ders) <= DESK_SCALE
    seen: set = set()
    classes = []
    for d in ders:
        if d.values in seen:
            continue
        orbit = sorted(set(_orbit(M, d.values)))
        if orbit[0] != d.values:
            raise TheoremCheckFailed("class representative is not lexicographically least")
        seen.update(orbit)
        members = tuple(Derivation(M, t) for t in orbit) if keep else None
        classes.append(H1Class(d, members))
    if len(seen) != len(ders):
        raise TheoremCheckFailed("a twisted derivation is missing from the enumeration")
    return H1(M, tuple(classes), len(ders))


def h1(M: GModule, max_enum: Optional[int] = None) -> H1:
    """Partition of all derivations into cohomology classes.

    Classes are ordered by their least member, so the class of the constant
    identity derivation always comes first.
    """
    return _h1_cached(M, max_enum if max_enum is not None else limits().max_enum)


def _class_tables(c: H1Class) -> Iterable[tuple[int, ...]]:
    if c.members is None:
        return [c.key]
    return [d.values for d in c.members]


def induced_h0(f: GModuleHom) -> PointedMap:
    dom = h0(f.dom)
    cod = h0(f.cod)
    mapping = {}
    for a in dom.members:
        b = f.hom.image[a]
        if b not in cod:
            raise TheoremCheckFailed(f"f({a}) is not fixed by G")
        mapping[a] = b
    return PointedMap(PointedSet(dom.members, 0), PointedSet(cod.members, 0), mapping)


def induced_h1(
    f: GModuleHom, source: Optional[H1] = None, target: Optional[H1] = None
) -> PointedMap:
    """``[alpha] -> [f o alpha]``, checked on every member of every class."""
    source = source or h1(f.dom)
    target = target or h1(f.cod)
    img = f.hom.image
    mapping = {}
    for c in source.classes:
        keys = {target.key_of(tuple(img[v] for v in t)) for t in _class_tables(c)}
        if len(keys) != 1:
            raise TheoremCheckFailed("cohomologous derivations have non-cohomologous images")
        mapping[c.key] = keys.pop()
    return PointedMap(source.pointed, target.pointed, mapping)


# -- cochains with abelian coefficients --------------------------------------------


@dataclass(frozen=True, eq=False)
class Cochain:
    """A map ``G^n -> A``; ``values`` is indexed by ``G^n`` in row-major order."""

    module: GModule
    degree: int
    values: tuple[int, ...]

    def __call__(self, *gs: int) -> int:
        return self.values[_flat_index(gs, self.module.G.order)]

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.degree, self.values) == (other.degree, other.values) and self.module == other.module

    def __hash__(self):
        return hash((self.degree, self.values))


def _flat_index(gs: Sequence[int], n: int) -> int:
    i = 0
    for g in gs:
        i = i * n + g
    return i


def _require_abelian(M: GModule) -> None:
    if not M.A.is_abelian:
        raise NotAbelian("cochain complex needs abelian coefficients")


def make_cochain(M: GModule, degree: int, values: Sequence[int]) -> Cochain:
    values = tuple(values)
    if len(values) != M.G.order**degree:
        raise ValueError(f"a degree-{degree} cochain needs {M.G.order ** degree} values")
    return Cochain(M, degree, values)


def zero_cochain(M: GModule, degree: int) -> Cochain:
    return Cochain(M, degree, (0,) * M.G.order**degree)


def hu_coboundary(c: Cochain) -> Cochain:
    """Alternating-sum coboundary; in degree 0 this is ``g -> g.a - a``."""
    M = c.module
    _require_abelian(M)
    G, A = M.G, M.A
    add, neg = A.mul, A.inv
    n = c.degree
    N = G.order
    f = c.values
    out = []
    for gs in product(G.elements, repeat=n + 1):
        acc = M.act[gs[0]][f[_flat_index(gs[1:], N)]]
        for i in range(1, n + 1):
            merged = gs[: i - 1] + (G.mul[gs[i - 1]][gs[i]],) + gs[i + 1 :]
            v = f[_flat_index(merged, N)]
            acc = add[acc][neg[v] if i % 2 else v]
        v = f[_flat_index(gs[:n], N)]
        acc = add[acc][neg[v] if (n + 1) % 2 else v]
        out.append(acc)
    return Cochain(M, n + 1, tuple(out))


@lru_cache(maxsize=256)
def _structure(A) -> AbelianStructure:
    return abelian_structure(A)


def _action_matrices(M: GModule, st: AbelianStructure):
    k = st.rank
    mats = []
    for g in M.G.elements:
        cols = [st.coords[M.act[g][x]] for x in st.generators]
        mats.append([[cols[j][i] for j in range(k)] for i in range(k)])
    return mats


def coboundary_rows(M: GModule, n: int, st: Optional[AbelianStructure] = None):
    """Sparse rows of the coboundary from degree ``n`` to ``n + 1``.

    Coordinates of a cochain are ``(tuple index) * k + (coordinate)`` where
    ``k`` is the rank of the coefficient structure.  Returns ``(rows, moduli)``.
    """
    _require_abelian(M)
    st = st or _structure(M.A)
    k = st.rank
    d = st.cyclic_orders
    mats = _action_matrices(M, st)
    G = M.G
    N = G.order
    rows, moduli = [], []
    for gs in product(G.elements, repeat=n + 1):
        first = _flat_index(gs[1:], N)
        terms = []
        for i in range(1, n + 1):
            merged = gs[: i - 1] + (G.mul[gs[i - 1]][gs[i]],) + gs[i + 1 :]
            terms.append((_flat_index(merged, N), -1 if i % 2 else 1))
        terms.append((_flat_index(gs[:n], N), -1 if (n + 1) % 2 else 1))
        mat = mats[gs[0]]
        for i in range(k):
            row: dict[int, int] = {}
            for j in range(k):
                if mat[i][j]:
                    row[first * k + j] = row.get(first * k + j, 0) + mat[i][j]
            for t, sign in terms:
                row[t * k + i] = row.get(t * k + i, 0) + sign
            row = {c: v % d[i] for c, v in row.items() if v % d[i]}
            rows.append(row)
            moduli.append(d[i])
    return rows, moduli


@lru_cache(maxsize=64)
def coboundary_hom(M: GModule, n: int) -> IntMatrixHom:
    """The coboundary from degree ``n`` as an integer matrix."""
    st = _structure(M.A)
    rows, moduli = coboundary_rows(M, n, st)
    m = M.G.order**n * st.rank
    dense = tuple(tuple(r.get(j, 0) for j in range(m)) for r in rows)
    source = st.cyclic_orders * (M.G.order**n)
    return IntMatrixHom(tuple(source), tuple(moduli), dense)


def cochain_coords(c: Cochain) -> list[int]:
    st = _structure(c.module.A)
    out = []
    for v in c.values:
        out.extend(st.coords[v])
    return out


def cochain_from_coords(M: GModule, degree: int, coords: Sequence[int]) -> Cochain:
    st = _structure(M.A)
    k = st.rank
    vals = []
    for t in range(M.G.order**degree):
        vec = tuple(x % d for x, d in zip(coords[t * k : (t + 1) * k], st.cyclic_orders))
        vals.append(st.element_of[vec])
    return Cochain(M, degree, tuple(vals))


def hu_cohomology(M: GModule, n: int, max_rank: Optional[int] = None) -> AbelianStructure:
    """Structure of ``ker d^n / im d^(n-1)`` for abelian coefficients.

    The kernel lattice is found by solving the congruences row by row; the
    quotient by the image lattice is read off a Smith normal form.
    """
    _require_abelian(M)
    if n < 0:
        raise ValueError("degree must be non-negative")
    st = _structure(M.A)
    k = st.rank
    m = M.G.order**n * k
    cap = max_rank if max_rank is not None else limits().max_cochain_rank
    if m > cap:
        raise SizeLimitExceeded(f"cochain rank {m} in degree {n} exceeds the cap {cap}")
    if k == 0:
        return AbelianStructure(())
    source = st.cyclic_orders * (M.G.order**n)
    rows, moduli = coboundary_rows(M, n, st)
    sol = solve_congruences(rows, [0] * len(rows), moduli, m, source_moduli=source)
    assert sol is not None
    _, kernel_basis = sol
    sub = [[s if i == j else 0 for i in range(m)] for j, s in enumerate(source)]
    if n > 0:
        prev_rows, _ = coboundary_rows(M, n - 1, st)
        m_prev = M.G.order ** (n - 1) * k
        cols = [[0] * m for _ in range(m_prev)]
        for r, row in enumerate(prev_rows):
            for c, v in row.items():
                cols[c][r] = v
        sub.extend(cols)
    result = AbelianStructure(tuple(subquotient_orders(kernel_basis, sub, m)))
    if n == 0 and result.order != fixed_points(M).order:
        raise TheoremCheckFailed("degree-0 cohomology disagrees with the fixed points")
    return result


# -- connecting maps ----------------------------------------------------------------


def _delta0_table(S: "ShortExactSequence", b: int) -> tuple[int, ...]:
    MB = S.pi.dom
    B = MB.A
    back = S.iota_inverse
    out = []
    for g in MB.G.elements:
        x = B.mul[B.inv[b]][MB.act[g][b]]
        if x not in back:
            raise ValueNotInA(f"b^-1 * {g}.b = {x} is not in the image of A")
        out.append(back[x])
    return tuple(out)


def delta0(S: "ShortExactSequence", c: int, target: Optional[H1] = None) -> H1Class:
    """Class of ``g -> b^-1 * g.b`` for the least preimage ``b`` of ``c``.

    Every other preimage is tried as well and must give the same class.
    """
    MC = S.pi.cod
    if any(MC.act[g][c] != c for g in MC.G.elements):
        raise ValueError(f"{c} is not fixed by G")
    target = target or h1(S.iota.dom)
    pre = S.pi.hom.preimages[c]
    key = target.key_of(_delta0_table(S, pre[0]))
    for b in pre[1:]:
        if target.key_of(_delta0_table(S, b)) != key:
            raise TheoremCheckFailed(f"delta0({c}) depends on the preimage chosen")
    return target.classes[target.index[key]]


@dataclass(frozen=True, eq=False)
class H2Class:
    """Image of a class under the second connecting map.

    ``preimage`` is a 1-cochain whose coboundary is the factor set, when one
    exists.  ``structure`` is the full second cohomology group when it was
    within the size caps.
    """

    factor_set: Cochain
    is_coboundary: bool
    preimage: Optional[Cochain]
    structure: Optional[AbelianStructure]


def factor_set_violation(f: Cochain) -> Optional[tuple[int, int, int]]:
    M = f.module
    G, A = M.G, M.A
    for g, h, k in product(G.elements, repeat=3):
        lhs = A.mul[M.act[g][f(h, k)]][f(g, G.mul[h][k])]
        rhs = A.mul[f(G.mul[g][h], k)][f(g, h)]
        if lhs != rhs:
            return (g, h, k)
    return None


def _factor_set(S: "ShortExactSequence", s: Sequence[int], alpha: Sequence[int]) -> Cochain:
    MB = S.pi.dom
    B = MB.A
    G = MB.G
    back = S.iota_inverse
    vals = []
    for g, h in product(G.elements, repeat=2):
        x = B.mul[B.mul[s[alpha[g]]][MB.act[g][s[alpha[h]]]]][B.inv[s[alpha[G.mul[g][h]]]]]
        if x not in back:
            raise ValueNotInA(f"factor set value at ({g}, {h}) is outside the image of A")
        vals.append(back[x])
    return Cochain(S.iota.dom, 2, tuple(vals))


def coboundary_preimage(f: Cochain) -> Optional[Cochain]:
    """A 1-cochain whose coboundary is ``f``, or ``None``."""
    M = f.module
    x = solve_hom(coboundary_hom(M, 1), cochain_coords(f))
    if x is None:
        return None
    return cochain_from_coords(M, 1, x)


def cochain_difference(f: Cochain, g: Cochain) -> Cochain:
    A = f.module.A
    return Cochain(f.module, f.degree, tuple(A.mul[a][A.inv[b]] for a, b in zip(f.values, g.values)))


def same_h2_class(f: Cochain, g: Cochain) -> bool:
    return coboundary_preimage(cochain_difference(f, g)) is not None


def delta1(
    S: "ShortExactSequence",
    k: H1Class,
    section: Optional["Section"] = None,
    verify: bool = True,
    with_structure: bool = True,
) -> H2Class:
    """Factor set ``(g, h) -> s(a(g)) * g.s(a(h)) * s(a(gh))^-1`` and its H^2 class.

    With ``verify`` set, every other member of the class and the least-preimage
    section must yield a cohomologous factor set.
    """
    if not S.central:
        raise NotCentral("image of A is not central in B")
    from .sequences import choose_section

    s = (section or choose_section(S)).values
    alpha = k.representative.values
    f = _factor_set(S, s, alpha)
    bad = factor_set_violation(f)
    if bad is not None:
        raise NotCocycle(f"factor set identity fails at {bad}")
    pre = coboundary_preimage(f)
    if verify:
        default = choose_section(S).values
        others = [(s, d.values) for d in (k.members or ())[:] if d.values != alpha]
        if tuple(default) != tuple(s):
            others.append((default, alpha))
        for sec, beta in others:
            if not same_h2_class(f, _factor_set(S, sec, beta)):
                raise TheoremCheckFailed("second connecting map depends on choices")
    structure = None
    if with_structure:
        try:
            structure = hu_cohomology(S.iota.dom, 2)
        except SizeLimitExceeded:
            structure = None
    return H2Class(f, pre is not None, pre, structure)


def describe(x: Any) -> str:
    if isinstance(x, tuple):
        return "[" + ", ".join(map(str, x)) + "]"
    return str(x)
