"""Finite abelian groups as products of cyclic groups, and integer linear
algebra for homomorphisms between them.

A homomorphism ``Z/s_1 x ... x Z/s_m -> Z/t_1 x ... x Z/t_r`` is stored as an
``r x m`` integer matrix acting on coordinate vectors.  Kernels, images and
subquotients are computed with Smith and Hermite normal forms over Python
integers, so there is no overflow to worry about.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd, prod
from typing import Optional, Sequence

from .errors import NotAbelian
from .group import FiniteGroup, GroupHom

Matrix = list[list[int]]


def _prime_factors(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, s, t)`` with ``s*a + t*b = g = gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


# -- normal forms -----------------------------------------------------------


def smith_normal_form(M: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(D, P, Q)`` with ``P * M * Q = D``.

    ``P`` and ``Q`` are unimodular, ``D`` is diagonal with non-negative
    entries and each diagonal entry divides the next.
    """
    A = [list(r) for r in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    P = [[int(i == j) for j in range(rows)] for i in range(rows)]
    Q = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        for R in A:
            R[i], R[j] = R[j], R[i]
        for R in Q:
            R[i], R[j] = R[j], R[i]

    def add_row(dst, src, k):
        if k:
            A[dst] = [x + k * y for x, y in zip(A[dst], A[src])]
            P[dst] = [x + k * y for x, y in zip(P[dst], P[src])]

    def add_col(dst, src, k):
        if k:
            for R in A:
                R[dst] += k * R[src]
            for R in Q:
                R[dst] += k * R[src]

    for t in range(min(rows, cols)):
        best = None
        for i in range(t, rows):
            Ri = A[i]
            for j in range(t, cols):
                v = Ri[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = A[t][t]
            for i in range(t + 1, rows):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, cols):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            # move a smaller remainder into the pivot
            cand = None
            for i in range(t + 1, rows):
                if A[i][t] and (cand is None or abs(A[i][t]) < cand[0]):
                    cand = (abs(A[i][t]), "r", i)
            for j in range(t + 1, cols):
                if A[t][j] and (cand is None or abs(A[t][j]) < cand[0]):
                    cand = (abs(A[t][j]), "c", j)
            if cand is not None:
                if cand[1] == "r":
                    swap_rows(t, cand[2])
                else:
                    swap_cols(t, cand[2])
                continue
            bad = None
            for i in range(t + 1, rows):
                Ri = A[i]
                for j in range(t + 1, cols):
                    if Ri[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            P[t] = [-x for x in P[t]]
    return A, P, Q


def diagonal(D: Matrix) -> list[int]:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def column_hermite(
    columns: Sequence[Sequence[int]], m: int, diag: Optional[Sequence[int]] = None
) -> list[list[int]]:
    """Lower-triangular basis of the lattice spanned by ``columns`` in Z^m.

    Requires full rank ``m``.  Basis vector ``j`` is zero above row ``j``,
    has a positive pivot at row ``j``, and earlier basis vectors are reduced
    into ``[0, pivot)`` at row ``j``.  When ``diag`` is given the vectors
    ``diag[k] e_k`` are added to the spanning set and used to keep entries small.
    """
    pool = [list(c) for c in columns if any(c)]
    basis: list[list[int]] = []
    for i in range(m):
        if diag is not None:
            pool.append([0] * i + [diag[i]] + [0] * (m - i - 1))
        live = [c for c in pool if c[i]]
        rest = [c for c in pool if not c[i]]
        if not live:
            raise ValueError("lattice is not of full rank")
        piv = live[0]
        for c in live[1:]:
            g, s, t = _ext_gcd(piv[i], c[i])
            a, b = piv[i] // g, c[i] // g
            new_piv = [s * x + t * y for x, y in zip(piv, c)]
            other = [b * x - a * y for x, y in zip(piv, c)]
            if diag is not None:
                for k in range(i + 1, m):
                    new_piv[k] %= diag[k]
                    other[k] %= diag[k]
            piv = new_piv
            if any(other):
                rest.append(other)
        if piv[i] < 0:
            piv = [-x for x in piv]
        basis.append(piv)
        pool = rest
    for i in range(m):
        p = basis[i]
        for c in basis[:i]:
            q = c[i] // p[i]
            if q:
                for k in range(i, m):
                    c[k] -= q * p[k]
    return basis


def reduce_by_hermite(x: Sequence[int], basis: Sequence[Sequence[int]]) -> list[int]:
    """Unique representative of ``x + lattice`` with coordinate ``j`` in ``[0, pivot_j)``.

    This is the lexicographically least non-negative member of the coset.
    """
    x = list(x)
    for j, b in enumerate(basis):
        q = x[j] // b[j]
        if q:
            for k in range(j, len(x)):
                x[k] -= q * b[k]
    return x


def _dot(row, vec) -> int:
    if isinstance(row, dict):
        return sum(c * vec[j] for j, c in row.items())
    return sum(c * v for c, v in zip(row, vec))


def solve_congruences(rows, rhs, moduli, m: int, source_moduli: Optional[Sequence[int]] = None):
    """Solve ``row_i . x = rhs_i (mod moduli_i)`` for ``x`` in Z^m.

    Rows may be dense lists or sparse ``{column: coefficient}`` dicts.
    Returns ``(x0, basis)`` where the solutions are ``x0 + span(basis)``, or
    ``None`` when there is no solution.  With ``source_moduli`` given, the
    vectors ``s_j e_j`` are assumed to solve the homogeneous system; then all
    arithmetic is done modulo their common multiple ``e`` (``e Z^m`` lies in
    the solution lattice) and the basis comes back in Hermite form.
    """
    e = None
    if source_moduli is not None:
        e = 1
        for s in source_moduli:
            e = e * s // gcd(e, s)
    K = [[int(i == j) for i in range(m)] for j in range(m)]
    x0 = [0] * m
    for row, y, t in zip(rows, rhs, moduli):
        r = (y - _dot(row, x0)) % t
        vals = [_dot(row, c) % t for c in K]
        piv = None
        for j, v in enumerate(vals):
            if not v:
                continue
            if piv is None:
                piv = j
                continue
            a, b = vals[piv], v
            g, s, u = _ext_gcd(a, b)
            Kp, Kj = K[piv], K[j]
            K[piv] = [s * p + u * q for p, q in zip(Kp, Kj)]
            K[j] = [(b // g) * p - (a // g) * q for p, q in zip(Kp, Kj)]
            if e is not None:
                K[piv] = [x % e for x in K[piv]]
                K[j] = [x % e for x in K[j]]
            vals[piv], vals[j] = g, 0
        if piv is None:
            if r:
                return None
            continue
        g = vals[piv]
        d = gcd(g, t)
        if r % d:
            return None
        tt = t // d
        c = (r // d) * pow(g // d, -1, tt) % tt if tt > 1 else 0
        if c:
            x0 = [a + c * b for a, b in zip(x0, K[piv])]
        K[piv] = [tt * a for a in K[piv]]
        if e is not None:
            x0 = [x % e for x in x0]
            K[piv] = [x % e for x in K[piv]]
            K = [col for col in K if any(col)]
    if source_moduli is not None:
        K = column_hermite(K, m, diag=list(source_moduli))
        x0 = reduce_by_hermite(x0, K)
    return x0, K


def _is_triangular(basis, m: int) -> bool:
    return len(basis) == m and all(
        basis[j][j] > 0 and not any(basis[j][:j]) for j in range(m)
    )


def subquotient_orders(
    kernel_basis: Sequence[Sequence[int]], sub_generators: Sequence[Sequence[int]], m: int
) -> list[int]:
    """Invariant factors of ``L / S`` where ``S`` is inside ``L`` (both full rank in Z^m)."""
    L = [list(v) for v in kernel_basis]
    if not _is_triangular(L, m):
        L = column_hermite(L, m)
    # coordinates of each generator of S in the triangular basis of L
    coords_cols = []
    for v in sub_generators:
        v = list(v)
        c = [0] * m
        for j in range(m):
            if v[j] % L[j][j]:
                raise ValueError("sublattice is not contained in the lattice")
            q = v[j] // L[j][j]
            c[j] = q
            if q:
                b = L[j]
                for k in range(j, m):
                    v[k] -= q * b[k]
        coords_cols.append(c)
    if m == 0:
        return []
    Y = [[coords_cols[k][i] for k in range(len(coords_cols))] for i in range(m)]
    D, _, _ = smith_normal_form(Y)
    diag = diagonal(D) if coords_cols else []
    if len(diag) < m or any(d == 0 for d in diag):
        raise ValueError("sublattice is not of full rank")
    return sorted(d for d in diag if d > 1)


# -- structures --------------------------------------------------------------


@dataclass(frozen=True)
class AbelianStructure:
    """``C_{d1} x ... x C_{dk}`` with ``d1 | d2 | ... | dk``.

    When built from a concrete group, ``generators`` are the chosen basis
    elements and ``coords`` / ``element_of`` realise the isomorphism.
    """

    cyclic_orders: tuple[int, ...]
    generators: Optional[tuple[int, ...]] = None
    coords: Optional[tuple[tuple[int, ...], ...]] = None
    element_of: Optional[dict] = None

    @property
    def order(self) -> int:
        return prod(self.cyclic_orders)

    @property
    def rank(self) -> int:
        return len(self.cyclic_orders)

    def __str__(self):
        if not self.cyclic_orders:
            return "trivial"
        return " x ".join(f"C_{d}" for d in self.cyclic_orders)

    def __eq__(self, other):
        if not isinstance(other, AbelianStructure):
            return NotImplemented
        return self.cyclic_orders == other.cyclic_orders

    def __hash__(self):
        return hash(self.cyclic_orders)


def invariant_factors(orders: Sequence[int]) -> tuple[int, ...]:
    """Invariant factors of ``prod Z/orders`` (ones dropped)."""
    by_prime: dict[int, list[int]] = {}
    for d in orders:
        for p, e in _prime_factors(d).items():
            by_prime.setdefault(p, []).append(e)
    k = max((len(v) for v in by_prime.values()), default=0)
    out = [1] * k
    for p, exps in by_prime.items():
        exps = sorted(exps, reverse=True)
        for i, e in enumerate(exps):
            out[k - 1 - i] *= p**e
    return tuple(out)


def _census_invariant_factors(A: FiniteGroup) -> tuple[int, ...]:
    return census_invariant_factors(A.element_orders)


def census_invariant_factors(orders: Sequence[int]) -> tuple[int, ...]:
    """Invariant factors of a finite abelian group from the orders of all its elements."""
    elementary = []
    for p, e in _prime_factors(len(orders)).items():
        counts = [sum(1 for o in orders if (p**j) % o == 0) for j in range(e + 1)]
        # counts[j] = p^(sum_i min(e_i, j)); successive ratios count parts >= j
        at_least = []
        for j in range(1, e + 1):
            ratio = counts[j] // counts[j - 1]
            r = 0
            while ratio > 1:
                ratio //= p
                r += 1
            at_least.append(r)
        nparts = at_least[0] if at_least else 0
        for i in range(1, nparts + 1):
            elementary.append(p ** sum(1 for r in at_least if r >= i))
    return invariant_factors(elementary)


def abelian_structure(A: FiniteGroup) -> AbelianStructure:
    """Invariant-factor decomposition with an explicit isomorphism.

    Basis elements are picked for the largest factor first, each the least
    index that still extends to a full basis (depth-first with backtracking).
    """
    if not A.is_abelian:
        raise NotAbelian(f"group of order {A.order} is not abelian")
    factors = _census_invariant_factors(A)
    want = list(reversed(factors))
    orders = A.element_orders
    mul = A.mul

    def extend(span: frozenset, x: int, d: int) -> Optional[frozenset]:
        cyc = [0]
        y = x
        while y != 0:
            cyc.append(y)
            y = mul[y][x]
        if len(cyc) != d or any(c in span for c in cyc[1:]):
            return None
        return frozenset(mul[s][c] for s in span for c in cyc)

    def search(i: int, span: frozenset, chosen: list[int]) -> Optional[list[int]]:
        if i == len(want):
            return chosen
        for x in A.elements:
            if orders[x] != want[i] or x in span:
                continue
            nxt = extend(span, x, want[i])
            if nxt is None:
                continue
            res = search(i + 1, nxt, chosen + [x])
            if res is not None:
                return res
        return None

    picked = search(0, frozenset((0,)), [])
    if picked is None:
        raise NotAbelian("no basis found for an abelian group (inconsistent table)")
    gens = tuple(reversed(picked))

    coords: list = [None] * A.order
    element_of = {}
    for vec in product(*(range(d) for d in factors)):
        x = 0
        for g, c in zip(gens, vec):
            x = mul[x][A.power(g, c)]
        coords[x] = vec
        element_of[vec] = x
    if any(c is None for c in coords):
        raise NotAbelian("coordinate map is not a bijection")
    for x in A.elements:
        for y in A.elements:
            s = tuple((a + b) % d for a, b, d in zip(coords[x], coords[y], factors))
            if element_of[s] != mul[x][y]:
                raise NotAbelian("coordinate map is not a homomorphism")
    return AbelianStructure(factors, gens, tuple(coords), element_of)


# -- homomorphisms -----------------------------------------------------------


@dataclass(frozen=True)
class IntMatrixHom:
    """Homomorphism ``prod Z/source -> prod Z/target`` given by ``matrix``.

    Moduli lists need not be in invariant-factor form; the cochain groups of a
    module are plain products of copies of the coefficient structure.
    """

    source: tuple[int, ...]
    target: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.matrix) != len(self.target):
            raise ValueError("matrix needs one row per target coordinate")
        for i, row in enumerate(self.matrix):
            if len(row) != len(self.source):
                raise ValueError("matrix needs one column per source coordinate")
            for j, a in enumerate(row):
                if (self.source[j] * a) % self.target[i]:
                    raise ValueError(
                        f"column {j} does not respect the order {self.source[j]} of its generator"
                    )

    @property
    def source_order(self) -> int:
        return prod(self.source)

    @property
    def target_order(self) -> int:
        return prod(self.target)

    def __call__(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(_dot(row, x) % t for row, t in zip(self.matrix, self.target))


@dataclass(frozen=True)
class KernelImageCokernel:
    kernel_order: int
    image_order: int
    cokernel: AbelianStructure


def hom_from_group_hom(f: GroupHom, source: AbelianStructure, target: AbelianStructure) -> IntMatrixHom:
    cols = [target.coords[f.image[g]] for g in source.generators]
    matrix = tuple(tuple(c[i] for c in cols) for i in range(target.rank))
    return IntMatrixHom(source.cyclic_orders, target.cyclic_orders, matrix)


def hom_kernel_image_cokernel(f: IntMatrixHom) -> KernelImageCokernel:
    r = len(f.target)
    if r == 0:
        return KernelImageCokernel(f.source_order, 1, AbelianStructure(()))
    aug = [list(row) + [f.target[i] if k == i else 0 for k in range(r)] for i, row in enumerate(f.matrix)]
    D, _, _ = smith_normal_form(aug)
    diag = diagonal(D)
    coker = tuple(d for d in diag if d > 1)
    coker_order = prod(coker)
    image_order = f.target_order // coker_order
    return KernelImageCokernel(f.source_order // image_order, image_order, AbelianStructure(coker))


def solve_hom(f: IntMatrixHom, y: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Lexicographically least preimage of ``y`` in reduced coordinates, or ``None``."""
    m = len(f.source)
    sol = solve_congruences(f.matrix, list(y), f.target, m, source_moduli=f.source)
    if sol is None:
        return None
    x0, _ = sol
    return tuple(x % s for x, s in zip(x0, f.source))
