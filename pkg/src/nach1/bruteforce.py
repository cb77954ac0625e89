"""Cohomology of small abelian modules by listing every cochain.

Independent of the lattice solver: cocycles and coboundaries are found by
evaluating the coboundary on all cochains, so it only runs at tiny sizes.
"""

from __future__ import annotations

from itertools import product

from .abelian import AbelianStructure, census_invariant_factors
from .errors import NotAbelian, SizeLimitExceeded
from .gmodule import GModule

DEFAULT_LIMIT = 10**5


def _terms(M: GModule, n: int):
    """For every ``(g1..g_{n+1})``: acting ``g1``, the index of ``(g2..)``, and
    the signed indices of the remaining faces."""
    G, N = M.G, M.G.order

    def flat(gs):
        i = 0
        for g in gs:
            i = i * N + g
        return i

    out = []
    for gs in product(G.elements, repeat=n + 1):
        faces = []
        for i in range(1, n + 1):
            merged = gs[: i - 1] + (G.mul[gs[i - 1]][gs[i]],) + gs[i + 1 :]
            faces.append((flat(merged), i % 2 == 1))
        faces.append((flat(gs[:n]), (n + 1) % 2 == 1))
        out.append((gs[0], flat(gs[1:]), faces))
    return out


def _apply(M: GModule, terms, c, stop_at_nonzero: bool):
    add, neg, act = M.A.mul, M.A.inv, M.act
    out = []
    for g, first, faces in terms:
        acc = act[g][c[first]]
        for idx, minus in faces:
            v = c[idx]
            acc = add[acc][neg[v] if minus else v]
        if stop_at_nonzero and acc:
            return None
        out.append(acc)
    return tuple(out)


def cochain_count(M: GModule, n: int) -> int:
    return M.A.order ** (M.G.order**n)


def cohomology_by_enumeration(M: GModule, n: int, limit: int = DEFAULT_LIMIT) -> AbelianStructure:
    """``Z^n / B^n`` with every cochain written out; refuses above ``limit`` cochains."""
    if not M.A.is_abelian:
        raise NotAbelian("coefficients must be abelian")
    if n < 0:
        raise ValueError("degree must be non-negative")
    size = cochain_count(M, n)
    if size > limit:
        raise SizeLimitExceeded(f"{size} cochains in degree {n} exceeds {limit}")
    A = M.A
    length = M.G.order**n
    terms = _terms(M, n)
    cocycles = []
    for c in product(A.elements, repeat=length):
        if _apply(M, terms, c, True) is not None:
            cocycles.append(c)
    if n == 0:
        boundaries = {(0,)}
    else:
        prev = _terms(M, n - 1)
        boundaries = {
            _apply(M, prev, c, False) for c in product(A.elements, repeat=M.G.order ** (n - 1))
        }
    orders = []
    for z in cocycles:
        k, acc = 1, z
        while acc not in boundaries:
            acc = tuple(A.mul[a][b] for a, b in zip(acc, z))
            k += 1
        orders.append(k)
    # each coset appears |B| times, which leaves the census ratios unchanged
    return AbelianStructure(census_invariant_factors(orders))
