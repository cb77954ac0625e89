"""Pure-Python hot loops; the Cython module ``_ckernels`` mirrors these
signatures exactly and is preferred when it was built."""

from itertools import product


def associativity_witness(mul):
    """First ``(x, y, z)`` with ``(xy)z != x(yz)``, or ``None``."""
    n = len(mul)
    for x in range(n):
        rx = mul[x]
        for y in range(n):
            xy = rx[y]
            rxy = mul[xy]
            ry = mul[y]
            for z in range(n):
                if rxy[z] != rx[ry[z]]:
                    return (x, y, z)
    return None


def associativity_witness_sampled(mul, triples):
    for x, y, z in triples:
        if mul[mul[x][y]][z] != mul[x][mul[y][z]]:
            return (x, y, z)
    return None


def derivation_tables(mul_g, mul_a, act, gens, order, parent, via):
    """All value tables of derivations G -> A.

    ``order`` lists the non-identity elements of G so that ``parent[e]`` comes
    before ``e`` and ``e = parent[e] * gens[via[e]]``.
    """
    n = len(mul_g)
    na = len(mul_a)
    k = len(gens)
    found = []
    values = [0] * n
    for assign in product(range(na), repeat=k):
        for e in order:
            p = parent[e]
            values[e] = mul_a[values[p]][act[p][assign[via[e]]]]
        ok = True
        # generators suffice for the filter; survivors get the full check below
        for x in range(n):
            vx = values[x]
            ax = act[x]
            rx = mul_g[x]
            for i in range(k):
                if values[rx[gens[i]]] != mul_a[vx][ax[assign[i]]]:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        for g in range(n):
            vg = values[g]
            ag = act[g]
            rg = mul_g[g]
            for h in range(n):
                if values[rg[h]] != mul_a[vg][ag[values[h]]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.append(tuple(values))
    return found


def principal_orbit(values, mul_a, inv_a, act):
    """Tables ``g -> a^-1 * values[g] * (g.a)`` for every ``a`` in order."""
    n = len(values)
    out = []
    for a in range(len(mul_a)):
        row_inv = mul_a[inv_a[a]]
        out.append(tuple(mul_a[row_inv[values[g]]][act[g][a]] for g in range(n)))
    return out
