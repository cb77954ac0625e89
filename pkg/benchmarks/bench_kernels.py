"""Time the compiled kernels against their pure-Python twins.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import timeit

from nach1 import _kernels_py
from nach1.corpus import get_group
from nach1.gmodule import conjugation_module, trivial_module
from nach1.group import direct_product, generating_set, spanning_tree

try:
    from nach1 import _ckernels
except ImportError:
    _ckernels = None


def workloads():
    big = direct_product(get_group("S4"), get_group("C6"))
    mul = [list(r) for r in big.mul]
    yield f"associativity, order {big.order}", "associativity_witness", (mul,)

    rng = random.Random(0)
    triples = [tuple(rng.randrange(big.order) for _ in range(3)) for _ in range(200000)]
    yield "sampled associativity, 200k triples", "associativity_witness_sampled", (mul, triples)

    C2cubed = get_group("C2xC2xC2")
    for label, M in (
        ("derivations C2^3 trivial on S4", trivial_module(C2cubed, get_group("S4"))),
        ("derivations S4 by conjugation", conjugation_module(get_group("S4"))),
        ("derivations C2^3 trivial on C3xC3", trivial_module(C2cubed, get_group("C3xC3"))),
    ):
        gens = generating_set(M.G)
        order, parent, via = spanning_tree(M.G, gens)
        yield label, "derivation_tables", (M.G.mul, M.A.mul, M.act, gens, order, parent, via)

    M = conjugation_module(direct_product(get_group("S4"), get_group("S3")))
    values = tuple(M.A.inv[g] for g in M.G.elements)
    yield f"principal orbit, order {M.A.order} by conjugation", "principal_orbit", (values, M.A.mul, M.A.inv, M.act)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels are not built; only the pure-Python timings are shown")
    print(f"{'workload':42} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for label, fn, call_args in workloads():
        py = min(timeit.repeat(lambda: getattr(_kernels_py, fn)(*call_args), number=1, repeat=args.repeat))
        if _ckernels is None:
            print(f"{label:42} {py * 1e3:10.2f}")
            continue
        cy = min(timeit.repeat(lambda: getattr(_ckernels, fn)(*call_args), number=1, repeat=args.repeat))
        print(f"{label:42} {py * 1e3:10.2f} {cy * 1e3:10.2f} {py / cy:7.1f}x")


if __name__ == "__main__":
    main()
