"""Compare the compiled and pure-Python kernels on the two hot loops.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

from mcgcohom import kernels, shapiro
from mcgcohom.shapiro import Coefficients, FiniteAction, inverse
from mcgcohom.surface import GluingGraph


def cocycle_case(gens, degree, modulus):
    act = FiniteAction.from_cycles(gens, degree)
    coeffs = Coefficients.mod(modulus)
    hom = shapiro.cyclic_homs(act, 0, coeffs)[-1]
    u = shapiro.extend(act, 0, hom, coeffs)
    vals, m = shapiro._integer_table(u)
    inv_act = [inverse(g)[r] for g in act.elements for r in act.points]
    args = (act.order, act.degree, len(act.generators), act.right_mult_table(), list(act.parent),
            list(act.parent_gen), list(range(act.order)), inv_act, vals, m, False)
    return f"cocycle check |G|={act.order} |R|={degree}", "cocycle_violations", args


def qprime_case(n_loops, n_bridges):
    # a genus-2 piece carrying n_loops self-glued curves, joined to a torus by parallel bridges
    comps = [(2, 0, [f"l{i}{s}" for i in range(n_loops) for s in "ab"] + [f"b{i}" for i in range(n_bridges)]),
             (1, 0, [f"c{i}" for i in range(n_bridges)])]
    curves = [(f"loop{i}", (0, f"l{i}a"), (0, f"l{i}b")) for i in range(n_loops)]
    curves += [(f"bridge{i}", (0, f"b{i}"), (1, f"c{i}")) for i in range(n_bridges)]
    g = GluingGraph.build(comps, curves)
    slots = g.slots()
    pos = {s: i for i, s in enumerate(slots)}
    partner, curve_of = g.partner(), g.curve_of()
    args = ([s.component for s in slots], [pos[partner.get(s, s)] for s in slots],
            [curve_of.get(s, -1) for s in slots], [c.genus for c in g.components],
            [len(c.slots) for c in g.components], len(g.curves))
    return f"flip scan n={len(g.curves)}", "qprime_masks", args


def best_of(fn, args, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t)
    return min(times)


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--repeat", type=int, default=3)
    opts = p.parse_args()
    impls = kernels.backends()
    if "cython" not in impls:
        print("compiled extension not available; only the Python backend can be timed")
    cases = [
        cocycle_case(["(1 2)", "(1 2 3 4 5)"], 5, 2),
        cocycle_case(["(1 2)", "(1 2 3 4 5 6)"], 6, 2),
        qprime_case(12, 2),
        qprime_case(16, 2),
    ]
    print(f"{'case':32} {'python':>10} {'cython':>10} {'speedup':>8}")
    for label, name, args in cases:
        row = {k: best_of(getattr(mod, name), args, opts.repeat) for k, mod in impls.items()}
        py = row["python"]
        cy = row.get("cython")
        speed = f"{py / cy:7.1f}x" if cy else "-"
        cy_s = f"{cy:9.4f}s" if cy else "-"
        print(f"{label:32} {py:9.4f}s {cy_s:>10} {speed:>8}")


if __name__ == "__main__":
    main()
