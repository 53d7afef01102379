"""Random instances shared by the property tests and the acceptance run."""

from __future__ import annotations

import random

from mcgcohom import shapiro
from mcgcohom.surface import GluingGraph, validate

# (degree, generators in cycle notation); every action here is transitive
TRANSITIVE_GROUPS = [
    (1, []),
    (2, ["(1 2)"]),
    (3, ["(1 2 3)"]),
    (3, ["(1 2)", "(1 2 3)"]),
    (4, ["(1 2 3 4)"]),
    (4, ["(1 2 3 4)", "(1 3)"]),
    (4, ["(1 2)(3 4)", "(1 3)(2 4)"]),
    (4, ["(1 2 3)", "(2 3 4)"]),
    (4, ["(1 2)", "(1 2 3 4)"]),
    (5, ["(1 2 3 4 5)"]),
    (5, ["(1 2 3 4 5)", "(2 5)(3 4)"]),
    (6, ["(1 2)(3 4)(5 6)", "(1 3 5)(2 6 4)"]),
]


def action(index: int) -> shapiro.FiniteAction:
    degree, gens = TRANSITIVE_GROUPS[index]
    return shapiro.FiniteAction.from_cycles(gens, degree)


def random_cocycle(rng: random.Random, act: shapiro.FiniteAction, coeffs: shapiro.Coefficients):
    """``extend(hom) + delta f`` for random ``hom``, ``f`` and base point; returns ``(u, D, hom, f)``."""
    D = rng.randrange(act.degree)
    if coeffs.is_rational:
        stab = shapiro.stabilizer(act, D)
        hom = {h: coeffs.zero() for h in stab}
        f = [coeffs.norm(rng.randint(-5, 5)) / rng.randint(1, 3) for _ in act.points]
    else:
        hom = rng.choice(shapiro.cyclic_homs(act, D, coeffs))
        f = [rng.randrange(coeffs.modulus) for _ in act.points]
    u = shapiro.extend(act, D, hom, coeffs) + shapiro.coboundary(act, f, coeffs)
    return u, D, hom, f


def random_gluing_data(rng: random.Random, max_components: int = 4, max_curves: int = 5, max_sphere_holes: int = 6):
    """Random connected gluing data as ``(components, curves)`` in ``GluingGraph.build`` form.

    Holed spheres are kept small since their presentation grows exponentially.
    """
    while True:
        k = rng.randint(1, max_components)
        genus = [rng.choice((0, 0, 1, 1, 2)) for _ in range(k)]
        orig = [rng.randint(0, 2) for _ in range(k)]
        edges = [(i, rng.randrange(i)) for i in range(1, k)]
        for _ in range(rng.randint(0, max_curves - len(edges))):
            edges.append((rng.randrange(k), rng.randrange(k)))
        cut: list[list[str]] = [[] for _ in range(k)]
        curves = []
        for n, (a, b) in enumerate(edges):
            sa, sb = f"s{n}a", f"s{n}b"
            cut[a].append(sa)
            cut[b].append(sb)
            curves.append((f"curve{n}", (a, sa), (b, sb)))
        comps = [(genus[i], orig[i], cut[i]) for i in range(k)]
        if any(g == 0 and n + len(c) > max_sphere_holes for g, n, c in comps):
            continue
        if not validate(GluingGraph.build(comps, curves)):
            return comps, curves


def random_graph(rng: random.Random, **kw) -> GluingGraph:
    return GluingGraph.build(*random_gluing_data(rng, **kw))


def relabeled(rng: random.Random, comps, curves) -> GluingGraph:
    """The same gluing data with components, slot names and curves shuffled."""
    k = len(comps)
    order = list(range(k))
    rng.shuffle(order)
    new_index = {old: new for new, old in enumerate(order)}
    rename = {}
    new_comps = []
    for old in order:
        genus, n_orig, names = comps[old]
        names = list(names)
        rng.shuffle(names)
        fresh = []
        for name in names:
            rename[(old, name)] = f"x{len(rename)}"
            fresh.append(rename[(old, name)])
        new_comps.append((genus, n_orig, fresh))
    new_curves = []
    for cid, (ca, sa), (cb, sb) in curves:
        ends = [(new_index[ca], rename[(ca, sa)]), (new_index[cb], rename[(cb, sb)])]
        rng.shuffle(ends)
        new_curves.append((cid + "'", ends[0], ends[1]))
    rng.shuffle(new_curves)
    return GluingGraph.build(new_comps, new_curves)
