import os
import random
import subprocess
import sys

import pytest

from factories import action, random_cocycle, random_graph, TRANSITIVE_GROUPS
from mcgcohom import kernels, shapiro
from mcgcohom.shapiro import Coefficients, inverse

BACKENDS = kernels.backends()


def test_selected_backend_is_available():
    assert kernels.BACKEND in BACKENDS


def test_pure_python_override():
    env = dict(os.environ, MCGCOHOM_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from mcgcohom import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


def _qprime_args(graph):
    slots = graph.slots()
    pos = {s: i for i, s in enumerate(slots)}
    partner = graph.partner()
    curve_of = graph.curve_of()
    return (
        [s.component for s in slots],
        [pos[partner.get(s, s)] for s in slots],
        [curve_of.get(s, -1) for s in slots],
        [c.genus for c in graph.components],
        [len(c.slots) for c in graph.components],
        len(graph.curves),
    )


def _cocycle_args(u):
    a = u.action
    vals, modulus = shapiro._integer_table(u)
    inv_act = [inverse(g)[r] for g in a.elements for r in a.points]
    return (
        a.order, a.degree, len(a.generators), a.right_mult_table(), list(a.parent), list(a.parent_gen),
        list(range(a.order)), inv_act, vals, modulus,
    )


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled extension not built")
def test_qprime_backends_agree():
    rng = random.Random(7)
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    for _ in range(300):
        args = _qprime_args(random_graph(rng))
        assert list(py.qprime_masks(*args)) == list(cy.qprime_masks(*args))


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled extension not built")
def test_cocycle_backends_agree():
    rng = random.Random(8)
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    for _ in range(200):
        act = action(rng.randrange(len(TRANSITIVE_GROUPS)))
        coeffs = Coefficients.mod(rng.choice([2, 3, 5]))
        u, _, _, _ = random_cocycle(rng, act, coeffs)
        if rng.random() < 0.5:
            vals = dict(u.values)
            key = rng.choice(list(vals))
            vals[key] = (vals[key] + 1) % coeffs.modulus
            u = shapiro.CocycleTable(act, coeffs, vals)
        args = _cocycle_args(u)
        for first_only in (True, False):
            assert tuple(py.cocycle_violations(*args, first_only)) == tuple(cy.cocycle_violations(*args, first_only))


def test_rational_table_scaling():
    act = action(3)
    q = Coefficients.rationals()
    u = shapiro.coboundary(act, [shapiro.Fraction(1, 3), shapiro.Fraction(2, 7), 0], q)
    assert shapiro.verify_cocycle(u)
    vals = dict(u.values)
    vals[(act.elements[1], 0)] += shapiro.Fraction(1, 11)
    assert not shapiro.verify_cocycle(shapiro.CocycleTable(act, q, vals))


def test_huge_rationals_use_exact_path():
    act = action(3)
    q = Coefficients.rationals()
    u = shapiro.coboundary(act, [shapiro.Fraction(10**30, 7), shapiro.Fraction(1, 10**25), 0], q)
    assert shapiro._integer_table(u) is None
    assert shapiro.verify_cocycle(u)
