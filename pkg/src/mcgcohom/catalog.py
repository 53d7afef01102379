"""Gluing graphs for the standard worked examples.

Slot names follow the usual picture: ``eta11``/``eta12`` are the two
sides of the separating curve ``gamma1``, ``eta21``/``eta22`` the two
sides of ``gamma2``.
"""

from .surface import GluingGraph, empty_diagram

__all__ = [
    "empty_diagram",
    "two_curve_example",
    "nonseparating_curve",
    "boundary_parallel_curve",
    "torus_curve",
    "EXAMPLES",
]


def two_curve_example(g: int, r: int = 0) -> GluingGraph:
    """``gamma1`` cuts off a genus-2 piece, ``gamma2`` is non-separating inside it.

    Needs ``g >= 3``; the big component has genus ``g - 2``.
    """
    if g < 3:
        raise ValueError("two-curve example needs genus >= 3")
    return GluingGraph.build(
        [(1, 0, ["eta11", "eta21", "eta22"]), (g - 2, r, ["eta12"])],
        [("gamma1", (0, "eta11"), (1, "eta12")), ("gamma2", (0, "eta21"), (0, "eta22"))],
    )


def nonseparating_curve(g: int = 2, r: int = 0) -> GluingGraph:
    """A single non-separating curve on ``Sigma_{g,r}``."""
    if g < 1:
        raise ValueError("needs genus >= 1")
    return GluingGraph.build([(g - 1, r, ["left", "right"])], [("gamma", (0, "left"), (0, "right"))])


def boundary_parallel_curve(g: int = 1, r: int = 1) -> GluingGraph:
    """A curve parallel to the first boundary circle of ``Sigma_{g,r}``."""
    if r < 1:
        raise ValueError("needs at least one boundary circle")
    return GluingGraph.build(
        [(0, 1, ["inner"]), (g, r - 1, ["outer"])],
        [("delta", (0, "inner"), (1, "outer"))],
    )


def torus_curve() -> GluingGraph:
    """One essential curve on the closed torus: an annulus glued to itself."""
    return nonseparating_curve(1, 0)


EXAMPLES = {
    "empty": empty_diagram,
    "two-curve": two_curve_example,
    "nonseparating": nonseparating_curve,
    "boundary-parallel": boundary_parallel_curve,
    "torus-curve": lambda g=1, r=0: torus_curve(),
}
