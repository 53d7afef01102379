"""Rational H_1 of the stabilizer of a multicurve.

Given a gluing graph for ``Sigma`` cut along ``D``:

1. ``H_1(Gamma'; Q)`` of the cut surface is the direct sum of the
   component homologies;
2. take coinvariants under ``Q'``, the gluing-compatible permutations
   of boundary slots (each realized as a set of curves whose two sides
   are exchanged);
3. divide out the image of ``Z^n``, one vector ``tau_b - tau_b'`` per
   curve with sides ``b, b'``.

The dimension left over is ``dim H_1(Gamma_D; Q)``, which is also the
complex dimension of ``H^1(Gamma, hat M_D)``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction

from . import kernels
from .exactlin import Echelon, QuotientSpace, RatMatrix, _build_quotient, image_span
from .surface import GluingGraph, SlotId, SlotKind, SurfaceStats, reassemble, validate
from .twist_homology import ComponentHomology, TwistLabel, component_homology, relabel

DEFAULT_QPRIME_CAP = 20


class SizeLimit(RuntimeError):
    """Too many curves for exhaustive enumeration of flip subsets."""


class InvalidGraph(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


@dataclass(frozen=True)
class QPrimeElement:
    flips: frozenset[int]
    component_perm: tuple[int, ...]

    def slot_map(self, graph: GluingGraph) -> dict[SlotId, SlotId]:
        partner = graph.partner()
        curve_of = graph.curve_of()
        return {
            s: partner[s] if s in curve_of and curve_of[s] in self.flips else s
            for s in graph.slots()
        }

    def compose(self, other: "QPrimeElement") -> "QPrimeElement":
        perm = tuple(self.component_perm[other.component_perm[i]] for i in range(len(self.component_perm)))
        return QPrimeElement(self.flips ^ other.flips, perm)


@dataclass(frozen=True)
class QPrimeGroup:
    elements: tuple[QPrimeElement, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def flip_sets(self) -> set[frozenset[int]]:
        return {e.flips for e in self.elements}


@dataclass(frozen=True)
class TwistSpace:
    """Direct sum of component homologies on one global list of labels."""

    components: tuple[ComponentHomology, ...]
    labels: tuple[TwistLabel, ...]
    offsets: tuple[int, ...]
    space: QuotientSpace

    @property
    def dim(self) -> int:
        return self.space.dim

    def column(self, label: TwistLabel) -> int:
        return self._index[label]

    @functools.cached_property
    def _index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.labels)}

    def boundary_vector(self, slot: SlotId) -> list[int]:
        """Ambient vector of the twist about a boundary slot (zero if trivial)."""
        v = [0] * len(self.labels)
        h = self.components[slot.component]
        lab = h.boundary_label.get(slot)
        if lab is not None:
            v[self.offsets[slot.component] + h.column(lab)] = 1
        return v


@dataclass(frozen=True)
class H1Report:
    dimension: int
    surviving_basis: tuple[TwistLabel, ...]
    dim_H1_gamma_prime: int
    dim_coinvariants: int
    qprime_order: int
    surface: SurfaceStats
    space: QuotientSpace = field(repr=False, compare=False)
    twist_space: TwistSpace = field(repr=False, compare=False)

    @property
    def intermediate(self) -> dict[str, int]:
        return {
            "dim_H1_gamma_prime": self.dim_H1_gamma_prime,
            "dim_coinvariants": self.dim_coinvariants,
            "qprime_order": self.qprime_order,
        }

    def class_of(self, label: TwistLabel) -> tuple[Fraction, ...]:
        """Coordinates of a twist class in the final quotient."""
        return self.space.unit(self.twist_space.column(label))

    def to_json(self, details: bool = False) -> dict:
        out = {
            "dimension": self.dimension,
            "surviving_basis": [str(lab) for lab in self.surviving_basis],
            "intermediate": self.intermediate,
            "surface": self.surface.to_json(),
        }
        if details:
            out["components"] = [
                {
                    "component": h.component,
                    "genus": h.genus,
                    "boundary_count": h.boundary_count,
                    "dim": h.dim,
                    "basis": [str(lab) for lab in h.basis_labels()],
                }
                for h in self.twist_space.components
            ]
            out["surface_details"] = {
                "components": self.surface.components,
                "total_genus_gprime": self.surface.total_genus_gprime,
                "total_boundary_rprime": self.surface.total_boundary_rprime,
                "n_prime": self.surface.n_prime,
                "n_double_prime": self.surface.n_double_prime,
            }
        return out


def _require_valid(graph: GluingGraph) -> None:
    bad = validate(graph)
    if bad:
        raise InvalidGraph(bad)


def enumerate_qprime(graph: GluingGraph, cap: int = DEFAULT_QPRIME_CAP) -> QPrimeGroup:
    """All flip subsets inducing a genus- and slot-count-preserving component permutation."""
    _require_valid(graph)
    n = len(graph.curves)
    if n > cap:
        raise SizeLimit(f"{n} curves exceed the flip-enumeration cap of {cap}")
    slots = graph.slots()
    pos = {s: i for i, s in enumerate(slots)}
    partner = graph.partner()
    curve_of = graph.curve_of()
    masks = kernels.qprime_masks(
        [s.component for s in slots],
        [pos[partner.get(s, s)] for s in slots],
        [curve_of.get(s, -1) for s in slots],
        [c.genus for c in graph.components],
        [len(c.slots) for c in graph.components],
        n,
    )
    elements = []
    for mask in masks:
        flips = frozenset(i for i in range(n) if mask >> i & 1)
        perm = list(range(len(graph.components)))
        for i in flips:
            a, b = graph.curves[i].end_a.component, graph.curves[i].end_b.component
            perm[a] = b
            perm[b] = a
        elements.append(QPrimeElement(flips, tuple(perm)))
    return QPrimeGroup(tuple(elements))


def h1_gamma_prime(graph: GluingGraph) -> TwistSpace:
    """``H_1`` of the mapping class group of the cut surface."""
    _require_valid(graph)
    comps = tuple(component_homology(c.genus, c.slots, ci) for ci, c in enumerate(graph.components))
    labels: list[TwistLabel] = []
    offsets = []
    for h in comps:
        offsets.append(len(labels))
        labels.extend(h.labels)
    e = Echelon(len(labels))
    rows = []
    for h, off in zip(comps, offsets):
        # the component's reduced relations span the same space as its full list
        for row in h.space._echelon.rref_rows():
            v = [Fraction(0)] * len(labels)
            v[off : off + len(row)] = row
            rows.append(v)
            e.add(v)
    space = _build_quotient(len(labels), RatMatrix(rows, len(labels)), e)
    return TwistSpace(comps, tuple(labels), tuple(offsets), space)


def coinvariant_relations(graph: GluingGraph, ts: TwistSpace, group: QPrimeGroup) -> list[list[int]]:
    """Vectors ``v - sigma v`` on ambient twist labels, for all group elements."""
    index = ts._index
    pairs = set()
    for el in group.elements:
        if not el.flips:
            continue
        sigma = el.slot_map(graph)
        for src in ts.components:
            dst = ts.components[el.component_perm[src.component]]
            for lab in src.labels:
                img = relabel(lab, sigma, src, dst)
                i, j = index[lab], index[img]
                if i != j:
                    pairs.add((min(i, j), max(i, j)))
    rows = []
    for i, j in sorted(pairs):
        v = [0] * len(ts.labels)
        v[i], v[j] = 1, -1
        rows.append(v)
    return rows


def h1_stabilizer(graph: GluingGraph, qprime_cap: int = DEFAULT_QPRIME_CAP) -> H1Report:
    """Dimension of ``H_1(Gamma_D; Q)`` with a basis of surviving twist classes."""
    _require_valid(graph)
    stats = reassemble(graph)
    group = enumerate_qprime(graph, qprime_cap)
    ts = h1_gamma_prime(graph)
    coinv = image_span(coinvariant_relations(graph, ts, group), ts.space)
    zn = []
    for c in graph.curves:
        a, b = ts.boundary_vector(c.end_a), ts.boundary_vector(c.end_b)
        zn.append([x - y for x, y in zip(a, b)])
    final = image_span(zn, coinv)
    survivors = tuple(ts.labels[j] for j in final.basis_columns)
    return H1Report(
        dimension=final.dim,
        surviving_basis=survivors,
        dim_H1_gamma_prime=ts.dim,
        dim_coinvariants=coinv.dim,
        qprime_order=group.order,
        surface=stats,
        space=final,
        twist_space=ts,
    )


def slot_lookup(graph: GluingGraph, component: int, name: str) -> SlotId:
    for s in graph.components[component].slots:
        if s.name == name:
            return s
    raise KeyError((component, name))


__all__ = [
    "DEFAULT_QPRIME_CAP",
    "H1Report",
    "InvalidGraph",
    "QPrimeElement",
    "QPrimeGroup",
    "SizeLimit",
    "SlotKind",
    "TwistSpace",
    "coinvariant_relations",
    "enumerate_qprime",
    "h1_gamma_prime",
    "h1_stabilizer",
    "slot_lookup",
]
