"""Surfaces cut along a multicurve.

A :class:`GluingGraph` records the cut surface directly: its connected
components (genus plus boundary slots) and which pairs of cut slots are
glued back together.  Original boundary slots are the boundary of the
uncut surface.  No embedding of the curves is stored.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Iterable


class SurfaceError(ValueError):
    pass


class NonIntegralGenus(SurfaceError):
    """Euler characteristic arithmetic did not produce an integral genus."""


class SlotKind(enum.Enum):
    ORIGINAL = "original"
    CUT = "cut"


@dataclass(frozen=True, order=True)
class SlotId:
    component: int
    slot: int
    kind: SlotKind = field(compare=False)
    name: str = field(default="", compare=False)

    def __str__(self):
        return f"c{self.component}:{self.name or self.slot}"


@dataclass(frozen=True)
class Component:
    genus: int
    slots: tuple[SlotId, ...]

    @property
    def n_original(self) -> int:
        return sum(s.kind is SlotKind.ORIGINAL for s in self.slots)

    @property
    def n_cut(self) -> int:
        return sum(s.kind is SlotKind.CUT for s in self.slots)

    @property
    def euler(self) -> int:
        return 2 - 2 * self.genus - len(self.slots)


@dataclass(frozen=True)
class Curve:
    id: str
    end_a: SlotId
    end_b: SlotId

    @property
    def ends(self) -> tuple[SlotId, SlotId]:
        return (self.end_a, self.end_b)

    def is_loop(self) -> bool:
        return self.end_a.component == self.end_b.component


@dataclass(frozen=True)
class Violation:
    code: str
    detail: str = ""

    def __str__(self):
        return f"{self.code}: {self.detail}" if self.detail else self.code

    def to_json(self):
        return {"code": self.code, "detail": self.detail}


@dataclass(frozen=True)
class SurfaceStats:
    g: int
    r: int
    n: int
    components: int
    total_genus_gprime: int
    total_boundary_rprime: int

    @property
    def n_double_prime(self) -> int:
        """Curves whose removal disconnects; equals components - 1."""
        return self.components - 1

    @property
    def n_prime(self) -> int:
        """Maximal number of curves that can be cut keeping the surface connected."""
        return self.n - self.n_double_prime

    def to_json(self):
        return {"g": self.g, "r": self.r, "n": self.n}


@dataclass(frozen=True)
class GluingGraph:
    components: tuple[Component, ...]
    curves: tuple[Curve, ...] = ()

    def slots(self) -> list[SlotId]:
        return [s for c in self.components for s in c.slots]

    def original_slots(self) -> list[SlotId]:
        return [s for s in self.slots() if s.kind is SlotKind.ORIGINAL]

    def partner(self) -> dict[SlotId, SlotId]:
        out = {}
        for c in self.curves:
            out[c.end_a] = c.end_b
            out[c.end_b] = c.end_a
        return out

    def curve_of(self) -> dict[SlotId, int]:
        out = {}
        for i, c in enumerate(self.curves):
            out[c.end_a] = i
            out[c.end_b] = i
        return out

    # -- construction ------------------------------------------------------

    @classmethod
    def build(
        cls,
        components: Iterable[tuple[int, int, Iterable[str]]],
        curves: Iterable[tuple[str, tuple[int, str], tuple[int, str]]],
    ) -> "GluingGraph":
        """Build from ``(genus, n_original, cut_slot_names)`` and
        ``(curve_id, (comp, slot_name), (comp, slot_name))`` tuples.

        Cut slots take local indices first, in the given order; original
        slots follow.  Unknown slot names raise :class:`SurfaceError`.
        """
        comps = []
        lookup: dict[tuple[int, str], SlotId] = {}
        for ci, (genus, n_orig, cut_names) in enumerate(components):
            cut_names = list(cut_names)
            slots = []
            for k, name in enumerate(cut_names):
                sid = SlotId(ci, k, SlotKind.CUT, name)
                if (ci, name) in lookup:
                    raise SurfaceError(f"duplicate slot name {name!r} on component {ci}")
                lookup[(ci, name)] = sid
                slots.append(sid)
            for k in range(n_orig):
                slots.append(SlotId(ci, len(cut_names) + k, SlotKind.ORIGINAL, f"o{k}"))
            comps.append(Component(int(genus), tuple(slots)))
        cvs = []
        for cid, (ca, sa), (cb, sb) in curves:
            try:
                a = lookup[(ca, sa)]
                b = lookup[(cb, sb)]
            except KeyError as exc:
                raise SurfaceError(f"curve {cid!r} references unknown slot {exc.args[0]!r}") from None
            cvs.append(Curve(str(cid), a, b))
        return cls(tuple(comps), tuple(cvs))

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "GluingGraph":
        try:
            comps = [
                (c["genus"], c.get("original_boundaries", 0), c.get("cut_slots", []))
                for c in data["components"]
            ]
            curves = []
            for c in data.get("curves", []):
                ends = c["ends"]
                if len(ends) != 2:
                    raise SurfaceError(f"curve {c.get('id')!r} must have exactly two ends")
                curves.append(
                    (c["id"], (ends[0]["component"], ends[0]["slot"]), (ends[1]["component"], ends[1]["slot"]))
                )
        except (KeyError, TypeError) as exc:
            raise SurfaceError(f"malformed gluing graph: {exc!r}") from None
        for genus, n_orig, cut in comps:
            if not isinstance(genus, int) or not isinstance(n_orig, int) or n_orig < 0:
                raise SurfaceError("genus and original_boundaries must be integers (original_boundaries >= 0)")
            if not all(isinstance(s, str) for s in cut):
                raise SurfaceError("cut_slots must be strings")
        return cls.build(comps, curves)

    def to_json(self) -> dict[str, Any]:
        comps = [
            {
                "genus": c.genus,
                "original_boundaries": c.n_original,
                "cut_slots": [s.name for s in c.slots if s.kind is SlotKind.CUT],
            }
            for c in self.components
        ]
        curves = [
            {
                "id": c.id,
                "ends": [
                    {"component": c.end_a.component, "slot": c.end_a.name},
                    {"component": c.end_b.component, "slot": c.end_b.name},
                ],
            }
            for c in self.curves
        ]
        return {"components": comps, "curves": curves}


def empty_diagram(g: int, r: int) -> GluingGraph:
    """The empty multicurve on a genus-g surface with r boundary circles."""
    return GluingGraph.build([(g, r, [])], [])


def _connected(graph: GluingGraph) -> bool:
    n = len(graph.components)
    if n == 0:
        return False
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in graph.curves:
        a, b = find(c.end_a.component), find(c.end_b.component)
        parent[a] = b
    return len({find(i) for i in range(n)}) == 1


def validate(graph: GluingGraph) -> list[Violation]:
    """All violated invariants, as data.  Empty means the graph is usable."""
    out: list[Violation] = []
    if not graph.components:
        return [Violation("no components")]

    seen = Counter((s.component, s.slot) for s in graph.slots())
    for key, k in seen.items():
        if k > 1:
            out.append(Violation("duplicate slot", f"component {key[0]} slot {key[1]}"))
    for ci, comp in enumerate(graph.components):
        if comp.genus < 0:
            out.append(Violation("negative genus", f"component {ci}"))
        for s in comp.slots:
            if s.component != ci:
                out.append(Violation("misplaced slot", f"{s} listed on component {ci}"))

    all_slots = set(graph.slots())
    ids = Counter(c.id for c in graph.curves)
    for cid, k in ids.items():
        if k > 1:
            out.append(Violation("duplicate curve id", cid))
    uses: Counter = Counter()
    for c in graph.curves:
        if c.end_a == c.end_b:
            out.append(Violation("degenerate curve", f"{c.id} glues {c.end_a} to itself"))
        for e in c.ends:
            if e not in all_slots:
                out.append(Violation("unknown slot", f"{c.id} end {e}"))
            elif e.kind is not SlotKind.CUT:
                out.append(Violation("curve on original boundary", f"{c.id} end {e}"))
            uses[e] += 1
    for s in sorted(all_slots):
        if s.kind is SlotKind.CUT and uses[s] != 1:
            what = "unmatched slot" if uses[s] == 0 else "slot reused"
            out.append(Violation(what, str(s)))

    single_closed = len(graph.components) == 1 and not graph.curves
    for ci, comp in enumerate(graph.components):
        if comp.genus == 0 and len(comp.slots) == 1 and comp.slots[0].kind is SlotKind.CUT:
            out.append(Violation("trivial curve", f"component {ci} is a disk bounded by a cut curve"))
        if not comp.slots and not single_closed:
            out.append(Violation("no boundary", f"component {ci}"))

    valid_comp = all(0 <= e.component < len(graph.components) for c in graph.curves for e in c.ends)
    if valid_comp and not _connected(graph):
        out.append(Violation("disconnected"))
    return out


def reassemble(graph: GluingGraph) -> SurfaceStats:
    """Topological type of the surface obtained by regluing the cut curves."""
    r = len(graph.original_slots())
    chi = sum(c.euler for c in graph.components)
    twice_g = 2 - r - chi
    if twice_g % 2 or twice_g < 0:
        raise NonIntegralGenus(f"Euler characteristic {chi} with {r} boundary circles gives genus {twice_g}/2")
    g = twice_g // 2
    n = len(graph.curves)
    stats = SurfaceStats(
        g=g,
        r=r,
        n=n,
        components=len(graph.components),
        total_genus_gprime=sum(c.genus for c in graph.components),
        total_boundary_rprime=sum(len(c.slots) for c in graph.components),
    )
    # cycle rank of the gluing graph restores the genus lost to non-separating cuts
    if stats.total_boundary_rprime != r + 2 * n or g != stats.total_genus_gprime + stats.n_prime:
        raise NonIntegralGenus("inconsistent gluing data")
    return stats
