"""Rational first homology of mapping class groups of bordered surfaces.

Every class is named by a Dehn twist.  On a genus-1 component the
boundary twists are a basis; on a component of genus at least 2 the
homology vanishes; on a holed sphere the space is presented by twists
``t_S`` about curves enclosing a subset ``S`` of the holes, modulo
``t_S = t_{S^c}`` and the abelianized lantern relations.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .exactlin import Echelon, QuotientSpace, RatMatrix, _build_quotient, quotient
from .surface import SlotId, SlotKind


class DimensionMismatch(RuntimeError):
    pass


class ShapeMismatch(ValueError):
    pass


def canonical_subset(subset, n: int) -> tuple[int, ...]:
    """Representative of ``{S, complement(S)}``: fewer elements first, then lexicographic."""
    s = tuple(sorted(subset))
    c = tuple(i for i in range(n) if i not in subset)
    return min(s, c, key=lambda t: (len(t), t))


@dataclass(frozen=True, order=True)
class BoundaryTwist:
    slot: SlotId

    def __str__(self):
        return f"tau({self.slot})"


@dataclass(frozen=True, order=True)
class SubsetTwist:
    component: int
    subset: tuple[int, ...]

    def __str__(self):
        return f"tau(c{self.component}:{{{','.join(map(str, self.subset))}}})"


TwistLabel = Union[BoundaryTwist, SubsetTwist]


def subset_classes(n: int) -> list[tuple[int, ...]]:
    """Canonical proper nonempty subsets of ``range(n)``, sorted by size then lexicographically."""
    out = set()
    for k in range(1, n):
        for s in itertools.combinations(range(n), k):
            out.add(canonical_subset(s, n))
    return sorted(out, key=lambda t: (len(t), t))


def lantern_rows(n: int, classes: Sequence[tuple[int, ...]] | None = None) -> list[dict[int, int]]:
    """Abelianized lantern relations on ``n`` holes as sparse rows over ``classes``.

    One row per unordered triple of disjoint nonempty subsets ``A, B, C``:
    ``t_{ABC} + t_A + t_B + t_C - t_{AB} - t_{AC} - t_{BC}``.  Curves
    enclosing no hole or every hole bound disks and contribute nothing.
    Rows are not deduplicated.
    """
    if classes is None:
        classes = subset_classes(n)
    index = {c: i for i, c in enumerate(classes)}
    full = (1 << n) - 1

    def col(mask):
        if mask == 0 or mask == full:
            return None
        return index[canonical_subset([i for i in range(n) if mask >> i & 1], n)]

    rows = []
    # label each hole 0 (unused) or 1..3 (in A, B, C); A < B < C by least element
    for labels in itertools.product(range(4), repeat=n):
        masks = [0, 0, 0, 0]
        for i, lab in enumerate(labels):
            masks[lab] |= 1 << i
        a, b, c = masks[1], masks[2], masks[3]
        if not (a and b and c):
            continue
        if not ((a & -a) < (b & -b) < (c & -c)):
            continue
        row: dict[int, int] = {}
        for mask, sign in ((a | b | c, 1), (a, 1), (b, 1), (c, 1), (a | b, -1), (a | c, -1), (b | c, -1)):
            j = col(mask)
            if j is not None:
                row[j] = row.get(j, 0) + sign
        row = {k: v for k, v in row.items() if v}
        rows.append(row)
    return rows


@dataclass(frozen=True)
class ComponentHomology:
    """``H_1(Gamma_{genus, |slots|}; Q)`` presented on twist labels.

    ``labels`` index the ambient coordinates of ``space``;
    ``boundary_label`` names the twist about each boundary slot and
    ``boundary_class`` gives its image in quotient coordinates.
    """

    component: int
    genus: int
    slots: tuple[SlotId, ...]
    labels: tuple[TwistLabel, ...]
    space: QuotientSpace
    boundary_label: Mapping[SlotId, TwistLabel]

    @property
    def boundary_count(self) -> int:
        return len(self.slots)

    @property
    def dim(self) -> int:
        return self.space.dim

    def column(self, label: TwistLabel) -> int:
        return self.labels.index(label)

    def ambient_unit(self, label: TwistLabel) -> list[int]:
        v = [0] * len(self.labels)
        v[self.column(label)] = 1
        return v

    @property
    def boundary_class(self) -> dict[SlotId, tuple[Fraction, ...]]:
        zero = tuple(Fraction(0) for _ in range(self.dim))
        out = {}
        for s in self.slots:
            lab = self.boundary_label.get(s)
            # a one-holed sphere has no nontrivial twist
            out[s] = self.space.unit(self.column(lab)) if lab is not None else zero
        return out

    def basis_labels(self) -> list[TwistLabel]:
        return [self.labels[j] for j in self.space.basis_columns]


def expected_dimension(genus: int, r: int) -> int:
    """Rational H_1 of Gamma_{genus, r}, dimension by genus."""
    if genus >= 2:
        return 0
    if genus == 1:
        return r
    return r * (r - 1) // 2


@functools.lru_cache(maxsize=None)
def _lantern_space(r: int) -> tuple[tuple[tuple[int, ...], ...], QuotientSpace]:
    classes = subset_classes(r)
    n = len(classes)
    e = Echelon(n).extend(lantern_rows(r, classes))
    # the reduced rows span the same relations as the full redundant list
    space = _build_quotient(n, RatMatrix(e.rref_rows(), n), e)
    if space.dim != r * (r - 1) // 2:
        raise DimensionMismatch(
            f"lantern presentation on {r} holes has dimension {space.dim}, expected {r * (r - 1) // 2}"
        )
    return tuple(classes), space


def lantern_oracle(r: int, component: int = 0, slots: Sequence[SlotId] | None = None) -> ComponentHomology:
    """Genus-0 homology from the lantern presentation on ``r`` holes."""
    if r < 0:
        raise ValueError("r must be non-negative")
    if slots is None:
        slots = tuple(SlotId(component, i, SlotKind.ORIGINAL, f"b{i}") for i in range(r))
    slots = tuple(slots)
    if len(slots) != r:
        raise ShapeMismatch("slot count differs from r")
    classes, space = _lantern_space(r)
    labels = tuple(SubsetTwist(component, c) for c in classes)
    bl = {s: SubsetTwist(component, canonical_subset((i,), r)) for i, s in enumerate(slots)} if r > 1 else {}
    return ComponentHomology(component, 0, slots, labels, space, bl)


def component_homology(genus: int, slots: Sequence[SlotId], component: int | None = None) -> ComponentHomology:
    if genus < 0:
        raise ValueError("genus must be non-negative")
    slots = tuple(slots)
    if component is None:
        component = slots[0].component if slots else 0
    r = len(slots)
    if genus == 0:
        return lantern_oracle(r, component, slots)
    labels = tuple(BoundaryTwist(s) for s in slots)
    if genus == 1:
        space = quotient(r)
    else:
        space = quotient(r, RatMatrix.identity(r) if r else RatMatrix.zeros(0, 0))
    bl = {s: BoundaryTwist(s) for s in slots}
    return ComponentHomology(component, genus, slots, labels, space, bl)


def boundary_label(h: ComponentHomology, slot: SlotId) -> TwistLabel | None:
    """Ambient label of the twist about ``slot``; None when that twist is trivial."""
    return h.boundary_label.get(slot)


def relabel(label: TwistLabel, sigma: Mapping[SlotId, SlotId], source: ComponentHomology,
            target: ComponentHomology) -> TwistLabel:
    """Image of a twist label under a slot bijection ``source -> target``."""
    if isinstance(label, BoundaryTwist):
        return BoundaryTwist(sigma[label.slot])
    pos = {s: i for i, s in enumerate(target.slots)}
    image = [pos[sigma[source.slots[i]]] for i in label.subset]
    return SubsetTwist(target.component, canonical_subset(image, len(target.slots)))


def permutation_matrix(h: ComponentHomology, sigma: Mapping[SlotId, SlotId],
                       target: ComponentHomology | None = None) -> RatMatrix:
    """Matrix, in quotient coordinates, of the map induced by a slot bijection."""
    if target is None:
        target = h
    if h.genus != target.genus or len(h.slots) != len(target.slots):
        raise ShapeMismatch("source and target components differ in genus or slot count")
    if set(sigma.get(s) for s in h.slots) != set(target.slots):
        raise ShapeMismatch("sigma is not a bijection onto the target slots")
    cols = []
    for j in h.space.basis_columns:
        img = relabel(h.labels[j], sigma, h, target)
        cols.append(target.space.unit(target.column(img)))
    return RatMatrix([[cols[k][i] for k in range(len(cols))] for i in range(target.dim)], h.dim)
