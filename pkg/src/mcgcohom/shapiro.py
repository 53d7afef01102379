"""1-cocycles on permutation modules of finite groups.

A finite group ``G`` acts on points ``R = {0..degree-1}``; the module is
``Map(R, A)`` with ``(g f)(r) = f(g^-1 r)``.  A cocycle is stored as a
table ``u(g, r)`` subject to

    u(g h, r) = u(g, r) + u(h, g^-1 r).

For a transitive action the restriction ``h -> u(h, D)`` to the
stabilizer of ``D`` is a homomorphism, it vanishes exactly on
coboundaries, and every homomorphism on the stabilizer extends to a
cocycle.  This module computes each of these maps explicitly and
verifies the results exhaustively.

Permutations are tuples of images, composed right to left:
``(g * h)(i) = g[h[i]]``.
"""

from __future__ import annotations

import functools
import hashlib
import itertools
import math
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import kernels

Perm = tuple[int, ...]

DEFAULT_GROUP_CAP = 5040
BRUTE_FORCE_LIMIT = 1 << 16
_I64_SAFE = 1 << 60


class ShapiroError(ValueError):
    pass


class NotTransitive(ShapiroError):
    pass


class NotAHomomorphism(ShapiroError):
    pass


class GroupTooLarge(ShapiroError):
    pass


class CocycleError(ShapiroError):
    pass


# -- permutations ----------------------------------------------------------


def identity(n: int) -> Perm:
    return tuple(range(n))


def mul(g: Perm, h: Perm) -> Perm:
    return tuple(g[i] for i in h)


def inverse(g: Perm) -> Perm:
    out = [0] * len(g)
    for i, j in enumerate(g):
        out[j] = i
    return tuple(out)


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Perm:
    """Permutation of ``0..degree-1`` from 1-based cycle notation such as ``"(1 2 3)(4 5)"``."""
    text = text.strip()
    if re.sub(_CYCLE, "", text).strip():
        raise ShapiroError(f"cannot parse cycle notation {text!r}")
    img = list(range(degree))
    # cycles are composed right to left, like the permutations they stand for
    for body in reversed(_CYCLE.findall(text)):
        pts = [int(x) - 1 for x in re.split(r"[\s,]+", body.strip()) if x]
        if len(set(pts)) != len(pts):
            raise ShapiroError(f"repeated point in cycle ({body})")
        for p in pts:
            if not 0 <= p < degree:
                raise ShapiroError(f"point {p + 1} outside 1..{degree}")
        cyc = list(range(degree))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            cyc[a] = b
        img = [cyc[i] for i in img]
    return tuple(img)


def format_cycles(g: Perm) -> str:
    """1-based cycle notation; the identity is ``"()"``."""
    seen = set()
    out = []
    for i in range(len(g)):
        if i in seen or g[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = g[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = g[j]
        out.append("(" + " ".join(str(k + 1) for k in cyc) + ")")
    return "".join(out) or "()"


# -- coefficients ----------------------------------------------------------


@dataclass(frozen=True)
class Coefficients:
    """The abelian group ``Z/modulus`` or, with ``modulus=None``, ``Q``."""

    modulus: int | None = None

    def __post_init__(self):
        if self.modulus is not None and self.modulus < 2:
            raise ShapiroError("modulus must be at least 2")

    @classmethod
    def mod(cls, m: int) -> "Coefficients":
        return cls(m)

    @classmethod
    def rationals(cls) -> "Coefficients":
        return cls(None)

    @property
    def is_rational(self) -> bool:
        return self.modulus is None

    def zero(self):
        return Fraction(0) if self.is_rational else 0

    def norm(self, x):
        if self.is_rational:
            return Fraction(x)
        return int(x) % self.modulus

    def add(self, x, y):
        return self.norm(x + y)

    def neg(self, x):
        return self.norm(-x)

    def elements(self):
        if self.is_rational:
            raise ShapiroError("Q is infinite")
        return range(self.modulus)

    def to_json(self, x):
        return str(x) if self.is_rational else int(x)

    def describe(self):
        return "Q" if self.is_rational else {"mod": self.modulus}


# -- group actions ---------------------------------------------------------


@dataclass(frozen=True)
class FiniteAction:
    """A finite permutation group with its elements in breadth-first order."""

    degree: int
    generators: tuple[Perm, ...]
    elements: tuple[Perm, ...]
    parent: tuple[int, ...] = field(repr=False)
    parent_gen: tuple[int, ...] = field(repr=False)

    @classmethod
    def generate(cls, generators: Sequence[Perm], degree: int | None = None,
                 cap: int = DEFAULT_GROUP_CAP) -> "FiniteAction":
        gens = tuple(tuple(g) for g in generators)
        if degree is None:
            if not gens:
                raise ShapiroError("degree needed for the trivial group")
            degree = len(gens[0])
        for g in gens:
            if sorted(g) != list(range(degree)):
                raise ShapiroError(f"{g} is not a permutation of {degree} points")
        e = identity(degree)
        elements = [e]
        index = {e: 0}
        parent = [-1]
        pgen = [-1]
        queue = deque([e])
        while queue:
            x = queue.popleft()
            for k, s in enumerate(gens):
                y = mul(x, s)
                if y not in index:
                    if len(elements) >= cap:
                        raise GroupTooLarge(f"group has more than {cap} elements")
                    index[y] = len(elements)
                    elements.append(y)
                    parent.append(index[x])
                    pgen.append(k)
                    queue.append(y)
        return cls(degree, gens, tuple(elements), tuple(parent), tuple(pgen))

    @classmethod
    def from_cycles(cls, generators: Sequence[str], degree: int, cap: int = DEFAULT_GROUP_CAP):
        return cls.generate([parse_cycles(s, degree) for s in generators], degree, cap)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def points(self) -> range:
        return range(self.degree)

    @functools.cached_property
    def index(self) -> dict[Perm, int]:
        return {g: i for i, g in enumerate(self.elements)}

    def orbits(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for p in self.points:
            if p in seen:
                continue
            orb = sorted({g[p] for g in self.elements})
            seen.update(orb)
            out.append(orb)
        return out

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def right_mult_table(self) -> list[int]:
        """Flat table: entry ``k*ngens+s`` is the index of ``elements[k] * gen_s``."""
        idx = self.index
        return [idx[mul(x, s)] for x in self.elements for s in self.generators]


def stabilizer(action: FiniteAction, D: int) -> list[Perm]:
    return [g for g in action.elements if g[D] == D]


def _generators_of(elements: Sequence[Perm], degree: int) -> list[Perm]:
    """A small generating set, picked greedily in element order."""
    gens: list[Perm] = []
    span = {identity(degree)}
    for g in elements:
        if g in span:
            continue
        gens.append(g)
        span = set(FiniteAction.generate(gens, degree, cap=len(elements) + 1).elements)
    return gens


# -- cocycle tables --------------------------------------------------------


@dataclass(frozen=True)
class CocycleTable:
    """Values ``u(g, r)`` for every group element ``g`` and point ``r``."""

    action: FiniteAction
    coefficients: Coefficients
    values: Mapping[tuple[Perm, int], object]

    def __call__(self, g: Perm, r: int):
        return self.values[(g, r)]

    def __add__(self, other: "CocycleTable") -> "CocycleTable":
        c = self.coefficients
        return CocycleTable(self.action, c, {k: c.add(v, other.values[k]) for k, v in self.values.items()})

    def scale(self, k) -> "CocycleTable":
        c = self.coefficients
        return CocycleTable(self.action, c, {key: c.norm(v * k) for key, v in self.values.items()})

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values.values())

    def digest(self) -> str:
        """SHA-256 of the table in a canonical text form."""
        lines = []
        for g in self.action.elements:
            for r in self.action.points:
                lines.append(f"{format_cycles(g)} {r + 1} {self.values[(g, r)]}")
        return hashlib.sha256("\n".join(lines).encode()).hexdigest()


def zero_cocycle(action: FiniteAction, coefficients: Coefficients) -> CocycleTable:
    z = coefficients.zero()
    return CocycleTable(action, coefficients, {(g, r): z for g in action.elements for r in action.points})


def coboundary(action: FiniteAction, f: Mapping[int, object] | Sequence, coefficients: Coefficients) -> CocycleTable:
    """``(delta f)(g, r) = f(r) - f(g^-1 r)``."""
    c = coefficients
    vals = {}
    for g in action.elements:
        gi = inverse(g)
        for r in action.points:
            vals[(g, r)] = c.norm(f[r] - f[gi[r]])
    return CocycleTable(action, c, vals)


def _integer_table(u: CocycleTable) -> tuple[list[int], int] | None:
    """Flat integer encoding of ``u`` for the kernels, or None if it would overflow."""
    a = u.action
    c = u.coefficients
    flat = [u.values[(g, r)] for g in a.elements for r in a.points]
    if not c.is_rational:
        return [int(v) for v in flat], c.modulus
    den = 1
    for v in flat:
        den = math.lcm(den, v.denominator)
    ints = [int(v * den) for v in flat]
    if any(abs(x) >= _I64_SAFE for x in ints):
        return None
    return ints, 0


def cocycle_violations(u: CocycleTable, first_only: bool = True) -> tuple[int, tuple[Perm, Perm, int] | None]:
    """Exhaustively test the cocycle law; returns the count and a violating ``(g, h, r)``."""
    a = u.action
    enc = _integer_table(u)
    if enc is None:
        return _cocycle_violations_exact(u, first_only)
    vals, modulus = enc
    inv_act = [inverse(g)[r] for g in a.elements for r in a.points]
    order = list(range(a.order))
    count, i, j, r = kernels.cocycle_violations(
        a.order, a.degree, len(a.generators), a.right_mult_table(), list(a.parent), list(a.parent_gen),
        order, inv_act, vals, modulus, first_only,
    )
    if count == 0:
        return 0, None
    return count, (a.elements[i], a.elements[j], r)


def _cocycle_violations_exact(u: CocycleTable, first_only: bool):
    a = u.action
    c = u.coefficients
    count = 0
    first = None
    for g in a.elements:
        gi = inverse(g)
        for h in a.elements:
            gh = mul(g, h)
            for r in a.points:
                if u.values[(gh, r)] != c.add(u.values[(g, r)], u.values[(h, gi[r])]):
                    count += 1
                    first = first or (g, h, r)
                    if first_only:
                        return count, first
    return count, first


def verify_cocycle(u: CocycleTable) -> bool:
    return cocycle_violations(u)[0] == 0


# -- restriction and extension ---------------------------------------------


def _check_hom(hom: Mapping[Perm, object], coefficients: Coefficients) -> None:
    c = coefficients
    elems = list(hom)
    for g in elems:
        for h in elems:
            gh = mul(g, h)
            if gh not in hom:
                raise NotAHomomorphism("domain is not closed under composition")
            if hom[gh] != c.add(hom[g], hom[h]):
                raise NotAHomomorphism(
                    f"value at {format_cycles(gh)} is {hom[gh]}, expected {hom[g]} + {hom[h]}"
                )


def restrict(u: CocycleTable, D: int) -> dict[Perm, object]:
    """The homomorphism ``h -> u(h, D)`` on the stabilizer of ``D``."""
    hom = {h: u.values[(h, D)] for h in stabilizer(u.action, D)}
    _check_hom(hom, u.coefficients)
    return hom


def hom_from_images(action: FiniteAction, D: int, images: Mapping[Perm, object],
                    coefficients: Coefficients) -> dict[Perm, object]:
    """Extend generator images to a homomorphism on the stabilizer of ``D``.

    The given elements must lie in the stabilizer and generate it; an
    empty mapping means the zero homomorphism.
    """
    c = coefficients
    stab = stabilizer(action, D)
    e = identity(action.degree)
    if not images:
        return {h: c.zero() for h in stab}
    gens = list(images)
    for g in gens:
        if g[D] != D:
            raise NotAHomomorphism(f"{format_cycles(g)} does not fix point {D + 1}")
    hom = {e: c.zero()}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mul(x, g)
            v = c.add(hom[x], c.norm(images[g]))
            if y in hom:
                if hom[y] != v:
                    raise NotAHomomorphism(f"images are inconsistent at {format_cycles(y)}")
            else:
                hom[y] = v
                queue.append(y)
    if len(hom) != len(stab):
        raise NotAHomomorphism("given elements do not generate the stabilizer")
    return hom


@dataclass(frozen=True)
class CosetData:
    """Right cosets of the stabilizer of ``D`` and their chosen representatives."""

    D: int
    stab: frozenset
    reps: dict[int, Perm]  # key h^-1 D -> representative h

    @classmethod
    def build(cls, action: FiniteAction, D: int) -> "CosetData":
        stab = frozenset(stabilizer(action, D))
        reps: dict[int, Perm] = {}
        for x in sorted(action.elements):
            key = inverse(x)[D]
            if key not in reps:
                reps[key] = x
        # the stabilizer itself is represented by the identity
        reps[D] = identity(action.degree)
        return cls(D, stab, reps)

    def key(self, x: Perm) -> int:
        """Coset ``Gamma_D x`` is determined by ``x^-1 D``."""
        return inverse(x)[self.D]

    def factor(self, x: Perm) -> tuple[Perm, Perm]:
        """``x = g h_i`` with ``g`` in the stabilizer and ``h_i`` a representative."""
        h = self.reps[self.key(x)]
        g = mul(x, inverse(h))
        assert g in self.stab
        return g, h


def extend(action: FiniteAction, D: int, hom: Mapping[Perm, object], coefficients: Coefficients) -> CocycleTable:
    """Cocycle with restriction ``hom`` that vanishes on every coset representative at ``D``.

    For ``x`` and a point ``E = h_j^-1 D``, factor ``h_j x h_j^-1 = g0 h_i``
    and ``h_i h_j = g1 h_k``; then ``u(x, E) = hom(g0) + hom(g1)``.
    """
    if not action.is_transitive():
        raise NotTransitive("extension needs a transitive action")
    c = coefficients
    stab = stabilizer(action, D)
    if set(hom) != set(stab):
        raise NotAHomomorphism("homomorphism must be defined on the whole stabilizer")
    hom = {g: c.norm(v) for g, v in hom.items()}
    _check_hom(hom, c)
    cos = CosetData.build(action, D)
    vals = {}
    for E in action.points:
        hj = cos.reps[E]
        hj_inv = inverse(hj)
        for x in action.elements:
            g0, hi = cos.factor(mul(mul(hj, x), hj_inv))
            g1, _ = cos.factor(mul(hi, hj))
            vals[(x, E)] = c.add(hom[g0], hom[g1])
    u = CocycleTable(action, c, vals)
    count, bad = cocycle_violations(u)
    if count:
        raise CocycleError(f"extension violates the cocycle law at {bad}")
    return u


# -- coboundary test -------------------------------------------------------


@dataclass(frozen=True)
class CoboundaryVerdict:
    is_coboundary: bool
    witness: dict[int, object] | None = None
    violating_pair: tuple[Perm, Perm] | None = None
    restriction_zero: bool | None = None

    def __bool__(self):
        return self.is_coboundary

    def to_json(self, coefficients: Coefficients):
        out = {"coboundary": self.is_coboundary}
        if self.witness is not None:
            out["witness"] = {str(r + 1): coefficients.to_json(v) for r, v in sorted(self.witness.items())}
        if self.violating_pair is not None:
            out["violating_pair"] = [format_cycles(g) for g in self.violating_pair]
        return out


def _orbit_verdict(action: FiniteAction, u: CocycleTable, D: int, orbit: Sequence[int]):
    c = u.coefficients
    # coset test: u(g, D) must depend only on the point g^-1 D
    seen: dict[int, tuple[Perm, object]] = {}
    pair = None
    for g in action.elements:
        key = inverse(g)[D]
        v = u.values[(g, D)]
        if key in seen:
            if seen[key][1] != v and pair is None:
                pair = (seen[key][0], g)
        else:
            seen[key] = (g, v)
    restriction_zero = all(u.values[(h, D)] == 0 for h in stabilizer(action, D))
    if (pair is None) != restriction_zero:
        raise CocycleError("coset test and stabilizer test disagree; input is not a cocycle")
    if pair is not None:
        return None, pair, False
    f = {E: c.neg(v) for E, (_, v) in seen.items()}
    assert set(f) == set(orbit)
    return f, None, True


def is_coboundary(u: CocycleTable, D: int | None = None) -> CoboundaryVerdict:
    """Decide whether ``u`` is a coboundary, with a witness ``f`` (``f(D) = 0``) or a violating pair.

    Runs both the coset-consistency test and the stabilizer-restriction
    test.  Intransitive actions are split into orbits; orbits other than
    the one containing ``D`` use their smallest point as base.
    """
    action = u.action
    witness: dict[int, object] = {}
    for orbit in action.orbits():
        base = D if D is not None and D in orbit else orbit[0]
        f, pair, ok = _orbit_verdict(action, u, base, orbit)
        if not ok:
            return CoboundaryVerdict(False, None, pair, False)
        witness.update(f)
    check = coboundary(action, witness, u.coefficients)
    if check.values != dict(u.values):
        raise CocycleError("witness does not reproduce the table; input is not a cocycle")
    return CoboundaryVerdict(True, witness, None, True)


# -- H^1 classification ----------------------------------------------------


def cyclic_homs(action: FiniteAction, D: int, coefficients: Coefficients) -> list[dict[Perm, int]]:
    """All homomorphisms from the stabilizer of ``D`` to ``Z/m``."""
    stab = sorted(stabilizer(action, D))
    gens = _generators_of(stab, action.degree)
    out = []
    for images in itertools.product(coefficients.elements(), repeat=len(gens)):
        try:
            out.append(hom_from_images(action, D, dict(zip(gens, images)), coefficients))
        except NotAHomomorphism:
            continue
    return out


def _cocycles_from_generators(action: FiniteAction, coefficients: Coefficients, gen_values) -> CocycleTable | None:
    """Cocycle with prescribed ``u(gen_k, .)``, or None if these values are inconsistent."""
    c = coefficients
    e = identity(action.degree)
    vals = {e: tuple(c.zero() for _ in action.points)}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        xi = inverse(x)
        for s, us in zip(action.generators, gen_values):
            y = mul(x, s)
            # u(x s, r) = u(x, r) + u(s, x^-1 r)
            v = tuple(c.add(vals[x][r], us[xi[r]]) for r in action.points)
            if y in vals:
                if vals[y] != v:
                    return None
            else:
                vals[y] = v
                queue.append(y)
    return CocycleTable(action, c, {(g, r): vals[g][r] for g in action.elements for r in action.points})


def brute_force_h1(action: FiniteAction, coefficients: Coefficients) -> tuple[int, int] | None:
    """``(|Z^1|, |B^1|)`` by enumerating all cocycle candidates and all 0-cochains."""
    m = coefficients.modulus
    if m is None:
        return None
    npts = action.degree
    ngen = len(action.generators)
    if m ** (ngen * npts) > BRUTE_FORCE_LIMIT or m ** npts > BRUTE_FORCE_LIMIT:
        return None
    z1 = 0
    for flat in itertools.product(range(m), repeat=ngen * npts):
        gv = [flat[k * npts : (k + 1) * npts] for k in range(ngen)]
        if _cocycles_from_generators(action, coefficients, gv) is not None:
            z1 += 1
    b1 = set()
    for f in itertools.product(range(m), repeat=npts):
        t = coboundary(action, f, coefficients)
        b1.add(tuple(t.values[(g, r)] for g in action.elements for r in action.points))
    return z1, len(b1)


@dataclass(frozen=True)
class H1Count:
    group_order: int
    stabilizer_order: int
    hom_count: int
    brute_force: tuple[int, int] | None

    @property
    def h1_count(self) -> int:
        return self.hom_count

    def to_json(self):
        out = {
            "group_order": self.group_order,
            "stabilizer_order": self.stabilizer_order,
            "h1_count": self.h1_count,
        }
        if self.brute_force is not None:
            out["brute_force"] = {"cocycles": self.brute_force[0], "coboundaries": self.brute_force[1]}
        return out


def h1_dimension_report(action: FiniteAction, D: int, coefficients: Coefficients) -> H1Count:
    """Size of ``H^1(G, Map(R, A))`` computed as ``|Hom(G_D, A)|``.

    Over ``Q`` a finite group has only the zero homomorphism.  For
    ``Z/m`` every homomorphism is enumerated, and when the action is
    small the count is checked against ``|Z^1| / |B^1|`` by brute force.
    """
    if not action.is_transitive():
        raise NotTransitive("H^1 count needs a transitive action")
    stab = stabilizer(action, D)
    if coefficients.is_rational:
        return H1Count(action.order, len(stab), 1, None)
    count = len(cyclic_homs(action, D, coefficients))
    bf = brute_force_h1(action, coefficients)
    if bf is not None and bf[0] != count * bf[1]:
        raise CocycleError(f"brute force gives {bf[0]}/{bf[1]} classes, homomorphisms give {count}")
    return H1Count(action.order, len(stab), count, bf)
