"""Diagrams on the closed torus and an explicit non-trivial skein cocycle.

``SL(2, Z)`` is generated by the twists ``a = tau_alpha`` and
``b = tau_beta`` about the slopes ``alpha = (1, 0)`` and ``beta = (0, 1)``.
The cocycle is fixed on generators by ``u(a) = alpha - beta`` and
``u(b) = beta - alpha`` and extended by ``u(gh) = u(g) + g u(h)``.  The
twist ``a`` fixes ``alpha`` while ``u(a)`` has ``alpha``-coefficient 1;
the corresponding coefficient of any coboundary ``f - a f`` is 0.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

Matrix = tuple[tuple[int, int], tuple[int, int]]

IDENTITY: Matrix = ((1, 0), (0, 1))
TAU_ALPHA: Matrix = ((1, 1), (0, 1))
TAU_BETA: Matrix = ((1, 0), (-1, 1))


class RelationFailure(AssertionError):
    def __init__(self, relation: str, detail: str = ""):
        self.relation = relation
        super().__init__(f"{relation} fails" + (f": {detail}" if detail else ""))


def matmul(x: Matrix, y: Matrix) -> Matrix:
    return (
        (x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]),
        (x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]),
    )


def matinv(x: Matrix) -> Matrix:
    (p, q), (r, s) = x
    return ((s, -q), (-r, p))


@dataclass(frozen=True, order=True)
class Slope:
    """Unoriented essential simple closed curve ``p alpha + q beta`` up to isotopy."""

    p: int
    q: int

    def __post_init__(self):
        if gcd(self.p, self.q) != 1:
            raise ValueError(f"({self.p}, {self.q}) is not primitive")
        if not (self.p > 0 or (self.p == 0 and self.q == 1)):
            raise ValueError(f"({self.p}, {self.q}) is not in canonical sign form")

    @classmethod
    def of(cls, p: int, q: int) -> "Slope":
        if p < 0 or (p == 0 and q < 0):
            p, q = -p, -q
        return cls(p, q)

    def apply(self, m: Matrix) -> "Slope":
        return Slope.of(m[0][0] * self.p + m[0][1] * self.q, m[1][0] * self.p + m[1][1] * self.q)

    def __str__(self):
        return f"({self.p},{self.q})"


ALPHA = Slope(1, 0)
BETA = Slope(0, 1)


@dataclass(frozen=True, order=True)
class TorusDiagram:
    """``multiplicity`` parallel copies of a slope; ``slope=None`` is the empty diagram."""

    slope: Slope | None
    multiplicity: int = 1

    def __post_init__(self):
        if self.slope is None and self.multiplicity != 0:
            raise ValueError("the empty diagram has multiplicity 0")
        if self.slope is not None and self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")

    @classmethod
    def empty(cls) -> "TorusDiagram":
        return cls(None, 0)

    def apply(self, m: Matrix) -> "TorusDiagram":
        if self.slope is None:
            return self
        return TorusDiagram(self.slope.apply(m), self.multiplicity)

    def __str__(self):
        if self.slope is None:
            return "empty"
        return str(self.slope) if self.multiplicity == 1 else f"{self.multiplicity}{self.slope}"


def _diagram(d) -> TorusDiagram:
    if isinstance(d, TorusDiagram):
        return d
    if isinstance(d, Slope):
        return TorusDiagram(d)
    return TorusDiagram(Slope.of(*d))


class SkeinVector:
    """Finite rational combination of torus diagrams."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | Iterable = ()):
        acc: dict[TorusDiagram, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for d, c in items:
            d = _diagram(d)
            acc[d] = acc.get(d, Fraction(0)) + Fraction(c)
        self._terms = {d: c for d, c in acc.items() if c != 0}

    @classmethod
    def basis(cls, d) -> "SkeinVector":
        return cls({_diagram(d): 1})

    @property
    def terms(self) -> dict[TorusDiagram, Fraction]:
        return dict(self._terms)

    def coefficient(self, d) -> Fraction:
        return self._terms.get(_diagram(d), Fraction(0))

    def __add__(self, other: "SkeinVector") -> "SkeinVector":
        return SkeinVector(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> "SkeinVector":
        return SkeinVector({d: -c for d, c in self._terms.items()})

    def __sub__(self, other: "SkeinVector") -> "SkeinVector":
        return self + (-other)

    def __rmul__(self, k) -> "SkeinVector":
        return SkeinVector({d: c * Fraction(k) for d, c in self._terms.items()})

    def __eq__(self, other):
        if not isinstance(other, SkeinVector):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __bool__(self):
        return bool(self._terms)

    def apply(self, m: Matrix) -> "SkeinVector":
        return SkeinVector([(d.apply(m), c) for d, c in self._terms.items()])

    def act(self, w: "MCGWord") -> "SkeinVector":
        return self.apply(w.matrix())

    def __repr__(self):
        if not self._terms:
            return "SkeinVector(0)"
        parts = [f"{c}*{d}" for d, c in sorted(self._terms.items())]
        return "SkeinVector(" + " + ".join(parts) + ")"

    def to_json(self):
        return {str(d): str(c) for d, c in sorted(self._terms.items())}


_INVERSE = {"a": "A", "A": "a", "b": "B", "B": "b"}
_MATRIX = {"a": TAU_ALPHA, "A": matinv(TAU_ALPHA), "b": TAU_BETA, "B": matinv(TAU_BETA)}


class MCGWord:
    """Freely reduced word in ``a = tau_alpha``, ``b = tau_beta``; capitals are inverses."""

    __slots__ = ("letters",)

    def __init__(self, letters: str | Iterable[str] = ""):
        out: list[str] = []
        for ch in letters:
            if ch.isspace():
                continue
            if ch not in _INVERSE:
                raise ValueError(f"unknown letter {ch!r}")
            if out and out[-1] == _INVERSE[ch]:
                out.pop()
            else:
                out.append(ch)
        self.letters = "".join(out)

    def __mul__(self, other: "MCGWord") -> "MCGWord":
        return MCGWord(self.letters + other.letters)

    def __pow__(self, k: int) -> "MCGWord":
        if k < 0:
            return self.inverse() ** -k
        return MCGWord(self.letters * k)

    def inverse(self) -> "MCGWord":
        return MCGWord(_INVERSE[c] for c in reversed(self.letters))

    def __eq__(self, other):
        return isinstance(other, MCGWord) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __len__(self):
        return len(self.letters)

    def __repr__(self):
        return f"MCGWord({self.letters!r})"

    def matrix(self) -> Matrix:
        return matrix_of(self)


def matrix_of(w: MCGWord) -> Matrix:
    m = IDENTITY
    for ch in w.letters:
        m = matmul(m, _MATRIX[ch])
    return m


def act(w: MCGWord, d) -> TorusDiagram:
    return _diagram(d).apply(matrix_of(w))


def random_word(rng: random.Random, max_len: int = 12) -> MCGWord:
    return MCGWord(rng.choice("aAbB") for _ in range(rng.randint(0, max_len)))


@dataclass(frozen=True)
class TorusCocycle:
    """Cocycle on ``SL(2, Z)`` determined by its values on ``a`` and ``b``."""

    u_alpha: SkeinVector
    u_beta: SkeinVector

    @classmethod
    def standard(cls) -> "TorusCocycle":
        a, b = SkeinVector.basis(ALPHA), SkeinVector.basis(BETA)
        return cls(a - b, b - a)

    @classmethod
    def coboundary(cls, f: SkeinVector) -> "TorusCocycle":
        """``(delta f)(g) = f - g f``."""
        return cls(f - f.apply(TAU_ALPHA), f - f.apply(TAU_BETA))

    def scaled(self, k) -> "TorusCocycle":
        return TorusCocycle(k * self.u_alpha, k * self.u_beta)

    def generator_value(self, ch: str) -> SkeinVector:
        if ch == "a":
            return self.u_alpha
        if ch == "b":
            return self.u_beta
        # u(g^-1) = -g^-1 u(g)
        inv = matinv(_MATRIX[ch.lower()])
        return -(self.generator_value(ch.lower()).apply(inv))

    def evaluate(self, w: MCGWord) -> SkeinVector:
        total = SkeinVector()
        prefix = IDENTITY
        for ch in w.letters:
            total = total + self.generator_value(ch).apply(prefix)
            prefix = matmul(prefix, _MATRIX[ch])
        return total


def evaluate_cocycle(w: MCGWord, cocycle: TorusCocycle | None = None) -> SkeinVector:
    return (cocycle or TorusCocycle.standard()).evaluate(w)


BRAID_LEFT = MCGWord("aba")
BRAID_RIGHT = MCGWord("bab")
ORDER_SIX = MCGWord("ab") ** 6


def check_relations(cocycle: TorusCocycle | None = None, strict: bool = True) -> dict:
    """Verify both defining relations at matrix and cocycle level.

    With ``strict`` a failure raises :class:`RelationFailure`; otherwise
    the booleans are just reported.
    """
    u = cocycle or TorusCocycle.standard()
    psi = BRAID_LEFT
    psi_u = u.evaluate(psi)
    orbit_sum = SkeinVector()
    for k in range(4):
        orbit_sum = orbit_sum + psi_u.apply(matrix_of(psi ** k))
    report = {
        "braid_matrix": matrix_of(BRAID_LEFT) == matrix_of(BRAID_RIGHT),
        "braid_cocycle": u.evaluate(BRAID_LEFT) == u.evaluate(BRAID_RIGHT),
        "order6_matrix": matrix_of(ORDER_SIX) == IDENTITY,
        "order6_cocycle": not u.evaluate(ORDER_SIX),
        "psi4_cocycle": u.evaluate(psi ** 4) == orbit_sum and not orbit_sum,
        "psi4_note": "u(psi^4) = sum of psi^k u(psi) over k = 0..3, four terms, with psi = aba",
    }
    if strict:
        for name, ok in report.items():
            if ok is False:
                raise RelationFailure(name)
    return report


def noncoboundary_certificate(cocycle: TorusCocycle | None = None) -> dict:
    """Check that ``a`` fixes ``alpha`` and read off the ``alpha``-coefficient of ``u(a)``."""
    u = cocycle or TorusCocycle.standard()
    stabilizes = act(MCGWord("a"), ALPHA) == TorusDiagram(ALPHA)
    coeff = u.u_alpha.coefficient(ALPHA)
    return {
        "stabilizes": stabilizes,
        "alpha_coefficient": str(coeff),
        "noncoboundary": stabilizes and coeff != 0,
    }


def word_to(slope: Slope) -> MCGWord:
    """A word ``w`` with ``act(w, alpha) == slope``, by the Euclidean algorithm."""
    p, q = slope.p, slope.q
    letters: list[str] = []
    # reduce (p, q) to (+-1, 0) with a^k: (p, q) -> (p + k q, q) and b^k: (p, q) -> (p, q - k p)
    while q != 0:
        if p == 0:
            letters.append("a")
            p = q
        elif abs(p) > abs(q):
            k = -round(p / q)
            letters.extend(("a" if k > 0 else "A") * abs(k))
            p = p + k * q
        else:
            k = round(q / p)
            letters.extend(("b" if k > 0 else "B") * abs(k))
            q = q - k * p
    # applied letters g_1 ... g_m send slope to (p, 0); invert to send alpha to slope
    reducer = MCGWord("".join(reversed(letters)))
    w = reducer.inverse()
    assert act(w, ALPHA) == TorusDiagram(slope)
    return w


def stabilizer_generators(slope: Slope) -> list[MCGWord]:
    """Generators of the stabilizer of an unoriented slope: the twist along it and ``-I``."""
    w = word_to(slope)
    return [w * MCGWord("a") * w.inverse(), MCGWord("ab") ** 3]


def stabilizer_rational_rank(slope: Slope) -> int:
    """Rank of the abelian stabilizer of ``slope``: the number of infinite-order generators."""
    gens = stabilizer_generators(slope)
    mats = [matrix_of(g) for g in gens]
    for g in gens:
        if act(g, slope) != TorusDiagram(slope):
            raise RelationFailure("stabilizer", f"{g} moves {slope}")
    for x in mats:
        for y in mats:
            if matmul(x, y) != matmul(y, x):
                raise RelationFailure("stabilizer", "generators do not commute")

    def finite_order(m):
        x = m
        for _ in range(12):
            if x == IDENTITY:
                return True
            x = matmul(x, m)
        return False

    return sum(not finite_order(m) for m in mats)


_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?(alpha|beta|\(\s*-?\d+\s*,\s*-?\d+\s*\))")


def parse_skein(text: str) -> SkeinVector:
    """Parse ``"alpha - beta"``, ``"3*(1,0) - 1/2*(0,1)"`` and similar."""
    pos = 0
    terms = []
    text = text.strip()
    if text in ("", "0"):
        return SkeinVector()
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse skein vector at {text[pos:]!r}")
        sign, coef, diag = m.groups()
        c = Fraction(coef) if coef else Fraction(1)
        if sign == "-":
            c = -c
        if diag == "alpha":
            d = ALPHA
        elif diag == "beta":
            d = BETA
        else:
            p, q = (int(x) for x in diag.strip("() ").split(","))
            d = Slope.of(p, q)
        terms.append((d, c))
        pos = m.end()
    return SkeinVector(terms)
