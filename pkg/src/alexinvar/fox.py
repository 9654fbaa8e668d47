"""Free differential calculus on the free group ring.

Derivatives are returned raw (in the free group ring); identities that hold
only modulo the relators are visible only after pushing coefficients into a
quotient ring.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Tuple

from .words import IDENTITY, Word
from .presentation import Presentation, SplittingChoice


class FreeRingElement:
    """Finite integer (or rational) combination of freely reduced words."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Word, Fraction] | None = None):
        clean: Dict[Word, Fraction] = {}
        if terms:
            for w, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[w] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("FreeRingElement is immutable")

    @staticmethod
    def zero() -> "FreeRingElement":
        return FreeRingElement()

    @staticmethod
    def one() -> "FreeRingElement":
        return FreeRingElement({IDENTITY: Fraction(1)})

    @staticmethod
    def of(w: Word, c=1) -> "FreeRingElement":
        return FreeRingElement({w: Fraction(c)})

    def __add__(self, other: "FreeRingElement") -> "FreeRingElement":
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, Fraction(0)) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return FreeRingElement(out)

    def __neg__(self):
        return FreeRingElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FreeRingElement({w: c * other for w, c in self.terms.items()})
        out: Dict[Word, Fraction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 * w2
                s = out.get(w, Fraction(0)) + c1 * c2
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return FreeRingElement(out)

    __rmul__ = __mul__

    def left_mul_word(self, w: Word) -> "FreeRingElement":
        return FreeRingElement({w * u: c for u, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, FreeRingElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=Word.sort_key):
            c = self.terms[w]
            body = str(w) if abs(c) == 1 else f"{abs(c)}*{w}"
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    __repr__ = __str__


def fox_derivative(w: Word, x: str) -> FreeRingElement:
    """d(w)/dx with d(uv) = du + u*dv, d(x)=1, d(x^-1) = -x^-1."""
    terms: Dict[Word, Fraction] = {}
    prefix: list = []
    for sym, sign in w.letters:
        if sym == x:
            if sign == 1:
                key = Word(tuple(prefix), _reduced=True)
                terms[key] = terms.get(key, Fraction(0)) + 1
            else:
                key = Word(tuple(prefix) + ((sym, -1),))
                terms[key] = terms.get(key, Fraction(0)) - 1
        prefix.append((sym, sign))
    return FreeRingElement(terms)


def fox_matrix(p: Presentation):
    """Rows = relators, columns = generators; entries are raw Fox derivatives."""
    return [[fox_derivative(r, g) for g in p.generators] for r in p.relators]


def abelianize(w: Word, p: Presentation) -> Tuple[int, ...]:
    """Exponent-sum vector of w over the presentation's generators."""
    idx = {g: i for i, g in enumerate(p.generators)}
    out = [0] * len(p.generators)
    for sym, e in w.letters:
        out[idx[sym]] += e
    return tuple(out)


def t_normal_form(w: Word, s: SplittingChoice, p: Presentation) -> Tuple[Word, int]:
    """Write w = kernel * section^k with psi(kernel) = 0, k = psi(w)."""
    p.require_primitive()
    k = p.psi(w)
    kernel = w * (s.section_word ** (-k))
    assert p.psi(kernel) == 0
    return kernel, k
