"""Skew Laurent polynomials over formal group-ring coefficients.

Multiplication is twisted by the splitting conjugation: t*c = alpha(c)*t.
Coefficients live at integer exponents of t; the data is formal, with
equality in the level-n ring left to the oracle layer.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Optional, Tuple

from .groupring import GroupContext, GroupRingCoefficient
from .words import Word


class SkewLaurentPoly:
    """Finite map exponent -> GroupRingCoefficient with t*c = alpha(c)*t."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: GroupContext, coeffs: Dict[int, GroupRingCoefficient] | None = None):
        clean: Dict[int, GroupRingCoefficient] = {}
        if coeffs:
            for k, c in coeffs.items():
                if not c.is_zero():
                    clean[k] = c
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, *a):
        raise AttributeError("SkewLaurentPoly is immutable")

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero(ctx) -> "SkewLaurentPoly":
        return SkewLaurentPoly(ctx)

    @staticmethod
    def one(ctx) -> "SkewLaurentPoly":
        return SkewLaurentPoly(ctx, {0: GroupRingCoefficient.one(ctx)})

    @staticmethod
    def monomial(ctx, coeff: GroupRingCoefficient, k: int = 0) -> "SkewLaurentPoly":
        return SkewLaurentPoly(ctx, {k: coeff})

    @staticmethod
    def from_word(ctx, w: Word, c=1) -> "SkewLaurentPoly":
        """Image of a free word: kernel-part coefficient times t^psi(w)."""
        p = ctx.presentation
        k = p.psi(w)
        kernel = ctx.normal(w * (ctx.splitting.section_word ** (-k)))
        return SkewLaurentPoly(ctx, {k: GroupRingCoefficient.of(ctx, kernel, c)})

    # -- additive structure ------------------------------------------------------

    def __add__(self, other: "SkewLaurentPoly") -> "SkewLaurentPoly":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return SkewLaurentPoly(self.ctx, out)

    def __neg__(self):
        return SkewLaurentPoly(self.ctx, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    # -- twisted multiplication ----------------------------------------------------

    def __mul__(self, other: "SkewLaurentPoly") -> "SkewLaurentPoly":
        out: Dict[int, GroupRingCoefficient] = {}
        for a, ca in self.coeffs.items():
            for b, cb in other.coeffs.items():
                term = ca * cb.conj(a)
                k = a + b
                s = out.get(k)
                s = term if s is None else s + term
                if s.is_zero():
                    out.pop(k, None)
                else:
                    out[k] = s
        return SkewLaurentPoly(self.ctx, out)

    def left_coeff_mul(self, c: GroupRingCoefficient) -> "SkewLaurentPoly":
        return SkewLaurentPoly(self.ctx, {k: c * v for k, v in self.coeffs.items()})

    def right_coeff_mul(self, c: GroupRingCoefficient) -> "SkewLaurentPoly":
        return SkewLaurentPoly(self.ctx, {k: v * c.conj(k) for k, v in self.coeffs.items()})

    def left_t_shift(self, j: int) -> "SkewLaurentPoly":
        """t^j * self."""
        return SkewLaurentPoly(self.ctx, {k + j: c.conj(j) for k, c in self.coeffs.items()})

    def right_t_shift(self, j: int) -> "SkewLaurentPoly":
        """self * t^j."""
        return SkewLaurentPoly(self.ctx, {k + j: c for k, c in self.coeffs.items()})

    # -- queries ----------------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def exponents(self):
        return sorted(self.coeffs)

    def min_exp(self) -> int:
        return min(self.coeffs)

    def max_exp(self) -> int:
        return max(self.coeffs)

    def span(self) -> int:
        if not self.coeffs:
            raise ValueError("span of zero")
        return self.max_exp() - self.min_exp()

    def lead(self) -> GroupRingCoefficient:
        return self.coeffs[self.max_exp()]

    def trail(self) -> GroupRingCoefficient:
        return self.coeffs[self.min_exp()]

    def single_term(self) -> Optional[Tuple[int, Word, Fraction]]:
        """(exponent, word, rational) when the whole polynomial is one word-term."""
        if len(self.coeffs) != 1:
            return None
        (k, c), = self.coeffs.items()
        st = c.single_term()
        if st is None:
            return None
        return (k, st[0], st[1])

    def inverse_single(self) -> "SkewLaurentPoly":
        """Formal inverse of a single-word-term polynomial c*w*t^k."""
        st = self.single_term()
        if st is None:
            raise ValueError("not a single-term unit")
        k, w, c = st
        inv_coeff = GroupRingCoefficient.of(self.ctx, w.inverse(), 1 / c).conj(-k)
        return SkewLaurentPoly(self.ctx, {-k: inv_coeff})

    def num_terms(self) -> int:
        return sum(len(c.terms) for c in self.coeffs.values())

    def __eq__(self, other):
        return isinstance(other, SkewLaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in self.exponents():
            c = self.coeffs[k]
            if k == 0:
                parts.append(f"({c})")
            else:
                parts.append(f"({c})*t^{k}" if k != 1 else f"({c})*t")
        return " + ".join(parts)

    __repr__ = __str__
