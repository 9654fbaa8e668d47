"""Formal group-ring coefficients over the linking-kernel subgroup.

A GroupRingCoefficient is a finite rational combination of psi=0 words.
Equality of the stored data is syntactic (after bounded relator
normalization); equality in the level-n quotient ring is decided only
through the oracle hierarchy.  The context object carries the presentation,
the splitting, the working level, and the normalization machinery shared by
every coefficient.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from .presentation import Presentation, SplittingChoice
from .rewrite import RewriteSystem
from .words import IDENTITY, Word

WORD_LENGTH_GUARD = 1000


class CoefficientGuardError(RuntimeError):
    """A coefficient exceeded the word-length or term-count guard."""


class GroupContext:
    """Shared normalization/conjugation state for one (presentation, splitting,
    level, assumption set)."""

    def __init__(self, presentation: Presentation, splitting: SplittingChoice,
                 level: int, fact_relators: Iterable[Word] = (),
                 max_coeff_terms: int = 2000):
        presentation.require_primitive()
        self.presentation = presentation
        self.splitting = splitting
        self.level = level
        self.max_coeff_terms = max_coeff_terms
        self.rewriter = RewriteSystem(list(presentation.relators) + list(fact_relators))
        self._alpha_cache: Dict[Tuple[Tuple, int], Word] = {}
        self._canon = None
        if level == 0:
            self._canon = _Level0Canonicalizer(presentation)

    def normal(self, w: Word) -> Word:
        if len(w) > WORD_LENGTH_GUARD:
            raise CoefficientGuardError(
                f"word length {len(w)} exceeds guard {WORD_LENGTH_GUARD}")
        out = self.rewriter.normalize(w)
        if self._canon is not None:
            out = self._canon(out, self)
        return out

    def alpha(self, w: Word, k: int = 1) -> Word:
        """Conjugation by the splitting word: alpha^k(w) = s^k w s^-k, normalized."""
        if k == 0:
            return self.normal(w)
        key = (w.letters, k)
        got = self._alpha_cache.get(key)
        if got is None:
            s = self.splitting.section_word ** k
            got = self.normal(s * w * s.inverse())
            self._alpha_cache[key] = got
        return got

    def kernel_generators(self) -> List[str]:
        return [g for g in self.presentation.generators if self.presentation.linking[g] == 0]


class _Level0Canonicalizer:
    """Replace psi=0 words by canonical representatives of their image in the
    torsion-free abelianization (sound at level 0 only)."""

    def __init__(self, p: Presentation):
        self.p = p
        self.s = p.component_arity()
        self.kernel_gens = [g for g in p.generators if p.linking[g] == 0]
        self.basis_solve = None
        if self.s > 1 and self.kernel_gens:
            rows = [self._kernel_coords(p.ab_vector(Word([(g, 1)])))
                    for g in self.kernel_gens]
            self.basis_solve = _IntSolver(rows)

    def _kernel_coords(self, vec):
        return tuple(vec[:self.s - 1])

    def __call__(self, w: Word, ctx: GroupContext) -> Word:
        if self.p.psi(w) != 0:
            return w
        if self.s == 1:
            return IDENTITY
        if self.basis_solve is None:
            return w
        coords = self._kernel_coords(self.p.ab_vector(w))
        combo = self.basis_solve.solve(coords)
        if combo is None:
            return w
        letters = []
        for g, n in zip(self.kernel_gens, combo):
            sign = 1 if n > 0 else -1
            letters.extend((g, sign) for _ in range(abs(n)))
        return Word(letters)


class _IntSolver:
    """Solve integer row-combination problems x * rows = target (exact)."""

    def __init__(self, rows: List[Tuple[int, ...]]):
        self.rows = [tuple(r) for r in rows]
        self.n = len(rows)
        self.m = len(rows[0]) if rows else 0

    def solve(self, target) -> Optional[Tuple[int, ...]]:
        # Gaussian elimination over Q on the transposed system, then an
        # integrality check; fine at the tiny sizes that occur here.
        A = [[Fraction(self.rows[i][j]) for i in range(self.n)] for j in range(self.m)]
        b = [Fraction(t) for t in target]
        piv_cols = []
        r = 0
        for c in range(self.n):
            piv = next((i for i in range(r, self.m) if A[i][c]), None)
            if piv is None:
                continue
            A[r], A[piv] = A[piv], A[r]
            b[r], b[piv] = b[piv], b[r]
            for i in range(self.m):
                if i != r and A[i][c]:
                    f = A[i][c] / A[r][c]
                    A[i] = [A[i][j] - f * A[r][j] for j in range(self.n)]
                    b[i] = b[i] - f * b[r]
            piv_cols.append(c)
            r += 1
        x = [Fraction(0)] * self.n
        for i, c in enumerate(piv_cols):
            x[c] = b[i] / A[i][c]
        for i in range(r, self.m):
            if b[i]:
                return None
        if any(v.denominator != 1 for v in x):
            return None
        return tuple(int(v) for v in x)


class GroupRingCoefficient:
    """Finite map normalized-Word -> nonzero Fraction."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: GroupContext, terms: Dict[Word, Fraction] | None = None,
                 *, _normalized: bool = False):
        clean: Dict[Word, Fraction] = {}
        if terms:
            for w, c in terms.items():
                c = Fraction(c)
                if not c:
                    continue
                key = w if _normalized else ctx.normal(w)
                s = clean.get(key, Fraction(0)) + c
                if s:
                    clean[key] = s
                else:
                    del clean[key]
        if len(clean) > ctx.max_coeff_terms:
            raise CoefficientGuardError(
                f"coefficient has {len(clean)} terms (guard {ctx.max_coeff_terms})")
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("GroupRingCoefficient is immutable")

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero(ctx) -> "GroupRingCoefficient":
        return GroupRingCoefficient(ctx)

    @staticmethod
    def one(ctx) -> "GroupRingCoefficient":
        return GroupRingCoefficient(ctx, {IDENTITY: Fraction(1)}, _normalized=True)

    @staticmethod
    def of(ctx, w: Word, c=1) -> "GroupRingCoefficient":
        return GroupRingCoefficient(ctx, {w: Fraction(c)})

    # -- ring structure ------------------------------------------------------

    def __add__(self, other: "GroupRingCoefficient") -> "GroupRingCoefficient":
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, Fraction(0)) + c
            if s:
                out[w] = s
            else:
                del out[w]
        return GroupRingCoefficient(self.ctx, out, _normalized=True)

    def __neg__(self):
        return GroupRingCoefficient(self.ctx, {w: -c for w, c in self.terms.items()},
                                    _normalized=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return GroupRingCoefficient.zero(self.ctx)
            return GroupRingCoefficient(
                self.ctx, {w: c * other for w, c in self.terms.items()}, _normalized=True)
        out: Dict[Word, Fraction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = self.ctx.normal(w1 * w2)
                s = out.get(w, Fraction(0)) + c1 * c2
                if s:
                    out[w] = s
                else:
                    del out[w]
        return GroupRingCoefficient(self.ctx, out, _normalized=True)

    __rmul__ = __mul__

    def mul_single(self, w: Word, c: Fraction) -> "GroupRingCoefficient":
        """self * (c*w)."""
        out: Dict[Word, Fraction] = {}
        for w1, c1 in self.terms.items():
            key = self.ctx.normal(w1 * w)
            s = out.get(key, Fraction(0)) + c1 * c
            if s:
                out[key] = s
            else:
                del out[key]
        return GroupRingCoefficient(self.ctx, out, _normalized=True)

    def conj(self, k: int) -> "GroupRingCoefficient":
        """alpha^k applied to every word."""
        if k == 0 or not self.terms:
            return self
        out: Dict[Word, Fraction] = {}
        for w, c in self.terms.items():
            key = self.ctx.alpha(w, k)
            s = out.get(key, Fraction(0)) + c
            if s:
                out[key] = s
            else:
                del out[key]
        return GroupRingCoefficient(self.ctx, out, _normalized=True)

    # -- queries --------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def single_term(self) -> Optional[Tuple[Word, Fraction]]:
        if len(self.terms) == 1:
            return next(iter(self.terms.items()))
        return None

    def inverse_single(self) -> "GroupRingCoefficient":
        st = self.single_term()
        if st is None:
            raise ValueError("only single-term coefficients have a formal inverse")
        w, c = st
        return GroupRingCoefficient(self.ctx, {w.inverse(): 1 / c})

    def augmentation(self) -> Fraction:
        return sum(self.terms.values(), Fraction(0))

    def ab_class_sums(self) -> Dict[Tuple[int, ...], Fraction]:
        p = self.ctx.presentation
        out: Dict[Tuple[int, ...], Fraction] = {}
        for w, c in self.terms.items():
            k = p.ab_vector(w)
            out[k] = out.get(k, Fraction(0)) + c
        return out

    def words(self):
        return sorted(self.terms, key=Word.sort_key)

    def __eq__(self, other):
        return isinstance(other, GroupRingCoefficient) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in self.words():
            c = self.terms[w]
            body = str(w) if abs(c) == 1 else f"{abs(c)}*{w}"
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    __repr__ = __str__


# -- bounded division in the group ring ------------------------------------------


def left_divide(u: GroupRingCoefficient, e: GroupRingCoefficient,
                node_budget: int = 4000) -> Optional[GroupRingCoefficient]:
    """Find q with u*q == e, or None.  Backtracking over which u-term explains
    the current extremal word; sound (result is verified)."""
    return _divide(u, e, node_budget, left=True)


def right_divide(u: GroupRingCoefficient, e: GroupRingCoefficient,
                 node_budget: int = 4000) -> Optional[GroupRingCoefficient]:
    """Find q with q*u == e, or None."""
    return _divide(u, e, node_budget, left=False)


def _divide(u, e, node_budget, left):
    ctx = u.ctx
    if u.is_zero():
        return None
    if e.is_zero():
        return GroupRingCoefficient.zero(ctx)
    anchors = sorted(u.terms.items(), key=lambda kv: kv[0].sort_key())
    budget = [node_budget]
    max_depth = 2 * len(e.terms) + 6

    def rec(rem, acc, depth):
        if rem.is_zero():
            return acc
        if depth <= 0 or budget[0] <= 0:
            return None
        m = max(rem.terms, key=Word.sort_key)
        cm = rem.terms[m]
        for uw, uc in anchors:
            budget[0] -= 1
            if budget[0] <= 0:
                return None
            if left:
                v = ctx.normal(uw.inverse() * m)
                prod = u.mul_single(v, cm / uc)
            else:
                v = ctx.normal(m * uw.inverse())
                prod = GroupRingCoefficient.of(ctx, v, cm / uc) * u
            rem2 = rem - prod
            if rem2.terms:
                m2 = max(rem2.terms, key=Word.sort_key)
                if m2.sort_key() >= m.sort_key():
                    continue
            acc2 = dict(acc)
            acc2[v] = acc2.get(v, Fraction(0)) + cm / uc
            got = rec(rem2, acc2, depth - 1)
            if got is not None:
                return got
        return None

    acc = rec(e, {}, max_depth)
    if acc is None:
        return None
    q = GroupRingCoefficient(ctx, acc, _normalized=True)
    check = u * q if left else q * u
    return q if check == e else None
