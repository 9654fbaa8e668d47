"""The infinite-cyclic-cover pipeline: one-variable Alexander data.

The Fox matrix presents the homology of the cover relative to a basepoint;
exactly one free summand is attributed to the basepoint and stripped.  Over
rational coefficients finite integral torsion is invisible (the modules here
match complex coefficients).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .bounds import LocalSingularity
from .fox import fox_matrix
from .laurent import (MultiLaurentPoly, RationalFunction, parse_poly,
                      univar_gcd, univar_divides)
from .presentation import Presentation, PresentationError
from .smith import (ULaurent, from_multilaurent, smith_normal_form,
                    smith_normal_form_generic, to_multilaurent)

T_MINUS_1 = parse_poly("t - 1")


@dataclass
class AlexanderResult:
    divisors: List[MultiLaurentPoly]   # elementary divisors in divisibility order
    free_rank: int                     # free rank after the basepoint strip
    delta: MultiLaurentPoly            # unit-normal product of the divisors
    delta_at_one: Fraction

    @property
    def is_torsion(self) -> bool:
        return self.free_rank == 0


def infinite_cyclic_matrix(p: Presentation) -> List[List[MultiLaurentPoly]]:
    """Fox matrix with every word w sent to t^psi(w)."""
    if p.linking is None:
        raise PresentationError("linking data required for the infinite cyclic cover")
    out = []
    for row in fox_matrix(p):
        spec_row = []
        for entry in row:
            terms = {}
            for w, c in entry.terms.items():
                k = (p.psi(w),)
                terms[k] = terms.get(k, Fraction(0)) + c
            spec_row.append(MultiLaurentPoly(1, terms))
        out.append(spec_row)
    return out


def alexander_polynomial(p: Presentation) -> AlexanderResult:
    """Elementary divisors, free rank, and Delta for the infinite cyclic cover."""
    p.require_primitive()
    M = infinite_cyclic_matrix(p)
    g = len(p.generators)
    if not M:
        # free group: relative module is free of rank g
        divisors: List[MultiLaurentPoly] = []
        rank = 0
    else:
        snf = smith_normal_form(M)
        rank = snf.rank
        divisors = [to_multilaurent(d).unit_normal() for d in snf.diagonal]
    free_rel = g - rank
    if free_rel < 1:
        raise PresentationError(
            "no free summand to strip: psi is not surjective or the presentation is degenerate")
    free_rank = free_rel - 1
    nonunit = [d for d in divisors if not d.is_unit()]
    delta = MultiLaurentPoly.one(1)
    for d in nonunit:
        delta = delta * d
    delta = delta.unit_normal()
    at_one = sum(delta.terms.values(), Fraction(0))
    return AlexanderResult(divisors=nonunit, free_rank=free_rank, delta=delta,
                           delta_at_one=at_one)


@dataclass
class CyclotomicVerdict:
    ok: bool
    order_bound: int
    residual: Optional[MultiLaurentPoly] = None   # non-cyclotomic part on failure

    def __bool__(self):
        return self.ok


def zeros_are_roots_of_unity(delta: MultiLaurentPoly, d: Optional[int] = None,
                             n_max: Optional[int] = None) -> CyclotomicVerdict:
    """Are all zeros of delta roots of unity (of order d when given)?

    Factorization-free: repeatedly strips gcd(delta, t^N - 1) for N up to the
    bound (N = d only, when d is given).
    """
    if delta.is_zero():
        raise ValueError("delta must be nonzero")
    p = delta.unit_normal()
    if p.is_unit():
        return CyclotomicVerdict(True, d or 0)
    deg = p.degree()
    if d is not None:
        orders: Sequence[int] = [d]
        bound = d
    else:
        bound = n_max if n_max is not None else 2 * deg * 12
        orders = range(1, bound + 1)
    for n in orders:
        cyc = parse_poly(f"t^{n} - 1")
        while True:
            g = univar_gcd(p, cyc)
            if g.is_unit():
                break
            p = p.divide_exact(g).unit_normal()
            if p.is_unit():
                return CyclotomicVerdict(True, bound)
    return CyclotomicVerdict(p.is_unit(), bound, residual=None if p.is_unit() else p)


def t_minus_one_exponent(delta: MultiLaurentPoly) -> int:
    """Largest e with (t-1)^e dividing delta."""
    if delta.is_zero():
        raise ValueError("delta must be nonzero")
    p = delta.unit_normal()
    e = 0
    while univar_divides(T_MINUS_1, p):
        p = p.divide_exact(T_MINUS_1)
        e += 1
    return e


@dataclass
class DivisibilityVerdict:
    ok: bool
    cofactor: Optional[MultiLaurentPoly] = None

    def __bool__(self):
        return self.ok


def _strip_t_minus_one(p: MultiLaurentPoly) -> MultiLaurentPoly:
    out = p.unit_normal()
    while univar_divides(T_MINUS_1, out):
        out = out.divide_exact(T_MINUS_1).unit_normal()
    return out


def check_divisibility(delta: MultiLaurentPoly,
                       local_data: Sequence[LocalSingularity]) -> DivisibilityVerdict:
    """Up to powers of (t-1): does delta divide the product of local polynomials?"""
    lhs = _strip_t_minus_one(delta)
    product = MultiLaurentPoly.one(1)
    for s in local_data:
        if s.local_alexander is not None:
            product = product * _strip_t_minus_one(s.local_alexander)
    product = product.unit_normal()
    if lhs.is_unit():
        return DivisibilityVerdict(True, product)
    if univar_divides(lhs, product):
        return DivisibilityVerdict(True, product.divide_exact(lhs).unit_normal())
    return DivisibilityVerdict(False, None)


# -- level-0 commutative route ---------------------------------------------------


@dataclass
class Level0Result:
    outcome: str                      # "finite" | "infinite"
    value: Optional[int] = None
    free_rank: int = 0
    torsion_spans: Tuple[int, ...] = ()


def level0_matrix_over_kernel_field(p: Presentation):
    """Fox matrix over F[t,t^-1], F = Q(kernel character torus).

    Words map to t^psi(w) times the monomial of the kernel part of their
    component abelianization (basis e_i - e_s for i < s).
    """
    s = p.component_arity()
    if s == 1:
        return [[from_multilaurent(e) for e in row] for row in infinite_cyclic_matrix(p)], \
            Fraction(0), Fraction(1)
    zero = RationalFunction.zero(s - 1)
    one = RationalFunction.one(s - 1)
    rows = []
    for row in fox_matrix(p):
        urow = []
        for entry in row:
            by_exp = {}
            for w, c in entry.terms.items():
                vec = p.ab_vector(w)
                k = sum(vec)
                kernel = tuple(vec[i] for i in range(s - 1))  # coords in e_i - e_s basis
                mono = MultiLaurentPoly.monomial(s - 1, kernel, c)
                by_exp[k] = by_exp.get(k, MultiLaurentPoly.zero(s - 1)) + mono
            if by_exp:
                lo, hi = min(by_exp), max(by_exp)
                coeffs = [RationalFunction(by_exp.get(k, MultiLaurentPoly.zero(s - 1)))
                          for k in range(lo, hi + 1)]
                urow.append(ULaurent(lo, coeffs, zero, one))
            else:
                urow.append(ULaurent.zero_elem(zero, one))
        rows.append(urow)
    return rows, zero, one


def multivariable_image(p: Presentation):
    """Fox matrix pushed through the component abelianization (arity-s monomials)."""
    s = p.component_arity()
    out = []
    for row in fox_matrix(p):
        new = []
        for entry in row:
            terms = {}
            for w, c in entry.terms.items():
                k = p.ab_vector(w)
                terms[k] = terms.get(k, Fraction(0)) + c
            new.append(MultiLaurentPoly(s, terms))
        out.append(new)
    return out


def level0_degree(p: Presentation) -> Level0Result:
    """delta_0 by the commutative Smith-form route over the kernel fraction field.

    The rank over the full fraction field decides finiteness first (cheap,
    fraction-free); the Smith form over F[t] runs only on torsion cases.
    """
    p.require_primitive()
    g = len(p.generators)
    if not p.relators:
        rank = 0
    else:
        from .laurent import rank_over_fractions
        rank = rank_over_fractions(multivariable_image(p))
    free_rel = g - rank
    if free_rel < 1:
        raise PresentationError("no free summand to strip at level 0")
    free_rank = free_rel - 1
    if free_rank >= 1:
        return Level0Result("infinite", free_rank=free_rank)
    M, zero, one = level0_matrix_over_kernel_field(p)
    snf = smith_normal_form_generic(M, zero, one)
    spans = tuple(d.span() for d in snf.diagonal if not d.is_unit())
    return Level0Result("finite", value=sum(spans), torsion_spans=spans)
