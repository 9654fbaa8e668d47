"""The universal abelian cover pipeline: order ideals, supports, local systems.

The presentation matrix lives over the s-variable Laurent ring; elementary
ideals come from minors of the relative matrix with the basepoint summand
accounted for by an index shift.  Support membership and subtorus
containment are certified on torsion points by exact cyclotomic evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import List, Optional, Sequence, Tuple

from .cyclotomic import CharacterPoint, CyclotomicValue, cyclo_rank, eval_at_character
from .fox import fox_matrix
from .laurent import MultiLaurentPoly, minors, multivar_gcd
from .presentation import Presentation, PresentationError


@dataclass
class IdealData:
    arity: int
    index: int                                  # which elementary ideal E_i
    generators: List[MultiLaurentPoly]          # unit-normal, deterministic order
    gcd: MultiLaurentPoly                       # gcd of the generators
    is_zero_ideal: bool = False
    is_unit_ideal: bool = False


def multivariable_matrix(p: Presentation) -> List[List[MultiLaurentPoly]]:
    """Fox matrix over the s-variable Laurent ring via component abelianization."""
    s = p.component_arity()
    for r in p.relators:
        if any(p.ab_vector(r)):
            raise PresentationError(
                f"component abelianization does not vanish on relator {r}; "
                "declare an ab: map for changed generators")
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


def order_ideal(p: Presentation, i: int = 0) -> IdealData:
    """The i-th elementary ideal of the universal abelian module.

    With g generators the relative matrix presents the module plus one free
    basepoint summand, so E_i comes from the (g-1-i) x (g-1-i) minors.
    """
    if i < 0:
        raise ValueError("elementary ideal index must be >= 0")
    M = multivariable_matrix(p)
    s = p.component_arity()
    g = len(p.generators)
    size = g - 1 - i
    if size <= 0:
        one = MultiLaurentPoly.one(s)
        return IdealData(s, i, [one], one, is_unit_ideal=True)
    if size > len(p.relators):
        zero = MultiLaurentPoly.zero(s)
        return IdealData(s, i, [], zero, is_zero_ideal=True)
    gens = [m.unit_normal() for m in minors(M, size)]
    gens = [g_ for g_ in gens if not g_.is_zero()]
    if not gens:
        zero = MultiLaurentPoly.zero(s)
        return IdealData(s, i, [], zero, is_zero_ideal=True)
    g0 = gens[0]
    for q in gens[1:]:
        g0 = multivar_gcd(g0, q)
        if g0.is_one():
            break
    unit = any(x.is_unit() for x in gens)
    return IdealData(s, i, gens, g0, is_unit_ideal=unit and all(
        x.is_unit() for x in gens[:1]) and gens[0].is_unit())


def support_member(ideal: IdealData, point: CharacterPoint) -> bool:
    """Is the character in the zero set of the order ideal?"""
    if point.arity != ideal.arity:
        raise ValueError("character arity does not match ideal arity")
    if ideal.is_zero_ideal:
        return True
    return all(eval_at_character(g, point).is_zero() for g in ideal.generators)


@dataclass
class ContainmentReport:
    ok: bool
    scanned: int
    support_points: List[Tuple[int, ...]]       # exponent tuples of zeta_d
    counterexamples: List[Tuple[int, ...]]
    note: str = ("finite certification on torsion points of order d, "
                 "not a proof over the whole character torus")


def verify_support_containment(ideal: IdealData, component_degrees: Sequence[int],
                               total_degree: Optional[int] = None,
                               budget: int = 10 ** 6) -> ContainmentReport:
    """Scan all s-tuples of d-th roots of unity; every support point must
    satisfy prod lambda_i^{d_i} = 1."""
    s = ideal.arity
    if len(component_degrees) != s:
        raise ValueError("component degree list has wrong arity")
    d = sum(component_degrees)
    if total_degree is not None and total_degree != d:
        raise ValueError("total degree must equal the sum of component degrees")
    if d ** s > budget:
        raise ValueError(f"enumeration size {d ** s} exceeds budget {budget}")
    support_points: List[Tuple[int, ...]] = []
    bad: List[Tuple[int, ...]] = []
    scanned = 0
    for exps in product(range(d), repeat=s):
        scanned += 1
        point = CharacterPoint.roots_of_unity(d, exps)
        if support_member(ideal, point):
            support_points.append(exps)
            if (sum(e * k for e, k in zip(exps, component_degrees))) % d != 0:
                bad.append(exps)
    return ContainmentReport(ok=not bad, scanned=scanned,
                             support_points=support_points, counterexamples=bad)


def local_system_h1_dim(p: Presentation, point: CharacterPoint) -> int:
    """dim of the first homology with coefficients in the rank-one local system
    at a nontrivial character: (generators - 1) - rank of the evaluated matrix."""
    if point.is_trivial:
        raise ValueError("trivial character excluded (jumping loci are read off "
                         "away from the trivial character)")
    M = multivariable_matrix(p)
    if point.arity != p.component_arity():
        raise ValueError("character arity mismatch")
    g = len(p.generators)
    if not M:
        return g - 1
    evaluated = [[eval_at_character(e, point) for e in row] for row in M]
    return (g - 1) - cyclo_rank(evaluated)
