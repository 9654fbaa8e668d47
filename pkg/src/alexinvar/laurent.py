"""Exact multivariate Laurent polynomials over Q and their fraction field.

Terms are a map exponent-vector -> Fraction with no zero coefficients.
Units are exactly nonzero-rational multiples of monomials.  Unit
normalization shifts every variable's minimum exponent to 0 and divides by
the coefficient of the lexicographically largest exponent.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Sequence, Tuple

Exponent = Tuple[int, ...]

_MAX_TERMS = 100000


class TermBudgetError(RuntimeError):
    """A polynomial exceeded the configured maximum term count."""


def set_max_terms(n: int) -> None:
    global _MAX_TERMS
    _MAX_TERMS = int(n)


def get_max_terms() -> int:
    return _MAX_TERMS


class MultiLaurentPoly:
    """Immutable multivariate Laurent polynomial with rational coefficients."""

    __slots__ = ("terms", "arity")

    def __init__(self, arity: int, terms: Dict[Exponent, Fraction] | None = None):
        clean: Dict[Exponent, Fraction] = {}
        if terms:
            for exp, c in terms.items():
                if len(exp) != arity:
                    raise ValueError(f"exponent {exp} has wrong arity (want {arity})")
                c = Fraction(c)
                if c:
                    clean[tuple(exp)] = c
        if len(clean) > _MAX_TERMS:
            raise TermBudgetError(f"{len(clean)} terms exceeds budget {_MAX_TERMS}")
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("MultiLaurentPoly is immutable")

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero(arity: int) -> "MultiLaurentPoly":
        return MultiLaurentPoly(arity, {})

    @staticmethod
    def constant(arity: int, c) -> "MultiLaurentPoly":
        return MultiLaurentPoly(arity, {tuple([0] * arity): Fraction(c)})

    @staticmethod
    def one(arity: int) -> "MultiLaurentPoly":
        return MultiLaurentPoly.constant(arity, 1)

    @staticmethod
    def monomial(arity: int, exp: Sequence[int], c=1) -> "MultiLaurentPoly":
        return MultiLaurentPoly(arity, {tuple(exp): Fraction(c)})

    @staticmethod
    def variable(arity: int, i: int) -> "MultiLaurentPoly":
        exp = [0] * arity
        exp[i] = 1
        return MultiLaurentPoly.monomial(arity, exp)

    # -- ring operations -------------------------------------------------------

    def _check(self, other: "MultiLaurentPoly"):
        if not isinstance(other, MultiLaurentPoly):
            raise TypeError(f"expected MultiLaurentPoly, got {type(other).__name__}")
        if other.arity != self.arity:
            raise ValueError("arity mismatch")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiLaurentPoly.constant(self.arity, other)
        self._check(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = out.get(exp, Fraction(0)) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return MultiLaurentPoly(self.arity, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiLaurentPoly(self.arity, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiLaurentPoly.constant(self.arity, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MultiLaurentPoly(self.arity,
                                    {e: c * Fraction(other) for e, c in self.terms.items()})
        self._check(other)
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
                if len(out) > _MAX_TERMS:
                    raise TermBudgetError(f"product exceeds term budget {_MAX_TERMS}")
        return MultiLaurentPoly(self.arity, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_unit():
                raise ValueError("negative power of a non-unit")
            (exp, c), = self.terms.items()
            return MultiLaurentPoly.monomial(self.arity, tuple(-e for e in exp), 1 / c) ** (-n)
        out = MultiLaurentPoly.one(self.arity)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiLaurentPoly.constant(self.arity, other)
        return (isinstance(other, MultiLaurentPoly) and other.arity == self.arity
                and other.terms == self.terms)

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- structure --------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_unit(self) -> bool:
        return len(self.terms) == 1

    def is_one(self) -> bool:
        return self.terms == {tuple([0] * self.arity): Fraction(1)}

    def leading_exponent(self) -> Exponent:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms)

    def leading_coefficient(self) -> Fraction:
        return self.terms[self.leading_exponent()]

    def min_exponents(self) -> Exponent:
        return tuple(min(e[i] for e in self.terms) for i in range(self.arity))

    def max_exponents(self) -> Exponent:
        return tuple(max(e[i] for e in self.terms) for i in range(self.arity))

    def unit_normal(self) -> "MultiLaurentPoly":
        """Shift each variable's lowest exponent to 0, scale leading coeff to 1."""
        if not self.terms:
            return self
        mins = self.min_exponents()
        lead = self.leading_coefficient()
        out = {tuple(a - b for a, b in zip(e, mins)): c / lead for e, c in self.terms.items()}
        return MultiLaurentPoly(self.arity, out)

    def span(self) -> int:
        """maxdeg - mindeg (univariate only)."""
        if self.arity != 1:
            raise ValueError("span is defined for univariate polynomials")
        if not self.terms:
            raise ValueError("span of zero polynomial")
        exps = [e[0] for e in self.terms]
        return max(exps) - min(exps)

    def degree(self) -> int:
        if self.arity != 1:
            raise ValueError("degree is defined for univariate polynomials")
        if not self.terms:
            raise ValueError("degree of zero polynomial")
        return max(e[0] for e in self.terms)

    def substitute_one_var(self) -> "MultiLaurentPoly":
        """Collapse every variable to a single variable t (t_i -> t)."""
        out: Dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            k = (sum(e),)
            s = out.get(k, Fraction(0)) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return MultiLaurentPoly(1, out)

    def coefficients_in(self, var: int) -> Dict[int, "MultiLaurentPoly"]:
        """Split into coefficients of powers of variable `var` (arity drops by 1)."""
        out: Dict[int, Dict[Exponent, Fraction]] = {}
        for e, c in self.terms.items():
            k = e[var]
            rest = e[:var] + e[var + 1:]
            out.setdefault(k, {})[rest] = c
        return {k: MultiLaurentPoly(self.arity - 1, d) for k, d in out.items()}

    @staticmethod
    def from_coefficients(var: int, coeffs: Dict[int, "MultiLaurentPoly"],
                          arity: int) -> "MultiLaurentPoly":
        terms: Dict[Exponent, Fraction] = {}
        for k, p in coeffs.items():
            for e, c in p.terms.items():
                full = e[:var] + (k,) + e[var:]
                terms[full] = terms.get(full, Fraction(0)) + c
        return MultiLaurentPoly(arity, terms)

    # -- division ---------------------------------------------------------------

    def divide_exact(self, q: "MultiLaurentPoly") -> "MultiLaurentPoly":
        """Exact division self/q; raises ValueError if q does not divide self."""
        self._check(q)
        if q.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return self
        quo: Dict[Exponent, Fraction] = {}
        rem = self
        lq = q.leading_exponent()
        cq = q.terms[lq]
        budget = 1000 + 50 * len(self.terms) + 50 * len(q.terms)
        while not rem.is_zero():
            budget -= 1
            if budget < 0:
                raise ValueError("not divisible (division loop exceeded budget)")
            lr = rem.leading_exponent()
            e = tuple(a - b for a, b in zip(lr, lq))
            c = rem.terms[lr] / cq
            quo[e] = quo.get(e, Fraction(0)) + c
            rem = rem - MultiLaurentPoly.monomial(self.arity, e, c) * q
        return MultiLaurentPoly(self.arity, quo)

    def divides(self, other: "MultiLaurentPoly") -> bool:
        try:
            other.divide_exact(self)
            return True
        except ValueError:
            return False

    # -- text ---------------------------------------------------------------------

    def var_name(self, i: int) -> str:
        return "t" if self.arity == 1 else f"t{i + 1}"

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MultiLaurentPoly({format_poly(self)})"


def format_poly(p: MultiLaurentPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for exp in sorted(p.terms, reverse=True):
        c = p.terms[exp]
        factors = []
        for i, e in enumerate(exp):
            if e != 0:
                factors.append(f"{p.var_name(i)}^{e}" if e != 1 else p.var_name(i))
        mono = "*".join(factors)
        ac = abs(c)
        if not mono:
            body = str(ac)
        elif ac == 1:
            body = mono
        else:
            body = f"{ac}*{mono}"
        parts.append(("- " if c < 0 else "+ ") + body)
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def parse_poly(text: str, arity: int | None = None) -> MultiLaurentPoly:
    """Parse the display format, e.g. ``t^2 - t + 1`` or ``t1^-1*t2^2 - 3``."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial text")
    # split into signed terms
    terms = []
    cur = ""
    for i, ch in enumerate(s):
        if ch in "+-" and i > 0 and s[i - 1] not in "^+-*/(":
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)

    parsed = []
    max_var = 0
    for term in terms:
        sign = Fraction(1)
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:]
        if not term:
            raise ValueError("dangling sign in polynomial")
        coef = sign
        exps: Dict[int, int] = {}
        for factor in term.split("*"):
            if not factor:
                raise ValueError("empty factor")
            if factor[0].isdigit():
                coef *= Fraction(factor)
                continue
            if not factor.startswith("t"):
                raise ValueError(f"unknown variable in {factor!r}")
            var_part, _, exp_part = factor.partition("^")
            idx = 1 if var_part == "t" else None
            if idx is None:
                if not var_part[1:].isdigit():
                    raise ValueError(f"unknown variable {var_part!r}")
                idx = int(var_part[1:])
            e = int(exp_part) if exp_part else 1
            exps[idx] = exps.get(idx, 0) + e
            max_var = max(max_var, idx)
        parsed.append((coef, exps))

    n = arity if arity is not None else max(max_var, 1)
    if max_var > n:
        raise ValueError(f"variable t{max_var} exceeds arity {n}")
    out: Dict[Exponent, Fraction] = {}
    for coef, exps in parsed:
        e = tuple(exps.get(i + 1, 0) for i in range(n))
        out[e] = out.get(e, Fraction(0)) + coef
    return MultiLaurentPoly(n, out)


# -- univariate dense helpers over Q ------------------------------------------


def _to_dense(p: MultiLaurentPoly) -> tuple[int, list[Fraction]]:
    """Univariate Laurent -> (offset, dense coeff list) with nonzero trailing coeff."""
    if p.arity != 1:
        raise ValueError("univariate expected")
    if p.is_zero():
        return 0, []
    lo = min(e[0] for e in p.terms)
    hi = max(e[0] for e in p.terms)
    coeffs = [p.terms.get((k,), Fraction(0)) for k in range(lo, hi + 1)]
    return lo, coeffs


def _from_dense(offset: int, coeffs: Sequence[Fraction]) -> MultiLaurentPoly:
    return MultiLaurentPoly(1, {(offset + i,): c for i, c in enumerate(coeffs) if c})


def _dense_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    if db < 0:
        raise ZeroDivisionError
    q = [Fraction(0)] * max(0, len(a) - db)
    while len(a) - 1 >= db and any(a):
        while a and not a[-1]:
            a.pop()
        if len(a) - 1 < db:
            break
        k = len(a) - 1 - db
        c = a[-1] / lb
        q[k] = c
        for i in range(db + 1):
            a[k + i] -= c * b[i]
        a.pop()
    while a and not a[-1]:
        a.pop()
    return q, a


def univar_gcd(p: MultiLaurentPoly, q: MultiLaurentPoly) -> MultiLaurentPoly:
    """Unit-normal gcd in Q[t, t^-1]; gcd(0, 0) = 0."""
    if p.arity != 1 or q.arity != 1:
        raise ValueError("univar_gcd expects univariate polynomials")
    if p.is_zero():
        return q.unit_normal()
    if q.is_zero():
        return p.unit_normal()
    _, a = _to_dense(p)
    _, b = _to_dense(q)
    while b:
        _, r = _dense_divmod(a, b)
        a, b = b, r
    return _from_dense(0, a).unit_normal()


def univar_divides(p: MultiLaurentPoly, q: MultiLaurentPoly) -> bool:
    """Does p divide q in Q[t, t^-1]?"""
    if q.is_zero():
        return True
    if p.is_zero():
        return False
    _, a = _to_dense(q)
    _, b = _to_dense(p)
    _, r = _dense_divmod(a, b)
    return not r


# -- multivariate gcd ----------------------------------------------------------


def _is_effectively_univariate(p: MultiLaurentPoly):
    spread = [i for i in range(p.arity)
              if p.terms and max(e[i] for e in p.terms) != min(e[i] for e in p.terms)]
    return spread


def multivar_gcd(p: MultiLaurentPoly, q: MultiLaurentPoly) -> MultiLaurentPoly:
    """Unit-normal gcd in Q[t_1^{pm1},...]; content/primitive-part recursion."""
    if p.arity != q.arity:
        raise ValueError("arity mismatch")
    p = p.unit_normal() if p else p
    q = q.unit_normal() if q else q
    if p.is_zero():
        return q
    if q.is_zero():
        return p
    if p.arity == 1:
        return univar_gcd(p, q)
    vars_p = set(_is_effectively_univariate(p))
    vars_q = set(_is_effectively_univariate(q))
    active = vars_p | vars_q
    if not active:
        return MultiLaurentPoly.one(p.arity)
    main = min(active)

    cp = p.coefficients_in(main)
    cq = q.coefficients_in(main)

    def content(coeffs):
        g = MultiLaurentPoly.zero(p.arity - 1)
        for c in coeffs.values():
            g = multivar_gcd(g, c)
            if g.is_one():
                break
        return g

    cont_p, cont_q = content(cp), content(cq)
    cont_g = multivar_gcd(cont_p, cont_q)

    pp_p = {k: c.divide_exact(cont_p) for k, c in cp.items()}
    pp_q = {k: c.divide_exact(cont_q) for k, c in cq.items()}

    # Euclid in Frac(Q[others])[main] on primitive parts
    a = _rf_poly(pp_p)
    b = _rf_poly(pp_q)
    while b:
        b_lead = len(b) - 1
        while a and not a[-1].num:
            a.pop()
        r = _rf_poly_mod(a, b)
        a, b = b, r
    # a is the fraction-field gcd; clear denominators, take primitive part
    if not a:
        g_main = {0: MultiLaurentPoly.one(p.arity - 1)}
    else:
        den_prod = MultiLaurentPoly.one(p.arity - 1)
        for rf in a:
            den_prod = den_prod * rf.den
        cleared = {i: (rf.num * den_prod.divide_exact(rf.den)) for i, rf in enumerate(a) if rf.num}
        cont = MultiLaurentPoly.zero(p.arity - 1)
        for c in cleared.values():
            cont = multivar_gcd(cont, c)
        g_main = {i: c.divide_exact(cont) for i, c in cleared.items()}

    g_low = MultiLaurentPoly.from_coefficients(main, g_main, p.arity)
    g = g_low * MultiLaurentPoly.from_coefficients(main, {0: cont_g}, p.arity)
    return g.unit_normal()


def _rf_poly(coeffs: Dict[int, MultiLaurentPoly]):
    """Dense list of RationalFunction coefficients from an int->poly map."""
    if not coeffs:
        return []
    lo, hi = min(coeffs), max(coeffs)
    arity = next(iter(coeffs.values())).arity
    out = []
    for k in range(lo, hi + 1):
        c = coeffs.get(k, MultiLaurentPoly.zero(arity))
        out.append(RationalFunction(c, MultiLaurentPoly.one(arity)))
    while out and not out[-1].num:
        out.pop()
    return out


def _rf_poly_mod(a, b):
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        while a and not a[-1].num:
            a.pop()
        if len(a) - 1 < db or not a:
            break
        c = a[-1] / lb
        k = len(a) - 1 - db
        for i in range(db + 1):
            a[k + i] = a[k + i] - c * b[i]
        a.pop()
    while a and not a[-1].num:
        a.pop()
    return a


# -- rational functions ----------------------------------------------------------


class RationalFunction:
    """num/den of MultiLaurentPoly; canonical form has unit-normal denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: MultiLaurentPoly, den: MultiLaurentPoly | None = None,
                 *, reduce: bool = True):
        if den is None:
            den = MultiLaurentPoly.one(num.arity)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.arity != den.arity:
            raise ValueError("arity mismatch")
        if num.is_zero():
            den = MultiLaurentPoly.one(num.arity)
        elif reduce and not den.is_unit():
            g = multivar_gcd(num, den)
            if not g.is_one():
                num = num.divide_exact(g)
                den = den.divide_exact(g)
        if not den.is_one():
            # normalize: make denominator unit-normal, fold the unit into num
            mins = den.min_exponents()
            lead = den.leading_coefficient()
            unit = MultiLaurentPoly.monomial(den.arity, tuple(-m for m in mins),
                                             Fraction(1) / lead)
            den = den * unit
            num = num * unit
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("RationalFunction is immutable")

    @staticmethod
    def from_poly(p: MultiLaurentPoly) -> "RationalFunction":
        return RationalFunction(p)

    @staticmethod
    def zero(arity: int) -> "RationalFunction":
        return RationalFunction(MultiLaurentPoly.zero(arity))

    @staticmethod
    def one(arity: int) -> "RationalFunction":
        return RationalFunction(MultiLaurentPoly.one(arity))

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, MultiLaurentPoly):
            return RationalFunction(other)
        if isinstance(other, (int, Fraction)):
            return RationalFunction(MultiLaurentPoly.constant(self.num.arity, other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        o = self._coerce(other)
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o / self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    def is_zero(self):
        return self.num.is_zero()

    def __str__(self):
        if self.den.is_one():
            return format_poly(self.num)
        return f"({format_poly(self.num)})/({format_poly(self.den)})"

    __repr__ = __str__


# -- matrices --------------------------------------------------------------------


def minors(M: Sequence[Sequence[MultiLaurentPoly]], k: int):
    """All k x k minor determinants, lexicographic row/column subsets."""
    from itertools import combinations
    rows = len(M)
    cols = len(M[0]) if rows else 0
    if k > rows or k > cols:
        raise ValueError(f"minor size {k} exceeds matrix dimensions {rows}x{cols}")
    if k <= 0:
        raise ValueError("minor size must be positive")
    out = []
    for rsub in combinations(range(rows), k):
        for csub in combinations(range(cols), k):
            sub = [[M[i][j] for j in csub] for i in rsub]
            out.append(_determinant(sub))
    return out


def _determinant(M) -> MultiLaurentPoly:
    """Bareiss fraction-free determinant over the Laurent polynomial domain."""
    n = len(M)
    arity = M[0][0].arity if n else 0
    if n == 0:
        return MultiLaurentPoly.one(arity)
    A = [row[:] for row in M]
    sign = 1
    prev = MultiLaurentPoly.one(arity)
    for k in range(n - 1):
        if A[k][k].is_zero():
            pivot_row = next((i for i in range(k + 1, n) if not A[i][k].is_zero()), None)
            if pivot_row is None:
                return MultiLaurentPoly.zero(arity)
            A[k], A[pivot_row] = A[pivot_row], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[k][k] * A[i][j] - A[i][k] * A[k][j]
                A[i][j] = num.divide_exact(prev)
            A[i][k] = MultiLaurentPoly.zero(arity)
        prev = A[k][k]
    det = A[n - 1][n - 1]
    return det if sign > 0 else -det


def _strip_row_content(row: dict) -> dict:
    """Divide a sparse row by its monomial and integer content (a unit times
    a rational: harmless for rank)."""
    if not row:
        return row
    arity = next(iter(row.values())).arity
    mins = None
    num_gcd = 0
    den_lcm = 1
    for p in row.values():
        pm = p.min_exponents()
        mins = pm if mins is None else tuple(min(a, b) for a, b in zip(mins, pm))
        for c in p.terms.values():
            num_gcd = gcd_int(num_gcd, c.numerator)
            den_lcm = den_lcm * c.denominator // gcd_int(den_lcm, c.denominator)
    scale = Fraction(den_lcm, abs(num_gcd) if num_gcd else 1)
    unit = MultiLaurentPoly.monomial(arity, tuple(-m for m in mins), scale)
    return {j: p * unit for j, p in row.items()}


def gcd_int(a: int, b: int) -> int:
    import math
    return math.gcd(a, b)


def rank_over_fractions(M: Sequence[Sequence[MultiLaurentPoly]]) -> int:
    """Rank over Frac(Q[t_i^{pm1}]) by exact sparse Gaussian elimination.

    Single-term entries are units and make division-free pivots; remaining
    steps use fraction-free cross-multiplication with per-row content strips.
    Every intermediate entry stays a polynomial, so the result is exact.
    """
    rows = []
    for r in M:
        row = {j: e for j, e in enumerate(r) if not e.is_zero()}
        if row:
            rows.append(_strip_row_content(row))
    rank = 0
    while rows:
        # pivot choice: prefer unit entries, then low fill (Markowitz-style)
        col_count: dict = {}
        for row in rows:
            for j in row:
                col_count[j] = col_count.get(j, 0) + 1
        best = None
        for ri, row in enumerate(rows):
            for j, p in row.items():
                unit = p.is_unit()
                key = (0 if unit else 1, (len(row) - 1) * (col_count[j] - 1),
                       len(p.terms), ri, j)
                if best is None or key < best[0]:
                    best = (key, ri, j)
        _, ri, pj = best
        pivot_row = rows.pop(ri)
        pivot = pivot_row[pj]
        rank += 1
        new_rows = []
        for row in rows:
            if pj not in row:
                new_rows.append(row)
                continue
            coef = row.pop(pj)
            if pivot.is_unit():
                factor = coef * (pivot ** -1)
                combined = {}
                for j, p in row.items():
                    combined[j] = p
                for j, p in pivot_row.items():
                    if j == pj:
                        continue
                    q = combined.get(j, MultiLaurentPoly.zero(p.arity)) - factor * p
                    combined[j] = q
            else:
                combined = {}
                for j, p in row.items():
                    combined[j] = pivot * p
                for j, p in pivot_row.items():
                    if j == pj:
                        continue
                    q = combined.get(j, MultiLaurentPoly.zero(p.arity)) - coef * p
                    combined[j] = q
            combined = {j: p for j, p in combined.items() if not p.is_zero()}
            if combined:
                new_rows.append(_strip_row_content(combined))
        rows = new_rows
    return rank
