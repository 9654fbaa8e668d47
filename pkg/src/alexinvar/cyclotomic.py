"""Exact arithmetic in cyclotomic fields Q[zeta_N] = Q[x]/(Phi_N)."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Tuple

from .laurent import MultiLaurentPoly, _dense_divmod


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> Tuple[Fraction, ...]:
    """Dense coefficients (low to high) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("order must be positive")
    # x^n - 1 divided by the product of Phi_d over proper divisors d of n
    num = [Fraction(0)] * (n + 1)
    num[0], num[n] = Fraction(-1), Fraction(1)
    for d in range(1, n):
        if n % d == 0:
            q, r = _dense_divmod(num, list(cyclotomic_polynomial(d)))
            assert not r
            num = q
    return tuple(num)


def _poly_mul_mod(a, b, mod):
    out = [Fraction(0)] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    _, r = _dense_divmod(out, list(mod)) if out else ([], [])
    return r


def _poly_inverse_mod(a, mod):
    """Inverse of a modulo `mod` in Q[x] via extended Euclid."""
    r0, r1 = list(mod), list(a)
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = _dense_divmod(r0, r1)
        # s = s0 - q*s1
        prod = [Fraction(0)] * (len(q) + len(s1) - 1) if q and s1 else []
        for i, x in enumerate(q):
            if x:
                for j, y in enumerate(s1):
                    if y:
                        prod[i + j] += x * y
        s = [Fraction(0)] * max(len(s0), len(prod))
        for i, x in enumerate(s0):
            s[i] += x
        for i, x in enumerate(prod):
            s[i] -= x
        while s and not s[-1]:
            s.pop()
        r0, r1, s0, s1 = r1, r, s1, s
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible (not coprime to modulus)")
    c = r0[0]
    return [x / c for x in s0]


class CyclotomicValue:
    """Element of Q[x]/(Phi_N) with exact rational coordinates."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Sequence[Fraction]):
        mod = cyclotomic_polynomial(order)
        cs = [Fraction(c) for c in coeffs]
        if len(cs) >= len(mod):
            _, cs = _dense_divmod(cs, list(mod))
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("CyclotomicValue is immutable")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zeta(order: int, power: int = 1) -> "CyclotomicValue":
        power %= order
        coeffs = [Fraction(0)] * power + [Fraction(1)]
        return CyclotomicValue(order, coeffs)

    @staticmethod
    def from_rational(order: int, c) -> "CyclotomicValue":
        return CyclotomicValue(order, [Fraction(c)])

    @staticmethod
    def one(order: int) -> "CyclotomicValue":
        return CyclotomicValue.from_rational(order, 1)

    @staticmethod
    def zero_value(order: int) -> "CyclotomicValue":
        return CyclotomicValue(order, [])

    def to_order(self, m: int) -> "CyclotomicValue":
        """Reinterpret in Q[zeta_m] when order | m (zeta_n = zeta_m^(m/n))."""
        if m == self.order:
            return self
        if m % self.order != 0:
            raise ValueError(f"cannot lift order {self.order} into order {m}")
        k = m // self.order
        out = CyclotomicValue.zero_value(m)
        z = CyclotomicValue.zeta(m, 0)
        for i, c in enumerate(self.coeffs):
            if c:
                out = out + CyclotomicValue.zeta(m, i * k) * CyclotomicValue.from_rational(m, c)
        return out

    # -- field operations ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CyclotomicValue):
            if other.order != self.order:
                raise ValueError(f"inconsistent cyclotomic orders {self.order} vs {other.order}")
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicValue.from_rational(self.order, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = max(len(self.coeffs), len(o.coeffs))
        cs = [Fraction(0)] * n
        for i, c in enumerate(self.coeffs):
            cs[i] += c
        for i, c in enumerate(o.coeffs):
            cs[i] += c
        return CyclotomicValue(self.order, cs)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicValue(self.order, [-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self.coeffs or not o.coeffs:
            return CyclotomicValue.zero_value(self.order)
        r = _poly_mul_mod(list(self.coeffs), list(o.coeffs), cyclotomic_polynomial(self.order))
        return CyclotomicValue(self.order, r)

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicValue":
        if not self.coeffs:
            raise ZeroDivisionError("zero has no inverse")
        inv = _poly_inverse_mod(list(self.coeffs), cyclotomic_polynomial(self.order))
        return CyclotomicValue(self.order, inv)

    def __truediv__(self, other):
        o = self._coerce(other)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o * self.inverse()

    def __pow__(self, n: int):
        base = self if n >= 0 else self.inverse()
        out = CyclotomicValue.one(self.order)
        for _ in range(abs(n)):
            out = out * base
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CyclotomicValue.from_rational(self.order, other)
        return (isinstance(other, CyclotomicValue) and other.order == self.order
                and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (Fraction(1),)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            body = str(abs(c)) if not mono else (mono if abs(c) == 1 else f"{abs(c)}*{mono}")
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts)
        text = text[2:] if text.startswith("+ ") else "-" + text[2:]
        return f"({text} | zeta_{self.order})"

    __repr__ = __str__


class CharacterPoint:
    """A tuple of nonzero cyclotomic values, one per character-torus coordinate."""

    __slots__ = ("values", "order")

    def __init__(self, values: Sequence[CyclotomicValue]):
        values = tuple(values)
        if not values:
            raise ValueError("empty character point")
        orders = {v.order for v in values}
        if len(orders) != 1:
            raise ValueError("character coordinates must share a cyclotomic order")
        if any(v.is_zero() for v in values):
            raise ValueError("character coordinates must be nonzero")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "order", orders.pop())

    def __setattr__(self, *a):
        raise AttributeError("CharacterPoint is immutable")

    @staticmethod
    def roots_of_unity(order: int, powers: Sequence[int]) -> "CharacterPoint":
        return CharacterPoint([CyclotomicValue.zeta(order, k) for k in powers])

    @property
    def arity(self) -> int:
        return len(self.values)

    @property
    def is_trivial(self) -> bool:
        return all(v.is_one() for v in self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __eq__(self, other):
        return isinstance(other, CharacterPoint) and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return "CharacterPoint(" + ", ".join(str(v) for v in self.values) + ")"


def eval_at_character(p: MultiLaurentPoly, point: CharacterPoint) -> CyclotomicValue:
    """Exact evaluation of a Laurent polynomial at a cyclotomic character."""
    if p.arity != point.arity:
        raise ValueError(f"arity mismatch: polynomial {p.arity}, point {point.arity}")
    n = point.order
    out = CyclotomicValue.zero_value(n)
    inverses = {}
    for exp, c in p.terms.items():
        term = CyclotomicValue.from_rational(n, c)
        for i, e in enumerate(exp):
            if e > 0:
                term = term * point[i] ** e
            elif e < 0:
                if i not in inverses:
                    inverses[i] = point[i].inverse()
                term = term * inverses[i] ** (-e)
        out = out + term
    return out


def cyclo_rank(M) -> int:
    """Rank of a matrix of CyclotomicValue entries (exact Gaussian elimination)."""
    rows = [list(r) for r in M]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    rank = 0
    r0 = 0
    for col in range(ncols):
        piv = next((r for r in range(r0, nrows) if not rows[r][col].is_zero()), None)
        if piv is None:
            continue
        rows[r0], rows[piv] = rows[piv], rows[r0]
        pv = rows[r0][col]
        for r in range(r0 + 1, nrows):
            if not rows[r][col].is_zero():
                f = rows[r][col] / pv
                rows[r] = [rows[r][j] - f * rows[r0][j] for j in range(ncols)]
        rank += 1
        r0 += 1
        if r0 == nrows:
            break
    return rank
