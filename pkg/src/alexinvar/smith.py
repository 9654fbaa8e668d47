"""Smith normal form over F[t, t^-1] for an exact coefficient field F.

Works for F = Q (Fraction coefficients) and F = rational functions; the
elements only need +,-,*,/ and equality with 0/1.  Entries are dense
univariate Laurent polynomials; every elementary move is logged so the
reduction can be replayed or inverted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, List, Sequence, Tuple

from .laurent import MultiLaurentPoly, RationalFunction


class ULaurent:
    """Dense univariate Laurent polynomial t^offset * (c0 + c1 t + ...), c0 != 0."""

    __slots__ = ("offset", "coeffs", "zero", "one")

    def __init__(self, offset: int, coeffs: Sequence[Any], zero, one):
        cs = list(coeffs)
        while cs and cs[0] == zero:
            cs.pop(0)
            offset += 1
        while cs and cs[-1] == zero:
            cs.pop()
        if not cs:
            offset = 0
        object.__setattr__(self, "offset", offset)
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "zero", zero)
        object.__setattr__(self, "one", one)

    def __setattr__(self, *a):
        raise AttributeError("ULaurent is immutable")

    @staticmethod
    def zero_elem(zero, one) -> "ULaurent":
        return ULaurent(0, [], zero, one)

    @staticmethod
    def one_elem(zero, one) -> "ULaurent":
        return ULaurent(0, [one], zero, one)

    @staticmethod
    def monomial(k: int, c, zero, one) -> "ULaurent":
        return ULaurent(k, [c], zero, one)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_unit(self) -> bool:
        return len(self.coeffs) == 1

    def span(self) -> int:
        if not self.coeffs:
            raise ValueError("span of zero")
        return len(self.coeffs) - 1

    def lead(self):
        return self.coeffs[-1]

    def trail(self):
        return self.coeffs[0]

    def __add__(self, other: "ULaurent") -> "ULaurent":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.offset, other.offset)
        hi = max(self.offset + len(self.coeffs), other.offset + len(other.coeffs))
        cs = [self.zero] * (hi - lo)
        for i, c in enumerate(self.coeffs):
            cs[self.offset - lo + i] = cs[self.offset - lo + i] + c
        for i, c in enumerate(other.coeffs):
            cs[other.offset - lo + i] = cs[other.offset - lo + i] + c
        return ULaurent(lo, cs, self.zero, self.one)

    def __neg__(self):
        return ULaurent(self.offset, [self.zero - c for c in self.coeffs], self.zero, self.one)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "ULaurent") -> "ULaurent":
        if self.is_zero() or other.is_zero():
            return ULaurent.zero_elem(self.zero, self.one)
        cs = [self.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == self.zero:
                continue
            for j, b in enumerate(other.coeffs):
                if b == self.zero:
                    continue
                cs[i + j] = cs[i + j] + a * b
        return ULaurent(self.offset + other.offset, cs, self.zero, self.one)

    def scale(self, c) -> "ULaurent":
        return ULaurent(self.offset, [x * c for x in self.coeffs], self.zero, self.one)

    def shift(self, k: int) -> "ULaurent":
        return ULaurent(self.offset + k, self.coeffs, self.zero, self.one)

    def unit_normal(self) -> "ULaurent":
        """offset 0, monic leading coefficient."""
        if self.is_zero():
            return self
        inv = self.one / self.lead()
        return ULaurent(0, [c * inv for c in self.coeffs], self.zero, self.one)

    def polynomial_divmod(self, other: "ULaurent"):
        """Divide ignoring offsets (both viewed with offset 0): q, r."""
        if other.is_zero():
            raise ZeroDivisionError
        a = list(self.coeffs)
        b = list(other.coeffs)
        db = len(b) - 1
        q = [self.zero] * max(0, len(a) - db)
        lb = b[-1]
        while len(a) - 1 >= db and a:
            c = a[-1] / lb
            k = len(a) - 1 - db
            q[k] = c
            for i in range(db + 1):
                a[k + i] = a[k + i] - c * b[i]
            a.pop()
            while a and a[-1] == self.zero:
                a.pop()
        return (ULaurent(0, q, self.zero, self.one), ULaurent(0, a, self.zero, self.one))

    def divides(self, other: "ULaurent") -> bool:
        if other.is_zero():
            return True
        if self.is_zero():
            return False
        _, r = other.polynomial_divmod(self)
        return r.is_zero()

    def __eq__(self, other):
        return (isinstance(other, ULaurent) and other.offset == self.offset
                and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash((self.offset, self.coeffs))

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == self.zero:
                continue
            parts.append(f"({c})*t^{self.offset + i}")
        return " + ".join(parts)


def gcd_ulaurent(a: ULaurent, b: ULaurent) -> ULaurent:
    while not b.is_zero():
        _, r = a.polynomial_divmod(b)
        a, b = b, r
    return a.unit_normal()


# -- conversions ------------------------------------------------------------


def from_multilaurent(p: MultiLaurentPoly) -> ULaurent:
    zero, one = Fraction(0), Fraction(1)
    if p.arity != 1:
        raise ValueError("univariate expected")
    if p.is_zero():
        return ULaurent.zero_elem(zero, one)
    lo = min(e[0] for e in p.terms)
    hi = max(e[0] for e in p.terms)
    return ULaurent(lo, [p.terms.get((k,), zero) for k in range(lo, hi + 1)], zero, one)


def to_multilaurent(u: ULaurent) -> MultiLaurentPoly:
    return MultiLaurentPoly(1, {(u.offset + i,): c for i, c in enumerate(u.coeffs) if c})


# -- Smith normal form --------------------------------------------------------


@dataclass
class SmithResult:
    diagonal: List[ULaurent]          # nonzero invariant factors, d_i | d_{i+1}
    nrows: int
    ncols: int
    log: List[Tuple]                  # elementary moves, replayable
    final: List[List[ULaurent]]       # the diagonal-form matrix

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    @property
    def free_cols(self) -> int:
        return self.ncols - self.rank


class _Mat:
    def __init__(self, M: List[List[ULaurent]], log: List[Tuple]):
        self.m = M
        self.log = log

    def swap_rows(self, i, j):
        if i != j:
            self.m[i], self.m[j] = self.m[j], self.m[i]
            self.log.append(("swap_rows", i, j))

    def swap_cols(self, i, j):
        if i != j:
            for row in self.m:
                row[i], row[j] = row[j], row[i]
            self.log.append(("swap_cols", i, j))

    def add_row(self, i, k, q: ULaurent):
        """row_i += q * row_k."""
        if q.is_zero():
            return
        self.m[i] = [self.m[i][c] + q * self.m[k][c] for c in range(len(self.m[i]))]
        self.log.append(("add_row", i, k, q))

    def add_col(self, j, k, q: ULaurent):
        """col_j += col_k * q."""
        if q.is_zero():
            return
        for row in self.m:
            row[j] = row[j] + row[k] * q
        self.log.append(("add_col", j, k, q))

    def scale_row(self, i, u: ULaurent):
        """row_i *= u for a unit u = c*t^k."""
        assert u.is_unit()
        self.m[i] = [e * u for e in self.m[i]]
        self.log.append(("scale_row", i, u))


def smith_normal_form_generic(M: Sequence[Sequence[ULaurent]], zero, one) -> SmithResult:
    nrows = len(M)
    ncols = len(M[0]) if nrows else 0
    mat = _Mat([list(r) for r in M], [])
    m = mat.m

    def pivot_candidate(k):
        best = None
        for i in range(k, nrows):
            for j in range(k, ncols):
                if not m[i][j].is_zero():
                    key = (m[i][j].span(), i, j)
                    if best is None or key < best[0]:
                        best = (key, i, j)
        return (best[1], best[2]) if best else None

    k = 0
    guard = 0
    while k < min(nrows, ncols):
        pos = pivot_candidate(k)
        if pos is None:
            break
        mat.swap_rows(k, pos[0])
        mat.swap_cols(k, pos[1])
        while True:
            guard += 1
            if guard > 10000:
                raise RuntimeError("smith normal form failed to converge")
            pivot = m[k][k]
            # reduce column k below and above
            dirty = False
            for i in range(k, nrows):
                if i == k or m[i][k].is_zero():
                    continue
                q, r = m[i][k].polynomial_divmod(pivot)
                shift = m[i][k].offset - pivot.offset
                mat.add_row(i, k, q.scale(zero - one).shift(shift))
                dirty = True
            for j in range(k, ncols):
                if j == k or m[k][j].is_zero():
                    continue
                q, r = m[k][j].polynomial_divmod(pivot)
                shift = m[k][j].offset - pivot.offset
                mat.add_col(j, k, q.scale(zero - one).shift(shift))
                dirty = True
            # if any residue remains with smaller span it becomes the pivot
            pos2 = pivot_candidate(k)
            if pos2 and m[pos2[0]][pos2[1]].span() < m[k][k].span():
                mat.swap_rows(k, pos2[0])
                mat.swap_cols(k, pos2[1])
                continue
            if dirty:
                continue
            # divisibility sweep over the rest of the matrix
            offender = None
            for i in range(k + 1, nrows):
                for j in range(k + 1, ncols):
                    if not m[i][j].is_zero() and not m[k][k].divides(m[i][j]):
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            mat.add_row(k, offender, ULaurent.one_elem(zero, one))
        # normalize pivot to unit-normal form (monic, offset 0)
        piv = m[k][k]
        if not piv.is_zero():
            u = ULaurent.monomial(-piv.offset, one / piv.lead(), zero, one)
            if not (piv.lead() == one and piv.offset == 0):
                mat.scale_row(k, u)
        k += 1

    diag = [m[i][i] for i in range(min(nrows, ncols)) if not m[i][i].is_zero()]
    return SmithResult(diagonal=diag, nrows=nrows, ncols=ncols, log=mat.log, final=m)


def smith_normal_form(M: Sequence[Sequence[MultiLaurentPoly]]) -> SmithResult:
    """Smith form of a matrix of univariate Laurent polynomials over Q."""
    zero, one = Fraction(0), Fraction(1)
    conv = [[from_multilaurent(e) for e in row] for row in M]
    return smith_normal_form_generic(conv, zero, one)


def replay(M: Sequence[Sequence[ULaurent]], log: Sequence[Tuple], zero, one):
    """Apply a move log to a matrix; returns the transformed matrix."""
    m = [list(r) for r in M]
    for move in log:
        kind = move[0]
        if kind == "swap_rows":
            _, i, j = move
            m[i], m[j] = m[j], m[i]
        elif kind == "swap_cols":
            _, i, j = move
            for row in m:
                row[i], row[j] = row[j], row[i]
        elif kind == "add_row":
            _, i, k, q = move
            m[i] = [m[i][c] + q * m[k][c] for c in range(len(m[i]))]
        elif kind == "add_col":
            _, j, k, q = move
            for row in m:
                row[j] = row[j] + row[k] * q
        elif kind == "scale_row":
            _, i, u = move
            m[i] = [e * u for e in m[i]]
        else:
            raise ValueError(f"unknown move {kind!r}")
    return m


def invert_replay(M: Sequence[Sequence[ULaurent]], log: Sequence[Tuple], zero, one):
    """Undo a move log (applied to the diagonal form this recovers the input)."""
    m = [list(r) for r in M]
    for move in reversed(log):
        kind = move[0]
        if kind == "swap_rows":
            _, i, j = move
            m[i], m[j] = m[j], m[i]
        elif kind == "swap_cols":
            _, i, j = move
            for row in m:
                row[i], row[j] = row[j], row[i]
        elif kind == "add_row":
            _, i, k, q = move
            m[i] = [m[i][c] - q * m[k][c] for c in range(len(m[i]))]
        elif kind == "add_col":
            _, j, k, q = move
            for row in m:
                row[j] = row[j] - row[k] * q
        elif kind == "scale_row":
            _, i, u = move
            inv = ULaurent.monomial(-u.offset, one / u.coeffs[0], zero, one)
            m[i] = [e * inv for e in m[i]]
        else:
            raise ValueError(f"unknown move {kind!r}")
    return m
