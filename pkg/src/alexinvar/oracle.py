"""Zero/unit certification for formal group-ring coefficients.

The quotient groups are never computed; verdicts come from a hierarchy of
sound rules: syntactic cancellation, single-term invertibility, augmentation,
abelianization classes, exact level-0 evaluation, metabelian normal forms
(one-variable case), and declared assumptions.  "Unit" means invertible in
the skew fraction field, which for nonzero elements is automatic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .fox import fox_derivative
from .groupring import GroupContext, GroupRingCoefficient
from .presentation import Presentation
from .smith import ULaurent, from_multilaurent
from .words import Word

RULE_ORDER = {"syntactic-zero": 0, "monomial": 1, "augmentation": 2,
              "abelian-character": 3, "partition": 4,
              "metabelian-normal-form": 5, "declared-assumption": 6,
              "generic-independence": 9}

_MODE_LEVELS = {"abelian": 1, "evaluation": 2, "metabelian": 3, "auto": 4}


@dataclass(frozen=True)
class OracleVerdict:
    kind: str                 # "zero" | "unit" | "unknown"
    rule: Optional[str] = None
    detail: str = ""

    @property
    def is_zero(self) -> bool:
        return self.kind == "zero"

    @property
    def is_unit(self) -> bool:
        return self.kind == "unit"

    @property
    def is_unknown(self) -> bool:
        return self.kind == "unknown"


UNKNOWN = OracleVerdict("unknown")


def _canonical_key(w: Word) -> Tuple:
    """Conjugation/inversion-invariant key for =1 / !=1 facts."""
    w = w.cyclic_reduce()
    best = None
    for base in (w, w.inverse()):
        for rot in base.rotations() if len(base) else [base]:
            k = rot.sort_key()
            if best is None or k < best:
                best = k
    return best if best is not None else w.sort_key()


class LedgerError(ValueError):
    """Contradictory or malformed assumption facts."""


@dataclass(frozen=True)
class Fact:
    word: Word
    kind: str        # "eq" (=1 at level n) | "neq" | "in" (G_r^(k)) | "notin"
    n: int
    assumed: bool = False    # introduced by a case split

    def text(self) -> str:
        w = str(self.word)
        if self.kind == "eq":
            return f"{w} = 1 @ level {self.n}"
        if self.kind == "neq":
            return f"{w} != 1 @ level {self.n}"
        if self.kind == "in":
            return f"{w} in G({self.n})"
        return f"{w} notin G({self.n})"


class AssumptionLedger:
    """Declared facts about quotient triviality, with monotone propagation."""

    def __init__(self, facts: Tuple[Fact, ...] = ()):
        self.facts: Tuple[Fact, ...] = tuple(facts)
        self._check()

    def _bounds(self):
        """Per canonical word: (eq_valid_up_to, neq_valid_from)."""
        out: Dict[Tuple, List] = {}
        for f in self.facts:
            key = _canonical_key(f.word)
            lo_hi = out.setdefault(key, [None, None])
            if f.kind == "eq":
                hi = f.n
            elif f.kind == "in":
                hi = f.n - 1
            else:
                hi = None
            if hi is not None:
                lo_hi[0] = hi if lo_hi[0] is None else max(lo_hi[0], hi)
            if f.kind == "neq":
                lo = f.n
            elif f.kind == "notin":
                lo = f.n - 1
            else:
                lo = None
            if lo is not None:
                lo_hi[1] = lo if lo_hi[1] is None else min(lo_hi[1], lo)
        return out

    def _check(self):
        for f in self.facts:
            if f.kind not in ("eq", "neq", "in", "notin"):
                raise LedgerError(f"unknown fact kind {f.kind!r}")
            if f.n < 0 or (f.kind in ("in", "notin") and f.n < 1):
                raise LedgerError(f"bad level/index in fact {f.text()}")
            if f.word.is_identity and f.kind in ("neq", "notin"):
                raise LedgerError("the identity word cannot be declared nontrivial")
        for key, (hi, lo) in self._bounds().items():
            if hi is not None and lo is not None and lo <= hi:
                raise LedgerError("contradictory facts: a word is declared both "
                                  f"trivial and nontrivial at level {lo}")

    def with_fact(self, fact: Fact) -> "AssumptionLedger":
        return AssumptionLedger(self.facts + (fact,))

    def status(self, w: Word, level: int) -> Optional[str]:
        got = self._bounds().get(_canonical_key(w))
        if got is None:
            return None
        hi, lo = got
        if hi is not None and level <= hi:
            return "one"
        if lo is not None and level >= lo:
            return "nonone"
        return None

    def equality_words(self, level: int) -> List[Word]:
        """Words provably trivial at this level (usable as extra relators)."""
        out = []
        for f in self.facts:
            if f.kind == "eq" and level <= f.n:
                out.append(f.word)
            elif f.kind == "in" and level <= f.n - 1:
                out.append(f.word)
        return out

    def texts(self) -> List[str]:
        return [f.text() for f in self.facts]

    def assumed_texts(self) -> List[str]:
        return [f.text() for f in self.facts if f.assumed]

    @property
    def has_assumed(self) -> bool:
        return any(f.assumed for f in self.facts)


def parse_fact(text: str, p: Presentation) -> Fact:
    """CLI fact syntax: `w=1@n`, `w!=1@n`, `w in G(k)`, `w notin G(k)`."""
    t = text.strip()
    for marker, kind in ((" notin G(", "notin"), (" in G(", "in")):
        if marker in t:
            wtxt, _, rest = t.partition(marker)
            if not rest.endswith(")"):
                raise LedgerError(f"malformed fact {text!r}")
            k = int(rest[:-1])
            return Fact(p.word(wtxt), kind, k)
    for marker, kind in (("!=1@", "neq"), ("=1@", "eq")):
        if marker in t:
            wtxt, _, rest = t.partition(marker)
            return Fact(p.word(wtxt), kind, int(rest))
    raise LedgerError(f"malformed fact {text!r} (expected w=1@n, w!=1@n, "
                      "w in G(k), or w notin G(k))")


# -- metabelian normal forms (one-variable case) ---------------------------------


def integer_smith_divisors(rows: List[List[int]], g: int) -> List[int]:
    """Nonzero invariant factors of an integer matrix (cokernel torsion data)."""
    m = [row[:] for row in rows]
    divisors: List[int] = []
    while m and g > 0:
        pos = None
        for i, row in enumerate(m):
            for j in range(g):
                if row[j] and (pos is None or abs(row[j]) < abs(m[pos[0]][pos[1]])):
                    pos = (i, j)
        if pos is None:
            break
        i0, j0 = pos
        m[0], m[i0] = m[i0], m[0]
        for row in m:
            row[0], row[j0] = row[j0], row[0]
        while True:
            piv = m[0][0]
            changed = False
            for i in range(1, len(m)):
                if m[i][0]:
                    q = m[i][0] // piv
                    m[i] = [a - q * b for a, b in zip(m[i], m[0])]
                    if m[i][0]:
                        m[0], m[i] = m[i], m[0]
                        changed = True
            for j in range(1, g):
                if m[0][j]:
                    q = m[0][j] // piv
                    for row in m:
                        row[j] -= q * row[0]
                    if m[0][j]:
                        for row in m:
                            row[0], row[j] = row[j], row[0]
                        changed = True
            if not changed:
                break
        divisors.append(abs(m[0][0]))
        m = [row[1:] for row in m[1:]]
        m = [row for row in m if any(row)]
        g -= 1
    return divisors


def _integer_smith_all_ones(rows: List[List[int]], g: int) -> bool:
    """Is the cokernel of the integer matrix free of rank exactly 1 (H_1 = Z)?"""
    if not rows:
        return g == 1
    divisors = integer_smith_divisors(rows, g)
    return len(divisors) == g - 1 and all(d == 1 for d in divisors)


class MetabelianData:
    """Exact normal forms in the rationalized commutator quotient (s=1 only).

    The module is presented over Q[t, t^-1] by the psi-specialized Fox
    matrix; a word with psi = 0 maps to its Fox-derivative vector, and
    equality in the second rational-derived quotient is reduction modulo the
    row span (Hermite echelon over the Laurent PID).
    """

    def __init__(self, p: Presentation):
        from .classical import infinite_cyclic_matrix
        self.p = p
        self.g = len(p.generators)
        self.zero = Fraction(0)
        self.one = Fraction(1)
        self.available = self._h1_is_infinite_cyclic()
        self.pivots: Dict[int, List[ULaurent]] = {}
        self._residues: Dict[Tuple, Tuple] = {}
        if not self.available:
            return
        rows = [[from_multilaurent(e) for e in row] for row in infinite_cyclic_matrix(p)]
        for row in rows:
            self._insert(row)
        # stabilize: re-insert pivot rows until nothing changes
        for _ in range(3):
            old = {c: tuple(r) for c, r in self.pivots.items()}
            rows = list(self.pivots.values())
            self.pivots = {}
            for row in rows:
                self._insert([e for e in row])
            if {c: tuple(r) for c, r in self.pivots.items()} == old:
                break

    def _h1_is_infinite_cyclic(self) -> bool:
        if self.p.component_arity() != 1:
            return False
        rows = []
        idx = {g: i for i, g in enumerate(self.p.generators)}
        for r in self.p.relators:
            vec = [0] * self.g
            for sym, e in r.letters:
                vec[idx[sym]] += e
            rows.append(vec)
        if not rows:
            return self.g == 1
        return _integer_smith_all_ones(rows, self.g)

    # -- echelon over the Laurent PID --------------------------------------

    def _reduce_entry(self, vec, pivot_row, col):
        """vec -= shift(q) * pivot_row so span(vec[col]) < span(pivot[col])."""
        a = vec[col]
        p = pivot_row[col]
        q, r = a.polynomial_divmod(p)
        if q.is_zero():
            return False
        shift = a.offset - p.offset
        qs = q.shift(shift)
        for j in range(self.g):
            vec[j] = vec[j] - qs * pivot_row[j]
        return True

    def _insert(self, vec: List[ULaurent]):
        while True:
            col = next((j for j in range(self.g) if not vec[j].is_zero()), None)
            if col is None:
                return
            piv = self.pivots.get(col)
            if piv is None:
                lead = vec[col]
                u = ULaurent.monomial(-lead.offset, self.one / lead.lead(), self.zero, self.one)
                self.pivots[col] = [e * u for e in vec]
                return
            while not vec[col].is_zero():
                if vec[col].span() >= piv[col].span():
                    self._reduce_entry(vec, piv, col)
                else:
                    lead = vec[col]
                    u = ULaurent.monomial(-lead.offset, self.one / lead.lead(),
                                          self.zero, self.one)
                    self.pivots[col] = [e * u for e in vec]
                    vec = piv
                    piv = self.pivots[col]

    def _reduce_full(self, vec: List[ULaurent]) -> Tuple:
        v = list(vec)
        for col in sorted(self.pivots):
            if v[col].is_zero():
                continue
            piv = self.pivots[col]
            while not v[col].is_zero() and v[col].span() >= piv[col].span():
                if not self._reduce_entry(v, piv, col):
                    break
        return tuple((e.offset, e.coeffs) for e in v)

    # -- public interface ------------------------------------------------------

    def vector(self, w: Word) -> List[ULaurent]:
        p = self.p
        out = []
        for gen in p.generators:
            d = fox_derivative(w, gen)
            terms: Dict[int, Fraction] = {}
            for u, c in d.terms.items():
                k = p.psi(u)
                terms[k] = terms.get(k, Fraction(0)) + c
            if terms:
                lo, hi = min(terms), max(terms)
                out.append(ULaurent(lo, [terms.get(k, Fraction(0)) for k in range(lo, hi + 1)],
                                    self.zero, self.one))
            else:
                out.append(ULaurent.zero_elem(self.zero, self.one))
        return out

    def residue_key(self, w: Word) -> Tuple:
        key = w.letters
        got = self._residues.get(key)
        if got is None:
            got = self._reduce_full(self.vector(w))
            self._residues[key] = got
        return got

    def zero_key(self) -> Tuple:
        z = ULaurent.zero_elem(self.zero, self.one)
        return tuple((z.offset, z.coeffs) for _ in range(self.g))

    def trivial_in_second_quotient(self, w: Word) -> bool:
        """w in G_r^(2) (i.e. w = 1 in the level-1 quotient), for psi(w)=0."""
        return self.residue_key(w) == self.zero_key()


def metabelian_data(p: Presentation) -> MetabelianData:
    md = getattr(p, "_metabelian_cache", None)
    if md is None:
        md = MetabelianData(p)
        p._metabelian_cache = md
    return md


# -- the certification hierarchy --------------------------------------------------


def certify(c: GroupRingCoefficient, level: int,
            ledger: Optional[AssumptionLedger] = None,
            mode: str = "auto") -> OracleVerdict:
    """Apply the rule hierarchy in order until one certifies."""
    strength = _MODE_LEVELS.get(mode)
    if strength is None:
        raise ValueError(f"unknown oracle mode {mode!r}")
    p = c.ctx.presentation

    if c.is_zero():
        return OracleVerdict("zero", "syntactic-zero")
    st = c.single_term()
    if st is not None:
        return OracleVerdict("unit", "monomial", f"single term {st[0]}")

    aug = c.augmentation()
    if aug != 0:
        return OracleVerdict("unit", "augmentation", f"coefficient sum {aug}")
    sums = c.ab_class_sums()
    nonzero_classes = [k for k, v in sums.items() if v != 0]
    if nonzero_classes:
        return OracleVerdict("unit", "abelian-character",
                             f"class {nonzero_classes[0]} has nonzero sum")

    if level == 0 and strength >= _MODE_LEVELS["evaluation"]:
        # exact at level 0: the coefficient ring is the abelianization ring
        return OracleVerdict("zero", "partition",
                             "all abelianization classes cancel at level 0")

    if level >= 1 and strength >= _MODE_LEVELS["metabelian"] and p.component_arity() == 1:
        md = metabelian_data(p)
        if md.available:
            class_sums: Dict[Tuple, Fraction] = {}
            for w, coef in c.terms.items():
                k = md.residue_key(w)
                class_sums[k] = class_sums.get(k, Fraction(0)) + coef
            if any(v != 0 for v in class_sums.values()):
                return OracleVerdict("unit", "metabelian-normal-form",
                                     "distinct metabelian normal forms do not cancel")
            if level == 1:
                return OracleVerdict("zero", "metabelian-normal-form",
                                     "image vanishes in the level-1 quotient ring")

    if ledger is not None and strength >= _MODE_LEVELS["auto"]:
        words = c.words()
        md = None
        if level >= 1 and p.component_arity() == 1:
            md0 = metabelian_data(p)
            md = md0 if md0.available else None
        for w0 in words:
            distinct = True
            for w in words:
                if w is w0:
                    continue
                u = c.ctx.normal(w0 * w.inverse())
                if u.is_identity:
                    distinct = False
                    break
                if p.ab_vector(u) != tuple([0] * p.component_arity()):
                    continue
                if md is not None and md.residue_key(u) != md.zero_key():
                    continue
                if ledger.status(u, level) == "nonone":
                    continue
                distinct = False
                break
            if distinct:
                return OracleVerdict("unit", "declared-assumption",
                                     f"term {w0} is provably distinct from all others")
    return UNKNOWN
