"""Group presentations with linking data, and the curve-file parser.

File format (UTF-8, one item per line, `#` starts a comment line):

    gens: a b c                      required, first content line
    rel: a b a c = b a c a = c a a b chains u=v=w give relators uv^-1, vw^-1
    lk: a=1 b=0 c=0                  linking map (required for delta pipelines)
    ab: a=(1,0,0) b=(-1,1,0)         component abelianization rows (optional)
    degrees: 1 1 1                   component degrees (optional curve data)
    genus: 0                         genus of the normalized curve
    sing: triple mu=4 branches=3 delta=t^4 - t^3 - t + 1

Words are whitespace-separated letters `g` or `g^k`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .words import IDENTITY, Word, parse_word
from .bounds import CurveData, LocalSingularity
from .laurent import parse_poly


class PresentationError(ValueError):
    """Malformed or inconsistent presentation input."""


class Presentation:
    """Ordered generators, freely reduced relators, optional linking data."""

    def __init__(self, generators: Sequence[str], relators: Sequence[Word],
                 linking: Optional[dict] = None,
                 ab_map: Optional[dict] = None,
                 curve: Optional[CurveData] = None,
                 name: str = ""):
        self.generators = tuple(generators)
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError("duplicate generator")
        self.relators = tuple(r.cyclic_reduce() if False else r for r in relators)
        self.linking = dict(linking) if linking is not None else None
        self.ab_map = {g: tuple(v) for g, v in ab_map.items()} if ab_map else None
        self.curve = curve
        self.name = name
        self._validate()

    def _validate(self):
        gens = set(self.generators)
        for r in self.relators:
            bad = r.symbols() - gens
            if bad:
                raise PresentationError(f"undeclared generator {sorted(bad)[0]!r} in relator {r}")
        if self.linking is not None:
            missing = gens - set(self.linking)
            if missing:
                raise PresentationError(f"linking map missing generator {sorted(missing)[0]!r}")
            for r in self.relators:
                if self.psi(r) != 0:
                    raise PresentationError(
                        f"linking map does not vanish on relator {r} (psi={self.psi(r)})")
        if self.ab_map is not None:
            arity = {len(v) for v in self.ab_map.values()}
            if len(arity) != 1:
                raise PresentationError("ab: rows have inconsistent arity")
            if set(self.ab_map) != gens:
                raise PresentationError("ab: map must cover every generator")
            s = arity.pop()
            for r in self.relators:
                vec = self.ab_vector(r)
                if any(vec):
                    raise PresentationError(f"ab: map does not vanish on relator {r}")
            if self.linking is not None:
                for g in self.generators:
                    if sum(self.ab_map[g]) != self.linking[g]:
                        raise PresentationError(
                            f"lk({g}) != coordinate sum of ab({g})")
            if self.curve is not None and self.curve.component_degrees and \
                    len(self.curve.component_degrees) != s:
                raise PresentationError("degrees: arity disagrees with ab: arity")

    # -- linking ------------------------------------------------------------

    def psi(self, w: Word) -> int:
        if self.linking is None:
            raise PresentationError("presentation has no linking data")
        return sum(self.linking[s] * e for s, e in w.letters)

    def psi_is_primitive(self) -> bool:
        if self.linking is None:
            return False
        vals = [abs(v) for v in self.linking.values() if v != 0]
        return bool(vals) and math.gcd(*vals) == 1 if len(vals) > 1 else (vals == [1] if vals else False)

    def require_primitive(self):
        if not self.psi_is_primitive():
            raise PresentationError("linking map is not primitive (gcd of values != 1)")

    # -- abelianization structure -------------------------------------------

    def component_arity(self) -> int:
        """Arity s of the declared (or default meridian) component structure."""
        if self.ab_map is not None:
            return len(next(iter(self.ab_map.values())))
        return len(self.generators)

    def ab_vector(self, w: Word):
        """Image of w under the component abelianization map, as a tuple."""
        if self.ab_map is not None:
            s = self.component_arity()
            out = [0] * s
            for sym, e in w.letters:
                row = self.ab_map[sym]
                for i in range(s):
                    out[i] += e * row[i]
            return tuple(out)
        out = [0] * len(self.generators)
        idx = {g: i for i, g in enumerate(self.generators)}
        for sym, e in w.letters:
            out[idx[sym]] += e
        return tuple(out)

    def word(self, text: str) -> Word:
        return parse_word(text, self.generators)

    def __repr__(self):
        rel = ", ".join(str(r) for r in self.relators)
        return f"<Presentation {self.name or ''} <{' '.join(self.generators)} | {rel}>>"


@dataclass(frozen=True)
class SplittingChoice:
    """A word with psi(section_word) = 1, fixing the skew variable t."""

    section_word: Word

    @staticmethod
    def for_presentation(p: Presentation, text: Optional[str] = None) -> "SplittingChoice":
        if text is not None:
            w = p.word(text)
        else:
            w = None
            for g in p.generators:
                if p.linking[g] == 1:
                    w = Word([(g, 1)])
                    break
            if w is None:
                raise PresentationError("no generator with psi=1; pass an explicit splitting word")
        if p.psi(w) != 1:
            raise PresentationError(f"splitting word {w} has psi={p.psi(w)}, need 1")
        return SplittingChoice(w)


def _parse_int(tok: str, line_no: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise PresentationError(f"line {line_no}: bad {what} {tok!r}")


def parse_presentation(text: str, name: str = "") -> Presentation:
    """Parse the curve/presentation file format; raises PresentationError."""
    generators = None
    relators: list[Word] = []
    linking = None
    ab_map = None
    degrees = None
    genus = None
    sings: list[LocalSingularity] = []
    total_degree = None

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise PresentationError(f"line {line_no}: expected 'key: ...', got {line!r}")
        key = key.strip()
        rest = rest.strip()
        if generators is None and key != "gens":
            raise PresentationError(f"line {line_no}: first line must be 'gens:'")
        if key == "gens":
            if generators is not None:
                raise PresentationError(f"line {line_no}: duplicate gens: line")
            generators = rest.split()
            if not generators:
                raise PresentationError(f"line {line_no}: empty generator list")
            for g in generators:
                if not g.isidentifier():
                    raise PresentationError(f"line {line_no}: bad generator symbol {g!r}")
        elif key == "rel":
            sides = [s.strip() for s in rest.split("=")]
            if not all(sides):
                raise PresentationError(f"line {line_no}: empty word in relation")
            try:
                ws = [parse_word(s, generators) for s in sides]
            except ValueError as e:
                raise PresentationError(f"line {line_no}: {e}")
            if len(ws) == 1:
                relators.append(ws[0])
            else:
                for u, v in zip(ws, ws[1:]):
                    relators.append(u * v.inverse())
        elif key == "lk":
            linking = {}
            for tok in rest.split():
                g, sep2, val = tok.partition("=")
                if not sep2 or g not in generators:
                    raise PresentationError(f"line {line_no}: bad lk token {tok!r}")
                linking[g] = _parse_int(val, line_no, "linking number")
        elif key == "ab":
            ab_map = ab_map or {}
            for tok in rest.split():
                g, sep2, vec = tok.partition("=")
                if not sep2 or g not in generators or not (vec.startswith("(") and vec.endswith(")")):
                    raise PresentationError(f"line {line_no}: bad ab token {tok!r}")
                ab_map[g] = tuple(_parse_int(x, line_no, "ab coordinate")
                                  for x in vec[1:-1].split(","))
        elif key == "degrees":
            degrees = tuple(_parse_int(x, line_no, "degree") for x in rest.split())
        elif key == "degree":
            total_degree = _parse_int(rest, line_no, "degree")
        elif key == "genus":
            genus = _parse_int(rest, line_no, "genus")
        elif key == "sing":
            toks = rest.split()
            if not toks:
                raise PresentationError(f"line {line_no}: empty sing: line")
            label = toks[0]
            mu = branches = None
            delta = None
            joined = " ".join(toks[1:])
            for field in ("mu", "branches"):
                marker = field + "="
                if marker not in joined:
                    raise PresentationError(f"line {line_no}: sing: missing {field}=")
            mu_part = joined.split("mu=")[1].split()[0]
            br_part = joined.split("branches=")[1].split()[0]
            mu = _parse_int(mu_part, line_no, "mu")
            branches = _parse_int(br_part, line_no, "branches")
            if "delta=" in joined:
                delta_text = joined.split("delta=", 1)[1]
                try:
                    delta = parse_poly(delta_text, arity=1)
                except ValueError as e:
                    raise PresentationError(f"line {line_no}: bad sing delta: {e}")
            sings.append(LocalSingularity(label=label, mu=mu, branches=branches,
                                          local_alexander=delta))
        else:
            raise PresentationError(f"line {line_no}: unknown key {key!r}")

    if generators is None:
        raise PresentationError("missing gens: line")

    curve = None
    if degrees is not None or sings or genus is not None or total_degree is not None:
        if degrees is not None:
            d = sum(degrees)
            if total_degree is not None and total_degree != d:
                raise PresentationError("degree: disagrees with sum of degrees:")
        else:
            d = total_degree
        curve = CurveData(total_degree=d,
                          component_degrees=degrees,
                          genus=genus if genus is not None else 0,
                          singularities=tuple(sings))
    return Presentation(generators, relators, linking, ab_map, curve, name=name)
