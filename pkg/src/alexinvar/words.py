"""Freely reduced words in a free group.

A word is stored as a tuple of (generator, sign) letters with sign +1 or -1,
always freely reduced.  Words are immutable and hashable so they can key
group-ring coefficient maps.
"""

from __future__ import annotations

from typing import Iterable, Tuple

Letter = Tuple[str, int]


def free_reduce(letters: Iterable[Letter]) -> Tuple[Letter, ...]:
    """Freely reduce a letter sequence (cancel adjacent x x^-1 pairs)."""
    stack: list[Letter] = []
    for sym, sign in letters:
        if sign not in (1, -1):
            raise ValueError(f"letter sign must be +-1, got {sign}")
        if stack and stack[-1][0] == sym and stack[-1][1] == -sign:
            stack.pop()
        else:
            stack.append((sym, sign))
    return tuple(stack)


class Word:
    """A freely reduced word; the empty word is the identity."""

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[Letter] = (), *, _reduced: bool = False):
        lets = tuple(letters) if _reduced else free_reduce(letters)
        object.__setattr__(self, "letters", lets)
        object.__setattr__(self, "_hash", hash(lets))

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    # -- group operations ---------------------------------------------------

    def __mul__(self, other: "Word") -> "Word":
        if not self.letters:
            return other
        if not other.letters:
            return self
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((s, -e) for s, e in reversed(self.letters)), _reduced=True)

    def __pow__(self, n: int) -> "Word":
        if n == 0:
            return IDENTITY
        base = self if n > 0 else self.inverse()
        out = IDENTITY
        for _ in range(abs(n)):
            out = out * base
        return out

    def conjugate_by(self, g: "Word") -> "Word":
        """g * self * g^-1."""
        return g * self * g.inverse()

    def cyclic_reduce(self) -> "Word":
        lets = list(self.letters)
        while len(lets) >= 2 and lets[0][0] == lets[-1][0] and lets[0][1] == -lets[-1][1]:
            lets = lets[1:-1]
        return Word(lets, _reduced=True)

    def rotations(self):
        lets = self.letters
        for i in range(len(lets)):
            yield Word(lets[i:] + lets[:i], _reduced=True)

    # -- queries ------------------------------------------------------------

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def exponent_sum(self, sym: str) -> int:
        return sum(e for s, e in self.letters if s == sym)

    def symbols(self):
        return {s for s, _ in self.letters}

    # -- ordering (shortlex; generator names ordered as strings, x before x^-1)

    def sort_key(self):
        return (len(self.letters), tuple((s, 0 if e > 0 else 1) for s, e in self.letters))

    def __lt__(self, other: "Word") -> bool:
        return self.sort_key() < other.sort_key()

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return self._hash

    # -- text ---------------------------------------------------------------

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        parts = []
        i = 0
        lets = self.letters
        while i < len(lets):
            sym, sign = lets[i]
            j = i
            while j < len(lets) and lets[j] == (sym, sign):
                j += 1
            n = (j - i) * sign
            parts.append(sym if n == 1 else f"{sym}^{n}")
            i = j
        return "*".join(parts)

    def __repr__(self) -> str:
        return f"Word({self})"


IDENTITY = Word()


def parse_word(text: str, generators=None) -> Word:
    """Parse a whitespace-separated word: letters `g` or `g^k` (k a nonzero int).

    With `generators` given, undeclared symbols raise ValueError.
    """
    letters: list[Letter] = []
    for tok in text.split():
        if "^" in tok:
            sym, _, exp = tok.partition("^")
            try:
                k = int(exp)
            except ValueError:
                raise ValueError(f"bad exponent in word token {tok!r}")
            if k == 0:
                raise ValueError(f"zero exponent in word token {tok!r}")
        else:
            sym, k = tok, 1
        if not sym.isidentifier():
            raise ValueError(f"bad generator symbol {sym!r}")
        if generators is not None and sym not in generators:
            raise ValueError(f"undeclared generator {sym!r}")
        sign = 1 if k > 0 else -1
        letters.extend((sym, sign) for _ in range(abs(k)))
    return Word(letters)
