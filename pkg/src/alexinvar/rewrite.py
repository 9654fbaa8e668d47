"""Bounded word normalization modulo the relators of a presentation.

Rules come from every split u*v of every cyclic rotation of each relator and
its inverse: u rewrites to v^-1 whenever that strictly decreases the
(length, shortlex) key of the whole word.  The system is sound (rules are
consequences of the relators) but deliberately not confluence-complete;
callers treat distinct normal forms as "unknown", never as "distinct".
"""

from __future__ import annotations

from typing import Dict, Iterable, Optional, Tuple

from .words import Word

Letters = Tuple[Tuple[str, int], ...]


class RewriteSystem:
    def __init__(self, relators: Iterable[Word], max_steps: int = 400):
        self.max_steps = max_steps
        self.rules: Dict[Letters, Letters] = {}
        self._cache: Dict[Letters, Word] = {}
        self._lengths: Tuple[int, ...] = ()
        for r in relators:
            self.add_relator(r)

    def add_relator(self, r: Word) -> None:
        r = r.cyclic_reduce()
        if r.is_identity:
            return
        seen = set()
        for base in (r, r.inverse()):
            for rot in base.rotations():
                if rot.letters in seen:
                    continue
                seen.add(rot.letters)
                L = len(rot)
                for k in range((L + 1) // 2, L + 1):
                    u = rot.letters[:k]
                    v_inv = Word(rot.letters[k:], _reduced=True).inverse().letters
                    if len(v_inv) < len(u) or (len(v_inv) == len(u) and v_inv < u):
                        old = self.rules.get(u)
                        if old is None or Word(v_inv, _reduced=True) < Word(old, _reduced=True):
                            self.rules[u] = v_inv
        self._lengths = tuple(sorted({len(u) for u in self.rules}, reverse=True))
        self._cache.clear()

    def _try_step(self, w: Word) -> Optional[Word]:
        lets = w.letters
        n = len(lets)
        key = w.sort_key()
        for i in range(n):
            for L in self._lengths:
                if i + L > n:
                    continue
                rhs = self.rules.get(lets[i:i + L])
                if rhs is None:
                    continue
                cand = Word(lets[:i] + rhs + lets[i + L:])
                if cand.sort_key() < key:
                    return cand
        return None

    def normalize(self, w: Word) -> Word:
        cached = self._cache.get(w.letters)
        if cached is not None:
            return cached
        cur = w
        for _ in range(self.max_steps):
            nxt = self._try_step(cur)
            if nxt is None:
                break
            cur = nxt
        self._cache[w.letters] = cur
        return cur

    def proves_identity(self, w: Word, effort: int = 2000) -> bool:
        """Bounded search for a derivation w = 1 (sound, incomplete).

        Breadth-first over all rule applications (including non-decreasing
        ones) up to a small length slack; positive answers only.
        """
        start = self.normalize(w)
        if start.is_identity:
            return True
        from collections import deque
        pairs = list(self.rules.items()) + [(v, u) for u, v in self.rules.items() if v]
        limit = len(start) + 4
        seen = {start.letters}
        queue = deque([start])
        budget = effort
        while queue and budget > 0:
            cur = queue.popleft()
            lets = cur.letters
            n = len(lets)
            for u, rhs in pairs:
                L = len(u)
                for i in range(n - L + 1):
                    if lets[i:i + L] != u:
                        continue
                    cand = Word(lets[:i] + rhs + lets[i + L:])
                    if cand.is_identity:
                        return True
                    if len(cand) <= limit and cand.letters not in seen:
                        seen.add(cand.letters)
                        queue.append(cand)
                        budget -= 1
                        if budget <= 0:
                            return False
        return False
