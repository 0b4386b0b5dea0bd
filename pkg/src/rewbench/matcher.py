"""Multi-pattern factor matching.

A ``FactorMatcher`` indexes a fixed list of patterns (rule left-hand
sides) and answers factor queries against arbitrary words.  It is an
Aho-Corasick automaton with the failure function compiled away: after
construction every state has a complete transition table over the
alphabet, so scanning a word costs one dict lookup per letter.

The matcher must report exactly the occurrences a naive scan would
find; the test suite checks that equivalence against an independent
scan.
"""

from __future__ import annotations

from collections import deque
from typing import Iterator, Optional


class FactorMatcher:
    """Finds occurrences of any of a fixed set of patterns in a word.

    Patterns are nonempty strings over ``alphabet``.  Duplicate patterns
    are allowed; every (position, pattern_index) occurrence is reported.
    """

    def __init__(self, alphabet: str, patterns: list[str]):
        for p in patterns:
            if not p:
                raise ValueError("empty pattern")
            for ch in p:
                if ch not in alphabet:
                    raise ValueError(f"pattern letter {ch!r} not in alphabet")
        self.alphabet = alphabet
        self.patterns = list(patterns)
        self.max_len = max((len(p) for p in patterns), default=0)
        # Trie with complete goto tables.  goto[state][ch] is always defined.
        goto: list[dict[str, int]] = [{}]
        out: list[list[int]] = [[]]
        for idx, pat in enumerate(patterns):
            state = 0
            for ch in pat:
                nxt = goto[state].get(ch)
                if nxt is None:
                    goto.append({})
                    out.append([])
                    nxt = len(goto) - 1
                    goto[state][ch] = nxt
                state = nxt
            out[state].append(idx)
        # Breadth-first failure propagation, folding failures into goto so
        # the scan loop never consults a separate failure table.
        fail = [0] * len(goto)
        queue: deque[int] = deque()
        for ch in alphabet:
            nxt = goto[0].get(ch)
            if nxt is None:
                goto[0][ch] = 0
            else:
                fail[nxt] = 0
                queue.append(nxt)
        while queue:
            state = queue.popleft()
            out[state].extend(out[fail[state]])
            for ch in alphabet:
                nxt = goto[state].get(ch)
                if nxt is None:
                    goto[state][ch] = goto[fail[state]][ch]
                else:
                    fail[nxt] = goto[fail[state]][ch]
                    queue.append(nxt)
        self._goto = goto
        # Occurrences ending at a state, sorted by pattern index.
        self._out: list[tuple[int, ...]] = [tuple(sorted(o)) for o in out]

    def occurrences(self, word: str, start: int = 0) -> Iterator[tuple[int, int]]:
        """Yields (position, pattern_index) for every occurrence with
        position >= start, ordered by end position then pattern index."""
        goto = self._goto
        out = self._out
        state = 0
        for end, ch in enumerate(word[start:], start):
            state = goto[state][ch]
            hits = out[state]
            if hits:
                for idx in hits:
                    yield end - len(self.patterns[idx]) + 1, idx

    def first_match(self, word: str, start: int = 0) -> Optional[tuple[int, int]]:
        """Leftmost occurrence with position >= start.

        Ties at the same position are broken by longest pattern, then by
        lowest pattern index.  Returns (position, pattern_index) or None.
        """
        patterns = self.patterns
        best: Optional[tuple[int, int, int]] = None
        for pos, idx in self.occurrences(word, start):
            cand = (pos, -len(patterns[idx]), idx)
            if best is None or cand < best:
                best = cand
            # Occurrences arrive in end-position order.  Once the scan has
            # passed best_pos + max_len - 1 no later match can start at or
            # before best_pos, so the current best is final.
            elif pos - self.max_len + 1 > best[0]:
                break
        if best is None:
            return None
        return best[0], best[2]

    def contains(self, word: str) -> bool:
        """True when any pattern occurs in word."""
        for _ in self.occurrences(word):
            return True
        return False


def naive_occurrences(patterns: list[str], word: str) -> list[tuple[int, int]]:
    """Reference scan used to validate FactorMatcher: every (position,
    pattern_index) occurrence by direct string comparison."""
    hits = []
    for idx, pat in enumerate(patterns):
        for pos in range(len(word) - len(pat) + 1):
            if word[pos : pos + len(pat)] == pat:
                hits.append((pos, idx))
    return hits
