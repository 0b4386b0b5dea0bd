"""Reference implementations the tests compare against.

Everything here recomputes results from definitions with naive
scanning and plain breadth-first search, sharing no algorithmic code
with the package: no factor automaton, no rescan windows, no
bidirectional search, no move pruning.
"""

from __future__ import annotations

import random
from collections import deque
from typing import Optional, Union

from rewbench.core import ZERO, Element, Presentation, RewritingSystem


def relation_edges(p: Presentation) -> list[tuple[str, Element]]:
    """Both directions of every relation; zero relations one-way."""
    edges: list[tuple[str, Element]] = []
    for x, y in p.relations:
        if x == y:
            continue
        if x is ZERO or y is ZERO:
            edges.append((y if x is ZERO else x, ZERO))
        else:
            edges.append((x, y))
            edges.append((y, x))
    return edges


def one_step(word: str, edges: list[tuple[str, Element]],
             max_len: int) -> list[Element]:
    out: list[Element] = []
    for pat, rep in edges:
        start = 0
        while True:
            pos = word.find(pat, start)
            if pos == -1:
                break
            if rep is ZERO:
                out.append(ZERO)
            else:
                nxt = word[:pos] + rep + word[pos + len(pat):]
                if len(nxt) <= max_len:
                    out.append(nxt)
            start = pos + 1
    return out


def closure_component(p: Presentation, start: str,
                      max_len: int) -> set[Element]:
    """Everything reachable from a word by relation applications.

    The search stays inside words of length <= max_len; the zero
    vertex is absorbed but never expanded.
    """
    edges = relation_edges(p)
    seen: set[Element] = {start}
    queue: deque[str] = deque([start])
    while queue:
        word = queue.popleft()
        for nxt in one_step(word, edges, max_len):
            if nxt in seen:
                continue
            seen.add(nxt)
            if nxt is not ZERO:
                queue.append(nxt)
    return seen


def closure_equal(p: Presentation, u: Element, v: Element,
                  max_len: int) -> bool:
    if u == v:
        return True
    if u is ZERO:
        u, v = v, u
    return v in closure_component(p, u, max_len)


def bfs_distance(p: Presentation, u: Element, v: Element,
                 max_len: int) -> Optional[int]:
    """Unidirectional breadth-first distance in the relation graph."""
    if u == v:
        return 0
    if u is ZERO:
        u, v = v, u
    edges = relation_edges(p)
    seen: set[Element] = {u}
    frontier: list[Element] = [u]
    depth = 0
    while frontier:
        depth += 1
        nxt: list[Element] = []
        for word in frontier:
            if word is ZERO:
                continue
            for nb in one_step(word, edges, max_len):
                if nb in seen:
                    continue
                if nb == v:
                    return depth
                seen.add(nb)
                nxt.append(nb)
        frontier = nxt
    return None


def count_avoiding(letters: str, forbidden: list[str],
                   max_len: int) -> list[int]:
    """Words per length containing no forbidden factor, by windowed DP.

    The state is the last max(len(f)) - 1 letters; a new factor must
    end at the appended letter, so that window decides admissibility.
    """
    if any(f == "" for f in forbidden):
        return [0] * (max_len + 1)
    window = max((len(f) for f in forbidden), default=1) - 1
    states: dict[str, int] = {"": 1}
    counts = [1]
    for _ in range(max_len):
        nxt: dict[str, int] = {}
        for suffix, cnt in states.items():
            for g in letters:
                w = suffix + g
                if any(w.endswith(f) for f in forbidden):
                    continue
                key = w[-window:] if window else ""
                nxt[key] = nxt.get(key, 0) + cnt
        states = nxt
        counts.append(sum(states.values()))
    return counts


def rightmost_reduce(system: RewritingSystem, word: Union[str, Element],
                     max_steps: int = 100_000) -> Element:
    """Fixed point under the rightmost-longest-first strategy.

    A complete system must give the same answer as the package's
    leftmost strategy; only the rule data is shared with it.
    """
    current: Element = word
    for _ in range(max_steps):
        if current is ZERO:
            return ZERO
        best: Optional[tuple[int, int, int]] = None
        for i, rule in enumerate(system.rules):
            start = 0
            while True:
                pos = current.find(rule.lhs, start)
                if pos == -1:
                    break
                cand = (pos, len(rule.lhs), -i)
                if best is None or cand > best:
                    best = cand
                start = pos + 1
        if best is None:
            return current
        pos, length, neg_i = best
        rule = system.rules[-neg_i]
        if rule.rhs is ZERO:
            return ZERO
        current = current[:pos] + rule.rhs + current[pos + length:]
    raise AssertionError("rightmost_reduce did not terminate")


def random_reduce(system: RewritingSystem, word: Union[str, Element],
                  rng: random.Random, max_steps: int = 100_000) -> Element:
    """Fixed point under a seeded random choice of rule and position."""
    current: Element = word
    for _ in range(max_steps):
        if current is ZERO:
            return ZERO
        options: list[tuple[int, int]] = []
        for i, rule in enumerate(system.rules):
            start = 0
            while True:
                pos = current.find(rule.lhs, start)
                if pos == -1:
                    break
                options.append((pos, i))
                start = pos + 1
        if not options:
            return current
        pos, i = rng.choice(options)
        rule = system.rules[i]
        if rule.rhs is ZERO:
            return ZERO
        current = current[:pos] + rule.rhs + current[pos + len(rule.lhs):]
    raise AssertionError("random_reduce did not terminate")
