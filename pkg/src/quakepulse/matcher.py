"""Character-level Aho-Corasick automaton.

Each pattern carries an arbitrary hashable tag; :meth:`AhoCorasick.tags_in`
returns the set of tags whose pattern occurs anywhere in a text, in one pass.
States are stored as parallel lists rather than node objects, which keeps
the scan loop short.
"""

from __future__ import annotations

from collections import deque
from typing import Hashable, Iterable


class AhoCorasick:
    def __init__(self, patterns: Iterable[tuple[str, Hashable]]):
        self._goto: list[dict[str, int]] = [{}]
        self._fail: list[int] = [0]
        self._out: list[frozenset] = [frozenset()]
        own: list[set] = [set()]
        for pat, tag in patterns:
            if not pat:
                raise ValueError("empty pattern")
            s = 0
            for ch in pat:
                nxt = self._goto[s].get(ch)
                if nxt is None:
                    nxt = len(self._goto)
                    self._goto[s][ch] = nxt
                    self._goto.append({})
                    self._fail.append(0)
                    self._out.append(frozenset())
                    own.append(set())
                s = nxt
            own[s].add(tag)
        self._build(own)

    def _build(self, own: list[set]) -> None:
        # BFS so that a state's failure target is finished before the state itself
        goto, fail = self._goto, self._fail
        self._out[0] = frozenset(own[0])
        queue = deque()
        for s in goto[0].values():
            fail[s] = 0
            queue.append(s)
        while queue:
            r = queue.popleft()
            self._out[r] = frozenset(own[r]) | self._out[fail[r]]
            for ch, s in goto[r].items():
                f = fail[r]
                while f and ch not in goto[f]:
                    f = fail[f]
                fail[s] = goto[f].get(ch, 0)
                queue.append(s)

    @property
    def n_states(self) -> int:
        return len(self._goto)

    def tags_in(self, text: str) -> set:
        goto, fail, out = self._goto, self._fail, self._out
        found: set = set()
        s = 0
        for ch in text:
            while s and ch not in goto[s]:
                s = fail[s]
            s = goto[s].get(ch, 0)
            if out[s]:
                found |= out[s]
        return found
