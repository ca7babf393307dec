"""Exact bounded-cancellation constant of an automorphism.

For reduced ``u*v`` the cancellation in ``phi(u)phi(v)`` is the common prefix
of ``phi(u^-1)`` and ``phi(v)``, two images of words with different first
letters.  The vertices lying on some geodesic ``[1, phi(p)]`` with ``p``
starting with ``a`` form a regular language: read the images of the generator
automaton and saturate it with epsilon moves for every cancelling pair.  The
largest cancellation is the longest reduced word readable from two different
first letters, and C(phi) is twice that (the defect counts both sides).
"""
from __future__ import annotations

import sys
from functools import lru_cache

from .automorphism import Automorphism, size


class _ImageAutomaton:
    def __init__(self, phi: Automorphism):
        rank = phi.rank
        letters = [x for i in range(1, rank + 1) for x in (i, -i)]
        self.letters = letters
        self.n = 0
        self.edges: dict[int, list[tuple[int, int]]] = {}
        node = {x: self._new() for x in letters}
        entry = {}
        # one chain per letter z spelling phi(z), ending in node[z]
        for z in letters:
            img = phi.image_of(z)
            states = [self._new() for _ in img[:-1]] + [node[z]]
            for k in range(1, len(img)):
                self.edges[states[k - 1]].append((img[k], states[k]))
            entry[z] = (img[0], states[0])
        for y in letters:
            for z in letters:
                if z != -y:
                    self.edges[node[y]].append(entry[z])
        self.initial = {}
        for z in letters:
            s = self._new()
            self.edges[s].append(entry[z])
            self.initial[z] = s
        self._saturate()

    def _new(self) -> int:
        s = self.n
        self.n += 1
        self.edges[s] = []
        return s

    def _closures(self, eps):
        out = []
        for s in range(self.n):
            seen = {s}
            todo = [s]
            while todo:
                t = todo.pop()
                for r in eps[t]:
                    if r not in seen:
                        seen.add(r)
                        todo.append(r)
            out.append(frozenset(seen))
        return out

    def _saturate(self):
        eps = {s: set() for s in range(self.n)}
        while True:
            clos = self._closures(eps)
            added = False
            for p in range(self.n):
                for x, r in self.edges[p]:
                    for r2 in clos[r]:
                        for y, q in self.edges[r2]:
                            if y == -x and q not in eps[p]:
                                eps[p].add(q)
                                added = True
            if not added:
                break
        self.closure = clos
        by_letter: list[dict[int, set]] = [dict() for _ in range(self.n)]
        for p in range(self.n):
            for x, q in self.edges[p]:
                by_letter[p].setdefault(x, set()).add(q)
        self.by_letter = by_letter

    def start(self, z: int) -> frozenset:
        return self.closure[self.initial[z]]

    def step(self, states: frozenset, x: int) -> frozenset:
        out = set()
        for p in states:
            for q in self.by_letter[p].get(x, ()):
                out |= self.closure[q]
        return frozenset(out)


def side_cancellation(phi: Automorphism) -> int:
    """Largest number of letters cancelled on one side in phi(u)phi(v), uv reduced."""
    aut = _ImageAutomaton(phi)
    letters = aut.letters
    limit = size(phi) ** 2  # the S**2 bound caps any honest answer

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 10 * (limit + 50)))
    try:
        on_stack: set = set()

        @lru_cache(maxsize=None)
        def depth(qa: frozenset, qb: frozenset, last: int) -> int:
            key = (qa, qb, last)
            if key in on_stack:
                raise RuntimeError("image hulls share an infinite branch; not an automorphism")
            on_stack.add(key)
            best = 0
            for x in letters:
                if x == -last:
                    continue
                na = aut.step(qa, x)
                if not na:
                    continue
                nb = aut.step(qb, x)
                if not nb:
                    continue
                best = max(best, 1 + depth(na, nb, x))
            on_stack.discard(key)
            return best

        best = 0
        for a in letters:
            for b in letters:
                if a != b:
                    best = max(best, depth(aut.start(a), aut.start(b), 0))
    finally:
        sys.setrecursionlimit(old)
    if 2 * best > limit:
        raise AssertionError(f"cancellation {2 * best} exceeds the bound size**2 = {limit}")
    return best


def cancellation_constant(phi: Automorphism) -> int:
    """C(phi): the least C with |phi(u)|+|phi(v)|-|phi(uv)| <= C for all u, v."""
    return 2 * side_cancellation(phi)


class PrefixCertifier:
    """Longest word certified to prefix every image point of a cylinder.

    For X ending in x, the image of any point X.Z is phi(X) followed by phi(Z)
    with Z starting away from x^-1.  The letters of phi(X) that can cancel are
    exactly the longest prefix of phi(X)^-1 readable in the image hull of some
    allowed first letter of Z.
    """

    def __init__(self, phi: Automorphism):
        self.phi = phi
        self.aut = _ImageAutomaton(phi)
        self.limit = side_cancellation(phi)
        self._starts = {z: self.aut.start(z) for z in self.aut.letters}
        self._step_cache: dict = {}
        self._cancel_cache: dict = {}

    def _step(self, states, x):
        key = (states, x)
        r = self._step_cache.get(key)
        if r is None:
            r = self.aut.step(states, x)
            self._step_cache[key] = r
        return r

    def cancellation(self, img: tuple, last: int) -> int:
        """Most letters of ``img`` that a continuation after letter ``last`` can cancel."""
        tail = img[max(0, len(img) - self.limit - 1):]
        key = (tail, last)
        r = self._cancel_cache.get(key)
        if r is not None:
            return r
        inv = [-x for x in reversed(tail)]
        best = 0
        for y in self.aut.letters:
            if y == -last:
                continue
            states = self._starts[y]
            n = 0
            for x in inv:
                states = self._step(states, x)
                if not states:
                    break
                n += 1
            best = max(best, n)
        self._cancel_cache[key] = best
        return best

    def prefix(self, X: tuple, img: tuple = None) -> tuple:
        """Certified common prefix of the images of all points extending X."""
        if not X:
            return ()
        if img is None:
            img = self.phi.apply_letters(X)
        k = self.cancellation(img, X[-1])
        return img[: len(img) - k]
