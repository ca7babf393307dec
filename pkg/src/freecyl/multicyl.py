"""Finite unions of boundary cylinders and their unique minimal index sets."""
from __future__ import annotations

import random
from typing import Iterable, Optional

from .words import (
    Alphabet,
    AlphabetMismatch,
    ReducedWord,
    WordError,
    children_letters,
    extend_letters,
    letter_key,
)


def _lex(t: tuple[int, ...]):
    return tuple(letter_key(x) for x in t)


def _canon(t: tuple[int, ...]):
    return (len(t), _lex(t))


class MultiCylinder:
    """The union of the cylinders C_u over a finite word set U."""

    __slots__ = ("alphabet", "_tuples", "minimal")

    def __init__(self, words: Iterable, alphabet: Optional[Alphabet] = None, minimal: bool = False):
        tuples = set()
        for w in words:
            if isinstance(w, ReducedWord):
                if alphabet is None:
                    alphabet = w.alphabet
                elif w.alphabet != alphabet:
                    raise AlphabetMismatch("words over different alphabets")
                tuples.add(w.letters)
            else:
                tuples.add(tuple(w))
        if alphabet is None:
            raise WordError("alphabet required for an empty or tuple-built multi-cylinder")
        self.alphabet = alphabet
        self._tuples = frozenset(tuples)
        self.minimal = minimal

    @classmethod
    def _raw(cls, tuples, alphabet, minimal=False) -> "MultiCylinder":
        m = cls.__new__(cls)
        m.alphabet = alphabet
        m._tuples = frozenset(tuples)
        m.minimal = minimal
        return m

    @classmethod
    def parse(cls, text: str, alphabet: Alphabet) -> "MultiCylinder":
        s = text.strip()
        if not (s.startswith("{") and s.endswith("}")):
            raise WordError(f"word set must be written in braces, got {text!r}")
        body = s[1:-1].strip()
        if not body:
            return cls((), alphabet)
        words = [ReducedWord.parse(part, alphabet) for part in body.split(",")]
        return cls(words, alphabet)

    @property
    def tuples(self) -> frozenset:
        return self._tuples

    @property
    def words(self) -> frozenset:
        al = self.alphabet
        return frozenset(ReducedWord(t, al, check=False) for t in self._tuples)

    def sorted_words(self) -> list[ReducedWord]:
        al = self.alphabet
        return [ReducedWord(t, al, check=False) for t in sorted(self._tuples, key=_canon)]

    def __len__(self) -> int:
        return len(self._tuples)

    def __iter__(self):
        return iter(self.sorted_words())

    def __contains__(self, w) -> bool:
        t = w.letters if isinstance(w, ReducedWord) else tuple(w)
        return t in self._tuples

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiCylinder):
            return NotImplemented
        return self.alphabet == other.alphabet and self._tuples == other._tuples

    def __hash__(self) -> int:
        return hash(self._tuples)

    def __str__(self) -> str:
        return "{" + ", ".join(str(w) for w in self.sorted_words()) + "}"

    def __repr__(self) -> str:
        return f"MultiCylinder({self})"

    def max_length(self) -> int:
        return max((len(t) for t in self._tuples), default=0)


def _same(U: MultiCylinder, V: MultiCylinder) -> None:
    if U.alphabet != V.alphabet:
        raise AlphabetMismatch("multi-cylinders over different alphabets")


def _full_children(u: tuple[int, ...], rank: int) -> list[tuple[int, ...]]:
    return list(children_letters(u, rank))


# -- the two elementary moves --------------------------------------------------

def move_remove_redundant(U: MultiCylinder) -> Optional[MultiCylinder]:
    """Drop one word that has a proper prefix in U; None if there is none."""
    S = U.tuples
    removable = [w for w in S if any(w[:i] in S for i in range(len(w)))]
    if not removable:
        return None
    w = min(removable, key=_lex)
    return MultiCylinder._raw(S - {w}, U.alphabet)


def _collapsible(S: frozenset, rank: int) -> list[tuple[int, ...]]:
    parents = {w[:-1] for w in S if w}
    return [u for u in parents
            if u not in S and all(c in S for c in _full_children(u, rank))]


def move_collapse_siblings(U: MultiCylinder) -> Optional[MultiCylinder]:
    """Replace a complete child family u|^1 inside U by u; None if there is none."""
    S = U.tuples
    cands = _collapsible(S, U.alphabet.rank)
    if not cands:
        return None
    u = min(cands, key=_canon)
    return MultiCylinder._raw((S - set(_full_children(u, U.alphabet.rank))) | {u}, U.alphabet)


def reduce_by_moves(U: MultiCylinder, rng: Optional[random.Random] = None,
                    trace: Optional[list] = None) -> MultiCylinder:
    """Apply moves until none applies.

    With ``rng`` the next move is drawn at random among all applicable ones;
    otherwise the deterministic choices of the two move functions are used.
    """
    rank = U.alphabet.rank
    S = U.tuples
    while True:
        if rng is None:
            nxt = move_remove_redundant(MultiCylinder._raw(S, U.alphabet))
            if nxt is None:
                nxt = move_collapse_siblings(MultiCylinder._raw(S, U.alphabet))
            if nxt is None:
                break
            new = nxt.tuples
        else:
            options = [("drop", w) for w in S if any(w[:i] in S for i in range(len(w)))]
            options += [("join", u) for u in _collapsible(S, rank)]
            if not options:
                break
            kind, w = options[rng.randrange(len(options))]
            if kind == "drop":
                new = S - {w}
            else:
                new = (S - set(_full_children(w, rank))) | {w}
        if trace is not None:
            trace.append(MultiCylinder._raw(new, U.alphabet))
        assert len(new) < len(S)
        S = new
    return MultiCylinder._raw(S, U.alphabet, minimal=True)


def antichain_tuples(S: Iterable[tuple[int, ...]]) -> set:
    kept: set = set()
    for w in sorted(set(S), key=len):
        if not any(w[:i] in kept for i in range(len(w))):
            kept.add(w)
    return kept


def minimize_tuples(S: Iterable[tuple[int, ...]], rank: int) -> set:
    cur = antichain_tuples(S)
    if () in cur:
        return {()}
    # collapse complete sibling families from the deepest level upwards;
    # the set stays an antichain throughout
    depth = max((len(w) for w in cur), default=0)
    for level in range(depth, 0, -1):
        groups: dict = {}
        for w in cur:
            if len(w) == level:
                groups.setdefault(w[:-1], []).append(w)
        for parent, kids in groups.items():
            need = 2 * rank if not parent else 2 * rank - 1
            if len(kids) == need:
                cur.difference_update(kids)
                cur.add(parent)
    return cur


def minimize(U: MultiCylinder) -> MultiCylinder:
    if U.minimal:
        return U
    return MultiCylinder._raw(minimize_tuples(U.tuples, U.alphabet.rank), U.alphabet, minimal=True)


def u_star(U: MultiCylinder) -> MultiCylinder:
    """Words whose cylinder lies in C_U while their parent's cylinder does not.

    Computed on the prefix trie of U: a node is covered if it is in U or all of
    its children are trie nodes and covered.  Nodes below a word of U never
    matter because the search stops at the first covered node.
    """
    S = U.tuples
    rank = U.alphabet.rank
    trie = {w[:i] for w in S for i in range(len(w) + 1)}
    memo: dict = {}

    def covered(node) -> bool:
        if node in memo:
            return memo[node]
        if node in S:
            res = True
        else:
            kids = _full_children(node, rank)
            res = all(k in trie for k in kids) and all(covered(k) for k in kids)
        memo[node] = res
        return res

    out = []
    if S:
        todo = [()]
        while todo:
            node = todo.pop()
            if covered(node):
                out.append(node)
            else:
                todo.extend(k for k in _full_children(node, rank) if k in trie)
    return MultiCylinder._raw(out, U.alphabet, minimal=True)


def cylinders_equal(U: MultiCylinder, V: MultiCylinder) -> bool:
    _same(U, V)
    return minimize(U).tuples == minimize(V).tuples


def normalize_to_depth(U: MultiCylinder, k: int) -> MultiCylinder:
    """Expand every word to all its extensions of length exactly k."""
    if k < U.max_length():
        raise WordError(f"depth {k} is smaller than the deepest word ({U.max_length()})")
    S = antichain_tuples(U.tuples)
    rank = U.alphabet.rank
    out = set()
    for w in S:
        out.update(extend_letters(w, k - len(w), rank))
    return MultiCylinder._raw(out, U.alphabet)


def disjoint(U: MultiCylinder, V: MultiCylinder) -> bool:
    _same(U, V)
    for u in U.tuples:
        for v in V.tuples:
            n = min(len(u), len(v))
            if u[:n] == v[:n]:
                return False
    return True


def union(*cyls: MultiCylinder) -> MultiCylinder:
    al = cyls[0].alphabet
    out = set()
    for c in cyls:
        _same(c, cyls[0])
        out |= c.tuples
    return MultiCylinder._raw(out, al)
