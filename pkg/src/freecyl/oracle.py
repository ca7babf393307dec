"""Brute-force finite-depth semantics used to certify computed images.

Nothing here calls into the image or multi-cylinder algorithms; cylinders are
evaluated through prefixes of boundary points and exhaustive refinement.

A finite word X stands for every boundary point extending it.  For the image
of such a point only a prefix of ``phi(X)`` is known for sure: by default the
letters that no continuation of X can cancel, or (``source="best"`` /
``"certified"``) ``phi(X)`` with a uniform C(phi) or size**2 letters removed.
All image-side decisions use that prefix.
"""
from __future__ import annotations

import enum
from functools import lru_cache
from dataclasses import dataclass
from typing import Iterable, Optional

from .automorphism import Automorphism, BudgetExceeded, CancellationBounds, tight_cancellation
from .cancellation import PrefixCertifier
from .words import ReducedWord, WordError, children_letters, extend_letters

DEFAULT_BUDGET = 10 ** 7
MAX_EXTRA_DEPTH = 60


class Membership(enum.Enum):
    YES = "yes"
    NO = "no"
    INSUFFICIENT = "insufficient-depth"


@dataclass(frozen=True)
class DepthSlice:
    depth: int
    words: frozenset

    def __len__(self) -> int:
        return len(self.words)


def _tuples(U) -> frozenset:
    # accepts a MultiCylinder or any iterable of words/tuples
    if hasattr(U, "tuples"):
        return U.tuples
    return frozenset(w.letters if isinstance(w, ReducedWord) else tuple(w) for w in U)


def _has_prefix_in(w: tuple, S) -> bool:
    return any(w[:i] in S for i in range(len(w) + 1))


def depth_slice(U, L: int, alphabet=None) -> DepthSlice:
    """All words of length L having a prefix in U."""
    S = _tuples(U)
    if any(len(w) > L for w in S):
        raise WordError(f"slice depth {L} is smaller than a word of the set")
    al = alphabet or U.alphabet
    out = set()
    for w in S:
        out.update(extend_letters(w, L - len(w), al.rank))
    return DepthSlice(L, frozenset(ReducedWord(t, al, check=False) for t in out))


def brute_minimize(U, L: int):
    """The minimal index set, found by testing slice containment of every trie node."""
    from .multicyl import MultiCylinder  # container type only

    S = _tuples(U)
    al = U.alphabet
    if any(len(w) + 1 > L for w in S):
        raise WordError(f"depth {L} must exceed every word length")
    rank = al.rank
    memo: dict = {}

    def contained(u: tuple) -> bool:
        # every length-L extension of u has a prefix in S
        if u in memo:
            return memo[u]
        todo = [u]
        ok = True
        while todo:
            w = todo.pop()
            if _has_prefix_in(w, S):
                continue
            if len(w) >= L:
                ok = False
                break
            todo.extend(children_letters(w, rank))
        memo[u] = ok
        return ok

    nodes = {w[:i] for w in S for i in range(len(w) + 1)}
    out = [u for u in nodes if contained(u) and (not u or not contained(u[:-1]))]
    return MultiCylinder(out, al)


def _is_antichain(S) -> bool:
    S = set(S)
    return not any(w[:i] in S for w in S for i in range(len(w)))


class _Counter:
    def __init__(self, budget: int):
        self.left = budget

    def tick(self, n: int = 1):
        self.left -= n
        if self.left < 0:
            raise BudgetExceeded("oracle enumeration budget exhausted")


@lru_cache(maxsize=128)
def _certifier(phi: Automorphism) -> PrefixCertifier:
    return PrefixCertifier(phi)


def image_prefixer(phi: Automorphism, bounds: Optional[CancellationBounds] = None,
                   source: str = "sharp"):
    """A function (X, phi(X)) -> word certified to prefix phi of every point extending X.

    ``source``: ``"sharp"`` trims exactly the letters a continuation can cancel,
    ``"best"`` trims the constant C(phi) (or size**2 if unknown), ``"certified"``
    always trims size**2.
    """
    if source == "sharp":
        cert = _certifier(phi)
        return lambda X, img: cert.prefix(X, img)
    if source == "certified":
        s = max(len(img) for img in phi.fwd + phi.bwd)
        c = s * s
    elif source == "best":
        c = (bounds or tight_cancellation(phi)).fwd
    else:
        raise ValueError(f"unknown bound source {source!r}")
    return lambda X, img: img[: len(img) - c] if len(img) >= c else ()


def verify_image(phi: Automorphism, u: ReducedWord, claim, bounds: Optional[CancellationBounds] = None,
                 source: str = "sharp", budget: int = DEFAULT_BUDGET) -> bool:
    """Decide exactly whether phi(C_u) equals the union of cylinders of ``claim``."""
    fwd_prefix = image_prefixer(phi, bounds, source)
    bwd_prefix = image_prefixer(phi.inverse(), bounds.swapped() if bounds else None, source)
    C = _tuples(claim)
    if not _is_antichain(C):
        raise ValueError("claim must be an antichain; minimize it first")
    rank = phi.rank
    counter = _Counter(budget)
    ftab, btab = phi._ftab, phi._btab

    # phi(C_u) inside C_claim: each branch's certified image prefix must sit
    # below some claim word
    todo = [(u.letters, phi.apply_letters(u.letters))]
    while todo:
        w, img = todo.pop()
        counter.tick()
        t = fwd_prefix(w, img)
        if _has_prefix_in(t, C):
            continue
        if not any(len(c) > len(t) and c[: len(t)] == t for c in C):
            return False
        if len(w) - len(u) > MAX_EXTRA_DEPTH:
            raise BudgetExceeded("image prefixes failed to grow")
        last = w[-1] if w else 0
        for x in (y for i in range(1, rank + 1) for y in (i, -i)):
            if x != -last:
                img2 = list(img)
                for z in ftab[x]:
                    if img2 and img2[-1] == -z:
                        img2.pop()
                    else:
                        img2.append(z)
                todo.append((w + (x,), tuple(img2)))

    # C_claim inside phi(C_u): certified preimage prefixes must extend u
    n = len(u)
    for c in C:
        todo = [(c, phi.apply_inverse_letters(c))]
        while todo:
            x, pre = todo.pop()
            counter.tick()
            p = bwd_prefix(x, pre)
            if len(p) >= n:
                if p[:n] == u.letters:
                    continue
                return False
            if p != u.letters[: len(p)]:
                return False
            if len(x) - len(c) > MAX_EXTRA_DEPTH:
                raise BudgetExceeded("preimage prefixes failed to grow")
            last = x[-1] if x else 0
            for y in (z for i in range(1, rank + 1) for z in (i, -i)):
                if y != -last:
                    pre2 = list(pre)
                    for z in btab[y]:
                        if pre2 and pre2[-1] == -z:
                            pre2.pop()
                        else:
                            pre2.append(z)
                    todo.append((x + (y,), tuple(pre2)))
    return True


# -- double cylinders -----------------------------------------------------------

def _tri_prefix(w: tuple, P: tuple) -> Optional[bool]:
    """Is w a prefix of every / no point extending P?  None if it depends."""
    if len(P) >= len(w):
        return P[: len(w)] == w
    if w[: len(P)] != P:
        return False
    return None


def _lcp(a: tuple, b: tuple) -> int:
    n = 0
    m = min(len(a), len(b))
    while n < m and a[n] == b[n]:
        n += 1
    return n


def _member(u: tuple, v: tuple, X: tuple, Y: tuple) -> Optional[bool]:
    """Whether the geodesic from X to Y passes through u, then v.

    X and Y are prefixes of boundary points; None when the prefixes do not
    determine the answer for all points extending them.
    """
    m = _lcp(X, Y)
    if m == len(X) or m == len(Y):
        # the geodesic's turning point lies at depth >= m, not yet located
        for w in (u, v):
            if len(w) < m or (_tri_prefix(w, X) is False and _tri_prefix(w, Y) is False):
                return False
        return None
    pos = []
    for w in (u, v):
        if len(w) < m:
            return False
        on_x = _tri_prefix(w, X)
        on_y = _tri_prefix(w, Y)
        if on_x is None or on_y is None:
            return None
        if not (on_x or on_y):
            return False
        pos.append(-len(w) if on_x else len(w) - 2 * m)
    return pos[0] < pos[1]


def double_membership(u: ReducedWord, v: ReducedWord, X: ReducedWord, Y: ReducedWord) -> Membership:
    if X == Y:
        raise WordError("X and Y must differ")
    res = _member(u.letters, v.letters, X.letters, Y.letters)
    if res is None:
        return Membership.INSUFFICIENT
    return Membership.YES if res else Membership.NO


def _pairs_of(R) -> list[tuple[tuple, tuple]]:
    return [(p.left.letters, p.right.letters) for p in R.pairs] if hasattr(R, "pairs") else [
        (a.letters, b.letters) for a, b in R
    ]


def _refine(rank: int, L: int, judge, counter: _Counter, max_len: int) -> bool:
    """Exhaustively cover all pairs of boundary points by prefix blocks.

    ``judge(X, Y)`` returns True/False once the block is decided, or the side
    ("X" or "Y") to extend next.
    """
    level = extend_letters((), L, rank)
    todo = [(X, Y) for X in level for Y in level]
    while todo:
        X, Y = todo.pop()
        counter.tick()
        verdict = judge(X, Y)
        if verdict is True:
            continue
        if verdict is False:
            return False
        if max(len(X), len(Y)) > max_len:
            raise BudgetExceeded("double-cylinder refinement did not settle")
        if verdict == "X":
            todo.extend((X2, Y) for X2 in children_letters(X, rank))
        else:
            todo.extend((X, Y2) for Y2 in children_letters(Y, rank))
    return True


def verify_double_image(phi: Automorphism, u: ReducedWord, v: ReducedWord, claim, L: int = 2,
                        bounds: Optional[CancellationBounds] = None, source: str = "sharp",
                        disjoint: bool = True, budget: int = DEFAULT_BUDGET) -> bool:
    """Decide whether phi([u, v]) equals the union of the claimed double cylinders.

    Starts from all pairs of length-L prefixes and refines any block that is not
    yet decided.  With ``disjoint`` every image pair must lie in exactly one
    claimed double cylinder.
    """
    if u == v:
        raise WordError("u and v must differ")
    prefixer = image_prefixer(phi, bounds, source)
    pairs = _pairs_of(claim)
    cache: dict = {}

    def image_prefix(X):
        t = cache.get(X)
        if t is None:
            t = prefixer(X, phi.apply_letters(X))
            cache[X] = t
        return t

    def judge(X, Y):
        d = _member(u.letters, v.letters, X, Y)
        iX, iY = image_prefix(X), image_prefix(Y)
        hits = 0
        unknown = d is None
        if not unknown:
            for p, q in pairs:
                r = _member(p, q, iX, iY)
                if r is None:
                    unknown = True
                    break
                hits += r
        if unknown:
            return "X" if (len(iX), len(X)) <= (len(iY), len(Y)) else "Y"
        if d:
            return hits == 1 if disjoint else hits >= 1
        return hits == 0

    return _refine(phi.rank, L, judge, _Counter(budget), L + MAX_EXTRA_DEPTH)


def same_double_set(R1, R2, alphabet, L: int = 2, budget: int = DEFAULT_BUDGET) -> bool:
    """Whether two unions of double cylinders denote the same subset of pairs."""
    p1, p2 = _pairs_of(R1), _pairs_of(R2)

    def judge(X, Y):
        a = b = False
        for p, q in p1:
            r = _member(p, q, X, Y)
            if r is None:
                return "X" if len(X) <= len(Y) else "Y"
            a = a or r
        for p, q in p2:
            r = _member(p, q, X, Y)
            if r is None:
                return "X" if len(X) <= len(Y) else "Y"
            b = b or r
        return a == b

    return _refine(alphabet.rank, L, judge, _Counter(budget), L + MAX_EXTRA_DEPTH)


def pair_slice(R, alphabet, L: int) -> set:
    """Ordered pairs of distinct length-L words whose points all lie in R."""
    pairs = _pairs_of(R)
    words = extend_letters((), L, alphabet.rank)
    out = set()
    for X in words:
        for Y in words:
            if X == Y:
                continue
            if any(_member(p, q, X, Y) for p, q in pairs):
                out.add((X, Y))
    return out
