"""Images of boundary cylinders under an automorphism."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .automorphism import (
    Automorphism,
    BudgetExceeded,
    CancellationBounds,
    size,
    tight_cancellation,
)
from .cancellation import PrefixCertifier
from .multicyl import MultiCylinder, minimize, minimize_tuples
from .words import ReducedWord, concat_letters, extension_count

FORMULA_BUDGET = 10 ** 6


@dataclass(frozen=True)
class ImageConstants:
    S: int
    C_fwd: int
    C_bwd: int
    k1: int
    k2: int
    k: int
    trim: int


def constants_from(S: int, C_fwd: int, C_bwd: int) -> ImageConstants:
    c = max(C_fwd, C_bwd)
    k1 = S * S * C_bwd - C_bwd
    k2 = S * c + c
    return ImageConstants(S, C_fwd, C_bwd, k1, k2, k1 + k2, C_fwd)


def plan(phi: Automorphism, bounds: CancellationBounds, source: str = "best") -> ImageConstants:
    """Extension and trim lengths of the closed image formula.

    ``source`` picks the cancellation values: ``"best"`` (exact if known, else
    size**2), ``"certified"`` (size**2) or ``"empirical"`` (search lower bounds,
    whose output must be re-verified before it is trusted).
    """
    if source == "best":
        cf, cb = bounds.fwd, bounds.bwd
    elif source == "certified":
        cf, cb = bounds.certified_fwd, bounds.certified_bwd
    elif source == "empirical":
        if bounds.empirical_fwd is None:
            raise ValueError("bounds carry no empirical values")
        cf, cb = bounds.empirical_fwd, bounds.empirical_bwd
    else:
        raise ValueError(f"unknown bound source {source!r}")
    return constants_from(size(phi), cf, cb)


def _walk_images(table, start: tuple, start_img: tuple, rank: int, visit):
    """Depth-first walk below ``start`` keeping the reduced image incrementally.

    ``visit(word, image)`` returns True to descend further.
    """
    stack = [(start, start_img)]
    while stack:
        w, img = stack.pop()
        if not visit(w, img):
            continue
        last = w[-1] if w else 0
        for i in range(rank, 0, -1):
            for x in (-i, i):
                if x != -last:
                    stack.append((w + (x,), concat_letters(img, table[x])))


def image_formula(phi: Automorphism, u: ReducedWord, consts: ImageConstants,
                  budget: int = FORMULA_BUDGET, raw: bool = False) -> MultiCylinder:
    """Trimmed images of every extension of u by consts.k letters."""
    rank = phi.rank
    count = extension_count(rank, len(u), consts.k)
    if count > budget:
        raise BudgetExceeded(
            f"the closed formula needs {count} extensions (k={consts.k}); "
            f"use the adaptive method instead"
        )
    target = len(u) + consts.k
    out = set()
    table = phi._ftab

    def visit(w, img):
        if len(w) < target:
            return True
        if len(img) < consts.trim:
            raise AssertionError(f"image of {w} shorter than the trim amount {consts.trim}")
        out.add(img[: len(img) - consts.trim])
        return False

    _walk_images(table, u.letters, phi.apply_letters(u.letters), rank, visit)
    cyl = MultiCylinder._raw(out, u.alphabet)
    return cyl if raw else minimize(cyl)


def adaptive_cover(phi: Automorphism, u: tuple, c_fwd: int, c_bwd: int,
                   certifier: Optional[PrefixCertifier] = None) -> set:
    """Unminimized output of the adaptive method on letter tuples.

    With ``certifier`` (a PrefixCertifier for phi^-1) step 2 trims each
    preimage by exactly what its continuations can cancel instead of c_bwd.
    """
    rank = phi.rank
    # step 1: extend u until the trimmed forward image is defined
    cover = set()

    def forward(w, img):
        if len(img) >= c_fwd:
            cover.add(img[: len(img) - c_fwd])
            return False
        return True

    _walk_images(phi._ftab, u, phi.apply_letters(u), rank, forward)
    W = minimize_tuples(cover, rank)

    # steps 2 and 3: extend each covering word until its trimmed preimage is
    # comparable-decided against u, keep those that land inside C_u
    kept = set()
    n = len(u)

    def backward(x, pre):
        if certifier is not None:
            p = certifier.prefix(x, pre)
        elif len(pre) < c_bwd:
            return True
        else:
            p = pre[: len(pre) - c_bwd]
        if len(p) >= n:
            if p[:n] == u:
                kept.add(x)
            return False
        return p == u[: len(p)]

    for w in W:
        _walk_images(phi._btab, w, phi.apply_inverse_letters(w), rank, backward)
    return kept


def image_adaptive(phi: Automorphism, u: ReducedWord, bounds: Optional[CancellationBounds] = None,
                   raw: bool = False) -> MultiCylinder:
    """Adaptive image of C_u.

    Explicit ``bounds`` run the method with uniform trims by those constants;
    without them the exact constants drive step 1 and step 2 uses per-word
    certified preimage prefixes.
    """
    if bounds is None:
        b = bounds_for(phi)
        kept = adaptive_cover(phi, u.letters, b.fwd, b.bwd, _certifier(phi.inverse()))
    else:
        kept = adaptive_cover(phi, u.letters, bounds.fwd, bounds.bwd)
    cyl = MultiCylinder._raw(kept, u.alphabet)
    return cyl if raw else minimize(cyl)


@lru_cache(maxsize=256)
def bounds_for(phi: Automorphism) -> CancellationBounds:
    return tight_cancellation(phi)


@lru_cache(maxsize=256)
def _certifier(phi: Automorphism) -> PrefixCertifier:
    return PrefixCertifier(phi)


@lru_cache(maxsize=65536)
def _dual(phi: Automorphism, u: tuple) -> frozenset:
    b = bounds_for(phi)
    kept = adaptive_cover(phi, u, b.fwd, b.bwd, _certifier(phi.inverse()))
    return frozenset(minimize_tuples(kept, phi.rank))


def dual_map(phi: Automorphism, u: ReducedWord) -> MultiCylinder:
    """The minimal index set of the image of C_u."""
    if u.alphabet != phi.alphabet:
        raise ValueError("word and automorphism use different alphabets")
    return MultiCylinder._raw(_dual(phi, u.letters), u.alphabet, minimal=True)


def dual_map_set(phi: Automorphism, U: MultiCylinder) -> MultiCylinder:
    out = set()
    for t in U.tuples:
        out |= _dual(phi, t)
    return MultiCylinder._raw(minimize_tuples(out, phi.rank), U.alphabet, minimal=True)
