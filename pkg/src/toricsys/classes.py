"""Finite enumeration of divisor classes with prescribed square and K-degree.

On a lattice with K^2 > 0 the orthogonal complement of K is negative
definite, so the set {D : D^2 = square, D.K = k} is finite.  On blow-up
lattices we scan the L-coefficient range forced by the Cauchy-Schwarz
inequality and fill in the exceptional coefficients recursively under exact
sum / sum-of-squares constraints; on Hirzebruch lattices the two conditions
reduce to a quadratic in the section coefficient.
"""

from __future__ import annotations

from functools import lru_cache
from math import isqrt

from .lattice import (
    BLOWUP,
    HIRZEBRUCH,
    DivisorClass,
    PicardLattice,
    blowup_lattice,
    is_r_class,
)


def _blowup_vectors(n: int, square: int, k_degree: int):
    """Coefficient tuples (a, b1..bn) with a^2 - sum b^2 = square and
    -3a - sum b = k_degree."""
    if n == 0:
        if square >= 0:
            s = isqrt(square)
            if s * s == square:
                for a in {s, -s}:
                    if -3 * a == k_degree:
                        yield (a,)
        return
    disc = n * (k_degree * k_degree - (9 - n) * square)
    if disc < 0:
        return
    root = isqrt(disc)
    denom = 9 - n
    a_lo = -((3 * k_degree + root) // denom)  # ceil of (-3k - root)/denom
    a_hi = (-3 * k_degree + root) // denom
    out = []

    def fill(prefix, remaining, ssum, sq):
        # remaining entries must have sum ssum and sum of squares sq
        if remaining == 0:
            if ssum == 0 and sq == 0:
                out.append(tuple(prefix))
            return
        if sq < 0 or (ssum * ssum) > remaining * sq or (ssum - sq) % 2:
            return
        if remaining == 1:
            if ssum * ssum == sq:
                out.append(tuple(prefix) + (ssum,))
            return
        bound = isqrt(sq)
        for b in range(-bound, bound + 1):
            rest_sum = ssum - b
            rest_sq = sq - b * b
            if rest_sum * rest_sum <= (remaining - 1) * rest_sq:
                fill(prefix + [b], remaining - 1, rest_sum, rest_sq)

    for a in range(a_lo, a_hi + 1):
        sq = a * a - square
        ssum = -k_degree - 3 * a
        if sq >= 0:
            fill([a], n, ssum, sq)
    yield from out


def _hirzebruch_rank2_vectors(d: int, square: int, k_degree: int):
    """Coefficient pairs (f, s) on the rank-2 Hirzebruch lattice: from
    D = fF + sS the two conditions give 2s^2 + k s + square = 0."""
    disc = k_degree * k_degree - 8 * square
    if disc < 0:
        return
    root = isqrt(disc)
    if root * root != disc:
        return
    for s in {(-k_degree + root), (-k_degree - root)}:
        if s % 4:
            continue
        s //= 4
        num = -k_degree - s * (d + 2)
        if num % 2:
            continue
        yield (num // 2, s)


@lru_cache(maxsize=None)
def enumerate_classes(
    lattice: PicardLattice, square: int, k_degree: int
) -> tuple[DivisorClass, ...]:
    """Complete, duplicate-free, lexicographically ordered list of classes
    D with D^2 = square and D.K = k_degree."""
    if lattice.degree <= 0:
        raise ValueError("K^2 must be positive for finite enumeration")
    if lattice.kind == BLOWUP:
        vecs = set(_blowup_vectors(lattice.n, square, k_degree))
    elif lattice.n == 0:
        vecs = set(_hirzebruch_rank2_vectors(lattice.d, square, k_degree))
    elif lattice.d % 2 == 1:
        # bridge through the blow-up presentation of the odd-parameter lattice
        from .lattice import hirzebruch_isometry

        phi = hirzebruch_isometry(lattice.d, lattice.n)
        vecs = {
            phi.apply(D).coeffs
            for D in enumerate_classes(phi.source, square, k_degree)
        }
    else:
        raise NotImplementedError(
            "no enumeration on even-parameter Hirzebruch lattices with "
            "extra exceptionals"
        )
    found = [DivisorClass(lattice, v) for v in sorted(vecs)]
    K = lattice.canonical_class
    assert all(D.dot(D) == square and D.dot(K) == k_degree for D in found)
    return tuple(found)


def r_classes(lattice: PicardLattice, r: int) -> tuple[DivisorClass, ...]:
    """All r-classes: D^2 = r and D.K = -r - 2."""
    return enumerate_classes(lattice, r, -r - 2)


def minus_one_classes(lattice: PicardLattice) -> tuple[DivisorClass, ...]:
    return enumerate_classes(lattice, -1, -1)


def minus_two_classes(lattice: PicardLattice) -> tuple[DivisorClass, ...]:
    return enumerate_classes(lattice, -2, 0)


def zero_classes(lattice: PicardLattice) -> tuple[DivisorClass, ...]:
    return enumerate_classes(lattice, 0, -2)


def reflect(D: DivisorClass, root: DivisorClass) -> DivisorClass:
    """Reflection of D in a (-2)-class orthogonal to K: D + (D.root) root."""
    if not is_r_class(root, -2):
        raise ValueError(f"{root} is not a (-2)-class")
    return D + D.dot(root) * root


def reflection_word(lattice, start: DivisorClass, goal: DivisorClass):
    """Shortest word of (-2)-class reflections carrying start to goal.

    Returns a list of roots r1, ..., rm with
    reflect(...reflect(start, r1)..., rm) == goal, or None when the two
    classes lie in different orbits of the reflection group.
    """
    if start == goal:
        return []
    roots = minus_two_classes(lattice)
    seen = {start: None}
    frontier = [start]
    while frontier:
        nxt = []
        for cur in frontier:
            for r in roots:
                image = reflect(cur, r)
                if image in seen:
                    continue
                seen[image] = (cur, r)
                if image == goal:
                    word = []
                    node = image
                    while seen[node] is not None:
                        prev, root = seen[node]
                        word.append(root)
                        node = prev
                    word.reverse()
                    return word
                nxt.append(image)
        frontier = nxt
    return None
