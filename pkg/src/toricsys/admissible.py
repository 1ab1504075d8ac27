"""Integer-sequence calculus mirroring toric-system augmentation.

A sequence is admissible when it can be produced from (0, k, 0, -k) or
(k, 0, -k, 0) by repeatedly inserting a -1 and decrementing the two cyclic
neighbors of the insertion slot.  Sequences with all entries >= -2 are of
the first kind; up to the dihedral action there are exactly fifteen of
those.
"""

from __future__ import annotations

from functools import lru_cache


def augment_sequence(a, m: int) -> tuple[int, ...]:
    """Insert -1 at slot m (1 <= m <= n+1) and decrement the two cyclic
    neighbors of the new slot."""
    a = tuple(a)
    n = len(a)
    if not 1 <= m <= n + 1:
        raise ValueError(f"slot {m} out of range 1..{n + 1}")
    out = list(a)
    out.insert(m - 1, -1)
    size = n + 1
    out[(m - 2) % size] -= 1
    out[m % size] -= 1
    return tuple(out)


def unaugment_sequence(a, m: int) -> tuple[int, ...]:
    """Inverse: remove the -1 at slot m and increment its two cyclic
    neighbors."""
    a = tuple(a)
    n = len(a)
    if a[m - 1] != -1:
        raise ValueError(f"entry {m} is {a[m - 1]}, not -1")
    out = list(a)
    out[(m - 2) % n] += 1
    out[m % n] += 1
    del out[m - 1]
    return tuple(out)


def shift_sequence(a, steps: int = 1) -> tuple[int, ...]:
    a = tuple(a)
    t = steps % len(a)
    return a[t:] + a[:t]


def sym_sequence(a) -> tuple[int, ...]:
    """Reversal fixing the last entry: (a_{n-1}, ..., a_1, a_n)."""
    a = tuple(a)
    return tuple(reversed(a[:-1])) + (a[-1],)


def dihedral_orbit(a):
    a = tuple(a)
    n = len(a)
    for b in (a, sym_sequence(a)):
        for t in range(n):
            yield shift_sequence(b, t)


def canonical_form(a) -> tuple[int, ...]:
    """Lexicographically smallest representative of the dihedral orbit."""
    return min(dihedral_orbit(a))


def _is_base(a) -> bool:
    a = tuple(a)
    if len(a) != 4:
        return False
    return (a[0] == a[2] == 0 and a[1] == -a[3]) or (
        a[1] == a[3] == 0 and a[0] == -a[2]
    )


@lru_cache(maxsize=None)
def _admissible_canonical(a: tuple) -> tuple | None:
    """Derivation witness for a dihedrally-canonical sequence: a tuple of
    (slot, sequence) pairs leading down to a base sequence, or None."""
    if len(a) < 4:
        return None
    if len(a) == 4:
        return ((None, a),) if _is_base(a) else None
    for m, value in enumerate(a, start=1):
        if value != -1:
            continue
        smaller = unaugment_sequence(a, m)
        sub = _admissible_canonical(canonical_form(smaller))
        if sub is not None:
            return ((m, a),) + sub
    return None


def is_admissible(a) -> bool:
    """Decide by reverse search: branch over -1 entries, un-augmenting until
    a base sequence appears."""
    return _admissible_canonical(canonical_form(a)) is not None


def admissibility_witness(a):
    """Derivation chain down to a base sequence (canonical representatives),
    or None."""
    return _admissible_canonical(canonical_form(a))


def is_first_kind(a) -> bool:
    a = tuple(a)
    return min(a) >= -2 and is_admissible(a)


@lru_cache(maxsize=None)
def enumerate_first_kind() -> tuple[tuple[int, ...], ...]:
    """All admissible sequences with entries >= -2, up to the dihedral
    action: the three length-4 bases and their first-kind augmentation
    closure.  Lengths never exceed 9."""
    bases = {canonical_form((0, k, 0, -k)) for k in (0, 1, 2)}
    found = set(bases)
    frontier = list(bases)
    while frontier:
        nxt = []
        for a in frontier:
            if len(a) >= 9:
                continue
            for m in range(1, len(a) + 2):
                b = augment_sequence(a, m)
                if min(b) < -2:
                    continue
                c = canonical_form(b)
                if c not in found:
                    found.add(c)
                    nxt.append(c)
        frontier = nxt
    assert all(len(a) <= 9 for a in found)
    return tuple(sorted(found, key=lambda a: (len(a), a)))
