"""Decision procedures for the augmentation pedigree of a toric system.

A system is a standard augmentation when repeatedly contracting entries
that are irreducible (-1)-curves reaches a minimal surface.  The weak
variant may first expose such a class as an entry using transpositions and
cyclic shifts; the graded variants additionally require every intermediate
system to keep a given exceptionality grade.  Searches return replayable
operation chains.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .lattice import DivisorClass, LatticeMap, format_compact
from .surface import SurfaceType, irreducible_minus_one_classes
from .toric import (
    ToricSystem,
    augment_lattice,
    blow_down_toric,
    candidate_segments,
    perm,
    segment_indices,
    shift,
    validate,
)
from .checker import (
    is_cyclic_strong_exceptional,
    is_exceptional,
    is_strong_exceptional,
)

GRADES = ("exceptional", "strong", "cyclic")

_GRADE_CHECKERS = {
    "exceptional": is_exceptional,
    "strong": is_strong_exceptional,
    "cyclic": is_cyclic_strong_exceptional,
}


@dataclass(frozen=True)
class BaseOp:
    surface: SurfaceType
    entries: tuple


@dataclass(frozen=True)
class AugmentOp:
    slot: int
    surface: SurfaceType      # target of the augmentation
    exceptional: DivisorClass  # in target coordinates
    embed: LatticeMap


@dataclass(frozen=True)
class PermOp:
    index: int


@dataclass(frozen=True)
class ShiftOp:
    steps: int


@dataclass
class SearchResult:
    ok: bool
    chain: list | None = None
    reason: str | None = None
    all_chains: list | None = None

    def __bool__(self):
        return self.ok


def replay(chain) -> ToricSystem:
    """Apply a recorded operation chain from its base system forward."""
    base = chain[0]
    cur = validate(base.surface, base.entries)
    for op in chain[1:]:
        if isinstance(op, AugmentOp):
            cur = augment_lattice(
                cur, op.slot, op.surface, exceptional=op.exceptional, embed=op.embed
            )
        elif isinstance(op, PermOp):
            cur = perm(cur, op.index)
        elif isinstance(op, ShiftOp):
            cur = shift(cur, op.steps)
        else:
            raise TypeError(f"unknown chain operation {op!r}")
    return cur


def chain_summary(chain) -> list[str]:
    out = []
    for op in chain:
        if isinstance(op, BaseOp):
            out.append(
                f"base on {op.surface}: "
                + ", ".join(format_compact(A) for A in op.entries)
            )
        elif isinstance(op, AugmentOp):
            out.append(
                f"augment at slot {op.slot} inserting "
                f"{format_compact(op.exceptional)} on {op.surface}"
            )
        elif isinstance(op, PermOp):
            out.append(f"transpose at {op.index}")
        elif isinstance(op, ShiftOp):
            out.append(f"shift by {op.steps}")
    return out


def _system_key(A: ToricSystem):
    return (A.surface.lattice, A.surface.r_irr, A.entries)


def _standard_chains(A: ToricSystem, dead: set):
    """Yield every standard-augmentation chain for A, reusing a shared set
    of states already proven dead."""
    if A.surface.lattice.rank <= 2:
        yield [BaseOp(A.surface, A.entries)]
        return
    key = _system_key(A)
    if key in dead:
        return
    found = False
    irr = set(irreducible_minus_one_classes(A.surface))
    for m in range(1, A.n + 1):
        if A.entry(m) not in irr:
            continue
        smaller, bd = blow_down_toric(A, m)
        for sub in _standard_chains(smaller, dead):
            found = True
            yield sub + [AugmentOp(m, A.surface, bd.exceptional, bd.embed)]
    if not found:
        dead.add(key)


def is_standard_augmentation(
    s: SurfaceType, A: ToricSystem, all_chains: bool = False
) -> SearchResult:
    """Backtracking over entries that are irreducible (-1)-curves; the base
    case is any surface of Picard rank <= 2."""
    gen = _standard_chains(A, set())
    chains = list(gen) if all_chains else [c for c in [next(gen, None)] if c]
    if not chains:
        irr = set(irreducible_minus_one_classes(s))
        if not any(E in irr for E in A.entries):
            reason = "no entry is the class of an irreducible (-1)-curve"
        else:
            reason = "every contraction branch fails"
        return SearchResult(False, reason=reason)
    for chain in chains:
        assert replay(chain).entries == A.entries
    result = SearchResult(True, chain=chains[0])
    result.all_chains = chains if all_chains else None
    return result


def _exposures(A: ToricSystem, E: DivisorClass, all_shifts: bool):
    """Ways to make E an entry: (shift, perm word, slot) triples built from
    the segments representing E with one square -1 entry among square -2
    entries.  Each word only transposes inside the segment, which the shift
    first places inside slots 1..n-1."""
    from .toric import segment_sum

    n = A.n
    for k, l, m in candidate_segments(A):
        if segment_sum(A, k, l) != E:
            continue
        length = (l - k) % n + 1
        valid = []
        for t in range(n):
            k2 = (k - t - 1) % n + 1
            l2 = k2 + length - 1
            if l2 <= n - 1:
                valid.append((t, k2, l2))
        if not all_shifts:
            valid = valid[:1]
        for t, k2, l2 in valid:
            m2 = k2 + (m - k) % n
            word = list(range(k2, m2)) + list(range(l2, m2, -1))
            yield t, word, m2


def _augmentation_search(
    s: SurfaceType,
    A: ToricSystem,
    grade: str | None,
    along: list | None = None,
    all_chains: bool = False,
) -> SearchResult:
    """Shared engine for weak and graded augmentation decisions.

    grade None = weak sense (no intermediate checks); otherwise every
    intermediate system must pass the grade's checker.  `along` prescribes
    the contraction class at each level.
    """
    checker = _GRADE_CHECKERS[grade] if grade else None
    dead = set()

    def passes(cur):
        return checker is None or checker(cur.surface, cur).ok

    def search(cur: ToricSystem, depth: int):
        if cur.surface.lattice.rank <= 2:
            yield [BaseOp(cur.surface, cur.entries)]
            return
        key = (_system_key(cur), depth)
        if key in dead:
            return
        from .toric import segment_sum

        irr = set(irreducible_minus_one_classes(cur.surface))
        targets = {
            segment_sum(cur, k, l) for k, l, _ in candidate_segments(cur)
        } & irr
        if along is not None:
            targets &= {along[depth]}
        found = False
        for E in sorted(targets, key=lambda D: D.coeffs):
            for t, word, slot in _exposures(cur, E, all_shifts=grade is not None):
                stage = [] if t == 0 else [ShiftOp((cur.n - t) % cur.n)]
                b = shift(cur, t)
                if t and not passes(b):
                    continue
                ok = True
                perm_ops = []
                for k in word:
                    b = perm(b, k)
                    perm_ops.append(PermOp(k))
                    if not passes(b):
                        ok = False
                        break
                if not ok:
                    continue
                assert b.entry(slot) == E
                smaller, bd = blow_down_toric(b, slot)
                if not passes(smaller):
                    continue
                for sub in search(smaller, depth + 1):
                    found = True
                    forward = sub + [
                        AugmentOp(slot, b.surface, bd.exceptional, bd.embed)
                    ]
                    forward += [PermOp(op.index) for op in reversed(perm_ops)]
                    forward += stage
                    yield forward
        if not found:
            dead.add(key)

    if checker is not None and not checker(s, A).ok:
        raise ValueError(f"system is not {grade} exceptional")
    gen = search(A, 0)
    chains = list(gen) if all_chains else [c for c in [next(gen, None)] if c]
    if not chains:
        irr = set(irreducible_minus_one_classes(s))
        from .toric import candidate_positions

        if not candidate_positions(A) & irr:
            reason = (
                "no irreducible (-1)-curve is exposable by transpositions"
            )
        else:
            reason = "every branch fails"
        return SearchResult(False, reason=reason)
    for chain in chains:
        assert replay(chain).entries == A.entries
    result = SearchResult(True, chain=chains[0])
    result.all_chains = chains if all_chains else None
    return result


def is_weak_augmentation(
    s: SurfaceType,
    A: ToricSystem,
    along: list | None = None,
    all_chains: bool = False,
) -> SearchResult:
    """Obtainable from a system on a minimal surface by augmentations,
    transpositions and cyclic shifts in any order."""
    return _augmentation_search(s, A, None, along=along, all_chains=all_chains)


def is_graded_augmentation(
    s: SurfaceType,
    A: ToricSystem,
    grade: str,
    along: list | None = None,
    all_chains: bool = False,
) -> SearchResult:
    """As the weak search, but every intermediate system must keep the
    given exceptionality grade ('exceptional', 'strong' or 'cyclic')."""
    if grade not in GRADES:
        raise ValueError(f"grade must be one of {GRADES}")
    return _augmentation_search(s, A, grade, along=along, all_chains=all_chains)
