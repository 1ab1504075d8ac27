"""Toric systems: cyclic sequences of divisor classes with consecutive
products one, all other products zero, summing to the anticanonical class.

Indices are 1-based and cyclic throughout.  Transpositions, cyclic shifts,
one-step augmentations along a blow-up and their inverses all live here,
together with the set of (-1)-classes exposable by transpositions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import BLOWUP, HIRZEBRUCH, DivisorClass, LatticeMap, format_compact
from .surface import (
    BlowDown,
    SurfaceType,
    blow_down,
    irreducible_minus_one_classes,
    make_surface,
)


class InvalidToricSystem(ValueError):
    pass


@dataclass(frozen=True)
class ToricSystem:
    surface: SurfaceType
    entries: tuple  # DivisorClass tuple, cyclically ordered

    @property
    def n(self) -> int:
        return len(self.entries)

    def entry(self, i: int) -> DivisorClass:
        """1-based cyclic access."""
        return self.entries[(i - 1) % self.n]

    def squares(self) -> tuple[int, ...]:
        return tuple(A.dot(A) for A in self.entries)

    def __str__(self):
        return "(" + ", ".join(format_compact(A) for A in self.entries) + ")"


def validate(surface: SurfaceType, entries) -> ToricSystem:
    """Check the toric-system axioms; raise InvalidToricSystem naming the
    first violated condition."""
    entries = tuple(
        A if isinstance(A, DivisorClass) else DivisorClass(surface.lattice, A)
        for A in entries
    )
    n = len(entries)
    expected = 12 - surface.degree
    if n != expected:
        raise InvalidToricSystem(
            f"length {n}, expected rank(Pic) + 2 = {expected}"
        )
    for A in entries:
        if A.lattice != surface.lattice:
            raise InvalidToricSystem("entry over a different lattice")
    for i in range(n):
        for j in range(i, n):
            prod = entries[i].dot(entries[j])
            neighbors = (j - i) % n in (1, n - 1)
            if i == j:
                continue
            if neighbors and prod != 1:
                raise InvalidToricSystem(
                    f"A{i + 1}.A{j + 1} = {prod}, expected 1"
                )
            if not neighbors and prod != 0:
                raise InvalidToricSystem(
                    f"A{i + 1}.A{j + 1} = {prod}, expected 0"
                )
    total = surface.lattice.zero()
    for A in entries:
        total = total + A
    if total != -surface.lattice.canonical_class:
        raise InvalidToricSystem(
            f"sum is {format_compact(total)}, expected the anticanonical class"
        )
    return ToricSystem(surface, entries)


def is_valid(surface: SurfaceType, entries) -> bool:
    try:
        validate(surface, entries)
        return True
    except InvalidToricSystem:
        return False


# ---------------------------------------------------------------------------
# segments


def cyclic_segments(n: int):
    """All cyclic segments (k, l), 1-based, excluding the full circle."""
    for k in range(1, n + 1):
        for length in range(1, n):
            yield k, (k + length - 2) % n + 1


def segment_indices(n: int, k: int, l: int) -> list[int]:
    if not (1 <= k <= n and 1 <= l <= n):
        raise ValueError(f"segment ({k}, {l}) out of range 1..{n}")
    if k % n == (l + 1) % n:
        raise ValueError(f"({k}, {l}) is the full circle, not a segment")
    if k <= l:
        return list(range(k, l + 1))
    return list(range(k, n + 1)) + list(range(1, l + 1))


def segment_sum(A: ToricSystem, k: int, l: int) -> DivisorClass:
    total = A.surface.lattice.zero()
    for i in segment_indices(A.n, k, l):
        total = total + A.entries[i - 1]
    return total


def squares(A: ToricSystem) -> tuple[int, ...]:
    return A.squares()


# ---------------------------------------------------------------------------
# shifts and transpositions


def shift(A: ToricSystem, steps: int = 1) -> ToricSystem:
    """Cyclic shift: one step sends (A1, ..., An) to (A2, ..., An, A1)."""
    t = steps % A.n
    return ToricSystem(A.surface, A.entries[t:] + A.entries[:t])


def perm(A: ToricSystem, k: int) -> ToricSystem:
    """Transposition at position k, defined when A_k^2 = -2: fold A_k into
    both neighbors and negate it.  An involution preserving the squares."""
    n = A.n
    if not 1 <= k <= n:
        raise ValueError(f"index {k} out of range 1..{n}")
    Ak = A.entries[k - 1]
    if Ak.dot(Ak) != -2:
        raise ValueError(f"A{k} has square {Ak.dot(Ak)}, transposition needs -2")
    new = list(A.entries)
    new[k - 1] = -Ak
    new[(k - 2) % n] = A.entries[(k - 2) % n] + Ak
    new[k % n] = A.entries[k % n] + Ak
    return ToricSystem(A.surface, tuple(new))


# ---------------------------------------------------------------------------
# augmentation along a blow-up and its inverse


def _standard_extension(surface: SurfaceType, target: SurfaceType):
    """Embedding data when target's lattice is the one-more-point blow-up of
    surface's lattice in standard coordinates."""
    lat, tlat = surface.lattice, target.lattice
    if lat.kind != BLOWUP or tlat.kind != BLOWUP or tlat.n != lat.n + 1:
        raise ValueError(
            f"{tlat} is not the standard one-point extension of {lat}"
        )
    cols = tuple(
        tuple(1 if j == i else 0 for j in range(tlat.rank)) for i in range(lat.rank)
    )
    embed = LatticeMap(lat, tlat, cols)
    E = tlat.exceptional(tlat.n)
    return E, embed


def augment_lattice(
    A: ToricSystem,
    m: int,
    target: SurfaceType,
    exceptional: DivisorClass | None = None,
    embed: LatticeMap | None = None,
) -> ToricSystem:
    """One-step augmentation: pull the entries back to the blow-up, insert
    the exceptional class at slot m (1 <= m <= n+1) and subtract it from the
    two cyclic neighbors of that slot.

    Without explicit embedding data the target must be the standard
    one-point extension; compatibility is checked by contracting the
    exceptional curve on the target and comparing surfaces.
    """
    n = A.n
    if not 1 <= m <= n + 1:
        raise ValueError(f"slot {m} out of range 1..{n + 1}")
    if exceptional is None or embed is None:
        exceptional, embed = _standard_extension(A.surface, target)
        bd = blow_down(target, exceptional)
        if bd.surface.lattice != A.surface.lattice or set(bd.surface.r_irr) != set(
            A.surface.r_irr
        ):
            raise ValueError(
                f"{target} does not contract along {format_compact(exceptional)} "
                f"to {A.surface}"
            )
    pulled = [embed.apply(entry) for entry in A.entries]
    pulled.insert(m - 1, exceptional)
    size = n + 1
    pulled[(m - 2) % size] = pulled[(m - 2) % size] - exceptional
    pulled[m % size] = pulled[m % size] - exceptional
    return validate(target, pulled)


def blow_down_toric(
    A: ToricSystem, m: int, lattice_mode: bool = False
) -> tuple[ToricSystem, BlowDown]:
    """Inverse of augment_lattice at slot m: requires A_m to be the class of
    an irreducible (-1)-curve (any (-1)-class with lattice_mode=True, in
    which case the contraction still needs an irreducible representative to
    exist).  Returns the unique system that augments back to A."""
    n = A.n
    E = A.entry(m)
    if E.dot(E) != -1:
        raise ValueError(f"A{m} has square {E.dot(E)}, not -1")
    if not lattice_mode and E not in irreducible_minus_one_classes(A.surface):
        raise ValueError(f"A{m} = {format_compact(E)} is not an irreducible curve")
    bd = blow_down(A.surface, E)
    ordered = [None] * (n - 1)
    for offset in range(1, n):
        cls = A.entries[(m - 1 + offset) % n]
        if offset in (1, n - 1):
            cls = cls + E
        # entry at old slot m+offset is the de-augmented entry m+offset-1,
        # reduced cyclically into 1..n-1
        ordered[(m - 1 + offset - 1) % (n - 1)] = bd.push.apply(cls)
    small = validate(bd.surface, ordered)
    return small, bd


# ---------------------------------------------------------------------------
# exposable (-1)-classes


def candidate_segments(A: ToricSystem):
    """Cyclic segments carrying exactly one entry of square -1 and
    otherwise squares -2; their sums are the (-1)-classes exposable as
    entries after transpositions."""
    sq = A.squares()
    n = A.n
    out = []
    for k, l in cyclic_segments(n):
        idx = segment_indices(n, k, l)
        minus_one = [i for i in idx if sq[i - 1] == -1]
        if len(minus_one) == 1 and all(
            sq[i - 1] == -2 for i in idx if i != minus_one[0]
        ):
            out.append((k, l, minus_one[0]))
    return out


def candidate_positions(A: ToricSystem) -> set[DivisorClass]:
    """The set of (-1)-classes occurring as entries of some transposition of
    the system."""
    return {segment_sum(A, k, l) for k, l, _ in candidate_segments(A)}


# ---------------------------------------------------------------------------
# base systems on minimal surfaces


def base_system(surface: SurfaceType, twist: int = 0) -> ToricSystem:
    """A toric system on a rank <= 2 surface: (L, L, L) on the plane, the
    fiber-section family (F, S + tF, F, S - (d+t)F) on a Hirzebruch surface
    (with the one-point blow-up of the plane treated through its fiber
    L - E1 and section L)."""
    lat = surface.lattice
    if lat.kind == BLOWUP and lat.n == 0:
        L = lat.basis_class(0)
        return validate(surface, [L, L, L])
    if lat.kind == BLOWUP and lat.n == 1:
        L = lat.basis_class(0)
        F = L - lat.exceptional(1)
        return validate(
            surface, [F, L + twist * F, F, L - (1 + twist) * F]
        )
    if lat.kind == HIRZEBRUCH and lat.n == 0:
        F = lat.basis_class(0)
        S = lat.basis_class(1)
        return validate(
            surface, [F, S + twist * F, F, S - (lat.d + twist) * F]
        )
    raise ValueError(f"no base toric system on {surface}")
