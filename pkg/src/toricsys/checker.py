"""Left-orthogonality of single classes and the three exceptionality
predicates for toric systems on weak del Pezzo surfaces.

Single classes are decided purely by effectiveness tests depending on the
square.  Toric systems have a fast path that only inspects segments of
consecutive square minus-two entries, and a general path that tests
(strong) left-orthogonality of every relevant segment sum; both are exposed
and can be cross-checked.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import DivisorClass, format_compact, is_numerically_left_orthogonal
from .surface import SurfaceType
from .effective import is_effective, zariski_reduce
from .toric import ToricSystem, cyclic_segments, segment_indices, segment_sum, shift


def is_left_orthogonal(s: SurfaceType, D: DivisorClass) -> bool:
    """All cohomology of -D vanishes.  Decided from r = D^2:
    r <= -2: -D not effective; -1 <= r <= d-3: always; r >= d-2: K + D not
    effective."""
    if not is_numerically_left_orthogonal(D):
        raise ValueError(f"{format_compact(D)} is not numerically left-orthogonal")
    r = D.dot(D)
    d = s.degree
    if r <= -2:
        return not is_effective(s, -D)
    if r <= d - 3:
        return True
    return not is_effective(s, s.lattice.canonical_class + D)


def is_strong_left_orthogonal(s: SurfaceType, D: DivisorClass) -> bool:
    """Left-orthogonal with no higher cohomology of D itself.  By square:
    r <= -3: never; r = -2: neither D nor -D effective; -1 <= r <= d-3:
    always; r >= d-2: K + D not effective."""
    if not is_numerically_left_orthogonal(D):
        raise ValueError(f"{format_compact(D)} is not numerically left-orthogonal")
    r = D.dot(D)
    d = s.degree
    if r <= -3:
        return False
    if r == -2:
        return not is_effective(s, D) and not is_effective(s, -D)
    if r <= d - 3:
        return True
    return not is_effective(s, s.lattice.canonical_class + D)


@dataclass
class CheckResult:
    ok: bool
    mode: str
    path: str
    witness: dict | None = None

    def __bool__(self):
        return self.ok


def _fail(mode, path, s, segment, D, reason) -> CheckResult:
    cert = zariski_reduce(s, D if reason == "effective" else -D) if reason in (
        "effective",
        "anti-effective",
    ) else None
    return CheckResult(
        False,
        mode,
        path,
        {
            "segment": segment,
            "class": format_compact(D),
            "reason": reason,
            "certificate": cert.describe() if cert else None,
        },
    )


def _minus_two_run_segments(sq, last):
    """Segments [k..l], 1 <= k <= l <= last, whose entries all have
    square -2."""
    for k in range(1, last + 1):
        if sq[k - 1] != -2:
            continue
        l = k
        while l <= last and sq[l - 1] == -2:
            yield k, l
            l += 1


def _fast_exceptional(A: ToricSystem) -> CheckResult:
    """Valid when entries 1..n-1 all have square >= -2: only sums over runs
    of square -2 entries can obstruct, and only through anti-effectiveness."""
    s = A.surface
    sq = A.squares()
    n = A.n
    for k, l in _minus_two_run_segments(sq, n - 1):
        D = segment_sum(A, k, l)
        if is_effective(s, -D):
            return _fail("exceptional", "fast", s, (k, l), D, "anti-effective")
    if sq[n - 1] <= -2:
        # wrap-around segments through slot n flanked by square -2 entries
        for k in range(n, 0, -1):
            if k < n and sq[k - 1] != -2:
                break
            for l in range(0, k - 1):
                if l > 0 and sq[l - 1] != -2:
                    break
                D = segment_sum(A, k, l) if l else segment_sum(A, k, n)
                if is_effective(s, -D):
                    seg = (k, l if l else n)
                    return _fail("exceptional", "fast", s, seg, D, "anti-effective")
    return CheckResult(True, "exceptional", "fast")


def _fast_strong(A: ToricSystem) -> CheckResult:
    base = _fast_exceptional(A)
    if not base.ok:
        return CheckResult(False, "strong", "fast", base.witness)
    s = A.surface
    sq = A.squares()
    for k, l in _minus_two_run_segments(sq, A.n - 1):
        D = segment_sum(A, k, l)
        if is_effective(s, D):
            return _fail("strong", "fast", s, (k, l), D, "effective")
    return CheckResult(True, "strong", "fast")


def _fast_cyclic(A: ToricSystem) -> CheckResult:
    s = A.surface
    sq = A.squares()
    n = A.n
    if min(sq) < -2:
        i = sq.index(min(sq)) + 1
        return CheckResult(
            False,
            "cyclic",
            "fast",
            {"segment": (i, i), "class": format_compact(A.entry(i)),
             "reason": f"entry square {min(sq)} < -2", "certificate": None},
        )
    for k, l in cyclic_segments(n):
        if any(sq[i - 1] != -2 for i in segment_indices(n, k, l)):
            continue
        D = segment_sum(A, k, l)
        if is_effective(s, -D):
            return _fail("cyclic", "fast", s, (k, l), D, "anti-effective")
        if is_effective(s, D):
            return _fail("cyclic", "fast", s, (k, l), D, "effective")
    return CheckResult(True, "cyclic", "fast")


def _general_exceptional(A: ToricSystem) -> CheckResult:
    s = A.surface
    for k in range(1, A.n):
        for l in range(k, A.n):
            D = segment_sum(A, k, l)
            if not is_left_orthogonal(s, D):
                return _fail("exceptional", "general", s, (k, l), D,
                             "not left-orthogonal")
    return CheckResult(True, "exceptional", "general")


def _general_strong(A: ToricSystem) -> CheckResult:
    s = A.surface
    for k in range(1, A.n):
        for l in range(k, A.n):
            D = segment_sum(A, k, l)
            if not is_strong_left_orthogonal(s, D):
                return _fail("strong", "general", s, (k, l), D,
                             "not strong left-orthogonal")
    return CheckResult(True, "strong", "general")


def _general_cyclic(A: ToricSystem) -> CheckResult:
    s = A.surface
    for k, l in cyclic_segments(A.n):
        D = segment_sum(A, k, l)
        if not is_strong_left_orthogonal(s, D):
            return _fail("cyclic", "general", s, (k, l), D,
                         "not strong left-orthogonal")
    return CheckResult(True, "cyclic", "general")


def _dispatch(A, mode, path, fast_fn, general_fn, fast_ok) -> CheckResult:
    if path == "fast":
        if not fast_ok:
            raise ValueError(f"fast path not applicable to squares {A.squares()}")
        return fast_fn(A)
    if path == "general":
        return general_fn(A)
    if path == "both":
        general = general_fn(A)
        if fast_ok:
            fast = fast_fn(A)
            assert fast.ok == general.ok, (
                f"fast/general disagreement for {mode} on {A}"
            )
        return general
    # auto
    return fast_fn(A) if fast_ok else general_fn(A)


def is_exceptional(s: SurfaceType, A: ToricSystem, path: str = "auto") -> CheckResult:
    """Exceptionality of the associated collection.  Shift-invariant; the
    fast path applies once some shift has squares >= -2 off its last slot."""
    sq = A.squares()
    fast_ok = min(sq[:-1]) >= -2
    if path in ("auto", "fast") and not fast_ok:
        bad = [i for i, v in enumerate(sq) if v <= -3]
        if len(bad) == 1:
            A = shift(A, bad[0] + 1)  # rotate the deep entry into the last slot
            fast_ok = True
    return _dispatch(A, "exceptional", path, _fast_exceptional,
                     _general_exceptional, fast_ok)


def is_strong_exceptional(
    s: SurfaceType, A: ToricSystem, path: str = "auto"
) -> CheckResult:
    sq = A.squares()
    fast_ok = min(sq[:-1]) >= -2
    return _dispatch(A, "strong", path, _fast_strong, _general_strong, fast_ok)


def is_cyclic_strong_exceptional(
    s: SurfaceType, A: ToricSystem, path: str = "auto"
) -> CheckResult:
    fast_ok = True  # the fast path itself rejects squares below -2
    return _dispatch(A, "cyclic", path, _fast_cyclic, _general_cyclic, fast_ok)
