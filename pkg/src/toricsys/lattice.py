"""Exact Picard-lattice arithmetic for rational surfaces.

Two kinds of lattices appear: blow-ups of the projective plane with basis
L, E1, ..., En (the plane itself is the n = 0 case) and Hirzebruch surfaces
with basis F, S, optionally extended by exceptional classes.  Every
computation is integer-exact; there is no floating point anywhere in this
package.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

BLOWUP = "blowup"
HIRZEBRUCH = "hirzebruch"

# K^2 = 9 - n must stay positive on a blow-up of the plane.
MAX_BLOWUPS = 8


class LatticeMismatch(ValueError):
    """Combining divisor classes that live over different lattices."""


@dataclass(frozen=True)
class PicardLattice:
    """Basis descriptor plus intersection form and canonical class.

    kind = "blowup": rank n+1, basis L, E1..En, n <= 8.
    kind = "hirzebruch": rank 2+n, basis F, S, E1..En, with F^2 = 0,
    F.S = 1, S^2 = d.  The extension by exceptionals only arises as the
    target of `hirzebruch_isometry`.
    """

    kind: str
    n: int = 0
    d: int = 0

    def __post_init__(self):
        if self.kind == BLOWUP:
            if not 0 <= self.n <= MAX_BLOWUPS:
                raise ValueError(f"blow-up count {self.n} outside 0..{MAX_BLOWUPS}")
            if self.d != 0:
                raise ValueError("blow-up lattices take no Hirzebruch parameter")
        elif self.kind == HIRZEBRUCH:
            if self.d < 0:
                raise ValueError("Hirzebruch parameter must be >= 0")
            if not 0 <= self.n <= 7:
                raise ValueError("at most 7 exceptionals keep K^2 positive")
        else:
            raise ValueError(f"unknown lattice kind {self.kind!r}")

    @property
    def rank(self) -> int:
        return self.n + 1 if self.kind == BLOWUP else self.n + 2

    @property
    def basis_names(self) -> tuple[str, ...]:
        if self.kind == BLOWUP:
            return ("L",) + tuple(f"E{i}" for i in range(1, self.n + 1))
        return ("F", "S") + tuple(f"E{i}" for i in range(1, self.n + 1))

    def gram(self, i: int, j: int) -> int:
        if self.kind == BLOWUP:
            if i != j:
                return 0
            return 1 if i == 0 else -1
        # Hirzebruch: indices 0 = F, 1 = S, >= 2 exceptionals
        if i > j:
            i, j = j, i
        if i == 0:
            return 1 if j == 1 else 0
        if i == 1:
            return self.d if j == 1 else 0
        return -1 if i == j else 0

    @property
    def canonical_class(self) -> "DivisorClass":
        if self.kind == BLOWUP:
            coeffs = (-3,) + (1,) * self.n
        else:
            coeffs = (self.d - 2, -2) + (1,) * self.n
        return DivisorClass(self, coeffs)

    @property
    def degree(self) -> int:
        """K^2 of the lattice."""
        if self.kind == BLOWUP:
            return 9 - self.n
        return 8 - self.n

    def zero(self) -> "DivisorClass":
        return DivisorClass(self, (0,) * self.rank)

    def basis_class(self, i: int) -> "DivisorClass":
        coeffs = [0] * self.rank
        coeffs[i] = 1
        return DivisorClass(self, tuple(coeffs))

    def exceptional(self, i: int) -> "DivisorClass":
        """The class E_i (1-based)."""
        offset = 1 if self.kind == BLOWUP else 2
        if not 1 <= i <= self.n:
            raise ValueError(f"no exceptional E{i} on {self}")
        return self.basis_class(offset + i - 1)

    def __str__(self):
        if self.kind == BLOWUP:
            return "P2" if self.n == 0 else f"B{self.n}"
        if self.n == 0:
            return f"F{self.d}"
        return f"F{self.d}+{self.n}exc"


def blowup_lattice(n: int) -> PicardLattice:
    return PicardLattice(BLOWUP, n=n)


def plane_lattice() -> PicardLattice:
    return PicardLattice(BLOWUP, n=0)


def hirzebruch_lattice(d: int, extra: int = 0) -> PicardLattice:
    return PicardLattice(HIRZEBRUCH, n=extra, d=d)


def lattice_from_name(name: str) -> PicardLattice:
    name = name.strip()
    if name.upper() == "P2":
        return plane_lattice()
    m = re.fullmatch(r"[Bb](\d+)", name)
    if m:
        return blowup_lattice(int(m.group(1)))
    m = re.fullmatch(r"[Ff](\d+)", name)
    if m:
        return hirzebruch_lattice(int(m.group(1)))
    raise ValueError(f"cannot parse lattice name {name!r} (expected P2, Bn or Fd)")


class DivisorClass:
    """Integer coefficient vector over a named lattice basis."""

    __slots__ = ("lattice", "coeffs")

    def __init__(self, lattice: PicardLattice, coeffs):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != lattice.rank:
            raise ValueError(
                f"{len(coeffs)} coefficients for rank-{lattice.rank} lattice"
            )
        object.__setattr__(self, "lattice", lattice)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *args):
        raise AttributeError("DivisorClass is immutable")

    def _check(self, other: "DivisorClass"):
        if self.lattice != other.lattice:
            raise LatticeMismatch(
                f"classes over {self.lattice} and {other.lattice}"
            )

    def __add__(self, other):
        self._check(other)
        return DivisorClass(
            self.lattice, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other):
        self._check(other)
        return DivisorClass(
            self.lattice, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self):
        return DivisorClass(self.lattice, tuple(-a for a in self.coeffs))

    def __mul__(self, scalar: int):
        return DivisorClass(self.lattice, tuple(a * int(scalar) for a in self.coeffs))

    __rmul__ = __mul__

    def dot(self, other: "DivisorClass") -> int:
        self._check(other)
        a, b = self.coeffs, other.coeffs
        lat = self.lattice
        if lat.kind == BLOWUP:
            return a[0] * b[0] - sum(x * y for x, y in zip(a[1:], b[1:]))
        d = lat.d
        return (
            a[0] * b[1]
            + a[1] * b[0]
            + d * a[1] * b[1]
            - sum(x * y for x, y in zip(a[2:], b[2:]))
        )

    @property
    def square(self) -> int:
        return self.dot(self)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, DivisorClass)
            and self.lattice == other.lattice
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.lattice, self.coeffs))

    def __lt__(self, other):
        self._check(other)
        return self.coeffs < other.coeffs

    def __repr__(self):
        return f"DivisorClass({self.lattice}, {format_class(self)!r})"

    def __str__(self):
        return format_class(self)


def intersect(a: DivisorClass, b: DivisorClass) -> int:
    """Symmetric bilinear intersection pairing."""
    return a.dot(b)


def euler_char(D: DivisorClass) -> int:
    """Euler characteristic 1 + D.(D - K)/2 of the line bundle O(D)."""
    K = D.lattice.canonical_class
    twice = D.dot(D) - D.dot(K)
    if twice % 2:
        raise ValueError("D.(D-K) is odd; not a surface lattice class")
    return 1 + twice // 2


def is_numerically_left_orthogonal(D: DivisorClass) -> bool:
    """True iff chi(-D) = 0, i.e. D^2 + 2 = -D.K."""
    K = D.lattice.canonical_class
    return D.dot(D) + 2 == -D.dot(K)


def is_r_class(D: DivisorClass, r: int) -> bool:
    """True iff D^2 = r and D.K = -r - 2."""
    K = D.lattice.canonical_class
    return D.dot(D) == r and D.dot(K) == -r - 2


def r_class_value(D: DivisorClass):
    """D^2 if D is an r-class for some r, else None."""
    return D.dot(D) if is_numerically_left_orthogonal(D) else None


def dual_class(D: DivisorClass) -> DivisorClass:
    """-K - D.  If D is an r-class, the result is an r'-class with
    r + r' = deg - 4."""
    if r_class_value(D) is None:
        raise ValueError(f"{D} is not an r-class")
    return -D.lattice.canonical_class - D


@dataclass(frozen=True)
class LatticeMap:
    """Integer-linear map between lattices, stored as basis images."""

    source: PicardLattice
    target: PicardLattice
    columns: tuple  # columns[i] = image of i-th source basis vector (coeff tuple)

    def apply(self, D: DivisorClass) -> DivisorClass:
        if D.lattice != self.source:
            raise LatticeMismatch(f"{D.lattice} is not the source {self.source}")
        out = [0] * self.target.rank
        for c, col in zip(D.coeffs, self.columns):
            if c:
                for i, v in enumerate(col):
                    out[i] += c * v
        return DivisorClass(self.target, out)

    def column_classes(self) -> list[DivisorClass]:
        return [DivisorClass(self.target, col) for col in self.columns]

    def is_isometry(self) -> bool:
        cols = self.column_classes()
        for i in range(self.source.rank):
            for j in range(i, self.source.rank):
                if cols[i].dot(cols[j]) != self.source.gram(i, j):
                    return False
        return True

    def preserves_canonical(self) -> bool:
        return self.apply(self.source.canonical_class) == self.target.canonical_class


def hirzebruch_isometry(d: int, n: int = 0) -> LatticeMap:
    """Form-preserving identification of the blow-up lattice B(n+1) with the
    lattice of a Hirzebruch surface of odd parameter d extended by n
    exceptionals.  Sends L to S - mF and E1 to S - (m+1)F where d = 2m + 1,
    the remaining exceptionals to each other, and K to K.
    """
    if d < 1 or d % 2 == 0:
        raise ValueError("only odd Hirzebruch parameters admit this bridge")
    source = blowup_lattice(n + 1)
    target = hirzebruch_lattice(d, extra=n)
    m = (d - 1) // 2
    cols = []
    rank_t = target.rank
    col_L = [0] * rank_t
    col_L[0], col_L[1] = -m, 1
    cols.append(tuple(col_L))
    col_E1 = [0] * rank_t
    col_E1[0], col_E1[1] = -(m + 1), 1
    cols.append(tuple(col_E1))
    for i in range(n):
        col = [0] * rank_t
        col[2 + i] = 1
        cols.append(tuple(col))
    phi = LatticeMap(source, target, tuple(cols))
    assert phi.is_isometry() and phi.preserves_canonical()
    return phi


# ---------------------------------------------------------------------------
# text forms


_TERM_RE = re.compile(r"^(\d+)?(K|L|F|S|E)(\d*)$")


def format_class(D: DivisorClass) -> str:
    """Canonical text form: signed coefficient-name terms, e.g. '2L - E1 + 3E4'."""
    names = D.lattice.basis_names
    parts = []
    for c, name in zip(D.coeffs, names):
        if c == 0:
            continue
        mag = abs(c)
        term = name if mag == 1 else f"{mag}{name}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f"+ {term}" if c > 0 else f"- {term}")
    return " ".join(parts) if parts else "0"


def format_vector(D: DivisorClass) -> str:
    return "[" + ", ".join(str(c) for c in D.coeffs) + "]"


def format_compact(D: DivisorClass) -> str:
    """Shorthand using index strings: L14 = L - E1 - E4, E25 = E2 + E5.

    Falls back to the canonical form when the class has no such shape.
    """
    lat = D.lattice
    if lat.kind != BLOWUP or lat.n == 0:
        return format_class(D)
    a, bs = D.coeffs[0], D.coeffs[1:]
    if a == 1 and all(b in (0, -1) for b in bs):
        idx = "".join(str(i + 1) for i, b in enumerate(bs) if b == -1)
        return f"L{idx}" if idx else "L"
    if a == 0 and all(b in (0, 1) for b in bs) and any(bs):
        idx = "".join(str(i + 1) for i, b in enumerate(bs) if b == 1)
        return f"E{idx}"
    return format_class(D)


def parse_class(lattice: PicardLattice, text: str) -> DivisorClass:
    """Parse the canonical, vector, or compact shorthand text forms."""
    text = text.strip()
    if text.startswith("["):
        if not text.endswith("]"):
            raise ValueError(f"unterminated vector form {text!r}")
        body = text[1:-1].strip()
        coeffs = [int(t) for t in body.split(",")] if body else []
        return DivisorClass(lattice, coeffs)
    if text == "0":
        return lattice.zero()

    tokens = re.findall(r"[+-]|[^+\-\s]+", text.replace(" ", ""))
    total = [0] * lattice.rank
    sign = 1
    expect_term = True
    names = lattice.basis_names
    index = {name: i for i, name in enumerate(names)}

    def add_term(coeff: int, symbol: str, digits: str):
        if symbol == "K":
            if digits:
                raise ValueError("K takes no index")
            for i, v in enumerate(lattice.canonical_class.coeffs):
                total[i] += coeff * v
            return
        if symbol in ("L", "F", "S"):
            if symbol not in index:
                raise ValueError(f"no basis vector {symbol} on {lattice}")
            total[index[symbol]] += coeff
            if symbol == "L" and digits:
                for ch in digits:
                    name = f"E{ch}"
                    if name not in index:
                        raise ValueError(f"no exceptional {name} on {lattice}")
                    total[index[name]] -= coeff
            elif digits:
                raise ValueError(f"{symbol} takes no index")
            return
        # symbol == "E": digits are a multiset of single-digit indices
        if not digits:
            raise ValueError("bare E without an index")
        for ch in digits:
            name = f"E{ch}"
            if name not in index:
                raise ValueError(f"no exceptional {name} on {lattice}")
            total[index[name]] += coeff

    for tok in tokens:
        if tok == "+":
            if expect_term and sign != 1:
                raise ValueError(f"misplaced sign in {text!r}")
            expect_term = True
            continue
        if tok == "-":
            sign = -sign
            expect_term = True
            continue
        m = _TERM_RE.match(tok)
        if not m:
            raise ValueError(f"cannot parse term {tok!r} in {text!r}")
        coeff_s, symbol, digits = m.groups()
        coeff = sign * (int(coeff_s) if coeff_s else 1)
        add_term(coeff, symbol, digits)
        sign = 1
        expect_term = False
    if expect_term:
        raise ValueError(f"dangling sign in {text!r}")
    return DivisorClass(lattice, total)
