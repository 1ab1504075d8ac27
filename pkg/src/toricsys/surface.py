"""Weak del Pezzo surface types and their derived curve data.

A surface type is a Picard lattice together with the set of classes of
irreducible (-2)-curves (simple roots of an ADE configuration).  Everything
else -- effective (-2)-classes, strong-left-orthogonal (-2)-classes,
irreducible (-1)-classes -- is derived from that data.  The built-in
registry covers all types of degree 9 down to 3 plus one degree-2 type;
further types can be supplied from data files of the same schema.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .classes import minus_one_classes, minus_two_classes, reflection_word
from .lattice import (
    BLOWUP,
    HIRZEBRUCH,
    DivisorClass,
    LatticeMap,
    PicardLattice,
    blowup_lattice,
    hirzebruch_lattice,
    is_r_class,
    lattice_from_name,
)


@dataclass(frozen=True)
class SurfaceType:
    """A weak del Pezzo surface type: lattice plus simple (-2)-roots."""

    lattice: PicardLattice
    r_irr: tuple  # DivisorClass tuple, in definition order
    name: str | None = field(default=None, compare=False)

    @property
    def degree(self) -> int:
        return self.lattice.degree

    def __str__(self):
        return self.name or f"surface({self.lattice}, {len(self.r_irr)} roots)"


def make_surface(lattice: PicardLattice, r_irr, name=None) -> SurfaceType:
    """Validate and build a surface type.

    Requires: degree >= 2 (Hirzebruch parameter <= 2, else -K is not nef),
    every given class a (-2)-class, pairwise products in {0, 1}, and an ADE
    configuration.
    """
    if lattice.degree < 2:
        raise ValueError("surface types of degree <= 1 are not supported")
    if lattice.kind == HIRZEBRUCH and lattice.d > 2:
        raise ValueError(
            f"F{lattice.d} is not a weak del Pezzo surface (d <= 2 required)"
        )
    roots = tuple(
        C if isinstance(C, DivisorClass) else DivisorClass(lattice, C) for C in r_irr
    )
    if len(set(roots)) != len(roots):
        raise ValueError("repeated simple root")
    for C in roots:
        if C.lattice != lattice:
            raise ValueError("simple root over a different lattice")
        if not is_r_class(C, -2):
            raise ValueError(f"{C} is not a (-2)-class")
    for i, C in enumerate(roots):
        for D in roots[i + 1 :]:
            if C.dot(D) not in (0, 1):
                raise ValueError(
                    f"simple roots {C} and {D} meet in {C.dot(D)} points"
                )
    s = SurfaceType(lattice, roots, name)
    dynkin_components(s)  # raises on non-ADE configurations
    return s


# ---------------------------------------------------------------------------
# Dynkin configuration


def _component_type(adj: dict, nodes: list) -> str:
    degs = {v: len(adj[v]) for v in nodes}
    if any(d > 3 for d in degs.values()):
        raise ValueError("vertex of degree > 3: not an ADE graph")
    branch = [v for v in nodes if degs[v] == 3]
    k = len(nodes)
    if not branch:
        if k > 1 and sum(1 for v in nodes if degs[v] == 1) != 2:
            raise ValueError("cycle in the root configuration: not an ADE graph")
        return f"A{k}"
    if len(branch) > 1:
        raise ValueError("two branch vertices: not an ADE graph")
    b = branch[0]
    arms = []
    for start in adj[b]:
        length, prev, cur = 1, b, start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            if len(nxt) > 1:
                raise ValueError("nested branching: not an ADE graph")
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[:2] == [1, 1]:
        return f"D{k}"
    if arms == [1, 2, 2]:
        return "E6"
    if arms == [1, 2, 3]:
        return "E7"
    if arms == [1, 2, 4]:
        return "E8"
    raise ValueError(f"arm lengths {arms}: not an ADE graph")


@lru_cache(maxsize=None)
def dynkin_components(s: SurfaceType) -> tuple[str, ...]:
    """Component types of the simple-root incidence graph, sorted."""
    roots = s.r_irr
    n = len(roots)
    adj = {i: [] for i in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            if roots[i].dot(roots[j]) == 1:
                adj[i].append(j)
                adj[j].append(i)
    seen = set()
    comps = []
    for v in range(n):
        if v in seen:
            continue
        stack, nodes = [v], []
        seen.add(v)
        while stack:
            cur = stack.pop()
            nodes.append(cur)
            for w in adj[cur]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(_component_type(adj, nodes))
    return tuple(sorted(comps, key=lambda t: (t[0], int(t[1:]))))


def gamma_string(s: SurfaceType) -> str:
    """Configuration label such as '2A1+A3'; '0' for no (-2)-curves."""
    comps = dynkin_components(s)
    if not comps:
        return "0"
    parts = []
    for t in sorted(set(comps), key=lambda t: (int(t[1:]), t[0])):
        c = comps.count(t)
        parts.append(t if c == 1 else f"{c}{t}")
    return "+".join(parts)


POSITIVE_ROOT_COUNTS = {"A": lambda k: k * (k + 1) // 2, "D": lambda k: k * (k - 1)}


def expected_positive_roots(s: SurfaceType) -> int:
    total = 0
    for t in dynkin_components(s):
        letter, k = t[0], int(t[1:])
        if letter in POSITIVE_ROOT_COUNTS:
            total += POSITIVE_ROOT_COUNTS[letter](k)
        else:
            total += {6: 36, 7: 63, 8: 120}[k]
    return total


# ---------------------------------------------------------------------------
# derived sets


@lru_cache(maxsize=None)
def effective_minus_two_classes(s: SurfaceType) -> tuple[DivisorClass, ...]:
    """Positive roots of the configuration: closure of the simple roots
    under addition of simple roots, filtered by square -2."""
    current = set(s.r_irr)
    frontier = list(current)
    while frontier:
        nxt = []
        for p in frontier:
            for a in s.r_irr:
                q = p + a
                if q.dot(q) == -2 and q not in current:
                    current.add(q)
                    nxt.append(q)
        frontier = nxt
    return tuple(sorted(current, key=lambda D: D.coeffs))


@lru_cache(maxsize=None)
def effective_root_set(s: SurfaceType) -> frozenset:
    return frozenset(effective_minus_two_classes(s))


@lru_cache(maxsize=None)
def slo_minus_two_classes(s: SurfaceType) -> tuple[DivisorClass, ...]:
    """(-2)-classes that are neither effective nor anti-effective."""
    eff = set(effective_minus_two_classes(s))
    eff |= {-D for D in eff}
    return tuple(D for D in minus_two_classes(s.lattice) if D not in eff)


@lru_cache(maxsize=None)
def irreducible_minus_one_classes(s: SurfaceType) -> tuple[DivisorClass, ...]:
    """(-1)-classes pairing non-negatively with every irreducible
    (-2)-curve; these are exactly the classes of irreducible (-1)-curves."""
    return tuple(
        D
        for D in minus_one_classes(s.lattice)
        if all(D.dot(C) >= 0 for C in s.r_irr)
    )


def negative_curves(s: SurfaceType) -> tuple[DivisorClass, ...]:
    return irreducible_minus_one_classes(s) + s.r_irr


@lru_cache(maxsize=None)
def root_decomposition_data(s: SurfaceType):
    """Inverse Gram matrix of the simple roots, for exact membership tests
    in the non-negative integer span of the roots."""
    roots = s.r_irr
    m = len(roots)
    gram = [[Fraction(roots[i].dot(roots[j])) for j in range(m)] for i in range(m)]
    # invert by Gauss-Jordan; the Gram matrix of simple roots is nonsingular
    inv = [[Fraction(1 if i == j else 0) for j in range(m)] for i in range(m)]
    for col in range(m):
        piv = next(r for r in range(col, m) if gram[r][col] != 0)
        gram[col], gram[piv] = gram[piv], gram[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        f = gram[col][col]
        gram[col] = [x / f for x in gram[col]]
        inv[col] = [x / f for x in inv[col]]
        for r in range(m):
            if r != col and gram[r][col]:
                f = gram[r][col]
                gram[r] = [a - f * b for a, b in zip(gram[r], gram[col])]
                inv[r] = [a - f * b for a, b in zip(inv[r], inv[col])]
    return inv


def root_combination(s: SurfaceType, D: DivisorClass):
    """Non-negative integer coefficients expressing D over the simple roots,
    or None.  The simple roots are linearly independent, so the candidate
    coefficient vector is unique and found by solving the Gram system."""
    roots = s.r_irr
    if D.is_zero():
        return (0,) * len(roots)
    if not roots:
        return None
    inv = root_decomposition_data(s)
    rhs = [D.dot(C) for C in roots]
    coeffs = [sum(row[j] * rhs[j] for j in range(len(roots))) for row in inv]
    if any(c.denominator != 1 or c < 0 for c in coeffs):
        return None
    total = s.lattice.zero()
    for c, C in zip(coeffs, roots):
        total = total + int(c) * C
    return tuple(int(c) for c in coeffs) if total == D else None


# ---------------------------------------------------------------------------
# blow-down


@dataclass(frozen=True)
class BlowDown:
    """Contraction of an irreducible (-1)-curve, with the coordinate maps.

    `embed` is the form-preserving pullback from the smaller lattice; it
    sends the new canonical class K' to K - E.  `push` is the push-forward;
    push(embed(x)) = x and push(E) = 0.
    """

    surface: SurfaceType
    exceptional: DivisorClass
    embed: LatticeMap
    push: LatticeMap


def _conjugated_drop_maps(lattice, word, target_lattice):
    """Maps for contracting the last exceptional after applying the
    reflection word (each reflection is its own inverse)."""

    def push_class(D):
        for r in word:
            D = D + D.dot(r) * r
        return DivisorClass(target_lattice, D.coeffs[:-1])

    def embed_class(D):
        out = DivisorClass(lattice, tuple(D.coeffs) + (0,))
        for r in reversed(word):
            out = out + out.dot(r) * r
        return out

    rank_s, rank_t = lattice.rank, target_lattice.rank
    push_cols = tuple(
        push_class(DivisorClass(lattice, tuple(1 if j == i else 0 for j in range(rank_s)))).coeffs
        for i in range(rank_s)
    )
    embed_cols = tuple(
        embed_class(DivisorClass(target_lattice, tuple(1 if j == i else 0 for j in range(rank_t)))).coeffs
        for i in range(rank_t)
    )
    return (
        LatticeMap(lattice, target_lattice, push_cols),
        LatticeMap(target_lattice, lattice, embed_cols),
    )


def _hirzebruch_landing(s: SurfaceType, E: DivisorClass) -> BlowDown:
    """Contraction on a rank-3 lattice whose target is not a blow-up of the
    plane: the orthogonal complement of E carries two ruling classes H1, H2
    with H1^2 = H2^2 = 0, H1.H2 = 1, identifying it with a Hirzebruch
    lattice (parameter 0 without roots, 2 with the surviving root)."""
    lat = s.lattice
    L = lat.basis_class(0)
    # E is in the reflection orbit of L - E1 - E2; the rulings are the two
    # classes H with H^2 = 0, H.(-K') = 2 orthogonal to E
    h_candidates = [
        H
        for H in _zero_square_fiber_classes(lat)
        if H.dot(E) == 0
    ]
    assert len(h_candidates) == 2, "expected exactly two ruling classes"
    H1, H2 = h_candidates
    assert H1.dot(H2) == 1
    kept = [C for C in s.r_irr if C.dot(E) == 0]
    if not kept:
        target_lat = hirzebruch_lattice(0)
        # coordinates (f, s) with F = H1, S = H2: f = D.H2, s = D.H1
        def push_coeffs(D):
            return (D.dot(H2), D.dot(H1))

        def embed_of(f, s_):
            return f * H1 + s_ * H2

        roots_out = ()
    else:
        assert len(kept) == 1
        rho = kept[0]
        if rho == H1 - H2:
            H1, H2 = H2, H1  # normalize so that rho = H2 - H1
        assert rho == H2 - H1
        target_lat = hirzebruch_lattice(2)
        # F -> H1, S -> H1 + H2 so that S - 2F -> H2 - H1 = rho
        def push_coeffs(D):
            sc = D.dot(H1)
            return (D.dot(H2) - sc, sc)

        def embed_of(f, s_):
            return (f + s_) * H1 + s_ * H2

        roots_out = (DivisorClass(target_lat, (-2, 1)),)

    push_cols = tuple(
        push_coeffs(lat.basis_class(i)) for i in range(lat.rank)
    )
    embed_cols = (embed_of(1, 0).coeffs, embed_of(0, 1).coeffs)
    push = LatticeMap(lat, target_lat, push_cols)
    embed = LatticeMap(target_lat, lat, embed_cols)
    surface2 = make_surface(target_lat, roots_out)
    return BlowDown(surface2, E, embed, push)


@lru_cache(maxsize=None)
def _zero_square_fiber_classes(lattice):
    from .classes import enumerate_classes

    return enumerate_classes(lattice, 0, -2)


def blow_down(s: SurfaceType, E: DivisorClass) -> BlowDown:
    """Contract the irreducible (-1)-curve E.  The result is a surface type
    of degree one higher on a standard lattice, with the surviving simple
    roots pushed forward."""
    if E not in irreducible_minus_one_classes(s):
        raise ValueError(f"{E} is not the class of an irreducible (-1)-curve")
    lat = s.lattice
    if lat.kind != BLOWUP or lat.n == 0:
        raise ValueError(f"no contraction available on {lat}")
    target_lat = blowup_lattice(lat.n - 1)
    last = lat.exceptional(lat.n)
    word = reflection_word(lat, E, last)
    if word is None:
        # only on rank 3: E lies in the orbit of L - E1 - E2, the target is
        # a Hirzebruch surface
        return _hirzebruch_landing(s, E)
    push, embed = _conjugated_drop_maps(lat, word, target_lat)
    kept = [push.apply(C) for C in s.r_irr if C.dot(E) == 0]
    surface2 = make_surface(target_lat, kept)
    assert embed.apply(surface2.lattice.canonical_class) == lat.canonical_class - E
    return BlowDown(surface2, E, embed, push)


def blow_down_chains(s: SurfaceType):
    """All maximal chains of contractions, as lists of BlowDown steps."""
    out = []

    def walk(cur, prefix):
        exts = irreducible_minus_one_classes(cur)
        if cur.lattice.rank <= 2 or not exts:
            out.append(list(prefix))
            return
        for E in exts:
            bd = blow_down(cur, E)
            prefix.append(bd)
            walk(bd.surface, prefix)
            prefix.pop()

    walk(s, [])
    return out


# ---------------------------------------------------------------------------
# registry and classification


def _load_registry_entries(path=None):
    if path is None:
        text = resources.files("toricsys.data").joinpath("registry.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    return json.loads(text)["surfaces"]


@lru_cache(maxsize=None)
def surface_registry() -> dict[str, SurfaceType]:
    reg = {}
    for entry in _load_registry_entries():
        lat = lattice_from_name(entry["lattice"])
        s = make_surface(lat, entry["r_irr"], name=entry["label"])
        if "lines" in entry:
            assert len(irreducible_minus_one_classes(s)) == entry["lines"], (
                f"registry self-check failed for {entry['label']}"
            )
        reg[entry["label"]] = s
    return reg


def load_extra_surfaces(path) -> dict[str, SurfaceType]:
    """Load user-supplied surface types from a data file with the registry
    schema.  Types of degree <= 2 are accepted unvalidated beyond the lattice
    axioms."""
    reg = {}
    for entry in _load_registry_entries(path):
        lat = lattice_from_name(entry["lattice"])
        s = make_surface(lat, entry["r_irr"], name=entry["label"])
        if "lines" in entry:
            assert len(irreducible_minus_one_classes(s)) == entry["lines"]
        reg[entry["label"]] = s
    return reg


def get_surface(label: str, extra: dict | None = None) -> SurfaceType:
    reg = surface_registry()
    if extra and label in extra:
        return extra[label]
    if label in reg:
        return reg[label]
    raise KeyError(f"unknown surface label {label!r}")


def registry_labels() -> list[str]:
    return list(surface_registry())


def classify_type(s: SurfaceType) -> str:
    """Label '(degree),(configuration)[,(line count)]' matching the registry
    entry with the same degree, Dynkin configuration and number of
    irreducible (-1)-curves; a descriptive 'unregistered' string otherwise."""
    d = s.degree
    comps = dynkin_components(s)
    m = len(irreducible_minus_one_classes(s))
    for label, t in surface_registry().items():
        if (
            t.degree == d
            and dynkin_components(t) == comps
            and len(irreducible_minus_one_classes(t)) == m
            and t.lattice.kind == s.lattice.kind
            and t.lattice == s.lattice
        ):
            return label
    return f"unregistered(degree={d}, configuration={gamma_string(s)}, lines={m})"
