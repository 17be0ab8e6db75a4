"""Root-system lattices, Weyl orbits modulo n, and refined center gradings.

Each simple type is realized on the fundamental-coweight basis.  The
intermediate lattices between the coroot and coweight lattices are given by
integer basis matrices, the simple reflections are conjugated into the
chosen basis and reduced mod n, and Weyl orbits on (1/n)M*/M* are counted
as connected components of the generator graph.  The refined variant grades
the points of (1/n)N*/M* by the quotient Z = N*/M* and packages the result
as the same character-table type the direct constraint enumeration
produces, so the two routes can be compared point for point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .abgroup import AbGroup
from .counting import FRepCharacter
from .cyclotomic import Cyc

__all__ = [
    "CartanData",
    "LatticeQuotient",
    "GradedOrbitSet",
    "cartan_data",
    "lattice_quotient",
    "weyl_orbit_count",
    "weyl_orbit_count_burnside",
    "symmetric_orbit_count",
    "graded_orbits",
    "refined_zn_characters",
    "dual_pairs",
    "verify_zn_duality",
    "zn_duality_row",
]


# -- integer matrix utilities --------------------------------------------------


def _identity_matrix(r):
    return [[int(i == j) for j in range(r)] for i in range(r)]


def _mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0])
    return [
        [sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)]
        for i in range(rows)
    ]


def _mat_vec(a, v):
    return [sum(row[k] * v[k] for k in range(len(v))) for row in a]


def _frac_inverse(mat):
    """Exact inverse of an integer matrix, as Fractions."""
    r = len(mat)
    work = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(r)]
            for i, row in enumerate(mat)]
    for col in range(r):
        pivot = next(i for i in range(col, r) if work[i][col])
        work[col], work[pivot] = work[pivot], work[col]
        inv = 1 / work[col][col]
        work[col] = [x * inv for x in work[col]]
        for i in range(r):
            if i != col and work[i][col]:
                factor = work[i][col]
                work[i] = [x - factor * y for x, y in zip(work[i], work[col])]
    return [row[r:] for row in work]


def _int_inverse(mat):
    inv = _frac_inverse(mat)
    assert all(x.denominator == 1 for row in inv for x in row)
    return [[int(x) for x in row] for row in inv]


def _smith_normal_form(mat):
    """(U, D, V) with U @ mat @ V == D diagonal in divisibility order."""
    a = [list(row) for row in mat]
    r, m = len(a), len(a[0])
    U = _identity_matrix(r)
    V = _identity_matrix(m)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, k):
        for row in a:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    for t in range(min(r, m)):
        while True:
            pivot = None
            for i in range(t, r):
                for j in range(t, m):
                    if a[i][j] and (pivot is None
                                    or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            clean = True
            for i in range(t + 1, r):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, m):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        clean = False
            if not clean:
                continue
            offender = next(
                ((i, j) for i in range(t + 1, r) for j in range(t + 1, m)
                 if a[i][j] % a[t][t]),
                None)
            if offender is None:
                break
            add_row(offender[0], t, 1)
        if t < min(r, m) and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
    return U, a, V


# -- Cartan data ----------------------------------------------------------------


@dataclass(frozen=True)
class CartanData:
    """A simple type on the fundamental-coweight basis.

    cartan[i][j] is the pairing of simple root i with simple coroot j.
    reflections[i] is the matrix of the i-th simple reflection acting on
    coweight coordinates; center_moduli/center_gens present the quotient of
    the coweight lattice by the coroot lattice with explicit lifts.
    """

    type: str
    rank: int
    cartan: tuple
    reflections: tuple
    center_moduli: tuple
    center_gens: tuple


_EXCEPTIONAL_LINKS = {
    ("E", 6): ((0, 2), (1, 3), (2, 3), (3, 4), (4, 5)),
    ("E", 7): ((0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6)),
    ("E", 8): ((0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)),
}


def _build_cartan(letter, rank):
    C = [[2 * int(i == j) for j in range(rank)] for i in range(rank)]

    def link(i, j, cij=-1, cji=-1):
        C[i][j] = cij
        C[j][i] = cji

    if letter in ("A", "B", "C"):
        for i in range(rank - 1):
            link(i, i + 1)
        if rank >= 2 and letter == "B":
            link(rank - 2, rank - 1, -2, -1)
        if rank >= 2 and letter == "C":
            link(rank - 2, rank - 1, -1, -2)
    elif letter == "D":
        for i in range(rank - 2):
            link(i, i + 1)
        link(rank - 3, rank - 1)
    elif letter == "E":
        for i, j in _EXCEPTIONAL_LINKS[("E", rank)]:
            link(i, j)
    elif letter == "F":
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif letter == "G":
        link(0, 1, -1, -3)
    return C


_RANK_RANGES = {"A": (1, None), "B": (1, None), "C": (1, None),
                "D": (3, None), "E": (6, 8), "F": (4, 4), "G": (2, 2)}


def cartan_data(letter: str, rank: int) -> CartanData:
    if letter not in _RANK_RANGES:
        raise ValueError(f"unknown type letter {letter!r}")
    lo, hi = _RANK_RANGES[letter]
    if rank < lo or (hi is not None and rank > hi):
        raise ValueError(f"rank {rank} out of range for type {letter}")
    C = _build_cartan(letter, rank)
    reflections = []
    for i in range(rank):
        S = _identity_matrix(rank)
        for j in range(rank):
            S[j][i] -= C[j][i]
        reflections.append(tuple(tuple(row) for row in S))
    U, D, _ = _smith_normal_form(C)
    Uinv = _int_inverse(U)
    moduli, gens = [], []
    for i in range(rank):
        if D[i][i] != 1:
            moduli.append(D[i][i])
            gens.append(tuple(Uinv[j][i] for j in range(rank)))
    return CartanData(
        type=f"{letter}{rank}",
        rank=rank,
        cartan=tuple(tuple(row) for row in C),
        reflections=tuple(reflections),
        center_moduli=tuple(moduli),
        center_gens=tuple(gens),
    )


# -- lattice choices --------------------------------------------------------------


def _lattice_basis(c: CartanData, choice: str):
    """Basis of the chosen intermediate lattice, columns in coweight coords.

    "adj" is the full coweight lattice, "sc" the coroot lattice; for type D,
    "so" adds the vector class and "hs+"/"hs-" the two spinor classes.
    """
    r = c.rank
    if choice == "adj":
        return _identity_matrix(r)
    if choice == "sc":
        return [list(row) for row in c.cartan]
    letter = c.type[0]
    if letter == "D" and choice in ("so", "hs+", "hs-"):
        if choice == "so":
            extra = [int(j == 0) for j in range(r)]
        else:
            if r % 2:
                raise ValueError(
                    f"half-spin lattices need even rank, got {c.type}")
            node = r - 1 if choice == "hs+" else r - 2
            extra = [int(j == node) for j in range(r)]
        span = [list(row) + [extra[i]] for i, row in enumerate(c.cartan)]
        U, D, _ = _smith_normal_form(span)
        Uinv = _int_inverse(U)
        diag = _mat_mul(Uinv, [row[:r] for row in D])
        return diag
    raise ValueError(f"unknown lattice choice {choice!r} for type {c.type}")


def _basis_reflections(c: CartanData, basis):
    binv = _frac_inverse(basis)
    out = []
    for S in c.reflections:
        M = _mat_mul(_mat_mul(binv, S), basis)
        assert all(x.denominator == 1 for row in M for x in row)
        out.append(tuple(tuple(int(x) for x in row) for row in M))
    return out


@dataclass(frozen=True)
class LatticeQuotient:
    """(Z/moduli)^rank with the Weyl generators reduced to integer matrices."""

    type: str
    lattice: str
    n: int
    moduli: tuple
    generators: tuple

    def points(self):
        return product(*[range(m) for m in self.moduli])

    def size(self) -> int:
        size = 1
        for m in self.moduli:
            size *= m
        return size


def lattice_quotient(c: CartanData, choice: str, n: int) -> LatticeQuotient:
    if n < 1:
        raise ValueError("modulus must be positive")
    gens = _basis_reflections(c, _lattice_basis(c, choice))
    reduced = tuple(
        tuple(tuple(x % n for x in row) for row in S) for S in gens)
    return LatticeQuotient(c.type, choice, n, (n,) * c.rank, reduced)


# -- orbit counting ----------------------------------------------------------------


def _component_count(generators, moduli) -> int:
    """Connected components of the generator graph on the product grid."""
    size = 1
    for m in moduli:
        size *= m
    if size == 1 or not generators:
        return size
    r = len(moduli)
    mods = np.array(moduli, dtype=np.int64)
    radix = np.ones(r, dtype=np.int64)
    for i in range(1, r):
        radix[i] = radix[i - 1] * moduli[i - 1]
    ids = np.arange(size, dtype=np.int64)
    digits = ((ids[:, None] // radix[None, :]) % mods[None, :]).astype(np.int32)
    rows, cols = [], []
    for S in generators:
        M = np.array(S, dtype=np.int32)
        img = digits @ M.T % mods[None, :].astype(np.int32)
        rows.append(ids)
        cols.append(img.astype(np.int64) @ radix)
    graph = coo_matrix(
        (np.ones(size * len(generators), dtype=np.int8),
         (np.concatenate(rows), np.concatenate(cols))),
        shape=(size, size))
    count, _ = connected_components(graph, directed=False)
    return int(count)


def _orbits(generators, moduli, order=None):
    """Orbits as sorted point lists, by breadth-first closure.

    order optionally permutes the seed sequence; the partition (and hence
    everything derived from it) must not depend on it.
    """
    pts = list(product(*[range(m) for m in moduli]))
    if order is not None:
        pts = [pts[i] for i in order]
    r = len(moduli)
    seen = set()
    orbits = []
    for p in pts:
        if p in seen:
            continue
        seen.add(p)
        stack = [p]
        orbit = [p]
        while stack:
            q = stack.pop()
            for S in generators:
                im = tuple(
                    sum(S[j][k] * q[k] for k in range(r)) % moduli[j]
                    for j in range(r))
                if im not in seen:
                    seen.add(im)
                    stack.append(im)
                    orbit.append(im)
        orbits.append(tuple(sorted(orbit)))
    return sorted(orbits)


def weyl_orbit_count(c: CartanData, lattice: str, n: int) -> int:
    """Number of Weyl orbits on (1/n)M*/M* for the chosen lattice M*."""
    q = lattice_quotient(c, lattice, n)
    return _component_count(q.generators, q.moduli)


def weyl_orbit_count_burnside(c: CartanData, lattice: str, n: int) -> int:
    """Independent route: average fixed points over the explicit Weyl group."""
    if c.rank > 3:
        raise ValueError("explicit Weyl enumeration is limited to rank <= 3")
    q = lattice_quotient(c, lattice, n)
    group = {tuple(map(tuple, _identity_matrix(c.rank)))}
    frontier = list(group)
    while frontier:
        nxt = []
        for w in frontier:
            for S in q.generators:
                prod_ = tuple(
                    tuple(sum(S[i][k] * w[k][j] for k in range(c.rank)) % n
                          for j in range(c.rank))
                    for i in range(c.rank))
                if prod_ not in group:
                    group.add(prod_)
                    nxt.append(prod_)
        frontier = nxt
    total = 0
    points = list(q.points())
    for w in group:
        total += sum(
            1 for p in points
            if all(
                sum(w[j][k] * p[k] for k in range(c.rank)) % n == p[j]
                for j in range(c.rank)))
    assert total % len(group) == 0
    return total // len(group)


def symmetric_orbit_count(k: int, n: int) -> int:
    """Orbits of coordinate permutations on (Z/n)^k: the U(k) count."""
    if k < 0 or n < 1:
        raise ValueError("need k >= 0 and n >= 1")
    if k == 0:
        return 1
    gens = []
    for i in range(k - 1):
        S = _identity_matrix(k)
        S[i][i] = S[i + 1][i + 1] = 0
        S[i][i + 1] = S[i + 1][i] = 1
        gens.append(tuple(tuple(row) for row in S))
    return _component_count(tuple(gens), (n,) * k)


# -- refined center grading ----------------------------------------------------------


@dataclass(frozen=True)
class GradedOrbitSet:
    """Weyl orbits on (1/n)N*/M* together with their N*/M*-grades."""

    quotient: LatticeQuotient
    orbits: tuple
    grades: tuple


def _refined_setup(letter: str, rank: int, sublattice: str, n: int):
    c = cartan_data(letter, rank)
    basis = _lattice_basis(c, sublattice)
    U, D, _ = _smith_normal_form(basis)
    zmods = [D[i][i] for i in range(rank) if D[i][i] != 1]
    zrows = [U[i] for i in range(rank) if D[i][i] != 1]
    uinv = _int_inverse(U)
    zgens = [[uinv[j][i] for j in range(rank)]
             for i in range(rank) if D[i][i] != 1]
    scaled = [[n * x for x in row] for row in basis]
    U2, D2, _ = _smith_normal_form(scaled)
    xmods = tuple(D2[i][i] for i in range(rank))
    u2inv = _int_inverse(U2)
    gens = []
    for S in c.reflections:
        M = _mat_mul(_mat_mul(U2, S), u2inv)
        assert all(
            M[j][k] * xmods[k] % xmods[j] == 0
            for j in range(rank) for k in range(rank))
        gens.append(tuple(tuple(row) for row in M))
    grade_rows = [
        [sum(zrow[k] * u2inv[k][j] for k in range(rank)) for j in range(rank)]
        for zrow in zrows
    ]
    quotient = LatticeQuotient(c.type, sublattice, n, xmods, tuple(gens))
    return c, quotient, zmods, zgens, grade_rows, U2


def graded_orbits(letter: str, rank: int, sublattice: str, n: int,
                  order=None) -> GradedOrbitSet:
    """Weyl orbits on (1/n)N*/M*, each graded by its class in Z = N*/M*."""
    if n < 1:
        raise ValueError("modulus must be positive")
    _, quotient, zmods, _, grade_rows, _ = _refined_setup(
        letter, rank, sublattice, n)
    orbits = _orbits(quotient.generators, quotient.moduli, order=order)

    def grade(pt):
        return tuple(
            sum(row[k] * pt[k] for k in range(rank)) % d
            for row, d in zip(grade_rows, zmods))

    grades = []
    for orbit in orbits:
        gs = {grade(p) for p in orbit}
        assert len(gs) == 1  # the grading is Weyl-invariant
        grades.append(gs.pop())
    return GradedOrbitSet(quotient, tuple(orbits), tuple(grades))


def refined_zn_characters(letter: str, rank: int, sublattice: str,
                          n: int) -> FRepCharacter:
    """Character table of the translation/grading action on Weyl orbit sums.

    Z = N*/M* (N* the coweight lattice) grades the points of (1/n)N*/M*;
    elements of Ker(n: Z -> Z) act by translation, characters of Z/nZ by the
    pairing scalar on the grade.  Summing over one transversal of nZ-cosets
    removes the |nZ|-fold repetition, which is asserted along the way.
    """
    if n < 1:
        raise ValueError("modulus must be positive")
    c, quotient, zmods, zgens, grade_rows, U2 = _refined_setup(
        letter, rank, sublattice, n)
    orbits = _orbits(quotient.generators, quotient.moduli)
    xmods = quotient.moduli

    def grade(pt):
        return tuple(
            sum(row[k] * pt[k] for k in range(rank)) % d
            for row, d in zip(grade_rows, zmods))

    orbit_of = {}
    grades = []
    for idx, orbit in enumerate(orbits):
        gs = {grade(p) for p in orbit}
        assert len(gs) == 1
        grades.append(gs.pop())
        for p in orbit:
            orbit_of[p] = idx

    gs_mods = tuple(gcd(d, n) for d in zmods)
    K = AbGroup(gs_mods)
    translations = {}
    for kel in K.elements():
        lift = [0] * rank
        for coord, d, g, gen in zip(kel, zmods, gs_mods, zgens):
            step = coord * (d // g)
            for j in range(rank):
                lift[j] += step * gen[j]
        vec = _mat_vec(U2, [n * x for x in lift])
        translations[kel] = tuple(v % m for v, m in zip(vec, xmods))

    def translate(pt, t):
        return tuple((a + b) % m for a, b, m in zip(pt, t, xmods))

    zgroup = AbGroup(tuple(zmods))
    counts = {}
    for kel, t in translations.items():
        per_grade = {z: 0 for z in zgroup.elements()}
        for idx, orbit in enumerate(orbits):
            if orbit_of[translate(orbit[0], t)] == idx:
                per_grade[grades[idx]] += 1
        counts[kel] = per_grade

    # the grade distribution repeats along nZ-cosets; keep one transversal
    def coset_rep(z):
        return tuple(zi % g for zi, g in zip(z, gs_mods))

    for per_grade in counts.values():
        folded = {}
        for z, v in per_grade.items():
            folded.setdefault(coset_rep(z), set()).add(v)
        assert all(len(vals) == 1 for vals in folded.values())

    reps = [z for z in zgroup.elements() if z == coset_rep(z)]
    values = tuple(
        tuple(
            sum(
                (K.pairing(what, coset_rep(z), conductor=n)
                 * Cyc.from_rational(counts[kel][z])
                 for z in reps if counts[kel][z]),
                Cyc.from_rational(0),
            )
            for what in K.elements()
        )
        for kel in K.elements()
    )
    return FRepCharacter(
        f"{c.type}:{sublattice}", tuple(zmods), gs_mods, values)


# -- dual-pair catalog ---------------------------------------------------------------


_FIXED_LABELS = {
    "G2": ("G", 2, "sc"),
    "F4": ("F", 4, "sc"),
    "E6": ("E", 6, "sc"),
    "E6adj": ("E", 6, "adj"),
    "E7": ("E", 7, "sc"),
    "E7adj": ("E", 7, "adj"),
    "E8": ("E", 8, "sc"),
}

_LABEL_RE = re.compile(r"(SU|PU|Sp|PSp|SO|Spin|PSO|Ss'|Ss)\((\d+)\)")


def _parse_group_label(label: str):
    label = label.strip()
    if label in _FIXED_LABELS:
        return _FIXED_LABELS[label]
    m = _LABEL_RE.fullmatch(label)
    if not m:
        raise ValueError(f"unrecognized group label {label!r}")
    kind, size = m.group(1), int(m.group(2))
    if kind == "SU" and size >= 2:
        return ("A", size - 1, "sc")
    if kind == "PU" and size >= 2:
        return ("A", size - 1, "adj")
    if kind == "Sp" and size >= 1:
        return ("C", size, "sc")
    if kind == "PSp" and size >= 1:
        return ("C", size, "adj")
    if kind == "SO" and size % 2 and size >= 3:
        return ("B", (size - 1) // 2, "adj")
    if kind == "Spin" and size % 2 and size >= 3:
        return ("B", (size - 1) // 2, "sc")
    if kind == "SO" and size % 2 == 0 and size >= 6:
        return ("D", size // 2, "so")
    if kind == "Spin" and size % 2 == 0 and size >= 6:
        return ("D", size // 2, "sc")
    if kind == "PSO" and size % 2 == 0 and size >= 6:
        return ("D", size // 2, "adj")
    if kind in ("Ss", "Ss'") and size % 4 == 0 and size >= 8:
        return ("D", size // 2, "hs+" if kind == "Ss" else "hs-")
    raise ValueError(f"unrecognized group label {label!r}")


def _dual_descriptor(side):
    letter, rank, choice = side
    if letter == "A":
        return ("A", rank, "adj" if choice == "sc" else "sc")
    if letter == "B":
        return ("C", rank, "adj" if choice == "sc" else "sc")
    if letter == "C":
        return ("B", rank, "adj" if choice == "sc" else "sc")
    if letter == "D":
        if choice in ("sc", "adj"):
            return ("D", rank, "adj" if choice == "sc" else "sc")
        if choice == "so":
            return side
        if choice in ("hs+", "hs-"):
            if rank % 4 == 0:
                return side
            return ("D", rank, "hs-" if choice == "hs+" else "hs+")
    if letter in ("G", "F") or (letter == "E" and rank == 8):
        return side
    if letter == "E":
        return ("E", rank, "adj" if choice == "sc" else "sc")
    raise ValueError(f"no dual known for {side}")


def dual_pairs(max_rank: int = 8) -> tuple:
    """Catalog of Langlands dual pairs up to the given rank, as name strings."""
    names = []
    for rank in range(1, max_rank + 1):
        names.append(f"SU({rank + 1})/PU({rank + 1})")
        names.append(f"Sp({rank})/SO({2 * rank + 1})")
        names.append(f"Spin({2 * rank + 1})/PSp({rank})")
    for rank in range(3, max_rank + 1):
        names.append(f"SO({2 * rank})/SO({2 * rank})")
        names.append(f"Spin({2 * rank})/PSO({2 * rank})")
        if rank % 2 == 0:
            if rank % 4 == 0:
                names.append(f"Ss({2 * rank})/Ss({2 * rank})")
            else:
                names.append(f"Ss({2 * rank})/Ss'({2 * rank})")
    for name, (_, rank, _) in _FIXED_LABELS.items():
        if rank <= max_rank and name in ("G2", "F4", "E8"):
            names.append(name)
    if max_rank >= 6:
        names.append("E6/E6adj")
    if max_rank >= 7:
        names.append("E7/E7adj")
    return tuple(names)


def _pair_sides(pair):
    if isinstance(pair, str):
        labels = pair.split("/") if "/" in pair else [pair, pair]
    else:
        labels = list(pair)
    if len(labels) != 2:
        raise ValueError(f"cannot read dual pair from {pair!r}")
    left = _parse_group_label(labels[0])
    right = _parse_group_label(labels[1])
    if _dual_descriptor(left) != right:
        raise ValueError(f"{labels[0]} and {labels[1]} are not Langlands dual")
    return left, right


def verify_zn_duality(pair, n: int) -> bool:
    """Orbit counts of the two sides of a dual pair agree at modulus n."""
    left, right = _pair_sides(pair)
    cl = weyl_orbit_count(cartan_data(left[0], left[1]), left[2], n)
    if right == left:
        return True
    cr = weyl_orbit_count(cartan_data(right[0], right[1]), right[2], n)
    return cl == cr


def zn_duality_row(pair, n: int) -> dict:
    left, right = _pair_sides(pair)
    cl = weyl_orbit_count(cartan_data(left[0], left[1]), left[2], n)
    cr = (cl if right == left
          else weyl_orbit_count(cartan_data(right[0], right[1]), right[2], n))
    name = pair if isinstance(pair, str) else "/".join(pair)
    return {"pair": name, "n": n, "left": cl, "right": cr, "equal": cl == cr}
