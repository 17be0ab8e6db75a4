"""Exact counting of homomorphism classes into compact classical targets.

A homomorphism from a finite subgroup of SU(2) into U(n), SU(n), Sp(n),
O(2n+1), ... is a direct sum of irreducibles, so its class is a multiplicity
vector subject to target-specific constraints: nothing for U; trivial
determinant for SU; even multiplicity on strictly real summands and matched
conjugate pairs for Sp; even multiplicity on pseudoreal summands for O; the
determinant condition again for SO.  Everything here is counted by bounded
lattice-point iteration over those vectors in the canonical irreducible
order; closed-form series live in a separate module precisely so the two
routes stay independent checks of each other.

The binary octahedral group is the one exceptional case with a nontrivial
two-torsion refinement: its symplectic and orthogonal counts split into
sectors with a relabeling involution acting, and those sector dimensions
(fixed/moved counts) drive the Spin(2n+1) and PSp(n) counts as well as the
finite character tables used by the swap-equivalence report.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .abgroup import AbGroup
from .cyclotomic import Cyc
from .errors import NotCoveredError
from .grouprep import (
    COMPLEX,
    CYCLIC,
    DIHEDRAL,
    ICOSAHEDRAL,
    OCTAHEDRAL,
    PSEUDOREAL,
    REAL,
    TETRAHEDRAL,
    GroupSpec,
    abelianization,
    irreps,
    sw_of_multiplicity_vector,
    tensor_with_onedim,
    twisted_irreps,
    twisted_x_action,
)

TARGET_FAMILIES = ("U", "SU", "PU", "Sp", "O_odd", "SO_odd", "Spin_odd", "PSp")
_ODD_FAMILIES = ("O_odd", "SO_odd", "Spin_odd")


@dataclass(frozen=True)
class Target:
    """A target group family with its size parameter.

    For the odd orthogonal families the matrix size is 2n + 1; for the
    unitary families it is n; for Sp and PSp, n is the quaternionic rank.
    """

    family: str
    n: int

    def __post_init__(self):
        if self.family not in TARGET_FAMILIES:
            raise ValueError(
                f"unknown target family {self.family!r}; choose from {TARGET_FAMILIES}")
        if not isinstance(self.n, int) or self.n < 0:
            raise ValueError("target size must be a nonnegative integer")

    @property
    def label(self) -> str:
        base = {"O_odd": "O", "SO_odd": "SO", "Spin_odd": "Spin"}.get(
            self.family, self.family)
        size = 2 * self.n + 1 if self.family in _ODD_FAMILIES else self.n
        return f"{base}({size})"

    @classmethod
    def parse(cls, text: str) -> "Target":
        """Accepts 'Sp:3' or 'Sp(3)'; odd families take n, not 2n+1."""
        text = text.strip()
        if ":" in text:
            fam, _, num = text.partition(":")
        elif text.endswith(")") and "(" in text:
            fam, _, num = text[:-1].partition("(")
        else:
            raise ValueError(f"cannot parse target {text!r}; use e.g. 'Sp:3'")
        try:
            return cls(fam.strip(), int(num))
        except ValueError as exc:
            raise ValueError(f"cannot parse target {text!r}: {exc}") from None


def _iter_vectors(weights, total):
    """Nonnegative integer vectors v with sum(v[i] * weights[i]) == total."""
    n = len(weights)
    if n == 0:
        if total == 0:
            yield ()
        return
    v = [0] * n

    def rec(i, rem):
        w = weights[i]
        if i == n - 1:
            if rem % w == 0:
                v[i] = rem // w
                yield tuple(v)
            return
        for c in range(rem // w + 1):
            v[i] = c
            yield from rec(i + 1, rem - c * w)

    yield from rec(0, total)


# -- constraint slots ----------------------------------------------------------
#
# A "slot" is one free coordinate of the constrained solution set: a strictly
# real irreducible counted in steps of two for symplectic targets, a matched
# conjugate pair counted once, and so on.  Building symplectic and orthogonal
# slots from the (dim, reality, partner) data keeps one rule serving both the
# standard and the twisted irreducibles.


@dataclass(frozen=True)
class _Slot:
    names: tuple[str, ...]
    step: int  # multiplicity added to each named irrep per unit
    weight: int  # dimension contributed per unit
    det: tuple[int, ...] | None


def _slot_det(group_ab, info, copies: int):
    el = getattr(info, "det_element", None)
    if el is None:
        return None
    return group_ab.scale(copies, el)


def _pair_det(group_ab, a, b):
    ea = getattr(a, "det_element", None)
    eb = getattr(b, "det_element", None)
    if ea is None or eb is None:
        return None
    return group_ab.add(ea, eb)


def _build_slots(infos, group_ab, even_reality: str):
    """Slots for one quadratic structure.

    even_reality is the reality type forced to even multiplicity (REAL for
    symplectic targets, PSEUDOREAL for orthogonal ones); the opposite type is
    free and conjugate pairs are matched.
    """
    slots = []
    seen = set()
    for info in infos:
        if info.name in seen:
            continue
        if info.reality == COMPLEX:
            partner = next(i for i in infos if i.name == info.partner)
            seen.add(partner.name)
            slots.append(_Slot((info.name, partner.name), 1,
                               info.dim + partner.dim,
                               _pair_det(group_ab, info, partner)))
        elif info.reality == even_reality:
            slots.append(_Slot((info.name,), 2, 2 * info.dim,
                               _slot_det(group_ab, info, 2)))
        else:
            slots.append(_Slot((info.name,), 1, info.dim,
                               _slot_det(group_ab, info, 1)))
    return tuple(slots)


def _symplectic_slots(g: GroupSpec):
    return _build_slots(irreps(g), abelianization(g).group, REAL)


def _orthogonal_slots(g: GroupSpec):
    return _build_slots(irreps(g), abelianization(g).group, PSEUDOREAL)


def _vector_as_dict(slots, vec) -> dict[str, int]:
    mv = {}
    for slot, c in zip(slots, vec):
        if not c:
            continue
        for name in slot.names:
            mv[name] = mv.get(name, 0) + slot.step * c
    return mv


def _vector_det(group_ab, slots, vec):
    acc = group_ab.identity
    for slot, c in zip(slots, vec):
        if c:
            acc = group_ab.add(acc, group_ab.scale(c, slot.det))
    return acc


def multiplicity_vectors(g: GroupSpec, t: Target):
    """Enumerate solution vectors as name -> multiplicity dicts.

    Covers the families whose classes are plain constrained multiplicity
    vectors (U, SU, Sp, O_odd, SO_odd); the quotient and covering-group
    families count orbits or sectors instead of vectors.
    """
    ab = abelianization(g)
    if t.family in ("U", "SU"):
        infos = irreps(g)
        weights = tuple(i.dim for i in infos)
        for vec in _iter_vectors(weights, t.n):
            if t.family == "SU":
                det = ab.group.identity
                for info, c in zip(infos, vec):
                    if c:
                        det = ab.group.add(det, ab.group.scale(c, info.det_element))
                if det != ab.group.identity:
                    continue
            yield {i.name: c for i, c in zip(infos, vec) if c}
        return
    if t.family == "Sp":
        slots = _symplectic_slots(g)
        for vec in _iter_vectors(tuple(s.weight for s in slots), 2 * t.n):
            yield _vector_as_dict(slots, vec)
        return
    if t.family in ("O_odd", "SO_odd"):
        slots = _orthogonal_slots(g)
        for vec in _iter_vectors(tuple(s.weight for s in slots), 2 * t.n + 1):
            if t.family == "SO_odd":
                if _vector_det(ab.group, slots, vec) != ab.group.identity:
                    continue
            yield _vector_as_dict(slots, vec)
        return
    raise NotCoveredError(
        f"not covered: {t.family} classes are not plain multiplicity vectors")


def _onedim_permutation(g: GroupSpec, element) -> tuple[int, ...]:
    """Permutation of canonical irrep indices given by tensoring with the
    1-dim character at the given abelianization element."""
    ab = abelianization(g)
    infos = irreps(g)
    index = {info.name: k for k, info in enumerate(infos)}
    onedim = ab.name_of[tuple(element)]
    return tuple(index[tensor_with_onedim(g, info.name, onedim)] for info in infos)


def _pu_count(g: GroupSpec, n: int) -> int:
    # Burnside over the character group acting on unitary solutions by
    # tensoring: fixed vectors are constant on each permutation orbit, so
    # they are enumerated directly on orbit-collapsed weights.
    ab = abelianization(g)
    infos = irreps(g)
    total = 0
    for a in ab.group.elements():
        perm = _onedim_permutation(g, a)
        orbit_weights = []
        seen = set()
        for start in range(len(perm)):
            if start in seen:
                continue
            w = 0
            j = start
            while j not in seen:
                seen.add(j)
                w += infos[j].dim
                j = perm[j]
            orbit_weights.append(w)
        total += sum(1 for _ in _iter_vectors(tuple(orbit_weights), n))
    assert total % ab.group.order == 0
    return total // ab.group.order


# -- octahedral sector machinery -------------------------------------------------


@dataclass(frozen=True)
class SectorCount:
    """Solution counts in one two-torsion sector.

    fixed counts classes fixed by the relabeling involution, moved counts the
    rest (always even: they come in swapped pairs on the symplectic side and
    in double covers' class pairs on the orthogonal side).
    """

    w: int
    fixed: int
    moved: int

    def __post_init__(self):
        if self.moved % 2:
            raise ValueError("moved classes must pair up")

    @property
    def dim_v0(self) -> int:
        return self.fixed + self.moved // 2

    @property
    def dim_v1(self) -> int:
        return self.moved // 2


def _require_octahedral(g: GroupSpec, what: str):
    if g.family != OCTAHEDRAL:
        raise NotCoveredError(f"not covered: {what} requires Ohat, got {g.label}")


def _oct_sp_sector(n: int, w: int) -> SectorCount:
    g = GroupSpec.binary_octahedral()
    if w == 1:
        # twisted solutions; the involution relabels within matched pairs,
        # so it fixes every solution
        slots = _build_slots(twisted_irreps(g), abelianization(g).group, REAL)
        action = twisted_x_action(g)
        for slot in slots:
            assert set(action[nm] for nm in slot.names) == set(slot.names)
        count = sum(1 for _ in _iter_vectors(tuple(s.weight for s in slots), 2 * n))
        return SectorCount(1, count, 0)
    slots = _symplectic_slots(g)
    name_to_slot = {s.names[0]: k for k, s in enumerate(slots)}
    perm = tuple(name_to_slot[tensor_with_onedim(g, s.names[0], "1'")] for s in slots)
    fixed = moved = 0
    for vec in _iter_vectors(tuple(s.weight for s in slots), 2 * n):
        if all(vec[k] == vec[perm[k]] for k in range(len(vec))):
            fixed += 1
        else:
            moved += 1
    return SectorCount(0, fixed, moved)


def _oct_spin_sectors(n: int) -> dict[int, SectorCount]:
    g = GroupSpec.binary_octahedral()
    ab = abelianization(g)
    slots = _orthogonal_slots(g)
    weights = tuple(s.weight for s in slots)
    counts = {0: [0, 0], 1: [0, 0]}  # sector -> [fixed, moved]
    for vec in _iter_vectors(weights, 2 * n + 1):
        if _vector_det(ab.group, slots, vec) != ab.group.identity:
            continue
        mv = _vector_as_dict(slots, vec)
        c = (mv.get("1'", 0) - mv.get("3'", 0) + mv.get("2''", 0)) % 4
        assert c % 2 == 0
        sector = c // 2
        fixed = mv.get("2''", 0) > 0 or (
            mv.get("1", 0) + mv.get("3", 0) > 0
            and mv.get("1'", 0) + mv.get("3'", 0) > 0)
        if fixed:
            counts[sector][0] += 1
        else:
            counts[sector][1] += 2
    return {w: SectorCount(w, f, m) for w, (f, m) in counts.items()}


def count_twisted(g: GroupSpec, family: str, n: int, w: int) -> SectorCount:
    """Fixed/moved class counts of one sector of the refined count."""
    if family not in ("Sp", "Spin_odd"):
        raise ValueError("sector counts exist for the Sp and Spin_odd families")
    _require_octahedral(g, "sector counting")
    if w not in (0, 1):
        raise ValueError("sector label must be 0 or 1")
    if n < 0:
        raise ValueError("size must be nonnegative")
    if family == "Sp":
        return _oct_sp_sector(n, w)
    return _oct_spin_sectors(n)[w]


def sector_of_so_rep(mv: dict[str, int]) -> int:
    """Two-torsion sector of an orthogonal multiplicity vector for Ohat.

    Computed two independent ways, which must agree: (a) the mod-4 congruence
    on the multiplicities of 1', 3' and 2''; (b) the Whitney-sum obstruction
    class of the direct sum.
    """
    g = GroupSpec.binary_octahedral()
    infos = {i.name: i for i in irreps(g)}
    ab = abelianization(g)
    det = ab.group.identity
    for name, mult in mv.items():
        if name not in infos:
            raise ValueError(f"Ohat has no irreducible named {name!r}")
        if mult < 0:
            raise ValueError("multiplicities must be nonnegative")
        if infos[name].reality == PSEUDOREAL and mult % 2:
            raise ValueError(
                f"orthogonal vectors need even multiplicity on {name}")
        det = ab.group.add(det, ab.group.scale(mult, infos[name].det_element))
    if det != ab.group.identity:
        raise ValueError("not special orthogonal: nontrivial determinant")
    congruence = (mv.get("1'", 0) - mv.get("3'", 0) + mv.get("2''", 0)) % 4
    by_congruence = congruence // 2
    sw = sw_of_multiplicity_vector(g, {k: v for k, v in mv.items() if v})
    assert sw.w1 == 0
    if sw.w2 != by_congruence:
        raise RuntimeError(
            f"sector routes disagree on {mv}: {sw.w2} vs {by_congruence}")
    return by_congruence


# -- main counting entry -----------------------------------------------------------


def count_homs(g: GroupSpec, t: Target) -> int:
    """Number of conjugacy classes of homomorphisms from g into the target."""
    if t.family in ("U", "SU", "Sp", "O_odd", "SO_odd"):
        return sum(1 for _ in multiplicity_vectors(g, t))
    if t.family == "PU":
        return _pu_count(g, t.n)
    ab = abelianization(g)
    if t.family == "Spin_odd":
        if t.n == 0:
            # Spin(1) is the two-element group
            return len(ab.group.kernel_of_scaling(2))
        if g.family == CYCLIC:
            from . import lattice

            return lattice.weyl_orbit_count(
                lattice.cartan_data("B", t.n), "sc", g.param)
        if g.family in (TETRAHEDRAL, ICOSAHEDRAL):
            # no two-torsion obstruction: covers add nothing
            return count_homs(g, Target("SO_odd", t.n))
        if g.family == OCTAHEDRAL:
            s = _oct_spin_sectors(t.n)[0]
            return s.fixed + s.moved
        raise NotCoveredError(
            f"not covered: Spin counts for {g.label} need the dihedral "
            "refinement, which is out of scope")
    if t.family == "PSp":
        if t.n == 0:
            qmod, reps, _ = ab.group.quotient_by_scaling(2)
            return len(reps)
        if g.family == CYCLIC:
            from . import lattice

            return lattice.weyl_orbit_count(
                lattice.cartan_data("C", t.n), "adj", g.param)
        if g.family in (TETRAHEDRAL, ICOSAHEDRAL):
            return count_homs(g, Target("Sp", t.n))
        if g.family == OCTAHEDRAL:
            total = 0
            for w in (0, 1):
                s = _oct_sp_sector(t.n, w)
                total += s.fixed + s.moved // 2
            return total
        raise NotCoveredError(
            f"not covered: PSp counts for {g.label} need the dihedral "
            "refinement, which is out of scope")
    raise AssertionError(t.family)


# -- finite character tables and the swap report -----------------------------------


@dataclass(frozen=True)
class FRepCharacter:
    """Character table of the finite grading symmetries on a counting space.

    Rows are twisting elements z (kernel of n-scaling on the relevant
    character group), columns are sector characters w-hat; both are indexed
    by the elements of AbGroup(grading_moduli) in canonical order, and the
    isomorphism types of the two gradings coincide for every covered case.
    """

    label: str
    center_moduli: tuple[int, ...]
    grading_moduli: tuple[int, ...]
    values: tuple[tuple[Cyc, ...], ...]

    def grading_group(self) -> AbGroup:
        return AbGroup(self.grading_moduli)

    def value(self, z, w) -> Cyc:
        els = self.grading_group().elements()
        return self.values[els.index(tuple(z))][els.index(tuple(w))]

    def dim(self) -> int:
        v = self.values[0][0].rational()
        assert v.denominator == 1
        return int(v)


def _su_f_rep(g: GroupSpec, n: int) -> FRepCharacter:
    ab = abelianization(g)
    A = ab.group
    gcds = tuple(gcd(d, n) for d in A.moduli)
    G0 = AbGroup(gcds)
    qmod, reps, class_of = A.quotient_by_scaling(n)
    assert qmod == gcds
    transversal = set(reps)
    z_elements = G0.elements()
    embed = {
        z: tuple(zi * (d // gi) for zi, d, gi in zip(z, A.moduli, gcds))
        for z in z_elements
    }
    perms = {z: _onedim_permutation(g, embed[z]) for z in z_elements}
    infos = irreps(g)
    counts = {z: {w: 0 for w in reps} for z in z_elements}
    for vec in _iter_vectors(tuple(i.dim for i in infos), n):
        det = A.identity
        for info, c in zip(infos, vec):
            if c:
                det = A.add(det, A.scale(c, info.det_element))
        if det not in transversal:
            continue
        w = class_of[det]
        for z in z_elements:
            perm = perms[z]
            if all(vec[k] == vec[perm[k]] for k in range(len(vec))):
                counts[z][w] += 1
    values = tuple(
        tuple(
            sum(
                (G0.pairing(what, w, conductor=n) * Cyc.from_rational(c)
                 for w, c in counts[z].items() if c),
                Cyc.from_rational(0),
            )
            for what in z_elements
        )
        for z in z_elements
    )
    return FRepCharacter("su", (n,), gcds, values)


def _two_torsion_f_rep(label: str, sectors: dict[int, SectorCount]) -> FRepCharacter:
    values = []
    for eps in (0, 1):
        row = []
        for delta in (0, 1):
            acc = 0
            for m, s in sectors.items():
                weight = -1 if (delta * m) % 2 else 1
                acc += weight * (s.fixed if eps else s.fixed + s.moved)
            row.append(Cyc.from_rational(acc))
        values.append(tuple(row))
    return FRepCharacter(label, (2,), (2,), tuple(values))


def f_rep_character(g: GroupSpec, side: str, n: int) -> FRepCharacter:
    """Finite character table acting on the graded counting space.

    side "su": any group, center Z_n gauged inside U(n); side "sp" and
    "spin": the octahedral two-torsion refinement of Sp(n) and Spin(2n+1).
    """
    if n < 0 or (side == "su" and n < 1):
        raise ValueError("size out of range")
    if side == "su":
        return _su_f_rep(g, n)
    if side == "sp":
        _require_octahedral(g, "the symplectic-side table")
        return _two_torsion_f_rep(
            "sp", {w: _oct_sp_sector(n, w) for w in (0, 1)})
    if side == "spin":
        _require_octahedral(g, "the orthogonal-side table")
        return _two_torsion_f_rep("spin", _oct_spin_sectors(n))
    raise ValueError("side must be 'su', 'sp' or 'spin'")


def _matrix_map(mat, moduli):
    def apply(e):
        return tuple(
            sum(mat[i][j] * e[j] for j in range(len(e))) % m
            for i, m in enumerate(moduli))

    return apply


def _identifications(moduli):
    """Candidate (name, row-map, column-map) pairings between K and its dual.

    The duality pairing is only pinned down up to convention: the default is
    the coordinatewise one, and composing with inversion gives an equivalent
    action.  When K is the Klein four-group the coordinatewise choice is
    itself arbitrary, so the remaining nonsingular symmetric pairings are
    tried as well.
    """
    G = AbGroup(moduli)
    out = [
        ("standard", lambda e: e, lambda e: e),
        ("inv", G.neg, G.neg),
    ]
    if moduli == (2, 2):
        cross = ((0, 1), (1, 0))
        shear = ((1, 1), (1, 0))
        shear_inv = ((0, 1), (1, 1))
        out.append(("cross", _matrix_map(cross, moduli),
                    _matrix_map(cross, moduli)))
        out.append(("cross-shear", _matrix_map(shear_inv, moduli),
                    _matrix_map(shear, moduli)))
        out.append(("shear-cross", _matrix_map(shear, moduli),
                    _matrix_map(shear_inv, moduli)))
    return out


def tables_swap_equivalent(t1: FRepCharacter, t2: FRepCharacter):
    """First identification under which t1(z, w) == t2(s(w), s'(z)), or None."""
    if t1.grading_moduli != t2.grading_moduli:
        return None
    els = AbGroup(t1.grading_moduli).elements()
    index = {e: k for k, e in enumerate(els)}
    for name, row_map, col_map in _identifications(t1.grading_moduli):
        ok = all(
            t1.values[i][j] == t2.values[index[row_map(what)]][index[col_map(z)]]
            for i, z in enumerate(els)
            for j, what in enumerate(els))
        if ok:
            return name
    return None


def verify_swap_equivalence(g: GroupSpec, pair, n: int) -> dict:
    """Compare the two sides' finite character tables under the swap.

    pair is ("SU", "PU") for the unitary story or ("Sp", "Spin_odd") for the
    two-torsion one.  The report carries the identification that matched
    ("standard", the inv-composed variant, or an alternative Klein-four
    pairing), or None on failure.
    """
    pair = tuple(pair)
    report = {"gamma": g.label, "pair": "/".join(pair), "n": n}
    if pair == ("SU", "PU"):
        table = f_rep_character(g, "su", n)
        ident = tables_swap_equivalent(table, table)
    elif pair == ("Sp", "Spin_odd"):
        if g.family == OCTAHEDRAL:
            ident = tables_swap_equivalent(
                f_rep_character(g, "sp", n), f_rep_character(g, "spin", n))
        elif g.family in (TETRAHEDRAL, ICOSAHEDRAL):
            # no two-torsion grading: the tables are the single numbers
            # N(Sp(n)) and N(Spin(2n+1))
            same = (
                count_homs(g, Target("Sp", n)) == count_homs(g, Target("Spin_odd", n))
                and count_homs(g, Target("PSp", n))
                == count_homs(g, Target("SO_odd", n)))
            ident = "trivial" if same else None
        elif g.family == CYCLIC:
            if n == 0:
                raise NotCoveredError(
                    "not covered: rank-zero targets have no lattice model")
            from . import lattice

            sp = lattice.refined_zn_characters("C", n, "sc", g.param)
            spin = lattice.refined_zn_characters("B", n, "sc", g.param)
            ident = tables_swap_equivalent(sp, spin)
        else:
            raise NotCoveredError(
                "not covered: the dihedral two-torsion refinement is out of scope")
    else:
        raise ValueError("pair must be (SU, PU) or (Sp, Spin_odd)")
    report["equivalent"] = ident is not None
    report["identification"] = ident
    return report


# -- JSON-friendly rows -------------------------------------------------------------


def count_row(g: GroupSpec, t: Target) -> dict:
    return {"gamma": g.label, "target": t.family, "n": t.n,
            "count": count_homs(g, t)}


def sector_row(g: GroupSpec, family: str, n: int, w: int) -> dict:
    s = count_twisted(g, family, n, w)
    return {"gamma": g.label, "n": n, "w": s.w, "fixed": s.fixed,
            "moved": s.moved, "dimV0": s.dim_v0, "dimV1": s.dim_v1}
