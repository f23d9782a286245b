"""Subgroup-level structure for enumerable permutation groups.

Everything here works on element-id sets: the parent group is enumerated
once, each subgroup is carried as a frozenset of element indices, and the
expensive operations (lattice closure, conjugation orbits, intersections)
become set arithmetic. All orderings are deterministic.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass, field
from functools import cached_property

from .errors import (
    BudgetExceeded,
    IndexTooLarge,
    IngestInvalid,
    NoSupplement,
    ParseError,
)
from .groups import DEFAULT_ENUM_CAP, PermGroup
from .perms import Permutation, format_cycles, parse_permutation


@dataclass(frozen=True)
class Limits:
    """Budgets for the operations that can blow up; every overrun raises."""

    enum_cap: int = DEFAULT_ENUM_CAP
    lattice_max_order: int = 5000
    coset_degree_max: int = 20000
    maximality_exhaustive_index: int = 400
    maximality_sample: int = 60


DEFAULT_LIMITS = Limits()


class _Algebra:
    """Element-id arithmetic for one enumerated group."""

    def __init__(self, group: PermGroup, cap: int):
        self.group = group
        self.elems = group.elements(cap)
        self.index = group.element_index
        self.n = len(self.elems)
        self._columns: dict[int, list[int]] = {}

    @cached_property
    def inv(self) -> list[int]:
        return [self.index[p.inverse().images] for p in self.elems]

    def mult(self, a: int, b: int) -> int:
        return self.index[(self.elems[a] * self.elems[b]).images]

    def column(self, g: int) -> list[int]:
        """The right-multiplication map x -> x*g as an id list (cached)."""
        col = self._columns.get(g)
        if col is None:
            pg = self.elems[g]
            col = [self.index[(p * pg).images] for p in self.elems]
            self._columns[g] = col
        return col

    @cached_property
    def gen_ids(self) -> list[int]:
        return sorted({self.index[g.images] for g in self.group.generators} - {0})

    @cached_property
    def conj_maps(self) -> list[list[int]]:
        """For each generator g, the id-map x -> g^-1 x g."""
        maps = []
        for g in self.group.generators:
            maps.append([self.index[p.conjugated_by(g).images] for p in self.elems])
        return maps

    def closure(self, seed_ids, bail_above: int | None = None) -> frozenset[int] | None:
        """Subgroup generated by the given element ids.

        With bail_above set, returns None as soon as the closure exceeds that
        size (then the subgroup can only be the whole group)."""
        gens = sorted(set(seed_ids) - {0})
        out = {0}
        frontier = [0]
        if self.n <= 2048:
            # column maps amortize over the many closures of lattice work
            cols = [self.column(g) for g in gens]
            while frontier:
                new = []
                for x in frontier:
                    for col in cols:
                        y = col[x]
                        if y not in out:
                            out.add(y)
                            new.append(y)
                if bail_above is not None and len(out) > bail_above:
                    return None
                frontier = new
            return frozenset(out)
        gen_perms = [self.elems[g] for g in gens]
        while frontier:
            new = []
            for x in frontier:
                px = self.elems[x]
                for gp in gen_perms:
                    y = self.index[(px * gp).images]
                    if y not in out:
                        out.add(y)
                        new.append(y)
            if bail_above is not None and len(out) > bail_above:
                return None
            frontier = new
        return frozenset(out)

    def generating_ids(self, ids: frozenset[int]) -> list[int]:
        """A small deterministic generating set for the subgroup ``ids``."""
        gens: list[int] = []
        have: frozenset[int] = frozenset({0})
        for x in sorted(ids):
            if x not in have:
                gens.append(x)
                have = self.closure(gens)
                if len(have) == len(ids):
                    break
        return gens

    def conjugate_set(self, ids: frozenset[int], gen_index: int) -> frozenset[int]:
        cmap = self.conj_maps[gen_index]
        return frozenset(cmap[x] for x in ids)

    def set_orbit(self, ids: frozenset[int]) -> list[frozenset[int]]:
        """Conjugation orbit of a subgroup under the whole group."""
        seen = {ids: None}
        frontier = [ids]
        while frontier:
            new = []
            for s in frontier:
                for gi in range(len(self.group.generators)):
                    t = self.conjugate_set(s, gi)
                    if t not in seen:
                        seen[t] = None
                        new.append(t)
            frontier = new
        return sorted(seen, key=sorted)

    def normal_closure(self, seed_ids) -> frozenset[int]:
        gens = sorted(set(seed_ids) - {0})
        current = self.closure(gens)
        while True:
            extra = []
            for x in self.generating_ids(current):
                for cmap in self.conj_maps:
                    y = cmap[x]
                    if y not in current:
                        extra.append(y)
            if not extra:
                return current
            current = self.closure(list(current) + extra)


_ALGEBRA_CACHE: "weakref.WeakKeyDictionary[PermGroup, _Algebra]" = weakref.WeakKeyDictionary()


def algebra(group: PermGroup, cap: int = DEFAULT_ENUM_CAP) -> _Algebra:
    alg = _ALGEBRA_CACHE.get(group)
    if alg is None:
        alg = _Algebra(group, cap)
        _ALGEBRA_CACHE[group] = alg
    return alg


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of an enumerated parent, keyed by its element-id set."""

    parent: PermGroup
    generators: tuple[Permutation, ...]
    order: int
    elements: frozenset[int]

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    def contains(self, p: Permutation) -> bool:
        return p.images in self.parent.element_index and \
            self.parent.element_index[p.images] in self.elements

    def perms(self) -> list[Permutation]:
        alg = algebra(self.parent)
        return [alg.elems[i] for i in sorted(self.elements)]

    def is_normal(self) -> bool:
        alg = algebra(self.parent)
        return all(alg.conjugate_set(self.elements, gi) == self.elements
                   for gi in range(len(self.parent.generators)))

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, index={self.index})"


def subgroup_from_ids(group: PermGroup, ids: frozenset[int]) -> Subgroup:
    alg = algebra(group)
    gen_ids = alg.generating_ids(ids) or [0]
    return Subgroup(
        parent=group,
        generators=tuple(alg.elems[i] for i in gen_ids),
        order=len(ids),
        elements=ids,
    )


def subgroup_from_gens(group: PermGroup, gens, cap: int = DEFAULT_ENUM_CAP) -> Subgroup:
    alg = algebra(group, cap)
    seed = []
    for g in gens:
        if g.images not in alg.index:
            raise IngestInvalid(f"generator {format_cycles(g)} is not in the parent group")
        seed.append(alg.index[g.images])
    ids = alg.closure(seed)
    return Subgroup(parent=group, generators=tuple(gens), order=len(ids), elements=ids)


def trivial_subgroup(group: PermGroup) -> Subgroup:
    return Subgroup(group, (group.identity(),), 1, frozenset({0}))


def full_subgroup(group: PermGroup) -> Subgroup:
    alg = algebra(group)
    return Subgroup(group, tuple(group.generators), group.order,
                    frozenset(range(alg.n)))


# ---------------------------------------------------------------------------
# Subgroup lattice by breadth-first join closure
# ---------------------------------------------------------------------------

def _atoms(alg: _Algebra) -> list[tuple[frozenset[int], int]]:
    """All cyclic subgroups of prime-power order, with one generator id each."""
    seen: dict[frozenset[int], int] = {}
    for x in range(1, alg.n):
        p = alg.elems[x]
        k = p.order
        if not _is_prime_power(k):
            continue
        ids = frozenset(alg.index[(p ** e).images] for e in range(k))
        if ids not in seen:
            seen[ids] = x
    return sorted(seen.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))


def _is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = _smallest_prime_factor(n)
    while n % p == 0:
        n //= p
    return n == 1


def _smallest_prime_factor(n: int) -> int:
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


def _lattice_sets(group: PermGroup, limits: Limits) -> dict[frozenset[int], int]:
    """All subgroups as element-id sets, mapped to a conjugacy-class id.

    Breadth-first join closure: start from the cyclic prime-power subgroups,
    join class representatives with every atom, and close each new subgroup
    under conjugation. Conjugation-closure makes rep-only joins complete.
    """
    if group.order > limits.lattice_max_order:
        raise BudgetExceeded(
            f"lattice budget: order {group.order} > {limits.lattice_max_order}")
    alg = algebra(group, limits.enum_cap)
    atoms = _atoms(alg)
    sets: dict[frozenset[int], int] = {}
    reps: list[tuple[frozenset[int], list[int]]] = []

    def admit(ids: frozenset[int], gen_ids: list[int]) -> None:
        if ids in sets:
            return
        class_id = len(reps)
        orbit = alg.set_orbit(ids)
        for member in orbit:
            sets[member] = class_id
        reps.append((min(orbit, key=sorted), gen_ids))

    admit(frozenset({0}), [])
    for ids, gen in atoms:
        admit(ids, [gen])
    proper_cap = alg.n // _smallest_prime_factor(alg.n) if alg.n > 1 else 1
    cursor = 0
    while cursor < len(reps):
        rep_ids, rep_gens = reps[cursor]
        cursor += 1
        if len(rep_ids) == alg.n:
            continue
        for atom_ids, atom_gen in atoms:
            if atom_ids <= rep_ids:
                continue
            joined = alg.closure(rep_gens + [atom_gen], bail_above=proper_cap)
            if joined is None or joined in sets:
                continue
            admit(joined, alg.generating_ids(joined))
    admit(frozenset(range(alg.n)), alg.gen_ids)
    return sets


def all_subgroups(group: PermGroup, limits: Limits = DEFAULT_LIMITS) -> list[Subgroup]:
    """Every subgroup of the group, including the trivial and full ones."""
    sets = _lattice_sets(group, limits)
    return [subgroup_from_ids(group, ids) for ids in sorted(sets, key=lambda s: (len(s), sorted(s)))]


# ---------------------------------------------------------------------------
# Maximal subgroup classes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MaxClass:
    """One conjugacy class of maximal subgroups."""

    rep: Subgroup
    class_length: int
    index: int
    self_normalizing: bool
    label: str
    members: tuple[frozenset[int], ...] = field(repr=False)
    verification: str = "lattice"  # how maximality was established


@dataclass(frozen=True)
class MaxClassSet:
    classes: tuple[MaxClass, ...]
    provenance: str  # "computed" | "ingested"

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def by_label(self, label: str) -> int:
        for i, c in enumerate(self.classes):
            if c.label == label:
                return i
        raise KeyError(label)

    def subgroup_count(self) -> int:
        return sum(c.class_length for c in self.classes)


def _package_max_classes(group: PermGroup, orbits: list[list[frozenset[int]]],
                         provenance: str,
                         notes: dict[frozenset[int], str] | None = None) -> MaxClassSet:
    order = group.order
    keyed = []
    for orbit in orbits:
        rep_ids = min(orbit, key=sorted)
        keyed.append((order // len(rep_ids), len(orbit), sorted(rep_ids), rep_ids, orbit))
    keyed.sort(key=lambda t: (t[0], t[1], t[2]))
    classes = []
    for pos, (index, length, _, rep_ids, orbit) in enumerate(keyed, start=1):
        classes.append(MaxClass(
            rep=subgroup_from_ids(group, rep_ids),
            class_length=length,
            index=index,
            self_normalizing=(length == index),
            label=f"M{pos}",
            members=tuple(sorted(orbit, key=sorted)),
            verification="lattice" if notes is None else notes[rep_ids],
        ))
    return MaxClassSet(classes=tuple(classes), provenance=provenance)


def maximal_classes_computed(group: PermGroup,
                             limits: Limits = DEFAULT_LIMITS) -> MaxClassSet:
    """Maximal subgroup classes read off the full subgroup lattice."""
    sets = _lattice_sets(group, limits)
    n = group.order
    by_class: dict[int, list[frozenset[int]]] = {}
    for ids, cid in sets.items():
        by_class.setdefault(cid, []).append(ids)
    all_sets = list(sets)
    orbits = []
    for orbit in by_class.values():
        if len(orbit[0]) < n and _is_maximal_in(orbit[0], all_sets, n):
            orbits.append(orbit)
    return _package_max_classes(group, orbits, "computed")


def _is_maximal_in(h: frozenset[int], all_sets: list[frozenset[int]], order: int) -> bool:
    size = len(h)
    if size == order:
        return False
    for s in all_sets:
        if size < len(s) < order and len(s) % size == 0 and h < s:
            return False
    return True


def maximal_classes_from_file(group: PermGroup, text: str,
                              limits: Limits = DEFAULT_LIMITS) -> MaxClassSet:
    """Ingest maximal subgroup classes and verify them.

    Each listed subgroup is checked to be a genuine subgroup, its index and
    class length are recomputed, and maximality is verified by the local
    check: adjoining any coset representative must generate the whole group
    (exhaustive up to ``limits.maximality_exhaustive_index``, a deterministic
    sample of ``limits.maximality_sample`` representatives beyond that).
    """
    alg = algebra(group, limits.enum_cap)
    entries = _parse_maximal_file(text, group.degree)
    orbits = []
    notes: dict[frozenset[int], str] = {}
    seen_sets: set[frozenset[int]] = set()
    for claim_index, claim_length, gens in entries:
        sub = subgroup_from_gens(group, gens, cap=limits.enum_cap)
        if sub.index != claim_index:
            raise IngestInvalid(
                f"declared index {claim_index}, computed {sub.index}")
        orbit = alg.set_orbit(sub.elements)
        if len(orbit) != claim_length:
            raise IngestInvalid(
                f"declared class length {claim_length}, computed {len(orbit)}")
        if sub.elements in seen_sets:
            raise IngestInvalid("two listed subgroups are conjugate")
        seen_sets.update(orbit)
        note = _verify_maximal(group, sub, limits)
        orbits.append(orbit)
        notes[min(orbit, key=sorted)] = note
    return _package_max_classes(group, orbits, "ingested", notes)


def _coset_decomposition(group: PermGroup, sub: Subgroup) -> tuple[list[int], dict[int, int]]:
    """Right cosets of sub: representative ids (identity first) and the map
    element id -> coset number."""
    alg = algebra(group)
    rep_ids = [0]
    coset_of: dict[int, int] = {x: 0 for x in sub.elements}
    frontier = [0]
    while frontier:
        new = []
        for r in frontier:
            for g in alg.gen_ids:
                x = alg.mult(r, g)
                if x not in coset_of:
                    c = len(rep_ids)
                    rep_ids.append(x)
                    for h in sub.elements:
                        coset_of[alg.mult(h, x)] = c
                    new.append(x)
        frontier = new
    assert len(rep_ids) == sub.index
    return rep_ids, coset_of


def _coset_reps(group: PermGroup, sub: Subgroup) -> list[Permutation]:
    alg = algebra(group)
    rep_ids, _ = _coset_decomposition(group, sub)
    return [alg.elems[i] for i in rep_ids]


def _verify_maximal(group: PermGroup, sub: Subgroup, limits: Limits) -> str:
    """Local maximality check: adjoining any coset representative must
    generate the whole group. Returns a note saying how thorough it was."""
    reps = _coset_reps(group, sub)[1:]
    if sub.index > limits.maximality_exhaustive_index:
        note = f"sampled({min(limits.maximality_sample, len(reps))} of {len(reps)})"
        reps = reps[:limits.maximality_sample]
    else:
        note = f"exhaustive({len(reps)})"
    for r in reps:
        probe = PermGroup(group.degree, list(sub.generators) + [r])
        if probe.order != group.order:
            raise IngestInvalid(
                f"not maximal: adjoining {format_cycles(r)} gives a proper "
                f"subgroup of order {probe.order}")
    return note


def _parse_maximal_file(text: str, degree: int) -> list[tuple[int, int, list[Permutation]]]:
    entries: list[tuple[int | None, int | None, list[Permutation]]] = []
    current: dict | None = None

    def flush(lineno: int) -> None:
        if current is None:
            return
        if current["index"] is None or current["length"] is None:
            raise ParseError("class section missing index or length", lineno)
        if not current["gens"]:
            raise ParseError("class section has no generators", lineno)
        entries.append((current["index"], current["length"], current["gens"]))

    for lineno, rawline in enumerate(text.splitlines(), start=1):
        line = rawline.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            flush(lineno)
            if not line.startswith("[class"):
                raise ParseError(f"unexpected section {line!r}", lineno)
            current = {"index": None, "length": None, "gens": []}
        elif current is None:
            raise ParseError("content before first [class] section", lineno)
        elif line.startswith("index "):
            current["index"] = int(line.split()[1])
        elif line.startswith("length "):
            current["length"] = int(line.split()[1])
        else:
            try:
                current["gens"].append(parse_permutation(line, degree))
            except ParseError as exc:
                raise ParseError(str(exc), lineno) from None
    flush(0)
    if not entries:
        raise ParseError("no [class] sections found")
    return entries


def format_maximal_file(mx: MaxClassSet) -> str:
    lines = []
    for i, cls in enumerate(mx.classes, start=1):
        lines.append(f"[class {i}]")
        lines.append(f"index {cls.index}")
        lines.append(f"length {cls.class_length}")
        lines += [format_cycles(g) for g in cls.rep.generators]
        lines.append("")
    return "\n".join(lines)


def maximal_classes(group: PermGroup, source: str | None = None,
                    limits: Limits = DEFAULT_LIMITS) -> MaxClassSet:
    """Maximal classes, computed from the lattice or ingested from a file."""
    if source is None:
        return maximal_classes_computed(group, limits)
    return maximal_classes_from_file(group, source, limits)


# ---------------------------------------------------------------------------
# Cores, coset actions, normal structure
# ---------------------------------------------------------------------------

def normal_core(group: PermGroup, sub: Subgroup) -> Subgroup:
    """Largest normal subgroup of the group inside sub: the intersection of
    all conjugates."""
    alg = algebra(group)
    core = set(sub.elements)
    for member in alg.set_orbit(sub.elements):
        core &= member
        if len(core) == 1:
            break
    return subgroup_from_ids(group, frozenset(core))


def coset_action(group: PermGroup, sub: Subgroup,
                 limits: Limits = DEFAULT_LIMITS) -> tuple[PermGroup, Subgroup]:
    """Action on right cosets of sub; returns (image group, kernel)."""
    index = sub.index
    if index > limits.coset_degree_max:
        raise IndexTooLarge(f"index {index} exceeds {limits.coset_degree_max}")
    alg = algebra(group)
    rep_ids, coset_of = _coset_decomposition(group, sub)
    image_gens = []
    for g in group.generators:
        gid = alg.index[g.images]
        image_gens.append(Permutation(
            tuple(coset_of[alg.mult(r, gid)] for r in rep_ids)))
    image = PermGroup(index, image_gens,
                      name=f"{group.name or 'G'}/cosets({sub.order})")
    kernel_ids = frozenset(
        x for x in range(alg.n)
        if all(coset_of[alg.mult(r, x)] == c for c, r in enumerate(rep_ids)))
    kernel = subgroup_from_ids(group, kernel_ids)
    assert image.order * kernel.order == group.order
    return image, kernel


def minimal_normal_subgroups(group: PermGroup,
                             limits: Limits = DEFAULT_LIMITS) -> list[Subgroup]:
    """All minimal normal subgroups, via normal closures of class
    representatives (no lattice needed)."""
    if group.order == 1:
        return []
    alg = algebra(group, limits.enum_cap)
    closures: dict[frozenset[int], None] = {}
    for cls in group.conjugacy_classes(limits.enum_cap):
        ids = alg.normal_closure([alg.index[cls.rep.images]])
        closures.setdefault(ids, None)
    minimal = []
    for ids in closures:
        if not any(other < ids for other in closures):
            minimal.append(ids)
    minimal.sort(key=lambda s: (len(s), sorted(s)))
    return [subgroup_from_ids(group, ids) for ids in minimal]


def derived_subgroup_ids(group: PermGroup, ids: frozenset[int] | None = None) -> frozenset[int]:
    """Derived subgroup of the subgroup with the given ids (whole group if None)."""
    alg = algebra(group)
    source = sorted(ids) if ids is not None else list(range(alg.n))
    gens = alg.generating_ids(frozenset(source)) if ids is not None else alg.gen_ids
    comms = set()
    base = ids if ids is not None else frozenset(range(alg.n))
    for a in gens or [0]:
        for b in gens or [0]:
            comms.add(alg.mult(alg.mult(alg.inv[a], alg.inv[b]), alg.mult(a, b)))
    current = alg.closure(comms)
    # close under conjugation by the source subgroup
    while True:
        extra = []
        for x in alg.generating_ids(current):
            for g in gens:
                y = alg.mult(alg.mult(alg.inv[g], x), g)
                if y not in current:
                    extra.append(y)
        if not extra:
            break
        current = alg.closure(list(current) + extra)
    assert current <= base
    return current


def is_solvable(group: PermGroup) -> bool:
    """True iff the derived series reaches the trivial group."""
    alg = algebra(group)
    current = frozenset(range(alg.n))
    while True:
        nxt = derived_subgroup_ids(group, current if len(current) < alg.n else None)
        if nxt == current:
            return len(current) == 1
        if len(nxt) == 1:
            return True
        current = nxt


def is_primitive_monolithic(group: PermGroup, mx: MaxClassSet,
                            limits: Limits = DEFAULT_LIMITS):
    """(primitive, monolithic, min primitivity degree or None)."""
    degrees = []
    for cls in mx.classes:
        core = normal_core(group, cls.rep)
        if core.order == 1:
            degrees.append(cls.index)
    primitive = bool(degrees)
    monolithic = len(minimal_normal_subgroups(group, limits)) == 1
    return primitive, monolithic, (min(degrees) if degrees else None)


def min_supplement_index(group: PermGroup, normal: Subgroup, mx: MaxClassSet) -> int:
    """Minimal index of a maximal subgroup H with H·N = G."""
    best = None
    n = group.order
    for cls in mx.classes:
        h = cls.rep.elements
        inter = len(h & normal.elements)
        if len(h) * normal.order == n * inter:  # |H||N|/|H∩N| == |G|
            if best is None or cls.index < best:
                best = cls.index
    if best is None:
        raise NoSupplement("every maximal subgroup contains the normal subgroup")
    return best
