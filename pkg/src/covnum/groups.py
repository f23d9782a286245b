"""Permutation groups with a deterministic stabilizer chain.

The chain gives exact order and membership for any group generated here.
Base points are always chosen as the smallest currently-moved point, and
orbits are explored smallest-point-first, so element enumeration, class
tables and everything downstream are reproducible run to run.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import CapExceeded, DegreeMismatch, ParseError
from .perms import Permutation, format_cycles, parse_permutation

DEFAULT_ENUM_CAP = 10**6


class _ChainLevel:
    """One stabilizer-chain level: a base point, the strong generators that
    fix all earlier base points, and a transversal of the base orbit."""

    __slots__ = ("base", "degree", "gens", "transversal")

    def __init__(self, base: int, degree: int):
        self.base = base
        self.degree = degree
        self.gens: list[Permutation] = []
        self.transversal: dict[int, Permutation] = {}
        self.rebuild_orbit()

    def rebuild_orbit(self) -> None:
        self.transversal = {self.base: Permutation.identity(self.degree)}
        frontier = [self.base]
        while frontier:
            new = []
            for point in frontier:
                u = self.transversal[point]
                for g in self.gens:
                    image = g(point)
                    if image not in self.transversal:
                        self.transversal[image] = u * g
                        new.append(image)
            frontier = sorted(new)


def _sift(levels: list[_ChainLevel], g: Permutation, start: int = 0):
    """Strip g through levels[start:]; return (residue, stop_level).

    stop_level == len(levels) means g passed every transversal; the residue
    is then the identity exactly when g is a member.
    """
    for i in range(start, len(levels)):
        level = levels[i]
        u = level.transversal.get(g(level.base))
        if u is None:
            return g, i
        g = g * u.inverse()
    return g, len(levels)


def _schreier_sims(degree: int, generators: list[Permutation]) -> list[_ChainLevel]:
    gens = [g for g in generators if not g.is_identity()]
    if not gens:
        return []
    levels = [_ChainLevel(min(min(g.moved()) for g in gens), degree)]
    levels[0].gens = list(gens)
    levels[0].rebuild_orbit()
    dirty = {0}
    while dirty:
        i = max(dirty)
        level = levels[i]
        level.rebuild_orbit()
        clean = True
        for point in sorted(level.transversal):
            u = level.transversal[point]
            for g in list(level.gens):
                schreier = u * g * level.transversal[g(point)].inverse()
                if schreier.is_identity():
                    continue
                residue, j = _sift(levels, schreier, i + 1)
                if residue.is_identity():
                    continue
                clean = False
                if j == len(levels):
                    levels.append(_ChainLevel(min(residue.moved()), degree))
                for k in range(i + 1, j + 1):
                    levels[k].gens.append(residue)
                    levels[k].rebuild_orbit()
                dirty.update(range(j + 1))
        if clean:
            dirty.discard(i)
    return levels


class PermGroup:
    """A finite permutation group given by generators, with exact order and
    membership answered from its stabilizer chain."""

    def __init__(self, degree: int, generators, name: str | None = None):
        generators = list(generators)
        if not generators:
            generators = [Permutation.identity(degree)]
        for g in generators:
            if g.degree != degree:
                raise DegreeMismatch(f"generator degree {g.degree} != {degree}")
        self.degree = degree
        self.generators = tuple(generators)
        self.name = name
        self._levels = _schreier_sims(degree, generators)

    @cached_property
    def order(self) -> int:
        n = 1
        for level in self._levels:
            n *= len(level.transversal)
        return n

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(level.base for level in self._levels)

    def __contains__(self, g: Permutation) -> bool:
        if not isinstance(g, Permutation) or g.degree != self.degree:
            return False
        residue, stop = _sift(self._levels, g)
        return stop == len(self._levels) and residue.is_identity()

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def elements(self, cap: int = DEFAULT_ENUM_CAP) -> list[Permutation]:
        """All elements, identity first, in a deterministic closure order."""
        if self.order > cap:
            raise CapExceeded(f"group order {self.order} exceeds cap {cap}")
        return self._element_list

    @cached_property
    def _element_list(self) -> list[Permutation]:
        identity = self.identity()
        seen = {identity.images}
        out = [identity]
        frontier = [identity]
        while frontier:
            new = []
            for x in frontier:
                for g in self.generators:
                    y = x * g
                    if y.images not in seen:
                        seen.add(y.images)
                        out.append(y)
                        new.append(y)
            frontier = new
        assert len(out) == self.order
        return out

    @cached_property
    def element_index(self) -> dict[tuple[int, ...], int]:
        return {p.images: i for i, p in enumerate(self._element_list)}

    def is_cyclic(self, cap: int = DEFAULT_ENUM_CAP) -> bool:
        if self.order == 1:
            return True
        return any(p.order == self.order for p in self.elements(cap))

    def is_abelian(self) -> bool:
        return all(a * b == b * a for a in self.generators for b in self.generators)

    def conjugacy_classes(self, cap: int = DEFAULT_ENUM_CAP) -> "ConjClassTable":
        return self._classes_and_assignment(cap)[0]

    def class_assignment(self, cap: int = DEFAULT_ENUM_CAP) -> list[int]:
        """Class index per element id (identity maps to -1)."""
        return self._classes_and_assignment(cap)[1]

    def _classes_and_assignment(self, cap: int):
        cached = getattr(self, "_class_cache", None)
        if cached is None:
            cached = _conjugacy_classes(self, cap)
            self._class_cache = cached
        return cached

    def __repr__(self) -> str:
        label = self.name or f"degree {self.degree}"
        return f"PermGroup({label}, order={self.order})"


def group_from_generators(gens, name: str | None = None) -> PermGroup:
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    return PermGroup(gens[0].degree, gens, name=name)


@dataclass(frozen=True)
class ConjClass:
    rep: Permutation
    size: int
    element_order: int
    label: str


@dataclass(frozen=True)
class ConjClassTable:
    """Nonidentity conjugacy classes, sorted by descending (order, size)."""

    classes: tuple[ConjClass, ...]
    total: int

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def by_label(self, label: str) -> int:
        for i, c in enumerate(self.classes):
            if c.label == label:
                return i
        raise KeyError(label)

    def order_multiset(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for c in self.classes:
            out[c.element_order] = out.get(c.element_order, 0) + c.size
        return out


def class_labels(pairs: list[tuple[int, int]]) -> list[str]:
    """Labels ``cl_<order>``, with a ``,j`` suffix only when several classes
    share the element order (the usual table convention)."""
    counts: dict[int, int] = {}
    for order, _ in pairs:
        counts[order] = counts.get(order, 0) + 1
    seen: dict[int, int] = {}
    labels = []
    for order, _ in pairs:
        seen[order] = seen.get(order, 0) + 1
        if counts[order] == 1:
            labels.append(f"cl_{order}")
        else:
            labels.append(f"cl_{order},{seen[order]}")
    return labels


def _conjugacy_classes(group: PermGroup, cap: int) -> tuple[ConjClassTable, list[int]]:
    elems = group.elements(cap)
    index = group.element_index
    n = len(elems)
    assigned = [False] * n
    assigned[0] = True  # identity excluded
    raw: list[tuple[Permutation, int, int, set[int]]] = []
    for i in range(1, n):
        if assigned[i]:
            continue
        orbit = {i}
        frontier = [i]
        while frontier:
            new = []
            for j in frontier:
                for g in group.generators:
                    k = index[elems[j].conjugated_by(g).images]
                    if k not in orbit:
                        orbit.add(k)
                        new.append(k)
            frontier = new
        for j in orbit:
            assigned[j] = True
        rep = elems[min(orbit)]
        raw.append((rep, len(orbit), rep.order, orbit))
    raw.sort(key=lambda t: (-t[2], -t[1], t[0].images))
    labels = class_labels([(order, size) for _, size, order, _ in raw])
    classes = tuple(
        ConjClass(rep=rep, size=size, element_order=order, label=label)
        for (rep, size, order, _), label in zip(raw, labels)
    )
    assignment = [-1] * n
    for pos, (_, _, _, orbit) in enumerate(raw):
        for j in orbit:
            assignment[j] = pos
    total = sum(c.size for c in classes)
    assert total == group.order - 1
    return ConjClassTable(classes=classes, total=total), assignment


def conjugacy_classes(group: PermGroup, cap: int = DEFAULT_ENUM_CAP) -> ConjClassTable:
    return group.conjugacy_classes(cap)


def enumerate_elements(group: PermGroup, cap: int = DEFAULT_ENUM_CAP) -> list[Permutation]:
    return group.elements(cap)


def parse_group_file(text: str, name: str | None = None) -> PermGroup:
    """Parse the group file format: ``degree n`` then one generator per line
    in 1-based cycle notation. Blank lines and ``#`` comments are ignored."""
    degree = None
    gens = []
    for lineno, rawline in enumerate(text.splitlines(), start=1):
        line = rawline.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "degree":
                raise ParseError("expected header 'degree <n>'", lineno)
            try:
                degree = int(parts[1])
            except ValueError:
                raise ParseError(f"bad degree {parts[1]!r}", lineno) from None
            if degree < 1:
                raise ParseError("degree must be positive", lineno)
            continue
        try:
            gens.append(parse_permutation(line, degree))
        except ParseError as exc:
            raise ParseError(str(exc), lineno) from None
    if degree is None:
        raise ParseError("missing 'degree <n>' header")
    if not gens:
        gens = [Permutation.identity(degree)]
    return PermGroup(degree, gens, name=name)


def format_group_file(group: PermGroup) -> str:
    lines = [f"degree {group.degree}"]
    lines += [format_cycles(g) for g in group.generators]
    return "\n".join(lines) + "\n"
