import random

import pytest

from covnum import library
from covnum.errors import BudgetExceeded, IngestInvalid, NoSupplement, ParseError
from covnum.groups import PermGroup
from covnum.perms import format_cycles, parse_permutation
from covnum.subgroups import (
    Limits,
    algebra,
    all_subgroups,
    coset_action,
    format_maximal_file,
    is_primitive_monolithic,
    is_solvable,
    maximal_classes,
    maximal_classes_computed,
    maximal_classes_from_file,
    min_supplement_index,
    minimal_normal_subgroups,
    normal_core,
    subgroup_from_gens,
)


def test_all_subgroups_counts():
    assert len(all_subgroups(library.group("V4"))) == 5
    assert len(all_subgroups(library.group("S3"))) == 6
    assert len(all_subgroups(library.group("A5"))) == 59


def test_a5_lattice_composition():
    by_order = {}
    for s in all_subgroups(library.group("A5")):
        by_order[s.order] = by_order.get(s.order, 0) + 1
    # 1, 15 C2, 10 C3, 5 V4, 6 C5, 10 S3, 6 D10, 5 A4, A5
    assert by_order == {1: 1, 2: 15, 3: 10, 4: 5, 5: 6, 6: 10, 10: 6, 12: 5, 60: 1}


def test_lattice_budget():
    with pytest.raises(BudgetExceeded):
        all_subgroups(library.group("M11"))


def test_lattice_closed_under_conjugation_and_intersections():
    group = library.group("S4")
    subs = all_subgroups(group)
    sets = {s.elements for s in subs}
    alg = algebra(group)
    for s in subs:
        for gi in range(len(group.generators)):
            assert alg.conjugate_set(s.elements, gi) in sets
    rng = random.Random(7)
    pool = list(sets)
    for _ in range(100):
        a, b = rng.choice(pool), rng.choice(pool)
        assert a & b in sets


def test_maximal_classes_a5():
    mx = maximal_classes_computed(library.group("A5"))
    data = [(c.rep.order, c.class_length, c.index, c.self_normalizing) for c in mx]
    assert data == [(12, 5, 5, True), (10, 6, 6, True), (6, 10, 10, True)]


def test_maximal_classes_v4():
    mx = maximal_classes_computed(library.group("V4"))
    assert [(c.class_length, c.index) for c in mx] == [(1, 2)] * 3


def test_m11_ingestion():
    mx = library.maximals("M11")
    assert mx.provenance == "ingested"
    assert [c.index for c in mx] == [11, 12, 55, 66, 165]
    assert [c.class_length for c in mx] == [11, 12, 55, 66, 165]
    assert mx.subgroup_count() == 309
    # the local maximality check records how thorough it was
    assert all(c.verification.startswith(("exhaustive(", "sampled("))
               for c in mx.classes)


def test_ingest_sampled_verification_note():
    group = library.group("M11")
    tight = Limits(maximality_exhaustive_index=50, maximality_sample=20)
    mx = maximal_classes_from_file(group, library.m11_maximals_text(), tight)
    notes = {c.index: c.verification for c in mx.classes}
    assert notes[11] == "exhaustive(10)"
    assert notes[165] == "sampled(20 of 164)"


def test_maximal_classes_dispatch():
    group = library.group("A5")
    assert maximal_classes(group).provenance == "computed"
    text = format_maximal_file(maximal_classes_computed(group))
    assert maximal_classes(group, source=text).provenance == "ingested"


def test_ingest_rejects_outside_generator():
    group = library.group("A5")
    text = "[class 1]\nindex 5\nlength 5\n(1,2)\n"  # odd permutation, not in A5
    with pytest.raises(IngestInvalid):
        maximal_classes_from_file(group, text)


def test_ingest_rejects_non_maximal():
    group = library.group("A5")
    text = "[class 1]\nindex 30\nlength 15\n(1,2)(3,4)\n"  # C2 is far from maximal
    with pytest.raises(IngestInvalid):
        maximal_classes_from_file(group, text)


def test_ingest_rejects_wrong_declarations():
    group = library.group("A5")
    a4 = next(c for c in maximal_classes_computed(group) if c.rep.order == 12)
    gens = "\n".join(format_cycles(g) for g in a4.rep.generators)
    with pytest.raises(IngestInvalid, match="index"):
        maximal_classes_from_file(group, f"[class 1]\nindex 6\nlength 5\n{gens}\n")
    with pytest.raises(IngestInvalid, match="length"):
        maximal_classes_from_file(group, f"[class 1]\nindex 5\nlength 6\n{gens}\n")
    with pytest.raises(ParseError):
        maximal_classes_from_file(group, "[class 1]\nindex 5\n")


def _subgroup(group, *gen_texts):
    gens = [parse_permutation(t, group.degree) for t in gen_texts]
    return subgroup_from_gens(group, gens)


def test_normal_core_examples():
    s4 = library.group("S4")
    stab = _subgroup(s4, "(1,2,3)", "(1,2)")  # S3 fixing point 4
    assert stab.order == 6
    assert normal_core(s4, stab).order == 1
    d8 = _subgroup(s4, "(1,2,3,4)", "(1,3)")
    assert d8.order == 8
    core = normal_core(s4, d8)
    assert core.order == 4 and core.is_normal()
    v4 = _subgroup(s4, "(1,2)(3,4)", "(1,3)(2,4)")
    assert normal_core(s4, v4).elements == v4.elements  # normal subgroup is its own core


def test_coset_action_examples():
    s4 = library.group("S4")
    d8 = _subgroup(s4, "(1,2,3,4)", "(1,3)")
    image, kernel = coset_action(s4, d8)
    assert image.degree == 3 and image.order == 6
    assert kernel.order == 4
    full = _subgroup(s4, "(1,2,3,4)", "(1,2)")
    image, kernel = coset_action(s4, full)
    assert image.degree == 1 and kernel.order == 24
    a5 = library.group("A5")
    a4 = _subgroup(a5, "(1,2,3)", "(1,2)(3,4)")
    image, kernel = coset_action(a5, a4)
    assert image.degree == 5 and image.order == 60 and kernel.order == 1


def test_kernel_equals_normal_core_for_maximals():
    for key in ["S4", "A5", "D12", "PSL27"]:
        group = library.group(key)
        for cls in maximal_classes_computed(group):
            image, kernel = coset_action(group, cls.rep)
            assert kernel.elements == normal_core(group, cls.rep).elements
            assert image.order * kernel.order == group.order


def _min_block_size(group):
    """Smallest nontrivial block size of a transitive action, by closing
    {0, x} under the generators for every x."""
    n = group.degree
    best = n
    for x in range(1, n):
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        union(0, x)
        changed = True
        while changed:
            changed = False
            for g in group.generators:
                for a in range(n):
                    b = find(a)
                    if find(g(a)) != find(g(b)):
                        union(g(a), g(b))
                        changed = True
        size = sum(1 for a in range(n) if find(a) == find(0))
        if size < best:
            best = size
    return best


def test_core_free_maximal_coset_actions_are_primitive():
    for key in ["A5", "S4", "S5", "PSL27"]:
        group = library.group(key)
        for cls in maximal_classes_computed(group):
            if cls.index > 12:
                continue
            image, kernel = coset_action(group, cls.rep)
            if kernel.order == 1:
                assert _min_block_size(image) == image.degree


def test_minimal_normal_subgroups():
    assert [s.order for s in minimal_normal_subgroups(library.group("S4"))] == [4]
    assert [s.order for s in minimal_normal_subgroups(library.group("A5"))] == [60]
    assert [s.order for s in minimal_normal_subgroups(library.group("V4"))] == [2, 2, 2]
    assert [s.order for s in minimal_normal_subgroups(library.group("A5xC2"))] == [2, 60]


def test_is_primitive_monolithic():
    a5 = library.group("A5")
    assert is_primitive_monolithic(a5, maximal_classes_computed(a5)) == (True, True, 5)
    s4 = library.group("S4")
    assert is_primitive_monolithic(s4, maximal_classes_computed(s4)) == (True, True, 4)
    v4 = library.group("V4")
    assert is_primitive_monolithic(v4, maximal_classes_computed(v4)) == (False, False, None)


def test_is_solvable():
    assert is_solvable(library.group("S4"))
    assert not is_solvable(library.group("A5"))
    assert is_solvable(library.group("D8"))
    assert not is_solvable(library.group("A5xC2"))


def test_min_supplement_index():
    a5 = library.group("A5")
    full = subgroup_from_gens(a5, list(a5.generators))
    assert min_supplement_index(a5, full, maximal_classes_computed(a5)) == 5
    s5 = library.group("S5")
    a5_in_s5 = _subgroup(s5, "(1,2,3)", "(1,2,3,4,5)")
    assert a5_in_s5.order == 60
    assert min_supplement_index(s5, a5_in_s5, maximal_classes_computed(s5)) == 5
    c4 = PermGroup(4, [parse_permutation("(1,2,3,4)", 4)], name="C4")
    c2 = _subgroup(c4, "(1,3)(2,4)")
    with pytest.raises(NoSupplement):
        min_supplement_index(c4, c2, maximal_classes_computed(c4))
