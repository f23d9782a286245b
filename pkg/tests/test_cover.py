import pytest

from oracle import exhaustive_sigma

from covnum import library
from covnum.cover import SolveBudget, build_instance, format_instance, format_lp, \
    parse_instance, sigma_exact, solve
from covnum.errors import CyclicGroup, Infeasible
from covnum.greedy import covering_number_bounds
from covnum.subgroups import all_subgroups, coset_action


def _instance(key, elts=None, subs=None):
    group = library.group(key)
    return build_instance(group, group.conjugacy_classes(), library.maximals(key),
                          elts=elts, subs=subs)


def test_a5_full_instance_shape():
    inst = _instance("A5")
    assert inst.universe_size == 59
    assert len(inst.column_masks) == 21  # 5 + 6 + 10
    assert inst.symmetric


def test_cyclic_instance_infeasible():
    group = library.group("C5")
    with pytest.raises(Infeasible) as err:
        build_instance(group, group.conjugacy_classes(), library.maximals("C5"))
    assert err.value.witness is not None


def test_psl27_order7_instance():
    inst = _instance("PSL27", elts=["cl_7,1", "cl_7,2"], subs=["M3"])
    assert inst.universe_size == 48
    assert len(inst.column_masks) == 8
    assert all(m.bit_count() == 6 for m in inst.column_masks)


def test_solve_a5_witness_composition():
    inst = _instance("A5")
    result = solve(inst)
    assert result.optimal and result.upper == 10
    classes = [inst.column_class[c] for c in result.chosen]
    d10 = inst.class_labels.index("M2")
    assert classes.count(d10) == 6  # all six D10s are forced


@pytest.mark.parametrize("key,expected", [("V4", 3), ("S3", 4), ("S5", 16)])
def test_sigma_exact_small(key, expected):
    result = sigma_exact(library.group(key), mx=library.maximals(key))
    assert result.optimal and result.upper == expected


def test_sigma_exact_rejects_cyclic():
    with pytest.raises(CyclicGroup):
        sigma_exact(library.group("C6"))


def test_witness_always_covers():
    for key in ["V4", "S3", "D8", "A5", "AGL15"]:
        inst = _instance(key)
        result = solve(inst)
        cov = 0
        for c in result.chosen:
            cov |= inst.column_masks[c]
        assert cov == inst.full_mask()
        assert len(result.chosen) == result.upper


def test_budget_monotonicity():
    inst = _instance("A6")
    expect = 16
    prev_lower, prev_upper = 0, inst.universe_size
    for nodes in (1, 8, 64, 512, 100000):
        result = solve(inst, SolveBudget(max_nodes=nodes))
        assert result.lower <= expect <= result.upper
        assert result.lower >= prev_lower and result.upper <= prev_upper
        prev_lower, prev_upper = result.lower, result.upper
    assert result.optimal and result.upper == expect


def test_exhausted_budget_is_flagged_not_wrong():
    inst = _instance("A6")
    result = solve(inst, SolveBudget(max_nodes=2))
    assert result.budget_exhausted and not result.optimal
    assert result.lower <= 16 <= result.upper


def test_greedy_incumbent_feeds_solver():
    group = library.group("S6")
    mx = library.maximals("S6")
    trace = covering_number_bounds(group, mx)
    result = sigma_exact(group, mx=mx,
                         initial_upper_classes=trace.chosen_subgroup_classes())
    assert result.optimal and result.upper == 13


def test_instance_text_round_trip():
    inst = _instance("A5")
    text = format_instance(inst)
    again = parse_instance(text)
    assert again.universe_size == inst.universe_size
    assert again.column_masks == inst.column_masks
    assert not again.symmetric  # imported instances lose the symmetry claim
    assert solve(again).upper == 10


def test_lp_emitter_shape():
    inst = _instance("V4")
    text = format_lp(inst, "V4")
    lines = text.splitlines()
    assert lines[1] == "Minimize"
    assert sum(1 for ln in lines if ln.startswith(" e")) == inst.universe_size
    assert "Binary" in text and lines[-1] == "End"


@pytest.mark.parametrize("key", ["V4", "S3", "D8", "Q8", "S4", "A4", "D10", "D12",
                                 "F21", "C3xC3", "AGL13", "AGL14", "AGL15", "AGL17",
                                 "AGL18", "A5", "S5", "A5xC2", "PSL27"])
def test_oracle_equivalence_maximal_columns(key, sigma_of):
    group = library.group(key)
    mx = library.maximals(key)
    columns = [member for cls in mx.classes for member in cls.members]
    value = sigma_of(key)
    assert exhaustive_sigma(set(range(1, group.order)), columns, value + 1) == value


@pytest.mark.parametrize("key", ["V4", "S3", "D8", "Q8", "S4", "A4", "D10", "D12",
                                 "F21", "C3xC3", "AGL13", "AGL14", "AGL15", "AGL17",
                                 "AGL18", "A5"])
def test_oracle_equivalence_all_proper_subgroups(key, sigma_of):
    group = library.group(key)
    assert group.order <= 60
    columns = [s.elements for s in all_subgroups(group) if 1 < s.order < group.order]
    value = sigma_of(key)
    assert exhaustive_sigma(set(range(1, group.order)), columns, value + 1) == value


def test_quotient_monotonicity(sigma_of):
    for key in ["V4", "S3", "D8", "Q8", "S4", "D12", "A4", "A5xC2", "AGL18", "AGL32"]:
        group = library.group(key)
        sigma = sigma_of(key)
        for sub in all_subgroups(group):
            if sub.order in (1, group.order) or not sub.is_normal():
                continue
            image, _ = coset_action(group, sub)
            if image.is_cyclic():
                continue  # sigma of the quotient is infinite
            result = sigma_exact(image)
            assert result.optimal
            assert sigma <= result.upper, (key, sub.order)
