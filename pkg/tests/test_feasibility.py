import dataclasses

import pytest
from hypothesis import given, settings, strategies as st

from vacgrab import (
    CorpusRow,
    FabricPiece,
    MotionProfile,
    Permeability,
    PipeSegment,
    Polygon,
    PressureWindow,
    Scenario,
    SuctionCup,
    VacuumGenerator,
    ValidationError,
    Verdict,
    Vgtc,
    evaluate,
    run_corpus,
    scenario_from_row,
)
from conftest import make_scenario


# ---------------------------------------------------------------------------
# reference scenarios

def test_pocket_bag_passes(bag_scenario):
    report = evaluate(bag_scenario)
    assert report.verdict is Verdict.PASS
    assert report.holding_force == pytest.approx(0.148, abs=1e-3)
    assert report.required_pressure_single_cup == pytest.approx(47_111, rel=0.01)
    assert report.line_loss == pytest.approx(37_018, abs=500)
    assert report.net_supply == pytest.approx(55_000, abs=500)


def test_pocket_facing_passes(facing_scenario):
    report = evaluate(facing_scenario)
    assert report.verdict is Verdict.PASS
    assert report.required_pressure_single_cup == pytest.approx(37_561, rel=0.01)


def test_weak_generator_fails(pocket_facing, std_line):
    scenario = make_scenario(
        pocket_facing, std_line, generator=VacuumGenerator(max_vacuum=40_000.0)
    )
    report = evaluate(scenario)
    assert report.verdict is Verdict.FAIL
    assert report.net_supply == pytest.approx(3_000, abs=500)


def test_transonic_advisory_attached(bag_scenario):
    report = evaluate(bag_scenario)
    assert any("incompressible" in a for a in report.advisories)


def test_evaluate_deterministic(bag_scenario):
    assert evaluate(bag_scenario) == evaluate(bag_scenario)


def test_report_numbers_recompose(bag_scenario):
    report = evaluate(bag_scenario)
    area = bag_scenario.cup.area
    assert abs(report.required_pressure_single_cup * area - report.holding_force) < 1e-9 * report.holding_force
    assert report.net_supply == pytest.approx(
        max(0.0, bag_scenario.generator.max_vacuum - report.line_loss), rel=1e-12
    )
    assert report.required_pressure_shared == pytest.approx(
        report.required_pressure_single_cup / bag_scenario.cup.count, rel=1e-12
    )


def test_shared_pressure_uses_cup_count(pocket_bag, std_line):
    scenario = make_scenario(
        pocket_bag, std_line, cup=SuctionCup(orifice_diameter=2e-3, count=6)
    )
    report = evaluate(scenario)
    assert report.gripper_count == 6
    assert report.required_pressure_shared == pytest.approx(
        report.required_pressure_single_cup / 6, rel=1e-12
    )


def test_plate_lift_selector_respected(pocket_bag, std_line):
    from vacgrab import LoadCase

    scenario = make_scenario(
        pocket_bag, std_line, motion=MotionProfile(load_case=LoadCase.PLATE_LIFT)
    )
    report = evaluate(scenario)
    assert report.holding_force == pytest.approx(0.07405, abs=1e-6)


def test_scenario_requires_line(pocket_bag):
    with pytest.raises(ValidationError, match="line"):
        make_scenario(pocket_bag, ())


def test_stage_labels_on_errors(pocket_bag):
    # a cup bank can't be built invalid, so break the layout stage instead
    window = PressureWindow(p_min=1000.0)
    tri_fabric = FabricPiece(
        id="tri",
        outline=[(0, 0), (0.3, 0), (0.15, 0.2)],
        mass=1e-3,
        friction_coefficient=0.5,
    )
    scenario = make_scenario(
        tri_fabric,
        (PipeSegment(inner_diameter=2e-3),),
        vgtc=Vgtc(center=(0, 0), radius=0.02, pressure_window=window),
    )
    with pytest.raises(ValidationError, match="layout stage"):
        evaluate(scenario)


# ---------------------------------------------------------------------------
# grabbing-circle path

def interior_circle_scenario(pocket_bag, p_min=30_000.0, p_max=None, **overrides):
    # radius 1 cm on a 26x19 piece: all circles stay inside the outline
    window = PressureWindow(p_min=p_min, p_max=p_max)
    return make_scenario(
        pocket_bag,
        (PipeSegment(inner_diameter=5.2e-3), PipeSegment(inner_diameter=2e-3)),
        vgtc=Vgtc(center=(0, 0), radius=0.01, pressure_window=window),
        **overrides,
    )


def test_vgtc_layout_and_ratios(pocket_bag):
    report = evaluate(interior_circle_scenario(pocket_bag))
    assert report.layout is not None
    assert len(report.effective_ratios) == len(report.layout.positions)
    assert all(r == pytest.approx(1.0, rel=1e-9) for r in report.effective_ratios)
    assert report.verdict is Verdict.PASS


def test_vgtc_edge_overhang_inflates_demand(pocket_bag):
    # radius 4.4 cm with a 2 cm margin: corner circles overhang the piece
    window = PressureWindow(p_min=37_561.0)
    scenario = make_scenario(
        pocket_bag,
        (PipeSegment(inner_diameter=5.2e-3), PipeSegment(inner_diameter=2e-3)),
        vgtc=Vgtc(center=(0, 0), radius=0.044, pressure_window=window),
    )
    report = evaluate(scenario)
    assert min(report.effective_ratios) < 1.0
    # inflated corner demand exceeds the ~54.9 kPa net supply
    assert report.verdict is Verdict.FAIL


def test_permeable_without_window_max_is_uncalibrated(pocket_bag):
    fabric = dataclasses.replace(pocket_bag, permeability=Permeability.AIR_PERMEABLE)
    report = evaluate(interior_circle_scenario(fabric, p_max=None))
    assert report.verdict is Verdict.UNCALIBRATED


def test_permeable_above_window_max_is_multi_layer_risk(pocket_bag):
    fabric = dataclasses.replace(pocket_bag, permeability=Permeability.AIR_PERMEABLE)
    report = evaluate(interior_circle_scenario(fabric, p_max=50_000.0))
    assert report.net_supply > 50_000.0
    assert report.verdict is Verdict.PASS_WITH_MULTI_LAYER_RISK


def test_permeable_inside_window_passes(pocket_bag):
    fabric = dataclasses.replace(pocket_bag, permeability=Permeability.AIR_PERMEABLE)
    report = evaluate(interior_circle_scenario(fabric, p_max=60_000.0))
    assert report.net_supply <= 60_000.0
    assert report.verdict is Verdict.PASS


def test_impermeable_never_flags_multi_layer(pocket_bag):
    report = evaluate(interior_circle_scenario(pocket_bag, p_max=50_000.0))
    assert report.verdict is Verdict.PASS
    assert any("harmless" in a for a in report.advisories)


def test_permeable_no_circle_is_uncalibrated(pocket_bag, std_line):
    fabric = dataclasses.replace(pocket_bag, permeability=Permeability.AIR_PERMEABLE)
    report = evaluate(make_scenario(fabric, std_line))
    assert report.verdict is Verdict.UNCALIBRATED


# ---------------------------------------------------------------------------
# verdict monotonicity

@settings(max_examples=60)
@given(
    vac_lo=st.floats(min_value=1_000, max_value=101_325, allow_nan=False),
    vac_hi=st.floats(min_value=1_000, max_value=101_325, allow_nan=False),
    mass=st.floats(min_value=5e-4, max_value=0.05, allow_nan=False),
)
def test_more_vacuum_never_flips_pass_to_fail(vac_lo, vac_hi, mass):
    vac_lo, vac_hi = sorted((vac_lo, vac_hi))
    fabric = FabricPiece(id="f", outline=(0.26, 0.19), mass=mass, friction_coefficient=0.5)
    line = (PipeSegment(inner_diameter=5.2e-3), PipeSegment(inner_diameter=2e-3))

    def verdict(vacuum):
        return evaluate(
            make_scenario(fabric, line, generator=VacuumGenerator(max_vacuum=vacuum))
        ).verdict

    assert not (verdict(vac_lo) is not Verdict.FAIL and verdict(vac_hi) is Verdict.FAIL)


@settings(max_examples=60)
@given(
    m_lo=st.floats(min_value=5e-4, max_value=0.05, allow_nan=False),
    m_hi=st.floats(min_value=5e-4, max_value=0.05, allow_nan=False),
    vacuum=st.floats(min_value=10_000, max_value=101_325, allow_nan=False),
)
def test_more_mass_never_flips_fail_to_pass(m_lo, m_hi, vacuum):
    m_lo, m_hi = sorted((m_lo, m_hi))
    line = (PipeSegment(inner_diameter=5.2e-3), PipeSegment(inner_diameter=2e-3))

    def verdict(mass):
        fabric = FabricPiece(id="f", outline=(0.26, 0.19), mass=mass, friction_coefficient=0.5)
        return evaluate(
            make_scenario(fabric, line, generator=VacuumGenerator(max_vacuum=vacuum))
        ).verdict

    assert not (verdict(m_lo) is Verdict.FAIL and verdict(m_hi) is not Verdict.FAIL)


# ---------------------------------------------------------------------------
# corpus batches

def make_row(**overrides):
    base = dict(
        lot="1",
        application="Pocket Bag",
        fabric_code="713993",
        material="100%Polyester; Plain Weave; TEXTILE-WOVEN",
        gripper_count=6,
        length_m=0.26,
        width_m=0.19,
        supply_pressure=55_000.0,
        expected="Pass",
    )
    base.update(overrides)
    return CorpusRow(**base)


def test_scenario_from_row_reference_masses():
    bag = scenario_from_row(make_row())
    facing = scenario_from_row(make_row(application="Pocket Facing"))
    assert bag.fabric.mass == 2.5e-3
    assert facing.fabric.mass == 2.0e-3
    assert bag.generator.max_vacuum == 55_000.0
    assert bag.cup.count == 6


def test_scenario_from_row_unknown_application():
    with pytest.raises(ValidationError, match="Sleeve"):
        scenario_from_row(make_row(application="Sleeve"))


def test_run_corpus_empty():
    assert run_corpus([]) == []


def test_run_corpus_isolates_bad_rows():
    rows = [make_row(lot=str(i + 1)) for i in range(11)]
    rows.insert(4, make_row(lot="bad", gripper_count=0))
    entries = run_corpus(rows)
    assert len(entries) == 12
    errors = [e for e in entries if e.error is not None]
    assert len(errors) == 1
    assert errors[0].label == "bad"
    assert "count" in errors[0].error
    assert sum(e.report is not None for e in entries) == 11


def test_run_corpus_accepts_scenarios(bag_scenario):
    entries = run_corpus([bag_scenario])
    assert entries[0].report is not None
    assert entries[0].label == "pocket_bag"


def test_run_corpus_preserves_order():
    rows = [make_row(lot=str(i)) for i in range(5)]
    entries = run_corpus(rows)
    assert [e.label for e in entries] == [str(i) for i in range(5)]
    assert [e.index for e in entries] == list(range(5))
