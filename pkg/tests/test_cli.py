import json
from importlib import resources

import pytest

from vacgrab import (
    Permeability,
    PipeSegment,
    Polygon,
    PressureWindow,
    Verdict,
    Vgtc,
    evaluate,
    generate_layout,
)
from vacgrab.cli import (
    ConfigError,
    emit_batch,
    emit_layout_svg,
    emit_report,
    emit_scenario_config,
    load_bundled_corpus,
    main,
    parse_config,
    parse_corpus_csv,
    parse_report,
)
from vacgrab.feasibility import CorpusEntry, run_corpus
from conftest import make_scenario


def shipped(name: str) -> str:
    return resources.files("vacgrab").joinpath(f"data/{name}").read_text("utf-8")


@pytest.fixture
def bag_config(tmp_path):
    path = tmp_path / "pocket_bag.conf"
    path.write_text(shipped("pocket_bag.conf"))
    return str(path)


@pytest.fixture
def facing_config(tmp_path):
    path = tmp_path / "pocket_facing.conf"
    path.write_text(shipped("pocket_facing.conf"))
    return str(path)


# ---------------------------------------------------------------------------
# config parsing

def test_shipped_bag_config_matches_reference_numbers():
    scenario = parse_config(shipped("pocket_bag.conf"))
    assert scenario.fabric.mass == pytest.approx(2.5e-3, rel=1e-12)
    assert scenario.generator.max_vacuum == 92_000.0
    assert scenario.generator.supply_flow_rate == pytest.approx(1.05e-3, rel=1e-12)
    assert scenario.line[0].inner_diameter == pytest.approx(5.2e-3, rel=1e-12)
    assert scenario.upstream_velocity == 37.14
    report = evaluate(scenario)
    assert report.holding_force == pytest.approx(0.148, abs=1e-3)
    assert report.required_pressure_single_cup == pytest.approx(47_111, rel=0.01)
    assert report.line_loss == pytest.approx(37_018, abs=500)
    assert report.verdict is Verdict.PASS


def test_shipped_facing_config_units_override():
    scenario = parse_config(shipped("pocket_facing.conf"))
    assert scenario.fabric.outline.area == pytest.approx(0.26 * 0.05, rel=1e-9)
    assert scenario.vgtc is not None
    assert scenario.vgtc.radius == pytest.approx(0.044, rel=1e-12)
    assert scenario.margin == pytest.approx(0.02, rel=1e-12)


def test_empty_config_missing_fabric():
    with pytest.raises(ConfigError, match="missing section: fabric"):
        parse_config("")


def test_negative_mass_names_invariant():
    text = shipped("pocket_bag.conf").replace("mass = 2.5 g", "mass = -1 g")
    with pytest.raises(Exception, match="mass must be > 0"):
        parse_config(text)


def test_unknown_key_rejected_with_line_number():
    text = shipped("pocket_bag.conf") + "\n[fabric]\n"
    with pytest.raises(ConfigError, match="duplicate section"):
        parse_config(text)
    text2 = shipped("pocket_bag.conf").replace("friction = 0.5", "fricton = 0.5")
    with pytest.raises(ConfigError, match="fricton"):
        parse_config(text2)


def test_unknown_unit_suffix_rejected():
    text = shipped("pocket_bag.conf").replace("mass = 2.5 g", "mass = 2.5 lb")
    with pytest.raises(ConfigError, match="lb"):
        parse_config(text)


def test_syntax_error_carries_line_number():
    bad = "[fabric]\nid pocket\n"
    with pytest.raises(ConfigError, match="line 2"):
        parse_config(bad)


def test_missing_line_section():
    text = "\n".join(
        line for line in shipped("pocket_bag.conf").splitlines() if line != "[line]"
    )
    with pytest.raises(ConfigError):
        parse_config(text)


def test_upstream_velocity_only_in_first_line_section():
    text = shipped("pocket_bag.conf").replace(
        "inner_diameter = 2 mm", "inner_diameter = 2 mm\nupstream_velocity = 1.0"
    )
    with pytest.raises(ConfigError, match="first"):
        parse_config(text)


def test_vertices_outline_parses():
    text = shipped("pocket_bag.conf").replace(
        "length = 26 cm\nwidth = 19 cm",
        "vertices = 0 cm, 0 cm; 26 cm, 0 cm; 26 cm, 19 cm; 0 cm, 19 cm",
    )
    scenario = parse_config(text)
    assert scenario.fabric.outline.area == pytest.approx(0.26 * 0.19, rel=1e-12)


def test_scenario_echo_round_trip(pocket_bag, std_line):
    window = PressureWindow(p_min=37_561.0, p_max=60_000.0)
    scenario = make_scenario(
        pocket_bag,
        std_line,
        vgtc=Vgtc(center=(0.01, 0.02), radius=0.044, pressure_window=window),
        margin=0.015,
    )
    assert parse_config(emit_scenario_config(scenario)) == scenario


def test_scenario_echo_round_trip_shipped_configs():
    for name in ("pocket_bag.conf", "pocket_facing.conf"):
        scenario = parse_config(shipped(name))
        assert parse_config(emit_scenario_config(scenario)) == scenario


# ---------------------------------------------------------------------------
# report emission

def test_structured_report_round_trip(bag_scenario):
    report = evaluate(bag_scenario)
    assert parse_report(emit_report(report, "structured")) == report


def test_structured_round_trip_with_layout(pocket_bag):
    scenario = make_scenario(
        pocket_bag,
        (PipeSegment(inner_diameter=5.2e-3), PipeSegment(inner_diameter=2e-3)),
        vgtc=Vgtc(center=(0, 0), radius=0.01, pressure_window=PressureWindow(p_min=30_000.0)),
    )
    report = evaluate(scenario)
    assert report.layout is not None
    assert parse_report(emit_report(report, "structured")) == report


def test_csv_report_reference_row(bag_scenario):
    report = evaluate(bag_scenario)
    text = emit_report(report, "csv").decode()
    header, row = text.strip().splitlines()
    assert header == "id,force_N,req_pressure_Pa,loss_Pa,net_Pa,gripper_count,verdict"
    cells = row.split(",")
    assert cells[0] == "pocket_bag"
    assert float(cells[1]) == pytest.approx(0.148, abs=1e-3)
    assert float(cells[2]) == pytest.approx(47_111, rel=0.01)
    assert float(cells[3]) == pytest.approx(37_018, abs=500)
    assert float(cells[4]) == pytest.approx(55_000, abs=500)
    assert cells[6] == "Pass"


def test_human_report_contains_verdict(bag_scenario):
    text = emit_report(evaluate(bag_scenario), "human").decode()
    assert "verdict" in text and "Pass" in text


def test_empty_batch_csv_is_header_only():
    assert emit_batch([], "csv").decode() == "id,force_N,req_pressure_Pa,loss_Pa,net_Pa,gripper_count,verdict\n"


def test_batch_error_entries_keep_slots(bag_scenario):
    entries = run_corpus([bag_scenario]) + [
        CorpusEntry(index=1, label="bad", report=None, error="boom")
    ]
    text = emit_batch(entries, "csv").decode()
    lines = text.strip().splitlines()
    assert len(lines) == 3
    assert "error: boom" in lines[2]
    structured = json.loads(emit_batch(entries, "structured").decode())
    assert structured[1]["error"] == "boom"


# ---------------------------------------------------------------------------
# corpus file handling

def test_bundled_corpus_loads_twelve_rows():
    rows = load_bundled_corpus()
    assert len(rows) == 12
    assert all(row.supply_pressure == 55_000.0 for row in rows)
    assert all(row.expected == "Pass" for row in rows)
    assert {row.gripper_count for row in rows} == {6, 8, 12}
    assert rows[0].length_m == pytest.approx(0.26, rel=1e-12)
    assert rows[0].width_m == pytest.approx(0.19, rel=1e-12)


def test_corpus_rejects_wrong_column_count():
    with pytest.raises(ConfigError, match="columns"):
        parse_corpus_csv("a,b,c\n")


def test_corpus_rejects_bad_outline():
    good = "h1,h2,h3,h4,h5,h6,h7,h8\n"
    with pytest.raises(ConfigError, match="outline"):
        parse_corpus_csv(good + "1,Pocket Bag,x,mat,6,26 by 19,-55kPa,Pass\n")


# ---------------------------------------------------------------------------
# SVG emission

def layout_fixture():
    outline = Polygon.rectangle(0.26, 0.19)
    vgtc = Vgtc(center=(0, 0), radius=0.02, pressure_window=PressureWindow(p_min=30_000.0))
    layout = generate_layout(outline, 0.03, 0.08)
    return layout, outline, vgtc


def test_svg_unclipped_layout_element_counts():
    layout, outline, vgtc = layout_fixture()
    svg = emit_layout_svg(layout, outline, vgtc).decode()
    assert svg.count('class="vgtc-ring"') == len(layout.positions)
    assert svg.count('class="grip-dot"') == len(layout.positions)
    assert svg.count('class="effective-shade"') == 0
    assert svg.startswith("<?xml")
    assert "</svg>" in svg


def test_svg_clipped_corner_circle():
    outline = Polygon.rectangle(0.26, 0.19)
    vgtc = Vgtc(center=(0, 0), radius=0.05, pressure_window=PressureWindow(p_min=30_000.0))
    from vacgrab.vgtc import Layout

    layout = Layout(positions=((0.02, 0.02),), spacing=0.05, margin=0.02, rows=1, cols=1)
    svg = emit_layout_svg(layout, outline, vgtc).decode()
    assert svg.count('class="effective-shade"') == 1
    assert 'clip-path="url(#fabric-clip)"' in svg


def test_svg_empty_layout_outline_only():
    outline = Polygon.rectangle(0.26, 0.19)
    vgtc = Vgtc(center=(0, 0), radius=0.02, pressure_window=PressureWindow(p_min=30_000.0))
    from vacgrab.vgtc import Layout

    layout = Layout(positions=(), spacing=0.05, margin=0.02, rows=0, cols=0)
    svg = emit_layout_svg(layout, outline, vgtc).decode()
    assert svg.count("<circle") == 0
    assert svg.count('class="fabric"') == 1


def test_svg_deterministic_bytes():
    layout, outline, vgtc = layout_fixture()
    assert emit_layout_svg(layout, outline, vgtc) == emit_layout_svg(layout, outline, vgtc)


# ---------------------------------------------------------------------------
# command dispatch and exit codes

def test_check_success_exit_zero(bag_config, capsys):
    assert main(["check", "--config", bag_config]) == 0
    out, err = capsys.readouterr()
    assert "verdict" in out and "Pass" in out
    assert "advisory" in err  # transonic warning goes to stderr


def test_check_strict_escalates_advisories(bag_config):
    assert main(["check", "--config", bag_config, "--strict"]) == 3


def test_usage_error_exit_one(capsys):
    assert main(["bogus"]) == 1
    assert "usage error" in capsys.readouterr().err


def test_missing_flag_exit_one(capsys):
    assert main(["check"]) == 1


def test_validation_error_exit_two(tmp_path, capsys):
    path = tmp_path / "bad.conf"
    path.write_text(shipped("pocket_bag.conf").replace("mass = 2.5 g", "mass = -1 g"))
    assert main(["force", "--config", str(path)]) == 2
    assert "mass" in capsys.readouterr().err


def test_missing_config_file_exit_two(capsys):
    assert main(["check", "--config", "/nonexistent/nope.conf"]) == 2


def test_force_command(bag_config, capsys):
    assert main(["force", "--config", bag_config]) == 0
    out = capsys.readouterr().out
    assert "0.1481" in out


def test_force_rejects_csv_format(bag_config, capsys):
    assert main(["force", "--config", bag_config, "--format", "csv"]) == 1


def test_pressure_command_structured(bag_config, capsys):
    assert main(["pressure", "--config", bag_config, "--format", "structured"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["required_pressure_single_cup"] == pytest.approx(47_111, rel=0.01)
    assert payload["cup_count"] == 6


def test_line_loss_command(bag_config, capsys):
    assert main(["line-loss", "--config", bag_config, "--format", "structured"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["total_loss"] == pytest.approx(37_018, abs=500)
    assert payload["net_supply"] == pytest.approx(55_000, abs=500)


def test_plan_writes_svg(facing_config, tmp_path, capsys):
    svg_path = tmp_path / "layout.svg"
    assert main(["plan", "--config", facing_config, "--svg", str(svg_path)]) == 0
    out = capsys.readouterr().out
    assert "6 grippers" in out
    svg = svg_path.read_text()
    assert svg.count('class="vgtc-ring"') == 6


def test_plan_spacing_override(facing_config, capsys):
    assert main(["plan", "--config", facing_config, "--spacing", "2.2 cm"]) == 0
    assert "11 cols" in capsys.readouterr().out


def test_check_svg_requires_circle(bag_config, tmp_path):
    svg_path = tmp_path / "out.svg"
    assert main(["check", "--config", bag_config, "--svg", str(svg_path)]) == 1


def test_check_svg_with_circle(facing_config, tmp_path, capsys):
    svg_path = tmp_path / "out.svg"
    assert main(["check", "--config", facing_config, "--svg", str(svg_path)]) == 0
    svg = svg_path.read_text()
    assert svg.count('class="vgtc-ring"') == 6
    # every circle overhangs the 5 cm strip, so all six are shaded
    assert svg.count('class="effective-shade"') == 6


def test_calibrate_command(facing_config, capsys):
    assert main(["calibrate", "--config", facing_config, "--target-count", "6"]) == 0
    out = capsys.readouterr().out
    assert "0.0440" in out


def test_calibrate_structured_empty(facing_config, capsys):
    code = main([
        "calibrate", "--config", facing_config, "--target-count", "7",
        "--range", "5 cm,8 cm", "--format", "structured",
    ])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["intervals"] == []


def test_batch_bundled_corpus(capsys):
    assert main(["batch", "--format", "csv"]) == 0
    out = capsys.readouterr().out
    lines = out.strip().splitlines()
    assert len(lines) == 13
    assert all(line.endswith("Pass") for line in lines[1:])


def test_batch_custom_corpus(tmp_path, capsys):
    path = tmp_path / "corpus.csv"
    path.write_text(
        "h1,h2,h3,h4,h5,h6,h7,h8\n"
        "1,Pocket Bag,x,mat,6,26cm x 19cm,-55kPa,Pass\n"
        "2,Sleeve,y,mat,6,10cm x 10cm,-55kPa,Pass\n"
    )
    assert main(["batch", "--corpus", str(path), "--format", "csv"]) == 0
    out, err = capsys.readouterr()
    lines = out.strip().splitlines()
    assert len(lines) == 3
    assert lines[1].endswith("Pass")
    assert "error" in lines[2]
