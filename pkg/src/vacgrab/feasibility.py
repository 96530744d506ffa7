"""Scenario evaluation: compose statics, line losses, and layout geometry
into a single pass/fail grasp verdict with a full audit trail.

The pipeline per scenario:

1. holding force for the selected load case;
2. required vacuum via force = pressure * area, both for one cup
   carrying the whole piece (conservative) and shared across the bank;
3. line loss summed over consecutive bore changes;
4. net vacuum left at the cup;
5. with a calibrated grabbing circle: gripper layout, per-position
   effective ratios, and edge-inflated minimum pressures;
6. the verdict.

Verdict rules: Fail when the net supply cannot cover the largest
pressure demand. Otherwise air-impermeable fabric passes outright
(excess suction cannot pull air through it, so multi-layer pickup is
not a risk). Air-permeable fabric passes only inside a known pressure
window; above the window it is PassWithMultiLayerRisk, and without a
calibrated window maximum it is Uncalibrated.

Evaluations are pure and deterministic; corpus rows are independent,
so a batch may run them in any order without changing the output
ordering, and one bad row never aborts the rest.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Iterable

from . import pneumatics, statics
from .model import (
    FabricPiece,
    MotionProfile,
    Permeability,
    PhysicalConstants,
    PipeSegment,
    SuctionCup,
    VacuumGenerator,
    ValidationError,
)
from .vgtc import Layout, Vgtc, adjusted_min_pressure, effective_ratio, generate_layout

# reference masses when a corpus row names only the application
MASS_BY_APPLICATION = {
    "pocket bag": 2.5e-3,  # kg
    "pocket facing": 2.0e-3,  # kg
}
DEFAULT_FRICTION = 0.5
DEFAULT_EDGE_MARGIN = 0.02  # m
DEFAULT_ORIFICE_DIAMETER = 2e-3  # m


class Verdict(enum.Enum):
    PASS = "Pass"
    FAIL = "Fail"
    PASS_WITH_MULTI_LAYER_RISK = "PassWithMultiLayerRisk"
    UNCALIBRATED = "Uncalibrated"


@dataclass(frozen=True)
class Scenario:
    """Everything needed to judge one pick: piece, rig, motion, line."""

    fabric: FabricPiece
    motion: MotionProfile
    cup: SuctionCup
    generator: VacuumGenerator
    line: tuple[PipeSegment, ...]
    upstream_velocity: float  # m/s entering the first segment
    vgtc: Vgtc | None = None
    margin: float = DEFAULT_EDGE_MARGIN

    def __post_init__(self):
        object.__setattr__(self, "line", tuple(self.line))
        if not self.line:
            raise ValidationError("line must have at least one segment")
        if not all(isinstance(seg, PipeSegment) for seg in self.line):
            raise ValidationError("line entries must be PipeSegment values")
        if self.upstream_velocity < 0:
            raise ValidationError(
                f"upstream_velocity must be >= 0, got {self.upstream_velocity}"
            )
        if self.margin < 0:
            raise ValidationError(f"margin must be >= 0, got {self.margin}")


@dataclass(frozen=True)
class GraspReport:
    """Audit trail for one evaluated scenario."""

    fabric_id: str
    gripper_count: int
    holding_force: float  # N
    required_pressure_single_cup: float  # Pa, whole piece on one cup
    required_pressure_shared: float  # Pa, piece shared across the bank
    line_loss: float  # Pa
    net_supply: float  # Pa magnitude at the cup
    layout: Layout | None
    effective_ratios: tuple[float, ...]
    verdict: Verdict
    advisories: tuple[str, ...]


def _stage(name: str, exc: Exception) -> ValidationError:
    return ValidationError(f"{name} stage: {exc}")


def evaluate(
    scenario: Scenario,
    consts: PhysicalConstants = PhysicalConstants(),
) -> GraspReport:
    """Run the full grasp-feasibility pipeline for one scenario."""
    advisories: list[str] = []

    try:
        force = statics.holding_force(scenario.fabric, scenario.motion, consts)
    except ValidationError as exc:
        raise _stage("holding-force", exc) from exc

    try:
        req_single = statics.required_pressure(force.force, scenario.cup)
        shared_force = statics.per_gripper_force(force.force, scenario.cup)
        req_shared = statics.required_pressure(shared_force, scenario.cup)
    except ValidationError as exc:
        raise _stage("required-pressure", exc) from exc

    try:
        total_loss, steps = pneumatics.line_loss_total(
            scenario.line, scenario.upstream_velocity, consts
        )
    except ValidationError as exc:
        raise _stage("line-loss", exc) from exc
    for i, step in enumerate(steps, start=1):
        if step.mach_advisory:
            advisories.append(
                f"line step {i}: velocity {max(step.upstream_velocity, step.downstream_velocity):.1f} m/s "
                f"exceeds {pneumatics.MACH_ADVISORY_VELOCITY:.0f} m/s; "
                "incompressible model unreliable"
            )
        if step.pressure_recovery:
            advisories.append(f"line step {i}: bore expands, pressure recovery predicted")
    if total_loss < 0:
        advisories.append("net line pressure recovery ignored; loss clamped to 0")
        total_loss = 0.0

    net = pneumatics.net_supply_vacuum(scenario.generator, total_loss)
    if net.clamped:
        advisories.append("line loss exceeds generator vacuum; no usable vacuum at the cup")

    layout: Layout | None = None
    ratios: tuple[float, ...] = ()
    demand = req_single
    window = None
    if scenario.vgtc is not None:
        window = scenario.vgtc.pressure_window
        try:
            layout = generate_layout(
                scenario.fabric.outline, scenario.margin, scenario.vgtc.radius
            )
            ratios = tuple(
                effective_ratio(replace(scenario.vgtc, center=pos), scenario.fabric.outline)
                for pos in layout.positions
            )
            inflated = [adjusted_min_pressure(window, r) for r in ratios]
        except ValidationError as exc:
            raise _stage("layout", exc) from exc
        if inflated:
            demand = max(demand, max(inflated))

    permeable = scenario.fabric.permeability is Permeability.AIR_PERMEABLE
    p_max = window.p_max if window is not None else None
    if net.pressure < demand:
        verdict = Verdict.FAIL
    elif permeable:
        if p_max is None:
            verdict = Verdict.UNCALIBRATED
            advisories.append(
                "air-permeable fabric with no calibrated window maximum; "
                "single-layer pickup not assured"
            )
        elif net.pressure > p_max:
            verdict = Verdict.PASS_WITH_MULTI_LAYER_RISK
            advisories.append(
                f"net supply {net.pressure:.0f} Pa exceeds window maximum {p_max:.0f} Pa; "
                "may lift more than one layer"
            )
        else:
            verdict = Verdict.PASS
    else:
        verdict = Verdict.PASS
        if p_max is not None and net.pressure > p_max:
            advisories.append(
                f"net supply {net.pressure:.0f} Pa exceeds window maximum {p_max:.0f} Pa; "
                "harmless for air-impermeable fabric"
            )

    return GraspReport(
        fabric_id=scenario.fabric.id,
        gripper_count=scenario.cup.count,
        holding_force=force.force,
        required_pressure_single_cup=req_single,
        required_pressure_shared=req_shared,
        line_loss=total_loss,
        net_supply=net.pressure,
        layout=layout,
        effective_ratios=ratios,
        verdict=verdict,
        advisories=tuple(advisories),
    )


# ---------------------------------------------------------------------------
# corpus batches

@dataclass(frozen=True)
class CorpusRow:
    """One line of a grabbing-test table, SI-converted."""

    lot: str
    application: str
    fabric_code: str
    material: str
    gripper_count: int
    length_m: float
    width_m: float
    supply_pressure: float  # Pa magnitude, net at the gripper
    expected: str  # recorded bench result, e.g. "Pass"


@dataclass(frozen=True)
class CorpusEntry:
    """run_corpus output slot: a report, or an error that replaced it."""

    index: int
    label: str
    report: GraspReport | None
    error: str | None


def scenario_from_row(row: CorpusRow) -> Scenario:
    """Build the reference rig for a corpus row.

    The table records the vacuum delivered at the gripper, so the
    generator is set to that magnitude over a lossless single-segment
    line. Masses come from the reference pieces keyed by application.
    """
    key = row.application.strip().casefold()
    if key not in MASS_BY_APPLICATION:
        raise ValidationError(
            f"no reference mass for application {row.application!r}; "
            f"known: {sorted(MASS_BY_APPLICATION)}"
        )
    fabric = FabricPiece(
        id=f"lot{row.lot}-{row.fabric_code}",
        outline=(row.length_m, row.width_m),
        mass=MASS_BY_APPLICATION[key],
        friction_coefficient=DEFAULT_FRICTION,
        permeability=Permeability.AIR_IMPERMEABLE,
        material=row.material,
    )
    return Scenario(
        fabric=fabric,
        motion=MotionProfile(),
        cup=SuctionCup(orifice_diameter=DEFAULT_ORIFICE_DIAMETER, count=row.gripper_count),
        generator=VacuumGenerator(max_vacuum=row.supply_pressure),
        line=(PipeSegment(inner_diameter=2e-3),),
        upstream_velocity=0.0,
    )


def run_corpus(rows: Iterable[CorpusRow | Scenario]) -> list[CorpusEntry]:
    """Evaluate rows in order; a bad row becomes an error entry, not an abort."""
    entries: list[CorpusEntry] = []
    for index, row in enumerate(rows):
        if isinstance(row, Scenario):
            label = row.fabric.id
        else:
            label = getattr(row, "lot", str(index + 1))
        try:
            scenario = row if isinstance(row, Scenario) else scenario_from_row(row)
            report = evaluate(scenario)
        except (ValidationError, ValueError) as exc:
            entries.append(CorpusEntry(index=index, label=label, report=None, error=str(exc)))
        else:
            entries.append(CorpusEntry(index=index, label=label, report=report, error=None))
    return entries
