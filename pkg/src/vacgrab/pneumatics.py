"""Incompressible line-flow analysis for the suction side.

The model is a steady energy balance between any two stations of the
line plus volumetric continuity across bore changes:

    P1 + rho*v1^2/2 + rho*g*h1 + rho*g*H_pump
        = P2 + rho*v2^2/2 + rho*g*h2 + rho*g*(H_loss + H_turbine)

    A1*v1 = A2*v2

Substituting continuity into the level, head-free balance gives the
constriction drop used for hose steps:

    P1 - P2 = rho/2 * v1^2 * ((A1/A2)^2 - 1)

The incompressible model is kept even where the implied downstream
velocity turns transonic; results carry a Mach advisory flag whenever
a velocity exceeds MACH_ADVISORY_VELOCITY so callers can surface an
honest warning instead of silently trusting the arithmetic.

Head terms are meters of fluid column; conversion to Pa uses rho*g of
the working air from PhysicalConstants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .model import (
    EnergyHeads,
    FlowState,
    PhysicalConstants,
    PipeSegment,
    VacuumGenerator,
    ValidationError,
)

# above this speed the incompressible assumption is not trustworthy
MACH_ADVISORY_VELOCITY = 100.0  # m/s


@dataclass(frozen=True)
class LineLossResult:
    """Pressure change across one bore step.

    delta_p is signed: positive for a contraction (a loss), negative
    for an expansion (pressure recovery, flagged because the model was
    derived for contractions).
    """

    delta_p: float  # Pa
    upstream_velocity: float  # m/s
    downstream_velocity: float  # m/s
    area_ratio: float  # A1/A2
    pressure_recovery: bool
    mach_advisory: bool


@dataclass(frozen=True)
class NetSupplyResult:
    """Vacuum magnitude left at the cup after line losses."""

    pressure: float  # Pa magnitude; 0 means no usable vacuum reaches the cup
    clamped: bool  # True when losses exceeded the generator's vacuum


def continuity_velocity(a1: float, v1: float, a2: float) -> float:
    """Downstream velocity from volumetric continuity: v2 = v1 * A1/A2."""
    if a1 <= 0 or a2 <= 0:
        raise ValidationError(f"areas must be > 0, got a1={a1}, a2={a2}")
    if v1 < 0:
        raise ValidationError(f"velocity must be >= 0, got {v1}")
    return v1 * (a1 / a2)


def constriction_pressure_drop(
    upstream: PipeSegment,
    downstream: PipeSegment,
    v1: float,
    consts: PhysicalConstants = PhysicalConstants(),
) -> LineLossResult:
    """Pressure drop across a bore change at equal elevation.

    Segment elevations are ignored here; route elevation changes
    through solve_pressure_from_balance instead.
    """
    if v1 < 0:
        raise ValidationError(f"upstream velocity must be >= 0, got {v1}")
    a1 = upstream.area
    a2 = downstream.area
    ratio = a1 / a2
    v2 = continuity_velocity(a1, v1, a2)
    delta_p = 0.5 * consts.air_density * v1 * v1 * (ratio * ratio - 1.0)
    return LineLossResult(
        delta_p=delta_p,
        upstream_velocity=v1,
        downstream_velocity=v2,
        area_ratio=ratio,
        pressure_recovery=delta_p < 0.0,
        mach_advisory=max(v1, v2) > MACH_ADVISORY_VELOCITY,
    )


def bernoulli_balance(
    state1: FlowState,
    state2: FlowState,
    heads: EnergyHeads = EnergyHeads(),
    consts: PhysicalConstants = PhysicalConstants(),
) -> float:
    """Signed energy residual between two stations, in Pa.

    Zero means the states are energy-consistent. The head form is
    multiplied through by rho*g so the residual is directly a pressure.
    """
    rho = consts.air_density
    g = consts.gravity
    lhs = (
        state1.pressure
        + 0.5 * rho * state1.velocity**2
        + rho * g * state1.elevation
        + rho * g * heads.pump_head
    )
    rhs = (
        state2.pressure
        + 0.5 * rho * state2.velocity**2
        + rho * g * state2.elevation
        + rho * g * (heads.loss_head + heads.turbine_head)
    )
    return lhs - rhs


def solve_pressure_from_balance(
    known: FlowState,
    unknown_velocity: float,
    unknown_elevation: float,
    heads: EnergyHeads = EnergyHeads(),
    consts: PhysicalConstants = PhysicalConstants(),
) -> float:
    """Station-2 pressure that balances the energy equation exactly."""
    if unknown_velocity < 0:
        raise ValidationError(f"velocity must be >= 0, got {unknown_velocity}")
    rho = consts.air_density
    g = consts.gravity
    return (
        known.pressure
        + 0.5 * rho * (known.velocity**2 - unknown_velocity**2)
        + rho * g * (known.elevation - unknown_elevation)
        + rho * g * (heads.pump_head - heads.loss_head - heads.turbine_head)
    )


def net_supply_vacuum(generator: VacuumGenerator, loss: float) -> NetSupplyResult:
    """Vacuum magnitude reaching the cup: max(0, max_vacuum - loss)."""
    if loss < 0:
        raise ValidationError(f"loss must be >= 0, got {loss}")
    remaining = generator.max_vacuum - loss
    return NetSupplyResult(pressure=max(0.0, remaining), clamped=remaining < 0.0)


def parallel_flow_split(
    total_flow: float,
    branch_count: int,
    weights: Sequence[float] | None = None,
) -> list[float]:
    """Split a generator flow across parallel branches.

    Equal split when no weights are given, proportional otherwise. The
    last branch absorbs the rounding residue so the returned flows sum
    back to total_flow within one ulp.
    """
    if not isinstance(branch_count, int) or isinstance(branch_count, bool) or branch_count < 1:
        raise ValidationError(f"branch_count must be an integer >= 1, got {branch_count!r}")
    if total_flow < 0:
        raise ValidationError(f"total_flow must be >= 0, got {total_flow}")
    if weights is None:
        w = [1.0] * branch_count
    else:
        w = [float(x) for x in weights]
        if len(w) != branch_count:
            raise ValidationError(
                f"weights length {len(w)} does not match branch_count {branch_count}"
            )
        if any(x <= 0 for x in w):
            raise ValidationError("weights must all be > 0")
    wsum = math.fsum(w)
    flows = [total_flow * (x / wsum) for x in w]
    flows[-1] = total_flow - math.fsum(flows[:-1])
    return flows


def flow_rate(volume: float, time: float) -> float:
    """Volumetric flow from a volume moved over a time: Q = V/t."""
    if time <= 0:
        raise ValidationError(f"time must be > 0, got {time}")
    if volume < 0:
        raise ValidationError(f"volume must be >= 0, got {volume}")
    return volume / time


def flow_velocity(flow: float, area: float) -> float:
    """Mean velocity for a flow through a cross-section: v = Q/A."""
    if area <= 0:
        raise ValidationError(f"area must be > 0, got {area}")
    if flow < 0:
        raise ValidationError(f"flow must be >= 0, got {flow}")
    return flow / area


def line_loss_total(
    segments: Sequence[PipeSegment],
    upstream_velocity: float,
    consts: PhysicalConstants = PhysicalConstants(),
) -> tuple[float, list[LineLossResult]]:
    """Summed constriction drop over consecutive segment pairs.

    The velocity entering the first segment is given; velocities in
    later segments follow from continuity. A single-segment line has no
    bore change and loses nothing.
    """
    if not segments:
        raise ValidationError("line must have at least one segment")
    details: list[LineLossResult] = []
    v = upstream_velocity
    for up, down in zip(segments, segments[1:]):
        step = constriction_pressure_drop(up, down, v, consts)
        details.append(step)
        v = step.downstream_velocity
    total = math.fsum(d.delta_p for d in details)
    return total, details
