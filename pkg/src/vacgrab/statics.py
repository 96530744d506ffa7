"""Theoretical holding forces and the suction pressure needed to reach them.

Two load cases are modeled. A plate lift pulls the piece straight up:
force = m * (g + a) * S. A friction lift must also defeat sliding and
divides by the friction coefficient: force = (m / mu) * (g + a) * S.
Which case fits a given pick is a modeling choice; nothing here
guesses. The MotionProfile selector decides, and callers wanting the
conservative number use the friction case (never smaller for mu <= 1).

required_pressure() inverts force = pressure * orifice_area for one
cup; per_gripper_force() splits a whole-piece force across a cup bank.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import (
    FabricPiece,
    LoadCase,
    MotionProfile,
    PhysicalConstants,
    SuctionCup,
    ValidationError,
)


@dataclass(frozen=True)
class HoldingForceResult:
    """Computed holding force with the inputs echoed for the audit trail."""

    force: float  # N
    load_case: LoadCase
    inputs_echo: tuple[float, float, float, float, float]  # (m, mu, g, a, S)


def _echo(fabric: FabricPiece, motion: MotionProfile, consts: PhysicalConstants):
    return (
        fabric.mass,
        fabric.friction_coefficient,
        consts.gravity,
        motion.acceleration,
        motion.safety_factor,
    )


def holding_force_plate_lift(
    fabric: FabricPiece,
    motion: MotionProfile,
    consts: PhysicalConstants = PhysicalConstants(),
) -> HoldingForceResult:
    """Holding force for a straight vertical plate lift: m*(g+a)*S."""
    if motion.load_case is not LoadCase.PLATE_LIFT:
        raise ValidationError(
            f"motion.load_case must be plate_lift, got {motion.load_case.value}"
        )
    force = fabric.mass * (consts.gravity + motion.acceleration) * motion.safety_factor
    return HoldingForceResult(force, LoadCase.PLATE_LIFT, _echo(fabric, motion, consts))


def holding_force_friction_lift(
    fabric: FabricPiece,
    motion: MotionProfile,
    consts: PhysicalConstants = PhysicalConstants(),
) -> HoldingForceResult:
    """Holding force when friction carries the piece: (m/mu)*(g+a)*S."""
    if motion.load_case is not LoadCase.FRICTION_LIFT:
        raise ValidationError(
            f"motion.load_case must be friction_lift, got {motion.load_case.value}"
        )
    if fabric.friction_coefficient <= 0:
        raise ValidationError("friction coefficient must be > 0 for a friction lift")
    force = (
        fabric.mass
        / fabric.friction_coefficient
        * (consts.gravity + motion.acceleration)
        * motion.safety_factor
    )
    return HoldingForceResult(force, LoadCase.FRICTION_LIFT, _echo(fabric, motion, consts))


def holding_force(
    fabric: FabricPiece,
    motion: MotionProfile,
    consts: PhysicalConstants = PhysicalConstants(),
) -> HoldingForceResult:
    """Dispatch on motion.load_case."""
    if motion.load_case is LoadCase.PLATE_LIFT:
        return holding_force_plate_lift(fabric, motion, consts)
    return holding_force_friction_lift(fabric, motion, consts)


def required_pressure(force: float, cup: SuctionCup) -> float:
    """Vacuum magnitude one cup needs to produce `force`: P = F / A."""
    if force < 0:
        raise ValidationError(f"force must be >= 0, got {force}")
    return force / cup.area


def per_gripper_force(total_force: float, cup: SuctionCup) -> float:
    """Share of the whole-piece force carried by each cup in the bank."""
    if total_force < 0:
        raise ValidationError(f"total_force must be >= 0, got {total_force}")
    return total_force / cup.count
