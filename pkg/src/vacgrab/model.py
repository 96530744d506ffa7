"""Shared domain model: value types, physical constants, units, geometry.

Everything downstream (statics, pneumatics, layout planning, the CLI)
builds on the types defined here. All stored quantities are SI:
kilograms, meters, seconds, pascals, cubic meters per second. Bench
units (g, cm, kPa, bar, L/min) are converted once at the I/O boundary
via convert_units() and never appear internally.

Vacuum levels are stored as positive magnitudes of negative gauge
pressure; signed gauge values exist only in input/output text. This
keeps comparisons like "is 55 kPa of vacuum enough for a 47.1 kPa
demand" free of sign-convention bugs.

Every type validates its invariants in __post_init__ and is immutable
afterwards, so an instance that exists is valid and safe to share
across threads.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass


class ValidationError(ValueError):
    """A value violated a domain invariant at construction time."""


class UnitError(ValueError):
    """Unknown unit name, or a conversion across dimensions."""


# ---------------------------------------------------------------------------
# units

# unit name -> (dimension, multiplicative factor to the SI base unit)
_UNIT_TABLE: dict[str, tuple[str, float]] = {
    "g": ("mass", 1e-3),
    "kg": ("mass", 1.0),
    "mm": ("length", 1e-3),
    "cm": ("length", 1e-2),
    "m": ("length", 1.0),
    "kPa": ("pressure", 1e3),
    "Pa": ("pressure", 1.0),
    "bar": ("pressure", 1e5),
    "L/min": ("flow", 1.0 / 60_000.0),
    "m3/s": ("flow", 1.0),
}

_UNIT_ALIASES = {"m³/s": "m3/s"}

# canonical SI unit name per dimension
SI_UNIT = {"mass": "kg", "length": "m", "pressure": "Pa", "flow": "m3/s"}


def _lookup_unit(name: str) -> tuple[str, float]:
    unit = _UNIT_ALIASES.get(name, name)
    try:
        return _UNIT_TABLE[unit]
    except KeyError:
        raise UnitError(f"unknown unit {name!r}") from None


def supported_units(dimension: str) -> tuple[str, ...]:
    """Unit names accepted for one dimension (mass, length, pressure, flow)."""
    return tuple(u for u, (dim, _) in _UNIT_TABLE.items() if dim == dimension)


def convert_units(value: float, from_unit: str, to_unit: str) -> float:
    """Convert a value between two units of the same dimension.

    Supported: mass g/kg, length mm/cm/m, pressure kPa/Pa/bar, flow
    L/min and m3/s. A pair that mixes dimensions raises UnitError
    naming both units.
    """
    dim_from, factor_from = _lookup_unit(from_unit)
    dim_to, factor_to = _lookup_unit(to_unit)
    if dim_from != dim_to:
        raise UnitError(
            f"cannot convert {from_unit!r} ({dim_from}) to {to_unit!r} ({dim_to})"
        )
    return value * (factor_from / factor_to)


def circular_area(diameter: float) -> float:
    """Cross-section area of a circular orifice or pipe bore."""
    return math.pi * (diameter / 2.0) ** 2


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ValidationError(message)


# ---------------------------------------------------------------------------
# geometry

Point = tuple[float, float]

# points this close to a polygon boundary count as inside (closed polygon)
BOUNDARY_TOL = 1e-9


def _cross(o: Point, a: Point, b: Point) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _on_segment(p: Point, q: Point, r: Point) -> bool:
    # r is known collinear with p-q; is it within the bounding box?
    return (
        min(p[0], q[0]) <= r[0] <= max(p[0], q[0])
        and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])
    )


def _segments_intersect(p1: Point, p2: Point, q1: Point, q2: Point) -> bool:
    """True if closed segments p1-p2 and q1-q2 share any point."""
    d1 = _cross(q1, q2, p1)
    d2 = _cross(q1, q2, p2)
    d3 = _cross(p1, p2, q1)
    d4 = _cross(p1, p2, q2)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and (
        (d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)
    ):
        return True
    if d1 == 0 and _on_segment(q1, q2, p1):
        return True
    if d2 == 0 and _on_segment(q1, q2, p2):
        return True
    if d3 == 0 and _on_segment(p1, p2, q1):
        return True
    if d4 == 0 and _on_segment(p1, p2, q2):
        return True
    return False


def _point_segment_distance(p: Point, a: Point, b: Point) -> float:
    ax, ay = a
    bx, by = b
    px, py = p
    dx, dy = bx - ax, by - ay
    seg2 = dx * dx + dy * dy
    if seg2 == 0.0:
        return math.hypot(px - ax, py - ay)
    t = ((px - ax) * dx + (py - ay) * dy) / seg2
    t = min(1.0, max(0.0, t))
    return math.hypot(px - (ax + t * dx), py - (ay + t * dy))


@dataclass(frozen=True)
class Polygon:
    """Simple polygon in fabric-local coordinates (meters).

    Vertices may be given in either winding order; signed_area exposes
    the raw orientation, area the magnitude. Construction rejects
    degenerate outlines: fewer than three vertices, repeated
    consecutive points, zero area, or self-intersection.
    """

    vertices: tuple[Point, ...]

    def __post_init__(self):
        verts = tuple((float(x), float(y)) for x, y in self.vertices)
        object.__setattr__(self, "vertices", verts)
        _require(len(verts) >= 3, "polygon needs at least 3 vertices")
        n = len(verts)
        for i in range(n):
            if verts[i] == verts[(i + 1) % n]:
                raise ValidationError("polygon has a zero-length edge")
        _require(abs(self.signed_area) > 0.0, "polygon area must be positive")
        if self._self_intersects():
            raise ValidationError("polygon must be simple (non-self-intersecting)")

    @classmethod
    def rectangle(cls, length: float, width: float) -> "Polygon":
        """Axis-aligned rectangle with one corner at the origin."""
        _require(length > 0 and width > 0, "rectangle sides must be > 0")
        return cls(((0.0, 0.0), (length, 0.0), (length, width), (0.0, width)))

    @property
    def signed_area(self) -> float:
        verts = self.vertices
        total = 0.0
        for i, (x1, y1) in enumerate(verts):
            x2, y2 = verts[(i + 1) % len(verts)]
            total += x1 * y2 - x2 * y1
        return 0.5 * total

    @property
    def area(self) -> float:
        return abs(self.signed_area)

    @property
    def bounds(self) -> tuple[float, float, float, float]:
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    def edges(self):
        verts = self.vertices
        for i in range(len(verts)):
            yield verts[i], verts[(i + 1) % len(verts)]

    def _self_intersects(self) -> bool:
        edges = list(self.edges())
        n = len(edges)
        for i in range(n):
            for j in range(i + 1, n):
                if j == i + 1 or (i == 0 and j == n - 1):
                    continue  # adjacent edges share a vertex by design
                if _segments_intersect(*edges[i], *edges[j]):
                    return True
        return False

    def is_axis_aligned_rectangle(self, tol: float = BOUNDARY_TOL) -> bool:
        if len(self.vertices) != 4:
            return False
        for (x1, y1), (x2, y2) in self.edges():
            if abs(x2 - x1) > tol and abs(y2 - y1) > tol:
                return False
        x0, y0, x1, y1 = self.bounds
        return abs(self.area - (x1 - x0) * (y1 - y0)) <= tol * max(1.0, self.area)

    def contains(self, point: Point, tol: float = BOUNDARY_TOL) -> bool:
        """Closed-polygon membership: boundary points (within tol) are inside."""
        px, py = point
        for a, b in self.edges():
            if _point_segment_distance((px, py), a, b) <= tol:
                return True
        inside = False
        for (x1, y1), (x2, y2) in self.edges():
            if (y1 > py) != (y2 > py):
                x_at = x1 + (py - y1) * (x2 - x1) / (y2 - y1)
                if px < x_at:
                    inside = not inside
        return inside


def as_polygon(outline) -> Polygon:
    """Canonicalize an outline spec to a Polygon.

    Accepts a Polygon, a (length_m, width_m) pair for a rectangle, or a
    sequence of (x, y) vertices. Rectangles become 4-vertex polygons so
    a single geometry path serves every outline.
    """
    if isinstance(outline, Polygon):
        return outline
    seq = tuple(outline)
    if len(seq) == 2 and all(isinstance(v, (int, float)) for v in seq):
        return Polygon.rectangle(float(seq[0]), float(seq[1]))
    return Polygon(tuple((float(x), float(y)) for x, y in seq))


# ---------------------------------------------------------------------------
# enums

class Permeability(enum.Enum):
    AIR_IMPERMEABLE = "impermeable"
    AIR_PERMEABLE = "permeable"


class LoadCase(enum.Enum):
    PLATE_LIFT = "plate_lift"
    FRICTION_LIFT = "friction_lift"


# ---------------------------------------------------------------------------
# value types

@dataclass(frozen=True)
class PhysicalConstants:
    """Ambient air and gravity constants used throughout.

    kinematic_viscosity is carried for future friction-loss extensions;
    the current loss model does not consume it.
    """

    gravity: float = 9.81  # m/s^2
    air_density: float = 1.204  # kg/m^3 at 101.325 kPa, 20 C
    kinematic_viscosity: float = 1.6e-5  # m^2/s at 20 C

    def __post_init__(self):
        _require(self.gravity > 0, f"gravity must be > 0, got {self.gravity}")
        _require(self.air_density > 0, f"air_density must be > 0, got {self.air_density}")
        _require(
            self.kinematic_viscosity > 0,
            f"kinematic_viscosity must be > 0, got {self.kinematic_viscosity}",
        )


@dataclass(frozen=True)
class FabricPiece:
    """One cut fabric piece to be grasped."""

    id: str
    outline: Polygon
    mass: float  # kg
    friction_coefficient: float  # dimensionless, (0, 2]
    permeability: Permeability = Permeability.AIR_IMPERMEABLE
    material: str = ""

    def __post_init__(self):
        object.__setattr__(self, "outline", as_polygon(self.outline))
        _require(self.mass > 0, f"mass must be > 0, got {self.mass}")
        _require(
            0 < self.friction_coefficient <= 2,
            f"friction_coefficient must be in (0, 2], got {self.friction_coefficient}",
        )
        _require(
            isinstance(self.permeability, Permeability),
            "permeability must be a Permeability value",
        )


@dataclass(frozen=True)
class MotionProfile:
    """Pick-path kinematics and the safety margin applied to forces."""

    acceleration: float = 5.0  # m/s^2
    safety_factor: float = 2.0
    load_case: LoadCase = LoadCase.FRICTION_LIFT
    lift_height: float = 0.20  # m
    translate_distance: float = 0.50  # m

    def __post_init__(self):
        _require(self.acceleration >= 0, f"acceleration must be >= 0, got {self.acceleration}")
        _require(self.safety_factor >= 1, f"safety_factor must be >= 1, got {self.safety_factor}")
        _require(isinstance(self.load_case, LoadCase), "load_case must be a LoadCase value")
        _require(self.lift_height >= 0, f"lift_height must be >= 0, got {self.lift_height}")
        _require(
            self.translate_distance >= 0,
            f"translate_distance must be >= 0, got {self.translate_distance}",
        )


@dataclass(frozen=True)
class SuctionCup:
    """A suction cup orifice and how many identical cups share the load."""

    orifice_diameter: float  # m
    count: int = 1

    def __post_init__(self):
        _require(
            self.orifice_diameter > 0,
            f"orifice_diameter must be > 0, got {self.orifice_diameter}",
        )
        _require(
            isinstance(self.count, int) and not isinstance(self.count, bool) and self.count >= 1,
            f"count must be an integer >= 1, got {self.count!r}",
        )

    @property
    def area(self) -> float:
        return circular_area(self.orifice_diameter)


@dataclass(frozen=True)
class VacuumGenerator:
    """Compressed-air ejector spec feeding the suction line.

    max_vacuum is the magnitude of the deepest negative gauge pressure
    the unit can hold, bounded by one atmosphere.
    """

    max_vacuum: float = 92_000.0  # Pa magnitude
    supply_flow_rate: float = 63.0 / 60_000.0  # m^3/s (63 L/min)
    setup_pressure: float = 500_000.0  # Pa, compressed-air side
    nozzle_diameter: float = 1.5e-3  # m

    def __post_init__(self):
        _require(
            0 < self.max_vacuum <= 101_325,
            f"max_vacuum must be in (0, 101325] Pa, got {self.max_vacuum}",
        )
        _require(
            self.supply_flow_rate > 0,
            f"supply_flow_rate must be > 0, got {self.supply_flow_rate}",
        )
        _require(self.setup_pressure >= 0, f"setup_pressure must be >= 0, got {self.setup_pressure}")
        _require(self.nozzle_diameter > 0, f"nozzle_diameter must be > 0, got {self.nozzle_diameter}")


@dataclass(frozen=True)
class PipeSegment:
    """One hose segment of the suction line."""

    inner_diameter: float  # m
    length: float = 0.0  # m
    elevation: float = 0.0  # m

    def __post_init__(self):
        _require(self.inner_diameter > 0, f"inner_diameter must be > 0, got {self.inner_diameter}")
        _require(self.length >= 0, f"length must be >= 0, got {self.length}")

    @property
    def area(self) -> float:
        return circular_area(self.inner_diameter)


@dataclass(frozen=True)
class EnergyHeads:
    """Pump, loss, and turbine heads in meters of fluid column."""

    pump_head: float = 0.0
    loss_head: float = 0.0
    turbine_head: float = 0.0

    def __post_init__(self):
        _require(self.pump_head >= 0, f"pump_head must be >= 0, got {self.pump_head}")
        _require(self.loss_head >= 0, f"loss_head must be >= 0, got {self.loss_head}")
        _require(self.turbine_head >= 0, f"turbine_head must be >= 0, got {self.turbine_head}")


@dataclass(frozen=True)
class FlowState:
    """Pressure, speed, height, and volumetric flow at one line station."""

    pressure: float  # Pa, signed gauge
    velocity: float = 0.0  # m/s
    elevation: float = 0.0  # m
    volumetric_flow: float = 0.0  # m^3/s

    def __post_init__(self):
        _require(self.velocity >= 0, f"velocity must be >= 0, got {self.velocity}")
        _require(
            self.volumetric_flow >= 0,
            f"volumetric_flow must be >= 0, got {self.volumetric_flow}",
        )


@dataclass(frozen=True)
class PressureWindow:
    """Calibrated grabbing window for a single fabric layer.

    p_min is the smallest vacuum magnitude that lifts one layer; p_max
    the largest before more than one layer comes up. p_max is None
    until a bench test supplies it.
    """

    p_min: float  # Pa magnitude
    p_max: float | None = None

    def __post_init__(self):
        _require(self.p_min > 0, f"p_min must be > 0, got {self.p_min}")
        if self.p_max is not None:
            _require(
                self.p_max >= self.p_min,
                f"p_max ({self.p_max}) must be >= p_min ({self.p_min})",
            )
