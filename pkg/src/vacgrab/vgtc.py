"""Grabbing-circle geometry, edge-pressure inflation, and grid layouts.

A calibrated grabbing circle (center, radius, pressure window) models
where one and only one fabric layer is reliably picked up. When the
circle hangs over the fabric edge, only the part of its disk on the
fabric pulls; the effective ratio is that fraction of the disk area.
The minimum grabbing pressure is inflated by 1/ratio: required force
is fixed, effective area scales with the ratio, so pressure scales
inversely. The inflation law is a modeling choice, not a measured
curve; treat its outputs as conservative.

The disk/polygon intersection is exact. Each polygon edge contributes
a Green's theorem term: straight pieces inside the disk integrate as
origin triangles (shoelace), pieces outside integrate along the arc
their chord shadows (r^2/2 * wrapped angle). Summed over a CCW
boundary this yields the intersection area to floating-point accuracy
for any simple polygon, convex or not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import (
    BOUNDARY_TOL,
    Point,
    Polygon,
    PressureWindow,
    ValidationError,
)


@dataclass(frozen=True)
class Vgtc:
    """A grabbing circle: center and radius in fabric-local meters."""

    center: Point
    radius: float
    pressure_window: PressureWindow

    def __post_init__(self):
        object.__setattr__(
            self, "center", (float(self.center[0]), float(self.center[1]))
        )
        if self.radius <= 0:
            raise ValidationError(f"radius must be > 0, got {self.radius}")
        if not isinstance(self.pressure_window, PressureWindow):
            raise ValidationError("pressure_window must be a PressureWindow")

    @property
    def disk_area(self) -> float:
        return math.pi * self.radius**2


@dataclass(frozen=True)
class Layout:
    """A rectangular grid of gripper positions inside a margin inset."""

    positions: tuple[Point, ...]
    spacing: float
    margin: float
    rows: int
    cols: int

    def __post_init__(self):
        object.__setattr__(
            self,
            "positions",
            tuple((float(x), float(y)) for x, y in self.positions),
        )
        if self.spacing <= 0:
            raise ValidationError(f"spacing must be > 0, got {self.spacing}")
        if self.margin < 0:
            raise ValidationError(f"margin must be >= 0, got {self.margin}")
        if self.rows < 0 or self.cols < 0:
            raise ValidationError("rows and cols must be >= 0")
        if len(self.positions) != self.rows * self.cols:
            raise ValidationError(
                f"{len(self.positions)} positions inconsistent with "
                f"{self.rows} rows x {self.cols} cols"
            )


# ---------------------------------------------------------------------------
# disk / polygon intersection

def _wrap_angle(angle: float) -> float:
    # wrap to (-pi, pi]; chords subtend < pi so this picks the right arc
    a = math.fmod(angle, 2.0 * math.pi)
    if a <= -math.pi:
        a += 2.0 * math.pi
    elif a > math.pi:
        a -= 2.0 * math.pi
    return a


def _edge_term(x1: float, y1: float, x2: float, y2: float, r: float) -> float:
    """Green's theorem contribution of one edge against the disk |p| <= r."""
    dx = x2 - x1
    dy = y2 - y1
    a = dx * dx + dy * dy
    if a == 0.0:
        return 0.0
    b = 2.0 * (x1 * dx + y1 * dy)
    c = x1 * x1 + y1 * y1 - r * r
    cuts = [0.0, 1.0]
    disc = b * b - 4.0 * a * c
    if disc > 0.0:
        sq = math.sqrt(disc)
        for t in ((-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)):
            if 0.0 < t < 1.0:
                cuts.append(t)
    cuts.sort()
    r2 = r * r
    total = 0.0
    for t0, t1 in zip(cuts, cuts[1:]):
        if t1 <= t0:
            continue
        tm = 0.5 * (t0 + t1)
        mx = x1 + tm * dx
        my = y1 + tm * dy
        ax = x1 + t0 * dx
        ay = y1 + t0 * dy
        bx = x1 + t1 * dx
        by = y1 + t1 * dy
        if mx * mx + my * my <= r2:
            total += 0.5 * (ax * by - ay * bx)
        else:
            total += 0.5 * r2 * _wrap_angle(math.atan2(by, bx) - math.atan2(ay, ax))
    return total


def circle_polygon_intersection_area(circle: Vgtc, outline: Polygon) -> float:
    """Exact area of the grabbing disk clipped to the fabric outline."""
    if outline.area <= 0.0:
        raise ValidationError("outline polygon has zero area")
    verts = outline.vertices
    if outline.signed_area < 0:
        verts = tuple(reversed(verts))
    cx, cy = circle.center
    r = circle.radius
    total = 0.0
    n = len(verts)
    for i in range(n):
        x1, y1 = verts[i]
        x2, y2 = verts[(i + 1) % n]
        total += _edge_term(x1 - cx, y1 - cy, x2 - cx, y2 - cy, r)
    cap = min(circle.disk_area, outline.area)
    if total < 1e-14 * cap:  # rounding residue of a disjoint pair
        return 0.0
    return min(total, cap)


def effective_ratio(circle: Vgtc, outline: Polygon) -> float:
    """Fraction of the grabbing disk that lies on the fabric, in [0, 1]."""
    ratio = circle_polygon_intersection_area(circle, outline) / circle.disk_area
    return min(max(ratio, 0.0), 1.0)


def adjusted_min_pressure(window: PressureWindow, ratio: float) -> float:
    """Minimum grabbing pressure inflated for a partially overhanging disk."""
    if not 0.0 < ratio <= 1.0:
        raise ValidationError(
            f"effective ratio must be in (0, 1], got {ratio} (no effective contact)"
        )
    return window.p_min / ratio


# ---------------------------------------------------------------------------
# grid layouts

def _axis_count(usable: float, spacing: float) -> int:
    # the tolerance keeps exact multiples (0.22 / 0.044) from rounding down
    return int(math.floor((usable + BOUNDARY_TOL) / spacing)) + 1


def _axis_positions(low: float, usable: float, spacing: float, count: int) -> list[float]:
    span = (count - 1) * spacing
    start = low + 0.5 * (usable - span)
    return [start + i * spacing for i in range(count)]


def generate_layout(outline: Polygon, margin: float, spacing: float) -> Layout:
    """Axis-aligned gripper grid over the margin-shrunk rectangle.

    Per axis the grid holds floor(usable/spacing) + 1 positions at the
    exact requested pitch, centered in the usable span; when usable is
    an exact multiple of spacing the end positions land on the inset
    boundary. A dimension shorter than the spacing degenerates to a
    single centered row or column.

    Only rectangular outlines are supported.
    """
    if spacing <= 0:
        raise ValidationError(f"spacing must be > 0, got {spacing}")
    if margin < 0:
        raise ValidationError(f"margin must be >= 0, got {margin}")
    if not outline.is_axis_aligned_rectangle():
        raise ValidationError("layout generation needs an axis-aligned rectangular outline")
    x0, y0, x1, y1 = outline.bounds
    usable_l = (x1 - x0) - 2.0 * margin
    usable_w = (y1 - y0) - 2.0 * margin
    if usable_l < -BOUNDARY_TOL or usable_w < -BOUNDARY_TOL:
        raise ValidationError(
            f"margin {margin} m too large: no usable area inside a "
            f"{x1 - x0:.4g} x {y1 - y0:.4g} m outline"
        )
    usable_l = max(usable_l, 0.0)
    usable_w = max(usable_w, 0.0)
    cols = _axis_count(usable_l, spacing)
    rows = _axis_count(usable_w, spacing)
    xs = _axis_positions(x0 + margin, usable_l, spacing, cols)
    ys = _axis_positions(y0 + margin, usable_w, spacing, rows)
    positions = tuple((x, y) for y in ys for x in xs)
    return Layout(positions=positions, spacing=spacing, margin=margin, rows=rows, cols=cols)


def calibrate_spacing(
    outline: Polygon,
    margin: float,
    target_count: int,
    search_range: tuple[float, float],
    step: float,
) -> list[tuple[float, float]]:
    """Spacing sub-intervals whose grid holds exactly target_count grippers.

    The open range (low, high) is scanned at the given step; runs of
    consecutive matching samples are merged into (first, last) interval
    tuples. An empty list is a valid answer: no spacing in range
    reproduces the target. Spacings whose layout fails outright (margin
    too large) simply do not match.
    """
    if not isinstance(target_count, int) or isinstance(target_count, bool) or target_count < 1:
        raise ValidationError(f"target_count must be an integer >= 1, got {target_count!r}")
    low, high = float(search_range[0]), float(search_range[1])
    if not (0 <= low < high):
        raise ValidationError(f"search_range must satisfy 0 <= low < high, got {search_range}")
    if step <= 0:
        raise ValidationError(f"step must be > 0, got {step}")

    intervals: list[tuple[float, float]] = []
    run_start: float | None = None
    run_end = 0.0
    k = 1
    while True:
        s = low + k * step
        if s >= high - 1e-12:
            break
        try:
            count = len(generate_layout(outline, margin, s).positions)
        except ValidationError:
            count = -1
        if count == target_count:
            if run_start is None:
                run_start = s
            run_end = s
        elif run_start is not None:
            intervals.append((run_start, run_end))
            run_start = None
        k += 1
    if run_start is not None:
        intervals.append((run_start, run_end))
    return intervals


def single_grab_radius_test(
    window: PressureWindow,
    measured_pass_radius: float,
    center: Point = (0.0, 0.0),
) -> Vgtc:
    """Record a bench-measured grabbing circle.

    This is the data-entry point for the physical single-gripper test:
    the largest radius that still picked exactly one layer, together
    with the pressure window observed while doing it. No physics is
    computed here; the value feeds layout planning.
    """
    return Vgtc(center=center, radius=measured_pass_radius, pressure_window=window)
