"""Carleson boxes and box/kernel-form measure constants.

Measures live on the quadrature scheme as nonnegative node densities.  Box
masses clip the box arc against the angular cells analytically (fractional
end weights), which removes the staircase error in the angle; radially a
box edge at a dyadic radius coincides with a band edge, so dyadic centres
see no radial staircase at all.

Two extremal constants are offered: the box form
    sup  mass(S(a)) (log 2/(1-|a|^2))^alpha / (1-|a|)^s
and the kernel (integral) form
    sup  (log 2/(1-|a|^2))^alpha  integral ((1-|a|^2)/|1-conj(a) z|^2)^s dmu.
The kernel form dominates the box form times (2+pi)^(-2s) node by node,
which the tests pin down exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .funcs import DomainError, FunctionExpr
from .norms import ConstantReport, MobiusGrid, RingCorrelator, _finish_report, \
    default_scheme
from .quad import DiscScheme, SingularityError

__all__ = [
    "BoxSpec",
    "DensityMeasure",
    "density_from",
    "box_mass",
    "carleson_constant",
]


@dataclass(frozen=True)
class BoxSpec:
    """Carleson box anchored at a: radii >= |a|, arc of fraction (1-|a|)
    of the circle centred at arg a.  a = 0 means the whole disc."""

    a: complex

    def __post_init__(self):
        a = complex(self.a)
        if abs(a) >= 1.0:
            raise DomainError("box anchor must lie inside the disc")
        object.__setattr__(self, "a", a)

    @property
    def radial_lo(self) -> float:
        return abs(self.a)

    @property
    def arc_halfwidth(self) -> float:
        return math.pi * (1.0 - abs(self.a))

    @property
    def arc_center(self) -> float:
        return math.atan2(self.a.imag, self.a.real)


@dataclass(frozen=True)
class DensityMeasure:
    """A measure with node density rows on a disc scheme."""

    rows: np.ndarray
    scheme: DiscScheme
    label: str = "measure"

    def __post_init__(self):
        rows = np.asarray(self.rows, dtype=np.float64)
        if rows.shape != (self.scheme.n_rings, self.scheme.angles):
            raise ValueError("density rows do not match the scheme")
        if not np.all(np.isfinite(rows)):
            bad = np.argwhere(~np.isfinite(rows))[0]
            node = self.scheme.ring_r[bad[0]] * np.exp(
                2j * np.pi * bad[1] / self.scheme.angles)
            raise SingularityError(complex(node))
        if np.any(rows < 0):
            raise DomainError("measure densities must be nonnegative")
        rows = rows.copy()
        rows.setflags(write=False)
        object.__setattr__(self, "rows", rows)

    @staticmethod
    def from_density(density: Callable[[np.ndarray], np.ndarray],
                     scheme: DiscScheme | None = None,
                     label: str = "measure") -> "DensityMeasure":
        scheme = scheme or default_scheme()
        return DensityMeasure(scheme.eval_on_rings(density), scheme, label)

    @staticmethod
    def area(scheme: DiscScheme | None = None) -> "DensityMeasure":
        scheme = scheme or default_scheme()
        return DensityMeasure(np.ones((scheme.n_rings, scheme.angles)),
                              scheme, "area")

    def total_mass(self) -> float:
        return self.scheme.integrate_rows(self.rows)

    def scaled(self, c: float) -> "DensityMeasure":
        if c < 0:
            raise DomainError("measure scaling must be nonnegative")
        return DensityMeasure(self.rows * c, self.scheme, self.label)

    def __add__(self, other: "DensityMeasure") -> "DensityMeasure":
        if other.scheme is not self.scheme:
            raise ValueError("measures must share a scheme to be added")
        return DensityMeasure(self.rows + other.rows, self.scheme,
                              f"{self.label}+{other.label}")


def density_from(f: FunctionExpr, s: float,
                 scheme: DiscScheme | None = None) -> DensityMeasure:
    """The derivative measure (1-|z|^2)^s |f'(z)|^2 dA."""
    if s < 0:
        raise DomainError("weight exponent must be >= 0")
    scheme = scheme or default_scheme()
    phase = np.exp(1j * scheme.thetas())
    nodes = scheme.ring_r[:, None] * phase[None, :]
    dv = np.abs(f._eval(nodes, 1)[1]) ** 2
    rows = (1.0 - np.abs(nodes) ** 2) ** s * dv
    return DensityMeasure(rows, scheme, f"deriv-energy(s={s:g})")


def _coverage_row(halfwidth: float, m: int) -> np.ndarray:
    """Fraction of each angular cell covered by the arc |theta| <= halfwidth."""
    if halfwidth >= math.pi:
        return np.ones(m)
    w = math.pi / m
    theta = 2.0 * np.pi * np.arange(m) / m
    d = np.abs((theta + np.pi) % (2.0 * np.pi) - np.pi)  # wrapped distance
    overlap = np.clip(np.minimum(d + w, halfwidth) - np.maximum(d - w, -halfwidth),
                      0.0, 2.0 * w)
    return overlap / (2.0 * w)


def box_mass(mu: DensityMeasure, box: BoxSpec) -> float:
    """Measure of the box, arc clipped analytically against the node cells."""
    sch = mu.scheme
    mask = sch.ring_r >= box.radial_lo - 1e-15
    if not np.any(mask):
        return 0.0
    # cells sit at fixed angles, so measure each cell's wrapped distance from
    # the box centre and clip the cell against the arc
    theta = sch.thetas()
    w = math.pi / sch.angles
    if box.arc_halfwidth >= math.pi:
        cov = np.ones(sch.angles)
    else:
        d = np.abs((theta - box.arc_center + np.pi) % (2.0 * np.pi) - np.pi)
        cov = np.clip(np.minimum(d + w, box.arc_halfwidth)
                      - np.maximum(d - w, -box.arc_halfwidth), 0.0, 2.0 * w) \
            / (2.0 * w)
    rows = mu.rows[mask] * cov[None, :]
    return float(np.dot(mu.scheme.ring_w[mask], rows.mean(axis=1)))


def _log_weight(rho: float, alpha: float) -> float:
    return math.log(2.0 / (1.0 - rho * rho)) ** alpha if alpha else 1.0


def carleson_constant(mu: DensityMeasure, s: float, alpha: float = 0.0,
                      method: str = "box",
                      grid: MobiusGrid | None = None) -> ConstantReport:
    """Extremal box or kernel constant of the measure over the dyadic grid.

    Both methods sweep every centre angle at once by circular correlation
    against the measure's ring rows; the trace is the prefix supremum over
    dyadic radius levels.
    """
    if s <= 0:
        raise DomainError("exponent s must be positive")
    if alpha < 0:
        raise DomainError("log exponent must be >= 0")
    if method not in ("box", "zhao"):
        raise DomainError(f"unknown method {method!r}")
    grid = grid or MobiusGrid()
    sch = mu.scheme
    corr = RingCorrelator(sch, mu.rows)
    best = -math.inf
    witness = 0.0 + 0.0j
    trace = []
    r = sch.ring_r[:, None]
    cosd = np.cos(sch.thetas())[None, :]
    for n, rho, m in grid.levels():
        if method == "box":
            mask = sch.ring_r >= rho - 1e-15
            kernel = np.broadcast_to(_coverage_row(math.pi * (1.0 - rho),
                                                   sch.angles),
                                     (sch.n_rings, sch.angles))
            vals = corr.sweep(np.ascontiguousarray(kernel), mask)
            scale = _log_weight(rho, alpha) / (1.0 - rho) ** s
        else:
            den = 1.0 + (rho * r) ** 2 - 2.0 * rho * r * cosd
            kernel = np.power((1.0 - rho ** 2) / den, s)
            vals = corr.sweep(kernel)
            scale = _log_weight(rho, alpha)
        stride = sch.angles // m
        sub = vals[::stride][:m] * scale
        j = int(np.argmax(sub))
        if float(sub[j]) > best:
            best = float(sub[j])
            witness = rho * np.exp(2j * np.pi * j / m)
        trace.append((f"n<={n}", best))
    return _finish_report(trace, complex(witness))
