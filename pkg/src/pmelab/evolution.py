"""Time integration of u_t = (u u_x)_x on the circle, with runtime monitors.

The nonlinearity is evaluated as (1/2) d_xx (u^2): one dealiased product per
right-hand side, and the k = 0 coefficient of the update is identically zero,
so the mean is conserved to round-off.  Time stepping is classical RK4 with a
stability-based step recomputed every step,

    dt = dt_safety / (max u * k_max^2 + sup|u_x| * k_max),

and the final step into each requested sample time is shortened so snapshots
carry no interpolation error.  Strict positivity is required of the initial
datum and watched during the run: losing it means the degenerate regime was
reached, which for the inputs this laboratory cares about signals a bug.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .families import BoundReport
from .spectral import (
    TWO_PI,
    Grid,
    SpectralField,
    field_from_coeffs,
    padded_size,
    product_coeffs,
)

MAX_STEPS = 5_000_000


class SolverError(RuntimeError):
    """Base class for aborts of the time integrator."""


class PositivityLostError(SolverError):
    """The solution reached the degenerate regime (min u <= 0)."""


class InstabilityError(SolverError):
    """Non-finite values or an exhausted step budget."""


@dataclass(frozen=True)
class SolverConfig:
    """Time-stepping parameters for one trajectory."""

    t_end: float
    sample_times: tuple[float, ...] = ()
    dt_safety: float = 0.5
    dealias: bool = True

    def __post_init__(self) -> None:
        if not self.t_end > 0:
            raise ValueError(f"t_end must be positive, got {self.t_end}")
        if not 0.0 < self.dt_safety <= 1.0:
            raise ValueError(f"dt_safety must lie in (0, 1], got {self.dt_safety}")
        times = tuple(float(t) for t in self.sample_times)
        if not times:
            times = (float(self.t_end),)
        if any(t < 0.0 or t > self.t_end for t in times):
            raise ValueError("sample_times must lie in [0, t_end]")
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("sample_times must be strictly increasing")
        object.__setattr__(self, "sample_times", times)


@dataclass
class MonitorLog:
    """Per-step extremes and the H^1 deviation energy ||u - [u]||_{H^1}^2."""

    t: np.ndarray
    min_u: np.ndarray
    max_u: np.ndarray
    sup_ux: np.ndarray
    mean_u: np.ndarray
    h1_energy: np.ndarray

    @property
    def num_steps(self) -> int:
        return len(self.t) - 1


@dataclass
class Trajectory:
    """Result of one solve: snapshots at the sample times plus monitors."""

    params: dict
    snapshots: list[tuple[float, SpectralField]]
    monitors: MonitorLog

    @property
    def times(self) -> np.ndarray:
        return np.array([t for t, _ in self.snapshots])

    @property
    def fields(self) -> list[SpectralField]:
        return [f for _, f in self.snapshots]


class _Stepper:
    """RK4 on raw half-complex coefficient arrays (hot loop only)."""

    def __init__(self, grid: Grid, dealias: bool):
        self.grid = grid
        n = grid.num_points
        self.n = n
        self.k = grid.wavenumbers
        self.half_rhs_mult = -0.5 * self.k * self.k
        self.k_max = float(grid.max_mode)
        self.pad = 1.5 if dealias else 1.0
        # energy weights: 2*pi * mult * (1+k^2), zero mode excluded
        mult = np.full(n // 2 + 1, 2.0)
        mult[0] = 0.0
        mult[-1] = 1.0
        self.energy_w = TWO_PI * mult * (1.0 + self.k * self.k)

    def rhs(self, c: np.ndarray) -> np.ndarray:
        if self.pad > 1.0:
            sq = product_coeffs(c, c, self.n, self.pad)
        else:
            v = np.fft.irfft(c * self.n, n=self.n)
            sq = np.fft.rfft(v * v) / self.n
            sq[-1] = 0.0
        return self.half_rhs_mult * sq

    def step(self, c: np.ndarray, dt: float) -> np.ndarray:
        k1 = self.rhs(c)
        k2 = self.rhs(c + 0.5 * dt * k1)
        k3 = self.rhs(c + 0.5 * dt * k2)
        k4 = self.rhs(c + dt * k3)
        return c + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    def stats(self, c: np.ndarray) -> tuple[float, float, float, float, float]:
        v = np.fft.irfft(c * self.n, n=self.n)
        dv = np.fft.irfft(1j * self.k * c * self.n, n=self.n)
        energy = float(np.sum(self.energy_w * np.abs(c) ** 2))
        return (
            float(v.min()),
            float(v.max()),
            float(np.max(np.abs(dv))),
            float(c[0].real),
            energy,
        )

    def stable_dt(self, max_u: float, sup_ux: float, dt_safety: float) -> float:
        return dt_safety / (max_u * self.k_max ** 2 + sup_ux * self.k_max)


def pme_rhs(u: SpectralField, dealias: bool = True) -> SpectralField:
    """(u u_x)_x evaluated as (1/2) d_xx (u^2)."""
    stepper = _Stepper(u.grid, dealias)
    return field_from_coeffs(u.grid, stepper.rhs(u.coeffs))


def pme_evolve(u0: SpectralField, cfg: SolverConfig, label: str = "") -> Trajectory:
    """Integrate from u0, snapshotting exactly at cfg.sample_times.

    Raises PositivityLostError if the datum or the solution loses strict
    positivity, InstabilityError on non-finite values or an exhausted step
    budget.
    """
    stepper = _Stepper(u0.grid, cfg.dealias)
    c = u0.coeffs.copy()

    rows = []
    stats = stepper.stats(c)
    if not stats[0] > 0.0:
        raise PositivityLostError(
            f"initial datum must be strictly positive (min = {stats[0]:.3e})"
        )
    rows.append((0.0, *stats))

    snapshots: list[tuple[float, SpectralField]] = []
    if cfg.sample_times[0] == 0.0:
        snapshots.append((0.0, field_from_coeffs(u0.grid, c)))

    t = 0.0
    steps = 0
    for target in cfg.sample_times:
        if target == 0.0:
            continue
        while t < target:
            dt_stab = stepper.stable_dt(stats[1], stats[2], cfg.dt_safety)
            remaining = target - t
            if dt_stab >= remaining:
                dt, t_next = remaining, target
            else:
                dt, t_next = dt_stab, t + dt_stab
            c = stepper.step(c, dt)
            if not np.all(np.isfinite(c)):
                raise InstabilityError(f"non-finite coefficients at t = {t_next:.6g}")
            stats = stepper.stats(c)
            if not stats[0] > 0.0:
                raise PositivityLostError(
                    f"positivity lost at t = {t_next:.6g} (min u = {stats[0]:.3e}); "
                    "degenerate regime is out of scope"
                )
            t = t_next
            rows.append((t, *stats))
            steps += 1
            if steps > MAX_STEPS:
                raise InstabilityError(f"step budget {MAX_STEPS} exhausted at t = {t:.6g}")
        snapshots.append((t, field_from_coeffs(u0.grid, c)))

    data = np.array(rows)
    monitors = MonitorLog(
        t=data[:, 0],
        min_u=data[:, 1],
        max_u=data[:, 2],
        sup_ux=data[:, 3],
        mean_u=data[:, 4],
        h1_energy=data[:, 5],
    )
    params = {"label": label, "num_points": u0.grid.num_points, "dt_safety": cfg.dt_safety}
    return Trajectory(params=params, snapshots=snapshots, monitors=monitors)


def heat_evolve(u0: SpectralField, t: float) -> SpectralField:
    """Exact heat propagator: c_k -> exp(-k^2 t) c_k."""
    if t < 0:
        raise ValueError(f"time must be nonnegative, got {t}")
    k = u0.grid.wavenumbers
    return field_from_coeffs(u0.grid, np.exp(-k * k * t) * u0.coeffs)


@dataclass
class MonitorVerdict:
    """Hard bound reports plus the soft energy-decay-rate observation."""

    reports: list[BoundReport]
    rate_violations: int
    rate_satisfied: bool
    passed: bool

    def as_dict(self) -> dict:
        return {
            "reports": [r.as_dict() for r in self.reports],
            "rate_violations": int(self.rate_violations),
            "rate_satisfied": bool(self.rate_satisfied),
            "passed": bool(self.passed),
        }


def check_monitors(
    traj: Trajectory,
    value_range: tuple[float, float] | None = None,
    slope_bound: float | None = None,
    bound_rel_tol: float = 1e-9,
    evenness_tol: float = 1e-10,
    mean_tol: float = 1e-10,
    energy_rise_tol: float = 1e-12,
    rate_tol: float = 1e-8,
) -> MonitorVerdict:
    """Confront a finished trajectory with its a-priori bounds.

    Value/slope/mean/energy checks run over the per-step log; evenness (all
    sine components staying below evenness_tol) is checked per snapshot and
    only when the initial datum is even.  The energy-decay-rate inequality
    E' <= -2 min u(0) E is reported in integrated per-step form but does not
    fail the verdict.
    """
    log = traj.monitors
    reports: list[BoundReport] = []

    if value_range is not None:
        lo, hi = value_range
        m = float(log.min_u.min())
        reports.append(
            BoundReport(
                "value_lower", lo, m, m >= lo - bound_rel_tol * abs(lo), bound_rel_tol * abs(lo)
            )
        )
        m = float(log.max_u.max())
        reports.append(
            BoundReport(
                "value_upper", hi, m, m <= hi + bound_rel_tol * abs(hi), bound_rel_tol * abs(hi)
            )
        )

    if slope_bound is not None:
        m = float(log.sup_ux.max())
        tol = bound_rel_tol * slope_bound
        reports.append(BoundReport("slope_bound", slope_bound, m, m <= slope_bound + tol, tol))

    fields = traj.fields
    if fields:
        initial_odd = float(np.max(np.abs(fields[0].coeffs.imag)))
        if initial_odd <= 1e-13:
            worst = max(float(np.max(np.abs(f.coeffs.imag))) for f in fields)
            reports.append(
                BoundReport("evenness", evenness_tol, worst, worst <= evenness_tol, evenness_tol)
            )

    drift = float(np.max(np.abs(log.mean_u - log.mean_u[0])))
    reports.append(BoundReport("mean_conservation", mean_tol, drift, drift <= mean_tol, mean_tol))

    e = log.h1_energy
    e0 = float(e[0])
    rise_tol = energy_rise_tol * e0
    worst_rise = float(np.max(np.diff(e))) if len(e) > 1 else 0.0
    reports.append(
        BoundReport("energy_monotone", rise_tol, worst_rise, worst_rise <= rise_tol, rise_tol)
    )

    # Integrated form of the decay-rate inequality, slack relative to E(0).
    rate_violations = 0
    if len(e) > 1:
        m0 = float(log.min_u[0])
        dts = np.diff(log.t)
        allowed = e[:-1] * np.exp(-2.0 * m0 * dts) + rate_tol * e0
        rate_violations = int(np.sum(e[1:] > allowed))

    passed = all(r.satisfied for r in reports)
    return MonitorVerdict(
        reports=reports,
        rate_violations=rate_violations,
        rate_satisfied=rate_violations == 0,
        passed=passed,
    )
