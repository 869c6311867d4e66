"""Algebra of grid densities.

Every power of a density is taken in the log domain: values below
``LOG_FLOOR`` are dropped from the integrals instead of being raised to a
negative exponent.
"""

import csv
import logging
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.fft import irfft, next_fast_len, rfft
from scipy.integrate import cumulative_trapezoid

from repi.core.densities.grid import LOG_FLOOR, MIN_GRID_LEN, GridDensity
from repi.core.exceptions import (
    DegenerateDensityError,
    GridError,
    IntegrabilityError,
    ParameterError,
    ScaleError,
)
from repi.core.orders import RenyiOrder, as_order

logger = logging.getLogger(__name__)

#: Maximum mass drift tolerated by convolve() before renormalizing.
CONVOLUTION_DRIFT_TOL = 1e-6

#: Upper bound on the number of points a convolution may produce.
MAX_GRID_POINTS = 2**24

#: Outer fraction of the grid inspected for truncation sensitivity of f^r, r < 1.
_EDGE_FRACTION = 0.01
_EDGE_SHARE_WARN = 1e-3


def normalize(f: GridDensity) -> GridDensity:
    """Divide by the trapezoid mass.

    Raises:
        DegenerateDensityError: If the mass is zero or not finite.
    """
    mass = f.mass
    if not math.isfinite(mass) or mass <= 0:
        raise DegenerateDensityError(
            f"Cannot normalize a density with mass {mass!r}", context={"mass": mass}
        )
    if mass == 1.0:
        return f
    return GridDensity(f.x_min, f.x_max, f.values / mass)


def log_power_integral(f: GridDensity, s: float) -> float:
    """log of the trapezoid integral of f^s, computed with a max shift.

    Raises:
        IntegrabilityError: If the integral is numerically 0 or infinite.
    """
    log_int, _ = _shifted_power(f, s)
    return log_int


def _shifted_power(f: GridDensity, s: float) -> tuple[float, np.ndarray]:
    """Return (log ∫f^s, f^s / ∫f^s)."""
    z = s * f.log_values
    finite = np.isfinite(z)
    if not finite.any():
        raise IntegrabilityError("Density vanishes on the whole grid", context={"s": s})
    shift = float(z[finite].max())
    w = np.zeros_like(z)
    w[finite] = np.exp(z[finite] - shift)
    integral = f.integrate(w)
    if not math.isfinite(integral) or integral <= 0:
        raise IntegrabilityError(
            f"Integral of f^{s:g} is not finite and positive", context={"s": s, "value": integral}
        )
    log_int = shift + math.log(integral)
    if not math.isfinite(log_int):
        raise IntegrabilityError(f"log of the integral of f^{s:g} overflows", context={"s": s})
    return log_int, w / integral


def _warn_if_truncation_sensitive(f: GridDensity, power: np.ndarray, s: float) -> None:
    k = max(1, int(_EDGE_FRACTION * power.size))
    edge = (power[:k].sum() + power[-k:].sum()) * f.step
    if edge > _EDGE_SHARE_WARN:
        logger.warning(
            "Integral of f^%g is truncation sensitive: outer grid carries %.2e of it",
            s,
            edge,
        )


def escort(f: GridDensity, r: RenyiOrder | float) -> GridDensity:
    """Escort density f^r / ∫f^r.

    Raises:
        OrderError: If r <= 0.
        IntegrabilityError: If ∫f^r is numerically 0 or infinite.
    """
    r = as_order(r)
    if r.is_limit_one:
        return f
    _, power = _shifted_power(f, r.r)
    if r.r < 1:
        _warn_if_truncation_sensitive(f, power, r.r)
    return GridDensity(f.x_min, f.x_max, power)


def inverse_escort(g: GridDensity, r: RenyiOrder | float) -> GridDensity:
    """The density f whose escort of order r is g, i.e. g^(1/r) normalized."""
    r = as_order(r)
    if r.is_limit_one:
        return g
    _, power = _shifted_power(g, 1.0 / r.r)
    return GridDensity(g.x_min, g.x_max, power)


def scale_rv(f: GridDensity, a: float) -> GridDensity:
    """Density of aX: f(x/a)/|a|.

    Raises:
        ScaleError: If a == 0.
    """
    if a == 0 or not math.isfinite(a):
        raise ScaleError(f"Scale factor must be finite and non-zero, got {a!r}")
    if a == 1:
        return f
    if a > 0:
        return GridDensity(a * f.x_min, a * f.x_max, f.values / a)
    return GridDensity(a * f.x_max, a * f.x_min, f.values[::-1] / -a)


def shift_rv(f: GridDensity, b: float) -> GridDensity:
    """Density of X + b."""
    if b == 0:
        return f
    return GridDensity(f.x_min + b, f.x_max + b, f.values)


def resample(f: GridDensity, x_min: float, x_max: float, n: int) -> GridDensity:
    """Linear interpolation of f onto n points over [x_min, x_max], zero outside."""
    x = np.linspace(x_min, x_max, n)
    return GridDensity(x_min, x_max, f(x))


def log_resample(f: GridDensity, x_min: float, x_max: float, n: int) -> GridDensity:
    """Interpolate log f linearly onto a new grid, zero outside the support.

    Gaussian and exponential tails are exact under this interpolation.
    """
    x = np.linspace(x_min, x_max, n)
    logs = np.maximum(f.log_values, math.log(LOG_FLOOR) - 1.0)
    values = np.exp(np.interp(x, f.x, logs))
    values[(x < f.x_min) | (x > f.x_max)] = 0.0
    values[values <= LOG_FLOOR] = 0.0
    return GridDensity(x_min, x_max, values)


def _on_step(f: GridDensity, h: float) -> GridDensity:
    """Resample f to spacing exactly h starting at f.x_min."""
    if math.isclose(f.step, h, rel_tol=1e-12, abs_tol=0.0):
        return f
    n = math.floor((f.x_max - f.x_min) / h + 1e-9) + 1
    return normalize(resample(f, f.x_min, f.x_min + (n - 1) * h, n))


def convolve(
    f: GridDensity, g: GridDensity, *, max_points: int = MAX_GRID_POINTS
) -> GridDensity:
    """Density of X + Y for independent X ~ f and Y ~ g.

    Both inputs are brought to the finer of their two steps, the trapezoid
    weights are applied and the product of zero-padded real FFTs is inverted.

    Raises:
        GridError: If the output grid would be too large or the mass drifts
            by more than ``CONVOLUTION_DRIFT_TOL`` before renormalization.
    """
    h = min(f.step, g.step)
    n_out = (
        math.floor((f.x_max - f.x_min) / h + 1e-9) + math.floor((g.x_max - g.x_min) / h + 1e-9) + 1
    )
    if n_out > max_points:
        raise GridError(
            f"Convolution needs {n_out} points, more than the limit {max_points}",
            context={"points": n_out, "limit": max_points},
        )
    fh, gh = _on_step(f, h), _on_step(g, h)

    wf = np.array(fh.values)
    wg = np.array(gh.values)
    wf[[0, -1]] *= 0.5
    wg[[0, -1]] *= 0.5
    n = wf.size + wg.size - 1
    size = next_fast_len(n, real=True)
    values = irfft(rfft(wf, size) * rfft(wg, size), size)[:n] * h
    np.clip(values, 0.0, None, out=values)

    x_min = fh.x_min + gh.x_min
    out = GridDensity(x_min, x_min + (n - 1) * h, values)
    drift = abs(out.mass - 1.0)
    logger.debug("convolve: %d x %d -> %d points, step %.3e, drift %.2e", len(fh), len(gh), n, h, drift)
    if drift >= CONVOLUTION_DRIFT_TOL:
        raise GridError(
            f"Convolution mass drift {drift:.2e} exceeds {CONVOLUTION_DRIFT_TOL:g}",
            context={"drift": drift},
        )
    return normalize(out)


def convolve_all(densities: list[GridDensity], **kwargs) -> GridDensity:
    """Left fold of convolve() over a non-empty list."""
    if not densities:
        raise GridError("Nothing to convolve")
    total = densities[0]
    for d in densities[1:]:
        total = convolve(total, d, **kwargs)
    return total


@dataclass(frozen=True, slots=True)
class LogConcavity:
    """Outcome of is_log_concave().

    Attributes:
        is_log_concave: Verdict.
        worst_violation: Largest positive second difference of log f (0 if none).
        vacuous: True when fewer than three support points could be tested.
    """

    is_log_concave: bool
    worst_violation: float
    vacuous: bool = False

    def __bool__(self) -> bool:
        return self.is_log_concave


def is_log_concave(f: GridDensity, tol: float = 1e-6) -> LogConcavity:
    """Test concavity of log f through second differences on the support.

    Only points where f > 1e-12 max f take part; a difference counts as a
    violation when it exceeds ``tol`` times max(1, max |log f|) there.
    """
    if tol < 0:
        raise ParameterError(f"tol must be >= 0, got {tol}")
    mask = f.values > 1e-12 * f.values.max()
    logs = f.log_values
    triple = mask[:-2] & mask[1:-1] & mask[2:]
    if not triple.any():
        logger.debug("is_log_concave: support too small, vacuously true")
        return LogConcavity(True, 0.0, vacuous=True)
    d2 = (logs[:-2] - 2.0 * logs[1:-1] + logs[2:])[triple]
    scale = max(1.0, float(np.abs(logs[mask]).max()))
    worst = max(0.0, float(d2.max()))
    return LogConcavity(worst <= tol * scale, worst)


def cdf(f: GridDensity) -> np.ndarray:
    """Cumulative trapezoid integral of f on its grid, starting at 0."""
    return cumulative_trapezoid(f.values, dx=f.step, initial=0.0)


def sf(f: GridDensity) -> np.ndarray:
    """Survival function integrated from the right end, so tails keep precision."""
    return cumulative_trapezoid(f.values[::-1], dx=f.step, initial=0.0)[::-1]


def read_density_csv(path: str | Path) -> GridDensity:
    """Read an ``x,f`` CSV with an optional header and normalize it.

    Raises:
        ParameterError: On malformed rows or a non-uniform grid.
    """
    rows: list[tuple[float, float]] = []
    with open(path, encoding="utf-8", newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or not "".join(row).strip():
                continue
            if len(row) != 2:
                raise ParameterError(f"{path}:{lineno}: expected 2 columns, got {len(row)}")
            try:
                rows.append((float(row[0]), float(row[1])))
            except ValueError as e:
                if lineno == 1 and not rows:
                    continue
                raise ParameterError(f"{path}:{lineno}: non-numeric value") from e
    if len(rows) < MIN_GRID_LEN:
        raise ParameterError(f"{path}: need at least {MIN_GRID_LEN} rows, got {len(rows)}")
    data = np.array(rows)
    x, values = data[:, 0], data[:, 1]
    dx = np.diff(x)
    if np.any(dx <= 0):
        raise ParameterError(f"{path}: x must be strictly increasing")
    step = (x[-1] - x[0]) / (x.size - 1)
    jitter = float(np.max(np.abs(dx - step)) / step)
    if jitter >= 1e-9:
        raise ParameterError(
            f"{path}: x is not uniformly spaced (relative jitter {jitter:.2e})",
            context={"jitter": jitter},
        )
    return normalize(GridDensity(x[0], x[-1], values))


def write_density_csv(f: GridDensity, path: str | Path) -> None:
    """Write f as an ``x,f`` CSV with a header line."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "f"])
        for x, v in zip(f.x, f.values, strict=True):
            writer.writerow([repr(float(x)), repr(float(v))])


__all__ = [
    "normalize",
    "log_power_integral",
    "escort",
    "inverse_escort",
    "scale_rv",
    "shift_rv",
    "resample",
    "log_resample",
    "convolve",
    "convolve_all",
    "LogConcavity",
    "is_log_concave",
    "cdf",
    "sf",
    "read_density_csv",
    "write_density_csv",
    "CONVOLUTION_DRIFT_TOL",
    "MAX_GRID_POINTS",
]
