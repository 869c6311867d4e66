"""Monotone transports of the real line.

A ``Transport1D`` is stored on knots of the standard-normal source range
[-8, 8]; queries beyond the knots are clamped with a warning. The quantile
map T = F^-1 ∘ Φ pushes a standard normal to a target grid density.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.integrate import cumulative_trapezoid
from scipy.interpolate import PchipInterpolator
from scipy.stats import norm

from repi.core.densities.densities import escort, inverse_escort, normalize
from repi.core.densities.families import make_analytic
from repi.core.densities.grid import LOG_FLOOR, GridDensity
from repi.core.dto.result_dto import StatusCode, StatusDetail
from repi.core.dto.transport_dto import PreservationReport, RotationReport
from repi.core.exceptions import ParameterError, TransportError
from repi.core.measures.measures import relative_renyi
from repi.core.orders import RenyiOrder, as_order

logger = logging.getLogger(__name__)

DEFAULT_KNOTS = 8192
DEFAULT_RANGE = 8.0

#: Source mass outside the knots above which pushforward() logs a warning.
CLAMP_MASS_WARN = 1e-12

#: Pushforward mass drift above which a warning is logged before renormalizing.
PUSHFORWARD_DRIFT_TOL = 1e-6

#: Largest grid pushforward() builds on its own.
PUSHFORWARD_MAX_POINTS = 2**20

#: Source points below this fraction of the peak do not set the pushforward step.
_RESOLUTION_FLOOR = 1e-12

_BISECTION_STEPS = 64


def _strict_range(t: np.ndarray) -> slice:
    """Largest slice around the middle on which t is strictly increasing."""
    bad = np.flatnonzero(np.diff(t) <= 0)
    half = t.size // 2
    left = bad[bad < half]
    right = bad[bad >= half]
    lo = int(left.max()) + 1 if left.size else 0
    hi = int(right.min()) + 1 if right.size else t.size
    return slice(lo, hi)


@dataclass(frozen=True, eq=False)
class Transport1D:
    """An increasing map u -> T(u) with T' > 0, sampled on knots.

    Attributes:
        knots_u: Source points, strictly increasing.
        knots_T: Image points, strictly increasing.
        derivative: T' at the knots, strictly positive.
    """

    knots_u: np.ndarray = field(repr=False)
    knots_T: np.ndarray = field(repr=False)
    derivative: np.ndarray = field(repr=False)
    name: str = "transport"

    def __post_init__(self):
        arrays = []
        for label in ("knots_u", "knots_T", "derivative"):
            a = np.array(getattr(self, label), dtype=float)
            if a.ndim != 1 or not np.all(np.isfinite(a)):
                raise TransportError(f"{label} must be a finite vector")
            a.flags.writeable = False
            object.__setattr__(self, label, a)
            arrays.append(a)
        u, t, d = arrays
        if not (u.size == t.size == d.size) or u.size < 5:
            raise TransportError("Transport needs at least 5 knots of matching lengths")
        if np.any(np.diff(u) <= 0):
            raise TransportError("knots_u must be strictly increasing")
        if np.any(np.diff(t) <= 0):
            raise TransportError("Transport is not strictly increasing", context={"name": self.name})
        if np.any(d <= 0):
            raise TransportError("Transport derivative must be positive", context={"name": self.name})

    # -------------------------------------------------------------------------
    # Constructors
    # -------------------------------------------------------------------------

    @classmethod
    def from_function(
        cls,
        fn: Callable[[np.ndarray], np.ndarray],
        dfn: Callable[[np.ndarray], np.ndarray],
        *,
        knots: int = DEFAULT_KNOTS,
        u_range: float = DEFAULT_RANGE,
        name: str = "function",
    ) -> "Transport1D":
        """Sample an analytic increasing map and its derivative.

        Knots where the map is flat in floating point are trimmed off the ends.
        """
        u = np.linspace(-u_range, u_range, knots)
        t = np.asarray(fn(u), dtype=float)
        keep = _strict_range(t)
        return cls(u[keep], t[keep], np.asarray(dfn(u), dtype=float)[keep], name=name)

    @classmethod
    def identity(cls, *, knots: int = DEFAULT_KNOTS, u_range: float = DEFAULT_RANGE):
        return cls.from_function(lambda u: u, np.ones_like, knots=knots, u_range=u_range, name="identity")

    @classmethod
    def linear(cls, a: float, *, knots: int = DEFAULT_KNOTS, u_range: float = DEFAULT_RANGE):
        """T(u) = a u for a > 0."""
        if not a > 0:
            raise TransportError(f"Linear transport needs a > 0, got {a}")
        return cls.from_function(
            lambda u: a * u,
            lambda u: np.full_like(u, a),
            knots=knots,
            u_range=u_range,
            name=f"linear:{a:g}",
        )

    # -------------------------------------------------------------------------
    # Evaluation
    # -------------------------------------------------------------------------

    @property
    def u_range(self) -> tuple[float, float]:
        return float(self.knots_u[0]), float(self.knots_u[-1])

    @property
    def is_identity(self) -> bool:
        return bool(np.array_equal(self.knots_u, self.knots_T) and np.all(self.derivative == 1.0))

    @cached_property
    def _forward(self) -> PchipInterpolator:
        return PchipInterpolator(self.knots_u, self.knots_T)

    @cached_property
    def _backward(self) -> PchipInterpolator:
        return PchipInterpolator(self.knots_T, self.knots_u)

    @cached_property
    def _log_derivative(self) -> np.ndarray:
        return np.log(self.derivative)

    def _clamp(self, v: np.ndarray, lo: float, hi: float, what: str) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        outside = (v < lo) | (v > hi)
        if outside.any():
            logger.warning(
                "%s: %d %s queries outside [%g, %g] clamped", self.name, int(outside.sum()), what, lo, hi
            )
            v = np.clip(v, lo, hi)
        return v

    def __call__(self, u: np.ndarray | float) -> np.ndarray:
        """T(u)."""
        return self._forward(self._clamp(u, *self.u_range, "source"))

    def inverse(self, y: np.ndarray | float) -> np.ndarray:
        """T^-1(y)."""
        return self._backward(self._clamp(y, self.knots_T[0], self.knots_T[-1], "image"))

    def slope(self, u: np.ndarray | float) -> np.ndarray:
        """T'(u), interpolated log-linearly between knots."""
        u = self._clamp(u, *self.u_range, "source")
        return np.exp(np.interp(u, self.knots_u, self._log_derivative))

    def consistency_error(self) -> float:
        """Largest relative gap between ``derivative`` and a five-point difference of ``knots_T``.

        Only meaningful for equispaced knots; the two knots at each end are skipped.
        """
        h = np.diff(self.knots_u)
        if not np.allclose(h, h[0], rtol=1e-9, atol=0.0):
            raise TransportError("consistency_error() needs equispaced knots")
        t = self.knots_T
        fd = (-t[4:] + 8.0 * t[3:-1] - 8.0 * t[1:-3] + t[:-4]) / (12.0 * h[0])
        d = self.derivative[2:-2]
        return float(np.max(np.abs(fd - d) / d))


# =============================================================================
# QUANTILE TRANSPORT
# =============================================================================


def _solve_increasing(
    interp: PchipInterpolator, nodes: np.ndarray, values: np.ndarray, targets: np.ndarray
) -> np.ndarray:
    """Solve interp(x) = target by bisection inside the bracketing node cell."""
    idx = np.clip(np.searchsorted(values, targets, side="left"), 1, nodes.size - 1)
    lo, hi = nodes[idx - 1].copy(), nodes[idx].copy()
    for _ in range(_BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        below = interp(mid) < targets
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return 0.5 * (lo + hi)


def _log_eval(f: GridDensity, x: np.ndarray) -> np.ndarray:
    """f(x) by log-linear interpolation, zero outside the support."""
    logs = np.maximum(f.log_values, math.log(LOG_FLOOR) - 1.0)
    out = np.exp(np.interp(x, f.x, logs))
    out[(x < f.x_min) | (x > f.x_max) | (out <= LOG_FLOOR)] = 0.0
    return out


def quantile_transport(
    target: GridDensity, *, knots: int = DEFAULT_KNOTS, u_range: float = DEFAULT_RANGE
) -> Transport1D:
    """T = F^-1 ∘ Φ with T'(u) = φ(u) / f(T(u)).

    The lower half inverts the CDF and the upper half the survival function,
    each through a monotone cubic interpolant solved by bisection.

    Raises:
        TransportError: If the target support is empty or not connected.
    """
    positive = np.flatnonzero(target.values > LOG_FLOOR)
    if positive.size < 2:
        raise TransportError("Target density has zero-measure support")
    first, last = int(positive[0]), int(positive[-1])
    if positive.size != last - first + 1:
        raise TransportError(
            "Target density support is not connected",
            context={"gaps": int(last - first + 1 - positive.size)},
        )
    x = target.x[first : last + 1]
    f = target.values[first : last + 1]
    cdf = cumulative_trapezoid(f, x, initial=0.0)
    sf = cumulative_trapezoid(f[::-1], -x[::-1], initial=0.0)
    cdf /= cdf[-1]
    sf /= sf[-1]

    u = np.linspace(-u_range, u_range, knots)
    t = np.empty_like(u)
    lower = u <= 0
    t[lower] = _solve_increasing(PchipInterpolator(x, cdf), x, cdf, norm.cdf(u[lower]))
    # Survival side in the reflected variable y = -x, where it increases.
    y = -x[::-1]
    t[~lower] = -_solve_increasing(PchipInterpolator(y, sf), y, sf, norm.sf(u[~lower]))

    derivative = norm.pdf(u) / _log_eval(target, t)
    keep = _strict_range(t)
    keep_d = np.isfinite(derivative[keep]) & (derivative[keep] > 0)
    if not keep_d.all():
        raise TransportError("Quantile transport derivative is not finite and positive")
    logger.debug(
        "quantile_transport: %d knots kept on [%g, %g]", keep.stop - keep.start, u[keep][0], u[keep][-1]
    )
    return Transport1D(u[keep], t[keep], derivative[keep], name="quantile")


def parse_transport(
    spec: str,
    *,
    knots: int = DEFAULT_KNOTS,
    u_range: float = DEFAULT_RANGE,
    grid_len: int = 8192,
    tail_mass: float = 1e-10,
    min_order: float = 1.0,
) -> Transport1D:
    """Build a transport from ``identity``, ``cubic``, ``linear:a`` or ``quantile:<family>``.

    ``cubic`` is T(u) = u^3 + u; ``quantile:gaussian:2`` maps the standard
    normal onto the named analytic family.

    Raises:
        ParameterError: On an unknown or malformed spec.
    """
    kind, _, arg = spec.strip().partition(":")
    match kind.lower():
        case "identity" if not arg:
            return Transport1D.identity(knots=knots, u_range=u_range)
        case "cubic" if not arg:
            return Transport1D.from_function(
                lambda u: u**3 + u,
                lambda u: 3.0 * u**2 + 1.0,
                knots=knots,
                u_range=u_range,
                name="cubic",
            )
        case "linear":
            try:
                a = float(arg)
            except ValueError as e:
                raise ParameterError(f"Malformed linear transport: {spec!r}") from e
            return Transport1D.linear(a, knots=knots, u_range=u_range)
        case "quantile" if arg:
            target = make_analytic(arg, grid_len, tail_mass, min_order=min_order)
            return quantile_transport(target, knots=knots, u_range=u_range)
    raise ParameterError(
        f"Unknown transport {spec!r}; expected identity, cubic, linear:a or quantile:<family>"
    )


# =============================================================================
# PUSHFORWARD
# =============================================================================


def _pushforward_len(T: Transport1D, source: GridDensity, u_lo: float, u_hi: float) -> int:
    """Points for a y-grid as fine as T'(u) * step wherever the source carries mass."""
    x = source.x
    heavy = source.values > _RESOLUTION_FLOOR * source.values.max()
    carried = (x >= u_lo) & (x <= u_hi) & heavy
    if not carried.any():
        return len(source)
    step = float(T.slope(x[carried]).min()) * source.step
    span = float(T(u_hi) - T(u_lo))
    n = math.ceil(span / step) + 1 if step > 0 else PUSHFORWARD_MAX_POINTS
    return int(min(max(n, len(source)), PUSHFORWARD_MAX_POINTS))


def pushforward(
    T: Transport1D, source: GridDensity, *, grid_len: int | None = None
) -> GridDensity:
    """Density of T(X), X ~ source: f(T^-1(y)) / T'(T^-1(y)) on a uniform y-grid.

    The source is restricted to the knot range of T. Without ``grid_len`` the
    y-step resolves the steepest compression of the source by T, up to
    ``PUSHFORWARD_MAX_POINTS`` points.
    """
    if T.is_identity:
        return source
    u_lo = max(T.u_range[0], source.x_min)
    u_hi = min(T.u_range[1], source.x_max)
    if not u_lo < u_hi:
        raise TransportError("Source support does not meet the transport range")
    src_cdf = cumulative_trapezoid(source.values, dx=source.step, initial=0.0)
    kept = float(np.interp(u_hi, source.x, src_cdf) - np.interp(u_lo, source.x, src_cdf))
    clamped = max(0.0, source.mass - kept)
    if clamped > CLAMP_MASS_WARN:
        logger.warning("%s: source mass %.2e outside [%g, %g] dropped", T.name, clamped, u_lo, u_hi)

    n = grid_len or _pushforward_len(T, source, u_lo, u_hi)
    y_lo, y_hi = float(T(u_lo)), float(T(u_hi))
    y = np.linspace(y_lo, y_hi, n)
    u = np.clip(T.inverse(y), u_lo, u_hi)
    out = GridDensity(y_lo, y_hi, _log_eval(source, u) / T.slope(u))
    drift = abs(out.mass - kept)
    if drift > PUSHFORWARD_DRIFT_TOL:
        logger.warning("%s: pushforward mass drift %.2e before renormalizing", T.name, drift)
    return normalize(out)


def fold_abs(f: GridDensity, *, grid_len: int | None = None) -> GridDensity:
    """Density of |X|, the two-to-one fold u -> |u|."""
    top = max(abs(f.x_min), abs(f.x_max))
    n = grid_len or len(f)
    y = np.linspace(0.0, top, n)
    return normalize(GridDensity(0.0, top, _log_eval(f, y) + _log_eval(f, -y)))


# =============================================================================
# ESCORT-LEVEL TRANSPORT CHECKS
# =============================================================================


def escort_transport(
    f: GridDensity, r: RenyiOrder | float, mapping: Callable[[GridDensity], GridDensity]
) -> GridDensity:
    """The density X whose escort is mapping(escort(f, r))."""
    return inverse_escort(mapping(escort(f, r)), r)


def _compare_transported(
    f: GridDensity,
    g: GridDensity,
    r: RenyiOrder | float,
    mapping: Callable[[GridDensity], GridDensity],
    *,
    equality: bool,
    tol: float,
) -> PreservationReport:
    r = as_order(r)
    if r.is_limit_one:
        raise ParameterError("Escort transports need r != 1")
    before = relative_renyi(f, g, r)
    if not math.isfinite(before):
        return PreservationReport.fail(
            StatusDetail(
                code=StatusCode.INFINITE,
                message="Relative r-entropy of the source pair is infinite",
            ),
            r=r.r,
            tol=tol,
        )
    after = relative_renyi(escort_transport(f, r, mapping), escort_transport(g, r, mapping), r)
    abs_err = abs(after - before)
    passed = abs_err < tol if equality else after <= before + tol
    return PreservationReport.success(
        r=r.r, delta_src=before, delta_dst=after, abs_err=abs_err, tol=tol, passed=passed
    )


def check_preservation(
    f: GridDensity,
    g: GridDensity,
    r: RenyiOrder | float,
    T: Transport1D,
    *,
    tol: float = 1e-3,
) -> PreservationReport:
    """Relative r-entropy of the source pair against that of the escort-transported pair.

    Equality is expected for an invertible T; ``passed`` iff abs_err < tol.
    """
    return _compare_transported(
        f, g, r, lambda d: pushforward(T, d), equality=True, tol=tol
    )


def check_data_processing(
    f: GridDensity,
    g: GridDensity,
    r: RenyiOrder | float,
    fold: Callable[[GridDensity], GridDensity] = fold_abs,
    *,
    tol: float = 1e-6,
) -> PreservationReport:
    """Relative r-entropy cannot grow when a many-to-one map acts on the escorts."""
    return _compare_transported(f, g, r, fold, equality=False, tol=tol)


# =============================================================================
# JACOBIANS AND ROTATIONS
# =============================================================================


def jacobian_amgm(T: Transport1D, U: Transport1D, lam: float, *, pairs: int = 256) -> float:
    """Largest relative value of T'(u)^λ U'(v)^(1-λ) - (λ T'(u) + (1-λ) U'(v)).

    Evaluated over all pairs of ``pairs`` knots subsampled from each map; never
    positive beyond rounding.
    """
    if not 0 < lam < 1:
        raise ParameterError(f"lambda must lie in (0, 1), got {lam}")
    a = T.derivative[np.linspace(0, T.derivative.size - 1, pairs).astype(int)][:, None]
    b = U.derivative[np.linspace(0, U.derivative.size - 1, pairs).astype(int)][None, :]
    arith = lam * a + (1.0 - lam) * b
    geo = np.exp(lam * np.log(a) + (1.0 - lam) * np.log(b))
    return float(np.max((geo - arith) / arith))


def _rotation(lam: float) -> np.ndarray:
    if not 0 < lam < 1:
        raise ParameterError(f"lambda must lie in (0, 1), got {lam}")
    s, c = math.sqrt(lam), math.sqrt(1.0 - lam)
    return np.array([[s, c], [-c, s]])


def rotation_covariance(lam: float, cov: np.ndarray | None = None) -> np.ndarray:
    """R cov R^T for the rotation (X, Y) -> (√λ X + √(1-λ) Y, -√(1-λ) X + √λ Y)."""
    rot = _rotation(lam)
    cov = np.eye(2) if cov is None else np.asarray(cov, dtype=float)
    return rot @ cov @ rot.T


def normal_rotation(
    lam: float, x: np.ndarray, y: np.ndarray, *, inverse: bool = False
) -> tuple[np.ndarray, np.ndarray, RotationReport]:
    """Rotate paired samples and report independence diagnostics.

    With ``inverse`` the transposed rotation is applied, undoing a forward one.
    Diagnostics pass when means, variances minus one and the correlation are
    all within 4/√N.
    """
    rot = _rotation(lam)
    if inverse:
        rot = rot.T
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1 or x.size < 2:
        raise ParameterError("Samples must be two 1-D arrays of equal length")
    xr = rot[0, 0] * x + rot[0, 1] * y
    yr = rot[1, 0] * x + rot[1, 1] * y
    n = x.size
    tol = 4.0 / math.sqrt(n)
    cov = np.cov(np.vstack((xr, yr)))
    corr = float(cov[0, 1] / math.sqrt(cov[0, 0] * cov[1, 1]))
    means = [float(xr.mean()), float(yr.mean())]
    variances = [float(cov[0, 0]), float(cov[1, 1])]
    # Variance of a sample variance of N(0,1) data is 2/N.
    passed = (
        max(abs(m) for m in means) < tol
        and max(abs(v - 1.0) for v in variances) < math.sqrt(2.0) * tol
        and abs(corr) < tol
    )
    report = RotationReport.success(
        lam=lam, samples=n, means=means, variances=variances, correlation=corr, tol=tol, passed=passed
    )
    return xr, yr, report


__all__ = [
    "Transport1D",
    "quantile_transport",
    "parse_transport",
    "pushforward",
    "fold_abs",
    "escort_transport",
    "check_preservation",
    "check_data_processing",
    "jacobian_amgm",
    "rotation_covariance",
    "normal_rotation",
]
