"""
Complex-pair model of the twist region near the singular fibre.

A point z = (x1, x2) of C^2 away from the vanishing-cycle locus maps to
(base, x, y), with base = x1^2 + x2^2 the Lefschetz projection, x the annulus
coordinate and y the fibre angle. Angles t = arg(base) and y are measured in
turns. Periodic orbits of slope p/q pull back to explicit closed curves,
sampled here and checked against the map.
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence, Tuple

import numpy as np

from src.geometry.twist_profile import h_of_position, position_of_slope, r_tilde
from src.utils.errors import DomainError, SingularLocusError
from src.utils.logging import get_logger
from src.validator.report_model import VerificationReport

logger = get_logger(__name__)

TWO_PI = 2.0 * math.pi

# |x| below this counts as the zero section, which belongs to the positive side
ZERO_SECTION_TOL = 1e-12
# distance to the vanishing-cycle locus below which phi refuses to evaluate
SINGULAR_TOL = 1e-12


@dataclass(frozen=True)
class OrbitCurve:
    p: int
    q: int
    x0: float
    y0: float
    h: float
    tau: np.ndarray = field(repr=False)
    x1: np.ndarray = field(repr=False)
    x2: np.ndarray = field(repr=False)

    @property
    def slope(self) -> float:
        return self.p / self.q

    @property
    def on_positive_side(self) -> bool:
        return self.x0 >= 0

    @property
    def y_rate(self) -> float:
        """Fibre-angle advance per unit of tau along the orbit."""
        return self.slope if self.on_positive_side else self.slope - 1.0

    def samples(self) -> list[Tuple[float, complex, complex]]:
        return list(zip(self.tau.tolist(), self.x1.tolist(), self.x2.tolist()))


@dataclass(frozen=True)
class PhiImage:
    base: np.ndarray
    x: np.ndarray
    y: np.ndarray

    @property
    def t(self) -> np.ndarray:
        return np.angle(self.base) / TWO_PI


def _check_interior_slope(p: int, q: int) -> None:
    if q < 1 or p < 0 or p > q:
        raise DomainError(f"Slope {p}/{q} must lie in [0, 1] with q >= 1.")
    if gcd(p, q) != 1:
        raise DomainError(f"Slope {p}/{q} is not in lowest terms.")
    if p == 0 or p == q:
        raise DomainError(f"Slope {p}/{q} has no interior Morse-Bott torus.")


def parametrize_orbit(
    p: int, q: int, y0: float = 0.0, n_samples: int | None = None, half_width: float | None = None
) -> OrbitCurve:
    """
    Sample the preimage of the slope-p/q orbit through fibre angle y0.

    Args:
        p, q: Coprime slope with 0 < p/q < 1.
        y0: Fibre angle of the orbit at tau = 0, in turns.
        n_samples: Number of samples over tau in [0, q); at least 8q.
            Defaults to 256q.
        half_width: Annulus half-width; a torus beyond it is logged.

    Returns:
        The sampled curve. The positive side (x0 >= 0) uses the pair
        A e^{2 pi i s tau} + B e^{2 pi i (1-s) tau}; the negative side swaps
        the roles of the two frequencies.
    """
    _check_interior_slope(p, q)
    if n_samples is None:
        n_samples = 256 * q
    if n_samples < 8 * q:
        raise DomainError(f"At least {8 * q} samples are needed for slope {p}/{q}, got {n_samples}.")

    s = p / q
    x0 = position_of_slope(Fraction(p, q), half_width)
    h = h_of_position(x0)
    tau = np.arange(n_samples, dtype=float) * (q / n_samples)

    slow = np.exp(1j * TWO_PI * s * tau)
    fast = np.exp(1j * TWO_PI * (1.0 - s) * tau)
    phase = np.exp(1j * TWO_PI * y0)
    if x0 >= 0:
        a = 0.5 * math.exp(h) * phase * slow
        b = 0.5 * math.exp(-h) / phase * fast
        x1 = a + b
        x2 = -1j * a + 1j * b
    else:
        a = 0.5 * math.exp(h) / phase * fast
        b = 0.5 * math.exp(-h) * phase * slow
        x1 = a + b
        x2 = 1j * a - 1j * b
    logger.debug(f"Sampled slope {p}/{q} orbit at x0={x0:.6g}, h={h:.6g} with {n_samples} points.")
    return OrbitCurve(p=p, q=q, x0=x0, y0=y0 % 1.0, h=h, tau=tau, x1=x1, x2=x2)


def base_projection(x1, x2):
    return x1 * x1 + x2 * x2


def _rotated(x1, x2, base) -> Tuple[np.ndarray, np.ndarray]:
    half_turn = np.exp(-0.5j * np.angle(base))
    return half_turn * x1, half_turn * x2


def hat_norms(x1, x2) -> Tuple[np.ndarray, np.ndarray]:
    """
    Squared norms (|p|^2, |q|^2) of the real and imaginary parts of the rotated point.

    Their difference is |base| and their product is x^2.
    """
    x1 = np.asarray(x1, dtype=complex)
    x2 = np.asarray(x2, dtype=complex)
    xh1, xh2 = _rotated(x1, x2, x1 * x1 + x2 * x2)
    real_sq = xh1.real**2 + xh2.real**2
    imag_sq = xh1.imag**2 + xh2.imag**2
    return real_sq, imag_sq


def phi(x1, x2) -> PhiImage:
    """
    Evaluate the model map at one point or an array of points.

    y does not depend on the branch of t: a full turn of arg(base) flips the
    sign of the rotated real part, moving its angle by a half turn that the
    t/2 term cancels.
    """
    x1 = np.asarray(x1, dtype=complex)
    x2 = np.asarray(x2, dtype=complex)
    base = x1 * x1 + x2 * x2
    if np.any(np.abs(base) <= SINGULAR_TOL):
        raise SingularLocusError("Point lies over the critical value: base projection vanishes.")
    xh1, xh2 = _rotated(x1, x2, base)
    if np.any(np.hypot(xh1.real, xh2.real) <= SINGULAR_TOL):
        raise SingularLocusError("Point lies on the vanishing cycle: rotated real part vanishes.")

    t = np.angle(base) / TWO_PI
    theta = np.arctan2(xh2.real, xh1.real) / TWO_PI
    x = (x1 * np.conj(x2)).imag
    side = np.where(x >= -ZERO_SECTION_TOL, 1.0, -1.0)
    y = np.mod(theta + side * t / 2.0, 1.0)
    return PhiImage(base=base, x=x, y=y)


def phi_inverse(base, x, y) -> Tuple[np.ndarray, np.ndarray]:
    """Point of C^2 with the given base value, annulus coordinate and fibre angle."""
    base = np.asarray(base, dtype=complex)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    r = np.abs(base)
    if np.any(r <= SINGULAR_TOL):
        raise SingularLocusError("The critical value has no regular preimage.")
    t = np.angle(base) / TWO_PI
    real_norm = np.sqrt((r + np.sqrt(r * r + 4.0 * x * x)) / 2.0)
    imag_signed = x / real_norm
    side = np.where(x >= 0, 1.0, -1.0)
    angle = TWO_PI * (y - side * t / 2.0)
    xh1 = real_norm * np.cos(angle) + 1j * imag_signed * np.sin(angle)
    xh2 = real_norm * np.sin(angle) - 1j * imag_signed * np.cos(angle)
    half_turn = np.exp(0.5j * np.angle(base))
    return half_turn * xh1, half_turn * xh2


def _wrap(delta):
    """Signed representative of a turn-valued difference in [-1/2, 1/2)."""
    return np.mod(np.asarray(delta) + 0.5, 1.0) - 0.5


def verify_orbit(
    p: int,
    q: int,
    y0: float = 0.0,
    n_samples: int | None = None,
    tol: float = 1e-9,
    half_width: float | None = None,
) -> VerificationReport:
    curve = parametrize_orbit(p, q, y0, n_samples, half_width)
    image = phi(curve.x1, curve.x2)
    lifted_t = np.unwrap(np.angle(image.base)) / TWO_PI
    real_sq, imag_sq = hat_norms(curve.x1, curve.x2)

    report = VerificationReport(subject=f"orbit {p}/{q} y0={curve.y0:g}")
    report.details.update(x0=curve.x0, h=curve.h, n_samples=int(curve.tau.size), side="positive" if curve.on_positive_side else "negative")
    if half_width is not None:
        # outside the annulus the model map is not the monodromy; the checks still run
        report.details.update(half_width=half_width, inside_annulus=bool(abs(curve.x0) <= half_width))
    report.add("base_modulus", np.max(np.abs(np.abs(image.base) - 1.0)), tol)
    report.add("base_angle", np.max(np.abs(lifted_t - curve.tau)), tol, note="arg(base) lifted along the orbit")
    report.add("x_coordinate", np.max(np.abs(image.x - curve.x0)), tol)
    expected_y = curve.y0 + curve.y_rate * curve.tau
    report.add("y_advance", np.max(np.abs(_wrap(image.y - expected_y))), tol)
    report.add("hat_difference", np.max(np.abs(real_sq - imag_sq - 1.0)), tol)
    report.add("hat_product", np.max(np.abs(real_sq * imag_sq - curve.x0**2)), tol)

    if report.passed:
        logger.success(f"Orbit {p}/{q} (y0={curve.y0:g}) matches the model map.")
    else:
        names = ", ".join(check.name for check in report.failures())
        logger.error(f"Orbit {p}/{q} (y0={curve.y0:g}) failed: {names}")
    return report


@dataclass(frozen=True)
class PullbackSampleSpec:
    """
    Random sample of points and tangent directions for the 1-form check.

    direction is one of "random", "vertical" (tangent to the fibre of the
    Lefschetz projection) or "radial" (v = z).
    """

    n_points: int = 100
    seed: int = 0
    step: float = 1e-5
    direction: str = "random"
    r_range: Tuple[float, float] = (0.5, 2.0)
    x_range: Tuple[float, float] = (0.05, 1.5)

    def __post_init__(self):
        if self.direction not in ("random", "vertical", "radial"):
            raise DomainError(f"Unknown tangent direction '{self.direction}'.")
        if self.n_points < 1:
            raise DomainError("At least one sample point is needed.")
        if self.step <= 0:
            raise DomainError(f"Finite-difference step must be positive, got {self.step}.")


def _sample_points(sampling: PullbackSampleSpec) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    rng = np.random.default_rng(sampling.seed)
    n = sampling.n_points
    r = rng.uniform(*sampling.r_range, size=n)
    t = rng.uniform(0.0, 1.0, size=n)
    x = rng.uniform(*sampling.x_range, size=n) * rng.choice([-1.0, 1.0], size=n)
    y = rng.uniform(0.0, 1.0, size=n)
    z1, z2 = phi_inverse(r * np.exp(1j * TWO_PI * t), x, y)

    if sampling.direction == "vertical":
        v1, v2 = z2, -z1
    elif sampling.direction == "radial":
        v1, v2 = z1, z2
    else:
        v = rng.normal(size=(4, n))
        v1, v2 = v[0] + 1j * v[1], v[2] + 1j * v[3]
    norm = np.sqrt(np.abs(v1) ** 2 + np.abs(v2) ** 2)
    return z1, z2, v1 / norm, v2 / norm


def _pullback_errors(sampling: PullbackSampleSpec, step: float) -> np.ndarray:
    if not step > 16 * np.finfo(float).eps:
        raise DomainError(f"Finite-difference step {step} underflows double precision.")
    z1, z2, v1, v2 = _sample_points(sampling)

    # i/4 sum(z dz̄ - z̄ dz) evaluated on v
    lhs = 0.5 * (np.conj(z1) * v1 + np.conj(z2) * v2).imag

    here = phi(z1, z2)
    ahead = phi(z1 + step * v1, z2 + step * v2)
    behind = phi(z1 - step * v1, z2 - step * v2)
    dy = _wrap(ahead.y - behind.y) / (2.0 * step)
    dt = _wrap(ahead.t - behind.t) / (2.0 * step)
    profile = np.array([r_tilde(abs(xv), rv) for xv, rv in zip(here.x, np.abs(here.base))])
    rhs = TWO_PI * (here.x * dy - profile * dt)
    return np.abs(lhs - rhs)


def verify_oneform_pullback(sampling: PullbackSampleSpec = PullbackSampleSpec(), tol: float = 1e-6) -> VerificationReport:
    """
    Compare the Liouville form of C^2 with the pulled-back twist form.

    The annulus side is x dy - R̃_r(|x|) dt with r = |base|, scaled by 2 pi
    because y and t are measured in turns; the pushforward of each tangent
    is taken by central differences.
    """
    errors = _pullback_errors(sampling, sampling.step)
    report = VerificationReport(subject=f"oneform pullback ({sampling.direction})")
    report.details.update(n_points=sampling.n_points, step=sampling.step, seed=sampling.seed)
    report.add("oneform_discrepancy", float(np.max(errors)), tol)
    if report.passed:
        logger.success(f"1-form pullback holds at {sampling.n_points} points (max error {np.max(errors):.3g}).")
    else:
        logger.error(f"1-form pullback discrepancy {np.max(errors):.3g} exceeds {tol}.")
    return report


def _observed_order(coarse: float, fine: float, ratio: float) -> float:
    # an exact finer step has unbounded order; two exact steps have none
    if fine == 0.0:
        return math.inf if coarse > 0.0 else math.nan
    if coarse == 0.0:
        return -math.inf
    return math.log(coarse / fine) / math.log(ratio)


def pullback_convergence(sampling: PullbackSampleSpec = PullbackSampleSpec(), steps: Sequence[float] = (1e-2, 1e-3)) -> dict:
    """
    Maximum pullback discrepancy at each step and the observed order between
    consecutive steps; central differences should give order close to 2.
    """
    errors = [float(np.max(_pullback_errors(sampling, step))) for step in steps]
    orders = [
        _observed_order(coarse, fine, h_coarse / h_fine)
        for coarse, fine, h_coarse, h_fine in zip(errors, errors[1:], steps, steps[1:])
    ]
    return {"steps": list(steps), "max_errors": errors, "orders": orders}
