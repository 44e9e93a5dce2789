from fractions import Fraction
from math import gcd

import numpy as np

from src.checks.base_check import BaseCheck
from src.geometry.orbit_geometry import (
    PullbackSampleSpec,
    parametrize_orbit,
    phi,
    pullback_convergence,
    verify_oneform_pullback,
    verify_orbit,
)
from src.geometry.twist_profile import (
    h_of_position,
    monodromy_shift,
    position_of_slope,
    position_of_slope_numeric,
    r_tilde,
    slope_at,
)

ORBIT_TOL = 1e-9
PULLBACK_TOL = 1e-6
Y0_SAMPLES = (0.0, 0.3, 0.7)


class ProfileCheck(BaseCheck):
    """Twist profile: slope inversion, monotonicity and the torus radius."""

    name = "twist_profile"

    def run(self) -> None:
        for q in range(2, self.ranges.max_denominator + 1):
            for p in range(1, q):
                if gcd(p, q) != 1:
                    continue
                s = Fraction(p, q)
                x0 = position_of_slope(s)
                self.expect(abs(slope_at(abs(x0)) - float(min(s, 1 - s))) < 1e-12, f"slope {s}: inversion off at x0={x0}")
                self.expect(abs(x0 - position_of_slope_numeric(s)) < 1e-10, f"slope {s}: closed form and root finder disagree")
                self.expect(abs(monodromy_shift(x0) - float(s)) < 1e-12, f"slope {s}: monodromy shift is not the slope")
                self.expect((x0 >= 0) == (s <= Fraction(1, 2)), f"slope {s}: torus on the wrong side")
                h = h_of_position(x0)
                self.expect(
                    abs(np.cosh(h) ** 2 - (np.sqrt(x0 * x0 + 0.25) + 0.5)) < 1e-12,
                    f"slope {s}: torus radius relation fails",
                )
        grid = np.linspace(0.0, 20.0, 401)
        values = [r_tilde(t) for t in grid]
        slopes = [slope_at(t) for t in grid]
        self.expect(all(a < b for a, b in zip(values, values[1:])), "R̃ is not increasing")
        second = np.diff(values, 2)
        self.expect(bool(np.all(second <= 1e-12)), f"R̃ is not concave: largest second difference {second.max():.3g}")
        self.expect(all(a > b for a, b in zip(slopes, slopes[1:])), "slope function is not decreasing")
        self.expect(slope_at(0.0) == 0.5 and 0 < slopes[-1] < 0.5, "slope function leaves (0, 1/2]")


class GeometryCheck(BaseCheck):
    """Orbit parametrisations land on the model tori and the 1-form pulls back."""

    name = "orbit_geometry"

    def run(self) -> None:
        for q in range(2, self.ranges.orbit_max_q + 1):
            for p in range(1, q):
                if gcd(p, q) != 1:
                    continue
                for y0 in Y0_SAMPLES:
                    report = self.guarded(f"orbit {p}/{q}", verify_orbit, p, q, y0, tol=ORBIT_TOL)
                    if report is not None:
                        failed = ", ".join(f"{c.name}={c.max_error:.3g}" for c in report.failures())
                        self.expect(report.passed, f"orbit {p}/{q} y0={y0}: {failed}")
                # moving along the fibre leaves the annulus coordinate alone
                base = phi(*_samples(p, q, 0.0))
                shifted = phi(*_samples(p, q, 0.45))
                self.expect(
                    np.max(np.abs(base.x - shifted.x)) < ORBIT_TOL,
                    f"orbit {p}/{q}: x depends on the fibre angle",
                )

        for direction in ("random", "vertical", "radial"):
            sampling = PullbackSampleSpec(n_points=self.ranges.pullback_points, seed=self.ranges.seed, direction=direction)
            report = verify_oneform_pullback(sampling, tol=PULLBACK_TOL)
            self.expect(report.passed, f"1-form pullback ({direction}): {report.checks[0].max_error:.3g}")

        sampling = PullbackSampleSpec(n_points=self.ranges.pullback_points, seed=self.ranges.seed)
        convergence = pullback_convergence(sampling)
        order = convergence["orders"][0]
        self.expect(1.5 < order < 2.5, f"central differences converge at order {order:.3g}, expected about 2")


def _samples(p: int, q: int, y0: float):
    curve = parametrize_orbit(p, q, y0, n_samples=16 * q)
    return curve.x1, curve.x2
