"""
Single-valued B-H laws for the iron core.

Two kinds are supported:

    linear      B = mu0 * mu_r * H
    saturating  B = mu0 * H + (2 * B_sat / pi) * atan(H / H_knee)

The saturating law is anhysteretic, odd, strictly increasing and its slope never
drops below mu0, so Newton iterations built on it always see a positive
permeance. All functions accept scalars or numpy arrays.
"""

from __future__ import annotations

import dataclasses
import math
from typing import Literal

import numpy as np
import numpy.typing as npt
from scipy.optimize import brentq

mu_0 = 4e-7 * math.pi  # Vacuum permeability [henry/meter]

ArrayLike = float | npt.NDArray[np.float64]


@dataclasses.dataclass(frozen=True)
class BHCurve:
    """
    Material law parameters.

        Field   Unit    Used by
        kind    -       both
        mu_r    -       linear only; the saturating law derives it from the slope at H=0
        B_sat   tesla   saturating only
        H_knee  A/m     saturating only
    """

    kind: Literal["linear", "saturating"] = "saturating"
    mu_r: float = 1000.0
    B_sat: float = 1.8
    H_knee: float = 500.0

    def __post_init__(self) -> None:
        if self.kind not in ("linear", "saturating"):
            raise ValueError(f"kind invalid: {self.kind!r}")
        if not (math.isfinite(self.mu_r) and self.mu_r >= 1):
            raise ValueError(f"mu_r invalid: {self.mu_r}")
        if not (math.isfinite(self.B_sat) and self.B_sat > 0):
            raise ValueError(f"B_sat invalid: {self.B_sat}")
        if not (math.isfinite(self.H_knee) and self.H_knee > 0):
            raise ValueError(f"H_knee invalid: {self.H_knee}")

    @property
    def mu0(self) -> float:
        return mu_0

    @property
    def mu_r_initial(self) -> float:
        """Relative permeability at the origin of the curve."""
        if self.kind == "linear":
            return self.mu_r
        return 1.0 + 2.0 * self.B_sat / (math.pi * self.H_knee * mu_0)

    @staticmethod
    def linear(mu_r: float) -> BHCurve:
        return BHCurve(kind="linear", mu_r=mu_r)

    @staticmethod
    def saturating(B_sat: float = 1.8, H_knee: float = 500.0) -> BHCurve:
        return BHCurve(kind="saturating", B_sat=B_sat, H_knee=H_knee)


SOFT_IRON = BHCurve.saturating(B_sat=1.8, H_knee=500.0)
"""Default core material; the parameters are placeholders, not a measured curve."""


def _check_finite(x: ArrayLike, name: str) -> None:
    if not np.all(np.isfinite(x)):
        raise ValueError(f"{name} must be finite, got {x!r}")


def b_of_h(curve: BHCurve, H: ArrayLike) -> ArrayLike:
    """Flux density [T] for field strength H [A/m]."""
    _check_finite(H, "H")
    if curve.kind == "linear":
        return mu_0 * curve.mu_r * H
    return mu_0 * H + (2.0 * curve.B_sat / math.pi) * np.arctan(H / curve.H_knee)


def mu_differential(curve: BHCurve, H: ArrayLike) -> ArrayLike:
    """dB/dH [H/m], evaluated analytically."""
    _check_finite(H, "H")
    if curve.kind == "linear":
        if np.ndim(H):
            return np.full(np.shape(H), mu_0 * curve.mu_r)
        return mu_0 * curve.mu_r
    x = H / curve.H_knee
    return mu_0 + (2.0 * curve.B_sat / (math.pi * curve.H_knee)) / (1.0 + x * x)


def coenergy_density(curve: BHCurve, H: ArrayLike) -> ArrayLike:
    """Magnetic co-energy density, the integral of B dH from 0 to H [J/m^3]."""
    _check_finite(H, "H")
    if curve.kind == "linear":
        return 0.5 * mu_0 * curve.mu_r * H * H
    k = curve.H_knee
    return 0.5 * mu_0 * H * H + (2.0 * curve.B_sat / math.pi) * (
        H * np.arctan(H / k) - 0.5 * k * np.log1p((H / k) ** 2)
    )


def energy_density(curve: BHCurve, H: ArrayLike) -> ArrayLike:
    """Stored energy density, the integral of H dB, expressed through H [J/m^3]."""
    return H * b_of_h(curve, H) - coenergy_density(curve, H)


def _h_of_b_scalar(curve: BHCurve, B: float) -> float:
    if B == 0.0:
        return 0.0
    if curve.kind == "linear":
        return B / (mu_0 * curve.mu_r)
    target = abs(B)
    # slope >= mu0 bounds the root: |H| <= |B| / mu0
    hi = target / mu_0
    h = brentq(lambda x: float(b_of_h(curve, x)) - target, 0.0, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500)
    return math.copysign(h, B)


def h_of_b(curve: BHCurve, B: ArrayLike) -> ArrayLike:
    """Field strength [A/m] producing flux density B [T]; inverse of :func:`b_of_h`."""
    _check_finite(B, "B")
    if np.ndim(B) == 0:
        return _h_of_b_scalar(curve, float(B))
    arr = np.asarray(B, dtype=float)
    return np.vectorize(lambda b: _h_of_b_scalar(curve, b), otypes=[float])(arr)
