"""Gaussian single-photon wavepackets and closed-form Gaussian integrals.

Every probability in this package reduces to integrals of the form
``c * exp(-p t**2 + q t)`` over a (possibly infinite) interval.  Those are
evaluated with the Faddeeva function so that complex ``q`` (from frequency
offsets) costs nothing extra and nothing overflows.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import wofz

NORM = (2.0 / math.pi) ** 0.25
FULL = math.inf

_SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class GaussianWavepacket:
    """Unit-width Gaussian amplitude centred at ``center_time`` with carrier
    offset ``center_frequency`` (rad per unit time)."""

    center_time: float = 0.0
    center_frequency: float = 0.0

    def __call__(self, t):
        return amplitude(self, t)

    def as_integrand(self) -> "ComplexGaussianIntegrand":
        tau, w = self.center_time, self.center_frequency
        return ComplexGaussianIntegrand(1.0, complex(2.0 * tau, -w), NORM, log_scale=-tau * tau)

    def shifted(self, d_time: float = 0.0, d_frequency: float = 0.0) -> "GaussianWavepacket":
        return GaussianWavepacket(self.center_time + d_time, self.center_frequency + d_frequency)


@dataclass(frozen=True)
class ComplexGaussianIntegrand:
    """``constant * exp(log_scale - quadratic * t**2 + linear * t)``, Re(quadratic) > 0.

    ``log_scale`` keeps far-displaced wavepackets (exp(-tau**2) underflows
    past tau ~ 27) representable.
    """

    quadratic: complex
    linear: complex = 0.0
    constant: complex = 1.0
    log_scale: complex = 0.0

    def __post_init__(self):
        if not complex(self.quadratic).real > 0:
            raise ValueError(f"quadratic coefficient needs a positive real part, got {self.quadratic}")

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        return self.constant * np.exp(self.log_scale - self.quadratic * t * t + self.linear * t)

    def __mul__(self, other: "ComplexGaussianIntegrand") -> "ComplexGaussianIntegrand":
        return ComplexGaussianIntegrand(
            self.quadratic + other.quadratic,
            self.linear + other.linear,
            self.constant * other.constant,
            self.log_scale + other.log_scale,
        )

    def conj(self) -> "ComplexGaussianIntegrand":
        return ComplexGaussianIntegrand(
            np.conj(self.quadratic), np.conj(self.linear), np.conj(self.constant),
            np.conj(self.log_scale),
        )


def amplitude(wp: GaussianWavepacket, t):
    """psi(t) = (2/pi)^(1/4) exp(-i w t) exp(-(t - tau)^2); vectorised over ``t``."""
    t = np.asarray(t, dtype=float)
    out = NORM * np.exp(-1j * wp.center_frequency * t - (t - wp.center_time) ** 2)
    return out[()] if out.ndim == 0 else out


def _erf_split(z, log_local):
    """Write erf(z) * exp(q^2/4p) as ``s * exp(q^2/4p) - r`` with ``r`` bounded.

    ``log_local`` is log(c) - p x^2 + q x at the endpoint, which equals
    log(c) + q^2/(4p) - z^2; ``r`` carries the constant ``c`` already.
    """
    if z.real >= 0:
        return 1.0, np.exp(log_local) * wofz(1j * z)
    return -1.0, -np.exp(log_local) * wofz(-1j * z)


def window_integral(g: ComplexGaussianIntegrand, lo: float = -FULL, hi: float = FULL) -> complex:
    """Integral of ``g`` over ``[lo, hi]``; either end may be infinite."""
    if not complex(g.quadratic).real > 0:
        raise ValueError("integrand is not integrable: Re(quadratic) <= 0")
    if lo > hi:
        raise ValueError(f"lower limit {lo} exceeds upper limit {hi}")
    if lo == hi or g.constant == 0:
        return 0j
    p = complex(g.quadratic)
    q = complex(g.linear)
    log_c = np.log(complex(g.constant)) + g.log_scale
    sp = np.sqrt(p)
    centre = q / (2.0 * p)

    def split(x):
        if math.isinf(x):
            return (1.0 if x > 0 else -1.0), 0j
        return _erf_split(sp * (x - centre), log_c - p * x * x + q * x)

    s_hi, r_hi = split(hi)
    s_lo, r_lo = split(lo)
    total = r_lo - r_hi
    if s_hi != s_lo:
        total += (s_hi - s_lo) * np.exp(log_c + q * q / (4.0 * p))
    return complex(_SQRT_PI / (2.0 * sp) * total)


def product_integral(a: GaussianWavepacket, b: GaussianWavepacket, lo: float = -FULL,
                     hi: float = FULL) -> complex:
    """Integral of conj(psi_a) * psi_b over ``[lo, hi]``."""
    return window_integral(a.as_integrand().conj() * b.as_integrand(), lo, hi)


def overlap(a: GaussianWavepacket, b: GaussianWavepacket) -> complex:
    return product_integral(a, b)
