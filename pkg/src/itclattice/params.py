"""Shared parameter and report types for both clustering variants."""

import math
from dataclasses import dataclass

from .errors import DegenerateCodebook, DisjointSupport, InvalidSigma

__all__ = ["ItcParams", "DivergenceReport"]

# Below this, a kernel-sum denominator counts as numerically zero and the
# owning vector as stranded.
DENOM_GUARD = 1e-300


@dataclass(frozen=True)
class ItcParams:
    """Kernel widths and termination settings for one clustering run.

    ``xi`` is the data kernel width, ``omega`` the codebook kernel width.
    The derived widths ``tau`` (cross term) and ``rho`` (codebook self term)
    follow from the Gaussian overlap integral: tau^2 = xi^2 + omega^2 and
    rho^2 = 2 omega^2.

    Iterations stop when the relative change of the divergence drops to
    ``eps_dcs``, when no coordinate moves more than ``theta`` lattice units,
    or after ``max_iter`` updates.  The defaults reflect that the lattice
    variant quantizes codebook positions to cells when building its density,
    which leaves a residual movement jitter of a few tenths of a cell:
    ``theta`` = 0.5 reads as "updates became sub-cell".
    """

    xi: float
    omega: float
    max_iter: int = 50
    eps_dcs: float = 1e-3
    theta: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if not (self.xi > 0 and math.isfinite(self.xi)):
            raise InvalidSigma(f"xi must be positive, got {self.xi}")
        if not (self.omega > 0 and math.isfinite(self.omega)):
            raise InvalidSigma(f"omega must be positive, got {self.omega}")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if self.eps_dcs <= 0:
            raise ValueError("eps_dcs must be positive")
        if self.theta <= 0:
            raise ValueError("theta must be positive")

    @property
    def tau_sq(self):
        return self.xi * self.xi + self.omega * self.omega

    @property
    def rho_sq(self):
        return 2.0 * self.omega * self.omega

    @property
    def tau(self):
        return math.sqrt(self.tau_sq)

    @property
    def rho(self):
        return math.sqrt(self.rho_sq)


@dataclass(frozen=True)
class DivergenceReport:
    """Information potentials and the divergence they assemble into.

    ``d_cs = -2 log v_cross + log v_code + log v_data`` is nonnegative up to
    rounding (Cauchy-Schwarz) and zero exactly when the two densities
    coincide.
    """

    v_cross: float
    v_code: float
    v_data: float
    d_cs: float

    @classmethod
    def assemble(cls, v_cross, v_code, v_data):
        if v_code <= 0.0:
            raise DegenerateCodebook("codebook self-potential underflowed to zero")
        if v_cross <= 0.0:
            raise DisjointSupport("cross potential is zero; divergence is infinite")
        d_cs = -2.0 * math.log(v_cross) + math.log(v_code) + math.log(v_data)
        return cls(v_cross=v_cross, v_code=v_code, v_data=v_data, d_cs=d_cs)
