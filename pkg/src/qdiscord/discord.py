"""Closed-form classical correlation and quantum discord for rank-2
two-qubit states.

The pipeline chains three exact identities: the linear-entropy classical
correlation of the state, the monogamy between that quantity and the tangle
of rho_AC across a purification, and the Koashi-Winter trade-off between
E_f(rho_AC) and the classical correlation of rho_AB. The result is

    I_cc = S(rho_A) - f(S2(rho_A) - I2_cc)
    Q    = I_mutual - I_cc

valid whenever rho_AB has rank at most 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .channel import linear_classical_correlation
from .errors import (
    ConsistencyError,
    DegenerateDenominator,
    DimensionMismatch,
    OutOfDomain,
    RankTooHigh,
)
from .linalg import clamp_spectrum, hermitian_eig
from .measures import (
    binary_entropy,
    eof_two_qubit,
    f_map,
    linear_entropy,
    tangle_two_qubit,
    von_neumann_entropy,
)
from .states import (
    RANK_TOL,
    DensityMatrix,
    FamilySpec,
    purify,
    reduced,
    traced_over_b,
)

_CLAMP_WINDOW = 1e-9


@dataclass(frozen=True)
class CorrelationReport:
    """Every correlation quantity computed for one rank-<=2 two-qubit state.

    Entropic fields are in bits; S2 and I2 values are dimensionless.
    """

    S_A: float
    S_B: float
    S_AB: float
    S2_A: float
    S2_B: float
    I_mutual: float
    I2_cc: float
    I_cc: float
    Q_discord: float
    rank: int
    family: Optional[FamilySpec] = None


def _clamp_unit_interval(value: float) -> float:
    """Snap rounding overshoot into [0, 1]; larger violations are bugs."""
    if value < -_CLAMP_WINDOW or value > 1.0 + _CLAMP_WINDOW:
        raise ConsistencyError(
            f"f argument {value} overshoots [0, 1] beyond the {_CLAMP_WINDOW} window"
        )
    return min(max(value, 0.0), 1.0)


def _require_rank2(rho: DensityMatrix) -> int:
    if rho.dims != (2, 2):
        raise DimensionMismatch(f"rank-2 formulas need a 2x2 pair, got dims {rho.dims}")
    values = clamp_spectrum(hermitian_eig(rho.matrix).values)
    rank = int(np.sum(values > RANK_TOL))
    if rank > 2:
        raise RankTooHigh(
            f"state has rank {rank}; third-largest eigenvalue {values[2]:.6e}"
        )
    return rank


def discord_rank2(rho: DensityMatrix, family: Optional[FamilySpec] = None) -> CorrelationReport:
    """Full correlation report for a rank-<=2 two-qubit state."""
    rank = _require_rank2(rho)
    rho_a = reduced(rho, "A")
    rho_b = reduced(rho, "B")
    s_a = von_neumann_entropy(rho_a)
    s_b = von_neumann_entropy(rho_b)
    s_ab = von_neumann_entropy(rho)
    s2_a = linear_entropy(rho_a)
    s2_b = linear_entropy(rho_b)
    i2_cc = linear_classical_correlation(rho)
    i_cc = s_a - f_map(_clamp_unit_interval(s2_a - i2_cc))
    i_mutual = s_a + s_b - s_ab
    return CorrelationReport(
        S_A=s_a,
        S_B=s_b,
        S_AB=s_ab,
        S2_A=s2_a,
        S2_B=s2_b,
        I_mutual=i_mutual,
        I2_cc=i2_cc,
        I_cc=i_cc,
        Q_discord=i_mutual - i_cc,
        rank=rank,
        family=family,
    )


def classical_correlation_rank2(rho: DensityMatrix) -> float:
    """Classical correlation S(rho_A) - f(S2(rho_A) - I2_cc) under measurement on B."""
    return discord_rank2(rho).I_cc


def discord_rho2_closed_form(x: float, theta: float, eta: float) -> float:
    """Discord of the two-parameter pure-state mixture family, in closed form.

    Raises DegenerateDenominator when rho_B is (numerically) pure, in which
    case the caller should fall back to the pipeline on the built state.
    """
    if not 0.0 <= x <= 1.0:
        raise OutOfDomain(f"x={x} outside [0, 1]")
    if not 0.0 <= theta <= 2.0 * math.pi:
        raise OutOfDomain(f"theta={theta} outside [0, 2*pi]")
    if not 0.0 <= eta <= 2.0 * math.pi:
        raise OutOfDomain(f"eta={eta} outside [0, 2*pi]")
    st, ct = math.sin(theta), math.cos(theta)
    se, ce = math.sin(eta), math.cos(eta)
    d1 = x * ct * ct + (1.0 - x) * se * se
    d2 = x * st * st + (1.0 - x) * ce * ce
    den = d1 * d2
    if den <= 1e-12:
        raise DegenerateDenominator(f"marginal weight product {den:.3e} vanishes")
    l1 = (x * st * ct + (1.0 - x) * se * ce) / math.sqrt(den)
    l2 = (x * st * ct - (1.0 - x) * se * ce) / math.sqrt(den)
    l3 = (x * x * st * st * ct * ct - (1.0 - x) ** 2 * se * se * ce * ce) / den
    # l4 is S2(rho_A) = 4a(1-a) for a = x sin^2(theta) + (1-x) sin^2(eta),
    # expanded in double angles; the cross term enters with a plus sign.
    sin2t, sin2e = math.sin(2.0 * theta), math.sin(2.0 * eta)
    l4 = (
        4.0 * x * (1.0 - x)
        + x * x * sin2t * sin2t
        + (1.0 - x) ** 2 * sin2e * sin2e
        - 4.0 * x * (1.0 - x) * math.cos(theta - eta) ** 2
        + 2.0 * x * (1.0 - x) * sin2t * sin2e
    )
    l5 = 4.0 * den
    peak = max(l1 * l1, l2 * l2, l3 * l3)
    return (
        binary_entropy(d2)
        - binary_entropy(x)
        + f_map(_clamp_unit_interval(l4 - peak * l5))
    )


def koashi_winter_residual(rho: DensityMatrix) -> float:
    """E_f(rho_AC) + I_cc(rho_AB) - S(rho_A) across a purification; ~0 when exact."""
    report = discord_rank2(rho)
    pur = purify(rho)
    ef = eof_two_qubit(traced_over_b(pur)) if pur.dims[2] == 2 else 0.0
    return ef + report.I_cc - report.S_A


def monogamy_residual(rho: DensityMatrix) -> float:
    """tau(rho_AC) + I2_cc(rho_AB) - S2(rho_A) across a purification; ~0 when exact."""
    _require_rank2(rho)
    pur = purify(rho)
    tau = tangle_two_qubit(traced_over_b(pur)) if pur.dims[2] == 2 else 0.0
    i2 = linear_classical_correlation(rho)
    return tau + i2 - linear_entropy(reduced(rho, "A"))
