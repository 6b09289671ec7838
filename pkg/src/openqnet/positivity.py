"""Three independent positivity diagnostics for any propagator.

Positivity and complete positivity coincide for this family of maps: both
hold exactly when the flow weight is non-negative, equivalently when the
rank-two mixing probability moves toward its fixed-point value over the
interval. The Choi matrix gives the direct complete-positivity test; it is
built on the q <= 1 subspace only, because the omitted higher local sectors
evolve by unit phases and would contribute non-negative eigenvalues alone,
so nothing is lost by the restriction.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .amplitudes import NetworkParams, _check_time
from .errors import ParameterError, SizeLimitError
from .linalg import basis_matrix
from .propagator import PropagatorOps, apply, build_propagator
from .states import SubsystemSelector, excitation_probability

#: Guard on the Choi matrix dimension (K+1)^2.
CHOI_MAX_DIM = 4096

#: Symmetric zero-band for all three verdicts.
VERDICT_TOL = 1e-9


class Verdict(enum.Enum):
    POSITIVE_AND_CP = "positive_and_cp"
    NON_POSITIVE_NON_CP = "non_positive_non_cp"


@dataclass(frozen=True)
class PositivityVerdict:
    """Indicators from the three routes plus the resulting classification.

    ``flow_sign`` is the flow weight itself; ``choi_min_eig`` the smallest
    Choi eigenvalue; ``trace_dist_delta`` the change p(t2) - p(t1) of the
    trace distance to the class fixed point (fixed manifold for the
    excluding class). A map is positive and CP iff flow_sign >= -tol iff
    trace_dist_delta <= tol iff choi_min_eig >= -tol (up to the eigenvalue
    scale; the negative Choi eigenvalue is K*flow for the containing class
    and can split into two negatives for the excluding class).
    """

    flow_sign: float
    choi_min_eig: float
    trace_dist_delta: float
    verdict: Verdict


def choi_matrix(ops: PropagatorOps) -> np.ndarray:
    """C = sum_{mu,nu} Phi[|mu><nu|] (x) |mu><nu| over the q <= 1 basis.

    Hermitian with trace K+1 (trace preservation of the map); positive
    semidefinite exactly when the propagator is completely positive.
    """
    d = ops.k_qubits + 1
    if d * d > CHOI_MAX_DIM:
        raise SizeLimitError(f"Choi dimension {(d * d)}^2 exceeds guard {CHOI_MAX_DIM}^2")
    choi = np.zeros((d * d, d * d), dtype=complex)
    for mu in range(d):
        for nu in range(d):
            e = basis_matrix(d, mu, nu)
            choi += np.kron(apply(ops, e), e)
    return choi


def classify(
    params: NetworkParams, sel: SubsystemSelector, t1, t2, tol: float = VERDICT_TOL
) -> PositivityVerdict:
    """Run all three positivity routes over [t1, t2] and classify the map."""
    t1 = _check_time(t1, "t1")
    t2 = _check_time(t2, "t2")
    ops = build_propagator(params, sel, t1, t2)
    flow = ops.flow_weight
    choi_min = float(np.linalg.eigvalsh(choi_matrix(ops)).min())
    delta = excitation_probability(params, sel, t2) - excitation_probability(
        params, sel, t1
    )
    verdict = Verdict.POSITIVE_AND_CP if flow >= -tol else Verdict.NON_POSITIVE_NON_CP
    return PositivityVerdict(
        flow_sign=flow, choi_min_eig=choi_min, trace_dist_delta=float(delta), verdict=verdict
    )


def positivity_transition_time(params: NetworkParams, sel: SubsystemSelector, dt) -> float:
    """Earliest window anchor where Phi(t, t+dt) flips verdict.

    The flip happens where the hop probability |u_d|^2 is equal at both
    window ends, i.e. at t = period/2 - dt/2; located by bisection to
    machine precision (well inside 1e-10 periods). The location depends on
    neither K nor the dynamical class.
    """
    sel.validate(params)
    dt = _check_time(dt, "dt")
    if not 0.0 < dt < params.period:
        raise ParameterError(f"dt must lie strictly between 0 and one period, got {dt!r}")
    delta = dt / params.period

    def gain(tau: float) -> float:
        # |u_d|^2 change over the window, in period units and up to 4/N^2.
        return math.sin(math.pi * (tau + delta)) ** 2 - math.sin(math.pi * tau) ** 2

    lo, hi = 0.0, 0.5  # gain(0) > 0, gain(0.5) = cos^2(pi*delta) - 1 < 0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if gain(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi) * params.period
