"""Quantum Fisher information of the reduced states for global parameters.

Closed forms are provided for the exchange coupling and for the network
size (differentiated as a continuous real), each split into a classical
part from the parameter dependence of the eigenvalues and a quantum part
from the parameter dependence of the eigenvectors. A finite-difference
symmetric-logarithmic-derivative oracle provides the independent numeric
route. For single-qubit subsystems the information additionally decomposes,
over any observation window [t1, t2], into a process part generated by the
propagator, a state part carried in at t1, and a signed cross term.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .amplitudes import NetworkParams, _check_time
from .errors import (
    DivergenceError,
    OracleFailureError,
    ParameterError,
    PoleError,
    SingularIntervalError,
)
from .states import DynClass, SubsystemSelector

#: Eigenvalue-pair cutoff in the SLD solve.
SLD_PAIR_CUTOFF = 1e-12


class GlobalParameter(enum.Enum):
    """Which global parameter the information is taken with respect to."""

    COUPLING_J = "J"
    SIZE_N = "N"


@dataclass(frozen=True)
class FisherBreakdown:
    """Classical (eigenvalue) and quantum (eigenvector) pieces of the QFI."""

    classical: float
    quantum: float
    total: float
    theta: GlobalParameter


@dataclass(frozen=True)
class ProcessStateSplit:
    """Window decomposition of single-qubit sensitivity.

    ``process`` is generated by the propagator over [t1, t2], ``state`` is
    carried by the state at t1, and ``cross`` is the signed interference
    between them; the three always sum to ``total``.
    """

    process: float
    state: float
    cross: float
    total: float
    t1: float
    t2: float


def qfi_closed_form(
    params: NetworkParams, sel: SubsystemSelector, theta: GlobalParameter, t
) -> FisherBreakdown:
    """Closed-form quantum Fisher information of the reduced state at ``t``.

    For the size parameter with a subsystem equal to the whole network the
    classical piece diverges (the state is pure but its eigenvalue formula
    still moves with N), so that configuration raises DivergenceError.
    """
    sel.validate(params)
    t = _check_time(t)
    if not isinstance(theta, GlobalParameter):
        raise ParameterError(f"theta must be a GlobalParameter, got {theta!r}")
    n, k, j = params.n_qubits, sel.k_qubits, params.coupling
    contains = sel.dyn_class is DynClass.CONTAINS_EXCITED
    alpha = n * j * t
    sh, ch = math.sin(0.5 * alpha), math.cos(0.5 * alpha)
    if theta is GlobalParameter.COUPLING_J:
        if contains:
            weight = 1.0 - 4.0 * (n - k) / n**2 * sh * sh  # p1(t; K)
            classical = 4.0 * t * t * (n - k) * ch * ch / weight
            quantum = 4.0 * t * t * (k - 1) / weight
        else:
            weight = 1.0 - 4.0 * k / n**2 * sh * sh  # p0(t; K)
            classical = 4.0 * t * t * k * ch * ch / weight
            quantum = 0.0
    else:
        if contains:
            if k == n:
                raise DivergenceError(
                    "size-parameter information diverges when the subsystem is the whole network"
                )
            big = n * n - 4.0 * (n - k) * sh * sh
            classical = (
                4.0
                * ((n - 2 * k) * sh - (n - k) * alpha * ch) ** 2
                / (n * n * (n - k) * big)
            )
            quantum = (
                4.0
                * (k - 1)
                * (alpha * alpha - 2.0 * alpha * math.sin(alpha) + 4.0 * sh * sh)
                / (n * n * big)
            )
        else:
            big = n * n - 4.0 * k * sh * sh
            classical = 4.0 * k * (j * t * ch - 2.0 * sh / n) ** 2 / big
            quantum = 0.0
    return FisherBreakdown(float(classical), float(quantum), float(classical + quantum), theta)


def _reduced_density(n_real: float, j: float, k: int, contains: bool, t: float) -> np.ndarray:
    # Closed-form reduced density with the network size as a real number,
    # so the size parameter can be finite-differenced.
    z = cmath.exp(1j * n_real * j * t)
    us = (1.0 + (n_real - 1.0) * z) / n_real
    ud = (1.0 - z) / n_real
    rho = np.zeros((k + 1, k + 1), dtype=complex)
    if contains:
        p = abs(us) ** 2 + (k - 1) * abs(ud) ** 2
        psi = np.full(k, ud, dtype=complex)
        psi[0] = us
        rho[0, 0] = 1.0 - p
        rho[1:, 1:] = np.outer(psi, psi.conj())  # p * |psi_hat><psi_hat| with psi unnormalized
    else:
        p0 = 1.0 - k * abs(ud) ** 2
        rho[0, 0] = p0
        rho[1:, 1:] = (1.0 - p0) / k
    return rho


def qfi_numeric_oracle(
    params: NetworkParams,
    sel: SubsystemSelector,
    theta: GlobalParameter,
    t,
    step: float = 1e-5,
) -> float:
    """Finite-difference SLD estimate of the Fisher information.

    Central-differences the reduced density in the parameter (relative step
    ``step``; the network size is treated as a continuous real), solves the
    SLD equation in the eigenbasis of the unperturbed state with the
    eigenvalue-pair cutoff, and returns Tr[L^2 rho].
    """
    sel.validate(params)
    t = _check_time(t)
    if not (isinstance(step, (int, float)) and 0.0 < step < 1e-1):
        raise ParameterError(f"step must be a small positive real, got {step!r}")
    n, k, j = params.n_qubits, sel.k_qubits, params.coupling
    contains = sel.dyn_class is DynClass.CONTAINS_EXCITED
    if theta is GlobalParameter.COUPLING_J:
        h = step * j
        rho0 = _reduced_density(float(n), j, k, contains, t)
        plus = _reduced_density(float(n), j + h, k, contains, t)
        minus = _reduced_density(float(n), j - h, k, contains, t)
    else:
        h = step * n
        rho0 = _reduced_density(float(n), j, k, contains, t)
        plus = _reduced_density(n + h, j, k, contains, t)
        minus = _reduced_density(n - h, j, k, contains, t)
    drho = (plus - minus) / (2.0 * h)
    evals, evecs = np.linalg.eigh(rho0)
    m = evecs.conj().T @ drho @ evecs
    total = 0.0
    used = 0
    for i in range(len(evals)):
        for l in range(len(evals)):
            pair = evals[i] + evals[l]
            if pair > SLD_PAIR_CUTOFF:
                total += 2.0 * abs(m[i, l]) ** 2 / pair
                used += 1
    if used == 0:
        raise OracleFailureError(
            "every eigenvalue pair fell below the SLD cutoff; state too degenerate"
        )
    return float(total)


def _p_dp_single_qubit(
    params: NetworkParams, dyn_class: DynClass, theta: GlobalParameter, t: float
) -> tuple[float, float]:
    # Mixing probability p^i(t; K=1) and its theta-derivative, closed form.
    n, j = params.n_qubits, params.coupling
    alpha = n * j * t
    sh, ch = math.sin(0.5 * alpha), math.cos(0.5 * alpha)
    weight = (n - 1) if dyn_class is DynClass.CONTAINS_EXCITED else 1
    p = 1.0 - 4.0 * weight / n**2 * sh * sh
    if theta is GlobalParameter.COUPLING_J:
        # d/dJ sin^2(NJt/2) = N t sin(NJt/2) cos(NJt/2)
        dp = -4.0 * weight / n**2 * sh * ch * n * t
    elif dyn_class is DynClass.CONTAINS_EXCITED:
        dp = 4.0 * sh / n**3 * ((n - 2.0) * sh - (n - 1.0) * alpha * ch)
    else:
        dp = -4.0 * sh / n**2 * (j * t * ch - 2.0 * sh / n)
    return p, dp


def process_state_split(
    params: NetworkParams,
    dyn_class: DynClass,
    t1,
    t2,
    theta: GlobalParameter = GlobalParameter.COUPLING_J,
    rescaled: bool = False,
) -> ProcessStateSplit:
    """Split single-qubit sensitivity over [t1, t2] into its three pieces.

    Uses the multiplicative form p(t2) = (1 - flow) p(t1): differentiating
    gives a process term from the flow weight's parameter dependence, a
    state term from the incoming sensitivity, and their signed cross term.
    Rescaled, the three sum to (d_theta p(t2))^2 independently of t1;
    unrescaled they are divided by p(t2)(1 - p(t2)), which has poles at the
    period points (use the rescaled form there).
    """
    SubsystemSelector(1, dyn_class).validate(params)
    t1 = _check_time(t1, "t1")
    t2 = _check_time(t2, "t2")
    p1, dp1 = _p_dp_single_qubit(params, dyn_class, theta, t1)
    p2, dp2 = _p_dp_single_qubit(params, dyn_class, theta, t2)
    if p1 <= 1e-12:
        # N=2 anchored at an odd half-period: the multiplicative form breaks.
        raise SingularIntervalError(
            f"mixing probability vanishes at anchor t1={t1!r}", t1=t1
        )
    survival = p2 / p1  # 1 - flow weight
    dflow = (p2 * dp1 - dp2 * p1) / (p1 * p1)  # theta-derivative of the flow weight
    process = (dflow * p1) ** 2
    cross = -2.0 * dflow * p1 * survival * dp1
    state = (survival * dp1) ** 2
    total = process + cross + state
    if not rescaled:
        denom = p2 * (1.0 - p2)
        if denom < 1e-14:
            raise PoleError(
                "p(t2)(1-p(t2)) vanishes at this t2; request the rescaled split instead"
            )
        process, cross, state, total = (
            process / denom,
            cross / denom,
            state / denom,
            total / denom,
        )
    return ProcessStateSplit(
        process=float(process),
        state=float(state),
        cross=float(cross),
        total=float(total),
        t1=t1,
        t2=t2,
    )
