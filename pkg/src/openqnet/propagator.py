"""Closed-form two-time propagators on the q <= 1 subspace and their action.

A propagator carries the reduced state at t1 to the reduced state at t2 as

    rho(t2) = B rho(t1) B^dag + sum_i F_i rho(t1) F_i^T,

where B is block diagonal in local excitation number and the F_i move
weight between the ground and single-excitation sectors. The flow terms use
the plain matrix transpose, not the conjugate transpose: their scalar
weight (the square of the would-be operator coefficient) can be negative,
which is how one representation covers both completely positive and
non-completely-positive intervals.

For a subsystem containing the excited qubit there is a single flow
operator, sqrt(flow) in the ground row across all K single-excitation
columns; its action is rho -> flow * (sum of the whole q=1 block of rho)
|0..0><0..0|. For a subsystem excluding the excited qubit the flow operator
is the mirrored column, acting as rho -> flow * rho_gg * (all-ones q=1
block), plus one extra ground-to-ground operator with squared weight
``ground_extra``. :func:`apply` keeps these squared weights as explicit
real scalars instead of forming operators with imaginary entries, so the
action is exact and sign-transparent in both flow directions.

Construction fails only at anchor times t1 where the one-time map cannot be
inverted: K = N/2 with t1 at an odd half-period.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .amplitudes import NetworkParams, _check_time, amplitudes
from .errors import ParameterError, SingularIntervalError
from .linalg import map_matrix, unvec, vec
from .states import DynClass, SubsystemSelector

#: Absolute guard on construction denominators.
DENOMINATOR_FLOOR = 1e-12

#: Half-period window (in periods) flagged as singular for K = N/2.
SINGULAR_WINDOW = 1e-9


class FlowKind(enum.Enum):
    """Direction of the excitation-flow operator's matrix pattern."""

    OUT_OF_SUBSYSTEM = "out_of_subsystem"  # ground row over q=1 columns
    INTO_SUBSYSTEM = "into_subsystem"  # ground column over q=1 rows


@dataclass(frozen=True)
class PropagatorOps:
    """Operator-sum data of one propagator, restricted to q <= 1.

    ``block_diag`` is the (K+1)x(K+1) excitation-conserving operator B;
    ``flow_weight`` is the real squared weight of the flow operator (may be
    negative); ``ground_extra`` is the squared weight of the extra
    ground-to-ground operator (excluding class only, else None).
    """

    block_diag: np.ndarray
    flow_weight: float
    flow_kind: FlowKind
    ground_extra: float | None
    k_qubits: int
    dyn_class: DynClass
    t1: float
    t2: float


def is_singular(params: NetworkParams, k_qubits: int, t1) -> bool:
    """True iff no propagator can be anchored at ``t1`` for this K.

    Happens only when the subsystem is exactly half the network and t1 sits
    within 1e-9 periods of an odd half-period, where the one-time map loses
    rank (the excitation is maximally delocalized across two equal halves).
    """
    t1 = _check_time(t1, "t1")
    if 2 * k_qubits != params.n_qubits:
        return False
    tau = (t1 / params.period) % 1.0
    return abs(tau - 0.5) <= SINGULAR_WINDOW


def _singular_error(t1: float, detail: str) -> SingularIntervalError:
    return SingularIntervalError(
        f"propagator is singular at anchor t1={t1!r}: {detail}", t1=t1
    )


def build_propagator(
    params: NetworkParams, sel: SubsystemSelector, t1, t2
) -> PropagatorOps:
    """Construct the closed-form propagator over [t1, t2] for the subsystem."""
    sel.validate(params)
    t1 = _check_time(t1, "t1")
    t2 = _check_time(t2, "t2")
    n, k = params.n_qubits, sel.k_qubits
    if is_singular(params, k, t1):
        raise _singular_error(t1, f"K=N/2={k} with t1 at an odd half-period")
    a1, a2 = amplitudes(params, t1), amplitudes(params, t2)
    us1, ud1 = a1.same_site, a1.cross_site
    us2, ud2 = a2.same_site, a2.cross_site
    x1, x2 = a1.cross_abs2, a2.cross_abs2

    block = np.zeros((k + 1, k + 1), dtype=complex)
    if sel.dyn_class is DynClass.CONTAINS_EXCITED:
        denom = (ud1 - us1) * ((k - 1) * ud1 + us1)
        if abs(denom) < DENOMINATOR_FLOOR:
            raise _singular_error(t1, "internal-block denominator vanishes")
        phi_s = (ud1 * ud2 - us1 * us2 + (k - 2) * ud1 * (ud2 - us2)) / denom
        phi_d = (ud1 * us2 - us1 * ud2) / denom
        if k == n:
            flow = 0.0  # full network: unitary evolution, no flow channel
        else:
            flow_denom = 1.0 / (n - k) - k * x1
            if abs(flow_denom) < DENOMINATOR_FLOOR:
                raise _singular_error(t1, "flow denominator vanishes")
            flow = (x2 - x1) / flow_denom
        block[0, 0] = 1.0  # ground-sector phase is unity by gauge
        q1 = np.full((k, k), phi_d, dtype=complex)
        np.fill_diagonal(q1, phi_s)
        block[1:, 1:] = q1
        return PropagatorOps(
            block, float(flow), FlowKind.OUT_OF_SUBSYSTEM, None, k, sel.dyn_class, t1, t2
        )

    p1, p2 = 1.0 - k * x1, 1.0 - k * x2  # ground-state probabilities
    if abs(p1) < DENOMINATOR_FLOOR or abs(us1) < DENOMINATOR_FLOOR:
        raise _singular_error(t1, "ground-sector denominator vanishes")
    phi_s0 = us2 / us1
    phi00 = p2 / p1
    flow = (x2 - x1) / p1
    block[0, 0] = phi_s0
    # Local single-excitation phases are unity by gauge; there is no
    # internal mixing in this class (all K qubits are equivalent).
    block[1:, 1:] = np.eye(k)
    return PropagatorOps(
        block,
        float(flow),
        FlowKind.INTO_SUBSYSTEM,
        float(phi00 - abs(phi_s0) ** 2),
        k,
        sel.dyn_class,
        t1,
        t2,
    )


def flow_amplitude(params: NetworkParams, sel: SubsystemSelector, t1, t2) -> float:
    """The real flow weight over [t1, t2]; its sign is the flow direction.

    Positive means excitation dispersing away from the excited qubit,
    negative means backflow toward it, for either class.
    """
    return build_propagator(params, sel, t1, t2).flow_weight


def apply(ops: PropagatorOps, density: np.ndarray) -> np.ndarray:
    """Act with the propagator on a (K+1)x(K+1) operator.

    The input need not be positive; probing the map with arbitrary
    Hermitian (or even non-Hermitian) operators is legitimate. Hermitian
    unit-trace input yields Hermitian unit-trace output.
    """
    d = ops.k_qubits + 1
    rho = np.asarray(density, dtype=complex)
    if rho.shape != (d, d):
        raise ParameterError(f"operator must be {d}x{d}, got shape {rho.shape}")
    out = ops.block_diag @ rho @ ops.block_diag.conj().T
    if ops.flow_kind is FlowKind.OUT_OF_SUBSYSTEM:
        out[0, 0] += ops.flow_weight * rho[1:, 1:].sum()
    else:
        out[1:, 1:] += ops.flow_weight * rho[0, 0]
        out[0, 0] += ops.ground_extra * rho[0, 0]
    return out


def propagator_matrix(ops: PropagatorOps) -> np.ndarray:
    """Matrix of the propagator on column-stacked (K+1)x(K+1) operators."""
    return map_matrix(lambda e: apply(ops, e), ops.k_qubits + 1)


def completeness_residual(ops: PropagatorOps) -> float:
    """Max-entry residual of B^dag B + sum_i F_i^T F_i - identity.

    Zero residual is exactly trace preservation of the operator sum.
    """
    d = ops.k_qubits + 1
    acc = ops.block_diag.conj().T @ ops.block_diag
    if ops.flow_kind is FlowKind.OUT_OF_SUBSYSTEM:
        acc[1:, 1:] += ops.flow_weight  # F^T F is flow * (all-ones q=1 block)
    else:
        acc[0, 0] += ops.k_qubits * ops.flow_weight + ops.ground_extra
    return float(np.abs(acc - np.eye(d)).max())


def compose_residual(
    params: NetworkParams, sel: SubsystemSelector, t1, t2, test_density: np.ndarray
) -> float:
    """Deviation between the direct propagator and its two-map composition.

    Compares apply(Phi(t1,t2), rho) against apply(Phi(0,t2), Phi(0,t1)^-1[rho])
    where the inverse is a pseudo-inverse (singular-value cutoff 1e-10) of
    the one-time map's matrix on the operator space. Returns the max-entry
    absolute deviation.
    """
    t1 = _check_time(t1, "t1")
    t2 = _check_time(t2, "t2")
    if is_singular(params, sel.k_qubits, t1):
        raise _singular_error(t1, "one-time map not invertible")
    d = sel.k_qubits + 1
    rho = np.asarray(test_density, dtype=complex)
    if rho.shape != (d, d):
        raise ParameterError(f"test density must be {d}x{d}, got shape {rho.shape}")
    direct = apply(build_propagator(params, sel, t1, t2), rho)
    m1 = propagator_matrix(build_propagator(params, sel, 0.0, t1))
    m2 = propagator_matrix(build_propagator(params, sel, 0.0, t2))
    rewound = np.linalg.pinv(m1, rcond=1e-10) @ vec(rho)
    composed = unvec(m2 @ rewound, d)
    return float(np.abs(direct - composed).max())
