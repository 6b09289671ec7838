"""Reduced states of K-qubit subsystems and the quantities built from them.

Every reduced state in the orbit of the generating state has rank two: some
weight on the subsystem ground state plus the complementary weight on one
unit vector in the subsystem's single-excitation sector. Dense
materializations therefore live on the (K+1)-dimensional space spanned by
the ground state and the K single-excitation basis states; higher local
sectors are never occupied. Basis ordering is fixed throughout the package:
ground first, then excitation on qubit 1..K.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .amplitudes import NetworkParams, _check_time, amplitudes
from .errors import DegenerateStateError, ParameterError


class DynClass(enum.Enum):
    """Whether the subsystem contains the initially excited qubit."""

    EXCLUDES_EXCITED = 0
    CONTAINS_EXCITED = 1


@dataclass(frozen=True)
class SubsystemSelector:
    """Subsystem size K together with its dynamical class."""

    k_qubits: int
    dyn_class: DynClass

    def __post_init__(self):
        k = self.k_qubits
        if isinstance(k, bool) or not isinstance(k, (int, np.integer)):
            raise ParameterError(f"k_qubits must be an integer, got {k!r}")
        if k < 1:
            raise ParameterError(f"k_qubits must be >= 1, got {k}")
        object.__setattr__(self, "k_qubits", int(k))
        if not isinstance(self.dyn_class, DynClass):
            raise ParameterError(f"dyn_class must be a DynClass, got {self.dyn_class!r}")

    def validate(self, params: NetworkParams) -> None:
        """Raise unless the selector fits inside the given network."""
        n = params.n_qubits
        if self.dyn_class is DynClass.CONTAINS_EXCITED:
            if self.k_qubits > n:
                raise ParameterError(
                    f"K={self.k_qubits} exceeds N={n} for a subsystem containing the excited qubit"
                )
        else:
            if self.k_qubits > n - 1:
                raise ParameterError(
                    f"K={self.k_qubits} exceeds N-1={n - 1} for a subsystem excluding the excited qubit"
                )


@dataclass(frozen=True)
class ReducedState:
    """Rank-two reduced state: weight on one single-excitation unit vector.

    ``excited_weight`` is the probability of finding the excitation inside
    the subsystem; ``internal_vector`` is the normalized amplitude pattern
    over the K single-excitation basis states. The remaining
    ``1 - excited_weight`` sits on the subsystem ground state.
    """

    excited_weight: float
    internal_vector: np.ndarray
    k_qubits: int
    dyn_class: DynClass


def _sin2_half(params: NetworkParams, t: float) -> float:
    return math.sin(0.5 * params.n_qubits * params.coupling * t) ** 2


def excitation_probability(params: NetworkParams, sel: SubsystemSelector, t) -> float:
    """The probability that labels the reduced state's rank-two mixture.

    For a subsystem containing the excited qubit this is the excitation
    probability p1 = 1 - 4(N-K)/N^2 sin^2(NJt/2); for one excluding it this
    is the ground-state probability p0 = 1 - 4K/N^2 sin^2(NJt/2).
    """
    sel.validate(params)
    t = _check_time(t)
    n, k = params.n_qubits, sel.k_qubits
    s2 = _sin2_half(params, t)
    if sel.dyn_class is DynClass.CONTAINS_EXCITED:
        return 1.0 - 4.0 * (n - k) / n**2 * s2
    return 1.0 - 4.0 * k / n**2 * s2


def reduced_state(params: NetworkParams, sel: SubsystemSelector, t) -> ReducedState:
    """Closed-form reduced state of the chosen subsystem at time ``t``."""
    sel.validate(params)
    t = _check_time(t)
    k = sel.k_qubits
    if sel.dyn_class is DynClass.CONTAINS_EXCITED:
        amps = amplitudes(params, t)
        p1 = excitation_probability(params, sel, t)
        if p1 <= 1e-14:
            # Only reachable at N=2, K=1, odd half-periods; the internal
            # direction limits to the bare excited state of qubit 1.
            limit = np.zeros(k, dtype=complex)
            limit[0] = 1.0
            raise DegenerateStateError(
                f"excitation probability vanishes at t={t!r}; internal vector undefined",
                limit_direction=limit,
            )
        vec = np.full(k, amps.cross_site, dtype=complex)
        vec[0] = amps.same_site
        vec /= math.sqrt(p1)
        return ReducedState(p1, vec, k, sel.dyn_class)
    p0 = excitation_probability(params, sel, t)
    vec = np.full(k, 1.0 / math.sqrt(k), dtype=complex)
    return ReducedState(1.0 - p0, vec, k, sel.dyn_class)


def materialize_density(state: ReducedState) -> np.ndarray:
    """Dense (K+1)x(K+1) density matrix on the ground + single-excitation space."""
    k = state.k_qubits
    rho = np.zeros((k + 1, k + 1), dtype=complex)
    rho[0, 0] = 1.0 - state.excited_weight
    rho[1:, 1:] = state.excited_weight * np.outer(
        state.internal_vector, state.internal_vector.conj()
    )
    return rho


def _binary_entropy(x: float) -> float:
    # Natural log; 0 ln 0 := 0.
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log(x) - (1.0 - x) * math.log(1.0 - x)


def entanglement_entropy(params: NetworkParams, sel: SubsystemSelector, t) -> float:
    """Entanglement entropy (nats) between the subsystem and the rest.

    Because the global state is pure and the reduced state has rank two,
    this is the binary entropy of x = (N-K)|u_d|^2 for a subsystem
    containing the excited qubit and x = K|u_d|^2 for one excluding it.
    It also equals the quantum discord across the same cut.
    """
    sel.validate(params)
    t = _check_time(t)
    n, k = params.n_qubits, sel.k_qubits
    s2 = _sin2_half(params, t)
    if sel.dyn_class is DynClass.CONTAINS_EXCITED:
        x = 4.0 * (n - k) / n**2 * s2
    else:
        x = 4.0 * k / n**2 * s2
    return _binary_entropy(x)


def trace_distance_to_fixed(state: ReducedState) -> float:
    """Trace distance from the subsystem ground state.

    The ground state is the fixed point of every propagator of the class
    containing the excited qubit. For a rank-two state with weight w on its
    single-excitation vector, (1/2)||rho - |0..0><0..0||_1 = w exactly, so
    this returns ``excited_weight`` for either class. (For the excluding
    class this is the distance from the ground end of its orbit, not from
    its own fixed manifold, which lives in the local single-excitation
    sector.)
    """
    return float(state.excited_weight)
