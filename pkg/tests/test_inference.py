import math

import numpy as np
import pytest

from openqnet import (
    DynClass,
    FlowObservation,
    InconsistentObservationError,
    IndeterminateFlowError,
    NetworkParams,
    ParameterError,
    SubsystemSelector,
    conservation_residual,
    estimate_period,
    excitation_probability,
    flow_amplitude,
    infer_coupling,
    infer_network_size,
    is_singular,
    two_qubit_consistency,
)

C1 = DynClass.CONTAINS_EXCITED
C0 = DynClass.EXCLUDES_EXCITED


def simulate_observation(params, t1, t2):
    sel1 = SubsystemSelector(1, C1)
    sel0 = SubsystemSelector(1, C0)
    return FlowObservation(
        flow_class1=flow_amplitude(params, sel1, t1, t2),
        flow_class0=flow_amplitude(params, sel0, t1, t2),
        ground_prob_t1=excitation_probability(params, sel0, t1),
    )


def test_two_qubit_consistency_examples():
    assert two_qubit_consistency(FlowObservation(0.3, 0.3, 1.0), 1e-12)
    assert not two_qubit_consistency(FlowObservation(0.64, 0.16, 1.0), 1e-9)


def test_two_qubit_consistency_for_actual_pair():
    params = NetworkParams(2, 1.0)
    rng = np.random.default_rng(61)
    for _ in range(25):
        while True:
            t1, t2 = rng.uniform(0, params.period, size=2)
            if not is_singular(params, 1, t1):
                break
        obs = simulate_observation(params, t1, t2)
        assert two_qubit_consistency(obs, 1e-10)


def test_consistency_fails_somewhere_for_larger_networks():
    params = NetworkParams(3, 1.0)
    obs = simulate_observation(params, 0.0, 0.4 * params.period)
    assert not two_qubit_consistency(obs, 1e-6)


def test_infer_size_example():
    estimate = infer_network_size(FlowObservation(0.64, 0.16, 1.0))
    assert estimate.estimate == pytest.approx(5.0, abs=1e-12)
    assert estimate.nearest == 5
    assert abs(estimate.residual) <= 1e-12


def test_infer_size_from_simulated_flows():
    params = NetworkParams(8, 1.0)
    obs = simulate_observation(params, 0.0, math.pi / 8)
    estimate = infer_network_size(obs)
    assert abs(estimate.estimate - 8.0) <= 1e-9


def test_equal_flows_mean_closed_pair():
    estimate = infer_network_size(FlowObservation(0.25, 0.25, 1.0))
    assert estimate.estimate == pytest.approx(2.0, abs=1e-12)
    assert estimate.nearest == 2


def test_infer_size_errors():
    with pytest.raises(IndeterminateFlowError):
        infer_network_size(FlowObservation(0.0, 0.0, 1.0))
    # Flow pattern no closed network can produce: bracket > 1.
    with pytest.raises(InconsistentObservationError):
        infer_network_size(FlowObservation(-0.3, 0.4, 1.0))
    with pytest.raises(ParameterError):
        FlowObservation(0.3, 0.2, 0.0)
    with pytest.raises(ParameterError):
        FlowObservation(0.3, 0.2, 1.5)


def test_roundtrip_over_sizes_and_couplings():
    rng = np.random.default_rng(67)
    for n in range(3, 13):
        for j in (0.5, 1.0, 2.0):
            params = NetworkParams(n, j)
            done = 0
            while done < 8:
                t1, t2 = rng.uniform(0, params.period, size=2)
                if is_singular(params, 1, t1):
                    continue
                obs = simulate_observation(params, t1, t2)
                if min(abs(obs.flow_class0), abs(obs.flow_class1)) < 1e-6:
                    continue
                estimate = infer_network_size(obs)
                assert abs(estimate.estimate - n) <= 1e-8
                assert estimate.nearest == n
                done += 1


def test_infer_coupling():
    assert infer_coupling(2 * math.pi / 5, 5.0) == pytest.approx(1.0, rel=1e-14)
    assert infer_coupling(math.pi / 5, 5.0) == pytest.approx(2.0, rel=1e-14)
    with pytest.raises(ParameterError):
        infer_coupling(0.0, 5.0)
    with pytest.raises(ParameterError):
        infer_coupling(1.0, 1.0)


def test_conservation_residual_examples():
    params = NetworkParams(5, 1.0)
    assert conservation_residual(params, 1, 0.0, math.pi / 5) <= 1e-12
    # Identity value at that interval: 0.16*(1/0.16 - 1/0.64) = 0.75 = 1 - 1/4.
    flow0 = flow_amplitude(params, SubsystemSelector(1, C0), 0.0, math.pi / 5)
    flow1 = flow_amplitude(params, SubsystemSelector(1, C1), 0.0, math.pi / 5)
    lhs = 0.16 * (1 / flow0 - 1 / flow1)
    assert lhs == pytest.approx(0.75, abs=1e-12)

    rng = np.random.default_rng(71)
    params = NetworkParams(6, 1.0)
    done = 0
    while done < 10:
        t1, t2 = rng.uniform(0, params.period, size=2)
        if is_singular(params, 2, t1):
            continue
        try:
            assert conservation_residual(params, 2, t1, t2) <= 1e-10
        except IndeterminateFlowError:
            continue
        done += 1


def test_conservation_residual_indeterminate():
    params = NetworkParams(5, 1.0)
    with pytest.raises(IndeterminateFlowError):
        conservation_residual(params, 1, 0.3, 0.3)
    # t2 mirroring t1 about the half-period also carries no net flow.
    with pytest.raises(IndeterminateFlowError):
        conservation_residual(params, 1, 0.2 * params.period, 0.8 * params.period)


def test_period_estimate_recovers_coupling():
    params = NetworkParams(6, 0.7)
    sel1 = SubsystemSelector(1, C1)
    dt = 0.05 * params.period

    def observed(t):
        return flow_amplitude(params, sel1, t, t + dt)

    period = estimate_period(observed, dt, 2.0 * params.period)
    assert abs(period - params.period) <= 1e-9
    assert abs(infer_coupling(period, 6.0) - 0.7) <= 1e-6


def test_period_estimate_errors():
    with pytest.raises(ParameterError):
        estimate_period(lambda t: 1.0, 0.0, 1.0)
    with pytest.raises(IndeterminateFlowError):
        estimate_period(lambda t: 1.0, 0.1, 1.0)  # never changes sign
