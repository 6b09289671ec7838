"""Command-line front end emitting plot-ready CSV datasets.

All times on the command line are in units of the recurrence period
2*pi/(N*J). Every dataset subcommand writes CSV with a header row, a
leading ``t_over_period`` column, and 17 significant digits per value so
doubles round-trip losslessly; output is byte-identical across runs (the
verification suites use a fixed seed). Exit codes: 0 success, 1 usage
error, 2 numerical-verification failure, 3 singular-point request.
"""

from __future__ import annotations

import sys
from typing import Iterable, Sequence

import click
import numpy as np

from . import bloch, fisher, inference, propagator, states, verification
from .amplitudes import NetworkParams, amplitudes
from .errors import (
    IndeterminateFlowError,
    InconsistentObservationError,
    OpenQNetError,
    SingularIntervalError,
)
from .fisher import GlobalParameter
from .states import DynClass, SubsystemSelector


class _VerificationFailed(OpenQNetError):
    """Raised by the verify subcommand when any residual exceeds tolerance."""


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def _write_csv(out_path: str, header: Sequence[str], rows: Iterable[Sequence[float]]) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    text = "\n".join(lines) + "\n"
    if out_path == "-":
        click.echo(text, nl=False)
    else:
        try:
            with open(out_path, "w", encoding="ascii") as handle:
                handle.write(text)
        except OSError as exc:
            raise click.UsageError(f"cannot write {out_path!r}: {exc}") from exc


def _parse_k_values(text: str | None, n: int, dyn_classes: Sequence[DynClass]) -> list[int]:
    k_max = n if DynClass.CONTAINS_EXCITED in dyn_classes else n - 1
    if text is None:
        return list(range(1, min(n - 1, k_max) + 1)) or [1]
    try:
        if ".." in text:
            lo_text, hi_text = text.split("..", 1)
            lo, hi = int(lo_text), int(hi_text)
        else:
            lo = hi = int(text)
    except ValueError:
        raise click.UsageError(f"--k must be an integer or a..b range, got {text!r}") from None
    if lo < 1 or hi < lo:
        raise click.UsageError(f"--k range must satisfy 1 <= a <= b, got {text!r}")
    if hi > k_max:
        raise click.UsageError(f"--k={text} exceeds the largest valid K ({k_max}) for this request")
    return list(range(lo, hi + 1))


def _dyn_class(value: str) -> DynClass:
    return DynClass(int(value))


_n_option = click.option("--n", "n_qubits", type=int, required=True, help="Network size N >= 2.")
_j_option = click.option("--j", "coupling", type=float, default=1.0, show_default=True, help="Exchange coupling J.")
_steps_option = click.option("--steps", type=int, default=400, show_default=True, help="Grid points over the time range.")
_out_option = click.option("--out", "out_path", default="-", show_default=True, help="Output CSV path, or - for stdout.")
_class_option = click.option("--class", "dyn_class", type=click.Choice(["0", "1"]), default="1", show_default=True, help="Dynamical class: 1 contains the excited qubit, 0 excludes it.")


def _network(n_qubits: int, coupling: float) -> NetworkParams:
    return NetworkParams(n_qubits, coupling)


def _grid(steps: int, start: float = 0.0, stop: float = 1.0) -> np.ndarray:
    if steps < 2:
        raise click.UsageError(f"--steps must be >= 2, got {steps}")
    return np.linspace(start, stop, steps)


@click.group(name="openqnet")
def cli() -> None:
    """Closed-form subsystem dynamics of a single-excitation qubit network."""


@cli.command("amplitudes")
@_n_option
@_j_option
@_steps_option
@_out_option
def amplitudes_cmd(n_qubits: int, coupling: float, steps: int, out_path: str) -> None:
    """Global transition amplitudes u_s(t), u_d(t) over one period."""
    params = _network(n_qubits, coupling)
    rows = []
    for tau in _grid(steps):
        amps = amplitudes(params, tau * params.period)
        rows.append(
            (
                tau,
                amps.same_site.real,
                amps.same_site.imag,
                amps.cross_site.real,
                amps.cross_site.imag,
                amps.cross_abs2,
            )
        )
    _write_csv(out_path, ["t_over_period", "u_s_re", "u_s_im", "u_d_re", "u_d_im", "u_d_abs2"], rows)


@cli.command("flow")
@_n_option
@_j_option
@click.option("--dt", type=float, required=True, help="Window length, in periods.")
@click.option("--k", "k_text", default=None, help="Subsystem size, int or a..b range (default 1..N-1).")
@_steps_option
@_out_option
def flow_cmd(n_qubits: int, coupling: float, dt: float, k_text: str | None, steps: int, out_path: str) -> None:
    """Excitation-flow weight of the windowed propagator, both classes."""
    params = _network(n_qubits, coupling)
    if dt <= 0:
        raise click.UsageError(f"--dt must be positive, got {dt}")
    ks = _parse_k_values(k_text, n_qubits, (DynClass.CONTAINS_EXCITED,))
    header = ["t_over_period"]
    header += [f"phi_tau_c1_k{k}" for k in ks]
    header += [f"phi_tau_c0_k{k}" for k in ks if k <= n_qubits - 1]
    rows = []
    for tau in _grid(steps):
        t1, t2 = tau * params.period, (tau + dt) * params.period
        row = [tau]
        for k in ks:
            row.append(
                propagator.flow_amplitude(
                    params, SubsystemSelector(k, DynClass.CONTAINS_EXCITED), t1, t2
                )
            )
        for k in ks:
            if k <= n_qubits - 1:
                row.append(
                    propagator.flow_amplitude(
                        params, SubsystemSelector(k, DynClass.EXCLUDES_EXCITED), t1, t2
                    )
                )
        rows.append(row)
    _write_csv(out_path, header, rows)


_TRAJECTORY_STARTS = (-1.0, -2.0 / 3.0, -1.0 / 3.0, 0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0)


@cli.command("bloch-traj")
@_n_option
@_j_option
@_class_option
@_steps_option
@_out_option
def bloch_traj_cmd(n_qubits: int, coupling: float, dyn_class: str, steps: int, out_path: str) -> None:
    """z-trajectories of a fan of initial axial states under the one-time map."""
    params = _network(n_qubits, coupling)
    cls = _dyn_class(dyn_class)
    header = ["t_over_period"] + [f"bz0_{z0:+.4f}" for z0 in _TRAJECTORY_STARTS] + ["orbit_bz"]
    rows = []
    for tau in _grid(steps):
        t = tau * params.period
        bmap = bloch.affine_map(params, cls, 0.0, t)
        row = [tau]
        for z0 in _TRAJECTORY_STARTS:
            row.append(bmap.z_shift + bmap.z_scale * z0)
        row.append(bloch.physical_bloch_z(params, cls, t))
        rows.append(row)
    _write_csv(out_path, header, rows)


@cli.command("bloch-domain")
@_n_option
@_j_option
@_class_option
@click.option("--dt", type=float, required=True, help="Window length, in periods.")
@_steps_option
@_out_option
def bloch_domain_cmd(n_qubits: int, coupling: float, dyn_class: str, dt: float, steps: int, out_path: str) -> None:
    """Axial positivity band of the windowed single-qubit propagator."""
    params = _network(n_qubits, coupling)
    cls = _dyn_class(dyn_class)
    if dt <= 0:
        raise click.UsageError(f"--dt must be positive, got {dt}")
    rows = []
    for tau in _grid(steps):
        t1, t2 = tau * params.period, (tau + dt) * params.period
        band = bloch.axial_positivity_band(bloch.affine_map(params, cls, t1, t2))
        lo, hi = band if band is not None else (float("nan"), float("nan"))
        rows.append((tau, lo, hi, bloch.physical_bloch_z(params, cls, t1)))
    _write_csv(out_path, ["t_over_period", "band_lo", "band_hi", "orbit_bz"], rows)


@cli.command("entropy")
@_n_option
@_j_option
@_class_option
@click.option("--k", "k_text", default=None, help="Subsystem size, int or a..b range.")
@_steps_option
@_out_option
def entropy_cmd(n_qubits: int, coupling: float, dyn_class: str, k_text: str | None, steps: int, out_path: str) -> None:
    """Entanglement entropy of the chosen subsystems over one period."""
    params = _network(n_qubits, coupling)
    cls = _dyn_class(dyn_class)
    ks = _parse_k_values(k_text, n_qubits, (cls,))
    header = ["t_over_period"] + [f"entropy_k{k}" for k in ks]
    rows = []
    for tau in _grid(steps):
        t = tau * params.period
        row = [tau]
        for k in ks:
            row.append(states.entanglement_entropy(params, SubsystemSelector(k, cls), t))
        rows.append(row)
    _write_csv(out_path, header, rows)


@cli.command("fisher")
@_n_option
@_j_option
@_class_option
@click.option("--k", "k_text", default=None, help="Subsystem size, int or a..b range.")
@_steps_option
@_out_option
def fisher_cmd(n_qubits: int, coupling: float, dyn_class: str, k_text: str | None, steps: int, out_path: str) -> None:
    """Fisher information pieces for both global parameters.

    Size-parameter columns are omitted for K = N in class 1, where that
    quantity diverges.
    """
    params = _network(n_qubits, coupling)
    cls = _dyn_class(dyn_class)
    ks = _parse_k_values(k_text, n_qubits, (cls,))
    header = ["t_over_period"]
    for k in ks:
        header += [f"fj_classical_k{k}", f"fj_quantum_k{k}", f"fj_total_k{k}"]
        if not (cls is DynClass.CONTAINS_EXCITED and k == n_qubits):
            header += [f"fn_classical_k{k}", f"fn_quantum_k{k}", f"fn_total_k{k}"]
    rows = []
    for tau in _grid(steps):
        t = tau * params.period
        row = [tau]
        for k in ks:
            sel = SubsystemSelector(k, cls)
            fj = fisher.qfi_closed_form(params, sel, GlobalParameter.COUPLING_J, t)
            row += [fj.classical, fj.quantum, fj.total]
            if not (cls is DynClass.CONTAINS_EXCITED and k == n_qubits):
                fn = fisher.qfi_closed_form(params, sel, GlobalParameter.SIZE_N, t)
                row += [fn.classical, fn.quantum, fn.total]
        rows.append(row)
    _write_csv(out_path, header, rows)


@cli.command("fisher-decomp")
@_n_option
@_j_option
@_class_option
@click.option("--t1", type=float, required=True, help="Window start, in periods.")
@click.option("--t2", type=float, default=None, help="Sweep end, in periods (default t1 + 2).")
@_steps_option
@_out_option
def fisher_decomp_cmd(n_qubits: int, coupling: float, dyn_class: str, t1: float, t2: float | None, steps: int, out_path: str) -> None:
    """Rescaled process/state/cross split of single-qubit sensitivity.

    t2 sweeps forward from t1 (two periods by default); the first column is
    absolute t2 in period units.
    """
    params = _network(n_qubits, coupling)
    cls = _dyn_class(dyn_class)
    end = t1 + 2.0 if t2 is None else t2
    if end <= t1:
        raise click.UsageError(f"--t2 must exceed --t1, got t1={t1} t2={end}")
    rows = []
    for tau in _grid(steps, t1, end):
        split = fisher.process_state_split(
            params, cls, t1 * params.period, tau * params.period, rescaled=True
        )
        rows.append((tau, split.process, split.state, split.cross, split.total))
    _write_csv(out_path, ["t_over_period", "process", "state", "cross", "total"], rows)


@cli.command("infer")
@_n_option
@_j_option
@click.option("--dt", type=float, default=0.05, show_default=True, help="Window length, in periods.")
@_steps_option
@_out_option
def infer_cmd(n_qubits: int, coupling: float, dt: float, steps: int, out_path: str) -> None:
    """Round-trip inference of N and J from simulated single-qubit flows.

    Rows sweep the window anchor over one period; windows with no usable
    flow yield NaN size estimates. The coupling estimate comes from a
    bisected flow sign change and is constant across rows.
    """
    params = _network(n_qubits, coupling)
    if dt <= 0:
        raise click.UsageError(f"--dt must be positive, got {dt}")
    sel1 = SubsystemSelector(1, DynClass.CONTAINS_EXCITED)
    sel0 = SubsystemSelector(1, DynClass.EXCLUDES_EXCITED)
    window = dt * params.period

    def observed_flow(t: float) -> float:
        return propagator.flow_amplitude(params, sel1, t, t + window)

    period_est = inference.estimate_period(observed_flow, window, 2.5 * params.period)
    j_est = inference.infer_coupling(period_est, n_qubits)
    rows = []
    for tau in _grid(steps):
        t1, t2 = tau * params.period, (tau + dt) * params.period
        flow1 = propagator.flow_amplitude(params, sel1, t1, t2)
        flow0 = propagator.flow_amplitude(params, sel0, t1, t2)
        ground = states.excitation_probability(params, sel0, t1)
        try:
            estimate = inference.infer_network_size(
                inference.FlowObservation(flow1, flow0, ground)
            )
            n_est, n_nearest, n_resid = estimate
        except (IndeterminateFlowError, InconsistentObservationError):
            n_est = n_nearest = n_resid = float("nan")
        rows.append((tau, flow1, flow0, ground, n_est, n_nearest, n_resid, j_est))
    header = [
        "t_over_period",
        "phi_tau_c1",
        "phi_tau_c0",
        "ground_prob_t1",
        "n_estimate",
        "n_nearest",
        "n_residual",
        "j_estimate",
    ]
    _write_csv(out_path, header, rows)


@cli.command("verify")
@_n_option
@_j_option
@_out_option
def verify_cmd(n_qubits: int, coupling: float, out_path: str) -> None:
    """Run every cross-route verification suite; exit 2 on any failure."""
    params = _network(n_qubits, coupling)
    results = verification.run_all_checks(params)
    rows = []
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        click.echo(f"{status}  {r.name:<{width}}  max={r.value:.3e}  tol={r.tolerance:.1e}", err=True)
        rows.append((r.name, r.value, r.tolerance, status))
    lines = ["check,value,tolerance,status"]
    for name, value, tolerance, status in rows:
        lines.append(f"{name},{_fmt(value)},{_fmt(tolerance)},{status}")
    text = "\n".join(lines) + "\n"
    if out_path == "-":
        click.echo(text, nl=False)
    else:
        try:
            with open(out_path, "w", encoding="ascii") as handle:
                handle.write(text)
        except OSError as exc:
            raise click.UsageError(f"cannot write {out_path!r}: {exc}") from exc
    failed = [r.name for r in results if not r.passed]
    if failed:
        raise _VerificationFailed(f"verification failed: {', '.join(failed)}")


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point returning the documented exit codes."""
    try:
        cli.main(args=argv, prog_name="openqnet", standalone_mode=False)
    except click.exceptions.Exit as exc:  # --help and friends
        return int(exc.exit_code)
    except click.exceptions.Abort:
        return 1
    except click.exceptions.ClickException as exc:
        exc.show()
        return 1
    except SingularIntervalError as exc:
        click.echo(f"singular point: {exc}", err=True)
        return 3
    except _VerificationFailed as exc:
        click.echo(str(exc), err=True)
        return 2
    except OpenQNetError as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
