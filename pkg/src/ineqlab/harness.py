"""Suite runner: enumerates checks over seeded ensembles, aggregates slack
statistics, and emits deterministic JSON/CSV reports.

A suite pairs one registered check with one ensemble recipe.  Each trial
derives a private stream from (master_seed, trial_index), draws the check's
inputs in a pinned order, and evaluates the chain.  Reports are therefore a
pure function of the config, except for the runtime fields.

One suite is special: ``remark36_counterexample`` evaluates a bound on a
fixed non-PSD operator where the bound genuinely fails.  That suite counts
as passing only when the violation is reproduced exactly (slack -1/2), and
its violations are excluded from the process exit code.
"""

from __future__ import annotations

import hashlib
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import operator_ineq as op_ineq
from . import vector_ineq as vec_ineq
from .chains import ChainResult, ToleranceConfig, make_chain
from .ensembles import EnsembleConfig, draw, trial_stream
from .errors import IneqLabError, InvalidInput
from .linalg import load_matrix, load_vector, operator_norm
from .prng import Stream
from .radius import numerical_radius, numerical_radius_sampling_oracle

SCHEMA_VERSION = 1
TIGHTEST_KEEP = 5
PSI_GRID = 3600
ORACLE_SUITE_SAMPLES = 512
COUNTEREXAMPLE_SLACK = -0.5
COUNTEREXAMPLE_TOL = 1e-12

_COUNTEREXAMPLE_A = [[0.0, 1.0], [0.0, 0.0]]
_COUNTEREXAMPLE_X = [0.0, 1.0]
_COUNTEREXAMPLE_Y = [1.0, 0.0]


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class SuiteSpec:
    """One registered suite: the ensemble family it needs, the per-trial
    evaluator, and whether a violation is the expected outcome."""

    name: str
    family: str
    evaluate: Callable[[Stream, int, ToleranceConfig], ChainResult]
    expect_violation: bool = False
    default_dim: int = 4
    default_trials: int = 500


def _vectors_eval(chain_fn, count: int):
    def run(stream: Stream, dim: int, tol: ToleranceConfig) -> ChainResult:
        vecs = [draw("unit_vector", stream, dim) for _ in range(count)]
        return chain_fn(*vecs, tolerance=tol)

    return run


def _psi_infimum_eval(stream: Stream, dim: int, tol: ToleranceConfig) -> ChainResult:
    x = draw("unit_vector", stream, dim)
    y = draw("unit_vector", stream, dim)
    return vec_ineq.psi_infimum_property(x, y, PSI_GRID, tolerance=tol)


def _projection_eval(stream: Stream, dim: int, tol: ToleranceConfig) -> ChainResult:
    proj = draw("projection", stream, dim)
    x = draw("unit_vector", stream, dim)
    y = draw("unit_vector", stream, dim)
    return vec_ineq.projection_buzano(proj, x, y, tolerance=tol)


def _operator_xy_eval(chain_fn, family: str, **kwargs):
    def run(stream: Stream, dim: int, tol: ToleranceConfig) -> ChainResult:
        a = draw(family, stream, dim)
        x = draw("unit_vector", stream, dim)
        y = draw("unit_vector", stream, dim)
        return chain_fn(a, x, y, tolerance=tol, **kwargs)

    return run


def _corollary37_eval(stream: Stream, dim: int, tol: ToleranceConfig) -> ChainResult:
    b = draw("psd", stream, dim)
    a = draw("ginibre", stream, dim)
    return op_ineq.corollary37_chain(a, b, tolerance=tol)


def _sandwich_eval(chain_fn, **kwargs):
    def run(stream: Stream, dim: int, tol: ToleranceConfig) -> ChainResult:
        a = draw("positive_contraction", stream, dim)
        s = draw("ginibre", stream, dim)
        t = draw("ginibre", stream, dim)
        return chain_fn(a, s, t, tolerance=tol, **kwargs)

    return run


def _power_eval(r: float):
    def run(stream: Stream, dim: int, tol: ToleranceConfig) -> ChainResult:
        a = draw("positive_contraction", stream, dim)
        s = draw("ginibre", stream, dim)
        t = draw("ginibre", stream, dim)
        return op_ineq.power_chain(a, s, t, r, tolerance=tol)

    return run


def _bourin_eval(r: float):
    def run(stream: Stream, dim: int, tol: ToleranceConfig) -> ChainResult:
        m = draw("psd", stream, dim)
        n = draw("psd", stream, dim)
        return op_ineq.bourin_property(m, n, r, tolerance=tol)

    return run


def _final_omega_eval(stream: Stream, dim: int, tol: ToleranceConfig) -> ChainResult:
    t = draw("ginibre", stream, dim)
    return op_ineq.final_omega_refinement_chain(t, tolerance=tol)


def _remark36_polar_eval(stream: Stream, dim: int, tol: ToleranceConfig) -> ChainResult:
    a = draw("ginibre", stream, dim)
    x = draw("unit_vector", stream, dim)
    y = draw("unit_vector", stream, dim)
    return op_ineq.remark36_polar_chain(a, x, y, tolerance=tol)


def _omega_oracle_chain(matrix, samples: int, seed: int, tol: ToleranceConfig) -> ChainResult:
    """Cross-check chain: sampled max quadratic form <= omega <= norm."""
    oracle = numerical_radius_sampling_oracle(matrix, samples, seed)
    omega = numerical_radius(matrix).omega
    return make_chain(
        "omega_oracle",
        [
            ("sampling_oracle_max", oracle),
            ("omega_sweep", omega),
            ("operator_norm", operator_norm(matrix)),
        ],
        tol,
        omega_grade=True,
    )


def _omega_oracle_eval(stream: Stream, dim: int, tol: ToleranceConfig) -> ChainResult:
    t = draw("ginibre", stream, dim)
    oracle_seed = int(stream.raw(1)[0])
    return _omega_oracle_chain(t, ORACLE_SUITE_SAMPLES, oracle_seed, tol)


def _counterexample_eval(stream: Stream, dim: int, tol: ToleranceConfig) -> ChainResult:
    return op_ineq.remark36_scaled_unchecked(
        _COUNTEREXAMPLE_A, _COUNTEREXAMPLE_X, _COUNTEREXAMPLE_Y, tolerance=tol
    )


def _build_registry() -> dict[str, SuiteSpec]:
    specs = [
        SuiteSpec("buzano", "unit_vector", _vectors_eval(vec_ineq.buzano_chain, 3), default_trials=1000),
        SuiteSpec("lemma21", "unit_vector", _vectors_eval(vec_ineq.lemma21_chain, 3), default_trials=1000),
        SuiteSpec("cs_refinement", "unit_vector", _vectors_eval(vec_ineq.cs_refinement_chain, 3), default_trials=1000),
        SuiteSpec("krein_triangle", "unit_vector", _vectors_eval(vec_ineq.krein_triangle, 3), default_trials=1000),
        SuiteSpec("lin_triangle_refined", "unit_vector", _vectors_eval(vec_ineq.lin_triangle_refined, 3), default_trials=1000),
        SuiteSpec("psi_infimum", "unit_vector", _psi_infimum_eval, default_trials=1000),
        SuiteSpec("projection_buzano", "projection", _projection_eval, default_trials=1000),
        SuiteSpec("lemma_2A", "psd", _operator_xy_eval(op_ineq.lemma_2A_chain, "psd")),
        SuiteSpec("theorem_gap", "positive_contraction", _operator_xy_eval(op_ineq.theorem_gap_chain, "positive_contraction")),
        SuiteSpec("corollary33", "positive_contraction", _operator_xy_eval(op_ineq.corollary33_chain, "positive_contraction")),
        SuiteSpec("corollary33_scaled", "psd", _operator_xy_eval(op_ineq.corollary33_chain, "psd", scaled=True)),
        SuiteSpec("corollary35", "positive_contraction", _operator_xy_eval(op_ineq.corollary35_chain, "positive_contraction")),
        SuiteSpec("remark36_scaled", "psd", _operator_xy_eval(op_ineq.remark36_scaled, "psd")),
        SuiteSpec("remark36_polar", "ginibre", _remark36_polar_eval),
        SuiteSpec("corollary37", "psd", _corollary37_eval, default_trials=200),
        SuiteSpec("corollary38_omega", "positive_contraction", _sandwich_eval(op_ineq.corollary38_omega_chain), default_trials=200),
        SuiteSpec("corollary38_norm", "positive_contraction", _sandwich_eval(op_ineq.corollary38_norm_chain)),
        SuiteSpec("power_r1", "positive_contraction", _power_eval(1.0), default_trials=200),
        SuiteSpec("power_r2", "positive_contraction", _power_eval(2.0), default_trials=200),
        SuiteSpec("power_r3", "positive_contraction", _power_eval(3.0), default_trials=200),
        SuiteSpec("bourin_r1", "psd", _bourin_eval(1.0)),
        SuiteSpec("bourin_r2", "psd", _bourin_eval(2.0)),
        SuiteSpec("final_omega_refinement", "ginibre", _final_omega_eval, default_trials=200),
        SuiteSpec("omega_oracle", "ginibre", _omega_oracle_eval, default_trials=200),
        SuiteSpec(
            "remark36_counterexample",
            "ginibre",
            _counterexample_eval,
            expect_violation=True,
            default_dim=2,
            default_trials=1,
        ),
    ]
    return {spec.name: spec for spec in specs}


REGISTRY: dict[str, SuiteSpec] = _build_registry()


def suite_names() -> list[str]:
    return list(REGISTRY.keys())


# ---------------------------------------------------------------------------
# suite execution


@dataclass
class SuiteReport:
    """Aggregate outcome of one suite run."""

    suite_name: str
    family: str
    dim: int
    seed: int
    trials: int
    violations: int
    min_slack: float
    mean_slack: float
    tightest_instances: list[dict] = field(default_factory=list)
    runtime_ms: int = 0

    def to_dict(self) -> dict:
        return {
            "suite_name": self.suite_name,
            "family": self.family,
            "dim": self.dim,
            "seed": self.seed,
            "trials": self.trials,
            "violations": self.violations,
            "min_slack": self.min_slack,
            "mean_slack": self.mean_slack,
            "tightest_instances": self.tightest_instances,
            "runtime_ms": self.runtime_ms,
        }


def run_suite(
    suite_name: str,
    ensemble: EnsembleConfig,
    tol: ToleranceConfig | None = None,
    jobs: int = 1,
) -> SuiteReport:
    """Evaluate one suite over all trials of the ensemble plan.

    With jobs > 1 the trials run on a thread pool; results are merged in
    trial order, so the report matches a serial run exactly.
    """
    try:
        spec = REGISTRY[suite_name]
    except KeyError:
        raise InvalidInput(
            f"unknown suite {suite_name!r}; registered suites: {', '.join(suite_names())}"
        ) from None
    if ensemble.family != spec.family:
        raise InvalidInput(
            f"suite {suite_name!r} requires family {spec.family!r}, got {ensemble.family!r}"
        )
    tolerance = tol if tol is not None else ToleranceConfig()

    def one_trial(index: int) -> tuple[float, bool]:
        stream = trial_stream(ensemble, index)
        result = spec.evaluate(stream, ensemble.dim, tolerance)
        return result.min_slack, result.passed

    start = time.perf_counter()
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(one_trial, range(ensemble.trials)))
    else:
        outcomes = [one_trial(index) for index in range(ensemble.trials)]
    runtime_ms = int(round((time.perf_counter() - start) * 1000.0))

    slacks = np.array([slack for slack, _ in outcomes], dtype=np.float64)
    violations = sum(1 for _, passed in outcomes if not passed)
    order = sorted(range(len(outcomes)), key=lambda i: (slacks[i], i))
    tightest = [
        {"seed": ensemble.master_seed, "trial": index, "slack": float(slacks[index])}
        for index in order[:TIGHTEST_KEEP]
    ]
    return SuiteReport(
        suite_name=suite_name,
        family=ensemble.family,
        dim=ensemble.dim,
        seed=ensemble.master_seed,
        trials=ensemble.trials,
        violations=violations,
        min_slack=float(slacks.min()),
        mean_slack=float(slacks.mean()),
        tightest_instances=tightest,
        runtime_ms=runtime_ms,
    )


def suite_outcome_ok(spec: SuiteSpec, report: SuiteReport) -> bool:
    """Pass rule: ordinary suites need zero violations; the counterexample
    suite needs the violation reproduced at slack -1/2 on every trial."""
    if spec.expect_violation:
        return (
            report.violations == report.trials
            and abs(report.min_slack - COUNTEREXAMPLE_SLACK) <= COUNTEREXAMPLE_TOL
        )
    return report.violations == 0


# ---------------------------------------------------------------------------
# config handling


def derive_entry_seed(suite: str, dim: int, base_seed: int = 0) -> int:
    """Stable per-entry seed: base xor the first 8 bytes of sha256(suite/dim)."""
    digest = hashlib.sha256(f"{suite}/{dim}".encode("utf-8")).digest()
    return (base_seed ^ int.from_bytes(digest[:8], "big")) & 0xFFFFFFFFFFFFFFFF


def default_config(base_seed: int = 0, output: str = "report.json") -> dict:
    """Config covering every registered suite at its default size."""
    entries = []
    for spec in REGISTRY.values():
        entries.append(
            {
                "suite": spec.name,
                "family": spec.family,
                "dim": spec.default_dim,
                "trials": spec.default_trials,
                "seed": derive_entry_seed(spec.name, spec.default_dim, base_seed),
            }
        )
    return {
        "tolerance": {"eps_abs": 1e-12, "eps_rel": 1e-9, "eps_rel_omega": 1e-8},
        "suites": entries,
        "output": output,
    }


def _parse_tolerance(block) -> ToleranceConfig:
    if block is None:
        return ToleranceConfig()
    if not isinstance(block, dict):
        raise InvalidInput("config: 'tolerance' must be an object")
    allowed = {"eps_abs", "eps_rel", "eps_rel_omega"}
    unknown = set(block) - allowed
    if unknown:
        raise InvalidInput(f"config: unknown tolerance keys {sorted(unknown)}")
    values = {}
    for key in allowed:
        if key in block:
            try:
                values[key] = float(block[key])
            except (TypeError, ValueError):
                raise InvalidInput(f"config: tolerance.{key} must be a number") from None
    tol = ToleranceConfig(**values)
    if not (tol.eps_abs > 0 and tol.eps_rel > 0 and tol.eps_rel_omega > 0):
        raise InvalidInput("config: tolerance values must all be positive")
    return tol


def parse_config(raw) -> tuple[ToleranceConfig, list[tuple[SuiteSpec, EnsembleConfig]], str]:
    """Validate a config dict into runnable (spec, ensemble) pairs."""
    if not isinstance(raw, dict):
        raise InvalidInput("config: top level must be a JSON object")
    tol = _parse_tolerance(raw.get("tolerance"))
    entries = raw.get("suites")
    if not isinstance(entries, list) or not entries:
        raise InvalidInput("config: 'suites' must be a non-empty list")
    plans = []
    for position, entry in enumerate(entries):
        where = f"config: suites[{position}]"
        if not isinstance(entry, dict):
            raise InvalidInput(f"{where}: must be an object")
        name = entry.get("suite")
        if not isinstance(name, str) or name not in REGISTRY:
            raise InvalidInput(f"{where}: unknown or missing suite {name!r}")
        spec = REGISTRY[name]
        family = entry.get("family", spec.family)
        if family != spec.family:
            raise InvalidInput(
                f"{where}: suite {name!r} requires family {spec.family!r}, got {family!r}"
            )
        dim = entry.get("dim", spec.default_dim)
        trials = entry.get("trials", spec.default_trials)
        if not isinstance(dim, int) or isinstance(dim, bool):
            raise InvalidInput(f"{where}: dim must be an integer")
        if not isinstance(trials, int) or isinstance(trials, bool):
            raise InvalidInput(f"{where}: trials must be an integer")
        seed = entry.get("seed", derive_entry_seed(name, dim))
        if not isinstance(seed, int) or isinstance(seed, bool):
            raise InvalidInput(f"{where}: seed must be an integer")
        ensemble = EnsembleConfig(family=family, dim=dim, master_seed=seed, trials=trials)
        plans.append((spec, ensemble))
    output = raw.get("output", "report.json")
    if not isinstance(output, str) or not output:
        raise InvalidInput("config: 'output' must be a non-empty path string")
    return tol, plans, output


# ---------------------------------------------------------------------------
# reports


def report_document(reports: Sequence[SuiteReport]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "suites": [report.to_dict() for report in reports],
    }


def write_report(reports: Sequence[SuiteReport], path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(report_document(reports), handle, indent=2)
        handle.write("\n")


_CSV_COLUMNS = (
    "suite_name",
    "family",
    "dim",
    "seed",
    "trials",
    "violations",
    "min_slack",
    "mean_slack",
    "runtime_ms",
)


def write_csv(reports: Sequence[SuiteReport], path: str) -> None:
    """Flattened one-row-per-suite export (tightest instances omitted)."""
    lines = [",".join(_CSV_COLUMNS)]
    for report in reports:
        row = report.to_dict()
        lines.append(",".join(repr(row[col]) if isinstance(row[col], float) else str(row[col]) for col in _CSV_COLUMNS))
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("\n".join(lines) + "\n")


def execute_plans(
    plans: Sequence[tuple[SuiteSpec, EnsembleConfig]],
    tol: ToleranceConfig,
    jobs: int = 1,
    progress: Callable[[str], None] | None = None,
) -> tuple[list[SuiteReport], bool]:
    """Run every (spec, ensemble) pair; returns reports and the overall verdict."""
    reports = []
    all_ok = True
    for spec, ensemble in plans:
        report = run_suite(spec.name, ensemble, tol, jobs=jobs)
        ok = suite_outcome_ok(spec, report)
        all_ok = all_ok and ok
        reports.append(report)
        if progress is not None:
            marker = "ok" if ok else "VIOLATION"
            progress(
                f"{report.suite_name:26s} dim={report.dim:<3d} trials={report.trials:<6d} "
                f"violations={report.violations:<4d} min_slack={report.min_slack:+.3e}  [{marker}]"
            )
    return reports, all_ok


def run_all(
    config_path: str,
    jobs: int = 1,
    output_override: str | None = None,
    csv_path: str | None = None,
    progress: Callable[[str], None] | None = None,
) -> int:
    """Run every suite in a config file; returns the process exit code."""
    try:
        with open(config_path, "r", encoding="utf-8") as handle:
            raw = json.load(handle)
    except OSError as exc:
        if progress is not None:
            progress(f"error: cannot read config {config_path}: {exc}")
        return 2
    except json.JSONDecodeError as exc:
        if progress is not None:
            progress(f"error: config {config_path} is not valid JSON: {exc}")
        return 2
    try:
        tol, plans, output = parse_config(raw)
    except IneqLabError as exc:
        if progress is not None:
            progress(f"error: {exc}")
        return 2
    try:
        reports, all_ok = execute_plans(plans, tol, jobs=jobs, progress=progress)
    except IneqLabError as exc:
        if progress is not None:
            progress(f"error: {exc}")
        return 2
    destination = output_override if output_override is not None else output
    try:
        write_report(reports, destination)
        if csv_path is not None:
            write_csv(reports, csv_path)
    except OSError as exc:
        if progress is not None:
            progress(f"error: cannot write report: {exc}")
        return 2
    if progress is not None:
        progress(f"report written to {destination}")
    return 0 if all_ok else 1


# ---------------------------------------------------------------------------
# single-check evaluation

_M, _V = "matrix", "vector"

_CHECK_INPUTS: dict[str, tuple[tuple[str, ...], Callable[..., ChainResult]]] = {
    "buzano": ((_V, _V, _V), lambda x, y, z, tol: vec_ineq.buzano_chain(x, y, z, tolerance=tol)),
    "lemma21": ((_V, _V, _V), lambda x, y, z, tol: vec_ineq.lemma21_chain(x, y, z, tolerance=tol)),
    "cs_refinement": ((_V, _V, _V), lambda x, y, z, tol: vec_ineq.cs_refinement_chain(x, y, z, tolerance=tol)),
    "krein_triangle": ((_V, _V, _V), lambda x, y, z, tol: vec_ineq.krein_triangle(x, y, z, tolerance=tol)),
    "lin_triangle_refined": ((_V, _V, _V), lambda x, y, z, tol: vec_ineq.lin_triangle_refined(x, y, z, tolerance=tol)),
    "psi_infimum": ((_V, _V), lambda x, y, tol: vec_ineq.psi_infimum_property(x, y, PSI_GRID, tolerance=tol)),
    "projection_buzano": ((_M, _V, _V), lambda p, x, y, tol: vec_ineq.projection_buzano(p, x, y, tolerance=tol)),
    "lemma_2A": ((_M, _V, _V), lambda a, x, y, tol: op_ineq.lemma_2A_chain(a, x, y, tolerance=tol)),
    "theorem_gap": ((_M, _V, _V), lambda a, x, y, tol: op_ineq.theorem_gap_chain(a, x, y, tolerance=tol)),
    "corollary33": ((_M, _V, _V), lambda a, x, y, tol: op_ineq.corollary33_chain(a, x, y, tolerance=tol)),
    "corollary33_scaled": ((_M, _V, _V), lambda a, x, y, tol: op_ineq.corollary33_chain(a, x, y, scaled=True, tolerance=tol)),
    "corollary35": ((_M, _V, _V), lambda a, x, y, tol: op_ineq.corollary35_chain(a, x, y, tolerance=tol)),
    "remark36_scaled": ((_M, _V, _V), lambda a, x, y, tol: op_ineq.remark36_scaled(a, x, y, tolerance=tol)),
    "remark36_counterexample": ((_M, _V, _V), lambda a, x, y, tol: op_ineq.remark36_scaled_unchecked(a, x, y, tolerance=tol)),
    "remark36_polar": ((_M, _V, _V), lambda a, x, y, tol: op_ineq.remark36_polar_chain(a, x, y, tolerance=tol)),
    "corollary37": ((_M, _M), lambda a, b, tol: op_ineq.corollary37_chain(a, b, tolerance=tol)),
    "corollary38_omega": ((_M, _M, _M), lambda a, s, t, tol: op_ineq.corollary38_omega_chain(a, s, t, tolerance=tol)),
    "corollary38_norm": ((_M, _M, _M), lambda a, s, t, tol: op_ineq.corollary38_norm_chain(a, s, t, tolerance=tol)),
    "power_r1": ((_M, _M, _M), lambda a, s, t, tol: op_ineq.power_chain(a, s, t, 1.0, tolerance=tol)),
    "power_r2": ((_M, _M, _M), lambda a, s, t, tol: op_ineq.power_chain(a, s, t, 2.0, tolerance=tol)),
    "power_r3": ((_M, _M, _M), lambda a, s, t, tol: op_ineq.power_chain(a, s, t, 3.0, tolerance=tol)),
    "bourin_r1": ((_M, _M), lambda m, n, tol: op_ineq.bourin_property(m, n, 1.0, tolerance=tol)),
    "bourin_r2": ((_M, _M), lambda m, n, tol: op_ineq.bourin_property(m, n, 2.0, tolerance=tol)),
    "final_omega_refinement": ((_M,), lambda t, tol: op_ineq.final_omega_refinement_chain(t, tolerance=tol)),
    "omega_oracle": ((_M,), lambda t, tol: _omega_oracle_chain(t, 10000, 0, tol)),
}


def check_single(
    check_name: str, input_files: Sequence[str], tol: ToleranceConfig | None = None
) -> ChainResult:
    """Evaluate one named check on inputs loaded from JSON files.

    Files are interpreted positionally against the check's signature; the
    caller maps the typed errors to exit codes.
    """
    try:
        kinds, runner = _CHECK_INPUTS[check_name]
    except KeyError:
        raise InvalidInput(
            f"unknown check {check_name!r}; available: {', '.join(sorted(_CHECK_INPUTS))}"
        ) from None
    if len(input_files) != len(kinds):
        raise InvalidInput(
            f"check {check_name!r} expects {len(kinds)} input file(s) "
            f"({', '.join(kinds)}); got {len(input_files)}"
        )
    loaded = []
    for kind, path in zip(kinds, input_files):
        loaded.append(load_matrix(path) if kind == _M else load_vector(path))
    tolerance = tol if tol is not None else ToleranceConfig()
    return runner(*loaded, tolerance)
