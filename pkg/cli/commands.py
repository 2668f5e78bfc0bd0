"""Runners behind ``verify``, ``compute`` and ``experiment``.

Each runner returns the process exit code: 0 when every check passed, 1 when
any failed. Configuration problems surface as exceptions and are mapped to 2
by :func:`cli.main.main`.
"""

import argparse
import itertools
import json
import logging
import time
from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

from arith.kloosterman import kloosterman_row
from common.config import Settings, TauConvention, get_tolerances
from common.exceptions import ConfigurationError
from common.schemas import IdentityReport, ScalingFit
from experiments import (
    ScalingQuantity,
    a1_sum,
    envelope_consistent,
    lambda_drift_experiment,
    load_eigenvalues,
    main_term,
    scaling_fit,
    smoothed_spectral_sum,
    spectral_sum,
)
from identities import (
    arctan_addition_check,
    cosine_kloosterman_suite,
    exact_formula_check,
    inequality_grid,
    kuznetsov_check,
)
from lfunctions import lambda_table, lfunction_suite, rho_table, script_l
from testfun import TestParams, bump_spec, closed_form_suite, params_new

from .output import ReportSink, rows_to_text

logger = logging.getLogger(__name__)

COSINE_N_MAX = 30
KUZNETSOV_S = (1.6, 1.75, 1.9)
SCALING_X = (10.0, 100.0, 1000.0)
SCALING_T = (2.0, 4.0, 8.0, 16.0)


@dataclass
class RunContext:
    settings: Settings
    sink: ReportSink
    options: argparse.Namespace

    @property
    def params(self) -> TestParams:
        return params_new(self.settings.X, self.settings.T, self.settings.THETA)

    @property
    def threads(self) -> int:
        return self.settings.THREADS

    @property
    def deterministic(self) -> bool:
        return self.settings.DETERMINISTIC

    @property
    def convention(self) -> TauConvention:
        return TauConvention(self.settings.TAU_CONVENTION)

    def timed_row(self, row: dict[str, Any], started: float) -> dict[str, Any]:
        if not self.deterministic:
            row["runtime_ms"] = round((time.perf_counter() - started) * 1000.0, 3)
        return row


# verify


def _suite_cosine(ctx: RunContext) -> list[IdentityReport]:
    return cosine_kloosterman_suite(
        ctx.settings.QMAX, COSINE_N_MAX, threads=ctx.threads, deterministic=ctx.deterministic
    )


def _suite_kuznetsov(ctx: RunContext) -> list[IdentityReport]:
    p = ctx.params
    return [
        kuznetsov_check(
            s,
            p,
            ctx.settings.Q,
            ctx.settings.resolved_nmax(),
            threads=ctx.threads,
            deterministic=ctx.deterministic,
        )
        for s in KUZNETSOV_S
    ]


def _suite_exact_formula(ctx: RunContext) -> list[IdentityReport]:
    settings = ctx.settings
    return [
        exact_formula_check(
            ctx.params,
            bump_spec(settings.N),
            settings.Q,
            settings.resolved_nmax(),
            settings.TMAX,
            convention=ctx.convention,
            threads=ctx.threads,
            deterministic=ctx.deterministic,
        )
    ]


def _suite_inequality(ctx: RunContext) -> list[IdentityReport]:
    summary = inequality_grid(theta=ctx.settings.THETA)
    reports = [
        IdentityReport.build(
            summary.name,
            max(summary.worst_margin, 0.0),
            0.0,
            tol_abs=summary.slack,
            params={"samples": summary.samples, "violations": summary.violations},
            details={"worst_margin": summary.worst_margin},
        )
    ]
    p = ctx.params
    for offset in (0.5, 2.0, 10.0, 100.0):
        reports.append(arctan_addition_check(2.0 * p.b + offset, p))
    return reports


def _suite_testfun(ctx: RunContext) -> list[IdentityReport]:
    return closed_form_suite(ctx.params)


def _suite_lfun(ctx: RunContext) -> list[IdentityReport]:
    return lfunction_suite(t_max=ctx.settings.TMAX, convention=ctx.convention)


SUITES: dict[str, Callable[[RunContext], list[IdentityReport]]] = {
    "cosine": _suite_cosine,
    "kuznetsov": _suite_kuznetsov,
    "exact-formula": _suite_exact_formula,
    "inequality": _suite_inequality,
    "testfun": _suite_testfun,
    "lfun": _suite_lfun,
}


def run_verify(ctx: RunContext) -> int:
    """Run one suite (or all of them in order) and write a report per suite."""
    names = list(SUITES) if ctx.options.suite == "all" else [ctx.options.suite]
    failed_total = 0
    for name in names:
        reports = SUITES[name](ctx)
        failed = sum(not report.passed for report in reports)
        failed_total += failed
        ctx.sink.write_reports(f"verify_{name.replace('-', '_')}", reports)
        print(f"{name}: {len(reports)} checks, {failed} failed")
    return 0 if failed_total == 0 else 1


# compute


def _compute_kloosterman_row(ctx: RunContext) -> list[dict[str, Any]]:
    rows = kloosterman_row(
        ctx.options.n, ctx.settings.Q, threads=ctx.threads, deterministic=ctx.deterministic
    )
    return [{"q": q, "S": value} for q, value in rows]


def _compute_rho_lambda(ctx: RunContext) -> list[dict[str, Any]]:
    m, Q = ctx.options.m, ctx.settings.Q
    rho = rho_table(m, Q)
    lam = lambda_table(m, Q)
    return [{"q": q, "rho": int(rho[q]), "lambda": int(lam[q])} for q in range(1, Q + 1)]


def _compute_script_l(ctx: RunContext) -> list[dict[str, Any]]:
    s = complex(ctx.options.s)
    value = script_l(s, ctx.options.m, ctx.convention).complex
    row = {"m": ctx.options.m, "s_re": s.real, "s_im": s.imag}
    return [{**row, "re": value.real, "im": value.imag}]


def _compute_a1(ctx: RunContext) -> list[dict[str, Any]]:
    settings = ctx.settings
    started = time.perf_counter()
    value = a1_sum(
        ctx.params,
        bump_spec(settings.N),
        settings.Q,
        a1=ctx.options.a1,
        threads=ctx.threads,
        deterministic=ctx.deterministic,
    )
    row = {
        "X": settings.X,
        "T": settings.T,
        "N": settings.N,
        "Q": settings.Q,
        "Re": value.value.re,
        "Im": value.value.im,
        "tail": value.tail_bound,
    }
    return [ctx.timed_row(row, started)]


def _compute_main_term(ctx: RunContext) -> list[dict[str, Any]]:
    settings = ctx.settings
    started = time.perf_counter()
    n_max = settings.resolved_nmax()
    value = main_term(ctx.params, n_max, convention=ctx.convention)
    row = {
        "X": settings.X,
        "T": settings.T,
        "N_max": n_max,
        "Re": value.value.re,
        "Im": value.value.im,
        "tail": value.tail_bound,
    }
    return [ctx.timed_row(row, started)]


def _compute_spectral(ctx: RunContext) -> dict[str, Any]:
    if ctx.options.eigenvalues is None:
        raise ConfigurationError("compute spectral needs --eigenvalues PATH")
    ev = load_eigenvalues(ctx.options.eigenvalues, sort=ctx.options.sort)
    settings = ctx.settings
    plain = spectral_sum(ev, settings.X, settings.T)
    weighted = spectral_sum(ev, settings.X, settings.T, weighted=True)
    smoothed = smoothed_spectral_sum(ev, ctx.params)
    return {
        "X": settings.X,
        "T": settings.T,
        "count": sum(m for t, m in zip(ev.values, ev.multiplicities) if t <= settings.T),
        "Re": plain.real,
        "Im": plain.imag,
        "weighted_Re": weighted.real,
        "weighted_Im": weighted.imag,
        "smoothed_Re": smoothed.real,
        "smoothed_Im": smoothed.imag,
    }


TABLES: dict[str, Callable[[RunContext], list[dict[str, Any]]]] = {
    "kloosterman-row": _compute_kloosterman_row,
    "rho-lambda": _compute_rho_lambda,
    "script-l": _compute_script_l,
    "a1": _compute_a1,
    "main-term": _compute_main_term,
}

TARGETS = (*TABLES, "spectral")


def run_compute(ctx: RunContext) -> int:
    """Compute one target, write it to the output directory and echo it on stdout."""
    target = ctx.options.target
    name = f"compute_{target.replace('-', '_')}"
    if target == "spectral":
        result = _compute_spectral(ctx)
        ctx.sink.write_document(name, result)
        print(json.dumps(result, sort_keys=True))
        return 0
    rows = TABLES[target](ctx)
    ctx.sink.write_rows(name, rows)
    print(rows_to_text(rows, ctx.sink.format).rstrip("\n"))
    return 0


# experiment


def _run_scaling(ctx: RunContext, quantity: ScalingQuantity) -> int:
    settings = ctx.settings
    xs = ctx.options.xs or SCALING_X
    ts = ctx.options.ts or SCALING_T
    grid = [(X, T, settings.N) for X, T in itertools.product(xs, ts)]
    fit: ScalingFit = scaling_fit(
        quantity,
        grid,
        theta=settings.THETA,
        Q=settings.Q,
        convention=ctx.convention,
        threads=ctx.threads,
        deterministic=ctx.deterministic,
    )
    name = f"experiment_scaling_{quantity.value}"
    ctx.sink.write_rows(name + "_points", [point.model_dump() for point in fit.grid])
    ctx.sink.write_document(name, fit)
    consistent = envelope_consistent(fit, settings.THETA)
    e_x, e_t = fit.fitted_exponents
    print(
        f"{quantity.value}: e_X={e_x:.4f} e_T={e_t:.4f} residual={fit.residual:.3e} "
        f"envelope_consistent={consistent} ({fit.label})"
    )
    return 0 if consistent else 1


def _run_lambda_drift(ctx: RunContext) -> int:
    top = ctx.settings.QMAX
    q_values = sorted({q for q in (top // 8, top // 4, top // 2, top) if q >= 2})
    drift = lambda_drift_experiment(
        q_values, ctx.options.z, threads=ctx.threads, deterministic=ctx.deterministic
    )
    ctx.sink.write_rows(
        "experiment_lambda_drift_points",
        [
            {"Q": Q, "aggregate": a, "envelope_ratio": r}
            for Q, a, r in zip(drift.Q_values, drift.aggregates, drift.envelope_ratios)
        ],
    )
    ctx.sink.write_document("experiment_lambda_drift", drift)
    limit = get_tolerances().constant("lambda_drift_slope_max")
    print(f"lambda drift: slope={drift.fitted_slope:.4f} (limit {limit}, {drift.label})")
    return 0 if drift.fitted_slope <= limit else 1


EXPERIMENTS: dict[str, Callable[[RunContext], int]] = {
    "scaling-a1": lambda ctx: _run_scaling(ctx, ScalingQuantity.A1),
    "scaling-main-term": lambda ctx: _run_scaling(ctx, ScalingQuantity.MAIN_TERM),
    "lambda-drift": _run_lambda_drift,
}


def run_experiment(ctx: RunContext) -> int:
    return EXPERIMENTS[ctx.options.name](ctx)
