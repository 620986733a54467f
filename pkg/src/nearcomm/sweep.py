"""Sweep experiments over the perturbation strength, persisted as CSV.

Each (epsilon, trial) cell generates an independent almost-commuting pair
from its own random stream and pushes it through the pipeline. Records are
sorted by construction, floats are written with 17 significant digits, and
reruns with the same seed reproduce the file byte for byte apart from the
commented timestamp header.
"""

from __future__ import annotations

import datetime
import math
import os
from dataclasses import dataclass, field, fields

import numpy as np

from .ensembles import gen_almost_commuting_pair
from .errors import InvalidInputError
from .pipeline import DEFAULT_OPTIONS, PipelineOptions, near_commuting_unitaries


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    delta: float
    epsilons: tuple[float, ...]
    trials: int
    seed: int
    series_target: float = 1e-6
    out_path: str | None = None

    def __post_init__(self):
        eps = tuple(float(e) for e in self.epsilons)
        object.__setattr__(self, "epsilons", eps)
        if not eps:
            raise InvalidInputError("epsilons must be non-empty")
        if any(e < 0 for e in eps):
            raise InvalidInputError("epsilons must be nonnegative")
        if list(eps) != sorted(eps, reverse=True):
            raise InvalidInputError("epsilons must be sorted descending")
        if self.trials < 1:
            raise InvalidInputError("trials must be >= 1")
        if self.n < 1:
            raise InvalidInputError("n must be >= 1")


@dataclass(frozen=True)
class TrialRecord:
    n: int
    seed: int
    delta1: float
    delta2: float
    eps_target: float
    eps_actual: float
    log_comm: float
    predicted_bound: float
    herm_dist_a: float
    herm_dist_b: float
    dist_u: float
    dist_v: float
    comm_after: float
    trunc_order: int
    converged: bool


CSV_FIELDS = [f.name for f in fields(TrialRecord)]


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.17g}"


def records_to_csv(records: list[TrialRecord], header_comment: str | None = None) -> str:
    lines = []
    if header_comment is not None:
        lines.append(f"# {header_comment}")
    lines.append(",".join(CSV_FIELDS))
    for rec in records:
        lines.append(",".join(_fmt(getattr(rec, name)) for name in CSV_FIELDS))
    return "\n".join(lines) + "\n"


def write_records(path: str | os.PathLike, records: list[TrialRecord], config: ExperimentConfig) -> None:
    stamp = datetime.datetime.now(datetime.timezone.utc).isoformat()
    comment = (
        f"nearcomm sweep n={config.n} delta={config.delta} trials={config.trials} "
        f"seed={config.seed} timestamp={stamp}"
    )
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(records_to_csv(records, comment))


@dataclass(frozen=True)
class SweepSummary:
    """Per-epsilon medians of dist_u + dist_v and the log-log distance slope."""

    eps_targets: tuple[float, ...]
    median_eps_actual: tuple[float, ...]
    median_distance: tuple[float, ...]
    slope: float


def run_sweep(config: ExperimentConfig, opts: PipelineOptions | None = None) -> list[TrialRecord]:
    """All (epsilon, trial) cells through the pipeline, in deterministic order.

    Failed trials are recorded with NaN measurements rather than aborting
    the sweep. If config.out_path is set the records are persisted as CSV.
    """
    if opts is None:
        opts = PipelineOptions(
            min_gap=DEFAULT_OPTIONS.min_gap,
            series_target=config.series_target,
        )
    records: list[TrialRecord] = []
    for i, eps in enumerate(config.epsilons):
        for t in range(config.trials):
            eps_actual = float("nan")
            try:
                u, v, eps_actual = gen_almost_commuting_pair(
                    config.n, config.delta, eps, config.seed, i, t
                )
                res = near_commuting_unitaries(u, v, opts)
                records.append(
                    TrialRecord(
                        n=config.n,
                        seed=config.seed,
                        delta1=res.gap1.half_width,
                        delta2=res.gap2.half_width,
                        eps_target=eps,
                        eps_actual=eps_actual,
                        log_comm=res.bound.measured_log_comm,
                        predicted_bound=res.bound.predicted,
                        herm_dist_a=res.herm_dist_a,
                        herm_dist_b=res.herm_dist_b,
                        dist_u=res.dist_u,
                        dist_v=res.dist_v,
                        comm_after=res.comm_after,
                        trunc_order=max(res.trunc_order1, res.trunc_order2),
                        converged=res.converged,
                    )
                )
            except Exception:
                nan = float("nan")
                records.append(
                    TrialRecord(
                        n=config.n, seed=config.seed, delta1=nan, delta2=nan,
                        eps_target=eps, eps_actual=eps_actual, log_comm=nan,
                        predicted_bound=nan, herm_dist_a=nan, herm_dist_b=nan,
                        dist_u=nan, dist_v=nan, comm_after=nan,
                        trunc_order=0, converged=False,
                    )
                )
    if config.out_path is not None:
        write_records(config.out_path, records, config)
    return records


def summarize(records: list[TrialRecord]) -> SweepSummary:
    """Medians per epsilon target plus a least-squares log-log slope.

    The slope regresses log(median distance) on log(median eps_actual) over
    the strictly positive epsilon groups; NaN when fewer than two usable
    groups exist.
    """
    groups: dict[float, list[TrialRecord]] = {}
    for rec in records:
        groups.setdefault(rec.eps_target, []).append(rec)
    eps_sorted = sorted(groups, reverse=True)
    med_eps, med_dist = [], []
    for eps in eps_sorted:
        ok = [r for r in groups[eps] if math.isfinite(r.dist_u) and math.isfinite(r.dist_v)]
        if ok:
            med_eps.append(float(np.median([r.eps_actual for r in ok])))
            med_dist.append(float(np.median([r.dist_u + r.dist_v for r in ok])))
        else:
            med_eps.append(float("nan"))
            med_dist.append(float("nan"))
    xs = [
        (math.log(e), math.log(d))
        for e, d in zip(med_eps, med_dist)
        if e > 0 and d > 0 and math.isfinite(e) and math.isfinite(d)
    ]
    if len(xs) >= 2:
        lx = np.array([p[0] for p in xs])
        ly = np.array([p[1] for p in xs])
        slope = float(np.polyfit(lx, ly, 1)[0])
    else:
        slope = float("nan")
    return SweepSummary(
        eps_targets=tuple(eps_sorted),
        median_eps_actual=tuple(med_eps),
        median_distance=tuple(med_dist),
        slope=slope,
    )
