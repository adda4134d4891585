"""Benchmark sweeps over dense quadratic systems, emitted as CSV."""
from __future__ import annotations

import csv
import io
import logging
import time
import tracemalloc
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from .gensys import gen_dense_quadratic
from .verify import reduced_gb_equal, vanishes_at

log = logging.getLogger(__name__)

ALGORITHMS = ("m5gb", "sb", "buchberger")

COLUMNS = [
    "n", "m", "p", "seed", "algorithm", "wall_time_ms", "basis_size", "time_per_element_ms",
    "reduction_steps", "spairs_processed", "spairs_skipped_syzygy", "spairs_skipped_duplicate",
    "zero_reductions",
]
_COUNTERS = COLUMNS[8:]


class BenchError(RuntimeError):
    def __init__(self, msg: str, seed: int):
        super().__init__(f"{msg} (seed {seed})")
        self.seed = seed


def parse_m_rule(rule) -> "callable":
    """``'2N'``, ``'1.5N'`` or a fixed count like ``'24'``."""
    rule = str(rule).strip().upper()
    if rule.endswith("N"):
        factor = float(rule[:-1] or 1)
        return lambda n: max(1, int(round(factor * n)))
    fixed = int(rule)
    return lambda n: fixed


@dataclass
class BenchConfig:
    n_range: Sequence[int]
    m_rule: str = "2N"
    p: int = 101
    reps: int = 10
    algorithms: Sequence[str] = ("m5gb", "sb")
    seed_base: int = 0
    sig_order: str = "top"
    term_order: str = "grevlex"
    cross_check: bool = False
    parallel: int = 1
    track_memory: bool = False
    output: Optional[str] = None

    def __post_init__(self):
        self.n_range = list(self.n_range)
        if not self.n_range:
            raise ValueError("n_range is empty")
        if self.reps < 1:
            raise ValueError("reps must be >= 1")
        bad = [a for a in self.algorithms if a not in ALGORITHMS]
        if bad:
            raise ValueError(f"unknown algorithms {bad}")
        parse_m_rule(self.m_rule)

    def instances(self) -> list[tuple[int, int, int]]:
        m_of = parse_m_rule(self.m_rule)
        return [(n, m_of(n), self.seed_base + r) for n in self.n_range for r in range(self.reps)]


def solve(alg: str, F, term_order="grevlex", sig_order="top"):
    """Run one algorithm; returns ``(basis, stats dict)``."""
    from .algorithm import RunStats, m5gb_run
    from .baseline import buchberger, sb_run

    if alg == "m5gb":
        G, st = m5gb_run(F, term_order, sig_order)
    elif alg == "sb":
        G, st = sb_run(F, term_order, sig_order)
    elif alg == "buchberger":
        start = time.perf_counter()
        G = buchberger(F, term_order)
        st = RunStats(basis_size=len(G), wall_time=time.perf_counter() - start)
    else:
        raise ValueError(f"unknown algorithm {alg!r}")
    return G, st.as_dict()


def _run_instance(cfg: BenchConfig, n: int, m: int, seed: int) -> list[dict]:
    F, point = gen_dense_quadratic(n, m, cfg.p, seed, cfg.term_order)
    if not vanishes_at(F, point):
        raise BenchError("generated system misses its planted point", seed)
    rows, bases = [], {}
    for alg in cfg.algorithms:
        if cfg.track_memory:
            tracemalloc.start()
        try:
            G, st = solve(alg, F, cfg.term_order, cfg.sig_order)
        except Exception as exc:
            raise BenchError(f"{alg} failed on n={n}, m={m}: {exc}", seed) from exc
        finally:
            peak = tracemalloc.get_traced_memory()[1] if cfg.track_memory else None
            if cfg.track_memory:
                tracemalloc.stop()
        bases[alg] = G
        ms = st["wall_time"] * 1000.0
        row = {
            "n": n, "m": m, "p": cfg.p, "seed": seed, "algorithm": alg,
            "wall_time_ms": ms, "basis_size": st["basis_size"],
            "time_per_element_ms": ms / st["basis_size"],
        }
        row.update({k: st[k] for k in _COUNTERS})
        if peak is not None:
            row["peak_kb"] = peak / 1024.0
        rows.append(row)
        log.info("n=%d m=%d seed=%d %s %.1f ms", n, m, seed, alg, ms)
    if cfg.cross_check and "m5gb" in bases and "sb" in bases:
        if not reduced_gb_equal(bases["m5gb"], bases["sb"]):
            raise BenchError(f"m5gb and sb disagree on n={n}, m={m}", seed)
    return rows


def _aggregate(rows: list[dict]) -> list[dict]:
    groups: dict[tuple, list[dict]] = {}
    for r in rows:
        groups.setdefault((r["n"], r["m"], r["algorithm"]), []).append(r)
    out = []
    for (n, m, alg), rs in groups.items():
        agg = {"n": n, "m": m, "p": rs[0]["p"], "seed": "mean", "algorithm": alg}
        for k in COLUMNS[5:] + (["peak_kb"] if "peak_kb" in rs[0] else []):
            if k == "algorithm":
                continue
            agg[k] = sum(r[k] for r in rs) / len(rs)
        out.append(agg)
    return out


def run_benchmark(cfg: BenchConfig) -> list[dict]:
    """Instance rows followed by per-(n, m, algorithm) mean rows."""
    jobs = cfg.instances()
    if cfg.parallel > 1:
        with ProcessPoolExecutor(max_workers=cfg.parallel) as ex:
            chunks = list(ex.map(_run_instance, [cfg] * len(jobs), *zip(*jobs)))
    else:
        chunks = [_run_instance(cfg, n, m, seed) for n, m, seed in jobs]
    rows = [r for chunk in chunks for r in chunk]
    rows += _aggregate(rows)
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(to_csv(rows, cfg.track_memory))
    return rows


def to_csv(rows: list[dict], with_memory: bool = False) -> str:
    cols = COLUMNS + (["peak_kb"] if with_memory else [])
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for r in rows:
        w.writerow({k: _fmt(r.get(k)) for k in cols})
    return buf.getvalue()


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.6g}"
    return v


def ratio_table(rows: list[dict], metric: str = "reduction_steps", num: str = "sb", den: str = "m5gb"):
    """``{(n, m): mean(num) / mean(den)}`` from the aggregate rows."""
    means = {(r["n"], r["m"], r["algorithm"]): r[metric] for r in rows if r["seed"] == "mean"}
    out = {}
    for (n, m, alg), v in means.items():
        if alg == den and (n, m, num) in means and v:
            out[(n, m)] = means[(n, m, num)] / v
    return out
