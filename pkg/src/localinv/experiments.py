"""Sequence-length bound tables and weak-instance density runs."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import random
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from decimal import Decimal

from .lrs import EarlyPeriod, Solved, minpoly_bm_lcm
from .targets.registry import sample_problem

_UNITS = ((10 ** 12, "Trillion"), (10 ** 9, "Billion"), (10 ** 6, "Million"), (10 ** 3, "Thousand"))


def rounded_label(v: int) -> str:
    """Three significant figures with a unit word, e.g. ``2.1 Million``."""
    for scale, word in _UNITS:
        if v >= scale:
            q = Decimal(v) / scale
            s = f"{float(q):.3g}"
            return f"{s} {word}"
    return str(v)


@dataclass(frozen=True)
class BoundRow:
    l: int
    k: int
    M: int
    half: int

    @property
    def label(self) -> str:
        return f"M = {self.M} ({rounded_label(self.M)}), M/2 = {self.half} ({rounded_label(self.half)})"


def bounds_table(l: int, k: int) -> BoundRow:
    if l < 2 or k < 1:
        raise ValueError("need l >= 2 and k >= 1")
    M = l ** k
    return BoundRow(l, k, M, M // 2)


# Published table cells as (table, l, k, M label, M/2 label or None).
PUBLISHED_CELLS = (
    ("AES-128", 128, 3, "2 million", None),
    ("AES-128", 128, 2, "16 thousand", None),
    ("AES-128", 88, 3, "0.7 million", None),
    ("AES-128", 88, 2, "7744", None),
    ("AES-192", 192, 3, "7 million", None),
    ("AES-192", 192, 2, "36 thousand", None),
    ("AES-192", 152, 3, "3.5 million", None),
    ("AES-192", 152, 2, "23 thousand", None),
    ("AES-256", 256, 3, "16 million", None),
    ("AES-256", 256, 2, "65 thousand", None),
    ("AES-256", 216, 3, "10 million", None),
    ("AES-256", 216, 2, "46 thousand", None),
    ("RSA", 1024, 3, "1 Billion", "537 Million"),
    ("RSA", 1024, 2, "1 Million", "524,288"),
    ("RSA", 2048, 3, "8.5 Trillion", "4.3 Trillion"),
    ("RSA", 2048, 2, "4.2 Million", "2.1 Million"),
    ("secp256k1", 258, 3, "17 Million", "8.5 Million"),
    ("secp256k1", 258, 2, "66564", "33282"),
)

_WORDS = {"thousand": 10 ** 3, "million": 10 ** 6, "billion": 10 ** 9, "trillion": 10 ** 12}


def parse_label(label: str) -> float:
    parts = label.replace(",", "").split()
    value = float(parts[0])
    if len(parts) > 1:
        value *= _WORDS[parts[1].lower()]
    return value


def _agrees(label: str, exact: int, rel: float = 0.1) -> bool:
    return abs(parse_label(label) - exact) <= rel * exact


def published_tables() -> list[dict]:
    """Every published cell next to the exact value, with a note where they disagree."""
    out = []
    for table, l, k, m_label, h_label in PUBLISHED_CELLS:
        row = bounds_table(l, k)
        notes = []
        if not _agrees(m_label, row.M):
            notes.append(f"published M '{m_label}' disagrees with {l}^{k} = {row.M:,}")
        if h_label is not None and not _agrees(h_label, row.half):
            notes.append(f"published M/2 '{h_label}' disagrees with {row.half:,}")
        out.append({"table": table, "l": l, "k": k, "M": row.M, "half": row.half,
                    "M_label": rounded_label(row.M), "published_M": m_label, "published_half": h_label,
                    "note": "; ".join(notes)})
    return out


# -- density -----------------------------------------------------------------------

CSV_COLUMNS = ("target", "instance_id", "n_bits", "bound_M", "mode", "outcome", "lc", "period",
               "verify_ok", "false_positives", "eval_count", "seed", "elapsed_ms")


@dataclass
class DensityRecord:
    target: str
    instance_id: int
    n_bits: int
    bound_M: int
    mode: str
    outcome: str
    lc: int | None
    period: int | None
    verify_ok: bool
    false_positives: int
    eval_count: int
    seed: int
    elapsed_ms: int | None


@dataclass
class DensityConfig:
    target: dict
    samples: int
    M: int
    mode: str = "paper"
    seed: int = 0
    threads: int = 1
    sampling: str = "secret"
    record_timing: bool = False
    shortcut: bool = True


def sub_seed(seed: int, index: int) -> int:
    digest = hashlib.sha256(f"{seed}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], "little")


def periodic_lc(fmap, y, period: int) -> int:
    """LC of a purely periodic trajectory, from two copies of one period."""
    cycle = [y]
    for _ in range(period - 1):
        cycle.append(fmap(cycle[-1]))
    return minpoly_bm_lcm(cycle + cycle).degree


def _run_one(cfg: DensityConfig, index: int) -> DensityRecord:
    s = sub_seed(cfg.seed, index)
    rng = random.Random(s)
    spec = dict(cfg.target, index=index)
    t0 = time.perf_counter()
    name = cfg.target.get("target", "?")
    try:
        prob = sample_problem(spec, rng, cfg.sampling)
        out = prob.solve(cfg.M, cfg.mode, shortcut=cfg.shortcut)
        verify_ok = False
        lc = period = None
        if isinstance(out, (Solved, EarlyPeriod)):
            x = out.x.to_int()
            verify_ok = prob.map(out.x) == prob.y and (prob.check is None or prob.check(x))
            if isinstance(out, Solved):
                lc = out.lc
            else:
                period = out.period
                lc = periodic_lc(prob.map, prob.y, period)
        rec = DensityRecord(name, index, prob.n_bits, cfg.M, cfg.mode, out.tag, lc, period,
                            verify_ok, out.false_positives, out.eval_count, s, None)
    except Exception:  # a failing sample is recorded, never fatal
        rec = DensityRecord(name, index, 0, cfg.M, cfg.mode, "error", None, None, False, 0, 0, s, None)
    if cfg.record_timing:
        rec.elapsed_ms = int((time.perf_counter() - t0) * 1000)
    return rec


def density_run(cfg: DensityConfig) -> tuple[list[DensityRecord], dict]:
    """Run ``cfg.samples`` independent instances; records are ordered by instance id."""
    n = cfg.samples
    if "values" in cfg.target and not n:
        n = len(cfg.target["values"])
    if n < 1:
        raise ValueError("need at least one sample")
    if cfg.threads > 1:
        with ThreadPoolExecutor(cfg.threads) as pool:
            records = list(pool.map(lambda i: _run_one(cfg, i), range(n)))
    else:
        records = [_run_one(cfg, i) for i in range(n)]
    records.sort(key=lambda r: r.instance_id)
    return records, summarize(records, cfg)


def summarize(records: list[DensityRecord], cfg: DensityConfig) -> dict:
    counts = Counter(r.outcome for r in records)
    solved = counts["solved"] + counts["early_period"]
    hist = Counter(r.lc for r in records if r.lc is not None)
    return {
        "target": cfg.target.get("target"),
        "samples": len(records),
        "bound_M": cfg.M,
        "mode": cfg.mode,
        "sampling": cfg.sampling,
        "shortcut": cfg.shortcut,
        "seed": cfg.seed,
        "fraction_solved": solved / len(records),
        "counts": {k: counts.get(k, 0) for k in ("solved", "early_period", "no_conclusion", "error")},
        "lc_histogram": {str(k): hist[k] for k in sorted(hist)},
        "false_positives": sum(r.false_positives for r in records),
    }


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def records_to_csv(records: list[DensityRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        d = asdict(r)
        w.writerow([_cell(d[c]) for c in CSV_COLUMNS])
    return buf.getvalue()


def write_csv(records: list[DensityRecord], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(records_to_csv(records))


def summary_json(summary: dict) -> str:
    return json.dumps(summary, indent=2, sort_keys=True)
