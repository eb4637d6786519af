"""Exhaustive cross-checking of the evaluation modes against each other."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Sequence

from .arith import euler_phi
from .characters import character_group
from .menon import DEFAULT_WORK_CAP, MODES, menon, menon_grouped_batch

ALL_PAIRS = tuple(combinations(MODES, 2))


@dataclass(frozen=True)
class Mismatch:
    n: int
    char_index: int
    k: int
    mode_a: str
    value_a: int
    mode_b: str
    value_b: int


@dataclass
class VerificationReport:
    max_n: int
    k_list: list[int]
    pairs: list[tuple[str, str]]
    cases_run: int = 0
    mismatches: list[Mismatch] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def as_dict(self) -> dict:
        out = asdict(self)
        out["pairs"] = [f"{a}:{b}" for a, b in self.pairs]
        out["mismatches"] = [{**asdict(m), "value_a": str(m.value_a), "value_b": str(m.value_b)}
                             for m in self.mismatches]
        return out


def expected_cases(max_n: int, k_list: Sequence[int], pairs: Sequence[tuple[str, str]]) -> int:
    return sum(euler_phi(n) for n in range(1, max_n + 1)) * len(k_list) * len(pairs)


def check_modulus(n: int, k_list: Sequence[int], pairs: Sequence[tuple[str, str]],
                  work_cap: int = DEFAULT_WORK_CAP) -> tuple[int, list[Mismatch]]:
    """Compare every requested mode pair on every character mod n."""
    chars = character_group(n)
    modes = sorted({m for pair in pairs for m in pair}, key=MODES.index)
    values = {}
    for mode in modes:
        if mode == "grouped":
            batch = menon_grouped_batch(chars, k_list)
            for k in k_list:
                values[mode, k] = [e.value for e in batch[k]]
        else:
            for k in k_list:
                values[mode, k] = [menon(chi, k, mode, work_cap).value for chi in chars]
    cases, bad = 0, []
    for k in k_list:
        for idx in range(len(chars)):
            for a, b in pairs:
                cases += 1
                va, vb = values[a, k][idx], values[b, k][idx]
                if va != vb:
                    bad.append(Mismatch(n, idx, k, a, va, b, vb))
    return cases, bad


def _check_star(args):
    return check_modulus(*args)


def run_verification(max_n: int, k_list: Sequence[int],
                     pairs: Sequence[tuple[str, str]] = ALL_PAIRS,
                     parallel: bool = False, work_cap: int = DEFAULT_WORK_CAP,
                     workers: int | None = None) -> VerificationReport:
    if max_n < 1:
        raise ValueError(f"max_n must be at least 1, got {max_n}")
    report = VerificationReport(max_n, list(k_list), [tuple(p) for p in pairs])
    jobs = [(n, list(k_list), report.pairs, work_cap) for n in range(1, max_n + 1)]
    start = time.perf_counter()
    if parallel:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_check_star, jobs, chunksize=4))
    else:
        results = [_check_star(job) for job in jobs]
    # results arrive in n order either way, so the merge is deterministic
    for cases, bad in results:
        report.cases_run += cases
        report.mismatches.extend(bad)
    report.elapsed = time.perf_counter() - start
    return report
