"""Exhaustive enumeration on tiny instances.

Candidates are encoded as mixed-radix integers over sorted row options, so
decoding consecutive integers walks tables in lexicographic order. Each batch
is filtered with a vectorized test, then every survivor is re-checked by the
owning module's verifier before it is emitted.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .algebra import Carrier, ParamSet, frozen_array, is_permutation_rows, param_set
from .errors import BudgetExceeded, InputError, SelfDistributivityFails
from .reflections import ReflectionFamily, basic0_witness, general_condition_masks
from .report import Report
from .shelves import PShelf, p_shelf_verify
from .solutions import ParamSolution, p_shelf_solution, reflection_mismatch
from .twists import SigmaFamily, twisted_solution

DEFAULT_BUDGET = 2_000_000
CHUNK = 4096


@dataclass
class SearchStats:
    candidates: int = 0
    emitted: int = 0
    discrepancies: int = 0
    notes: list[str] = field(default_factory=list)


def row_options(n: int, bijective: bool) -> np.ndarray:
    """All maps {0..n-1} -> {0..n-1} as rows, lexicographically sorted."""
    rows = itertools.permutations(range(n)) if bijective else itertools.product(range(n), repeat=n)
    return np.array(sorted(rows), dtype=np.int64).reshape(-1, n)


def _decode(start: int, stop: int, radix: int, slots: int) -> np.ndarray:
    """Digits (most significant first) of start..stop-1 in base ``radix``."""
    nums = np.arange(start, stop, dtype=object) if radix ** slots >= 2**62 else np.arange(start, stop, dtype=np.int64)
    out = np.empty((stop - start, slots), dtype=np.int64)
    for s in range(slots - 1, -1, -1):
        out[:, s] = (nums % radix).astype(np.int64)
        nums = nums // radix
    return out


def _check_budget(count: int, budget: int, what: str) -> None:
    if count > budget:
        raise BudgetExceeded(f"{what}: {count} candidates exceed the budget of {budget}", witness={"estimate": count})


def _chunks(total: int, threads: int, work) -> Iterator:
    """Run ``work(start, stop)`` over consecutive chunks; results come back in order."""
    bounds = [(s, min(s + CHUNK, total)) for s in range(0, total, CHUNK)]
    if threads <= 1:
        for b in bounds:
            yield work(*b)
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        yield from pool.map(lambda b: work(*b), bounds)


# ---------------------------------------------------------------- p-shelves

def _batch_self_distributive(tables: np.ndarray) -> np.ndarray:
    """tables: (N, m, m, n, n). Boolean mask of tables obeying the p-self-distributivity law."""
    N, m, _, n, _ = tables.shape
    ok = np.ones(N, dtype=bool)
    r = np.arange(N)[:, None, None, None]
    av = np.arange(n)
    for i, j, k in itertools.product(range(m), repeat=3):
        a, b, c = av[:, None, None], av[None, :, None], av[None, None, :]
        lhs = tables[r, i, k, a, tables[r, j, k, b, c]]
        rhs = tables[r, j, k, tables[r, i, j, a, b], tables[r, i, k, a, c]]
        ok &= (lhs == rhs).reshape(N, -1).all(axis=1)
    return ok


def canonical_form(op: np.ndarray) -> np.ndarray:
    """Lexicographically least relabeling of the carrier; parameters stay fixed."""
    n = op.shape[-1]
    best = None
    for perm in itertools.permutations(range(n)):
        p = np.array(perm)
        inv = np.argsort(p)
        t = p[op[:, :, inv[:, None], inv[None, :]]]
        if best is None or tuple(t.ravel()) < tuple(best.ravel()):
            best = t
    return best


def p_shelf_candidate_count(n: int, m: int, rack_only: bool = False) -> int:
    per_row = math.factorial(n) if rack_only else n**n
    return per_row ** (m * m * n)


def enumerate_p_shelves(n: int, m: int, params: ParamSet | None = None, rack_only: bool = False,
                        up_to_relabeling: bool = False, budget: int = DEFAULT_BUDGET, threads: int = 1,
                        stats: SearchStats | None = None) -> Iterator[PShelf]:
    if n < 1 or m < 1:
        raise InputError("n and m must be positive")
    if n > 4 or m > 2:
        raise InputError("enumeration is limited to n ≤ 4 and m ≤ 2")
    if params is None:
        if m > n:
            raise InputError("parameters are carrier elements, so m ≤ n")
        params = param_set(Carrier.of_size(n), range(m))
    if params.m != m or params.carrier.size != n:
        raise InputError("parameter set does not match n, m")
    stats = stats if stats is not None else SearchStats()
    rows = row_options(n, rack_only)
    slots = m * m * n
    total = p_shelf_candidate_count(n, m, rack_only)
    _check_budget(total, budget, "p-shelf enumeration")

    def work(start, stop):
        digits = _decode(start, stop, len(rows), slots)
        tables = rows[digits].reshape(-1, m, m, n, n)
        return tables[_batch_self_distributive(tables)]

    seen = set()
    for found in _chunks(total, threads, work):
        for t in found:
            try:
                P = p_shelf_verify(t, params)
            except SelfDistributivityFails:
                stats.discrepancies += 1
                continue
            if rack_only and not P.is_rack:
                stats.discrepancies += 1
                continue
            if up_to_relabeling:
                key = canonical_form(P.op).tobytes()
                if key in seen:
                    continue
                seen.add(key)
            stats.emitted += 1
            yield P
    stats.candidates = total


def count_shelves_plain(n: int, rack_only: bool = False) -> int:
    """Non-parametric shelf count with plain loops; shares no code with the batch enumerator."""
    elems = range(n)
    count = 0
    for flat in itertools.product(elems, repeat=n * n):
        op = [flat[r * n:(r + 1) * n] for r in elems]
        if rack_only and any(len(set(row)) != n for row in op):
            continue
        if all(op[a][op[b][c]] == op[op[a][b]][op[a][c]] for a in elems for b in elems for c in elems):
            count += 1
    return count


# ---------------------------------------------------------------- reflections

def reflection_candidate_count(n: int, m: int, bijective_only: bool = True) -> int:
    per = math.factorial(n) if bijective_only else n**n
    return per**m


class _Batch:
    """View of stacked κ tables (N, m, n) that indexes like a single ``kappa[p, x]``."""

    def __init__(self, kappas: np.ndarray):
        self.k = kappas
        self.r = np.arange(len(kappas)).reshape(-1, 1, 1, 1, 1)

    def __getitem__(self, idx):
        p, x = idx
        return self.k[self.r, p, x]


def _batch_fails(mask: np.ndarray, N: int) -> np.ndarray:
    if N == 0:
        return np.zeros(0, dtype=bool)
    return np.broadcast_to(mask, (N,) + mask.shape[1:]).reshape(N, -1).any(axis=1)


def enumerate_reflections(S: ParamSolution, bijective_only: bool = True, budget: int = DEFAULT_BUDGET,
                          stats: SearchStats | None = None) -> Iterator[ReflectionFamily]:
    n, m = S.n, S.m
    stats = stats if stats is not None else SearchStats()
    rows = row_options(n, bijective_only)
    total = reflection_candidate_count(n, m, bijective_only)
    _check_budget(total, budget, "reflection enumeration")
    mu = S.params.mu_array
    for start in range(0, total, CHUNK):
        stop = min(start + CHUNK, total)
        kappas = rows[_decode(start, stop, len(rows), m)]
        N = len(kappas)
        batch = _Batch(kappas)
        keep = ~_batch_fails(reflection_mismatch(S.sigma, S.tau, batch, mu), N)
        # re-check survivors through the componentwise conditions, a separate code path
        if not keep.any():
            continue
        survivors = _Batch(kappas[keep])
        first, second = general_condition_masks(survivors, S)
        bad = _batch_fails(first | second, len(survivors.k))
        stats.discrepancies += int(bad.sum())
        good = survivors.k[~bad]
        flags = is_permutation_rows(good).all(axis=1)
        for kappa, bij in zip(good, flags):
            stats.emitted += 1
            yield ReflectionFamily(S.carrier, S.params, frozen_array(kappa), bool(bij))
    stats.candidates = total


@dataclass
class ReflectionComparison:
    report: Report
    rack: list[tuple]
    twisted: list[tuple]
    common: list[tuple]
    basic0: list[tuple]

    def to_dict(self) -> dict:
        return {"report": self.report.to_dict(), "rack": self.rack, "twisted": self.twisted,
                "common": self.common, "basic0": self.basic0}


def compare_reflection_sets(P: PShelf, sigma: SigmaFamily, bijective_only: bool = True,
                            budget: int = DEFAULT_BUDGET) -> ReflectionComparison:
    """Reflections of the p-rack solution versus those of its twist, with basic0 markers."""
    base = p_shelf_solution(P)
    twisted = twisted_solution(P, sigma)
    key = lambda K: tuple(K.kappa.ravel().tolist())  # noqa: E731
    rack_set = {key(K): K for K in enumerate_reflections(base, bijective_only, budget)}
    twist_set = {key(K): K for K in enumerate_reflections(twisted, bijective_only, budget)}
    basic0 = sorted(k for k, K in twist_set.items() if basic0_witness(K, sigma) is None)
    basic0_in_rack = sorted(k for k in basic0 if k in rack_set)
    rep = Report("reflections of a p-rack solution and of its twist")
    both = sorted(set(rack_set) & set(twist_set))
    rep.notes.append(f"p-rack reflections: {len(rack_set)}")
    rep.notes.append(f"twisted reflections: {len(twist_set)}")
    rep.notes.append(f"common: {len(both)}")
    rep.notes.append(f"twisted reflections obeying the transport condition: {len(basic0)} ({len(basic0_in_rack)} also p-rack reflections)")
    if len(basic0) < len(twist_set):
        rep.notes.append("observation: the transport-condition holders are a strict subset of the twisted reflections")
    return ReflectionComparison(rep, sorted(rack_set), sorted(twist_set), both, basic0)


# ---------------------------------------------------------------- admissible σ-families

def enumerate_admissible_sigmas(P: PShelf, budget: int = DEFAULT_BUDGET,
                                stats: SearchStats | None = None) -> Iterator[SigmaFamily]:
    from .twists import admissible_twist_verify, sigma_family

    n, m = P.n, P.m
    stats = stats if stats is not None else SearchStats()
    rows = row_options(n, True)
    slots = m * m * n
    total = len(rows) ** slots
    _check_budget(total, budget, "σ-family enumeration")
    for digits in itertools.product(range(len(rows)), repeat=slots):
        table = rows[list(digits)].reshape(m, m, n, n)
        sig = sigma_family(table, P.params)
        if admissible_twist_verify(sig, P).passed:
            stats.emitted += 1
            yield sig
    stats.candidates = total
