"""Exact domination parameters of small flower snarks by layered exhaustive search.

Candidates are scanned one cardinality (or guard weight) at a time, in
lexicographic order of their sorted vertex ids.  A layer with a valid
candidate ends the search; the layer before it was scanned completely and
found empty, which is the optimality proof.

With ``prefilter`` on (the default) two sound cuts are applied while the
subsets are generated:

* every copy ``{a^i, b^i, c^i, d^i}`` keeps at least one chosen vertex, since
  ``N[a^i]`` lies inside copy ``i`` and every variant here dominates;
* a branch dies as soon as some vertex whose whole neighbourhood lies below
  the next free position is left uncovered.

Neither cut relies on the closed forms being checked.  Turning the prefilter
off gives plain brute force over all k-subsets, allowed only for n <= 4.
"""

from __future__ import annotations

import logging
import multiprocessing as mp
import os
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Callable, Iterator

from .combinatorics import combinations_in_range, split_ranks
from .graph import FlowerSnark, VertexSet, build_flower_snark, iter_bits
from .validators import GUARD_PREDICATES, SET_PREDICATES, GuardFunction, Variant

log = logging.getLogger(__name__)

SET_VARIANTS = (
    Variant.DOMINATION,
    Variant.INDEPENDENT,
    Variant.TWO_DOMINATION,
    Variant.TOTAL,
    Variant.CONNECTED,
    Variant.SECURE,
)
GUARD_VARIANTS = (Variant.ROMAN, Variant.WEAK_ROMAN)

# variant -> (largest n by default, largest n with long_running=True)
FEASIBLE_N = {
    Variant.DOMINATION: (7, 8),
    Variant.INDEPENDENT: (7, 8),
    Variant.TWO_DOMINATION: (7, 8),
    Variant.TOTAL: (7, 8),
    Variant.CONNECTED: (7, 8),
    Variant.SECURE: (6, 8),
    Variant.UPPER: (6, 6),
    Variant.MINIMAL: (6, 6),
    Variant.ROMAN: (5, 8),
    Variant.WEAK_ROMAN: (5, 8),
}
BRUTE_FORCE_MAX_N = 4


class CapacityError(ValueError):
    """The requested instance lies outside the documented solver range."""


@dataclass
class SolveResult:
    variant: Variant
    n: int
    optimum: int
    witness: VertexSet | GuardFunction
    proof_bound: int
    candidates_examined: int
    elapsed: float = field(compare=False)

    def witness_labels(self) -> list[str]:
        if isinstance(self.witness, GuardFunction):
            from .graph import label

            return [
                label(v) + ("*2" if x == 2 else "")
                for v, x in enumerate(self.witness.values)
                if x
            ]
        return self.witness.labels()

    def to_dict(self, include_timing: bool = True) -> dict:
        return {
            "variant": self.variant.value,
            "n": self.n,
            "optimum": self.optimum,
            "witness": self.witness_labels(),
            "proof_bound": self.proof_bound,
            "candidates_examined": self.candidates_examined,
            "elapsed_ms": round(self.elapsed * 1000, 3) if include_timing else None,
        }


def default_workers() -> int:
    env = os.environ.get("SNARKDOM_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            log.warning("ignoring non-integer SNARKDOM_THREADS=%r", env)
    return os.cpu_count() or 1


def check_capacity(variant: Variant, n: int, long_running: bool = False, prefilter: bool = True) -> None:
    default_max, long_max = FEASIBLE_N[variant]
    limit = long_max if long_running else default_max
    if n > limit:
        hint = "" if long_running or long_max == default_max else f" (up to {long_max} with long_running)"
        raise CapacityError(f"{variant} solver supports n <= {limit}{hint}; got n={n}")
    if not prefilter and n > BRUTE_FORCE_MAX_N:
        raise CapacityError(f"brute force without prefilter supports n <= {BRUTE_FORCE_MAX_N}")


# ------------------------------------------------------------ subset spaces


class SubsetSpace:
    """k-subsets of the vertices of J_n in lexicographic order, with the
    structural cuts described in the module docstring."""

    def __init__(self, g: FlowerSnark, prefilter: bool = True, open_cover: bool = False):
        self.g = g
        self.prefilter = prefilter
        self.nbhd = g.open_masks if open_cover else g.closed_masks
        size = g.num_vertices
        # settled[x]: vertices with every (open/closed) neighbour at id <= x
        reach = [max(iter_bits(m)) for m in self.nbhd]
        self.settled = [
            sum(1 << u for u in range(size) if reach[u] <= x) for x in range(size)
        ]

    def _choices(self, last: int, remaining: int) -> range:
        size = self.g.num_vertices
        if not self.prefilter:
            return range(last + 1, size - remaining + 1)
        n = self.g.n
        copy = last >> 2 if last >= 0 else -1
        lo = max(last + 1, 4 * (n - remaining))
        hi = min(4 * (copy + 2) - 1, size - remaining)
        return range(lo, hi + 1)

    def prefixes(self, k: int, depth: int) -> list[tuple[int, int, int, int]]:
        """Partial states ``(mask, picked, last, cover)`` after ``depth`` picks,
        in lexicographic order.  Each seeds a contiguous range of the layer."""
        out = []
        depth = min(depth, k)

        def rec(mask, picked, last, cover):
            if picked == depth:
                out.append((mask, picked, last, cover))
                return
            for x in self._choices(last, k - picked):
                c2 = cover | self.nbhd[x]
                if self.prefilter and self.settled[x] & ~c2:
                    continue
                rec(mask | 1 << x, picked + 1, x, c2)

        rec(0, 0, -1, 0)
        return out

    def scan(
        self,
        k: int,
        visit: Callable[[int], bool],
        state: tuple[int, int, int, int] = (0, 0, -1, 0),
    ) -> tuple[int, int | None]:
        """Feed every completion of ``state`` to ``visit`` until it returns True.

        Returns ``(leaves_examined, hit_mask_or_None)``.
        """
        full = self.g.full_mask
        nbhd = self.nbhd
        settled = self.settled
        prefilter = self.prefilter
        choices = self._choices
        examined = 0
        hit = None

        def rec(mask, picked, last, cover):
            nonlocal examined, hit
            if picked == k:
                examined += 1
                if (not prefilter or cover == full) and visit(mask):
                    hit = mask
                    return True
                return False
            for x in choices(last, k - picked):
                c2 = cover | nbhd[x]
                if prefilter and settled[x] & ~c2:
                    continue
                if rec(mask | 1 << x, picked + 1, x, c2):
                    return True
            return False

        rec(*state)
        return examined, hit

    def iter_masks(self, k: int) -> Iterator[int]:
        """Every mask the scan would hand to its visitor, in order."""
        found: list[int] = []

        def keep(mask):
            found.append(mask)
            return False

        self.scan(k, keep)
        return iter(found)


def _open_cover(variant: Variant) -> bool:
    return variant == Variant.TOTAL


# ------------------------------------------------------------ task layer
# Tasks are plain tuples so that they pickle; the graph is rebuilt (and
# cached) in each worker process.


def _set_visitor(g: FlowerSnark, variant: Variant) -> Callable[[int], bool]:
    pred = SET_PREDICATES[variant]
    return lambda mask: pred(g, mask)


def _guard_pairs(support: int, t: int) -> Iterator[tuple[int, int]]:
    ids = list(iter_bits(support))
    for twos in combinations(ids, t):
        tmask = 0
        for v in twos:
            tmask |= 1 << v
        yield support & ~tmask, tmask


def _run_set_task(task) -> tuple[int, int | None]:
    n, variant, k, prefilter, state = task
    g = build_flower_snark(n)
    space = SubsetSpace(g, prefilter, _open_cover(variant))
    return space.scan(k, _set_visitor(g, variant), state)


def _run_guard_task(task) -> tuple[int, tuple[int, int] | None]:
    n, variant, t, support_size, prefilter, state = task
    g = build_flower_snark(n)
    space = SubsetSpace(g, prefilter)
    pred = GUARD_PREDICATES[variant]
    examined = 0
    found = None

    def visit(support):
        nonlocal examined, found
        for ones, twos in _guard_pairs(support, t):
            examined += 1
            if pred(g, ones, twos):
                found = (ones, twos)
                return True
        return False

    space.scan(support_size, visit, state)
    return examined, found


def _run_range_task(task) -> tuple[int, int | None]:
    """Brute-force slice: k-subsets with lexicographic rank in [lo, hi)."""
    n, variant, k, lo, hi = task
    g = build_flower_snark(n)
    visit = _set_visitor(g, variant)
    examined = 0
    for combo in combinations_in_range(g.num_vertices, k, lo, hi):
        examined += 1
        mask = 0
        for v in combo:
            mask |= 1 << v
        if visit(mask):
            return examined, mask
    return examined, None


def _reduce(runner, tasks, workers: int, deterministic: bool):
    """Run tasks (each a contiguous lexicographic range, in order) and return
    ``(examined, first_hit)``.  In deterministic mode the hit is the one from
    the earliest range, which is the lexicographically least overall."""
    examined = 0
    if workers <= 1 or len(tasks) <= 1:
        for task in tasks:
            seen, hit = runner(task)
            examined += seen
            if hit is not None:
                return examined, hit
        return examined, None
    ctx = mp.get_context("fork") if "fork" in mp.get_all_start_methods() else None
    pool = ProcessPoolExecutor(max_workers=workers, mp_context=ctx)
    try:
        futures = [pool.submit(runner, task) for task in tasks]
        results = (f.result() for f in futures) if deterministic else (
            f.result() for f in as_completed(futures)
        )
        for seen, hit in results:
            examined += seen
            if hit is not None:
                return examined, hit
        return examined, None
    finally:
        pool.shutdown(wait=True, cancel_futures=True)


def _set_tasks(g, variant, k, prefilter, workers):
    if not prefilter:
        total = comb(g.num_vertices, k)
        parts = 1 if workers <= 1 else workers * 8
        return _run_range_task, [(g.n, variant, k, lo, hi) for lo, hi in split_ranks(total, parts)]
    if workers <= 1:
        states = [(0, 0, -1, 0)]
    else:
        states = SubsetSpace(g, prefilter, _open_cover(variant)).prefixes(k, 3)
    return _run_set_task, [(g.n, variant, k, prefilter, s) for s in states]


def scan_set_layer(
    g: FlowerSnark,
    variant: Variant,
    k: int,
    prefilter: bool = True,
    workers: int = 1,
    deterministic: bool = True,
) -> tuple[int, int | None]:
    runner, tasks = _set_tasks(g, variant, k, prefilter, workers)
    return _reduce(runner, tasks, workers, deterministic)


def scan_guard_layer(
    g: FlowerSnark,
    variant: Variant,
    weight: int,
    prefilter: bool = True,
    workers: int = 1,
    deterministic: bool = True,
) -> tuple[int, tuple[int, int] | None]:
    """Guard functions of the given weight: ``t`` vertices with two guards and
    ``weight - 2t`` with one, for ``t = 0, 1, ...``.  Within a stratum the
    support is scanned in lexicographic order, then the two-guard subset."""
    tasks = []
    space = SubsetSpace(g, prefilter)
    for t in range(weight // 2 + 1):
        support_size = weight - t
        if support_size > g.num_vertices or support_size < t:
            continue
        states = [(0, 0, -1, 0)] if workers <= 1 else space.prefixes(support_size, 3)
        tasks += [(g.n, variant, t, support_size, prefilter, s) for s in states]
    return _reduce(_run_guard_task, tasks, workers, deterministic)


# ------------------------------------------------------------ solvers


def _resolve(variant, workers):
    return Variant(variant), default_workers() if workers is None else max(1, workers)


def solve_min_set(
    g: FlowerSnark,
    variant: Variant | str,
    *,
    prefilter: bool = True,
    long_running: bool = False,
    workers: int | None = None,
    deterministic: bool = True,
) -> SolveResult:
    variant, workers = _resolve(variant, workers)
    if variant not in SET_VARIANTS:
        raise ValueError(f"{variant} is not a minimum-set variant")
    check_capacity(variant, g.n, long_running, prefilter)
    start = time.perf_counter()
    examined = 0
    for k in range(1, g.num_vertices + 1):
        seen, hit = scan_set_layer(g, variant, k, prefilter, workers, deterministic)
        examined += seen
        log.debug("%s n=%d k=%d examined=%d hit=%s", variant, g.n, k, seen, hit is not None)
        if hit is not None:
            return SolveResult(
                variant, g.n, k, VertexSet(hit, g.num_vertices), k - 1, examined,
                time.perf_counter() - start,
            )
    raise AssertionError("the full vertex set satisfies every set variant")


def solve_upper_domination(
    g: FlowerSnark,
    *,
    prefilter: bool = True,
    long_running: bool = False,
    workers: int | None = None,
    deterministic: bool = True,
) -> SolveResult:
    """Largest minimal dominating set, scanning sizes downward from 4n."""
    _, workers = _resolve(Variant.UPPER, workers)
    check_capacity(Variant.UPPER, g.n, long_running, prefilter)
    start = time.perf_counter()
    examined = 0
    for k in range(g.num_vertices, 0, -1):
        seen, hit = scan_set_layer(g, Variant.UPPER, k, prefilter, workers, deterministic)
        examined += seen
        if hit is not None:
            return SolveResult(
                Variant.UPPER, g.n, k, VertexSet(hit, g.num_vertices), k + 1, examined,
                time.perf_counter() - start,
            )
    raise AssertionError("some minimal dominating set always exists")


def solve_min_guard(
    g: FlowerSnark,
    variant: Variant | str,
    *,
    prefilter: bool = True,
    long_running: bool = False,
    workers: int | None = None,
    deterministic: bool = True,
) -> SolveResult:
    variant, workers = _resolve(variant, workers)
    if variant not in GUARD_VARIANTS:
        raise ValueError(f"{variant} is not a guard-function variant")
    check_capacity(variant, g.n, long_running, prefilter)
    if not prefilter:
        raise CapacityError("guard-function search always runs with the prefilter")
    start = time.perf_counter()
    examined = 0
    for weight in range(1, 2 * g.num_vertices + 1):
        seen, hit = scan_guard_layer(g, variant, weight, prefilter, workers, deterministic)
        examined += seen
        if hit is not None:
            f = GuardFunction.from_masks(hit[0], hit[1], g.num_vertices)
            return SolveResult(
                variant, g.n, weight, f, weight - 1, examined, time.perf_counter() - start
            )
    raise AssertionError("f = 1 everywhere is always valid")


def solve(g: FlowerSnark, variant: Variant | str, **kwargs) -> SolveResult:
    variant = Variant(variant)
    if variant in (Variant.UPPER, Variant.MINIMAL):
        return solve_upper_domination(g, **kwargs)
    if variant in GUARD_VARIANTS:
        return solve_min_guard(g, variant, **kwargs)
    return solve_min_set(g, variant, **kwargs)


def enumerate_valid_sets(
    g: FlowerSnark,
    variant: Variant | str,
    size: int,
    limit: int | None = None,
    prefilter: bool = True,
) -> list[VertexSet]:
    """All valid sets of exactly ``size`` vertices, lexicographic order."""
    variant = Variant(variant)
    if variant.takes_guards:
        raise ValueError(f"{variant} is a guard-function variant; use enumerate_valid_guards")
    if not 0 <= size <= g.num_vertices:
        raise ValueError(f"size {size} outside 0..{g.num_vertices}")
    pred = SET_PREDICATES[variant]
    found: list[VertexSet] = []

    def visit(mask):
        if pred(g, mask):
            found.append(VertexSet(mask, g.num_vertices))
            return limit is not None and len(found) >= limit
        return False

    if size == 0:
        if pred(g, 0):
            found.append(VertexSet(0, g.num_vertices))
        return found[:limit] if limit is not None else found
    SubsetSpace(g, prefilter, _open_cover(variant)).scan(size, visit)
    return found


def enumerate_valid_guards(
    g: FlowerSnark, variant: Variant | str, weight: int, limit: int | None = None
) -> list[GuardFunction]:
    """All valid guard functions of exactly the given weight."""
    variant = Variant(variant)
    if variant not in GUARD_VARIANTS:
        raise ValueError(f"{variant} is not a guard-function variant")
    pred = GUARD_PREDICATES[variant]
    space = SubsetSpace(g)
    found: list[GuardFunction] = []
    for t in range(weight // 2 + 1):
        support_size = weight - t
        if support_size > g.num_vertices or support_size < t:
            continue

        def visit(support):
            for ones, twos in _guard_pairs(support, t):
                if pred(g, ones, twos):
                    found.append(GuardFunction.from_masks(ones, twos, g.num_vertices))
                    if limit is not None and len(found) >= limit:
                        return True
            return False

        space.scan(support_size, visit)
        if limit is not None and len(found) >= limit:
            break
    return found


def replay_refutation(g: FlowerSnark, result: SolveResult) -> bool:
    """Re-scan the layer at ``proof_bound``; True when it is still empty."""
    if result.proof_bound < 1 or result.proof_bound > g.num_vertices * (
        2 if result.variant.takes_guards else 1
    ):
        return True
    if result.variant.takes_guards:
        return not enumerate_valid_guards(g, result.variant, result.proof_bound, limit=1)
    return not enumerate_valid_sets(g, result.variant, result.proof_bound, limit=1)
