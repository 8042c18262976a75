"""Timing harnesses for the reduction and orbit-descent procedures.

Inputs are random determinant-1 matrices with entry valuations spread over
[-max_val, max_val]: a, b, c are drawn as p^e * unit and d = (1 + b c) / a,
which keeps the determinant exactly 1 while exercising vertices far from
the base point.  Per-trial RNGs are derived arithmetically from the master
seed so individual trials are reproducible in isolation.
"""

import random
import time
from dataclasses import dataclass

from .bttree import BruhatTitsTree
from .errors import DegenerateMatrix, PrecisionExhausted
from .fundamental import to_fundamental_domain
from .nielsen import reduce as reduce_basis
from .padic import PadicContext
from .projlinear import ProjMatrix


def random_unit(rng, ctx):
    while True:
        u = rng.randrange(1, ctx.modulus)
        if u % ctx.p != 0:
            return u


def random_padic(rng, ctx, max_val):
    e = rng.randint(-max_val, max_val)
    return ctx.from_valuation_unit(e, random_unit(rng, ctx))


def random_sl2(rng, ctx, max_val=10):
    """Random determinant-1 matrix; resamples the rare degenerate draws."""
    one = ctx.one()
    while True:
        a = random_padic(rng, ctx, max_val)
        b = random_padic(rng, ctx, max_val)
        c = random_padic(rng, ctx, max_val)
        try:
            d = (one + b * c) / a
            return ProjMatrix(ctx, a, b, c, d)
        except (DegenerateMatrix, PrecisionExhausted):
            continue


def _trial_rng(seed, param, trial):
    return random.Random((seed * 1000003 + param) * 1000003 + trial)


@dataclass
class BenchRow:
    kind: str
    param: int
    trials: int
    mean_seconds: float
    mean_iterations: float


def bench_reduce(p, sizes, trials, seed, precision=1000, max_val=10):
    """Mean wall time and pass count of the reduction per generator count."""
    ctx = PadicContext(p, precision)
    action = BruhatTitsTree(ctx)
    rows = []
    for k in sizes:
        total_s = 0.0
        total_iter = 0
        for t in range(trials):
            rng = _trial_rng(seed, k, t)
            gens = [random_sl2(rng, ctx, max_val) for _ in range(k)]
            t0 = time.perf_counter()
            out = reduce_basis(action, gens)
            total_s += time.perf_counter() - t0
            total_iter += out.iterations
        rows.append(BenchRow("reduce", k, trials, total_s / trials, total_iter / trials))
    return rows


def random_walk_vertex(action, rng, steps):
    """Endpoint of a non-backtracking walk: distance to the start is exactly
    the step count."""
    prev = None
    cur = action.base_vertex
    for _ in range(steps):
        options = [v for _, v in action.neighbors(cur) if v != prev]
        prev, cur = cur, rng.choice(options)
    return cur


def bench_orbit(p, distances, trials, seed, precision=1000, rank=2, max_val=3):
    """Mean wall time and word length of the orbit descent per start distance.

    A purely hyperbolic basis is drawn once (redrawing until the reduction
    certifies freeness at full rank); timing covers only the descent.
    """
    ctx = PadicContext(p, precision)
    action = BruhatTitsTree(ctx)
    attempt = 0
    while True:
        rng = _trial_rng(seed, -1, attempt)
        gens = [random_sl2(rng, ctx, max_val) for _ in range(rank)]
        out = reduce_basis(action, gens)
        if out.is_free_basis and len(out.basis) == rank:
            basis = out.elements
            break
        attempt += 1
    rows = []
    for d in distances:
        total_s = 0.0
        total_len = 0
        for t in range(trials):
            rng = _trial_rng(seed, d, t)
            w = random_walk_vertex(action, rng, d)
            t0 = time.perf_counter()
            _, word = to_fundamental_domain(action, basis, w, verify=False)
            total_s += time.perf_counter() - t0
            total_len += len(word)
        rows.append(BenchRow("orbit", d, trials, total_s / trials, total_len / trials))
    return rows


def rows_to_csv(rows):
    lines = ["kind,param,trials,mean_seconds,mean_iterations"]
    for r in rows:
        lines.append(
            f"{r.kind},{r.param},{r.trials},{r.mean_seconds:.6g},{r.mean_iterations:.6g}"
        )
    return "\n".join(lines) + "\n"
