"""Derivative-free search for functions with a large rearrangement-norm ratio.

The objective is the certified lower bound of the interval BMO norm of the
signed rearrangement divided by the exact dyadic BMO norm; by the 2^n
rearrangement inequality it can never exceed 2^n, and the search treats any
apparent violation as an implementation bug, not a discovery.  Multistart
simulated annealing on a dyadic-rational value lattice; fully deterministic
for a fixed seed, with one RNG stream per restart so restarts may run in any
order (or in parallel processes) without changing the result.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .dyadic import DyadicFunction, bmo_dyadic_norm
from .errors import InputError, PreconditionError
from .highprec import IV_E, upper_float
from .interval_bmo import interval_bmo_norm
from .johnnirenberg import jn_check
from .rearrangement import rearrange_signed

OBJECTIVES = ("ratio_thm1", "jn_B_probe")


@dataclass(frozen=True)
class SearchConfig:
    dim: int = 1
    depth: int = 3
    restarts: int = 16
    iterations: int = 2000
    seed: int = 0
    objective: str = "ratio_thm1"
    denom_bits: int = 12
    temp_initial: float = 0.5
    temp_final: float = 1e-3
    step_initial_bits: int = 2   # first moves alter cells by ~2^-2
    tol: float = 1e-9
    threads: int = 1

    def __post_init__(self):
        if self.restarts < 1 or self.iterations < 1:
            raise InputError("restarts and iterations must be >= 1")
        if self.objective not in OBJECTIVES:
            raise InputError(f"unknown objective {self.objective!r}; "
                             f"choose from {', '.join(OBJECTIVES)}")
        if self.dim < 1 or self.depth < 0:
            raise InputError("need dim >= 1 and depth >= 0")


@dataclass(frozen=True)
class SearchResult:
    best_function: DyadicFunction
    best_score: float
    best_score_exact: Fraction
    certificate: object
    trace: tuple
    objective: str
    hard_cap: float


def ratio_objective(f, tol=1e-9):
    """Certified lower bound of ||f_d||_* divided by the dyadic norm of f."""
    norm = bmo_dyadic_norm(f)
    if norm == 0:
        raise PreconditionError("the ratio is undefined for constant functions")
    bound = interval_bmo_norm(rearrange_signed(f), tol)
    ratio = bound.lower / norm
    cap = 1 << f.dim
    if float(ratio) > cap - 1e-6:
        # re-derive at tighter tolerance before declaring a contradiction
        recheck = interval_bmo_norm(rearrange_signed(f), tol / 100).lower / norm
        if recheck > cap:
            raise AssertionError(
                f"ratio {recheck} exceeds the proven cap {cap}; "
                f"this indicates a bug in the norm computation")
    return float(ratio)


def _ratio_exact(f, tol):
    norm = bmo_dyadic_norm(f)
    if norm == 0:
        return None
    return interval_bmo_norm(rearrange_signed(f), tol).lower / norm


def _jn_probe_score(f):
    """Largest measure / exp(-lam/(2^(n-1) e ||f||)) over a lambda grid.

    A lower estimate of the smallest admissible leading constant for this f;
    provably at most e.
    """
    norm = bmo_dyadic_norm(f)
    if norm == 0:
        return None
    spread = max(f.cells) - min(f.cells)
    if spread == 0:
        return None
    best = 0.0
    b = float(Fraction(1, 1 << (f.dim - 1))) / float(IV_E.mid)
    for i in range(1, 33):
        lam = 2 * spread * Fraction(i, 32)
        measure, _ = jn_check(f, lam)
        if measure == 0:
            continue
        implied = float(measure) * math.exp(float(lam) / float(norm) * b)
        best = max(best, implied)
    return best if best > 0 else None


def _score(f, cfg):
    if cfg.objective == "ratio_thm1":
        r = _ratio_exact(f, cfg.tol)
        if r is None:
            return None, None
        return float(r), r
    s = _jn_probe_score(f)
    if s is None:
        return None, None
    return s, Fraction(s)


def _canonicalize(cells):
    """Shift to exact zero mean, scale by a power of two so max|v| in (1/2, 1]."""
    mean = sum(cells, Fraction(0)) / len(cells)
    out = [v - mean for v in cells]
    top = max(abs(v) for v in out)
    if top == 0:
        return out
    scale = Fraction(1)
    while top * scale > 1:
        scale /= 2
    while top * scale <= Fraction(1, 2):
        scale *= 2
    return [v * scale for v in out]


def _quantize(cells, bits):
    den = 1 << bits
    return [Fraction(round(v * den), den) for v in cells]


def _random_start(rng, count, bits):
    den = 1 << bits
    return [Fraction(rng.randrange(-den, den + 1), den) for _ in range(count)]


def _run_restart(cfg, restart_index):
    rng = random.Random(cfg.seed * 1_000_003 + restart_index)
    count = 1 << (cfg.dim * cfg.depth)
    den = 1 << cfg.denom_bits

    def build(cells):
        return DyadicFunction(cfg.dim, cfg.depth, cells)

    cells = _quantize(_canonicalize(_random_start(rng, count, cfg.denom_bits)),
                      cfg.denom_bits)
    score, exact = _score(build(cells), cfg)
    retries = 0
    while score is None and retries < 64:
        cells = _quantize(_canonicalize(_random_start(rng, count, cfg.denom_bits)),
                          cfg.denom_bits)
        score, exact = _score(build(cells), cfg)
        retries += 1
    if score is None:
        return None
    best_cells, best_score, best_exact = list(cells), score, exact
    trace = [(restart_index, 0, best_score)]

    cooling = (cfg.temp_final / cfg.temp_initial) ** (1.0 / max(cfg.iterations - 1, 1))
    temp = cfg.temp_initial
    step_num = 1 << max(cfg.denom_bits - cfg.step_initial_bits, 0)
    for it in range(1, cfg.iterations + 1):
        trial = list(cells)
        for _ in range(1 + rng.randrange(2)):
            c = rng.randrange(count)
            mag = max(1, int(step_num * temp / cfg.temp_initial))
            trial[c] += Fraction(rng.choice((-1, 1)) * rng.randrange(1, mag + 1), den)
        trial = _quantize(_canonicalize(trial), cfg.denom_bits)
        new_score, new_exact = _score(build(trial), cfg)
        if new_score is not None:
            delta = new_score - score
            if delta >= 0 or rng.random() < math.exp(delta / temp):
                cells, score, exact = trial, new_score, new_exact
            if score > best_score:
                best_cells, best_score, best_exact = list(cells), score, exact
                trace.append((restart_index, it, best_score))
        temp *= cooling
    return best_cells, best_score, best_exact, trace


def search(cfg):
    """Multistart annealing; the final best is re-scored at tol/10."""
    results = []
    if cfg.threads > 1:
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            futures = [pool.submit(_run_restart, cfg, r)
                       for r in range(cfg.restarts)]
            results = [fut.result() for fut in futures]
    else:
        results = [_run_restart(cfg, r) for r in range(cfg.restarts)]

    best = None
    trace = []
    for res in results:  # ascending restart index: ties keep the earliest
        if res is None:
            continue
        trace.extend(res[3])
        if best is None or res[1] > best[1]:
            best = res
    if best is None:
        raise PreconditionError("no valid (non-constant) candidate was found")

    f = DyadicFunction(cfg.dim, cfg.depth, best[0])
    cap = float(1 << cfg.dim)
    if cfg.objective == "ratio_thm1":
        cert = interval_bmo_norm(rearrange_signed(f), cfg.tol / 10)
        norm = bmo_dyadic_norm(f)
        exact = cert.lower / norm
        score = float(exact)
        if score > cap:
            raise AssertionError(
                f"certified ratio {exact} exceeds the proven cap {cap}")
    else:
        cert = None
        exact = best[2]
        score = best[1]
        if score > upper_float(IV_E) + 1e-6:
            raise AssertionError(
                f"probe score {score} exceeds the proven constant e")
    return SearchResult(best_function=f, best_score=score,
                        best_score_exact=exact, certificate=cert,
                        trace=tuple(trace), objective=cfg.objective,
                        hard_cap=cap if cfg.objective == "ratio_thm1"
                        else upper_float(IV_E))
