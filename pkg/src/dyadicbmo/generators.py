"""Seeded random dyadic-function generators for tests, search and the CLI.

Three kinds: independent uniform cell values on a dyadic lattice, sorted
nonincreasing 1-d profiles, and multiplicative cascades targeting a requested
oscillation-to-mean modulus (verified exactly before the function is emitted,
with retries at shrinking spread).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .dyadic import DyadicFunction, _encode
from .errors import GenerationError, InputError
from .gurov import gr_membership

KINDS = ("uniform-cells", "monotone-1d", "cascade-gr")


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    dim: int
    depth: int
    seed: int = 0
    low: Fraction = Fraction(-8)
    high: Fraction = Fraction(8)
    denom_bits: int = 6
    target_eps: Fraction = Fraction(1, 8)
    multipliers: tuple = ()   # cascade factor set; empty = adaptive spread
    cascade_retries: int = 64

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown generator kind {self.kind!r}; "
                             f"choose from {', '.join(KINDS)}")
        if self.dim < 1 or self.depth < 0:
            raise InputError("need dim >= 1 and depth >= 0")
        if self.kind == "monotone-1d" and self.dim != 1:
            raise InputError("monotone-1d generates one-dimensional functions")
        object.__setattr__(self, "low", Fraction(self.low))
        object.__setattr__(self, "high", Fraction(self.high))
        object.__setattr__(self, "target_eps", Fraction(self.target_eps))
        object.__setattr__(self, "multipliers",
                           tuple(Fraction(m) for m in self.multipliers))
        if self.low > self.high:
            raise InputError("value range is empty")
        if self.kind == "cascade-gr":
            if not 0 < self.target_eps < 2:
                raise InputError("cascade target eps must lie in (0, 2)")
            if any(m <= 0 for m in self.multipliers):
                raise InputError("cascade multipliers must be positive")


def _uniform_values(rng, count, low, high, bits):
    steps = 1 << bits
    span = high - low
    return [low + span * Fraction(rng.randrange(steps + 1), steps)
            for _ in range(count)]


def _cascade(rng, dim, depth, spread_bits, spread, multipliers):
    """Multiplicative cascade: each child value = parent * factor near 1."""

    def draw_factor():
        if multipliers:
            return rng.choice(multipliers)
        return 1 + spread * Fraction(
            rng.randrange(-(1 << spread_bits), (1 << spread_bits) + 1),
            1 << spread_bits)

    values = {(): Fraction(1)}
    level = [()]
    for _ in range(depth):
        nxt = []
        for node in level:
            parent = values[node]
            for delta in product((0, 1), repeat=dim):
                child = node + (delta,)
                values[child] = parent * draw_factor()
                nxt.append(child)
        level = nxt
    cells = [Fraction(0)] * (1 << (dim * depth))
    for node in level:
        idx = tuple(0 for _ in range(dim))
        for deltas in node:
            idx = tuple(2 * i + d for i, d in zip(idx, deltas))
        cells[_encode(idx, depth)] = values[node]
    return cells


def generate(spec):
    """Deterministic function for the given spec; exact post-verification
    of the cascade target."""
    rng = random.Random(spec.seed)
    count = 1 << (spec.dim * spec.depth)
    if spec.kind == "uniform-cells":
        return DyadicFunction(spec.dim, spec.depth,
                              _uniform_values(rng, count, spec.low, spec.high,
                                              spec.denom_bits))
    if spec.kind == "monotone-1d":
        vals = _uniform_values(rng, count, spec.low, spec.high, spec.denom_bits)
        return DyadicFunction(1, spec.depth, sorted(vals, reverse=True))
    # cascade-gr
    spread = min(Fraction(1, 8), spec.target_eps / 4)
    for _ in range(spec.cascade_retries):
        cells = _cascade(rng, spec.dim, spec.depth, spec.denom_bits, spread,
                         spec.multipliers)
        f = DyadicFunction(spec.dim, spec.depth, cells)
        if gr_membership(f) <= spec.target_eps:
            return f
        spread /= 2
    raise GenerationError(
        f"could not reach modulus target {spec.target_eps} within "
        f"{spec.cascade_retries} attempts")
