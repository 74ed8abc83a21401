"""Shared fixtures: seeded random functions and independent oracles.

Oracles recompute quantities from first principles (geometric cube
membership, explicit sums, dense grids) without touching the package's
flat-index machinery, so agreement is meaningful.
"""

import random
from fractions import Fraction
from itertools import product

import pytest

from dyadicbmo import DyadicCubeId, DyadicFunction

# (dim, depth) palettes for random corpora; weights favor small grids with a
# deterministic sprinkle of the large desk-scale sizes.
SIZES_SMALL = [(1, 0), (1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2), (3, 1)]
SIZES_MEDIUM = [(1, 5), (1, 6), (2, 3), (3, 2)]
SIZES_LARGE = [(2, 4), (3, 3)]


def random_function(rng, dim, depth, lo=-8, hi=8, denom_bits=4):
    den = 1 << denom_bits
    cells = [Fraction(rng.randrange(lo * den, hi * den + 1), den)
             for _ in range(1 << (dim * depth))]
    return DyadicFunction(dim, depth, cells)


def random_nonneg(rng, dim, depth, hi=8, denom_bits=4):
    return random_function(rng, dim, depth, lo=0, hi=hi, denom_bits=denom_bits)


def corpus(seed, count, nonneg=False, with_large=True):
    """Deterministic list of `count` random functions, mostly small sizes."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        if with_large and i == 0:
            dim, depth = (1, 6)
        elif with_large and i == 1:
            dim, depth = SIZES_LARGE[seed % len(SIZES_LARGE)]
        elif with_large and i == 2:
            dim, depth = (3, 4)  # the full stated size cap
        elif i % 25 == 3:
            dim, depth = SIZES_MEDIUM[rng.randrange(len(SIZES_MEDIUM))]
        else:
            dim, depth = SIZES_SMALL[rng.randrange(len(SIZES_SMALL))]
        maker = random_nonneg if nonneg else random_function
        out.append(maker(rng, dim, depth))
    return out


def random_cube(rng, f):
    level = rng.randrange(f.depth + 1)
    index = tuple(rng.randrange(1 << level) for _ in range(f.dim))
    return DyadicCubeId(level, index)


# -- independent oracles ----------------------------------------------------

def cube_cells_oracle(f, q):
    """Cells inside q by geometric containment of cell corners."""
    side = Fraction(1, 1 << f.depth)
    qside = Fraction(1, 1 << q.level)
    out = []
    for flat in range(len(f.cells)):
        rest = flat
        inside = True
        for m in range(f.dim):
            i = rest % (1 << f.depth)
            rest //= 1 << f.depth
            lo, hi = i * side, (i + 1) * side
            qlo, qhi = q.index[m] * qside, (q.index[m] + 1) * qside
            if not (qlo <= lo and hi <= qhi):
                inside = False
                break
        if inside:
            out.append(flat)
    return out


def average_oracle(f, q):
    cells = cube_cells_oracle(f, q)
    return sum((f.cells[c] for c in cells), Fraction(0)) / len(cells)


def oscillation_oracle(f, q):
    cells = cube_cells_oracle(f, q)
    avg = average_oracle(f, q)
    return sum((abs(f.cells[c] - avg) for c in cells), Fraction(0)) / len(cells)


def all_cubes_oracle(f):
    for level in range(f.depth + 1):
        for index in product(range(1 << level), repeat=f.dim):
            yield DyadicCubeId(level, index)


def bmo_norm_oracle(f):
    return max(oscillation_oracle(f, q) for q in all_cubes_oracle(f))


def maximal_oracle(f):
    """Per-cell max of |f| averages over the chain of ancestors."""
    out = []
    side = Fraction(1, 1 << f.depth)
    absf = DyadicFunction(f.dim, f.depth, [abs(v) for v in f.cells])
    for flat in range(len(f.cells)):
        rest = flat
        coords = []
        for m in range(f.dim):
            coords.append(rest % (1 << f.depth))
            rest //= 1 << f.depth
        best = None
        for level in range(f.depth + 1):
            q = DyadicCubeId(level, tuple(c >> (f.depth - level) for c in coords))
            avg = average_oracle(absf, q)
            best = avg if best is None else max(best, avg)
        out.append(best)
    return out


def grid_bmo_lower_oracle(g, extra_points=24):
    """Dense-grid lower bound for the interval BMO sup of a step function."""
    from dyadicbmo import interval_mean_oscillation
    pts = set(g.breakpoints)
    for k in range(extra_points + 1):
        pts.add(Fraction(k, extra_points))
    for a, b in zip(sorted(pts), sorted(pts)[1:]):
        pts_mid = (a + b) / 2
        pts.add(pts_mid)
    pts = sorted(pts)
    best = Fraction(0)
    for i, a in enumerate(pts):
        for b in pts[i + 1:]:
            best = max(best, interval_mean_oscillation(g, a, b))
    return best


@pytest.fixture
def rng():
    return random.Random(20260809)
