"""Finite prefixes [1..N] of the naturals: rainbow scans, dominance, runs and densities.

Positions are 1-based throughout.  Statements about upper densities or
infinite progressions have no finite decision procedure; what is offered here
are exact finite counterparts meant for experiments.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .coloring import Coloring


@dataclass(frozen=True)
class PrefixColoring:
    colors: tuple[int, ...]  # colors[i - 1] is the color of position i

    def __post_init__(self):
        if not self.colors:
            raise ValueError("a prefix coloring needs at least one position")
        if any(not 0 <= c <= 2 for c in self.colors):
            raise ValueError("prefix colors must be 0, 1 or 2")

    @classmethod
    def of(cls, colors: Iterable[int]) -> "PrefixColoring":
        return cls(tuple(int(c) for c in colors))

    @property
    def N(self) -> int:
        return len(self.colors)

    def __getitem__(self, i: int) -> int:
        if not 1 <= i <= len(self.colors):
            raise IndexError(i)
        return self.colors[i - 1]

    def positions(self, color: int) -> list[int]:
        return [i for i, c in enumerate(self.colors, start=1) if c == color]


def lift(zc: Coloring, N: int) -> PrefixColoring:
    """Periodic coloring ``i -> zc(i mod n)`` of [1..N]."""
    if N < 1:
        raise ValueError("N must be positive")
    n = zc.n
    return PrefixColoring(tuple(zc.colors[i % n] for i in range(1, N + 1)))


def find_rainbow_prefix(c: PrefixColoring, k: int) -> tuple[int, int, int] | None:
    """First ``(x, y, z)`` with ``x - y = z^k``, ``x <= N`` and three colors; z ascending, then y."""
    col = (None,) + c.colors
    N = c.N
    z = 1
    while z <= N and z**k < N:
        zk = z**k
        cz = col[z]
        for y in range(1, N - zk + 1):
            cy = col[y]
            if cy == cz:
                continue
            cx = col[y + zk]
            if cx != cy and cx != cz:
                return (y + zk, y, z)
        z += 1
    return None


def dominant_colors(c: PrefixColoring) -> set[int]:
    """Colors lying in every bichromatic run; all present colors if no run is bichromatic.

    Every bichromatic run contains an adjacent pair of unequal colors and such
    a pair is itself a bichromatic run, so intersecting over adjacent pairs
    gives the same set.
    """
    col = c.colors
    dominant: set[int] | None = None
    for u, v in zip(col, col[1:]):
        if u != v:
            dominant = {u, v} if dominant is None else dominant & {u, v}
            if not dominant:
                break
    return set(col) if dominant is None else dominant


def string_decomposition(c: PrefixColoring) -> list[tuple[int, int, int]]:
    """Maximal monochromatic runs as ``(position, length, color)``."""
    runs = []
    start = 1
    col = c.colors
    for i in range(1, len(col) + 1):
        if i == len(col) or col[i] != col[start - 1]:
            runs.append((start, i + 1 - start, col[start - 1]))
            start = i + 1
    return runs


def string_shift_check(c: PrefixColoring, k: int, dominant: int) -> list[tuple[int, int, int]]:
    """Violations of run propagation: ``(run position, j, +1 or -1)``.

    For ``j`` of one nondominant color and a maximal run at ``i`` of length
    ``l`` in the other nondominant color, the window of length ``l`` at
    ``i + j^k`` (and at ``i - j^k``) must be one nondominant color whenever it
    fits inside [1..N].  ``dominant`` should come from :func:`dominant_colors`;
    on a rainbow-free prefix the result is then empty.
    """
    col = (None,) + c.colors
    N = c.N
    nondominant = [x for x in range(3) if x != dominant]
    runs = string_decomposition(c)
    out = []
    for j in range(1, N + 1):
        cj = col[j]
        if cj == dominant:
            continue
        jk = j**k
        if jk >= N:
            break
        other = nondominant[1] if cj == nondominant[0] else nondominant[0]
        for i, length, color in runs:
            if color != other:
                continue
            for direction in (1, -1):
                start = i + direction * jk
                if start < 1 or start + length - 1 > N:
                    continue
                window = set(col[start : start + length])
                if len(window) != 1 or dominant in window:
                    out.append((i, j, direction))
    return out


def small_gap(class_positions: Sequence[int], n0: int, search_from: int = 0) -> tuple[int, int] | None:
    """First ``j > search_from`` in the class with ``j + d`` also in it for some ``d <= n0 - 1``."""
    if n0 < 2:
        raise ValueError("n0 must be at least 2")
    members = set(class_positions)
    for j in sorted(members):
        if j <= search_from:
            continue
        for d in range(1, n0):
            if j + d in members:
                return (j, d)
    return None


def coprime_pair(positions: Iterable[int]) -> tuple[int, int] | None:
    """Lexicographically least pair ``j1 < j2`` with ``gcd(j1, j2) == 1``."""
    pos = sorted(set(positions))
    for a, j1 in enumerate(pos):
        for j2 in pos[a + 1 :]:
            if gcd(j1, j2) == 1:
                return (j1, j2)
    return None


def coprime_pair_in_class(c: PrefixColoring, color: int) -> tuple[int, int] | None:
    return coprime_pair(c.positions(color))


def longest_monochromatic_ap(c: PrefixColoring, difference: int, color: int) -> tuple[int, int]:
    """Longest progression ``i, i+d, i+2d, ...`` of one color inside [1..N], as ``(start, length)``.

    Exploration aid only: no finite prefix decides whether an infinite
    progression exists.
    """
    if difference < 1:
        raise ValueError("difference must be positive")
    best = (0, 0)
    col = (None,) + c.colors
    for start in range(1, min(difference, c.N) + 1):
        run_start, run = start, 0
        for i in range(start, c.N + 1, difference):
            if col[i] == color:
                if run == 0:
                    run_start = i
                run += 1
                if run > best[1]:
                    best = (run_start, run)
            else:
                run = 0
    return best


def density_threshold(k: int) -> Fraction:
    """``(4^s - 1) / (3 * 4^s)`` with ``s = k // 2``."""
    if k < 2:
        raise ValueError("k must be at least 2")
    s = k // 2
    return Fraction(4**s - 1, 3 * 4**s)


@dataclass
class DensityProfile:
    counts: np.ndarray  # counts[n - 1, color] = size of the class inside [1..n]
    threshold: Fraction

    @property
    def N(self) -> int:
        return self.counts.shape[0]

    @property
    def final_densities(self) -> list[Fraction]:
        return [Fraction(int(x), self.N) for x in self.counts[-1]]

    @property
    def min_final_density(self) -> Fraction:
        return min(self.final_densities)

    def csv_rows(self) -> list[tuple[int, int, int, int]]:
        return [(n, int(r), int(g), int(b)) for n, (r, g, b) in enumerate(self.counts.tolist(), start=1)]


def density_profile(c: PrefixColoring, k: int) -> DensityProfile:
    onehot = np.zeros((c.N, 3), dtype=np.int64)
    onehot[np.arange(c.N), np.asarray(c.colors)] = 1
    return DensityProfile(counts=np.cumsum(onehot, axis=0), threshold=density_threshold(k))


def density_target(k: int, margin: float | Fraction) -> Fraction:
    return density_threshold(k) + Fraction(str(margin))


def meets_density_target(c: PrefixColoring, k: int, margin: float | Fraction = Fraction(0)) -> bool:
    return density_profile(c, k).min_final_density > density_target(k, margin)


def _random_dense_coloring(rng: np.random.Generator, N: int, need: int, attempts: int) -> tuple[int, ...]:
    for _ in range(attempts):
        colors = rng.integers(0, 3, size=N)
        if np.bincount(colors, minlength=3).min() >= need:
            return tuple(colors.tolist())
    # Balanced fallback: fixed minimum per class, the rest uniform, then shuffled.
    extra = rng.integers(0, 3, size=N - 3 * need)
    colors = np.concatenate([np.repeat(np.arange(3), need), extra])
    rng.shuffle(colors)
    return tuple(colors.tolist())


@dataclass
class DensityExperiment:
    k: int
    N: int
    trials: int
    seed: int
    margin: str
    threshold: Fraction
    target: Fraction
    feasible: bool = True
    with_rainbow: int = 0
    exceptions: list[list[int]] = field(default_factory=list)

    @property
    def without_rainbow(self) -> int:
        return len(self.exceptions)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "N": self.N,
            "trials": self.trials,
            "seed": self.seed,
            "margin": self.margin,
            "threshold": str(self.threshold),
            "target": str(self.target),
            "feasible": self.feasible,
            "with_rainbow": self.with_rainbow,
            "without_rainbow": self.without_rainbow,
            "exceptions": self.exceptions,
        }


def density_experiment(
    k: int, N: int, trials: int, seed: int, margin: float | Fraction = 0.02, attempts: int = 1000
) -> DensityExperiment:
    """Random exact 3-colorings of [1..N] with every class density above threshold + margin, scanned for rainbows.

    Each trial draws from its own child of ``numpy.random.SeedSequence(seed)``,
    so trial ``i`` is reproducible on its own.  A target that no coloring of
    [1..N] can meet is reported as ``feasible = False`` with zero trials run.
    """
    target = density_target(k, margin)
    report = DensityExperiment(
        k=k, N=N, trials=trials, seed=seed, margin=str(margin), threshold=density_threshold(k), target=target
    )
    # Smallest class size whose density strictly exceeds the target.
    need = int(target * N) + 1
    if 3 * need > N:
        report.feasible = False
        return report
    for child in np.random.SeedSequence(seed).spawn(trials):
        rng = np.random.default_rng(child)
        c = PrefixColoring(_random_dense_coloring(rng, N, need, attempts))
        if find_rainbow_prefix(c, k) is None:
            report.exceptions.append(list(c.colors))
        else:
            report.with_rainbow += 1
    return report
