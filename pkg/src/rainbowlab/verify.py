"""Named invariant checks run by ``rainbowlab verify-all``."""

from __future__ import annotations

import time
from math import gcd
from dataclasses import dataclass, field
from typing import Callable

from .arith import frobenius_bound, multiplicative_order, primes_up_to, smallest_prime_factor, support_condition, t_decomposition
from .classify import check_ak_dominance, generate_rainbow_free, structural_check
from .coloring import Coloring, canonical_form
from .digraph import build, cycle_vertices
from .prefix import density_experiment, dominant_colors, find_rainbow_prefix, lift, string_shift_check
from .search import enumerate_rainbow_free_3colorings, rb_bruteforce, rb_predicted


@dataclass
class VerifyConfig:
    p_max: int = 500
    k_max: int = 12
    classify_primes: tuple[int, ...] = (5, 7, 11, 13)
    classify_ks: tuple[int, ...] = (2, 3, 4, 5)
    rb_cases: tuple[tuple[int, int, int], ...] = (
        (5, 2, 3), (7, 2, 4), (11, 2, 4), (13, 2, 4), (17, 2, 3), (11, 5, 3), (13, 5, 4),
    )
    composite_moduli: tuple[int, ...] = (9, 15)
    frobenius_max: int = 50
    lift_length: int = 500
    density_N: int = 200
    density_trials: int = 1000
    density_margin: str = "0.02"
    seed: int = 20240611
    self_test_negative: bool = False

    def to_json(self) -> dict:
        return {
            "p_max": self.p_max,
            "k_max": self.k_max,
            "classify_primes": list(self.classify_primes),
            "classify_ks": list(self.classify_ks),
            "rb_cases": [list(c) for c in self.rb_cases],
            "composite_moduli": list(self.composite_moduli),
            "frobenius_max": self.frobenius_max,
            "lift_length": self.lift_length,
            "density_N": self.density_N,
            "density_trials": self.density_trials,
            "density_margin": self.density_margin,
            "seed": self.seed,
            "self_test_negative": self.self_test_negative,
        }


@dataclass
class CheckResult:
    name: str
    passed: bool
    checked: int
    failures: list = field(default_factory=list)
    ms: float = 0.0

    def to_json(self, timing: bool = True) -> dict:
        out = {"name": self.name, "passed": self.passed, "checked": self.checked, "failures": self.failures[:20]}
        if timing:
            out["ms"] = round(self.ms, 1)
        return out


def brute_frobenius(i: int, j: int) -> int:
    """Largest non-representable multiple of gcd(i, j), by sieving sums up to ``i*j + i + j``."""
    limit = i * j + i + j
    ok = bytearray(limit + 1)
    ok[0] = 1
    for s in range(1, limit + 1):
        if (s >= i and ok[s - i]) or (s >= j and ok[s - j]):
            ok[s] = 1
    g = gcd(i, j)
    missing = [s for s in range(0, limit + 1, g) if not ok[s]]
    return max(missing) if missing else -g


def check_frobenius(cfg: VerifyConfig) -> CheckResult:
    fails = []
    m = cfg.frobenius_max
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            if frobenius_bound(i, j) != brute_frobenius(i, j):
                fails.append([i, j])
    return CheckResult("frobenius_oracle", not fails, m * m, fails)


def check_cycle_vertices(cfg: VerifyConfig) -> CheckResult:
    fails = []
    count = 0
    for p in primes_up_to(cfg.p_max)[1:]:
        orders = [0] + [multiplicative_order(a, p) for a in range(1, p)]
        for k in range(2, cfg.k_max + 1):
            t = t_decomposition(p - 1, k).t
            found = cycle_vertices(build(p, k))
            by_order = {0} | {a for a in range(1, p) if t % orders[a] == 0}
            count += 1
            if len(found) != t + 1 or found != by_order:
                fails.append([p, k])
    return CheckResult("cycle_vertex_theorem", not fails, count, fails)


def check_component_counts(cfg: VerifyConfig) -> CheckResult:
    fails = []
    count = 0
    for p in primes_up_to(cfg.p_max)[1:]:
        for k in range(2, cfg.k_max + 1):
            if k == 3:
                continue
            target = 2 if k % 2 == 0 else 3
            count += 1
            if (build(p, k).component_count == target) != support_condition(p, k):
                fails.append([p, k])
    return CheckResult("component_propositions", not fails, count, fails)


def all_canonical_colorings(n: int, r: int):
    """Every canonical exact ``r``-coloring of Z_n (restricted growth strings)."""
    colors = [0] * n

    def rec(m: int, used: int):
        if m == n:
            if used == r:
                yield tuple(colors)
            return
        if n - m < r - used:
            return
        for color in range(min(used + 1, r)):
            colors[m] = color
            yield from rec(m + 1, used + (color == used))

    yield from rec(1, 1)


def classification_sets(p: int, k: int, negative: bool = False) -> tuple[set, set, set]:
    """(brute-force enumeration, colorings passing structural_check, generated) as sets of color tuples."""
    brute = {c.colors for c in enumerate_rainbow_free_3colorings(p, k)}
    if negative and brute:
        first = min(brute)
        flipped = list(first)
        flipped[1] = (flipped[1] + 1) % 3
        brute = (brute - {first}) | {canonical_form(flipped)}
    g = build(p, k)
    structural = {cols for cols in all_canonical_colorings(p, 3) if structural_check(Coloring(cols, 3), g).overall}
    generated = {c.colors for c in generate_rainbow_free(p, k)}
    return brute, structural, generated


def check_classification(cfg: VerifyConfig) -> CheckResult:
    fails = []
    count = 0
    for p in cfg.classify_primes:
        for k in cfg.classify_ks:
            brute, structural, generated = classification_sets(p, k, cfg.self_test_negative)
            count += 1
            if not brute == structural == generated:
                fails.append({"p": p, "k": k, "brute": len(brute), "structural": len(structural), "generated": len(generated)})
    return CheckResult("classification_set_equality", not fails, count, fails)


def check_rb(cfg: VerifyConfig) -> CheckResult:
    fails = []
    for p, k, expected in cfg.rb_cases:
        res = rb_bruteforce(p, k, 4)
        if res.rb != expected or rb_predicted(p, k) != expected:
            fails.append({"p": p, "k": k, "brute": res.rb, "predicted": rb_predicted(p, k), "expected": expected})
    return CheckResult("rb_agreement", not fails, len(cfg.rb_cases), fails)


def check_min_class(cfg: VerifyConfig) -> CheckResult:
    fails = []
    count = 0
    for p in cfg.classify_primes:
        for k in cfg.classify_ks:
            for c in enumerate_rainbow_free_3colorings(p, k):
                count += 1
                if min(map(len, c.classes())) != 1:
                    fails.append({"n": p, "k": k, "colors": list(c.colors)})
    for n in cfg.composite_moduli:
        bound = n // smallest_prime_factor(n)
        for c in enumerate_rainbow_free_3colorings(n, 2):
            count += 1
            if min(map(len, c.classes())) > bound:
                fails.append({"n": n, "k": 2, "colors": list(c.colors)})
    return CheckResult("min_class_bounds", not fails, count, fails)


def _rainbow_free_pool(cfg: VerifyConfig):
    for p in cfg.classify_primes:
        for k in cfg.classify_ks:
            for c in enumerate_rainbow_free_3colorings(p, k):
                yield p, k, c


def check_lift(cfg: VerifyConfig) -> CheckResult:
    fails = []
    count = 0
    for p, k, c in _rainbow_free_pool(cfg):
        count += 1
        hit = find_rainbow_prefix(lift(c, cfg.lift_length), k)
        if hit is not None:
            fails.append({"p": p, "k": k, "colors": list(c.colors), "rainbow": list(hit)})
    return CheckResult("lift_soundness", not fails, count, fails)


def check_density(cfg: VerifyConfig) -> CheckResult:
    rep = density_experiment(2, cfg.density_N, cfg.density_trials, cfg.seed, cfg.density_margin)
    passed = rep.feasible and rep.with_rainbow == cfg.density_trials
    return CheckResult("density_experiment", passed, cfg.density_trials, rep.exceptions)


def check_structural_lemmas(cfg: VerifyConfig) -> CheckResult:
    fails = []
    count = 0
    for p, k, c in _rainbow_free_pool(cfg):
        count += 1
        col = c.colors
        if any(col[a] != col[p - a] for a in range(1, p)):
            fails.append({"p": p, "k": k, "lemma": "negation", "colors": list(col)})
        if not all(check_ak_dominance(c, a, k) for a in range(1, p)):
            fails.append({"p": p, "k": k, "lemma": "ak_dominance", "colors": list(col)})
        lifted = lift(c, cfg.density_N)
        dom = dominant_colors(lifted)
        if len(dom) != 1 or string_shift_check(lifted, k, next(iter(dom))):
            fails.append({"p": p, "k": k, "lemma": "string_shift", "colors": list(col)})
    return CheckResult("structural_lemmas", not fails, count, fails)


CHECKS: dict[str, Callable[[VerifyConfig], CheckResult]] = {
    "frobenius_oracle": check_frobenius,
    "cycle_vertex_theorem": check_cycle_vertices,
    "component_propositions": check_component_counts,
    "classification_set_equality": check_classification,
    "rb_agreement": check_rb,
    "min_class_bounds": check_min_class,
    "lift_soundness": check_lift,
    "density_experiment": check_density,
    "structural_lemmas": check_structural_lemmas,
}


def run_all(cfg: VerifyConfig, only: list[str] | None = None) -> list[CheckResult]:
    results = []
    for name, fn in CHECKS.items():
        if only and name not in only:
            continue
        start = time.perf_counter()
        res = fn(cfg)
        res.ms = (time.perf_counter() - start) * 1000
        results.append(res)
    return results
