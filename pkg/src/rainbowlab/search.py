"""Exhaustive search for rainbow-free exact colorings of Z_n and rainbow numbers.

Residues are colored in the order 0, 1, ..., n-1 and colorings are kept in
canonical form (a residue may take color ``j`` only if colors ``0..j-1``
already occur), so each class of label permutations is visited once.  A
branch is cut as soon as the newly colored residue completes a rainbow triple
or when too few residues remain to use every color.
"""

from __future__ import annotations

import logging
import os
import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field
from math import factorial

from .arith import is_prime, support_condition
from .coloring import Coloring, is_rainbow_free, triples_by_max

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**9
THREADS_ENV = "RAINBOWLAB_THREADS"


class BudgetExceeded(RuntimeError):
    def __init__(self, nodes: int):
        super().__init__(f"search node budget exceeded after {nodes} nodes")
        self.nodes = nodes


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


class _Search:
    """Depth-first search over canonical exact ``r``-colorings of Z_n."""

    def __init__(self, n: int, k: int, r: int, collect_all: bool, budget: int):
        self.n = n
        self.k = k
        self.r = r
        self.collect_all = collect_all
        self.budget = budget
        self.triples = triples_by_max(n, k)
        self.nodes = 0
        self.found: list[tuple[int, ...]] = []

    def run(self, prefix: tuple[int, ...] = (), stop_depth: int | None = None) -> list[tuple[int, ...]]:
        """Search below ``prefix`` (assumed valid); returns finished colorings or depth-``stop_depth`` prefixes."""
        colors = list(prefix) + [0] * (self.n - len(prefix))
        used = max(prefix, default=-1) + 1
        self._stop_depth = self.n if stop_depth is None else stop_depth
        self._dfs(colors, len(prefix), used)
        return self.found

    def _dfs(self, colors: list[int], m: int, used: int) -> bool:
        if m == self._stop_depth:
            self.found.append(tuple(colors[:m]))
            return not self.collect_all and m == self.n
        n, r = self.n, self.r
        after = n - m - 1
        triples = self.triples[m]
        for color in range(min(used + 1, r)):
            now_used = used + 1 if color == used else used
            if after < r - now_used:
                continue
            self.nodes += 1
            if self.nodes > self.budget:
                raise BudgetExceeded(self.nodes)
            colors[m] = color
            rainbow = False
            for x, y, z in triples:
                cx, cy, cz = colors[x], colors[y], colors[z]
                if cx != cy and cx != cz and cy != cz:
                    rainbow = True
                    break
            if rainbow:
                continue
            if self._dfs(colors, m + 1, now_used):
                return True
        return False


def _run_subtree(n, k, r, collect_all, budget, prefix):
    s = _Search(n, k, r, collect_all, budget)
    try:
        found = s.run(prefix)
    except BudgetExceeded:
        return None, s.nodes
    return found, s.nodes


@dataclass
class SearchOutcome:
    colorings: list[Coloring]
    nodes: int
    exceeded: bool = False


def search_colorings(
    n: int,
    k: int,
    r: int,
    collect_all: bool,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    split_depth: int = 6,
) -> SearchOutcome:
    """Canonical rainbow-free exact ``r``-colorings of Z_n: all of them, or the first one found.

    With ``workers > 1`` the tree is split on the colors of the first
    ``split_depth`` residues and the subtrees run in a process pool; the node
    budget then applies per subtree.
    """
    if n < 3 or r < 1:
        raise ValueError("need n >= 3 and r >= 1")
    if r > n:
        return SearchOutcome([], 0)
    if workers <= 1 or split_depth >= n:
        s = _Search(n, k, r, collect_all, budget)
        try:
            found = s.run()
        except BudgetExceeded:
            return SearchOutcome([], s.nodes, exceeded=True)
        return SearchOutcome([Coloring(c, r) for c in found], s.nodes)

    head = _Search(n, k, r, True, budget)
    prefixes = head.run(stop_depth=split_depth)
    nodes = head.nodes
    found: list[tuple[int, ...]] = []
    exceeded = False
    with ProcessPoolExecutor(max_workers=workers) as pool:
        pending = {pool.submit(_run_subtree, n, k, r, collect_all, budget, p): p for p in prefixes}
        results: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
        while pending:
            done, _ = wait(pending, return_when=FIRST_COMPLETED)
            for fut in done:
                prefix = pending.pop(fut)
                sub, sub_nodes = fut.result()
                nodes += sub_nodes
                if sub is None:
                    exceeded = True
                else:
                    results[prefix] = sub
            if exceeded or (not collect_all and any(results.values())):
                for fut in pending:
                    fut.cancel()
                break
    if exceeded:
        return SearchOutcome([], nodes, exceeded=True)
    for prefix in prefixes:
        found.extend(results.get(prefix, []))
    if not collect_all:
        found = found[:1]
    return SearchOutcome([Coloring(c, r) for c in found], nodes)


@dataclass
class Verdict:
    r: int
    kind: str  # "rainbow_free_witness", "exhausted" or "exceeded"
    nodes: int
    witness: Coloring | None = None

    def to_json(self) -> dict:
        out = {"r": self.r, "verdict": self.kind, "nodes": self.nodes}
        if self.witness is not None:
            out["witness"] = list(self.witness.colors)
        return out


@dataclass
class RbResult:
    n: int
    k: int
    rb: int | None
    evidence: list[Verdict] = field(default_factory=list)
    predicted: int | None = None
    wall_ms: float = 0.0

    @property
    def nodes_explored(self) -> int:
        return sum(v.nodes for v in self.evidence)

    @property
    def exceeded(self) -> bool:
        return any(v.kind == "exceeded" for v in self.evidence)

    @property
    def witness(self) -> Coloring | None:
        """Rainbow-free coloring with the most colors found (``rb - 1`` colors when ``rb`` is known)."""
        ws = [v.witness for v in self.evidence if v.witness is not None]
        return ws[-1] if ws else None

    @property
    def agrees(self) -> bool | None:
        if self.predicted is None or self.rb is None:
            return None
        return self.predicted == self.rb

    def to_json(self) -> dict:
        w = self.witness
        return {
            "n": self.n,
            "k": self.k,
            "rb": self.rb,
            "predicted": self.predicted,
            "witness": None if w is None else w.to_json(self.k),
            "evidence": [v.to_json() for v in self.evidence],
            "nodes_explored": self.nodes_explored,
            "wall_ms": round(self.wall_ms, 3),
        }


def rb_predicted(p: int, k: int) -> int | None:
    """Closed-form rainbow number of Z_p for ``x - y = z^k``, or None outside the theorems' scope.

    Covered: odd primes ``p`` with even ``k``, or odd ``k > 3``.
    """
    if p < 3 or k < 2 or not is_prime(p):
        return None
    if k % 2 == 1 and k <= 3:
        return None
    return 3 if support_condition(p, k) else 4


def rb_bruteforce(
    n: int,
    k: int,
    max_r: int = 4,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> RbResult:
    """Least ``r`` such that every exact ``r``-coloring of Z_n has a rainbow solution.

    ``rb`` is None when the search ran out of budget or every ``r <= max_r``
    still admits a rainbow-free coloring.
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    start = time.perf_counter()
    result = RbResult(n=n, k=k, rb=None, predicted=rb_predicted(n, k))
    for r in range(3, max_r + 1):
        out = search_colorings(n, k, r, collect_all=False, budget=budget, workers=workers)
        if out.exceeded:
            result.evidence.append(Verdict(r, "exceeded", out.nodes))
            log.warning("n=%d k=%d r=%d: budget exceeded", n, k, r)
            break
        if out.colorings:
            w = out.colorings[0]
            # Never report a witness that a full rescan would reject.
            assert is_rainbow_free(w, k), w
            result.evidence.append(Verdict(r, "rainbow_free_witness", out.nodes, w))
            continue
        result.evidence.append(Verdict(r, "exhausted", out.nodes))
        result.rb = r
        break
    result.wall_ms = (time.perf_counter() - start) * 1000
    return result


def enumerate_rainbow_free_3colorings(
    n: int, k: int, budget: int = DEFAULT_BUDGET, workers: int = 1
) -> list[Coloring]:
    """Every canonical rainbow-free exact 3-coloring of Z_n.

    Multiply the length by ``3! = 6`` for the number of labeled colorings.
    Raises :class:`BudgetExceeded` rather than return a partial list.
    """
    out = search_colorings(n, k, 3, collect_all=True, budget=budget, workers=workers)
    if out.exceeded:
        raise BudgetExceeded(out.nodes)
    for c in out.colorings:
        assert is_rainbow_free(c, k), c
    return out.colorings


def labeled_count(canonical: list[Coloring], r: int = 3) -> int:
    return len(canonical) * factorial(r)
