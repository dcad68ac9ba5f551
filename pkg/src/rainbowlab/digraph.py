"""Functional digraph of ``x -> x^k mod n`` and the structure theorems about it."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .arith import DomainError, is_prime, multiplicative_order, support_condition, t_decomposition

MAX_MODULUS = 10**6


class UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))
        self.rank = [0] * size

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1


def functional_components(table) -> tuple[list[int], list[list[int]]]:
    """Weak components of the functional graph ``a -> table[a]``.

    Returns per-vertex component ids and the member lists, numbered in order
    of each component's smallest vertex.
    """
    n = len(table)
    uf = UnionFind(n)
    for a, b in enumerate(table):
        uf.union(a, b)
    label: dict[int, int] = {}
    comp_id = []
    members: list[list[int]] = []
    for a in range(n):
        root = uf.find(a)
        if root not in label:
            label[root] = len(members)
            members.append([])
        comp_id.append(label[root])
        members[label[root]].append(a)
    return comp_id, members


def power_table(n: int, k: int) -> list[int]:
    return [pow(a, k, n) for a in range(n)]


@dataclass(frozen=True, eq=False)
class PowerDigraph:
    n: int
    k: int
    successor: tuple[int, ...]
    # Components are numbered 0, 1, ... in order of their smallest vertex.
    component_id: tuple[int, ...]
    cycle_flag: tuple[bool, ...]
    component_count: int
    _members: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def components(self) -> tuple[tuple[int, ...], ...]:
        return self._members

    def component_of(self, a: int) -> tuple[int, ...]:
        return self._members[self.component_id[a % self.n]]

    def cycles(self) -> list[tuple[int, ...]]:
        """Every directed cycle, each listed from its smallest vertex in edge order."""
        seen = set()
        out = []
        for a in range(self.n):
            if not self.cycle_flag[a] or a in seen:
                continue
            cyc = [a]
            seen.add(a)
            b = self.successor[a]
            while b != a:
                cyc.append(b)
                seen.add(b)
                b = self.successor[b]
            out.append(tuple(cyc))
        return out

    def summary(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "component_count": self.component_count,
            "cycle_vertex_count": sum(self.cycle_flag),
            "components": [list(c) for c in self._members],
        }


def build(n: int, k: int) -> PowerDigraph:
    """Build ``G_n^k``: vertices ``0..n-1``, one edge ``a -> a^k mod n`` per vertex."""
    if not 2 <= n <= MAX_MODULUS:
        raise DomainError(f"modulus must be in [2, {MAX_MODULUS}], got {n}")
    if k < 2:
        raise DomainError(f"exponent must be at least 2, got {k}")
    succ = power_table(n, k)
    comp_id, members = functional_components(succ)

    # The image of f^m for any m >= n is exactly the set of cycle vertices;
    # f^(2^j) is obtained by repeated self-composition of the table.
    arr = np.asarray(succ, dtype=np.int64)
    power = arr
    steps = 1
    while steps < n:
        power = power[power]
        steps *= 2
    on_cycle = np.zeros(n, dtype=bool)
    on_cycle[power] = True

    return PowerDigraph(
        n=n,
        k=k,
        successor=tuple(succ),
        component_id=tuple(comp_id),
        cycle_flag=tuple(bool(x) for x in on_cycle),
        component_count=len(members),
        _members=tuple(tuple(m) for m in members),
    )


def cycle_vertices(g: PowerDigraph) -> set[int]:
    return {a for a in range(g.n) if g.cycle_flag[a]}


def predicted_cycle_vertices(p: int, k: int) -> set[int]:
    """Cycle vertices of ``G_p^k`` from multiplicative orders: 0 and every ``a`` with ``ord_p(a) | t``."""
    if not is_prime(p) or p < 3:
        raise DomainError(f"{p} is not an odd prime")
    t = t_decomposition(p - 1, k).t
    return {0} | {a for a in range(1, p) if t % multiplicative_order(a, p) == 0}


def predicted_vs_actual_cycle_count(p: int, k: int) -> tuple[int, int]:
    if p < 3 or not is_prime(p):
        raise DomainError(f"{p} is not an odd prime")
    predicted = t_decomposition(p - 1, k).t + 1
    actual = len(cycle_vertices(build(p, k)))
    return predicted, actual


class PredictionKind(enum.Enum):
    EXACTLY_TWO = "ExactlyTwo"
    EXACTLY_THREE = "ExactlyThree"
    MORE_THAN_PREDICTED = "MoreThanPredicted"
    OUT_OF_SCOPE = "OutOfTheoremScope"


@dataclass(frozen=True)
class ComponentPrediction:
    kind: PredictionKind
    reason: str

    @property
    def count(self) -> int | None:
        """The exact component count implied, if any."""
        return {PredictionKind.EXACTLY_TWO: 2, PredictionKind.EXACTLY_THREE: 3}.get(self.kind)


def component_prediction(p: int, k: int) -> ComponentPrediction:
    if k < 2:
        raise DomainError(f"exponent must be at least 2, got {k}")
    if p < 3 or not is_prime(p):
        return ComponentPrediction(PredictionKind.OUT_OF_SCOPE, f"{p} is not an odd prime")
    if k % 2 == 0:
        if support_condition(p, k):
            return ComponentPrediction(PredictionKind.EXACTLY_TWO, f"t = 1 for p-1 = {p - 1}, k = {k}")
        return ComponentPrediction(PredictionKind.MORE_THAN_PREDICTED, "t > 1, more than 2 components")
    if k == 3:
        return ComponentPrediction(PredictionKind.OUT_OF_SCOPE, "odd k must exceed 3")
    if support_condition(p, k):
        return ComponentPrediction(PredictionKind.EXACTLY_THREE, f"t = 2 for p-1 = {p - 1}, k = {k}")
    return ComponentPrediction(PredictionKind.MORE_THAN_PREDICTED, "t > 2, more than 3 components")


def export_dot(g: PowerDigraph, cluster: bool = True) -> str:
    lines = [f'digraph "G_{g.n}^{g.k}" {{']
    if cluster:
        for cid, members in enumerate(g.components):
            lines.append(f"  subgraph cluster_{cid} {{")
            lines.append(f'    label="component {cid}";')
            for a in members:
                shape = "doublecircle" if g.cycle_flag[a] else "circle"
                lines.append(f"    {a} [shape={shape}];")
            lines.append("  }")
    else:
        for a in range(g.n):
            lines.append(f"  {a};")
    for a, b in enumerate(g.successor):
        lines.append(f"  {a} -> {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
