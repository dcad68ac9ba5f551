"""Structural description of rainbow-free exact 3-colorings of Z_p.

For an odd prime ``p``, an exact 3-coloring of Z_p is rainbow-free for
``x - y = z^k`` exactly when

1. 0 is alone in its color class,
2. every component of ``G_p^k`` is monochromatic, and
3. ``c(a) == c(-a)`` for every ``a``.

This module checks those conditions on a given coloring, builds every
coloring that satisfies them straight from the digraph, and provides the
finer per-residue predicates used along the way.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .arith import DomainError, is_prime
from .coloring import Coloring, canonical_form
from .digraph import PowerDigraph, UnionFind, build, functional_components

ZERO_SINGLETON = "zero_singleton"
COMPONENTS_MONOCHROMATIC = "components_monochromatic"
NEGATION_SYMMETRIC = "negation_symmetric"


@dataclass
class StructuralReport:
    zero_singleton: bool
    components_monochromatic: bool
    negation_symmetric: bool
    counterexamples: list[tuple[str, list[int]]] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return self.zero_singleton and self.components_monochromatic and self.negation_symmetric

    def to_json(self) -> dict:
        return {
            ZERO_SINGLETON: self.zero_singleton,
            COMPONENTS_MONOCHROMATIC: self.components_monochromatic,
            NEGATION_SYMMETRIC: self.negation_symmetric,
            "overall": self.overall,
            "counterexamples": [{"condition": cond, "residues": res} for cond, res in self.counterexamples],
        }


def _require_prime(n: int) -> None:
    if n < 3 or not is_prime(n):
        raise DomainError(f"the classification only covers odd prime moduli, got {n}")


def structural_check(c: Coloring, g: PowerDigraph) -> StructuralReport:
    p = g.n
    _require_prime(p)
    if c.n != p:
        raise ValueError(f"coloring has {c.n} residues, digraph has {p}")
    col = c.colors
    bad: list[tuple[str, list[int]]] = []

    sharing_zero = [a for a in range(1, p) if col[a] == col[0]]
    if sharing_zero:
        bad.append((ZERO_SINGLETON, sharing_zero))

    mono = True
    for comp in g.components:
        if len({col[a] for a in comp}) > 1:
            mono = False
            bad.append((COMPONENTS_MONOCHROMATIC, list(comp)))

    asym = [a for a in range(1, (p + 1) // 2) if col[a] != col[p - a]]
    for a in asym:
        bad.append((NEGATION_SYMMETRIC, [a, p - a]))

    return StructuralReport(
        zero_singleton=not sharing_zero,
        components_monochromatic=mono,
        negation_symmetric=not asym,
        counterexamples=bad,
    )


def color_units(g: PowerDigraph) -> list[list[int]]:
    """Components merged with their negation images; the unit ``[0]`` comes first."""
    p = g.n
    uf = UnionFind(g.component_count)
    for a in range(1, p):
        uf.union(g.component_id[a], g.component_id[p - a])
    grouped: dict[int, list[int]] = {}
    for a in range(p):
        grouped.setdefault(uf.find(g.component_id[a]), []).append(a)
    return sorted(grouped.values())


def generate_rainbow_free(p: int, k: int) -> list[Coloring]:
    """Every canonical exact 3-coloring of Z_p meeting the three structural conditions.

    The ``{0}`` unit takes its own color and the remaining units are split
    into two nonempty groups in every possible way.
    """
    _require_prime(p)
    g = build(p, k)
    units = color_units(g)
    assert units[0] == [0], units[0]
    rest = units[1:]
    out = []
    # Unit rest[0] stays in group 1; the others choose group 1 or 2 by bit.
    for mask in range(1, 1 << max(len(rest) - 1, 0)):
        colors = [0] * p
        for i, unit in enumerate(rest):
            color = 2 if i and mask >> (i - 1) & 1 else 1
            for a in unit:
                colors[a] = color
        out.append(Coloring(canonical_form(colors), 3))
    return sorted(out, key=lambda c: c.colors)


def ak_sequence(p: int, a: int, k: int) -> list[int]:
    ak = pow(a, k, p)
    return [i * ak % p for i in range(p)]


def check_ak_dominance(c: Coloring, a: int, k: int) -> bool:
    """Does ``c(a)`` occur in every bichromatic run of ``0, a^k, 2a^k, ..., (p-1)a^k``?

    Runs are taken linearly, without wrapping from ``(p-1)a^k`` back to 0.  A
    color lies in every bichromatic run iff it lies in every adjacent pair of
    unequal colors, so only adjacent pairs are scanned.
    """
    p = c.n
    _require_prime(p)
    if a % p == 0:
        raise DomainError("a must be nonzero mod p")
    col = c.colors
    dom = col[a % p]
    seq = [col[v] for v in ak_sequence(p, a, k)]
    return all(u == v or dom in (u, v) for u, v in zip(seq, seq[1:]))


def generic_monochromatic_check(c: Coloring, f_table: Sequence[int]) -> bool:
    """Every component of ``a -> f_table[a]`` avoiding the color of 0 is monochromatic.

    A component that avoids ``c(0)`` but holds an edge ``a -> f(a)`` with two
    colors gives the rainbow solution ``(f(a), 0, a)`` of ``x - y = f(z)``.
    """
    if len(f_table) != c.n:
        raise ValueError("f_table must map Z_n to itself")
    col = c.colors
    zero = col[0]
    _, members = functional_components(list(f_table))
    for comp in members:
        seen = {col[a] for a in comp}
        if zero not in seen and len(seen) > 1:
            return False
    return True
