"""Colorings of Z_n and detection of rainbow solutions to ``x - y = z^k``."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

# Report-layer names; algorithms only ever see the integers.
COLOR_NAMES = ("R", "G", "B", "Y", "P", "O")


@dataclass(frozen=True)
class Coloring:
    colors: tuple[int, ...]
    r: int

    def __post_init__(self):
        if any(not 0 <= c < self.r for c in self.colors):
            raise ValueError(f"color ids must lie in [0, {self.r})")

    @classmethod
    def of(cls, colors: Sequence[int], r: int | None = None) -> "Coloring":
        colors = tuple(int(c) for c in colors)
        return cls(colors, r if r is not None else max(colors, default=-1) + 1)

    @classmethod
    def from_classes(cls, n: int, classes: Sequence[Sequence[int]]) -> "Coloring":
        colors = [-1] * n
        for color, cls_members in enumerate(classes):
            for a in cls_members:
                colors[a % n] = color
        if -1 in colors:
            raise ValueError("classes do not cover Z_n")
        return cls(tuple(colors), len(classes))

    @property
    def n(self) -> int:
        return len(self.colors)

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.r)]
        for a, c in enumerate(self.colors):
            out[c].append(a)
        return out

    def canonical(self) -> "Coloring":
        return Coloring(canonical_form(self.colors), self.r)

    def with_color(self, a: int, color: int) -> "Coloring":
        colors = list(self.colors)
        colors[a] = color
        return Coloring(tuple(colors), max(self.r, color + 1))

    def to_json(self, k: int | None = None) -> dict:
        out: dict = {"n": self.n}
        if k is not None:
            out["k"] = k
        out["colors"] = list(self.colors)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Coloring":
        return cls.of(data["colors"], data.get("r"))

    def __str__(self) -> str:
        return " | ".join("{" + ",".join(map(str, c)) + "}" for c in self.classes())


@dataclass(frozen=True)
class RainbowCertificate:
    x: int
    y: int
    z: int

    def to_json(self) -> dict:
        return {"x": self.x, "y": self.y, "z": self.z}


def canonical_form(colors: Sequence[int]) -> tuple[int, ...]:
    """Relabel so colors appear in order of first occurrence (0, 1, 2, ...)."""
    relabel: dict[int, int] = {}
    return tuple(relabel.setdefault(c, len(relabel)) for c in colors)


def is_exact(c: Coloring) -> bool:
    return len(set(c.colors)) == c.r


@lru_cache(maxsize=256)
def kth_powers(n: int, k: int) -> tuple[int, ...]:
    return tuple(pow(z, k, n) for z in range(n))


@lru_cache(maxsize=64)
def triples_by_max(n: int, k: int) -> tuple[tuple[tuple[int, int, int], ...], ...]:
    """Solution triples ``(x, y, z)`` of ``x - y = z^k`` in Z_n grouped by ``max(x, y, z)``.

    Triples with ``z = 0`` or ``x = y`` are dropped since they can never be rainbow.
    Entry ``m`` holds exactly the triples that become fully assigned when the
    residues are colored in the order 0, 1, ..., m.
    """
    pk = kth_powers(n, k)
    groups: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    for z in range(1, n):
        zk = pk[z]
        if zk == 0:
            continue
        for y in range(n):
            x = (y + zk) % n
            groups[max(x, y, z)].append((x, y, z))
    return tuple(tuple(g) for g in groups)


def iter_rainbows(c: Coloring, k: int) -> Iterator[RainbowCertificate]:
    """All rainbow solutions, z ascending then y ascending."""
    n = c.n
    col = c.colors
    pk = kth_powers(n, k)
    for z in range(n):
        cz = col[z]
        zk = pk[z]
        for y in range(n):
            cy = col[y]
            if cy == cz:
                continue
            x = (y + zk) % n
            cx = col[x]
            if cx != cy and cx != cz:
                yield RainbowCertificate(x, y, z)


def find_rainbow_mod(c: Coloring, k: int) -> RainbowCertificate | None:
    return next(iter_rainbows(c, k), None)


def is_rainbow_free(c: Coloring, k: int) -> bool:
    return find_rainbow_mod(c, k) is None


def certificate_is_valid(c: Coloring, k: int, cert: RainbowCertificate) -> bool:
    n = c.n
    if (cert.x - cert.y - pow(cert.z, k, n)) % n:
        return False
    return len({c.colors[cert.x], c.colors[cert.y], c.colors[cert.z]}) == 3


def incremental_rainbow_check(colors: Sequence[int], n: int, k: int, newly_assigned: int) -> bool:
    """Did assigning ``colors[newly_assigned]`` complete a rainbow triple?

    ``colors`` must have residues ``0..newly_assigned`` assigned; later entries
    are ignored.
    """
    for x, y, z in triples_by_max(n, k)[newly_assigned]:
        cx, cy, cz = colors[x], colors[y], colors[z]
        if cx != cy and cx != cz and cy != cz:
            return True
    return False
