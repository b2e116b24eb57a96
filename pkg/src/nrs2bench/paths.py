"""Centered paths, the radius function rho and product paths.

A centered path of radius r has vertices indexed -r, -r+2, ..., r with
edges pointing up in index.  Payloads are opaque.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence


@dataclass(frozen=True)
class CenteredPath:
    radius: int
    vertices: tuple

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("radius must be non-negative")
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if len(self.vertices) != self.radius + 1:
            raise ValueError(f"radius {self.radius} needs {self.radius + 1} vertices")

    @classmethod
    def from_indexed(cls, radius: int, payload_at) -> "CenteredPath":
        return cls(radius, tuple(payload_at(j) for j in range(-radius, radius + 1, 2)))

    def indices(self) -> range:
        return range(-self.radius, self.radius + 1, 2)

    def has_index(self, j: int) -> bool:
        return -self.radius <= j <= self.radius and (j + self.radius) % 2 == 0

    def __getitem__(self, j: int) -> Any:
        if not self.has_index(j):
            raise IndexError(f"index {j} not on a path of radius {self.radius}")
        return self.vertices[(j + self.radius) // 2]

    def items(self):
        return zip(self.indices(), self.vertices)

    def edges(self) -> list[tuple[int, int]]:
        return [(j, j + 2) for j in range(-self.radius, self.radius, 2)]

    @property
    def central(self) -> Any:
        if self.radius % 2:
            raise ValueError("odd radius: no central vertex")
        return self[0]


def rho(r1: int, r2: int, x: int, y: int) -> int:
    if y >= -x + r2 - r1:
        return r1 + y
    return r2 - x


def product_coordinates(r1: int, r2: int, k: int) -> list[tuple[int, int]]:
    """Index pairs (x, y) of the k-th product path, in path order.

    The path runs up the column x = -r1+2k from y = -r2 to the corner
    y = r2-2k, then right along that row to x = r1.
    """
    if not 0 <= k <= min(r1, r2):
        raise ValueError(f"k={k} outside 0..{min(r1, r2)}")
    x0, y0 = -r1 + 2 * k, r2 - 2 * k
    column = [(x0, y) for y in range(-r2, y0 + 1, 2)]
    row = [(x, y0) for x in range(x0 + 2, r1 + 1, 2)]
    return column + row


def product_path(p1: CenteredPath, p2: CenteredPath, k: int) -> CenteredPath:
    coords = product_coordinates(p1.radius, p2.radius, k)
    return CenteredPath(len(coords) - 1, tuple((p1[x], p2[y]) for x, y in coords))


def product_paths(p1: CenteredPath, p2: CenteredPath) -> list[CenteredPath]:
    return [product_path(p1, p2, k) for k in range(min(p1.radius, p2.radius) + 1)]


def locate(p1: CenteredPath, p2: CenteredPath, x: int, y: int) -> tuple[int, int]:
    """(k, j): the product path holding (P1(x), P2(y)) and the index there."""
    if not p1.has_index(x) or not p2.has_index(y):
        raise IndexError(f"({x}, {y}) is not a vertex pair")
    k = min((x + p1.radius) // 2, (p2.radius - y) // 2)
    return k, x + y


def check_product_lemma(r1: int, r2: int) -> list[str]:
    """All four centered-path facts for one radius pair; returns violations."""
    p1 = CenteredPath.from_indexed(r1, lambda j: ("a", j))
    p2 = CenteredPath.from_indexed(r2, lambda j: ("b", j))
    bad = []
    seen: dict[tuple, int] = {}
    for k in range(min(r1, r2) + 1):
        path = product_path(p1, p2, k)
        if path.radius != r1 + r2 - 2 * k:
            bad.append(f"r=({r1},{r2}) k={k}: radius {path.radius} != {r1 + r2 - 2 * k}")
        coords = product_coordinates(r1, r2, k)
        for (j, v), (x, y) in zip(path.items(), coords):
            if v in seen:
                bad.append(f"r=({r1},{r2}): vertex {(x, y)} in paths {seen[v]} and {k}")
            seen[v] = k
            if j != x + y:
                bad.append(f"r=({r1},{r2}) k={k}: vertex {(x, y)} has index {j}")
            if rho(r1, r2, x, y) != path.radius:
                bad.append(f"r=({r1},{r2}) k={k}: rho{(x, y)} = {rho(r1, r2, x, y)} != {path.radius}")
            if locate(p1, p2, x, y) != (k, j):
                bad.append(f"r=({r1},{r2}): locate{(x, y)} = {locate(p1, p2, x, y)} != {(k, j)}")
        if not check_edges(r1, r2, k):
            bad.append(f"r=({r1},{r2}) k={k}: consecutive vertices are not path edges")
    full = {(("a", x), ("b", y)) for x in p1.indices() for y in p2.indices()}
    if set(seen) != full:
        bad.append(f"r=({r1},{r2}): union misses {len(full - set(seen))} pairs")
    return bad


def check_edges(r1: int, r2: int, k: int) -> bool:
    """Consecutive vertices differ by one step of P1 or one step of P2."""
    coords = product_coordinates(r1, r2, k)
    for (xa, ya), (xb, yb) in zip(coords, coords[1:]):
        if (xb - xa, yb - ya) not in ((2, 0), (0, 2)):
            return False
    return True


def pair_grid(r1: int, r2: int) -> Sequence[tuple[int, int]]:
    return [(x, y) for x in range(-r1, r1 + 1, 2) for y in range(-r2, r2 + 1, 2)]
