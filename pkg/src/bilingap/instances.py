"""Seeded instance families: random +/-1 graphs, bit-inner-product graphs, cycles, paths.

Random families draw one splitmix64 output per edge in lexicographic (i, j)
order and map the low bit to a sign with bit 0 -> +1, so every instance is
reproducible from (family, n, seed) alone.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from .errors import CapacityError, InputError
from .graph import MAX_VERTICES, SignedWeightedGraph, read_instance
from .rng import SplitMix64


def _check_n(n: int, low: int = 2) -> None:
    if not isinstance(n, int) or n < low:
        raise InputError(f"vertex count must be an integer >= {low}, got {n!r}")
    if n > MAX_VERTICES:
        raise CapacityError(f"vertex count {n} exceeds the bitmask cap of {MAX_VERTICES}")


def random_pm1_complete(n: int, seed: int) -> SignedWeightedGraph:
    """Complete graph on n vertices with independent uniform +/-1 weights."""
    _check_n(n)
    rng = SplitMix64(seed)
    edges = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            edges.append((i, j, float(rng.next_sign())))
    return SignedWeightedGraph(n, tuple(edges))


def hadamard_instance(n: int) -> SignedWeightedGraph:
    """Complete graph with a_ij = (-1)^<bits(i-1), bits(j-1)> over k = ceil(log2 n) bits.

    Bit vectors are little-endian: i-1 = i_1 2^0 + i_2 2^1 + ...  The weights
    form the off-diagonal part of a sign matrix with pairwise nearly
    orthogonal rows, which pins every cut weight of the whole graph inside
    [-n^{3/2}/sqrt(2), n^{3/2}/sqrt(2)].
    """
    _check_n(n)
    edges = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            parity = ((i - 1) & (j - 1)).bit_count() & 1
            edges.append((i, j, -1.0 if parity else 1.0))
    return SignedWeightedGraph(n, tuple(edges))


def random_pm1_bipartite(n_per_side: int, seed: int) -> SignedWeightedGraph:
    """Complete bipartite graph between {1..m} and {m+1..2m} with uniform +/-1 weights."""
    if not isinstance(n_per_side, int) or n_per_side < 1:
        raise InputError(f"side size must be a positive integer, got {n_per_side!r}")
    if 2 * n_per_side > MAX_VERTICES:
        raise CapacityError(
            f"2*{n_per_side} vertices exceed the bitmask cap of {MAX_VERTICES}"
        )
    rng = SplitMix64(seed)
    m = n_per_side
    edges = []
    for i in range(1, m + 1):
        for j in range(m + 1, 2 * m + 1):
            edges.append((i, j, float(rng.next_sign())))
    return SignedWeightedGraph(2 * m, tuple(edges))


def _check_signs(signs, count: int, what: str):
    signs = tuple(float(s) for s in signs)
    if len(signs) != count:
        raise InputError(f"{what} needs exactly {count} signs, got {len(signs)}")
    if any(s not in (1.0, -1.0) for s in signs):
        raise InputError(f"{what} signs must be +1 or -1, got {signs}")
    return signs


def signed_cycle(n: int, signs) -> SignedWeightedGraph:
    """Cycle 1-2-...-n-1 with unit-magnitude signed weights.

    signs[k] is the sign of the k-th edge along the traversal, i.e. edge
    {k+1, k+2} for k < n-1 and the closing edge {1, n} for k = n-1.
    """
    _check_n(n, low=3)
    signs = _check_signs(signs, n, f"cycle on {n} vertices")
    edges = [(k + 1, k + 2, signs[k]) for k in range(n - 1)]
    edges.append((1, n, signs[n - 1]))
    return SignedWeightedGraph(n, tuple(edges))


def signed_path(n: int, signs) -> SignedWeightedGraph:
    """Path 1-2-...-n with unit-magnitude signed weights; signs[k] is edge {k+1, k+2}."""
    _check_n(n)
    signs = _check_signs(signs, n - 1, f"path on {n} vertices")
    edges = [(k + 1, k + 2, signs[k]) for k in range(n - 1)]
    return SignedWeightedGraph(n, tuple(edges))


INSTANCE_FAMILIES = (
    "random_pm1_complete",
    "hadamard",
    "random_pm1_bipartite",
    "cycle",
    "path",
    "custom_file",
)


@dataclass(frozen=True)
class InstanceSpec:
    """Declarative description of one instance, serializable for experiment configs.

    For the bipartite family n is the size of one side (the graph has 2n
    vertices).  signs are required for cycle/path, seed for the random
    families, path for custom_file.
    """

    family: str
    n: int = 0
    seed: int | None = None
    signs: tuple[float, ...] | None = None
    path: str | None = None

    def __post_init__(self) -> None:
        if self.family not in INSTANCE_FAMILIES:
            raise InputError(f"unknown family {self.family!r}; expected one of {INSTANCE_FAMILIES}")
        if self.family in ("random_pm1_complete", "random_pm1_bipartite") and self.seed is None:
            raise InputError(f"family {self.family!r} requires a seed")
        if self.family in ("cycle", "path") and self.signs is None:
            raise InputError(f"family {self.family!r} requires signs")
        if self.family == "custom_file" and not self.path:
            raise InputError("family 'custom_file' requires a file path")
        if self.signs is not None:
            object.__setattr__(self, "signs", tuple(float(s) for s in self.signs))

    def build(self) -> SignedWeightedGraph:
        if self.family == "random_pm1_complete":
            return random_pm1_complete(self.n, self.seed)
        if self.family == "hadamard":
            return hadamard_instance(self.n)
        if self.family == "random_pm1_bipartite":
            return random_pm1_bipartite(self.n, self.seed)
        if self.family == "cycle":
            return signed_cycle(self.n, self.signs)
        if self.family == "path":
            return signed_path(self.n, self.signs)
        return read_instance(Path(self.path))

    def to_json_dict(self) -> dict:
        out: dict = {"family": self.family, "n": self.n}
        if self.seed is not None:
            out["seed"] = self.seed
        if self.signs is not None:
            out["signs"] = list(self.signs)
        if self.path is not None:
            out["path"] = self.path
        return out

    @classmethod
    def from_json_dict(cls, data: dict) -> "InstanceSpec":
        if not isinstance(data, dict) or "family" not in data:
            raise InputError('instance spec JSON must be an object with a "family"')
        unknown = set(data) - {"family", "n", "seed", "signs", "path"}
        if unknown:
            raise InputError(f"unknown instance spec keys: {sorted(unknown)}")
        return cls(
            family=data["family"],
            n=data.get("n", 0),
            seed=data.get("seed"),
            signs=tuple(data["signs"]) if data.get("signs") is not None else None,
            path=data.get("path"),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def loads(cls, text: str) -> "InstanceSpec":
        try:
            return cls.from_json_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid instance spec JSON: {exc}") from None


def hadamard_discrepancy_bound(n: int) -> float:
    """Upper bound n^{3/2}/sqrt(2) on |cut weight| for the bit-inner-product instance."""
    return n**1.5 / math.sqrt(2.0)
