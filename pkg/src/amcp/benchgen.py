"""Synthetic block-structured dependency graphs.

Randomness comes from two independent ``random.Random`` (Mersenne Twister)
streams seeded with the strings ``"<seed>:edges"`` and ``"<seed>:perturb"``.
String seeding hashes with SHA-512 and only ``Random.random()`` is called,
both of which CPython keeps stable across releases, so fixtures regenerate
byte for byte.

Edge stream: one draw per ordered pair (i, j), i != j, in row-major order;
the pair becomes an edge of weight 1 when the draw is below p_in (same
block) or p_out (different blocks).

Perturbation stream: ``ceil(perturb_fraction * n)`` modules are picked by a
partial Fisher-Yates shuffle (one draw per pick), and each picked module is
moved to one of the other blocks (one draw per module).
"""

from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass

from .graph import DependencyGraph, Partition


@dataclass(frozen=True)
class BenchSpec:
    n: int
    blocks: int
    p_in: float
    p_out: float
    perturb_fraction: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if not 1 <= self.blocks <= self.n:
            raise ValueError("blocks must lie in [1, n]")
        if not 0.0 <= self.p_out <= self.p_in <= 1.0:
            raise ValueError("need 0 <= p_out <= p_in <= 1")
        if not 0.0 <= self.perturb_fraction <= 1.0:
            raise ValueError("perturb_fraction must lie in [0, 1]")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def to_json(self) -> dict:
        return asdict(self)


def module_names(n: int) -> tuple[str, ...]:
    width = len(str(n - 1))
    return tuple(f"m{i:0{width}d}" for i in range(n))


def block_labels(n: int, blocks: int) -> list[int]:
    """Contiguous near-even blocks; the first ``n % blocks`` get one extra."""
    base, extra = divmod(n, blocks)
    labels = []
    for b in range(blocks):
        labels.extend([b] * (base + (1 if b < extra else 0)))
    return labels


def _pick(rng: random.Random, upper: int) -> int:
    return min(int(rng.random() * upper), upper - 1)


def generate(spec: BenchSpec) -> tuple[DependencyGraph, Partition, Partition]:
    """Return (graph, ground truth, perturbed previous decomposition)."""
    n = spec.n
    truth = block_labels(n, spec.blocks)

    edges_rng = random.Random(f"{spec.seed}:edges")
    edges = {}
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            p = spec.p_in if truth[i] == truth[j] else spec.p_out
            if edges_rng.random() < p:
                edges[(i, j)] = 1

    previous = list(truth)
    # guard against float noise such as 0.1 * 30 = 3.0000000000000004
    count = min(n, math.ceil(spec.perturb_fraction * n - 1e-9))
    if spec.blocks > 1 and count > 0:
        perturb_rng = random.Random(f"{spec.seed}:perturb")
        pool = list(range(n))
        chosen = []
        for pos in range(count):
            swap = pos + _pick(perturb_rng, n - pos)
            pool[pos], pool[swap] = pool[swap], pool[pos]
            chosen.append(pool[pos])
        for module in chosen:
            offset = 1 + _pick(perturb_rng, spec.blocks - 1)
            previous[module] = (truth[module] + offset) % spec.blocks

    graph = DependencyGraph(module_names(n), edges)
    return graph, Partition(tuple(truth)), Partition(tuple(previous))
