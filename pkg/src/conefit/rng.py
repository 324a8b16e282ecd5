"""Deterministic random primitives with a fully documented stream layout.

Synthetic data generation and anchor sampling must be reproducible not just
across runs but across independent implementations, so instead of relying on
any particular library generator this module pins down the exact bit-level
algorithm:

* Generator: SplitMix64. The 64-bit state advances by the golden gamma
  ``0x9E3779B97F4A7C15`` and each output is the Stafford mix13 finalizer of
  the new state.
* Uniform doubles take the top 53 bits of one output: ``(u >> 11) * 2**-53``
  lies in ``[0, 1)``.
* Gaussians come from the Box-Muller transform. One pair of uniforms
  ``(u1, u2)`` yields ``r*cos(2*pi*u2)`` then ``r*sin(2*pi*u2)`` with
  ``r = sqrt(-2*ln(u1))``; ``u1`` is shifted into ``(0, 1]`` so the log is
  finite. A vector of ``d`` gaussians consumes ``ceil(d/2)`` pairs in
  coordinate order and discards the unused sine half when ``d`` is odd.
* Sub-streams: ``child_seeds(seed, n)[i]`` is the ``(i+1)``-th raw output of
  a parent SplitMix64 seeded with ``seed``. Item ``i`` of a synthetic
  dataset draws from ``SplitMix64(child_seeds(noise_seed, n)[i])``, so
  generation may be partitioned by item index without changing the output.
* Bounded integers use rejection sampling on the raw 64-bit output, so
  ``next_below`` is exactly uniform.
"""

from __future__ import annotations

import math

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_TWO_PI = 2.0 * math.pi


class SplitMix64:
    """SplitMix64 generator; see the module docstring for the contract."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_uint64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def next_unit(self) -> float:
        """Uniform double in [0, 1)."""
        return (self.next_uint64() >> 11) * 2.0**-53

    def next_gaussian_pair(self) -> tuple[float, float]:
        """One Box-Muller draw: two independent standard normals."""
        u1 = ((self.next_uint64() >> 11) + 1) * 2.0**-53
        u2 = self.next_unit()
        r = math.sqrt(-2.0 * math.log(u1))
        return r * math.cos(_TWO_PI * u2), r * math.sin(_TWO_PI * u2)

    def next_below(self, n: int) -> int:
        """Uniform integer in [0, n) via rejection on the raw output."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = _MASK64 + 1 - ((_MASK64 + 1) % n)
        while True:
            u = self.next_uint64()
            if u < limit:
                return u % n


def child_seeds(seed: int, n: int) -> list[int]:
    """Seeds for ``n`` decorrelated sub-streams of a parent stream."""
    parent = SplitMix64(seed)
    return [parent.next_uint64() for _ in range(n)]


def gaussian_vector(dim: int, seed: int) -> list[float]:
    """``dim`` standard normals drawn from ``SplitMix64(seed)``."""
    gen = SplitMix64(seed)
    out: list[float] = []
    while len(out) < dim:
        z0, z1 = gen.next_gaussian_pair()
        out.append(z0)
        if len(out) < dim:
            out.append(z1)
    return out


def sample_without_replacement(items: list, k: int, seed: int) -> list:
    """First ``k`` entries of a seeded partial Fisher-Yates shuffle.

    Draw ``i`` swaps position ``i`` with position ``i + next_below(n - i)``.
    """
    if k < 0 or k > len(items):
        raise ValueError("sample size out of range")
    pool = list(items)
    gen = SplitMix64(seed)
    for i in range(k):
        j = i + gen.next_below(len(pool) - i)
        pool[i], pool[j] = pool[j], pool[i]
    return pool[:k]
