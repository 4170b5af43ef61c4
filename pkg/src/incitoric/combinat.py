"""Canonical enumeration and ranking of subsets, derangements and two-row
standard Young tableaux.

Colex order is the single global subset order used everywhere in the
package: a k-subset S ranks as sum(C(s_i - 1, i)) over its sorted elements
s_1 < ... < s_k, so the pairs of [4] enumerate as 12, 13, 23, 14, 24, 34.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterator, Sequence

from .errors import BadParameters, RankOutOfRange


def colex_rank(members: Sequence[int]) -> int:
    s = tuple(members)
    if list(s) != sorted(set(s)):
        raise BadParameters("subset must be strictly increasing")
    return sum(comb(x - 1, i + 1) for i, x in enumerate(s))


def colex_unrank(n: int, k: int, r: int) -> tuple:
    if not 0 <= r < comb(n, k):
        raise RankOutOfRange(f"rank {r} outside [0, C({n},{k}))")
    out = []
    for i in range(k, 0, -1):
        # largest m with C(m - 1, i) <= r
        m = i
        while comb(m, i) <= r:
            m += 1
        out.append(m)
        r -= comb(m - 1, i)
    out.reverse()
    return tuple(out)


def subsets_colex(n: int, k: int) -> Iterator[tuple]:
    """All k-subsets of [1..n] in colex order."""

    def gen(size: int, cap: int) -> Iterator[tuple]:
        if size == 0:
            yield ()
            return
        for top in range(size, cap + 1):
            for rest in gen(size - 1, top - 1):
                yield rest + (top,)

    return gen(k, n)


def subset_label(s: Sequence[int], n: int) -> str:
    """Concatenated digits for n <= 9 (the c_136 style), commas otherwise."""
    if n <= 9:
        return "".join(str(x) for x in s)
    return ",".join(str(x) for x in s)


def parse_subset_label(label: str, n: int) -> tuple:
    if n <= 9 and "," not in label:
        return tuple(int(ch) for ch in label.strip())
    return tuple(int(p) for p in label.split(","))


@dataclass(frozen=True)
class Derangement:
    """Fixed-point-free permutation with its canonical cycle data."""

    n: int
    images: tuple  # images[i-1] = sigma(i)
    cycles: tuple  # smallest-element-first within and between cycles
    t_count: int  # number of cycles
    s_count: int  # number of transpositions among them

    @property
    def sign(self) -> int:
        return -1 if (self.n - self.t_count) % 2 else 1

    def apply(self, i: int) -> int:
        return self.images[i - 1]

    def inverse(self) -> "Derangement":
        inv = [0] * self.n
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return derangement_from_images(tuple(inv))


def _cycle_decomposition(images: Sequence[int]) -> tuple:
    n = len(images)
    seen = [False] * n
    cycles = []
    for start in range(1, n + 1):
        if seen[start - 1]:
            continue
        cyc = [start]
        seen[start - 1] = True
        j = images[start - 1]
        while j != start:
            cyc.append(j)
            seen[j - 1] = True
            j = images[j - 1]
        cycles.append(tuple(cyc))
    return tuple(cycles)


def derangement_from_images(images: Sequence[int]) -> Derangement:
    images = tuple(images)
    n = len(images)
    if sorted(images) != list(range(1, n + 1)):
        raise BadParameters("not a permutation of [1..n]")
    if any(images[i - 1] == i for i in range(1, n + 1)):
        raise BadParameters("permutation has a fixed point")
    cycles = _cycle_decomposition(images)
    return Derangement(
        n, images, cycles, len(cycles), sum(1 for c in cycles if len(c) == 2)
    )


def derangements(n: int) -> Iterator[Derangement]:
    """All derangements of [1..n], lexicographic in the image tuple."""
    if n < 2:
        raise BadParameters("derangements need n >= 2")

    used = [False] * (n + 1)
    images: list = []

    def backtrack(i: int) -> Iterator[Derangement]:
        if i > n:
            yield derangement_from_images(tuple(images))
            return
        for v in range(1, n + 1):
            if v == i or used[v]:
                continue
            used[v] = True
            images.append(v)
            yield from backtrack(i + 1)
            images.pop()
            used[v] = False

    yield from backtrack(1)


def derangement_count(n: int) -> int:
    if n == 0:
        return 1
    if n == 1:
        return 0
    a, b = 1, 0
    for m in range(2, n + 1):
        a, b = b, (m - 1) * (a + b)
    return b


def cycle_stats(d: Derangement) -> tuple:
    return d.t_count, d.s_count


def permutation_sign(images: Sequence[int]) -> int:
    cycles = _cycle_decomposition(images)
    return -1 if (len(images) - len(cycles)) % 2 else 1


@dataclass(frozen=True)
class TwoRowTableau:
    top_row: tuple
    bottom_row: tuple

    def is_standard(self) -> bool:
        top, bot = self.top_row, self.bottom_row
        entries = sorted(top + bot)
        if entries != list(range(1, len(entries) + 1)):
            return False
        if list(top) != sorted(top) or list(bot) != sorted(bot):
            return False
        return all(top[i] < bot[i] for i in range(len(bot)))


def standard_two_row_tableaux(n: int, s: int) -> Iterator[TwoRowTableau]:
    """All standard tableaux of shape (n - s, s), bottom rows in colex order."""
    if 2 * s > n:
        raise BadParameters("shape (n-s, s) needs 2s <= n")
    if s == 0:
        yield TwoRowTableau(tuple(range(1, n + 1)), ())
        return
    for bottom in subsets_colex(n, s):
        top = tuple(x for x in range(1, n + 1) if x not in bottom)
        t = TwoRowTableau(top, bottom)
        if t.is_standard():
            yield t
