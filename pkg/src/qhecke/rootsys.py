"""Finite Weyl groups realized as permutations of their root systems.

A group element is stored as the permutation it induces on the full list of
roots (positives first, then their negatives in the same order).  Length is
the number of positive roots sent negative, multiplication is permutation
composition, and descent sets are read off from images/preimages of the
simple roots.  ``ElementTable`` interns the whole group with dense integer
ids ordered by (length, permutation), which every heavier module indexes by.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

import numpy as np

from .errors import ConfigurationError, ResourceLimitError

_RANK_RANGE = {"A": (1, None), "B": (2, None), "D": (4, None), "E": (6, 8), "F": (4, 4), "G": (2, 2)}


@dataclass(frozen=True)
class CoxeterType:
    """A finite Weyl group type, e.g. B5.  Family 'B' covers the C series."""

    family: str
    rank: int

    def __post_init__(self):
        lo, hi = _RANK_RANGE.get(self.family, (None, None))
        if lo is None:
            raise ConfigurationError(f"unknown family {self.family!r}")
        if self.rank < lo or (hi is not None and self.rank > hi):
            raise ConfigurationError(f"rank {self.rank} out of range for family {self.family}")

    @classmethod
    def parse(cls, text: str) -> "CoxeterType":
        m = re.fullmatch(r"([A-Ga-g])\s*(\d+)", text.strip())
        if not m:
            raise ConfigurationError(f"cannot parse Coxeter type {text!r}")
        family = m.group(1).upper()
        if family == "C":  # same Weyl group as B
            family = "B"
        return cls(family, int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def degrees(ctype: CoxeterType) -> list[int]:
    """Degrees of the basic invariants; their product is the group order."""
    n = ctype.rank
    table = {
        "A": list(range(2, n + 2)),
        "B": list(range(2, 2 * n + 1, 2)),
        "D": list(range(2, 2 * n - 1, 2)) + [n],
        "F": [2, 6, 8, 12],
        "G": [2, 6],
    }
    if ctype.family == "E":
        table["E"] = {
            6: [2, 5, 6, 8, 9, 12],
            7: [2, 6, 8, 10, 12, 14, 18],
            8: [2, 8, 12, 14, 18, 20, 24, 30],
        }[n]
    return sorted(table[ctype.family])


def group_order(ctype: CoxeterType) -> int:
    return math.prod(degrees(ctype))


def cartan_matrix(ctype: CoxeterType) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix C with s_i(v) = v - (sum_j C[i][j] v_j) e_i in root coords."""
    n = ctype.rank
    C = [[2 * (i == j) for j in range(n)] for i in range(n)]

    def edge(i, j, cij=-1, cji=-1):
        C[i][j] = cij
        C[j][i] = cji

    if ctype.family in ("A", "B", "G"):
        for i in range(n - 1):
            edge(i, i + 1)
        if ctype.family == "B":
            C[n - 1][n - 2] = -2  # last simple root is short
        if ctype.family == "G":
            C[0][1] = -3
    elif ctype.family == "D":
        for i in range(n - 2):
            edge(i, i + 1)
        edge(n - 3, n - 1)
    elif ctype.family == "E":
        for a, b in [(0, 2), (2, 3), (3, 4), (1, 3)][: 4 if n > 5 else 0]:
            edge(a, b)
        for i in range(4, n - 1):
            edge(i, i + 1)
    elif ctype.family == "F":
        edge(0, 1)
        edge(1, 2, cij=-1, cji=-2)  # double bond, roots 2 and 3 short
        edge(2, 3)
    return tuple(tuple(row) for row in C)


@dataclass(frozen=True)
class GroupElement:
    """A Weyl group element: permutation of root indices plus cached length."""

    perm: tuple[int, ...]
    length: int


class RootDatum:
    """Root system data and element-level group operations for one type."""

    def __init__(self, ctype: CoxeterType):
        self.ctype = ctype
        self.rank = ctype.rank
        self.cartan = cartan_matrix(ctype)
        pos = self._positive_roots()
        self.nu = len(pos)
        self.roots: tuple[tuple[int, ...], ...] = tuple(pos + [tuple(-c for c in r) for r in pos])
        self._index = {r: i for i, r in enumerate(self.roots)}
        self._simple_perms = tuple(self._reflection_perm(i) for i in range(self.rank))
        self.coxeter_number = 2 * self.nu // self.rank

    def _apply_simple(self, i: int, coords: tuple[int, ...]) -> tuple[int, ...]:
        c = sum(self.cartan[i][j] * coords[j] for j in range(self.rank))
        out = list(coords)
        out[i] -= c
        return tuple(out)

    def _positive_roots(self) -> list[tuple[int, ...]]:
        simples = [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]
        pos = set(simples)
        frontier = list(simples)
        while frontier:
            nxt = []
            for r in frontier:
                for i in range(self.rank):
                    img = self._apply_simple(i, r)
                    if img not in pos and any(c > 0 for c in img):
                        pos.add(img)
                        nxt.append(img)
            frontier = nxt
        rest = sorted(pos - set(simples), key=lambda r: (sum(r), r))
        return simples + rest

    def _reflection_perm(self, i: int) -> tuple[int, ...]:
        return tuple(self._index[self._apply_simple(i, r)] for r in self.roots)

    # -- element constructors ------------------------------------------------

    def _wrap(self, perm: tuple[int, ...]) -> GroupElement:
        length = sum(1 for r in range(self.nu) if perm[r] >= self.nu)
        return GroupElement(perm, length)

    def identity(self) -> GroupElement:
        return GroupElement(tuple(range(2 * self.nu)), 0)

    def simple(self, i: int) -> GroupElement:
        return GroupElement(self._simple_perms[i], 1)

    def multiply(self, x: GroupElement, y: GroupElement) -> GroupElement:
        """Product xy, acting on roots as x after y."""
        return self._wrap(tuple(x.perm[p] for p in y.perm))

    def inverse(self, x: GroupElement) -> GroupElement:
        inv = [0] * len(x.perm)
        for r, p in enumerate(x.perm):
            inv[p] = r
        return GroupElement(tuple(inv), x.length)

    def from_word(self, word: list[int]) -> GroupElement:
        x = self.identity()
        for i in word:
            x = self.multiply(x, self.simple(i))
        return x

    # -- length, descents, words ----------------------------------------------

    def right_descents(self, x: GroupElement) -> set[int]:
        """Generators i with |x s_i| < |x|, i.e. x(alpha_i) negative."""
        return {i for i in range(self.rank) if x.perm[i] >= self.nu}

    def left_descents(self, x: GroupElement) -> set[int]:
        """Generators i with |s_i x| < |x|, i.e. x^-1(alpha_i) negative."""
        inv = self.inverse(x)
        return {i for i in range(self.rank) if inv.perm[i] >= self.nu}

    def reduced_word(self, x: GroupElement) -> list[int]:
        """Lexicographically smallest reduced word, by stripping left descents."""
        word = []
        while x.length:
            i = min(self.left_descents(x))
            word.append(i)
            x = self.multiply(self.simple(i), x)
        return word

    def support(self, x: GroupElement) -> frozenset[int]:
        """Letters of any reduced word; independent of the word chosen."""
        return frozenset(self.reduced_word(x))

    def longest_element(self) -> GroupElement:
        x = self.identity()
        while x.length < self.nu:
            i = next(i for i in range(self.rank) if x.perm[i] < self.nu)
            x = self.multiply(x, self.simple(i))
        return x


class ElementTable:
    """The whole group interned with dense ids sorted by (length, perm).

    Ids are deterministic across runs: breadth-first by length with rows in
    lexicographic order inside each length level.
    """

    def __init__(self, datum: RootDatum, memory_budget: int | None = None):
        self.datum = datum
        self.rank = datum.rank
        self.nu = datum.nu
        expected = group_order(datum.ctype)
        nroots = 2 * datum.nu
        need = expected * (nroots * (1 if nroots <= 255 else 2) + 8 * self.rank + 36 + nroots // 2)
        if memory_budget is not None and need > memory_budget:
            raise ResourceLimitError(
                f"{datum.ctype}: ~{need / 2 ** 20:.0f} MiB for {expected} elements "
                f"exceeds budget {memory_budget / 2 ** 20:.0f} MiB"
            )
        self._build()
        if self.size != expected:
            raise RuntimeError(f"enumerated {self.size} elements, expected {expected}")

    def _build(self):
        datum = self.datum
        nroots = 2 * datum.nu
        dtype = np.uint8 if nroots <= 255 else np.uint16
        si = [np.array(p, dtype=dtype) for p in datum._simple_perms]
        levels = [np.arange(nroots, dtype=dtype).reshape(1, nroots)]
        frontier = levels[0]
        level_len = 0
        while True:
            cands = np.concatenate([frontier[:, p] for p in si], axis=0)
            lens = np.count_nonzero(cands[:, : datum.nu] >= datum.nu, axis=1)
            cands = cands[lens == level_len + 1]
            if not len(cands):
                break
            frontier = np.unique(cands, axis=0)
            levels.append(frontier)
            level_len += 1
        self.perms = np.concatenate(levels, axis=0)
        self.size = len(self.perms)
        self.lengths = np.count_nonzero(self.perms[:, : datum.nu] >= datum.nu, axis=1).astype(np.int32)
        self._id_of = {row.tobytes(): i for i, row in enumerate(self.perms)}
        # generator action tables: lmul[i][x] = id of s_i x, rmul[i][x] = id of x s_i
        lmul = np.empty((self.rank, self.size), dtype=np.int32)
        rmul = np.empty((self.rank, self.size), dtype=np.int32)
        for i in range(self.rank):
            left_rows = si[i][self.perms]
            right_rows = self.perms[:, si[i]]
            for x in range(self.size):
                lmul[i, x] = self._id_of[left_rows[x].tobytes()]
                rmul[i, x] = self._id_of[right_rows[x].tobytes()]
        self.lmul = lmul
        self.rmul = rmul

    # -- id-level operations ---------------------------------------------------

    def element(self, x: int) -> GroupElement:
        return GroupElement(tuple(int(p) for p in self.perms[x]), int(self.lengths[x]))

    def id_of(self, e: GroupElement) -> int:
        dtype = self.perms.dtype
        return self._id_of[np.asarray(e.perm, dtype=dtype).tobytes()]

    def mul_ids(self, x: int, y: int) -> int:
        row = self.perms[x][self.perms[y]]
        return self._id_of[row.tobytes()]

    def inv_id(self, x: int) -> int:
        row = np.argsort(self.perms[x]).astype(self.perms.dtype)
        return self._id_of[row.tobytes()]

    def pow_id(self, x: int, k: int) -> int:
        acc = 0
        for _ in range(k):
            acc = self.mul_ids(acc, x)
        return acc

    def order_of(self, x: int) -> int:
        """Element order: lcm of cycle lengths of the root permutation."""
        perm = self.perms[x]
        seen = np.zeros(len(perm), dtype=bool)
        out = 1
        for start in range(len(perm)):
            if seen[start]:
                continue
            r, clen = start, 0
            while not seen[r]:
                seen[r] = True
                r = int(perm[r])
                clen += 1
            out = math.lcm(out, clen)
        return out

    def word_to_id(self, word: list[int]) -> int:
        x = 0
        for i in word:
            if not 0 <= i < self.rank:
                raise ConfigurationError(f"generator index {i + 1} out of range for rank {self.rank}")
            x = int(self.rmul[i, x])
        return x

    def reduced_word_of(self, x: int) -> list[int]:
        word = []
        while self.lengths[x]:
            i = min(
                i for i in range(self.rank) if self.lengths[self.lmul[i, x]] < self.lengths[x]
            )
            word.append(i)
            x = int(self.lmul[i, x])
        return word

    def support_mask(self, x: int) -> int:
        mask = 0
        for i in self.reduced_word_of(x):
            mask |= 1 << i
        return mask

    def conj_by_gen(self, i, x):
        """s_i x s_i; x may be an id or an array of ids."""
        return self.lmul[i, self.rmul[i, x]]

    @cached_property
    def longest_id(self) -> int:
        return int(np.flatnonzero(self.lengths == self.nu)[0])

    @cached_property
    def right_descent_masks(self) -> np.ndarray:
        masks = np.zeros(self.size, dtype=np.uint32)
        for i in range(self.rank):
            masks |= ((self.lengths[self.rmul[i]] < self.lengths) << i).astype(np.uint32)
        return masks

    @cached_property
    def left_descent_masks(self) -> np.ndarray:
        masks = np.zeros(self.size, dtype=np.uint32)
        for i in range(self.rank):
            masks |= ((self.lengths[self.lmul[i]] < self.lengths) << i).astype(np.uint32)
        return masks


def enumerate_elements(datum: RootDatum, memory_budget: int | None = None) -> Iterator[GroupElement]:
    """All group elements exactly once, in nondecreasing length order."""
    table = ElementTable(datum, memory_budget=memory_budget)
    for x in range(table.size):
        yield table.element(x)
