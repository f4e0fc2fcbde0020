"""Conjugacy classes of a finite Weyl group and their exact invariants.

Each class carries its minimal length, the characteristic polynomial of a
representative on the reflection representation (exact, written as a product
of cyclotomic polynomials), ellipticity, and whether it is the unique regular
elliptic class of its element order.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from .errors import IntegrityError
from .qpoly import ONE, QPoly, factor_cyclotomic, render_factored
from .rootsys import CoxeterType, ElementTable


def conjugate_closure(table: ElementTable, seed: int) -> np.ndarray:
    """Sorted ids of the conjugacy class of seed (BFS over generators)."""
    mask = np.zeros(table.size, dtype=bool)
    mask[seed] = True
    frontier = np.array([seed], dtype=np.int64)
    rank = table.datum.ctype.rank
    while frontier.size:
        nxt = np.unique(
            np.concatenate([table.conj_by_gen(i, frontier) for i in range(rank)])
        )
        frontier = nxt[~mask[nxt]]
        mask[frontier] = True
    return np.nonzero(mask)[0]


def reflection_matrix(table: ElementTable, x: int) -> list[list[int]]:
    """Matrix of x on the reflection representation, simple-root coordinates.

    Column j holds the root coordinates of the image of the j-th simple root.
    """
    rank = table.datum.ctype.rank
    perm = table.element(x).perm
    roots = table.datum.roots
    return [[roots[perm[j]][i] for j in range(rank)] for i in range(rank)]


def char_poly(mat: list[list[int]]) -> QPoly:
    """det(qI - M) for a small integer matrix, exact."""
    rank = len(mat)
    entries = [
        [QPoly([-mat[i][j], 1] if i == j else [-mat[i][j]]) for j in range(rank)]
        for i in range(rank)
    ]
    memo: dict[tuple[int, ...], QPoly] = {}

    def minor(cols: tuple[int, ...]) -> QPoly:
        if not cols:
            return ONE
        got = memo.get(cols)
        if got is not None:
            return got
        row = rank - len(cols)
        acc = QPoly([])
        sign = 1
        for idx, j in enumerate(cols):
            e = entries[row][j]
            if e.degree >= 0:
                term = e * minor(cols[:idx] + cols[idx + 1 :])
                acc = acc + term if sign > 0 else acc - term
            sign = -sign
        memo[cols] = acc
        return acc

    return minor(tuple(range(rank)))


def regular_orders(ctype: CoxeterType) -> frozenset[int]:
    """Element orders admitting a regular elliptic class, by family.

    Closed-form rules; cross-checked against a direct class search in the
    tests and against frozen expected lines in the reference data.
    """
    fam, n = ctype.family, ctype.rank
    if fam == "A":
        return frozenset({n + 1})
    if fam == "B":
        return frozenset(d for d in range(2, 2 * n + 1, 2) if (2 * n) % d == 0)
    if fam == "D":
        ds = {
            d
            for d in range(2, 2 * n - 1, 2)
            if (2 * n - 2) % d == 0 and ((2 * n - 2) // d) % 2 == 1
        }
        if n % 2 == 0:
            ds |= {d for d in range(2, n + 1, 2) if n % d == 0}
        return frozenset(ds)
    if fam == "G":
        return frozenset({2, 3, 6})
    if fam == "F":
        return frozenset({2, 3, 4, 6, 8, 12})
    if fam == "E":
        return frozenset(
            {
                6: {3, 6, 9, 12},
                7: {2, 6, 14, 18},
                8: {2, 3, 4, 5, 6, 8, 10, 12, 15, 20, 24, 30},
            }[n]
        )
    raise AssertionError(fam)


@dataclass(frozen=True)
class ClassRecord:
    rep: int  # smallest element id in the class; has minimal length
    size: int
    min_length: int
    order: int
    char_poly: QPoly
    label: tuple[tuple[int, int], ...]  # cyclotomic factorization ((k, e), ...)
    label_str: str
    is_elliptic: bool
    is_regular: bool
    centralizer_order: int


class ClassSet:
    """All conjugacy classes of a group, canonically ordered.

    Order: (min_length, size, label, rep id).  The rep is the smallest
    element id, which by the id ordering is a minimal length element.
    """

    def __init__(self, table: ElementTable):
        self.table = table
        raw: list[tuple[int, np.ndarray]] = []
        seen = np.zeros(table.size, dtype=bool)
        for seed in range(table.size):
            if seen[seed]:
                continue
            members = conjugate_closure(table, seed)
            seen[members] = True
            raw.append((seed, members))

        lengths = table.lengths
        records = []
        for seed, members in raw:
            min_len = int(lengths[members].min())
            if min_len != int(lengths[seed]):
                raise IntegrityError("class rep is not of minimal length")
            order = table.order_of(seed)
            cp = char_poly(reflection_matrix(table, seed))
            label = factor_cyclotomic(cp, order)
            pairs = tuple(sorted(label.items(), reverse=True))
            records.append(
                (
                    ClassRecord(
                        rep=seed,
                        size=len(members),
                        min_length=min_len,
                        order=order,
                        char_poly=cp,
                        label=pairs,
                        label_str=render_factored(label),
                        is_elliptic=cp(1) != 0,
                        is_regular=False,  # patched below
                        centralizer_order=table.size // len(members),
                    ),
                    members,
                )
            )
        if sum(len(m) for _, m in records) != table.size:
            raise IntegrityError("classes do not partition the group")

        records.sort(key=lambda rm: (rm[0].min_length, rm[0].size, rm[0].label_str, rm[0].rep))
        nu = table.datum.nu
        regular_reps = set()
        self.regular_class_of: dict[int, int] = {}
        for d in sorted(regular_orders(table.datum.ctype)):
            hits = [
                i
                for i, (rec, _) in enumerate(records)
                if rec.is_elliptic and rec.order == d and d * rec.min_length == 2 * nu
            ]
            if len(hits) != 1:
                raise IntegrityError(
                    f"expected exactly one regular elliptic class of order {d}, got {len(hits)}"
                )
            self.regular_class_of[d] = hits[0]
            regular_reps.add(records[hits[0]][0].rep)

        self.records: list[ClassRecord] = [
            dataclasses.replace(rec, is_regular=rec.rep in regular_reps)
            for rec, _ in records
        ]
        self._members = {rec.rep: m for (rec, m) in records}
        self.class_of = np.empty(table.size, dtype=np.int32)
        for i, rec in enumerate(self.records):
            self.class_of[self._members[rec.rep]] = i

    def members(self, idx: int) -> np.ndarray:
        return self._members[self.records[idx].rep]

    def min_length_elements(self, idx: int) -> np.ndarray:
        m = self.members(idx)
        return m[self.table.lengths[m] == self.records[idx].min_length]

    def __len__(self) -> int:
        return len(self.records)


def check_half_power_hits_longest(cs: ClassSet, d: int) -> None:
    """Even-order regular classes: the d/2 power of every minimal length
    element is the longest element, and lengths add along the way."""
    table = cs.table
    if d % 2 != 0:
        raise ValueError("needs an even order")
    idx = cs.regular_class_of[d]
    nu = table.datum.nu
    for w in cs.min_length_elements(idx):
        p = table.pow_id(int(w), d // 2)
        if p != table.longest_id:
            raise IntegrityError(f"power of {w} misses the longest element")
        if (d // 2) * cs.records[idx].min_length != nu:
            raise IntegrityError("length does not add up to the longest element")


def check_coxeter_power_in_hecke(cs: ClassSet) -> None:
    """T_w^h equals T_w0 * T_w0 for every minimal length Coxeter-class w."""
    from . import hecke

    table = cs.table
    h = table.datum.coxeter_number
    idx = cs.regular_class_of[h]
    w0 = table.longest_id
    target = hecke.mul_basis(table, w0, w0)
    for w in cs.min_length_elements(idx):
        got = hecke.power(table, int(w), h)
        if got != target:
            raise IntegrityError(f"T_{w}^{h} differs from the squared longest basis element")


def check_coxeter_power_lands_in_regular_class(cs: ClassSet, d: int) -> None:
    """For d dividing h: the h/d power of a minimal length Coxeter-class
    element is a minimal length element of the order-d regular class, with
    multiplicative length."""
    table = cs.table
    h = table.datum.coxeter_number
    if h % d != 0:
        raise ValueError("order must divide the Coxeter number")
    cox_idx = cs.regular_class_of[h]
    d_idx = cs.regular_class_of[d]
    k = h // d
    d_min = set(int(v) for v in cs.min_length_elements(d_idx))
    for y in cs.min_length_elements(cox_idx):
        p = table.pow_id(int(y), k)
        if p not in d_min:
            raise IntegrityError(f"power of {y} is not a minimal element of the order-{d} class")
        if int(table.lengths[p]) != k * int(table.lengths[y]):
            raise IntegrityError("length is not multiplicative along the power")
