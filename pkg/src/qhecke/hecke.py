"""Iwahori-Hecke algebra over Z[q] in the T-basis.

Elements are sparse dicts {element id: QPoly} over an ``ElementTable``.
The defining relations (for a reduced word product T_w = T_{s_1}...T_{s_L}):

    T_x T_s = T_{xs}                     if l(xs) > l(x)
    T_x T_s = q T_{xs} + (q-1) T_x       if l(xs) < l(x)

and symmetrically on the left.  ``nww`` computes the trace polynomial of the
map h -> T_w h T_{w'^-1}; at q=1 it counts solutions of wy = yw', and for
w = w' it is a q-analogue of the centralizer order.
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor

from .errors import IntegrityError, ResourceLimitError
from .kernel import get_kernel
from .qpoly import ONE, QPoly, ZERO
from .rootsys import ElementTable

HeckeElt = dict[int, QPoly]

_Q = QPoly([0, 1])
_QM1 = QPoly([-1, 1])


def basis_elt(x: int) -> HeckeElt:
    return {x: ONE}


def _add_term(h: HeckeElt, x: int, p: QPoly) -> None:
    cur = h.get(x)
    s = p if cur is None else cur + p
    if s:
        h[x] = s
    elif cur is not None:
        del h[x]


def mul_by_gen(table: ElementTable, h: HeckeElt, i: int, side: str = "right") -> HeckeElt:
    """Multiply by T_{s_i} on the given side."""
    tab = table.rmul[i] if side == "right" else table.lmul[i]
    out: HeckeElt = {}
    for x, p in h.items():
        xs = int(tab[x])
        if table.lengths[xs] > table.lengths[x]:
            _add_term(out, xs, p)
        else:
            _add_term(out, xs, _Q * p)
            _add_term(out, x, _QM1 * p)
    return out


def mul_word(table: ElementTable, h: HeckeElt, word: list[int], side: str = "right") -> HeckeElt:
    """Multiply by T_{s_{i1}}...T_{s_{iL}} on the right, or its mirror on the left.

    For side='left' the word is applied last letter first, so that the result
    is T_{word} * h when the word is reduced.
    """
    letters = word if side == "right" else word[::-1]
    for i in letters:
        h = mul_by_gen(table, h, i, side)
    return h


def mul_basis(table: ElementTable, a: int, b: int) -> HeckeElt:
    """T_a T_b."""
    return mul_word(table, basis_elt(a), table.reduced_word_of(b), side="right")


def mul(table: ElementTable, h1: HeckeElt, h2: HeckeElt) -> HeckeElt:
    """General product, bilinear over basis products."""
    out: HeckeElt = {}
    for b1, p1 in h1.items():
        part = mul_word(table, h2, table.reduced_word_of(b1), side="left")
        for x, p in part.items():
            _add_term(out, x, p1 * p)
    return out


def power(table: ElementTable, a: int, k: int) -> HeckeElt:
    """T_a^k by repeated right multiplication."""
    word = table.reduced_word_of(a)
    h = basis_elt(0)
    for _ in range(k):
        h = mul_word(table, h, word, side="right")
    return h


def phi(table: ElementTable, a: int, ap: int, b: int) -> QPoly:
    """Structure constant: coeff of T_b in T_a T_{a'}."""
    return mul_basis(table, a, ap).get(b, ZERO)


def f3(table: ElementTable, a: int, ap: int, app: int, b: int) -> QPoly:
    """Coeff of T_b in the triple product T_a T_{a'} T_{a''}."""
    h = mul_word(table, mul_basis(table, a, ap), table.reduced_word_of(app), side="right")
    return h.get(b, ZERO)


def commuting_count(table: ElementTable, w: int, wp: int, max_size: int = 2_000_000) -> int:
    """#{y in W : w y = y w'}, the q=1 specialization oracle for nww."""
    if table.size > max_size:
        raise ResourceLimitError(f"commuting_count refused for |W|={table.size}")
    perms = table.perms
    lhs = perms[w][perms]  # rows: w∘y
    rhs = perms[:, perms[wp]]  # rows: y∘w'
    return int((lhs == rhs).all(axis=1).sum())


def top_coeff_count(table: ElementTable, w: int, wp: int) -> int:
    """#{a' in W : supp(w) ⊆ left descents(a') and supp(w') ⊆ right descents(a')}.

    This is the predicted leading coefficient of nww(w, w') at degree
    l(w) + l(w'); it is at least 1 (the longest element qualifies).
    """
    sw = table.support_mask(w)
    swp = table.support_mask(wp)
    left = table.left_descent_masks
    right = table.right_descent_masks
    return int((((left & sw) == sw) & ((right & swp) == swp)).sum())


class _ListCheckpoint:
    """Minimal in-memory checkpoint store; cache.py provides a file-backed one."""

    def __init__(self):
        self.chunks: dict[int, list[int]] = {}

    def get(self, idx: int):
        return self.chunks.get(idx)

    def put(self, idx: int, coeffs: list[int]) -> None:
        self.chunks[idx] = coeffs


def num_chunks(size: int, chunk_size: int) -> int:
    """Number of strided chunks a trace over a group of this size uses."""
    return max(1, -(-size // max(1, chunk_size)))


def _trace(
    table: ElementTable,
    w: int,
    x_word: list[int],
    *,
    chunk_size: int = 4096,
    threads: int = 1,
    checkpoint=None,
    progress=None,
    kernel=None,
) -> QPoly:
    """Trace of h -> T_w h T_x where x_word is a reduced word for x."""
    if kernel is None or isinstance(kernel, str):
        kern = get_kernel(kernel or "auto")
    else:
        kern = kernel
    fallback = get_kernel("python")
    len_w = int(table.lengths[w])
    n = len_w + len(x_word)
    # strided chunks: chunk idx takes ids congruent to idx mod n_chunks, so
    # expensive long elements spread evenly over chunks and threads
    n_chunks = num_chunks(table.size, chunk_size)
    results: dict[int, list[int]] = {}
    todo = []
    for idx in range(n_chunks):
        got = checkpoint.get(idx) if checkpoint is not None else None
        if got is not None:
            if len(got) != n + 1:
                raise IntegrityError("checkpoint chunk has wrong coefficient count")
            results[idx] = list(got)
        else:
            todo.append(idx)

    done_lock = threading.Lock()
    done = [len(results)]

    def run_chunk(idx: int) -> None:
        try:
            coeffs = kern.trace_partial(
                table.rmul, table.lengths, w, len_w, x_word, idx, n_chunks
            )
        except OverflowError:
            coeffs = fallback.trace_partial(
                table.rmul, table.lengths, w, len_w, x_word, idx, n_chunks
            )
        results[idx] = coeffs
        if checkpoint is not None:
            checkpoint.put(idx, coeffs)
        if progress is not None:
            with done_lock:
                done[0] += 1
                progress(done[0], n_chunks)

    if threads > 1 and todo:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for _ in pool.map(run_chunk, todo):
                pass
    else:
        for idx in todo:
            run_chunk(idx)

    total = [0] * (n + 1)
    for idx in range(n_chunks):  # fixed reduction order
        for i, c in enumerate(results[idx]):
            total[i] += c
    return QPoly(total)


def nww(
    table: ElementTable,
    w: int,
    wp: int,
    *,
    chunk_size: int = 4096,
    threads: int = 1,
    checkpoint=None,
    progress=None,
    kernel=None,
    validate: bool = True,
) -> QPoly:
    """Trace polynomial of h -> T_w h T_{w'^-1} on the T-basis.

    Validated against the degree bound n = l(w) + l(w') and the predicted
    leading coefficient (a positive count), so the degree is exactly n.
    """
    x_word = table.reduced_word_of(table.inv_id(wp))
    poly = _trace(
        table, w, x_word, chunk_size=chunk_size, threads=threads,
        checkpoint=checkpoint, progress=progress, kernel=kernel,
    )
    if validate:
        n = int(table.lengths[w]) + int(table.lengths[wp])
        if poly.degree > n:
            raise IntegrityError(f"nww degree {poly.degree} exceeds bound {n}")
        expected_top = top_coeff_count(table, w, wp)
        if poly.coefficient(n) != expected_top or expected_top < 1:
            raise IntegrityError(
                f"nww leading coefficient {poly.coefficient(n)} != predicted {expected_top}"
            )
    return poly


def nww_alt(table: ElementTable, w: int, wp: int, **kw) -> QPoly:
    """Variant with right factor T_{w'} instead of T_{w'^-1}.

    Kept separate so the two readings of the trace definition can be compared
    empirically; see the selftest.  They agree on every case tested.
    """
    kw.pop("validate", None)
    return _trace(table, w, table.reduced_word_of(wp), **kw)
