"""Pure-Python trace kernel.

Computes partial sums of the trace of h -> T_w h T_x over the T-basis:

    sum over b with b % b_step == b_start of  coeff of T_b  in  T_w T_b T_x

Chunks are strided rather than contiguous so that the expensive long
elements spread evenly over chunks (and hence over worker threads).

Polynomials are plain coefficient lists of Python ints, so there is no
overflow concern.  The compiled kernel in ``_trace_kernel.pyx`` mirrors this
algorithm with checked 64-bit arithmetic; this module is the reference.

Algorithm notes.  Write A_b = T_w T_b and let R be the matrix of right
multiplication by T_x in the T-basis.  The b-th term of the trace is
sum_c A_b[c] * R[b, c].  Two sparsity tricks keep this near-linear:

* A_b is produced for every b with one generator step per element by a
  depth-first walk of the right weak order: if b = b's with l(b) = l(b')+1
  then A_b = A_{b'} T_s.  The walk uses the canonical spanning tree where
  each element hangs off its smallest right descent.

* The row R[b, :] is folded directly from e_b: for a reduced word
  x = s_{j1} ... s_{jL}, the row vector is e_b^T R_{s_{jL}} ... R_{s_{j1}},
  and a row-vector/generator product has the same two-term local rule as a
  column product, just with the descent test flipped.
"""

from __future__ import annotations

KERNEL_NAME = "python"


def _trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _add_into(vec: dict[int, list[int]], key: int, p: list[int], shift: int = 0) -> None:
    cur = vec.get(key)
    if cur is None:
        cur = vec[key] = []
    if len(cur) < len(p) + shift:
        cur.extend([0] * (len(p) + shift - len(cur)))
    for i, c in enumerate(p):
        cur[i + shift] += c


def _right_step(vec, rmul_i, lengths):
    """vec * T_s for a column vector of coefficients {id: poly}."""
    out: dict[int, list[int]] = {}
    for c, p in vec.items():
        cs = rmul_i[c]
        if lengths[cs] > lengths[c]:
            _add_into(out, cs, p)
        else:
            _add_into(out, cs, p, shift=1)  # q * p
            _add_into(out, c, p, shift=1)  # (q-1) * p
            _add_into(out, c, [-x for x in p])
    for key in [k for k, p in out.items() if not _trim(p)]:
        del out[key]
    return out


def _row_step(vec, rmul_i, lengths):
    """vec^T * R_s for a row vector {id: poly}."""
    out: dict[int, list[int]] = {}
    for c, p in vec.items():
        cs = rmul_i[c]
        if lengths[cs] < lengths[c]:
            _add_into(out, cs, p)
            _add_into(out, c, p, shift=1)
            _add_into(out, c, [-x for x in p])
        else:
            _add_into(out, cs, p, shift=1)
    for key in [k for k, p in out.items() if not _trim(p)]:
        del out[key]
    return out


def trace_partial(rmul, lengths, w_id, len_w, x_word, b_start, b_step):
    """Partial trace over ids congruent to b_start mod b_step; n+1 ints.

    rmul: (rank, N) generator right-multiplication table (x s_i ids)
    lengths: (N,) element lengths
    w_id, len_w: the left factor T_w
    x_word: a reduced word (0-based generator indices) for the right factor
    """
    rank = len(rmul)
    rmul = [[int(v) for v in row] for row in rmul]
    lengths = [int(v) for v in lengths]
    n = len_w + len(x_word)
    rev_word = x_word[::-1]
    acc = [0] * (n + 1)

    def min_right_descent(z: int) -> int:
        return min(i for i in range(rank) if lengths[rmul[i][z]] < lengths[z])

    def contribute(b: int, a_vec) -> None:
        u = {b: [1]}
        for i in rev_word:
            u = _row_step(u, rmul[i], lengths)
        for c, pu in u.items():
            pa = a_vec.get(c)
            if not pa:
                continue
            assert len(pa) - 1 <= len_w and len(pu) - 1 <= len(x_word), "degree bound broken"
            for i, ca in enumerate(pa):
                if ca:
                    for j, cu in enumerate(pu):
                        if cu:
                            acc[i + j] += ca * cu

    def visit(y: int, a_vec) -> None:
        if y % b_step == b_start:
            contribute(y, a_vec)
        for i in range(rank):
            ys = rmul[i][y]
            if lengths[ys] > lengths[y] and min_right_descent(ys) == i:
                visit(ys, _right_step(a_vec, rmul[i], lengths))

    visit(0, {w_id: [1]})
    return acc
