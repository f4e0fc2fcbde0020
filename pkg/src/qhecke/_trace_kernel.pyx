# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled trace kernel; same algorithm as ``_trace_kernel_py``.

Coefficients are checked 64-bit integers: any overflow raises OverflowError
and the caller recomputes the chunk with the arbitrary-precision Python
kernel.  The whole walk runs without the GIL so chunks can be spread over a
thread pool.
"""

from libc.stdlib cimport free, malloc, realloc
from libc.string cimport memset

KERNEL_NAME = "compiled"

cdef extern from *:
    """
    #define QH_ADD_OV(a, b, out) __builtin_add_overflow((a), (b), (out))
    #define QH_MUL_OV(a, b, out) __builtin_mul_overflow((a), (b), (out))
    """
    bint QH_ADD_OV(long long a, long long b, long long *out) nogil
    bint QH_MUL_OV(long long a, long long b, long long *out) nogil

DEF ERR_NONE = 0
DEF ERR_OVERFLOW = 1
DEF ERR_ALLOC = 2
DEF ERR_DEGREE = 3

cdef struct SVec:
    int *ids
    long long *coef
    int count
    int cap


cdef int svec_reserve(SVec *v, int need, int width) nogil:
    cdef int cap = v.cap
    cdef void *p
    if need <= cap:
        return 0
    while cap < need:
        cap = 16 if cap == 0 else cap * 2
    p = realloc(v.ids, cap * sizeof(int))
    if p == NULL:
        return ERR_ALLOC
    v.ids = <int *> p
    p = realloc(v.coef, <size_t> cap * width * sizeof(long long))
    if p == NULL:
        return ERR_ALLOC
    v.coef = <long long *> p
    v.cap = cap
    return 0


cdef void svec_free(SVec *v) nogil:
    free(v.ids)
    free(v.coef)
    v.ids = NULL
    v.coef = NULL
    v.cap = 0
    v.count = 0


cdef inline int slot_of(SVec *v, int key, int width, int *pos, int *err) nogil:
    """Index of key in v, appending a zeroed row if absent; -1 on error."""
    cdef int idx = pos[key]
    if idx >= 0:
        return idx
    if v.count == v.cap:
        err[0] = svec_reserve(v, v.count + 1, width)
        if err[0]:
            return -1
    idx = v.count
    v.count += 1
    v.ids[idx] = key
    pos[key] = idx
    memset(v.coef + <size_t> idx * width, 0, width * sizeof(long long))
    return idx


cdef int compact(SVec *v, int width, int *pos) nogil:
    """Drop all-zero rows, reset pos to -1, insist the scratch top slot is 0."""
    cdef int r = 0, t, i
    cdef bint nz
    cdef long long *row
    for t in range(v.count):
        pos[v.ids[t]] = -1
        row = v.coef + <size_t> t * width
        if row[width - 1] != 0:
            return ERR_DEGREE
        nz = 0
        for i in range(width - 1):
            if row[i] != 0:
                nz = 1
                break
        if nz:
            if r != t:
                v.ids[r] = v.ids[t]
                for i in range(width):
                    v.coef[<size_t> r * width + i] = row[i]
            r += 1
    v.count = r
    return 0


cdef int right_step(SVec *src, SVec *dst, const int *rmul_i, const int *lengths,
                    int width, int *pos) nogil:
    """dst = src * T_s (column action); two-term local rewrite."""
    cdef int t, i, c, cs, idx, err = 0
    cdef long long *p
    cdef long long *out
    dst.count = 0
    for t in range(src.count):
        c = src.ids[t]
        cs = rmul_i[c]
        p = src.coef + <size_t> t * width
        if lengths[cs] > lengths[c]:
            idx = slot_of(dst, cs, width, pos, &err)
            if err:
                return err
            out = dst.coef + <size_t> idx * width
            for i in range(width - 1):
                if QH_ADD_OV(out[i], p[i], &out[i]):
                    return ERR_OVERFLOW
        else:
            idx = slot_of(dst, cs, width, pos, &err)  # q * p
            if err:
                return err
            out = dst.coef + <size_t> idx * width
            for i in range(width - 1):
                if QH_ADD_OV(out[i + 1], p[i], &out[i + 1]):
                    return ERR_OVERFLOW
            idx = slot_of(dst, c, width, pos, &err)  # (q-1) * p
            if err:
                return err
            out = dst.coef + <size_t> idx * width
            for i in range(width - 1):
                if QH_ADD_OV(out[i + 1], p[i], &out[i + 1]):
                    return ERR_OVERFLOW
                if QH_ADD_OV(out[i], -p[i], &out[i]):
                    return ERR_OVERFLOW
    return compact(dst, width, pos)


cdef int row_step(SVec *src, SVec *dst, const int *rmul_i, const int *lengths,
                  int width, int *pos) nogil:
    """dst^T = src^T * R_s (row action); descent test is flipped."""
    cdef int t, i, c, cs, idx, err = 0
    cdef long long *p
    cdef long long *out
    dst.count = 0
    for t in range(src.count):
        c = src.ids[t]
        cs = rmul_i[c]
        p = src.coef + <size_t> t * width
        if lengths[cs] < lengths[c]:
            idx = slot_of(dst, cs, width, pos, &err)
            if err:
                return err
            out = dst.coef + <size_t> idx * width
            for i in range(width - 1):
                if QH_ADD_OV(out[i], p[i], &out[i]):
                    return ERR_OVERFLOW
            idx = slot_of(dst, c, width, pos, &err)  # (q-1) * p
            if err:
                return err
            out = dst.coef + <size_t> idx * width
            for i in range(width - 1):
                if QH_ADD_OV(out[i + 1], p[i], &out[i + 1]):
                    return ERR_OVERFLOW
                if QH_ADD_OV(out[i], -p[i], &out[i]):
                    return ERR_OVERFLOW
        else:
            idx = slot_of(dst, cs, width, pos, &err)  # q * p
            if err:
                return err
            out = dst.coef + <size_t> idx * width
            for i in range(width - 1):
                if QH_ADD_OV(out[i + 1], p[i], &out[i + 1]):
                    return ERR_OVERFLOW
    return compact(dst, width, pos)


cdef struct Frame:
    int y
    int next_gen


cdef int run_walk(const int *rmul, const int *lengths, int rank, int n_elts,
                  int w_id, int wa, const int *x_word, int x_len, int wu,
                  int b_start, int b_step, long long *acc, int nu) nogil:
    """DFS over the right weak order; returns an ERR_* code."""
    cdef int err = 0, sp, i, t, j, k, y, ys, idx, c
    cdef long long prod
    cdef long long *pa
    cdef long long *pu
    cdef SVec *avecs = NULL
    cdef SVec ucur, unxt, utmp
    cdef Frame *stack = NULL
    cdef int *pos_a = NULL
    cdef int *pos_u = NULL
    cdef bint is_child

    avecs = <SVec *> malloc((nu + 2) * sizeof(SVec))
    stack = <Frame *> malloc((nu + 2) * sizeof(Frame))
    pos_a = <int *> malloc(n_elts * sizeof(int))
    pos_u = <int *> malloc(n_elts * sizeof(int))
    memset(&ucur, 0, sizeof(SVec))
    memset(&unxt, 0, sizeof(SVec))
    if avecs == NULL or stack == NULL or pos_a == NULL or pos_u == NULL:
        err = ERR_ALLOC
    else:
        memset(avecs, 0, (nu + 2) * sizeof(SVec))
        for i in range(n_elts):
            pos_a[i] = -1
            pos_u[i] = -1
        # root: A_e = T_w, a single constant term
        err = svec_reserve(&avecs[0], 1, wa)
        if not err:
            avecs[0].count = 1
            avecs[0].ids[0] = w_id
            memset(avecs[0].coef, 0, wa * sizeof(long long))
            avecs[0].coef[0] = 1
            stack[0].y = 0
            stack[0].next_gen = 0
            sp = 0
            while sp >= 0 and not err:
                y = stack[sp].y
                if stack[sp].next_gen == 0 and y % b_step == b_start:
                    # contribution of basis element y: fold the row of the
                    # right factor from e_y, then pair with A_y
                    err = svec_reserve(&ucur, 1, wu)
                    if err:
                        break
                    ucur.count = 1
                    ucur.ids[0] = y
                    memset(ucur.coef, 0, wu * sizeof(long long))
                    ucur.coef[0] = 1
                    for t in range(x_len - 1, -1, -1):
                        err = row_step(&ucur, &unxt, rmul + <size_t> x_word[t] * n_elts,
                                       lengths, wu, pos_u)
                        if err:
                            break
                        utmp = ucur
                        ucur = unxt
                        unxt = utmp
                    if err:
                        break
                    for t in range(avecs[sp].count):
                        pos_a[avecs[sp].ids[t]] = t
                    for t in range(ucur.count):
                        c = ucur.ids[t]
                        idx = pos_a[c]
                        if idx < 0:
                            continue
                        pa = avecs[sp].coef + <size_t> idx * wa
                        pu = ucur.coef + <size_t> t * wu
                        for j in range(wa - 1):
                            if pa[j] == 0:
                                continue
                            for k in range(wu - 1):
                                if pu[k] == 0:
                                    continue
                                if QH_MUL_OV(pa[j], pu[k], &prod):
                                    err = ERR_OVERFLOW
                                    break
                                if QH_ADD_OV(acc[j + k], prod, &acc[j + k]):
                                    err = ERR_OVERFLOW
                                    break
                            if err:
                                break
                        if err:
                            break
                    for t in range(avecs[sp].count):
                        pos_a[avecs[sp].ids[t]] = -1
                    if err:
                        break
                # descend into the next child in the canonical spanning tree
                is_child = 0
                i = stack[sp].next_gen
                while i < rank:
                    ys = rmul[<size_t> i * n_elts + y]
                    if lengths[ys] > lengths[y]:
                        is_child = 1
                        for j in range(i):
                            if lengths[rmul[<size_t> j * n_elts + ys]] < lengths[ys]:
                                is_child = 0
                                break
                        if is_child:
                            break
                    i += 1
                if is_child:
                    stack[sp].next_gen = i + 1
                    err = right_step(&avecs[sp], &avecs[sp + 1],
                                     rmul + <size_t> i * n_elts, lengths, wa, pos_a)
                    if err:
                        break
                    sp += 1
                    stack[sp].y = ys
                    stack[sp].next_gen = 0
                else:
                    sp -= 1
    if avecs != NULL:
        for i in range(nu + 2):
            svec_free(&avecs[i])
        free(avecs)
    svec_free(&ucur)
    svec_free(&unxt)
    free(stack)
    free(pos_a)
    free(pos_u)
    return err


def trace_partial(rmul, lengths, w_id, len_w, x_word, b_start, b_step):
    """Partial trace over ids congruent to b_start mod b_step."""
    cdef const int[:, ::1] rm = rmul
    cdef const int[::1] ln = lengths
    cdef int rank = rm.shape[0]
    cdef int n_elts = rm.shape[1]
    cdef int x_len = len(x_word)
    cdef int wa = <int> len_w + 2
    cdef int wu = x_len + 2
    cdef int nu = 0
    cdef int i, err
    cdef int start = b_start, step = b_step
    cdef int wid = w_id, lw = len_w
    cdef int *xw = NULL
    cdef long long *acc = NULL
    for i in range(n_elts):
        if ln[i] > nu:
            nu = ln[i]
    try:
        xw = <int *> malloc(max(x_len, 1) * sizeof(int))
        acc = <long long *> malloc((wa + wu - 1) * sizeof(long long))
        if xw == NULL or acc == NULL:
            raise MemoryError
        memset(acc, 0, (wa + wu - 1) * sizeof(long long))
        for i in range(x_len):
            xw[i] = x_word[i]
            if not 0 <= xw[i] < rank:
                raise ValueError("generator index out of range")
        if step < 1 or not 0 <= start < step:
            raise ValueError("bad chunk stride")
        with nogil:
            err = run_walk(&rm[0, 0], &ln[0], rank, n_elts, wid, wa, xw, x_len,
                           wu, start, step, acc, nu)
        if err == ERR_OVERFLOW:
            raise OverflowError("64-bit coefficient overflow in trace kernel")
        if err == ERR_ALLOC:
            raise MemoryError("allocation failure in trace kernel")
        if err == ERR_DEGREE:
            raise AssertionError("degree bound broken in trace kernel")
        out = [acc[i] for i in range(lw + x_len + 1)]
        for i in range(lw + x_len + 1, wa + wu - 1):
            if acc[i] != 0:
                raise AssertionError("trace coefficients above the degree bound")
        return out
    finally:
        free(xw)
        free(acc)
