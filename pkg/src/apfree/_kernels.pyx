# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; see ``_pykernels`` for the reference semantics."""

from libc.stdlib cimport malloc, calloc, free

ctypedef long long i64
ctypedef unsigned long long u64

cdef enum:
    ROW_BOUND_BITS = 60


cdef i64* _to_array(seq) except NULL:
    cdef Py_ssize_t n = len(seq), i
    cdef i64* out = <i64*> malloc((n if n > 0 else 1) * sizeof(i64))
    if out == NULL:
        raise MemoryError()
    for i in range(n):
        out[i] = seq[i]
    return out


cdef inline bint _member(const i64* arr, Py_ssize_t n, i64 v) noexcept nogil:
    cdef Py_ssize_t lo = 0, hi = n, mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if arr[mid] < v:
            lo = mid + 1
        else:
            hi = mid
    return lo < n and arr[lo] == v


def find_ap(elems, int k):
    cdef Py_ssize_t n = len(elems), i, j
    cdef i64* arr = _to_array(elems)
    cdef i64 a, d, t, last, reach
    cdef int step
    cdef bint ok = False
    try:
        last = arr[n - 1]
        with nogil:
            for i in range(n):
                a = arr[i]
                if last - a < k - 1:
                    break
                reach = (last - a) // (k - 1)
                for j in range(i + 1, n):
                    d = arr[j] - a
                    if d > reach:
                        break
                    t = arr[j]
                    ok = True
                    for step in range(k - 2):
                        t += d
                        if not _member(arr, n, t):
                            ok = False
                            break
                    if ok:
                        break
                if ok:
                    break
        if ok:
            return (a, d)
        return None
    finally:
        free(arr)


cdef inline bint _point_member(const i64* xs, const i64* ys, Py_ssize_t n,
                               i64 x, i64 y) noexcept nogil:
    cdef Py_ssize_t lo = 0, hi = n, mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if ys[mid] < y or (ys[mid] == y and xs[mid] < x):
            lo = mid + 1
        else:
            hi = mid
    return lo < n and ys[lo] == y and xs[lo] == x


def find_grid(points, int s):
    cdef Py_ssize_t n = len(points), i, j, row_start, row_end
    cdef i64* xs = <i64*> malloc((n if n > 0 else 1) * sizeof(i64))
    cdef i64* ys = <i64*> malloc((n if n > 0 else 1) * sizeof(i64))
    cdef i64 x0, y0, side, row_max, max_y, span = s - 1
    cdef i64 best_side = -1, best_x = 0, best_y = 0
    cdef int ii, jj
    cdef bint ok
    if xs == NULL or ys == NULL:
        free(xs)
        free(ys)
        raise MemoryError()
    try:
        for i in range(n):
            xs[i] = points[i][0]
            ys[i] = points[i][1]
        max_y = ys[n - 1]
        with nogil:
            row_start = 0
            while row_start < n:
                y0 = ys[row_start]
                row_end = row_start
                while row_end < n and ys[row_end] == y0:
                    row_end += 1
                if max_y - y0 < span:
                    break
                row_max = xs[row_end - 1]
                for i in range(row_start, row_end):
                    x0 = xs[i]
                    for j in range(i + 1, row_end):
                        side = xs[j] - x0
                        if best_side >= 0 and side > best_side:
                            break
                        if side > (row_max - x0) // span or side > (max_y - y0) // span:
                            break
                        ok = True
                        for jj in range(s):
                            for ii in range(s):
                                if not _point_member(xs, ys, n, x0 + ii * side, y0 + jj * side):
                                    ok = False
                                    break
                            if not ok:
                                break
                        if ok and (best_side < 0 or side < best_side
                                   or (side == best_side and (x0 < best_x
                                       or (x0 == best_x and y0 < best_y)))):
                            best_side = side
                            best_x = x0
                            best_y = y0
                row_start = row_end
        if best_side < 0:
            return None
        return (best_x, best_y, best_side)
    finally:
        free(xs)
        free(ys)


def greedy_ap_free(int k, Py_ssize_t n):
    cdef char* chosen = <char*> calloc(n + 1, 1)
    cdef i64* picked = <i64*> malloc((n + 1) * sizeof(i64))
    cdef Py_ssize_t count = 0, c, x, d
    cdef int j
    cdef bint bad, ok
    if chosen == NULL or picked == NULL:
        free(chosen)
        free(picked)
        raise MemoryError()
    try:
        with nogil:
            for x in range(1, n + 1):
                bad = False
                for c in range(count):
                    d = x - picked[c]
                    if x - (k - 1) * d < 1:
                        continue
                    ok = True
                    for j in range(2, k):
                        if not chosen[x - j * d]:
                            ok = False
                            break
                    if ok:
                        bad = True
                        break
                if not bad:
                    chosen[x] = 1
                    picked[count] = x
                    count += 1
        return [picked[c] for c in range(count)]
    finally:
        free(chosen)
        free(picked)


cdef struct ApState:
    int k
    int n
    char* chosen
    char* best_set
    i64* bounds
    i64 best
    i64 floor
    i64 nodes
    i64 budget
    bint exhausted


cdef inline bint _ap_legal(ApState* st, int x) noexcept nogil:
    cdef int d = 1, j
    cdef bint full
    while x - (st.k - 1) * d >= 1:
        full = True
        for j in range(1, st.k):
            if not st.chosen[x - j * d]:
                full = False
                break
        if full:
            return False
        d += 1
    return True


cdef void _ap_visit(ApState* st, int x, i64 count) noexcept nogil:
    cdef i64 bound
    cdef int i
    if st.exhausted:
        return
    st.nodes += 1
    if st.budget >= 0 and st.nodes > st.budget:
        st.exhausted = True
        return
    if count > st.best:
        st.best = count
        for i in range(st.n + 1):
            st.best_set[i] = st.chosen[i]
    if x > st.n:
        return
    bound = count + st.bounds[st.n - x + 1]
    if bound <= st.best or bound < st.floor:
        return
    if _ap_legal(st, x):
        st.chosen[x] = 1
        _ap_visit(st, x + 1, count + 1)
        st.chosen[x] = 0
    _ap_visit(st, x + 1, count)


def ap_dfs(int k, int n, bounds, prefix, i64 floor, i64 budget):
    cdef ApState st
    cdef int x, p = len(prefix)
    cdef i64 count = 0
    st.k = k
    st.n = n
    st.chosen = <char*> calloc(n + 2, 1)
    st.best_set = <char*> calloc(n + 2, 1)
    st.bounds = _to_array(bounds)
    st.best = -1
    st.floor = floor
    st.nodes = 0
    st.budget = budget
    st.exhausted = False
    if st.chosen == NULL or st.best_set == NULL:
        free(st.chosen)
        free(st.best_set)
        free(st.bounds)
        raise MemoryError()
    try:
        for x in range(1, p + 1):
            if prefix[x - 1]:
                if not _ap_legal(&st, x):
                    return -1, (), 0, True
                st.chosen[x] = 1
                count += 1
        with nogil:
            _ap_visit(&st, p + 1, count)
        elems = tuple(x for x in range(1, n + 1) if st.best_set[x])
        nodes = st.budget if st.exhausted else st.nodes
        return st.best, elems, nodes, not st.exhausted
    finally:
        free(st.chosen)
        free(st.best_set)
        free(st.bounds)


cdef struct GridState:
    int s
    int n
    int total
    char* chosen
    char* best_set
    i64 best
    i64 nodes
    i64 budget
    bint exhausted


cdef inline bint _grid_legal(GridState* st, int idx) noexcept nogil:
    cdef int n = st.n, s = st.s, span = s - 1
    cdef int x = idx % n + 1, y = idx // n + 1
    cdef int side = 1, x0, y0, i, j, q
    cdef bint full
    while x - span * side >= 1 and y - span * side >= 1:
        x0 = x - span * side
        y0 = y - span * side
        full = True
        for j in range(s):
            for i in range(s):
                q = (y0 + j * side - 1) * n + (x0 + i * side - 1)
                if q != idx and not st.chosen[q]:
                    full = False
                    break
            if not full:
                break
        if full:
            return False
        side += 1
    return True


cdef void _grid_visit(GridState* st, int idx, i64 count) noexcept nogil:
    cdef int i
    if st.exhausted:
        return
    st.nodes += 1
    if st.budget >= 0 and st.nodes > st.budget:
        st.exhausted = True
        return
    if count > st.best:
        st.best = count
        for i in range(st.total):
            st.best_set[i] = st.chosen[i]
    if idx == st.total:
        return
    if count + (st.total - idx) <= st.best:
        return
    if _grid_legal(st, idx):
        st.chosen[idx] = 1
        _grid_visit(st, idx + 1, count + 1)
        st.chosen[idx] = 0
    _grid_visit(st, idx + 1, count)


def grid_dfs(int s, int n, i64 budget):
    cdef GridState st
    cdef int q
    st.s = s
    st.n = n
    st.total = n * n
    st.chosen = <char*> calloc(st.total + 1, 1)
    st.best_set = <char*> calloc(st.total + 1, 1)
    st.best = -1
    st.nodes = 0
    st.budget = budget
    st.exhausted = False
    if st.chosen == NULL or st.best_set == NULL:
        free(st.chosen)
        free(st.best_set)
        raise MemoryError()
    try:
        with nogil:
            _grid_visit(&st, 0, 0)
        pts = tuple((q % n + 1, q // n + 1) for q in range(st.total) if st.best_set[q])
        nodes = st.budget if st.exhausted else st.nodes
        return st.best, pts, nodes, not st.exhausted
    finally:
        free(st.chosen)
        free(st.best_set)


def row_bound_certify(i64 a):
    cdef u64 scale = (<u64> 1) << ROW_BOUND_BITS
    cdef u64 lower = 0, q, m, ua
    if a < 1 or a > 1000000000:
        return 0
    ua = <u64> a
    with nogil:
        for m in range(1, ua + 1):
            q = (ua + m) * (ua + m) + m * m
            lower += scale // q
    return 1 if lower * 5 * ua > scale else 0
