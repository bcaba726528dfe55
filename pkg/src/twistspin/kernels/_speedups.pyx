# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels mirroring ``_pure``; same signatures, same results."""

from cpython.array cimport array

cdef int ADD_N = 0
cdef int SUB_N = 1
cdef int SWAP = 2


cdef inline long _gcd(long a, long b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef inline long _floor_mod(long a, long b) nogil:
    cdef long r = a % b
    if r < 0:
        r += b
    return r


cdef inline long _target_residue(long m, long n, bint nearest) nogil:
    cdef long r = _floor_mod(m, n)
    if nearest and 2 * r > n:
        r -= n
    return r


def reduction_moves(long m, long n, bint nearest=True):
    cdef list moves = []
    cdef long r, eps, k, i
    while n != 1:
        r = _target_residue(m, n, nearest)
        if m > r:
            k = (m - r) // n
            for i in range(k):
                moves.append(SUB_N)
        elif m < r:
            k = (r - m) // n
            for i in range(k):
                moves.append(ADD_N)
        m = r
        eps = 1 if m >= 0 else -1
        m, n = eps * n, eps * m
        moves.append(SWAP)
    return moves


def reduction_sweep(long bound, bint nearest=True):
    cdef long pairs = 0, total = 0, longest = 0, failures = 0
    cdef long m0, n0, m, n, r, step, eps, count
    with nogil:
        for n0 in range(1, bound + 1):
            for m0 in range(-bound, bound + 1):
                if m0 == 0:
                    if n0 != 1:
                        continue
                elif _gcd(m0, n0) != 1:
                    continue
                pairs += 1
                m = m0
                n = n0
                count = 0
                while n != 1:
                    r = _target_residue(m, n, nearest)
                    step = -n if m > r else n
                    while m != r:
                        m += step
                        count += 1
                        if _gcd(m, n) != 1:
                            failures += 1
                    eps = 1 if m >= 0 else -1
                    m, n = eps * n, eps * m
                    count += 1
                    if n < 1 or (m == 0 and n != 1) or _gcd(m, n) != 1:
                        failures += 1
                        break
                total += count
                if count > longest:
                    longest = count
    return pairs, total, longest, failures


def count_homs(int nperm, mul, inv, int ngens, letters, offsets, schedule):
    if ngens == 0:
        return 1
    cdef int[:] mul_v = array('i', mul)
    cdef int[:] inv_v = array('i', inv)
    cdef int[:] let_v = array('i', list(letters) or [0])
    cdef int[:] off_v = array('i', offsets)
    # schedule flattened: relators checked at depth d are sched_v[sched_off[d]:sched_off[d+1]]
    flat = []
    bounds = [0]
    for depth in range(ngens):
        flat.extend(schedule[depth])
        bounds.append(len(flat))
    cdef int[:] sched_v = array('i', flat or [0])
    cdef int[:] sched_off = array('i', bounds)
    cdef int[:] images = array('i', [0] * ngens)
    cdef int[:] nxt = array('i', [0] * ngens)
    cdef long long total = 0
    cdef int d = 0, j, r, i, acc, p, letter
    cdef bint ok
    with nogil:
        nxt[0] = 0
        while d >= 0:
            if nxt[d] == nperm:
                d -= 1
                continue
            images[d] = nxt[d]
            nxt[d] += 1
            ok = True
            for j in range(sched_off[d], sched_off[d + 1]):
                r = sched_v[j]
                acc = 0
                for i in range(off_v[r], off_v[r + 1]):
                    letter = let_v[i]
                    p = images[letter >> 1]
                    if letter & 1:
                        p = inv_v[p]
                    acc = mul_v[acc * nperm + p]
                if acc != 0:
                    ok = False
                    break
            if not ok:
                continue
            if d + 1 == ngens:
                total += 1
            else:
                d += 1
                nxt[d] = 0
    return total
