"""Pure-Python kernels; the reference behaviour for the compiled versions."""

from math import gcd

ADD_N, SUB_N, SWAP = 0, 1, 2


def _target_residue(m, n, nearest):
    r = m % n
    if nearest and 2 * r > n:
        r -= n
    return r


def reduction_moves(m, n, nearest=True):
    """Move codes taking (m, n) to a pair with n = 1."""
    moves = []
    while n != 1:
        r = _target_residue(m, n, nearest)
        if m > r:
            moves.extend([SUB_N] * ((m - r) // n))
        elif m < r:
            moves.extend([ADD_N] * ((r - m) // n))
        m = r
        eps = 1 if m >= 0 else -1
        m, n = eps * n, eps * m
        moves.append(SWAP)
    return moves


def reduction_sweep(bound, nearest=True):
    """Reduce every valid index with |m|, n <= bound, checking each step.

    Returns (pairs, total_moves, max_moves, failures).  A failure is any
    intermediate pair that is not a valid index, or a terminal with n != 1.
    """
    pairs = total = longest = failures = 0
    for n0 in range(1, bound + 1):
        for m0 in range(-bound, bound + 1):
            if m0 == 0:
                if n0 != 1:
                    continue
            elif gcd(m0, n0) != 1:
                continue
            pairs += 1
            m, n = m0, n0
            count = 0
            while n != 1:
                r = _target_residue(m, n, nearest)
                step = -n if m > r else n
                while m != r:
                    m += step
                    count += 1
                    if gcd(m, n) != 1:
                        failures += 1
                eps = 1 if m >= 0 else -1
                m, n = eps * n, eps * m
                count += 1
                if n < 1 or (m == 0 and n != 1) or gcd(m, n) != 1:
                    failures += 1
                    break
            total += count
            if count > longest:
                longest = count
    return pairs, total, longest, failures


def count_homs(nperm, mul, inv, ngens, letters, offsets, schedule):
    """Count generator-image tuples in a permutation group satisfying relators.

    ``mul`` and ``inv`` are flat index tables over ``nperm`` permutations with
    identity at index 0.  Relator ``r`` occupies ``letters[offsets[r]:offsets[r+1]]``;
    a letter is ``2*g`` for generator ``g`` and ``2*g + 1`` for its inverse.
    ``schedule[d]`` lists the relators whose largest generator index is ``d``;
    they are checked as soon as generator ``d`` has an image.
    """
    if ngens == 0:
        return 1
    images = [0] * ngens
    total = 0

    def satisfied(d):
        for r in schedule[d]:
            acc = 0
            for i in range(offsets[r], offsets[r + 1]):
                letter = letters[i]
                p = images[letter >> 1]
                if letter & 1:
                    p = inv[p]
                acc = mul[acc * nperm + p]
            if acc != 0:
                return False
        return True

    def descend(d):
        nonlocal total
        for p in range(nperm):
            images[d] = p
            if not satisfied(d):
                continue
            if d + 1 == ngens:
                total += 1
            else:
                descend(d + 1)

    descend(0)
    return total
