"""Hot loops: Euclidean reduction sweeps and hom-count enumeration.

The compiled extension is used when it was built; otherwise the pure-Python
module is.  Setting ``TWISTSPIN_PURE=1`` forces the fallback.  Both expose
``reduction_moves``, ``reduction_sweep`` and ``count_homs`` with identical
results.
"""

import os
from functools import lru_cache
from itertools import permutations

from . import _pure

ADD_N, SUB_N, SWAP = _pure.ADD_N, _pure.SUB_N, _pure.SWAP

_backend = _pure
if os.environ.get("TWISTSPIN_PURE", "") in ("", "0"):
    try:
        from . import _speedups as _backend
    except ImportError:
        _backend = _pure

BACKEND = "compiled" if _backend is not _pure else "pure"


def backends():
    """Available backend modules keyed by name (used by tests and benchmarks)."""
    found = {"pure": _pure}
    try:
        from . import _speedups
    except ImportError:
        pass
    else:
        found["compiled"] = _speedups
    return found


# the compiled kernels work in C longs; larger indices take the pure path
_LONG_SAFE = 2**61


def reduction_moves(m, n, nearest=True):
    if abs(m) >= _LONG_SAFE or n >= _LONG_SAFE:
        return _pure.reduction_moves(m, n, nearest)
    return _backend.reduction_moves(m, n, nearest)


def reduction_sweep(bound, nearest=True):
    return _backend.reduction_sweep(bound, nearest)


@lru_cache(maxsize=None)
def symmetric_tables(k):
    """(nperm, mul, inv) for the symmetric group on k points, identity first."""
    perms = list(permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    nperm = len(perms)
    mul = [0] * (nperm * nperm)
    for i, p in enumerate(perms):
        row = i * nperm
        for j, q in enumerate(perms):
            mul[row + j] = index[tuple(p[x] for x in q)]
    inv = [0] * nperm
    for i, p in enumerate(perms):
        q = [0] * k
        for a, b in enumerate(p):
            q[b] = a
        inv[i] = index[tuple(q)]
    return nperm, tuple(mul), tuple(inv)


def pack_relators(ngens, relators):
    """Flatten relator letter lists for ``count_homs``.

    ``relators`` is a sequence of letter sequences, each letter a pair
    ``(generator, +1 | -1)``.  Relators without letters are dropped.
    """
    letters, offsets, schedule = [], [0], [[] for _ in range(ngens)]
    for rel in relators:
        if not rel:
            continue
        r = len(offsets) - 1
        for g, s in rel:
            letters.append(2 * g + (1 if s < 0 else 0))
        offsets.append(len(letters))
        schedule[max(g for g, _ in rel)].append(r)
    return letters, offsets, schedule


def count_homs(k, ngens, relators, backend=None):
    nperm, mul, inv = symmetric_tables(k)
    letters, offsets, schedule = pack_relators(ngens, relators)
    impl = _backend if backend is None else backend
    return impl.count_homs(nperm, mul, inv, ngens, letters, offsets, schedule)
