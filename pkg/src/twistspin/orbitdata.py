"""Branched-twist-spin indices, twin states and their Gluck rewrites.

An index (m, n) names the 2-knot K^{m,n}: n >= 1 is the branch index, m the
twist index, |m| and n coprime, and (0, 1) reserved for the spun knot.  The
two singular 2-knots of one circle action form a twin
(K^{m,n}, K^{eps*n, eps*m}).

Orientation signs follow one rule throughout: ``sign(0) == +1``.  This makes
eps (sign of m), eps' (sign of m + n) and eps'' (sign of 2m + n) total; the
value at zero only matters on the degenerate indices (0, 1), (-1, 1), (-1, 2).

On orbit data the Gluck twist along the partner replaces the order-m branch by
one of order m + n, taking {K, m, n} to {K, m + n, n}.  Read against the
original labels it is the E_m arc that changes, even though one can also
describe the picture as E*_n being replaced by E*_{m+n}; ``orbit_rewrite``
follows the index bookkeeping.
"""

from dataclasses import dataclass, field
from enum import Enum
from math import gcd

from . import kernels
from .errors import (
    InvalidIndex,
    InvalidState,
    NonPositiveN,
    NotCoprime,
    SpunKnotHasNoPartner,
    ZeroMNotSpun,
)


def sign(k):
    return 1 if k >= 0 else -1


@dataclass(frozen=True, order=True)
class BTSIndex:
    m: int
    n: int

    def __post_init__(self):
        if self.n <= 0:
            raise NonPositiveN(f"branch index must be positive, got n={self.n}")
        if self.m == 0:
            if self.n != 1:
                raise ZeroMNotSpun(f"m = 0 requires n = 1 (spun knot), got n={self.n}")
        elif gcd(self.m, self.n) != 1:
            raise NotCoprime(f"|m| and n must be coprime, got ({self.m},{self.n})")

    @property
    def is_spun(self):
        return self.m == 0

    @property
    def eps(self):
        return sign(self.m)

    def __str__(self):
        return f"({self.m},{self.n})"


def validate_index(m, n):
    return BTSIndex(m, n)


@dataclass(frozen=True)
class SignConvention:
    eps: int
    eps_prime: int
    eps_dprime: int


def signs(idx):
    m, n = idx.m, idx.n
    return SignConvention(sign(m), sign(m + n), sign(2 * m + n))


def twin_partner(idx):
    """The other singular 2-knot of the same action: (eps*n, eps*m)."""
    if idx.is_spun:
        raise SpunKnotHasNoPartner("the spun knot (0,1) has no twin partner")
    e = idx.eps
    return BTSIndex(e * idx.n, e * idx.m)


class Site(Enum):
    """Member of a twin along which a Gluck twist is performed.

    FIRST is the knot itself, SECOND its partner.  A twist at SECOND rewrites
    (m, n) to (m + n, n); the branch it replaces carries order m under the
    original labels, not n.
    """

    FIRST = "first"
    SECOND = "second"

    @property
    def other(self):
        return Site.SECOND if self is Site.FIRST else Site.FIRST


SPUN = BTSIndex(0, 1)


@dataclass(frozen=True)
class TwinState:
    """A 2-knot and its twin partner, with the sites twisted so far.

    A state whose rewrite hit m + n = 0 holds the spun knot in ``first`` and
    ``None`` in ``second``; it is terminal.
    """

    first: BTSIndex
    second: BTSIndex | None
    history: tuple = field(default=())

    def __post_init__(self):
        if self.second is None:
            if self.first != SPUN:
                raise InvalidState("only the spun knot may lack a partner")
            return
        if self.first.is_spun or twin_partner(self.first) != self.second:
            raise InvalidState(f"{self.second} is not the twin partner of {self.first}")

    @classmethod
    def of(cls, idx):
        return cls(idx, twin_partner(idx))

    @property
    def terminal(self):
        return self.second is None

    def member(self, site):
        return self.first if site is Site.FIRST else self.second

    def __str__(self):
        return f"({self.first},{self.second if self.second is not None else '-'})"


def rewrite_pair(idx):
    """Images of (twisted member, other member) under a Gluck twist along ``idx``.

    Returns ``None`` for the twisted member when m + n = 0; the other member
    is then the spun knot.
    """
    m, n = idx.m, idx.n
    e, ep = sign(m), sign(m + n)
    other = BTSIndex(e * (m + n), e * m) if m + n != 0 else SPUN
    twisted = BTSIndex(ep * m, ep * (m + n)) if m + n != 0 else None
    return twisted, other


def gluck_rewrite(state, site):
    if state.terminal:
        raise SpunKnotHasNoPartner("cannot twist a terminal (spun-knot) state")
    # re-check the partner relation: callers may hand us a hand-built state
    if twin_partner(state.first) != state.second:
        raise InvalidState(f"{state.second} is not the twin partner of {state.first}")
    twisted, other = rewrite_pair(state.member(site))
    history = state.history + (site,)
    if twisted is None:
        return TwinState(SPUN, None, history)
    if site is Site.FIRST:
        return TwinState(twisted, other, history)
    return TwinState(other, twisted, history)


def double_gluck_check(idx):
    """Check that two Gluck twists along K^{m,n} give K^{e''m, e''(2m+n)}.

    The target comes from the closed formula; the replay applies
    ``gluck_rewrite`` twice at the first site.  Raises ``InvalidIndex`` when the
    target is not an index (2m + n = 0) and ``SpunKnotHasNoPartner`` when the
    replay passes through the spun knot (m + n = 0).
    """
    if idx.is_spun:
        raise SpunKnotHasNoPartner("the spun knot (0,1) has no twin partner")
    e2 = sign(2 * idx.m + idx.n)
    target = BTSIndex(e2 * idx.m, e2 * (2 * idx.m + idx.n))
    state = TwinState.of(idx)
    for _ in range(2):
        state = gluck_rewrite(state, Site.FIRST)
        if state.terminal:
            raise SpunKnotHasNoPartner(f"replay from {idx} reaches the spun knot")
    if state.first != target:
        raise AssertionError(f"replay gives {state.first}, formula gives {target}")
    return idx, target


@dataclass(frozen=True)
class OrbitData:
    """The record {(S^3, K), m, n} of a circle action with two exceptional orders."""

    knot_label: str
    m: int
    n: int

    def __post_init__(self):
        BTSIndex(self.m, self.n)

    @property
    def index(self):
        return BTSIndex(self.m, self.n)

    def __str__(self):
        return f"{{{self.knot_label},{self.m},{self.n}}}"


def orbit_rewrite(data):
    """Orbit data after the Gluck twist along the partner: {K, m+n, n}."""
    if data.m == 0:
        raise SpunKnotHasNoPartner("orbit data with m = 0 has no partner to twist")
    return OrbitData(data.knot_label, data.m + data.n, data.n)


class Move(Enum):
    ADD_N = "AddN"
    SUB_N = "SubN"
    SWAP = "Swap"


_MOVE_CODES = {kernels.ADD_N: Move.ADD_N, kernels.SUB_N: Move.SUB_N, kernels.SWAP: Move.SWAP}


def apply_move(idx, move):
    if move is Move.ADD_N:
        return BTSIndex(idx.m + idx.n, idx.n)
    if move is Move.SUB_N:
        return BTSIndex(idx.m - idx.n, idx.n)
    return twin_partner(idx)


@dataclass(frozen=True)
class ReductionTrace:
    start: BTSIndex
    steps: tuple
    terminal: BTSIndex

    def __len__(self):
        return len(self.steps)

    def lines(self):
        yield f"start {self.start}"
        for move, result in self.steps:
            yield f"{move.value:<4} -> {result}"
        yield f"terminal {self.terminal} ({len(self.steps)} moves)"


STRATEGIES = ("nearest", "floor")


def reduce_to_base(idx, strategy="nearest"):
    """Euclidean reduction of an index to some (k, 1).

    ``nearest`` shifts m to its least absolute residue mod n before each swap,
    ``floor`` to its least non-negative residue.  Every intermediate pair is
    rebuilt as a ``BTSIndex``, so an invalid step would raise.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    codes = kernels.reduction_moves(idx.m, idx.n, strategy == "nearest")
    steps = []
    cur = idx
    for code in codes:
        move = _MOVE_CODES[code]
        cur = apply_move(cur, move)
        steps.append((move, cur))
    return ReductionTrace(idx, tuple(steps), cur)


def reduction_sweep(bound, strategy="nearest"):
    """Reduce every index with |m|, n <= bound; see ``kernels.reduction_sweep``."""
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    return kernels.reduction_sweep(bound, strategy == "nearest")


INEQUIVALENT = "inequivalent, homeomorphic complements"
INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class ClassificationReport:
    index: BTSIndex
    nontrivial: bool
    verdict: str
    pair: tuple | None
    reason: str

    def __str__(self):
        if self.pair is None:
            return f"{self.index}: {self.verdict} ({self.reason})"
        a, b = self.pair
        return f"{a} vs {b}: {self.verdict} ({self.reason})"


def classify(idx, nontrivial):
    """Apply the odd-m criterion for complement-sharing inequivalent pairs.

    Never asserts more than the criterion gives: for odd m and a non-trivial
    K^{m,n}, K^{m,n} and K^{e'm, e'(m+n)} are inequivalent with homeomorphic
    complements.  Everything else is reported as indeterminate.
    """
    if idx.m % 2 == 0:
        return ClassificationReport(idx, nontrivial, INDETERMINATE, None, "m is even")
    if not nontrivial:
        return ClassificationReport(
            idx, nontrivial, INDETERMINATE, None, "non-triviality not asserted"
        )
    if idx.m + idx.n == 0:
        return ClassificationReport(
            idx, nontrivial, INDETERMINATE, None, "m + n = 0 has no image index"
        )
    ep = sign(idx.m + idx.n)
    other = BTSIndex(ep * idx.m, ep * (idx.m + idx.n))
    return ClassificationReport(idx, nontrivial, INEQUIVALENT, (idx, other), "m odd, non-trivial")


__all__ = [
    "BTSIndex",
    "ClassificationReport",
    "InvalidIndex",
    "Move",
    "OrbitData",
    "ReductionTrace",
    "SPUN",
    "SignConvention",
    "Site",
    "TwinState",
    "apply_move",
    "classify",
    "double_gluck_check",
    "gluck_rewrite",
    "orbit_rewrite",
    "reduce_to_base",
    "reduction_sweep",
    "rewrite_pair",
    "sign",
    "signs",
    "twin_partner",
    "validate_index",
]
