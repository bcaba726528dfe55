"""Exact 2x2 integer matrices for torus-cycle gluing maps.

Cycles are row vectors multiplied on the right, so the matrix of a composite
is the product in the order the maps are written.  Row 0 of a gluing matrix
is the image of the first cycle (c_theta1), row 1 of the second (c_theta2),
expressed in the target basis (c_theta, c_h).
"""

from dataclasses import dataclass

from .errors import NotCoprime, NotUnimodular, ZeroMNotSpun
from .orbitdata import BTSIndex, sign


@dataclass(frozen=True)
class Mat2:
    a: int
    b: int
    c: int
    d: int

    @classmethod
    def of(cls, rows):
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @property
    def rows(self):
        return ((self.a, self.b), (self.c, self.d))

    def det(self):
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __neg__(self):
        return mat_neg(self)

    def col(self, j):
        return (self.a, self.c) if j == 0 else (self.b, self.d)

    def __str__(self):
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


def mat_mul(A, B):
    return Mat2(
        A.a * B.a + A.b * B.c,
        A.a * B.b + A.b * B.d,
        A.c * B.a + A.d * B.c,
        A.c * B.b + A.d * B.d,
    )


def mat_neg(A):
    return Mat2(-A.a, -A.b, -A.c, -A.d)


def mat_inv(A):
    det = A.det()
    if det not in (1, -1):
        raise NotUnimodular(f"{A} has determinant {det}")
    return Mat2(det * A.d, -det * A.b, -det * A.c, det * A.a)


def normalize_sign(A):
    """Negate the whole matrix unless its first nonzero entry (row-major) is positive.

    Agrees with "top-left positive" whenever the top-left entry is nonzero and
    stays idempotent when it is zero.
    """
    for x in (A.a, A.b, A.c, A.d):
        if x:
            return A if x > 0 else mat_neg(A)
    return A


IDENTITY = Mat2(1, 0, 0, 1)
GLUCK = Mat2(1, -1, 0, 1)
U = Mat2(0, 1, -1, 1)
V = Mat2(0, -1, 1, 1)
W = Mat2(0, 1, -1, 0)
T = Mat2(1, 1, 0, 1)


@dataclass(frozen=True)
class BezoutPair:
    alpha: int
    beta: int
    m: int
    n: int
    eps: int


def _check_pair(m, n):
    if m == 0:
        raise ZeroMNotSpun("gluing matrices need m != 0")
    BTSIndex(m, n)


def canonical_bezout(m, n):
    """The unique (alpha, beta) with m*alpha + n*beta = eps and 0 <= beta < |m|."""
    _check_pair(m, n)
    eps, am = sign(m), abs(m)
    beta = (eps * pow(n, -1, am)) % am if am > 1 else 0
    alpha, rem = divmod(eps - n * beta, m)
    if rem:
        raise NotCoprime(f"no Bezout pair for ({m},{n})")
    return BezoutPair(alpha, beta, m, n, eps)


def g_matrix(m, n, bezout=None):
    """[[eps*m, -eps*n], [beta, alpha]]; determinant +1."""
    bz = canonical_bezout(m, n) if bezout is None else bezout
    e = sign(m)
    return Mat2(e * m, -e * n, bz.beta, bz.alpha)


@dataclass(frozen=True)
class ProofKit:
    m: int
    n: int
    bezout: BezoutPair
    g: Mat2
    gluck: Mat2
    u: Mat2
    v: Mat2
    w: Mat2
    lam: Mat2
    lam_prime: Mat2
    g_tilde: Mat2
    mu: Mat2
    mu_prime: Mat2

    @property
    def e(self):
        # e is glued with the same matrix as g
        return self.g


def proof_kit(m, n, bezout=None):
    bz = canonical_bezout(m, n) if bezout is None else bezout
    g = g_matrix(m, n, bz)
    lam = GLUCK
    lam_prime = g @ GLUCK
    g_tilde = lam_prime @ U
    mu = mat_inv(U) @ W
    mu_prime = g @ mat_inv(V)
    return ProofKit(m, n, bz, g, GLUCK, U, V, W, lam, lam_prime, g_tilde, mu, mu_prime)


IDENTITY_NAMES = ("det_g", "g_tilde", "mu", "mu_prime", "mu_prime_factor", "v_lam_w")


def check_identities(kit):
    """Map each identity name to whether it holds exactly for ``kit``."""
    e = sign(kit.m)
    m, n = kit.m, kit.n
    al, be = kit.bezout.alpha, kit.bezout.beta
    return {
        "det_g": kit.g.det() == 1,
        "g_tilde": kit.g_tilde == Mat2(e * (m + n), -e * n, be - al, al),
        "mu": kit.mu == T,
        "mu_prime": kit.mu_prime == Mat2(e * (m + n), e * m, be - al, be),
        "mu_prime_factor": normalize_sign(kit.g_tilde) @ T == normalize_sign(kit.mu_prime),
        "v_lam_w": kit.v @ kit.lam @ kit.w == IDENTITY,
    }


def coprime_pairs(bound):
    """All (m, n) with 1 <= |m| <= bound, 1 <= n <= bound, gcd 1, in a fixed order."""
    from math import gcd

    for n in range(1, bound + 1):
        for m in range(-bound, bound + 1):
            if m and gcd(m, n) == 1:
                yield m, n


def verify_sweep(bound):
    """Check every identity on every coprime pair up to ``bound``.

    Returns (pairs, failures) where failures lists ((m, n), name).
    """
    pairs, failures = 0, []
    for m, n in coprime_pairs(bound):
        pairs += 1
        for name, ok in check_identities(proof_kit(m, n)).items():
            if not ok:
                failures.append(((m, n), name))
    return pairs, failures


@dataclass(frozen=True)
class WeightVector:
    w1: int
    w2: int

    def __str__(self):
        return f"({self.w1},{self.w2})"


def initial_weights(m, n):
    """Rotation speeds (-eps*n, eps*m) of the action before the twist."""
    e = sign(m)
    return WeightVector(-e * n, e * m)


def transport_weights(wv, m=None, n=None):
    """Substitute theta2 -> theta2 - theta1: (w1, w2) -> (w1, w2 - w1).

    ``m`` and ``n`` are accepted for symmetry with the other constructors; the
    substitution itself does not depend on them.
    """
    return WeightVector(wv.w1, wv.w2 - wv.w1)


def untransport_weights(wv):
    return WeightVector(wv.w1, wv.w2 + wv.w1)


def normalize_weights(wv):
    """Flip both speeds so that w2 > 0, or w1 < 0 when w2 == 0 (reversing psi)."""
    if wv.w2 < 0 or (wv.w2 == 0 and wv.w1 > 0):
        return WeightVector(-wv.w1, -wv.w2)
    return wv
