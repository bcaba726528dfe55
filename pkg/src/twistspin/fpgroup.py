"""Finitely presented groups with peripheral words.

Words are tuples of ``(generator index, nonzero exponent)`` syllables.  The
module provides free reduction, Tietze simplification, Smith normal form and
abelianization, and exhaustive hom counting into small symmetric groups.
"""

import re
from dataclasses import dataclass, field

from . import kernels
from .errors import DegreeTooLarge, MissingPeripheral, ParseError


class Word(tuple):
    """A freely reduced word; construct through ``Word.of`` or ``free_reduce``."""

    __slots__ = ()

    @classmethod
    def of(cls, syllables):
        return free_reduce(syllables)

    @classmethod
    def gen(cls, g, e=1):
        return cls(((g, e),)) if e else cls()

    def __mul__(self, other):
        return free_reduce(tuple(self) + tuple(other))

    def inverse(self):
        return Word((g, -e) for g, e in reversed(self))

    def letters(self):
        """Expand into (generator, +1 | -1) letters."""
        out = []
        for g, e in self:
            s = 1 if e > 0 else -1
            out.extend([(g, s)] * abs(e))
        return out

    def exponent_sums(self, ngens):
        v = [0] * ngens
        for g, e in self:
            v[g] += e
        return v

    def generators(self):
        return {g for g, _ in self}

    def power(self, k):
        if k < 0:
            return self.inverse().power(-k)
        return free_reduce(tuple(self) * k)


def free_reduce(syllables):
    out = []
    for g, e in syllables:
        if not e:
            continue
        if out and out[-1][0] == g:
            e += out.pop()[1]
            if e:
                out.append((g, e))
        else:
            out.append((g, e))
    return Word(out)


def cyclic_reduce(w):
    w = free_reduce(w)
    while len(w) > 1 and w[0][0] == w[-1][0]:
        g = w[0][0]
        e = w[0][1] + w[-1][1]
        w = free_reduce(((g, e),) + tuple(w[1:-1]))
    return w


def commutator(a, b):
    return a * b * a.inverse() * b.inverse()


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple
    relators: tuple = ()
    meridian: Word | None = None
    longitude: Word | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(free_reduce(r) for r in self.relators))
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generator names")
        ng = len(self.generators)
        words = list(self.relators)
        for attr in ("meridian", "longitude"):
            w = getattr(self, attr)
            if w is not None:
                w = free_reduce(w)
                object.__setattr__(self, attr, w)
                words.append(w)
        for w in words:
            for g, _ in w:
                if not 0 <= g < ng:
                    raise ValueError(f"generator index {g} out of range")

    @property
    def ngens(self):
        return len(self.generators)

    def require_peripheral(self):
        if self.meridian is None or self.longitude is None:
            raise MissingPeripheral("knot presentation needs meridian and longitude words")
        return self

    def word(self, text):
        return parse_word(text, self.generators)

    def fmt(self, w):
        return format_word(w, self.generators)


def add_relators(P, words):
    return GroupPresentation(
        P.generators, P.relators + tuple(free_reduce(w) for w in words),
        P.meridian, P.longitude, P.name,
    )


def fresh_name(taken, base="h"):
    if base not in taken:
        return base
    i = 1
    while f"{base}{i}" in taken:
        i += 1
    return f"{base}{i}"


def adjoin_central_generator(P, base="h"):
    """Add a generator commuting with every existing one (the X x S^1 factor)."""
    hname = fresh_name(set(P.generators), base)
    h = Word.gen(P.ngens)
    rels = P.relators + tuple(commutator(Word.gen(i), h) for i in range(P.ngens))
    return GroupPresentation(P.generators + (hname,), rels, P.meridian, P.longitude, P.name)


def abelianized(P):
    """Add all commutators of generator pairs."""
    extra = [
        commutator(Word.gen(i), Word.gen(j))
        for i in range(P.ngens)
        for j in range(i + 1, P.ngens)
    ]
    return add_relators(P, extra)


def free_product(presentations):
    """Disjoint union of generators and relators; returns (presentation, offsets)."""
    gens, rels, offsets = [], [], []
    for P in presentations:
        off = len(gens)
        offsets.append(off)
        gens.extend(P.generators)
        rels.extend(shift_word(r, off) for r in P.relators)
    return GroupPresentation(tuple(gens), tuple(rels)), offsets


def shift_word(w, off):
    return Word((g + off, e) for g, e in w)


# --- Tietze simplification -------------------------------------------------


def _substitute(w, g, image):
    out = []
    for h, e in w:
        if h == g:
            out.extend(image.power(e))
        else:
            out.append((h, e))
    return free_reduce(out)


def _eliminable(rel):
    """Generators occurring exactly once in ``rel``, with exponent +-1."""
    seen = {}
    for g, e in rel:
        seen.setdefault(g, []).append(e)
    return [g for g, es in seen.items() if len(es) == 1 and abs(es[0]) == 1]


def _solve(rel, g):
    i = next(k for k, (h, _) in enumerate(rel) if h == g)
    s = rel[i][1]
    A, B = Word(rel[:i]), Word(rel[i + 1:])
    # A g^s B = 1  =>  g^s = A^-1 B^-1
    val = A.inverse() * B.inverse()
    return val if s == 1 else val.inverse()


def simplify(P, keep=()):
    """Tietze-simplify: eliminate generators solvable from a single relator.

    Generators named in ``keep`` are never eliminated.  Peripheral words are
    rewritten along with the relators.  The result presents an isomorphic
    group.
    """
    gens = list(P.generators)
    rels = [cyclic_reduce(r) for r in P.relators]
    mer, lon = P.meridian, P.longitude
    keep = set(keep)
    while True:
        rels = _dedupe(rels)
        best = None
        for ri, r in enumerate(rels):
            for g in _eliminable(r):
                if gens[g] in keep:
                    continue
                cand = (len(r), ri, g)
                if best is None or cand < best:
                    best = cand
        if best is None:
            break
        _, ri, g = best
        image = _solve(rels[ri], g)
        rels = [cyclic_reduce(_substitute(r, g, image)) for k, r in enumerate(rels) if k != ri]
        if mer is not None:
            mer = _substitute(mer, g, image)
        if lon is not None:
            lon = _substitute(lon, g, image)
        gens.pop(g)
        rels = [_drop_index(r, g) for r in rels]
        mer = _drop_index(mer, g) if mer is not None else None
        lon = _drop_index(lon, g) if lon is not None else None
    return GroupPresentation(tuple(gens), tuple(rels), mer, lon, P.name)


def _drop_index(w, g):
    return Word((h - 1 if h > g else h, e) for h, e in w)


def _dedupe(rels):
    out, seen = [], set()
    for r in rels:
        if not r:
            continue
        key = min(r, r.inverse())
        if key in seen:
            continue
        seen.add(key)
        out.append(r)
    return out


# --- Smith normal form ----------------------------------------------------


def _identity(k):
    return [[int(i == j) for j in range(k)] for i in range(k)]


def smith_normal_form(M):
    """Return (S, U, V) with S = U*M*V, U and V unimodular, S diagonal.

    The diagonal is non-negative and each entry divides the next.  Works on
    a list of rows of Python ints; an empty row list is allowed.
    """
    rows = len(M)
    cols = len(M[0]) if rows else 0
    S = [list(map(int, r)) for r in M]
    U = _identity(rows)
    V = _identity(cols)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for R in S:
            R[i], R[j] = R[j], R[i]
        for R in V:
            R[i], R[j] = R[j], R[i]

    def add_row(src, dst, k):
        # row dst += k * row src
        S[dst] = [a + k * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, k):
        for R in S:
            R[dst] += k * R[src]
        for R in V:
            R[dst] += k * R[src]

    t = 0
    while t < min(rows, cols):
        # pivot: smallest nonzero absolute value in the remaining block
        piv = None
        for i in range(t, rows):
            for j in range(t, cols):
                if S[i][j] and (piv is None or abs(S[i][j]) < abs(S[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        done = False
        while not done:
            done = True
            p = S[t][t]
            for i in range(t + 1, rows):
                if S[i][t]:
                    add_row(t, i, -(S[i][t] // p))
                    if S[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if S[t][j]:
                    add_col(t, j, -(S[t][j] // p))
                    if S[t][j]:
                        done = False
            if not done:
                # move the smallest remainder in row/col t to the pivot
                best = (abs(S[t][t]), t, t)
                for i in range(t + 1, rows):
                    if S[i][t] and abs(S[i][t]) < best[0]:
                        best = (abs(S[i][t]), i, t)
                for j in range(t + 1, cols):
                    if S[t][j] and abs(S[t][j]) < best[0]:
                        best = (abs(S[t][j]), t, j)
                swap_rows(t, best[1])
                swap_cols(t, best[2])
                continue
            # pivot must divide the rest of the block
            p = S[t][t]
            bad = next(
                ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if S[i][j] % p),
                None,
            )
            if bad is not None:
                add_row(bad[0], t, 1)
                done = False
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return S, U, V


def mat_mul(A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(A))]


def determinant(M):
    """Exact integer determinant by fraction-free elimination (Bareiss)."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sgn, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if A[i][k]), None)
            if sw is None:
                return 0
            A[k], A[sw] = A[sw], A[k]
            sgn = -sgn
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sgn * A[n - 1][n - 1]


@dataclass(frozen=True)
class AbelianInvariants:
    rank: int
    torsion: tuple = ()

    @property
    def trivial(self):
        return self.rank == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def relation_matrix(P):
    return [r.exponent_sums(P.ngens) for r in P.relators]


def _abelian_data(P):
    M = relation_matrix(P)
    if not M:
        return [], _identity(P.ngens), []
    S, _, V = smith_normal_form(M)
    diag = [S[i][i] for i in range(min(len(S), P.ngens)) if S[i][i]]
    return diag, V, S


def abelianization(P):
    diag, _, _ = _abelian_data(P)
    return AbelianInvariants(P.ngens - len(diag), tuple(d for d in diag if d > 1))


def abelian_image(P, w):
    """Coordinates of ``w`` in H_1: (torsion residues, free coordinates).

    Torsion residues are listed for the factors Z/d with d > 1, in the order
    of ``abelianization(P).torsion``.
    """
    diag, V, _ = _abelian_data(P)
    x = w.exponent_sums(P.ngens)
    y = [sum(x[k] * V[k][j] for k in range(P.ngens)) for j in range(P.ngens)]
    tors = tuple(y[i] % d for i, d in enumerate(diag) if d > 1)
    free = tuple(y[len(diag):])
    return tors, free


def generates_h1(P, w):
    """True when H_1(P) is cyclic and the class of ``w`` generates it."""
    from math import gcd

    inv = abelianization(P)
    tors, free = abelian_image(P, w)
    if inv.rank + len(inv.torsion) > 1:
        return False
    if inv.rank == 1:
        return abs(free[0]) == 1
    if inv.torsion:
        return gcd(tors[0], inv.torsion[0]) == 1
    return True


# --- hom counting ---------------------------------------------------------

MAX_DEGREE = 6


def count_homs_symmetric(P, k, backend=None):
    """Number of homomorphisms from the presented group to S_k."""
    if k > MAX_DEGREE:
        raise DegreeTooLarge(f"degree {k} exceeds the cap of {MAX_DEGREE}")
    if k < 1:
        raise ValueError("degree must be at least 1")
    return kernels.count_homs(k, P.ngens, [r.letters() for r in P.relators], backend)


# --- text format ----------------------------------------------------------

_NAME = re.compile(r"[a-z][a-z0-9_]*\Z")
_TOKEN = re.compile(r"([A-Za-z][A-Za-z0-9_]*)(?:\^(-?\d+))?\Z")


def format_word(w, names):
    if not w:
        return "1"
    out = []
    for g, e in w:
        tok = names[g] if e > 0 else names[g].upper()
        out.append(tok if abs(e) == 1 else f"{tok}^{abs(e)}")
    return " ".join(out)


def parse_word(text, names, line=None):
    """Parse a token sequence; ``x`` is a generator, ``X`` its inverse, ``x^3`` a power."""
    index = {nm: i for i, nm in enumerate(names)}
    syl = []
    for tok in text.split():
        if tok == "1":
            continue
        mt = _TOKEN.match(tok)
        if not mt:
            raise ParseError(f"bad token {tok!r}", line)
        base, power = mt.group(1), int(mt.group(2) or 1)
        if base in index:
            syl.append((index[base], power))
        elif base.lower() in index and base == base.lower().upper() and base != base.lower():
            syl.append((index[base.lower()], -power))
        else:
            raise ParseError(f"undeclared generator {tok!r}", line)
    return free_reduce(syl)


def parse_presentation(text):
    """Read the knot file format: knot / gens / rel / meridian / longitude lines."""
    name, gens = "", None
    rels, mer, lon = [], None, None
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "knot":
            name = rest
        elif key == "gens":
            if gens is not None:
                raise ParseError("duplicate gens line", no)
            gens = rest.split()
            for g in gens:
                if not _NAME.match(g):
                    raise ParseError(f"bad generator name {g!r}", no)
            if len(set(gens)) != len(gens):
                raise ParseError("duplicate generator name", no)
        elif key in ("rel", "meridian", "longitude"):
            if gens is None:
                raise ParseError(f"{key} before gens", no)
            w = parse_word(rest, gens, no)
            if key == "rel":
                rels.append(w)
            elif key == "meridian":
                mer = w
            else:
                lon = w
        else:
            raise ParseError(f"unknown directive {key!r}", no)
    if gens is None:
        raise ParseError("missing gens line")
    P = GroupPresentation(tuple(gens), tuple(r for r in rels if r), mer, lon, name)
    return P.require_peripheral()


def format_presentation(P):
    lines = []
    if P.name:
        lines.append(f"knot {P.name}")
    lines.append(" ".join(("gens",) + P.generators))
    lines.extend("rel " + format_word(r, P.generators) for r in P.relators)
    if P.meridian is not None:
        lines.append("meridian " + format_word(P.meridian, P.generators))
    if P.longitude is not None:
        lines.append("longitude " + format_word(P.longitude, P.generators))
    return "\n".join(lines)
