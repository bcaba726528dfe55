"""Piece complexes for S^4 along a branched twist spin, Gluck surgery on them,
and mechanical van Kampen extraction.

A closed complex has five pieces: two 4-balls, the solid-torus bundles over
the arcs E_m and E_n, and the free part X x S^1.  Each bundle is glued to the
free part along a torus; the edge matrix sends bundle cycle j (c_theta1 for
j = 0, c_theta2 for j = 1) to ``mu^M[0][j] h^M[1][j]``, with mu the knot
meridian and h the circle fibre.  In each bundle one cycle bounds the disk
fibre (it is "filled") and the other is homotopic to the core.

The E_m bundle fills c_theta1 and the E_n bundle fills c_theta2; both edges
carry g.  Balls are cones on their boundary, so their edges only matter for
connectivity.
"""

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum

from .errors import (
    DisconnectedComplex,
    InvalidIndex,
    InvalidState,
    NotUnimodular,
    WrongLabel,
)
from .fpgroup import (
    GroupPresentation,
    Word,
    abelianization,
    adjoin_central_generator,
    count_homs_symmetric,
    format_word,
    free_product,
    fresh_name,
    shift_word,
    simplify,
)
from .gluing import GLUCK, IDENTITY, Mat2, g_matrix, normalize_sign
from .orbitdata import BTSIndex, Site, sign

C_THETA1, C_THETA2 = "c_theta1", "c_theta2"
C_THETA, C_H = "c_theta", "c_h"
BUNDLE_CYCLES = (C_THETA1, C_THETA2)
E_M, E_N = "E_m", "E_n"

# Gluck matrix read in the E_m bundle's frame (its cycles play swapped roles)
GLUCK_SECOND = Mat2(1, 0, -1, 1)


class PieceKind(Enum):
    BALL4 = "Ball4"
    TORUS_BUNDLE = "TorusBundle"
    FREE_PART = "FreePart"


_KIND_ORDER = {PieceKind.BALL4: 0, PieceKind.TORUS_BUNDLE: 1, PieceKind.FREE_PART: 2}


@dataclass(frozen=True)
class Piece:
    ident: str
    kind: PieceKind
    presentation: GroupPresentation
    boundary_cycles: tuple = ()
    order: int | None = None
    arc: str | None = None

    def cycle(self, label):
        return dict(self.boundary_cycles)[label]

    def sort_key(self):
        return (_KIND_ORDER[self.kind], self.order or 0, self.arc or "", self.ident)

    def signature(self):
        return (self.kind.value, self.order, self.arc)


@dataclass(frozen=True)
class GluingEdge:
    source: str
    target: str
    matrix: Mat2
    filled: str | None = None

    def __post_init__(self):
        if self.matrix.det() not in (1, -1):
            raise NotUnimodular(f"edge {self.source}-{self.target} has matrix {self.matrix}")


@dataclass(frozen=True)
class PieceComplex:
    pieces: tuple
    edges: tuple
    label: str
    knot: GroupPresentation
    params: tuple = ()
    history: tuple = field(default=())

    def piece(self, ident):
        for p in self.pieces:
            if p.ident == ident:
                return p
        raise KeyError(ident)

    def bundle(self, arc):
        for p in self.pieces:
            if p.kind is PieceKind.TORUS_BUNDLE and p.arc == arc:
                return p
        raise KeyError(arc)

    def edge(self, source, target):
        for e in self.edges:
            if {e.source, e.target} == {source, target}:
                return e
        raise KeyError((source, target))

    @property
    def title(self):
        if self.label == "Complement":
            return f"Complement({self.params[0]},{self.params[1]})"
        if self.label == "GluckResult":
            return "GluckResult(" + ",".join(s.value for s in self.history) + ")"
        return f"ClosedS4({self.params[0]},{self.params[1]})"


def _ball(ident):
    return Piece(ident, PieceKind.BALL4, GroupPresentation(()))


def _bundle(ident, order, arc, filled):
    core = BUNDLE_CYCLES[1] if filled == C_THETA1 else BUNDLE_CYCLES[0]
    cycles = ((filled, Word()), (core, Word.gen(0)))
    P = GroupPresentation(("c",), (), Word.gen(0))
    return Piece(ident, PieceKind.TORUS_BUNDLE, P, tuple(sorted(cycles)), order, arc)


def _free_part(K):
    K = K.require_peripheral()
    P = adjoin_central_generator(K)
    h = Word.gen(P.ngens - 1)
    return Piece("X", PieceKind.FREE_PART, P, ((C_H, h), (C_THETA, K.meridian)))


def _check(m, n):
    idx = BTSIndex(m, n)
    if idx.is_spun:
        raise InvalidIndex("the complex along K^{m,n} requires m != 0")
    return idx


def build_closed_complex(K, m, n):
    """The five-piece decomposition of S^4 along K^{m,n}."""
    _check(m, n)
    g = g_matrix(m, n)
    X = _free_part(K)
    vm = _bundle("Vm", abs(m), E_M, C_THETA1)
    vn = _bundle("Vn", n, E_N, C_THETA2)
    pieces = (_ball("B1"), _ball("B2"), vm, vn, X)
    edges = (
        GluingEdge("Vm", "X", g, C_THETA1),
        GluingEdge("Vn", "X", g, C_THETA2),
        GluingEdge("B1", "Vm", IDENTITY),
        GluingEdge("B1", "Vn", IDENTITY),
        GluingEdge("B2", "Vm", IDENTITY),
        GluingEdge("B2", "Vn", IDENTITY),
    )
    return PieceComplex(pieces, edges, "ClosedS4", K, (m, n))


def build_complement_complex(K, m, n):
    """The exterior of K^{m,n}: the E_m bundle glued to X x S^1 by g."""
    _check(m, n)
    g = g_matrix(m, n)
    pieces = (_bundle("Vm", abs(m), E_M, C_THETA1), _free_part(K))
    edges = (GluingEdge("Vm", "X", g, C_THETA1),)
    return PieceComplex(pieces, edges, "Complement", K, (m, n))


def _reglue(c, ident, factor, site):
    pieces, edges = [], []
    for e in c.edges:
        if ident in (e.source, e.target):
            e = GluingEdge(e.source, e.target, e.matrix @ factor, e.filled)
        edges.append(e)
    main = next(e for e in edges if e.source == ident and e.target == "X")
    j = BUNDLE_CYCLES.index(main.filled)
    new_order = abs(main.matrix.col(j)[0])
    for p in c.pieces:
        if p.ident == ident:
            p = Piece(p.ident, p.kind, p.presentation, p.boundary_cycles, new_order, p.arc)
        pieces.append(p)
    return PieceComplex(tuple(pieces), tuple(edges), "GluckResult", c.knot, c.params,
                        c.history + (site,))


def apply_gluck(c, site):
    """Gluck twist along the 2-knot at ``site`` of a closed complex.

    ``Site.FIRST`` is K^{m,n} itself, whose neighbourhood is the E_n bundle
    with its balls; ``Site.SECOND`` is the partner, built on the E_m bundle.
    The affected edges are right-multiplied by the Gluck matrix, read in the
    frame of the bundle being reglued.
    """
    if c.label != "ClosedS4":
        raise WrongLabel(f"apply_gluck needs a ClosedS4 complex, got {c.title}")
    if site is Site.FIRST:
        return _reglue(c, "Vn", GLUCK, site)
    return _reglue(c, "Vm", GLUCK_SECOND, site)


# --- normal form and recognition -----------------------------------------


@dataclass(frozen=True)
class NormalForm:
    pieces: tuple
    core: Mat2 | None

    def __str__(self):
        return f"{self.core}"


def _filled_column(c, ident):
    e = next(e for e in c.edges if e.source == ident and e.target == "X")
    return e.matrix.col(BUNDLE_CYCLES.index(e.filled))


def core_matrix(c):
    """C = [s_m | s_n]: the filled columns of both bundle edges, normalized.

    s_m is sign-normalized, s_n is flipped to make det C = +1, and the h
    coordinate is shifted by a multiple of the meridian coordinate so the
    bottom-left entry lies in [0, |top-left|).  For a closed complex this is
    exactly g_matrix(m, n).
    """
    sm = _filled_column(c, c.bundle(E_M).ident)
    sn = _filled_column(c, c.bundle(E_N).ident)
    C = normalize_sign(Mat2(sm[0], 0, sm[1], 0))
    C = Mat2(C.a, sn[0], C.c, sn[1])
    det = C.det()
    if det == 0:
        raise NotUnimodular(f"degenerate complex: filled columns {sm}, {sn} are dependent")
    if det < 0:
        C = Mat2(C.a, -C.b, C.c, -C.d)
    top, col = (C.a, 0) if C.a else (C.b, 1)
    pivot = C.c if col == 0 else C.d
    k = -(pivot // abs(top)) * sign(top)
    return Mat2(C.a, C.b, C.c + k * C.a, C.d + k * C.b)


def normal_form(c):
    pieces = tuple(sorted(Counter(p.signature() for p in c.pieces).items(),
                          key=lambda kv: (kv[0][0], kv[0][1] or 0, kv[0][2] or "")))
    core = core_matrix(c) if c.label != "Complement" else normalize_sign(c.edges[0].matrix)
    return NormalForm(pieces, core)


def strictly_isomorphic(a, b):
    return normal_form(a) == normal_form(b)


def recognize(c):
    """Read (m, n) back off a closed or twisted complex's core matrix."""
    C = core_matrix(c)
    n = abs(C.b)
    if n == 0:
        raise InvalidState("degenerate complex: no branch index")
    ep = -sign(C.b)
    return BTSIndex(ep * C.a, n)


def relabel(c):
    """Rebuild a twisted complex as the closed complex of its recognized index."""
    idx = recognize(c)
    if idx.is_spun:
        raise InvalidState("the complex is the spun-knot degenerate case (0,1)")
    return build_closed_complex(c.knot, idx.m, idx.n)


# --- van Kampen ---------------------------------------------------------


def _check_connected(c):
    ids = [p.ident for p in c.pieces]
    adj = {i: set() for i in ids}
    for e in c.edges:
        if e.source not in adj or e.target not in adj:
            raise DisconnectedComplex(f"edge {e.source}-{e.target} names a missing piece")
        adj[e.source].add(e.target)
        adj[e.target].add(e.source)
    if not ids:
        return
    seen, stack = {ids[0]}, [ids[0]]
    while stack:
        for j in adj[stack.pop()]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    if len(seen) != len(ids):
        raise DisconnectedComplex(f"pieces {sorted(set(ids) - seen)} are unreachable")


def vankampen_pi1(c, simplified=False):
    """Presentation of pi_1 from pieces, identification and filling relators.

    Generators are those of the non-ball pieces (bundle cores renamed after
    their piece).  For each bundle edge and each bundle cycle j the relator
    ``w_j * image_j^-1`` is added, where ``w_j`` is the cycle's word in the
    bundle (empty for the filled cycle) and ``image_j`` its image through the
    edge matrix.  For a complement the meridian of the result is the core of
    the E_m bundle.
    """
    _check_connected(c)
    live = [p for p in sorted(c.pieces, key=Piece.sort_key) if p.kind is not PieceKind.BALL4]
    taken = {nm for p in live if p.kind is not PieceKind.TORUS_BUNDLE
             for nm in p.presentation.generators}
    renamed = []
    for p in live:
        P = p.presentation
        if p.kind is PieceKind.TORUS_BUNDLE:
            nm = fresh_name(taken, p.ident.lower())
            taken.add(nm)
            P = GroupPresentation((nm,), P.relators)
        renamed.append(P)
    F, offsets = free_product(renamed)
    off = {p.ident: o for p, o in zip(live, offsets)}
    by_id = {p.ident: p for p in live}
    rels = list(F.relators)
    for e in c.edges:
        if e.source not in by_id or e.target not in by_id:
            continue
        src, dst = by_id[e.source], by_id[e.target]
        basis = [shift_word(dst.cycle(C_THETA), off[dst.ident]),
                 shift_word(dst.cycle(C_H), off[dst.ident])]
        for j, lab in enumerate(BUNDLE_CYCLES):
            a, b = e.matrix.col(j)
            image = basis[0].power(a) * basis[1].power(b)
            w = shift_word(src.cycle(lab), off[src.ident])
            rels.append(w * image.inverse())
    meridian = None
    if c.label == "Complement":
        meridian = Word.gen(off["Vm"])
    P = GroupPresentation(F.generators, tuple(r for r in rels if r), meridian, None, c.title)
    return simplify(P) if simplified else P


def h1(c):
    return abelianization(vankampen_pi1(c))


@dataclass(frozen=True)
class CertificateReport:
    title: str
    h1: object
    counts: tuple
    generators: int
    skipped: bool = False

    @property
    def h1_trivial(self):
        return self.h1.trivial

    @property
    def homs_trivial(self):
        return all(v == 1 for _, v in self.counts)

    def lines(self):
        yield f"complex {self.title}"
        yield f"H1 {self.h1} ({'trivial' if self.h1_trivial else 'nontrivial'})"
        if self.skipped:
            yield f"hom counts skipped ({self.generators} generators after simplification)"
        for k, v in self.counts:
            yield f"homs to S{k}: {v}"
        kmax = max((k for k, _ in self.counts), default=0)
        if self.h1_trivial and self.homs_trivial and not self.skipped:
            yield f"certificate: H1 trivial, no nontrivial homs to S_k for k <= {kmax}"
        else:
            yield "certificate: not established"
        yield "note: evidence only; pi1 triviality is not claimed"


def sphere_certificate(c, kmax=4, max_generators=None):
    """H_1 and S_k hom counts (k <= kmax) for a closed or twisted complex."""
    P = vankampen_pi1(c, simplified=True)
    inv = abelianization(P)
    if max_generators is not None and P.ngens > max_generators:
        return CertificateReport(c.title, inv, (), P.ngens, True)
    counts = tuple((k, count_homs_symmetric(P, k)) for k in range(1, kmax + 1))
    return CertificateReport(c.title, inv, counts, P.ngens)


# --- text dump ------------------------------------------------------------


def dump(c):
    lines = [f"complex {c.title} knot={c.knot.name or '?'}"]
    for p in sorted(c.pieces, key=Piece.sort_key):
        line = f"piece {p.kind.value} {p.ident}"
        if p.order is not None:
            line += f" order={p.order} arc={p.arc}"
        lines.append(line)
        for lab, w in p.boundary_cycles:
            lines.append(f"  cycle {lab} -> {format_word(w, p.presentation.generators)}")
    for e in sorted(c.edges, key=lambda e: (e.source, e.target)):
        fill = f" fill={e.filled}" if e.filled else ""
        lines.append(f"edge {e.source}-{e.target} matrix={e.matrix}{fill}")
    return "\n".join(lines)


__all__ = [
    "CertificateReport",
    "GluingEdge",
    "NormalForm",
    "Piece",
    "PieceComplex",
    "PieceKind",
    "apply_gluck",
    "build_closed_complex",
    "build_complement_complex",
    "core_matrix",
    "dump",
    "fresh_name",
    "h1",
    "normal_form",
    "recognize",
    "relabel",
    "sphere_certificate",
    "strictly_isomorphic",
    "vankampen_pi1",
]
