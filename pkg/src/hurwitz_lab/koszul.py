"""Ordered Koszul complexes, the injective-maps complex and the stabilizer double complex.

A basis element of the ordered Koszul complex in degree ``p`` on a set ``S`` is
``(h, v, eta)``: an injection ``h: [p] -> S`` (a list of ``p+1`` distinct
points), labels ``v`` in ``c^{p+1}`` and a pure-braid orbit ``eta`` on the
sorted complement of ``im h``. Degree ``-1`` is the free module on orbits of
``c^S``.

Face ``d_i`` drops ``h(i)`` and ``v_i`` and places ``u = P^-1 v_i P`` at the
point ``h(i)``, to the left of ``eta``; here ``P = v_{i+1} ... v_p``. Every
placement goes through :meth:`HurwitzSystem.place`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .braids import PBR, HurwitzSystem, StabilizerElement, hurwitz_system
from .errors import (
    BudgetExceeded,
    ChainMapBroken,
    DegreeMismatch,
    FindingError,
    InvalidFace,
    MissingStabilizer,
    VanishingViolated,
)
from .groups import ConjClassSet
from .linalg import SparseMatrix, echelon, nullspace, rank

DEFAULT_BASIS_LIMIT = 200_000


# --- chain complexes ------------------------------------------------------------------


@dataclass(eq=False)
class ChainComplexData:
    """Graded bases with exact sparse differentials.

    ``differentials[p]`` maps degree ``p`` to degree ``p - 1``. Homology is
    meaningful for degrees ``lo .. complete_through``; the top built degree is
    only there to supply incoming boundaries.
    """

    kind: str
    lo: int
    hi: int
    bases: dict
    differentials: dict
    complete_through: int
    meta: dict = field(default_factory=dict)

    def dim(self, p: int) -> int:
        return len(self.bases.get(p, ()))

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def index(self, p: int) -> dict:
        cache = self.meta.setdefault("_index", {})
        if p not in cache:
            cache[p] = {b: i for i, b in enumerate(self.bases[p])}
        return cache[p]

    def d_squared_failures(self) -> list[int]:
        bad = []
        for p in range(self.lo + 2, self.hi + 1):
            if not (self.differentials[p - 1] @ self.differentials[p]).is_zero():
                bad.append(p)
        return bad

    def check_d_squared(self):
        bad = self.d_squared_failures()
        if bad:
            raise FindingError(f"d^2 != 0 in {self.kind} at degrees {bad}")


@dataclass(frozen=True)
class HomologyRow:
    degree: int
    dim: int
    rank_out: int
    rank_in: int

    @property
    def kernel(self) -> int:
        return self.dim - self.rank_out

    @property
    def homology(self) -> int:
        return self.kernel - self.rank_in


@dataclass(frozen=True)
class HomologyReport:
    kind: str
    rows: tuple[HomologyRow, ...]
    meta: tuple = ()

    def dims(self) -> dict:
        return {r.degree: r.homology for r in self.rows}

    def __getitem__(self, degree: int) -> int:
        for r in self.rows:
            if r.degree == degree:
                return r.homology
        raise KeyError(degree)

    def records(self) -> list[dict]:
        out = []
        for r in self.rows:
            rec = {
                "complex": self.kind,
                "degree": r.degree,
                "basis_dim": r.dim,
                "rank": r.rank_out,
                "kernel": r.kernel,
                "homology": r.homology,
            }
            if self.kind == "koszul":
                # H_i of K~ sits in degree i + 1 of the derived indecomposables
                rec["indecomposable_degree"] = r.degree + 1
            out.append(rec)
        return out

    def as_text(self) -> str:
        lines = ["complex degree basis_dim rank homology"]
        for r in self.rows:
            lines.append(f"{self.kind} {r.degree} {r.dim} {r.rank_out} {r.homology}")
        return "\n".join(lines) + "\n"


def homology_dims(cx: ChainComplexData, through: int | None = None) -> HomologyReport:
    """Exact homology dimensions in degrees ``lo .. through``."""
    top = cx.complete_through if through is None else min(through, cx.complete_through)
    ranks: dict = {}

    def rk(p):
        if p not in ranks:
            ranks[p] = rank(cx.differentials[p]) if p in cx.differentials else 0
        return ranks[p]

    rows = []
    for p in range(cx.lo, top + 1):
        rows.append(HomologyRow(p, cx.dim(p), rk(p), rk(p + 1)))
    meta = tuple(sorted((k, v) for k, v in cx.meta.items() if not k.startswith("_")))
    return HomologyReport(cx.kind, tuple(rows), meta)


def _matrix(rows_index: dict, ncols: int, images) -> SparseMatrix:
    cols = []
    for img in images:
        col: dict = {}
        for key, coeff in img:
            r = rows_index[key]
            col[r] = col.get(r, 0) + coeff
        cols.append({r: v for r, v in col.items() if v != 0})
    return SparseMatrix(len(rows_index), ncols, cols)


def _falling(n: int, k: int) -> int:
    return math.perm(n, k) if 0 <= k <= n else 0


# --- ordered Koszul complex -------------------------------------------------------------


@dataclass(frozen=True)
class KoszulBasisElement:
    """``(h, v, eta)`` on carrier ``S``; ``v`` holds group element indices."""

    carrier: tuple[int, ...]
    h: tuple[int, ...]
    v: tuple[int, ...]
    eta: int

    @property
    def p(self) -> int:
        return len(self.h) - 1

    def complement(self) -> tuple[int, ...]:
        used = set(self.h)
        return tuple(s for s in self.carrier if s not in used)


class KoszulEngine:
    """Face maps and bases for one ``(G, c)``, working in c-positions."""

    def __init__(self, c: ConjClassSet, system: HurwitzSystem | None = None):
        self.cls = c
        self.system = system or hurwitz_system(c)
        self.group = c.group
        self.k = len(c)

    def suffix_products(self, v) -> list[int]:
        """``out[i]`` is ``v_i ... v_p`` as a group element; ``out[p+1]`` is the identity."""
        G = self.group
        out = [G.identity] * (len(v) + 1)
        for i in range(len(v) - 1, -1, -1):
            out[i] = G.mul(self.system.element(v[i]), out[i + 1])
        return out

    def face(self, i: int, complement, h, v, eta):
        """``d_i`` on position data; ``complement`` is the sorted carrier of ``eta``."""
        sysm = self.system
        P = self.suffix_products(v)[i + 1]
        u = sysm.conj_pos(v[i], P)
        rep = sysm.rep(len(complement), eta)
        new_eta = sysm.place((h[i],) + tuple(complement), (u,) + rep)
        return h[:i] + h[i + 1 :], v[:i] + v[i + 1 :], new_eta

    def act(self, g, complement, h, v, eta):
        """Action of the monotone injection ``g: [q] -> [p]`` (given by its image list).

        Returns ``(h o g, v o g, i(u, h o r) . eta)`` with
        ``u_k = P_k^-1 v_{r_k} P_k`` and ``P_k`` the product of the kept labels
        to the right of ``r_k``.
        """
        p = len(h) - 1
        g = tuple(g)
        if any(a >= b for a, b in zip(g, g[1:])) or (g and (g[0] < 0 or g[-1] > p)):
            raise InvalidFace("g must be a strictly increasing map into [p]")
        kept = set(g)
        r = [j for j in range(p + 1) if j not in kept]
        G = self.group
        sysm = self.system
        u = []
        for rk in r:
            P = G.identity
            for j in g:
                if j > rk:
                    P = G.mul(P, sysm.element(v[j]))
            u.append(sysm.conj_pos(v[rk], P))
        rep = sysm.rep(len(complement), eta)
        new_eta = sysm.place(tuple(h[j] for j in r) + tuple(complement), tuple(u) + rep)
        return tuple(h[j] for j in g), tuple(v[j] for j in g), new_eta

    def basis(self, carrier, p: int):
        carrier = tuple(carrier)
        m = len(carrier) - p - 1
        n_eta = len(self.system.table(m, PBR))
        out = []
        for h in itertools.permutations(carrier, p + 1):
            for v in itertools.product(range(self.k), repeat=p + 1):
                for eta in range(n_eta):
                    out.append((h, v, eta))
        return out

    def basis_size(self, n: int, p: int, eta_count=None) -> int:
        m = n - p - 1
        if m < 0:
            return 0
        eta = eta_count if eta_count is not None else len(self.system.table(m, PBR))
        return _falling(n, p + 1) * self.k ** (p + 1) * eta

    def boundary_images(self, carrier, p: int, basis):
        carrier = tuple(carrier)
        for h, v, eta in basis:
            used = set(h)
            comp = tuple(s for s in carrier if s not in used)
            img = []
            for i in range(p + 1):
                img.append((self.face(i, comp, h, v, eta), -1 if i % 2 else 1))
            yield img


def _koszul_engine(c: ConjClassSet) -> KoszulEngine:
    return KoszulEngine(c)


def face_map(i: int, e: KoszulBasisElement, c: ConjClassSet) -> KoszulBasisElement:
    """The ``i``-th face of a basis element, returned in canonical form."""
    if not 0 <= i <= e.p:
        raise InvalidFace(f"face index {i} out of range for degree {e.p}")
    eng = _koszul_engine(c)
    v = tuple(c.position(x) for x in e.v)
    h, w, eta = eng.face(i, e.complement(), e.h, v, e.eta)
    return KoszulBasisElement(e.carrier, h, tuple(c.elements[x] for x in w), eta)


def delta_action(g, e: KoszulBasisElement, c: ConjClassSet) -> KoszulBasisElement:
    """Action of a monotone injection ``[q] -> [p]`` on a basis element."""
    eng = _koszul_engine(c)
    v = tuple(c.position(x) for x in e.v)
    h, w, eta = eng.act(g, e.complement(), e.h, v, e.eta)
    return KoszulBasisElement(e.carrier, h, tuple(c.elements[x] for x in w), eta)


def build_koszul(
    c: ConjClassSet,
    n: int,
    max_degree: int | None = None,
    basis_limit: int = DEFAULT_BASIS_LIMIT,
    check: bool = True,
) -> ChainComplexData:
    """The ordered Koszul complex on ``{1..n}``.

    With ``max_degree`` set, degrees up to ``max_degree + 1`` are built so that
    homology is exact through ``max_degree``.
    """
    eng = _koszul_engine(c)
    full_top = n - 1
    if max_degree is None or max_degree >= full_top:
        hi, complete = full_top, full_top
    else:
        hi, complete = max_degree + 1, max_degree
    carrier = tuple(range(1, n + 1))
    for p in range(-1, hi + 1):
        if p >= 0 and eng.basis_size(n, p) > basis_limit:
            raise BudgetExceeded(f"Koszul basis in degree {p} at n={n} exceeds {basis_limit}")
    bases = {-1: [((), (), o) for o in range(len(eng.system.table(n, PBR)))]}
    diffs = {}
    for p in range(0, hi + 1):
        bases[p] = eng.basis(carrier, p)
    index = {p: {b: i for i, b in enumerate(bases[p])} for p in bases}
    for p in range(0, hi + 1):
        diffs[p] = _matrix(index[p - 1], len(bases[p]), eng.boundary_images(carrier, p, bases[p]))
    cx = ChainComplexData("koszul", -1, hi, bases, diffs, complete, {"n": n, "group": c.group.name, "c": str(list(c.elements))})
    if check:
        cx.check_d_squared()
    return cx


@dataclass(frozen=True)
class VanishingRow:
    n: int
    h_minus1: int
    h_0: int
    expected_minus1: int

    @property
    def ok(self) -> bool:
        return self.h_minus1 == self.expected_minus1 and self.h_0 == 0


def low_degree_vanishing_check(c: ConjClassSet, n_range, raise_on_failure: bool = True) -> list[VanishingRow]:
    """``H_-1`` vanishes for ``n >= 1`` (it is ``K`` at ``n = 0``) and ``H_0`` vanishes always."""
    rows = []
    for n in n_range:
        cx = build_koszul(c, n, max_degree=0)
        rep = homology_dims(cx, through=0)
        h0 = rep[0] if n >= 1 else 0
        row = VanishingRow(n, rep[-1], h0, 1 if n == 0 else 0)
        if raise_on_failure and not row.ok:
            if row.h_minus1 != row.expected_minus1:
                raise VanishingViolated(n, -1, row.h_minus1)
            raise VanishingViolated(n, 0, row.h_0)
        rows.append(row)
    return rows


def right_mult_chain_map(c: ConjClassSet, g: int, src: ChainComplexData, tgt: ChainComplexData) -> dict:
    """Degree-wise matrices of ``eta -> eta . g`` from the complex at ``n`` to ``n + 1``."""
    eng = _koszul_engine(c)
    gpos = c.position(g)
    n = src.meta["n"]
    sysm = eng.system
    maps = {}
    for p in range(src.lo, min(src.hi, tgt.hi) + 1):
        tindex = tgt.index(p)
        m = n - p - 1
        images = []
        for h, v, eta in src.bases[p]:
            new_eta = sysm.table(m + 1, PBR).orbit_of_positions(sysm.rep(m, eta) + (gpos,))
            images.append([((h, v, new_eta), 1)])
        maps[p] = _matrix(tindex, len(src.bases[p]), images)
    return maps


@dataclass(frozen=True)
class RightMultRow:
    g: int
    n: int
    degree: int
    homology: int
    zero_on_homology: bool


def right_mult_homology_check(c: ConjClassSet, n: int, gs=None, src=None, tgt=None) -> list[RightMultRow]:
    """Check that right multiplication by each ``g`` is a chain map inducing zero on homology.

    A homology class is killed when the image of a cycle reduces to zero
    against an echelon form of the target boundaries. The echelon forms are
    shared across all ``g``.
    """
    gs = list(c.elements) if gs is None else list(gs)
    for g in gs:
        if g not in c:
            raise DegreeMismatch("g must lie in c")
    src = src or build_koszul(c, n)
    rep = homology_dims(src)
    live = [r.degree for r in rep.rows if r.homology]
    if tgt is None:
        tgt = build_koszul(c, n + 1, max_degree=max(live + [0]))
    cycles = {}
    bounds = {}
    for p in live:
        if p in src.differentials:
            cycles[p] = nullspace(src.differentials[p])
        else:
            cycles[p] = [{i: 1} for i in range(src.dim(p))]
        B = tgt.differentials.get(p + 1)
        bounds[p] = echelon(B.cols if B is not None else [])
    rows = []
    for g in gs:
        F = right_mult_chain_map(c, g, src, tgt)
        for p in range(src.lo + 1, min(src.hi, tgt.hi) + 1):
            if tgt.differentials[p] @ F[p] != F[p - 1] @ src.differentials[p]:
                raise ChainMapBroken(f"right multiplication by {g} fails to commute with the differential in degree {p}")
        for r in rep.rows:
            p = r.degree
            if r.homology == 0:
                rows.append(RightMultRow(g, n, p, 0, True))
                continue
            E = bounds[p]
            zero = all(E.contains(F[p].apply(z)) for z in cycles[p])
            rows.append(RightMultRow(g, n, p, r.homology, zero))
    return rows


def right_mult_homology_action(c: ConjClassSet, g: int, n: int, src=None, tgt=None) -> list[RightMultRow]:
    return right_mult_homology_check(c, n, [g], src, tgt)


@dataclass(frozen=True)
class ThresholdScan:
    n_max: int
    table: dict
    thresholds: dict
    envelope: tuple | None
    verdict: str

    def as_dict(self):
        return {
            "n_max": self.n_max,
            "homology": {str(d): {str(n): h for n, h in row.items()} for d, row in sorted(self.table.items())},
            "thresholds": {str(d): t for d, t in sorted(self.thresholds.items())},
            "envelope": None if self.envelope is None else {"aleph": self.envelope[0], "beth": self.envelope[1]},
            "verdict": self.verdict,
            "conclusive": False,
        }


def vanishing_threshold_scan(
    c: ConjClassSet, n_max: int, max_degree: int | None = None, basis_limit: int = DEFAULT_BASIS_LIMIT
) -> ThresholdScan:
    """Least ``n`` after which ``H_d`` of the Koszul complex vanishes through ``n_max``.

    ``d`` runs over ``-1 .. max_degree``. The envelope ``(aleph, beth)`` is the
    least-slope line ``n >= aleph * (d + 1) + beth`` above every observed
    threshold, indexed by ``i = d + 1``. Nothing is claimed beyond ``n_max``.
    """
    top = n_max - 1 if max_degree is None else max_degree
    table: dict = {d: {} for d in range(-1, top + 1)}
    reached = -1
    for n in range(0, n_max + 1):
        try:
            cx = build_koszul(c, n, max_degree=top, basis_limit=basis_limit)
        except BudgetExceeded:
            break
        reached = n
        rep = homology_dims(cx)
        for d in table:
            table[d][n] = rep[d] if d <= cx.complete_through else 0
    if reached < 1:
        return ThresholdScan(n_max, table, {}, None, "NoData")
    thresholds = {}
    for d, row in table.items():
        t = None
        for n in range(reached, -1, -1):
            if row.get(n, 0) != 0:
                break
            t = n
        thresholds[d] = t
    pts = [(d + 1, t) for d, t in thresholds.items() if t is not None]
    envelope = None
    if pts:
        slope = 0
        for (i1, t1), (i2, t2) in itertools.combinations(pts, 2):
            slope = max(slope, math.ceil(Fraction(t2 - t1, i2 - i1)))
        beth = max(t - slope * i for i, t in pts)
        envelope = (slope, beth)
    return ThresholdScan(reached, table, thresholds, envelope, "computed")


# --- injective-maps complex -----------------------------------------------------------


@dataclass(frozen=True)
class ConnectivityReport:
    s: int
    t: int
    bound: int
    homology: dict

    @property
    def ok(self) -> bool:
        return all(h == 0 for d, h in self.homology.items() if d <= self.bound)


def injective_words_bound(s: int, t: int) -> int:
    return math.floor(Fraction(s, 2 * t) - Fraction(3, 2))


def build_injective_words_complex(s: int, t: int, max_degree: int | None = None, basis_limit: int = DEFAULT_BASIS_LIMIT):
    """Augmented chains on injections ``T x [p] -> S`` (block-major tuples).

    Face ``d_i`` deletes block ``i``. Returns the complex and the reduced
    homology report through the connectivity bound.
    """
    bound = injective_words_bound(s, t)
    top_needed = max(bound, -1) + 1 if max_degree is None else max_degree + 1
    hi = -1
    while hi + 1 <= top_needed and t * (hi + 2) <= s:
        hi += 1
    points = range(s)
    bases = {-1: [()]}
    for p in range(0, hi + 1):
        if _falling(s, t * (p + 1)) > basis_limit:
            raise BudgetExceeded(f"injective-words basis in degree {p} exceeds {basis_limit}")
        bases[p] = list(itertools.permutations(points, t * (p + 1)))
    diffs = {}
    for p in range(0, hi + 1):
        index = {b: i for i, b in enumerate(bases[p - 1])}
        images = []
        for w in bases[p]:
            images.append([(w[: t * i] + w[t * (i + 1) :], -1 if i % 2 else 1) for i in range(p + 1)])
        diffs[p] = _matrix(index, len(bases[p]), images)
    complete = hi if t * (hi + 2) > s else hi - 1
    cx = ChainComplexData("injective_words", -1, hi, bases, diffs, complete, {"s": s, "t": t})
    cx.check_d_squared()
    rep = homology_dims(cx)
    homology = {r.degree: r.homology for r in rep.rows}
    return cx, ConnectivityReport(s, t, bound, homology)


# --- double complex ------------------------------------------------------------------------


def total_vanishing_bound(n: int, N: int, N0: int, Nc: int) -> int:
    a = Fraction(n, 2 * N) - Fraction(3, 2)
    b = Fraction(n - max(N0, Nc), N) - 2
    return math.floor(min(a, b) - 1)


@dataclass(frozen=True)
class DoubleComplexReport:
    n: int
    N: int
    bound: int
    commutes: bool
    horizontal_square_zero: bool
    vertical_square_zero: bool
    total_d_squared_zero: bool
    homology: dict
    bidegree_dims: dict

    @property
    def vanishing_ok(self) -> bool:
        return all(h == 0 for d, h in self.homology.items() if d <= self.bound)

    def as_dict(self):
        return {
            "n": self.n,
            "N": self.N,
            "bound": self.bound,
            "commutes": self.commutes,
            "horizontal_square_zero": self.horizontal_square_zero,
            "vertical_square_zero": self.vertical_square_zero,
            "total_d_squared_zero": self.total_d_squared_zero,
            "homology": {str(d): h for d, h in sorted(self.homology.items())},
            "vanishing_ok": self.vanishing_ok,
        }


class DoubleComplex:
    """Bigraded pieces ``C_{p,q}`` on ``{1..n}`` with ``N``-blocks of stabilizer points."""

    def __init__(self, c: ConjClassSet, n: int, stab: StabilizerElement, basis_limit: int = DEFAULT_BASIS_LIMIT):
        self.cls = c
        self.n = n
        self.stab = stab
        self.N = stab.N
        self.eng = _koszul_engine(c)
        self.sysm = self.eng.system
        self.basis_limit = basis_limit
        self.carrier = tuple(range(1, n + 1))
        self._bases: dict = {}
        self._index: dict = {}
        lift_table = self.sysm.table(self.N, PBR)
        self.lift_terms = [(lift_table.rep(o), q) for o, q in sorted(stab.lift.items())]

    def exists(self, p: int, q: int) -> bool:
        return p >= -1 and q >= -1 and self.N * (p + 1) + q + 1 <= self.n

    def size(self, p: int, q: int) -> int:
        if not self.exists(p, q):
            return 0
        m = self.n - self.N * (p + 1) - (q + 1)
        return _falling(self.n, self.N * (p + 1) + q + 1) * self.eng.k ** (q + 1) * len(self.sysm.table(m, PBR))

    def basis(self, p: int, q: int):
        key = (p, q)
        if key not in self._bases:
            if self.size(p, q) > self.basis_limit:
                raise BudgetExceeded(f"C_{{{p},{q}}} at n={self.n} exceeds {self.basis_limit}")
            out = []
            if self.exists(p, q):
                a = self.N * (p + 1)
                m = self.n - a - (q + 1)
                n_eta = len(self.sysm.table(m, PBR))
                for gf in itertools.permutations(self.carrier, a + q + 1):
                    g, f = gf[:a], gf[a:]
                    for v in itertools.product(range(self.eng.k), repeat=q + 1):
                        for eta in range(n_eta):
                            out.append((g, f, v, eta))
            self._bases[key] = out
            self._index[key] = {b: i for i, b in enumerate(out)}
        return self._bases[key]

    def index(self, p, q):
        self.basis(p, q)
        return self._index[(p, q)]

    def _complement(self, g, f):
        used = set(g) | set(f)
        return tuple(s for s in self.carrier if s not in used)

    def horizontal(self, p: int, q: int) -> SparseMatrix:
        """``C_{p,q} -> C_{p-1,q}``: alternating sum over blocks of right multiplication by the lift."""
        N = self.N
        src = self.basis(p, q)
        tgt = self.index(p - 1, q)
        images = []
        for g, f, v, eta in src:
            comp = self._complement(g, f)
            rep = self.sysm.rep(len(comp), eta)
            img = []
            for i in range(p + 1):
                block = g[N * i : N * (i + 1)]
                rest = g[: N * i] + g[N * (i + 1) :]
                sign = -1 if i % 2 else 1
                for urep, coeff in self.lift_terms:
                    new_eta = self.sysm.place(comp + block, rep + urep)
                    img.append(((rest, f, v, new_eta), sign * coeff))
            images.append(img)
        return _matrix(tgt, len(src), images)

    def vertical(self, p: int, q: int) -> SparseMatrix:
        """``C_{p,q} -> C_{p,q-1}``: the Koszul differential on the complement of ``im g``."""
        src = self.basis(p, q)
        tgt = self.index(p, q - 1)
        images = []
        for g, f, v, eta in src:
            comp = self._complement(g, f)
            img = []
            for i in range(q + 1):
                f2, v2, eta2 = self.eng.face(i, comp, f, v, eta)
                img.append(((g, f2, v2, eta2), -1 if i % 2 else 1))
            images.append(img)
        return _matrix(tgt, len(src), images)

    def bidegrees(self, d: int):
        return [(p, d - p) for p in range(-1, d + 2) if self.exists(p, d - p)]

    def total(self, max_degree: int) -> ChainComplexData:
        lo = -2
        hi = lo
        while hi + 1 <= max_degree + 1 and self.bidegrees(hi + 1):
            hi += 1
        bases = {}
        offsets = {}
        for d in range(lo, hi + 1):
            bases[d] = []
            for p, q in self.bidegrees(d):
                offsets[(p, q)] = len(bases[d])
                bases[d].extend((p, q) + b for b in self.basis(p, q))
        diffs = {}
        for d in range(lo + 1, hi + 1):
            cols = [dict() for _ in bases[d]]
            for p, q in self.bidegrees(d):
                off = offsets[(p, q)]
                parts = []
                if p >= 0:
                    parts.append(((p - 1, q), self.horizontal(p, q), 1))
                if q >= 0:
                    parts.append(((p, q - 1), self.vertical(p, q), -1 if p % 2 else 1))
                for tgt, M, sign in parts:
                    toff = offsets[tgt]
                    for j, col in enumerate(M.cols):
                        dest = cols[off + j]
                        for r, val in col.items():
                            dest[toff + r] = dest.get(toff + r, 0) + sign * val
            diffs[d] = SparseMatrix(len(bases[d - 1]), len(bases[d]), [{r: v for r, v in c.items() if v != 0} for c in cols])
        complete = hi if not self.bidegrees(hi + 1) else hi - 1
        return ChainComplexData("double_total", lo, hi, bases, diffs, complete, {"n": self.n, "N": self.N})


def build_double_complex(
    c: ConjClassSet,
    n: int,
    stab: StabilizerElement | None,
    Nc: int = 0,
    max_degree: int | None = None,
    basis_limit: int = DEFAULT_BASIS_LIMIT,
) -> DoubleComplexReport:
    """Build the double complex, check its identities and report total homology through the bound."""
    if stab is None:
        raise MissingStabilizer("a verified stabilizer lift is required")
    N0 = stab.N0 if stab.N0 is not None else 0
    bound = total_vanishing_bound(n, stab.N, N0, Nc)
    top = max(bound, -2) if max_degree is None else max_degree
    dc = DoubleComplex(c, n, stab, basis_limit)
    commutes = True
    hsq = True
    vsq = True
    for d in range(-2, top + 2):
        for p, q in dc.bidegrees(d):
            if p >= 0 and q >= 0:
                if dc.vertical(p - 1, q) @ dc.horizontal(p, q) != dc.horizontal(p, q - 1) @ dc.vertical(p, q):
                    commutes = False
            if p >= 1 and not (dc.horizontal(p - 1, q) @ dc.horizontal(p, q)).is_zero():
                hsq = False
            if q >= 1 and not (dc.vertical(p, q - 1) @ dc.vertical(p, q)).is_zero():
                vsq = False
    cx = dc.total(top)
    total_ok = not cx.d_squared_failures()
    rep = homology_dims(cx, through=top)
    dims = {}
    for d in range(-2, top + 2):
        for p, q in dc.bidegrees(d):
            dims[(p, q)] = dc.size(p, q)
    return DoubleComplexReport(n, stab.N, bound, commutes, hsq, vsq, total_ok, rep.dims(), dims)
