"""Braid and pure-braid actions on tuples from a conjugation-invariant set.

Tuples are handled internally as tuples of *positions* in ``c`` (the index of
the element in the sorted list ``c.elements``), so that the integer code
``sum t_i * |c|^(n-1-i)`` orders tuples lexicographically by element index.
The public :class:`LabeledTuple` carries group element indices.

A point of the ordered Hurwitz space on a finite set ``S`` is a pure-braid
orbit of tuples indexed by ``S`` in increasing order. Products and relabelings
produce tuples whose points are listed in some other order; :meth:`HurwitzSystem.place`
moves them back to increasing order with Artin generators. Any braid lift of
the required permutation gives the same pure-braid orbit, because the pure
braid group is normal in the braid group.
"""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import __version__
from .errors import EnumerationBudgetExceeded, InvalidElement, InvalidStrand, StrandMismatch
from .groups import ConjClassSet, conjugation_quandle
from .linalg import SparseMatrix, rank

BR = "Br"
PBR = "PBr"
FLAVORS = (BR, PBR)

DEFAULT_TUPLE_LIMIT = 2_000_000
CACHE_ENV = "HURWITZ_LAB_CACHE"
CACHE_FORMAT = 1


@dataclass(frozen=True)
class LabeledTuple:
    """A tuple in ``c^S``: ``labels[i]`` sits at the ``i``-th smallest point of ``carrier``."""

    carrier: tuple[int, ...]
    labels: tuple[int, ...]

    def __post_init__(self):
        carrier = tuple(int(s) for s in self.carrier)
        labels = tuple(int(x) for x in self.labels)
        if len(carrier) != len(labels):
            raise ValueError("carrier and labels differ in length")
        if any(s <= 0 for s in carrier) or any(a >= b for a, b in zip(carrier, carrier[1:])):
            raise ValueError("carrier must be strictly increasing positive integers")
        object.__setattr__(self, "carrier", carrier)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def standard(cls, labels) -> LabeledTuple:
        labels = tuple(labels)
        return cls(tuple(range(1, len(labels) + 1)), labels)

    def __len__(self):
        return len(self.labels)


@dataclass(frozen=True)
class BraidWord:
    """Word in Artin generators; letter ``j`` is sigma_j, ``-j`` its inverse."""

    strand_count: int
    letters: tuple[int, ...]

    def __post_init__(self):
        letters = tuple(int(x) for x in self.letters)
        for x in letters:
            if x == 0 or abs(x) > self.strand_count - 1:
                raise InvalidStrand(f"letter {x} out of range for {self.strand_count} strands")
        object.__setattr__(self, "letters", letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        if other.strand_count != self.strand_count:
            raise StrandMismatch("strand counts differ")
        return BraidWord(self.strand_count, self.letters + other.letters)

    def inverse(self) -> BraidWord:
        return BraidWord(self.strand_count, tuple(-x for x in reversed(self.letters)))

    def permutation(self) -> tuple[int, ...]:
        """Underlying permutation: entry ``i`` is the final position (0-based) of the strand starting at ``i``."""
        where = list(range(self.strand_count))  # where[pos] = strand currently at pos
        for x in reversed(self.letters):
            j = abs(x) - 1
            where[j], where[j + 1] = where[j + 1], where[j]
        out = [0] * self.strand_count
        for pos, strand in enumerate(where):
            out[strand] = pos
        return tuple(out)


def pure_braid_generators(n: int) -> list[BraidWord]:
    """The standard generators ``A_ij`` (``1 <= i < j <= n``) of the pure braid group."""
    gens = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            conj = list(range(j - 1, i, -1))  # sigma_{j-1} ... sigma_{i+1}
            letters = conj + [i, i] + [-x for x in reversed(conj)]
            gens.append(BraidWord(n, tuple(letters)))
    return gens


# --- tuple-level actions ---------------------------------------------------------


def _check_labels(t: LabeledTuple, c: ConjClassSet):
    for x in t.labels:
        if x not in c:
            raise InvalidElement(f"label {x} is not in c")


def _artin(vals: list, j: int, G, inverse=False):
    a, b = vals[j - 1], vals[j]
    if not inverse:
        vals[j - 1], vals[j] = G.conjugate(b, a), a
    else:
        vals[j - 1], vals[j] = b, G.conjugate(a, int(G.inv[b]))


def act_artin(j: int, t: LabeledTuple, c: ConjClassSet) -> LabeledTuple:
    """sigma_j: positions ``j, j+1`` become ``(c_{j+1}^{c_j}, c_j)`` (1-based ``j``)."""
    n = len(t)
    if not 1 <= j <= n - 1:
        raise InvalidStrand(f"strand index {j} out of range for {n} strands")
    _check_labels(t, c)
    vals = list(t.labels)
    _artin(vals, j, c.group)
    return LabeledTuple(t.carrier, tuple(vals))


def act_artin_inverse(j: int, t: LabeledTuple, c: ConjClassSet) -> LabeledTuple:
    """sigma_j^-1: ``(c_j, c_{j+1}) -> (c_{j+1}, c_j^{c_{j+1}^-1})``."""
    n = len(t)
    if not 1 <= j <= n - 1:
        raise InvalidStrand(f"strand index {j} out of range for {n} strands")
    _check_labels(t, c)
    vals = list(t.labels)
    _artin(vals, j, c.group, inverse=True)
    return LabeledTuple(t.carrier, tuple(vals))


def act_braid_word(w: BraidWord, t: LabeledTuple, c: ConjClassSet) -> LabeledTuple:
    """Left action: the rightmost letter acts first."""
    if w.strand_count != len(t):
        raise StrandMismatch(f"word on {w.strand_count} strands applied to a {len(t)}-tuple")
    _check_labels(t, c)
    vals = list(t.labels)
    for x in reversed(w.letters):
        _artin(vals, abs(x), c.group, inverse=x < 0)
    return LabeledTuple(t.carrier, tuple(vals))


# --- orbit tables ---------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class OrbitTable:
    """Orbits of ``Br_n`` or ``PBr_n`` on ``c^n``.

    ``index[code]`` is the orbit id of the tuple with that code, ``reps[o]`` the
    code of the lexicographically least tuple of orbit ``o``; ids follow the
    order of their representatives.
    """

    cls: ConjClassSet
    n: int
    flavor: str
    index: np.ndarray
    reps: np.ndarray
    sizes: np.ndarray

    def __len__(self):
        return len(self.reps)

    @property
    def k(self) -> int:
        return len(self.cls)

    def encode(self, positions) -> int:
        code = 0
        k = self.k
        for p in positions:
            code = code * k + p
        return code

    def decode(self, code: int) -> tuple[int, ...]:
        k = self.k
        out = [0] * self.n
        for i in range(self.n - 1, -1, -1):
            code, out[i] = divmod(code, k)
        return tuple(out)

    def rep(self, o: int) -> tuple[int, ...]:
        """Canonical representative of orbit ``o`` as c-positions."""
        return self.decode(int(self.reps[o]))

    def orbit_of_positions(self, positions) -> int:
        return int(self.index[self.encode(positions)])

    def orbit_of(self, t: LabeledTuple) -> int:
        if len(t) != self.n:
            raise StrandMismatch("tuple length differs from table degree")
        return self.orbit_of_positions([self.cls.position(x) for x in t.labels])

    def canonical_rep(self, o: int) -> LabeledTuple:
        els = self.cls.elements
        return LabeledTuple.standard(els[p] for p in self.rep(o))

    def boundary(self, o: int) -> int:
        """Product of the entries of a representative (constant on orbits)."""
        els = self.cls.elements
        return self.cls.group.product(els[p] for p in self.rep(o))

    def csv_rows(self):
        G = self.cls.group
        yield ("orbit_id", "size", "canonical_rep")
        for o in range(len(self)):
            rep = " ".join(G.element_name(x) for x in self.canonical_rep(o).labels)
            yield (o, int(self.sizes[o]), rep)


def _digits(n: int, k: int) -> np.ndarray:
    total = k**n
    codes = np.arange(total, dtype=np.int64)
    out = np.empty((total, n), dtype=np.int32)
    for i in range(n - 1, -1, -1):
        codes, out[:, i] = np.divmod(codes, k)
    return out


def _apply_letter(D: np.ndarray, x: int, Q: np.ndarray, Qinv: np.ndarray) -> np.ndarray:
    j = abs(x)
    out = D.copy()
    a = D[:, j - 1]
    b = D[:, j]
    if x > 0:
        out[:, j - 1] = Q[b, a]
        out[:, j] = a
    else:
        out[:, j - 1] = b
        out[:, j] = Qinv[a, b]
    return out


def _compute_table(cls: ConjClassSet, n: int, flavor: str) -> OrbitTable:
    k = len(cls)
    total = k**n
    Q = conjugation_quandle(cls.group, cls).op
    # Qinv[x, y] = y^-1 x y, i.e. the inverse of x -> x^y
    Qinv = np.empty_like(Q)
    for y in range(k):
        Qinv[Q[:, y], y] = np.arange(k)
    if n <= 1:
        index = np.arange(total, dtype=np.int64)
        reps = np.arange(total, dtype=np.int64)
        return OrbitTable(cls, n, flavor, index, reps, np.ones(total, dtype=np.int64))
    D = _digits(n, k)
    powers = k ** np.arange(n - 1, -1, -1, dtype=np.int64)
    words = [(j,) for j in range(1, n)] if flavor == BR else [w.letters for w in pure_braid_generators(n)]
    src, dst = [], []
    base = np.arange(total, dtype=np.int64)
    for letters in words:
        img = D
        for x in reversed(letters):
            img = _apply_letter(img, x, Q, Qinv)
        src.append(base)
        dst.append(img.astype(np.int64) @ powers)
    src = np.concatenate(src)
    dst = np.concatenate(dst)
    g = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(total, total))
    ncomp, labels = connected_components(g, directed=True, connection="weak")
    mins = np.full(ncomp, total, dtype=np.int64)
    np.minimum.at(mins, labels, base)
    order = np.argsort(mins, kind="stable")
    rank = np.empty(ncomp, dtype=np.int64)
    rank[order] = np.arange(ncomp)
    index = rank[labels]
    reps = mins[order]
    sizes = np.bincount(index, minlength=ncomp).astype(np.int64)
    return OrbitTable(cls, n, flavor, index, reps, sizes)


def _cache_path(cls: ConjClassSet, n: int, flavor: str) -> Path | None:
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    elems = "-".join(map(str, cls.elements))
    return Path(root) / f"orbits_{cls.group.content_hash}_{elems}_{n}_{flavor}.npz"


def _header(cls, n, flavor):
    return {
        "format": CACHE_FORMAT,
        "group_hash": cls.group.content_hash,
        "c": list(cls.elements),
        "n": n,
        "flavor": flavor,
        "code_version": __version__,
    }


def _load_cached(cls, n, flavor) -> OrbitTable | None:
    path = _cache_path(cls, n, flavor)
    if path is None or not path.exists():
        return None
    try:
        with np.load(path) as data:
            header = json.loads(str(data["header"]))
            if header != _header(cls, n, flavor):
                return None
            return OrbitTable(cls, n, flavor, data["index"], data["reps"], data["sizes"])
    except (OSError, KeyError, ValueError):
        return None


def _store_cached(table: OrbitTable):
    path = _cache_path(table.cls, table.n, table.flavor)
    if path is None:
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp.npz")
    header = json.dumps(_header(table.cls, table.n, table.flavor), sort_keys=True)
    np.savez_compressed(tmp, header=np.array(header), index=table.index, reps=table.reps, sizes=table.sizes)
    os.replace(tmp, path)


_TABLES: dict = {}


def enumerate_orbits(c: ConjClassSet, n: int, flavor: str = BR, limit: int = DEFAULT_TUPLE_LIMIT) -> OrbitTable:
    """All ``Br_n`` (or ``PBr_n``) orbits on ``c^n``, memoized per ``(G, c, n, flavor)``."""
    if flavor not in FLAVORS:
        raise ValueError(f"flavor must be one of {FLAVORS}")
    if n < 0:
        raise ValueError("degree must be non-negative")
    # checked before the memo so the outcome never depends on earlier calls
    if len(c) ** n > limit:
        raise EnumerationBudgetExceeded(f"|c|^n = {len(c)}^{n} exceeds the tuple limit {limit}")
    key = (c.key, n, flavor)
    table = _TABLES.get(key)
    if table is not None:
        return table
    table = _load_cached(c, n, flavor)
    if table is None:
        table = _compute_table(c, n, flavor)
        _store_cached(table)
    for arr in (table.index, table.reps, table.sizes):
        arr.setflags(write=False)
    _TABLES[key] = table
    return table


@dataclass(frozen=True)
class BijectivityVerdict:
    n: int
    br_orbits: int
    pbr_orbits: int

    @property
    def holds(self) -> bool:
        # PBr orbits refine Br orbits, so equal counts means the forgetful map is a bijection
        return self.br_orbits == self.pbr_orbits

    def __bool__(self):
        return self.holds


def orbit_quotient_bijectivity(c: ConjClassSet, n: int, limit: int = DEFAULT_TUPLE_LIMIT) -> BijectivityVerdict:
    br = enumerate_orbits(c, n, BR, limit)
    pbr = enumerate_orbits(c, n, PBR, limit)
    return BijectivityVerdict(n, len(br), len(pbr))


@dataclass(frozen=True)
class NcScan:
    verdicts: tuple[BijectivityVerdict, ...]
    empirical_nc: int | None
    monotone: bool
    n_max: int

    def as_dict(self):
        return {
            "n_max": self.n_max,
            "empirical_Nc": self.empirical_nc,
            "monotone": self.monotone,
            "per_n": [
                {"n": v.n, "br_orbits": v.br_orbits, "pbr_orbits": v.pbr_orbits, "bijective": v.holds}
                for v in self.verdicts
            ],
        }


def scan_nc(c: ConjClassSet, n_max: int, limit: int = DEFAULT_TUPLE_LIMIT) -> NcScan:
    """Least ``n0`` such that Br- and PBr-orbits agree for every ``n0 <= n <= n_max``.

    ``monotone`` is False when bijectivity holds at some ``n >= 2`` and fails
    later in the window; that is reported, not raised.
    """
    verdicts = []
    for n in range(n_max + 1):
        try:
            verdicts.append(orbit_quotient_bijectivity(c, n, limit))
        except EnumerationBudgetExceeded:
            break
    nc = None
    for v in reversed(verdicts):
        if not v.holds:
            break
        nc = v.n
    seen_true = False
    monotone = True
    for v in verdicts:
        if v.n < 2:
            continue  # Br_0 and Br_1 are trivial
        if v.holds:
            seen_true = True
        elif seen_true:
            monotone = False
    return NcScan(tuple(verdicts), nc, monotone, verdicts[-1].n if verdicts else -1)


# --- Hurwitz system: placement of labelled points --------------------------------


class HurwitzSystem:
    """Orbit tables and point-placement for one pair ``(G, c)``."""

    def __init__(self, c: ConjClassSet, limit: int = DEFAULT_TUPLE_LIMIT):
        self.cls = c
        self.group = c.group
        self.limit = limit
        self.k = len(c)
        op = conjugation_quandle(c.group, c).op
        self.q = op.tolist()  # q[x][y] = x^y on positions
        qinv = [[0] * self.k for _ in range(self.k)]
        for x in range(self.k):
            for y in range(self.k):
                qinv[self.q[x][y]][y] = x
        self.qinv = qinv  # qinv[x][y] = y^-1 x y
        self.elements = c.elements
        self._pos = {x: i for i, x in enumerate(c.elements)}

    def table(self, n: int, flavor: str = PBR) -> OrbitTable:
        return enumerate_orbits(self.cls, n, flavor, self.limit)

    def position(self, x: int) -> int:
        return self._pos[x]

    def element(self, p: int) -> int:
        return self.elements[p]

    def sort_points(self, labels, values):
        """Move points listed in configuration order to increasing label order.

        Each adjacent swap applies sigma_j, so the values change by conjugation.
        Returns ``(sorted_labels, values)``.
        """
        labels = list(labels)
        values = list(values)
        q = self.q
        for i in range(1, len(labels)):
            j = i
            while j > 0 and labels[j - 1] > labels[j]:
                a, b = values[j - 1], values[j]
                values[j - 1], values[j] = q[b][a], a
                labels[j - 1], labels[j] = labels[j], labels[j - 1]
                j -= 1
        return labels, values

    def place(self, labels, values) -> int:
        """PBr-orbit id of the point of OHur on ``set(labels)`` given in configuration order."""
        _, vals = self.sort_points(labels, values)
        return self.table(len(vals), PBR).orbit_of_positions(vals)

    def rep(self, n: int, o: int, flavor: str = PBR) -> tuple[int, ...]:
        return self.table(n, flavor).rep(o)

    def boundary(self, positions) -> int:
        return self.group.product(self.elements[p] for p in positions)

    def conj_pos(self, p: int, g: int) -> int:
        """Position of ``g^-1 x g`` where ``x`` is the element at position ``p``."""
        G = self.group
        return self._pos[G.mul(G.mul(int(G.inv[g]), self.elements[p]), g)]


_SYSTEMS: dict = {}


def hurwitz_system(c: ConjClassSet, limit: int = DEFAULT_TUPLE_LIMIT) -> HurwitzSystem:
    key = (c.key, limit)
    s = _SYSTEMS.get(key)
    if s is None:
        s = _SYSTEMS[key] = HurwitzSystem(c, limit)
    return s


def symmetric_action(perm, o: int, c: ConjClassSet, n: int | None = None) -> int:
    """Action of a permutation of ``{1..n}`` on PBr-orbit ids of ``c^n``.

    ``perm[i-1]`` is the image of ``i``. The point labelled ``i`` is relabelled
    ``perm(i)`` and the points are then braided back into increasing order.
    """
    perm = tuple(int(x) for x in perm)
    n = len(perm) if n is None else n
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError("perm must be a permutation of 1..n")
    sysm = hurwitz_system(c)
    return sysm.place(perm, sysm.rep(n, o))


def concat_product(a: int, m: int, b: int, n: int, c: ConjClassSet, flavor: str = BR) -> int:
    """Orbit of the concatenation of representatives: degree ``m`` times degree ``n``."""
    sysm = hurwitz_system(c)
    ta = sysm.table(m, flavor)
    tb = sysm.table(n, flavor)
    return sysm.table(m + n, flavor).orbit_of_positions(ta.rep(a) + tb.rep(b))


# --- graded component ring and central stabilizer ------------------------------


class GradedComponentRing:
    """The ring spanned by Br-orbit classes of ``c^n`` for ``0 <= n <= n_max``."""

    def __init__(self, c: ConjClassSet, n_max: int, limit: int = DEFAULT_TUPLE_LIMIT):
        self.cls = c
        self.system = hurwitz_system(c, limit)
        self.n_max = n_max
        self.tables = [self.system.table(n, BR) for n in range(n_max + 1)]

    def dim(self, n: int) -> int:
        return len(self.tables[n])

    def unit(self) -> int:
        return 0

    def product(self, a: int, m: int, b: int, n: int) -> int:
        if m + n > self.n_max:
            raise ValueError(f"degree {m + n} exceeds the ring bound {self.n_max}")
        return self.tables[m + n].orbit_of_positions(self.tables[m].rep(a) + self.tables[n].rep(b))

    def multiply(self, x: dict, m: int, y: dict, n: int) -> dict:
        """Product of two linear combinations ``{orbit id: coefficient}``."""
        out: dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                o = self.product(a, m, b, n)
                out[o] = out.get(o, 0) + ca * cb
        return {k: v for k, v in out.items() if v != 0}

    def right_mult_matrix(self, u: dict, N: int, n: int) -> SparseMatrix:
        cols = []
        for a in range(self.dim(n)):
            cols.append(self.multiply({a: 1}, n, u, N))
        return SparseMatrix(self.dim(n + N), self.dim(n), cols)

    def is_central(self, u: dict, N: int) -> bool:
        """Commutes with every degree-1 class (the ring is generated in degree 1)."""
        for x in range(self.dim(1)):
            if self.multiply({x: 1}, 1, u, N) != self.multiply(u, N, {x: 1}, 1):
                return False
        return True


@dataclass(frozen=True)
class StabilizerElement:
    """A degree-``N`` class ``U`` with a lift to pure-braid orbits."""

    cls: ConjClassSet
    N: int
    coefficients: tuple[tuple[int, Fraction], ...]
    lift_coefficients: tuple[tuple[int, Fraction], ...]
    N0: int | None = None
    window_end: int | None = None

    @property
    def u(self) -> dict:
        return dict(self.coefficients)

    @property
    def lift(self) -> dict:
        return dict(self.lift_coefficients)

    def describe(self) -> dict:
        br = enumerate_orbits(self.cls, self.N, BR)
        pbr = enumerate_orbits(self.cls, self.N, PBR)
        G = self.cls.group

        def show(table, o):
            return " ".join(G.element_name(x) for x in table.canonical_rep(o).labels)

        return {
            "N": self.N,
            "N0": self.N0,
            "window_end": self.window_end,
            "U": [{"orbit": o, "rep": show(br, o), "coeff": str(q)} for o, q in self.coefficients],
            "U_lift": [{"orbit": o, "rep": show(pbr, o), "coeff": str(q)} for o, q in self.lift_coefficients],
        }


def lift_to_pure(c: ConjClassSet, u: dict, N: int) -> dict:
    """Lift each Br-orbit class to its lexicographically least PBr sub-orbit."""
    br = enumerate_orbits(c, N, BR)
    pbr = enumerate_orbits(c, N, PBR)
    out: dict = {}
    for o, q in u.items():
        p = pbr.orbit_of_positions(br.rep(o))
        out[p] = out.get(p, 0) + q
    return out


@dataclass(frozen=True)
class StabilizerSearch:
    found: StabilizerElement | None
    tried: int
    reason: str

    def __bool__(self):
        return self.found is not None


def _constant_classes(ring: GradedComponentRing, N: int) -> dict:
    """Sum of the classes of constant tuples ``(x, ..., x)``, ``x`` in ``c``."""
    table = ring.tables[N]
    out: dict = {}
    for p in range(len(ring.cls)):
        o = table.orbit_of_positions((p,) * N)
        out[o] = out.get(o, 0) + 1
    return out


def _candidates(ring: GradedComponentRing, N: int, max_combinations: int):
    dim = ring.dim(N)
    seen = set()

    def fresh(u):
        key = tuple(sorted(u.items()))
        if key in seen:
            return False
        seen.add(key)
        return True

    for o in range(dim):
        if fresh({o: 1}):
            yield {o: 1}
    everything = {o: 1 for o in range(dim)}
    if fresh(everything):
        yield everything
    diag = _constant_classes(ring, N)
    if fresh(diag):
        yield diag
    count = 0
    for coeffs in itertools.product((0, 1, 2), repeat=dim):
        if count >= max_combinations:
            return
        u = {o: x for o, x in enumerate(coeffs) if x}
        if len(u) <= 1 or not fresh(u):
            continue
        count += 1
        yield u


def _bijective_from(ring: GradedComponentRing, u: dict, N: int) -> tuple[int | None, list[bool]]:
    """Least ``N0`` with multiplication bijective for all ``N0 <= n <= n_max - N``."""
    flags = []
    for n in range(ring.n_max - N + 1):
        if ring.dim(n) != ring.dim(n + N):
            flags.append(False)
            continue
        flags.append(rank(ring.right_mult_matrix(u, N, n)) == ring.dim(n))
    n0 = None
    for n in range(len(flags) - 1, -1, -1):
        if not flags[n]:
            break
        n0 = n
    return n0, flags


def find_central_stabilizer(
    ring: GradedComponentRing,
    max_N: int | None = None,
    min_window: int = 2,
    max_combinations: int = 200,
) -> StabilizerSearch:
    """Search for a central class ``U`` whose right multiplication is eventually bijective.

    Candidates in order, for ``N = 1, 2, ...``: single orbit classes, the sum of
    all classes, then combinations with coefficients in ``{0, 1, 2}``, led by
    the sum of the constant-tuple classes. A
    candidate is accepted when it is central and bijectivity holds on at least
    ``min_window`` consecutive degrees ending at ``n_max - N``.
    """
    max_N = ring.n_max - min_window + 1 if max_N is None else max_N
    tried = 0
    for N in range(1, max_N + 1):
        if ring.n_max - N + 1 < min_window:
            break
        for u in _candidates(ring, N, max_combinations):
            tried += 1
            if not ring.is_central(u, N):
                continue
            n0, _ = _bijective_from(ring, u, N)
            if n0 is None or ring.n_max - N - n0 + 1 < min_window:
                continue
            lift = lift_to_pure(ring.cls, u, N)
            elem = StabilizerElement(
                ring.cls,
                N,
                tuple(sorted((o, Fraction(q)) for o, q in u.items())),
                tuple(sorted((o, Fraction(q)) for o, q in lift.items())),
                n0,
                ring.n_max - N,
            )
            return StabilizerSearch(elem, tried, "verified")
    return StabilizerSearch(None, tried, f"no candidate verified with n_max={ring.n_max}, min_window={min_window}")


@dataclass(frozen=True)
class LiftIsoRow:
    n: int
    source_dim: int
    target_dim: int
    rank: int

    @property
    def bijective(self) -> bool:
        return self.source_dim == self.target_dim == self.rank


def pure_right_mult_matrix(c: ConjClassSet, lift: dict, N: int, n: int) -> SparseMatrix:
    """Right multiplication by a PBr-class combination, degree ``n`` to ``n + N``."""
    sysm = hurwitz_system(c)
    src = sysm.table(n, PBR)
    tgt = sysm.table(n + N, PBR)
    tu = sysm.table(N, PBR)
    cols = []
    for a in range(len(src)):
        col: dict = {}
        ra = src.rep(a)
        for o, q in lift.items():
            t = tgt.orbit_of_positions(ra + tu.rep(o))
            col[t] = col.get(t, 0) + q
        cols.append({k: v for k, v in col.items() if v != 0})
    return SparseMatrix(len(tgt), len(src), cols)


def check_lift_iso_on_pi0(stab: StabilizerElement, n_range) -> list[LiftIsoRow]:
    rows = []
    for n in n_range:
        M = pure_right_mult_matrix(stab.cls, stab.lift, stab.N, n)
        rows.append(LiftIsoRow(n, M.shape[1], M.shape[0], rank(M)))
    return rows
