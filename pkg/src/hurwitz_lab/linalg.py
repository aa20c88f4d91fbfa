"""Exact sparse linear algebra over the rationals.

Matrices are stored by columns (``cols[j]`` maps row index -> value), which is
how chain-complex differentials are naturally produced: one column per source
basis element. Ranks use fraction-free integer elimination with a Markowitz
style pivot rule (sparsest column first, unit pivots preferred) and a fixed
tie-break (least column index, then least row index), run separately on each
connected block of the matrix.
"""

from __future__ import annotations

import heapq
import math
from collections import defaultdict
from fractions import Fraction
from functools import reduce

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components


def _clean(col: dict) -> dict:
    return {r: v for r, v in col.items() if v != 0}


class SparseMatrix:
    """Immutable-by-convention sparse matrix with exact (int/Fraction) entries."""

    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int, cols=None):
        self.nrows = int(nrows)
        self.ncols = int(ncols)
        if cols is None:
            cols = [{} for _ in range(self.ncols)]
        else:
            cols = [_clean(c) for c in cols]
        if len(cols) != self.ncols:
            raise ValueError("column count mismatch")
        self.cols = cols

    @classmethod
    def identity(cls, n: int) -> SparseMatrix:
        return cls(n, n, [{i: 1} for i in range(n)])

    @classmethod
    def from_dense(cls, rows) -> SparseMatrix:
        rows = [list(r) for r in rows]
        m = len(rows)
        n = len(rows[0]) if m else 0
        return cls(m, n, [{i: rows[i][j] for i in range(m)} for j in range(n)])

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def to_dense(self):
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                out[i][j] = v
        return out

    def __matmul__(self, other: SparseMatrix) -> SparseMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for col in other.cols:
            acc = defaultdict(int)
            for k, v in col.items():
                for i, w in self.cols[k].items():
                    acc[i] += w * v
            out.append(acc)
        return SparseMatrix(self.nrows, other.ncols, out)

    def __add__(self, other: SparseMatrix) -> SparseMatrix:
        return self._combine(other, 1)

    def __sub__(self, other: SparseMatrix) -> SparseMatrix:
        return self._combine(other, -1)

    def __neg__(self) -> SparseMatrix:
        return SparseMatrix(self.nrows, self.ncols, [{i: -v for i, v in c.items()} for c in self.cols])

    def _combine(self, other, sign):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        out = []
        for a, b in zip(self.cols, other.cols):
            acc = dict(a)
            for i, v in b.items():
                acc[i] = acc.get(i, 0) + sign * v
            out.append(acc)
        return SparseMatrix(self.nrows, self.ncols, out)

    def __eq__(self, other):
        return isinstance(other, SparseMatrix) and self.shape == other.shape and self.cols == other.cols

    def apply(self, vec: dict) -> dict:
        """Matrix times a sparse column vector ``{index: value}``."""
        acc = defaultdict(int)
        for k, v in vec.items():
            for i, w in self.cols[k].items():
                acc[i] += w * v
        return _clean(acc)

    def hstack(self, other: SparseMatrix) -> SparseMatrix:
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        return SparseMatrix(self.nrows, self.ncols + other.ncols, self.cols + other.cols)

    def transpose(self) -> SparseMatrix:
        rows = [dict() for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                rows[i][j] = v
        return SparseMatrix(self.ncols, self.nrows, rows)

    def submatrix_cols(self, idx) -> SparseMatrix:
        return SparseMatrix(self.nrows, len(idx), [self.cols[j] for j in idx])

    def triples(self):
        """Sorted ``(row, col, value)`` triples."""
        out = [(i, j, v) for j, c in enumerate(self.cols) for i, v in c.items()]
        out.sort()
        return out

    def to_coordinate_text(self) -> str:
        """Coordinate export: header ``rows cols nnz`` then ``row col p/q`` lines."""
        lines = [f"{self.nrows} {self.ncols} {self.nnz}"]
        for i, j, v in self.triples():
            f = Fraction(v)
            lines.append(f"{i} {j} {f.numerator}/{f.denominator}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_coordinate_text(cls, text: str) -> SparseMatrix:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        m, n, _ = (int(t) for t in lines[0].split())
        cols = [{} for _ in range(n)]
        for ln in lines[1:]:
            i, j, v = ln.split()
            cols[int(j)][int(i)] = Fraction(v)
        return cls(m, n, [{i: _demote(v) for i, v in c.items()} for c in cols])

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz})"


def _demote(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v.numerator)
    return v


def _integral(vec: dict) -> dict:
    """Scale a rational vector to a primitive integer vector (same span)."""
    vals = list(vec.values())
    den = 1
    for v in vals:
        if isinstance(v, Fraction):
            den = den * v.denominator // math.gcd(den, v.denominator)
    if den != 1:
        vec = {k: int(v * den) for k, v in vec.items()}
    else:
        vec = {k: int(v) for k, v in vec.items()}
    g = reduce(math.gcd, vec.values(), 0)
    if g > 1:
        vec = {k: v // g for k, v in vec.items()}
    return vec


def _blocks(vectors, dim):
    """Group vector ids into connected blocks (vectors sharing a coordinate)."""
    ids = [i for i, v in enumerate(vectors) if v]
    if not ids:
        return []
    rows, cols = [], []
    for i in ids:
        for k in vectors[i]:
            rows.append(i)
            cols.append(len(vectors) + k)
    size = len(vectors) + dim
    g = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(size, size))
    _, labels = connected_components(g, directed=False)
    groups = defaultdict(list)
    for i in ids:
        groups[labels[i]].append(i)
    return [groups[key] for key in sorted(groups, key=lambda k: groups[k][0])]


def _axpy(v: dict, pv: dict, k: int) -> dict:
    """Clear coordinate ``k`` of ``v`` using ``pv`` without leaving the integers."""
    a = pv[k]
    b = v[k]
    if b % a == 0:
        q = b // a
        out = dict(v)
        for kk, w in pv.items():
            nv = out.get(kk, 0) - q * w
            if nv:
                out[kk] = nv
            else:
                out.pop(kk, None)
        return out
    g = math.gcd(a, b)
    sa, sb = a // g, b // g
    out = {kk: sa * w for kk, w in v.items()}
    for kk, w in pv.items():
        nv = out.get(kk, 0) - sb * w
        if nv:
            out[kk] = nv
        else:
            out.pop(kk, None)
    cont = reduce(math.gcd, out.values(), 0)
    if cont > 1:
        out = {kk: w // cont for kk, w in out.items()}
    return out


class Echelon:
    """Fraction-free elimination of primitive integer vectors, keeping the pivots.

    Pivot rule (Markowitz): compare the sparsest coordinate against the
    shortest vector and take whichever promises less fill-in,
    ``(count - 1) * (length - 1)``. Unit pivots are preferred, then
    shorter vectors / rarer coordinates, then least index. Later pivot
    vectors never contain earlier pivot coordinates, so :meth:`reduce`
    needs a single ordered sweep.
    """

    def __init__(self, vecs: dict):
        self.pivots: list[tuple[int, dict]] = []
        self.order: dict[int, int] = {}
        self._run(vecs)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _run(self, vecs: dict):
        occ = defaultdict(set)
        for i, v in vecs.items():
            for k in v:
                occ[k].add(i)
        cheap = [(len(s), k) for k, s in occ.items()]
        short = [(len(v), i) for i, v in vecs.items()]
        heapq.heapify(cheap)
        heapq.heapify(short)

        def top_coord():
            while cheap:
                cnt, k = cheap[0]
                s = occ.get(k)
                if s and len(s) == cnt:
                    return cnt, k
                heapq.heappop(cheap)
                if s:
                    heapq.heappush(cheap, (len(s), k))
            return None

        def top_vec():
            while short:
                ln, i = short[0]
                v = vecs.get(i)
                if v is not None and len(v) == ln:
                    return ln, i
                heapq.heappop(short)
            return None

        while True:
            tc = top_coord()
            if tc is None:
                break
            tv = top_vec()
            cnt, k = tc
            piv = min(occ[k], key=lambda i: (abs(vecs[i][k]) != 1, len(vecs[i]), i))
            cost_c = (cnt - 1) * (len(vecs[piv]) - 1)
            if tv is not None:
                ln, i = tv
                kk = min(vecs[i], key=lambda c: (abs(vecs[i][c]) != 1, len(occ[c]), c))
                if (ln - 1) * (len(occ[kk]) - 1) < cost_c:
                    piv, k = i, kk
            pv = vecs.pop(piv)
            for c in pv:
                occ[c].discard(piv)
            self.order[k] = len(self.pivots)
            self.pivots.append((k, pv))
            touched = set()
            for i in sorted(occ[k]):
                v = vecs[i]
                nv = _axpy(v, pv, k)
                for c in v.keys() - nv.keys():
                    occ[c].discard(i)
                    touched.add(c)
                for c in nv.keys() - v.keys():
                    occ[c].add(i)
                    touched.add(c)
                if nv:
                    vecs[i] = nv
                    heapq.heappush(short, (len(nv), i))
                else:
                    del vecs[i]
            occ.pop(k, None)
            for c in touched:
                s2 = occ.get(c)
                if s2:
                    heapq.heappush(cheap, (len(s2), c))

    def reduce(self, vec: dict) -> dict:
        """Remainder of ``vec`` (made integral) after sweeping the pivots in order."""
        v = _integral(_clean(vec)) if vec else {}
        todo = [(self.order[c], c) for c in v if c in self.order]
        heapq.heapify(todo)
        while todo:
            _, k = heapq.heappop(todo)
            if k not in v:
                continue
            pv = self.pivots[self.order[k]][1]
            before = v.keys()
            v = _axpy(v, pv, k)
            for c in v.keys() - before:
                if c in self.order:
                    heapq.heappush(todo, (self.order[c], c))
        return v

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)


def echelon(vectors) -> Echelon:
    vectors = [_integral(_clean(v)) if v else {} for v in vectors]
    return Echelon({i: v for i, v in enumerate(vectors) if v})


def _eliminate(vecs: dict) -> int:
    return Echelon(vecs).rank


def rank_of_vectors(vectors, dim: int) -> int:
    """Exact rank of sparse vectors (dicts) living in a space of dimension ``dim``."""
    vectors = [_integral(_clean(v)) if v else {} for v in vectors]
    total = 0
    for block in _blocks(vectors, dim):
        total += _eliminate({i: dict(vectors[i]) for i in block})
    return total


def rank(M: SparseMatrix) -> int:
    """Exact rank over Q."""
    return rank_of_vectors(M.cols, M.nrows)


def rank_mod_p(M: SparseMatrix, p: int = 2_147_483_647) -> int:
    """Rank over GF(p); a lower bound for the rational rank. Used only as a cross-check."""
    rows = defaultdict(dict)
    for j, col in enumerate(M.cols):
        for i, v in col.items():
            f = Fraction(v)
            x = f.numerator * pow(f.denominator, -1, p) % p
            if x:
                rows[i][j] = x
    pivots = {}
    r = 0
    for i in sorted(rows):
        v = rows[i]
        while v:
            k = min(v)
            if k not in pivots:
                inv = pow(v[k], -1, p)
                pivots[k] = {kk: w * inv % p for kk, w in v.items()}
                r += 1
                break
            pv = pivots[k]
            q = v[k]
            for kk, w in pv.items():
                nv = (v.get(kk, 0) - q * w) % p
                if nv:
                    v[kk] = nv
                else:
                    v.pop(kk, None)
    return r


def nullspace(M: SparseMatrix) -> list[dict]:
    """Basis of ``{x : M x = 0}`` as sparse rational vectors over column indices.

    Row-reduces to reduced echelon form; one basis vector per free column,
    in increasing free-column order.
    """
    rows = defaultdict(dict)
    for j, col in enumerate(M.cols):
        for i, v in col.items():
            rows[i][j] = Fraction(v)
    pivot_rows: dict[int, dict] = {}
    for i in sorted(rows):
        v = dict(rows[i])
        for k in sorted(set(v) & set(pivot_rows)):
            if k in v:
                q = v[k]
                for kk, w in pivot_rows[k].items():
                    nv = v.get(kk, 0) - q * w
                    if nv:
                        v[kk] = nv
                    else:
                        v.pop(kk, None)
        # later pivots may have introduced earlier-pivot coordinates; repeat until clean
        while True:
            hit = [k for k in v if k in pivot_rows]
            if not hit:
                break
            k = min(hit)
            q = v[k]
            for kk, w in pivot_rows[k].items():
                nv = v.get(kk, 0) - q * w
                if nv:
                    v[kk] = nv
                else:
                    v.pop(kk, None)
        if not v:
            continue
        k = min(v)
        inv = 1 / v[k]
        v = {kk: w * inv for kk, w in v.items()}
        # keep the echelon reduced: clear k from existing pivot rows
        for pk, pr in pivot_rows.items():
            if k in pr:
                q = pr[k]
                for kk, w in v.items():
                    nv = pr.get(kk, 0) - q * w
                    if nv:
                        pr[kk] = nv
                    else:
                        pr.pop(kk, None)
        pivot_rows[k] = v
    free = [j for j in range(M.ncols) if j not in pivot_rows]
    basis = []
    for f in free:
        x = {f: Fraction(1)}
        for k, pr in pivot_rows.items():
            if f in pr:
                x[k] = -pr[f]
        basis.append({kk: _demote(w) for kk, w in x.items()})
    return basis


def in_span(columns: SparseMatrix, vectors) -> bool:
    """Whether every vector lies in the column span of ``columns``."""
    base = rank(columns)
    extended = rank_of_vectors(list(columns.cols) + [dict(v) for v in vectors], columns.nrows)
    return extended == base
