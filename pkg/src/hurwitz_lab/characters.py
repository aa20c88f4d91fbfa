"""Exact character calculus for symmetric groups and multiplicity tables.

Characters use the Murnaghan-Nakayama rule on beta-sets. Padded partitions
``lambda<n> = (n - |lambda|, lambda_1, ..., lambda_l)`` index the stable
families of irreducibles.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering

from .braids import PBR, enumerate_orbits, hurwitz_system
from .errors import DecompositionViolation, DegreeMismatch, FormulaViolation, PaddingUndefined
from .groups import ConjClassSet


@total_ordering
@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        if any(x <= 0 for x in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"not a partition: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts) -> Partition:
        if len(parts) == 1 and not isinstance(parts[0], int):
            parts = tuple(parts[0])
        return cls(tuple(sorted(parts, reverse=True)))

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    @property
    def largest(self) -> int:
        return self.parts[0] if self.parts else 0

    def multiplicity(self, k: int) -> int:
        return self.parts.count(k)

    @property
    def m1(self) -> int:
        return self.multiplicity(1)

    @property
    def z(self) -> int:
        out = 1
        for k in set(self.parts):
            m = self.parts.count(k)
            out *= k**m * math.factorial(m)
        return out

    def union(self, other: Partition) -> Partition:
        return Partition.of(self.parts + other.parts)

    def conjugate(self) -> Partition:
        return Partition(tuple(sum(1 for x in self.parts if x > i) for i in range(self.largest)))

    def contains(self, other: Partition) -> bool:
        if len(other) > len(self):
            return False
        return all(a >= b for a, b in zip(self.parts, other.parts))

    def __lt__(self, other: Partition):
        return (self.size, self.parts) < (other.size, other.parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"

    def csv_key(self) -> str:
        return ",".join(map(str, self.parts))


EMPTY = Partition()


def partitions(n: int) -> list[Partition]:
    """All partitions of ``n`` in lexicographic order of their parts."""

    def gen(n, cap):
        if n == 0:
            yield ()
            return
        for first in range(min(n, cap), 0, -1):
            for rest in gen(n - first, first):
                yield (first,) + rest

    return sorted(Partition(p) for p in gen(n, n))


def padded(lam: Partition, n: int) -> Partition:
    if n < lam.size + lam.largest:
        raise PaddingUndefined(f"{lam}<{n}> needs n >= {lam.size + lam.largest}")
    head = (n - lam.size,) if n > lam.size else ()
    return Partition(head + lam.parts)


def stable_partitions(n: int) -> list[Partition]:
    """Partitions ``lambda`` with ``|lambda| + lambda_1 <= n``."""
    out = []
    for m in range(n + 1):
        out.extend(p for p in partitions(m) if m + p.largest <= n)
    return sorted(out)


# --- characters -------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _mn(beta: frozenset, mu: tuple) -> int:
    if not mu:
        return 1
    r, rest = mu[0], mu[1:]
    total = 0
    for b in beta:
        t = b - r
        if t < 0 or t in beta:
            continue
        sign = -1 if sum(1 for x in beta if t < x < b) % 2 else 1
        total += sign * _mn((beta - {b}) | {t}, rest)
    return total


def _beta(lam: Partition) -> frozenset:
    ell = len(lam)
    return frozenset(x + ell - 1 - i for i, x in enumerate(lam.parts))


def mn_character(lam: Partition, mu: Partition) -> int:
    """Value of the irreducible character ``chi^lam`` on cycle type ``mu``."""
    if lam.size != mu.size:
        raise DegreeMismatch(f"|{lam}| != |{mu}|")
    return _mn(_beta(lam), mu.parts)


def hook_length_dim(lam: Partition) -> int:
    conj = lam.conjugate().parts
    prod = 1
    for i, row in enumerate(lam.parts):
        for j in range(row):
            prod *= row - j + conj[j] - i - 1
    return math.factorial(lam.size) // prod


def irrep_dim(lam: Partition) -> int:
    return mn_character(lam, Partition((1,) * lam.size))


@dataclass(frozen=True)
class CharacterVector:
    """Class function on ``Sigma_n``: values indexed by cycle type."""

    n: int
    values: tuple[tuple[Partition, int], ...]

    @classmethod
    def irreducible(cls, lam: Partition) -> CharacterVector:
        return cls(lam.size, tuple((mu, mn_character(lam, mu)) for mu in partitions(lam.size)))

    @classmethod
    def from_function(cls, n: int, fn) -> CharacterVector:
        return cls(n, tuple((mu, fn(mu)) for mu in partitions(n)))

    def __getitem__(self, mu: Partition):
        return dict(self.values)[mu]

    def inner(self, other: CharacterVector) -> Fraction:
        if other.n != self.n:
            raise DegreeMismatch("characters of different degrees")
        b = dict(other.values)
        return sum((Fraction(a * b[mu], mu.z) for mu, a in self.values), Fraction(0))

    def degree(self):
        return self[Partition((1,) * self.n)]


def inner_product(lam: Partition, mu: Partition) -> Fraction:
    return CharacterVector.irreducible(lam).inner(CharacterVector.irreducible(mu))


# --- coinvariants of shifted irreducibles ---------------------------------------------------


def is_horizontal_strip(outer: Partition, inner: Partition) -> bool:
    if not outer.contains(inner):
        return False
    op = outer.parts
    ip = inner.parts + (0,) * (len(op) - len(inner))
    # no two added boxes in one column: inner_i >= outer_{i+1}
    return all(ip[i] >= op[i + 1] for i in range(len(op) - 1))


def shifted_coinvariant_dim(lam: Partition, r: int, n: int) -> int:
    """Dimension of the ``Sigma_n``-coinvariants of ``V_{lam<n+r>}`` restricted to ``Sigma_n x Sigma_r``.

    Sum of ``dim V_mu`` over ``mu |- r`` with ``lam<n+r> / mu`` a horizontal
    ``n``-strip (Pieri). Zero when the padding is undefined.
    """
    if n + r < lam.size + lam.largest:
        return 0
    outer = padded(lam, n + r)
    return sum(hook_length_dim(mu) for mu in partitions(r) if is_horizontal_strip(outer, mu))


def shifted_coinvariant_dim_oracle(lam: Partition, r: int, n: int) -> int:
    """Same quantity via characters: ``sum_{nu |- n} chi(nu u 1^r) / z_nu``."""
    if n + r < lam.size + lam.largest:
        return 0
    outer = padded(lam, n + r)
    total = Fraction(0)
    for nu in partitions(n):
        total += Fraction(mn_character(outer, nu.union(Partition((1,) * r))), nu.z)
    if total.denominator != 1:
        raise FormulaViolation(f"non-integral coinvariant dimension {total}")
    return int(total)


@dataclass(frozen=True)
class StableRangeVerdict:
    lam: Partition
    r: int
    window_end: int
    values: tuple[int, ...]
    vanishing_ok: bool
    constant_ok: bool
    sharp: bool | None

    @property
    def ok(self) -> bool:
        return self.vanishing_ok and self.constant_ok and self.sharp is not False


def stable_range_check(lam: Partition, r: int, window_end: int) -> StableRangeVerdict:
    """Vanishing for ``r < |lam|``, constancy from ``n = lam_1``, and sharpness at ``lam_1 - 1``."""
    if window_end < lam.largest + 2:
        raise ValueError("window must reach lam_1 + 2")
    values = tuple(shifted_coinvariant_dim(lam, r, n) for n in range(window_end + 1))
    vanishing_ok = r >= lam.size or all(v == 0 for v in values)
    start = lam.largest
    constant_ok = len(set(values[start:])) == 1
    sharp = None
    if lam.size > 0 and r >= lam.size and lam.largest >= 1:
        sharp = values[start - 1] != values[start]
    return StableRangeVerdict(lam, r, window_end, values, vanishing_ok, constant_ok, sharp)


# --- dimension polynomial --------------------------------------------------------------------


def macdonald_dim(lam: Partition, n: int) -> int:
    """``dim V_{lam<n>}`` as a polynomial in ``n``.

    ``sum_{k, sigma} (-1)^{l(sigma)} chi^lam(1^k u sigma) / z_sigma * C(n, k)``
    over ``k + |sigma| = |lam|``. Only ``rho = 1^k`` contributes at the
    identity; summing over every ``rho`` overcounts (see
    :func:`macdonald_sum_all_rho`).
    """
    if n < lam.size + lam.largest:
        raise PaddingUndefined(f"{lam}<{n}> needs n >= {lam.size + lam.largest}")
    total = Fraction(0)
    for k in range(lam.size + 1):
        ones = Partition((1,) * k)
        for sigma in partitions(lam.size - k):
            chi = mn_character(lam, ones.union(sigma))
            total += Fraction((-1) ** len(sigma) * chi, sigma.z) * math.comb(n, k)
    if total.denominator != 1:
        raise FormulaViolation(f"non-integral dimension {total} for {lam} at n={n}")
    return int(total)


def macdonald_sum_all_rho(lam: Partition, n: int) -> Fraction:
    """The same sum taken over every pair ``(rho, sigma)`` with binomial ``C(n, m_1(rho))``.

    Kept to document that this variant does not give dimensions, e.g. it is 3
    for ``lam = (2)``, ``n = 4`` while ``dim V_(2,2) = 2``.
    """
    total = Fraction(0)
    for k in range(lam.size + 1):
        for rho in partitions(k):
            for sigma in partitions(lam.size - k):
                chi = mn_character(lam, rho.union(sigma))
                total += Fraction((-1) ** len(sigma) * chi, sigma.z) * math.comb(n, rho.m1)
    return total


# --- permutation modules on orbit sets ----------------------------------------------------------


def cycle_type_representative(mu: Partition) -> tuple[int, ...]:
    """A permutation of ``1..n`` (image list) with cycle type ``mu``."""
    perm = []
    start = 1
    for k in mu.parts:
        perm.extend(range(start + 1, start + k))
        perm.append(start)
        start += k
    return tuple(perm)


def orbit_character(c: ConjClassSet, n: int) -> CharacterVector:
    """Fixed-point counts of the ``Sigma_n`` action on PBr-orbit ids of ``c^n``."""
    sysm = hurwitz_system(c)
    table = sysm.table(n, PBR)

    def fixed(mu):
        perm = cycle_type_representative(mu)
        return sum(1 for o in range(len(table)) if sysm.place(perm, table.rep(o)) == o)

    return CharacterVector.from_function(n, fixed)


def decompose_character(chi: CharacterVector) -> dict:
    """Multiplicities ``{lam: c_lam}`` of ``chi`` against ``V_{lam<n>}``."""
    n = chi.n
    out = {}
    for lam in stable_partitions(n):
        m = chi.inner(CharacterVector.irreducible(padded(lam, n)))
        if m.denominator != 1 or m < 0:
            raise DecompositionViolation(f"multiplicity of {lam}<{n}> is {m}")
        out[lam] = int(m)
    total = sum(m * hook_length_dim(padded(lam, n)) for lam, m in out.items())
    if total != chi.degree():
        raise DecompositionViolation(f"multiplicities account for {total} of {chi.degree()} dimensions")
    return out


def decompose_permutation_module(c: ConjClassSet, n: int) -> dict:
    return decompose_character(orbit_character(c, n))


@dataclass(frozen=True)
class MultiplicityTable:
    columns: tuple[int, ...]
    rows: tuple[tuple[Partition, tuple[int, ...]], ...]
    dims: tuple[int, ...]

    def entry(self, lam: Partition, n: int) -> int:
        return dict(self.rows)[lam][self.columns.index(n)]

    def check_dimensions(self) -> bool:
        for j, n in enumerate(self.columns):
            total = 0
            for lam, vals in self.rows:
                if vals[j]:
                    total += vals[j] * hook_length_dim(padded(lam, n))
            if total != self.dims[j]:
                return False
        return True

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["lambda"] + [str(n) for n in self.columns])
        for lam, vals in self.rows:
            w.writerow([lam.csv_key()] + list(vals))
        return buf.getvalue()


@dataclass(frozen=True)
class MultiplicityStability:
    table: MultiplicityTable
    threshold: int | None
    verdict: str

    def as_dict(self):
        return {
            "columns": list(self.table.columns),
            "dims": list(self.table.dims),
            "rows": {lam.csv_key() or "empty": list(v) for lam, v in self.table.rows},
            "stable_from": self.threshold,
            "verdict": self.verdict,
            "conclusive": False,
        }


def multiplicity_table(c: ConjClassSet, n_max: int) -> MultiplicityTable:
    cols = tuple(range(n_max + 1))
    decomp = [decompose_permutation_module(c, n) for n in cols]
    lams = stable_partitions(n_max)
    rows = tuple((lam, tuple(d.get(lam, 0) for d in decomp)) for lam in lams)
    dims = tuple(len(enumerate_orbits(c, n, PBR)) for n in cols)
    return MultiplicityTable(cols, rows, dims)


def multiplicity_stability_report(c: ConjClassSet, n_max: int) -> MultiplicityStability:
    """Table of ``c_{lam,n}`` and the least ``n`` from which every row is constant.

    A threshold equal to ``n_max`` would be vacuous, so ``NoData`` is returned
    unless at least two columns agree.
    """
    table = multiplicity_table(c, n_max)
    if n_max < 1:
        return MultiplicityStability(table, None, "NoData")
    threshold = n_max
    for n0 in range(n_max - 1, -1, -1):
        j = table.columns.index(n0)
        if all(vals[j] == vals[j + 1] for _, vals in table.rows):
            threshold = n0
        else:
            break
    if threshold == n_max:
        return MultiplicityStability(table, None, "not stable within window")
    return MultiplicityStability(table, threshold, "stable within window")


# --- integer-valued polynomial fitting -----------------------------------------------------------


@dataclass(frozen=True)
class PolynomialFit:
    degree: int
    tail_start: int
    binomial: tuple[Fraction, ...]
    monomial: tuple[Fraction, ...]

    def __call__(self, n: int) -> Fraction:
        return sum((a * math.comb(n, k) for k, a in enumerate(self.binomial)), Fraction(0))

    def binomial_str(self) -> str:
        terms = [f"{a}*C(n,{k})" for k, a in enumerate(self.binomial) if a]
        return " + ".join(terms) or "0"

    def monomial_str(self) -> str:
        terms = [f"{a}*n^{k}" for k, a in enumerate(self.monomial) if a]
        return " + ".join(terms) or "0"

    def as_dict(self):
        return {
            "degree": self.degree,
            "tail_start": self.tail_start,
            "binomial": self.binomial_str(),
            "monomial": self.monomial_str(),
        }


def _differences(seq, order):
    seq = list(seq)
    for _ in range(order):
        seq = [b - a for a, b in zip(seq, seq[1:])]
    return seq


def _monomial_from_values(values) -> tuple[Fraction, ...]:
    """Coefficients of the interpolating polynomial through ``(k, values[k])``."""
    d = len(values) - 1
    coeffs = [Fraction(0)] * (d + 1)
    for i, y in enumerate(values):
        basis = [Fraction(1)]
        denom = 1
        for j in range(d + 1):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= j * basis[t + 1]
            denom *= i - j
        for t in range(d + 1):
            coeffs[t] += Fraction(y) * basis[t] / denom
    return tuple(coeffs)


def hilbert_poly_fit(dims, max_degree: int) -> PolynomialFit | None:
    """Least-degree polynomial agreeing with a tail of ``dims`` (indexed from ``n = 0``).

    For each degree ``d`` the least tail start ``s`` is chosen with
    ``len(dims) - s >= d + 2`` and vanishing ``(d+1)``-st differences on the
    tail. Returns ``None`` when no degree up to ``max_degree`` fits.
    """
    dims = list(dims)
    L = len(dims)
    if L < max_degree + 2:
        raise ValueError("sequence too short for the requested degree bound")
    for d in range(max_degree + 1):
        for s in range(0, L - d - 1):
            if all(x == 0 for x in _differences(dims[s:], d + 1)):
                vals = [Fraction(x) for x in dims[s : s + d + 1]]
                shifted = _monomial_from_values(vals)  # in the variable n - s
                mono = [Fraction(0)] * (d + 1)
                for k, a in enumerate(shifted):
                    for t in range(k + 1):
                        mono[t] += a * math.comb(k, t) * Fraction(-s) ** (k - t)
                at_zero = [sum(m * Fraction(x) ** t for t, m in enumerate(mono)) for x in range(d + 1)]
                binom = tuple(_differences(at_zero, k)[0] for k in range(d + 1))
                return PolynomialFit(d, s, binom, tuple(mono))
    return None
