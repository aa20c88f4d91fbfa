"""The category FI(c) and the FI(c)-module of pure-braid orbits.

A morphism ``S -> T`` is an injection ``f`` together with a pure-braid orbit
``x`` on ``T \\ im f``. Composition of ``(f, x): S -> T`` and ``(g, y): T -> V``
is ``(g f, g_*(x) . y)``. Modules are covariant: ``(f, x)`` sends the orbit
``eta`` on ``S`` to ``f_*(eta) . x`` on ``T``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .braids import PBR, hurwitz_system
from .errors import NotComposable
from .groups import ConjClassSet
from .linalg import SparseMatrix, rank


def _sorted_set(s) -> tuple[int, ...]:
    out = tuple(sorted(set(int(x) for x in s)))
    if len(out) != len(tuple(s)):
        raise ValueError("finite sets must not repeat elements")
    return out


@dataclass(frozen=True)
class FICMorphism:
    """``f[i]`` is the image of ``source[i]``; ``x`` is an orbit id on ``T \\ im f``."""

    source: tuple[int, ...]
    target: tuple[int, ...]
    f: tuple[int, ...]
    x: int

    def __post_init__(self):
        object.__setattr__(self, "source", _sorted_set(self.source))
        object.__setattr__(self, "target", _sorted_set(self.target))
        object.__setattr__(self, "f", tuple(int(a) for a in self.f))
        if len(self.f) != len(self.source) or len(set(self.f)) != len(self.f):
            raise ValueError("f must be an injection defined on the source")
        if not set(self.f) <= set(self.target):
            raise ValueError("f must land in the target")

    def complement(self) -> tuple[int, ...]:
        im = set(self.f)
        return tuple(t for t in self.target if t not in im)

    def apply(self, s: int) -> int:
        return self.f[self.source.index(s)]


def identity(S) -> FICMorphism:
    S = _sorted_set(S)
    return FICMorphism(S, S, S, 0)


def push_and_multiply(c: ConjClassSet, labels, eta: int, rest, x: int) -> int:
    """Orbit of ``eta`` relabelled by ``labels`` followed by ``x`` on the sorted set ``rest``."""
    sysm = hurwitz_system(c)
    labels = tuple(labels)
    rest = tuple(rest)
    return sysm.place(labels + rest, sysm.rep(len(labels), eta) + sysm.rep(len(rest), x))


def compose(m1: FICMorphism, m2: FICMorphism, c: ConjClassSet) -> FICMorphism:
    """``m2 o m1`` for ``m1: S -> T`` and ``m2: T -> V``."""
    if m1.target != m2.source:
        raise NotComposable(f"target {m1.target} differs from source {m2.source}")
    gf = tuple(m2.apply(m1.apply(s)) for s in m1.source)
    pushed = tuple(m2.apply(t) for t in m1.complement())
    x = push_and_multiply(c, pushed, m1.x, m2.complement(), m2.x)
    return FICMorphism(m1.source, m2.target, gf, x)


def hom_set(S, T, c: ConjClassSet) -> list[FICMorphism]:
    S = _sorted_set(S)
    T = _sorted_set(T)
    if len(T) < len(S):
        return []
    n_orb = len(hurwitz_system(c).table(len(T) - len(S), PBR))
    out = []
    for f in itertools.permutations(T, len(S)):
        for x in range(n_orb):
            out.append(FICMorphism(S, T, f, x))
    return out


@dataclass(eq=False)
class FICModuleData:
    """``M(S)`` is spanned by PBr-orbits of ``c^S`` for ``|S| <= n_max``."""

    cls: ConjClassSet
    n_max: int
    allow_empty_source: bool = True

    def dim(self, n: int) -> int:
        return len(hurwitz_system(self.cls).table(n, PBR))

    def basis_labels(self, n: int) -> list[str]:
        G = self.cls.group
        table = hurwitz_system(self.cls).table(n, PBR)
        return [" ".join(G.element_name(x) for x in table.canonical_rep(o).labels) for o in range(len(table))]

    def act(self, m: FICMorphism, eta: int) -> dict:
        """Image of the basis element ``eta`` of ``M(source)`` as a sparse vector on ``M(target)``."""
        labels = tuple(m.apply(s) for s in m.source)
        return {push_and_multiply(self.cls, labels, eta, m.complement(), m.x): 1}

    def matrix(self, m: FICMorphism) -> SparseMatrix:
        cols = [self.act(m, eta) for eta in range(self.dim(len(m.source)))]
        return SparseMatrix(self.dim(len(m.target)), len(cols), cols)


def pi0_module(c: ConjClassSet, n_max: int, allow_empty_source: bool = True) -> FICModuleData:
    return FICModuleData(c, n_max, allow_empty_source)


@dataclass(frozen=True)
class GenerationRow:
    degree: int
    value_dim: int
    spanned_dim: int

    @property
    def surjective(self) -> bool:
        return self.spanned_dim == self.value_dim

    def as_text(self) -> str:
        return f"{self.degree} {self.value_dim} {self.spanned_dim} {'ok' if self.surjective else 'fail'}"


def generation_rows(M: FICModuleData, d: int) -> list[GenerationRow]:
    """For ``d < n <= n_max``: rank of the images of all ``M(A)``, ``A`` a proper subset of ``{1..n}``."""
    rows = []
    for n in range(d + 1, M.n_max + 1):
        S = tuple(range(1, n + 1))
        cols = []
        for k in range(0 if M.allow_empty_source else 1, n):
            for A in itertools.combinations(S, k):
                for m in hom_set(A, S, M.cls):
                    if m.f != A:
                        continue
                    for eta in range(M.dim(k)):
                        cols.append(M.act(m, eta))
        dim = M.dim(n)
        rows.append(GenerationRow(n, dim, rank(SparseMatrix(dim, len(cols), cols))))
    return rows


def generation_degree(M: FICModuleData, d: int) -> tuple[bool, list[GenerationRow]]:
    """Whether ``M`` is generated in degrees ``<= d`` as far as ``n_max``."""
    rows = generation_rows(M, d)
    return all(r.surjective for r in rows), rows


def minimal_generation_degree(M: FICModuleData) -> int:
    rows = generation_rows(M, -1)
    last_fail = -1
    for r in rows:
        if not r.surjective:
            last_fail = r.degree
    return last_fail
