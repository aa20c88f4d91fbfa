"""Finite groups as multiplication tables, conjugacy classes and conjugation quandles."""

from __future__ import annotations

import hashlib
import itertools
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import InvalidElement, InvalidGroupTable, NotConjInvariant

# subgroup enumeration by cyclic extension is only meant for desk-scale groups
MAX_SUBGROUP_ORDER = 48


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group on the element indices ``0 .. order-1``.

    ``mult[a, b]`` is the index of the product ``a*b``. Construct through
    :meth:`from_table` so that identity and inverses are derived and checked.
    """

    mult: np.ndarray
    identity: int
    inv: np.ndarray
    element_names: tuple[str, ...] | None = None
    name: str = "G"
    _hash: str = field(default="", repr=False)

    @classmethod
    def from_table(cls, table, element_names=None, name="G", check_associative=True):
        mult = np.asarray(table, dtype=np.int64)
        if mult.ndim != 2 or mult.shape[0] != mult.shape[1] or mult.shape[0] == 0:
            raise InvalidGroupTable("multiplication table must be a non-empty square array")
        m = mult.shape[0]
        if mult.min() < 0 or mult.max() >= m:
            raise InvalidGroupTable("table entries out of range")
        ar = np.arange(m)
        for row in mult:
            if len(set(row.tolist())) != m:
                raise InvalidGroupTable("table is not a Latin square")
        idents = [e for e in range(m) if (mult[e] == ar).all() and (mult[:, e] == ar).all()]
        if len(idents) != 1:
            raise InvalidGroupTable("no two-sided identity")
        e = idents[0]
        inv = np.empty(m, dtype=np.int64)
        for x in range(m):
            (ys,) = np.nonzero(mult[x] == e)
            y = int(ys[0])
            if mult[y, x] != e:
                raise InvalidGroupTable(f"element {x} has no two-sided inverse")
            inv[x] = y
        if check_associative:
            # (ab)c == a(bc) for all b, c, one row a at a time
            for a in range(m):
                if not np.array_equal(mult[mult[a]], mult[a][mult]):
                    raise InvalidGroupTable("multiplication is not associative")
        if element_names is not None:
            element_names = tuple(str(s) for s in element_names)
            if len(element_names) != m:
                raise InvalidGroupTable("wrong number of element names")
        mult.setflags(write=False)
        inv.setflags(write=False)
        digest = hashlib.sha256(mult.astype("<i8").tobytes()).hexdigest()[:16]
        return cls(mult, e, inv, element_names, name, digest)

    @property
    def order(self) -> int:
        return self.mult.shape[0]

    @property
    def content_hash(self) -> str:
        """Stable hash of the Cayley table; used as a cache key."""
        return self._hash

    def _check(self, *xs):
        for x in xs:
            if not (0 <= int(x) < self.order):
                raise InvalidElement(f"element index {x} out of range for group of order {self.order}")

    def mul(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self.mult[a, b])

    def product(self, xs) -> int:
        acc = self.identity
        for x in xs:
            acc = int(self.mult[acc, x])
        return acc

    def conjugate(self, a: int, b: int) -> int:
        """``a^b = b a b^-1``."""
        self._check(a, b)
        return int(self.mult[self.mult[b, a], self.inv[b]])

    def element_name(self, x: int) -> str:
        if self.element_names is None:
            return str(x)
        return self.element_names[x]

    def element_index(self, key) -> int:
        """Resolve an index or a display name to an element index."""
        if isinstance(key, (int, np.integer)):
            self._check(key)
            return int(key)
        key = str(key).strip()
        if self.element_names is not None and key in self.element_names:
            return self.element_names.index(key)
        try:
            x = int(key)
        except ValueError:
            raise InvalidElement(f"unknown element {key!r}") from None
        self._check(x)
        return x

    def generated_subgroup(self, gens) -> frozenset[int]:
        seen = {self.identity}
        queue = deque([self.identity])
        gens = [int(g) for g in gens]
        while queue:
            x = queue.popleft()
            for g in gens:
                y = int(self.mult[x, g])
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def conjugacy_class(self, x: int) -> ConjClassSet:
        self._check(x)
        elems = {self.conjugate(x, g) for g in range(self.order)}
        return ConjClassSet(self, tuple(sorted(elems)))

    def conjugacy_classes(self) -> list[ConjClassSet]:
        seen = set()
        out = []
        for x in range(self.order):
            if x in seen:
                continue
            c = self.conjugacy_class(x)
            seen.update(c.elements)
            out.append(c)
        return out

    def subgroups(self) -> list[frozenset[int]]:
        """All subgroups, by repeatedly joining cyclic subgroups.

        Sorted by (order, sorted elements). Only intended for order <= 48.
        """
        if self.order > MAX_SUBGROUP_ORDER:
            raise ValueError(f"subgroup enumeration limited to order <= {MAX_SUBGROUP_ORDER}")
        cyclic = {self.generated_subgroup([g]) for g in range(self.order)}
        # one generator per cyclic subgroup suffices for the joins
        reps = sorted({min(h - {self.identity}, default=self.identity) for h in cyclic})
        found = set(cyclic)
        frontier = list(cyclic)
        while frontier:
            new = []
            for h in frontier:
                for g in reps:
                    if g in h:
                        continue
                    k = self.generated_subgroup(sorted(h | {g}))
                    if k not in found:
                        found.add(k)
                        new.append(k)
            frontier = new
        return sorted(found, key=lambda h: (len(h), sorted(h)))

    def classes_within(self, subset, sub: frozenset[int]) -> list[frozenset[int]]:
        """Partition ``subset`` (contained in ``sub``) into ``sub``-conjugacy classes."""
        remaining = set(subset)
        parts = []
        while remaining:
            x = min(remaining)
            cls = {self.conjugate(x, h) for h in sub}
            parts.append(frozenset(cls))
            remaining -= cls
        return parts


@dataclass(frozen=True, eq=False)
class ConjClassSet:
    """A nonempty conjugation-invariant subset ``c`` of ``group``."""

    group: FiniteGroup
    elements: tuple[int, ...]

    def __post_init__(self):
        elems = tuple(sorted(set(int(x) for x in self.elements)))
        if not elems:
            raise NotConjInvariant("conjugation-invariant subset must be nonempty")
        self.group._check(*elems)
        object.__setattr__(self, "elements", elems)
        s = set(elems)
        for x in elems:
            for g in range(self.group.order):
                if self.group.conjugate(x, g) not in s:
                    raise NotConjInvariant(
                        f"{self.group.element_name(x)} conjugated by {self.group.element_name(g)} leaves the set"
                    )

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.elements

    def __eq__(self, other):
        return (
            isinstance(other, ConjClassSet)
            and other.group.content_hash == self.group.content_hash
            and other.elements == self.elements
        )

    def __hash__(self):
        return hash((self.group.content_hash, self.elements))

    @property
    def key(self) -> str:
        return f"{self.group.content_hash}:{','.join(map(str, self.elements))}"

    def position(self, x: int) -> int:
        return self.elements.index(x)

    def is_single_class(self) -> bool:
        return len(self.group.conjugacy_class(self.elements[0])) == len(self)

    def describe(self) -> str:
        names = [self.group.element_name(x) for x in self.elements]
        return "{" + ", ".join(names) + "}"


@dataclass(frozen=True, eq=False)
class Quandle:
    """Quandle on ``0 .. size-1``; ``op[x, y]`` is ``x^y``."""

    op: np.ndarray

    @property
    def size(self) -> int:
        return self.op.shape[0]

    def axiom_failures(self) -> list[str]:
        """Exhaustive check of the three quandle axioms; empty list when all hold."""
        op = self.op
        k = self.size
        bad = []
        for y in range(k):
            if len(set(op[:, y].tolist())) != k:
                bad.append(f"x -> x^{y} is not a bijection")
        for x in range(k):
            if op[x, x] != x:
                bad.append(f"{x}^{x} != {x}")
        # (z^x)^y == (z^y)^(x^y), vectorised over all (z, x, y)
        z, x, y = np.meshgrid(np.arange(k), np.arange(k), np.arange(k), indexing="ij")
        lhs = op[op[z, x], y]
        rhs = op[op[z, y], op[x, y]]
        if not np.array_equal(lhs, rhs):
            bad.append("self-distributivity fails")
        return bad

    def schreier_edges(self):
        k = self.size
        return {(x, int(self.op[x, y])) for x in range(k) for y in range(k)}


def conjugate(a: int, b: int, G: FiniteGroup) -> int:
    """Return ``b a b^-1``."""
    return G.conjugate(a, b)


def conjugation_quandle(G: FiniteGroup, c) -> Quandle:
    """The quandle structure on ``c`` given by ``x^y = y x y^-1``.

    ``c`` may be a :class:`ConjClassSet` or any iterable of element indices;
    the latter is validated and raises :class:`NotConjInvariant` when not closed.
    """
    if not isinstance(c, ConjClassSet):
        c = ConjClassSet(G, tuple(c))
    pos = {x: i for i, x in enumerate(c.elements)}
    k = len(c)
    op = np.empty((k, k), dtype=np.int64)
    for i, x in enumerate(c.elements):
        for j, y in enumerate(c.elements):
            op[i, j] = pos[G.conjugate(x, y)]
    op.setflags(write=False)
    return Quandle(op)


def is_connected_quandle(Q: Quandle) -> bool:
    """Connectivity of the Schreier graph, viewed as an undirected graph."""
    k = Q.size
    adj = [set() for _ in range(k)]
    for a, b in Q.schreier_edges():
        adj[a].add(b)
        adj[b].add(a)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == k


@dataclass(frozen=True)
class NonSplittingVerdict:
    holds: bool
    reason: str
    witness: frozenset[int] | None = None
    witness_parts: tuple[frozenset[int], ...] = ()

    def __bool__(self):
        return self.holds


def is_non_splitting(G: FiniteGroup, c: ConjClassSet) -> NonSplittingVerdict:
    """Check that ``c`` generates ``G`` and meets each subgroup in at most one class.

    On failure the verdict carries the first offending subgroup in
    (order, elements) order, together with the split pieces of ``c``.
    """
    if G.generated_subgroup(c.elements) != frozenset(range(G.order)):
        return NonSplittingVerdict(False, "does not generate")
    cs = set(c.elements)
    for h in G.subgroups():
        meet = cs & h
        if not meet:
            continue
        parts = G.classes_within(meet, h)
        if len(parts) > 1:
            return NonSplittingVerdict(False, "splits in a subgroup", h, tuple(parts))
    return NonSplittingVerdict(True, "non-splitting")


# --- constructors -----------------------------------------------------------------


def _perm_name(p) -> str:
    seen = set()
    cycles = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        cycles.append("(" + "".join(str(k + 1) for k in cyc) + ")")
    return "".join(cycles) or "()"


def permutation_group(perms, name="G") -> FiniteGroup:
    """Group from an explicit list of permutations, closed under composition.

    Product convention: ``(p*q)(i) = p(q(i))``.
    """
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    m = len(perms)
    table = np.empty((m, m), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            table[i, j] = index[tuple(p[k] for k in q)]
    # composition of permutations is associative by construction
    return FiniteGroup.from_table(table, [_perm_name(p) for p in perms], name=name, check_associative=False)


def symmetric_group(n: int) -> FiniteGroup:
    if not 1 <= n <= 6:
        raise ValueError("built-in symmetric groups are S_1 .. S_6")
    return permutation_group(itertools.permutations(range(n)), name=f"S{n}")


def alternating_group(n: int) -> FiniteGroup:
    if not 1 <= n <= 6:
        raise ValueError("built-in alternating groups are A_1 .. A_6")

    def even(p):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        return inv % 2 == 0

    return permutation_group([p for p in itertools.permutations(range(n)) if even(p)], name=f"A{n}")


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return FiniteGroup.from_table(table, [str(i) for i in range(n)], name=f"Z{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the regular ``n``-gon (order ``2n``), as vertex permutations."""
    if n < 3:
        raise ValueError("dihedral group needs n >= 3")
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    elems = sorted(permutation_group_closure([rot, ref], n))
    return permutation_group(elems, name=f"D{n}")


def permutation_group_closure(gens, n) -> set[tuple[int, ...]]:
    ident = tuple(range(n))
    seen = {ident}
    queue = deque([ident])
    while queue:
        p = queue.popleft()
        for g in gens:
            q = tuple(p[k] for k in g)
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return seen


def builtin_group(name: str) -> FiniteGroup:
    """Resolve ``S<n>``, ``A<n>``, ``Z<n>``/``C<n>`` or ``D<n>``."""
    s = name.strip().upper()
    kind, num = s[:1], s[1:]
    if not num.isdigit():
        raise ValueError(f"unknown group {name!r}")
    n = int(num)
    if kind == "S":
        return symmetric_group(n)
    if kind == "A":
        return alternating_group(n)
    if kind in ("Z", "C"):
        return cyclic_group(n)
    if kind == "D":
        return dihedral_group(n)
    raise ValueError(f"unknown group {name!r}")


def load_cayley_table(path) -> FiniteGroup:
    """Read the plain-text Cayley table format.

    Line 1 is the order ``m``; the next ``m`` lines hold 0-based product indices
    (row ``i``, column ``j`` is ``i*j``); optional trailing lines ``i <name>``.
    """
    path = Path(path)
    lines = [ln for ln in path.read_text().splitlines() if ln.strip()]
    if not lines:
        raise InvalidGroupTable(f"{path}: empty file")
    try:
        m = int(lines[0].split()[0])
        rows = [[int(t) for t in lines[1 + i].split()] for i in range(m)]
    except (ValueError, IndexError) as exc:
        raise InvalidGroupTable(f"{path}: malformed table ({exc})") from None
    if any(len(r) != m for r in rows):
        raise InvalidGroupTable(f"{path}: each row needs {m} entries")
    names = None
    extra = lines[1 + m :]
    if extra:
        names = [str(i) for i in range(m)]
        for ln in extra:
            idx, _, nm = ln.strip().partition(" ")
            try:
                names[int(idx)] = nm.strip()
            except (ValueError, IndexError):
                raise InvalidGroupTable(f"{path}: bad name line {ln!r}") from None
    return FiniteGroup.from_table(rows, names, name=path.stem)


def write_cayley_table(G: FiniteGroup, path) -> None:
    lines = [str(G.order)]
    lines += [" ".join(map(str, row)) for row in G.mult.tolist()]
    if G.element_names is not None:
        lines += [f"{i} {nm}" for i, nm in enumerate(G.element_names)]
    Path(path).write_text("\n".join(lines) + "\n")
