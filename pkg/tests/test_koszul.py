import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hurwitz_lab.braids import PBR, GradedComponentRing, LabeledTuple, enumerate_orbits, find_central_stabilizer
from hurwitz_lab.errors import BudgetExceeded, DegreeMismatch, InvalidFace, MissingStabilizer
from hurwitz_lab.groups import builtin_group
from hurwitz_lab.koszul import (
    ChainComplexData,
    KoszulBasisElement,
    build_double_complex,
    build_injective_words_complex,
    build_koszul,
    delta_action,
    face_map,
    homology_dims,
    injective_words_bound,
    low_degree_vanishing_check,
    right_mult_chain_map,
    right_mult_homology_check,
    total_vanishing_bound,
    vanishing_threshold_scan,
)
from hurwitz_lab.linalg import SparseMatrix

S3 = builtin_group("S3")
C3 = S3.conjugacy_class(S3.element_index("(12)"))


def el(name):
    return S3.element_index(name)


def orbit(*names):
    t = LabeledTuple.standard(el(x) for x in names)
    return enumerate_orbits(C3, len(names), PBR).orbit_of(t)


# --- faces and the simplicial structure -----------------------------------------------


def test_face_example():
    e = KoszulBasisElement((1, 2), (1, 2), (el("(12)"), el("(13)")), 0)
    d0 = face_map(0, e, C3)
    assert d0.h == (2,) and d0.v == (el("(13)"),) and d0.eta == orbit("(23)")
    d1 = face_map(1, e, C3)
    assert d1.h == (1,) and d1.v == (el("(12)"),) and d1.eta == orbit("(13)")


def test_augmentation_face():
    e = KoszulBasisElement((1, 2), (2,), (el("(12)"),), orbit("(13)"))
    aug = face_map(0, e, C3)
    assert aug.h == () and aug.v == ()
    # point 2 is listed before point 1, so moving it into place conjugates the other label
    assert aug.eta == orbit("(23)", "(12)")


def test_face_index_range():
    e = KoszulBasisElement((1, 2), (1,), (el("(12)"),), 0)
    with pytest.raises(InvalidFace):
        face_map(1, e, C3)
    with pytest.raises(InvalidFace):
        delta_action((1, 0), KoszulBasisElement((1, 2), (1, 2), (el("(12)"),) * 2, 0), C3)


def basis_elements(n, p):
    carrier = tuple(range(1, n + 1))
    n_eta = len(enumerate_orbits(C3, n - p - 1, PBR))
    for h in itertools.permutations(carrier, p + 1):
        for v in itertools.product(C3.elements, repeat=p + 1):
            for eta in range(n_eta):
                yield KoszulBasisElement(carrier, h, v, eta)


def test_simplicial_identities_exhaustive():
    # d_i d_j = d_j d_{i+1} for j <= i
    for e in basis_elements(4, 2):
        for i in range(2):
            for j in range(i + 1):
                lhs = face_map(i, face_map(j, e, C3), C3)
                rhs = face_map(j, face_map(i + 1, e, C3), C3)
                assert lhs == rhs


def monotone(q, p):
    if q < 0:
        return st.just(())
    return st.lists(st.integers(0, p), min_size=q + 1, max_size=q + 1, unique=True).map(lambda xs: tuple(sorted(xs)))


@st.composite
def element_and_maps(draw):
    n = draw(st.integers(3, 5))
    p = draw(st.integers(0, n - 1))
    q = draw(st.integers(-1, p))
    r = draw(st.integers(-1, q))
    h = tuple(draw(st.permutations(range(1, n + 1)))[: p + 1])
    v = tuple(draw(st.lists(st.sampled_from(C3.elements), min_size=p + 1, max_size=p + 1)))
    n_eta = len(enumerate_orbits(C3, n - p - 1, PBR))
    eta = draw(st.integers(0, n_eta - 1))
    g = draw(monotone(q, p))
    f = draw(monotone(r, q))
    return KoszulBasisElement(tuple(range(1, n + 1)), h, v, eta), g, f


@given(element_and_maps())
def test_delta_action_is_functorial(data):
    e, g, f = data
    gf = tuple(g[i] for i in f)
    assert delta_action(gf, e, C3) == delta_action(f, delta_action(g, e, C3), C3)


@given(element_and_maps())
def test_faces_are_coface_actions(data):
    e, _, _ = data
    p = e.p
    for i in range(p + 1):
        skip = tuple(j for j in range(p + 1) if j != i)
        assert delta_action(skip, e, C3) == face_map(i, e, C3)
    assert delta_action(tuple(range(p + 1)), e, C3) == e


# --- complexes and homology -----------------------------------------------------------


def test_homology_trivial_complexes():
    zero = ChainComplexData("zero", 0, 0, {0: []}, {}, 0)
    assert homology_dims(zero).dims() == {0: 0}
    ident = ChainComplexData("id", 0, 1, {0: ["a"], 1: ["b"]}, {1: SparseMatrix.identity(1)}, 1)
    assert homology_dims(ident).dims() == {0: 0, 1: 0}


def nonzero(cx):
    return {d: h for d, h in homology_dims(cx).dims().items() if h}


FROZEN_HOMOLOGY = {
    ("S3", "(12)"): [{-1: 1}, {}, {1: 5}, {2: 39}, {2: 13, 3: 487}],
    ("A4", "(123)"): [{-1: 1}, {}, {1: 8}, {1: 2, 2: 87}],
    ("D5", "(25)(34)"): [{-1: 1}, {}, {1: 9}, {1: 10, 2: 135}],
    ("Z4", "1"): [{-1: 1}, {}, {1: 1}, {2: 2}, {3: 9}],
}


@pytest.mark.parametrize("key", sorted(FROZEN_HOMOLOGY))
def test_frozen_koszul_homology(key):
    G = builtin_group(key[0])
    c = G.conjugacy_class(G.element_index(key[1]))
    got = [nonzero(build_koszul(c, n)) for n in range(len(FROZEN_HOMOLOGY[key]))]
    assert got == FROZEN_HOMOLOGY[key]


def derangements(n):
    return round(math.factorial(n) / math.e) if n else 1


@pytest.mark.parametrize("n", range(2, 7))
def test_trivial_class_gives_injective_words(z2, n):
    # a single central label: the complex is the injective-words complex,
    # with homology only in the top degree, of rank the derangement number
    assert nonzero(build_koszul(z2[1], n)) == {n - 1: derangements(n)}


def test_truncated_build_agrees_with_full():
    full = homology_dims(build_koszul(C3, 4)).dims()
    part = homology_dims(build_koszul(C3, 4, max_degree=1)).dims()
    assert part == {d: full[d] for d in part}
    assert max(part) == 1


def test_d_squared_zero_on_built_complexes(z4):
    for c, top in ((C3, 4), (z4[1], 5)):
        for n in range(top + 1):
            assert build_koszul(c, n, check=False).d_squared_failures() == []


def test_basis_budget():
    with pytest.raises(BudgetExceeded):
        build_koszul(C3, 5, basis_limit=1000)


def test_low_degree_vanishing(z2):
    rows = low_degree_vanishing_check(C3, range(0, 5))
    assert all(r.ok for r in rows)
    assert rows[0].h_minus1 == 1
    assert all(r.ok for r in low_degree_vanishing_check(z2[1], range(1, 9)))


def test_right_mult_commutes_and_kills_homology():
    src = build_koszul(C3, 3)
    tgt = build_koszul(C3, 4)
    for g in C3.elements:
        F = right_mult_chain_map(C3, g, src, tgt)
        for p in range(0, 3):
            assert tgt.differentials[p] @ F[p] == F[p - 1] @ src.differentials[p]
    rows = right_mult_homology_check(C3, 3, src=src, tgt=tgt)
    assert {r.degree for r in rows if r.homology} == {2}
    assert all(r.zero_on_homology for r in rows)


def test_right_mult_rejects_outside_element():
    with pytest.raises(DegreeMismatch):
        right_mult_homology_check(C3, 2, [S3.identity])


def test_threshold_scan(z2):
    scan = vanishing_threshold_scan(z2[1], 5, max_degree=2)
    assert scan.thresholds[-1] == 1 and scan.thresholds[0] == 0
    assert scan.thresholds[1] == 3 and scan.thresholds[2] == 4
    low = low_degree_vanishing_check(z2[1], range(0, 6))
    assert [r.h_minus1 for r in low] == [scan.table[-1][n] for n in range(6)]
    assert vanishing_threshold_scan(z2[1], 0).verdict == "NoData"
    assert scan.as_dict()["conclusive"] is False


# --- injective words -----------------------------------------------------------------


def test_injective_words_examples():
    _, rep = build_injective_words_complex(1, 1)
    assert rep.bound == -1 and rep.homology[-1] == 0
    _, rep = build_injective_words_complex(4, 1)
    assert rep.homology[0] == 0 and rep.ok
    cx, rep = build_injective_words_complex(2, 2)
    assert rep.bound == -1 and cx.dim(0) == 2


@pytest.mark.parametrize("s,t", [(s, t) for s in range(1, 7) for t in (1, 2)])
def test_injective_words_connectivity(s, t):
    cx, rep = build_injective_words_complex(s, t)
    assert cx.d_squared_failures() == []
    assert rep.bound == injective_words_bound(s, t)
    assert rep.ok


# --- double complex --------------------------------------------------------------------


def test_double_complex_needs_stabilizer():
    with pytest.raises(MissingStabilizer):
        build_double_complex(C3, 3, None)


def test_total_bound_values():
    assert total_vanishing_bound(6, 1, 0, 0) == 0
    assert total_vanishing_bound(2, 1, 0, 0) == -2
    assert total_vanishing_bound(7, 2, 3, 0) == -1


@pytest.mark.parametrize("n", range(0, 6))
def test_double_complex_trivial_pair(z2, n):
    stab = find_central_stabilizer(GradedComponentRing(z2[1], 5)).found
    rep = build_double_complex(z2[1], n, stab)
    assert rep.commutes and rep.horizontal_square_zero and rep.vertical_square_zero and rep.total_d_squared_zero
    assert rep.vanishing_ok


def test_double_complex_s3_identities():
    stab = find_central_stabilizer(GradedComponentRing(C3, 6)).found
    rep = build_double_complex(C3, 5, stab, max_degree=1)
    assert rep.commutes and rep.horizontal_square_zero and rep.vertical_square_zero and rep.total_d_squared_zero
