import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hurwitz_lab.errors import InvalidElement, InvalidGroupTable, NotConjInvariant
from hurwitz_lab.groups import (
    ConjClassSet,
    FiniteGroup,
    Quandle,
    alternating_group,
    builtin_group,
    conjugate,
    conjugation_quandle,
    cyclic_group,
    dihedral_group,
    is_connected_quandle,
    is_non_splitting,
    load_cayley_table,
    symmetric_group,
    write_cayley_table,
)

S3 = symmetric_group(3)
elements = st.integers(0, S3.order - 1)


def named(G, *names):
    return [G.element_index(x) for x in names]


def test_conjugate_example():
    a, b = named(S3, "(13)", "(12)")
    assert S3.element_name(conjugate(a, b, S3)) == "(23)"


def test_conjugate_identity_cases():
    e = S3.identity
    for x in range(S3.order):
        assert conjugate(e, x, S3) == e
        assert conjugate(x, e, S3) == x


@given(elements, elements, elements)
def test_conjugation_is_a_left_action(a, b, g):
    # (a^b)^g == a^(g b) and conjugation by b^-1 undoes conjugation by b
    assert conjugate(conjugate(a, b, S3), g, S3) == conjugate(a, S3.mul(g, b), S3)
    assert conjugate(conjugate(a, b, S3), int(S3.inv[b]), S3) == a


def test_invalid_element():
    with pytest.raises(InvalidElement):
        conjugate(0, 99, S3)
    with pytest.raises(InvalidElement):
        S3.element_index("(1234)")


def test_group_orders():
    assert [symmetric_group(n).order for n in range(1, 6)] == [1, 2, 6, 24, 120]
    assert alternating_group(4).order == 12
    assert dihedral_group(5).order == 10
    assert cyclic_group(7).order == 7
    with pytest.raises(ValueError):
        builtin_group("Q8")


def test_from_table_rejects_nonassociative():
    with pytest.raises(InvalidGroupTable):
        FiniteGroup.from_table([[0, 1, 2], [1, 0, 0], [2, 2, 0]])


def test_cayley_roundtrip(tmp_path):
    G = dihedral_group(4)
    path = tmp_path / "d4.txt"
    write_cayley_table(G, path)
    H = load_cayley_table(path)
    assert H.content_hash == G.content_hash
    assert [H.element_name(x) for x in range(H.order)] == [G.element_name(x) for x in range(G.order)]


def test_cayley_malformed(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("2\n0 1\n1\n")
    with pytest.raises(InvalidGroupTable):
        load_cayley_table(path)


def test_class_must_be_invariant():
    with pytest.raises(NotConjInvariant):
        ConjClassSet(S3, tuple(named(S3, "(12)")))
    with pytest.raises(NotConjInvariant):
        ConjClassSet(S3, ())


def test_subgroup_counts():
    assert len(S3.subgroups()) == 6
    assert len(symmetric_group(4).subgroups()) == 30
    assert len(alternating_group(4).subgroups()) == 10


@pytest.mark.parametrize(
    "group,rep",
    [("S3", "(12)"), ("S4", "(12)"), ("Z2", "1"), ("Z4", "1"), ("A4", "(123)"), ("D5", "(25)(34)"), ("S4", "(123)")],
)
def test_quandle_axioms_exhaustive(group, rep):
    G = builtin_group(group)
    Q = conjugation_quandle(G, G.conjugacy_class(G.element_index(rep)))
    assert Q.axiom_failures() == []


def test_quandle_examples():
    c = S3.conjugacy_class(S3.element_index("(12)"))
    Q = conjugation_quandle(S3, c)
    assert Q.size == 3
    assert is_connected_quandle(Q)
    Qe = conjugation_quandle(S3, [S3.identity])
    assert Qe.size == 1 and Qe.op[0, 0] == 0
    assert is_connected_quandle(Qe)
    trivial2 = Quandle(np.array([[0, 0], [1, 1]]))
    assert trivial2.axiom_failures() == []
    assert not is_connected_quandle(trivial2)


def test_quandle_axiom_failures_reported():
    broken = Quandle(np.array([[1, 1], [0, 0]]))
    assert broken.axiom_failures()


def test_non_splitting_examples(s3, s4, z2, z4):
    assert is_non_splitting(*s3).holds
    assert is_non_splitting(*z2).holds
    assert is_non_splitting(*z4).holds
    G, c = s4
    v = is_non_splitting(G, c)
    assert not v.holds
    assert sorted(G.element_name(x) for x in v.witness) == ["()", "(12)", "(12)(34)", "(34)"]
    assert sorted(sorted(G.element_name(x) for x in part) for part in v.witness_parts) == [["(12)"], ["(34)"]]


def test_non_generating_class():
    G = symmetric_group(4)
    v = is_non_splitting(G, G.conjugacy_class(G.element_index("(123)")))
    assert not v.holds and v.reason == "does not generate"


def test_non_splitting_single_classes_are_connected():
    for group, rep in [("S3", "(12)"), ("A4", "(123)"), ("D5", "(25)(34)"), ("Z4", "1")]:
        G = builtin_group(group)
        c = G.conjugacy_class(G.element_index(rep))
        if is_non_splitting(G, c).holds:
            assert is_connected_quandle(conjugation_quandle(G, c))
