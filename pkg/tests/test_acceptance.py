"""Acceptance criteria 1-13, exact arithmetic throughout.

Each test prints one ``criterion N: PASS|FAIL`` line (visible even under
capture) before asserting, so ``pytest tests/test_acceptance.py`` doubles as
a checklist.
"""

import itertools
import subprocess
import sys
import time
from collections import deque

import pytest

from hurwitz_lab.braids import (
    BR,
    PBR,
    BraidWord,
    GradedComponentRing,
    LabeledTuple,
    act_artin,
    act_braid_word,
    check_lift_iso_on_pi0,
    enumerate_orbits,
    find_central_stabilizer,
    pure_braid_generators,
    scan_nc,
)
from hurwitz_lab.characters import (
    Partition,
    hilbert_poly_fit,
    hook_length_dim,
    irrep_dim,
    macdonald_dim,
    multiplicity_stability_report,
    padded,
    partitions,
    shifted_coinvariant_dim,
    shifted_coinvariant_dim_oracle,
    stable_range_check,
)
from hurwitz_lab.fic import compose, generation_degree, hom_set, identity, pi0_module
from hurwitz_lab.groups import builtin_group, conjugation_quandle, is_connected_quandle, is_non_splitting
from hurwitz_lab.koszul import (
    build_double_complex,
    build_injective_words_complex,
    build_koszul,
    homology_dims,
    right_mult_homology_check,
)

CORPUS = [
    ("S3", "(12)"),
    ("S4", "(12)"),
    ("Z2", "1"),
    ("Z4", "1"),
    ("A4", "(123)"),
    ("D5", "(25)(34)"),
    ("S4", "(123)"),
]

# ring degree needed for a two-degree verification window
RING_NMAX = {("S3", "(12)"): 6, ("Z2", "1"): 5, ("Z4", "1"): 5, ("A4", "(123)"): 8, ("D5", "(25)(34)"): 7}


def pair(group, rep):
    G = builtin_group(group)
    return G, G.conjugacy_class(G.element_index(rep))


@pytest.fixture
def verdict(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail

    return emit


def test_criterion_01_non_splitting(verdict):
    results = {}
    slow = []
    for group, rep in [("S3", "(12)"), ("S4", "(12)"), ("Z2", "1"), ("Z4", "1")]:
        G, c = pair(group, rep)
        t = time.perf_counter()
        v = is_non_splitting(G, c)
        if time.perf_counter() - t >= 1.0:
            slow.append(group)
        results[group] = v
    G4 = builtin_group("S4")
    w = results["S4"]
    witness = None if w.witness is None else sorted(G4.element_name(x) for x in w.witness)
    ok = (
        results["S3"].holds
        and not w.holds
        and witness == ["()", "(12)", "(12)(34)", "(34)"]
        and len(w.witness_parts) == 2
        and results["Z2"].holds
        and results["Z4"].holds
        and not slow
    )
    verdict(1, ok, f"S3 True, S4 False witness {witness}, Z2 True, Z4 True, slow={slow}")


def test_criterion_02_quandles(verdict):
    t = time.perf_counter()
    failures = {}
    disconnected = []
    for group, rep in CORPUS:
        G, c = pair(group, rep)
        Q = conjugation_quandle(G, c)
        if Q.axiom_failures():
            failures[(group, rep)] = Q.axiom_failures()
        if is_non_splitting(G, c).holds and c.is_single_class() and not is_connected_quandle(Q):
            disconnected.append((group, rep))
    elapsed = time.perf_counter() - t
    ok = not failures and not disconnected and elapsed < 1.0
    verdict(2, ok, f"{len(CORPUS)} quandles, axiom failures {failures}, disconnected {disconnected}, {elapsed:.2f}s")


def bfs_count(c, n, moves):
    seen = set()
    count = 0
    for start in itertools.product(c.elements, repeat=n):
        if start in seen:
            continue
        count += 1
        seen.add(start)
        queue = deque([start])
        while queue:
            t = LabeledTuple.standard(queue.popleft())
            for move in moves:
                u = move(t).labels
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
    return count


def test_criterion_03_orbit_engine(verdict):
    t0 = time.perf_counter()
    _, c = pair("S3", "(12)")
    br2 = enumerate_orbits(c, 2, BR)
    pbr2 = enumerate_orbits(c, 2, PBR)
    bfs_br = bfs_count(c, 2, [lambda t: act_artin(1, t, c)])
    bfs_pbr = bfs_count(c, 2, [lambda t, w=w: act_braid_word(w, t, c) for w in pure_braid_generators(2)])
    relations = True
    for labels in itertools.product(c.elements, repeat=3):
        t = LabeledTuple.standard(labels)
        if act_braid_word(BraidWord(3, (1, 2, 1)), t, c) != act_braid_word(BraidWord(3, (2, 1, 2)), t, c):
            relations = False
    scan = scan_nc(c, 6)
    elapsed = time.perf_counter() - t0
    ok = (
        len(br2) == len(pbr2) == bfs_br == bfs_pbr == 5
        and int(br2.sizes.sum()) == 9
        and relations
        and scan.n_max == 6
        and elapsed < 30
    )
    verdict(3, ok, f"|c^2/Br2|={len(br2)} |c^2/PBr2|={len(pbr2)} bfs={bfs_br},{bfs_pbr} sizes sum {int(br2.sizes.sum())}, braid relations {relations}, empirical Nc={scan.empirical_nc} (n<=6), {elapsed:.1f}s")


def test_criterion_04_low_degree_vanishing(verdict):
    rows = []
    d2_ok = True
    for group, rep in [("S3", "(12)"), ("Z2", "1")]:
        _, c = pair(group, rep)
        for n in range(0, 6):
            cx = build_koszul(c, n, max_degree=0, check=False)
            d2_ok &= cx.d_squared_failures() == []
            h = homology_dims(cx, through=0)
            hm1 = h[-1]
            h0 = h[0] if n >= 1 else 0
            rows.append((group, n, hm1, h0))
    ok = d2_ok and all((hm1 == 0 or n == 0) and h0 == 0 for _, n, hm1, h0 in rows)
    bad = [r for r in rows if not ((r[2] == 0 or r[1] == 0) and r[3] == 0)]
    verdict(4, ok, f"H_-1, H_0 over n<=5 for S3 and Z2, violations {bad}, d^2=0 {d2_ok}")


def test_criterion_05_right_multiplication(verdict):
    bad = []
    checked = 0
    for group, rep in [("S3", "(12)"), ("Z2", "1")]:
        _, c = pair(group, rep)
        for n in range(0, 5):
            for row in right_mult_homology_check(c, n):
                checked += 1
                if not row.zero_on_homology:
                    bad.append((group, n, row.g, row.degree))
    verdict(5, not bad, f"{checked} (g, n, degree) rows for n<=4, nonzero induced maps {bad}")


def test_criterion_06_injective_words(verdict):
    bad = []
    for s in range(1, 9):
        for t in (1, 2):
            cx, rep = build_injective_words_complex(s, t)
            if cx.d_squared_failures() or not rep.ok:
                bad.append((s, t, rep.bound, rep.homology))
    verdict(6, not bad, f"|S|<=8, |T|<=2, failures {bad}")


def test_criterion_07_double_complex(verdict):
    lines = []
    ok = True
    nonvacuous = False
    for group, rep, ns in [("Z2", "1", range(0, 7)), ("S3", "(12)", range(4, 8))]:
        _, c = pair(group, rep)
        stab = find_central_stabilizer(GradedComponentRing(c, RING_NMAX[(group, rep)])).found
        Nc = scan_nc(c, 6).empirical_nc or 0
        for n in ns:
            r = build_double_complex(c, n, stab, Nc=Nc)
            good = r.commutes and r.horizontal_square_zero and r.vertical_square_zero and r.total_d_squared_zero and r.vanishing_ok
            ok &= good
            if r.bound >= -2:
                nonvacuous = True
            lines.append(f"{group} n={n} bound={r.bound} {'ok' if good else 'FAIL'}")
    ok &= nonvacuous
    verdict(7, ok, "; ".join(lines))


def test_criterion_08_coinvariants(verdict):
    mismatches = []
    for k in range(5):
        for lam in partitions(k):
            for r in range(7):
                for n in range(11):
                    if shifted_coinvariant_dim(lam, r, n) != shifted_coinvariant_dim_oracle(lam, r, n):
                        mismatches.append((lam, r, n))
    range_fail = []
    for k in range(5):
        for lam in partitions(k):
            for r in range(7):
                v = stable_range_check(lam, r, 10)
                if not v.ok:
                    range_fail.append((lam, r))
    example = [shifted_coinvariant_dim(Partition.of(2), 2, n) for n in range(1, 6)]
    ok = not mismatches and not range_fail and example == [0, 1, 1, 1, 1]
    verdict(8, ok, f"strip vs oracle mismatches {len(mismatches)}, stable-range failures {range_fail}, lambda=(2) r=2 -> {example}")


def test_criterion_09_dimension_formula(verdict):
    bad = []
    count = 0
    for k in range(6):
        for lam in partitions(k):
            for n in range(k + lam.largest, 13):
                mu = padded(lam, n)
                count += 1
                if not (macdonald_dim(lam, n) == irrep_dim(mu) == hook_length_dim(mu)):
                    bad.append((lam, n))
    verdict(9, not bad, f"{count} (lambda, n) pairs, disagreements {bad}")


def test_criterion_10_multiplicity_stability(verdict):
    _, c = pair("S3", "(12)")
    n_max = 7
    rep = multiplicity_stability_report(c, n_max)
    dims = list(rep.table.dims)
    fit = hilbert_poly_fit(dims, max_degree=max(0, len(dims) - 4))
    ok = (
        rep.threshold is not None
        and rep.threshold < n_max
        and rep.table.check_dimensions()
        and fit is not None
        and all(fit(n) == dims[n] for n in range(fit.tail_start, len(dims)))
    )
    verdict(10, ok, f"dims {dims}, rows constant from n={rep.threshold} (window n<={n_max}), fit {None if fit is None else fit.binomial_str()} from n={None if fit is None else fit.tail_start}")


def test_criterion_11_central_stabilizer(verdict):
    lines = []
    ok = True
    for group, rep in CORPUS:
        G, c = pair(group, rep)
        if not is_non_splitting(G, c).holds:
            continue
        ring = GradedComponentRing(c, RING_NMAX[(group, rep)])
        res = find_central_stabilizer(ring)
        if res.found is None:
            ok = False
            lines.append(f"{group}: NotFound ({res.reason})")
            continue
        stab = res.found
        Nc = scan_nc(c, ring.n_max).empirical_nc
        lo = max(stab.N0, Nc if Nc is not None else ring.n_max + 1)
        rows = check_lift_iso_on_pi0(stab, range(lo, stab.window_end + 1))
        good = ring.is_central(stab.u, stab.N) and bool(rows) and all(r.bijective for r in rows)
        if (group, rep) == ("Z2", "1"):
            good &= stab.N == 1
        ok &= good
        lines.append(f"{group}: N={stab.N} N0={stab.N0} Nc={Nc} lift bijective on n={lo}..{stab.window_end} {good}")
    verdict(11, ok, "; ".join(lines))


def test_criterion_12_fic(verdict):
    t0 = time.perf_counter()
    _, c = pair("S3", "(12)")

    def std(k):
        return tuple(range(1, k + 1))

    laws = True
    triples = 0
    for d in range(5):
        for cc in range(d + 1):
            for b in range(cc + 1):
                for a in range(b + 1):
                    for m1 in hom_set(std(a), std(b), c):
                        if compose(identity(std(a)), m1, c) != m1 or compose(m1, identity(std(b)), c) != m1:
                            laws = False
                        for m2 in hom_set(std(b), std(cc), c):
                            m12 = compose(m1, m2, c)
                            for m3 in hom_set(std(cc), std(d), c):
                                triples += 1
                                if compose(m12, m3, c) != compose(m1, compose(m2, m3, c), c):
                                    laws = False
    generated, rows = generation_degree(pi0_module(c, 5), 0)
    elapsed = time.perf_counter() - t0
    ok = laws and generated and elapsed < 60
    verdict(12, ok, f"{triples} composable triples with |V|<=4, laws {laws}, generated in degree 0 through n=5 {generated}, {elapsed:.1f}s")


def test_criterion_13_determinism(verdict, tmp_path):
    outs = []
    for name in ("first", "second"):
        d = tmp_path / name
        cmd = [sys.executable, "-m", "hurwitz_lab", "dossier", "--group", "S3", "--class-rep", "(12)", "--nmax", "6", "--out", str(d)]
        proc = subprocess.run(cmd, capture_output=True, text=True)
        outs.append((proc.returncode, (d / "dossier.json").read_bytes() if (d / "dossier.json").exists() else b""))
    ok = outs[0][0] == outs[1][0] == 0 and outs[0][1] == outs[1][1] and len(outs[0][1]) > 0
    verdict(13, ok, f"exit codes {outs[0][0]},{outs[1][0]}, {len(outs[0][1])} bytes, identical {outs[0][1] == outs[1][1]}")
