"""One test per acceptance criterion; each prints a single PASS/FAIL line."""
import itertools
import subprocess
import sys
import time
from pathlib import Path

import pytest

from ncsymalg.curve import AR_TABLE, ar_audit, dimform_audit
from ncsymalg.fields import galois_group
from ncsymalg.ncsym import ZAlgebra, check_domain, check_left_exactness, check_shift, double_dual_isomorphic
from ncsymalg.symmetry import aut_order, orbit_case, predicted_orbit_case, predicted_stab, stab, twist_triple, verify_witness

TESTS_DIR = Path(__file__).parent


@pytest.fixture
def verdict(capsys):
    def show(number, title, ok, detail, started):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail}; {time.perf_counter() - started:.1f}s)"
        with capsys.disabled():
            print("\n" + line)
        assert ok, line

    return show


def rational(i, j):
    return j - i + 1


def three_case(i, j):
    s = j - i
    if s % 2 == 0:
        return s + 1
    return (s + 1) // 2 if i % 2 else 2 * s + 2


def test_criterion_1_dims_split22(verdict, spec22):
    t = time.perf_counter()
    Z = ZAlgebra(spec22.bimodule)
    cells = [(i, i + s) for i in range(-2, 5) for s in range(7)]
    bad = [(i, j) for i, j in cells if Z.right_dim(i, j) != rational(i, j)]
    verdict(1, "right dim of A_ij = j-i+1 on split22, -2<=i, j-i<=6", not bad, f"{len(cells)} cells, mismatches {bad}", t)


def test_criterion_2_dims_onefour(verdict, spec14):
    t = time.perf_counter()
    Z = ZAlgebra(spec14.bimodule)
    cells = [(i, i + s) for i in range(0, 6) for s in range(6)]
    bad = [(i, j) for i, j in cells if Z.right_dim(i, j) != three_case(i, j)]
    named = {(0, 1): 4, (1, 2): 1, (0, 2): 3, (0, 3): 8}
    bad += [(i, j) for (i, j), v in named.items() if Z.right_dim(i, j) != v]
    verdict(2, "three-case right dims on onefour, 0<=i, j-i<=5", not bad, f"{len(cells)} cells + A01,A12,A02,A03, mismatches {bad}", t)


def test_criterion_3_left_exactness(verdict, spec22, spec14):
    t = time.perf_counter()
    count, bad = 0, []
    for spec in (spec22, spec14):
        Z = ZAlgebra(spec.bimodule)
        for i, s in itertools.product(range(-2, 5), range(6)):
            count += 1
            if not check_left_exactness(Z, i, i + s).equal:
                bad.append((spec.label, i, i + s))
    verdict(3, "left exactness as subspace equality, j-i<=5, both finite fixtures", not bad, f"{count} cells, failures {bad}", t)


def test_criterion_4_domain(verdict, spec22):
    t = time.perf_counter()
    Z = ZAlgebra(spec22.bimodule)
    triples = [x for x in itertools.product(range(4), repeat=3) if x[0] <= x[1] <= x[2]]
    results = [check_domain(Z, *x, budget=spec22.enumeration_budget) for x in triples]
    bad = [(r.i, r.j, r.l) for r in results if not r.ok]
    verdict(4, "no zero divisors on split22, 0<=i<=j<=l<=3", not bad, f"{len(triples)} triples, {sum(r.checked for r in results)} elements", t)


def test_criterion_5_shift(verdict, spec22, spec14):
    t = time.perf_counter()
    bad, count = [], 0
    for spec in (spec22, spec14):
        Z = ZAlgebra(spec.bimodule)
        for i, s in itertools.product(range(-2, 5), range(5)):
            count += 1
            if not check_shift(Z, i, i + s).ok:
                bad.append((spec.label, i, i + s))
        if not double_dual_isomorphic(spec.bimodule):
            bad.append((spec.label, "N** not iso N"))
    verdict(5, "dim A_{i+2,j+2} = dim A_ij for spans<=4 and N** iso N", not bad, f"{count} cells, failures {bad}", t)


def test_criterion_6_curve(verdict, spec22, spec14):
    t = time.perf_counter()
    bad, count = [], 0
    for spec in (spec22, spec14):
        Z = ZAlgebra(spec.bimodule)
        rows = dimform_audit(Z, 3) + ar_audit(Z)
        count += len(rows)
        bad += [(spec.label, r.row, r.i, r.expected, r.computed) for r in rows if not r.ok]
    assert AR_TABLE == {(2, 2): {"L": 2, "Lbar": 2}, (1, 4): {"L": 1, "Lbar": 4}}
    verdict(6, "hom-dimension table for i<=3, vanishing for i<0, AR multiplicities", not bad, f"{count} rows, failures {bad}", t)


def test_criterion_7_symmetry(verdict, spec22):
    t = time.perf_counter()
    M = spec22.bimodule
    problems = []
    res = aut_order(M, spec22.enumeration_budget)
    if not (res.brute == res.formula == 2):
        problems.append(f"aut order brute {res.brute} formula {res.formula}")
    key = lambda ps: sorted((p.delta.gen_image.coeffs, p.epsilon.gen_image.coeffs) for p in ps)
    pairs = stab(M)
    if key(pairs) != key(predicted_stab(M)):
        problems.append("stabiliser differs from the multiset prediction")
    case = orbit_case(M)
    if case.value != predicted_orbit_case(M) or not verify_witness(M, case):
        problems.append(f"orbit case {case.value} not confirmed")
    G = galois_group(M.left_field)
    for d, e in itertools.product(G.elements, repeat=2):
        if orbit_case(twist_triple(d, M, e)).value != case.value:
            problems.append("orbit case not twist-invariant")
    verdict(7, "aut order by two routes, stabiliser, orbit case on split22", not problems,
            f"|Aut|={res.brute}, |Stab|={len(pairs)}, case {case.value}; {problems}", t)


def test_criterion_8_rational(verdict, specQ):
    t = time.perf_counter()
    Z = ZAlgebra(specQ.bimodule)
    cells = [(i, i + s) for i in range(-2, 5) for s in range(5)]
    bad = [(i, j) for i, j in cells if Z.right_dim(i, j) != rational(i, j)]
    exact = Z.base.is_prime is False
    verdict(8, "right dims j-i+1 over Q for the simple (2,2) bimodule, spans<=4", exact and not bad,
            f"{len(cells)} cells, mismatches {bad}", t)


def test_criterion_9_property_suite(verdict):
    t = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", str(TESTS_DIR / "test_properties.py")],
        capture_output=True, text=True, cwd=TESTS_DIR.parent,
    )
    tail = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr.strip()[-200:]
    verdict(9, "seeded property suite runs standalone and is green", proc.returncode == 0, tail, t)
