"""Acceptance criteria, one test each; every test logs a PASS/FAIL line."""

import random
from functools import lru_cache

import numpy as np
import pytest

from conftest import random_element, to_np
from so7atlas import atlas7, report
from so7atlas.clifford import char_norm, is_transitive_on_axes
from so7atlas.groupkit import complement_search, derived_subgroup, fingerprint, is_simple, subgroups_above
from so7atlas.signedperm import compose, det, inverse, trace


def record(log, n, ok, detail):
    line = f"AC{n:<2} {'PASS' if ok else 'FAIL'}  {detail}"
    log.append(line)
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def reports():
    return {gid: report.build_report(gid) for gid in atlas7.CATALOG}


def _triple(rep):
    c = rep["clifford"]
    return c["nfc"], c["fc_paper"], c["fc_orbit"], c["direct_classes"]


def test_ac01_case2_rows(reports, acceptance_log):
    expected = {
        "case2-z7": (7, 1, 8),
        "case2-f21": (5, 3, 8),
        "case2-psl32-split": (6, 5, 11),
        "case2-psl32-nonsplit": (6, 5, 11),
    }
    bad = []
    for gid, (nfc, fc, total) in expected.items():
        got = _triple(reports[gid])
        if got != (nfc, fc, fc, total):
            bad.append(f"{gid}={got}")
    record(acceptance_log, 1, not bad, "case-2 rows exact by fc_paper, fc_orbit, direct" + (f" {bad}" if bad else ""))


def test_ac02_row_64_7(reports, acceptance_log):
    got = _triple(reports["case3-z7"])
    record(acceptance_log, 2, got == (7, 9, 9, 16), f"64.7 (nfc, fc_paper, fc_orbit, direct) = {got}")


def test_ac03_master_cross_validation(reports, acceptance_log):
    bad = []
    for gid, rep in reports.items():
        c = rep["clifford"]
        if c["direct_classes"] != c["nfc"] + c["fc_orbit"]:
            bad.append(gid)
    record(acceptance_log, 3, not bad, f"direct = nfc + fc_orbit on all {len(reports)} catalog groups" + (f" {bad}" if bad else ""))


@lru_cache(maxsize=None)
def partitions(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        return 1
    return sum(partitions(n - k, k) for k in range(1, min(n, largest) + 1))


def test_ac04_case3_adjudication(reports, acceptance_log):
    rows = ["case3-d14", "case3-f21", "case3-f42", "case3-psl32", "case3-a7", "case3-s7"]
    fc_paper = [reports[g]["clifford"]["fc_paper"] for g in rows]
    consistent = all(
        reports[g]["clifford"]["direct_classes"] == reports[g]["clifford"]["nfc"] + reports[g]["clifford"]["fc_orbit"]
        for g in rows
    )
    wreath = sum(partitions(k) * partitions(7 - k) for k in range(8))
    s7 = reports["case3-s7"]["clifford"]["direct_classes"]
    s7_neg = reports["case3-s7+neg"]["clifford"]["direct_classes"]
    ok = fc_paper == [18, 27, 54, 45, 63, 99] and consistent and wreath == 110 and s7 == wreath // 2 and s7_neg == wreath
    verdicts = [
        f"{g}:{'agrees' if reports[g]['table1']['match_total'] else 'differs'}"
        f"({reports[g]['clifford']['direct_classes']} vs {reports[g]['table1']['claimed_total']})"
        for g in rows
    ]
    record(acceptance_log, 4, ok, f"fc_paper={fc_paper} direct(case3-s7)={s7} oracle={wreath}/2; " + " ".join(verdicts))


def test_ac05_invariant_codes(acceptance_log):
    codes = atlas7.enumerate_invariant_codes()
    orders = sorted(c.order for c in codes)
    fpf = all(c.fixed_point_free for c in codes)
    record(acceptance_log, 5, orders == [8, 8, 64] and fpf, f"invariant code orders {orders}, fixed-point-free {fpf}")


def test_ac06_quotient_lists(acceptance_log):
    sym = {H.order for H in atlas7.sylow7_overgroups()}
    gl = atlas7.build_gl32()
    psl = {H.order for H in subgroups_above(gl, atlas7.permutation_group([atlas7.ALPHA_PERM]))}
    ok = sym == {7, 14, 21, 42, 168, 2520, 5040} and psl == {7, 21, 168}
    record(acceptance_log, 6, ok, f"Sym(7) orders {sorted(sym)}; PSL(3,2) orders {sorted(psl)}")


def test_ac07_split_results(acceptance_log):
    targets = [g for g in atlas7.CATALOG if g.startswith("case3")] + ["case2-z7", "case2-f21", "case2-psl32-split"]
    missing = []
    for gid in targets:
        recipe, _ = atlas7.parse_id(gid)
        G = atlas7.named_group(gid)
        A = atlas7.diagonal_group(recipe.diagonal_code)
        C = complement_search(G, A)
        if C is None or C.order * A.order != G.order or int(A.contains_codes(C.elements).sum()) != 1:
            missing.append(gid)
    A8 = atlas7.diagonal_group(atlas7.build_A8())
    groups = atlas7.search_order_1344()
    distinct = len({fingerprint(H) for H in groups}) == len(groups)
    perfect = all(derived_subgroup(H).order == H.order for H in groups)
    n_split = sum(complement_search(H, A8) is not None for H in groups)
    excl = atlas7.exclude_nonsplit_64_14()
    ok = not missing and len(groups) == 2 and distinct and perfect and n_split == 1 and excl
    record(
        acceptance_log,
        7,
        ok,
        f"complements found for {len(targets) - len(missing)}/{len(targets)}; order-1344 groups {len(groups)}, "
        f"split {n_split}, perfect {perfect}; nonsplit 64.14 excluded {excl}",
    )


def test_ac08_case1(acceptance_log):
    H = atlas7.search_case1_psl27()
    plain = atlas7.build_gl32()
    ok = (
        H.order == 168
        and is_simple(H)
        and char_norm(H) == 1
        and is_transitive_on_axes(H)
        and H.classes.count == 6
        and char_norm(plain) == 2
    )
    record(
        acceptance_log, 8, ok, f"case-1 group order {H.order}, classes {H.classes.count}, norm {char_norm(H)}; plain copy norm {char_norm(plain)}"
    )


def test_ac09_structural_sweep(reports, acceptance_log):
    bad = []
    for gid, rep in reports.items():
        if rep["errors"] or not (rep["irreducible"] and rep["transitive"] and rep["traces_integral"]):
            bad.append(gid)
        if gid.endswith("+neg"):
            base = reports[gid[:-4]]["clifford"]["direct_classes"]
            if rep["clifford"]["direct_classes"] != 2 * base:
                bad.append(f"{gid}:doubling")
    record(acceptance_log, 9, not bad, f"structural invariants on {len(reports)} groups" + (f" {bad}" if bad else ""))


def test_ac10_element_algebra(acceptance_log):
    rng = random.Random(10_000)
    failures = 0
    eye = np.eye(7, dtype=np.int64)
    for _ in range(10_000):
        a, b, h = random_element(rng), random_element(rng), random_element(rng)
        ma, mb = to_np(a), to_np(b)
        if not np.array_equal(to_np(compose(a, b)), ma @ mb):
            failures += 1
        if not np.array_equal(ma @ ma.T, eye):
            failures += 1
        if det(compose(a, b)) != det(a) * det(b):
            failures += 1
        if trace(compose(compose(h, a), inverse(h))) != trace(a):
            failures += 1
    record(acceptance_log, 10, failures == 0, f"10000 randomized element-algebra checks, {failures} failures")
