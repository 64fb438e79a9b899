"""The eight acceptance criteria, each run through its benchmark suite.

Every criterion prints one PASS/FAIL line (also echoed in the pytest
terminal summary) and asserts the exact check plus its runtime budget.
"""

import math
import time
from collections import Counter

import pytest

import conftest
from minorfree import bench


def run_suite(suite):
    start = time.perf_counter()
    records = bench.bench_run(suite, 1)
    return records, time.perf_counter() - start


def report(number, title, ok, elapsed, budget, detail):
    passed = ok and elapsed < budget
    line = f"criterion {number} {title}: {'PASS' if passed else 'FAIL'} ({detail}; {elapsed:.1f}s of {budget}s)"
    print(line)
    conftest.ACCEPTANCE_LINES.append(line)
    return passed


def failures(records):
    return [r for r in records if not r.ok]


def test_1_oracle_equivalence():
    records, el = run_suite("dp")
    bad = failures(records)
    instances = {r.instance for r in records}
    engines = Counter(r.algorithm for r in records)
    forced = sum(1 for r in records if r.params.get("forced"))
    ok = not bad and len(instances) >= 500 and set(engines) == {"wis", "wvc", "ds", "maxcut", "chromatic"}
    ok &= forced == 2 * len(instances)
    assert report(1, "oracle equivalence", ok, el, 120,
                  f"{len(instances)} instances, {len(records)} engine runs, {len(bad)} mismatches"), bad[:5]


def test_2_partition_soundness():
    records, el = run_suite("partition")
    bad = failures(records)
    grid = [r for r in records if r.width is not None]
    ok = not bad and grid and {r.params["t"] for r in records} == {2, 3, 4}
    assert report(2, "Baker partition soundness", ok, el, 60,
                  f"{len(records)} graph/t pairs, {len(grid)} width-checked, {len(bad)} failures"), bad[:5]


def test_3_ptas_bounds():
    records, el = run_suite("ptas")
    bad = failures(records)
    algs = Counter(r.algorithm for r in records)
    ok = not bad and set(algs) == {"ptas_is", "ptas_maxcut", "ptas_domset"}
    ok &= {r.params["t"] for r in records} == {3, 4}
    assert report(3, "PTAS bounds", ok, el, 180, f"{len(records)} runs, {len(bad)} bound violations"), bad[:5]


def test_4_two_approx_coloring():
    records, el = run_suite("coloring")
    bad = failures(records)
    ok = not bad and all(r.value <= 2 * r.oracle for r in records)
    assert report(4, "2-approximate colouring", ok, el, 120, f"{len(records)} graphs, {len(bad)} failures"), bad[:5]


def test_5_guess_and_conquer():
    records, el = run_suite("gnc")
    bad = failures(records)
    runs = [r for r in records if r.algorithm == "gnc_solve_vc"]
    kernels = [r for r in records if r.algorithm == "kernels"]
    regimes = {reg for r in runs for reg in r.params["regimes"]}
    ok = not bad and kernels and regimes == {"polynomial", "subexponential"}
    ok &= {r.params["beta"] for r in runs} == {0, 1, 8}
    ok &= {r.params["kernels"] for r in runs} >= {"buss", "nt"}
    assert report(5, "guess-and-conquer correctness", ok, el, 180,
                  f"{len(kernels)} graphs, {len(runs)} k-sweeps, {len(bad)} failures"), bad[:5]


def test_6_kernel_width_envelope():
    records, el = run_suite("width")
    bad = failures(records)
    worst = max(r.params["c"] for r in records)
    ok = not bad and max(r.params["k"] for r in records) == 50
    assert report(6, "subexponential width evidence", ok, el, 60,
                  f"{len(records)} kernels, max width/sqrt(n) = {worst:.3f} <= 4"), bad[:5]


def test_7_bipartite_layer():
    records, el = run_suite("hybrid")
    bad = failures(records)
    koenig = [r for r in records if r.instance.startswith("koenig-")]
    weighted = [r for r in records if r.algorithm == "bip_weighted_vc" and not r.instance.startswith("koenig-")]
    hybrid = [r for r in records if r.algorithm.startswith("hybrid_")]
    ok = not bad and len(koenig) == 200 and weighted and hybrid
    assert report(7, "bipartite and odd-minor layer", ok, el, 120,
                  f"{len(koenig)} Koenig, {len(weighted)} weighted, {len(hybrid)} hybrid, {len(bad)} failures"), \
        bad[:5]


def test_8_odd_k3_minor():
    records, el = run_suite("oddminor")
    bad = failures(records)
    both = Counter(r.oracle for r in records)
    ok = not bad and both[0] and both[1]
    assert report(8, "odd-K3-minor definitional check", ok, el, 120,
                  f"{len(records)} graphs ({both[1]} non-bipartite), {len(bad)} failures"), bad[:5]
