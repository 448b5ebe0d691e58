"""Acceptance suite: one test per numbered criterion, seeded end to end.

Every criterion runs a fixed population of generated instances and allows
zero mismatches. The conftest hook prints one "[criterion NN] ...: PASS/FAIL"
line per test after the run.
"""

import json
import subprocess
import sys

import numpy as np
import pytest

from protometrics import (
    GenSpec,
    LabeledMatrix,
    PreconditionError,
    SplitMix64,
    Status,
    auto_labels,
    check_prequadrangle,
    check_strict,
    check_transition,
    check_triangle,
    classify,
    diagonal_bounds,
    gen_metric,
    gen_protometric,
    gen_quasi_semi_metric,
    gen_zero_protometric,
    perturb_violation,
)
from protometrics.transforms import (
    add,
    affine_gauge,
    compose,
    decompose,
    farris_transform,
    gromov_product,
    log_transform,
    metrize,
    min_farris_constant,
    potential_of,
    specialization_preorder,
    transpose,
    zero_coordinates,
)

from oracles import preorder_structure

SIZES = (3, 5, 8)
TYPES = "oitc"


def seed_for(criterion, i):
    return (criterion << 32) | i


def size_for(i):
    return SIZES[i % 3]


def random_matrix(seed, n, scale=10.0):
    rng = SplitMix64(seed)
    rows = [[rng.signed() * scale for _ in range(n)] for _ in range(n)]
    return LabeledMatrix(auto_labels(n), rows)


def random_symmetric(seed, n, scale=10.0):
    rng = SplitMix64(seed)
    E = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            E[i][j] = E[j][i] = rng.signed() * scale
    return LabeledMatrix(auto_labels(n), E)


def verdict_sig(v):
    return (v.status, v.min_slack, v.count_checked, v.count_violations)


def test_criterion_01_symmetry_collapse():
    # on a symmetric matrix the four orientations are the same inequality
    bad = []
    for i in range(200):
        m = random_symmetric(seed_for(1, i), size_for(i))
        tri = {verdict_sig(check_triangle(m, ty)) for ty in TYPES}
        pre = {verdict_sig(check_prequadrangle(m, ty)) for ty in TYPES}
        if len(tri) != 1 or len(pre) != 1:
            bad.append(i)
    assert bad == []


def test_criterion_02_transpose_duality():
    # transposing swaps o and i and fixes t and c, for both families
    bad = []
    for i in range(200):
        n = size_for(i)
        if i % 2:
            m = random_matrix(seed_for(2, i), n)
        else:
            m = gen_protometric(GenSpec(n=n, seed=seed_for(2, i)), ty=TYPES[i % 4])
        mt = transpose(m)
        for check in (check_triangle, check_prequadrangle):
            ok = (
                verdict_sig(check(mt, "i")) == verdict_sig(check(m, "o"))
                and verdict_sig(check(mt, "o")) == verdict_sig(check(m, "i"))
                and verdict_sig(check(mt, "t")) == verdict_sig(check(m, "t"))
                and verdict_sig(check(mt, "c")) == verdict_sig(check(m, "c"))
            )
            if not ok:
                bad.append((i, check.__name__))
    assert bad == []


def test_criterion_03_diagonal_bounds():
    # any matrix passing triangle ty keeps its diagonal inside the ty interval
    bad = []
    for ty in TYPES:
        for i in range(200):
            n = size_for(i)
            p = gen_protometric(GenSpec(n=n, seed=seed_for(3, i)), ty=ty)
            gauge = {l: -0.5 * p.entry(l, l) for l in p.labels}
            d = affine_gauge(p, 1.0, gauge)
            shift = SplitMix64(seed_for(3, 1000 + i)).unit() * 5.0
            if i % 2:
                d = add(d, LabeledMatrix(d.labels, np.full((n, n), shift)))
            if check_triangle(d, ty).status is not Status.PASS:
                bad.append((ty, i, "hypothesis"))
                continue
            if not all(member for _, _, member in diagonal_bounds(d, ty)):
                bad.append((ty, i, "interval"))
            E = d.entries
            if ty in "tc" and np.min(np.diagonal(E)) < -1e-9:
                bad.append((ty, i, "diag sign"))
            if ty in "oi" and np.min(E) < -1e-9:
                bad.append((ty, i, "entry sign"))
    assert bad == []


def test_criterion_04_metric_recognition():
    # zero diagonal + positive off-diagonal + any one of o/i/c forces a metric
    bad = []
    for i in range(200):
        n = size_for(i)
        if i % 2:
            d = gen_metric(GenSpec(n=n, seed=seed_for(4, i)))
        else:
            p = gen_protometric(GenSpec(n=n, seed=seed_for(4, i)), ty="t", strict=True)
            d = metrize(p, 1.0)
        E = d.entries
        off = ~np.eye(n, dtype=bool)
        hypotheses = (
            np.all(np.diagonal(E) == 0.0)
            and np.all(E[off] > 0.0)
            and check_triangle(d, TYPES[i % 3]).status is Status.PASS
        )
        if not (hypotheses and classify(d).metric):
            bad.append(i)
    assert bad == []


def test_criterion_05_protometric_facts():
    # symmetry for o/i/c, the pair lower bounds, and closure under + and T
    bad = []
    for ty in TYPES:
        for i in range(200):
            n = size_for(i)
            p = gen_protometric(GenSpec(n=n, seed=seed_for(5, i)), ty=ty)
            q = gen_protometric(GenSpec(n=n, seed=seed_for(5, 1000 + i)), ty=ty)
            E, diag = p.entries, np.diagonal(p.entries)
            pair_floor = 0.5 * (diag[:, None] + diag[None, :])
            if ty in "oic":
                if np.max(np.abs(E - E.T)) > 1e-9:
                    bad.append((ty, i, "symmetry"))
                if np.min(E - pair_floor) < -1e-9:
                    bad.append((ty, i, "pair bound"))
            if np.min((E + E.T) - 2.0 * pair_floor) < -1e-9:
                bad.append((ty, i, "pair sum"))
            for derived in (add(p, q), transpose(p)):
                if check_prequadrangle(derived, "t").status is not Status.PASS:
                    bad.append((ty, i, "closure"))
            dual = {"o": "i", "i": "o", "t": "t", "c": "c"}[ty]
            if check_prequadrangle(transpose(p), dual).status is not Status.PASS:
                bad.append((ty, i, "transpose type"))
    assert bad == []


def test_criterion_06_gauge_invariance():
    # alpha p + f(x) + f(y) keeps every pre-quadrangle verdict; the
    # zero-diagonal gauge turns them into plain triangle verdicts
    bad = []
    for i in range(400):
        ty = TYPES[i % 4]
        n = size_for(i)
        p = gen_protometric(GenSpec(n=n, seed=seed_for(6, i)), ty=ty)
        if i >= 200:
            p = perturb_violation(p, ty, 1.0)
        rng = SplitMix64(seed_for(6, 10_000 + i))
        alpha = 2.0 ** (int(rng.next_u64() % 8) - 4)
        f = {l: rng.signed() * 4.0 for l in p.labels}
        g = affine_gauge(p, alpha, f)
        before = tuple(check_prequadrangle(p, t).status for t in TYPES)
        after = tuple(check_prequadrangle(g, t).status for t in TYPES)
        if before != after:
            bad.append((i, "flag vector"))
        zero_gauge = {l: -(alpha / 2.0) * p.entry(l, l) for l in p.labels}
        g0 = affine_gauge(p, alpha, zero_gauge)
        if np.any(np.diagonal(g0.entries) != 0.0):
            bad.append((i, "diagonal"))
        if tuple(check_triangle(g0, t).status for t in TYPES) != before:
            bad.append((i, "triangle vs prequad"))
    assert bad == []


def test_criterion_07_metrization():
    # metrize is symmetric, nonnegative, zero-diagonal, triangular; strict
    # inputs come out as metrics
    bad = []
    for i in range(400):
        ty = TYPES[i % 4]
        n = size_for(i)
        strict = i >= 200
        p = gen_protometric(GenSpec(n=n, seed=seed_for(7, i)), ty=ty, strict=strict)
        d = metrize(p, 0.5 if i % 2 else 1.0)
        E = d.entries
        ok = (
            np.array_equal(E, E.T)
            and np.min(E) >= 0.0
            and np.all(np.diagonal(E) == 0.0)
            and check_triangle(d, "t").status is Status.PASS
        )
        if strict:
            ok = ok and classify(d).metric
        if not ok:
            bad.append(i)
    assert bad == []


def test_criterion_08_bijection():
    # compose and decompose are mutually inverse, bit for bit
    bad = []
    for i in range(200):
        ty = TYPES[i % 4]
        n = size_for(i)
        p = gen_protometric(GenSpec(n=n, seed=seed_for(8, i)), ty=ty)
        dec = decompose(p)
        back = compose(dec.d, dec.f)
        if not (back.labels == p.labels and np.array_equal(back.entries, p.entries)):
            bad.append((i, "compose after decompose"))
        if ty in "oic":
            # symmetric case: d is a semi-metric and p = (d + p(x,x) + p(y,y)) / 2
            if not classify(dec.d).semi_metric:
                bad.append((i, "semi-metric"))
            diag = np.diagonal(p.entries)
            rep = 0.5 * (dec.d.entries + diag[:, None] + diag[None, :])
            if np.max(np.abs(rep - p.entries)) > 1e-12:
                bad.append((i, "symmetric representation"))
    for i in range(200):
        n = size_for(i)
        d = gen_quasi_semi_metric(GenSpec(n=n, seed=seed_for(8, 1000 + i)))
        rng = SplitMix64(seed_for(8, 2000 + i))
        f = {l: rng.signed() * 5.0 for l in d.labels}
        dec = decompose(compose(d, f))
        if not (np.array_equal(dec.d.entries, d.entries) and dec.f == f):
            bad.append((i, "decompose after compose"))
    assert bad == []


def test_criterion_09_zero_protometrics_and_potentials():
    bad = []
    for i in range(200):
        n = size_for(i)
        z = gen_zero_protometric(GenSpec(n=n, seed=seed_for(9, i)))
        coords = zero_coordinates(z)
        a = np.array([coords.a[l] for l in z.labels])
        b = np.array([coords.b[l] for l in z.labels])
        if np.max(np.abs((a[:, None] + b[None, :]) - z.entries)) > 1e-9:
            bad.append((i, "coordinates"))
        if np.any(metrize(z, 1.0).entries != 0.0):
            bad.append((i, "metrize zero"))
    for i in range(200):
        n = size_for(i)
        rng = SplitMix64(seed_for(9, 1000 + i))
        h = np.array([rng.signed() * 5.0 for _ in range(n)])
        m = LabeledMatrix(auto_labels(n), h[:, None] - h[None, :])
        got = potential_of(m)
        want = h - h[0]  # gauge: h vanishes at the first label
        if np.max(np.abs(np.array([got[l] for l in m.labels]) - want)) > 1e-9:
            bad.append((i, "potential"))
    for i in range(200):
        d = gen_metric(GenSpec(n=size_for(i), seed=seed_for(9, 2000 + i)))
        try:
            zero_coordinates(d)
            bad.append((i, "metric accepted"))
        except PreconditionError:
            pass
    assert bad == []


def test_criterion_10_similarity_pipeline():
    bad = []
    for i in range(200):
        n = size_for(i)
        d = gen_metric(GenSpec(n=n, seed=seed_for(10, i)))
        x0 = d.labels[i % n]
        G = gromov_product(d, x0)
        neg = LabeledMatrix(d.labels, -G.entries)
        if np.max(neg.entries) > 1e-9:
            bad.append((i, "sign"))
        if any(check_prequadrangle(neg, ty).status is not Status.PASS for ty in TYPES):
            bad.append((i, "prequadrangle"))
        c_min = min_farris_constant(d, x0)
        at_min = farris_transform(d, x0, c_min)
        if check_triangle(at_min, "o").status is not Status.PASS:
            bad.append((i, "farris triangle"))
        if np.min(at_min.entries) < -1e-9:
            bad.append((i, "farris sign"))
        below = farris_transform(d, x0, c_min - 1e-8)
        if check_triangle(below, "o").status is not Status.FAIL:
            bad.append((i, "farris minimality"))
    for i in range(200):
        n = size_for(i)
        p = gen_protometric(GenSpec(n=n, seed=seed_for(10, 1000 + i), scale=1.0), ty="t")
        expected = Status.PASS
        if i >= 100:
            p = perturb_violation(p, "t", 2.0)
            expected = Status.FAIL
        s = LabeledMatrix(p.labels, np.exp(-p.entries))
        trans = check_transition(s).status
        quad = check_prequadrangle(log_transform(s), "t").status
        if not (trans is quad is expected):
            bad.append((i, "transition"))
    assert bad == []


def test_criterion_11_preorder():
    bad = []
    for i in range(200):
        n = size_for(i)
        rng = SplitMix64(seed_for(11, 1000 + i))
        if i % 4 == 0:
            d = gen_quasi_semi_metric(GenSpec(n=n, seed=seed_for(11, i)))
        elif i % 4 in (1, 2):
            # duplicate points: pull back a smaller instance along a surjection
            m = max(2, n // 2)
            base = gen_quasi_semi_metric(GenSpec(n=m, seed=seed_for(11, i)))
            onto = list(range(m)) + [int(rng.next_u64() % m) for _ in range(n - m)]
            E = base.entries[np.ix_(onto, onto)]
            d = LabeledMatrix(auto_labels(n), E)
        else:
            # total preorder with ties: d(x,y) = max(h(y) - h(x), 0)
            h = np.array([(rng.next_u64() % 4) * 0.5 for _ in range(n)])
            d = LabeledMatrix(auto_labels(n), np.maximum(h[None, :] - h[:, None], 0.0))
        got = specialization_preorder(d)
        rel = set(got.relation)
        if any((l, l) not in rel for l in d.labels):
            bad.append((i, "reflexive"))
        if any(
            (a, c) not in rel for a, b in rel for b2, c in rel if b == b2
        ):
            bad.append((i, "transitive"))
        pairs, defects, classes, order = preorder_structure(d.entries.tolist())
        if defects:
            bad.append((i, "oracle defects"))
        name = d.labels
        if got.relation != tuple((name[x], name[y]) for x, y in pairs):
            bad.append((i, "relation"))
        if got.classes != tuple(tuple(name[m] for m in c) for c in classes):
            bad.append((i, "classes"))
        if got.quotient_order != tuple((name[x], name[y]) for x, y in order):
            bad.append((i, "order"))
    assert bad == []


PATH_CSV = "0,1,2\n1,0,1\n2,1,0\n"
HDIFF_CSV = "0,-1,-3\n1,0,-2\n3,2,0\n"
PROTO_CSV = "1,3\n3,2\n"
COLLINEAR_CSV = ",a,b,c\na,0,1,3\nb,1,0,2\nc,3,2,0\n"


def run_cli(args, stdin=None):
    return subprocess.run(
        [sys.executable, "-m", "protometrics", *args],
        input=stdin,
        capture_output=True,
        text=True,
        timeout=60,
    )


def test_criterion_12_cli_contract():
    first = run_cli(["generate", "metric", "--n", "6", "--seed", "11"])
    again = run_cli(["generate", "metric", "--n", "6", "--seed", "11"])
    assert first.returncode == 0
    assert first.stdout == again.stdout

    r = run_cli(["classify"], stdin=PATH_CSV)
    assert r.returncode == 0
    assert json.loads(r.stdout)["flags"]["metric"] is True

    r = run_cli(["check", "prequad:t"], stdin=HDIFF_CSV)
    assert r.returncode == 0
    r = run_cli(["check", "triangle:o"], stdin=HDIFF_CSV)
    assert r.returncode == 1
    assert r.stdout.startswith("triangle:o: FAIL")

    r = run_cli(["transform", "metrize"], stdin=PROTO_CSV)
    assert r.returncode == 0
    assert r.stdout == ",x1,x2\nx1,0.0,3.0\nx2,3.0,0.0\n"
    r = run_cli(["transform", "minfarris", "--base-label", "a"], stdin=COLLINEAR_CSV)
    assert r.returncode == 0
    assert r.stdout == "3.0\n"

    r = run_cli(["check", "bogus"], stdin=PATH_CSV)
    assert r.returncode == 2
    assert r.stderr.startswith("error:")
    assert r.stdout == ""
