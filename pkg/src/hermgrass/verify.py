"""Executable invariant suites behind `hermgrass verify`.

Every check either returns a short detail string or raises AssertionError;
the runner times each one and reports per-check pass/fail.  Randomized
checks draw from a seeded generator so two runs produce identical reports
apart from the timing fields.
"""

from __future__ import annotations

import random
import tempfile
import time

import numpy as np

from . import analysis as an
from . import linalg
from . import minors as mn
from .codebuild import (
    FAMILY_AFFINE,
    FAMILY_HERMITIAN,
    build_generator,
    congruence_permutation,
    fq_basis,
    q_invariance_check,
    read_generator,
    translate_permutation,
    transpose_permutation,
    write_generator,
)
from .galois import SUPPORTED_Q, tower_for_q
from .hermitian import (
    HermitianIndexing,
    count_invertible,
    count_invertible_bruteforce,
    is_hermitian,
    mat_rank,
)

HERMITIAN_DESK = [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3)]
CERTIFIED_PAIRS = [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2)]


def check_field_axioms(seed):
    for q in sorted(SUPPORTED_Q):
        t = tower_for_q(q)
        n = t.qq
        a = np.arange(n).reshape(n, 1, 1)
        b = np.arange(n).reshape(1, n, 1)
        c = np.arange(n).reshape(1, 1, n)
        add, mul = t.add_np, t.mul_np
        assert np.array_equal(add[add[a, b], c], add[a, add[b, c]]), f"add assoc q={q}"
        assert np.array_equal(mul[mul[a, b], c], mul[a, mul[b, c]]), f"mul assoc q={q}"
        assert np.array_equal(mul[a, add[b, c]], add[mul[a, b], mul[a, c]]), f"distrib q={q}"
        aa = np.arange(n)
        assert np.array_equal(add[aa, t.neg_np[aa]], np.zeros(n, dtype=np.uint8))
        for x in range(1, n):
            assert t.mul(x, t.inv(x)) == 1
    return f"axioms exhaustive for q in {sorted(SUPPORTED_Q)}"


def check_subfield_structure(seed):
    for q in sorted(SUPPORTED_Q):
        t = tower_for_q(q)
        assert len(t.subfield) == q
        for x in range(t.qq):
            assert (t.conjugate(x) == x) == t.in_base_subfield(x)
            assert t.conjugate(t.conjugate(x)) == x
    return "subfield = Frobenius fixed points, conjugation involutive"


def check_trace_norm_fibers(seed):
    for q in sorted(SUPPORTED_Q):
        t = tower_for_q(q)
        traces = [t.trace(x) for x in range(t.qq)]
        norms = [t.norm(x) for x in range(t.qq)]
        for c in t.subfield:
            assert traces.count(c) == q, f"trace fiber at q={q}"
            if c:
                assert norms.count(c) == q + 1, f"norm fiber at q={q}"
    return "trace fibers q, nonzero norm fibers q+1, all towers"


def check_enumeration_bijectivity(seed):
    pairs = []
    for ell in (1, 2, 3, 4):
        for q in sorted(SUPPORTED_Q):
            if q ** (ell * ell) <= 10**7 and ell <= 4:
                pairs.append((ell, q))
    checked = 0
    for ell, q in pairs:
        t = tower_for_q(q)
        indexing = HermitianIndexing(t, ell)
        for i in range(indexing.total):
            H = indexing.index_to_matrix(i)
            assert is_hermitian(t, H)
            assert indexing.matrix_to_index(H) == i
        checked += indexing.total
    return f"{checked} round trips over {len(pairs)} (ell, q) pairs"


def check_invertible_counts(seed):
    cases = [(1, q) for q in sorted(SUPPORTED_Q)] + [(2, q) for q in (2, 3, 4, 5)] + [(3, 2), (3, 3)]
    for ell, q in cases:
        t = tower_for_q(q)
        formula = count_invertible(ell, q)
        brute = count_invertible_bruteforce(t, ell)
        assert formula == brute, f"(ell={ell}, q={q}): formula {formula} != brute {brute}"
    return f"formula = brute force on {len(cases)} cases, incl. 10 at (2,2) and 280 at (3,2)"


def check_hyperbolic_counts(seed):
    total = 0
    for q in sorted(SUPPORTED_Q):
        t = tower_for_q(q)
        for a in t.subfield:
            for b in t.subfield:
                for lam in t.subfield:
                    an.hyperbolic_zero_count(t, a, b, lam)
                    total += 1
    return f"{total} (a, b, lam) triples, formula = brute force"


def check_system_solutions(seed):
    rng = random.Random(seed)
    total = 0
    for n in (1, 2, 3):
        for q in (2, 3, 4):
            t = tower_for_q(q)
            for i in range(100):
                a, b = an.random_system(t, n, rng, consistent=(i % 2 == 0))
                count = an.system_solution_count(t, a, b)
                if i % 2 == 0:
                    assert count >= 1, "consistent system lost its solution"
                total += 1
    return f"{total} systems, all within the q+1 bound"


def check_two_weight_classifier(seed):
    reports = [an.classify_weights_l2(q) for q in (2, 3)]
    for r in reports:
        assert r["resolved_predicate"] in ("plus_f0", "both"), r
    resolved = {r["q"]: r["resolved_predicate"] for r in reports}
    return f"two weights exact at q=2,3; resolved predicate: {resolved}"


def check_l3_reduced_family(seed):
    r = an.verify_l3_bounds(2)
    return (
        f"16 members >= {r['bound']}; weight(det) = {r['weight_det']} "
        f"(product form {r['weight_det_product_form']}, alt expansion "
        f"{r['weight_det_alt_expansion']} matches: {r['weight_det_matches_alt_expansion']}); "
        f"weight(det+c) = {r['weight_det_plus_const']}"
    )


def check_min_weight_strata(seed):
    r22 = an.min_weight_by_max_minor(2, 2, 2)
    assert r22["min_weight"] == 6
    r21 = an.min_weight_by_max_minor(2, 1, 2)
    assert r21["min_weight"] >= 2**4 - 2**3
    r20 = an.min_weight_by_max_minor(2, 0, 2)
    assert r20["min_weight"] == 16
    r23 = an.min_weight_by_max_minor(2, 2, 3)
    assert r23["min_weight"] == 51
    r33 = an.min_weight_by_max_minor(3, 3, 2, samples=25, seed=seed)
    return (
        f"minima: (2,2,q=2)={r22['min_weight']}, (2,1,q=2)={r21['min_weight']}, "
        f"(2,0,q=2)={r20['min_weight']}, (2,2,q=3)={r23['min_weight']}, "
        f"(3,3,q=2) sampled={r33['min_weight']} >= {r33['bound']}"
    )


def check_translation_clearing(seed):
    g22 = build_generator(FAMILY_HERMITIAN, 2, 2)
    assert an.verify_translation_clearing(g22, {((1, 2), (1, 2)): 1}, (1, 2))
    f = {((1, 2), (1, 2)): 1, ((1,), (1,)): 1, ((2,), (2,)): 1}
    assert an.verify_translation_clearing(g22, f, (1, 2))
    g32 = build_generator(FAMILY_HERMITIAN, 3, 2)
    tower = g32.tower
    rng = random.Random(seed)
    full = ((1, 2, 3), (1, 2, 3))
    cleared = 0
    for _ in range(50):
        f = mn.random_combination(tower, 3, rng, self_conjugate=True)
        if not f.get(full, 0):
            f[full] = 1
        assert an.verify_translation_clearing(g32, f, (1, 2, 3))
        cleared += 1
    return f"2 fixed cases and {cleared} random self-conjugate functions cleared"


def check_spread_reduction(seed):
    g32 = build_generator(FAMILY_HERMITIAN, 3, 2)
    f = {((1, 2), (2, 3)): 1}
    f2, info = an.spread_reduction_step(g32, f)
    assert info["new_minor"] == ((1, 2), (1, 2))
    w0 = an.weight(g32.encode(f))
    w1 = an.weight(g32.encode(f2))
    assert w0 == w1, f"weight changed: {w0} -> {w1}"
    f3 = {((1, 3), (2, 3)): 1, ((), ()): 1}
    f4, info2 = an.spread_reduction_step(g32, f3)
    assert an.weight(g32.encode(f3)) == an.weight(g32.encode(f4))
    assert any(len(m[0]) == info2["size"] and mn.spread(m) <= info2["spread"] - 1
               for m in mn.support(f4))
    return f"size-2 spread-3 minors reduced to spread 2 at equal weight ({w0})"


def check_dual_distances(seed):
    expected = {(2, 2): 4, (2, 3): 3, (2, 4): 3, (2, 5): 3, (3, 2): 4}
    got = {}
    for (ell, q), want in expected.items():
        gen = build_generator(FAMILY_HERMITIAN, ell, q)
        cert = an.dual_min_distance(gen)
        assert cert.d_dual == want, f"(ell={ell}, q={q}): d_dual {cert.d_dual} != {want}"
        assert cert.exhausted_below == cert.d_dual
        got[(ell, q)] = cert.d_dual
    return f"dual distances {got}"


def check_dual_support_families(seed):
    counts = {}
    for ell, q in ((2, 2), (2, 3), (3, 2)):
        gen = build_generator(FAMILY_HERMITIAN, ell, q)
        words = an.dual_support_families(gen, count=50, seed=seed)
        counts[(ell, q)] = len(words)
    return f"orthogonality-verified families: {counts}"


def check_generator_dimensions(seed):
    dims = {}
    for ell, q in HERMITIAN_DESK:
        gen = build_generator(FAMILY_HERMITIAN, ell, q)
        assert gen.rank == gen.spec.k
        dims[(ell, q)] = gen.rank
    return f"ranks equal binom(2 ell, ell): {dims}"


def check_q_invariance(seed):
    for ell, q in ((2, 2), (2, 3), (3, 2)):
        gen = build_generator(FAMILY_HERMITIAN, ell, q)
        assert q_invariance_check(gen), f"(ell={ell}, q={q})"
    return "conjugated generator rows are codewords at (2,2), (2,3), (3,2)"


def check_automorphism_membership(seed):
    rng = random.Random(seed)
    checked = 0
    for ell, q in ((2, 2), (2, 3), (3, 2)):
        gen = build_generator(FAMILY_HERMITIAN, ell, q)
        tower = gen.tower
        indexing = HermitianIndexing(tower, ell)
        perms = [transpose_permutation(tower, ell)]
        while True:
            A = tuple(tuple(rng.randrange(tower.qq) for _ in range(ell)) for _ in range(ell))
            if mat_rank(tower, A) == ell:
                break
        perms.append(congruence_permutation(tower, ell, A))
        M = indexing.index_to_matrix(rng.randrange(indexing.total))
        perms.append(translate_permutation(tower, ell, M))
        for perm in perms:
            assert sorted(perm) == list(range(indexing.total)), "not a permutation"
            for _ in range(5):
                f = mn.random_combination(tower, ell, rng)
                c = np.asarray(gen.encode(f))
                image = c[perm]
                assert gen.membership(image)
                assert an.weight(image) == an.weight(c)
                checked += 1
    return f"{checked} permuted codewords pass membership at equal weight"


def check_conjugate_minor_identity(seed):
    rng = random.Random(seed)
    for ell in (2, 3):
        t2 = tower_for_q(2)
        indexing = HermitianIndexing(t2, ell)
        for H in indexing:
            for minor in mn.basis(ell):
                I, J = minor
                lhs = mn.eval_minor(t2, (J, I), H)
                rhs = t2.conjugate(mn.eval_minor(t2, (I, J), H))
                assert lhs == rhs
    t3 = tower_for_q(3)
    indexing = HermitianIndexing(t3, 2)
    for _ in range(500):
        H = indexing.index_to_matrix(rng.randrange(indexing.total))
        for minor in mn.basis(2):
            I, J = minor
            assert mn.eval_minor(t3, (J, I), H) == t3.conjugate(mn.eval_minor(t3, (I, J), H))
    return "det_JI = det_IJ^q exhaustive at q=2 (ell<=3), sampled at q=3"


def check_interpolation_round_trip(seed):
    rng = random.Random(seed)
    total = 0
    for ell, q in HERMITIAN_DESK:
        gen = build_generator(FAMILY_HERMITIAN, ell, q)
        for _ in range(200):
            f = mn.random_combination(gen.tower, ell, rng)
            assert gen.interpolate(gen.encode(f)) == f
            total += 1
    return f"{total} random combinations recovered exactly"


def check_distance_certifications(seed):
    details = []
    for ell, q in CERTIFIED_PAIRS:
        gen = build_generator(FAMILY_HERMITIAN, ell, q)
        cert = an.min_distance_subfield(gen)
        formula = an.distance_hermitian_formula(ell, q)
        assert cert.d == formula, f"H (ell={ell}, q={q}): {cert.d} != {formula}"
        details.append(f"H({ell},{q})={cert.d}")
    for ell, q in ((2, 2), (2, 3)):
        gen = build_generator(FAMILY_HERMITIAN, ell, q)
        cert = an.min_distance_exhaustive(gen)
        assert cert.d == an.distance_hermitian_formula(ell, q)
    for ell, q in [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2)]:
        gen = build_generator(FAMILY_AFFINE, ell, q)
        cert = an.min_distance_exhaustive(gen)
        formula = an.distance_affine_formula(ell, q)
        assert cert.d == formula, f"A (ell={ell}, q={q}): {cert.d} != {formula}"
        details.append(f"A({ell},{q})={cert.d}")
    w = an.weight_of_function(an.hermitian_witness(3), 3, 2)
    assert w == 192
    return "; ".join(details) + "; witness weight at (3,2) = 192"


def check_fq_basis_structure(seed):
    for ell, q in ((2, 2), (2, 3), (3, 2)):
        gen = build_generator(FAMILY_HERMITIAN, ell, q)
        tower = gen.tower
        combos = fq_basis(ell, q)
        rows = np.stack([gen.encode(f) for f in combos])
        assert all(tower.in_base_subfield(int(v)) for v in np.unique(rows))
        assert linalg.rank(tower, rows) == gen.spec.k
        R, pivots, _ = linalg.rref(tower, rows)
        for row in gen.rows:
            assert linalg.solve_in_row_space(tower, R, pivots, row) is not None
    return "F_q-valued, full F_q-rank, spans the minor row space"


def check_file_round_trip(seed):
    import os

    for ell, q in ((2, 2), (3, 2)):
        gen = build_generator(FAMILY_HERMITIAN, ell, q)
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "gen.txt")
            write_generator(gen, path)
            back = read_generator(path)
            assert back.header() == gen.header()
            assert np.array_equal(back.rows, gen.rows)
            assert back.rank == gen.spec.k
    return "write/read identical at (2,2) and (3,2), rank re-verified"


SUITES = {
    "fields": [
        ("field_axioms", check_field_axioms),
        ("subfield_structure", check_subfield_structure),
        ("trace_norm_fibers", check_trace_norm_fibers),
    ],
    "counts": [
        ("enumeration_bijectivity", check_enumeration_bijectivity),
        ("invertible_counts", check_invertible_counts),
        ("hyperbolic_zero_counts", check_hyperbolic_counts),
        ("system_solution_counts", check_system_solutions),
    ],
    "classifiers": [
        ("two_weight_classifier", check_two_weight_classifier),
        ("l3_reduced_family", check_l3_reduced_family),
        ("min_weight_strata", check_min_weight_strata),
        ("translation_clearing", check_translation_clearing),
        ("spread_reduction", check_spread_reduction),
    ],
    "duals": [
        ("dual_distances", check_dual_distances),
        ("dual_support_families", check_dual_support_families),
    ],
}

CODE_CHECKS = [
    ("generator_dimensions", check_generator_dimensions),
    ("q_invariance", check_q_invariance),
    ("automorphism_membership", check_automorphism_membership),
    ("conjugate_minor_identity", check_conjugate_minor_identity),
    ("interpolation_round_trip", check_interpolation_round_trip),
    ("distance_certifications", check_distance_certifications),
    ("fq_basis_structure", check_fq_basis_structure),
    ("file_round_trip", check_file_round_trip),
]


def checks_for(suite: str):
    if suite == "all":
        out = []
        for name in ("fields", "counts", "classifiers", "duals"):
            out.extend(SUITES[name])
        out.extend(CODE_CHECKS)
        return out
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    return SUITES[suite]


def run_suite(suite: str, seed: int, emit=print):
    """Run every check in the suite; returns the list of result records."""
    results = []
    for name, fn in checks_for(suite):
        start = time.perf_counter()
        try:
            detail = fn(seed)
            ok = True
        except AssertionError as exc:
            detail = str(exc) or "assertion failed"
            ok = False
        elapsed = time.perf_counter() - start
        results.append({"check": name, "ok": ok, "detail": detail, "seconds": round(elapsed, 3)})
        status = "ok  " if ok else "FAIL"
        emit(f"{status} {name}: {detail} ({elapsed:.2f}s)")
    return results
