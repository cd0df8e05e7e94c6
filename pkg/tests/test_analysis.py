import itertools
import random

import pytest

from hermgrass import analysis as an
from hermgrass import linalg
from hermgrass import minors as mn
from hermgrass.codebuild import (
    FAMILY_AFFINE,
    FAMILY_HERMITIAN,
    build_generator,
    fq_basis,
    generator_affine_grassmann,
    generator_hermitian,
)
from hermgrass.errors import BudgetExceeded, NoneFoundWithinBound
from hermgrass.galois import tower_for_q
from hermgrass.hermitian import HermitianIndexing, count_invertible, unit_matrix, zero_matrix


def test_weight_and_distance():
    assert an.distance([1, 0, 1, 0], [1, 1, 0, 0]) == 2
    assert an.weight([0, 0, 0]) == 0
    assert an.weight([0, 2, 3]) == 2
    with pytest.raises(ValueError):
        an.distance([0, 1], [0, 1, 2])


def test_weight_of_function_values():
    det_plus_one = {((1, 2), (1, 2)): 1, ((), ()): 1}
    assert an.weight_of_function(det_plus_one, 3, 2) == 192
    assert an.weight_of_function(det_plus_one, 2, 3) == 51
    assert an.weight_of_function({}, 2, 2) == 0
    assert an.weight_of_function(det_plus_one, 2, 2) == 6
    with pytest.raises(BudgetExceeded):
        an.weight_of_function(det_plus_one, 3, 7)


def test_weight_of_function_matches_encoding():
    rng = random.Random(3)
    for ell, q in [(2, 3), (3, 2)]:
        gen = generator_hermitian(ell, q)
        for _ in range(10):
            f = mn.random_combination(gen.tower, ell, rng)
            assert an.weight_of_function(f, ell, q) == an.weight(gen.encode(f))


def test_engine_matches_independent_enumeration():
    # the Gray-walk engine agrees with brute-force re-encoding of every
    # message, on both a binary-path case and a general-radix case
    gen = generator_hermitian(2, 2)
    t = gen.tower
    combos = fq_basis(2, 2)
    rows = [gen.encode(f) for f in combos]
    brute = min(
        an.weight(linalg.combine(t, rows, msg))
        for msg in itertools.product(t.subfield, repeat=6)
        if any(msg)
    )
    cert = an.min_distance_subfield(gen)
    assert cert.d == brute == 6

    full = min(
        an.weight(linalg.combine(t, list(gen.rows), msg))
        for msg in itertools.product(range(t.qq), repeat=6)
        if any(msg)
    )
    assert an.min_distance_exhaustive(gen).d == full == 6

    g23 = generator_hermitian(2, 3)
    combos = fq_basis(2, 3)
    rows = [g23.encode(f) for f in combos]
    brute = min(
        an.weight(linalg.combine(g23.tower, rows, msg))
        for msg in itertools.product(g23.tower.subfield, repeat=6)
        if any(msg)
    )
    assert an.min_distance_subfield(g23).d == brute == 51


def test_min_distance_exhaustive():
    cert = an.min_distance_exhaustive(generator_hermitian(2, 2))
    assert cert.d == 6
    assert cert.method == "ExhaustiveFull"
    assert cert.messages_searched == 4**6 - 1
    assert an.weight(generator_hermitian(2, 2).encode(cert.witness)) == 6

    cert_a = an.min_distance_exhaustive(generator_affine_grassmann(2, 2))
    assert cert_a.d == 6
    assert cert_a.messages_searched == 2**6 - 1

    assert an.min_distance_exhaustive(generator_hermitian(1, 2)).d == 1

    with pytest.raises(BudgetExceeded):
        an.min_distance_exhaustive(generator_hermitian(3, 2))


def test_min_distance_subfield():
    expected = {2: 6, 3: 51, 4: 188, 5: 495}
    for q, d in expected.items():
        gen = generator_hermitian(2, q)
        cert = an.min_distance_subfield(gen)
        assert cert.d == d
        assert cert.method == "ExhaustiveSubfield"
        assert cert.messages_searched == q**6 - 1
        assert an.weight(gen.encode(cert.witness)) == d


def test_min_distance_subfield_explicit_basis():
    gen = generator_hermitian(2, 3)
    cert = an.min_distance_subfield(gen, basis=fq_basis(2, 3))
    assert cert.d == 51


def test_min_distance_subfield_l3():
    gen = generator_hermitian(3, 2)
    cert = an.min_distance_subfield(gen)
    assert cert.d == 192
    assert cert.messages_searched == 2**20 - 1
    assert an.weight(gen.encode(cert.witness)) == 192


def test_min_distance_subfield_budget_and_family():
    with pytest.raises(BudgetExceeded):
        an.min_distance_subfield(generator_hermitian(3, 3))
    with pytest.raises(ValueError):
        an.min_distance_subfield(generator_affine_grassmann(2, 2))


def test_min_distance_threads_match():
    gen = generator_hermitian(2, 3)
    one = an.min_distance_subfield(gen, threads=1)
    two = an.min_distance_subfield(gen, threads=2)
    assert one.d == two.d
    assert one.witness == two.witness


def test_min_distance_formula():
    cert = an.min_distance_formula(FAMILY_HERMITIAN, 3, 3)
    assert cert.d == 12393
    assert cert.method == "WitnessOnly"
    cert = an.min_distance_formula(FAMILY_HERMITIAN, 3, 7)
    assert cert.d == 34471157
    assert cert.method == "Formula"
    cert = an.min_distance_formula(FAMILY_AFFINE, 3, 2)
    assert cert.d == 168
    assert cert.method == "WitnessOnly"
    assert an.distance_hermitian_formula(1, 2) is None


def _recheck_dual(gen, cert):
    t = gen.tower
    for row in gen.rows:
        acc = 0
        for pos, c in zip(cert.columns, cert.coefficients):
            acc = t.add(acc, t.mul(c, int(row[pos])))
        assert acc == 0


def test_dual_min_distance_q3():
    gen = generator_hermitian(2, 3)
    cert = an.dual_min_distance(gen)
    assert cert.d_dual == 3
    assert cert.columns == (0, 1, 2)
    assert cert.coefficients == (1, 1, 1)
    assert cert.exhausted_below == 3
    _recheck_dual(gen, cert)
    # the support is {0, E11, 2 E11}
    idx = HermitianIndexing(gen.tower, 2)
    assert idx.index_to_matrix(1) == unit_matrix(2, 0, 0)
    assert idx.index_to_matrix(2) == unit_matrix(2, 0, 0, value=2)


def test_dual_min_distance_q2():
    gen = generator_hermitian(2, 2)
    cert = an.dual_min_distance(gen)
    assert cert.d_dual == 4
    assert cert.columns == (0, 1, 4, 5)
    assert cert.coefficients == (1, 1, 1, 1)
    _recheck_dual(gen, cert)
    idx = HermitianIndexing(gen.tower, 2)
    e11 = unit_matrix(2, 0, 0)
    cross = ((0, 1), (1, 0))
    both = ((1, 1), (1, 0))
    assert [idx.index_to_matrix(t) for t in cert.columns] == [zero_matrix(2), e11, cross, both]


def test_dual_min_distance_more():
    for q in (4, 5):
        gen = generator_hermitian(2, q)
        cert = an.dual_min_distance(gen)
        assert cert.d_dual == 3
        _recheck_dual(gen, cert)
    gen = generator_hermitian(3, 2)
    cert = an.dual_min_distance(gen)
    assert cert.d_dual == 4
    assert cert.exhausted_below == 4
    _recheck_dual(gen, cert)


def test_dual_min_distance_affine():
    # the affine family shows the same 4 (q=2) / 3 (q>2) split, with F_q
    # dependency coefficients
    cert = an.dual_min_distance(generator_affine_grassmann(2, 2))
    assert cert.d_dual == 4
    cert = an.dual_min_distance(generator_affine_grassmann(2, 3))
    assert cert.d_dual == 3
    t = tower_for_q(3)
    assert all(t.in_base_subfield(c) for c in cert.coefficients)
    _recheck_dual(generator_affine_grassmann(2, 3), cert)


def test_dual_none_found_within_bound():
    gen = generator_hermitian(2, 3)
    with pytest.raises(NoneFoundWithinBound):
        an.dual_min_distance(gen, max_t=2)


def test_dual_budget():
    gen = generator_hermitian(3, 2)
    with pytest.raises(BudgetExceeded):
        an.dual_min_distance(gen, budget=1000)


def test_dual_word_weight3():
    gen = generator_hermitian(2, 3)
    positions, coeffs = an.dual_word_weight3(gen, alpha=2, c0=1)
    # -2/(2-1) = 1 and 1/(2-1) = 1 in F_3
    assert positions == (0, 1, 2)
    assert coeffs == (1, 1, 1)
    with pytest.raises(ValueError):
        an.dual_word_weight3(gen, alpha=1)
    with pytest.raises(ValueError):
        an.dual_word_weight3(gen, alpha=0)
    with pytest.raises(ValueError):
        an.dual_word_weight3(generator_hermitian(2, 2), alpha=1)


def test_dual_word_weight4():
    gen = generator_hermitian(2, 2)
    positions, coeffs = an.dual_word_weight4(gen)
    assert positions == (0, 1, 4, 5)
    assert coeffs == (1, 1, 1, 1)
    with pytest.raises(ValueError):
        an.dual_word_weight4(gen, a1=(1, 0), a2=(2, 0))  # dependent
    with pytest.raises(ValueError):
        an.dual_word_weight4(generator_hermitian(2, 3))


def test_dual_support_families_randomized():
    for ell, q in [(2, 2), (2, 3), (3, 2)]:
        gen = build_generator(FAMILY_HERMITIAN, ell, q)
        words = an.dual_support_families(gen, count=50, seed=5)
        assert len(words) == 50
        t = gen.tower
        for positions, coeffs in words:
            assert len(positions) == (4 if q == 2 else 3)
            for row in gen.rows:
                acc = 0
                for pos, c in zip(positions, coeffs):
                    acc = t.add(acc, t.mul(c, int(row[pos])))
                assert acc == 0


def test_hyperbolic_zero_count():
    t3 = tower_for_q(3)
    assert an.hyperbolic_zero_count(t3, 0, 0, 0) == 5
    assert an.hyperbolic_zero_count(t3, 2, 1, 1) == 2
    t9 = tower_for_q(9)
    for a in t9.subfield:
        for b in t9.subfield:
            assert an.hyperbolic_zero_count(t9, a, b, t9.subfield[1]) == 8
    with pytest.raises(ValueError):
        an.hyperbolic_zero_count(t3, 3, 0, 0)  # 3 is not in F_3 inside F_9


def test_system_solution_count():
    t = tower_for_q(2)
    assert an.system_solution_count(t, [0, 0], [[0, 0], [0, 0]]) == 1
    assert an.system_solution_count(t, [1], [[1]]) == 3  # q + 1 norm preimages
    rng = random.Random(17)
    for n in (1, 2, 3):
        for q in (2, 3, 4):
            tw = tower_for_q(q)
            for i in range(100):
                a, b = an.random_system(tw, n, rng, consistent=(i % 2 == 0))
                count = an.system_solution_count(tw, a, b)
                assert count <= q + 1
                if i % 2 == 0:
                    assert count >= 1


def test_classify_weights_l2():
    r2 = an.classify_weights_l2(2)
    assert r2["weights"] == [6, 10]
    assert r2["resolved_predicate"] == "both"  # the two forms agree in char 2
    r3 = an.classify_weights_l2(3)
    assert r3["weights"] == [51, 60]
    assert r3["plus_f0_predicate_matches"]
    assert not r3["minus_f0_predicate_matches"]
    assert r3["resolved_predicate"] == "plus_f0"
    assert r3["family_size"] == 243


def test_verify_l3_bounds():
    r = an.verify_l3_bounds(2)
    assert r["min_weight"] == 216 == r["bound"]
    assert r["all_above_bound"]
    assert r["weight_det"] == 280 == count_invertible(3, 2)
    assert r["weight_det_matches_product_form"]
    assert not r["weight_det_matches_alt_expansion"]
    assert r["weight_det_plus_const"] == [232]
    with pytest.raises(ValueError):
        an.verify_l3_bounds(3)


def test_min_weight_by_max_minor():
    r = an.min_weight_by_max_minor(2, 2, 2)
    assert r["min_weight"] == 6
    assert r["bound"] == 6
    assert r["method"] == "exhaustive"
    r = an.min_weight_by_max_minor(2, 1, 2)
    assert r["min_weight"] == 8  # q^4 - q^3
    r = an.min_weight_by_max_minor(2, 0, 2)
    assert r["min_weight"] == 16
    r = an.min_weight_by_max_minor(2, 2, 3)
    assert r["min_weight"] == 51
    r = an.min_weight_by_max_minor(3, 3, 2, samples=20)
    assert r["method"] == "sampled"
    assert r["min_weight"] >= r["bound"] == 199
    r_sc = an.min_weight_by_max_minor(2, 2, 2, self_conjugate_only=True)
    assert r_sc["min_weight"] == 6
    assert r_sc["functions_examined"] == 2**3 * 4  # f0, f11, f22 in F_2; f12 in F_4


def test_translation_clearing():
    g22 = generator_hermitian(2, 2)
    assert an.verify_translation_clearing(g22, {((1, 2), (1, 2)): 1}, (1, 2))
    f = {((1, 2), (1, 2)): 1, ((1,), (1,)): 1, ((2,), (2,)): 1}
    assert an.verify_translation_clearing(g22, f, (1, 2))
    with pytest.raises(ValueError):
        an.verify_translation_clearing(g22, {((1,), (2,)): 1}, (1, 2))
    with pytest.raises(ValueError):
        # det coefficient present, so the 1x1 minor is not maximal
        an.verify_translation_clearing(
            g22, {((1, 2), (1, 2)): 1, ((1,), (1,)): 1}, (1,)
        )
    g32 = generator_hermitian(3, 2)
    rng = random.Random(23)
    full = ((1, 2, 3), (1, 2, 3))
    for _ in range(50):
        f = mn.random_combination(g32.tower, 3, rng, self_conjugate=True)
        if not f.get(full, 0):
            f[full] = 1
        assert an.verify_translation_clearing(g32, f, (1, 2, 3))


def test_spread_reduction_worked_example():
    g32 = generator_hermitian(3, 2)
    f = {((1, 2), (2, 3)): 1}
    f2, info = an.spread_reduction_step(g32, f)
    assert (info["size"], info["spread"]) == (2, 3)
    assert info["new_minor"] == ((1, 2), (1, 2))
    assert f2.get(((1, 2), (1, 2)), 0)
    assert an.weight(g32.encode(f)) == an.weight(g32.encode(f2))


def test_spread_reduction_guard():
    g32 = generator_hermitian(3, 2)
    with pytest.raises(ValueError):
        an.spread_reduction_step(g32, {((1, 2), (1, 2)): 1})
    with pytest.raises(ValueError):
        an.spread_reduction_step(g32, {})


def test_induction_bound_values():
    assert an.induction_bound(2, 2) == 16 - 8 - 2 + 1 - 1 == 6
    assert an.induction_bound(2, 3) == 81 - 27 - 3 + 1 - 1 == 51
    assert an.induction_bound(3, 2) == 512 - 256 - 64 + 8 - 1 == 199


def test_certificate_serialization():
    from hermgrass import reports

    cert = an.min_distance_subfield(generator_hermitian(2, 2))
    d = cert.as_dict()
    assert d["d"] == 6
    assert "witness" in d and "generator" in d
    text = reports.to_text(d)
    assert "d = 6" in text
    tree = reports.to_tree(d)
    import json

    assert json.loads(tree)["method"] == "ExhaustiveSubfield"
