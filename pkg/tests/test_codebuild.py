import random

import numpy as np
import pytest

from hermgrass import linalg
from hermgrass import minors as mn
from hermgrass.analysis import weight
from hermgrass.codebuild import (
    FAMILY_AFFINE,
    FAMILY_HERMITIAN,
    CodeSpec,
    build_generator,
    congruence_permutation,
    conjugate_codeword,
    fq_basis,
    generator_affine_grassmann,
    generator_hermitian,
    q_invariance_check,
    read_codewords,
    read_generator,
    subfield_generator_element,
    translate_permutation,
    transpose_permutation,
    write_codewords,
    write_generator,
)
from hermgrass.errors import BudgetExceeded
from hermgrass.galois import SUPPORTED_Q, tower_for_q
from hermgrass.hermitian import HermitianIndexing, identity_matrix, unit_matrix, zero_matrix


def test_generator_shapes_and_ranks():
    cases = [(2, 2, 6, 16), (3, 2, 20, 512), (1, 2, 2, 2), (2, 3, 6, 81)]
    for ell, q, k, n in cases:
        gen = generator_hermitian(ell, q)
        assert gen.rows.shape == (k, n)
        assert gen.rank == k
        assert gen.spec == CodeSpec(FAMILY_HERMITIAN, q, ell)


def test_generator_columns_match_scalar_evaluation():
    # vectorized build agrees with per-matrix evaluation
    for ell, q in [(2, 2), (2, 3), (3, 2)]:
        gen = generator_hermitian(ell, q)
        t = gen.tower
        idx = HermitianIndexing(t, ell)
        rng = random.Random(1)
        for _ in range(25):
            pos = rng.randrange(idx.total)
            H = idx.index_to_matrix(pos)
            for r, minor in enumerate(gen.basis):
                assert int(gen.rows[r, pos]) == mn.eval_minor(t, minor, H)


def test_generator_too_large():
    with pytest.raises(BudgetExceeded):
        build_generator(FAMILY_HERMITIAN, 4, 3)  # 3^16 positions


def test_affine_generator():
    gen = generator_affine_grassmann(2, 2)
    assert gen.rows.shape == (6, 16)
    assert gen.rank == 6
    t = gen.tower
    assert all(t.in_base_subfield(int(v)) for v in np.unique(gen.rows))
    # ell = 1, q = 2: the code is the full space of length 2
    g1 = generator_affine_grassmann(1, 2)
    assert g1.rows.shape == (2, 2)
    assert g1.rank == 2
    words = {tuple(linalg.combine(g1.tower, g1.rows, m)) for m in
             [(0, 0), (0, 1), (1, 0), (1, 1)]}
    assert words == {(0, 0), (0, 1), (1, 0), (1, 1)}


def test_affine_positions_row_major():
    gen = generator_affine_grassmann(2, 3)
    t = gen.tower
    # position t decodes entries (1,1),(1,2),(2,1),(2,2) least significant
    # first through the sorted subfield; check via the 1x1 minor rows
    entry_rows = {
        ((1,), (1,)): 0,
        ((1,), (2,)): 1,
        ((2,), (1,)): 2,
        ((2,), (2,)): 3,
    }
    for minor, digit_pos in entry_rows.items():
        r = gen.basis.index(minor)
        for pos in range(gen.spec.n):
            expected = t.subfield[(pos // 3**digit_pos) % 3]
            assert int(gen.rows[r, pos]) == expected


def test_subfield_generator_element():
    for q in sorted(SUPPORTED_Q):
        t = tower_for_q(q)
        alpha = subfield_generator_element(t)
        alpha_q = t.conjugate(alpha)
        assert alpha_q != alpha
        # {alpha, alpha^q} spans F_{q^2} over F_q
        span = {t.add(t.mul(a, alpha), t.mul(b, alpha_q))
                for a in t.subfield for b in t.subfield}
        assert len(span) == t.qq


def test_fq_basis_structure():
    b1 = fq_basis(1, 2)
    assert b1 == [{((), ()): 1}, {((1,), (1,)): 1}]
    for ell, q in [(2, 2), (2, 3), (3, 2)]:
        gen = build_generator(FAMILY_HERMITIAN, ell, q)
        t = gen.tower
        combos = fq_basis(ell, q)
        assert len(combos) == gen.spec.k
        rows = np.stack([gen.encode(f) for f in combos])
        assert all(t.in_base_subfield(int(v)) for v in np.unique(rows))
        assert linalg.rank(t, rows) == gen.spec.k


def test_conjugated_rows_are_codewords():
    for ell, q in [(2, 2), (2, 3), (3, 2)]:
        gen = generator_hermitian(ell, q)
        assert q_invariance_check(gen)
        for row in gen.rows:
            assert gen.membership(conjugate_codeword(gen.tower, row))


def test_membership():
    gen = generator_hermitian(2, 3)
    rng = random.Random(8)
    for row in gen.rows:
        assert gen.membership(row)
    for _ in range(20):
        f = mn.random_combination(gen.tower, 2, rng)
        c = gen.encode(f)
        assert gen.membership(c)
        bad = np.array(c, dtype=np.uint8)
        pos = rng.randrange(gen.spec.n)
        bad[pos] = gen.tower.add(int(bad[pos]), 1)
        assert not gen.membership(bad)


def test_affine_membership_stays_in_subfield():
    gen = generator_affine_grassmann(2, 3)
    t = gen.tower
    # an F_9-multiple of a row is in the F_9 span but not the F_3 code
    scaled = t.mul_np[3][gen.rows[1]]
    assert not gen.membership(scaled)
    assert gen.membership(t.mul_np[2][gen.rows[1]])


def test_automorphism_permutations():
    gen = generator_hermitian(2, 2)
    t = gen.tower
    n = gen.spec.n
    ident = congruence_permutation(t, 2, identity_matrix(2))
    assert list(ident) == list(range(n))
    ident2 = translate_permutation(t, 2, zero_matrix(2))
    assert list(ident2) == list(range(n))
    trans = transpose_permutation(t, 2)
    assert list(trans[trans]) == list(range(n))

    # translating by E_{1,1} maps ev(det + 1) to a weight-6 codeword
    perm = translate_permutation(t, 2, unit_matrix(2, 0, 0))
    c = gen.encode({((1, 2), (1, 2)): 1, ((), ()): 1})
    image = np.asarray(c)[perm]
    assert gen.membership(image)
    assert weight(image) == weight(c) == 6

    with pytest.raises(ValueError):
        congruence_permutation(t, 2, zero_matrix(2))
    with pytest.raises(ValueError):
        translate_permutation(t, 2, ((2, 0), (0, 0)))


def test_automorphisms_preserve_membership_randomized():
    rng = random.Random(13)
    from hermgrass.hermitian import mat_rank

    for ell, q in [(2, 2), (2, 3), (3, 2)]:
        gen = generator_hermitian(ell, q)
        t = gen.tower
        idx = HermitianIndexing(t, ell)
        while True:
            A = tuple(tuple(rng.randrange(t.qq) for _ in range(ell)) for _ in range(ell))
            if mat_rank(t, A) == ell:
                break
        M = idx.index_to_matrix(rng.randrange(idx.total))
        perms = [
            congruence_permutation(t, ell, A),
            translate_permutation(t, ell, M),
            transpose_permutation(t, ell),
        ]
        for perm in perms:
            assert sorted(perm) == list(range(idx.total))
            for _ in range(5):
                f = mn.random_combination(t, ell, rng)
                c = np.asarray(gen.encode(f))
                image = c[perm]
                assert gen.membership(image)
                assert weight(image) == weight(c)


def test_generator_file_round_trip(tmp_path):
    for ell, q, family in [(2, 2, FAMILY_HERMITIAN), (3, 2, FAMILY_HERMITIAN),
                           (2, 3, FAMILY_AFFINE)]:
        gen = build_generator(family, ell, q)
        path = tmp_path / f"gen_{family}_{ell}_{q}.txt"
        write_generator(gen, path)
        back = read_generator(path)
        assert back.header() == gen.header()
        assert np.array_equal(back.rows, gen.rows)
        assert back.rank == gen.spec.k


def test_generator_file_validation(tmp_path):
    gen = generator_hermitian(2, 2)
    path = tmp_path / "gen.txt"
    write_generator(gen, path)
    text = path.read_text().splitlines()
    bad = tmp_path / "bad.txt"
    bad.write_text("\n".join(["not a header"] + text[1:]) + "\n")
    with pytest.raises(ValueError):
        read_generator(bad)
    bad.write_text("\n".join([text[0].replace("modulus=111", "modulus=101")] + text[1:]) + "\n")
    with pytest.raises(ValueError):
        read_generator(bad)
    bad.write_text("\n".join(text[:-1]) + "\n")
    with pytest.raises(ValueError):
        read_generator(bad)


def test_codeword_file_round_trip(tmp_path):
    gen = generator_hermitian(2, 2)
    rng = random.Random(21)
    words = [gen.encode(mn.random_combination(gen.tower, 2, rng)) for _ in range(3)]
    path = tmp_path / "words.txt"
    write_codewords(gen, words, path)
    header = path.read_text().splitlines()[0]
    assert "words=3" in header and "k=" not in header
    (family, q, ell), back = read_codewords(path)
    assert (family, q, ell) == (FAMILY_HERMITIAN, 2, 2)
    assert len(back) == 3
    for w, b in zip(words, back):
        assert np.array_equal(w, b)
