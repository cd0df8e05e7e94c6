"""Generator matrices for the two evaluation-code families.

The Hermitian family evaluates every minor of the generic Hermitian matrix
at all ell x ell Hermitian matrices over F_{q^2}; the affine family
evaluates the same minor basis at all ell x ell matrices over F_q.  Row i
of a generator is the evaluation of basis minor i; columns follow the
canonical position enumerations (see hermitian.HermitianIndexing for the
Hermitian order; affine positions decode the ell^2 entries row-major,
least significant first, radix q through the sorted subfield list).

Also here: the F_q row basis of the Hermitian code, membership and
interpolation against a generator, positionwise conjugation, automorphism
permutations, and the matrix/codeword file formats.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from . import linalg
from .errors import BudgetExceeded, NotInCode
from .galois import MODULI, SUPPORTED_Q, FieldTower, make_field, tower_for_q
from .hermitian import (
    HermitianIndexing,
    conj_transpose,
    is_hermitian,
    mat_mul,
    mat_rank,
    transpose,
    translate,
    upper_pairs,
)
from .minors import basis

FAMILY_HERMITIAN = "hermitian"
FAMILY_AFFINE = "affine"
_FAMILY_LETTER = {FAMILY_HERMITIAN: "H", FAMILY_AFFINE: "A"}
_LETTER_FAMILY = {v: k for k, v in _FAMILY_LETTER.items()}

BUILD_LIMIT = 10**7

FORMAT_MAGIC = "hermgrass-gen v1"


@dataclass(frozen=True)
class CodeSpec:
    family: str
    q: int
    ell: int

    def __post_init__(self):
        if self.family not in _FAMILY_LETTER:
            raise ValueError(f"unknown family {self.family!r}")
        if self.q not in SUPPORTED_Q:
            raise ValueError(f"unsupported q = {self.q}")
        if not 1 <= self.ell <= 4:
            raise ValueError(f"ell must be in 1..4, got {self.ell}")

    @property
    def n(self) -> int:
        return self.q ** (self.ell * self.ell)

    @property
    def k(self) -> int:
        return comb(2 * self.ell, self.ell)

    @property
    def alphabet_size(self) -> int:
        return self.q**2 if self.family == FAMILY_HERMITIAN else self.q


def position_entries(tower: FieldTower, ell: int, family: str):
    """Entry value arrays: E[i][j][t] = entry (i, j) of the t-th evaluation
    point, for all positions t at once."""
    q, qq = tower.q, tower.qq
    n = q ** (ell * ell)
    t = np.arange(n, dtype=np.int64)
    subfield = np.array(tower.subfield, dtype=np.uint8)
    E = [[None] * ell for _ in range(ell)]
    if family == FAMILY_HERMITIAN:
        for i in range(ell):
            E[i][i] = subfield[(t // q**i) % q]
        base = q**ell
        for m, (i, j) in enumerate(upper_pairs(ell)):
            u = ((t // (base * qq**m)) % qq).astype(np.uint8)
            E[i][j] = u
            E[j][i] = tower.conj_np[u]
    elif family == FAMILY_AFFINE:
        for i in range(ell):
            for j in range(ell):
                m = i * ell + j
                E[i][j] = subfield[(t // q**m) % q]
    else:
        raise ValueError(f"unknown family {family!r}")
    return E


def _det_vectors(tower, sub):
    """Vectorized determinant over position arrays by first-row expansion."""
    k = len(sub)
    n = len(sub[0][0]) if k else None
    if k == 0:
        raise ValueError("empty submatrix handled by caller")
    if k == 1:
        return sub[0][0]
    add, mul, neg = tower.add_np, tower.mul_np, tower.neg_np
    acc = None
    for c in range(k):
        rest = [row[:c] + row[c + 1 :] for row in sub[1:]]
        term = mul[sub[0][c], _det_vectors(tower, rest)]
        if c % 2 == 1:
            term = neg[term]
        acc = term if acc is None else add[acc, term]
    return acc


def eval_minor_vector(tower, E, minor):
    """Evaluation of one minor at every position, as an index array."""
    I, J = minor
    n = len(E[0][0])
    if len(I) == 0:
        return np.ones(n, dtype=np.uint8)
    sub = [[E[i - 1][j - 1] for j in J] for i in I]
    return _det_vectors(tower, sub)


class GeneratorMatrix:
    """k x n generator whose rows are minor evaluations in canonical order.

    The rank check at construction equals k for every supported build, which
    certifies empirically that evaluation is injective on the minor span.
    """

    def __init__(self, spec: CodeSpec, tower: FieldTower, rows: np.ndarray):
        self.spec = spec
        self.tower = tower
        self.rows = rows
        self.rows.setflags(write=False)
        self.basis = basis(spec.ell)
        self._elim_cache = None
        self.rank = linalg.rank(tower, rows)
        if self.rank != spec.k:
            raise AssertionError(
                f"generator rank {self.rank} != expected dimension {spec.k}"
            )

    def header(self) -> str:
        t, s = self.tower, self.spec
        modulus = "".join(str(d) for d in t.modulus)
        return (
            f"{FORMAT_MAGIC} family={_FAMILY_LETTER[s.family]} p={t.p} e={t.e} "
            f"ell={s.ell} k={s.k} n={s.n} modulus={modulus}"
        )

    def _elim(self):
        if self._elim_cache is None:
            self._elim_cache = linalg.rref(self.tower, self.rows)
        return self._elim_cache

    def encode_message(self, message) -> np.ndarray:
        """Codeword of a length-k coefficient vector over the alphabet."""
        if len(message) != self.spec.k:
            raise ValueError("message length mismatch")
        return linalg.combine(self.tower, self.rows, message)

    def encode(self, f: dict) -> np.ndarray:
        """Codeword of a minor combination."""
        lookup = {m: i for i, m in enumerate(self.basis)}
        message = [0] * self.spec.k
        for minor, c in f.items():
            if minor not in lookup:
                raise ValueError(f"minor {minor} not valid for ell={self.spec.ell}")
            message[lookup[minor]] = c
        return self.encode_message(message)

    def coefficients_of(self, codeword) -> np.ndarray:
        """Length-k message recovering the codeword, or NotInCode."""
        codeword = np.asarray(codeword, dtype=np.uint8)
        if codeword.shape != (self.spec.n,):
            raise ValueError("codeword length mismatch")
        R, pivots, T = self._elim()
        y = linalg.solve_in_row_space(self.tower, R, pivots, codeword)
        if y is None:
            raise NotInCode("vector is not in the row space")
        message = linalg.combine(self.tower, T, y)
        if self.spec.family == FAMILY_AFFINE and not all(
            self.tower.in_base_subfield(int(v)) for v in message
        ):
            raise NotInCode("vector is in the F_{q^2} span but not the F_q code")
        return message

    def membership(self, codeword) -> bool:
        try:
            self.coefficients_of(codeword)
            return True
        except NotInCode:
            return False

    def interpolate(self, codeword) -> dict:
        """The unique minor combination evaluating to the codeword."""
        message = self.coefficients_of(codeword)
        return {m: int(v) for m, v in zip(self.basis, message) if v}


_GEN_CACHE: dict = {}


def build_generator(family: str, ell: int, q: int) -> GeneratorMatrix:
    key = (family, ell, q)
    if key in _GEN_CACHE:
        return _GEN_CACHE[key]
    spec = CodeSpec(family, q, ell)
    if spec.n > BUILD_LIMIT:
        raise BudgetExceeded(f"q^(ell^2) = {spec.n} exceeds build limit {BUILD_LIMIT}")
    tower = tower_for_q(q)
    E = position_entries(tower, ell, family)
    rows = np.stack([eval_minor_vector(tower, E, m) for m in basis(ell)])
    gen = GeneratorMatrix(spec, tower, rows)
    _GEN_CACHE[key] = gen
    return gen


def generator_hermitian(ell: int, q: int) -> GeneratorMatrix:
    return build_generator(FAMILY_HERMITIAN, ell, q)


def generator_affine_grassmann(ell: int, q: int) -> GeneratorMatrix:
    return build_generator(FAMILY_AFFINE, ell, q)


def interpolate(codeword, gen: GeneratorMatrix) -> dict:
    """Inverse of encoding: the unique combination f with ev(f) = codeword."""
    return gen.interpolate(codeword)


# F_q basis -------------------------------------------------------------------


def subfield_generator_element(tower: FieldTower) -> int:
    """Smallest element alpha such that {alpha, alpha^q} is an F_q-basis of
    F_{q^2}.

    {alpha, alpha^q} is dependent over F_q exactly when alpha^q is alpha or
    -alpha, so those two cases are skipped (they coincide for p = 2).
    """
    for alpha in range(tower.qq):
        c = tower.conjugate(alpha)
        if c != alpha and c != tower.neg(alpha):
            return alpha
    raise AssertionError("no basis element found")


def fq_basis(ell: int, q: int) -> list:
    """binom(2*ell, ell) combinations spanning the Hermitian code over F_q.

    Principal minors evaluate in F_q as they stand; each transposed pair
    (I, J) != (J, I) contributes alpha*det_IJ + alpha^q*det_JI and
    alpha^q*det_IJ + alpha*det_JI, both F_q-valued on Hermitian matrices.
    """
    tower = tower_for_q(q)
    alpha = subfield_generator_element(tower)
    alpha_q = tower.conjugate(alpha)
    out = []
    for I, J in basis(ell):
        if I == J:
            out.append({(I, I): 1})
        elif (I, J) < (J, I):
            out.append({(I, J): alpha, (J, I): alpha_q})
            out.append({(I, J): alpha_q, (J, I): alpha})
    assert len(out) == comb(2 * ell, ell)
    return out


# conjugation and automorphisms -----------------------------------------------


def conjugate_codeword(tower: FieldTower, codeword) -> np.ndarray:
    """Positionwise x -> x^q."""
    return tower.conj_np[np.asarray(codeword, dtype=np.uint8)]


def q_invariance_check(gen: GeneratorMatrix) -> bool:
    """Whether the conjugate of every generator row is itself a codeword."""
    return all(gen.membership(conjugate_codeword(gen.tower, row)) for row in gen.rows)


def congruence_permutation(tower: FieldTower, ell: int, A) -> np.ndarray:
    """Position permutation of H -> A* H A through the canonical indexing."""
    if mat_rank(tower, A) != ell:
        raise ValueError("congruence requires an invertible matrix")
    indexing = HermitianIndexing(tower, ell)
    A_star = conj_transpose(tower, A)
    perm = np.empty(indexing.total, dtype=np.int64)
    for t in range(indexing.total):
        H = indexing.index_to_matrix(t)
        perm[t] = indexing.matrix_to_index(mat_mul(tower, A_star, mat_mul(tower, H, A)))
    return perm


def translate_permutation(tower: FieldTower, ell: int, M) -> np.ndarray:
    """Position permutation of H -> H + M for Hermitian M."""
    if not is_hermitian(tower, M):
        raise ValueError("translation requires a Hermitian matrix")
    indexing = HermitianIndexing(tower, ell)
    perm = np.empty(indexing.total, dtype=np.int64)
    for t in range(indexing.total):
        H = indexing.index_to_matrix(t)
        perm[t] = indexing.matrix_to_index(translate(tower, H, M))
    return perm


def transpose_permutation(tower: FieldTower, ell: int) -> np.ndarray:
    """Position permutation of H -> H^T."""
    indexing = HermitianIndexing(tower, ell)
    perm = np.empty(indexing.total, dtype=np.int64)
    for t in range(indexing.total):
        H = indexing.index_to_matrix(t)
        perm[t] = indexing.matrix_to_index(transpose(tower, H))
    return perm


def apply_permutation(codeword, perm) -> np.ndarray:
    return np.asarray(codeword, dtype=np.uint8)[perm]


# file formats ----------------------------------------------------------------


def _parse_header(line: str, count_key: str):
    parts = line.split()
    if parts[:2] != FORMAT_MAGIC.split():
        raise ValueError(f"bad magic in header: {line!r}")
    fields = dict(part.split("=", 1) for part in parts[2:])
    required = {"family", "p", "e", "ell", count_key, "n", "modulus"}
    if set(fields) != required:
        raise ValueError(f"header fields {sorted(fields)} != expected {sorted(required)}")
    family = _LETTER_FAMILY.get(fields["family"])
    if family is None:
        raise ValueError(f"unknown family letter {fields['family']!r}")
    p, e = int(fields["p"]), int(fields["e"])
    if (p, e) not in MODULI:
        raise ValueError(f"no modulus available for (p, e) = ({p}, {e})")
    shipped = "".join(str(d) for d in MODULI[(p, e)])
    if fields["modulus"] != shipped:
        raise ValueError(
            f"modulus {fields['modulus']} does not match shipped modulus {shipped}"
        )
    return family, p, e, int(fields["ell"]), int(fields[count_key]), int(fields["n"])


def write_generator(gen: GeneratorMatrix, path):
    with open(path, "w") as fh:
        fh.write(gen.header() + "\n")
        for row in gen.rows:
            fh.write(" ".join(str(int(v)) for v in row) + "\n")


def read_generator(path) -> GeneratorMatrix:
    with open(path) as fh:
        lines = [line.strip() for line in fh if line.strip()]
    family, p, e, ell, k, n = _parse_header(lines[0], "k")
    tower = make_field(p, e)
    spec = CodeSpec(family, tower.q, ell)
    if (spec.k, spec.n) != (k, n):
        raise ValueError(f"header k={k} n={n} inconsistent with family/ell/q")
    if len(lines) != k + 1:
        raise ValueError(f"expected {k} rows, found {len(lines) - 1}")
    rows = np.array([[int(v) for v in line.split()] for line in lines[1:]], dtype=np.int64)
    if rows.shape != (k, n) or rows.min() < 0 or rows.max() >= tower.qq:
        raise ValueError("matrix body malformed")
    return GeneratorMatrix(spec, tower, rows.astype(np.uint8))


def codeword_header(gen: GeneratorMatrix, count: int) -> str:
    t, s = gen.tower, gen.spec
    modulus = "".join(str(d) for d in t.modulus)
    return (
        f"{FORMAT_MAGIC} family={_FAMILY_LETTER[s.family]} p={t.p} e={t.e} "
        f"ell={s.ell} words={count} n={s.n} modulus={modulus}"
    )


def write_codewords(gen: GeneratorMatrix, words, path):
    words = [np.asarray(w, dtype=np.uint8) for w in words]
    with open(path, "w") as fh:
        fh.write(codeword_header(gen, len(words)) + "\n")
        for w in words:
            fh.write(" ".join(str(int(v)) for v in w) + "\n")


def read_codewords(path):
    """Returns ((family, q, ell), list of codeword arrays)."""
    with open(path) as fh:
        lines = [line.strip() for line in fh if line.strip()]
    family, p, e, ell, count, n = _parse_header(lines[0], "words")
    tower = make_field(p, e)
    if len(lines) != count + 1:
        raise ValueError(f"expected {count} codewords, found {len(lines) - 1}")
    words = []
    for line in lines[1:]:
        w = np.array([int(v) for v in line.split()], dtype=np.int64)
        if w.shape != (n,) or w.min() < 0 or w.max() >= tower.qq:
            raise ValueError("codeword body malformed")
        words.append(w.astype(np.uint8))
    return (family, tower.q, ell), words
