"""The space of ell x ell Hermitian matrices over F_{q^2}.

A matrix is a tuple of row tuples of element indices.  H is Hermitian when
H equals its conjugate transpose, i.e. diagonal entries lie in F_q and
H[j][i] = H[i][j]^q.

The canonical enumeration is normative for codeword coordinates: position
t in [0, q^(ell^2)) decodes mixed-radix, least significant first, as the
ell diagonal entries (radix q, through the sorted subfield list) followed
by the strict upper triangle in row-major order (radix q^2); the conjugate
transpose fills the lower triangle.  Position 0 is the zero matrix.
"""

from __future__ import annotations

from math import comb, prod

Matrix = tuple  # tuple of row tuples of element indices

BRUTE_FORCE_LIMIT = 10**7


def upper_pairs(ell):
    """Strict upper-triangle coordinates in row-major order."""
    return [(i, j) for i in range(ell) for j in range(i + 1, ell)]


def zero_matrix(ell) -> Matrix:
    return tuple((0,) * ell for _ in range(ell))


def identity_matrix(ell) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(ell)) for i in range(ell))


def unit_matrix(ell, i, j, value=1) -> Matrix:
    """E_{i,j} scaled: all zero except entry (i, j) (0-based)."""
    return tuple(tuple(value if (r, c) == (i, j) else 0 for c in range(ell)) for r in range(ell))


def elementary_row_add(ell, i, j, m) -> Matrix:
    """L_{i,j}(m) = I + m E_{i,j}: adds m times row j to row i (0-based)."""
    return tuple(
        tuple(1 if r == c else (m if (r, c) == (i, j) else 0) for c in range(ell))
        for r in range(ell)
    )


def is_hermitian(tower, M) -> bool:
    ell = len(M)
    for i in range(ell):
        if not tower.in_base_subfield(M[i][i]):
            return False
        for j in range(i + 1, ell):
            if M[j][i] != tower.conjugate(M[i][j]):
                return False
    return True


class HermitianIndexing:
    """Mutually inverse bijections between [0, q^(ell^2)) and Hermitian matrices."""

    def __init__(self, tower, ell):
        self.tower = tower
        self.ell = ell
        self.total = tower.q ** (ell * ell)
        self._pairs = upper_pairs(ell)

    def index_to_matrix(self, t: int) -> Matrix:
        if not 0 <= t < self.total:
            raise ValueError(f"index {t} out of range [0, {self.total})")
        tower, ell = self.tower, self.ell
        q, qq = tower.q, tower.qq
        entries = [[0] * ell for _ in range(ell)]
        for i in range(ell):
            entries[i][i] = tower.subfield[t % q]
            t //= q
        for (i, j) in self._pairs:
            v = t % qq
            t //= qq
            entries[i][j] = v
            entries[j][i] = tower.conjugate(v)
        return tuple(tuple(row) for row in entries)

    def matrix_to_index(self, M) -> int:
        tower, ell = self.tower, self.ell
        if len(M) != ell or not is_hermitian(tower, M):
            raise ValueError("not a Hermitian matrix of the expected size")
        q, qq = tower.q, tower.qq
        t = 0
        for (i, j) in reversed(self._pairs):
            t = t * qq + M[i][j]
        for i in reversed(range(ell)):
            t = t * q + tower.subfield_digit(M[i][i])
        return t

    def __iter__(self):
        return (self.index_to_matrix(t) for t in range(self.total))


# matrix helpers over F_{q^2} ------------------------------------------------


def mat_mul(tower, A, B) -> Matrix:
    n, m, k = len(A), len(B[0]), len(B)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = 0
            for s in range(k):
                acc = tower.add(acc, tower.mul(A[i][s], B[s][j]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def conj_transpose(tower, A) -> Matrix:
    n, m = len(A), len(A[0])
    return tuple(tuple(tower.conjugate(A[i][j]) for i in range(n)) for j in range(m))


def mat_rank(tower, M) -> int:
    """Row rank by Gaussian elimination, first nonzero pivot in column order."""
    rows = [list(r) for r in M]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = tower.inv(rows[r][c])
        rows[r] = [tower.mul(inv, x) for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = tower.neg(rows[i][c])
                rows[i] = [tower.add(x, tower.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == nrows:
            break
    return r


def mat_det(tower, M) -> int:
    """Exact determinant by elimination (empty matrix has determinant 1)."""
    n = len(M)
    if n == 0:
        return 1
    rows = [list(r) for r in M]
    det = 1
    for c in range(n):
        piv = None
        for i in range(c, n):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            return 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = tower.neg(det)
        pv = rows[c][c]
        det = tower.mul(det, pv)
        inv = tower.inv(pv)
        for i in range(c + 1, n):
            if rows[i][c]:
                f = tower.neg(tower.mul(rows[i][c], inv))
                rows[i] = [tower.add(x, tower.mul(f, y)) for x, y in zip(rows[i], rows[c])]
    return det


def rank(tower, H) -> int:
    return mat_rank(tower, H)


# group actions ---------------------------------------------------------------


def congruence(tower, A, H) -> Matrix:
    """A* H A for invertible A; Hermitian, rank-preserving."""
    ell = len(H)
    if mat_rank(tower, A) != ell:
        raise ValueError("congruence requires an invertible matrix")
    out = mat_mul(tower, conj_transpose(tower, A), mat_mul(tower, H, A))
    return out


def translate(tower, H, M) -> Matrix:
    if len(H) != len(M):
        raise ValueError("size mismatch")
    return tuple(
        tuple(tower.add(a, b) for a, b in zip(hr, mr)) for hr, mr in zip(H, M)
    )


def transpose(tower, H) -> Matrix:
    ell = len(H)
    return tuple(tuple(H[j][i] for j in range(ell)) for i in range(ell))


def rank_one_from_vector(tower, a) -> Matrix:
    """The outer product a* a (conjugate transpose of the row vector a times a)."""
    if not any(a):
        raise ValueError("zero vector")
    return tuple(
        tuple(tower.mul(tower.conjugate(ai), aj) for aj in a) for ai in a
    )


# cardinality -----------------------------------------------------------------


def count_invertible(ell: int, q: int) -> int:
    """Number of invertible ell x ell Hermitian matrices over F_{q^2}:
    q^binom(ell,2) * prod_{i=1..ell} (q^i + (-1)^i)."""
    return q ** comb(ell, 2) * prod(q**i + (-1) ** i for i in range(1, ell + 1))


def count_invertible_bruteforce(tower, ell: int) -> int:
    indexing = HermitianIndexing(tower, ell)
    if indexing.total > BRUTE_FORCE_LIMIT:
        raise ValueError(f"too large for brute force: q^(ell^2) = {indexing.total}")
    return sum(1 for H in indexing if mat_rank(tower, H) == ell)
