"""The minor basis of the generic ell x ell matrix and its linear span.

A minor is a pair (I, J) of equal-size sorted tuples of 1-based row and
column labels; the empty pair denotes the constant function 1.  The
canonical basis order is ascending by size, then lexicographic by I, then
by J; it is normative because generator rows follow it.

A combination is a sparse dict mapping minors to nonzero coefficient
indices.
"""

from __future__ import annotations

from itertools import combinations
from math import comb

from .hermitian import mat_det

Minor = tuple  # ((i1, i2, ...), (j1, j2, ...)), 1-based, sorted

MAX_ELL = 4

EMPTY_MINOR = ((), ())


def basis(ell: int) -> list:
    """All binom(2*ell, ell) minors in canonical order, empty minor first."""
    if not 1 <= ell <= MAX_ELL:
        raise ValueError(f"unsupported ell = {ell}; need 1 <= ell <= {MAX_ELL}")
    out = []
    for size in range(ell + 1):
        for I in combinations(range(1, ell + 1), size):
            for J in combinations(range(1, ell + 1), size):
                out.append((I, J))
    assert len(out) == comb(2 * ell, ell)
    return out


def format_minor(minor: Minor) -> str:
    I, J = minor
    return "I:{%s} J:{%s}" % (",".join(map(str, I)), ",".join(map(str, J)))


def format_combination(f: dict) -> str:
    if not f:
        return "0"
    parts = []
    for minor in sorted(f, key=lambda m: (len(m[0]), m[0], m[1])):
        parts.append(f"{f[minor]}*[{format_minor(minor)}]")
    return " + ".join(parts)


def eval_minor(tower, minor: Minor, M) -> int:
    """Determinant of the (I, J) submatrix of M; the empty minor is 1.

    Cofactor expansion for sizes <= 3, elimination for size 4.
    """
    I, J = minor
    k = len(I)
    if k == 0:
        return 1
    if k == 1:
        return M[I[0] - 1][J[0] - 1]
    sub = [[M[i - 1][j - 1] for j in J] for i in I]
    if k == 2:
        return tower.sub(tower.mul(sub[0][0], sub[1][1]), tower.mul(sub[0][1], sub[1][0]))
    if k == 3:
        acc = 0
        for c, sign in ((0, False), (1, True), (2, False)):
            cols = [j for j in range(3) if j != c]
            m2 = tower.sub(
                tower.mul(sub[1][cols[0]], sub[2][cols[1]]),
                tower.mul(sub[1][cols[1]], sub[2][cols[0]]),
            )
            term = tower.mul(sub[0][c], m2)
            acc = tower.sub(acc, term) if sign else tower.add(acc, term)
        return acc
    return mat_det(tower, sub)


def eval_combination(tower, f: dict, M) -> int:
    acc = 0
    for minor, c in f.items():
        if c:
            acc = tower.add(acc, tower.mul(c, eval_minor(tower, minor, M)))
    return acc


def conjugate_combination(tower, f: dict) -> dict:
    """f_conj: coefficient f_{I,J}^q attached to the transposed minor (J, I)."""
    return {(J, I): tower.conjugate(c) for (I, J), c in f.items() if c}


def is_self_conjugate(tower, f: dict) -> bool:
    """True iff f_{I,J}^q = f_{J,I} for every pair; such f is F_q-valued on
    Hermitian matrices."""
    keys = set(f) | {(J, I) for (I, J) in f}
    return all(
        f.get((J, I), 0) == tower.conjugate(f.get((I, J), 0)) for (I, J) in keys
    )


def support(f: dict) -> set:
    return {m for m, c in f.items() if c}


def maximal_minors(f: dict) -> set:
    """Support minors (I, J) not dominated by another support minor (I', J')
    with I subset of I' and J subset of J'."""
    supp = support(f)
    out = set()
    for (I, J) in supp:
        si, sj = set(I), set(J)
        dominated = any(
            (Ip, Jp) != (I, J) and si <= set(Ip) and sj <= set(Jp) for (Ip, Jp) in supp
        )
        if not dominated:
            out.add((I, J))
    return out


def spread(minor: Minor) -> int:
    I, J = minor
    return len(set(I) | set(J))


def combo_scale(tower, c: int, f: dict) -> dict:
    if c == 0:
        return {}
    return {m: tower.mul(c, v) for m, v in f.items() if v}


def combo_add(tower, f: dict, g: dict) -> dict:
    out = dict(f)
    for m, v in g.items():
        s = tower.add(out.get(m, 0), v)
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def random_combination(tower, ell: int, rng, self_conjugate: bool = False) -> dict:
    """A uniformly random nonzero combination (optionally self-conjugate)."""
    while True:
        f = {}
        if self_conjugate:
            for m in basis(ell):
                I, J = m
                if I == J:
                    c = tower.subfield[rng.randrange(tower.q)]
                    if c:
                        f[m] = c
                elif (I, J) < (J, I):
                    c = rng.randrange(tower.qq)
                    if c:
                        f[(I, J)] = c
                        f[(J, I)] = tower.conjugate(c)
        else:
            for m in basis(ell):
                c = rng.randrange(tower.qq)
                if c:
                    f[m] = c
        if f:
            return f
