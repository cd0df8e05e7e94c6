"""Exact arithmetic in the tower F_p < F_q < F_{q^2} for q = p^e.

F_{q^2} is realized once, as F_p[x]/(m) with m a fixed monic irreducible
polynomial of degree 2e, and F_q is its Frobenius-fixed subfield
{x : x^q = x}.  An element is an integer index in [0, q^2): the
little-endian base-p encoding of its coefficient vector, so index 0 is the
additive identity and index 1 the multiplicative identity.  This index is
also the serialized form used by all file formats.

Multiplication runs through exp/log tables over the cyclic group of order
q^2 - 1.  The shipped moduli all have x primitive, so x itself generates
the tables; construction verifies that the order of x is exactly q^2 - 1,
which simultaneously proves the modulus irreducible (a reducible modulus
leaves strictly fewer than q^2 - 1 units).
"""

from __future__ import annotations

import numpy as np

# One monic irreducible polynomial per supported (p, e), as little-endian
# base-p digit tuples (digit i = coefficient of x^i, degree 2e, monic).
# All are primitive: x generates the multiplicative group.
MODULI = {
    (2, 1): (1, 1, 1),                # x^2 + x + 1          -> F_4
    (3, 1): (2, 2, 1),                # x^2 + 2x + 2         -> F_9
    (2, 2): (1, 1, 0, 0, 1),          # x^4 + x + 1          -> F_16
    (5, 1): (2, 4, 1),                # x^2 + 4x + 2         -> F_25
    (7, 1): (3, 6, 1),                # x^2 + 6x + 3         -> F_49
    (2, 3): (1, 1, 0, 1, 1, 0, 1),    # x^6 + x^4 + x^3 + x + 1 -> F_64
    (3, 2): (2, 0, 0, 2, 1),          # x^4 + 2x^3 + 2       -> F_81
}

# q -> (p, e) for every q appearing in the parameter tables.
SUPPORTED_Q = {2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1), 7: (7, 1), 8: (2, 3), 9: (3, 2)}

MAX_FIELD_SIZE = 6561  # p^(2e) cap


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class FieldTower:
    """The pair F_q < F_{q^2} with all arithmetic tables prebuilt.

    Immutable after construction; all operations are pure, so instances are
    safe to share across threads and processes.
    """

    def __init__(self, p: int, e: int):
        if not _is_prime(p):
            raise ValueError(f"p must be prime, got {p}")
        if e < 1:
            raise ValueError(f"e must be a positive integer, got {e}")
        if p ** (2 * e) > MAX_FIELD_SIZE:
            raise ValueError(f"field too large: p^(2e) = {p ** (2 * e)} > {MAX_FIELD_SIZE}")
        if (p, e) not in MODULI:
            raise ValueError(f"no modulus available for (p, e) = ({p}, {e})")
        self.p = p
        self.e = e
        self.q = p**e
        self.qq = p ** (2 * e)
        self.modulus = MODULI[(p, e)]

        self._build_tables()

        # F_q = fixed field of x -> x^q.
        self.subfield = tuple(x for x in range(self.qq) if self._pow(x, self.q) == x)
        if len(self.subfield) != self.q:
            raise AssertionError(f"subfield has {len(self.subfield)} elements, expected {self.q}")
        self._subfield_pos = {x: i for i, x in enumerate(self.subfield)}
        self._subfield_set = frozenset(self.subfield)

        self.conj_np = np.array([self._pow(x, self.q) for x in range(self.qq)], dtype=np.uint8)
        self.trace_np = self.add_np[np.arange(self.qq), self.conj_np]
        self.norm_np = self.mul_np[np.arange(self.qq), self.conj_np]
        for arr in (self.add_np, self.mul_np, self.neg_np, self.inv_np, self.conj_np,
                    self.trace_np, self.norm_np):
            arr.setflags(write=False)

    def _build_tables(self):
        p, e, qq = self.p, self.e, self.qq
        deg = 2 * e

        def poly_of(idx):
            digits = []
            for _ in range(deg):
                digits.append(idx % p)
                idx //= p
            return digits

        def idx_of(poly):
            out = 0
            for d in reversed(poly):
                out = out * p + d
            return out

        def mul_by_x(poly):
            # multiply by x and reduce by the monic modulus
            lead = poly[-1]
            out = [0] + poly[:-1]
            if lead:
                for i in range(deg):
                    out[i] = (out[i] - lead * self.modulus[i]) % p
            return out

        # exp/log by powers of x; the walk must return to 1 first at step qq-1
        exp = [0] * (qq - 1)
        log = [0] * qq
        cur = poly_of(1)
        for i in range(qq - 1):
            v = idx_of(cur)
            if v == 1 and i > 0:
                raise AssertionError(f"modulus {self.modulus} over F_{p}: x has order {i}, not primitive")
            exp[i] = v
            log[v] = i
            cur = mul_by_x(cur)
        if idx_of(cur) != 1:
            raise AssertionError(f"modulus {self.modulus} over F_{p} is not irreducible")
        self._exp = exp
        self._log = log

        # addition is digitwise mod p on the base-p encodings
        idx = np.arange(qq)
        digits = np.empty((qq, deg), dtype=np.int64)
        rest = idx.copy()
        for i in range(deg):
            digits[:, i] = rest % p
            rest //= p
        summed = (digits[:, None, :] + digits[None, :, :]) % p
        weights = p ** np.arange(deg)
        self.add_np = (summed * weights).sum(axis=2).astype(np.uint8)

        mul = np.zeros((qq, qq), dtype=np.uint8)
        for a in range(1, qq):
            la = log[a]
            for b in range(1, qq):
                mul[a, b] = exp[(la + log[b]) % (qq - 1)]
        self.mul_np = mul

        # -x = (p-1) * x; the constant p-1 has index p-1 (negation is the
        # identity in characteristic 2)
        if p == 2:
            self.neg_np = np.arange(qq, dtype=np.uint8)
        else:
            self.neg_np = mul[p - 1].copy()
        inv = np.zeros(qq, dtype=np.uint8)
        for a in range(1, qq):
            inv[a] = exp[(qq - 1 - log[a]) % (qq - 1)]
        self.inv_np = inv

    # scalar operations -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return int(self.add_np[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_np[a, self.neg_np[b]])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_np[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_np[a])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return int(self.inv_np[a])

    def _pow(self, a: int, n: int) -> int:
        if n == 0:
            return 1
        if a == 0:
            return 0
        return self._exp[(self._log[a] * n) % (self.qq - 1)]

    def pow(self, a: int, n: int) -> int:
        """a^n for n >= 0, with a^0 = 1 (including 0^0)."""
        if n < 0:
            return self.pow(self.inv(a), -n)
        return self._pow(a, n)

    def conjugate(self, a: int) -> int:
        """The involutive automorphism a -> a^q; fixes exactly F_q."""
        return int(self.conj_np[a])

    def trace(self, a: int) -> int:
        """Tr(a) = a + a^q, an F_q-linear map onto F_q."""
        return int(self.trace_np[a])

    def norm(self, a: int) -> int:
        """N(a) = a^(q+1), multiplicative onto F_q."""
        return int(self.norm_np[a])

    def in_base_subfield(self, a: int) -> bool:
        return a in self._subfield_set

    def subfield_digit(self, a: int) -> int:
        """Position of a in the sorted subfield list (a must lie in F_q)."""
        return self._subfield_pos[a]

    def __repr__(self):
        return f"FieldTower(p={self.p}, e={self.e}, q={self.q})"

    def __reduce__(self):
        # keeps pickling cheap and tables canonical for worker processes
        return (make_field, (self.p, self.e))


_CACHE: dict = {}


def make_field(p: int, e: int) -> FieldTower:
    """Build (or fetch the cached) tower F_p < F_{p^e} < F_{p^2e}."""
    key = (p, e)
    if key not in _CACHE:
        _CACHE[key] = FieldTower(p, e)
    return _CACHE[key]


def tower_for_q(q: int) -> FieldTower:
    """The tower whose middle field is F_q, for q in the supported set."""
    if q not in SUPPORTED_Q:
        raise ValueError(f"unsupported q = {q}; supported: {sorted(SUPPORTED_Q)}")
    return make_field(*SUPPORTED_Q[q])
