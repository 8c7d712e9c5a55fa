"""Exact arithmetic in GF(2^m) and GF(3^m).

Field elements are plain Python ints holding the coefficient vector of the
residue polynomial in packed little-endian form: characteristic 2 uses one
bit per coefficient, characteristic 3 uses two bits per coefficient.  The
additive and multiplicative identities of every field are the ints 0 and 1.

`make_field(p, m)` picks the modulus deterministically: the smallest monic
irreducible of degree m over F_p when written coefficients are compared
from the t^(m-1) coefficient down to the constant term.  Repeated calls
return the same cached object, so moduli (and hence every derived byte
key) are reproducible across runs.

Both group families live over fields of odd degree, where the Tits twist
is itself a Frobenius power: x -> x^(p^((m+1)//2)) in characteristic 2 and
x -> x^(p^((m-1)//2)) in characteristic 3, so that the cube of the twist
image is x^r with r = 3^((m+1)/2).

Fields of order at most `TABLE_LIMIT` carry exp/log (and, for p = 3, add)
tables; larger fields fall back to direct polynomial arithmetic on the
packed representation.
"""

from __future__ import annotations

import random
from functools import lru_cache

TABLE_LIMIT = 4096


# ---------------------------------------------------------------------------
# Dense polynomial helpers over F_p (little-endian coefficient tuples),
# used only for the modulus search.
# ---------------------------------------------------------------------------

def _ptrim(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return c[:i]


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _ptrim(out)


def _pmod(a, f, p):
    # f monic
    a = list(a)
    df = len(f) - 1
    while len(a) > df:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - df
            for j in range(df + 1):
                a[shift + j] = (a[shift + j] - lead * f[j]) % p
        a.pop()
    return _ptrim(a)


def _pgcd(a, b, p):
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        inv_lead = pow(b[-1], p - 2, p)
        bm = [(c * inv_lead) % p for c in b]
        a, b = bm, _pmod(a, bm, p)
    return a


def _is_irreducible(f, p):
    """Rabin-style test: no irreducible factor of degree <= deg(f)//2."""
    m = len(f) - 1
    if m == 1:
        return True
    if f[0] == 0:
        return False
    x = [0, 1]
    xp = x
    for _ in range(m // 2):
        # xp <- xp^p mod f
        acc = [1]
        base = xp
        e = p
        while e:
            if e & 1:
                acc = _pmod(_pmul(acc, base, p), f, p)
            base = _pmod(_pmul(base, base, p), f, p)
            e >>= 1
        xp = acc
        diff = list(xp) + [0] * (2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(diff, f, p)
        if len(g) - 1 >= 1:
            return False
    return True


def _smallest_irreducible(p, m):
    """Monic irreducible of degree m minimizing (c_{m-1},...,c_0) lexicographically."""
    for k in range(p ** m):
        coeffs = [(k // p ** i) % p for i in range(m)] + [1]
        if _is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------
# The field itself.
# ---------------------------------------------------------------------------

class GF:
    """GF(p^m) for p in {2, 3}; elements are packed ints (see module docstring)."""

    def __init__(self, p: int, m: int):
        if p not in (2, 3):
            raise ValueError(f"unsupported characteristic {p}; only 2 and 3")
        if m < 1 or m % 2 == 0:
            raise ValueError(f"degree must be odd and positive, got {m}")
        if m > 31:
            raise ValueError(f"degree {m} exceeds the supported bound 31")
        self.p = p
        self.m = m
        self.q = p ** m
        self.modulus = _smallest_irreducible(p, m)
        self.coeff_bits = 1 if p == 2 else 2
        self.max_packed = self.pack([p - 1] * m)
        self.key_width = (self.max_packed.bit_length() + 7) // 8
        # r = p^((m+1)/2) is the twist parameter; theta is frobenius^theta_steps
        self.r = p ** ((m + 1) // 2)
        self.theta_steps = (m + 1) // 2 if p == 2 else (m - 1) // 2
        self._exp = None
        self._log = None
        self._add_table = None
        self._generator = None
        if self.q <= TABLE_LIMIT:
            self._build_tables()

    # -- representation ----------------------------------------------------

    def pack(self, coeffs) -> int:
        v = 0
        for i, c in enumerate(coeffs):
            v |= (c % self.p) << (self.coeff_bits * i)
        return v

    def unpack(self, v: int):
        mask = (1 << self.coeff_bits) - 1
        return [(v >> (self.coeff_bits * i)) & mask for i in range(self.m)]

    def elements(self):
        """All field elements, in base-p counting order of coefficient vectors."""
        p, m = self.p, self.m
        for k in range(self.q):
            yield self.pack([(k // p ** i) % p for i in range(m)])

    def units(self):
        for v in self.elements():
            if v:
                yield v

    def rand(self, rng: random.Random) -> int:
        p = self.p
        k = rng.randrange(self.q)
        return self.pack([(k // p ** i) % p for i in range(self.m)])

    def rand_unit(self, rng: random.Random) -> int:
        while True:
            v = self.rand(rng)
            if v:
                return v

    # -- raw arithmetic (table-free) ----------------------------------------

    def _raw_add(self, a, b):
        if self.p == 2:
            return a ^ b
        ca, cb = self.unpack(a), self.unpack(b)
        return self.pack([(x + y) % 3 for x, y in zip(ca, cb)])

    def _raw_neg(self, a):
        if self.p == 2:
            return a
        return self.pack([(-x) % 3 for x in self.unpack(a)])

    def _raw_mul(self, a, b):
        p, m = self.p, self.m
        ca, cb = self.unpack(a), self.unpack(b)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] = (prod[i + j] + x * y) % p
        f = self.modulus
        for d in range(2 * m - 2, m - 1, -1):
            lead = prod[d]
            if lead:
                prod[d] = 0
                for j in range(m):
                    prod[d - m + j] = (prod[d - m + j] - lead * f[j]) % p
        return self.pack(prod[:m])

    # -- table machinery ----------------------------------------------------

    def _build_tables(self):
        q = self.q
        g = self._find_generator()
        exp = [0] * (2 * (q - 1))
        log = [0] * (self.max_packed + 1)
        v = 1
        for i in range(q - 1):
            exp[i] = v
            log[v] = i
            v = self._raw_mul(v, g)
        for i in range(q - 1, 2 * (q - 1)):
            exp[i] = exp[i - (q - 1)]
        self._exp, self._log, self._generator = exp, log, g
        if self.p == 3:
            add = [0] * ((self.max_packed + 1) ** 2)
            stride = self.max_packed + 1
            for a in self.elements():
                for b in self.elements():
                    add[a * stride + b] = self._raw_add(a, b)
            self._add_table = add

    def _find_generator(self):
        q = self.q
        factors = set()
        n = q - 1
        d = 2
        while d * d <= n:
            while n % d == 0:
                factors.add(d)
                n //= d
            d += 1
        if n > 1:
            factors.add(n)
        for g in self.elements():
            if not g:
                continue
            if all(self._raw_pow(g, (q - 1) // f) != 1 for f in factors):
                return g
        raise AssertionError("no multiplicative generator found")

    def _raw_pow(self, a, e):
        acc, base = 1, a
        while e:
            if e & 1:
                acc = self._raw_mul(acc, base)
            base = self._raw_mul(base, base)
            e >>= 1
        return acc

    def generator(self) -> int:
        """Deterministic generator of the multiplicative group."""
        if self._generator is None:
            self._generator = self._find_generator()
        return self._generator

    # -- public arithmetic ---------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return self._add_table[a * (self.max_packed + 1) + b]
        return self._raw_add(a, b)

    def neg(self, a: int) -> int:
        return a if self.p == 2 else self._raw_neg(a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._raw_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        if self._exp is not None:
            return self._exp[(self.q - 1) - self._log[a]]
        return self._raw_pow(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 0 if e else 1
        e %= self.q - 1
        if self._exp is not None:
            return self._exp[(self._log[a] * e) % (self.q - 1)]
        return self._raw_pow(a, e)

    def frobenius(self, a: int, i: int = 1) -> int:
        """a^(p^i); i is taken mod m."""
        i %= self.m
        return self.pow(a, self.p ** i) if a else 0

    def theta(self, a: int) -> int:
        """The Tits twist: frobenius^((m+1)/2) for p=2, frobenius^((m-1)/2) for p=3."""
        return self.frobenius(a, self.theta_steps)

    def theta_pow(self, a: int, t_coeff: int, const: int = 0) -> int:
        """a^(t_coeff*theta + const) as an integer power of a."""
        e = t_coeff * self.p ** self.theta_steps + const
        return self.pow(a, e)

    # -- misc ---------------------------------------------------------------

    def __repr__(self):
        return f"GF({self.p}^{self.m})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.m) == (other.p, other.m)

    def __hash__(self):
        return hash((self.p, self.m))


@lru_cache(maxsize=None)
def make_field(p: int, m: int) -> GF:
    """Deterministic GF(p^m) instance; repeated calls share one object."""
    return GF(p, m)


def delta_sign(q: int) -> int:
    """The sign d with 5 | q + d*r + 1, for q = 2^m, m odd >= 3."""
    m = q.bit_length() - 1
    if q != 2 ** m or m < 3 or m % 2 == 0:
        raise ValueError(f"q must be 2^m with m odd >= 3, got {q}")
    r = 2 ** ((m + 1) // 2)
    plus = (q + r + 1) % 5 == 0
    minus = (q - r + 1) % 5 == 0
    if plus == minus:
        raise AssertionError(f"exactly one of q+r+1, q-r+1 must be divisible by 5 at q={q}")
    return 1 if plus else -1
