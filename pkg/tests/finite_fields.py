"""Small finite fields GF(p^k), used as a falsification oracle for ideal triviality."""

import itertools

from matchedkit.laurent import LaurentPoly


class GF:
    """GF(p^k) with elements encoded as integers 0..q-1 (base-p digit vectors)."""

    def __init__(self, p, k):
        self.p, self.k, self.q = p, k, p**k
        self.modulus = self._find_irreducible()
        self._mul = {}

    def _digits(self, x):
        return [(x // self.p**i) % self.p for i in range(self.k)]

    def _encode(self, ds):
        return sum(d * self.p**i for i, d in enumerate(ds))

    def _polymulmod(self, a, b, f):
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % self.p
        # f is monic of degree k, given as its k low coefficients
        for d in range(len(prod) - 1, self.k - 1, -1):
            c = prod[d]
            if c:
                prod[d] = 0
                for i, fc in enumerate(f):
                    prod[d - self.k + i] = (prod[d - self.k + i] - c * fc) % self.p
        return prod[: self.k]

    def _find_irreducible(self):
        if self.k == 1:
            return None
        for low in itertools.product(range(self.p), repeat=self.k):
            if low[0] == 0:
                continue
            # brute force: the quotient ring is a field iff it has no zero divisors
            elems = [list(ds) for ds in itertools.product(range(self.p), repeat=self.k)][1:]
            if all(any(self._polymulmod(a, b, low)) for a in elems for b in elems):
                return list(low)
        raise AssertionError("no irreducible polynomial found")

    def add(self, a, b):
        return self._encode([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        key = (a, b)
        if key not in self._mul:
            self._mul[key] = self._encode(self._polymulmod(self._digits(a), self._digits(b), self.modulus))
        return self._mul[key]

    def from_int(self, n):
        return n % self.p

    def power(self, a, e):
        e %= self.q - 1
        r = 1
        for _ in range(e):
            r = self.mul(r, a)
        return r

    def units(self):
        return range(1, self.q)

    def evaluate(self, f: LaurentPoly, a):
        acc = 0
        for e, c in f.terms:
            acc = self.add(acc, self.mul(self.from_int(c), self.power(a, e)))
        return acc


def prime_powers(limit):
    out = []
    for q in range(2, limit + 1):
        for p in range(2, q + 1):
            if all(p % d for d in range(2, p)):
                k, x = 0, q
                while x % p == 0:
                    x //= p
                    k += 1
                if x == 1:
                    out.append((p, k))
                    break
                if q % p == 0:
                    break
    return out


FIELDS = [GF(p, k) for p, k in prime_powers(49)]


def killing_homomorphism(gens):
    """Return (q, image of t) for a map to some F_q killing every generator, or None."""
    for field in FIELDS:
        for a in field.units():
            if all(field.evaluate(g, a) == 0 for g in gens):
                return field.q, a
    return None
