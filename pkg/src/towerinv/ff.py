"""Exact arithmetic in small finite fields and univariate polynomials over them.

Fields are either prime fields GF(p) (elements are ints 0..p-1) or extension
fields base[x]/(m) for an irreducible monic modulus m over an arbitrary base
field (elements are fixed-length tuples of base-field elements, little-endian).
Towers are allowed, so the residue field of a degree-d place of F_r(t) can be
built directly as GF(r)[t]/(p) even when r itself is a prime power.

Everything here is immutable and pure; all randomized steps (equal-degree
splitting) take an explicit seed so results are reproducible.
"""

from __future__ import annotations

import math
import random
from functools import lru_cache


class FiniteField:
    """A finite field, either GF(p) or an extension of another FiniteField.

    For an extension, ``modulus`` is a tuple of base-field elements
    (little-endian, monic, irreducible over the base).
    """

    def __init__(self, p, modulus=None, base=None):
        if modulus is None:
            if not _is_prime(p):
                raise ValueError("characteristic must be prime")
            self.p = p
            self.base = None
            self.modulus = None
            self.k = 1
            self.q = p
        else:
            assert base is not None
            self.base = base
            self.p = base.p
            modulus = tuple(modulus)
            if len(modulus) < 2 or modulus[-1] != base.one():
                raise ValueError("modulus must be monic of degree >= 1")
            self.modulus = modulus
            self.k = len(modulus) - 1
            self.q = base.q ** self.k

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def prime(p):
        return FiniteField(p)

    @staticmethod
    def extension(base, modulus):
        return FiniteField(base.p, modulus=modulus, base=base)

    def __eq__(self, other):
        return (isinstance(other, FiniteField)
                and self.p == other.p and self.modulus == other.modulus
                and self.base == other.base)

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        return f"GF({self.q})"

    # -- element basics ------------------------------------------------------

    def zero(self):
        if self.base is None:
            return 0
        return (self.base.zero(),) * self.k

    def one(self):
        if self.base is None:
            return 1 % self.p
        return (self.base.one(),) + (self.base.zero(),) * (self.k - 1)

    def scalar(self, a):
        """Embed a base-field element (or an int into GF(p)) as a constant."""
        if self.base is None:
            return a % self.p
        return (a,) + (self.base.zero(),) * (self.k - 1)

    def from_int(self, n):
        """Element with index n in the deterministic enumeration (0 <= n < q)."""
        if self.base is None:
            return n % self.p
        digits = []
        b = self.base.q
        for _ in range(self.k):
            digits.append(self.base.from_int(n % b))
            n //= b
        return tuple(digits)

    def to_int(self, a):
        if self.base is None:
            return a
        n = 0
        for c in reversed(a):
            n = n * self.base.q + self.base.to_int(c)
        return n

    def elements(self):
        for n in range(self.q):
            yield self.from_int(n)

    def is_zero(self, a):
        return a == self.zero()

    # -- arithmetic ----------------------------------------------------------

    def add(self, a, b):
        if self.base is None:
            return (a + b) % self.p
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        if self.base is None:
            return (a - b) % self.p
        return tuple(self.base.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        if self.base is None:
            return (-a) % self.p
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, b):
        if self.base is None:
            return (a * b) % self.p
        F = self.base
        prod = [F.zero()] * (2 * self.k - 1)
        for i, x in enumerate(a):
            if F.is_zero(x):
                continue
            for j, y in enumerate(b):
                prod[i + j] = F.add(prod[i + j], F.mul(x, y))
        # reduce mod modulus (monic)
        for i in range(len(prod) - 1, self.k - 1, -1):
            c = prod[i]
            if F.is_zero(c):
                continue
            for j in range(self.k):
                prod[i - self.k + j] = F.sub(prod[i - self.k + j],
                                             F.mul(c, self.modulus[j]))
        return tuple(prod[:self.k])

    def pow(self, a, n):
        if n < 0:
            return self.pow(self.inv(a), -n)
        if self.base is None:
            return pow(a, n, self.p)
        result = self.one()
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        # q is small; Lagrange is fine and avoids a second euclidean routine
        return self.pow(a, self.q - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    # -- structure -----------------------------------------------------------

    def frobenius(self, a):
        return self.pow(a, self.p)

    def absolute_trace(self, a):
        """Trace down to the prime field, returned as an int in 0..p-1."""
        n = _log_int(self.q, self.p)
        t = a
        s = a
        for _ in range(n - 1):
            t = self.pow(t, self.p)
            s = self.add(s, t)
        # s lies in the prime field: constant coordinate all the way down
        x = s
        while not isinstance(x, int):
            x = x[0]
        return x

    def pth_root(self, a):
        return self.pow(a, self.q // self.p)

    def multiplicative_generator(self):
        for n in range(1, self.q):
            g = self.from_int(n)
            if _mult_order(self, g) == self.q - 1:
                return g
        raise RuntimeError("no generator found")  # pragma: no cover


def _mult_order(F, g):
    n = F.q - 1
    order = n
    for ell in _prime_factors(n):
        while order % ell == 0 and F.pow(g, order // ell) == F.one():
            order //= ell
    return order


def is_power_residue(a, ell, F):
    """True iff a is an ell-th power in F (a nonzero, ell prime)."""
    if F.is_zero(a):
        raise ValueError("zero input")
    e = (F.q - 1) // math.gcd(ell, F.q - 1)
    return F.pow(a, e) == F.one()


def absolute_trace(a, F):
    return F.absolute_trace(a)


@lru_cache(maxsize=None)
def GF(p, k=1):
    """GF(p^k) with a deterministic modulus.

    The modulus is the first monic irreducible of degree k over GF(p) in the
    enumeration by ascending coefficient index (c_0 + c_1*p + ...).
    """
    Fp = FiniteField(p)
    if k == 1:
        return Fp
    for n in range(p ** k):
        coeffs = []
        m = n
        for _ in range(k):
            coeffs.append(m % p)
            m //= p
        mod = tuple(coeffs) + (1,)
        if _is_irreducible_coeffs(Fp, mod):
            return FiniteField.extension(Fp, mod)
    raise RuntimeError("no irreducible modulus found")  # pragma: no cover


def _is_irreducible_coeffs(F, coeffs):
    return Poly(coeffs, F).is_irreducible()


def _is_prime(n):
    if n < 2:
        return False
    for d in range(2, int(math.isqrt(n)) + 1):
        if n % d == 0:
            return False
    return True


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _log_int(q, p):
    n = 0
    while q > 1:
        q //= p
        n += 1
    return n


class Poly:
    """Univariate polynomial over a FiniteField, canonical (no trailing zeros).

    The zero polynomial has empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs, field, normalize=True):
        self.field = field
        coeffs = list(coeffs)
        if normalize:
            while coeffs and field.is_zero(coeffs[-1]):
                coeffs.pop()
        self.coeffs = tuple(coeffs)

    @staticmethod
    def from_ints(ints, field):
        return Poly([field.from_int(i) for i in ints], field)

    @staticmethod
    def zero(field):
        return Poly([], field)

    @staticmethod
    def one(field):
        return Poly([field.one()], field)

    @staticmethod
    def x(field):
        return Poly([field.zero(), field.one()], field)

    @staticmethod
    def constant(c, field):
        return Poly([c], field)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def leading(self):
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self):
        return not self.is_zero() and self.leading() == self.field.one()

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.coeffs, self.field))

    def __add__(self, other):
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [F.zero()] * (n - len(self.coeffs))
        b = list(other.coeffs) + [F.zero()] * (n - len(other.coeffs))
        return Poly([F.add(x, y) for x, y in zip(a, b)], F)

    def __sub__(self, other):
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [F.zero()] * (n - len(self.coeffs))
        b = list(other.coeffs) + [F.zero()] * (n - len(other.coeffs))
        return Poly([F.sub(x, y) for x, y in zip(a, b)], F)

    def __neg__(self):
        return Poly([self.field.neg(c) for c in self.coeffs], self.field)

    def __mul__(self, other):
        F = self.field
        if self.is_zero() or other.is_zero():
            return Poly.zero(F)
        prod = [F.zero()] * (self.degree + other.degree + 1)
        for i, x in enumerate(self.coeffs):
            if F.is_zero(x):
                continue
            for j, y in enumerate(other.coeffs):
                prod[i + j] = F.add(prod[i + j], F.mul(x, y))
        return Poly(prod, F)

    def scale(self, c):
        F = self.field
        return Poly([F.mul(c, x) for x in self.coeffs], F)

    def __divmod__(self, other):
        F = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = self.degree - other.degree
        if dq < 0:
            return Poly.zero(F), self
        quot = [F.zero()] * (dq + 1)
        inv_lead = F.inv(other.leading())
        for i in range(dq, -1, -1):
            c = F.mul(rem[other.degree + i], inv_lead)
            quot[i] = c
            if not F.is_zero(c):
                for j, b in enumerate(other.coeffs):
                    rem[i + j] = F.sub(rem[i + j], F.mul(c, b))
        return Poly(quot, F), Poly(rem, F)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, n):
        result = Poly.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def pow_mod(self, n, mod):
        result = Poly.one(self.field)
        base = self % mod
        while n:
            if n & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            n >>= 1
        return result

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        if a.is_zero():
            return a
        return a.monic()

    def monic(self):
        if self.is_zero():
            raise ValueError("zero polynomial")
        return self.scale(self.field.inv(self.leading()))

    def derivative(self):
        F = self.field
        out = []
        for i, c in enumerate(self.coeffs[1:], start=1):
            m = F.scalar(i % F.p) if F.base is not None else (i % F.p)
            out.append(F.mul(m, c))
        return Poly(out, F)

    def evaluate(self, x, in_field=None):
        """Evaluate at x. With in_field set, coefficients are embedded as
        constants of that extension field (in_field must extend self.field)."""
        F = in_field if in_field is not None else self.field
        if in_field is not None:
            coeffs = [in_field.scalar(c) if in_field.base == self.field
                      else c for c in self.coeffs]
            if in_field.base != self.field and in_field != self.field:
                raise ValueError("in_field must be an extension of the "
                                 "coefficient field")
        else:
            coeffs = list(self.coeffs)
        acc = F.zero()
        for c in reversed(coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def is_irreducible(self):
        """Rabin test: x^(q^k) = x mod f, and x^(q^(k/l)) - x coprime to f."""
        F = self.field
        k = self.degree
        if k <= 0:
            return False
        if k == 1:
            return True
        x = Poly.x(F)
        xq = x.pow_mod(F.q ** k, self)
        if xq != x % self:
            return False
        for ell in _prime_factors(k):
            h = x.pow_mod(F.q ** (k // ell), self) - x
            if h.is_zero() or self.gcd(h).degree > 0:
                return False
        return True

    def __repr__(self):
        return f"Poly({self.as_string()})"

    def as_string(self, var="t"):
        F = self.field
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if F.is_zero(c):
                continue
            ci = F.to_int(c)
            if i == 0:
                terms.append(str(ci))
            else:
                head = "" if ci == 1 else f"{ci}*"
                terms.append(f"{head}{var}" + (f"^{i}" if i > 1 else ""))
        return "+".join(terms)


def monic_polys(field, degree):
    """All monic polynomials of the given degree, ascending coefficient index."""
    q = field.q
    for n in range(q ** degree):
        coeffs = []
        m = n
        for _ in range(degree):
            coeffs.append(field.from_int(m % q))
            m //= q
        yield Poly(coeffs + [field.one()], field, normalize=False)


def factor_poly(f, seed=0):
    """Factor f into monic irreducibles; returns (unit, [(factor, mult), ...]).

    Squarefree decomposition, then distinct-degree, then seeded
    Cantor-Zassenhaus equal-degree splitting.
    """
    if f.is_zero():
        raise ValueError("zero input")
    F = f.field
    rng = random.Random(seed)
    unit = f.leading()
    f = f.monic()
    factors = {}

    def add_factor(g, mult):
        factors[g] = factors.get(g, 0) + mult

    def squarefree(g, mult):
        if g.degree == 0:
            return
        d = g.derivative()
        if d.is_zero():
            # g = h(x^p): take p-th root of coefficients
            root = Poly([F.pth_root(g.coeffs[i])
                         for i in range(0, g.degree + 1, F.p)], F)
            squarefree(root, mult * F.p)
            return
        c = g.gcd(d)
        w = g // c
        # w is the product of distinct factors not dividing c to higher power
        i = 1
        while w.degree > 0:
            y = w.gcd(c)
            z = w // y
            if z.degree > 0:
                for fac in distinct_degree(z):
                    add_factor(fac, mult * i)
            w = y
            c = c // y
            i += 1
        if c.degree > 0:
            squarefree(c, mult)

    def distinct_degree(g):
        out = []
        x = Poly.x(F)
        h = x
        d = 0
        while g.degree > 0:
            d += 1
            if 2 * d > g.degree:
                out.append(g)
                break
            h = h.pow_mod(F.q, g)
            gd = g.gcd(h - x)
            if gd.degree > 0:
                out.extend(equal_degree(gd, d))
                g = g // gd
                h = h % g
        return out

    def equal_degree(g, d):
        if g.degree == d:
            return [g]
        # split g (product of degree-d irreducibles) into two parts
        while True:
            h = Poly([F.from_int(rng.randrange(F.q))
                      for _ in range(g.degree)], F)
            if h.degree < 1:
                continue
            gd = g.gcd(h)
            if 0 < gd.degree < g.degree:
                return equal_degree(gd, d) + equal_degree(g // gd, d)
            if F.p == 2:
                # trace map splitting in characteristic 2
                n = _log_int(F.q ** d, 2)
                tr = h
                acc = h
                for _ in range(n - 1):
                    tr = tr.pow_mod(2, g)
                    acc = (acc + tr) % g
                w = acc
            else:
                w = h.pow_mod((F.q ** d - 1) // 2, g) - Poly.one(F)
            gd = g.gcd(w)
            if 0 < gd.degree < g.degree:
                return equal_degree(gd, d) + equal_degree(g // gd, d)

    squarefree(f, 1)
    items = sorted(factors.items(),
                   key=lambda kv: (kv[0].degree,
                                   [F.to_int(c) for c in kv[0].coeffs]))
    return unit, items
