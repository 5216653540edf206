"""Places of the rational function field F_r(t) and of Q, and set statistics.

Function-field places are monic irreducible polynomials over GF(r) plus the
place at infinity; number-field places are rational primes, kept symbolic.
The logarithm convention follows the two cases throughout: base r for
function fields (so log N(p) = deg p) and natural log for rational primes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .ff import GF, Poly, _is_prime, _prime_factors


def is_prime_power(r):
    if r < 2:
        return False
    fs = _prime_factors(r)
    return len(fs) == 1


def prime_power_split(r):
    """r = p^e; returns (p, e)."""
    if not is_prime_power(r):
        raise ValueError(f"{r} is not a prime power")
    p = _prime_factors(r)[0]
    e = 0
    while r > 1:
        r //= p
        e += 1
    return p, e


@dataclass(frozen=True)
class Place:
    """A place of F_r(t) (finite or infinite) or a rational prime of Q."""

    kind: str                   # "finite", "infinity", "rational-prime"
    r: int | None = None        # base field size (function-field kinds)
    poly: Poly | None = None    # monic irreducible (kind == "finite")
    prime: int | None = None    # kind == "rational-prime"

    @staticmethod
    def finite(poly):
        if not poly.is_monic() or not poly.is_irreducible():
            raise ValueError("finite place requires a monic irreducible")
        return Place("finite", r=poly.field.q, poly=poly)

    @staticmethod
    def infinity(r):
        return Place("infinity", r=r)

    @staticmethod
    def rational(p):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        return Place("rational-prime", prime=p)

    @property
    def degree(self):
        if self.kind == "finite":
            return self.poly.degree
        return 1

    @property
    def norm(self):
        if self.kind == "rational-prime":
            return self.prime
        return self.r ** self.degree

    def log_norm(self):
        """log N(p) in the case convention: deg p (CF), ln p (CN)."""
        if self.kind == "rational-prime":
            return math.log(self.prime)
        return self.degree

    @property
    def is_function_field(self):
        return self.kind != "rational-prime"

    def serialize(self):
        if self.kind == "rational-prime":
            return str(self.prime)
        if self.kind == "infinity":
            return f"inf@GF({self.r})"
        return f"{self.poly.as_string('t')}@GF({self.r})"

    def __repr__(self):
        return self.serialize()

    def sort_key(self):
        if self.kind == "rational-prime":
            return (0, self.prime, 0)
        if self.kind == "infinity":
            return (1, 0, 0)
        F = self.poly.field
        idx = sum(F.to_int(c) * F.q ** i for i, c in enumerate(self.poly.coeffs))
        return (2, self.degree, idx)


def parse_place(s):
    """Inverse of Place.serialize."""
    s = s.strip()
    if "@" not in s:
        return Place.rational(int(s))
    body, gf = s.split("@")
    r = int(gf[3:-1])
    if body == "inf":
        return Place.infinity(r)
    return Place.finite(parse_poly(body, base_field(r)))


def parse_poly(s, F):
    """Parse 'c*t^k+...' with integer coefficients given by field index."""
    coeffs = {}
    for term in s.replace("-", "+-").split("+"):
        term = term.strip()
        if not term:
            continue
        neg = term.startswith("-")
        if neg:
            term = term[1:]
        if "t" not in term:
            c, k = int(term), 0
        else:
            head, _, tail = term.partition("t")
            c = int(head.rstrip("*")) if head.rstrip("*") else 1
            k = int(tail[1:]) if tail.startswith("^") else 1
        val = F.from_int(c % F.q)
        if neg:
            val = F.neg(val)
        coeffs[k] = F.add(coeffs.get(k, F.zero()), val)
    deg = max(coeffs) if coeffs else 0
    return Poly([coeffs.get(i, F.zero()) for i in range(deg + 1)], F)


@lru_cache(maxsize=None)
def base_field(r):
    p, e = prime_power_split(r)
    return GF(p, e)


ENUMERATION_CAP = 200_000   # max r^d workload for exhaustive place enumeration
IMPLEMENTATION_CAP_R = 49   # documented cap on the base field size


def enumerate_places(r, d):
    """All places of F_r(t) of degree d (including infinity when d == 1)."""
    if not is_prime_power(r) or r > IMPLEMENTATION_CAP_R:
        raise ValueError(f"r must be a prime power <= {IMPLEMENTATION_CAP_R}")
    if d < 1:
        raise ValueError("d must be >= 1")
    if r ** d > ENUMERATION_CAP:
        raise ValueError(f"enumeration workload r^d > {ENUMERATION_CAP}")
    F = base_field(r)
    out = []
    if d == 1:
        out.append(Place.infinity(r))
    from .ff import monic_polys
    for f in monic_polys(F, d):
        if f.is_irreducible():
            out.append(Place("finite", r=r, poly=f))
    out.sort(key=Place.sort_key)
    return out


def count_places_degree(r, d):
    """Number of places of F_r(t) of degree d (Gauss count, + infinity at d=1)."""
    if not is_prime_power(r):
        raise ValueError(f"{r} is not a prime power")
    if d < 1:
        raise ValueError("d must be >= 1")
    total = 0
    for e in _divisors(d):
        total += _moebius(e) * r ** (d // e)
    n = total // d
    if d == 1:
        n += 1
    return n


def weil_floor(r, g, d):
    """Lower bound r^d/d - 2(2g+1) r^(d/2) for the degree-d place count."""
    return r ** d / d - 2 * (2 * g + 1) * r ** (d / 2)


@dataclass(frozen=True)
class PlaceSet:
    places: frozenset = field(default_factory=frozenset)

    @staticmethod
    def of(*places):
        return PlaceSet(frozenset(places))

    def __iter__(self):
        return iter(sorted(self.places, key=Place.sort_key))

    def __len__(self):
        return len(self.places)

    def __contains__(self, p):
        return p in self.places

    def union(self, other):
        return PlaceSet(self.places | other.places)

    def difference(self, other):
        return PlaceSet(self.places - set(other))

    def check_homogeneous(self):
        kinds = {p.is_function_field for p in self.places}
        rs = {p.r for p in self.places if p.is_function_field}
        if len(kinds) > 1 or len(rs) > 1:
            raise ValueError("mixed bases in place set")


@dataclass(frozen=True)
class PlaceSetStats:
    pi: float
    pi_plus: float
    a_S: int
    cardinality: int
    log_base: str   # "r" or "e"


def log_plus(x, base=math.e):
    """log^+ x: log x if x >= 1 else 0, in the given base."""
    if x < 1:
        return 0.0
    return math.log(x) / math.log(base)


def place_set_stats(S):
    """pi(S), pi'(S), a_S, |S|. Empty set: pi = 0, pi' = 0, a_S = 1."""
    S.check_homogeneous()
    if len(S) == 0:
        return PlaceSetStats(0.0, 0.0, 1, 0, "e")
    ps = list(S)
    if ps[0].is_function_field:
        r = ps[0].r
        pi = float(sum(p.degree for p in ps))
        a = 0
        for p in ps:
            a = math.gcd(a, p.degree)
        return PlaceSetStats(pi, log_plus(pi, base=r), a, len(ps), "r")
    pi = sum(math.log(p.prime) for p in ps)
    return PlaceSetStats(pi, log_plus(pi), 1, len(ps), "e")


def _divisors(n):
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def _moebius(n):
    if n == 1:
        return 1
    m = 1
    for p in _prime_factors(n):
        if n % (p * p) == 0:
            return 0
        m = -m
    return m
