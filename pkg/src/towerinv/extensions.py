"""Cyclic extension steps of F_r(t): Kummer and Artin-Schreier.

Provides place decomposition (residue tests, cross-checkable against direct
factorization over residue fields), exact genus via Riemann-Hurwitz, and
exhaustive decomposition censuses.  Censuses beyond the direct-enumeration
cap are lifted exactly through the zeta function of the cover (the cover is
cyclic of prime degree, so split/inert/ramified counts per degree are
determined by the place counts of the extension field); per-conjugacy-class
counts for Kummer steps go through the character L-polynomials.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from .ff import FiniteField, Poly, factor_poly, is_power_residue
from .places import (Place, base_field, count_places_degree, enumerate_places,
                     prime_power_split, _divisors)


class UnsupportedStep(ValueError):
    pass


@dataclass(frozen=True)
class RatFunc:
    """Rational function num/den over GF(r), den monic, gcd(num, den) = 1."""

    num: Poly
    den: Poly

    @staticmethod
    def of(num, den=None):
        F = num.field
        if den is None:
            den = Poly.one(F)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not num.is_zero():
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num // g, den // g
        lead_inv = F.inv(den.leading())
        return RatFunc(num.scale(lead_inv), den.monic())

    @staticmethod
    def from_poly(p):
        return RatFunc.of(p)

    @property
    def field(self):
        return self.num.field

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def is_zero(self):
        return self.num.is_zero()

    def __sub__(self, other):
        return RatFunc.of(self.num * other.den - other.num * self.den,
                          self.den * other.den)

    def __add__(self, other):
        return RatFunc.of(self.num * other.den + other.num * self.den,
                          self.den * other.den)

    def __pow__(self, n):
        return RatFunc.of(self.num ** n, self.den ** n)

    def valuation(self, place):
        """v_p(self); at infinity v = deg den - deg num."""
        if self.is_zero():
            raise ValueError("valuation of zero")
        if place.kind == "infinity":
            return self.den.degree - self.num.degree
        v = 0
        n = self.num
        while (n % place.poly).is_zero():
            n = n // place.poly
            v += 1
        d = self.den
        while (d % place.poly).is_zero():
            d = d // place.poly
            v -= 1
        return v

    def twisted_residue(self, place):
        """(v, residue of self * pi^(-v)) in the residue field at place.

        The uniformizer pi is place.poly for finite places and 1/t at
        infinity; the residue is nonzero by construction.
        """
        if place.kind == "infinity":
            v = self.den.degree - self.num.degree
            F = self.field
            return v, F.div(self.num.leading(), self.den.leading())
        k = residue_field(place)
        n, d, v = self.num, self.den, 0
        while (n % place.poly).is_zero():
            n = n // place.poly
            v += 1
        while (d % place.poly).is_zero():
            d = d // place.poly
            v -= 1
        xbar = gen_of(k)
        return v, k.div(n.evaluate(xbar, in_field=k),
                        d.evaluate(xbar, in_field=k))

    def as_string(self):
        if self.den.degree == 0:
            return self.num.as_string()
        return f"({self.num.as_string()})/({self.den.as_string()})"

    def pole_places(self):
        """[(place, order)] over all poles, including infinity."""
        out = []
        _, facs = factor_poly(self.den)
        for f, m in facs:
            out.append((Place("finite", r=self.field.q, poly=f), m))
        v_inf = self.den.degree - self.num.degree
        if v_inf < 0:
            out.append((Place.infinity(self.field.q), -v_inf))
        return out


@lru_cache(maxsize=None)
def _residue_field_cached(r, modulus):
    return FiniteField.extension(base_field(r), modulus)


def residue_field(place):
    """Residue field at a place of F_r(t), built as GF(r)[t]/(p)."""
    if place.kind == "infinity":
        return base_field(place.r)
    return _residue_field_cached(place.r, place.poly.coeffs)


def gen_of(k):
    """Class of t in GF(r)[t]/(p): the polynomial x for deg p >= 2, else -c0."""
    if k.k == 1:
        return k.scalar(k.base.neg(k.modulus[0]))
    return (k.base.zero(), k.base.one()) + (k.base.zero(),) * (k.k - 2)


@dataclass(frozen=True)
class DecompositionType:
    e: int
    f: int
    g: int

    @property
    def kind(self):
        if self.e > 1:
            return "ramified"
        if self.f > 1:
            return "inert"
        return "split"


@dataclass(frozen=True)
class ExtensionSpec:
    """One cyclic step over F_r(t): y^ell = gen (Kummer) or
    y^p - y = gen (Artin-Schreier, normalized)."""

    kind: str          # "kummer" | "artin_schreier"
    ell: int           # step degree (= p for artin_schreier)
    gen: RatFunc
    r: int

    @property
    def degree(self):
        return self.ell

    def serialize(self):
        return {"kind": self.kind, "ell": self.ell,
                "generator": self.gen.as_string(), "base": f"GF({self.r})(t)"}


def kummer_step(ell, gen, r):
    if (r - 1) % ell != 0:
        raise UnsupportedStep(f"kummer step needs ell | r-1 (ell={ell}, r={r})")
    if isinstance(gen, Poly):
        gen = RatFunc.from_poly(gen)
    if gen.is_zero() or gen.is_constant():
        raise ValueError("constant generator: constant-field extension rejected")
    if _is_ell_power(gen, ell):
        raise ValueError("generator is an ell-th power")
    spec = ExtensionSpec("kummer", ell, gen, r)
    if not ramification_locus(spec):
        raise ValueError("everywhere-unramified generator: "
                         "constant-field extension rejected")
    return spec


def artin_schreier_step(gen, r, depth=10):
    p, _ = prime_power_split(r)
    if isinstance(gen, Poly):
        gen = RatFunc.from_poly(gen)
    if gen.is_zero() or gen.is_constant():
        raise ValueError("constant generator: constant-field extension rejected")
    gen = _as_normalize(gen, p, depth)
    return ExtensionSpec("artin_schreier", p, gen, r)


def _is_ell_power(f, ell):
    F = f.field
    _, nf = factor_poly(f.num)
    _, df = factor_poly(f.den)
    if any(m % ell for _, m in nf) or any(m % ell for _, m in df):
        return False
    c = F.div(f.num.leading(), f.den.leading())
    return is_power_residue(c, ell, F)


def _as_normalize(u, p, depth):
    """Reduce pole orders of u by u -> u - (w^p - w) until coprime to p."""
    F = u.field
    for _ in range(depth):
        bad = [(pl, m) for pl, m in u.pole_places() if m % p == 0]
        if not bad:
            if u.is_constant() or u.is_zero():
                raise ValueError("generator normalizes to a constant")
            return u
        place, m = bad[0]
        mp = m // p
        if place.kind == "infinity":
            alpha = F.div(u.num.leading(), u.den.leading())
            beta = F.pth_root(alpha)
            w = RatFunc.from_poly(Poly([F.zero()] * mp + [beta], F))
        else:
            k = residue_field(place)
            _, alpha = u.twisted_residue(place)
            beta = k.pth_root(alpha)
            w = RatFunc.of(_lift(beta, k, F), place.poly ** mp)
        u = u - (w ** p - w)
        if u.is_zero():
            raise ValueError("generator normalizes to zero")
    raise ValueError("unnormalized")


def _lift(a, k, F):
    """Lift an element of GF(r)[t]/(p) to the polynomial of degree < deg p."""
    return Poly(list(a), F)


def decompose_place(spec, place, e_cum=1, f_cum=1):
    """Decomposition type of a place in the cyclic step.

    (e_cum, f_cum) describe a place of an intermediate level lying over the
    base place; the default (1, 1) decomposes the base place itself.
    """
    if place.r != spec.r:
        raise ValueError("place does not belong to the spec's base field")
    ell = spec.ell
    v_base = spec.gen.valuation(place)
    v = e_cum * v_base

    if spec.kind == "kummer":
        if v % ell != 0:
            return DecompositionType(ell, 1, 1)
        if v_base != 0 and e_cum > 1:
            raise UnsupportedStep(
                "ramified-below place meets the generator's divisor; "
                "residue class is not determined by base data")
        k = residue_field(place)
        _, r0 = spec.gen.twisted_residue(place)
        q_eff = spec.r ** (place.degree * f_cum)
        exp = (q_eff - 1) // math.gcd(ell, q_eff - 1)
        if k.pow(r0, exp) == k.one():
            return DecompositionType(1, 1, ell)
        return DecompositionType(1, ell, 1)

    # Artin-Schreier step of degree p
    p = ell
    if v_base < 0:
        if (-v) % p != 0:
            return DecompositionType(p, 1, 1)
        raise ValueError("unnormalized")
    k = residue_field(place)
    if v_base > 0:
        tr = 0   # generator vanishes at the place
    else:
        _, r0 = spec.gen.twisted_residue(place)
        tr = k.absolute_trace(r0)
    tr = (f_cum % p) * tr % p
    if tr == 0:
        return DecompositionType(1, 1, p)
    return DecompositionType(1, p, 1)


def decompose_by_factorization(spec, place):
    """Brute-force oracle: factor the defining polynomial over the residue
    field and read off the decomposition type."""
    ell = spec.ell
    k = residue_field(place)
    v, r0 = spec.gen.twisted_residue(place)
    if spec.kind == "kummer":
        w = v % ell
        # z = y * pi^(-(v - w)/ell) satisfies z^ell = gen * pi^(-(v - w));
        # the right side reduces to r0 * pibar^w, which is 0 when w > 0
        const = r0 if w == 0 else k.zero()
        coeffs = [k.neg(const)] + [k.zero()] * (ell - 1) + [k.one()]
    else:
        p = ell
        if v < 0:
            if (-v) % p != 0:
                return DecompositionType(p, 1, 1)
            raise ValueError("unnormalized")
        const = r0 if v == 0 else k.zero()
        coeffs = [k.neg(const), k.neg(k.one())] + \
            [k.zero()] * (p - 2) + [k.one()]
    _, facs = factor_poly(Poly(coeffs, k))
    if any(m > 1 for _, m in facs):
        return DecompositionType(ell, 1, 1)
    degs = sorted(f.degree for f, _ in facs)
    if degs == [1] * ell:
        return DecompositionType(1, 1, ell)
    assert degs == [ell], f"unexpected factorization pattern {degs}"
    return DecompositionType(1, ell, 1)


def ramification_locus(spec):
    """Sorted list of base places ramified in the step."""
    if spec.kind == "kummer":
        ell = spec.ell
        out = []
        _, nf = factor_poly(spec.gen.num)
        _, df = factor_poly(spec.gen.den)
        for f, m in nf + df:
            if m % ell != 0:
                out.append(Place("finite", r=spec.r, poly=f))
        v_inf = spec.gen.den.degree - spec.gen.num.degree
        if v_inf % ell != 0:
            out.append(Place.infinity(spec.r))
        return sorted(set(out), key=Place.sort_key)
    return sorted((pl for pl, _ in spec.gen.pole_places()),
                  key=Place.sort_key)


def exact_genus(spec, base_genus=0, ram_data=None):
    """Exact genus of the step via Riemann-Hurwitz.

    ram_data overrides the ramification data for steps over a non-rational
    level: Kummer expects a list of ramified-place degrees, Artin-Schreier a
    list of (pole order, place degree) pairs.
    """
    ell = spec.ell
    if spec.kind == "kummer":
        if ram_data is None:
            ram_data = [pl.degree for pl in ramification_locus(spec)]
        rhs = ell * (2 * base_genus - 2) + (ell - 1) * sum(ram_data)
        assert rhs % 2 == 0, "Riemann-Hurwitz parity violated"
        g = (rhs + 2) // 2
    else:
        p = ell
        if ram_data is None:
            ram_data = [(m, pl.degree) for pl, m in spec.gen.pole_places()]
        for m, _ in ram_data:
            if m % p == 0:
                raise ValueError("unnormalized")
        total = sum((m + 1) * d for m, d in ram_data)
        num = (p - 1) * (-2 + total)
        assert num % 2 == 0, "Riemann-Hurwitz parity violated"
        g = p * base_genus + num // 2
    if g < 0:
        raise ValueError("invalid spec: negative genus")
    return g


DIRECT_CENSUS_CAP = 20_000   # max r^d for exhaustive place-by-place census
CENSUS_DEGREE_CAP = 16


def _direct_degree(r, d_max):
    d = d_max
    while d > 0 and r ** d > DIRECT_CENSUS_CAP:
        d -= 1
    return d


def decomposition_census(spec, d_max):
    """{degree: {"split": n, "inert": n, "ramified": n}} for degrees <= d_max.

    Degrees with r^d below the direct cap are classified place by place;
    larger degrees are derived exactly from the zeta function of the cover.
    """
    if d_max > CENSUS_DEGREE_CAP:
        raise ValueError(f"census degree cap {CENSUS_DEGREE_CAP} exceeded")
    r, ell = spec.r, spec.ell
    out = {}
    d_direct = _direct_degree(r, d_max)
    for d in range(1, min(d_direct, d_max) + 1):
        counts = {"split": 0, "inert": 0, "ramified": 0}
        for pl in enumerate_places(r, d):
            counts[decompose_place(spec, pl).kind] += 1
        out[d] = counts
    if d_direct >= d_max:
        return out

    ram = {}
    for pl in ramification_locus(spec):
        ram[pl.degree] = ram.get(pl.degree, 0) + 1
    g_top = exact_genus(spec)
    if g_top > d_direct:
        raise ValueError("census cap: cover genus exceeds the direct range")
    a_top = _cover_place_counts(spec, out, g_top, d_max, ram)
    for d in range(d_direct + 1, d_max + 1):
        ram_d = ram.get(d, 0)
        inert_below = out[d // ell]["inert"] if d % ell == 0 else 0
        num = a_top[d] - ram_d - inert_below
        assert num % ell == 0, "cover place counts inconsistent with census"
        split = num // ell
        total = count_places_degree(r, d)
        out[d] = {"split": split, "inert": total - split - ram_d,
                  "ramified": ram_d}
    return out


def _cover_place_counts(spec, direct_census, g_top, d_max, ram):
    """Place counts a_d of the extension field for d <= d_max.

    Degrees in the direct range come from the base census (a split place
    contributes ell cover places of the same degree, a ramified place one,
    and an inert place of degree d/ell one); the rest come from the zeta
    numerator, pinned down by the first g_top point counts together with
    the functional equation.
    """
    r, ell = spec.r, spec.ell
    a = {}
    for d, c in direct_census.items():
        a[d] = ell * c["split"] + ram.get(d, 0) + \
            (direct_census[d // ell]["inert"] if d % ell == 0 else 0)
    # power sums T_m = sum of alpha_i^m over the 2g inverse zeta roots
    T = {0: 2 * g_top}
    for m in range(1, g_top + 1):
        N_m = sum(e * a[e] for e in _divisors(m))
        T[m] = (r ** m + 1) - N_m
    # numerator P(X) = prod (1 - alpha_i X) = sum b_k X^k via Newton,
    # completed by the functional equation b_k = r^(k-g) b_(2g-k)
    b = [1] + [0] * (2 * g_top)
    for k in range(1, g_top + 1):
        acc = sum(T[i] * b[k - i] for i in range(1, k + 1))
        assert acc % k == 0
        b[k] = -acc // k
    for k in range(g_top + 1, 2 * g_top + 1):
        b[k] = r ** (k - g_top) * b[2 * g_top - k]
    for m in range(g_top + 1, d_max + 1):
        acc = sum(b[i] * T[m - i]
                  for i in range(1, min(m - 1, 2 * g_top) + 1))
        if m <= 2 * g_top:
            acc += m * b[m]
        T[m] = -acc
    for d in range(1, d_max + 1):
        if d in a:
            continue
        N_d = r ** d + 1 - T[d]
        lower = sum(e * a[e] for e in _divisors(d) if e < d)
        assert (N_d - lower) % d == 0
        a[d] = (N_d - lower) // d
    return a


def frobenius_class_census(spec, d_max):
    """Per-class counts {degree: [n_0, ..., n_(ell-1)]} for a Kummer step.

    Class j acts on y by multiplication by zeta^j, for the primitive ell-th
    root zeta of GF(r) derived from the deterministic generator.  Counts
    cover unramified places only and are exact: low degrees are classified
    directly, the rest recovered from the character L-polynomials.
    """
    if spec.kind != "kummer":
        raise UnsupportedStep("class census implemented for Kummer steps")
    if d_max > CENSUS_DEGREE_CAP:
        raise ValueError(f"census degree cap {CENSUS_DEGREE_CAP} exceeded")
    r, ell = spec.r, spec.ell
    F = base_field(r)
    zeta_f = _primitive_root_of_unity(F, ell)
    ram_places = set(ramification_locus(spec))
    D = sum(pl.degree for pl in ram_places) - 2   # degree of each L(X, chi^a)
    zc = cmath.exp(2j * cmath.pi / ell)

    def char_index(place):
        k = residue_field(place)
        _, r0 = spec.gen.twisted_residue(place)
        val = k.pow(r0, (k.q - 1) // ell)
        cand = F.one()
        for j in range(ell):
            emb = cand if k is F else k.scalar(cand)
            if val == emb:
                return j
            cand = F.mul(cand, zeta_f)
        raise AssertionError("character value is not an ell-th root of unity")

    d_direct = max(_direct_degree(r, d_max), min(D, d_max))
    if D > 0 and r ** D > DIRECT_CENSUS_CAP:
        raise ValueError("census cap: conductor exceeds the direct range")
    counts = {}
    for d in range(1, min(d_direct, d_max) + 1):
        n = [0] * ell
        for pl in enumerate_places(r, d):
            if pl not in ram_places:
                n[char_index(pl)] += 1
        counts[d] = n
    if d_direct >= d_max:
        return counts

    # character power sums c_m(a) = sum_{e | m} e * sum_{deg-e places P}
    # zeta^(a j(P) m/e); these equal -(sum of L-root powers beta_i^m)
    def c_direct(m, a):
        acc = 0j
        for e in _divisors(m):
            for j in range(ell):
                acc += e * counts[e][j] * zc ** (a * j * (m // e))
        return acc

    c_all = {}
    for a in range(1, ell):
        U = {0: complex(D)}   # U_m = sum of beta_i^m = -c_m(a)
        for m in range(1, D + 1):
            U[m] = -c_direct(m, a)
        b = [1 + 0j] + [0j] * D
        for k in range(1, D + 1):
            acc = sum(U[i] * b[k - i] for i in range(1, k + 1))
            b[k] = -acc / k
        for m in range(max(D, 1), d_max + 1):
            if m <= D:
                continue
            acc = sum(b[i] * U[m - i] for i in range(1, min(m, D) + 1))
            U[m] = -acc
        c_all[a] = {m: -U[m] for m in range(1, d_max + 1) if m in U}

    census = decomposition_census(spec, d_max)
    for d in range(min(d_direct, d_max) + 1, d_max + 1):
        unram = census[d]["split"] + census[d]["inert"]
        S = [complex(unram)]
        for a in range(1, ell):
            lower = 0j
            for e in _divisors(d):
                if e == d:
                    continue
                for j in range(ell):
                    lower += e * counts[e][j] * zc ** (a * j * (d // e))
            S.append((c_all[a][d] - lower) / d)
        n = []
        for j in range(ell):
            val = sum(S[a] * zc ** (-a * j) for a in range(ell)) / ell
            n.append(round(val.real))
        assert sum(n) == unram, "class counts do not sum to the census"
        counts[d] = n
    return counts


def _primitive_root_of_unity(F, ell):
    g = F.multiplicative_generator()
    return F.pow(g, (F.q - 1) // ell)
