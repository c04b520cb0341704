"""Exact sparse integer polynomials and the coset/irreducibility certificates.

Polynomials are exponent -> coefficient maps with arbitrary-precision
coefficients.  The subgroup H of Z[X] generated by 2 Z[X] together with all
X^n - X^m for n, m both prime or both non-prime admits a two-bit parity
invariant, which is what the membership tests here compute; combined with an
Eisenstein witness this certifies that specific polynomials avoid R.H.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class IntPoly:
    """Sparse polynomial in one variable over Z (no zero coefficients stored)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for e, c in terms.items() if isinstance(terms, dict) else terms:
                if e < 0:
                    raise ValueError("negative exponent")
                c = int(c)
                if c:
                    c0 = clean.get(e, 0) + c
                    if c0:
                        clean[int(e)] = c0
                    else:
                        clean.pop(int(e), None)
        self.terms = clean

    @staticmethod
    def zero():
        return IntPoly()

    @staticmethod
    def one():
        return IntPoly({0: 1})

    @staticmethod
    def x_power(e, c=1):
        return IntPoly({e: c})

    @staticmethod
    def from_pairs(pairs):
        return IntPoly({int(e): int(c) for e, c in pairs})

    def to_pairs(self):
        return sorted(self.terms.items())

    def coeff(self, e):
        return self.terms.get(e, 0)

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max(self.terms) if self.terms else -1

    def valuation(self):
        return min(self.terms) if self.terms else None

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return IntPoly(out)

    def __neg__(self):
        return IntPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly({e: c * other for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return IntPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, IntPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e, c in self.to_pairs():
            if e == 0:
                bits.append(str(c))
            else:
                head = "" if c == 1 else ("-" if c == -1 else f"{c}*")
                bits.append(f"{head}X^{e}" if e > 1 else f"{head}X")
        return " + ".join(bits).replace("+ -", "- ")


# -- primality ---------------------------------------------------------------

_SIEVE = bytearray([0, 0, 1, 1])  # sieve[i] = 1 iff i is prime

_MR_BASES = (2, 3, 5, 7, 11, 13, 17)
_MR_LIMIT = 341_550_071_728_321  # the base battery above is exact below this


def _grow_sieve(limit):
    global _SIEVE
    if limit < len(_SIEVE):
        return
    n = max(limit + 1, 2 * len(_SIEVE))
    s = bytearray([1]) * n
    s[0:2] = b"\x00\x00"
    for p in range(2, int(n**0.5) + 1):
        if s[p]:
            s[p * p :: p] = bytearray(len(range(p * p, n, p)))
    _SIEVE = s


def is_prime_exponent(e):
    """Primality of small exponents via a cached sieve."""
    _grow_sieve(e)
    return bool(_SIEVE[e])


def is_prime(n):
    """Deterministic primality test, exact for n below 3.4e14."""
    n = int(n)
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    if n < 41 * 41:
        return True
    if n >= _MR_LIMIT:
        raise ValueError(f"{n} is beyond the deterministic primality range")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeSearchError(RuntimeError):
    """The bounded search did not reach a prime in the progression."""


def find_prime_neg_one_mod(modulus, search_cap=1_000_000):
    """Smallest prime congruent to -1 mod the modulus, searching k*modulus - 1."""
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    for k in range(1, search_cap + 1):
        cand = k * modulus - 1
        if cand >= 2 and is_prime(cand):
            return cand
    raise PrimeSearchError(
        f"no prime congruent to -1 mod {modulus} within {search_cap} candidates"
    )


# -- the parity invariant of H -------------------------------------------------


@dataclass(frozen=True)
class ParityProfile:
    """Parities of the counts of odd-coefficient monomials X^j, split by
    whether the exponent j is prime."""

    nonprime_count_parity: int
    prime_count_parity: int


def parity_profile(p):
    alpha = beta = 0
    for e, c in p.terms.items():
        if c % 2:
            if is_prime_exponent(e):
                beta ^= 1
            else:
                alpha ^= 1
    return ParityProfile(alpha, beta)


def in_H(p):
    """Membership in 2 Z[X] + <X^n - X^m : n, m both prime or both not>."""
    prof = parity_profile(p)
    return prof.nonprime_count_parity == 0 and prof.prime_count_parity == 0


def coset_representative(p):
    """The representative alpha + beta X^2 of p's coset (one of 0, 1, X^2, X^2+1)."""
    prof = parity_profile(p)
    return IntPoly({0: prof.nonprime_count_parity, 2: prof.prime_count_parity})


# -- Eisenstein witnesses -------------------------------------------------------


def eisenstein_witness(p, prime):
    """True iff prime divides every non-leading coefficient, not the leading
    one, and its square misses the constant term."""
    if not is_prime(prime):
        raise ValueError(f"{prime} is not prime")
    deg = p.degree()
    if deg < 1:
        raise ValueError("Eisenstein needs a non-constant polynomial")
    if p.coeff(deg) % prime == 0:
        return False
    for e, c in p.terms.items():
        if e < deg and c % prime:
            return False
    return p.coeff(0) % (prime * prime) != 0


# -- the certified polynomials and reduction -------------------------------------


def build_Q(m, p):
    """X^(m!+m) + p X^m + m! p, requiring p prime and congruent to -1 mod m!."""
    if m < 1:
        raise ValueError("m must be positive")
    f = math.factorial(m)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if (p + 1) % f:
        raise ValueError(f"{p} is not congruent to -1 mod {f}")
    return IntPoly({f + m: 1, m: p, 0: f * p})


def build_Qprime(m):
    """X^(m!+m) - X^m."""
    f = math.factorial(m)
    return IntPoly({f + m: 1, m: -1})


def build_Qdoubleprime(m):
    """X^(m!+m) - X^m + m! X."""
    f = math.factorial(m)
    terms = {f + m: 1, m: -1}
    terms[1] = terms.get(1, 0) + f
    return IntPoly(terms)


def reduce_mod_Im_certified(p, m):
    """Normal form of p modulo the ideal (m!, X^(m!+m) - X^m), with multipliers.

    Returns (nf, u, v) with p = nf + m! u + (X^(m!+m) - X^m) v, nf of degree
    below m!+m and coefficients in [0, m!).
    """
    if m < 1:
        raise ValueError("m must be positive")
    f = math.factorial(m)
    top = f + m
    work = dict(p.terms)
    v = {}
    while True:
        high = [e for e in work if e >= top]
        if not high:
            break
        for e in high:
            c = work.pop(e, 0)  # a cancellation in this pass may have removed it
            if not c:
                continue
            v[e - top] = v.get(e - top, 0) + c
            work[e - f] = work.get(e - f, 0) + c
            if not work[e - f]:
                del work[e - f]
    u = {}
    nf = {}
    for e, c in work.items():
        r = c % f
        q = (c - r) // f
        if q:
            u[e] = q
        if r:
            nf[e] = r
    return IntPoly(nf), IntPoly(u), IntPoly(v)


def reduce_mod_Im(p, m):
    return reduce_mod_Im_certified(p, m)[0]


@dataclass(frozen=True)
class NotInProductCertificate:
    """Inference-backed certificate that a polynomial avoids R.H.

    The three verified premises: the polynomial is irreducible (Eisenstein at
    the given prime, monic and primitive), it lies outside H, and 1 lies
    outside H.  Any factorization r*h with h in H would force r or h to be a
    unit (+-1), putting either the polynomial or +-1 inside the symmetric
    subgroup H -- contradicting the premises.  The conclusion is inference on
    top of the computed premises, not a brute-force scan.
    """

    polynomial: IntPoly
    prime: int
    eisenstein_ok: bool
    poly_outside_H: bool
    one_outside_H: bool
    method: str = "inference"

    @property
    def certified(self):
        return self.eisenstein_ok and self.poly_outside_H and self.one_outside_H

    @property
    def failed_premises(self):
        out = []
        if not self.eisenstein_ok:
            out.append("eisenstein")
        if not self.poly_outside_H:
            out.append("poly-outside-H")
        if not self.one_outside_H:
            out.append("one-outside-H")
        return out


def certify_not_in_RH(q, m, p):
    """Certificate that q avoids R.H; inconclusive when a premise fails
    (Eisenstein is sufficient for irreducibility, not necessary)."""
    try:
        eis = eisenstein_witness(q, p)
    except ValueError:
        eis = False
    return NotInProductCertificate(
        polynomial=q,
        prime=p,
        eisenstein_ok=eis,
        poly_outside_H=not in_H(q),
        one_outside_H=not in_H(IntPoly.one()),
    )


# -- the X Z[X] variant ----------------------------------------------------------


def _require_no_constant(p):
    if p.coeff(0):
        raise ValueError("not an element of X Z[X]: nonzero constant term")


def xz_parity_profile(p):
    """Parity profile over the subgroup of X Z[X] generated by 2 X Z[X] and
    X^n - X^m for n, m > 0 both prime or both not prime."""
    _require_no_constant(p)
    return parity_profile(p)


def xz_in_H(p):
    prof = xz_parity_profile(p)
    return prof.nonprime_count_parity == 0 and prof.prime_count_parity == 0


def xz_reduce(p, m):
    """Normal form modulo the span of m! X^j (j >= 1) and X^(m!+e) - X^e (e >= 1)."""
    _require_no_constant(p)
    if m < 1:
        raise ValueError("m must be positive")
    f = math.factorial(m)
    work = dict(p.terms)
    while True:
        high = [e for e in work if e >= f + 1]
        if not high:
            break
        for e in high:
            c = work.pop(e, 0)  # a cancellation in this pass may have removed it
            if not c:
                continue
            work[e - f] = work.get(e - f, 0) + c
            if not work[e - f]:
                del work[e - f]
    return IntPoly({e: c % f for e, c in work.items() if c % f})


@dataclass(frozen=True)
class XZReport:
    m: int
    polynomial: IntPoly
    degree1_coeff: int
    outside_RR: bool
    m_is_prime: bool
    outside_H: bool | None
    reduces_to_zero: bool

    @property
    def ok(self):
        return self.outside_RR and self.reduces_to_zero and self.outside_H in (True, None)


def xz_checks(m):
    """Verify the X Z[X] witness polynomial X^(m!+m) - X^m + m! X.

    Its degree-1 coefficient m! is nonzero, so it has valuation 1 and avoids
    R.R (products of constant-free polynomials have valuation >= 2); for
    prime m the parity law puts it outside the subgroup analog of H; and it
    reduces to zero against the generators m! X^j and X^(m!+e) - X^e.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    q = build_Qdoubleprime(m)
    c1 = q.coeff(1)
    prime_m = is_prime_exponent(m)
    return XZReport(
        m=m,
        polynomial=q,
        degree1_coeff=c1,
        outside_RR=c1 != 0,
        m_is_prime=prime_m,
        outside_H=(not xz_in_H(q)) if prime_m else None,
        reduces_to_zero=xz_reduce(q, m).is_zero(),
    )


# -- finitely generated commutative witness ---------------------------------------


@dataclass(frozen=True)
class FgWitnessReport:
    num_vars: int
    k: int
    pairs: tuple
    generator_count: int
    generators: tuple
    representative_bound: int
    structural_ok: bool
    tabulated_size: int | None
    tabulated_matches: bool | None


def fg_ideal_witness(num_vars, k, pairs):
    """Structural certificate for the (n+1)-generator ideal witness.

    The ideal generated by k*1 and a_i^{l_i} - a_i^{k_i} (i = 1..n) has each
    generator inside the carrier set by construction, so every element is an
    (n+1)-fold sum of products r*d; dividing with remainder by the monic
    X_i^{l_i} - X_i^{k_i} bounds the quotient by |k|^(l_1*...*l_n)
    representatives.  For n = 1 the quotient is tabulated and its size
    confirmed exactly.
    """
    if num_vars < 1:
        raise ValueError("need at least one generator")
    if k == 0:
        raise ValueError("k must be nonzero")
    pairs = tuple((int(a), int(b)) for a, b in pairs)
    if len(pairs) != num_vars:
        raise ValueError("one (k_i, l_i) pair per generator required")
    for ki, li in pairs:
        if not 0 <= ki < li:
            raise ValueError(f"need 0 <= k_i < l_i, got ({ki}, {li})")
    gens = (f"{k}*1",) + tuple(
        f"a{i + 1}^{li} - a{i + 1}^{ki}" for i, (ki, li) in enumerate(pairs)
    )
    bound = abs(k) ** math.prod(li for _, li in pairs)

    tab_size = tab_match = None
    if num_vars == 1 and abs(k) >= 2:
        from .rings import MAX_RING_SIZE, build_poly_quotient

        ki, li = pairs[0]
        if abs(k) ** li <= MAX_RING_SIZE:
            ring = build_poly_quotient(abs(k), li, ki)
            tab_size = ring.size
            tab_match = ring.size == bound

    return FgWitnessReport(
        num_vars=num_vars,
        k=k,
        pairs=pairs,
        generator_count=num_vars + 1,
        generators=gens,
        representative_bound=bound,
        structural_ok=True,
        tabulated_size=tab_size,
        tabulated_matches=tab_match,
    )
