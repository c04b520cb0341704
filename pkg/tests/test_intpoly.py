import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stepring import intpoly
from stepring.intpoly import (
    IntPoly,
    PrimeSearchError,
    build_Q,
    build_Qdoubleprime,
    build_Qprime,
    certify_not_in_RH,
    coset_representative,
    eisenstein_witness,
    fg_ideal_witness,
    find_prime_neg_one_mod,
    in_H,
    is_prime,
    is_prime_exponent,
    parity_profile,
    reduce_mod_Im,
    reduce_mod_Im_certified,
    xz_checks,
    xz_in_H,
    xz_reduce,
)

poly_strategy = st.dictionaries(st.integers(0, 30), st.integers(-9, 9), max_size=6).map(IntPoly)


def test_intpoly_arithmetic():
    p = IntPoly({3: 1, 0: 2})
    q = IntPoly({3: -1, 1: 5})
    assert (p + q) == IntPoly({1: 5, 0: 2})
    assert (p - p).is_zero()
    assert (p * q).to_pairs() == [(1, 10), (3, -2), (4, 5), (6, -1)]
    assert 2 * p == IntPoly({3: 2, 0: 4})
    assert p.degree() == 3 and p.valuation() == 0
    with pytest.raises(ValueError):
        IntPoly({-1: 2})


def test_primality_helpers():
    primes_under_50 = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}
    assert {n for n in range(50) if is_prime(n)} == primes_under_50
    assert {e for e in range(50) if is_prime_exponent(e)} == primes_under_50
    assert is_prime(10**12 + 39)
    assert not is_prime(10**12 + 37)


def test_find_prime_examples():
    assert find_prime_neg_one_mod(2) == 3
    assert find_prime_neg_one_mod(6) == 5
    assert find_prime_neg_one_mod(24) == 23
    assert find_prime_neg_one_mod(120) == 239
    with pytest.raises(PrimeSearchError):
        find_prime_neg_one_mod(6, search_cap=0)


def test_parity_membership_examples():
    assert in_H(IntPoly({3: 1, 5: -1}))  # X^3 - X^5, both prime
    assert not in_H(IntPoly({2: 1, 4: -1}))  # prime vs non-prime
    assert in_H(IntPoly({7: 2, 4: 1, 6: 1}))  # mod 2 leaves X^4 + X^6
    assert not in_H(IntPoly.one())
    prof = parity_profile(IntPoly({2: 1, 4: -1}))
    assert (prof.nonprime_count_parity, prof.prime_count_parity) == (1, 1)


def test_coset_representatives_are_the_four_stated():
    reps = {coset_representative(p) for p in (IntPoly.zero(), IntPoly.one(), IntPoly.x_power(2), IntPoly({0: 1, 2: 1}))}
    assert reps == {IntPoly.zero(), IntPoly.one(), IntPoly({2: 1}), IntPoly({0: 1, 2: 1})}
    # index is exactly 4: representatives pairwise differ
    assert len(reps) == 4


@settings(max_examples=200, deadline=None)
@given(p=poly_strategy, q=poly_strategy)
def test_in_H_kernel_is_additive_hypothesis(p, q):
    if in_H(p) and in_H(q):
        assert in_H(p + q)
    assert in_H(2 * p)
    assert in_H(p - coset_representative(p))


def test_matching_class_differences_land_in_H():
    rng = random.Random(0)
    for _ in range(500):
        a, b = rng.randrange(0, 60), rng.randrange(0, 60)
        if is_prime_exponent(a) == is_prime_exponent(b):
            assert in_H(IntPoly({a: 1}) - IntPoly({b: 1}))
        else:
            assert not in_H(IntPoly({a: 1}) - IntPoly({b: 1}))


def test_eisenstein_examples():
    assert eisenstein_witness(IntPoly({4: 1, 2: 3, 0: 6}), 3)
    assert not eisenstein_witness(IntPoly({2: 1, 0: 4}), 2)  # 4 divisible by 4
    assert eisenstein_witness(IntPoly({2: 1, 1: 2, 0: 2}), 2)
    with pytest.raises(ValueError):
        eisenstein_witness(IntPoly({2: 1, 0: 2}), 4)  # modulus not prime
    with pytest.raises(ValueError):
        eisenstein_witness(IntPoly({0: 5}), 2)  # constant


def test_build_Q_family():
    assert build_Q(2, 3) == IntPoly({4: 1, 2: 3, 0: 6})
    assert build_Qprime(2) == IntPoly({4: 1, 2: -1})
    assert build_Qdoubleprime(2) == IntPoly({4: 1, 2: -1, 1: 2})
    # any odd prime is -1 mod 2!, so p = 5 works for m = 2
    assert build_Q(2, 5) == IntPoly({4: 1, 2: 5, 0: 10})
    with pytest.raises(ValueError):
        build_Q(3, 7)  # 7 + 1 = 8 is not a multiple of 3! = 6


def test_build_Q_prime_validation():
    with pytest.raises(ValueError):
        build_Q(2, 9)  # 9 = -1 mod 2 fails primality


def test_reduce_examples():
    assert reduce_mod_Im(build_Q(2, 3), 2).is_zero()
    assert reduce_mod_Im(IntPoly({4: 1}), 2) == IntPoly({2: 1})
    assert reduce_mod_Im(IntPoly({0: 2}), 2).is_zero()
    assert reduce_mod_Im(build_Q(3, 5), 3).is_zero()
    assert reduce_mod_Im(build_Qprime(4), 4).is_zero()


def test_reduce_certificate_identity():
    rng = random.Random(1)
    for _ in range(300):
        m = rng.randint(1, 4)
        p = IntPoly({rng.randrange(0, 50): rng.randrange(-40, 40) for _ in range(rng.randrange(0, 7))})
        nf, u, v = reduce_mod_Im_certified(p, m)
        f = math.factorial(m)
        assert nf + f * u + build_Qprime(m) * v == p
        assert nf.degree() < f + m
        assert all(0 <= c < f for _, c in nf.to_pairs())
        assert reduce_mod_Im(nf, m) == nf


def test_reduce_additive():
    rng = random.Random(2)
    for _ in range(200):
        m = rng.randint(1, 4)
        p = IntPoly({rng.randrange(0, 40): rng.randrange(-9, 9) for _ in range(4)})
        q = IntPoly({rng.randrange(0, 40): rng.randrange(-9, 9) for _ in range(4)})
        assert reduce_mod_Im(p + q, m) == reduce_mod_Im(reduce_mod_Im(p, m) + reduce_mod_Im(q, m), m)


def test_certify_examples():
    cert = certify_not_in_RH(build_Q(2, 3), 2, 3)
    assert cert.certified and cert.method == "inference"
    cert = certify_not_in_RH(build_Q(3, 5), 3, 5)
    assert cert.certified

    # X^2 cannot be excluded: no Eisenstein prime works
    cert = certify_not_in_RH(IntPoly.x_power(2), 2, 3)
    assert not cert.certified
    assert "eisenstein" in cert.failed_premises


def test_certify_never_certifies_actual_products():
    rng = random.Random(3)
    for _ in range(400):
        h = 2 * IntPoly({rng.randrange(0, 10): rng.randrange(-3, 4) for _ in range(rng.randrange(0, 4))})
        for _ in range(rng.randrange(0, 3)):
            want_prime = rng.random() < 0.5
            pool = [e for e in range(20) if is_prime_exponent(e) == want_prime]
            h = h + IntPoly({rng.choice(pool): 1}) - IntPoly({rng.choice(pool): 1})
        r = IntPoly({rng.randrange(0, 6): rng.randrange(-4, 5) for _ in range(rng.randrange(1, 3))})
        q = r * h
        if q.degree() < 1:
            continue
        assert in_H(h)
        assert not certify_not_in_RH(q, 2, 3).certified


def test_xz_checks_examples():
    rep = xz_checks(2)
    assert rep.degree1_coeff == 2 and rep.outside_RR
    assert rep.reduces_to_zero
    assert rep.m_is_prime and rep.outside_H

    rep = xz_checks(3)
    assert rep.polynomial == IntPoly({9: 1, 3: -1, 1: 6})
    assert rep.outside_RR and rep.outside_H and rep.reduces_to_zero

    rep = xz_checks(5)
    assert rep.ok

    rep = xz_checks(4)  # composite: membership question inapplicable
    assert rep.outside_RR and rep.outside_H is None and rep.reduces_to_zero

    with pytest.raises(ValueError):
        xz_checks(1)


def test_xz_constant_terms_rejected():
    with pytest.raises(ValueError):
        xz_in_H(IntPoly.one())
    with pytest.raises(ValueError):
        xz_reduce(IntPoly({0: 1, 2: 1}), 2)
    assert xz_in_H(IntPoly({3: 1, 5: -1}))
    assert not xz_in_H(IntPoly({1: 1}))


def test_xz_reduce_stays_constant_free():
    rng = random.Random(4)
    for _ in range(200):
        m = rng.randint(2, 4)
        p = IntPoly({rng.randrange(1, 30): rng.randrange(-9, 9) for _ in range(4)})
        out = xz_reduce(p, m)
        assert out.coeff(0) == 0
        assert out.degree() <= math.factorial(m)


def test_fg_ideal_witness_instances():
    rep = fg_ideal_witness(1, 2, [(1, 3)])
    assert rep.generator_count == 2
    assert rep.tabulated_size == 8 and rep.tabulated_matches
    assert rep.representative_bound == 8

    rep = fg_ideal_witness(1, 3, [(0, 2)])
    assert rep.tabulated_size == 9 and rep.tabulated_matches

    rep = fg_ideal_witness(2, 2, [(1, 2), (1, 2)])
    assert rep.generator_count == 3
    assert rep.tabulated_size is None
    assert rep.representative_bound == 2**4
    assert rep.structural_ok
    assert rep.generators == ("2*1", "a1^2 - a1^1", "a2^2 - a2^1")


def test_fg_ideal_witness_validation():
    with pytest.raises(ValueError):
        fg_ideal_witness(1, 0, [(1, 3)])
    with pytest.raises(ValueError):
        fg_ideal_witness(1, 2, [(3, 3)])
    with pytest.raises(ValueError):
        fg_ideal_witness(2, 2, [(1, 3)])
