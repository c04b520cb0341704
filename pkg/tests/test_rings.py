import numpy as np
import pytest

from stepring.rings import (
    ExoticRingSpec,
    Nilpotent3Element,
    RingConstructionError,
    build_boolean_ring,
    build_exotic,
    build_poly_quotient,
    build_zq_power,
    check_ring_axioms,
    from_descriptor,
    nilpotent3_mul,
)


def brute_force_axioms(ring):
    """Triple-loop oracle for small rings, no vectorization."""
    n = ring.size
    for a in range(n):
        for b in range(n):
            for c in range(n):
                assert ring.mul(ring.mul(a, b), c) == ring.mul(a, ring.mul(b, c))
                assert ring.mul(ring.add(a, b), c) == ring.add(ring.mul(a, c), ring.mul(b, c))
                assert ring.mul(c, ring.add(a, b)) == ring.add(ring.mul(c, a), ring.mul(c, b))


def test_zq_power_base_case():
    ring = build_zq_power(2, 1)
    assert ring.size == 2
    assert ring.one == 1
    assert ring.mul(1, 1) == 1
    assert ring.add(1, 1) == 0


def test_zq_power_componentwise_product():
    ring = build_zq_power(2, 2)
    # (1,0) is index 1, (1,1) is index 3
    assert ring.mul(1, 3) == 1


def test_zq_power_3_2_axioms():
    ring = build_zq_power(3, 2)
    brute_force_axioms(ring)
    rep = check_ring_axioms(ring)
    assert rep.ok
    assert rep.characteristic == 3
    assert rep.unital
    assert rep.commutative


def test_zq_power_overflow_refused():
    with pytest.raises(RingConstructionError):
        build_zq_power(2, 17)


def test_boolean_ring_small():
    ring = build_boolean_ring(1)
    assert ring.size == 2
    assert check_ring_axioms(ring).ok

    ring = build_boolean_ring(2)
    # {0} sym-diff {0,1} = {1}; {0} intersect {0,1} = {0}
    assert ring.add(0b01, 0b11) == 0b10
    assert ring.mul(0b01, 0b11) == 0b01
    assert ring.one == 0b11


def test_boolean_ring_matches_componentwise_mod2():
    for n in range(1, 7):
        b = build_boolean_ring(n)
        z = build_zq_power(2, n)
        for x in range(b.size):
            for y in range(b.size):
                assert b.add(x, y) == z.add(x, y)
                assert b.mul(x, y) == z.mul(x, y)
    # exhaustive pair grid, vectorized, up to 2^10 elements
    for n in (8, 10):
        b = build_boolean_ring(n)
        z = build_zq_power(2, n)
        ar = np.arange(b.size, dtype=np.int64)
        assert np.array_equal(b.mul_vec(ar[:, None], ar[None, :]), z.mul_vec(ar[:, None], ar[None, :]))
        assert np.array_equal(b.add_vec(ar[:, None], ar[None, :]), z.add_vec(ar[:, None], ar[None, :]))


def test_boolean_ring_axiom_scan():
    rep = check_ring_axioms(build_boolean_ring(4))
    assert rep.ok and rep.commutative and rep.unital
    assert rep.characteristic == 2
    assert rep.left_s_unital and rep.right_s_unital


def test_poly_quotient_z2_x3_minus_x():
    ring = build_poly_quotient(2, 3, 1)
    assert ring.size == 8
    brute_force_axioms(ring)
    # X has index 2, X^2 index 4; X*X^2 = X^3 reduces to X
    assert ring.mul(2, 4) == 2
    assert ring.one == 1


def test_poly_quotient_degenerate_is_z2():
    ring = build_poly_quotient(2, 1, 0)
    assert ring.size == 2
    assert ring.mul(1, 1) == 1


def test_poly_quotient_z6_nonreduced():
    ring = build_poly_quotient(6, 2, 0)
    assert ring.size == 36
    rep = check_ring_axioms(ring)
    assert rep.ok
    assert rep.characteristic == 6
    # X * X = X^2 = X^0 = 1 here (X^2 - X^0 is the modulus)
    x = ring.weights[1]
    assert ring.mul(x, x) == ring.one


def test_exotic_small_axioms():
    ring = build_exotic(ExoticRingSpec(1, 1))
    assert ring.size == 16
    brute_force_axioms(ring)
    rep = check_ring_axioms(ring)
    assert rep.ok and rep.commutative and rep.unital and rep.characteristic == 2


def test_exotic_functional_products():
    ring = build_exotic(ExoticRingSpec(2, 2))
    e_idx = 1 << 4
    r0, r1 = 1, 2
    assert ring.mul(r0, r1) == 0  # f_0(r1) = 0 on standard basis vectors
    assert ring.mul(r0, r0) == e_idx  # f_0(r0) = 1

    # r_i . r = f_i(r) e for every G-element, exhaustively
    for i in range(2):
        for r in range(1 << 4):
            expected = e_idx if (r >> i) & 1 else 0
            assert ring.mul(1 << i, r) == expected

    # e annihilates G and itself, the unit fixes everything
    for g in range(1 << 4):
        assert ring.mul(e_idx, g) == 0
    assert ring.mul(e_idx, e_idx) == 0
    for x in range(ring.size):
        assert ring.mul(ring.one, x) == x


def test_exotic_size_validation():
    with pytest.raises(RingConstructionError):
        ExoticRingSpec(0, 1)
    with pytest.raises(RingConstructionError):
        ExoticRingSpec(8, 8)


def test_nilpotent_products():
    x0 = Nilpotent3Element.generator(0)
    x1 = Nilpotent3Element.generator(1)
    x2 = Nilpotent3Element.generator(2)
    assert nilpotent3_mul(x0, x1, 4).quadratic == frozenset([(0, 1)])
    # (X0 X1) X2 = 0 by class-3 nilpotency
    assert nilpotent3_mul(nilpotent3_mul(x0, x1, 4), x2, 4).is_zero()
    # (X0 + X1)^2 = X0^2 + X1^2, cross terms cancel mod 2
    s = x0 + x1
    assert nilpotent3_mul(s, s, 4).quadratic == frozenset([(0, 0), (1, 1)])


def test_nilpotent_commutes_and_range_checked():
    import random

    rng = random.Random(7)
    for _ in range(200):
        x = Nilpotent3Element(frozenset(rng.sample(range(6), rng.randint(0, 3))))
        y = Nilpotent3Element(frozenset(rng.sample(range(6), rng.randint(0, 3))))
        z = Nilpotent3Element(frozenset(rng.sample(range(6), rng.randint(0, 3))))
        assert nilpotent3_mul(x, y, 6) == nilpotent3_mul(y, x, 6)
        assert nilpotent3_mul(nilpotent3_mul(x, y, 6), z, 6).is_zero()
    with pytest.raises(IndexError):
        nilpotent3_mul(Nilpotent3Element.generator(6), Nilpotent3Element.generator(0), 6)


def test_every_construction_passes_axioms():
    for desc in (
        {"kind": "zq_power", "q": 4, "n": 2},
        {"kind": "zq_power", "q": 6, "n": 2},
        {"kind": "boolean", "x_size": 3},
        {"kind": "poly_quotient", "k": 3, "l": 2, "kp": 1},
        {"kind": "exotic", "a": 2, "b": 1},
    ):
        ring = from_descriptor(desc)
        assert check_ring_axioms(ring).ok, ring.label


def test_sampled_triple_mode_reports():
    ring = build_boolean_ring(10)  # 1024 elements: triples sampled
    rep = check_ring_axioms(ring, sampled_triples=10_000)
    assert rep.triple_mode == "sampled"
    assert rep.ok


def test_descriptor_errors():
    with pytest.raises(RingConstructionError):
        from_descriptor({"kind": "nope"})
    with pytest.raises(RingConstructionError):
        from_descriptor({"kind": "zq_power", "q": 2})
    with pytest.raises(RingConstructionError):
        from_descriptor("not a dict")


def test_translate_bits_matches_elementwise():
    import random

    rng = random.Random(3)
    for desc in ({"kind": "zq_power", "q": 3, "n": 3}, {"kind": "boolean", "x_size": 4}):
        ring = from_descriptor(desc)
        for _ in range(50):
            bits = rng.getrandbits(ring.size)
            d = rng.randrange(ring.size)
            expected = 0
            for x in range(ring.size):
                if (bits >> x) & 1:
                    expected |= 1 << ring.add(x, d)
            assert ring.translate_bits(bits, d) == expected


def test_mul_table_consistency():
    ring = build_poly_quotient(3, 2, 0)
    table = ring.mul_table
    for a in range(ring.size):
        for b in range(ring.size):
            assert table[a, b] == int(ring.mul_vec(np.int64(a), np.int64(b)))


def test_int_multiple_and_characteristic():
    ring = build_zq_power(6, 2)
    assert ring.characteristic == 6
    for x in range(ring.size):
        acc = 0
        for _ in range(6):
            acc = ring.add(acc, x)
        assert acc == 0
        assert ring.int_multiple(5, x) == ring.neg(x)
