import itertools
import random

import pytest

from stepring.additive import ElementSet, closure, is_subgroup_set, n_fold_sum, sumset
from stepring.rings import build_boolean_ring, build_zq_power, check_ring_axioms
from stepring.stepgen import (
    LEFT,
    LEFT_UNIT,
    RIGHT,
    TWO_SIDED,
    TWO_SIDED_UNIT,
    SideMode,
    find_ideal_within,
    half_step_set,
    ideal_closure,
    is_two_sided_ideal,
    min_steps_to_group,
    principal_ideal,
    product_set,
    steps_str,
    stepped_set,
    verify_bourgain_system,
    verify_generic_generation_bound,
    verify_sunital_factorial,
)


def oracle_product(ring, d, side, with_unit):
    everyone = range(ring.size)
    if side == "left":
        out = {ring.mul(r, x) for r in everyone for x in d}
    elif side == "right":
        out = {ring.mul(x, r) for r in everyone for x in d}
    else:
        out = {ring.mul(ring.mul(r, x), s) for r in everyone for x in d for s in everyone}
        if with_unit:
            out |= {ring.mul(r, x) for r in everyone for x in d}
            out |= {ring.mul(x, r) for r in everyone for x in d}
    if with_unit:
        out |= set(d)
    return out


def oracle_ideals_within(ring, s_bits):
    """All two-sided ideals contained in S, by scanning every subset."""
    out = []
    for bits in range(1 << ring.size):
        if bits & ~s_bits:
            continue
        members = [x for x in range(ring.size) if (bits >> x) & 1]
        if 0 not in members:
            continue
        ok = all(ring.add(a, b) in set(members) for a in members for b in members)
        ok = ok and all(ring.neg(a) in set(members) for a in members)
        ok = ok and all(
            (bits >> ring.mul(r, a)) & 1 and (bits >> ring.mul(a, r)) & 1
            for a in members
            for r in range(ring.size)
        )
        if ok:
            out.append(bits)
    return out


def test_product_set_trivial_cases():
    ring = build_zq_power(4, 1)
    zero = ElementSet.singleton(ring, 0)
    for mode in (LEFT, RIGHT, TWO_SIDED, LEFT_UNIT, TWO_SIDED_UNIT):
        assert product_set(zero, mode) == zero

    d = ElementSet.from_indices(ring, [2])
    assert sorted(product_set(d, LEFT_UNIT).indices()) == [0, 2]

    p2 = build_boolean_ring(2)
    d = ElementSet.from_indices(p2, [0b01])
    assert sorted(product_set(d, LEFT).indices()) == [0, 1]


def test_product_set_matches_oracle():
    rng = random.Random(4)
    for ring in (build_zq_power(3, 2), build_boolean_ring(3), build_zq_power(6, 1)):
        for _ in range(15):
            d = {rng.randrange(ring.size) for _ in range(rng.randint(1, 4))}
            es = ElementSet.from_indices(ring, d)
            for side in ("left", "right", "two_sided"):
                for unit in (False, True):
                    got = product_set(es, SideMode(side, unit))
                    assert set(int(i) for i in got.indices()) == oracle_product(
                        ring, d, side, unit
                    ), (ring.label, side, unit)


def test_half_step_examples():
    p4 = build_boolean_ring(4)
    h = closure(p4, [0b1010, 0b1100])
    assert half_step_set(h, 0, LEFT) == h.carrier
    hs = half_step_set(h, 1, LEFT)
    assert 0b1110 in hs  # {1,2,3} = {1,3} sym-diff ({0,2} intersect {2,3})

    z4 = build_zq_power(2, 2)
    h = closure(z4, [0b11])
    assert half_step_set(h, 1, LEFT) == ElementSet.full(z4)


def test_steps_rendering():
    assert steps_str(1) == "1/2"
    assert steps_str(2) == "1"
    assert steps_str(3) == "1 1/2"
    assert steps_str(4) == "2"


def test_stepped_set_half_integer_shapes():
    ring = build_boolean_ring(3)
    d = ElementSet.from_indices(ring, [0, 1, 6])
    di = product_set(d, LEFT_UNIT)
    assert stepped_set(d, 1, LEFT_UNIT) == d
    assert stepped_set(d, 2, LEFT_UNIT) == di
    assert stepped_set(d, 3, LEFT_UNIT) == sumset(d, di)
    assert stepped_set(d, 4, LEFT_UNIT) == sumset(di, di)
    with pytest.raises(ValueError):
        stepped_set(d, 0, LEFT_UNIT)


def test_min_steps_ideal_is_immediate():
    ring = build_zq_power(2, 3)
    # an ideal: the first coordinate's annihilator span
    ideal = closure(ring, [2, 4])
    steps, chain = min_steps_to_group(ideal, LEFT, 8)
    assert steps == 1
    assert chain.layers[0] == ideal.carrier


def test_min_steps_boolean_example():
    p4 = build_boolean_ring(4)
    h = closure(p4, [0b1010, 0b1100])
    steps, chain = min_steps_to_group(h, LEFT, 8)
    assert steps == 2
    # witness {1,2,3} escapes the first layer but sits in the second
    assert 0b1110 not in chain.layers[0]
    assert 0b1110 in chain.layers[1]
    assert is_subgroup_set(chain.layers[-1])


def test_min_steps_three_on_eight_points():
    p8 = build_boolean_ring(8)
    a = [sum(1 << x for x in range(8) if (x >> i) & 1) for i in range(3)]
    h = closure(p8, a)
    steps, chain = min_steps_to_group(h, LEFT, 8)
    assert steps == 3
    union = a[0] | a[1] | a[2]
    assert union not in chain.layers[1]
    assert union in chain.layers[2]


def test_min_steps_cap():
    p4 = build_boolean_ring(4)
    h = closure(p4, [0b1010, 0b1100])
    steps, chain = min_steps_to_group(h, LEFT, 1)
    assert steps is None
    assert chain.group_at is None


def test_min_steps_stabilized_layer_matches_closure():
    rng = random.Random(21)
    for ring in (build_zq_power(2, 3), build_zq_power(3, 2), build_boolean_ring(3)):
        for _ in range(10):
            h = closure(ring, [rng.randrange(ring.size) for _ in range(rng.randint(0, 2))])
            steps, chain = min_steps_to_group(h, LEFT, 12)
            assert chain.layers[-1] == ideal_closure(product_set(h.carrier, LEFT), "left")
            steps, chain = min_steps_to_group(h, TWO_SIDED_UNIT, 12)
            assert chain.layers[-1] == ideal_closure(h.carrier, "two_sided")


def test_principal_ideal_and_verification():
    p2 = build_boolean_ring(2)
    assert sorted(principal_ideal(p2, 0b01).indices()) == [0, 1]
    assert sorted(principal_ideal(p2, 0b11).indices()) == [0, 1, 2, 3]
    assert is_two_sided_ideal(ElementSet.from_indices(p2, [0, 1]))
    assert not is_two_sided_ideal(ElementSet.from_indices(p2, [0, 3]))


def test_find_ideal_examples():
    p2 = build_boolean_ring(2)
    res = find_ideal_within(ElementSet.full(p2))
    assert res.min_index_found == 1 and res.exhaustive

    res = find_ideal_within(ElementSet.from_indices(p2, [0, 1]))
    assert res.min_index_found == 2
    assert sorted(res.found.indices()) == [0, 1]

    res = find_ideal_within(ElementSet.from_indices(p2, [0, 3]))
    assert res.min_index_found == 4
    assert sorted(res.found.indices()) == [0]

    # no zero: no ideal at all
    res = find_ideal_within(ElementSet.from_indices(p2, [1, 2]))
    assert res.found is None and res.min_index_found is None


def test_find_ideal_matches_subset_oracle():
    rng = random.Random(6)
    for ring in (build_boolean_ring(2), build_zq_power(4, 1), build_zq_power(2, 2)):
        for _ in range(40):
            s_bits = rng.getrandbits(ring.size) | 1
            res = find_ideal_within(ElementSet(ring, s_bits))
            ideals = oracle_ideals_within(ring, s_bits)
            best = max(ideals, key=lambda b: b.bit_count())
            assert res.exhaustive
            assert res.min_index_found == ring.size // best.bit_count()
            assert is_two_sided_ideal(res.found)
            assert res.found.bits & ~s_bits == 0


def test_generation_bound_subgroup_is_one_step():
    ring = build_zq_power(2, 3)
    h = closure(ring, [1, 2])
    rep = verify_generic_generation_bound(h.carrier)
    assert rep.steps_needed == 1
    assert rep.cover_number == h.index
    assert rep.holds


def test_generation_bound_z8_units():
    z8 = build_zq_power(8, 1)
    d = ElementSet.from_indices(z8, [1, 7])
    rep = verify_generic_generation_bound(d)
    assert rep.cover_number == 4
    assert rep.subgroup_size == 8
    assert rep.steps_needed == 4
    assert rep.holds and rep.steps_needed <= rep.bound


def test_generation_bound_rejects_empty():
    with pytest.raises(ValueError):
        verify_generic_generation_bound(ElementSet.empty(build_zq_power(2, 2)))


def test_factorial_lemma_z6():
    z6 = build_zq_power(6, 1)
    d = ElementSet.from_indices(z6, [0, 2, 4])
    rep = verify_sunital_factorial(z6, d)
    assert rep.applicable
    assert rep.thickness == 3
    assert rep.factorial == 6
    assert rep.holds  # 6 R = {0} inside R.D
    assert rep.minimal_multiple == 2


def test_factorial_lemma_z5():
    z5 = build_zq_power(5, 1)
    d = ElementSet.from_indices(z5, [0, 1, 4])
    rep = verify_sunital_factorial(z5, d)
    assert rep.applicable and rep.thickness == 3
    assert rep.holds  # R.D = R since 1 is in D
    assert rep.minimal_multiple == 1


def test_factorial_lemma_whole_ring():
    ring = build_zq_power(4, 1)
    rep = verify_sunital_factorial(ring, ElementSet.full(ring))
    assert rep.applicable and rep.thickness == 2
    assert rep.holds


def test_factorial_lemma_inapplicable():
    z5 = build_zq_power(5, 1)
    rep = verify_sunital_factorial(z5, ElementSet.from_indices(z5, [1]))
    assert not rep.applicable and "thick" in rep.reason


def test_bourgain_checker():
    ring = build_boolean_ring(3)
    i1 = ElementSet.from_indices(ring, [0, 1, 2, 3])
    i2 = ElementSet.from_indices(ring, [0, 1])
    rep = verify_bourgain_system([i1, i2], i1, half_steps=4, mode=LEFT)
    assert rep.ok

    rep = verify_bourgain_system([i2, i1], i1, half_steps=4, mode=LEFT)
    assert not rep.ok and rep.first_violation == "descending"

    z9 = build_zq_power(3, 2)
    asym = ElementSet.from_indices(z9, [0, 1])
    rep = verify_bourgain_system([ElementSet.full(z9), asym], ElementSet.full(z9), 4, LEFT)
    assert not rep.ok and rep.first_violation == "symmetric"

    rep = verify_bourgain_system([], i1, 4, LEFT)
    assert not rep.ok and rep.first_violation == "nonempty-sequence"


def test_product_set_monotone():
    rng = random.Random(8)
    ring = build_zq_power(3, 2)
    for _ in range(20):
        small_bits = rng.getrandbits(ring.size)
        big_bits = small_bits | rng.getrandbits(ring.size)
        for mode in (LEFT, RIGHT, TWO_SIDED, TWO_SIDED_UNIT):
            a = product_set(ElementSet(ring, small_bits), mode)
            b = product_set(ElementSet(ring, big_bits), mode)
            assert a.issubset(b)


def test_side_mode_validation():
    with pytest.raises(ValueError):
        SideMode("sideways")
    assert LEFT.describe() == "R.D"
    assert TWO_SIDED_UNIT.describe() == "(R u {1}).D.(R u {1})"
