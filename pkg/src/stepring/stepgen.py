"""Product sets, step chains, and ideal search inside tabulated rings.

The objects here drive the step-counting experiments: multiply a subgroup by
the ring on a chosen side, iterate sumsets of the result, and ask when the
layers become a group or swallow a finite-index ideal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .additive import (
    ElementSet,
    Subgroup,
    _same_ring,
    _sumset_bits,
    bits_from_bool,
    bool_from_bits,
    genericity_number,
    is_subgroup_set,
    n_fold_sum,
    sumset,
    thickness,
)

IDEAL_EXHAUSTIVE_CAP = 4096


@dataclass(frozen=True)
class SideMode:
    """Which side the ring multiplies a set on, and whether 1 is adjoined.

    side "left" is R.D, "right" is D.R, "two_sided" is R.D.R; with_unit
    adjoins a formal unit to each multiplier set, e.g. (R u {1}).D, which
    simply adds the unmultiplied set (and the one-sided products in the
    two-sided case).
    """

    side: str
    with_unit: bool = False

    def __post_init__(self):
        if self.side not in ("left", "right", "two_sided"):
            raise ValueError(f"bad side {self.side!r}")

    def describe(self):
        r = "(R u {1})" if self.with_unit else "R"
        if self.side == "left":
            return f"{r}.D"
        if self.side == "right":
            return f"D.{r}"
        return f"{r}.D.{r}"


LEFT = SideMode("left")
LEFT_UNIT = SideMode("left", True)
RIGHT = SideMode("right")
RIGHT_UNIT = SideMode("right", True)
TWO_SIDED = SideMode("two_sided")
TWO_SIDED_UNIT = SideMode("two_sided", True)


def _one_sided_products(d, multiplier_on_left):
    ring = d.ring
    ar = np.arange(ring.size, dtype=np.int64)
    acc = np.zeros(ring.size, dtype=bool)
    for x in d.indices():
        x = np.int64(x)
        vals = ring.mul_vec(ar, x) if multiplier_on_left else ring.mul_vec(x, ar)
        acc[vals] = True
    return ElementSet(ring, bits_from_bool(acc))


def product_set(d, mode):
    """All products of elements of D by ring elements per the side mode."""
    if not d:
        return d
    if mode.side == "left":
        out = _one_sided_products(d, True)
        return out | d if mode.with_unit else out
    if mode.side == "right":
        out = _one_sided_products(d, False)
        return out | d if mode.with_unit else out
    if mode.with_unit:
        e = d | _one_sided_products(d, False)
        return e | _one_sided_products(e, True)
    return _one_sided_products(_one_sided_products(d, False), True)


def half_step_set(h, k, mode):
    """H + (k-fold sum of the product set); k = 0 gives H back."""
    if k == 0:
        return h.carrier
    return sumset(h.carrier, n_fold_sum(product_set(h.carrier, mode), k))


def steps_str(half_steps):
    """Render a count of half-steps, e.g. 3 -> '1 1/2'."""
    whole, frac = divmod(half_steps, 2)
    if frac:
        return f"{whole} 1/2" if whole else "1/2"
    return str(whole)


def stepped_set(d, half_steps, mode):
    """D_i^{+n} for n given in half-steps: 2k -> k-fold sum of D_i, 2k+1 -> D + that."""
    if half_steps < 1:
        raise ValueError("need at least a half-step")
    k, frac = divmod(half_steps, 2)
    di = product_set(d, mode)
    if not frac:
        return n_fold_sum(di, k)
    if k == 0:
        return d
    return sumset(d, n_fold_sum(di, k))


# -- step chains ---------------------------------------------------------------


@dataclass
class StepChain:
    base: ElementSet
    layers: list
    stabilized_at: int | None
    group_at: int | None
    layer_ms: list = field(default_factory=list)

    @property
    def layer_sizes(self):
        return [len(l) for l in self.layers]


def min_steps_to_group(h, mode, max_n=8):
    """Minimal n with the n-fold sum of the product set a subgroup.

    Returns (n, chain); n is None when the cap is hit.  Stabilisation
    (layer n = layer n+1) and the direct subgroup test agree because the
    product set contains 0; the subgroup test is re-run on the stabilised
    layer as a guard.
    """
    import time

    t0 = time.perf_counter()
    x = product_set(h.carrier, mode)
    layers = [x]
    times = [(time.perf_counter() - t0) * 1000.0]
    for n in range(1, max_n + 1):
        t0 = time.perf_counter()
        nxt = sumset(layers[-1], x)
        times.append((time.perf_counter() - t0) * 1000.0)
        if nxt == layers[-1]:
            if not is_subgroup_set(layers[-1]):
                raise RuntimeError("stabilised layer fails the subgroup test")
            return n, StepChain(x, layers, stabilized_at=n, group_at=n, layer_ms=times)
        layers.append(nxt)
    return None, StepChain(x, layers, stabilized_at=None, group_at=None, layer_ms=times)


def ideal_closure(s, side="two_sided"):
    """Smallest additive subgroup containing S closed under the given products."""
    ring = s.ring
    cur = ElementSet(ring, _group_closure(ring, s.bits))
    while True:
        grown = cur
        if side in ("left", "two_sided"):
            grown = grown | _one_sided_products(cur, True)
        if side in ("right", "two_sided"):
            grown = grown | _one_sided_products(cur, False)
        grown = ElementSet(ring, _group_closure(ring, grown.bits))
        if grown == cur:
            return cur
        cur = grown


def _group_closure(ring, bits):
    bits |= 1 << ring.zero
    neg = ElementSet(ring, bits).negated().bits
    bits |= neg
    while True:
        nxt = _sumset_bits(ring, bits, bits)
        if nxt == bits:
            return bits
        bits = nxt


def principal_ideal(ring, x):
    """The two-sided ideal generated by one element.

    The additive closure of (R u {1}).x.(R u {1}) is already closed under
    both-sided multiplication, so no fixpoint loop is needed.
    """
    gen = product_set(ElementSet.singleton(ring, x), TWO_SIDED_UNIT)
    return ElementSet(ring, _group_closure(ring, gen.bits))


def is_two_sided_ideal(i):
    """Independent ideal verification: subgroup plus closure under both products."""
    return (
        is_subgroup_set(i)
        and product_set(i, LEFT).issubset(i)
        and product_set(i, RIGHT).issubset(i)
    )


@dataclass
class IdealSearchResult:
    found: ElementSet | None
    min_index_found: int | None
    exhaustive: bool


def find_ideal_within(s, exhaustive_cap=IDEAL_EXHAUSTIVE_CAP):
    """Minimum-index two-sided ideal contained in S.

    Candidates are the elements whose principal ideal stays inside S; ideals
    inside S are sums of candidate principal ideals, so the exhaustive search
    walks merges of those (memoised on the merged carrier).  Above the cap a
    greedy merge in descending principal-ideal size gives a sound but possibly
    suboptimal answer (exhaustive=False).
    """
    ring = s.ring
    if ring.zero not in s:
        return IdealSearchResult(None, None, True)
    full = (1 << ring.size) - 1
    if s.bits == full:
        return IdealSearchResult(ElementSet.full(ring), 1, True)

    principals = {}
    for x in s.indices():
        p = principal_ideal(ring, int(x))
        if p.bits & ~s.bits == 0:
            principals[p.bits] = None
    plist = sorted(principals, key=lambda b: (-b.bit_count(), b))
    zero_bits = 1 << ring.zero
    if not plist:
        plist = [zero_bits]

    # common fast path: if the sum of every candidate stays inside S it is
    # the unique maximum ideal inside S
    total = zero_bits
    for p in plist:
        total = _sumset_bits(ring, total, p)
    if total & ~s.bits == 0:
        found = ElementSet(ring, total)
        return IdealSearchResult(found, ring.size // len(found), ring.size <= exhaustive_cap)

    exhaustive = ring.size <= exhaustive_cap
    best = zero_bits
    if exhaustive:
        visited = set()

        def merge_from(start, cur):
            nonlocal best
            if cur.bit_count() > best.bit_count():
                best = cur
            for j in range(start, len(plist)):
                pj = plist[j]
                if pj & ~cur == 0:
                    continue
                merged = _sumset_bits(ring, cur, pj)
                if merged & ~s.bits:
                    continue
                if merged in visited:
                    continue
                visited.add(merged)
                merge_from(j + 1, merged)

        merge_from(0, zero_bits)
    else:
        cur = zero_bits
        for p in plist:
            merged = _sumset_bits(ring, cur, p)
            if merged & ~s.bits == 0:
                cur = merged
        best = cur

    found = ElementSet(ring, best)
    return IdealSearchResult(found, ring.size // len(found), exhaustive)


# -- generation-bound and system checkers ---------------------------------------


@dataclass
class GenerationBoundReport:
    cover_number: int
    cover_exact: bool
    bound: int
    steps_needed: int | None
    subgroup_size: int
    holds: bool


def verify_generic_generation_bound(d):
    """E = D u {0} u -D generates <D> within 3n steps, n the cover number.

    Reports the actual minimal m with the m-fold sum of E equal to <D>.
    """
    if not d:
        raise ValueError("empty sets are not generic")
    ring = d.ring
    cov = genericity_number(d)
    n = cov.value
    e = ElementSet(ring, d.bits | (1 << ring.zero) | d.negated().bits)
    target = _group_closure(ring, d.bits)
    bound = 3 * n
    layer = e
    m = 1
    while layer.bits != target and m <= bound:
        layer = sumset(layer, e)
        m += 1
    holds = layer.bits == target and m <= bound
    return GenerationBoundReport(
        cover_number=n,
        cover_exact=cov.exact,
        bound=bound,
        steps_needed=m if layer.bits == target else None,
        subgroup_size=target.bit_count(),
        holds=holds,
    )


@dataclass
class FactorialMultipleReport:
    applicable: bool
    reason: str
    thickness: int | None
    factorial: int | None
    holds: bool | None
    minimal_multiple: int | None


def verify_sunital_factorial(ring, d, left_s_unital=None):
    """In a left s-unital ring, n! R lands inside R.D for an n-thick D.

    n! R means additive multiples; the minimal N with N R inside R.D is
    reported alongside for comparison.
    """
    if left_s_unital is None:
        ar = np.arange(ring.size, dtype=np.int64)
        left_s_unital = all(
            bool(np.any(ring.mul_vec(ar, np.int64(r)) == r)) for r in range(ring.size)
        )
    if not left_s_unital:
        return FactorialMultipleReport(False, "ring is not left s-unital", None, None, None, None)
    th = thickness(d)
    if not th.is_thick:
        return FactorialMultipleReport(False, f"set is not thick ({th})", None, None, None, None)
    n = th.value
    rd = product_set(d, LEFT)
    char = ring.characteristic
    fact = math.factorial(n)

    def multiple_set(k):
        ar = np.arange(ring.size, dtype=np.int64)
        mask = np.zeros(ring.size, dtype=bool)
        mask[ring.int_multiple_vec(k % char, ar)] = True
        return ElementSet(ring, bits_from_bool(mask))

    holds = multiple_set(fact).issubset(rd)
    minimal = None
    for k in range(1, char + 1):
        if multiple_set(k).issubset(rd):
            minimal = k
            break
    return FactorialMultipleReport(True, "", n, fact, holds, minimal)


@dataclass
class SystemCheck:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class BourgainReport:
    ok: bool
    first_violation: str | None
    checks: list = field(default_factory=list)


def verify_bourgain_system(seq, d, half_steps, mode):
    """Descending generic symmetric sets inside the stepped set, with
    (1) consecutive sumsets descending and (2) R times a level inside the
    previous level."""
    checks = []

    def record(name, ok, detail=""):
        checks.append(SystemCheck(name, bool(ok), detail))
        return ok

    ok = record("nonempty-sequence", bool(seq), f"{len(seq)} levels")
    if ok:
        ambient = stepped_set(d, half_steps, mode)
        record(
            "ambient-containment",
            all(t.issubset(ambient) for t in seq),
            f"levels inside D^{{+{steps_str(half_steps)}}} ({mode.describe()})",
        )
        record("symmetric", all(t.is_symmetric() for t in seq))
        record("generic", all(bool(t) for t in seq), "nonempty, hence finitely many translates cover")
        record("descending", all(seq[k + 1].issubset(seq[k]) for k in range(len(seq) - 1)))
        record(
            "sum-condition",
            all(sumset(seq[k + 1], seq[k + 1]).issubset(seq[k]) for k in range(len(seq) - 1)),
        )
        record(
            "absorption-condition",
            all(product_set(seq[k + 1], LEFT).issubset(seq[k]) for k in range(len(seq) - 1)),
        )
    bad = next((c.name for c in checks if not c.ok), None)
    return BourgainReport(ok=bad is None, first_violation=bad, checks=checks)
