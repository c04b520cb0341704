"""Self-verifying scenarios, one per desk-scale claim, emitting reports.

Each scenario builds its own rings, runs the relevant checks at exact
precision, and returns a ScenarioReport whose status is pass only when every
check passed.  Reports are deterministic given (claim_id, params, seed) up to
the timing field.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field

import numpy as np

from . import intpoly
from .additive import (
    ElementSet,
    InfiniteIndexError,
    Subgroup,
    all_subgroups,
    bits_from_bool,
    closure,
    coset_representatives,
    genericity_number,
    is_coset_independent,
    is_subgroup_set,
    n_fold_sum,
    sumset,
    thickness,
    triangularize,
    vector_index,
)
from .intpoly import IntPoly
from .rings import (
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
from .stepgen import (
    LEFT,
    TWO_SIDED_UNIT,
    SideMode,
    find_ideal_within,
    half_step_set,
    ideal_closure,
    is_two_sided_ideal,
    min_steps_to_group,
    product_set,
    verify_bourgain_system,
    verify_generic_generation_bound,
    verify_sunital_factorial,
)

REPORT_VERSION = 1


@dataclass(frozen=True)
class Caps:
    max_ring_size: int = 1 << 16
    max_steps: int = 8
    ideal_exhaustive: int = 4096


DEFAULT_CAPS = Caps()


class CapExceeded(Exception):
    """A scenario would exceed the configured resource caps."""


class ScenarioParamError(ValueError):
    """Bad scenario parameters (unknown claim, wrong types, failed preconditions)."""


@dataclass
class CheckResult:
    name: str
    verdict: str  # pass | fail | inconclusive | inapplicable
    detail: str = ""


@dataclass
class ScenarioReport:
    claim_id: str
    params: dict
    status: str
    checks: list
    witnesses: list
    elapsed_ms: float
    timings: dict = field(default_factory=dict)

    def to_dict(self, include_timing=True):
        d = {
            "version": REPORT_VERSION,
            "claim_id": self.claim_id,
            "params": _plain(self.params),
            "status": self.status,
            "checks": [
                {"name": c.name, "verdict": c.verdict, "detail": c.detail}
                for c in self.checks
            ],
            "witnesses": _plain(self.witnesses),
        }
        if include_timing:
            d["elapsed_ms"] = round(self.elapsed_ms, 3)
            if self.timings:
                d["timings"] = _plain(self.timings)
        return d

    @staticmethod
    def from_dict(d):
        if d.get("version") != REPORT_VERSION:
            raise ValueError(f"unsupported report version {d.get('version')!r}")
        return ScenarioReport(
            claim_id=d["claim_id"],
            params=d["params"],
            status=d["status"],
            checks=[CheckResult(c["name"], c["verdict"], c.get("detail", "")) for c in d["checks"]],
            witnesses=d["witnesses"],
            elapsed_ms=d.get("elapsed_ms", 0.0),
            timings=d.get("timings", {}),
        )


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    return obj


def _status(checks):
    if not checks:
        return "inconclusive"
    verdicts = {c.verdict for c in checks}
    if "fail" in verdicts:
        return "fail"
    if "inconclusive" in verdicts:
        return "inconclusive"
    if verdicts == {"inapplicable"}:
        return "inapplicable"
    if "inapplicable" in verdicts:
        return "inconclusive"
    return "pass"


class _Run:
    """Collects checks and witnesses for one scenario execution."""

    def __init__(self, claim_id, params):
        self.claim_id = claim_id
        self.params = params
        self.checks = []
        self.witnesses = []
        self.timings = {}
        self._t0 = time.perf_counter()

    def check(self, name, ok, detail=""):
        self.checks.append(CheckResult(name, "pass" if ok else "fail", detail))
        return ok

    def record(self, name, verdict, detail=""):
        self.checks.append(CheckResult(name, verdict, detail))

    def witness(self, obj):
        self.witnesses.append(obj)

    def report(self):
        return ScenarioReport(
            claim_id=self.claim_id,
            params=self.params,
            status=_status(self.checks),
            checks=self.checks,
            witnesses=self.witnesses,
            elapsed_ms=(time.perf_counter() - self._t0) * 1000.0,
            timings=self.timings,
        )


def set_witness(es, label, limit=12):
    idx = [int(i) for i in es.indices()[:limit]]
    return {
        "kind": "set",
        "label": label,
        "size": len(es),
        "indices": idx,
        "decoded": [es.ring.decode(i) for i in idx],
    }


def element_witness(ring, i, label):
    return {"kind": "element", "label": label, "index": int(i), "decoded": ring.decode(int(i))}


def poly_witness(p, label):
    return {
        "kind": "polynomial",
        "label": label,
        "terms": [[int(e), str(c)] for e, c in p.to_pairs()],
    }


# -- independent families --------------------------------------------------------


@dataclass(frozen=True)
class IndependentFamily:
    n: int
    x_size: int
    sets: tuple

    def verify_independent(self):
        """All 2^n intersection cells of the A_i and their complements are nonempty."""
        for pattern in range(1 << self.n):
            cell = [
                x
                for x in range(self.x_size)
                if all(((x in self.sets[i]) == bool((pattern >> i) & 1)) for i in range(self.n))
            ]
            if not cell:
                return False
        return True


def canonical_independent_family(n):
    """A_i = the bit-i set over {0..2^n-1}; independence checked cell by cell."""
    if n < 1:
        raise ScenarioParamError("need n >= 1")
    if 2**n > 16:
        raise CapExceeded(f"ground set 2^{n} exceeds 16 points")
    sets = tuple(
        frozenset(x for x in range(1 << n) if (x >> i) & 1) for i in range(n)
    )
    fam = IndependentFamily(n=n, x_size=1 << n, sets=sets)
    if not fam.verify_independent():
        raise RuntimeError("canonical family failed the independence cell check")
    return fam


def _mask_of(points):
    bits = 0
    for p in points:
        bits |= 1 << p
    return bits


# -- scenarios ---------------------------------------------------------------------


def run_z2_steps(n, caps=DEFAULT_CAPS, seed=0):
    """Step-count floor in the boolean ring on 2^n points.

    H is spanned by the canonical independent family; the union of the family
    lies in the n-fold sum of P(X).H but escapes the (n-1)-fold sum, so the
    product set needs exactly n steps to reach a group.
    """
    run = _Run("z2-steps", {"n": n})
    if not isinstance(n, int) or n < 1:
        raise ScenarioParamError("n must be a positive integer")
    ground = 2**n
    if ground > 16 or 2**ground > caps.max_ring_size:
        raise CapExceeded(f"ambient group 2^{2**n} exceeds the ring-size cap")
    fam = canonical_independent_family(n)
    ring = build_boolean_ring(ground)
    gen_masks = [_mask_of(a) for a in fam.sets]
    h = closure(ring, gen_masks)
    witness = 0
    for m in gen_masks:
        witness |= m
    run.check(
        "independent-family",
        fam.verify_independent(),
        f"{n} bit-sets over {ground} points, all {2**n} cells nonempty",
    )
    run.witness(element_witness(ring, witness, "union of the family"))

    steps, chain = min_steps_to_group(h, LEFT, max_n=max(caps.max_steps, n + 1))
    layers = chain.layers
    if n == 1:
        run.check("base-case", witness in layers[0], "the union is a single product, 1-fold")
    else:
        run.check(
            f"witness-outside-{n - 1}-fold",
            witness not in layers[n - 2],
            f"layer sizes {chain.layer_sizes[: n]}",
        )
        run.check(f"witness-inside-{n}-fold", witness in layers[n - 1])
    run.check(
        "min-steps-exact",
        steps == n,
        f"group reached at step {steps} (cap {caps.max_steps})",
    )
    run.witness({"kind": "layer-sizes", "sizes": chain.layer_sizes})
    run.timings["layer_ms"] = [round(t, 3) for t in chain.layer_ms]
    return run.report()


def _nested_families(m):
    """The recursive independent families A^j over Y_j = {0..2^(j+1)-1}."""
    fams = {1: [frozenset([0])]}
    for j in range(1, m):
        base = 1 << (j + 1)  # Y_{j+1} starts fresh points at 2^(j+1)
        z = [
            frozenset(base + y for y in range(base) if (y >> i) & 1)
            for i in range(j + 1)
        ]
        prev = fams[j]
        fams[j + 1] = [prev[i] | z[i] for i in range(j)] + [prev[j - 1] | z[j]]
    return fams


def run_nested_chain(n, m, caps=DEFAULT_CAPS, seed=0):
    """Nested-subgroup separation: the union of the first n sets of the level-m
    family needs n steps over H_m but is unreachable in n-1 steps over H_n."""
    run = _Run("nested-chain", {"n": n, "m": m})
    if not (isinstance(n, int) and isinstance(m, int) and 2 <= n <= m):
        raise ScenarioParamError("need integers 2 <= n <= m")
    ground = 2 ** (m + 1)
    if ground > 16 or 2**ground > caps.max_ring_size:
        raise CapExceeded(f"ambient group 2^{2**(m + 1)} exceeds the ring-size cap")
    fams = _nested_families(m)
    ring = build_boolean_ring(ground)

    fam_m = IndependentFamily(n=m, x_size=ground, sets=tuple(fams[m]))
    run.check("level-m-family-independent", fam_m.verify_independent())

    h_m = closure(ring, [_mask_of(a) for a in fams[m]])
    outside = [1 << p for p in range(2 ** (n + 1), ground)]  # singletons of Y_m minus Y_n
    h_n = closure(ring, outside + [_mask_of(a) for a in fams[n]])
    witness = _mask_of(frozenset().union(*fams[m][:n]))
    run.witness(element_witness(ring, witness, "union of the first n level-m sets"))

    x_m = product_set(h_m.carrier, LEFT)
    run.check(
        f"witness-inside-{n}-fold-of-H{m}",
        witness in n_fold_sum(x_m, n),
        f"|R.H_{m}| = {len(x_m)}",
    )
    x_n = product_set(h_n.carrier, LEFT)
    run.check(
        f"witness-outside-{n - 1}-fold-of-H{n}",
        witness not in n_fold_sum(x_n, n - 1),
        f"|R.H_{n}| = {len(x_n)}",
    )
    return run.report()


_PARITY_POS = [(2, 3), (3, 13), (0, 1), (4, 6)]  # same class: both prime / both not
_PARITY_NEG = [(2, 0), (3, 4), (5, 1), (7, 6)]  # prime vs non-prime


def run_zx_lemma(m, p=None, caps=DEFAULT_CAPS, seed=0):
    """The Z[X] subgroup H with coset representatives {0,1,X^2,X^2+1} and the
    certified irreducible polynomials avoiding R.H."""
    run = _Run("lemma-7.1", {"m": m, "p": p})
    if not isinstance(m, int) or not 2 <= m <= 7:
        raise ScenarioParamError("need 2 <= m <= 7")
    f = math.factorial(m)
    if p is None:
        try:
            p = intpoly.find_prime_neg_one_mod(f)
        except intpoly.PrimeSearchError as exc:
            run.record("prime-search", "inconclusive", str(exc))
            return run.report()
        run.params = {"m": m, "p": p}
    else:
        if not intpoly.is_prime(p) or (p + 1) % f:
            raise ScenarioParamError(f"p must be a prime congruent to -1 mod {f}")
    q = intpoly.build_Q(m, p)
    qprime = intpoly.build_Qprime(m)
    run.witness(poly_witness(q, "certified polynomial"))
    run.witness({"kind": "prime", "label": "companion prime", "value": p})

    reps = [IntPoly.zero(), IntPoly.one(), IntPoly.x_power(2), IntPoly({0: 1, 2: 1})]
    profiles = {
        (pr.nonprime_count_parity, pr.prime_count_parity)
        for pr in (intpoly.parity_profile(r) for r in reps)
    }
    rng = random.Random(seed)
    rep_ok = len(profiles) == 4
    for _ in range(100):
        poly = IntPoly(
            {rng.randrange(0, 30): rng.randrange(-9, 10) for _ in range(rng.randrange(1, 8))}
        )
        rep_ok = rep_ok and intpoly.in_H(poly - intpoly.coset_representative(poly))
    run.check(
        "coset-representatives",
        rep_ok,
        "0, 1, X^2, X^2+1 hit all four parity classes; random polynomials land on theirs",
    )

    cert_ok = True
    for sample in [q, qprime, IntPoly({f + m + 7: 3, 2: f + 1, 0: -5})]:
        nf, u, v = intpoly.reduce_mod_Im_certified(sample, m)
        cert_ok = cert_ok and (nf + f * u + qprime * v == sample)
        cert_ok = cert_ok and (nf.degree() < f + m) and all(0 <= c < f for _, c in nf.to_pairs())
    run.check(
        "reduction-multipliers",
        cert_ok,
        "p = nf + m! u + (X^(m!+m) - X^m) v with nf in normal form",
    )

    if f ** (f + m) <= caps.max_ring_size:
        quotient = build_poly_quotient(f, f + m, m)
        x = quotient.weights[1] if len(quotient.radices) > 1 else quotient.one

        def image(poly):
            out = quotient.zero
            for e, c in poly.to_pairs():
                power = quotient.one
                for _ in range(e):
                    power = quotient.mul(power, x)
                out = quotient.add(out, quotient.int_multiple(c, power))
            return out

        run.check(
            "tabulated-quotient-annihilates",
            image(q) == quotient.zero and image(qprime) == quotient.zero,
            f"both certified polynomials vanish in {quotient.label}",
        )
    # above the tabulation cap the reduction-multiplier identity already
    # certifies membership in the ideal, so no check is emitted

    run.check("reduces-to-zero", intpoly.reduce_mod_Im(q, m).is_zero())
    diff = q - qprime
    run.check(
        "congruent-mod-H",
        intpoly.in_H(diff) and all(c % 2 == 0 for _, c in diff.to_pairs()),
        "difference (p+1) X^m + m! p has even coefficients",
    )

    parity_ok = not intpoly.in_H(IntPoly.one())
    for a, b in _PARITY_NEG:
        parity_ok = parity_ok and not intpoly.in_H(IntPoly({a: 1, b: -1}))
    for a, b in _PARITY_POS:
        parity_ok = parity_ok and intpoly.in_H(IntPoly({a: 1, b: -1}))
    run.check("parity-instances", parity_ok, "1 and mixed-class X^n - X^m avoid H")

    if intpoly.is_prime_exponent(m):
        run.check("Qprime-outside-H", not intpoly.in_H(qprime))
        cert = intpoly.certify_not_in_RH(q, m, p)
        run.check(
            "certificate",
            cert.certified,
            "irreducible (Eisenstein), outside H, with 1 outside H: outside R.H",
        )
    else:
        run.record("Qprime-outside-H", "inapplicable", "the final inference needs m prime")
        run.record("certificate", "inapplicable", "the final inference needs m prime")
    return run.report()


def run_xz_ring(m, caps=DEFAULT_CAPS, seed=0):
    """The X Z[X] witness X^(m!+m) - X^m + m! X: valuation 1 bars it from R.R,
    and for prime m the parity law bars it from the subgroup analog."""
    run = _Run("xz-ring", {"m": m})
    if not isinstance(m, int) or m < 2:
        raise ScenarioParamError("need integer m >= 2")
    rep = intpoly.xz_checks(m)
    run.witness(poly_witness(rep.polynomial, "witness polynomial"))
    run.check(
        "outside-RR",
        rep.outside_RR,
        f"degree-1 coefficient {rep.degree1_coeff} != 0, valuation 1 < 2",
    )
    if rep.m_is_prime:
        run.check("outside-H", bool(rep.outside_H), "parity law on positive exponents")
    else:
        run.record("outside-H", "inapplicable", "needs m prime")
    run.check("reduces-to-zero", rep.reduces_to_zero, "against m! X^j and X^(m!+e) - X^e")
    run.check(
        "constant-terms-rejected",
        _raises(lambda: intpoly.xz_in_H(IntPoly.one()), ValueError),
        "polynomials with a constant term are not ring elements",
    )
    return run.report()


def _raises(fn, exc):
    try:
        fn()
    except exc:
        return True
    return False


def run_exotic(a, b, caps=DEFAULT_CAPS, seed=0):
    """The characteristic-2 ring on independent functionals: the product-set
    identity for R.G and the two facts that push ideals out of R.G."""
    run = _Run("exotic-ring", {"a": a, "b": b})
    if not (isinstance(a, int) and isinstance(b, int)):
        raise ScenarioParamError("a and b must be integers")
    try:
        spec = ExoticRingSpec(a, b)
    except RingConstructionError as exc:
        raise ScenarioParamError(str(exc)) from exc
    if 2 ** (a + b + 2) > caps.max_ring_size:
        raise CapExceeded("exotic ring exceeds the ring-size cap")
    ring = build_exotic(spec)
    ng = a + b
    e_idx = 1 << ng
    g_set = ElementSet(ring, (1 << (1 << ng)) - 1)  # indices 0..2^ng-1

    ax = check_ring_axioms(ring, seed=seed)
    run.check(
        "ring-axioms",
        ax.ok and ax.commutative and bool(ax.unital) and ax.characteristic == 2,
        f"commutative unital of characteristic 2 ({ax.triple_mode} triples)",
    )

    rg = product_set(g_set, LEFT)
    union_nonker = np.zeros(ring.size, dtype=bool)
    g_idx = g_set.indices()
    for r in g_idx:
        prods = ring.mul_vec(np.int64(r), g_idx)
        union_nonker[g_idx[prods != ring.zero]] = True
    rhs_bits = g_set.bits | (1 << e_idx) | ring.translate_bits(bits_from_bool(union_nonker), e_idx)
    run.check(
        "product-identity",
        rg.bits == rhs_bits,
        "R.G = G, plus e, plus e + (G minus each ker(r.)), by double inclusion",
    )

    fact_a = True
    fail_a = None
    for r in range(1, 1 << a):
        prods = ring.mul_vec(np.int64(r), g_idx)
        if not np.any(prods == e_idx):
            fact_a = False
            fail_a = r
            break
    run.check(
        "functional-span-reaches-e",
        fact_a,
        "every nonzero functional combination r has s in G with r.s = e"
        + ("" if fact_a else f"; fails at {ring.decode(fail_a)}"),
    )

    fact_b = True
    fail_b = None
    for t_low in range(1, 1 << b):
        t = t_low << a
        if (rg.bits >> (t | e_idx)) & 1:  # e + t under xor addition
            fact_b = False
            fail_b = t
            break
    run.check(
        "extra-span-escapes",
        fact_b,
        "e + t stays outside R.G for every nonzero t in the extra span"
        + ("" if fact_b else f"; fails at {ring.decode(fail_b)}"),
    )
    run.check(
        "ideal-escape-inference",
        fact_a and fact_b,
        "an ideal meeting both spans nontrivially contains some e + t outside R.G",
    )
    if a >= 1:
        run.witness(element_witness(ring, 1, "functional generator r0"))
        run.witness(element_witness(ring, e_idx, "distinguished element e"))
    return run.report()


def nilpotent_h(el):
    """The index-2 character: odd-index linear coefficients plus the quadratic
    coefficients at pairs (j, i) with i a positive multiple of 2^j."""
    total = 0
    for i in el.linear:
        if i % 2:
            total ^= 1
    for j, i in el.quadratic:
        if i > 0 and i % (1 << j) == 0:
            total ^= 1
    return total


def _random_nilpotent(rng, k):
    lin = frozenset(i for i in range(k) if rng.random() < 0.3)
    quad = frozenset(
        (j, i) for j in range(k) for i in range(j, k) if rng.random() < 0.1
    )
    return Nilpotent3Element(lin, quad)


DEFAULT_NILPOTENT_WITNESSES = ((1, (1,)), (1, (1, 3, 5)), (3, (3,)))


def run_nilpotent(k, witnesses=None, caps=DEFAULT_CAPS, seed=0, additive_samples=10_000):
    """Stability witnesses in the class-3 nilpotent ring: for f a sum of
    odd-indexed generators and g = X_(2^i0), the product f.g escapes ker h."""
    run = _Run("nilpotent-stab", {"k": k, "witnesses": witnesses})
    if not isinstance(k, int) or k < 3:
        raise ScenarioParamError("need integer k >= 3")
    if witnesses is None:
        witnesses = DEFAULT_NILPOTENT_WITNESSES
    witnesses = tuple((int(i0), tuple(int(i) for i in idxs)) for i0, idxs in witnesses)
    run.params = {"k": k, "witnesses": [list((i0, list(idxs))) for i0, idxs in witnesses]}
    for i0, idxs in witnesses:
        if i0 % 2 == 0 or 2**i0 >= k:
            raise ScenarioParamError(f"witness i0={i0} needs i0 odd and 2^i0 < k")
        if not idxs or idxs[0] != i0 or any(i % 2 == 0 for i in idxs) or list(idxs) != sorted(set(idxs)):
            raise ScenarioParamError(f"witness indices {idxs} must be odd, ascending, starting at i0")
        if max(idxs) >= k:
            raise ScenarioParamError("witness index out of range")

    rng = random.Random(seed)
    additive_ok = True
    for _ in range(additive_samples):
        x, y = _random_nilpotent(rng, k), _random_nilpotent(rng, k)
        if nilpotent_h(x + y) != nilpotent_h(x) ^ nilpotent_h(y):
            additive_ok = False
            break
    run.check("h-additive", additive_ok, f"{additive_samples} random pairs")
    run.check(
        "index-two",
        nilpotent_h(Nilpotent3Element.generator(1)) == 1
        and nilpotent_h(Nilpotent3Element()) == 0,
        "h is onto Z_2, so ker h has index 2",
    )

    for i0, idxs in witnesses:
        g_idx = 2**i0
        g = Nilpotent3Element.generator(g_idx)
        f = Nilpotent3Element(frozenset(idxs), frozenset())
        label = "+".join(f"X{i}" for i in idxs)
        run.check(f"g-in-kernel[{label}]", nilpotent_h(g) == 0, f"g = X{g_idx}")
        fg = nilpotent3_mul(f, g, k)
        term_ok = True
        details = []
        for ij in idxs:
            pair = (min(ij, g_idx), max(ij, g_idx))
            val = nilpotent_h(Nilpotent3Element(frozenset(), frozenset([pair])))
            if ij == i0:
                expected = 1
                reason = f"2^{i0} is a positive multiple of 2^{i0}"
            elif ij <= g_idx:
                expected = 0
                reason = f"2^{ij} does not divide 2^{i0}"
            else:
                expected = 0
                reason = f"2^(2^{i0}) does not divide odd {ij}"
            term_ok = term_ok and val == expected
            details.append(f"h(X{ij}X{g_idx})={val} ({reason})")
        run.check(f"termwise-cases[{label}]", term_ok, "; ".join(details))
        run.check(
            f"product-escapes-kernel[{label}]",
            nilpotent_h(fg) == 1,
            f"h(f.g) = 1, so f does not stabilise ker h",
        )
    return run.report()


def run_zq_subgroup(q, N, gens, caps=DEFAULT_CAPS, seed=0):
    """Triangularize a subgroup of Z_q^N, plant the prefix ideal inside R.H,
    and bound the best ideal index inside R.H by q^[R:H]."""
    run = _Run("zq-subgroup", {"q": q, "N": N, "gens": [list(g) for g in gens]})
    if not (isinstance(q, int) and q >= 2 and isinstance(N, int) and N >= 1):
        raise ScenarioParamError("need integers q >= 2 and N >= 1")
    if q**N > caps.max_ring_size:
        raise CapExceeded(f"Z_{q}^{N} exceeds the ring-size cap")
    basis = triangularize(q, N, gens)
    ring = build_zq_power(q, N)
    h = closure(ring, [vector_index(ring, g) for g in gens])
    rebuilt = closure(ring, [vector_index(ring, r) for r in basis.rows])
    run.check("triangular-reconstruction", rebuilt.carrier == h.carrier)
    run.check("index-agreement", basis.index == h.index, f"index {h.index}")
    run.check(
        "pivot-bound",
        len(basis.noninvertible) < h.index,
        f"{len(basis.noninvertible)} non-invertible pivots < index {h.index}",
    )

    prefix = max(basis.noninvertible) + 1 if basis.noninvertible else 0
    dig = ring.digit_planes
    mask = np.ones(ring.size, dtype=bool)
    for j in range(prefix):
        mask &= dig[j] == 0
    prefix_ideal = ElementSet(ring, bits_from_bool(mask))
    rh = product_set(h.carrier, LEFT)
    run.check(
        "prefix-ideal-inside-RH",
        prefix_ideal.issubset(rh),
        f"0^{prefix} x Z_{q}^{N - prefix} inside R.H, checked exhaustively",
    )
    res = find_ideal_within(rh)
    run.check(
        "found-ideal-verifies",
        res.found is not None and is_two_sided_ideal(res.found) and res.found.issubset(rh),
    )
    run.check(
        "ideal-index-bound",
        res.min_index_found is not None and res.min_index_found < q**h.index,
        f"min index {res.min_index_found} < {q}^{h.index} ({'exhaustive' if res.exhaustive else 'greedy'})",
    )
    run.witness(set_witness(res.found, "minimum-index ideal inside R.H"))
    run.witness(
        {
            "kind": "triangular-basis",
            "label": "row-major triangular generators",
            "rows": [list(r) for r in basis.rows],
            "diagonal": list(basis.diagonal),
            "index": basis.index,
        }
    )
    return run.report()


def run_zq_census(q, N, caps=DEFAULT_CAPS, seed=0):
    """Full subgroup census of Z_q^N: every subgroup's product set R.H holds
    an ideal of index strictly below q^[R:H]."""
    run = _Run("zq-census", {"q": q, "N": N})
    if not (isinstance(q, int) and q >= 2 and isinstance(N, int) and N >= 1):
        raise ScenarioParamError("need integers q >= 2 and N >= 1")
    if q**N > 256:
        raise CapExceeded("census enumeration is limited to 256 elements")
    ring = build_zq_power(q, N)
    subgroups = all_subgroups(ring)
    ok = True
    detail = ""
    worst = None
    for h in subgroups:
        rh = product_set(h.carrier, LEFT)
        res = find_ideal_within(rh, exhaustive_cap=caps.ideal_exhaustive)
        good = (
            res.found is not None
            and res.exhaustive
            and is_two_sided_ideal(res.found)
            and res.found.issubset(rh)
            and res.min_index_found < q**h.index
        )
        if not good:
            ok = False
            detail = f"subgroup of index {h.index}: min ideal index {res.min_index_found}"
            break
        if worst is None or res.min_index_found > worst:
            worst = res.min_index_found
    run.check(
        "index-bound-over-census",
        ok,
        detail or f"{len(subgroups)} subgroups, worst min ideal index {worst}",
    )
    return run.report()


def _det(mat):
    n = len(mat)
    if n == 1:
        return mat[0][0]
    total = 0
    for j in range(n):
        if mat[0][j]:
            minor = [row[:j] + row[j + 1 :] for row in mat[1:]]
            total += (-1) ** j * mat[0][j] * _det(minor)
    return total


def lattice_index_oracle(gens, n):
    """Index of the lattice spanned by gens in Z^n: gcd of all n x n minors."""
    import itertools

    g = 0
    rows = [list(map(int, r)) for r in gens]
    for combo in itertools.combinations(rows, n):
        g = math.gcd(g, abs(_det([list(r) for r in combo])))
    return g


def run_triangular_random(caps=DEFAULT_CAPS, seed=0, count=200, zero_count=50):
    """Randomized triangularization suite over Z_q^N (q in {2,3,4,6}) and
    integer lattices (q = 0), with independent index oracles."""
    run = _Run("triangular-random", {"count": count, "zero_count": zero_count, "seed": seed})
    rng = random.Random(seed)
    qs = [2, 3, 4, 6]
    rings = {}
    recon_ok = bound_ok = True
    fail_detail = ""
    for i in range(count):
        q = qs[i % len(qs)]
        n = rng.randint(1, 6)
        while q**n > 4096:
            n = rng.randint(1, 5)
        ngens = rng.randint(0, n + 1)
        gens = [[rng.randrange(q) for _ in range(n)] for _ in range(ngens)]
        basis = triangularize(q, n, gens)
        ring = rings.get((q, n))
        if ring is None:
            ring = rings[(q, n)] = build_zq_power(q, n)
        h = closure(ring, [vector_index(ring, g) for g in gens])
        rebuilt = closure(ring, [vector_index(ring, r) for r in basis.rows])
        if rebuilt.carrier != h.carrier or basis.index != h.index:
            recon_ok = False
            fail_detail = f"q={q} n={n} gens={gens}"
            break
        if not len(basis.noninvertible) < basis.index:
            bound_ok = False
            fail_detail = f"q={q} n={n} gens={gens}"
            break
    run.check("reconstruction-matches-closure", recon_ok, fail_detail or f"{count} instances")
    run.check("pivot-bound", bound_ok, fail_detail or "asserted on every instance")

    zero_ok = True
    zero_detail = ""
    done = 0
    while done < zero_count:
        n = rng.randint(1, 4)
        sq = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        det = _det(sq)
        if det == 0 or abs(det) > 40:
            continue
        extra = []
        for _ in range(rng.randint(0, 2)):
            coeffs = [rng.randint(-2, 2) for _ in range(n)]
            extra.append([sum(c * sq[r][j] for r, c in enumerate(coeffs)) for j in range(n)])
        gens = sq + extra
        basis = triangularize(0, n, gens)
        oracle = lattice_index_oracle(gens, n)
        brute = _coset_count_bfs(sq, n, cap=200)
        if basis.index != abs(det) or basis.index != oracle or brute != basis.index:
            zero_ok = False
            zero_detail = f"n={n} gens={gens} -> {basis.index}, det {abs(det)}, minors {oracle}, cosets {brute}"
            break
        done += 1
    run.check(
        "integer-lattice-index",
        zero_ok,
        zero_detail or f"{zero_count} instances: determinant, minor-gcd and coset counts agree",
    )
    return run.report()


def _adjugate(mat):
    n = len(mat)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [mat[r][c] for c in range(n) if c != j] for r in range(n) if r != i
            ]
            out[j][i] = (-1) ** (i + j) * (_det(minor) if minor else 1)
    return out


def _coset_count_bfs(square_basis, n, cap=10_000):
    """Count cosets of the lattice spanned by a nonsingular square basis by
    walking unit steps in the quotient.

    Residues are distinguished through x . adj(B) mod det(B), whose kernel is
    exactly the lattice (Cramer), so the walk never consults the triangular
    machinery.
    """
    det = abs(_det(square_basis))
    adj = _adjugate(square_basis)

    def residue(v):
        return tuple(
            sum(v[r] * adj[r][c] for r in range(n)) % det for c in range(n)
        )

    start = (0,) * n
    seen = {residue(start)}
    frontier = [start]
    count = 1
    while frontier:
        nxt = []
        for v in frontier:
            for j in range(n):
                for d in (1, -1):
                    w = list(v)
                    w[j] += d
                    key = residue(w)
                    if key in seen:
                        continue
                    seen.add(key)
                    nxt.append(tuple(w))
                    count += 1
                    if count > cap:
                        raise RuntimeError("coset walk exceeded its cap")
        frontier = nxt
    return count


_GENERIC_RING_POOL = (
    {"kind": "zq_power", "q": 2, "n": 4},
    {"kind": "zq_power", "q": 2, "n": 6},
    {"kind": "zq_power", "q": 2, "n": 8},
    {"kind": "zq_power", "q": 3, "n": 3},
    {"kind": "zq_power", "q": 3, "n": 5},
    {"kind": "zq_power", "q": 4, "n": 3},
    {"kind": "zq_power", "q": 5, "n": 3},
    {"kind": "zq_power", "q": 6, "n": 2},
    {"kind": "zq_power", "q": 8, "n": 2},
    {"kind": "zq_power", "q": 12, "n": 2},
    {"kind": "boolean", "x_size": 5},
    {"kind": "boolean", "x_size": 7},
    {"kind": "poly_quotient", "k": 2, "l": 3, "kp": 1},
    {"kind": "poly_quotient", "k": 6, "l": 2, "kp": 0},
    {"kind": "poly_quotient", "k": 3, "l": 4, "kp": 1},
    {"kind": "exotic", "a": 1, "b": 1},
    {"kind": "exotic", "a": 2, "b": 2},
)


def _pool_rings(max_size):
    rings = []
    for desc in _GENERIC_RING_POOL:
        ring = from_descriptor(desc)
        if ring.size <= max_size:
            rings.append(ring)
    return rings


def _random_symmetric_set(rng, ring, density=0.35, ensure_zero=False):
    bits = 0
    for i in range(ring.size):
        if rng.random() < density:
            bits |= (1 << i) | (1 << ring.neg(i))
    if ensure_zero or bits == 0:
        bits |= 1 << ring.zero
    return ElementSet(ring, bits)


def _coset_union_set(rng, ring, max_index=16):
    """A symmetric union of cosets of a random subgroup, always containing the
    subgroup itself (so 0 is inside and translate classes collapse)."""
    h = closure(ring, [rng.randrange(ring.size) for _ in range(rng.randint(1, 3))])
    while h.index > max_index:
        h = closure(ring, list(h.generators) + [rng.randrange(ring.size)])
    bits = h.carrier.bits
    for rep in coset_representatives(h.carrier):
        if rng.random() < 0.5:
            bits |= ring.translate_bits(h.carrier.bits, rep)
            bits |= ring.translate_bits(h.carrier.bits, ring.neg(rep))
    return ElementSet(ring, bits)


def run_generic_generation(caps=DEFAULT_CAPS, seed=0, count=500):
    """Seeded generic symmetric sets D: E = D u {0} u -D generates <D> within
    3n steps, n the exact covering number.

    Instances mix dense random sets, symmetric coset unions (where the
    covering search collapses onto the quotient), and unrestricted sets on
    small rings; the covering number is exact for every one.
    """
    run = _Run("generic-generation", {"count": count, "seed": seed})
    rng = random.Random(seed)
    rings = _pool_rings(256)
    small = [r for r in rings if r.size <= 32]
    ok = True
    detail = ""
    worst = 0
    worst_n = 0
    for i in range(count):
        kind = i % 5
        if kind <= 1:
            ring = rings[i % len(rings)]
            d = _random_symmetric_set(rng, ring, density=0.8)
        elif kind <= 3:
            ring = rings[i % len(rings)]
            d = _coset_union_set(rng, ring)
        else:
            ring = small[i % len(small)]
            d = _random_symmetric_set(rng, ring, density=0.35)
        rep = verify_generic_generation_bound(d)
        worst = max(worst, rep.steps_needed or 0)
        worst_n = max(worst_n, rep.cover_number)
        if not (rep.holds and rep.cover_exact):
            ok = False
            detail = f"ring {ring.label}, instance {i}: needed {rep.steps_needed}, bound {rep.bound}"
            break
    run.check(
        "three-n-bound",
        ok,
        detail or f"{count} instances, worst steps {worst}, worst covering number {worst_n}",
    )
    return run.report()


def run_sunital_factorial(caps=DEFAULT_CAPS, seed=0, count=100):
    """Seeded thick sets D in (s-)unital rings: n! R lands inside R.D for n
    the exact thickness.

    Thick sets come as symmetric coset unions over a subgroup (where the
    thickness search collapses onto the quotient) plus noisy subgroup unions
    on small rings.
    """
    run = _Run("sunital-factorial", {"count": count, "seed": seed})
    rng = random.Random(seed)
    rings = _pool_rings(512)
    small = [r for r in rings if r.size <= 64]
    axiom_cache = {}
    ok = True
    detail = ""
    done = 0
    attempts = 0
    while done < count and attempts < 50 * count:
        attempts += 1
        if done % 2 == 0:
            ring = rings[attempts % len(rings)]
            d = _coset_union_set(rng, ring, max_index=12)
        else:
            ring = small[attempts % len(small)]
            gens = [rng.randrange(ring.size) for _ in range(rng.randint(1, 3))]
            h = closure(ring, gens)
            if h.index > 4:
                continue
            extra = _random_symmetric_set(rng, ring, density=0.04)
            d = ElementSet(ring, h.carrier.bits | extra.bits)
        if ring.zero not in d:
            continue
        if ring.label not in axiom_cache:
            axiom_cache[ring.label] = check_ring_axioms(ring, seed=seed)
        ax = axiom_cache[ring.label]
        rep = verify_sunital_factorial(ring, d, left_s_unital=ax.left_s_unital)
        if not rep.applicable:
            continue
        if not rep.holds:
            ok = False
            detail = f"ring {ring.label}: thickness {rep.thickness}, minimal multiple {rep.minimal_multiple}"
            break
        done += 1
    run.check(
        "factorial-multiple-inside-RD",
        ok and done == count,
        detail or f"{done} thick instances",
    )
    return run.report()


def run_fg_ideal(caps=DEFAULT_CAPS, seed=0):
    """Finitely-generated-ring ideal witness: quotient sizes match the
    division-argument representative count; structural certificate for n = 2."""
    run = _Run("fg-ideal", {})
    rep = intpoly.fg_ideal_witness(1, 2, [(1, 3)])
    run.check(
        "quotient-size-2-3",
        rep.tabulated_size == 8 and rep.tabulated_matches,
        f"Z_2[X]/(X^3 - X^1) has {rep.tabulated_size} elements = 2^3",
    )
    rep = intpoly.fg_ideal_witness(1, 3, [(0, 2)])
    run.check(
        "quotient-size-3-2",
        rep.tabulated_size == 9 and rep.tabulated_matches,
        f"Z_3[X]/(X^2 - X^0) has {rep.tabulated_size} elements = 3^2",
    )
    rep = intpoly.fg_ideal_witness(2, 2, [(1, 2), (1, 2)])
    run.check(
        "structural-certificate-n2",
        rep.generator_count == 3 and rep.structural_ok,
        f"generators {list(rep.generators)}, representative bound {rep.representative_bound}",
    )
    return run.report()


_REFLECTION_CORPUS = (
    {"kind": "zq_power", "q": 2, "n": 4},
    {"kind": "zq_power", "q": 3, "n": 3},
    {"kind": "zq_power", "q": 4, "n": 2},
    {"kind": "zq_power", "q": 6, "n": 2},
    {"kind": "boolean", "x_size": 5},
    {"kind": "poly_quotient", "k": 2, "l": 3, "kp": 1},
    {"kind": "poly_quotient", "k": 6, "l": 2, "kp": 0},
    {"kind": "exotic", "a": 1, "b": 1},
    {"kind": "exotic", "a": 2, "b": 2},
)


def run_ideal_reflection(caps=DEFAULT_CAPS, seed=0):
    """Soundness-only reflection of the headline containment: H + R.H always
    yields a verified two-sided ideal via the search, for every subgroup of
    every corpus ring; the empirical minimum indices are recorded with no
    bound asserted."""
    run = _Run("ideal-reflection", {})
    stats = []
    ok = True
    detail = ""
    for desc in _REFLECTION_CORPUS:
        ring = from_descriptor(desc)
        worst_index = 1
        count = 0
        for h in all_subgroups(ring):
            s = half_step_set(h, 1, LEFT)
            res = find_ideal_within(s, exhaustive_cap=caps.ideal_exhaustive)
            good = (
                res.found is not None
                and res.exhaustive
                and is_two_sided_ideal(res.found)
                and res.found.issubset(s)
            )
            if not good:
                ok = False
                detail = f"{ring.label}: subgroup of index {h.index}"
                break
            worst_index = max(worst_index, res.min_index_found)
            count += 1
        stats.append(
            {"ring": ring.label, "subgroups": count, "worst_min_index": worst_index}
        )
        if not ok:
            break
    run.check(
        "verified-ideal-in-every-half-step-set",
        ok,
        detail or f"{sum(s['subgroups'] for s in stats)} subgroups across {len(stats)} rings",
    )
    run.witness({"kind": "reflection-stats", "per_ring": stats})
    return run.report()


def run_bourgain(caps=DEFAULT_CAPS, seed=0):
    """Descending-system checker: chains of ideals pass, a non-symmetric
    level and a non-descending pair are flagged with the violated condition."""
    run = _Run("bourgain", {})
    ring = build_boolean_ring(3)
    i1 = ElementSet.from_indices(ring, [0, 1, 2, 3])  # subsets of {0,1}
    i2 = ElementSet.from_indices(ring, [0, 1])  # subsets of {0}
    d = i1
    rep = verify_bourgain_system([i1, i2], d, half_steps=4, mode=LEFT)
    run.check("ideal-chain-passes", rep.ok, rep.first_violation or "all conditions hold")
    rep_const = verify_bourgain_system([i2, i2, i2], d, half_steps=4, mode=LEFT)
    run.check("constant-ideal-passes", rep_const.ok)
    rep_desc = verify_bourgain_system([i2, i1], d, half_steps=4, mode=LEFT)
    run.check(
        "non-descending-flagged",
        not rep_desc.ok and rep_desc.first_violation == "descending",
        f"first violation: {rep_desc.first_violation}",
    )
    z9 = build_zq_power(3, 2)
    asym = ElementSet.from_indices(z9, [0, 1])  # 1 in, -1 out
    rep_asym = verify_bourgain_system(
        [ElementSet.full(z9), asym], ElementSet.full(z9), half_steps=4, mode=LEFT
    )
    run.check(
        "non-symmetric-flagged",
        not rep_asym.ok and rep_asym.first_violation == "symmetric",
        f"first violation: {rep_asym.first_violation}",
    )
    return run.report()


# -- randomized property corpus ----------------------------------------------------


@dataclass
class PropertyOutcome:
    name: str
    instances: int
    failures: list = field(default_factory=list)


def _shrink_set(ring, bits, still_fails):
    changed = True
    while changed:
        changed = False
        b = bits
        while b:
            low = b & -b
            b ^= low
            cand = bits ^ low
            if cand and still_fails(cand):
                bits = cand
                changed = True
        if bits.bit_count() <= 1:
            break
    return bits


def _corpus_descriptor(rng, max_size):
    while True:
        kind = rng.choice(["zq_power", "boolean", "poly_quotient", "exotic"])
        if kind == "zq_power":
            q = rng.choice([2, 3, 4, 5, 6])
            n = rng.randint(1, 4)
            desc = {"kind": kind, "q": q, "n": n}
            size = q**n
        elif kind == "boolean":
            n = rng.randint(1, 6)
            desc = {"kind": kind, "x_size": n}
            size = 2**n
        elif kind == "poly_quotient":
            k = rng.choice([2, 3, 4, 6])
            l = rng.randint(1, 3)
            kp = rng.randrange(l)
            desc = {"kind": kind, "k": k, "l": l, "kp": kp}
            size = k**l
        else:
            a, b = rng.randint(1, 2), rng.randint(1, 2)
            desc = {"kind": kind, "a": a, "b": b}
            size = 2 ** (a + b + 2)
        if size <= max_size:
            return desc


def run_corpus_properties(seed=1, budget=100, caps=DEFAULT_CAPS, corpus=None):
    """Drive every module invariant over a seeded random corpus.

    Deterministic given the seed; each property runs at least ``budget``
    instances and any failure is reported with a shrunk witness.
    """
    run = _Run("corpus", {"seed": seed, "budget": budget})
    rng = random.Random(seed)
    if corpus is None:
        corpus = [from_descriptor(_corpus_descriptor(rng, 128)) for _ in range(12)]
    ring_cycle = lambda i: corpus[i % len(corpus)]

    def random_set(ring, density=0.3):
        bits = 0
        for i in range(ring.size):
            if rng.random() < density:
                bits |= 1 << i
        return ElementSet(ring, bits)

    def random_subgroup(ring):
        return closure(ring, [rng.randrange(ring.size) for _ in range(rng.randint(0, 3))])

    outcomes = []

    def property_loop(name, body, instances=None):
        out = PropertyOutcome(name, 0)
        for i in range(instances if instances is not None else budget):
            try:
                witness = body(i)
            except Exception as exc:  # property bodies signal failure by returning a witness
                witness = f"exception: {exc!r}"
            out.instances += 1
            if witness is not None:
                out.failures.append(_plain(witness))
                break
        outcomes.append(out)

    def p_axioms(i):
        # alternate between the corpus rings themselves and fresh random ones
        if i % 2 == 0:
            ring = ring_cycle(i // 2)
        else:
            ring = from_descriptor(_corpus_descriptor(rng, 64))
        rep = check_ring_axioms(ring, seed=seed + i)
        if not rep.ok:
            return {"ring": ring.label, "failures": rep.failures}
        return None

    def p_boolean_iso(i):
        n = rng.randint(1, 5)
        b = build_boolean_ring(n)
        z = build_zq_power(2, n)
        x, y = rng.randrange(b.size), rng.randrange(b.size)
        if b.add(x, y) != z.add(x, y) or b.mul(x, y) != z.mul(x, y):
            return {"n": n, "x": x, "y": y}
        return None

    def p_exotic_functional(i):
        a, b = rng.randint(1, 3), rng.randint(1, 3)
        ring = build_exotic(ExoticRingSpec(a, b))
        r = rng.randrange(1 << (a + b))
        j = rng.randrange(a)
        lhs = ring.mul(1 << j, r)
        rhs = (1 << (a + b)) if (r >> j) & 1 else 0
        if lhs != rhs:
            return {"a": a, "b": b, "r": ring.decode(r), "j": j}
        return None

    def p_nilpotent(i):
        k = 9
        x, y, z = (_random_nilpotent(rng, k) for _ in range(3))
        xy = nilpotent3_mul(x, y, k)
        if nilpotent3_mul(xy, z, k).is_zero() and xy == nilpotent3_mul(y, x, k):
            return None
        return {"x": sorted(x.linear), "y": sorted(y.linear)}

    def p_closure_idempotent(i):
        ring = ring_cycle(i)
        h = random_subgroup(ring)
        again = closure(ring, [int(j) for j in h.carrier.indices()])
        if again.carrier != h.carrier or again.index != h.index:
            return set_witness(h.carrier, "closure not idempotent")
        return None

    def p_sumset_laws(i):
        ring = ring_cycle(i)
        d1, d2, d3 = (random_set(ring) for _ in range(3))
        if sumset(d1, d2) != sumset(d2, d1):
            return set_witness(d1, "commutativity broke")
        if sumset(sumset(d1, d2), d3) != sumset(d1, sumset(d2, d3)):
            return set_witness(d3, "associativity broke")
        h = random_subgroup(ring)
        if n_fold_sum(h.carrier, rng.randint(1, 4)) != h.carrier:
            return set_witness(h.carrier, "subgroup not fixed by folding")
        return None

    def p_coset_independence(i):
        ring = ring_cycle(i)
        is_coset_independent(random_subgroup(ring), random_subgroup(ring))  # raises on mismatch
        return None

    def p_thickness_two(i):
        ring = ring_cycle(i)
        d = _random_symmetric_set(rng, ring, density=rng.choice([0.3, 0.9]), ensure_zero=True)
        th = thickness(d)
        expanded = all(
            ring.add(g1, ring.neg(g0)) in d
            for g0 in range(ring.size)
            for g1 in range(ring.size)
        )
        if (th.kind == "value" and th.value == 2) != expanded:
            return set_witness(d, f"thickness {th} vs quantifier expansion {expanded}")
        return None

    def p_triangular(i):
        q = rng.choice([2, 3, 4, 6])
        n = rng.randint(1, 3)
        gens = [[rng.randrange(q) for _ in range(n)] for _ in range(rng.randint(0, n + 1))]
        basis = triangularize(q, n, gens)
        ring = build_zq_power(q, n)
        h = closure(ring, [vector_index(ring, g) for g in gens])
        rebuilt = closure(ring, [vector_index(ring, r) for r in basis.rows])
        if rebuilt.carrier != h.carrier or basis.index != h.index:
            return {"q": q, "n": n, "gens": gens}
        return None

    def p_product_monotone(i):
        ring = ring_cycle(i)
        d = random_set(ring)
        bigger = ElementSet(ring, d.bits | random_set(ring, 0.1).bits)
        mode = SideMode(rng.choice(["left", "right", "two_sided"]), rng.random() < 0.5)
        if not product_set(d, mode).issubset(product_set(bigger, mode)):
            return set_witness(d, f"monotonicity broke for {mode.describe()}")
        return None

    def p_min_steps_closure(i):
        ring = ring_cycle(i)
        h = random_subgroup(ring)
        mode = rng.choice([LEFT, TWO_SIDED_UNIT])
        steps, chain = min_steps_to_group(h, mode, max_n=12)
        if steps is None:
            return set_witness(h.carrier, f"no group within 12 steps ({mode.describe()})")
        stabilised = chain.layers[-1]
        if mode is TWO_SIDED_UNIT:
            target = ideal_closure(h.carrier, "two_sided")
        else:
            target = ideal_closure(product_set(h.carrier, LEFT), "left")
        if stabilised != target:
            return set_witness(h.carrier, f"stabilised layer differs from the {mode.side} closure")
        return None

    def p_find_ideal(i):
        ring = ring_cycle(i)
        h = random_subgroup(ring)
        s = half_step_set(h, 1, LEFT)
        res = find_ideal_within(s, exhaustive_cap=caps.ideal_exhaustive)
        if res.found is None or not is_two_sided_ideal(res.found) or not res.found.issubset(s):
            return set_witness(s, "search returned an unverified ideal")
        return None

    def p_zq_index_bound(i):
        q = rng.choice([2, 3])
        n = rng.randint(1, 4)
        ring = build_zq_power(q, n)
        h = random_subgroup(ring)
        res = find_ideal_within(product_set(h.carrier, LEFT))
        if res.min_index_found >= q**h.index:
            return set_witness(h.carrier, f"index {res.min_index_found} >= {q}^{h.index}")
        return None

    def p_generation_bound(i):
        ring = ring_cycle(i)
        rep = verify_generic_generation_bound(_random_symmetric_set(rng, ring))
        if not rep.holds:
            return {"ring": ring.label, "needed": rep.steps_needed, "bound": rep.bound}
        return None

    def p_factorial(i):
        ring = ring_cycle(i)
        h = random_subgroup(ring)
        if h.index > 8:
            return None
        d = ElementSet(ring, h.carrier.bits | _random_symmetric_set(rng, ring, 0.05).bits)
        rep = verify_sunital_factorial(ring, d, left_s_unital=True)
        if rep.applicable and not rep.holds:
            bad = _shrink_set(
                ring,
                d.bits,
                lambda bits: (
                    lambda r: r.applicable and not r.holds
                )(verify_sunital_factorial(ring, ElementSet(ring, bits), left_s_unital=True)),
            )
            return set_witness(ElementSet(ring, bad), "factorial containment broke")
        return None

    def p_bourgain(i):
        ring = ring_cycle(i)
        h = random_subgroup(ring)
        ideal = ideal_closure(h.carrier, "two_sided")
        rep = verify_bourgain_system([ideal, ideal], ElementSet.full(ring), 2, LEFT)
        if not rep.ok:
            return set_witness(ideal, f"ideal chain rejected: {rep.first_violation}")
        return None

    def p_poly_parity(i):
        def rand_poly():
            return IntPoly(
                {rng.randrange(0, 24): rng.randrange(-6, 7) for _ in range(rng.randrange(0, 6))}
            )

        p1, p2 = rand_poly(), rand_poly()
        if intpoly.in_H(p1) and intpoly.in_H(p2) and not intpoly.in_H(p1 + p2):
            return poly_witness(p1, "kernel not additive")
        if not intpoly.in_H(2 * p1):
            return poly_witness(p1, "doubling left H")
        a, b = rng.randrange(0, 40), rng.randrange(0, 40)
        if intpoly.is_prime_exponent(a) == intpoly.is_prime_exponent(b):
            if not intpoly.in_H(IntPoly({a: 1}) - IntPoly({b: 1})):
                return poly_witness(IntPoly({a: 1, b: -1}), "matching-class difference left H")
        return None

    def p_poly_reduce(i):
        m = rng.randint(1, 4)
        p = IntPoly(
            {rng.randrange(0, 40): rng.randrange(-30, 30) for _ in range(rng.randrange(0, 6))}
        )
        q2 = IntPoly(
            {rng.randrange(0, 40): rng.randrange(-30, 30) for _ in range(rng.randrange(0, 6))}
        )
        nf, u, v = intpoly.reduce_mod_Im_certified(p, m)
        f = math.factorial(m)
        if nf + f * u + intpoly.build_Qprime(m) * v != p:
            return poly_witness(p, f"multiplier identity broke at m={m}")
        if intpoly.reduce_mod_Im(nf, m) != nf:
            return poly_witness(p, "reduction not idempotent")
        if intpoly.reduce_mod_Im(p + q2, m) != intpoly.reduce_mod_Im(
            intpoly.reduce_mod_Im(p, m) + intpoly.reduce_mod_Im(q2, m), m
        ):
            return poly_witness(p, "reduction not additive")
        return None

    def p_certify_sound(i):
        # products r*h with h in H must never certify
        def rand_h():
            out = 2 * IntPoly(
                {rng.randrange(0, 12): rng.randrange(-4, 5) for _ in range(rng.randrange(0, 4))}
            )
            for _ in range(rng.randrange(0, 3)):
                cls = rng.random() < 0.5
                pool = [e for e in range(24) if intpoly.is_prime_exponent(e) == cls]
                a, b = rng.choice(pool), rng.choice(pool)
                out = out + IntPoly({a: 1}) - IntPoly({b: 1})
            return out

        r = IntPoly({rng.randrange(0, 8): rng.randrange(-5, 6) for _ in range(rng.randrange(1, 4))})
        q2 = r * rand_h()
        if q2.is_zero() or q2.degree() < 1:
            return None
        cert = intpoly.certify_not_in_RH(q2, 2, 3)
        if cert.certified:
            return poly_witness(q2, "a product r*h was certified outside R.H")
        return None

    property_loop("ring-axioms", p_axioms)
    property_loop("boolean-vs-componentwise", p_boolean_iso)
    property_loop("exotic-functional-product", p_exotic_functional)
    property_loop("nilpotent-class3", p_nilpotent)
    property_loop("closure-idempotent", p_closure_idempotent)
    property_loop("sumset-laws", p_sumset_laws)
    property_loop("coset-independence-agreement", p_coset_independence)
    property_loop("thickness-two-characterisation", p_thickness_two)
    property_loop("triangular-reconstruction", p_triangular)
    property_loop("product-set-monotone", p_product_monotone)
    property_loop("min-steps-matches-ideal-closure", p_min_steps_closure)
    property_loop("half-step-ideal-verified", p_find_ideal)
    property_loop("zq-ideal-index-bound", p_zq_index_bound)
    property_loop("generic-generation-bound", p_generation_bound)
    property_loop("factorial-multiple", p_factorial)
    property_loop("bourgain-ideal-chain", p_bourgain)
    property_loop("poly-parity-kernel", p_poly_parity)
    property_loop("poly-reduction", p_poly_reduce)
    property_loop("certificate-soundness", p_certify_sound)

    for out in outcomes:
        run.check(
            out.name,
            not out.failures,
            f"{out.instances} instances" + (f"; witness: {out.failures[0]}" if out.failures else ""),
        )
    run.witness(
        {
            "kind": "property-counts",
            "instances": {o.name: o.instances for o in outcomes},
        }
    )
    return run.report()


# -- registry -----------------------------------------------------------------------


@dataclass(frozen=True)
class ScenarioDef:
    claim_id: str
    fn: object
    description: str
    tags: tuple
    aliases: tuple = ()
    defaults: tuple = ()  # ordered (name, value) pairs
    required: tuple = ()


SCENARIOS = {}
_ALIASES = {}


def _register(claim_id, fn, description, tags, aliases=(), defaults=(), required=()):
    d = ScenarioDef(claim_id, fn, description, tuple(tags), tuple(aliases), tuple(defaults), tuple(required))
    SCENARIOS[claim_id] = d
    for a in aliases:
        _ALIASES[a] = claim_id


_register(
    "z2-steps",
    run_z2_steps,
    "step-count floor for subgroups of boolean rings",
    ["section-7", "steps"],
    aliases=["prop-7.7"],
    required=["n"],
)
_register(
    "nested-chain",
    run_nested_chain,
    "nested subgroups separating n steps from n-1 steps",
    ["section-7", "steps"],
    aliases=["lemma-7.8"],
    required=["n", "m"],
)
_register(
    "lemma-7.1",
    run_zx_lemma,
    "Z[X] parity subgroup and certified polynomials outside R.H",
    ["section-7", "polynomial"],
    aliases=["zx-lemma"],
    required=["m"],
)
_register(
    "xz-ring",
    run_xz_ring,
    "constant-free polynomial ring witness with valuation 1",
    ["section-7", "polynomial"],
    aliases=["example-7.3"],
    required=["m"],
)
_register(
    "exotic-ring",
    run_exotic,
    "characteristic-2 ring on independent functionals: R.G swallows no ideal",
    ["section-7"],
    aliases=["example-7.2"],
    required=["a", "b"],
)
_register(
    "nilpotent-stab",
    run_nilpotent,
    "class-3 nilpotent ring: products escape the index-2 kernel",
    ["section-7"],
    aliases=["example-7.4"],
    defaults=[("k", 9)],
)
_register(
    "zq-subgroup",
    run_zq_subgroup,
    "triangular basis, prefix ideal inside R.H, and the q^index bound",
    ["section-7"],
    aliases=["prop-7.6", "lemma-7.5"],
    required=["q", "N", "gens"],
)
_register(
    "zq-census",
    run_zq_census,
    "full subgroup census of Z_q^N against the q^index ideal bound",
    ["section-7", "suite"],
    required=["q", "N"],
)
_register(
    "triangular-random",
    run_triangular_random,
    "randomized triangularization suite with independent index oracles",
    ["section-7", "suite"],
    defaults=[("count", 200), ("zero_count", 50)],
)
_register(
    "generic-generation",
    run_generic_generation,
    "E = D u {0} u -D generates <D> within three covering numbers of steps",
    ["suite"],
    aliases=["lemma-4.2"],
    defaults=[("count", 500)],
)
_register(
    "sunital-factorial",
    run_sunital_factorial,
    "thickness factorial multiples land inside R.D",
    ["suite"],
    aliases=["lemma-3.2"],
    defaults=[("count", 100)],
)
_register(
    "fg-ideal",
    run_fg_ideal,
    "finitely-generated ideal witness and quotient representative counts",
    ["suite"],
    aliases=["prop-5.2"],
)
_register(
    "ideal-reflection",
    run_ideal_reflection,
    "every half-step set of every corpus subgroup holds a verified ideal",
    ["suite"],
    aliases=["theorem-4.4"],
)
_register(
    "bourgain",
    run_bourgain,
    "descending generic symmetric system checker",
    ["suite"],
)
_register(
    "corpus",
    run_corpus_properties,
    "randomized property corpus across all modules",
    ["suite"],
    defaults=[("budget", 100)],
)


def resolve_claim(claim_id):
    if claim_id in SCENARIOS:
        return claim_id
    if claim_id in _ALIASES:
        return _ALIASES[claim_id]
    raise ScenarioParamError(f"unknown claim id {claim_id!r}")


def run_scenario(claim_id, params=None, caps=DEFAULT_CAPS, seed=0):
    """Resolve, validate, and execute one scenario; cap violations become
    inconclusive reports rather than exceptions."""
    key = resolve_claim(claim_id)
    d = SCENARIOS[key]
    kwargs = dict(d.defaults)
    kwargs.update(params or {})
    missing = [r for r in d.required if r not in kwargs]
    if missing:
        raise ScenarioParamError(f"{key}: missing parameters {missing}")
    t0 = time.perf_counter()
    try:
        return d.fn(caps=caps, seed=seed, **kwargs)
    except CapExceeded as exc:
        return ScenarioReport(
            claim_id=key,
            params=_plain(kwargs),
            status="inconclusive",
            checks=[CheckResult("caps", "inconclusive", str(exc))],
            witnesses=[],
            elapsed_ms=(time.perf_counter() - t0) * 1000.0,
        )
    except TypeError as exc:
        raise ScenarioParamError(f"{key}: {exc}") from exc


PAPER_SUITE = (
    ("z2-steps", {"n": 2}),
    ("z2-steps", {"n": 3}),
    ("z2-steps", {"n": 4}),
    ("nested-chain", {"n": 2, "m": 3}),
    ("nested-chain", {"n": 3, "m": 3}),
    ("lemma-7.1", {"m": 2}),
    ("lemma-7.1", {"m": 3}),
    ("xz-ring", {"m": 2}),
    ("xz-ring", {"m": 3}),
    ("xz-ring", {"m": 5}),
    ("exotic-ring", {"a": 1, "b": 1}),
    ("exotic-ring", {"a": 2, "b": 2}),
    ("exotic-ring", {"a": 3, "b": 3}),
    ("nilpotent-stab", {"k": 9}),
    ("zq-subgroup", {"q": 2, "N": 2, "gens": [[1, 1]]}),
    ("zq-subgroup", {"q": 3, "N": 3, "gens": [[1, 0, 0], [0, 1, 1]]}),
    ("zq-subgroup", {"q": 2, "N": 4, "gens": [[1, 1, 0, 0], [0, 0, 1, 1]]}),
    ("zq-census", {"q": 2, "N": 4}),
    ("zq-census", {"q": 3, "N": 3}),
    ("triangular-random", {}),
    ("generic-generation", {}),
    ("sunital-factorial", {}),
    ("fg-ideal", {}),
    ("ideal-reflection", {}),
    ("bourgain", {}),
    ("corpus", {}),
)
