"""Additive-group machinery over tabulated rings.

Dense subsets are ElementSet values: a Python integer used as an indicator
bit-vector over the element indices.  Sumsets run by translating the larger
operand's bit-vector once per element of the smaller one, which the rings'
mixed-radix encoding turns into a handful of shifts and masks per translate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

COSET_CHECK_CAP = 4096
COVER_EXACT_CAP = 4096
DEFAULT_THICKNESS_CAP = 16


class RingMismatchError(ValueError):
    """Two sets from different rings were combined."""


def _same_ring(a, b):
    if a.ring is not b.ring:
        raise RingMismatchError(f"{a.ring.label} vs {b.ring.label}")


def bits_from_bool(mask):
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


def bool_from_bits(bits, size):
    nbytes = (size + 7) // 8
    raw = np.frombuffer(bits.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little", count=size).astype(bool)


class ElementSet:
    """Subset of a tabulated ring's elements as a dense indicator."""

    __slots__ = ("ring", "bits")

    def __init__(self, ring, bits):
        if not 0 <= bits < (1 << ring.size):
            raise ValueError("indicator wider than the ring")
        self.ring = ring
        self.bits = bits

    @classmethod
    def empty(cls, ring):
        return cls(ring, 0)

    @classmethod
    def full(cls, ring):
        return cls(ring, (1 << ring.size) - 1)

    @classmethod
    def singleton(cls, ring, i):
        return cls(ring, 1 << i)

    @classmethod
    def from_indices(cls, ring, indices):
        bits = 0
        for i in indices:
            bits |= 1 << int(i)
        return cls(ring, bits)

    def __len__(self):
        return self.bits.bit_count()

    def __contains__(self, i):
        return bool((self.bits >> i) & 1)

    def __bool__(self):
        return self.bits != 0

    def __eq__(self, other):
        return isinstance(other, ElementSet) and self.ring is other.ring and self.bits == other.bits

    def __hash__(self):
        return hash((id(self.ring), self.bits))

    def __or__(self, other):
        _same_ring(self, other)
        return ElementSet(self.ring, self.bits | other.bits)

    def __and__(self, other):
        _same_ring(self, other)
        return ElementSet(self.ring, self.bits & other.bits)

    def __xor__(self, other):
        _same_ring(self, other)
        return ElementSet(self.ring, self.bits ^ other.bits)

    def difference(self, other):
        _same_ring(self, other)
        return ElementSet(self.ring, self.bits & ~other.bits)

    def complement(self):
        return ElementSet(self.ring, ((1 << self.ring.size) - 1) ^ self.bits)

    def issubset(self, other):
        _same_ring(self, other)
        return self.bits & ~other.bits == 0

    def indices(self):
        return np.nonzero(bool_from_bits(self.bits, self.ring.size))[0]

    def translate(self, d):
        return ElementSet(self.ring, self.ring.translate_bits(self.bits, d))

    def negated(self):
        if not self.bits:
            return self
        vals = self.ring.neg_vec(self.indices())
        mask = np.zeros(self.ring.size, dtype=bool)
        mask[vals] = True
        return ElementSet(self.ring, bits_from_bool(mask))

    def is_symmetric(self):
        return self.negated().bits == self.bits

    def decode(self, limit=16):
        idx = [int(i) for i in self.indices()[:limit]]
        body = ", ".join(self.ring.decode(i) for i in idx)
        more = "" if len(self) <= limit else f", ... ({len(self)} total)"
        return "{" + body + more + "}"

    def __repr__(self):
        return f"ElementSet({self.ring.label}, n={len(self)})"


# -- sumsets -----------------------------------------------------------------


def _sumset_bits(ring, b1, b2):
    if b1 == 0 or b2 == 0:
        return 0
    if b1.bit_count() > b2.bit_count():
        b1, b2 = b2, b1
    acc = 0
    for t in np.nonzero(bool_from_bits(b1, ring.size))[0]:
        acc |= ring.translate_bits(b2, int(t))
    return acc


def sumset(d1, d2):
    """{x + y : x in D1, y in D2}."""
    _same_ring(d1, d2)
    return ElementSet(d1.ring, _sumset_bits(d1.ring, d1.bits, d2.bits))


def n_fold_sum(d, n):
    """D + ... + D with n summands (n >= 1), by summand doubling."""
    if n < 1:
        raise ValueError("n_fold_sum needs n >= 1")
    result = None
    base = d
    while n:
        if n & 1:
            result = base if result is None else sumset(result, base)
        n >>= 1
        if n:
            base = sumset(base, base)
    return result


# -- subgroups ----------------------------------------------------------------


@dataclass(frozen=True)
class Subgroup:
    carrier: ElementSet
    generators: tuple
    index: int

    def __post_init__(self):
        ring = self.carrier.ring
        if ring.size != self.index * len(self.carrier):
            raise ValueError("index times carrier size must equal the ring size")


def _group_closure_bits(ring, bits):
    while True:
        nxt = _sumset_bits(ring, bits, bits)
        if nxt == bits:
            return bits
        bits = nxt


def closure(ring, gens):
    """Smallest additive subgroup containing the generators."""
    bits = 1 << ring.zero
    gens = [int(g) for g in gens]
    for g in gens:
        bits |= (1 << g) | (1 << ring.neg(g))
    bits = _group_closure_bits(ring, bits)
    carrier = ElementSet(ring, bits)
    return Subgroup(carrier=carrier, generators=tuple(gens), index=ring.size // len(carrier))


def is_subgroup_set(s):
    """0 in S, S symmetric, and S + S = S."""
    ring = s.ring
    return (
        ring.zero in s
        and s.is_symmetric()
        and _sumset_bits(ring, s.bits, s.bits) == s.bits
    )


def subgroup_from_carrier(s):
    if not is_subgroup_set(s):
        raise ValueError("carrier is not a subgroup")
    return Subgroup(carrier=s, generators=tuple(), index=s.ring.size // len(s))


def all_subgroups(ring):
    """Every additive subgroup, by closing extensions of known subgroups.

    Feasible for small rings only (the count explodes combinatorially).
    Deterministic order: ascending carrier size, then indicator value.
    """
    trivial = closure(ring, [])
    found = {trivial.carrier.bits: trivial}
    frontier = [trivial]
    while frontier:
        h = frontier.pop()
        visited_cosets = h.carrier.bits
        for x in range(ring.size):
            if (visited_cosets >> x) & 1:
                continue
            visited_cosets |= ring.translate_bits(h.carrier.bits, x)
            bits = h.carrier.bits | (1 << x) | (1 << ring.neg(x))
            bits = _group_closure_bits(ring, bits)
            if bits not in found:
                ext = Subgroup(
                    carrier=ElementSet(ring, bits),
                    generators=h.generators + (x,),
                    index=ring.size // bits.bit_count(),
                )
                found[bits] = ext
                frontier.append(ext)
    return sorted(found.values(), key=lambda s: (len(s.carrier), s.carrier.bits))


def coset_representatives(carrier):
    """One representative per coset of the subgroup carrier, ascending."""
    ring = carrier.ring
    remaining = (1 << ring.size) - 1
    reps = []
    while remaining:
        x = (remaining & -remaining).bit_length() - 1
        reps.append(x)
        remaining &= ~ring.translate_bits(carrier.bits, x)
    return reps


def is_coset_independent(h1, h2, cross_check=None):
    """True iff every coset of H1 meets every coset of H2 (iff H1 + H2 = G).

    For rings up to COSET_CHECK_CAP the sumset answer is validated against
    the direct coset-by-coset definition; a mismatch is an internal error.
    """
    _same_ring(h1.carrier, h2.carrier)
    ring = h1.carrier.ring
    full = (1 << ring.size) - 1
    by_sumset = _sumset_bits(ring, h1.carrier.bits, h2.carrier.bits) == full
    if cross_check is None:
        cross_check = ring.size <= COSET_CHECK_CAP
    if cross_check:
        definitional = all(
            ring.translate_bits(h1.carrier.bits, a) & ring.translate_bits(h2.carrier.bits, b)
            for a in coset_representatives(h1.carrier)
            for b in coset_representatives(h2.carrier)
        )
        if definitional != by_sumset:
            raise RuntimeError("coset-independence characterisations disagree")
    return by_sumset


# -- thickness and genericity --------------------------------------------------


@dataclass(frozen=True)
class ThicknessResult:
    kind: str  # "value" | "not_symmetric" | "unbounded" | "exceeds_cap"
    value: int | None = None

    @property
    def is_thick(self):
        return self.kind == "value"

    def __str__(self):
        if self.kind == "value":
            return str(self.value)
        return self.kind


def thickness(d, cap=DEFAULT_THICKNESS_CAP):
    """Minimal n such that among any n elements two differ by an element of D.

    Requires D symmetric; 0 must lie in D or no n works (repeat the same
    element).  Computed as 1 + the longest difference-avoiding set, by
    depth-first search pruned at ``cap``.

    Elements with the same translate x + D are interchangeable and (since
    0 lies in D) mutually conflicting, so the search runs over one
    representative per translate class; for D containing a subgroup this
    collapses every coset to a point.
    """
    ring = d.ring
    if not d.is_symmetric():
        return ThicknessResult("not_symmetric")
    if ring.zero not in d:
        return ThicknessResult("unbounded")
    classes = {}
    for x in range(ring.size):
        classes.setdefault(ring.translate_bits(d.bits, x), x)
    reps = 0
    for x in classes.values():
        reps |= 1 << x
    best = 1  # the singleton {0} avoids everything
    capped = False

    def grow(cands, count):
        nonlocal best, capped
        if count > best:
            best = count
        if count >= cap:
            capped = True
            return
        if count + cands.bit_count() <= best:
            return
        rest = cands
        while rest:
            low = rest & -rest
            x = low.bit_length() - 1
            rest ^= low
            nxt = cands & ~((1 << (x + 1)) - 1) & ~ring.translate_bits(d.bits, x)
            grow(nxt, count + 1)
            if capped:
                return

    grow(reps & ~d.bits, 1)
    if capped:
        return ThicknessResult("exceeds_cap")
    return ThicknessResult("value", best + 1)


@dataclass(frozen=True)
class GenericityResult:
    value: int | None
    exact: bool
    exceeded_cap: bool = False

    def __str__(self):
        if self.exceeded_cap:
            return "exceeds cap"
        return str(self.value) + ("" if self.exact else " (upper bound)")


def genericity_number(d, cap=None):
    """Minimal number of additive translates of D that cover the ring.

    Exact by branch and bound up to COVER_EXACT_CAP elements; a greedy upper
    bound (exact=False) beyond that.
    """
    ring = d.ring
    if not d:
        raise ValueError("the empty set has no covering translates")
    full = (1 << ring.size) - 1
    by_t = [ring.translate_bits(d.bits, t) for t in range(ring.size)]
    tlist = sorted(set(by_t), key=lambda b: (-b.bit_count(), b))

    uncovered = full
    greedy = 0
    while uncovered:
        pick = max(tlist, key=lambda b: (b & uncovered).bit_count())
        uncovered &= ~pick
        greedy += 1

    if ring.size > COVER_EXACT_CAP:
        exceeded = cap is not None and greedy > cap
        return GenericityResult(None if exceeded else greedy, exact=False, exceeded_cap=exceeded)

    limit = greedy if cap is None else min(greedy, cap + 1)
    best = limit
    dsize = len(d)
    neg_bits = d.negated().bits
    covering = {}  # element -> distinct translate indicators containing it

    def candidates(e):
        got = covering.get(e)
        if got is None:
            holders = bool_from_bits(ring.translate_bits(neg_bits, e), ring.size)
            got = covering[e] = tuple({by_t[t] for t in np.nonzero(holders)[0]})
        return got

    def cover(uncovered, count):
        nonlocal best
        if not uncovered:
            best = min(best, count)
            return
        if count + -(-uncovered.bit_count() // dsize) >= best:
            return
        e = (uncovered & -uncovered).bit_length() - 1
        # try big coverage first
        for tb in sorted(candidates(e), key=lambda b: (-(b & uncovered).bit_count(), b)):
            cover(uncovered & ~tb, count + 1)

    cover(full, 0)
    if cap is not None and best > cap:
        return GenericityResult(None, exact=True, exceeded_cap=True)
    return GenericityResult(best, exact=True)


# -- triangular bases of subgroups of Z_q^N ------------------------------------


class InfiniteIndexError(ValueError):
    """The generated subgroup misses a coordinate, so its index in Z^N is infinite."""


@dataclass(frozen=True)
class TriangularBasis:
    """Rows g_0..g_{N-1} with support(g_i) inside {0..i} spanning the subgroup.

    ``diagonal`` holds the positive lifted pivots d_i (divisors of q when
    q > 0); the subgroup index is their product, and positions whose pivot is
    not invertible mod q are listed in ``noninvertible`` -- always fewer of
    them than the index.
    """

    q: int
    n: int
    rows: tuple
    diagonal: tuple
    index: int
    noninvertible: tuple


def triangularize(q, n, gens):
    """Triangular generating rows for the subgroup of Z_q^N spanned by gens.

    q = 0 means Z; in that case every diagonal pivot must be nonzero or the
    index is infinite and InfiniteIndexError is raised.  Elimination runs on
    integer lifts with extended-gcd style row reduction (plus the relation
    rows q*e_i when q > 0), pivots chosen by minimal absolute value then
    lexicographic order, so the result is deterministic.
    """
    if q < 0 or n < 1:
        raise ValueError("need q >= 0 and n >= 1")
    pool = []
    for g in gens:
        row = [int(c) for c in g]
        if len(row) != n:
            raise ValueError(f"generator {g!r} does not have {n} coordinates")
        if any(row):
            pool.append(row)
    if q > 0:
        for i in range(n):
            pool.append([q if j == i else 0 for j in range(n)])

    out = [None] * n
    diag = [0] * n
    for col in range(n - 1, -1, -1):
        active = [r for r in pool if r[col]]
        pool = [r for r in pool if not r[col]]
        while len(active) > 1:
            active.sort(key=lambda r: (abs(r[col]), r))
            piv = active[0]
            if piv[col] < 0:
                piv = [-a for a in piv]
            nxt = [piv]
            for r in active[1:]:
                t = r[col] // piv[col]
                red = [a - t * b for a, b in zip(r, piv)]
                if red[col]:
                    nxt.append(red)
                elif any(red):
                    pool.append(red)
            if len(nxt) == 1 and nxt[0][col] < 0:
                nxt[0] = [-a for a in nxt[0]]
            active = nxt
        if not active:
            if q == 0:
                raise InfiniteIndexError(
                    f"no generator reaches coordinate {col}: infinite index in Z^{n}"
                )
            raise AssertionError("relation row lost")  # q*e_col is always in the pool
        g = active[0]
        if g[col] < 0:
            g = [-a for a in g]
        out[col] = g
        diag[col] = g[col]

    # canonicalize: reduce the entries above each pivot into [0, d_i)
    for i in range(n):
        for j in range(i + 1, n):
            t = out[j][i] // diag[i]
            if t:
                out[j] = [a - t * b for a, b in zip(out[j], out[i])]

    index = math.prod(diag)
    if q > 0:
        rows = tuple(tuple(c % q for c in r) for r in out)
        noninv = tuple(i for i in range(n) if math.gcd(diag[i], q) != 1)
    else:
        rows = tuple(tuple(r) for r in out)
        noninv = tuple(i for i in range(n) if diag[i] != 1)
    if not len(noninv) < index:
        raise RuntimeError("pivot bound violated: non-invertible count must stay below the index")
    return TriangularBasis(
        q=q, n=n, rows=rows, diagonal=tuple(diag), index=index, noninvertible=noninv
    )


def vector_index(ring, vec):
    """Index of a coordinate vector in a tabulated Z_q^N ring."""
    return ring.index_of_digits([c % q for c, q in zip(vec, ring.radices)])
