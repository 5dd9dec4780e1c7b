"""Linear-recurring sequences: generation, zero factors, bit operations.

A characteristic polynomial ``c(x) = 1 + c_1 x + ... + c_n x^n`` drives
the recursion ``a_k = c_1 a_{k-1} + ... + c_n a_{k-n}`` over GF(2).
Sequence bits are packed into an integer with ``a_0`` at bit 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gf2poly import (
    BinaryPolynomial,
    InternalCheckError,
    _bit_reverse,
    _divisors,
    classify,
)


class CyclicSequence:
    """A cyclic binary sequence [a_0 ... a_{l-1}] with cached least period."""

    __slots__ = ("bits", "length", "_period")

    def __init__(self, bits, length):
        if length < 1:
            raise ValueError("sequence length must be positive")
        if bits >> length:
            raise ValueError("bits exceed the stated length")
        object.__setattr__(self, "bits", bits)
        object.__setattr__(self, "length", length)
        object.__setattr__(self, "_period", None)

    def __setattr__(self, name, value):
        raise AttributeError("CyclicSequence is immutable")

    @classmethod
    def from_bits(cls, seq):
        """Build from a 0/1 string or an iterable of bits."""
        if isinstance(seq, str):
            vals = [int(ch) for ch in seq.strip()]
        else:
            vals = [int(b) for b in seq]
        if not vals or any(v not in (0, 1) for v in vals):
            raise ValueError("sequence must be nonempty bits")
        bits = 0
        for k, v in enumerate(vals):
            bits |= v << k
        return cls(bits, len(vals))

    def bit(self, k):
        return self.bits >> (k % self.length) & 1

    def __len__(self):
        return self.length

    def __eq__(self, other):
        return (
            isinstance(other, CyclicSequence)
            and self.length == other.length
            and self.bits == other.bits
        )

    def __hash__(self):
        return hash(("cycseq", self.length, self.bits))

    def __str__(self):
        return "".join(str(self.bits >> k & 1) for k in range(self.length))

    def __repr__(self):
        return f"CyclicSequence({str(self)!r})"

    @property
    def least_period(self):
        """Least p with a_k = a_{k+p} cyclically; p divides the length."""
        p = self._period
        if p is None:
            p = next(d for d in _divisors(self.length) if self._has_period(d))
            object.__setattr__(self, "_period", p)
        return p

    def _has_period(self, p):
        return self.rotate(p) == self

    def rotate(self, t):
        """Delay by t positions: new a_k is old a_{k-t}."""
        ell = self.length
        t %= ell
        if t == 0:
            return self
        mask = (1 << ell) - 1
        bits = ((self.bits << t) | (self.bits >> (ell - t))) & mask
        return CyclicSequence(bits, ell)

    def rotations(self):
        return [self.rotate(t) for t in range(self.length)]

    def canonical(self):
        """Deterministic representative among all rotations (least packed value)."""
        ell = self.length
        mask = (1 << ell) - 1
        b = self.bits
        best = b
        for _ in range(ell - 1):
            b = ((b << 1) | (b >> (ell - 1))) & mask
            if b < best:
                best = b
        return CyclicSequence(best, ell)

    def __add__(self, other):
        return bitadd(self, other)

    def repeat(self, copies):
        bits = 0
        for i in range(copies):
            bits |= self.bits << (i * self.length)
        return CyclicSequence(bits, self.length * copies)

    def take(self, nbits):
        """First nbits bits of the periodic extension, as a list."""
        return [self.bit(k) for k in range(nbits)]


@dataclass(frozen=True)
class ZeroFactor:
    """All nonzero cycles of a uniform-exponent polynomial.

    Jointly the cycles contain every nonzero deg(f)-tuple exactly once,
    so the cycle count times the exponent is 2^deg - 1.
    """

    generator: BinaryPolynomial
    exponent: int
    cycles: tuple

    def __post_init__(self):
        n = self.generator.degree
        if len(self.cycles) * self.exponent != (1 << n) - 1:
            raise InternalCheckError("cycle count times exponent must be 2^n - 1")

    def __len__(self):
        return len(self.cycles)

    def to_lines(self):
        """One cycle per line, as 0/1 strings."""
        return [str(c) for c in self.cycles]

    def __str__(self):
        return "\n".join(self.to_lines())


def _taps(f):
    # feedback mask: bit (n - i) set iff c_i = 1
    return _bit_reverse(f.bits >> 1, f.degree)


def generate(f, seed, length):
    """Run the recursion of f from seed (the first deg(f) bits)."""
    n = f.degree
    if n < 1 or f.constant_term == 0:
        raise ValueError("generator polynomial needs degree >= 1 and constant term 1")
    if length < n:
        raise ValueError(f"length {length} is shorter than the register ({n})")
    if isinstance(seed, str):
        seed = [int(ch) for ch in seed.strip()]
    seed = [int(b) for b in seed]
    if len(seed) != n or any(b not in (0, 1) for b in seed):
        raise ValueError(f"seed must be {n} bits")
    taps = _taps(f)
    window = 0
    for k, b in enumerate(seed):
        window |= b << k
    bits = window
    for k in range(n, length):
        fb = (window & taps).bit_count() & 1
        bits |= fb << k
        window = (window >> 1) | (fb << (n - 1))
    return CyclicSequence(bits, length)


_STATE_TABLE_LIMIT = 20  # successor tables above 2^20 states cost too much memory


def zero_factor(f):
    """Partition all nonzero states of f's register into cycles.

    Requires a uniform exponent (irreducible, or a product of distinct
    irreducibles sharing one degree and exponent); every cycle then has
    least period equal to the exponent.
    """
    cls = classify(f)
    if not cls.is_uniform:
        raise ValueError(f"{f} does not have a uniform exponent (kind: {cls.kind})")
    n = f.degree
    if n > 24:
        raise ValueError("zero factor enumeration is capped at degree 24")
    e = cls.exponent
    taps = _taps(f)
    size = 1 << n
    top = n - 1
    if n <= _STATE_TABLE_LIMIT:
        states = np.arange(size, dtype=np.uint32)
        fb = (np.bitwise_count(states & np.uint32(taps)) & 1).astype(np.uint32)
        nxt = ((states >> 1) | (fb << np.uint32(top))).tolist()
        step = nxt.__getitem__
    else:
        def step(s):
            return (s >> 1) | (((s & taps).bit_count() & 1) << top)

    seen = bytearray(size)
    cycles = []
    for s0 in range(1, size):
        if seen[s0]:
            continue
        s = s0
        bits = 0
        k = 0
        while not seen[s]:
            seen[s] = 1
            bits |= (s & 1) << k
            k += 1
            s = step(s)
        if s != s0:
            raise InternalCheckError("state walk left a cycle mid-way")
        seq = CyclicSequence(bits, k)
        if k != e or seq.least_period != e:
            raise InternalCheckError(
                f"cycle period {seq.least_period} differs from exponent {e}"
            )
        cycles.append(seq)
    return ZeroFactor(f, e, tuple(cycles))


def _combine(a, b, op):
    ell = math.lcm(a.least_period, b.least_period)
    pa = CyclicSequence(a.bits & ((1 << a.least_period) - 1), a.least_period)
    pb = CyclicSequence(b.bits & ((1 << b.least_period) - 1), b.least_period)
    ra = pa.repeat(ell // pa.length).bits
    rb = pb.repeat(ell // pb.length).bits
    return CyclicSequence(op(ra, rb), ell)


def bitadd(a, b):
    """Bitwise sum after extending both to the lcm of the least periods."""
    return _combine(a, b, lambda x, y: x ^ y)


def bitmul(a, b):
    """Bitwise product after extending both to the lcm of the least periods."""
    return _combine(a, b, lambda x, y: x & y)


def shift_and_add_closed(cycles):
    """Is the set closed under adding shifted members (up to shifts)?

    Every pairwise sum of a cycle with a rotated cycle must be all-zero
    or a rotation of some member.
    """
    cycles = list(cycles)
    if not cycles:
        return True
    ell = cycles[0].length
    if any(c.length != ell for c in cycles):
        raise ValueError("cycles must share one length")
    members = set()
    rotations = []
    for c in cycles:
        rots = [r.bits for r in c.rotations()]
        rotations.append(rots)
        members.update(rots)
    for a in cycles:
        ab = a.bits
        for rots in rotations:
            for rb in rots:
                s = ab ^ rb
                if s and s not in members:
                    return False
    return True


def berlekamp_massey(seq):
    """Minimal characteristic polynomial reproducing a finite bit sequence."""
    if isinstance(seq, CyclicSequence):
        bits = [seq.bit(k) for k in range(len(seq))]
    elif isinstance(seq, str):
        bits = [int(ch) for ch in seq.strip()]
    else:
        bits = [int(b) for b in seq]
    n = len(bits)
    c = 1  # current connection polynomial, constant term 1
    b = 1  # previous connection polynomial
    span = 0
    m = -1
    for k in range(n):
        d = bits[k]
        cc = c >> 1
        i = 1
        while cc and i <= span:
            if cc & 1:
                d ^= bits[k - i]
            cc >>= 1
            i += 1
        if d:
            t = c
            c ^= b << (k - m)
            if 2 * span <= k:
                span = k + 1 - span
                b = t
                m = k
    return BinaryPolynomial(c)
