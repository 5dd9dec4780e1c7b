"""Arithmetic in GF(2^n) realized as GF(2)[x]/(f) for irreducible f.

Each :class:`FieldContext` owns one modulus; elements belong to exactly
one context and mixing contexts is a hard error.  This matters because
the verification criteria work in several quotient rings GF(2)[x]/(f_u)
at once, and silently coercing between them would corrupt results.

Also hosts the integer helpers used by folding: extended Euclid
certificates and the two-modulus Chinese remainder solver.
"""

from __future__ import annotations

import math

from .gf2poly import (
    BinaryPolynomial,
    _factorint,
    _mod,
    _mul,
    _mulmod,
    _square,
    is_irreducible,
)


class FieldContext:
    """The quotient field GF(2)[x]/(modulus) for an irreducible modulus."""

    __slots__ = ("modulus", "n", "_trace_mask", "_order_primes")

    def __init__(self, modulus):
        if not isinstance(modulus, BinaryPolynomial):
            modulus = BinaryPolynomial(modulus)
        if not is_irreducible(modulus):
            raise ValueError(f"modulus {modulus} is not irreducible")
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "n", modulus.degree)
        object.__setattr__(self, "_trace_mask", None)
        object.__setattr__(self, "_order_primes", None)

    def __setattr__(self, name, value):
        raise AttributeError("FieldContext is immutable")

    def __eq__(self, other):
        return isinstance(other, FieldContext) and self.modulus == other.modulus

    def __hash__(self):
        return hash(("gf2field", self.modulus.bits))

    def __repr__(self):
        return f"FieldContext({self.modulus})"

    def element(self, value):
        """Element from a polynomial (or raw bits), reduced mod modulus."""
        bits = value.bits if isinstance(value, BinaryPolynomial) else value
        return FieldElement(self, _mod(bits, self.modulus.bits))

    @property
    def zero(self):
        return FieldElement(self, 0)

    @property
    def one(self):
        return FieldElement(self, 1)

    @property
    def alpha(self):
        """The class of x, a root of the modulus."""
        return self.element(2)

    def trace_mask(self):
        # bit m holds Tr(x^m); trace of any element is then one parity
        mask = self._trace_mask
        if mask is None:
            fb = self.modulus.bits
            mask = 0
            for m in range(self.n):
                acc = cur = _mod(1 << m, fb)
                for _ in range(self.n - 1):
                    cur = _mod(_square(cur), fb)
                    acc ^= cur
                if acc not in (0, 1):
                    raise ValueError("trace landed outside GF(2)")
                mask |= acc << m
            object.__setattr__(self, "_trace_mask", mask)
        return mask

    def order_primes(self):
        primes = self._order_primes
        if primes is None:
            primes = tuple(sorted(_factorint((1 << self.n) - 1)))
            object.__setattr__(self, "_order_primes", primes)
        return primes


class FieldElement:
    """An element of one FieldContext; coordinates in the basis 1,x,..,x^(n-1)."""

    __slots__ = ("ctx", "bits")

    def __init__(self, ctx, bits):
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _check(self, other):
        if self.ctx != other.ctx:
            raise ValueError("elements belong to different field contexts")

    def __eq__(self, other):
        return (
            isinstance(other, FieldElement)
            and self.ctx == other.ctx
            and self.bits == other.bits
        )

    def __hash__(self):
        return hash((self.ctx, self.bits))

    def __bool__(self):
        return self.bits != 0

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.ctx, self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other):
        self._check(other)
        return FieldElement(self.ctx, _mulmod(self.bits, other.bits, self.ctx.modulus.bits))

    def inverse(self):
        if self.bits == 0:
            raise ZeroDivisionError("zero element has no inverse")
        # extended Euclid in GF(2)[x]
        a, b = self.bits, self.ctx.modulus.bits
        s0, s1 = 1, 0
        while b:
            q, r = _poly_divmod(a, b)
            a, b = b, r
            s0, s1 = s1, s0 ^ _mul(q, s1)
        if a != 1:
            raise ValueError("modulus is not irreducible")  # cannot happen
        return FieldElement(self.ctx, _mod(s0, self.ctx.modulus.bits))

    def __pow__(self, k):
        if k < 0:
            if self.bits == 0:
                raise ZeroDivisionError("zero element with negative exponent")
            k %= self.order()
        r = self.ctx.one
        base = self
        while k:
            if k & 1:
                r = r * base
            k >>= 1
            if k:
                base = base * base
        return r

    def order(self):
        """Least t >= 1 with self^t = 1; divides 2^n - 1."""
        if self.bits == 0:
            raise ValueError("the zero element has no multiplicative order")
        t = (1 << self.ctx.n) - 1
        for p in self.ctx.order_primes():
            while t % p == 0 and (self ** (t // p)).bits == 1:
                t //= p
        return t

    def trace(self):
        """Sum of Frobenius conjugates, as a GF(2) bit."""
        return (self.bits & self.ctx.trace_mask()).bit_count() & 1

    def minimal_polynomial(self):
        """Irreducible polynomial over GF(2) with this element as a root."""
        fb = self.ctx.modulus.bits
        orbit = [self.bits]
        cur = _mod(_square(self.bits), fb)
        while cur != self.bits:
            orbit.append(cur)
            cur = _mod(_square(cur), fb)
        # multiply out prod (z + r) with coefficients in the field
        coeffs = [1]
        for r in orbit:
            nxt = [0] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                nxt[i + 1] ^= c
                nxt[i] ^= _mulmod(r, c, fb)
            coeffs = nxt
        bits = 0
        for i, c in enumerate(coeffs):
            if c not in (0, 1):
                raise ValueError("orbit product has a coefficient outside GF(2)")
            bits |= c << i
        return BinaryPolynomial(bits)

    def __str__(self):
        width = max(self.ctx.n, 1)
        return format(self.bits, "0%db" % width) + "@" + self.ctx.modulus.compact()

    def __repr__(self):
        return f"FieldElement({self})"


def _poly_divmod(a, b):
    db = b.bit_length()
    q = 0
    da = a.bit_length()
    while da >= db:
        s = da - db
        q |= 1 << s
        a ^= b << s
        da = a.bit_length()
    return q, a


def bezout(a, b):
    """(g, x, y) with g = gcd(a, b) = a*x + b*y, for positive a, b."""
    if a < 1 or b < 1:
        raise ValueError("bezout needs positive integers")
    r0, r1 = a, b
    x0, x1 = 1, 0
    y0, y1 = 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return r0, x0, y0


def crt_solve(i, j, r1, r2):
    """The unique k in [0, r1*r2) with k = i mod r1 and k = j mod r2."""
    if math.gcd(r1, r2) != 1:
        raise ValueError(f"moduli {r1} and {r2} are not coprime")
    if not (0 <= i < r1 and 0 <= j < r2):
        raise ValueError("residues out of range")
    g, mu, nu = bezout(r1, r2)
    # mu*r1 + nu*r2 = 1, so i*nu*r2 + j*mu*r1 hits both residues
    return (i * nu * r2 + j * mu * r1) % (r1 * r2)
