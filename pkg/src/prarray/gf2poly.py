"""Arithmetic and structure theory for polynomials over GF(2).

A polynomial ``b_n x^n + ... + b_1 x + b_0`` is represented by the
integer ``b_n 2^n + ... + b_1 2 + b_0``, so addition is XOR and a left
shift multiplies by x.  :class:`BinaryPolynomial` is a thin immutable
wrapper around such an integer; the ``_``-prefixed helpers implement
the algorithms on raw integers.

Two text notations are supported:

* compact bit string, most significant coefficient first
  (``"1011"`` is ``x^3+x+1``);
* symbolic sum of powers with strictly decreasing exponents
  (``"x^3+x+1"``).

``parse`` accepts both; formatting emits the symbolic form by default
and the compact form on request.
"""

from __future__ import annotations

import functools
import math


class ParseError(ValueError):
    """Malformed polynomial text; ``position`` is the offending index."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class InternalCheckError(RuntimeError):
    """A redundant internal cross-check failed; indicates a bug."""


# ---------------------------------------------------------------------------
# raw integer arithmetic

def _degree(a):
    return a.bit_length() - 1


def _mul(a, b):
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


_SPREAD = [0] * 256
for _b in range(256):
    _v = 0
    for _i in range(8):
        if _b >> _i & 1:
            _v |= 1 << (2 * _i)
    _SPREAD[_b] = _v


def _square(a):
    # squaring over GF(2) just spreads the bits out
    if a < 256:
        return _SPREAD[a]
    out = 0
    shift = 0
    for byte in a.to_bytes((a.bit_length() + 7) // 8, "little"):
        out |= _SPREAD[byte] << shift
        shift += 16
    return out


def _mod(a, b):
    if b == 0:
        raise ZeroDivisionError("division by zero polynomial")
    db = b.bit_length()
    da = a.bit_length()
    while da >= db:
        a ^= b << (da - db)
        da = a.bit_length()
    return a


def _divmod(a, b):
    if b == 0:
        raise ZeroDivisionError("division by zero polynomial")
    db = b.bit_length()
    q = 0
    da = a.bit_length()
    while da >= db:
        s = da - db
        q |= 1 << s
        a ^= b << s
        da = a.bit_length()
    return q, a


def _gcd(a, b):
    while b:
        a, b = b, _mod(a, b)
    return a


def _mulmod(a, b, m):
    return _mod(_mul(a, b), m)


def _powmod(base, e, m):
    r = _mod(1, m) if m.bit_length() <= 1 else 1
    base = _mod(base, m)
    while e:
        if e & 1:
            r = _mod(_mul(r, base), m)
        e >>= 1
        if e:
            base = _mod(_square(base), m)
    return r


def _derivative(a):
    # coefficient of x^(i-1) is i*a_i, nonzero only for odd i
    n = a.bit_length() + (a.bit_length() & 1)
    even_bits = ((1 << n) - 1) // 3  # bits 0, 2, 4, ...
    return (a >> 1) & even_bits


def _even_part_sqrt(a):
    # inverse of _square for polynomials with only even powers
    out = 0
    for i in range(0, a.bit_length(), 2):
        if a >> i & 1:
            out |= 1 << (i // 2)
    return out


def _bit_reverse(v, width):
    out = 0
    for i in range(width):
        if v >> i & 1:
            out |= 1 << (width - 1 - i)
    return out


# ---------------------------------------------------------------------------
# integer factorization helpers (for exponents and counting)

@functools.lru_cache(maxsize=4096)
def _factorint(m):
    """Prime factorization of m as a dict prime -> multiplicity."""
    if m < 1:
        raise ValueError("can only factor positive integers")
    out = {}
    for p in (2, 3, 5):
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
    p = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    w = 0
    while p * p <= m and p < 1_000_000:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += wheel[w]
        w = (w + 1) & 7
    if m > 1:
        if p * p > m:
            out[m] = out.get(m, 0) + 1
        else:
            from sympy import factorint as _sympy_factorint

            for q, k in _sympy_factorint(m).items():
                out[int(q)] = out.get(int(q), 0) + k
    return out


def _divisors(m):
    divs = [1]
    for p, k in _factorint(m).items():
        divs = [d * p**i for d in divs for i in range(k + 1)]
    return sorted(divs)


def _totient(m):
    phi = 1
    for p, k in _factorint(m).items():
        phi *= (p - 1) * p ** (k - 1)
    return phi


def _mobius(m):
    mu = 1
    for _, k in _factorint(m).items():
        if k > 1:
            return 0
        mu = -mu
    return mu


# ---------------------------------------------------------------------------
# the polynomial wrapper

class BinaryPolynomial:
    """Immutable polynomial over GF(2), canonical by construction."""

    __slots__ = ("bits",)

    def __init__(self, bits):
        if bits < 0:
            raise ValueError("polynomial bits must be non-negative")
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, name, value):
        raise AttributeError("BinaryPolynomial is immutable")

    @property
    def degree(self):
        """Degree of the polynomial; -1 marks the zero polynomial."""
        return _degree(self.bits)

    @property
    def is_zero(self):
        return self.bits == 0

    @property
    def constant_term(self):
        return self.bits & 1

    def __bool__(self):
        return self.bits != 0

    def __eq__(self, other):
        return isinstance(other, BinaryPolynomial) and self.bits == other.bits

    def __hash__(self):
        return hash(("gf2poly", self.bits))

    def __lt__(self, other):
        if not isinstance(other, BinaryPolynomial):
            return NotImplemented
        return self.bits < other.bits

    def __add__(self, other):
        if not isinstance(other, BinaryPolynomial):
            return NotImplemented
        return BinaryPolynomial(self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other):
        if not isinstance(other, BinaryPolynomial):
            return NotImplemented
        return BinaryPolynomial(_mul(self.bits, other.bits))

    def __divmod__(self, other):
        if not isinstance(other, BinaryPolynomial):
            return NotImplemented
        q, r = _divmod(self.bits, other.bits)
        return BinaryPolynomial(q), BinaryPolynomial(r)

    def __floordiv__(self, other):
        if not isinstance(other, BinaryPolynomial):
            return NotImplemented
        return divmod(self, other)[0]

    def __mod__(self, other):
        if not isinstance(other, BinaryPolynomial):
            return NotImplemented
        return BinaryPolynomial(_mod(self.bits, other.bits))

    def reciprocal(self):
        """x^deg * f(1/x); requires a nonzero constant term."""
        if self.bits & 1 == 0:
            raise ValueError("reciprocal needs a nonzero constant term")
        return BinaryPolynomial(_bit_reverse(self.bits, self.bits.bit_length()))

    def compact(self):
        """Bit-string form, most significant coefficient first."""
        if self.bits == 0:
            return "0"
        return format(self.bits, "b")

    def __str__(self):
        if self.bits == 0:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            if self.bits >> i & 1:
                terms.append("x^%d" % i if i > 1 else ("x" if i == 1 else "1"))
        return "+".join(terms)

    def __repr__(self):
        return f"BinaryPolynomial({str(self)!r})"


ZERO = BinaryPolynomial(0)
ONE = BinaryPolynomial(1)
X = BinaryPolynomial(2)


def parse(text):
    """Parse compact ("1011") or symbolic ("x^3+x+1") notation."""
    if not isinstance(text, str):
        raise ParseError("polynomial text must be a string", 0)
    s = text.strip()
    if not s:
        raise ParseError("empty polynomial text", 0)
    if set(s) <= {"0", "1"}:
        return BinaryPolynomial(int(s, 2))
    bits = 0
    prev_power = None
    pos = 0
    for chunk in s.split("+"):
        term = chunk.strip()
        at = text.find(chunk, pos)
        pos = at + len(chunk)
        if term == "1":
            power = 0
        elif term == "x":
            power = 1
        elif term.startswith("x^"):
            digits = term[2:]
            if not digits.isdigit():
                raise ParseError(f"bad exponent in term {term!r}", at)
            power = int(digits)
        else:
            raise ParseError(f"unrecognized term {term!r}", at)
        if prev_power is not None and power >= prev_power:
            raise ParseError("terms must appear in strictly decreasing power order", at)
        prev_power = power
        bits |= 1 << power
    return BinaryPolynomial(bits)


def format_poly(f, compact=False):
    """Symbolic form by default, the compact bit string on request."""
    return f.compact() if compact else str(f)


def gcd(a, b):
    """Monic greatest common divisor; both inputs zero is an error."""
    if a.is_zero and b.is_zero:
        raise ValueError("gcd(0, 0) is undefined")
    return BinaryPolynomial(_gcd(a.bits, b.bits))


def lcm(a, b):
    if a.is_zero or b.is_zero:
        raise ValueError("lcm with the zero polynomial is undefined")
    return (a * b) // gcd(a, b)


def is_irreducible(f):
    """Deterministic irreducibility test (no nontrivial factor)."""
    return _is_irreducible_int(f.bits)


def _is_irreducible_int(fb):
    n = _degree(fb)
    if n < 1:
        raise ValueError("irreducibility is only defined for degree >= 1")
    if n == 1:
        return True
    # x^(2^n) == x mod f, and gcd(x^(2^(n/p)) - x, f) = 1 for primes p | n
    checkpoints = {n // p for p in _factorint(n)}
    t = 2  # the polynomial x
    for i in range(1, n + 1):
        t = _mod(_square(t), fb)
        if i in checkpoints and _gcd(t ^ 2, fb) != 1:
            return False
    return t == 2


def factor(f):
    """Full factorization into irreducibles (deterministic Berlekamp).

    Returns a sorted list with multiplicity; the product equals f.
    """
    if f.degree < 1:
        raise ValueError("cannot factor a constant polynomial")
    return [BinaryPolynomial(p) for p in sorted(_factor_int(f.bits))]


def _factor_int(fb):
    out = []
    while fb & 1 == 0:
        out.append(2)
        fb >>= 1
    if fb > 1:
        out.extend(_factor_squarefree_tower(fb))
    return out


def _factor_squarefree_tower(fb):
    if fb == 1:
        return []
    d = _derivative(fb)
    if d == 0:
        # f = g(x)^2 with g = sqrt(f)
        sub = _factor_squarefree_tower(_even_part_sqrt(fb))
        return sub + sub
    w = _gcd(fb, d)
    if w == 1:
        return _berlekamp_squarefree(fb)
    return _berlekamp_squarefree(_divmod(fb, w)[0]) + _factor_squarefree_tower(w)


def _berlekamp_squarefree(fb):
    n = _degree(fb)
    if n == 1:
        return [fb]
    # Frobenius images of the basis: column j is x^(2j) mod f
    img = 1
    step = _mod(4, fb)  # x^2
    pivots = {}
    kernel = []
    for j in range(n):
        v = img ^ (1 << j)
        pre = 1 << j
        while v:
            lead = v.bit_length() - 1
            if lead not in pivots:
                pivots[lead] = (v, pre)
                break
            pv, pp = pivots[lead]
            v ^= pv
            pre ^= pp
        else:
            kernel.append(pre)
        img = _mulmod(img, step, fb)
    if len(kernel) == 1:
        return [fb]
    factors = [fb]
    for v in kernel:
        if v == 1:
            continue
        refined = []
        for g in factors:
            if _degree(g) == 1:
                refined.append(g)
                continue
            g1 = _gcd(g, _mod(v, g))
            if g1 in (1, g):
                g1 = _gcd(g, _mod(v ^ 1, g))
            if g1 in (1, g):
                refined.append(g)
            else:
                refined.append(g1)
                refined.append(_divmod(g, g1)[0])
        factors = refined
        if len(factors) == len(kernel):
            break
    if len(factors) != len(kernel):
        raise InternalCheckError("Berlekamp splitting did not reach kernel dimension")
    return factors


def exponent(f):
    """Least e with f | x^e - 1, for squarefree f with f(0) = 1."""
    if f.degree < 1:
        raise ValueError("exponent needs degree >= 1")
    if f.constant_term == 0:
        raise ValueError("exponent needs a nonzero constant term")
    facs = _factor_int(f.bits)
    if len(set(facs)) != len(facs):
        raise ValueError("exponent is only supported for squarefree polynomials")
    span = math.lcm(*(_degree(p) for p in facs))
    if span <= 64:
        # the exponent divides 2^span - 1; scan divisors in increasing order
        for d in _divisors((1 << span) - 1):
            if _powmod(2, d, f.bits) == 1:
                return d
        raise InternalCheckError("order of x not found among divisors")
    # fallback beyond the factorization cap: incremental order search
    p = _mod(2, f.bits)
    cur = p
    k = 1
    while cur != 1:
        cur = _mod(cur << 1, f.bits)
        k += 1
    return k


class PolynomialClass:
    """Structure classification: kind, exponent (when defined), factors."""

    __slots__ = ("kind", "exponent", "factors")

    KINDS = (
        "primitive",
        "INP",
        "reducible-uniform",
        "reducible-nonuniform",
        "unit",
        "zero-constant-term",
    )

    def __init__(self, kind, exponent, factors):
        if kind not in self.KINDS:
            raise ValueError(f"unknown kind {kind!r}")
        self.kind = kind
        self.exponent = exponent
        self.factors = tuple(factors)

    def __repr__(self):
        return f"PolynomialClass(kind={self.kind!r}, exponent={self.exponent})"

    @property
    def is_uniform(self):
        """True when every nonzero generated sequence has one least period."""
        return self.kind in ("primitive", "INP", "reducible-uniform")


def classify(f):
    """Classify f as primitive / INP / reducible-(non)uniform."""
    if f.degree < 1:
        raise ValueError("classification needs degree >= 1")
    if f.constant_term == 0:
        raise ValueError("classification needs a nonzero constant term")
    facs = factor(f)
    if len(facs) == 1:
        e = exponent(f)
        kind = "primitive" if e == (1 << f.degree) - 1 else "INP"
        return PolynomialClass(kind, e, facs)
    distinct = len(set(facs)) == len(facs)
    if not distinct:
        return PolynomialClass("reducible-nonuniform", None, facs)
    exps = [exponent(p) for p in facs]
    degs = {p.degree for p in facs}
    if len(set(exps)) == 1 and len(degs) == 1:
        return PolynomialClass("reducible-uniform", exps[0], facs)
    return PolynomialClass("reducible-nonuniform", math.lcm(*exps), facs)


def ord2(e):
    """Multiplicative order of 2 modulo odd e; ord2(1) = 1."""
    if e < 1 or e % 2 == 0:
        raise ValueError("ord2 needs an odd positive modulus")
    if e == 1:
        return 1
    d = 1
    r = 2 % e
    while r != 1:
        r = (r << 1) % e
        d += 1
    return d


def count_irreducible_with_exponent(e):
    """Number of irreducible polynomials with exponent e: phi(e)/ord2(e)."""
    if e < 3 or e % 2 == 0:
        raise ValueError("exponent must be odd and at least 3")
    phi = _totient(e)
    n = ord2(e)
    if phi % n:
        raise InternalCheckError("phi(e) must be divisible by ord2(e)")
    return phi // n


@functools.lru_cache(maxsize=2048)
def _cyclotomic_int(e):
    """The e-th cyclotomic polynomial over GF(2), as an int."""
    num = 1
    den = 1
    for d in _divisors(e):
        mu = _mobius(e // d)
        if mu == 1:
            num = _mul(num, (1 << d) | 1)
        elif mu == -1:
            den = _mul(den, (1 << d) | 1)
    q, r = _divmod(num, den)
    if r:
        raise InternalCheckError("cyclotomic division left a remainder")
    return q


def _trace_map(hb, fb, n):
    # h + h^2 + h^4 + ... + h^(2^(n-1)) mod f
    acc = hb
    cur = hb
    for _ in range(n - 1):
        cur = _mod(_square(cur), fb)
        acc ^= cur
    return acc


def _split_equal_degree(fb, n, e):
    """Split a squarefree product of degree-n irreducibles (factors of
    the e-th cyclotomic polynomial) into its irreducible factors."""
    out = []
    stack = [fb]
    while stack:
        g = stack.pop()
        if _degree(g) == n:
            out.append(g)
            continue
        h = _mod(2, g)
        for _ in range(e):
            t = _trace_map(h, g, n)
            d = _gcd(g, t)
            if 0 < _degree(d) < _degree(g):
                stack.append(d)
                stack.append(_divmod(g, d)[0])
                break
            h = _mod(h << 1, g)
        else:
            raise InternalCheckError("equal-degree splitting failed to separate factors")
    return out


def enumerate_irreducible(degree, exponent_value):
    """All irreducible polynomials with the given degree and exponent.

    Empty unless degree == ord2(exponent): the degree of an irreducible
    polynomial is determined by its exponent.
    """
    e = exponent_value
    if e < 1 or e % 2 == 0:
        raise ValueError("exponent must be odd and positive")
    if degree != ord2(e):
        return []
    if e == 1:
        return [BinaryPolynomial(0b11)]  # x + 1
    phi = _totient(e)
    n = degree
    parts = _split_equal_degree(_cyclotomic_int(e), n, e)
    if len(parts) != phi // n:
        raise InternalCheckError("wrong number of cyclotomic factors")
    for p in parts:
        if _powmod(2, e, p) != 1:
            raise InternalCheckError("cyclotomic factor does not divide x^e - 1")
    return [BinaryPolynomial(p) for p in sorted(parts)]
