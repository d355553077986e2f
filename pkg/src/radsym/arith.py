"""Exact integer arithmetic and small finite fields.

Factorization (trial division plus Brent's cycle method), perfect l-th power
detection, multiplicative orders, dense polynomial arithmetic over GF(p), and
elements of GF(p)[X]/(g).  Everything here is exact; a computation that cannot
finish within its budget raises instead of approximating.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cache

from .kernels import sieve_primes

DEFAULT_FACTOR_BOUND = 1 << 96
DEFAULT_FACTOR_BUDGET = 4_000_000

_TRIAL_LIMIT = 1_000_000

# Miller-Rabin with these witnesses is a proof below this bound (Sorenson &
# Webster); larger inputs fall back to sympy's BPSW test, imported lazily.
_MR_PROOF_LIMIT = 3_317_044_064_679_887_385_961_981
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class FactorizationError(RuntimeError):
    """Raised when factorization cannot finish within its iteration budget."""


class RamifiedPrimeError(ValueError):
    """Raised for the one rational prime whose order mod l is undefined (p = l)."""


@dataclass(frozen=True)
class PrimeFactorization:
    """A nonzero integer as sign * product(p**e), primes strictly increasing."""

    sign: int
    factors: tuple[tuple[int, int], ...]

    def value(self) -> int:
        n = self.sign
        for p, e in self.factors:
            n *= p**e
        return n

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


@cache
def _small_primes() -> tuple[int, ...]:
    return tuple(int(p) for p in sieve_primes(_TRIAL_LIMIT))


def _miller_rabin(n: int, bases: tuple[int, ...]) -> bool:
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in bases:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> bool:
    """Deterministic primality for n < ~3.3e24; BPSW (via sympy) above that."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    if n < 41 * 41:
        return True
    if n < _MR_PROOF_LIMIT:
        return _miller_rabin(n, _MR_WITNESSES)
    from sympy import isprime  # deferred: only giant inputs pay the import

    return bool(isprime(n))


def _brent_factor(n: int, budget: list[int]) -> int:
    """One nontrivial factor of odd composite n, or raise on budget exhaustion."""
    for c in range(1, 64):
        y, r, q = 2, 1, 1
        g, x, ys = 1, 2, 2
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                step = min(128, r - k)
                for _ in range(step):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += step
            budget[0] -= 2 * r
            if budget[0] < 0:
                raise FactorizationError(
                    "factorization budget exhausted; lower the input bound"
                )
            r <<= 1
        if g == n:
            # backtrack one block to recover the factor the batch gcd skipped
            while True:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
                if g > 1:
                    break
        if g != n:
            return g
    raise FactorizationError("cycle method failed to split a composite input")


def _factor_into(n: int, out: dict[int, int], budget: list[int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _brent_factor(n, budget)
    _factor_into(d, out, budget)
    _factor_into(n // d, out, budget)


def factorize(
    n: int,
    *,
    bound: int = DEFAULT_FACTOR_BOUND,
    budget: int = DEFAULT_FACTOR_BUDGET,
) -> PrimeFactorization:
    """Exact prime factorization of a nonzero integer.

    Raises ValueError for n == 0 or |n| > bound, and FactorizationError if
    the cycle method exceeds its iteration budget (never a wrong answer).
    """
    if n == 0:
        raise ValueError("cannot factorize 0")
    if abs(n) > bound:
        raise ValueError(f"|n| exceeds the configured factorization bound {bound}")
    sign = 1 if n > 0 else -1
    m = abs(n)
    powers: dict[int, int] = {}
    for p in _small_primes():
        if p * p > m:
            break
        while m % p == 0:
            powers[p] = powers.get(p, 0) + 1
            m //= p
    if m > 1:
        if m < _TRIAL_LIMIT * _TRIAL_LIMIT or is_prime(m):
            powers[m] = powers.get(m, 0) + 1
        else:
            _factor_into(m, powers, [budget])
    return PrimeFactorization(sign, tuple(sorted(powers.items())))


def integer_nth_root(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0, k >= 1, by integer Newton iteration."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k < 1:
        raise ValueError("k must be positive")
    if n == 0:
        return 0
    if k == 1 or n == 1:
        return n if k == 1 else 1
    x = 1 << -(-n.bit_length() // k)  # power of two >= true root
    while True:
        t = ((k - 1) * x + n // x ** (k - 1)) // k
        if t >= x:
            return x
        x = t


def exact_lth_root(n: int, l: int) -> int | None:
    """The integer c with c**l == n, or None.  c may be negative (l is odd)."""
    if n == 0:
        return 0
    m = abs(n)
    r = integer_nth_root(m, l)
    if r**l != m:
        return None
    return r if n > 0 else -r


def lth_power_free(n: int, l: int) -> tuple[int, int]:
    """Split n = core * root**l with core > 0 and l-th-power-free.

    Every prime exponent of core lies in 1..l-1; the sign of n is pushed into
    root, which is valid because l is odd.
    """
    if n == 0:
        raise ValueError("n must be nonzero")
    fact = factorize(n)
    core = 1
    root = 1
    for p, e in fact.factors:
        core *= p ** (e % l)
        root *= p ** (e // l)
    if n < 0:
        root = -root
    return core, root


def multiplicative_order(p: int, l: int) -> int:
    """Smallest f >= 1 with p**f == 1 mod l; divides l - 1.

    Requires odd prime l and prime p != l; p == l raises RamifiedPrimeError.
    """
    if not is_prime(l) or l == 2:
        raise ValueError(f"l must be an odd prime, got {l}")
    if p == l:
        raise RamifiedPrimeError(f"p = l = {l} is ramified; it has no inertia degree")
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    r = p % l
    f = 1
    cur = r
    while cur != 1:
        cur = cur * r % l
        f += 1
    return f


# ---------------------------------------------------------------------------
# Dense polynomials over GF(p): ascending coefficient tuples, no trailing zeros.


def poly_trim(coeffs) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_mod(a, p: int) -> tuple[int, ...]:
    return poly_trim(c % p for c in a)


def poly_add(a, b, p: int) -> tuple[int, ...]:
    n = max(len(a), len(b))
    return poly_trim(
        ((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)
    )


def poly_sub(a, b, p: int) -> tuple[int, ...]:
    n = max(len(a), len(b))
    return poly_trim(
        ((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)
    )


def poly_mul(a, b, p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return poly_trim(out)


def poly_divmod(a, b, p: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    b = poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(poly_mod(a, p))
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    if len(a) - 1 < db:
        return (), poly_trim(a)
    quot = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv % p
        if c:
            quot[i - db] = c
            for j, bj in enumerate(b):
                a[i - db + j] = (a[i - db + j] - c * bj) % p
    return poly_trim(quot), poly_trim(a)


def poly_rem(a, b, p: int) -> tuple[int, ...]:
    return poly_divmod(a, b, p)[1]


def poly_monic(a, p: int) -> tuple[int, ...]:
    a = poly_trim(a)
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return tuple(c * inv % p for c in a)


def poly_gcd(a, b, p: int) -> tuple[int, ...]:
    a, b = poly_mod(a, p), poly_mod(b, p)
    while b:
        a, b = b, poly_rem(a, b, p)
    return poly_monic(a, p)


def poly_powmod(base, e: int, modulus, p: int) -> tuple[int, ...]:
    result: tuple[int, ...] = (1,)
    acc = poly_rem(base, modulus, p)
    while e > 0:
        if e & 1:
            result = poly_rem(poly_mul(result, acc, p), modulus, p)
        e >>= 1
        if e:
            acc = poly_rem(poly_mul(acc, acc, p), modulus, p)
    return result


def poly_is_irreducible(h, p: int) -> bool:
    """Rabin's test: X**(p**d) == X mod h, and no proper subfield traps X."""
    h = poly_mod(h, p)
    d = len(h) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x: tuple[int, ...] = (0, 1)
    if poly_powmod(x, p**d, h, p) != poly_rem(x, h, p):
        return False
    for q in {f for f, _ in factorize(d).factors}:
        xp = poly_powmod(x, p ** (d // q), h, p)
        if len(poly_gcd(poly_sub(xp, x, p), h, p)) > 1:
            return False
    return True


def poly_eval(a, x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


@dataclass(frozen=True)
class FiniteFieldElement:
    """An element of GF(p)[X]/(modulus), coefficients padded to degree f."""

    p: int
    modulus: tuple[int, ...]
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def _lift(self, other):
        if isinstance(other, FiniteFieldElement):
            if other.p != self.p or other.modulus != self.modulus:
                raise ValueError("mixed finite fields")
            return other
        if isinstance(other, int):
            return ff_from_int(self.p, self.modulus, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return FiniteFieldElement(
            self.p,
            self.modulus,
            tuple((a + b) % self.p for a, b in zip(self.coeffs, other.coeffs)),
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return FiniteFieldElement(
            self.p,
            self.modulus,
            tuple((a - b) % self.p for a, b in zip(self.coeffs, other.coeffs)),
        )

    def __neg__(self):
        return FiniteFieldElement(
            self.p, self.modulus, tuple(-c % self.p for c in self.coeffs)
        )

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        prod = poly_rem(poly_mul(self.coeffs, other.coeffs, self.p), self.modulus, self.p)
        return ff_from_poly(self.p, self.modulus, prod)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "FiniteFieldElement":
        if e < 0:
            raise ValueError("negative exponents not supported")
        result = ff_from_int(self.p, self.modulus, 1)
        acc = self
        while e > 0:
            if e & 1:
                result = result * acc
            e >>= 1
            if e:
                acc = acc * acc
        return result


def ff_from_poly(p: int, modulus: tuple[int, ...], coeffs) -> FiniteFieldElement:
    f = len(modulus) - 1
    reduced = poly_rem(poly_mod(coeffs, p), modulus, p)
    padded = tuple(reduced) + (0,) * (f - len(reduced))
    return FiniteFieldElement(p, tuple(modulus), padded)


def ff_from_int(p: int, modulus: tuple[int, ...], n: int) -> FiniteFieldElement:
    return ff_from_poly(p, modulus, (n % p,))


def ff_gen(p: int, modulus: tuple[int, ...]) -> FiniteFieldElement:
    """The class of X in GF(p)[X]/(modulus)."""
    return ff_from_poly(p, modulus, (0, 1))


def ff_pow(x: FiniteFieldElement, e: int) -> FiniteFieldElement:
    """x**e by square-and-multiply; kept as a named entry point."""
    return x**e
