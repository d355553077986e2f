"""Arithmetic in Z[zeta_l] and residue symbols at its prime ideals.

zeta_l is a primitive l-th root of unity for an odd prime l.  Elements are
held in the power basis 1, zeta, ..., zeta^(l-2).  Prime ideals above a
rational prime p != l are represented by the monic irreducible factors of the
l-th cyclotomic polynomial mod p; the residue symbol is computed by raising
to (p**f - 1)/l in the residue field GF(p)[X]/(g) and matching the result
against the images of the powers of zeta.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache

from .arith import (
    FiniteFieldElement,
    RamifiedPrimeError,
    factorize,
    ff_from_int,
    ff_from_poly,
    is_prime,
    multiplicative_order,
    poly_is_irreducible,
    poly_mod,
    poly_mul,
    poly_rem,
    poly_trim,
)


class SymbolUndefinedError(ValueError):
    """The argument lies in the prime ideal, so its symbol is undefined."""


class UnsupportedModulusError(ValueError):
    """The reciprocity check only accepts moduli generating a prime ideal."""


def _check_l(l: int) -> None:
    if l == 2 or not is_prime(l):
        raise ValueError(f"l must be an odd prime, got {l}")


@dataclass(frozen=True)
class CyclotomicInt:
    """sum(coeffs[i] * zeta**i) with exactly l-1 coefficients."""

    l: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.l - 1:
            raise ValueError(f"need exactly {self.l - 1} coefficients")

    @classmethod
    def from_int(cls, l: int, n: int) -> "CyclotomicInt":
        _check_l(l)
        return cls(l, (n,) + (0,) * (l - 2))

    @classmethod
    def zeta(cls, l: int, power: int = 1) -> "CyclotomicInt":
        _check_l(l)
        return _from_exponent_dict(l, {power % l: 1})

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def _lift(self, other):
        if isinstance(other, CyclotomicInt):
            if other.l != self.l:
                raise ValueError("mixed cyclotomic orders")
            return other
        if isinstance(other, int):
            return CyclotomicInt.from_int(self.l, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return CyclotomicInt(self.l, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return CyclotomicInt(self.l, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return CyclotomicInt(self.l, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        l = self.l
        wrapped: dict[int, int] = {}
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b == 0:
                    continue
                k = (i + j) % l
                wrapped[k] = wrapped.get(k, 0) + a * b
        return _from_exponent_dict(l, wrapped)

    __rmul__ = __mul__

    def conjugate(self, k: int) -> "CyclotomicInt":
        """The Galois image sending zeta to zeta**k (k coprime to l)."""
        if math.gcd(k, self.l) != 1:
            raise ValueError("conjugation exponent must be coprime to l")
        moved = {}
        for i, c in enumerate(self.coeffs):
            if c:
                e = i * k % self.l
                moved[e] = moved.get(e, 0) + c
        return _from_exponent_dict(self.l, moved)


def _from_exponent_dict(l: int, powers: dict[int, int]) -> CyclotomicInt:
    # zeta**(l-1) = -(1 + zeta + ... + zeta**(l-2)) collapses the top term
    top = powers.get(l - 1, 0)
    return CyclotomicInt(l, tuple(powers.get(i, 0) - top for i in range(l - 1)))


def as_cyclotomic(value: "CyclotomicInt | int", l: int) -> CyclotomicInt:
    if isinstance(value, CyclotomicInt):
        if value.l != l:
            raise ValueError("cyclotomic order mismatch")
        return value
    return CyclotomicInt.from_int(l, value)


def cyclo_norm(alpha: CyclotomicInt) -> int:
    """Field norm down to Q: the product of all Galois conjugates."""
    prod = alpha
    for k in range(2, alpha.l):
        prod = prod * alpha.conjugate(k)
    if not prod.is_rational():
        raise AssertionError("conjugate product is not rational")
    return prod.coeffs[0]


def is_primary(alpha: CyclotomicInt) -> bool:
    """Congruent to a rational integer mod (1 - zeta)**2.

    Writing zeta = 1 - pi, zeta**i == 1 - i*pi mod pi**2, so alpha differs
    from a rational integer by (sum i*c_i) * pi mod pi**2; a rational integer
    is divisible by pi exactly when l divides it.
    """
    return sum(i * c for i, c in enumerate(alpha.coeffs)) % alpha.l == 0


@dataclass(frozen=True)
class PrimeIdeal:
    """A prime of Z[zeta_l] above p != l: (p, g(zeta)) with g | Phi_l mod p."""

    l: int
    p: int
    f: int
    g: tuple[int, ...]

    @property
    def norm(self) -> int:
        return self.p**self.f

    def __str__(self) -> str:
        return f"({self.p}, {poly_str(self.g)})"


def poly_str(g: tuple[int, ...]) -> str:
    terms = []
    for i in range(len(g) - 1, -1, -1):
        c = g[i]
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        elif i == 1:
            terms.append("X" if c == 1 else f"{c}*X")
        else:
            terms.append(f"X^{i}" if c == 1 else f"{c}*X^{i}")
    return "+".join(terms) if terms else "0"


def cyclotomic_modulus(l: int, p: int) -> tuple[int, ...]:
    """Phi_l reduced mod p: 1 + X + ... + X**(l-1)."""
    return poly_mod((1,) * l, p)


def _canonical_key(g: tuple[int, ...], p: int) -> tuple[int, ...]:
    # orders linear factors X - w by ascending root w and is deterministic
    # for higher degrees
    return tuple((-c) % p for c in g)


def _min_poly_over_base(roots: list[FiniteFieldElement], p: int) -> tuple[int, ...]:
    """prod (X - r) for Frobenius-conjugate roots; coefficients must be in GF(p)."""
    modulus = roots[0].modulus
    coeffs = [ff_from_int(p, modulus, 1)]
    for r in roots:
        nxt = [ff_from_int(p, modulus, 0) for _ in range(len(coeffs) + 1)]
        for i, c in enumerate(coeffs):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - c * r
        coeffs = nxt
    out = []
    for c in coeffs:
        if any(v != 0 for v in c.coeffs[1:]):
            raise AssertionError("minimal polynomial coefficient escaped GF(p)")
        out.append(c.coeffs[0])
    return poly_trim(out)


def _random_irreducible(p: int, f: int, rng: random.Random) -> tuple[int, ...]:
    while True:
        cand = tuple(rng.randrange(p) for _ in range(f)) + (1,)
        if poly_is_irreducible(cand, p):
            return cand


def primes_above(p: int, l: int, seed: int = 0) -> list[PrimeIdeal]:
    """All (l-1)/f prime ideals of Z[zeta_l] above p, canonically sorted.

    The factors of Phi_l mod p all share degree f = ord(p mod l).  They are
    found as minimal polynomials of the powers of one element of exact
    multiplicative order l in GF(p**f); the random searches are seeded per
    (p, l, seed), so repeated calls agree.
    """
    _check_l(l)
    if p == l:
        raise RamifiedPrimeError(f"p = l = {l} is ramified; its unique prime is out of scope")
    f = multiplicative_order(p, l)
    phi = cyclotomic_modulus(l, p)
    if f == l - 1:
        return [PrimeIdeal(l, p, f, phi)]

    rng = random.Random(p * 1_000_003 + l * 1_009 + seed * 7_919)
    factors: list[tuple[int, ...]] = []
    if f == 1:
        e = (p - 1) // l
        while True:
            theta = pow(rng.randrange(2, p), e, p)
            if theta > 1:
                break
        w = theta
        for _ in range(l - 1):
            factors.append(((-w) % p, 1))
            w = w * theta % p
    else:
        modulus = _random_irreducible(p, f, rng)
        e = (p**f - 1) // l
        one = ff_from_int(p, modulus, 1)
        while True:
            z = ff_from_poly(p, modulus, tuple(rng.randrange(p) for _ in range(f)))
            if z.is_zero():
                continue
            theta = z**e
            if theta != one:
                break
        subgroup = set()
        cur = p % l
        while cur not in subgroup:
            subgroup.add(cur)
            cur = cur * p % l
        theta_pow = {j: theta**j for j in range(1, l)}
        seen: set[int] = set()
        for j in range(1, l):
            if j in seen:
                continue
            orbit = sorted(j * h % l for h in subgroup)
            seen.update(orbit)
            roots = [theta_pow[e2] for e2 in orbit]
            factors.append(_min_poly_over_base(roots, p))

    factors.sort(key=lambda g: _canonical_key(g, p))
    product: tuple[int, ...] = (1,)
    for g in factors:
        if len(g) - 1 != f:
            raise AssertionError("factor degree disagrees with the inertia degree")
        product = poly_mul(product, g, p)
    if product != phi:
        raise AssertionError("factor product does not reproduce the cyclotomic polynomial")
    return [PrimeIdeal(l, p, f, g) for g in factors]


@lru_cache(maxsize=4096)
def _zeta_images(ideal: PrimeIdeal) -> tuple[FiniteFieldElement, ...]:
    images = []
    x = ff_from_poly(ideal.p, ideal.g, (0, 1))
    acc = ff_from_int(ideal.p, ideal.g, 1)
    for _ in range(ideal.l):
        images.append(acc)
        acc = acc * x
    return tuple(images)


@lru_cache(maxsize=4096)
def _zeta_int_images(ideal: PrimeIdeal) -> tuple[int, ...]:
    # degree 1 only: the residue field is GF(p) and zeta maps to the root of g
    root = (-ideal.g[0]) % ideal.p
    return tuple(pow(root, i, ideal.p) for i in range(ideal.l))


def _embed(alpha: "CyclotomicInt | int", ideal: PrimeIdeal) -> FiniteFieldElement:
    """Image of alpha in the residue field GF(p)[X]/(g), sending zeta to X."""
    if isinstance(alpha, int):
        return ff_from_int(ideal.p, ideal.g, alpha)
    if alpha.l != ideal.l:
        raise ValueError("cyclotomic order mismatch")
    return ff_from_poly(ideal.p, ideal.g, alpha.coeffs)


def residue_symbol(alpha: "CyclotomicInt | int", ideal: PrimeIdeal) -> int:
    """Exponent i in [0, l) with alpha**((p**f - 1)/l) == zeta**i mod the ideal.

    Raises SymbolUndefinedError when alpha lies in the ideal.
    """
    e = (ideal.norm - 1) // ideal.l
    if ideal.f == 1:
        # the residue field is GF(p) itself; work with plain integers
        p = ideal.p
        if isinstance(alpha, int):
            c = alpha % p
        else:
            if alpha.l != ideal.l:
                raise ValueError("cyclotomic order mismatch")
            root = (-ideal.g[0]) % p
            c = 0
            for coeff in reversed(alpha.coeffs):
                c = (c * root + coeff) % p
        if c == 0:
            raise SymbolUndefinedError(f"argument lies in {ideal}; symbol undefined")
        y = pow(c, e, p)
        for i, z in enumerate(_zeta_int_images(ideal)):
            if y == z:
                return i
        raise AssertionError("residue power is not a root of unity image")
    img = _embed(alpha, ideal)
    if img.is_zero():
        raise SymbolUndefinedError(f"argument lies in {ideal}; symbol undefined")
    y = img**e
    for i, z in enumerate(_zeta_images(ideal)):
        if y == z:
            return i % ideal.l
    raise AssertionError("residue power is not a root of unity image")


def symbol_over_integer(alpha: "CyclotomicInt | int", n: int, *, l: int | None = None) -> int:
    """Symbol exponent of alpha over the ideal (n): summed over primes above n.

    n must be coprime to both l and the norm of alpha.  Each prime q | n is
    unramified, so (q) contributes every ideal above q with the multiplicity
    of q in n.
    """
    if isinstance(alpha, CyclotomicInt):
        l = alpha.l
    elif l is None:
        raise ValueError("l is required when alpha is a rational integer")
    alpha = as_cyclotomic(alpha, l)
    if n == 0:
        raise ValueError("modulus must be nonzero")
    if math.gcd(n, l) != 1:
        raise ValueError(f"modulus shares the prime {l} with l")
    norm = cyclo_norm(alpha)
    shared = math.gcd(abs(n), abs(norm))
    if shared != 1:
        q = factorize(shared).factors[0][0]
        raise ValueError(f"modulus and argument share the prime {q}")
    total = 0
    for q, e in factorize(abs(n)).factors:
        for ideal in primes_above(q, l):
            total += e * residue_symbol(alpha, ideal)
    return total % l


def eisenstein_check(alpha: CyclotomicInt, a: int) -> bool:
    """Compare the two reciprocal symbols for primary alpha and rational a.

    alpha must generate a prime ideal (its norm is p**f for the inertia
    degree f of p), and a must be coprime to l and to that norm.  Returns
    whether symbol(a at (alpha)) equals symbol(alpha over a).
    """
    l = alpha.l
    if not is_primary(alpha):
        raise ValueError("alpha is not primary")
    if math.gcd(a, l) != 1:
        raise ValueError("a must be coprime to l")
    norm = abs(cyclo_norm(alpha))
    if norm == 1:
        raise UnsupportedModulusError("alpha is a unit; it generates no prime ideal")
    fact = factorize(norm)
    if len(fact.factors) != 1:
        raise UnsupportedModulusError("norm of alpha is not a prime power")
    p, k = fact.factors[0]
    if p == l:
        raise UnsupportedModulusError("alpha lies above l; out of scope")
    if k != multiplicative_order(p, l):
        raise UnsupportedModulusError("norm exponent disagrees with the inertia degree")
    if math.gcd(a, norm) != 1:
        raise ValueError("a must be coprime to the norm of alpha")
    hits = [P for P in primes_above(p, l) if _embed(alpha, P).is_zero()]
    if len(hits) != 1:
        raise AssertionError("alpha should lie in exactly one ideal above p")
    left = residue_symbol(a, hits[0])
    right = symbol_over_integer(alpha, a)
    return left == right
