"""Prime-ideal enumeration by norm and empirical density experiments.

The experiment counts prime ideals realizing a prescribed tuple of residue
symbol exponents and compares the observed share with the predicted
1 / l**t, where t is the number of radicands left after elimination.  A
root-of-unity character sum over the same ideals serves as a decay
diagnostic for single radicands.

Degree-1 ideals (above rational primes p == 1 mod l) dominate every norm
range and are handled by the array kernels; the scarce higher-degree ideals
go through the exact generic path.  Both paths produce identical integer
tallies regardless of backend or thread count.
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cache

import numpy as np

from . import kernels
from .arith import exact_lth_root, factorize, is_prime
from .cyclotomic import PrimeIdeal, primes_above, residue_symbol
from .radical import (
    InputSet,
    ReductionResult,
    consistency_check,
    reduce_basis,
    translate_targets,
)

DEFAULT_CHECKPOINTS = (10**3, 10**4, 10**5, 10**6)


@dataclass(frozen=True)
class CheckpointStat:
    bound: int
    ideals: int
    matches: int
    empirical: float


@dataclass(frozen=True)
class CharSumStat:
    n: int
    bound: int
    ideals: int
    tallies: tuple[int, ...]
    value: complex
    magnitude: float
    normalized: float


@dataclass(frozen=True)
class DensityReport:
    l: int
    norm_bound: int
    radicands: tuple[int, ...]
    targets: tuple[int, ...]
    consistent: bool
    t: int
    predicted: float
    reduced: tuple[int, ...]
    translated: tuple[int, ...]
    ideals_scanned: int
    matches: int
    empirical: float
    checkpoints: tuple[CheckpointStat, ...]
    char_sums: tuple[CharSumStat, ...]


@dataclass(frozen=True)
class CharSumReport:
    l: int
    n: int
    norm_bound: int
    checkpoints: tuple[CharSumStat, ...]

    @property
    def final(self) -> CharSumStat:
        return self.checkpoints[-1]

    @property
    def value(self) -> complex:
        return self.final.value

    @property
    def normalized(self) -> float:
        return self.final.normalized


def _check_l(l: int) -> None:
    if l == 2 or not is_prime(l):
        raise ValueError(f"l must be an odd prime, got {l}")


@cache
def _order_table(l: int) -> dict[int, int]:
    table = {}
    for r in range(1, l):
        f, cur = 1, r
        while cur != 1:
            cur = cur * r % l
            f += 1
        table[r] = f
    return table


def _checkpoint_bounds(norm_bound: int) -> tuple[int, ...]:
    bounds = {c for c in DEFAULT_CHECKPOINTS if c <= norm_bound}
    bounds.add(norm_bound)
    return tuple(sorted(bounds))


def enumerate_prime_ideals(l: int, norm_bound: int, *, seed: int = 0):
    """Yield every prime ideal of Z[zeta_l] with norm <= norm_bound, each
    exactly once, ordered by (norm, p, canonical factor order).  The prime
    above l is excluded."""
    _check_l(l)
    if norm_bound < 2:
        raise ValueError("norm bound must be at least 2")
    orders = _order_table(l)
    items = []
    for p in kernels.sieve_primes(norm_bound).tolist():
        if p == l:
            continue
        norm = p ** orders[p % l]
        if norm <= norm_bound:
            items.append((norm, p))
    items.sort()
    for _, p in items:
        yield from primes_above(p, l, seed=seed)


def _mod_array(value: int, mod: np.ndarray) -> np.ndarray:
    if -(2**62) < value < 2**62:
        return np.mod(value, mod)
    return np.array([value % int(p) for p in mod.tolist()], dtype=np.int64)


def _split_prime_exponents(
    l: int,
    norm_bound: int,
    exclude: frozenset[int],
    radicands: tuple[int, ...],
    threads: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Symbol exponents of each radicand at every degree-1 ideal.

    Returns (primes, expo) with primes the ascending split primes p <= bound
    outside the excluded set and expo of shape (len(radicands), len(primes),
    l-1): entry (j, i, k) is the exponent of radicands[j] at the k-th ideal
    above primes[i] in canonical (root-ascending) order.
    """
    primes = kernels.sieve_primes(norm_bound)
    primes = primes[primes % l == 1]
    if exclude:
        mask = ~np.isin(primes, np.array(sorted(exclude), dtype=np.int64))
        primes = primes[mask]
    n = primes.size
    if n == 0:
        return primes, np.zeros((len(radicands), 0, l - 1), dtype=np.int64)

    def work(lo: int, hi: int) -> np.ndarray:
        chunk = primes[lo:hi]
        exps = (chunk - 1) // l
        roots = kernels.unity_roots(chunk, l)
        out = np.empty((len(radicands), chunk.size, l - 1), dtype=np.int64)
        for j, b in enumerate(radicands):
            vals = kernels.powmod(_mod_array(b, chunk), exps, chunk)
            for k in range(l - 1):
                out[j, :, k] = kernels.exponent_lookup(
                    vals, np.ascontiguousarray(roots[:, k]), chunk, l
                )
        return out

    threads = max(1, threads)
    if threads == 1 or n < 2 * threads:
        expo = work(0, n)
    else:
        cuts = np.linspace(0, n, threads + 1, dtype=int)
        spans = [(int(cuts[i]), int(cuts[i + 1])) for i in range(threads)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda span: work(*span), spans))
        expo = np.concatenate(parts, axis=1) if parts else work(0, n)
    if expo.size and expo.min() < 0:
        raise AssertionError("symbol value fell outside the root-of-unity subgroup")
    return primes, expo


def _high_degree_ideals(
    l: int, norm_bound: int, exclude: frozenset[int], seed: int
) -> list[PrimeIdeal]:
    orders = _order_table(l)
    out: list[PrimeIdeal] = []
    for p in kernels.sieve_primes(math.isqrt(norm_bound)).tolist():
        if p == l or p in exclude:
            continue
        f = orders[p % l]
        if f >= 2 and p**f <= norm_bound:
            out.extend(primes_above(p, l, seed=seed))
    out.sort(key=lambda P: P.norm)
    return out


def _excluded_primes(s: InputSet, result: ReductionResult) -> frozenset[int]:
    bad = {s.l}
    for a in s.raw:
        bad.update(factorize(a).primes())
    for b in result.b:
        bad.update(factorize(b).primes())
    return frozenset(bad)


def _zeta_complex(l: int) -> list[complex]:
    return [cmath.exp(2j * cmath.pi * k / l) for k in range(l)]


def _char_stat(
    n: int, bound: int, l: int, expo_slice: np.ndarray, generic_exps: list[int]
) -> CharSumStat:
    tallies = [int((expo_slice == v).sum()) for v in range(l)]
    for e in generic_exps:
        tallies[e] += 1
    total = sum(tallies)
    zc = _zeta_complex(l)
    value = sum(t * zc[k] for k, t in enumerate(tallies))
    magnitude = abs(value)
    normalized = magnitude / total if total else 0.0
    return CharSumStat(n, bound, total, tuple(tallies), value, magnitude, normalized)


def density_experiment(
    input_set: InputSet,
    targets,
    norm_bound: int,
    *,
    seed: int = 0,
    threads: int = 1,
    include_char_sums: bool = True,
    verify_translation: bool = False,
) -> DensityReport:
    """Count prime ideals realizing the target exponents for every radicand.

    Inconsistent targets short-circuit: nothing is scanned and the report
    carries exactly zero matches.  Otherwise the count runs over all prime
    ideals of norm <= norm_bound outside the primes dividing the radicands,
    with cumulative checkpoints at powers of ten.
    """
    l = input_set.l
    targets = tuple(int(r) % l for r in targets)
    if len(targets) != len(input_set.raw):
        raise ValueError(
            f"need one target per radicand: got {len(targets)} for {len(input_set.raw)}"
        )
    if norm_bound < 2:
        raise ValueError("norm bound must be at least 2")
    result = reduce_basis(input_set)
    predicted = 1.0 / l**result.t
    if not consistency_check(input_set, targets):
        return DensityReport(
            l, norm_bound, input_set.raw, targets, False, result.t, predicted,
            result.b, (), 0, 0, 0.0, (), (),
        )
    s_targets = translate_targets(result, targets)
    exclude = _excluded_primes(input_set, result)
    primes, expo = _split_prime_exponents(l, norm_bound, exclude, result.b, threads)
    match = np.ones((primes.size, l - 1), dtype=bool)
    for j, sj in enumerate(s_targets):
        match &= expo[j] == sj
    generic: list[tuple[int, tuple[int, ...]]] = []
    for P in _high_degree_ideals(l, norm_bound, exclude, seed):
        generic.append((P.norm, tuple(residue_symbol(b, P) for b in result.b)))
    if verify_translation:
        _assert_translation_equivalent(
            input_set, targets, result.b, s_targets, exclude, norm_bound,
            primes, match, threads, seed,
        )
    rows = []
    for c in _checkpoint_bounds(norm_bound):
        idx = int(np.searchsorted(primes, c, side="right"))
        ideals = idx * (l - 1) + sum(1 for nm, _ in generic if nm <= c)
        matches = int(match[:idx].sum()) + sum(
            1 for nm, ex in generic if nm <= c and ex == s_targets
        )
        rows.append(CheckpointStat(c, ideals, matches, matches / ideals if ideals else 0.0))
    final = rows[-1]
    char_sums = ()
    if include_char_sums:
        char_sums = tuple(
            _char_stat(b, norm_bound, l, expo[j], [ex[j] for _, ex in generic])
            for j, b in enumerate(result.b)
        )
    return DensityReport(
        l, norm_bound, input_set.raw, targets, True, result.t, predicted,
        result.b, s_targets, final.ideals, final.matches, final.empirical,
        tuple(rows), char_sums,
    )


def _assert_translation_equivalent(
    input_set: InputSet,
    targets: tuple[int, ...],
    reduced_b: tuple[int, ...],
    s_targets: tuple[int, ...],
    exclude: frozenset[int],
    norm_bound: int,
    primes: np.ndarray,
    match_reduced: np.ndarray,
    threads: int,
    seed: int,
) -> None:
    """Debug mode: counting through the raw radicands must select exactly the
    same ideals as counting through the reduced basis."""
    l = input_set.l
    cores = input_set.normalized
    r_norm = tuple(
        t for t, pos in zip(targets, input_set.index_map) if pos is not None
    )
    primes2, expo2 = _split_prime_exponents(l, norm_bound, exclude, cores, threads)
    if not np.array_equal(primes, primes2):
        raise AssertionError("prime streams diverged between counting modes")
    match_raw = np.ones((primes.size, l - 1), dtype=bool)
    for j, rj in enumerate(r_norm):
        match_raw &= expo2[j] == rj
    if not np.array_equal(match_raw, match_reduced):
        raise AssertionError("raw-target and reduced-target counts differ per ideal")
    for P in _high_degree_ideals(l, norm_bound, exclude, seed):
        raw_ok = all(residue_symbol(a, P) == r for a, r in zip(cores, r_norm))
        red_ok = all(
            residue_symbol(b, P) == sj for b, sj in zip(reduced_b, s_targets)
        )
        if raw_ok != red_ok:
            raise AssertionError(f"counting modes disagree at {P}")


def character_sum(
    n: int, l: int, norm_bound: int, *, seed: int = 0, threads: int = 1
) -> CharSumReport:
    """Tally zeta**exponent(n) over all qualifying prime ideals.

    Rejects exact l-th powers (their sum would be trivially the ideal count).
    Ideals above primes dividing n are skipped; the normalized magnitude is
    |sum| divided by the ideal count, 0.0 when no ideal qualifies.
    """
    _check_l(l)
    if norm_bound < 2:
        raise ValueError("norm bound must be at least 2")
    if n == 0 or exact_lth_root(n, l) is not None:
        raise ValueError(f"{n} is an exact {l}-th power; the sum would be trivial")
    exclude = frozenset(factorize(abs(n)).primes()) | {l}
    primes, expo = _split_prime_exponents(l, norm_bound, exclude, (n,), threads)
    generic = []
    for P in _high_degree_ideals(l, norm_bound, exclude, seed):
        generic.append((P.norm, residue_symbol(n, P)))
    rows = []
    for c in _checkpoint_bounds(norm_bound):
        idx = int(np.searchsorted(primes, c, side="right"))
        gen_exps = [e for nm, e in generic if nm <= c]
        rows.append(_char_stat(n, c, l, expo[0][:idx], gen_exps))
    return CharSumReport(l, n, norm_bound, tuple(rows))
