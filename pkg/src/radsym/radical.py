"""Degree of Q(a_1**(1/l), ..., a_m**(1/l)) over Q for an odd prime l.

Two independent routes are implemented and always cross-asserted: successive
elimination of shared primes (producing radicands with pairwise-exclusive
prime divisors), and the rank over Z/l of the matrix of prime exponents.  An
exhaustive big-integer enumeration of multiplicative relations serves as a
third, slower oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import exact_lth_root, factorize, is_prime, lth_power_free


class DegreeMismatchError(RuntimeError):
    """The two degree methods disagreed: an internal bug, never user error."""


class OracleScaleError(ValueError):
    """The exhaustive oracle was asked to enumerate too large a space."""


class InconsistentTargetsError(ValueError):
    """The requested symbol targets violate a multiplicative relation."""


@dataclass(frozen=True)
class InputSet:
    """Raw radicands plus their positive l-th-power-free cores.

    ``index_map[i]`` is the position of raw entry i among the normalized
    cores, or None when the entry is an exact l-th power (core 1) and was
    dropped.  Duplicates are kept as distinct entries.
    """

    l: int
    raw: tuple[int, ...]
    normalized: tuple[int, ...]
    index_map: tuple[int | None, ...]


def normalize_inputs(l: int, radicands) -> InputSet:
    if l == 2 or not is_prime(l):
        raise ValueError(f"l must be an odd prime, got {l}")
    raw = tuple(int(a) for a in radicands)
    cores: list[int] = []
    index_map: list[int | None] = []
    for a in raw:
        if a == 0:
            raise ValueError("radicands must be nonzero")
        core, _ = lth_power_free(a, l)
        if core == 1:
            index_map.append(None)
        else:
            index_map.append(len(cores))
            cores.append(core)
    return InputSet(l, raw, tuple(cores), tuple(index_map))


@dataclass(frozen=True, eq=False)
class ExponentMatrix:
    """Prime exponents of the normalized cores, reduced mod l.

    entries[i, j] is the exponent of primes[j] in core i; primes are the
    distinct primes dividing the product of the cores, ascending.
    """

    l: int
    entries: np.ndarray
    primes: tuple[int, ...]


def exponent_matrix(s: InputSet) -> ExponentMatrix:
    facts = [factorize(a) for a in s.normalized]
    primes = sorted({p for f in facts for p in f.primes()})
    index = {p: j for j, p in enumerate(primes)}
    entries = np.zeros((len(s.normalized), len(primes)), dtype=np.int64)
    for i, f in enumerate(facts):
        for p, e in f.factors:
            entries[i, index[p]] = e % s.l
    return ExponentMatrix(s.l, entries, tuple(primes))


@dataclass(frozen=True)
class KernelBasis:
    """Left-kernel relations: each basis vector lam has prod a_i**lam_i an
    exact l-th power.  The span has l**(m - rank) elements."""

    l: int
    rank: int
    basis: tuple[tuple[int, ...], ...]


def _rref_mod(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over Z/p; pivots take the first nonzero
    column with the smallest row index."""
    m = a.copy() % p
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        pivot_row = None
        for i in range(r, rows):
            if m[i, c] % p:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != r:
            m[[r, pivot_row]] = m[[pivot_row, r]]
        m[r] = m[r] * pow(int(m[r, c]), -1, p) % p
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] = (m[i] - m[i, c] * m[r]) % p
        pivots.append(c)
        r += 1
    return m, pivots


def _nullspace_mod(a: np.ndarray, p: int) -> list[np.ndarray]:
    """Basis of the right nullspace of a over Z/p, one vector per free
    column, ascending; each vector is scaled so its first nonzero entry is 1."""
    rows, cols = a.shape
    r, pivots = _rref_mod(a, p)
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        v = np.zeros(cols, dtype=np.int64)
        v[free] = 1
        for row, pc in enumerate(pivots):
            v[pc] = (-r[row, free]) % p
        first = int(v[np.flatnonzero(v)[0]])
        v = v * pow(first, -1, p) % p
        basis.append(v)
    return basis


def rank_and_kernel(m: ExponentMatrix) -> KernelBasis:
    transposed = m.entries.T % m.l
    _, pivots = _rref_mod(transposed, m.l)
    basis = _nullspace_mod(transposed, m.l)
    return KernelBasis(m.l, len(pivots), tuple(tuple(int(x) for x in v) for v in basis))


@dataclass(frozen=True, eq=False)
class ReductionResult:
    """Output of the successive elimination: t radicands b_j, each owning an
    exclusive prime q_j that divides no other b_k, and the mod-l exponents
    expressing each b_j as a product of the raw inputs times an l-th power."""

    l: int
    t: int
    b: tuple[int, ...]
    exclusive_primes: tuple[int, ...]
    transform: np.ndarray


def reduce_basis(s: InputSet) -> ReductionResult:
    """Successive elimination on exponent vectors mod l.

    Repeatedly take the first unprocessed row, pick its smallest prime q not
    yet used as a pivot, and clear q's column from every other live row by
    adding the right multiple of the pivot row; rows that become zero are
    exact l-th powers and are dropped.  Working on exponent vectors keeps the
    intermediate numbers bounded; the integers b_j are rebuilt at the end.
    """
    l = s.l
    mat = exponent_matrix(s)
    m_norm = len(s.normalized)
    rows = [[mat.entries[i].copy(), _unit_vector(m_norm, i)] for i in range(m_norm)]
    pending = list(range(m_norm))
    processed: list[int] = []
    pivot_col: dict[int, int] = {}

    while pending:
        idx = pending.pop(0)
        vec, evec = rows[idx]
        col = int(np.flatnonzero(vec)[0])
        inv = pow(int(vec[col]), -1, l)
        survivors = []
        for other in pending + processed:
            ovec, oevec = rows[other]
            r_other = int(ovec[col])
            if r_other:
                factor = (-r_other) * inv % l
                rows[other][0] = (ovec + factor * vec) % l
                rows[other][1] = (oevec + factor * evec) % l
        for other in pending:
            if rows[other][0].any():
                survivors.append(other)
        pending = survivors
        pivot_col[idx] = col
        processed.append(idx)

    b_values = []
    exclusive = []
    transform = np.zeros((len(processed), len(s.raw)), dtype=np.int64)
    for j, idx in enumerate(processed):
        vec, evec = rows[idx]
        value = 1
        for c, e in zip(mat.primes, vec):
            value *= int(c) ** int(e)
        b_values.append(value)
        exclusive.append(mat.primes[pivot_col[idx]])
        for i, pos in enumerate(s.index_map):
            if pos is not None:
                transform[j, i] = evec[pos]
    _assert_exclusive(
        [rows[idx][0] for idx in processed], [pivot_col[idx] for idx in processed]
    )
    return ReductionResult(
        l, len(processed), tuple(b_values), tuple(exclusive), transform
    )


def _unit_vector(n: int, i: int) -> np.ndarray:
    v = np.zeros(n, dtype=np.int64)
    v[i] = 1
    return v


def _assert_exclusive(vecs, cols) -> None:
    for j, col in enumerate(cols):
        for k, vec in enumerate(vecs):
            if (vec[col] != 0) != (k == j):
                raise AssertionError("pivot prime exclusivity violated")


def degree(s: InputSet, method: str = "rank") -> int:
    """l**t by elimination or l**rank by the matrix; the two are asserted
    equal, and a mismatch raises DegreeMismatchError (an internal bug)."""
    if method not in ("reduction", "rank"):
        raise ValueError(f"unknown method {method!r}")
    t = reduce_basis(s).t
    rank = rank_and_kernel(exponent_matrix(s)).rank
    if t != rank:
        raise DegreeMismatchError(
            f"elimination gives l**{t} but the matrix rank gives l**{rank}"
        )
    return s.l**t


def brute_force_kernel(s: InputSet, *, limit: int = 10**7) -> int:
    """Exhaustive count of exponent tuples whose product is an exact l-th
    power, using big-integer arithmetic only.  Guards at l**m <= limit."""
    l = s.l
    m = len(s.normalized)
    if l**m > limit:
        raise OracleScaleError(f"l**{m} exceeds the oracle scale guard {limit}")
    count = 0
    for lam in itertools.product(range(l), repeat=m):
        prod = 1
        for a, e in zip(s.normalized, lam):
            prod *= a**e
        if exact_lth_root(prod, l) is not None:
            count += 1
    return count


def consistency_check(s: InputSet, targets) -> bool:
    """Whether the target exponents can be realized by any prime ideal:
    dropped entries need target 0 and every kernel relation must vanish."""
    targets = tuple(int(r) % s.l for r in targets)
    if len(targets) != len(s.raw):
        raise ValueError(
            f"need one target per radicand: got {len(targets)} for {len(s.raw)}"
        )
    reduced = []
    for r, pos in zip(targets, s.index_map):
        if pos is None:
            if r != 0:
                return False
        else:
            reduced.append(r)
    kernel = rank_and_kernel(exponent_matrix(s))
    for relation in kernel.basis:
        if sum(c * r for c, r in zip(relation, reduced)) % s.l != 0:
            return False
    return True


def translate_targets(
    result: ReductionResult, targets, *, input_set: InputSet | None = None
) -> tuple[int, ...]:
    """Map per-radicand targets r to per-b targets s via s_j = sum E_ji r_i.

    When the originating InputSet is supplied the assignment is verified for
    consistency first and InconsistentTargetsError is raised on failure.
    """
    targets = tuple(int(r) % result.l for r in targets)
    if len(targets) != result.transform.shape[1]:
        raise ValueError(
            f"need {result.transform.shape[1]} targets, got {len(targets)}"
        )
    if input_set is not None and not consistency_check(input_set, targets):
        raise InconsistentTargetsError("targets violate a multiplicative relation")
    r = np.array(targets, dtype=np.int64)
    return tuple(int(x) for x in (result.transform @ r) % result.l)


def transform_quotient(s: InputSet, result: ReductionResult, j: int) -> Fraction:
    """prod raw_i**E_ji divided by b_j, as an exact rational (test hook:
    this quotient must always be an l-th power of a rational)."""
    num = Fraction(1)
    for a, e in zip(s.raw, result.transform[j]):
        num *= Fraction(a) ** int(e)
    return num / result.b[j]
