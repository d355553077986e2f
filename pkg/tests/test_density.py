import math

import pytest

from radsym.cyclotomic import SymbolUndefinedError, residue_symbol
from radsym.density import (
    character_sum,
    density_experiment,
    enumerate_prime_ideals,
)
from radsym.radical import normalize_inputs


def is_prime_naive(n):
    return n > 1 and all(n % d for d in range(2, int(n**0.5) + 1))


def order_mod(p, l):
    f, cur = 1, p % l
    while cur != 1:
        cur = cur * p % l
        f += 1
    return f


def test_enumerate_examples():
    ideals = list(enumerate_prime_ideals(3, 10))
    assert [(I.p, I.f, I.norm) for I in ideals] == [(2, 2, 4), (7, 1, 7), (7, 1, 7)]
    assert order_mod(2, 3) == 2 and order_mod(5, 3) == 2 and order_mod(7, 3) == 1

    assert list(enumerate_prime_ideals(3, 3)) == []

    ideals5 = list(enumerate_prime_ideals(5, 11))
    assert [(I.p, I.f) for I in ideals5] == [(11, 1)] * 4
    assert order_mod(2, 5) == 4 and order_mod(3, 5) == 4 and order_mod(11, 5) == 1


def test_enumerate_bad_inputs():
    with pytest.raises(ValueError):
        list(enumerate_prime_ideals(4, 100))
    with pytest.raises(ValueError):
        list(enumerate_prime_ideals(3, 1))


def test_enumerate_stream_matches_hand_rule_to_100():
    # p == 1 mod 3 contributes two ideals of norm p; p == 2 mod 3 contributes
    # one ideal of norm p*p when that fits; 3 never appears
    expected = []
    for p in range(2, 101):
        if not is_prime_naive(p) or p == 3:
            continue
        if p % 3 == 1:
            expected += [(p, p), (p, p)]
        elif p * p <= 100:
            expected += [(p, p * p)]
    expected.sort(key=lambda pn: pn[1])
    got = [(I.p, I.norm) for I in enumerate_prime_ideals(3, 100)]
    assert got == expected
    norms = [n for _, n in got]
    assert norms == sorted(norms)


def test_density_empty_set():
    rep = density_experiment(normalize_inputs(3, []), (), 1000)
    assert rep.consistent and rep.t == 0
    assert rep.matches == rep.ideals_scanned > 0
    assert rep.empirical == 1.0 and rep.predicted == 1.0


def test_density_inconsistent_scans_nothing():
    s = normalize_inputs(3, [12, 18])  # kernel forces r1 + r2 == 0 mod 3
    rep = density_experiment(s, (1, 1), 10**4)
    assert not rep.consistent
    assert rep.matches == 0 and rep.ideals_scanned == 0
    assert rep.checkpoints == () and rep.char_sums == ()


def test_density_single_cube_free_radicand():
    rep = density_experiment(normalize_inputs(3, [2]), (0,), 10**5)
    assert rep.t == 1 and abs(rep.predicted - 1 / 3) < 1e-12
    assert abs(rep.empirical - 1 / 3) <= 0.03


def test_density_checkpoint_structure():
    rep = density_experiment(normalize_inputs(3, [2]), (1,), 25_000)
    assert [row.bound for row in rep.checkpoints] == [1000, 10000, 25000]
    last = rep.checkpoints[-1]
    assert (last.ideals, last.matches) == (rep.ideals_scanned, rep.matches)
    ideals = [row.ideals for row in rep.checkpoints]
    assert ideals == sorted(ideals)


@pytest.mark.parametrize("l,radicands,targets", [
    (3, [2, 5], (0, 0)),
    (3, [2, 5], (1, 2)),
    (3, [12, 18], (1, 2)),
    (5, [2, 3], (1, 4)),
    (5, [10], (0,)),
])
def test_density_matches_generic_ideal_walk(l, radicands, targets):
    """The array fast path must agree with a per-ideal walk over the stream."""
    bound = 4000
    s = normalize_inputs(l, radicands)
    rep = density_experiment(s, targets, bound)
    assert rep.consistent
    excluded = set()
    for a in radicands:
        for q in range(2, abs(a) + 1):
            if abs(a) % q == 0 and is_prime_naive(q):
                excluded.add(q)
    scanned = matches = 0
    for I in enumerate_prime_ideals(l, bound):
        if I.p in excluded or I.p == l:
            continue
        scanned += 1
        if all(residue_symbol(b, I) == sj for b, sj in zip(rep.reduced, rep.translated)):
            matches += 1
    assert scanned == rep.ideals_scanned
    assert matches == rep.matches


def test_density_translation_equivalence_debug_mode():
    from radsym.radical import consistency_check

    s = normalize_inputs(3, [12, 18])
    for targets in [(0, 0), (1, 2), (2, 1)]:
        rep = density_experiment(s, targets, 5000, verify_translation=True)
        assert rep.consistent
    s2 = normalize_inputs(3, [8, 2, 50])
    for targets in [(0, 0, 0), (0, 1, 1), (0, 2, 2)]:
        if consistency_check(s2, targets):
            density_experiment(s2, targets, 3000, verify_translation=True)


def test_density_threads_do_not_change_anything():
    s = normalize_inputs(3, [2, 5])
    a = density_experiment(s, (0, 0), 50_000, threads=1)
    b = density_experiment(s, (0, 0), 50_000, threads=3)
    assert a == b


def test_character_sum_rejects_powers():
    with pytest.raises(ValueError):
        character_sum(8, 3, 1000)
    with pytest.raises(ValueError):
        character_sum(-27, 3, 1000)
    with pytest.raises(ValueError):
        character_sum(1, 3, 1000)
    with pytest.raises(ValueError):
        character_sum(0, 3, 1000)


def test_character_sum_empty_range():
    rep = character_sum(2, 3, 3)  # the smallest norm is 4
    assert rep.final.ideals == 0
    assert rep.final.tallies == (0, 0, 0)
    assert rep.final.value == 0 and rep.final.normalized == 0.0


def test_character_sum_tally_conservation_and_value():
    rep = character_sum(2, 3, 10**4)
    stat = rep.final
    assert sum(stat.tallies) == stat.ideals > 0
    z = [complex(math.cos(2 * math.pi * k / 3), math.sin(2 * math.pi * k / 3)) for k in range(3)]
    want = sum(t * z[k] for k, t in enumerate(stat.tallies))
    assert abs(stat.value - want) < 1e-9
    assert abs(stat.magnitude - abs(want)) < 1e-9
    assert stat.normalized == stat.magnitude / stat.ideals


def test_character_sum_matches_generic_walk():
    bound = 3000
    rep = character_sum(10, 3, bound)
    tallies = [0, 0, 0]
    for I in enumerate_prime_ideals(3, bound):
        if I.p in (2, 5, 3):
            continue
        tallies[residue_symbol(10, I)] += 1
    assert rep.final.tallies == tuple(tallies)


def test_character_sum_conjugate_symmetry():
    # at conjugate ideals a rational argument picks up conjugate exponents,
    # so the nonzero tallies agree exactly
    rep = character_sum(2, 3, 10**5)
    assert rep.final.tallies[1] == rep.final.tallies[2]


def test_character_sum_checkpoints():
    rep = character_sum(2, 3, 12_000)
    assert [row.bound for row in rep.checkpoints] == [1000, 10000, 12000]
    counts = [row.ideals for row in rep.checkpoints]
    assert counts == sorted(counts)
