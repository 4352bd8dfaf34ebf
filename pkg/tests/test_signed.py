import random
from fractions import Fraction
from itertools import product
from math import factorial

import pytest
from hypothesis import assume, given, settings, strategies as st

from racelead import exact, reference
from racelead.errors import DomainError, ResourceLimitError
from racelead.exact import GenericSet, SignedPermutation

F = Fraction


def brute_is_generic(values, bound=2):
    vals = [F(v) for v in values]
    for coeffs in product(range(-bound, bound + 1), repeat=len(vals)):
        if any(coeffs) and sum(c * v for c, v in zip(coeffs, vals)) == 0:
            return False
    return True


small_rationals = st.builds(F, st.integers(1, 30), st.integers(1, 6))


@pytest.mark.parametrize(
    "values, expected", [([1, 2], False), ([1, 3, 9], True), (["1/3", "2/3"], False), ([5, 3, 1], False)]
)
def test_is_generic_examples(values, expected):
    assert exact.is_generic(values) is expected
    assert brute_is_generic(values) is expected


@given(st.lists(small_rationals, min_size=1, max_size=5, unique=True))
@settings(max_examples=300)
def test_is_generic_matches_brute_force(values):
    assert exact.is_generic(values) == brute_is_generic(values)
    assert exact.is_collision_free(values) == brute_is_generic(values, bound=1)


def test_is_generic_rejects_bad_input():
    for bad in ([], [1, -2], [0, 1], [2, 2]):
        with pytest.raises(DomainError):
            exact.is_generic(bad)
    with pytest.raises(ResourceLimitError):
        exact.is_generic(range(1, 14))


def test_is_generic_at_cap_is_fast_enough():
    rng = random.Random(3)
    A = exact.random_generic_set(12, rng)
    assert exact.is_generic(A.values)


@pytest.mark.parametrize(
    "seq, expected", [((2, -1), True), ((1, -2, 4), False), ((F(7, 2), -3, 1), True), ((), True), ((1, -1), False)]
)
def test_has_ballot_property(seq, expected):
    assert exact.has_ballot_property(seq) is expected


@pytest.mark.parametrize("values, expected", [((7,), 1), ((1, 3), 3), ((9, 3, 1), 15)])
def test_count_examples(values, expected):
    A = GenericSet(values)
    assert exact.count_ballot_signed_perms(A) == expected
    assert exact.count_ballot_signed_perms_naive(values) == expected


def test_two_element_qualifiers():
    A = GenericSet((1, 3))
    got = {S.resolve(A) for S in exact.ballot_signed_perms(A)}
    assert got == {(1, 3), (3, 1), (3, -1)}


def test_dfs_agrees_with_naive_scan_on_random_sets():
    rng = random.Random(11)
    for n in range(1, 6):
        for _ in range(4):
            A = exact.random_generic_set(n, rng)
            assert exact.count_ballot_signed_perms(A) == exact.count_ballot_signed_perms_naive(A.values)


def test_count_is_independent_of_generic_set():
    rng = random.Random(5)
    for n in range(1, 6):
        for _ in range(20):
            A = exact.random_generic_set(n, rng)
            assert exact.count_ballot_signed_perms(A) == reference.ballot_signed_perm_count(n)


def test_count_invariant_under_sign_and_order():
    vals = [F(9), F(3), F(1), F(29, 3)]
    base = exact.count_ballot_signed_perms_naive(vals)
    assert exact.count_ballot_signed_perms_naive([-vals[0], vals[1], -vals[2], vals[3]]) == base
    assert exact.count_ballot_signed_perms_naive(vals[::-1]) == base


def test_pruned_search_beats_naive_scan():
    stats = {}
    for n in (7, 8):
        A = exact.random_generic_set(n, random.Random(n))
        assert exact.count_ballot_signed_perms(A, stats=stats) == reference.ballot_signed_perm_count(n)
        assert 2**n * factorial(n) / stats["nodes"] > 10


def test_count_cap_and_uncertified_input():
    with pytest.raises(ResourceLimitError):
        exact.count_ballot_signed_perms(exact.random_generic_set(11, random.Random(0)))
    with pytest.raises(DomainError):
        exact.count_ballot_signed_perms([1, 3])
    with pytest.raises(DomainError):
        GenericSet((1, 2))


def test_signed_permutation_validation():
    with pytest.raises(DomainError):
        SignedPermutation((0, 0), (1, 1))
    with pytest.raises(DomainError):
        SignedPermutation((0, 1), (1, 2))
    A = GenericSet((9, 3, 1))
    S = SignedPermutation.from_sequence((9, -1, 3), A)
    assert S.order == (0, 2, 1) and S.signs == (1, -1, 1)
    assert S.resolve(A) == (9, -1, 3)


# ---------------------------------------------------------------------------
# collisions


def _check_deltas_by_certificate(A, target, deltas, rng):
    """Each returned value makes the set collide; points between them do not."""
    for v in deltas:
        vals = list(A.values)
        vals[0] = v
        assert len(set(vals)) < len(vals) or not exact.is_collision_free(vals)
    cuts = [A.values[0], *deltas, F(target)]
    for hi, lo in zip(cuts, cuts[1:]):
        for _ in range(3):
            v = lo + (hi - lo) * F(rng.randint(1, 999), 1000)
            vals = list(A.values)
            vals[0] = v
            assert exact.is_collision_free(vals), v


@pytest.mark.parametrize(
    "values, target, expected",
    [((5, 3, 1), F(1, 2), (4, 3, 2, 1)), ((5, 3, 1), F(9, 2), ()), ((3, 2), F(1, 2), (2,))],
)
def test_collision_deltas_examples(values, target, expected):
    A = GenericSet(values, "collision_free")
    got = exact.collision_deltas(A, target)
    assert got == tuple(F(v) for v in expected)
    _check_deltas_by_certificate(A, target, got, random.Random(0))


def test_collision_deltas_against_certificate_on_random_sets():
    rng = random.Random(8)
    for n in range(2, 5):
        for _ in range(5):
            vals = sorted((F(rng.randint(1, 60), rng.randint(1, 7)) for _ in range(n)), reverse=True)
            if len(set(vals)) < n or not exact.is_generic(vals):
                continue
            A = GenericSet(vals)
            target = A.values[0] / rng.randint(3, 9)
            if not exact.is_collision_free([target, *A.values[1:]]):
                continue
            _check_deltas_by_certificate(A, target, exact.collision_deltas(A, target), rng)


def test_collision_deltas_rejects_degenerate_target():
    A = GenericSet((5, 3, 1), "collision_free")
    with pytest.raises(DomainError):
        exact.collision_deltas(A, 2)
    with pytest.raises(DomainError):
        exact.collision_deltas(A, 6)


def test_step_map_reflects_prefix():
    A = GenericSet(("7/2", 3, 1), "collision_free")
    B = A.replace(0, "5/2")
    S = SignedPermutation.from_sequence(("7/2", -3, 1), A)
    out = exact.collision_step_map(S, A, B)
    assert out.resolve(B) == (3, F(-5, 2), 1)


def test_step_map_identity_when_no_prefix_crosses():
    A = GenericSet(("7/2", 3, 1), "collision_free")
    B = A.replace(0, "17/5")
    S = SignedPermutation.from_sequence((3, 1, "-7/2"), A)
    assert exact.collision_step_map(S, A, B) == S


def test_step_map_round_trip_exhaustive():
    A = GenericSet(("7/2", 3, 1), "collision_free")
    B = A.replace(0, "5/2")
    ballots = exact.ballot_signed_perms(A)
    assert len(ballots) == 15
    image = [exact.collision_step_map(S, A, B) for S in ballots]
    assert set(image) == set(exact.ballot_signed_perms(B))
    assert [exact.collision_step_map(T, B, A) for T in image] == ballots


def test_step_map_rejects_multi_collision_and_non_ballot():
    A = GenericSet(("7/2", 3, 1), "collision_free")
    B = A.replace(0, "1/2")
    S = exact.ballot_signed_perms(A)[0]
    with pytest.raises(DomainError):
        exact.collision_step_map(S, A, B)
    bad = SignedPermutation.from_sequence((-1, 3, "7/2"), A)
    with pytest.raises(DomainError):
        exact.collision_step_map(bad, A, A.replace(0, "5/2"))


def test_hops_straddle_single_collisions():
    A = GenericSet(("7/2", 3, 1), "collision_free")
    hops = exact.collision_hops(A, F(1, 2))
    assert [h.values[0] for h in hops] == [F(5, 2), F(3, 2), F(1, 2)]


@given(
    st.lists(st.builds(F, st.integers(1, 200), st.integers(1, 9)), min_size=2, max_size=4, unique=True),
    st.integers(2, 12),
)
@settings(max_examples=40, deadline=None)
def test_hop_maps_are_bijections(values, divisor):
    assume(exact.is_generic(values))
    A = GenericSet(values)
    target = A.values[0] / divisor
    assume(target not in A.values)
    assume(exact.is_collision_free([target, *A.values[1:]]))
    expected = reference.ballot_signed_perm_count(A.n)
    src = A
    for dst in exact.collision_hops(A, target):
        before = exact.ballot_signed_perms(src)
        image = [exact.collision_step_map(S, src, dst) for S in before]
        assert len(set(image)) == expected
        assert set(image) == set(exact.ballot_signed_perms(dst))
        assert [exact.collision_step_map(T, dst, src) for T in image] == before
        src = dst
