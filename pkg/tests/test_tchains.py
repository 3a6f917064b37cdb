"""Continued-fraction expansion and class T chain recognition."""

from fractions import Fraction
from math import gcd, isqrt

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from blowdown import (
    chain_determinant,
    classify_chain,
    continuants,
    extend_left,
    extend_right,
    general_params,
    generate_class_t,
    hj_expand,
    hj_value,
    is_class_t,
    wahl_params,
)
from blowdown.tchains import apply_moves, chain_bases

# Each C(p,q) label denotes the expansion of p^2/(pq - 1).
WAHL_CHAINS = {
    (2, 1): (4,),
    (7, 1): (9, 2, 2, 2, 2, 2),
    (19, 5): (4, 7, 2, 2, 3, 2, 2),
    (35, 6): (6, 8, 2, 2, 2, 3, 2, 2, 2, 2),
    (7, 4): (2, 6, 2, 3),
    (48, 17): (3, 6, 5, 3, 2, 2, 2, 3, 2),
    (3, 1): (5, 2),
    (4, 1): (6, 2, 2),
    (7, 2): (4, 5, 2, 2),
    (131, 27): (5, 7, 6, 2, 3, 2, 2, 2, 2, 3, 2, 2, 2),
}


def coprime_pairs(limit):
    for p in range(2, limit + 1):
        for q in range(1, p):
            if gcd(p, q) == 1:
                yield p, q


st_coprime = st.integers(2, 400).flatmap(
    lambda p: st.tuples(
        st.just(p),
        st.integers(1, p - 1).filter(lambda q: gcd(p, q) == 1),
    )
)


def test_hj_expand_small_values():
    assert hj_expand(2, 1) == (2,)
    assert hj_expand(3, 1) == (3,)
    assert hj_expand(3, 2) == (2, 2)
    assert hj_expand(7, 5) == (2, 2, 3)
    assert hj_expand(19, 5) == (4, 5)
    assert hj_expand(49, 6) == (9, 2, 2, 2, 2, 2)


def test_hj_expand_entries_at_least_two():
    for p, q in coprime_pairs(40):
        assert min(hj_expand(p, q)) >= 2


@pytest.mark.parametrize(
    "p, q",
    [(7, 0), (7, 7), (3, 5), (4, 2), (0, 1), (-5, 2)],
)
def test_hj_expand_rejects_bad_pairs(p, q):
    with pytest.raises(ValueError):
        hj_expand(p, q)


def test_hj_expand_rejects_non_integers():
    with pytest.raises(ValueError):
        hj_expand(2.0, 1)


def test_hj_value_inverts_expansion():
    for p, q in coprime_pairs(40):
        assert hj_value(hj_expand(p, q)) == Fraction(p, q)


@given(st_coprime)
@settings(max_examples=200)
def test_hj_round_trip_property(pair):
    p, q = pair
    bs = hj_expand(p, q)
    assert all(b >= 2 for b in bs)
    assert hj_value(bs) == Fraction(p, q)


def test_continuants_recurrence():
    bs = (6, 8, 2, 2, 2, 3, 2, 2, 2, 2)
    qs = continuants(bs)
    assert len(qs) == len(bs)
    prev2, prev1 = 1, qs[0]
    assert qs[0] == bs[0]
    for b, q in zip(bs[1:], qs[1:]):
        assert q == b * prev1 - prev2
        prev2, prev1 = prev1, q


def test_continuant_is_numerator():
    for p, q in coprime_pairs(30):
        assert continuants(hj_expand(p, q))[-1] == p


def test_chain_determinant_equals_top_continuant():
    for p, q in coprime_pairs(25):
        bs = hj_expand(p, q)
        assert chain_determinant(bs) == p
        assert chain_determinant(bs) == continuants(bs)[-1]


def test_wahl_expansions_match_table():
    for (p, q), bs in WAHL_CHAINS.items():
        assert hj_expand(p * p, p * q - 1) == bs


def test_extend_moves():
    assert extend_left((4,)) == (2, 5)
    assert extend_right((4,)) == (5, 2)
    assert extend_left((3, 3)) == (2, 3, 4)
    assert extend_right((3, 3)) == (4, 3, 2)
    assert extend_right((2, 5)) == (3, 5, 2)


def test_classify_bases():
    for bs in [(4,), (3, 3), (3, 2, 3), (3, 2, 2, 2, 3)]:
        res = classify_chain(bs)
        assert res.kind == "base"
        assert res.is_class_t
        assert res.base == bs
        assert res.moves == ()


def test_classify_derived():
    res = classify_chain((6, 8, 2, 2, 2, 3, 2, 2, 2, 2))
    assert res.kind == "derived"
    assert res.base == (4,)
    assert res.moves == (
        "right",
        "right",
        "right",
        "right",
        "left",
        "right",
        "right",
        "right",
        "right",
    )
    assert apply_moves(res.base, res.moves) == res.chain


def test_classify_all_twos_is_rdp():
    for k in (1, 2, 5):
        res = classify_chain((2,) * k)
        assert res.kind == "rdp"
        assert not res.is_class_t


@pytest.mark.parametrize("bs", [(4, 4), (3,), (5, 5, 2), (2, 3, 2)])
def test_classify_rejects_non_class_t(bs):
    res = classify_chain(bs)
    assert res.kind == "not_class_t"
    assert not is_class_t(bs)
    with pytest.raises(ValueError):
        general_params(bs)


@pytest.mark.parametrize("bs", [(), (4, 1), (0, 3), (4, -2)])
def test_classify_rejects_malformed_chains(bs):
    with pytest.raises(ValueError):
        classify_chain(bs)


def test_generate_counts():
    # 2^k - 1 chains of each length k.
    expected = 0
    for length in range(1, 7):
        expected += 2**length - 1
        assert len(generate_class_t(length)) == expected


def test_generate_is_exact_and_distinct():
    chains = generate_class_t(6)
    assert len(set(chains)) == len(chains)
    for bs in chains:
        res = classify_chain(bs)
        assert res.is_class_t
        if res.kind == "derived":
            assert apply_moves(res.base, res.moves) == bs


def test_chain_bases_are_the_base_family():
    bases = list(chain_bases(5))
    assert bases == [(4,), (3, 3), (3, 2, 3), (3, 2, 2, 3), (3, 2, 2, 2, 3)]
    for bs in bases:
        assert classify_chain(bs).kind == "base"


def test_general_params_known_values():
    assert general_params((4,)) == (1, 2, 1)
    assert general_params((3, 3)) == (2, 2, 1)
    assert general_params((3, 2, 3)) == (3, 2, 1)
    assert general_params((2, 5)) == (1, 3, 2)
    assert general_params(hj_expand(361, 94)) == (1, 19, 5)


def test_general_params_defines_the_fraction():
    for bs in generate_class_t(7):
        d, n, a = general_params(bs)
        assert n >= 2 and 0 < a < n and gcd(a, n) == 1
        assert hj_value(bs) == Fraction(d * n * n, d * n * a - 1)


def test_wahl_params_known_values():
    for (p, q), bs in WAHL_CHAINS.items():
        assert wahl_params(bs) == (p, q)


def test_wahl_params_rejects_wider_class_t():
    # d > 1 chains have non-square determinant or a mismatched cofactor.
    for bs in [(3, 3), (3, 2, 3), (2, 3, 4)]:
        with pytest.raises(ValueError):
            wahl_params(bs)


def test_wahl_members_have_d_one():
    for bs in generate_class_t(6):
        d, n, a = general_params(bs)
        try:
            p, q = wahl_params(bs)
        except ValueError:
            assert d > 1
        else:
            assert d == 1 and (p, q) == (n, a)


@given(st_coprime)
@settings(max_examples=120)
def test_wahl_chains_are_class_t(pair):
    p, q = pair
    bs = hj_expand(p * p, p * q - 1)
    res = classify_chain(bs)
    assert res.is_class_t
    assert wahl_params(bs) == (p, q)


@given(st.sampled_from(generate_class_t(8)), st.sampled_from(["left", "right"]))
def test_moves_preserve_class_t_and_d(bs, move):
    extended = extend_left(bs) if move == "left" else extend_right(bs)
    assert len(extended) == len(bs) + 1
    assert classify_chain(extended).is_class_t
    d, n, a = general_params(bs)
    d2, n2, a2 = general_params(extended)
    assert d2 == d
    assert n2 > n
