from collections import defaultdict

import pytest

from facticity.bitcodec import TruncatedFrame, decode_sd, encode_sd, sd_len
from facticity.errors import CapacityError, DomainError, Uncertified
from facticity.exact import (
    ABOVE_THRESHOLD_ABSOLUTE,
    ABOVE_THRESHOLD_COMPUTABLE,
    NON_STOCHASTIC,
    PURELY_STOCHASTIC,
    STOCHASTIC_MIXED,
    block_size_for,
    decile_occupancy,
    enumerate_codes,
    taxonomy_label,
    universal_sample,
)
from facticity.microvm import Budget, run, swap_code

from conftest import all_bits

SMALL = Budget(max_steps=4096, max_output=32)


def brute_force(L, budget):
    """Per-output lists of (|i|, |p|) from running every input through run()."""
    codes = defaultdict(list)
    for w in all_bits(L):
        out = run(w, budget)
        if not out.ok:
            continue
        i, p = decode_sd(w)
        codes[out.output].append((len(i), len(p)))
    return codes


@pytest.fixture(scope="module")
def oracle12():
    return brute_force(12, SMALL)


def test_outputs_match_oracle(table12, oracle12):
    assert set(table12.profiles) == set(oracle12)


def test_entries_match_oracle(table12, oracle12):
    for x, codes in oracle12.items():
        totals = [sd_len(li) + lp for li, lp in codes]
        k2 = min(totals)
        optimal = [(li, lp) for li, lp in codes if sd_len(li) + lp == k2]
        e = table12.entry(x)
        assert e.k2 == k2
        assert e.phi == min(li for li, _ in optimal)
        assert sorted(e.witnesses) == sorted(set(optimal))
        k1s = [sd_len(li) for li, lp in codes if lp == 0]
        assert e.k1 == (min(k1s) if k1s else None)
        if e.certified:
            assert table12.csoph(x) == min(2 * sd_len(li) + lp for li, lp in codes) - k2
            for c in range(4):
                assert table12.soph(x, c) == min(li for (li, lp), t in zip(codes, totals) if t <= k2 + c)


def test_empty_string(table12):
    e = table12.entry("")
    assert (e.k2, e.phi, e.certified) == (1, 0, True)


def test_incompressible_at_scale(table12):
    for x in ("0110", "1011001", "10100111011"):
        e = table12.entry(x)
        assert (e.k2, e.phi) == (len(x) + 1, 0)


def test_unreached_string_defaults(table12):
    x = "1101000110111010"  # 16 bits, identity code needs 17 > 12
    e = table12.entry(x)
    assert (e.k2, e.phi, e.certified) == (17, 0, False)
    assert table12.report(x).certified is False
    with pytest.raises(Uncertified):
        table12.soph(x, 0)
    with pytest.raises(Uncertified):
        table12.csoph(x)


def test_zeros24(table18):
    hand = encode_sd("0" + "00" * 3 + "11" * 3)
    assert len(hand) == 20 and run(hand, SMALL).output == "0" * 24
    via_swap = swap_code("0" + "00" * 3 + "11" * 3, "")
    assert len(via_swap) == 18 and run(via_swap, SMALL).output == "0" * 24
    e = table18.entry("0" * 24)
    # every code of length <= 18 was enumerated, so 18 is the minimum
    assert (e.k2, e.phi) == (18, 1)
    assert e.witnesses == ((1, 14),)


def test_zeros24_soph_wider_table():
    t = enumerate_codes(20, SMALL)
    pairs = t.pairs("0" * 24)
    assert pairs == [(18, 1), (20, 1), (20, 13)]
    # slack 2 admits the 20-bit plain program, but the swap keeps |i| = 1
    assert min(li for tot, li in pairs if tot <= 18 + 2) == 1


def test_facticity_and_soph_examples(table12):
    for x in table12.outputs():
        if not table12.is_certified(x):
            continue
        e = table12.entry(x)
        assert table12.facticity_of(x) == (e.phi, True)
        assert table12.soph(x, 0) == e.phi
        assert all(table12.soph(x, c + 1) <= table12.soph(x, c) for c in range(4))
        assert table12.csoph(x) <= e.phi + 2 * ((e.phi + 1).bit_length() - 1) + 1
        if e.phi == 0:
            assert table12.csoph(x) == 1


def test_capacity():
    with pytest.raises(CapacityError):
        enumerate_codes(31)


def test_max_output_guard(table12):
    with pytest.raises(DomainError):
        table12.entry("0" * 33)


def test_budget_and_length_monotone(table12):
    bigger = enumerate_codes(14, SMALL)
    starved = enumerate_codes(12, Budget(max_steps=3, max_output=32))
    for coarse, fine in ((table12, bigger), (starved, table12)):
        for x in coarse.outputs():
            a, b = coarse.entry(x), fine.entry(x)
            assert b.k2 <= a.k2
            if b.k2 == a.k2:
                assert b.phi <= a.phi


def test_parallel_equals_serial(table12):
    par = enumerate_codes(12, SMALL, workers=2)
    assert par.profiles == table12.profiles
    assert par.to_bytes() == table12.to_bytes()
    assert par.to_csv() == table12.to_csv()


def test_csv_header(table12):
    assert table12.to_csv(["0"]).splitlines()[0] == "x,n,k2,phi,k1,delta,rho,certified,label"


def test_taxonomy_examples():
    assert taxonomy_label(0, 50, 100, 4) == PURELY_STOCHASTIC
    assert taxonomy_label(50, 50, 100, 4) == NON_STOCHASTIC
    # above the small-model line (7 + 2 + 4 = 13), below the threshold at s=1 (22.97)
    assert taxonomy_label(20, 100, 100, 4, c0=4) == STOCHASTIC_MIXED
    assert taxonomy_label(900, 2000, 2048, 8) == ABOVE_THRESHOLD_COMPUTABLE
    assert taxonomy_label(1100, 2049, 2048, 8, tau=0.5) == NON_STOCHASTIC
    assert taxonomy_label(1000, 1200, 2048, 8) == ABOVE_THRESHOLD_ABSOLUTE


def test_taxonomy_domain():
    with pytest.raises(DomainError):
        taxonomy_label(5, 4, 10, 2)
    with pytest.raises(DomainError):
        taxonomy_label(1, 4, 2, 2)


def test_block_size_for():
    assert block_size_for(2048) == 8
    assert block_size_for(4095) == 8
    assert block_size_for(4608) == 9
    assert block_size_for(3) == 1


def test_universal_sample_deterministic(table12):
    a = universal_sample(12, 500, SMALL, seed=3, table=table12)
    b = universal_sample(12, 500, SMALL, seed=3, table=table12)
    assert a == b and a
    assert any(k == len(x) + 1 for x, k in a)
    assert decile_occupancy(a, 1, 12) >= 8


def test_decoding_helper_rejects_truncation():
    with pytest.raises(TruncatedFrame):
        decode_sd("0")
