from fractions import Fraction

import pytest

import sperner


def test_bounds_values():
    assert sperner.nlb(12, 5) == 9
    assert sperner.mms(10, 4) == Fraction(180, 11)
    assert sperner.mms_floor(18, 4) == 1127
    assert sperner.thm_upper(10, 4) == 11
    assert sperner.exact_known(12, 4) == 55
    assert sperner.exact_known(10, 4) is None
    lower, upper = sperner.bounds(29, 5)
    assert lower["value"] == 16830
    assert lower["source"] == "PRODUCT(5, 24)"
    assert upper["value"] >= lower["value"]


def test_big_values_are_python_ints():
    v = sperner.binom(200, 100)
    assert isinstance(v, int)
    assert v == 90548514656103281165404177077484163874504589675413336841320


def test_ll():
    assert sperner.ll_leq(2, 6, 5)
    assert sperner.ll_leq(2, 9, 8)
    assert not sperner.ll_leq(2, 6, 3)
    lo, hi, exact = sperner.ll_eval(2, 9)
    assert exact is None
    assert lo <= Fraction(477200187266, 10**11) and hi >= Fraction(477200187265, 10**11)
    assert hi - lo <= Fraction(1, 10**9)
    assert sperner.ll_eval(3, 56)[2] == 28


def test_construct_and_verify():
    s = sperner.construct(10, 4, "main", 1)
    assert len(s) == 10
    assert sperner.verify(s)["ok"]
    assert sperner.verify_detecting(s)["ok"]
    assert sperner.almost_uniform(s)
    assert sperner.PartitionSystem.from_json(s.to_json()) == s
    assert len(sperner.construct(27, 11, "family3k6")) == 40


def test_corrupted_system_is_rejected():
    s = sperner.construct(10, 4, "main", 1)
    s.partitions = s.partitions + [s.partitions[0]]
    rep = sperner.verify(s)
    assert not rep["ok"]
    assert rep["witness"][0] == 0


def test_errors():
    with pytest.raises(sperner.NotApplicable):
        sperner.construct(20, 7, "alt", 1)
    with pytest.raises(ValueError):
        sperner.nlb(3, 5)
    with pytest.raises(sperner.ParseError):
        sperner.PartitionSystem.from_json("{")


def test_table_and_brute():
    rows = sperner.table()
    assert len(rows) == 84
    assert rows[0]["n"] == 10 and rows[0]["k"] == 4
    value, witness = sperner.brute_force(7, 3)
    assert value == 5
    assert sperner.verify(witness)["ok"]
