from basecert.oracle import _primes, census_oracle, fixed_point_oracle


def test_primes():
    assert _primes(1451520) == [2, 3, 5, 7]
    assert _primes(97) == [97]


def test_sp4_2_census():
    res = census_oracle(4, 2)
    assert res.matches
    assert res.brute_elements == 299


def test_pgsp4_3_census():
    res = census_oracle(4, 3)
    assert res.matches
    assert res.brute_classes == res.formula_classes


def test_fixed_point_oracle_sp8_2():
    rows = fixed_point_oracle(8, 2)
    assert all(r.matches for r in rows)
