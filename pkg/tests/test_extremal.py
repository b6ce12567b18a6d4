import pytest

from carmichael.catalog import Catalog
from carmichael.extremal import kform_check, scan_records, smallest_with_factors
from carmichael.korselt import CarmichaelEntry, oracle_enumerate

SMALLEST = {
    3: (561, (3, 11, 17)),
    4: (41041, (7, 11, 13, 41)),
    5: (825265, (5, 7, 17, 19, 73)),
    6: (321197185, (5, 19, 23, 29, 37, 137)),
    7: (5394826801, (7, 13, 17, 23, 31, 67, 73)),
}


@pytest.mark.parametrize("d", sorted(SMALLEST))
def test_smallest_with_factors_small_d(d):
    entry = smallest_with_factors(d)
    assert (entry.value, entry.factors) == SMALLEST[d]
    assert len(entry.factors) == d


def test_smallest_rejects_out_of_range():
    with pytest.raises(ValueError):
        smallest_with_factors(2)
    with pytest.raises(ValueError):
        smallest_with_factors(21)


def test_scan_records_small_catalog():
    cat = Catalog(oracle_enumerate(10**4), {"limit": "10000"})
    rec = scan_records(cat)
    # the seven entries are 561, 1105, 1729, 2465, 2821, 6601, 8911
    assert rec.largest_prime_factor == (67, CarmichaelEntry(8911, (7, 19, 67)))
    # least factors are 3,5,7,5,7,7,7; the tie at 7 resolves to 1729
    assert rec.largest_least_prime_factor == (
        7,
        CarmichaelEntry(1729, (7, 13, 19)),
    )


def test_scan_records_single_entry():
    cat = Catalog([CarmichaelEntry(561, (3, 11, 17))], {})
    rec = scan_records(cat)
    assert rec.largest_prime_factor[0] == 17
    assert rec.largest_least_prime_factor[0] == 3


def test_scan_records_monotone_under_prefix():
    full = Catalog(oracle_enumerate(10**5), {})
    prefix = Catalog(full.entries[:10], {})
    r_full, r_pre = scan_records(full), scan_records(prefix)
    assert r_pre.largest_prime_factor[0] <= r_full.largest_prime_factor[0]
    assert (
        r_pre.largest_least_prime_factor[0]
        <= r_full.largest_least_prime_factor[0]
    )


def test_scan_records_empty_catalog():
    with pytest.raises(ValueError):
        scan_records(Catalog([], {}))


def test_kform_check_record_value():
    entry = CarmichaelEntry(9585921133193329, (174763, 199729, 274627))
    assert kform_check(entry, (7, 8, 11)) == 24966


def test_kform_check_negative():
    assert kform_check(CarmichaelEntry(561, (3, 11, 17)), (1, 1, 1)) is None


def test_kform_check_1729():
    assert kform_check(CarmichaelEntry(1729, (7, 13, 19)), (1, 2, 3)) == 6


def test_kform_check_pattern_length():
    with pytest.raises(ValueError):
        kform_check(CarmichaelEntry(561, (3, 11, 17)), (1, 2))
