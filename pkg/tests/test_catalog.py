import gzip

import pytest

from carmichael.catalog import (
    Catalog,
    CatalogFormatError,
    merge,
    read_catalog,
    write_catalog,
)
from carmichael.korselt import CarmichaelEntry, oracle_enumerate


def small_catalog(limit=10**4):
    return Catalog(oracle_enumerate(limit), {"limit": str(limit), "mode": "oracle"})


def test_record_format(tmp_path):
    path = tmp_path / "cat.txt"
    write_catalog(small_catalog(), path)
    lines = path.read_text().splitlines()
    assert lines[0] == "# carmichael catalog"
    assert "561 3 11 17" in lines
    assert lines[-1] == "8911 7 19 67"
    assert not any(line != line.rstrip() for line in lines)


def test_roundtrip_identity(tmp_path):
    path = tmp_path / "cat.txt"
    cat = small_catalog()
    write_catalog(cat, path)
    back = read_catalog(path, validate=True)
    assert back.entries == cat.entries
    assert back.provenance["limit"] == "10000"
    assert back.limit == 10000


def test_write_is_deterministic(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    write_catalog(small_catalog(), a)
    write_catalog(small_catalog(), b)
    assert a.read_bytes() == b.read_bytes()


def test_empty_catalog_is_header_only(tmp_path):
    path = tmp_path / "empty.txt"
    write_catalog(Catalog([], {"limit": "500"}), path)
    content = path.read_text()
    assert all(line.startswith("#") for line in content.splitlines())
    assert len(read_catalog(path)) == 0


def test_gzip_roundtrip(tmp_path):
    path = tmp_path / "cat.txt.gz"
    cat = small_catalog()
    write_catalog(cat, path)
    with gzip.open(path, "rt") as fh:
        assert "561 3 11 17" in fh.read()
    assert read_catalog(path, validate=True).entries == cat.entries


def test_gzip_writes_are_deterministic(tmp_path):
    a, b = tmp_path / "a.txt.gz", tmp_path / "b.txt.gz"
    write_catalog(small_catalog(), a)
    write_catalog(small_catalog(), b)
    assert a.read_bytes() == b.read_bytes()


def test_validation_catches_bad_prime(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("# limit: 1000\n561 3 11 18\n")
    read_catalog(path, validate=False)  # parses
    with pytest.raises(CatalogFormatError, match="line 2.*18"):
        read_catalog(path, validate=True)


def test_unsorted_input_is_a_format_error(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("1105 5 13 17\n561 3 11 17\n")
    with pytest.raises(CatalogFormatError, match="ascending"):
        read_catalog(path)


def test_parse_error_names_line(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("561 3 11 17\nnot a number\n")
    with pytest.raises(CatalogFormatError, match="line 2"):
        read_catalog(path)


def test_merge_idempotent():
    cat = small_catalog()
    assert merge([cat, cat]).entries == cat.entries


def test_merge_disjoint_halves():
    full = oracle_enumerate(10**6)
    half = len(full) // 2
    a = Catalog(full[:half], {"limit": "1000000"})
    b = Catalog(full[half:], {"limit": "1000000"})
    merged = merge([a, b])
    assert len(merged) == 43
    assert merged.entries == full


def test_merge_by_factor_count_below_100k():
    # Table row at 10**5: 12 with three factors + 4 with four = 16
    full = oracle_enumerate(10**5)
    d3 = Catalog([e for e in full if len(e.factors) == 3], {"limit": "100000"})
    d4 = Catalog([e for e in full if len(e.factors) == 4], {"limit": "100000"})
    assert len(d3) == 12 and len(d4) == 4
    assert len(merge([d3, d4])) == 16


def test_merge_conflict_is_integrity_error():
    a = Catalog([CarmichaelEntry(561, (3, 11, 17))], {})
    b = Catalog([CarmichaelEntry(561, (3, 187))], {})
    with pytest.raises(CatalogFormatError, match="conflicting"):
        merge([a, b])


def test_merge_associative_commutative():
    full = oracle_enumerate(10**5)
    a = Catalog(full[0::3], {})
    b = Catalog(full[1::3], {})
    c = Catalog(full[2::3], {})
    left = merge([merge([a, b]), c])
    right = merge([a, merge([b, c])])
    shuffled = merge([c, a, b])
    assert left.entries == right.entries == shuffled.entries == full
