from pathlib import Path

import pytest

from bandpp.counting import OEIS_FIXTURES, Family, euler_transform_counts, load_fixture, series_product_counts
from bandpp.errors import DomainError

# leading terms as printed in the OEIS entries, independent of the vendored files
KNOWN_PREFIXES = {
    "A000041": [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135],
    "A000219": [1, 1, 3, 6, 13, 24, 48, 86, 160, 282, 500, 859, 1479, 2485, 4167],
    "A000990": [1, 1, 3, 5, 10, 16, 29, 45, 75, 115, 181],
    "A000991": [1, 1, 3, 6, 12, 21, 40, 67, 117, 193],
}


@pytest.mark.parametrize("a_number", sorted(OEIS_FIXTURES))
def test_fixture_matches_family(a_number):
    tag, m = OEIS_FIXTURES[a_number]
    header, rows = load_fixture(a_number)
    assert any(a_number in h for h in header)
    assert any(h.startswith("source:") for h in header)
    n_max = max(rows)
    assert n_max + 1 >= 30 and sorted(rows) == list(range(n_max + 1))
    fam = Family(tag, m)
    assert list(euler_transform_counts(fam, n_max).counts) == [rows[n] for n in range(n_max + 1)]
    assert list(series_product_counts(fam, n_max).counts) == [rows[n] for n in range(n_max + 1)]


@pytest.mark.parametrize("a_number", sorted(KNOWN_PREFIXES))
def test_fixture_known_prefix(a_number):
    _, rows = load_fixture(a_number)
    prefix = KNOWN_PREFIXES[a_number]
    assert [rows[n] for n in range(len(prefix))] == prefix


def test_generator_is_independent():
    script = Path(__file__).resolve().parents[1] / "scripts" / "gen_oeis_fixtures.py"
    imports = [ln for ln in script.read_text().splitlines() if ln.startswith(("import ", "from "))]
    assert imports and not any("bandpp" in ln for ln in imports)


def test_unknown_fixture():
    with pytest.raises(DomainError):
        load_fixture("A999999")
