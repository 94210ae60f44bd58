import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # fixture_maps / oracles importable

import fixture_maps as fm  # noqa: E402

from cartogrammer import bind, parse_csv, parse_geojson  # noqa: E402


@pytest.fixture(scope="session")
def unit_square():
    return parse_geojson(fm.unit_square_text())


@pytest.fixture(scope="session")
def two_squares():
    return parse_geojson(fm.two_squares_text())


@pytest.fixture(scope="session")
def strip4():
    return parse_geojson(fm.strip4_text())


@pytest.fixture(scope="session")
def austria():
    return parse_geojson(fm.austria_like_text())


@pytest.fixture(scope="session")
def austria_population(austria):
    return bind(austria, parse_csv(fm.austria_population_csv())[0])


@pytest.fixture(scope="session")
def austria_gdp(austria):
    return bind(austria, parse_csv(fm.austria_gdp_csv())[0])


@pytest.fixture(scope="session")
def austria_nursery(austria):
    return bind(austria, parse_csv(fm.austria_nursery_csv())[0])
