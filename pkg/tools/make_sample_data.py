"""Regenerate sample_data/ from the test fixture builders.

Usage: python3 tools/make_sample_data.py
"""

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

import fixture_maps as fm  # noqa: E402


def main():
    out = ROOT / "sample_data"
    out.mkdir(exist_ok=True)
    (out / "austria.geojson").write_text(fm.austria_like_text(), encoding="utf-8")
    (out / "austria_population.csv").write_text(
        fm.austria_population_csv(), encoding="utf-8"
    )
    (out / "austria_gdp.csv").write_text(fm.austria_gdp_csv(), encoding="utf-8")
    (out / "austria_population_gdp.csv").write_text(
        fm.austria_two_dataset_csv(), encoding="utf-8"
    )
    (out / "austria_day_nursery.csv").write_text(
        fm.austria_nursery_csv(), encoding="utf-8"
    )
    for p in sorted(out.iterdir()):
        print(f"wrote {p}")


if __name__ == "__main__":
    main()
