import random
from pathlib import Path

import pytest

from fasy.catalog import Catalog
from fasy.fixtures import generate_catalog
from fasy.imaging import GrayImage

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def fixture_catalog_dir() -> Path:
    """The committed read-only demo catalog; tests must not mutate it."""
    path = DATA_DIR / "fixture_catalog"
    assert path.is_dir(), "committed fixture catalog missing; run scripts/build_test_data.py"
    return path


@pytest.fixture(scope="session")
def fixture_catalog(fixture_catalog_dir: Path) -> Catalog:
    return Catalog.open(fixture_catalog_dir)


@pytest.fixture
def demo_catalog(tmp_path: Path) -> Catalog:
    """A fresh writable demo catalog, regenerated per test."""
    return generate_catalog(tmp_path / "catalog", seed=42)


def random_image(rng: random.Random, rows: int, cols: int,
                 lo: int = 0, hi: int = 255) -> GrayImage:
    return GrayImage(rows, cols,
                     bytes(rng.randint(lo, hi) for _ in range(rows * cols)))
