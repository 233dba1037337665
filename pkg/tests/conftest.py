import shutil
from pathlib import Path

import pytest

from taxotrace.evaluation import load_gold_csv
from taxotrace.recommender import build_index
from taxotrace.taxonomy import parse_taxonomy_csv
from taxotrace.textproc import LangConfig, import_plaintext

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def toy_taxonomy():
    result = parse_taxonomy_csv((FIXTURES / "toy_taxonomy.csv").read_bytes())
    assert not hasattr(result, "errors"), getattr(result, "errors", None)
    return result


@pytest.fixture(scope="session")
def en_cfg():
    return LangConfig.for_language("en")


@pytest.fixture(scope="session")
def sv_cfg():
    return LangConfig.for_language("sv")


@pytest.fixture(scope="session")
def fixture_units():
    return import_plaintext((FIXTURES / "reqs.txt").read_bytes(), "reqs")


@pytest.fixture(scope="session")
def toy_index(toy_taxonomy, en_cfg):
    return build_index(toy_taxonomy, en_cfg)


@pytest.fixture(scope="session")
def gold_set():
    return load_gold_csv((FIXTURES / "gold.csv").read_bytes())


@pytest.fixture
def workdir(tmp_path):
    """Copy of the fixture corpus in a writable temp dir (for store/config tests)."""
    for name in ("toy_taxonomy.csv", "toy_taxonomy.ttl", "reqs.txt", "gold.csv", "config.json"):
        shutil.copy(FIXTURES / name, tmp_path / name)
    return tmp_path
