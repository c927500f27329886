"""Pytest fixtures for fragdex tests."""

import tempfile
from pathlib import Path
from typing import Generator

import numpy as np
import pytest

from fragdex.config.paths import find_matrix
from fragdex.ingest.fasta import SequenceRecord, write_fasta
from fragdex.ingest.store import FragmentStore
from fragdex.ingest.synthetic import random_fragments
from fragdex.scoring.matrix import load_score_matrix, to_quasi_metric


@pytest.fixture
def temp_dir() -> Generator[Path, None, None]:
    """Create a temporary directory for tests."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture
def temp_config_dir(temp_dir: Path, monkeypatch):
    """Point the user config directory at a temporary one."""
    config_dir = temp_dir / ".fragdex"
    config_dir.mkdir()
    monkeypatch.setattr("fragdex.config.paths.get_config_dir", lambda: config_dir)
    return config_dir


@pytest.fixture(scope="session")
def blosum62():
    return load_score_matrix(find_matrix("BLOSUM62"))


@pytest.fixture(scope="session")
def qm62(blosum62):
    return to_quasi_metric(blosum62)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def random_store():
    """Factory for seeded random fragment stores."""
    def make(count: int, m: int, seed: int = 0) -> FragmentStore:
        return FragmentStore.from_fragments(random_fragments(np.random.default_rng(seed), count, m))
    return make


@pytest.fixture
def toy_fasta(temp_dir: Path) -> Path:
    """Small FASTA corpus with a repeated motif."""
    rng = np.random.default_rng(7)
    records = []
    for i in range(40):
        body = "".join(random_fragments(rng, 1, 60))
        if i % 4 == 0:
            body = body[:20] + "WHCYWF" + body[26:]
        records.append(SequenceRecord(f"seq{i}", f"random protein {i}", body))
    path = temp_dir / "toy.fa"
    write_fasta(records, path)
    return path
