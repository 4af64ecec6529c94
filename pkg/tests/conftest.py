from __future__ import annotations

import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from biblioscope.index import build_index

from synth import make_corpus


@pytest.fixture(scope="session")
def medium_corpus():
    rng = random.Random(20260809)
    return make_corpus(rng, 500, n_persons=15, n_keywords=18, n_locations=10)


@pytest.fixture(scope="session")
def medium_index(medium_corpus):
    return build_index(medium_corpus)
