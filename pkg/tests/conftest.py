import random

import pytest

from gasslin.braids import random_cc_braid

CORPUS_SEED = 20260823


@pytest.fixture(scope="session")
def corpus200():
    """Shared randomized braid corpus: 200 (c,c)-braids, n <= 5, length <= 12,
    at most 3 colors.  Session-scoped so the symbolic suites reuse it."""
    rng = random.Random(CORPUS_SEED)
    return [random_cc_braid(rng) for _ in range(200)]
