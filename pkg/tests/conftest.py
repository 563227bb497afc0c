import os
import time

import pytest

from fakesurfaces.pipeline import classify


def default_jobs() -> int:
    env = os.environ.get("FAKESURFACES_JOBS")
    if env:
        return max(1, int(env))
    return min(4, os.cpu_count() or 1)


@pytest.fixture(scope="session")
def classification():
    """Full classification for complexity 1..4 plus wall-clock timings."""
    results = {}
    timings = {}
    jobs = default_jobs()
    for t in (1, 2, 3, 4):
        start = time.time()
        results[t] = classify(t, jobs=jobs if t == 4 else 1)
        timings[t] = time.time() - start
    return results, timings
