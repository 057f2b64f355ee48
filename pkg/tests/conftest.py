import random

import pytest

from prevplot.roc import ScoredSample


def brute_force_auc(samples):
    """O(n^2) pair count: 1 per diseased-over-healthy pair, 0.5 per tie."""
    pos = [s.score for s in samples if s.diseased]
    neg = [s.score for s in samples if not s.diseased]
    credit = 0.0
    for x in pos:
        for y in neg:
            if x > y:
                credit += 1.0
            elif x == y:
                credit += 0.5
    return credit / (len(pos) * len(neg))


def random_samples(rng: random.Random, min_per_class=2, max_per_class=30, tie_fraction=0.3):
    """Random scored samples where roughly ``tie_fraction`` of scores repeat an earlier score."""
    n1 = rng.randint(min_per_class, max_per_class)
    n0 = rng.randint(min_per_class, max_per_class)
    labels = [True] * n1 + [False] * n0
    scores = []
    for _ in labels:
        if scores and rng.random() < tie_fraction:
            scores.append(rng.choice(scores))
        else:
            scores.append(round(rng.gauss(0, 1), 3))
    # shift diseased scores by a random effect so AUCs span the range
    shift = rng.uniform(-1, 2)
    return [ScoredSample(s + shift if d else s, d) for s, d in zip(scores, labels)]


def mast_cell_samples():
    """200 samples placed so the Youden cutoff has sensitivity 0.97 and specificity 0.92."""
    samples = [ScoredSample(0.1 * i, True) for i in range(3)]  # missed cases, lowest
    samples += [ScoredSample(1.0 + i, False) for i in range(92)]  # true negatives
    samples += [ScoredSample(200.0 + i, True) for i in range(97)]  # detected cases
    samples += [ScoredSample(1000.0 + i, False) for i in range(8)]  # false alarms, highest
    return samples


@pytest.fixture
def rng():
    return random.Random(12345)


# ---------------------------------------------------------------------------
# acceptance bookkeeping: one PASS/FAIL line per criterion in the summary
# ---------------------------------------------------------------------------

ACCEPTANCE_RESULTS: dict[int, tuple[str, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        status, text = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"[{status}] criterion {n:>2}: {text}")
