import random

import pytest


def fibonacci_word(length):
    a, b = [1], [1, 2]
    while len(b) < length:
        a, b = b, b + a
    return b[:length]


def exhaustive_texts():
    """Texts of at most 256 symbols covering the shapes the index must handle."""
    rng = random.Random(20240501)
    texts = {}
    for sigma in (2, 4, 26):
        texts[f"random-s{sigma}"] = [rng.randint(1, sigma) for _ in range(256)]
    period = [rng.randint(1, 4) for _ in range(7)]
    texts["periodic-7"] = (period * 40)[:256]
    texts["all-equal"] = [1] * 256
    texts["fibonacci"] = fibonacci_word(233)
    half = [rng.randint(1, 4) for _ in range(128)]
    twin = list(half)
    for p in rng.sample(range(128), 2):
        twin[p] = twin[p] % 4 + 1
    texts["near-duplicate-halves"] = half + twin
    return texts


def small_texts(count=40, seed=7, max_len=120):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        sigma = rng.choice([1, 2, 3, 4, 26])
        n = rng.randint(1, max_len)
        out.append([rng.randint(1, sigma) for _ in range(n)])
    return out


def corpus_random(size=100 * 1024, seed=11):
    rng = random.Random(seed)
    return bytes(rng.randrange(256) for _ in range(size))


def corpus_periodic(size=100 * 1024, period=97, seed=12):
    rng = random.Random(seed)
    unit = bytes(rng.choice(b"abcdefghijklmnopqrstuvwxyz") for _ in range(period))
    return (unit * (size // period + 1))[:size]


def corpus_mutated_copies(copies=100, seed_len=1024, rate=0.01, seed=13):
    rng = random.Random(seed)
    letters = b"abcdefghijklmnopqrstuvwxyz"
    unit = bytes(rng.choice(letters) for _ in range(seed_len))
    out = bytearray(unit * copies)
    for k in range(len(out)):
        if rng.random() < rate:
            out[k] = rng.choice(letters)
    return bytes(out)


@pytest.fixture(scope="session")
def acceptance_log(request):
    log = []
    request.config._acceptance_log = log
    return log


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = getattr(config, "_acceptance_log", None)
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in log:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
