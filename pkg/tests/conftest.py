import random

import numpy as np
import pytest

from so7atlas import _pykernels
from so7atlas.kernels import compiled_backend
from so7atlas.signedperm import SignedPerm

BACKENDS = [_pykernels] + ([compiled_backend] if compiled_backend is not None else [])

_acceptance_lines: list[str] = []


@pytest.fixture(params=BACKENDS, ids=lambda b: b.BACKEND)
def backend(request):
    return request.param


def random_element(rng: random.Random) -> SignedPerm:
    p = list(range(7))
    rng.shuffle(p)
    return SignedPerm(p, rng.randrange(128))


def to_np(g: SignedPerm) -> np.ndarray:
    m = np.zeros((7, 7), dtype=np.int64)
    for i, (p, s) in enumerate(zip(g.perm, format(g.signs, "07b")[::-1])):
        m[p, i] = -1 if s == "1" else 1
    return m


@pytest.fixture
def rng():
    return random.Random(20261017)


@pytest.fixture
def acceptance_log():
    return _acceptance_lines


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
