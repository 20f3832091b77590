import numpy as np

from conftest import random_element
from so7atlas import kernels
from so7atlas.signedperm import IDENTITY_CODE, SignedPerm, compose

ALPHA = SignedPerm([1, 2, 3, 4, 5, 6, 0]).code
TRANSPOSITION = SignedPerm([1, 0, 2, 3, 4, 5, 6], 0b1111111).code
EVEN_DIAG = [SignedPerm.diag(3 << i).code for i in range(6)]


def test_compose_agrees_with_scalar(backend, rng):
    a = [random_element(rng) for _ in range(2000)]
    b = [random_element(rng) for _ in range(2000)]
    expected = np.array([compose(x, y).code for x, y in zip(a, b)])
    got = backend.compose(np.array([x.code for x in a]), np.array([y.code for y in b]))
    assert np.array_equal(got, expected)


def test_compose_broadcasts(backend):
    xs = np.array([IDENTITY_CODE, ALPHA])
    assert np.array_equal(backend.compose(ALPHA, xs), backend.compose(np.full(2, ALPHA), xs))


def test_closure_orders(backend):
    assert backend.closure(np.array([ALPHA]), 10**6).size == 7
    assert backend.closure(np.array([ALPHA, TRANSPOSITION] + EVEN_DIAG), 10**6).size == 322560
    assert backend.closure(np.array([ALPHA, TRANSPOSITION]), 100) is None
    assert backend.closure(np.array([ALPHA]), 7).size == 7


def test_closure_backends_agree():
    gens = np.array([ALPHA, TRANSPOSITION, SignedPerm.diag(1).code])
    ref = kernels.python_backend.closure(gens, 10**6)
    assert ref.size == 645120
    if kernels.compiled_backend is not None:
        assert np.array_equal(kernels.compiled_backend.closure(gens, 10**6), ref)


def test_components(backend):
    # two cycles (0 1 2) and (3 4), fixed point 5
    targets = np.array([[1, 2, 0, 4, 3, 5]])
    labels = backend.components(6, targets)
    assert labels[0] == labels[1] == labels[2]
    assert labels[3] == labels[4]
    assert len({labels[0], labels[3], labels[5]}) == 3


def test_backend_selected_at_import():
    import os
    import subprocess
    import sys

    env = dict(os.environ, SO7_ATLAS_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", "import so7atlas.kernels as k; print(k.BACKEND)"],
        capture_output=True, text=True, env=env, check=True,
    )
    assert out.stdout.strip() == "python"
