import numpy as np
import pytest

from panelblas import pack
from panelblas.matstore import allocate_panel_matrix


def rel(a, b):
    """Max-norm error of a against b, relative to max(1, |b|_inf)."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.size == 0:
        return 0.0
    scale = max(1.0, float(np.max(np.abs(b))))
    return float(np.max(np.abs(a - b))) / scale


def to_panel(arr):
    return pack.panel_from_array(np.asarray(arr, dtype=np.float64))


def panel_zeros(m, n):
    p = allocate_panel_matrix(m, n)
    p.data[:] = 0.0
    return p


def embed(arr, ai, aj, fill=0.0):
    """Place arr at (ai, aj) inside a larger zero matrix; return the window."""
    arr = np.asarray(arr, dtype=np.float64)
    m, n = arr.shape
    big = allocate_panel_matrix(ai + m + 5, aj + n + 5)
    big.data[:] = fill
    if m and n:
        pack.gecp(m, n, to_panel(arr).ref(0, 0), big.ref(ai, aj))
    return big.ref(ai, aj)


def unpack(ref, m, n):
    return pack.panel_to_array(ref, m, n)


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)
