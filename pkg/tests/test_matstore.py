import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from panelblas import matstore
from panelblas.errors import DimensionError, MemoryLayoutError
from panelblas.matstore import (ALIGN, PS, allocate_col_matrix, allocate_panel_matrix,
                                allocate_vector, create_panel_matrix, create_vector,
                                element_offset, get_element, memsize_panel_matrix,
                                memsize_vector, read_fixture, set_element, write_fixture)


def test_element_offset_examples():
    assert element_offset(0, 0, 4, 8) == 0
    assert element_offset(6, 3, 4, 8) == 1 * 4 * 8 + 3 * 4 + 2 == 46
    assert element_offset(4, 0, 4, 8) == 32


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 40), st.integers(1, 40))
def test_element_offset_injective_and_in_bounds(m, n):
    a = allocate_panel_matrix(m, n)
    seen = set()
    for i in range(m):
        for j in range(n):
            off = element_offset(i, j, PS, a.panel_length)
            assert 0 <= off < len(a.data)
            assert off not in seen
            seen.add(off)


def test_panel_columns_are_contiguous():
    a = allocate_panel_matrix(12, 5)
    sda = a.panel_length
    for p in range(3):
        for j in range(5):
            offs = [element_offset(p * 4 + r, j, 4, sda) for r in range(4)]
            assert offs == list(range(offs[0], offs[0] + 4))


def test_memsize_examples():
    assert memsize_panel_matrix(0, 0) == 0
    # data 128 B + diag 32 B, each aligned up
    assert memsize_panel_matrix(4, 4) == 192
    # 2 panels x cn=4 -> 256 B data + 24 B diag
    assert memsize_panel_matrix(5, 3) == 320


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 100), st.integers(0, 100))
def test_memsize_alignment(m, n):
    assert memsize_panel_matrix(m, n) % ALIGN == 0


def test_create_descriptor_fields():
    a = allocate_panel_matrix(2, 2)
    assert (a.rows, a.cols, a.panel_length) == (2, 2, 4)
    e = allocate_panel_matrix(0, 0)
    assert e.memsize == 0
    b = allocate_panel_matrix(12, 12)
    assert b.panel_length == 12
    assert len(b.data) == 3 * 4 * 12


def test_data_length_exact():
    for m, n in [(1, 1), (5, 3), (8, 8), (13, 2)]:
        a = allocate_panel_matrix(m, n)
        assert len(a.data) == -(-m // PS) * PS * a.panel_length
        assert len(a.diag_inv) == min(m, n)


def test_create_undersized_region_rejected():
    buf = np.zeros(memsize_panel_matrix(8, 8) - 1, dtype=np.uint8)
    with pytest.raises(MemoryLayoutError, match="bytes"):
        create_panel_matrix(8, 8, buf)


def test_create_misaligned_region_rejected():
    backing = np.zeros(memsize_panel_matrix(4, 4) + ALIGN + 8, dtype=np.uint8)
    shift = (-backing.ctypes.data) % ALIGN
    bad = backing[shift + 8:shift + 8 + memsize_panel_matrix(4, 4)]
    with pytest.raises(MemoryLayoutError, match="aligned"):
        create_panel_matrix(4, 4, bad)


def test_create_readonly_region_rejected():
    with pytest.raises(MemoryLayoutError, match="read-only"):
        create_panel_matrix(2, 2, bytes(memsize_panel_matrix(2, 2)))


def test_create_does_not_touch_memory():
    need = memsize_panel_matrix(6, 6)
    backing = np.empty(need + ALIGN, dtype=np.uint8)
    shift = (-backing.ctypes.data) % ALIGN
    region = backing[shift:shift + need]
    region[:] = np.arange(need, dtype=np.uint8)
    before = region.copy()
    create_panel_matrix(6, 6, region)
    assert np.array_equal(region, before)


def test_create_casts_prefilled_region():
    a = allocate_panel_matrix(6, 6)
    for i in range(6):
        for j in range(6):
            a.set(i, j, 10.0 * i + j)
    b = create_panel_matrix(6, 6, a._base)
    for i in range(6):
        for j in range(6):
            assert b.get(i, j) == 10.0 * i + j


def test_get_set_examples():
    a = allocate_panel_matrix(8, 8)
    a.set(0, 0, 3.5)
    assert a.get(0, 0) == 3.5
    a.set(6, 3, -1.0)
    assert a.data[46] == -1.0
    z = allocate_panel_matrix(4, 4)
    z.data[:] = 0.0
    assert z.get(3, 2) == 0.0
    assert get_element(a.ref(6, 3)) == -1.0
    set_element(a.ref(1, 2), 9.25)
    assert a.get(1, 2) == 9.25


def test_get_set_bounds_errors():
    a = allocate_panel_matrix(3, 5)
    with pytest.raises(DimensionError, match=r"\(3, 0\)"):
        a.get(3, 0)
    with pytest.raises(DimensionError, match=r"\(0, 5\)"):
        a.set(0, 5, 1.0)


def test_set_get_bit_exact():
    a = allocate_panel_matrix(4, 4)
    v = float(np.nextafter(1.0, 2.0)) * 1e-300
    a.set(2, 1, v)
    assert a.get(2, 1) == v


def test_vector_constructors():
    assert memsize_vector(0) == 0
    assert memsize_vector(3) == ALIGN
    v = allocate_vector(7)
    assert v.len == 7 and len(v.data) == 7
    v.set(6, 2.5)
    assert v.get(6) == 2.5
    with pytest.raises(DimensionError):
        v.get(7)
    buf = np.zeros(memsize_vector(4) + ALIGN, dtype=np.uint8)
    shift = (-buf.ctypes.data) % ALIGN
    w = create_vector(4, buf[shift:shift + memsize_vector(4)])
    assert w.len == 4


def test_subref_rejects_negative_origin():
    a = allocate_panel_matrix(4, 4)
    with pytest.raises(DimensionError):
        a.ref(-1, 0)


def test_fixture_roundtrip(tmp_path, rng):
    m = allocate_col_matrix(5, 3)
    arr = rng.uniform(-1, 1, (5, 3))
    for i in range(5):
        for j in range(3):
            m.set(i, j, arr[i, j])
    p = tmp_path / "fix.txt"
    write_fixture(p, m)
    back = read_fixture(p)
    assert back.rows == 5 and back.cols == 3
    assert np.array_equal(back.to_array(), m.to_array())
    first = p.read_text().splitlines()[0]
    assert first == "5 3"


def test_consecutive_carveouts_stay_aligned():
    total = memsize_panel_matrix(5, 3) + memsize_panel_matrix(7, 7)
    backing = np.empty(total + ALIGN, dtype=np.uint8)
    shift = (-backing.ctypes.data) % ALIGN
    arena = backing[shift:shift + total]
    a = create_panel_matrix(5, 3, arena[:memsize_panel_matrix(5, 3)])
    b = create_panel_matrix(7, 7, arena[memsize_panel_matrix(5, 3):])
    a.set(4, 2, 1.0)
    b.set(6, 6, 2.0)
    assert a.get(4, 2) == 1.0 and b.get(6, 6) == 2.0


def test_matstore_module_constants():
    assert matstore.PS == 4 and matstore.PS & (matstore.PS - 1) == 0
    assert matstore.ALIGN == 64


def test_create_empty_matrix_from_empty_region():
    m = create_panel_matrix(0, 0, bytearray())
    assert (m.rows, m.cols, m.memsize) == (0, 0, 0)
    assert len(m.data) == 0 and len(m.diag_inv) == 0
