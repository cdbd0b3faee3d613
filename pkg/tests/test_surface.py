import pytest

from severi.seqcomb import ZERO, e
from severi.surface import DivClass, SurfaceModel, ZERO_CLASS


def test_intersection_pairing(f2, p2):
    E = f2.boundary_class()
    assert E == DivClass(1, -2)
    assert f2.intersect(E, E) == -2
    for n in range(6):
        m = SurfaceModel.hirzebruch(n)
        assert m.intersect(DivClass(1, 0), m.boundary_class()) == 0
    assert p2.intersect(DivClass(3), DivClass(4)) == 12


def test_pairing_symmetry(f1, f2, p2):
    for m in (f1, f2):
        for a1 in range(-2, 3):
            for b1 in range(-2, 3):
                for a2 in range(-2, 3):
                    for b2 in range(-2, 3):
                        d1, d2 = DivClass(a1, b1), DivClass(a2, b2)
                        assert m.intersect(d1, d2) == m.intersect(d2, d1)
    assert p2.intersect(DivClass(2), DivClass(5)) == p2.intersect(DivClass(5), DivClass(2))


def test_canonical_class(f1, f2, p2):
    assert f1.canonical() == DivClass(-2, -1)
    assert f2.canonical() == DivClass(-2, 0)
    assert p2.canonical() == DivClass(-3)


def test_dot_e(f1, p2):
    assert f1.dot_e(DivClass(4, 0)) == 0
    assert f1.dot_e(DivClass(3, 1)) == 1
    assert p2.dot_e(DivClass(4)) == 4


def test_upsilon(f1, p2):
    assert f1.upsilon(DivClass(3, 1), 1, e(1)) == 11
    for n in range(5):
        m = SurfaceModel.hirzebruch(n)
        for k in range(5):
            assert m.upsilon(DivClass(0, k), 1 - k, ZERO) == 0
    for d in range(1, 6):
        for g in (-1, 0, 2):
            assert p2.upsilon(DivClass(d), g, d * e(1)) == 3 * d + g - 1


def test_effective(f1, f2, p2):
    assert f2.is_effective(DivClass(1, -2))  # the boundary section
    assert not f1.is_effective(DivClass(-1, 5))
    assert p2.is_effective(ZERO_CLASS)
    assert not p2.is_effective(DivClass(-1))
    assert f1.is_effective(ZERO_CLASS)


def test_subtract_e(f1, p2):
    assert f1.subtract_e(DivClass(4, 0)) == DivClass(3, 1)
    assert f1.subtract_e(DivClass(2, 2)) == DivClass(1, 3)
    assert p2.subtract_e(DivClass(5)) == DivClass(4)


def test_arithmetic_genus(f1, p2):
    assert f1.arithmetic_genus(DivClass(4, 0)) == 3
    assert p2.arithmetic_genus(DivClass(4)) == 3
    for n in range(11):
        m = SurfaceModel.hirzebruch(n)
        assert m.arithmetic_genus(m.fiber_class()) == 0
        assert m.arithmetic_genus(m.boundary_class()) == 0
    with pytest.raises(ValueError):
        f1.arithmetic_genus(DivClass(-1, 0))


def test_ef_basis(f1, f2, f0, p2):
    assert f2.to_ef_basis(DivClass(2, 0)) == (2, 4)
    assert f1.to_ef_basis(DivClass(1, -1)) == (1, 0)
    assert f0.to_ef_basis(DivClass(3, 5)) == (3, 5)
    for m in (f0, f1, f2):
        for a in range(-10, 10):
            for b in range(-10, 10):
                d = DivClass(a, b)
                assert m.from_ef_basis(*m.to_ef_basis(d)) == d
    with pytest.raises(ValueError):
        p2.to_ef_basis(DivClass(2))


def test_model_mismatch_rejected(p2):
    with pytest.raises(ValueError):
        p2.intersect(DivClass(1, 1), DivClass(1))
    with pytest.raises(ValueError):
        p2.dot_e(DivClass(2, 3))


def test_model_names():
    assert SurfaceModel.from_name("f3").n == 3
    assert SurfaceModel.from_name("p2").is_plane
    assert SurfaceModel.hirzebruch(4).name() == "f4"
    with pytest.raises(ValueError):
        SurfaceModel.from_name("q7")
    with pytest.raises(ValueError):
        SurfaceModel("plane", 2)
    with pytest.raises(ValueError):
        SurfaceModel.hirzebruch(-1)


def test_class_parsing(f1, f2, p2):
    assert f1.parse_class("3,1") == DivClass(3, 1)
    assert f1.parse_class("3S+F") == DivClass(3, 1)
    assert f1.parse_class("S+3F") == DivClass(1, 3)
    assert f1.parse_class("4S") == DivClass(4, 0)
    assert f1.parse_class("-2S-F") == DivClass(-2, -1)
    assert f2.parse_class("2,4", basis="ef") == DivClass(2, 0)
    assert f2.parse_class("2E+4F") == DivClass(2, 0)
    assert f1.parse_class("0") == ZERO_CLASS
    assert p2.parse_class("4L") == DivClass(4)
    assert p2.parse_class("4") == DivClass(4)
    with pytest.raises(ValueError):
        f1.parse_class("junk")
    with pytest.raises(ValueError):
        f1.parse_class("3L")


def test_class_formatting(f1, f2, p2):
    assert f1.format_class(DivClass(3, 1)) == "3S+F"
    assert f1.format_class(DivClass(1, 3)) == "S+3F"
    assert f1.format_class(DivClass(-2, -1)) == "-2S-F"
    assert f1.format_class(ZERO_CLASS) == "0"
    assert f2.format_class(DivClass(2, 0), basis="ef") == "2E+4F"
    assert p2.format_class(DivClass(4)) == "4L"
    # parse inverts format on a grid
    for a in range(-3, 4):
        for b in range(-3, 4):
            d = DivClass(a, b)
            assert f2.parse_class(f2.format_class(d)) == d
            assert f2.parse_class(f2.format_class(d, "ef")) == d
