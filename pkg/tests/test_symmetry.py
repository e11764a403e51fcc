import numpy as np
import pytest

from lambdagate.quantum_core import spin1_operators
from lambdagate.symmetry import (bilinear_sectors, c3v, character_orthogonality, d3d,
                                 get_group, hs_sector_weights, schur_average_coupling,
                                 tensor_square_decomposition)


@pytest.mark.parametrize("name", ["C3v", "D3d"])
def test_character_orthogonality(name):
    _, gram = character_orthogonality(get_group(name))
    assert np.allclose(gram, np.eye(len(gram)))


def test_tensor_square_of_e():
    assert tensor_square_decomposition(c3v()) == {"A1": 1, "A2": 1, "E": 1}
    assert tensor_square_decomposition(d3d()) == {"A1g": 1, "A2g": 1, "Eg": 1}


def test_unknown_group():
    with pytest.raises(ValueError):
        get_group("Oh")


def test_schur_average_keeps_scalar_and_antisymmetric_parts():
    # only the identity (A1) and the antisymmetric (A2) parts survive C3v rotations;
    # the reflections then remove the antisymmetric part
    C = np.array([[1.0, 2.0], [-0.5, 3.0]])
    avg = schur_average_coupling(c3v(), C)
    assert np.allclose(avg, np.trace(C) / 2 * np.eye(2))


def test_bilinear_sectors_transform():
    rng = np.random.default_rng(0)
    e, o = rng.normal(size=2), rng.normal(size=2)
    for R in c3v().elements:
        a1, a2, (x, y) = bilinear_sectors(e, o)
        b1, b2, (x2, y2) = bilinear_sectors(R @ e, R @ o)
        assert b1 == pytest.approx(a1)
        assert b2 == pytest.approx(round(np.linalg.det(R)) * a2)
        assert np.hypot(x2, y2) == pytest.approx(np.hypot(x, y))


def test_hs_weights_of_representatives():
    sx, sy, sz = spin1_operators()
    assert hs_sector_weights(sz).w_A2 == pytest.approx(1.0)
    assert hs_sector_weights(sx).w_Ex == pytest.approx(1.0)
    w = hs_sector_weights(sx + sz)
    assert w.w_Ex == pytest.approx(0.5) and w.w_A2 == pytest.approx(0.5)
    assert hs_sector_weights(np.zeros((3, 3))).zero
