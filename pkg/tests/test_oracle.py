import math

import numpy as np
import pytest

from nrssh import oracle
from nrssh.errors import NumericalError, ValidationError
from nrssh.eigen import eigensystem
from nrssh.lattice import ModelParams, build_hamiltonian
from nrssh.quantum import propagate

from conftest import e1


def test_expm_zero_and_diagonal():
    np.testing.assert_array_equal(oracle.expm(np.zeros((4, 4))), np.eye(4))
    d = np.array([-3.0, 0.1, 2.5, 7.0])
    np.testing.assert_allclose(oracle.expm(np.diag(d)), np.diag(np.exp(d)), rtol=1e-13)


def test_expm_rotation_large_norm():
    # exp([[0, x], [-x, 0]]) is a rotation by x; x = 300 exercises many squarings
    for x in (0.3, 10.0, 300.0):
        R = oracle.expm(np.array([[0.0, x], [-x, 0.0]]))
        np.testing.assert_allclose(R, [[math.cos(x), math.sin(x)], [-math.sin(x), math.cos(x)]],
                                   atol=1e-10)


def test_expm_nilpotent():
    N = np.diag([1.0, 2.0, 3.0], 1)
    expected = np.eye(4) + N + N @ N / 2 + N @ N @ N / 6
    np.testing.assert_allclose(oracle.expm(N), expected, rtol=1e-14)


def test_expm_against_spectral_quantum():
    p = ModelParams(1, 4, 1, 5)
    H = build_hamiltonian(p).to_dense()
    ref = oracle.expm(-1j * H * 10.0) @ e1(p.dim)
    got = propagate(eigensystem(p), e1(p.dim), [10.0])[0]
    assert np.abs(ref - got).max() < 1e-8


def test_expm_dimension_guard():
    with pytest.raises(ValidationError):
        oracle.expm(np.zeros((129, 129)))
    with pytest.raises(ValidationError):
        oracle.expm(np.zeros((2, 3)))


def test_jacobi_identity_and_three_site():
    values, vectors = oracle.dense_eig_sym(np.eye(5))
    np.testing.assert_array_equal(values, np.ones(5))
    A = np.array([[0.0, 1, 0], [1, 0, 2], [0, 2, 0]])
    values, vectors = oracle.dense_eig_sym(A)
    np.testing.assert_allclose(values, [-math.sqrt(5), 0, math.sqrt(5)], atol=1e-14)
    assert np.abs(A @ vectors - vectors * values).max() < 1e-10


def test_jacobi_random_symmetric():
    rng = np.random.default_rng(11)
    B = rng.normal(size=(30, 30))
    A = B + B.T
    values, vectors = oracle.dense_eig_sym(A)
    np.testing.assert_allclose(vectors.T @ vectors, np.eye(30), atol=1e-12)
    assert np.abs(A @ vectors - vectors * values).max() < 1e-10 * np.abs(A).max()


def test_jacobi_rejects_asymmetric():
    with pytest.raises(ValidationError):
        oracle.dense_eig_sym(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_rk4_zero_state():
    coeff = -np.eye(3) * 2.0
    _, V, W = oracle.rk4_second_order(coeff, np.zeros(3), np.zeros(3), 1.0, 0.1)
    assert not V.any() and not W.any()


def _single_mode(dt, t_end=100.0):
    # 1x1 system c V'' = V with c = -1/w^2 is a pure oscillator of frequency w
    w = 1 / math.sqrt(3.0)
    times, V, _ = oracle.rk4_second_order(np.array([[-1 / w ** 2]]), [1.0], [0.0], t_end, dt,
                                          record_every=10 ** 9)
    return abs(V[-1, 0] - math.cos(w * t_end))


def test_rk4_single_mode_accuracy():
    assert _single_mode(1e-3) < 1e-8


def test_rk4_fourth_order():
    e_coarse = _single_mode(0.2)
    e_fine = _single_mode(0.1)
    assert 12 < e_coarse / e_fine < 20


def test_rk4_guards():
    with pytest.raises(NumericalError):
        oracle.rk4_second_order(np.zeros((2, 2)), [1, 0], [0, 0], 1.0, 0.1)
    with pytest.raises(ValidationError):
        oracle.rk4_second_order(-np.eye(2), [1, 0], [0, 0], 1.0, -0.1)
    with pytest.raises(ValidationError):
        oracle.rk4_second_order(-np.eye(2), [1, 0], [0, 0], 1.05, 0.1)


def test_oracle_independent_of_main_solvers():
    import ast
    import inspect
    tree = ast.parse(inspect.getsource(oracle))
    imported = set()
    for node in ast.walk(tree):
        if isinstance(node, ast.ImportFrom):
            imported.add(node.module)
        elif isinstance(node, ast.Import):
            imported.update(a.name for a in node.names)
    assert imported <= {"math", "numpy", "errors"}
