import numpy as np
import pytest
import scipy.linalg

from impactgame import matode


def _random_matrix(seed, n=4, scale=1.0):
    rng = np.random.default_rng(seed)
    return scale * rng.standard_normal((n, n))


def test_mat_exp_matches_eigendecomposition():
    rng = np.random.default_rng(1)
    for _ in range(5):
        q, _ = np.linalg.qr(rng.standard_normal((5, 5)))
        lam = rng.uniform(-2.0, 2.0, 5)
        m = (q * lam) @ q.T
        exact = (q * np.exp(lam)) @ q.T
        got = matode.mat_exp(m)
        assert np.max(np.abs(got - exact)) <= 1e-12 * np.max(np.abs(exact))


def test_mat_exp_time_argument_and_identity():
    m = _random_matrix(2)
    assert np.allclose(matode.mat_exp(m, 0.25), matode.mat_exp(0.25 * m),
                       rtol=0, atol=1e-14)
    assert np.array_equal(matode.mat_exp(np.zeros((3, 3))), np.eye(3))


def test_mat_exp_batched_equals_loop():
    stack = np.stack([_random_matrix(s) for s in range(6)])
    batched = matode.mat_exp(stack, 0.7)
    for i in range(6):
        assert np.allclose(batched[i], matode.mat_exp(stack[i], 0.7),
                           rtol=0, atol=1e-13)


def test_mat_exp_rejects_non_square():
    with pytest.raises(ValueError):
        matode.mat_exp(np.ones((2, 3)))


def test_phi1_apply_zero_matrix_gives_t_v():
    v = np.array([1.0, -2.0, 0.5])
    got = matode.phi1_apply(np.zeros((3, 3)), 0.3, v)
    assert np.allclose(got, 0.3 * v, rtol=0, atol=1e-15)


def test_phi1_apply_matches_resolvent_formula():
    for seed in range(5):
        m = _random_matrix(seed) + 3.0 * np.eye(4)  # safely invertible
        v = np.random.default_rng(seed + 50).standard_normal(4)
        t = 0.8
        exact = np.linalg.solve(m, (scipy.linalg.expm(m * t) - np.eye(4)) @ v)
        got = matode.phi1_apply(m, t, v)
        assert np.max(np.abs(got - exact)) <= 1e-10 * max(1.0, np.max(np.abs(exact)))


def test_phi1_apply_matrix_right_hand_side():
    m = _random_matrix(7)
    v = np.random.default_rng(8).standard_normal((4, 3))
    got = matode.phi1_apply(m, 0.5, v)
    assert got.shape == (4, 3)
    for j in range(3):
        assert np.allclose(got[:, j], matode.phi1_apply(m, 0.5, v[:, j]),
                           rtol=0, atol=1e-13)


def test_phi1_apply_rejects_mismatched_vector():
    with pytest.raises(ValueError):
        matode.phi1_apply(np.eye(3), 1.0, np.ones(4))


@pytest.mark.parametrize("seed,singular", [(0, False), (1, True), (2, True)])
def test_phi_maps_integral_identities(seed, singular):
    m = _random_matrix(seed)
    if singular:
        m[:, 0] = 0.0  # zero column => zero eigenvalue
        m[0, :] = 0.0
    t = 0.9
    expm_t, phi, psi = matode.phi_maps(m, t)
    eye = np.eye(m.shape[0])
    # d/dt Phi = e^{Mt}  =>  e^{Mt} = I + M Phi(t)
    assert np.max(np.abs(expm_t - (eye + m @ phi))) <= 1e-12
    # d/dt Psi = Phi     =>  Phi(t) = t I + M Psi(t)
    assert np.max(np.abs(phi - (t * eye + m @ psi))) <= 1e-12
    assert np.allclose(expm_t, scipy.linalg.expm(m * t), rtol=0, atol=1e-12)


def test_phi_maps_at_zero():
    expm_t, phi, psi = matode.phi_maps(_random_matrix(3), 0.0)
    assert np.array_equal(expm_t, np.eye(4))
    assert np.array_equal(phi, np.zeros((4, 4)))
    assert np.array_equal(psi, np.zeros((4, 4)))


def test_solve_least_squares_square_nonsingular():
    a = _random_matrix(11) + 4.0 * np.eye(4)
    y = np.random.default_rng(12).standard_normal(4)
    res = matode.solve_least_squares(a, y)
    assert not res.rank_deficient
    assert res.rank == 4
    assert np.allclose(res.x, np.linalg.solve(a, y), rtol=0, atol=1e-12)


def test_solve_least_squares_overdetermined():
    rng = np.random.default_rng(13)
    a = rng.standard_normal((8, 3))
    y = rng.standard_normal(8)
    res = matode.solve_least_squares(a, y)
    exact = np.linalg.lstsq(a, y, rcond=None)[0]
    assert not res.rank_deficient
    assert np.allclose(res.x, exact, rtol=0, atol=1e-12)


def test_solve_least_squares_rank_deficient_min_norm():
    rng = np.random.default_rng(14)
    col = rng.standard_normal(6)
    a = np.column_stack([col, 2.0 * col, rng.standard_normal(6)])
    y = rng.standard_normal(6)
    res = matode.solve_least_squares(a, y)
    assert res.rank_deficient
    assert res.rank == 2
    assert np.max(np.abs(res.x - np.linalg.pinv(a) @ y)) <= 1e-10


def test_solve_least_squares_matrix_rhs_and_errors():
    a = np.eye(3)
    y = np.arange(9.0).reshape(3, 3)
    assert np.array_equal(matode.solve_least_squares(a, y).x, y)
    with pytest.raises(ValueError):
        matode.solve_least_squares(np.ones((2, 3)), np.ones(2))
    with pytest.raises(ValueError):
        matode.solve_least_squares(np.ones((3, 2)), np.ones(4))
