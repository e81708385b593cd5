import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings, strategies as st

from conftest import load
from hasse_forge import (FrobeniusSpectrum, IllConditioned, Singular, SpectrumEntry,
                         WeilBoundViolated, ZetaRational, build_tp_model, export_spectrum,
                         frobenius_weight_relation, import_spectrum, matrix_log_q,
                         principal_log_q, spectrum_from_zeta, theta_operator, zeta_of)


def test_elliptic_spectrum():
    S = spectrum_from_zeta(zeta_of(load("ec_f5.json")))
    assert S.betti == [1, 2, 1]
    lams = sorted((e.lam for e in S.by_degree[1]), key=lambda z: z.imag)
    # reciprocal roots of 1 + 3t + 5t^2: (-3 -+ i sqrt 11) / 2
    assert abs(lams[0] - complex(-1.5, -math.sqrt(11) / 2)) < 1e-14
    assert abs(lams[1] - complex(-1.5, math.sqrt(11) / 2)) < 1e-14
    assert all(res <= 1e-9 for _, _, res in S.weil_residuals())


def test_weil_violation_detected():
    with pytest.raises(WeilBoundViolated):
        spectrum_from_zeta(ZetaRational(5, 1, ((1, -1), (1, 0, 7), (1, -5))))


def test_repeated_roots_keep_multiplicity():
    # (1 - 2t)^2 = 1 - 4t + 4t^2 as P_1 over q = 4, supersingular-like
    S = spectrum_from_zeta(ZetaRational(4, 1, ((1, -1), (1, -4, 4), (1, -4))))
    assert [(e.lam, e.mult) for e in S.by_degree[1]] == [(2, 2)]


def test_principal_log_branch():
    q = 3
    assert principal_log_q(-1, q) == pytest.approx(1j * math.pi / math.log(q))
    assert principal_log_q(complex(-1, -0.0), q).imag > 0
    assert principal_log_q(q ** 2, q) == pytest.approx(2)
    with pytest.raises(Singular):
        principal_log_q(0, q)


def test_theta_operator_progressions():
    S = spectrum_from_zeta(zeta_of(load("p2_f2.json")))
    T = theta_operator(S)
    assert [e.alpha0 for e in T.entries] == pytest.approx([0, 1, 2])
    assert [e.weight for e in T.entries] == [0, 1, 2]
    assert T.entries[0].step == pytest.approx(2j * math.pi / math.log(2))


def jordan_matrix(rng, blocks, q):
    n = sum(b for _, b in blocks)
    J = np.zeros((n, n), dtype=complex)
    k = 0
    for lam, size in blocks:
        for i in range(size):
            J[k + i, k + i] = lam
            if i + 1 < size:
                J[k + i, k + i + 1] = 1
        k += size
    Q, _ = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    D = np.diag(rng.uniform(1, 2, n))
    P = Q @ D
    return P @ J @ np.linalg.inv(P)


def random_blocks(rng, q, n_max=6):
    blocks, n = [], 0
    while n < n_max:
        size = int(rng.integers(1, n_max - n + 1))
        i = int(rng.integers(0, 5))
        lam = q ** (i / 2) * cmath.exp(1j * rng.uniform(-math.pi, math.pi))
        blocks.append((lam, size))
        n += size
        if rng.random() < 0.3:
            break
    return blocks


@pytest.mark.parametrize("seed", range(40))
def test_matrix_log_roundtrip(seed):
    rng = np.random.default_rng(seed)
    q = int(rng.choice([2, 3, 4, 5, 7]))
    M = jordan_matrix(rng, random_blocks(rng, q), q)
    theta, S, U = matrix_log_q(M, q)
    n = M.shape[0]
    assert np.max(np.abs(scipy.linalg.expm(theta * math.log(q)) - M)) <= 1e-9 * max(1, np.max(np.abs(M)))
    assert np.max(np.abs(S @ U - U @ S)) <= 1e-9 * max(1, np.max(np.abs(M)))
    assert np.max(np.abs(S @ U - M)) <= 1e-9 * max(1, np.max(np.abs(M)))
    assert np.max(np.abs(np.linalg.matrix_power(U - np.eye(n), n))) <= 1e-8


def test_matrix_log_single_jordan_block():
    q = 3
    theta, S, U = matrix_log_q([[q, 1], [0, q]], q)
    assert theta[0, 0] == pytest.approx(1)
    assert theta[0, 1] == pytest.approx(1 / (q * math.log(q)))
    assert np.allclose(S, q * np.eye(2))


def test_matrix_log_semisimple_diagonal():
    q = 5
    lam = [1, 5 ** 0.5 * cmath.exp(0.4j), 5 ** 0.5 * cmath.exp(-0.4j), 5, -1]
    theta, _, U = matrix_log_q(np.diag(lam), q)
    assert np.allclose(np.diag(theta), [principal_log_q(x, q) for x in lam])
    assert np.allclose(U, np.eye(5))


def test_matrix_log_errors():
    with pytest.raises(Singular):
        matrix_log_q([[1, 0], [0, 0]], 2)
    with pytest.raises(ValueError):
        matrix_log_q(np.ones((2, 3)), 2)


def test_tp_model_and_weights():
    for name in ["p1_f3.json", "p2_f2.json", "p1xp1_f3.json", "ec_f5.json", "ec_f4.json"]:
        Z = zeta_of(load(name))
        model = build_tp_model(spectrum_from_zeta(Z))
        assert model.dim(0) == sum(Z.betti[0::2])
        assert model.dim(1) == sum(Z.betti[1::2])
        v = model.unit_v
        assert v.degree == -2 and v.frobenius_eigenvalue == 1 and v.phi_eigenvalue == model.p
        assert v.theta_shift == pytest.approx(2j * math.pi / math.log(model.q))
        rep = frobenius_weight_relation(model)
        assert rep.ok and rep.unit_phi_r == model.q
        for parity, lam, w, phi_r, modulus, normalized in rep.rows:
            assert w == Fraction(int(2 * w), 2) and int(2 * w) % 2 == parity


def test_prime_power_split():
    model = build_tp_model(spectrum_from_zeta(zeta_of(load("ec_f4.json"))))
    assert (model.p, model.r, model.q) == (2, 2, 4)


def test_export_import_roundtrip():
    S = spectrum_from_zeta(zeta_of(load("p1xp1_f3.json")))
    T = import_spectrum(export_spectrum(S))
    assert T.q == S.q and T.betti == S.betti
    for i in S.by_degree:
        assert [(e.lam, e.mult) for e in T.by_degree[i]] == [(e.lam, e.mult) for e in S.by_degree[i]]


def test_import_jordan_and_errors():
    S = import_spectrum("# q=4\n0,1,0,1,1\n1,2,0,2,2\n2,4,0,1,1\n")
    assert S.by_degree[1][0].jordan == (2,)
    assert S.by_degree[1][0].blocks == (2,)
    assert import_spectrum("1,2,0,2,1+1", q=4).by_degree[1][0].jordan == ()
    with pytest.raises(ValueError):
        import_spectrum("0,1,0,1,1")
    with pytest.raises(ValueError):
        import_spectrum("# q=4\n1,2,0,2,3")


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([2, 3, 5, 7, 9]), st.floats(-math.pi, math.pi), st.integers(0, 4))
def test_property_principal_log_inverts_power(q, arg, i):
    lam = q ** (i / 2) * cmath.exp(1j * arg)
    a = principal_log_q(lam, q)
    assert abs(q ** a - lam) <= 1e-12 * abs(lam)
    assert -math.pi < a.imag * math.log(q) <= math.pi + 1e-15
