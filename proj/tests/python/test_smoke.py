import math

import numpy as np
import pytest

import fqcircle as fq


def test_arithmetic():
    assert fq.alpha_add(3.0, 4.0, 2.0) == pytest.approx(5.0, abs=1e-15)
    assert fq.alpha_sub(5.0, 4.0, 2.0) == pytest.approx(3.0, abs=1e-15)
    assert fq.alpha_mul(2.0, 3.0) == 6.0
    assert fq.alpha_exp(1.0, 3.0) == pytest.approx(math.e, rel=1e-15)
    assert abs(fq.alpha_exp_imag(0.7, 2.0)) == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(fq.DomainError):
        fq.alpha_div(1.0, 0.0)
    with pytest.raises(fq.DomainError):
        fq.alpha_add(1.0, 1.0, -1.0)


def test_lattice():
    lat = fq.build_lattice(8, 2.0)
    assert lat.d == 8
    assert lat.angles[2] == pytest.approx(math.pi, abs=1e-15)
    assert lat.sigma == pytest.approx(2 * math.pi / math.sqrt(8), abs=1e-15)
    assert fq.wrap_index(-1, 4) == 3
    with pytest.raises(fq.ConfigurationError):
        fq.build_lattice(1, 1.0)


def test_operators():
    lat = fq.build_lattice(6, 3.0)
    u = fq.translation_u(6)
    v = fq.v_operator(lat)
    assert np.allclose(np.linalg.matrix_power(u, 6), np.eye(6))
    assert fq.weyl_relation_residual(v, u, fq.q_factor(6)) < 1e-12
    lp = fq.l_plus(lat)
    lm = fq.l_minus(lat)
    h = fq.hamiltonian_free(lat)
    assert np.array_equal(lp.conj().T, lm)
    assert np.allclose(2 * h, lp @ lm, atol=1e-12)


def test_spectrum_matches_numpy():
    lat = fq.build_lattice(4, 1.0)
    h = fq.hamiltonian_free(lat)
    values, vectors = fq.diagonalize(h)
    expected = [0.0, 4 / math.pi**2, 4 / math.pi**2, 8 / math.pi**2]
    assert np.allclose(values, expected, atol=1e-12)
    assert np.allclose(np.linalg.eigvalsh(h), expected, atol=1e-12)
    assert np.allclose(sorted(fq.circulant_spectrum(h)), expected, atol=1e-12)
    assert np.allclose(h @ vectors, vectors * values, atol=1e-12)
    assert fq.energy_bound(lat) == pytest.approx(8 / math.pi**2, abs=1e-15)


def test_cases():
    lat = fq.build_lattice(4, 1.0)
    assert fq.case_energy(fq.CaseKind.HalfPeriod, 0, lat) == pytest.approx(0.11870515044397295, abs=1e-15)
    levels = fq.case_levels(fq.CaseKind.FullPeriod, lat)
    assert [lv["multiplicity"] for lv in levels] == [1, 2, 1]
    psi = fq.case_wavefunction(fq.CaseKind.FullPeriod, 0, lat, 1.0, 1.0)
    assert np.allclose(psi, 1.0)
    with pytest.raises(fq.ConsistencyError):
        fq.case_wavefunction(fq.CaseKind.QuarterPeriod, 0, lat, 1.0, 1.0)


def test_recurrence_and_closed_form():
    lat = fq.build_lattice(10, 0.5)
    e = 0.37 * fq.energy_bound(lat)
    rec = fq.propagate_recurrence(1.0, 0.5 - 0.2j, e, lat)
    xi = fq.xi_from_energy(e, lat)
    assert fq.energy_from_xi(xi, lat) == pytest.approx(e, rel=1e-14)
    closed = [fq.wavefunction_sample(1.0, 0.5 - 0.2j, xi, n) for n in range(11)]
    assert np.allclose(rec, closed, atol=1e-10)
    with pytest.raises(fq.DomainError):
        fq.xi_from_energy(2 * fq.energy_bound(lat), lat)


def test_verification_report():
    report = fq.run_all_checks([(3, 1.0), (8, 2.0)])
    assert report["overall"] == "pass"
    assert len(report["checks"]) == 26
    assert fq.run_all_checks([])["overall"] == "pass-vacuous"
    assert len(fq.default_grid()) == 28
