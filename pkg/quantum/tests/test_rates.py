"""quantum/tests/test_rates.py - Testy parametrów, szybkości przejść i macierzy Q.

Uruchomienie:
    python manage.py test quantum.tests.test_rates --verbosity=2
"""

import math

import numpy as np
from django.test import SimpleTestCase

from core.constants import GROUND, K_B_EV
from core.exceptions import ModelParameterError
from quantum.services.builders import build_params, independent_benchmark, rebuild, split_optical_rate
from quantum.services.dimer import diagonalize_dimer
from quantum.services.parameters import ModelKind
from quantum.services.rates import (
    Bath,
    bose_occupation,
    build_rate_matrix,
    exciton_phonon_rate,
    trap_decay_split,
    trap_transfer_rates,
)


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------

BASE = dict(
    eps_minus=2.0, gamma_opt_total=1.24e-6, gamma_11=0.005, gamma_22=0.005,
    gamma_1alpha=6e-7, gamma_betag=0.0248, chi=0.2, t_hot=6000.0, t_cold=300.0,
    eps_alpha=1.8, eps_beta=0.2,
)

MODELS = {
    'independent': build_params(ModelKind.INDEPENDENT, **BASE),
    'symmetric': build_params(ModelKind.SYMMETRIC, j12=0.01, **BASE),
    'asymmetric': build_params(ModelKind.ASYMMETRIC, delta_eps=0.09, j12=0.01, **BASE),
}


# ---------------------------------------------------------------------------
# Obsadzenie Bosego-Einsteina
# ---------------------------------------------------------------------------

class TestBoseOccupation(SimpleTestCase):

    def test_sunlight_occupation(self):
        self.assertAlmostEqual(bose_occupation(2.0, 6000.0), 0.0213, delta=5e-4)

    def test_zero_frequency(self):
        self.assertEqual(bose_occupation(0.0, 300.0), 0.0)

    def test_huge_gap_underflows_to_zero(self):
        self.assertEqual(bose_occupation(100.0, 1.0), 0.0)

    def test_invalid_arguments(self):
        with self.assertRaises(ModelParameterError):
            bose_occupation(-0.1, 300.0)
        with self.assertRaises(ModelParameterError):
            bose_occupation(0.1, 0.0)


# ---------------------------------------------------------------------------
# Parametry i konstrukcja modeli
# ---------------------------------------------------------------------------

class TestParameters(SimpleTestCase):

    def test_optical_split_keeps_total(self):
        gamma_1g, gamma_2g = split_optical_rate(1.24e-6, 0.3)
        self.assertAlmostEqual(gamma_1g + gamma_2g, 1.24e-6, delta=1e-20)
        self.assertAlmostEqual(gamma_1g, 0.09 * gamma_2g, delta=1e-20)

    def test_models_share_lower_exciton(self):
        for name, params in MODELS.items():
            with self.subTest(model=name):
                self.assertAlmostEqual(diagonalize_dimer(params).eps_minus, 2.0, places=12)
                self.assertAlmostEqual(params.gamma_opt_total, 1.24e-6, delta=1e-20)

    def test_symmetric_requires_unit_ratio(self):
        with self.assertRaises(ModelParameterError) as ctx:
            MODELS['symmetric'].evolve(z=0.5)
        self.assertEqual(ctx.exception.field, 'z')

    def test_negative_chi_rejected(self):
        with self.assertRaises(ModelParameterError) as ctx:
            MODELS['asymmetric'].evolve(chi=-1.0)
        self.assertEqual(ctx.exception.field, 'chi')

    def test_asymmetric_second_site_not_trapped(self):
        self.assertEqual(MODELS['asymmetric'].gamma_2alpha, 0.0)
        with self.assertRaises(ModelParameterError) as ctx:
            MODELS['asymmetric'].evolve(gamma_2alpha=1e-7)
        self.assertEqual(ctx.exception.field, 'gamma_2alpha')

    def test_trap_above_sites_rejected(self):
        with self.assertRaises(ModelParameterError) as ctx:
            build_params(ModelKind.ASYMMETRIC, delta_eps=0.09, j12=0.01, **{**BASE, 'eps_alpha': 2.1})
        self.assertEqual(ctx.exception.field, 'eps_alpha')

    def test_benchmark_matches_design(self):
        params = MODELS['asymmetric']
        bench = independent_benchmark(params)
        self.assertIs(bench.model, ModelKind.INDEPENDENT)
        self.assertEqual(bench.j12, 0.0)
        self.assertAlmostEqual(bench.eps1, diagonalize_dimer(params).eps_minus, places=12)
        self.assertEqual(bench.gamma_1g, bench.gamma_2g)
        self.assertAlmostEqual(bench.gamma_opt_total, params.gamma_opt_total, delta=1e-20)
        self.assertEqual(bench.gamma_1alpha, params.gamma_1alpha)

    def test_rebuild_slaves_ratio(self):
        params = rebuild(MODELS['asymmetric'], j12=0.02, slave_z=True)
        omega = math.hypot(0.09, 0.02)
        self.assertAlmostEqual(params.z, (omega - 0.09) / 0.02, places=12)
        self.assertAlmostEqual(diagonalize_dimer(params).eps_minus, 2.0, places=12)


# ---------------------------------------------------------------------------
# Macierz Q
# ---------------------------------------------------------------------------

class TestRateMatrix(SimpleTestCase):

    def test_columns_sum_to_zero(self):
        for name, params in MODELS.items():
            with self.subTest(model=name):
                matrix = build_rate_matrix(params)
                self.assertLess(np.max(np.abs(matrix.q.sum(axis=0))), 1e-12 * matrix.max_rate)

    def test_off_diagonal_nonnegative(self):
        q = build_rate_matrix(MODELS['asymmetric']).q
        off = q[~np.eye(5, dtype=bool)]
        self.assertTrue(np.all(off >= 0.0))

    def test_detailed_balance_per_bath(self):
        for name, params in MODELS.items():
            for t in build_rate_matrix(params).transitions:
                with self.subTest(model=name, transition=t.label):
                    expected_t = params.t_hot if t.bath is Bath.PHOTON else params.t_cold
                    self.assertEqual(t.temperature, expected_t)
                    boltzmann = math.exp(-t.omega / (K_B_EV * t.temperature))
                    self.assertAlmostEqual(t.up / t.down / boltzmann, 1.0, places=12)

    def test_independent_has_no_exciton_relaxation(self):
        labels = {t.label for t in build_rate_matrix(MODELS['independent']).transitions}
        self.assertNotIn('+<->-', labels)

    def test_independent_optical_rates_keep_total_for_any_ratio(self):
        params = build_params(ModelKind.INDEPENDENT, z=0.2, **BASE)
        uneven = params.evolve(gamma_1g=1.0e-6, gamma_2g=0.24e-6)
        for label, case in (('z=0.2', params), ('uneven', uneven)):
            with self.subTest(case=label):
                optical = [t.rate for t in build_rate_matrix(case).transitions
                           if t.bath is Bath.PHOTON and t.lower == GROUND]
                self.assertEqual(len(optical), 2)
                self.assertAlmostEqual(optical[0], optical[1], delta=1e-20)
                self.assertAlmostEqual(sum(optical), case.gamma_opt_total, delta=1e-20)

    def test_trap_decay_split_is_linear(self):
        params = MODELS['asymmetric']
        fixed, trap = trap_decay_split(params)
        for gamma in (1e-9, 3.3e-6, 0.02):
            exact = build_rate_matrix(params.evolve(gamma_alphabeta=gamma)).q
            np.testing.assert_allclose(fixed + gamma * trap, exact, rtol=0, atol=1e-15 * np.max(np.abs(exact)))

    def test_matrix_is_read_only(self):
        q = build_rate_matrix(MODELS['symmetric']).q
        with self.assertRaises(ValueError):
            q[0, 0] = 1.0


# ---------------------------------------------------------------------------
# Sprzężenie z centrum reakcji
# ---------------------------------------------------------------------------

class TestTrapRates(SimpleTestCase):

    def test_symmetric_phase_pi_protects_bright_state(self):
        params = MODELS['symmetric']
        plus, minus = trap_transfer_rates(params, diagonalize_dimer(params))
        self.assertLess(plus, 1e-20)
        self.assertAlmostEqual(minus, 2 * params.gamma_1alpha, delta=1e-20)

    def test_symmetric_phase_half_pi_equalizes(self):
        params = MODELS['symmetric'].evolve(theta_rc=math.pi / 2)
        plus, minus = trap_transfer_rates(params, diagonalize_dimer(params))
        self.assertAlmostEqual(plus, minus, delta=1e-20)
        self.assertAlmostEqual(plus, params.gamma_1alpha, delta=1e-20)

    def test_symmetric_closed_form(self):
        theta = 2.5
        params = MODELS['symmetric'].evolve(theta_rc=theta)
        basis = diagonalize_dimer(params)
        plus, minus = trap_transfer_rates(params, basis)
        factor = params.j12 / basis.omega_r * math.cos(theta)
        self.assertAlmostEqual(plus, (1 + factor) * params.gamma_1alpha, delta=1e-20)
        self.assertAlmostEqual(minus, (1 - factor) * params.gamma_1alpha, delta=1e-20)

    def test_asymmetric_overlaps(self):
        params = MODELS['asymmetric']
        basis = diagonalize_dimer(params)
        plus, minus = trap_transfer_rates(params, basis)
        self.assertAlmostEqual(plus + minus, params.gamma_1alpha, delta=1e-20)
        self.assertGreater(minus, plus)


# ---------------------------------------------------------------------------
# Wartości referencyjne szybkości
# ---------------------------------------------------------------------------

class TestWorkedRates(SimpleTestCase):
    """Δε = 0.024 eV, J12 = 0.01 eV daje warunek ciemnego stanu z = 0.2 dokładnie."""

    def setUp(self):
        self.dark = build_params(ModelKind.ASYMMETRIC, delta_eps=0.024, j12=0.01, **BASE)

    def test_design_ratio(self):
        self.assertAlmostEqual(self.dark.z, 0.2, places=12)

    def test_symmetric_exciton_relaxation(self):
        params = MODELS['symmetric']
        self.assertAlmostEqual(exciton_phonon_rate(params, diagonalize_dimer(params)), 0.0025, delta=1e-15)

    def test_asymmetric_exciton_relaxation(self):
        rate = exciton_phonon_rate(self.dark, diagonalize_dimer(self.dark))
        self.assertAlmostEqual(rate, 0.04 / 1.04 ** 2 * 0.01, delta=1e-15)
        self.assertAlmostEqual(rate, 3.698e-4, delta=5e-8)

    def test_dark_state_trap_rate(self):
        plus, minus = trap_transfer_rates(self.dark, diagonalize_dimer(self.dark))
        self.assertAlmostEqual(minus, self.dark.gamma_1alpha / 1.04, delta=1e-18)
        self.assertAlmostEqual(minus / self.dark.gamma_1alpha, 0.96154, places=5)
        self.assertAlmostEqual(plus, 0.04 / 1.04 * self.dark.gamma_1alpha, delta=1e-18)
