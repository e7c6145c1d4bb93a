"""screening/tests/test_screener.py - Testy sprzężenia Förstera, oceny par i rankingu.

Wartości referencyjne: wiersze tabeli kandydatów (1, 3, F) dla r = 1 nm, kappa = 1.

Uruchomienie:
    python manage.py test screening.tests.test_screener --verbosity=2
"""

import numpy as np
from django.test import SimpleTestCase

from core.exceptions import ModelParameterError, PhotocellError
from quantum.services.builders import build_params
from quantum.services.dimer import darkness_angle
from quantum.services.parameters import ModelKind
from screening.services.database import MoleculeRecord
from screening.services.forster import forster_coupling
from screening.services.screener import (
    CANDIDATE_COLUMNS,
    ScreeningCriteria,
    candidate_params,
    evaluate_enhancement,
    partner_histogram,
    score_pair,
    screen,
)


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------

ROW_1 = (MoleculeRecord('d1', 2.73, 3.54, 2.45, 3.32), MoleculeRecord('a1', 2.61, 0.94, 1.97, 0.06))
ROW_3 = (MoleculeRecord('d3', 2.93, 3.52, 2.56, 4.13), MoleculeRecord('a3', 2.82, 0.90, 2.18, 0.00))
ROW_F = (MoleculeRecord('dF', 2.94, 3.48, 2.65, 3.52), MoleculeRecord('aF', 2.82, 1.09, 2.43, 0.93))

# Wszystkie 26 par tabeli kandydatów: (etykieta, donor (e_g, mu_g, e_e, mu_e), akceptor)
CANDIDATE_TABLE = [
    ('1', (2.73, 3.54, 2.45, 3.32), (2.61, 0.94, 1.97, 0.06)),
    ('2', (2.73, 3.54, 2.45, 3.32), (2.63, 1.02, 2.00, 0.17)),
    ('3', (2.93, 3.52, 2.56, 4.13), (2.82, 0.90, 2.18, 0.00)),
    ('4', (2.93, 3.52, 2.56, 4.13), (2.82, 1.09, 2.43, 0.93)),
    ('5', (2.93, 3.52, 2.56, 4.13), (2.81, 1.11, 2.17, 0.04)),
    ('6', (2.90, 3.52, 2.44, 3.29), (2.80, 0.89, 2.16, 0.04)),
    ('7', (2.90, 3.52, 2.44, 3.29), (2.78, 0.87, 2.17, 0.06)),
    ('8', (2.90, 3.52, 2.44, 3.29), (2.78, 0.89, 2.17, 0.37)),
    ('9', (3.04, 3.45, 2.70, 3.33), (2.94, 0.92, 2.37, 0.11)),
    ('10', (2.94, 3.48, 2.65, 3.52), (2.84, 0.74, 2.36, 0.38)),
    ('11', (2.94, 3.48, 2.65, 3.52), (2.82, 0.90, 2.18, 0.00)),
    ('12', (2.94, 3.48, 2.65, 3.52), (2.82, 0.97, 2.27, 1.20)),
    ('13', (2.94, 3.48, 2.65, 3.52), (2.81, 1.11, 2.17, 0.04)),
    ('14', (2.80, 3.57, 2.23, 1.49), (2.68, 0.86, 2.07, 0.04)),
    ('15', (2.80, 3.57, 2.23, 1.49), (2.66, 0.98, 2.20, 0.58)),
    ('16', (2.80, 3.57, 2.23, 1.49), (2.68, 1.06, 2.08, 0.56)),
    ('17', (2.80, 3.57, 2.23, 1.49), (2.67, 1.06, 2.10, 0.17)),
    ('18', (2.80, 3.57, 2.23, 1.49), (2.68, 1.24, 2.03, 0.00)),
    ('19', (2.80, 3.57, 2.23, 1.49), (2.66, 1.20, 2.05, 0.06)),
    ('20', (2.80, 3.57, 2.23, 1.49), (2.67, 1.23, 2.03, 0.06)),
    ('A', (2.73, 3.54, 2.45, 3.32), (2.62, 0.95, 2.19, 1.02)),
    ('B', (2.93, 3.52, 2.56, 4.13), (2.82, 0.97, 2.27, 1.20)),
    ('C', (2.93, 3.52, 2.56, 4.13), (2.79, 1.07, 2.32, 1.20)),
    ('D', (2.90, 3.52, 2.44, 3.29), (2.76, 1.01, 2.35, 0.97)),
    ('E', (2.90, 3.52, 2.44, 3.29), (2.79, 1.07, 2.32, 1.20)),
    ('F', (2.94, 3.48, 2.65, 3.52), (2.82, 1.09, 2.43, 0.93)),
]

DEFAULTS = build_params(
    ModelKind.ASYMMETRIC, eps_minus=2.0, gamma_opt_total=1.24e-6, gamma_11=0.005, gamma_22=0.005,
    gamma_1alpha=6e-7, gamma_betag=0.0248, chi=0.2, t_hot=6000.0, t_cold=300.0,
    eps_alpha=1.8, eps_beta=0.2, delta_eps=0.09, j12=0.01,
)


def synthetic_db(n, seed):
    rng = np.random.default_rng(seed)
    records = []
    for i in range(n):
        e_g = rng.uniform(2.2, 3.4)
        records.append(MoleculeRecord(
            id=f'm{i:04d}',
            e_g=round(e_g, 3),
            mu_g=round(rng.uniform(0.0, 4.5), 3),
            e_e=round(e_g - rng.uniform(0.0, 0.5), 3),
            mu_e=round(rng.uniform(0.0, 4.5), 3),
        ))
    return records


def brute_force(records, criteria):
    found = []
    for donor in records:
        if not criteria.accepts_donor(donor):
            continue
        for acceptor in records:
            if not acceptor.e_g < donor.e_g:
                continue
            c = score_pair(donor, acceptor, criteria)
            if (c.accepted and c.z_g <= criteria.z_max
                    and c.tan2_g <= criteria.tan2_max and c.tan2_e <= criteria.tan2_max):
                found.append(c)
    return sorted(found, key=lambda c: (max(c.tan2_g, c.tan2_e), -c.j_g, c.donor_id, c.acceptor_id))


# ---------------------------------------------------------------------------
# Sprzężenie Förstera
# ---------------------------------------------------------------------------

class TestForsterCoupling(SimpleTestCase):

    def test_table_row_one(self):
        self.assertAlmostEqual(forster_coupling(3.54, 0.94), 0.0134, delta=1e-4)

    def test_scaling(self):
        j = forster_coupling(3.5, 0.7)
        self.assertAlmostEqual(forster_coupling(3.5, 0.7, r=2.0), j / 8, delta=1e-18)
        self.assertAlmostEqual(forster_coupling(3.5, 0.7, kappa=2.0), 2 * j, delta=1e-18)
        self.assertAlmostEqual(forster_coupling(7.0, 0.7), 2 * j, delta=1e-18)
        self.assertEqual(forster_coupling(3.5, 0.0), 0.0)

    def test_invalid_separation(self):
        with self.assertRaises(ModelParameterError):
            forster_coupling(3.5, 0.7, r=0.0)


# ---------------------------------------------------------------------------
# Ocena par
# ---------------------------------------------------------------------------

class TestScorePair(SimpleTestCase):

    def test_hand_evaluated_pair(self):
        donor = MoleculeRecord('d', 2.9, 3.5, 2.9, 3.5)
        acceptor = MoleculeRecord('a', 2.8, 0.7, 2.8, 0.7)
        c = score_pair(donor, acceptor, ScreeningCriteria())
        self.assertAlmostEqual(c.z_g, 0.2, places=12)
        self.assertAlmostEqual(c.j_g, 0.00988, delta=1e-5)
        self.assertAlmostEqual(c.tan2_g, 0.0223, delta=1e-4)

    def test_table_row_one(self):
        c = score_pair(*ROW_1, ScreeningCriteria())
        self.assertAlmostEqual(c.z_g, 0.27, delta=0.005)
        self.assertAlmostEqual(c.j_g, 0.013, delta=5e-4)
        self.assertAlmostEqual(c.tan2_g, 0.044, delta=0.002)
        self.assertLess(c.tan2_e, 0.001)

    def test_table_row_three(self):
        c = score_pair(*ROW_3, ScreeningCriteria())
        self.assertAlmostEqual(c.z_g, 0.26, delta=0.005)
        self.assertAlmostEqual(c.tan2_g, 0.038, delta=0.002)
        self.assertEqual(c.z_e, 0.0)
        self.assertEqual(c.tan2_e, 0.0)

    def test_table_row_f(self):
        c = score_pair(*ROW_F, ScreeningCriteria())
        self.assertAlmostEqual(c.z_g, 0.31, delta=0.005)
        self.assertAlmostEqual(c.z_e, 0.26, delta=0.005)
        self.assertAlmostEqual(c.tan2_g, 0.059, delta=0.003)
        self.assertAlmostEqual(c.tan2_e, 0.052, delta=0.003)
        self.assertFalse(c.excited_order_flipped)

    def test_identical_molecules_rejected(self):
        c = score_pair(ROW_F[0], ROW_F[0], ScreeningCriteria())
        self.assertFalse(c.accepted)

    def test_wrong_energy_order_rejected(self):
        c = score_pair(ROW_F[1], ROW_F[0], ScreeningCriteria())
        self.assertEqual(c.rejection, 'acceptor energy not below donor energy')

    def test_excited_order_flip_is_flagged(self):
        donor = MoleculeRecord('d', 2.9, 3.5, 2.3, 3.5)
        acceptor = MoleculeRecord('a', 2.8, 0.7, 2.5, 0.7)
        c = score_pair(donor, acceptor, ScreeningCriteria())
        self.assertTrue(c.accepted)
        self.assertTrue(c.excited_order_flipped)
        self.assertAlmostEqual(c.tan2_e, darkness_angle(0.2, c.z_e, c.j_e), places=15)

    def test_row_layout(self):
        row = score_pair(*ROW_F, ScreeningCriteria()).as_row()
        self.assertEqual(tuple(row), CANDIDATE_COLUMNS)
        self.assertEqual((row['donor_id'], row['acceptor_id'], row['E1g']), ('dF', 'aF', 2.82))
        self.assertIsNone(row['Q'])


# ---------------------------------------------------------------------------
# Ranking
# ---------------------------------------------------------------------------

class TestScreen(SimpleTestCase):

    def test_row_f_emerges_with_loose_threshold(self):
        found = screen(list(ROW_F), ScreeningCriteria(tan2_max=0.07))
        self.assertEqual([(c.donor_id, c.acceptor_id) for c in found], [('dF', 'aF')])
        self.assertEqual(screen(list(ROW_F)), [])

    def test_empty_database(self):
        self.assertEqual(screen([]), [])

    def test_matches_brute_force(self):
        records = synthetic_db(300, seed=7)
        criteria = ScreeningCriteria(tan2_max=0.08)
        expected = brute_force(records, criteria)
        self.assertGreater(len(expected), 0)
        self.assertEqual(screen(records, criteria, max_workers=1), expected)
        self.assertEqual(screen(records, criteria, max_workers=4), expected)

    def test_stored_values_consistent(self):
        for c in screen(synthetic_db(200, seed=3), ScreeningCriteria(tan2_max=0.08)):
            self.assertAlmostEqual(darkness_angle(c.delta_g, c.z_g, c.j_g), c.tan2_g, delta=1e-12)

    def test_invalid_criteria(self):
        with self.assertRaises(ValueError):
            ScreeningCriteria(donor_e_min=3.5, donor_e_max=2.5)
        with self.assertRaises(ValueError):
            ScreeningCriteria(tan2_max=0.0)


# ---------------------------------------------------------------------------
# Histogram partnerów
# ---------------------------------------------------------------------------

class TestPartnerHistogram(SimpleTestCase):

    def test_matches_brute_force_binning(self):
        records = synthetic_db(150, seed=11)
        anchor = max(records, key=lambda r: (r.mu_g, r.e_g))
        edges = np.linspace(0.0, 1.0, 21)
        result = partner_histogram(records, anchor, 'donor', edges)
        values = []
        for other in records:
            if other.id == anchor.id:
                continue
            pair = score_pair(anchor, other, ScreeningCriteria())
            if pair.accepted:
                values.append(pair.tan2_g)
        expected, _ = np.histogram(values, bins=edges)
        np.testing.assert_array_equal(result.counts, expected)
        self.assertEqual(result.total + result.below + result.above, len(values))

    def test_anchor_without_partners(self):
        lonely = MoleculeRecord('low', 1.0, 0.1, 0.9, 0.1)
        result = partner_histogram([lonely, *ROW_F], lonely, 'donor', [0.0, 0.5, 1.0])
        self.assertEqual(result.counts.tolist(), [0, 0])

    def test_acceptor_role(self):
        result = partner_histogram(list(ROW_F), ROW_F[1], 'acceptor', [0.0, 0.05, 0.1, 1.0])
        self.assertEqual(result.counts.tolist(), [0, 1, 0])

    def test_out_of_range_partners_are_counted(self):
        above = partner_histogram(list(ROW_F), ROW_F[1], 'acceptor', [0.0, 0.02, 0.05])
        self.assertEqual((above.total, above.below, above.above), (0, 0, 1))
        below = partner_histogram(list(ROW_F), ROW_F[1], 'acceptor', [0.1, 1.0])
        self.assertEqual((below.total, below.below, below.above), (0, 1, 0))

    def test_invalid_edges(self):
        with self.assertRaises(ValueError):
            partner_histogram(list(ROW_F), ROW_F[0], 'donor', [0.5, 0.1])
        with self.assertRaises(ValueError):
            partner_histogram(list(ROW_F), ROW_F[0], 'bridge', [0.0, 1.0])


# ---------------------------------------------------------------------------
# Enhancement Q
# ---------------------------------------------------------------------------

class TestEvaluateEnhancement(SimpleTestCase):

    def test_candidate_model_anchored_on_acceptor(self):
        c = score_pair(*ROW_F, ScreeningCriteria())
        params = candidate_params(c, DEFAULTS)
        self.assertIs(params.model, ModelKind.ASYMMETRIC)
        self.assertAlmostEqual(params.z, c.z_g, places=15)
        self.assertEqual(params.j12, c.j_g)
        self.assertAlmostEqual(params.delta_eps, c.delta_g, places=12)

    def test_row_f_beats_benchmark(self):
        c = score_pair(*ROW_F, ScreeningCriteria())
        self.assertGreater(evaluate_enhancement(c, DEFAULTS), 1.0)

    def test_every_table_pair_lands_in_enhancement_band(self):
        criteria = ScreeningCriteria()
        for label, donor, acceptor in CANDIDATE_TABLE:
            with self.subTest(pair=label):
                c = score_pair(MoleculeRecord(f'd{label}', *donor), MoleculeRecord(f'a{label}', *acceptor), criteria)
                self.assertTrue(c.accepted)
                q = evaluate_enhancement(c, DEFAULTS)
                self.assertGreaterEqual(q, 1.2)
                self.assertLessEqual(q, 1.6)

    def test_rejected_pair_cannot_be_evaluated(self):
        with self.assertRaises(PhotocellError):
            evaluate_enhancement(score_pair(ROW_F[0], ROW_F[0], ScreeningCriteria()), DEFAULTS)
