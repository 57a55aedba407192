"""
Pruebas unitarias para el módulo dielectrics.py
"""

import sys
import os
import unittest
import numpy as np

# Añadir directorio raíz al path para importar módulos
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.dielectrics import (
    C, AbsorptionWavelength, ComplexPermittivity, DebyeParameters, FrequencyPoint,
    RefractiveIndex, absorption_coefficient, complex_permittivity, guided_wavelength,
    optical_state, refractive_index,
)
from src.errores import ErrorValidacion
from src.mediadb import default_data_paths, load_database
from tests import oraculo_decimal

AGUA = DebyeParameters(eps_inf=3.48, eps_1=78.36, eps_2=4.93, tau_1=8.24e-12, tau_2=0.18e-12)


class TestTiposDielectricos(unittest.TestCase):
    """Invariantes de los tipos de entrada."""

    def test_parametros_invalidos(self):
        with self.assertRaises(ErrorValidacion):
            DebyeParameters(3.0, 60.0, 3.6, 0.0, 2e-13)
        with self.assertRaises(ErrorValidacion):
            DebyeParameters(0.5, 60.0, 3.6, 1e-11, 2e-13)
        with self.assertRaises(ErrorValidacion):
            DebyeParameters(3.0, 3.5, 3.6, 1e-11, 2e-13)
        with self.assertRaises(ErrorValidacion):
            DebyeParameters(3.0, float('nan'), 3.6, 1e-11, 2e-13)

    def test_punto_de_frecuencia(self):
        freq = FrequencyPoint(1e12)
        self.assertEqual(freq.omega, 2 * np.pi * 1e12)
        self.assertAlmostEqual(freq.lambda_0 * freq.f / C, 1.0, places=15)
        self.assertEqual(C, 299792458.0)
        with self.assertRaises(ErrorValidacion):
            FrequencyPoint(0.0)
        with self.assertRaises(ErrorValidacion):
            FrequencyPoint(float('inf'))

    def test_desde_longitud_de_onda(self):
        freq = FrequencyPoint.from_wavelength(3e-4)
        self.assertAlmostEqual(freq.lambda_0 / 3e-4, 1.0, places=15)
        self.assertAlmostEqual(freq.f, C / 3e-4, delta=1e-3)

    def test_modo_de_absorcion(self):
        self.assertIs(AbsorptionWavelength.desde_texto('free-space'), AbsorptionWavelength.FREE_SPACE)
        self.assertIs(AbsorptionWavelength.desde_texto('GUIDED'), AbsorptionWavelength.GUIDED)
        with self.assertRaises(ErrorValidacion):
            AbsorptionWavelength.desde_texto('vacuum')


class TestPermitividad(unittest.TestCase):
    """Modelo de doble Debye."""

    def test_agua_a_1_thz(self):
        eps = complex_permittivity(AGUA, FrequencyPoint(1e12))
        self.assertAlmostEqual(eps.eps_real, 4.155, delta=0.02)
        self.assertAlmostEqual(eps.eps_imag, 2.127, delta=0.02)

    def test_limite_baja_frecuencia(self):
        eps = complex_permittivity(AGUA, FrequencyPoint(1.0))
        self.assertLess(abs(eps.eps_real - AGUA.eps_1) / AGUA.eps_1, 1e-6)
        self.assertLess(eps.eps_imag, 1e-6)

    def test_limite_alta_frecuencia(self):
        eps = complex_permittivity(AGUA, FrequencyPoint(1e18))
        self.assertLess(abs(eps.eps_real - AGUA.eps_inf) / AGUA.eps_inf, 1e-6)

    def test_sin_relajacion(self):
        params = DebyeParameters(3.0, 3.0, 3.0, 1e-11, 2e-13)
        for f in (1e9, 5e11, 1e12):
            eps = complex_permittivity(params, FrequencyPoint(f))
            self.assertEqual(eps.eps_real, 3.0)
            self.assertEqual(eps.eps_imag, 0.0)

    def test_medios_incluidos_en_la_banda(self):
        """ε'' > 0 y ε' decreciente en [0.1, 1] THz para cada medio incluido."""
        db = load_database(default_data_paths())
        for registro in db.records.values():
            frecuencias = np.linspace(1e11, 1e12, 100)
            eps = [complex_permittivity(registro.debye, FrequencyPoint(f)) for f in frecuencias]
            reales = np.array([e.eps_real for e in eps])
            self.assertTrue(all(e.eps_imag > 0 for e in eps), registro.id)
            self.assertTrue(np.all(np.diff(reales) < 0), registro.id)
            indices = [refractive_index(e) for e in eps]
            self.assertTrue(all(n.n_real >= 1 for n in indices), registro.id)

    def test_equivalencia_con_oraculo(self):
        """ε', ε'', n', n'' contra 50 cifras decimales, error relativo <= 1e-12."""
        db = load_database(default_data_paths())
        for registro in db.records.values():
            for f in np.linspace(1e11, 1e12, 100):
                f = float(f)
                eps = complex_permittivity(registro.debye, FrequencyPoint(f))
                n = refractive_index(eps)
                er, ei = oraculo_decimal.permitividad(registro.debye, f)
                nr, ni = oraculo_decimal.indice(er, ei)
                for calculado, exacto in ((eps.eps_real, er), (eps.eps_imag, ei),
                                          (n.n_real, nr), (n.n_imag, ni)):
                    self.assertLessEqual(abs(calculado - float(exacto)) / float(exacto), 1e-12,
                                         f"{registro.id} a {f} Hz")


class TestIndiceDeRefraccion(unittest.TestCase):
    """Índice de refracción complejo."""

    def test_ejemplo_agua(self):
        n = refractive_index(ComplexPermittivity(4.155, 2.127))
        self.assertAlmostEqual(n.n_real, 2.100, delta=1e-3)
        self.assertAlmostEqual(n.n_imag, 0.5064, delta=1e-4)

    def test_medio_sin_perdidas(self):
        n = refractive_index(ComplexPermittivity(4.0, 0.0))
        self.assertEqual(n.n_real, 2.0)
        self.assertEqual(n.n_imag, 0.0)

    def test_permitividad_imaginaria_pura(self):
        x = 2.25
        n = refractive_index(ComplexPermittivity(0.0, 2 * x))
        self.assertAlmostEqual(n.n_real, np.sqrt(x), places=14)
        self.assertAlmostEqual(n.n_imag, np.sqrt(x), places=14)

    def test_rechaza_parte_real_negativa(self):
        with self.assertRaises(ErrorValidacion):
            refractive_index(ComplexPermittivity(-1.0, 0.5))

    def test_reconstruccion_aleatoria(self):
        """(n' − jn'')² reproduce ε' − jε'' en 1000 pares aleatorios."""
        rng = np.random.default_rng(20240501)
        for eps_real, eps_imag in zip(rng.uniform(0.5, 100.0, 1000), rng.uniform(0.0, 100.0, 1000)):
            n = refractive_index(ComplexPermittivity(eps_real, eps_imag))
            reconstruido = n.as_complex() ** 2
            original = complex(eps_real, -eps_imag)
            self.assertLessEqual(abs(reconstruido - original) / abs(original), 1e-12)


class TestLongitudesYAbsorcion(unittest.TestCase):
    """Longitud de onda guiada y coeficiente de absorción."""

    def setUp(self):
        self.freq = FrequencyPoint.from_wavelength(3e-4)

    def test_longitud_de_onda_guiada(self):
        self.assertAlmostEqual(guided_wavelength(self.freq, RefractiveIndex(2.1, 0.5)) * 1e6,
                               142.857, delta=1e-3)
        self.assertEqual(guided_wavelength(self.freq, RefractiveIndex(1.0, 0.0)), self.freq.lambda_0)
        self.assertAlmostEqual(guided_wavelength(self.freq, RefractiveIndex(3.0, 0.0)), 1e-4, delta=1e-16)
        with self.assertRaises(ErrorValidacion):
            guided_wavelength(self.freq, RefractiveIndex(0.0, 1.0))

    def test_coeficiente_guiado(self):
        mu = absorption_coefficient(RefractiveIndex(2.1, 0.5064), 142.86e-6)
        self.assertAlmostEqual(mu / 4.455e4, 1.0, delta=1e-3)
        self.assertEqual(absorption_coefficient(RefractiveIndex(2.1, 0.0), 142.86e-6), 0.0)

    def test_coeficiente_espacio_libre(self):
        mu = absorption_coefficient(RefractiveIndex(2.1, 0.5064), 142.86e-6,
                                    AbsorptionWavelength.FREE_SPACE, lambda_0=3e-4)
        self.assertAlmostEqual(mu / 2.121e4, 1.0, delta=1e-3)
        with self.assertRaises(ErrorValidacion):
            absorption_coefficient(RefractiveIndex(2.1, 0.5), 1e-4, 'free-space')

    def test_estado_optico(self):
        estado = optical_state(AGUA, self.freq)
        self.assertEqual(estado.lambda_g, self.freq.lambda_0 / estado.index.n_real)
        self.assertGreater(estado.mu_abs, 0)
        libre = optical_state(AGUA, self.freq, 'free-space')
        self.assertAlmostEqual(estado.mu_abs / libre.mu_abs, estado.index.n_real, places=12)


if __name__ == '__main__':
    unittest.main()
