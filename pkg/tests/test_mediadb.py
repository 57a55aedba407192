"""
Pruebas unitarias para el módulo mediadb.py
"""

import sys
import os
import json
import tempfile
import unittest
from pathlib import Path

# Añadir directorio raíz al path para importar módulos
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.dielectrics import FrequencyPoint, complex_permittivity
from src.errores import ErrorDatos, ErrorValidacion, MedioNoEncontrado
from src.mediadb import (
    CAMPOS_MEDIO, default_data_paths, get_medium, get_particles, load_database,
    serialize_database,
)
from src.pathloss import SizeClass


def medio_json(**cambios):
    """Registro de medio válido con los cambios indicados."""
    registro = {
        "id": "phantom", "display_name": "Fantoma", "eps_inf": 3.0, "eps_1": 50.0,
        "eps_2": 3.5, "tau_1_s": 1e-11, "tau_2_s": 2e-13, "f_min_hz": 1e11,
        "f_max_hz": 1e12, "provenance": "prueba",
    }
    registro.update(cambios)
    return registro


class TestBaseDeMedios(unittest.TestCase):
    """Carga, validación y consulta de la base de medios."""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.directorio = Path(self.tmp.name)
        self.db = load_database(default_data_paths())

    def tearDown(self):
        self.tmp.cleanup()

    def escribir(self, nombre, contenido):
        ruta = self.directorio / nombre
        texto = contenido if isinstance(contenido, str) else json.dumps(contenido)
        ruta.write_text(texto, encoding="utf-8")
        return ruta

    def test_medios_incluidos(self):
        self.assertEqual(set(self.db.medium_ids), {"water", "skin", "epidermis"})
        self.assertEqual(self.db.particle_ids, ["red_blood_cell"])
        for registro in self.db.records.values():
            self.assertEqual(registro.valid_band, (1e11, 1e12))
            self.assertTrue(registro.provenance.strip())

    def test_lista_vacia(self):
        db = load_database([])
        self.assertEqual(db.medium_ids, [])
        self.assertEqual(db.source_paths, ())

    def test_archivo_sin_medios_advierte(self):
        ruta = self.escribir("vacio.json", {})
        with self.assertLogs("src.mediadb", level="WARNING"):
            db = load_database([ruta])
        self.assertEqual(db.medium_ids, [])

    def test_tau_nulo(self):
        ruta = self.escribir("malo.json", {"media": [medio_json(tau_1_s=0.0)]})
        with self.assertRaises(ErrorDatos) as ctx:
            load_database([ruta])
        self.assertEqual(ctx.exception.registro, "phantom")
        self.assertIn("tau_1", str(ctx.exception))
        self.assertEqual(ctx.exception.codigo_salida, 3)

    def test_campo_ausente_y_desconocido(self):
        incompleto = medio_json()
        del incompleto["eps_2"]
        ruta = self.escribir("incompleto.json", {"media": [incompleto]})
        with self.assertRaises(ErrorDatos) as ctx:
            load_database([ruta])
        self.assertEqual(ctx.exception.campo, "eps_2")

        ruta = self.escribir("sobrante.json", {"media": [medio_json(color="azul")]})
        with self.assertRaises(ErrorDatos) as ctx:
            load_database([ruta])
        self.assertEqual(ctx.exception.campo, "color")

    def test_id_invalido(self):
        ruta = self.escribir("mayusculas.json", {"media": [medio_json(id="Phantom")]})
        with self.assertRaises(ErrorDatos):
            load_database([ruta])

    def test_banda_invalida(self):
        ruta = self.escribir("banda.json", {"media": [medio_json(f_min_hz=1e12, f_max_hz=1e11)]})
        with self.assertRaises(ErrorDatos):
            load_database([ruta])

    def test_json_invalido_indica_linea(self):
        ruta = self.escribir("roto.json", '{\n  "media": [\n    {"id": "x",}\n  ]\n}\n')
        with self.assertRaises(ErrorDatos) as ctx:
            load_database([ruta])
        self.assertEqual(ctx.exception.linea, 3)
        self.assertIn(f"{ruta}:3", str(ctx.exception))

    def test_archivo_inexistente(self):
        with self.assertRaises(ErrorDatos):
            load_database([self.directorio / "no_existe.json"])

    def test_id_duplicado_entre_archivos(self):
        primero = self.escribir("a.json", {"media": [medio_json()]})
        segundo = self.escribir("b.json", {"media": [medio_json(eps_1=45.0)]})
        with self.assertRaises(ErrorDatos) as ctx:
            load_database([primero, segundo])
        self.assertIn("duplicado", str(ctx.exception))
        self.assertIn("a.json", str(ctx.exception))

    def test_busqueda(self):
        agua = get_medium(self.db, "water")
        self.assertEqual(agua.debye.eps_1, 78.36)
        with self.assertRaises(MedioNoEncontrado):
            get_medium(self.db, "WATER")

    def test_no_encontrado_lista_disponibles(self):
        with self.assertRaises(ErrorValidacion) as ctx:
            get_medium(self.db, "blood")
        mensaje = str(ctx.exception)
        for medio in ("water", "skin", "epidermis"):
            self.assertIn(medio, mensaje)
        self.assertEqual(ctx.exception.codigo_salida, 2)

    def test_sugerencia_cercana(self):
        with self.assertRaises(MedioNoEncontrado) as ctx:
            get_medium(self.db, "watr")
        self.assertIn("¿Quiso decir: water", str(ctx.exception))

    def test_particulas(self):
        globulos = get_particles(self.db, "red_blood_cell")
        self.assertEqual(globulos.radius, 4e-6)
        self.assertEqual(globulos.volume_fraction, 0.45)
        self.assertIs(globulos.size_class, SizeClass.SMALL)
        with self.assertRaises(MedioNoEncontrado):
            get_particles(self.db, "platelet")

    def test_particula_invalida(self):
        ruta = self.escribir("particulas.json", {"particles": [
            {"id": "grande", "radius_m": 1e-6, "volume_fraction": 1.2,
             "sigma_abs_m2": 0.0, "size_class": "large"},
        ]})
        with self.assertRaises(ErrorDatos) as ctx:
            load_database([ruta])
        self.assertIn("invariante violado", str(ctx.exception))

    def test_serializacion_canonica(self):
        texto = serialize_database(self.db)
        self.assertTrue(texto.endswith("\n"))
        documento = json.loads(texto)
        self.assertEqual(list(documento["media"][0]), list(CAMPOS_MEDIO))

        ruta = self.escribir("canonico.json", texto)
        recargada = load_database([ruta])
        self.assertEqual(serialize_database(recargada), texto)
        self.assertEqual(dict(recargada.records), dict(self.db.records))
        self.assertEqual(dict(recargada.particles), dict(self.db.particles))

    def test_orden_de_archivos_indiferente(self):
        """Cargar los mismos archivos en cualquier orden da la misma base."""
        extra = self.escribir("extra.json", {"media": [medio_json(id="gel"), medio_json(id="bone")]})
        rutas = default_data_paths() + [extra]
        directa = load_database(rutas)
        inversa = load_database(list(reversed(rutas)))
        self.assertEqual(serialize_database(directa), serialize_database(inversa))
        self.assertEqual(directa.medium_ids, ["bone", "epidermis", "gel", "skin", "water"])
        self.assertEqual(inversa.medium_ids, directa.medium_ids)

    def test_agua_dentro_de_la_literatura(self):
        """ε(1 THz) del agua incluida dentro de ±10 % de los valores publicados."""
        agua = get_medium(self.db, "water")
        eps = complex_permittivity(agua.debye, FrequencyPoint(1e12))
        self.assertLessEqual(abs(eps.eps_real - 4.155) / 4.155, 0.10)
        self.assertLessEqual(abs(eps.eps_imag - 2.127) / 2.127, 0.10)


if __name__ == '__main__':
    unittest.main()
