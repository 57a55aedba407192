"""
Configuración de ejecución del modelo de canal.

Orden de precedencia: valores predeterminados < archivo JSON de
configuración < variable de entorno THZCHAN_DATA < opciones de línea de
comandos.
"""

import json
import logging
import os
from pathlib import Path

from src.dielectrics import AbsorptionWavelength
from src.errores import ErrorDatos, ErrorValidacion
from src.mediadb import default_data_paths

logger = logging.getLogger(__name__)

VARIABLE_DATOS = "THZCHAN_DATA"
PRECISION_MIN = 3
PRECISION_MAX = 17


class ConfiguracionCanal:
    def __init__(self):
        """Inicializa la configuración con los valores predeterminados."""
        self.parametros = {
            'absorption_wavelength': AbsorptionWavelength.GUIDED.value,
            'precision': 9,         # cifras significativas en CSV/JSON
            'grid_points': 101,     # densidad de los barridos predefinidos
            'workers': 1,           # hilos para evaluar barridos
            'data_paths': [str(p) for p in default_data_paths()],
        }

    def cargar_archivo(self, ruta_archivo):
        """
        Superpone los valores de un archivo JSON de configuración.

        Args:
            ruta_archivo: Ruta al archivo JSON.

        Returns:
            ConfiguracionCanal: La propia instancia.
        """
        try:
            with open(ruta_archivo, 'r', encoding='utf-8') as f:
                valores = json.load(f)
        except OSError as e:
            raise ErrorDatos(f"no se pudo leer la configuración: {e.strerror or e}", ruta=ruta_archivo) from None
        except json.JSONDecodeError as e:
            raise ErrorDatos(f"JSON inválido: {e.msg}", ruta=ruta_archivo, linea=e.lineno) from None
        if not isinstance(valores, dict):
            raise ErrorDatos("la configuración debe ser un objeto JSON", ruta=ruta_archivo)
        desconocidas = sorted(set(valores) - set(self.parametros))
        if desconocidas:
            raise ErrorDatos(f"claves de configuración desconocidas: {', '.join(desconocidas)}",
                             ruta=ruta_archivo)
        self.parametros.update(valores)
        logger.info("configuración cargada desde %s", ruta_archivo)
        return self.validar()

    def aplicar_entorno(self, entorno=None):
        """
        Toma las rutas de datos de THZCHAN_DATA (separadas por os.pathsep).

        Args:
            entorno: Mapeo de variables (por defecto os.environ).
        """
        entorno = os.environ if entorno is None else entorno
        valor = entorno.get(VARIABLE_DATOS, "").strip()
        if valor:
            self.parametros['data_paths'] = [p for p in valor.split(os.pathsep) if p]
            logger.debug("rutas de datos desde %s: %s", VARIABLE_DATOS, self.parametros['data_paths'])
        return self

    def actualizar(self, **valores):
        """Aplica opciones explícitas; los valores None se ignoran."""
        for clave, valor in valores.items():
            if clave not in self.parametros:
                raise ErrorValidacion(f"opción de configuración desconocida: {clave}")
            if valor is not None:
                self.parametros[clave] = valor
        return self.validar()

    def validar(self):
        """Comprueba rangos y tipos de todos los parámetros."""
        p = self.parametros
        p['absorption_wavelength'] = AbsorptionWavelength.desde_texto(p['absorption_wavelength']).value
        for clave, minimo in (('precision', PRECISION_MIN), ('grid_points', 2), ('workers', 1)):
            if isinstance(p[clave], bool) or not isinstance(p[clave], int) or p[clave] < minimo:
                raise ErrorValidacion(f"{clave} debe ser un entero >= {minimo}, se recibió {p[clave]!r}")
        if p['precision'] > PRECISION_MAX:
            raise ErrorValidacion(
                f"precision debe estar en [{PRECISION_MIN}, {PRECISION_MAX}], se recibió {p['precision']}"
            )
        if isinstance(p['data_paths'], (str, Path)):
            p['data_paths'] = [p['data_paths']]
        rutas = p['data_paths']
        if not isinstance(rutas, (list, tuple)) or not all(isinstance(r, (str, Path)) for r in rutas):
            raise ErrorValidacion(f"data_paths debe ser una ruta o una lista de rutas, se recibió {rutas!r}")
        p['data_paths'] = [str(r) for r in rutas]
        return self

    @property
    def absorption_wavelength(self):
        return AbsorptionWavelength(self.parametros['absorption_wavelength'])

    @property
    def precision(self):
        return self.parametros['precision']

    @property
    def grid_points(self):
        return self.parametros['grid_points']

    @property
    def workers(self):
        return self.parametros['workers']

    @property
    def data_paths(self):
        return list(self.parametros['data_paths'])
