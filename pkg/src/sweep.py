"""
Barridos unidimensionales de la pérdida de trayecto.

Evalúa el modelo de pérdida sobre una rejilla de frecuencia, distancia o
ancho de haz para varios medios, y define los barridos de las cuatro
figuras de referencia (fig1..fig4).
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np
import pandas as pd

from src.dielectrics import AbsorptionWavelength, FrequencyPoint
from src.errores import ErrorValidacion, exigir_finito
from src.mediadb import default_data_paths, get_medium, load_database
from src.pathloss import BeamSpec, ChannelGeometry, evaluate_link

logger = logging.getLogger(__name__)

# Contrato público de columnas (CSV y DataFrame)
COLUMNAS = [
    'medium', 'axis', 'axis_value', 'f_hz', 'lambda0_m', 'distance_m',
    'delta_theta_rad', 'directivity', 'eps_real', 'eps_imag', 'n_real', 'n_imag',
    'lambda_g_m', 'mu_abs_per_m', 'spreading_db', 'absorption_db',
    'scattering_db', 'total_db',
]

MEDIOS_FIGURAS = ('water', 'skin', 'epidermis')
PUNTOS_PREDETERMINADOS = 101


class SweepAxis(str, Enum):
    FREQUENCY = "frequency"
    DISTANCE = "distance"
    BEAM_WIDTH = "beam_width"


@dataclass(frozen=True)
class SweepRequest:
    """
    Petición de barrido.

    Attributes:
        medium_ids: Medios a evaluar, en orden de salida.
        axis: Eje barrido.
        grid: Valores del eje (Hz, m o rad), estrictamente crecientes.
        frequency: Frecuencia fija (si el eje no es frequency).
        geometry: Distancia fija (si el eje no es distance).
        beam: Haz fijo (si el eje no es beam_width).
        populations: Poblaciones de partículas (vacío = sin scattering).
        name: Nombre del barrido predefinido, si lo hay.
    """

    medium_ids: tuple
    axis: SweepAxis
    grid: tuple
    frequency: FrequencyPoint = None
    geometry: ChannelGeometry = None
    beam: BeamSpec = None
    populations: tuple = ()
    name: str = ""

    def __post_init__(self):
        try:
            eje = SweepAxis(self.axis)
        except ValueError:
            opciones = ", ".join(a.value for a in SweepAxis)
            raise ErrorValidacion(f"eje inválido: {self.axis!r} (opciones: {opciones})") from None
        object.__setattr__(self, "axis", eje)
        object.__setattr__(self, "medium_ids", tuple(self.medium_ids))
        object.__setattr__(self, "populations", tuple(self.populations))
        if not self.medium_ids:
            raise ErrorValidacion("el barrido necesita al menos un medio")

        rejilla = tuple(exigir_finito(v, "grid") for v in self.grid)
        if len(rejilla) < 2:
            raise ErrorValidacion(f"la rejilla necesita al menos 2 puntos, se recibieron {len(rejilla)}")
        for anterior, siguiente in zip(rejilla, rejilla[1:]):
            if not siguiente > anterior:
                raise ErrorValidacion(
                    f"la rejilla debe ser estrictamente creciente: {siguiente!r} después de {anterior!r}"
                )
        object.__setattr__(self, "grid", rejilla)

        # Cada valor de la rejilla debe construir un parámetro válido
        constructor = {
            SweepAxis.FREQUENCY: FrequencyPoint,
            SweepAxis.DISTANCE: ChannelGeometry,
            SweepAxis.BEAM_WIDTH: BeamSpec,
        }[eje]
        for valor in rejilla:
            try:
                constructor(valor)
            except ErrorValidacion as e:
                raise ErrorValidacion(f"valor de rejilla {valor!r} inválido: {e}") from None

        fijos = {
            SweepAxis.FREQUENCY: ("geometry", "beam"),
            SweepAxis.DISTANCE: ("frequency", "beam"),
            SweepAxis.BEAM_WIDTH: ("frequency", "geometry"),
        }[eje]
        for nombre in fijos:
            if getattr(self, nombre) is None:
                raise ErrorValidacion(f"un barrido de {eje.value} requiere fijar '{nombre}'")

    def punto(self, valor):
        """Parámetros escalares (frecuencia, geometría, haz) para un valor del eje."""
        if self.axis is SweepAxis.FREQUENCY:
            return FrequencyPoint(valor), self.geometry, self.beam
        if self.axis is SweepAxis.DISTANCE:
            return self.frequency, ChannelGeometry(valor), self.beam
        return self.frequency, self.geometry, BeamSpec(valor)

    def como_dict(self):
        """Eco de la petición, serializable a JSON."""
        fijos = {}
        if self.axis is not SweepAxis.FREQUENCY:
            fijos['f_hz'] = self.frequency.f
            fijos['lambda0_m'] = self.frequency.lambda_0
        if self.axis is not SweepAxis.DISTANCE:
            fijos['distance_m'] = self.geometry.distance
        if self.axis is not SweepAxis.BEAM_WIDTH:
            fijos['delta_theta_rad'] = self.beam.delta_theta
        return {
            'name': self.name,
            'medium_ids': list(self.medium_ids),
            'axis': self.axis.value,
            'grid': list(self.grid),
            'fixed': fijos,
            'populations': [
                {'id': p.id, 'radius_m': p.radius, 'volume_fraction': p.volume_fraction,
                 'sigma_abs_m2': p.sigma_abs, 'size_class': p.size_class.value}
                for p in self.populations
            ],
        }


@dataclass(frozen=True)
class SweepRow:
    medium: str
    axis_value: float
    frequency: FrequencyPoint
    geometry: ChannelGeometry
    beam: BeamSpec
    optical: object
    loss: object
    scattering: tuple = ()

    def como_dict(self, axis):
        """Fila con las columnas públicas."""
        optico = self.optical
        return {
            'medium': self.medium,
            'axis': axis.value,
            'axis_value': self.axis_value,
            'f_hz': self.frequency.f,
            'lambda0_m': self.frequency.lambda_0,
            'distance_m': self.geometry.distance,
            'delta_theta_rad': self.beam.delta_theta,
            'directivity': self.loss.directivity,
            'eps_real': optico.permittivity.eps_real,
            'eps_imag': optico.permittivity.eps_imag,
            'n_real': optico.index.n_real,
            'n_imag': optico.index.n_imag,
            'lambda_g_m': optico.lambda_g,
            'mu_abs_per_m': optico.mu_abs,
            'spreading_db': self.loss.spreading_db,
            'absorption_db': self.loss.absorption_db,
            'scattering_db': self.loss.scattering_db,
            'total_db': self.loss.total_db,
        }


@dataclass(frozen=True)
class SweepResult:
    request: SweepRequest
    rows: tuple
    absorption_wavelength: AbsorptionWavelength = AbsorptionWavelength.GUIDED

    def to_frame(self):
        """Tabla de resultados con el contrato de columnas COLUMNAS."""
        filas = [fila.como_dict(self.request.axis) for fila in self.rows]
        return pd.DataFrame(filas, columns=COLUMNAS)

    def request_dict(self):
        eco = self.request.como_dict()
        eco['absorption_wavelength'] = self.absorption_wavelength.value
        return eco


def _evaluar(tarea):
    registro, req, valor, modo = tarea
    freq, geom, beam = req.punto(valor)
    optico, desglose, detalles = evaluate_link(
        registro, freq, geom, beam, req.populations, absorption_wavelength=modo,
    )
    return SweepRow(registro.id, valor, freq, geom, beam, optico, desglose, tuple(detalles))


def run_sweep(req, database=None, workers=1, absorption_wavelength=AbsorptionWavelength.GUIDED):
    """
    Evalúa la pérdida de trayecto en cada (medio, punto de la rejilla).

    Los puntos son independientes; con workers > 1 se evalúan en un pool de
    hilos y las filas se recogen en el orden de la petición, por lo que el
    resultado es idéntico al de la evaluación en serie.

    Args:
        req: SweepRequest.
        database: MediumDatabase (por defecto, los datos incluidos).
        workers: Número de hilos.
        absorption_wavelength: Convención del coeficiente de absorción.

    Returns:
        SweepResult: Una fila por (medio, punto), en orden medio × rejilla.
    """
    modo = AbsorptionWavelength.desde_texto(absorption_wavelength)
    if database is None:
        database = load_database(default_data_paths())
    registros = [get_medium(database, m) for m in req.medium_ids]

    if req.axis is SweepAxis.FREQUENCY:
        for registro in registros:
            f_min, f_max = registro.valid_band
            for valor in req.grid:
                if not f_min <= valor <= f_max:
                    raise ErrorValidacion(
                        f"frecuencia {valor!r} Hz fuera de la banda de '{registro.id}' "
                        f"[{f_min:.9g}, {f_max:.9g}] Hz"
                    )

    tareas = [(registro, req, valor, modo) for registro in registros for valor in req.grid]
    logger.info("barrido %s: %d medios × %d puntos (workers=%d)",
                req.axis.value, len(registros), len(req.grid), workers)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            filas = list(pool.map(_evaluar, tareas))
    else:
        filas = [_evaluar(t) for t in tareas]
    logger.info("barrido completado: %d filas", len(filas))
    return SweepResult(req, tuple(filas), modo)


def figure_preset(name, points=PUNTOS_PREDETERMINADOS):
    """
    Barrido predefinido de una de las figuras de referencia.

    fig1/fig2: frecuencia en [0.1, 1] THz con d = 1 mm / 2 mm y Δθ = 0.5 rad.
    fig3: distancia en [0.1, 2] mm con λ₀ = 0.3 mm y Δθ = 0.5 rad.
    fig4: ancho de haz en [0.01, 3] rad con λ₀ = 0.3 mm y d = 1 mm.

    Args:
        name: 'fig1', 'fig2', 'fig3' o 'fig4'.
        points: Número de puntos de la rejilla.

    Returns:
        SweepRequest: Petición sin poblaciones de partículas.
    """
    haz = BeamSpec(0.5)
    lambda_ref = FrequencyPoint.from_wavelength(3e-4)
    presets = {
        'fig1': dict(axis=SweepAxis.FREQUENCY, inicio=1e11, fin=1e12,
                     geometry=ChannelGeometry(1e-3), beam=haz),
        'fig2': dict(axis=SweepAxis.FREQUENCY, inicio=1e11, fin=1e12,
                     geometry=ChannelGeometry(2e-3), beam=haz),
        'fig3': dict(axis=SweepAxis.DISTANCE, inicio=1e-4, fin=2e-3,
                     frequency=lambda_ref, beam=haz),
        'fig4': dict(axis=SweepAxis.BEAM_WIDTH, inicio=0.01, fin=3.0,
                     frequency=lambda_ref, geometry=ChannelGeometry(1e-3)),
    }
    if name not in presets:
        raise ErrorValidacion(f"figura desconocida: {name!r} (opciones: {', '.join(presets)})")
    config = presets[name]
    inicio = config.pop('inicio')
    fin = config.pop('fin')
    rejilla = tuple(float(v) for v in np.linspace(inicio, fin, points))
    return SweepRequest(medium_ids=MEDIOS_FIGURAS, grid=rejilla, name=name, **config)


def component_attribution(result):
    """
    Amplitud (máximo − mínimo) de la pérdida total por medio a lo largo del eje.

    Es la "contribución" del eje barrido a la pérdida; también se reporta
    la amplitud de cada componente.

    Args:
        result: SweepResult no vacío.

    Returns:
        pandas.DataFrame: Una fila por medio.
    """
    if not result.rows:
        raise ErrorValidacion("no se puede atribuir un barrido sin filas")
    tabla = result.to_frame()
    filas = []
    for medio, grupo in tabla.groupby('medium', sort=False):
        fila = {
            'medium': medio,
            'axis': result.request.axis.value,
            'axis_min': grupo['axis_value'].min(),
            'axis_max': grupo['axis_value'].max(),
            'min_total_db': grupo['total_db'].min(),
            'max_total_db': grupo['total_db'].max(),
        }
        fila['span_db'] = fila['max_total_db'] - fila['min_total_db']
        for componente in ('spreading', 'absorption', 'scattering'):
            columna = grupo[f'{componente}_db']
            fila[f'{componente}_span_db'] = columna.max() - columna.min()
        filas.append(fila)
    return pd.DataFrame(filas)
