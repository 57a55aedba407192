"""
Pérdida de trayecto total de un enlace THz intracorporal.

La pérdida total en dB es la suma de tres componentes: dispersión
geométrica (spreading) con la directividad de un haz gaussiano,
absorción molecular de Beer-Lambert y scattering por partículas
(Rayleigh para partículas pequeñas, difracción anómala para grandes).
"""

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from src.dielectrics import AbsorptionWavelength, optical_state
from src.errores import ErrorValidacion, exigir_finito

logger = logging.getLogger(__name__)

# dB por neper de intensidad: -10·log10(e^-x) = DB_POR_NEPER·x
DB_POR_NEPER = 10.0 * np.log10(np.e)

# Radios mayores no son partículas intracorporales sino error de unidades
RADIO_MAXIMO = 1e-3

# Por debajo de este desfase se usa la serie de Q_large (truncada en p⁸)
UMBRAL_SERIE_ADT = 1e-1
COEFICIENTES_SERIE_ADT = (1.0 / 2.0, -1.0 / 36.0, 1.0 / 1440.0, -1.0 / 100800.0)


class SizeClass(str, Enum):
    SMALL = "small"
    LARGE = "large"


@dataclass(frozen=True)
class BeamSpec:
    """Ancho de haz gaussiano Δθ (rad) de la nano-antena."""

    delta_theta: float

    def __post_init__(self):
        valor = exigir_finito(self.delta_theta, "delta_theta")
        if not 0.0 <= valor <= np.pi:
            raise ErrorValidacion(f"delta_theta debe estar en [0, π] rad, se recibió {valor}")
        object.__setattr__(self, "delta_theta", valor)


@dataclass(frozen=True)
class ChannelGeometry:
    """Longitud del trayecto d (m)."""

    distance: float

    def __post_init__(self):
        valor = exigir_finito(self.distance, "distance")
        if valor <= 0:
            raise ErrorValidacion(f"la distancia debe ser positiva, se recibió {valor}")
        object.__setattr__(self, "distance", valor)


@dataclass(frozen=True)
class ParticlePopulation:
    """
    Población de partículas dispersoras.

    Attributes:
        radius: Radio r de la partícula (m).
        volume_fraction: Fracción de volumen k, en [0, 1).
        sigma_abs: Sección eficaz de absorción molecular σ_abs (m²).
        size_class: 'small' (Rayleigh) o 'large' (difracción anómala).
        id: Identificador de la población.
    """

    radius: float
    volume_fraction: float
    sigma_abs: float = 0.0
    size_class: SizeClass = SizeClass.SMALL
    id: str = "custom"

    def __post_init__(self):
        radio = exigir_finito(self.radius, "radius")
        k = exigir_finito(self.volume_fraction, "volume_fraction")
        sigma_abs = exigir_finito(self.sigma_abs, "sigma_abs")
        if radio <= 0:
            raise ErrorValidacion(f"el radio debe ser positivo, se recibió {radio}")
        if not 0.0 <= k < 1.0:
            raise ErrorValidacion(f"volume_fraction debe estar en [0, 1), se recibió {k}")
        if sigma_abs < 0:
            raise ErrorValidacion(f"sigma_abs debe ser >= 0, se recibió {sigma_abs}")
        try:
            clase = SizeClass(self.size_class)
        except ValueError:
            raise ErrorValidacion(
                f"size_class inválido: {self.size_class!r} (opciones: small, large)"
            ) from None
        object.__setattr__(self, "radius", radio)
        object.__setattr__(self, "volume_fraction", k)
        object.__setattr__(self, "sigma_abs", sigma_abs)
        object.__setattr__(self, "size_class", clase)
        if clase is SizeClass.LARGE and sigma_abs > 2.0 * self.geometric_cross_section:
            raise ErrorValidacion(
                f"población '{self.id}': sigma_abs ({sigma_abs}) supera 2·σ_g "
                f"({2.0 * self.geometric_cross_section})"
            )

    @property
    def number_density(self):
        """Concentración ρ_v = k / ((4/3)πr³) en 1/m³."""
        return self.volume_fraction / ((4.0 / 3.0) * np.pi * self.radius ** 3)

    @property
    def geometric_cross_section(self):
        """Sección geométrica σ_g = πr² en m²."""
        return np.pi * self.radius ** 2


@dataclass(frozen=True)
class ScatteringDetail:
    psi: float
    p: float
    q_small: float
    q_large: float
    mu_small: float
    mu_large: float
    clamped: bool = False
    population_id: str = "custom"


@dataclass(frozen=True)
class LossBreakdown:
    """Componentes de la pérdida de trayecto en dB; total = suma exacta."""

    spreading_db: float
    absorption_db: float
    scattering_db: float
    total_db: float
    directivity: float = float("nan")

    def __post_init__(self):
        if self.absorption_db < 0 or self.scattering_db < 0:
            raise ErrorValidacion("las pérdidas de absorción y scattering no pueden ser negativas")
        if self.total_db != self.spreading_db + self.absorption_db + self.scattering_db:
            raise ErrorValidacion("total_db no coincide con la suma de componentes")

    @classmethod
    def componer(cls, spreading_db, absorption_db, scattering_db, directivity=float("nan")):
        """Construye el desglose sumando las tres componentes."""
        total = spreading_db + absorption_db + scattering_db
        return cls(spreading_db, absorption_db, scattering_db, total, directivity)


def _como_haz(beam):
    return beam if isinstance(beam, BeamSpec) else BeamSpec(beam)


def _como_geometria(geom):
    return geom if isinstance(geom, ChannelGeometry) else ChannelGeometry(geom)


def directivity(beam):
    """
    Directividad de una fuente con haz gaussiano.

    D = 8 / [8/3 − (cosΔθ + cos²Δθ + cos³Δθ/3)], de 24 en Δθ = 0 a 8/3 en Δθ = π.

    Args:
        beam: BeamSpec o ancho de haz en radianes.

    Returns:
        float: Directividad adimensional.
    """
    beam = _como_haz(beam)
    c = np.cos(beam.delta_theta)
    return float(8.0 / (8.0 / 3.0 - (c + c * c + c * c * c / 3.0)))


def spreading_loss(d_directivity, lambda_g, geom):
    """
    Pérdida por dispersión geométrica, -10·log10[D·(λ_g/(4πd))²].

    Puede ser negativa cuando d es comparable a λ_g; el modelo apunta a d >> λ_g.

    Args:
        d_directivity: Directividad D de la antena transmisora.
        lambda_g: Longitud de onda guiada (m).
        geom: ChannelGeometry o distancia en metros.

    Returns:
        float: Pérdida en dB.
    """
    geom = _como_geometria(geom)
    d_directivity = exigir_finito(d_directivity, "directivity")
    lambda_g = exigir_finito(lambda_g, "lambda_g")
    if d_directivity <= 0 or lambda_g <= 0:
        raise ErrorValidacion("la directividad y lambda_g deben ser positivas")
    perdida = float(-10.0 * np.log10(d_directivity * (lambda_g / (4.0 * np.pi * geom.distance)) ** 2))
    if perdida < 0:
        logger.warning(
            "pérdida por dispersión negativa (%.3g dB) en d=%.3g m: régimen fuera de d >> λ_g",
            perdida, geom.distance,
        )
    return perdida


def absorption_loss(mu_abs, geom):
    """
    Pérdida por absorción de Beer-Lambert, -10·log10(e^(-μd)).

    Args:
        mu_abs: Coeficiente de absorción (1/m).
        geom: ChannelGeometry o distancia en metros.

    Returns:
        float: Pérdida en dB.
    """
    geom = _como_geometria(geom)
    mu_abs = exigir_finito(mu_abs, "mu_abs")
    if mu_abs < 0:
        raise ErrorValidacion(f"mu_abs debe ser >= 0, se recibió {mu_abs}")
    return float(DB_POR_NEPER * mu_abs * geom.distance)


def rayleigh_efficiency(psi, n):
    """
    Eficiencia de scattering de Rayleigh, (8/3)·ψ⁴·[Re((n²−1)/(n²+2))]².

    Args:
        psi: Tamaño adimensional ψ = 2πr/λ_g.
        n: Índice de refracción complejo (convención n' − jn'').

    Returns:
        float: Q_small.
    """
    psi = exigir_finito(psi, "psi")
    if psi < 0:
        raise ErrorValidacion(f"psi debe ser >= 0, se recibió {psi}")
    n = complex(n)
    n2 = n * n
    if abs(n2 + 2) <= 2e-12:
        raise ErrorValidacion("n² = -2 es un polo de la eficiencia de Rayleigh")
    factor = ((n2 - 1) / (n2 + 2)).real
    return float((8.0 / 3.0) * psi ** 4 * factor ** 2)


def adt_efficiency(p, sigma_abs, sigma_g):
    """
    Eficiencia de extinción por difracción anómala.

    Q = 2 − (4/p)·sin p + (4/p²)·(1 − cos p) − σ_abs/σ_g. Para p <= 0.1 la
    forma cerrada pierde cifras por cancelación; ahí se usa la serie
    p²/2 − p⁴/36 + p⁶/1440 − p⁸/100800.

    Args:
        p: Desfase a través del centro de la partícula.
        sigma_abs: Sección eficaz de absorción (m²).
        sigma_g: Sección geométrica (m²).

    Returns:
        float: Q_large (puede ser negativo; quien llama decide si recorta).
    """
    p = exigir_finito(p, "p")
    sigma_abs = exigir_finito(sigma_abs, "sigma_abs")
    sigma_g = exigir_finito(sigma_g, "sigma_g")
    if p < 0:
        raise ErrorValidacion(f"el desfase p debe ser >= 0, se recibió {p}")
    if sigma_g <= 0 or sigma_abs < 0:
        raise ErrorValidacion("se requiere sigma_g > 0 y sigma_abs >= 0")
    cociente = sigma_abs / sigma_g
    if p <= UMBRAL_SERIE_ADT:
        p2 = p * p
        serie = sum(c * p2 ** (i + 1) for i, c in enumerate(COEFICIENTES_SERIE_ADT))
        return float(serie - cociente)
    return float(2.0 - (4.0 / p) * np.sin(p) + (4.0 / (p * p)) * (1.0 - np.cos(p)) - cociente)


def scattering_coefficients(pop, optical):
    """
    Coeficientes de scattering μ = ρ_v·Q·σ_g de una población.

    ψ usa λ_g; el desfase p usa λ₀ y la parte real n'. Sólo se evalúa la
    eficiencia de la clase de tamaño de la población; la otra se reporta
    como 0. Una Q_large negativa se recorta a 0 y se marca en el detalle.

    Args:
        pop: ParticlePopulation.
        optical: OpticalState del medio a la frecuencia de trabajo.

    Returns:
        ScatteringDetail: Parámetros intermedios y coeficientes.
    """
    if pop.radius > RADIO_MAXIMO:
        raise ErrorValidacion(
            f"población '{pop.id}': radio {pop.radius} m mayor que {RADIO_MAXIMO} m (¿unidades?)"
        )
    radio = pop.radius
    psi = 2.0 * np.pi * radio / optical.lambda_g
    p = 4.0 * np.pi * radio * (optical.index.n_real - 1.0) / optical.frequency.lambda_0
    densidad = pop.number_density
    sigma_g = pop.geometric_cross_section

    q_small = 0.0
    q_large = 0.0
    recortado = False
    if pop.size_class is SizeClass.SMALL:
        q_small = rayleigh_efficiency(psi, optical.index.as_complex())
    else:
        q_large = adt_efficiency(max(p, 0.0), pop.sigma_abs, sigma_g)
        if q_large < 0:
            logger.warning(
                "población '%s': Q_large negativa (%.3g) recortada a 0", pop.id, q_large
            )
            q_large = 0.0
            recortado = True

    return ScatteringDetail(
        psi=float(psi),
        p=float(p),
        q_small=q_small,
        q_large=q_large,
        mu_small=float(densidad * q_small * sigma_g),
        mu_large=float(densidad * q_large * sigma_g),
        clamped=recortado,
        population_id=pop.id,
    )


def scattering_loss(details, geom):
    """
    Pérdida por scattering, -10·log10(e^(-(μ_small+μ_large)·d)), sumada sobre poblaciones.

    Args:
        details: Lista de ScatteringDetail.
        geom: ChannelGeometry o distancia en metros.

    Returns:
        float: Pérdida en dB (0 sin poblaciones).
    """
    geom = _como_geometria(geom)
    mu_total = 0.0
    for detalle in details:
        if detalle.mu_small < 0 or detalle.mu_large < 0:
            raise ErrorValidacion("los coeficientes de scattering deben ser >= 0")
        mu_total += detalle.mu_small + detalle.mu_large
    return float(DB_POR_NEPER * mu_total * geom.distance)


def _verificar_banda(freq, valid_band):
    if valid_band is None:
        return
    f_min, f_max = valid_band
    if not f_min <= freq.f <= f_max:
        raise ErrorValidacion(
            f"frecuencia {freq.f:.9g} Hz fuera de la banda válida del medio "
            f"[{f_min:.9g}, {f_max:.9g}] Hz"
        )


def evaluate_link(medium, freq, geom, beam, populations=(), valid_band=None,
                  absorption_wavelength=AbsorptionWavelength.GUIDED):
    """
    Evalúa el enlace completo y devuelve también los estados intermedios.

    Returns:
        tuple: (OpticalState, LossBreakdown, list[ScatteringDetail]).
    """
    geom = _como_geometria(geom)
    beam = _como_haz(beam)
    if hasattr(medium, 'debye'):
        # MediumRecord: trae su propia banda
        if valid_band is None:
            valid_band = medium.valid_band
        medium = medium.debye
    _verificar_banda(freq, valid_band)

    optico = optical_state(medium, freq, absorption_wavelength)
    d = directivity(beam)
    detalles = [scattering_coefficients(pop, optico) for pop in populations]

    desglose = LossBreakdown.componer(
        spreading_loss(d, optico.lambda_g, geom),
        absorption_loss(optico.mu_abs, geom),
        scattering_loss(detalles, geom),
        directivity=d,
    )
    return optico, desglose, detalles


def total_path_loss(medium, freq, geom, beam, populations=(), valid_band=None,
                    absorption_wavelength=AbsorptionWavelength.GUIDED):
    """
    Pérdida de trayecto total PL_t = PL_Spr + PL_Abs + PL_Sca.

    Args:
        medium: DebyeParameters del medio, o un MediumRecord de la base de datos.
        freq: FrequencyPoint.
        geom: ChannelGeometry.
        beam: BeamSpec.
        populations: Poblaciones de partículas (puede ser vacía).
        valid_band: (f_min, f_max) del medio en Hz. Con un MediumRecord, None toma
            la banda del registro; con DebyeParameters, None no restringe.
        absorption_wavelength: 'guided' o 'free-space'.

    Returns:
        LossBreakdown: Desglose en dB.
    """
    return evaluate_link(
        medium, freq, geom, beam, populations, valid_band, absorption_wavelength
    )[1]
