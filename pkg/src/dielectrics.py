"""
Modelo dieléctrico de doble Debye para medios intracorporales en THz.

Evalúa la permitividad compleja ε = ε' − jε'' de un medio a partir de sus
cinco constantes de relajación y deriva el índice de refracción complejo,
la longitud de onda guiada y el coeficiente de absorción molecular.

Convención de signos: ε'' y n'' se guardan como magnitudes no negativas;
el signo −j es sólo notación.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy import constants

from src.errores import ErrorValidacion, exigir_finito

logger = logging.getLogger(__name__)

# Velocidad de la luz en el vacío (m/s), valor exacto del SI
C = constants.c


class AbsorptionWavelength(str, Enum):
    """Longitud de onda usada en el denominador del coeficiente de absorción."""

    GUIDED = "guided"
    FREE_SPACE = "free-space"

    @classmethod
    def desde_texto(cls, valor):
        """
        Interpreta un valor de configuración ('guided' o 'free-space').

        Args:
            valor: Texto o miembro del enum.

        Returns:
            AbsorptionWavelength: Miembro correspondiente.
        """
        if isinstance(valor, cls):
            return valor
        try:
            return cls(str(valor).strip().lower())
        except ValueError:
            opciones = ", ".join(m.value for m in cls)
            raise ErrorValidacion(
                f"absorption-wavelength inválido: {valor!r} (opciones: {opciones})"
            ) from None


@dataclass(frozen=True)
class DebyeParameters:
    """
    Constantes del modelo de doble Debye.

    Attributes:
        eps_inf: Permitividad a frecuencia infinita ε∞.
        eps_1: Permitividad estática ε₁.
        eps_2: Permitividad intermedia ε₂.
        tau_1: Tiempo de relajación lento τ₁ (s).
        tau_2: Tiempo de relajación rápido τ₂ (s).
    """

    eps_inf: float
    eps_1: float
    eps_2: float
    tau_1: float
    tau_2: float

    def __post_init__(self):
        for nombre in ("eps_inf", "eps_1", "eps_2", "tau_1", "tau_2"):
            object.__setattr__(self, nombre, exigir_finito(getattr(self, nombre), nombre))
        for nombre in ("tau_1", "tau_2"):
            if getattr(self, nombre) <= 0:
                raise ErrorValidacion(f"{nombre} debe ser positivo, se recibió {getattr(self, nombre)}")
        if self.eps_inf < 1:
            raise ErrorValidacion(f"eps_inf debe ser >= 1, se recibió {self.eps_inf}")
        if not self.eps_1 >= self.eps_2 >= self.eps_inf:
            raise ErrorValidacion(
                "se requiere eps_1 >= eps_2 >= eps_inf "
                f"(eps_1={self.eps_1}, eps_2={self.eps_2}, eps_inf={self.eps_inf})"
            )


@dataclass(frozen=True)
class FrequencyPoint:
    """Frecuencia de operación con ω y λ₀ derivadas."""

    f: float
    omega: float = field(init=False)
    lambda_0: float = field(init=False)

    def __post_init__(self):
        f = exigir_finito(self.f, "f")
        if f <= 0:
            raise ErrorValidacion(f"la frecuencia debe ser positiva, se recibió {f}")
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "omega", 2 * np.pi * f)
        object.__setattr__(self, "lambda_0", C / f)

    @classmethod
    def from_wavelength(cls, lambda_0):
        """
        Construye el punto de frecuencia a partir de la longitud de onda en el vacío.

        Args:
            lambda_0: Longitud de onda en el vacío (m).

        Returns:
            FrequencyPoint: Punto con f = c/λ₀.
        """
        lambda_0 = exigir_finito(lambda_0, "lambda_0")
        if lambda_0 <= 0:
            raise ErrorValidacion(f"lambda_0 debe ser positiva, se recibió {lambda_0}")
        return cls(C / lambda_0)


@dataclass(frozen=True)
class ComplexPermittivity:
    eps_real: float
    eps_imag: float

    def __post_init__(self):
        object.__setattr__(self, "eps_real", exigir_finito(self.eps_real, "eps_real"))
        object.__setattr__(self, "eps_imag", exigir_finito(self.eps_imag, "eps_imag"))
        if self.eps_imag < 0:
            raise ErrorValidacion(f"eps_imag debe ser >= 0 (medio pasivo), se recibió {self.eps_imag}")


@dataclass(frozen=True)
class RefractiveIndex:
    n_real: float
    n_imag: float

    def __post_init__(self):
        object.__setattr__(self, "n_real", exigir_finito(self.n_real, "n_real"))
        object.__setattr__(self, "n_imag", exigir_finito(self.n_imag, "n_imag"))
        if self.n_real < 0 or self.n_imag < 0:
            raise ErrorValidacion("n_real y n_imag deben ser >= 0")

    def as_complex(self):
        """Índice como número complejo n' − jn''."""
        return complex(self.n_real, -self.n_imag)


@dataclass(frozen=True)
class OpticalState:
    """Magnitudes derivadas de un medio a una frecuencia."""

    frequency: FrequencyPoint
    permittivity: ComplexPermittivity
    index: RefractiveIndex
    lambda_g: float
    mu_abs: float
    absorption_wavelength: AbsorptionWavelength = AbsorptionWavelength.GUIDED


def complex_permittivity(params, freq):
    """
    Evalúa la permitividad compleja del modelo de doble Debye.

    Args:
        params: DebyeParameters del medio.
        freq: FrequencyPoint de evaluación.

    Returns:
        ComplexPermittivity: Partes real ε' e imaginaria ε''.
    """
    wt1 = freq.omega * params.tau_1
    wt2 = freq.omega * params.tau_2
    delta_1 = params.eps_1 - params.eps_2
    delta_2 = params.eps_2 - params.eps_inf
    den_1 = 1.0 + wt1 * wt1
    den_2 = 1.0 + wt2 * wt2

    eps_real = params.eps_inf + delta_1 / den_1 + delta_2 / den_2
    eps_imag = delta_1 * wt1 / den_1 + delta_2 * wt2 / den_2
    return ComplexPermittivity(float(eps_real), float(eps_imag))


def refractive_index(eps):
    """
    Índice de refracción complejo tal que (n' − jn'')² = ε' − jε''.

    n' usa la rama conjugada sqrt((|ε| + ε')/2). n'' se calcula como
    ε''/(2n'), que es algebraicamente sqrt((|ε| − ε')/2) pero sin la
    cancelación que sufre esa forma cuando ε'' << ε'.

    Args:
        eps: ComplexPermittivity con ε' >= 0.

    Returns:
        RefractiveIndex: Partes real e imaginaria, ambas no negativas.
    """
    if eps.eps_real < 0:
        raise ErrorValidacion(
            f"eps_real negativo ({eps.eps_real}) está fuera de la validez del modelo"
        )
    modulo = np.hypot(eps.eps_real, eps.eps_imag)
    n_real = np.sqrt((modulo + eps.eps_real) / 2.0)
    if n_real > 0:
        n_imag = eps.eps_imag / (2.0 * n_real)
    else:
        n_imag = np.sqrt((modulo - eps.eps_real) / 2.0)
    return RefractiveIndex(float(n_real), float(n_imag))


def guided_wavelength(freq, index):
    """
    Longitud de onda dentro del medio, λ_g = λ₀/n'.

    Args:
        freq: FrequencyPoint.
        index: RefractiveIndex con n' > 0.

    Returns:
        float: λ_g en metros.
    """
    if index.n_real <= 0:
        raise ErrorValidacion("n_real debe ser positivo para calcular la longitud de onda guiada")
    return freq.lambda_0 / index.n_real


def absorption_coefficient(index, lambda_g, absorption_wavelength=AbsorptionWavelength.GUIDED,
                           lambda_0=None):
    """
    Coeficiente de absorción molecular μ = 4πn''/λ.

    Args:
        index: RefractiveIndex del medio.
        lambda_g: Longitud de onda guiada (m).
        absorption_wavelength: 'guided' usa λ_g; 'free-space' usa λ₀.
        lambda_0: Longitud de onda en el vacío (m), obligatoria con 'free-space'.

    Returns:
        float: μ_abs en 1/m.
    """
    modo = AbsorptionWavelength.desde_texto(absorption_wavelength)
    if modo is AbsorptionWavelength.FREE_SPACE:
        if lambda_0 is None:
            raise ErrorValidacion("el modo free-space requiere lambda_0")
        denominador = exigir_finito(lambda_0, "lambda_0")
    else:
        denominador = exigir_finito(lambda_g, "lambda_g")
    if denominador <= 0:
        raise ErrorValidacion(f"la longitud de onda debe ser positiva, se recibió {denominador}")
    return float(4.0 * np.pi * index.n_imag / denominador)


def optical_state(params, freq, absorption_wavelength=AbsorptionWavelength.GUIDED):
    """
    Encadena Debye → índice → λ_g → μ_abs para un medio y una frecuencia.

    Args:
        params: DebyeParameters del medio.
        freq: FrequencyPoint.
        absorption_wavelength: Convención para el denominador de μ_abs.

    Returns:
        OpticalState: Estado óptico completo.
    """
    modo = AbsorptionWavelength.desde_texto(absorption_wavelength)
    eps = complex_permittivity(params, freq)
    index = refractive_index(eps)
    lambda_g = guided_wavelength(freq, index)
    mu_abs = absorption_coefficient(index, lambda_g, modo, lambda_0=freq.lambda_0)
    logger.debug(
        "f=%.6g Hz: eps=(%.6g, %.6g) n=(%.6g, %.6g) lambda_g=%.6g m mu_abs=%.6g 1/m",
        freq.f, eps.eps_real, eps.eps_imag, index.n_real, index.n_imag, lambda_g, mu_abs,
    )
    return OpticalState(freq, eps, index, lambda_g, mu_abs, modo)
