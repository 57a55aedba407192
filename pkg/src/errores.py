"""
Jerarquía de errores del modelo de canal THz intracorporal.

Los módulos de cálculo lanzan ErrorValidacion cuando se viola una
precondición o un invariante; el cargador de datos lanza ErrorDatos
cuando un archivo no se puede leer o interpretar. La interfaz de línea
de comandos traduce cada familia a su código de salida.
"""

import difflib

import numpy as np


class ErrorCanal(Exception):
    """Base de todos los errores de la biblioteca."""

    codigo_salida = 1


class ErrorValidacion(ErrorCanal, ValueError):
    """Entrada fuera del dominio del modelo o argumento inválido."""

    codigo_salida = 2


class MedioNoEncontrado(ErrorValidacion, KeyError):
    """Identificador de medio o de población de partículas desconocido."""

    def __init__(self, identificador, disponibles, tipo="medio"):
        self.identificador = identificador
        self.disponibles = sorted(disponibles)
        self.tipo = tipo
        sugerencias = difflib.get_close_matches(
            str(identificador).lower(), self.disponibles, n=3, cutoff=0.5
        )
        mensaje = f"{tipo} desconocido: '{identificador}'. Disponibles: {', '.join(self.disponibles) or '(ninguno)'}"
        if sugerencias:
            mensaje += f". ¿Quiso decir: {', '.join(sugerencias)}?"
        super().__init__(mensaje)

    def __str__(self):
        # KeyError pone comillas alrededor del mensaje
        return self.args[0]


class ErrorDatos(ErrorCanal):
    """Problema con un archivo de datos (lectura, sintaxis, campos, duplicados)."""

    codigo_salida = 3

    def __init__(self, mensaje, ruta=None, registro=None, campo=None, linea=None):
        self.ruta = ruta
        self.registro = registro
        self.campo = campo
        self.linea = linea
        partes = []
        if ruta is not None:
            partes.append(str(ruta) + (f":{linea}" if linea is not None else ""))
        if registro is not None:
            partes.append(f"registro '{registro}'")
        if campo is not None:
            partes.append(f"campo '{campo}'")
        prefijo = ", ".join(partes)
        super().__init__(f"{prefijo}: {mensaje}" if prefijo else mensaje)


def exigir_finito(valor, nombre):
    """
    Convierte a float y rechaza NaN o infinitos.

    Args:
        valor: Valor numérico a comprobar.
        nombre: Nombre del parámetro (para el mensaje de error).

    Returns:
        float: El valor convertido.
    """
    try:
        numero = float(valor)
    except (TypeError, ValueError):
        raise ErrorValidacion(f"{nombre} debe ser numérico, se recibió {valor!r}") from None
    if not np.isfinite(numero):
        raise ErrorValidacion(f"{nombre} debe ser finito, se recibió {numero!r}")
    return numero
