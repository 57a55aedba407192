"""
Módulo para la visualización de barridos de pérdida de trayecto en SVG.
"""

import io

import matplotlib
from matplotlib.backends.backend_svg import FigureCanvasSVG
from matplotlib.figure import Figure

from src.sweep import SweepAxis

# Paleta fija: el color depende sólo de la posición del medio en la petición
PALETA = ['#1f77b4', '#d62728', '#2ca02c', '#ff7f0e', '#9467bd', '#8c564b', '#e377c2', '#7f7f7f']

# 800×600 unidades de usuario en el viewBox (matplotlib escribe en puntos de 1/72 in)
ANCHO_PT = 800
ALTO_PT = 600

ETIQUETAS_EJE = {
    SweepAxis.FREQUENCY: 'Longitud de onda en el medio λ_g (µm)',
    SweepAxis.DISTANCE: 'Distancia d (mm)',
    SweepAxis.BEAM_WIDTH: 'Ancho de haz gaussiano Δθ (rad)',
}


def _valores_x(axis, grupo):
    if axis is SweepAxis.FREQUENCY:
        return grupo['lambda_g_m'] * 1e6
    if axis is SweepAxis.DISTANCE:
        return grupo['distance_m'] * 1e3
    return grupo['delta_theta_rad']


def titulo_barrido(request):
    """Título con los parámetros fijos del barrido."""
    partes = []
    if request.axis is not SweepAxis.FREQUENCY:
        partes.append(f"λ₀ = {request.frequency.lambda_0 * 1e3:.3g} mm")
    if request.axis is not SweepAxis.DISTANCE:
        partes.append(f"d = {request.geometry.distance * 1e3:.3g} mm")
    if request.axis is not SweepAxis.BEAM_WIDTH:
        partes.append(f"Δθ = {request.beam.delta_theta:.3g} rad")
    prefijo = f"{request.name}: " if request.name else ""
    return f"{prefijo}Pérdida de trayecto, " + ", ".join(partes)


def generar_grafico_barrido(result, titulo=None):
    """
    Genera la figura de pérdida total frente al eje barrido.

    Args:
        result: SweepResult.
        titulo: Título opcional (por defecto, los parámetros fijos).

    Returns:
        Figure: Figura de matplotlib, una serie por medio.
    """
    fig = Figure(figsize=(ANCHO_PT / 72, ALTO_PT / 72))
    ax = fig.add_subplot(111)
    tabla = result.to_frame()
    axis = result.request.axis

    for posicion, medio in enumerate(result.request.medium_ids):
        grupo = tabla[tabla['medium'] == medio]
        ax.plot(_valores_x(axis, grupo), grupo['total_db'],
                color=PALETA[posicion % len(PALETA)], linewidth=2, label=medio)

    ax.set_title(titulo or titulo_barrido(result.request), fontsize=14)
    ax.set_xlabel(ETIQUETAS_EJE[axis], fontsize=12)
    ax.set_ylabel('Pérdida de trayecto total PL_t (dB)', fontsize=12)
    ax.grid(True, linestyle='--', alpha=0.7)
    ax.legend()
    fig.tight_layout()
    return fig


def render_sweep_svg(result, titulo=None):
    """
    Documento SVG autocontenido del barrido; mismo resultado, mismos bytes.

    Args:
        result: SweepResult.
        titulo: Título opcional.

    Returns:
        str: Documento SVG.
    """
    with matplotlib.rc_context({'svg.hashsalt': 'thz-intrabody', 'svg.fonttype': 'path'}):
        fig = generar_grafico_barrido(result, titulo)
        FigureCanvasSVG(fig)
        buffer = io.StringIO()
        fig.savefig(buffer, format='svg', metadata={'Date': None})
    return buffer.getvalue()
