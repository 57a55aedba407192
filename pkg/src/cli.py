"""
Interfaz de línea de comandos del modelo de canal THz intracorporal.

Comandos: medium, sweep, figure, attribution, validate. Códigos de salida:
0 éxito, 2 error de uso o validación, 3 problema con archivos de datos.
"""

import argparse
import errno
import json
import logging
import os
import sys
import tempfile
from pathlib import Path

import numpy as np
import pandas as pd

from src.configuracion import ConfiguracionCanal
from src.dielectrics import AbsorptionWavelength, FrequencyPoint, optical_state
from src.errores import ErrorDatos, ErrorValidacion
from src.mediadb import get_medium, get_particles, load_database, serialize_database
from src.pathloss import BeamSpec, ChannelGeometry
from src.sweep import (
    MEDIOS_FIGURAS, SweepAxis, SweepRequest, component_attribution, figure_preset, run_sweep,
)
from src.visualizacion import render_sweep_svg

logger = logging.getLogger(__name__)

FIGURAS = ('fig1', 'fig2', 'fig3', 'fig4')

COLUMNAS_MEDIO = [
    'f_hz', 'lambda0_m', 'eps_real', 'eps_imag', 'n_real', 'n_imag', 'lambda_g_m', 'mu_abs_per_m',
]

SALIDA_ESTANDAR = '-'


def construir_parser():
    """Crea el parser con sus subcomandos."""
    comunes = argparse.ArgumentParser(add_help=False)
    comunes.add_argument('--data', action='append', metavar='RUTA',
                         help='archivo de medios/partículas (repetible; reemplaza THZCHAN_DATA)')
    comunes.add_argument('--config', metavar='RUTA', help='archivo JSON de configuración')
    comunes.add_argument('--format', choices=['csv', 'json', 'svg'], default='csv',
                         help='formato de salida (predeterminado: csv)')
    comunes.add_argument('--out', default=SALIDA_ESTANDAR, metavar='RUTA',
                         help="archivo de salida ('-' = salida estándar)")
    comunes.add_argument('--precision', type=int, help='cifras significativas [3, 17]')
    comunes.add_argument('--absorption-wavelength', choices=[m.value for m in AbsorptionWavelength],
                         help='longitud de onda del coeficiente de absorción')
    comunes.add_argument('--workers', type=int, help='hilos para evaluar barridos')
    comunes.add_argument('-v', '--verbose', action='count', default=0,
                         help='más detalle en el registro (-v, -vv)')

    parser = argparse.ArgumentParser(
        prog='thzchan',
        description='Pérdida de trayecto de canales THz intracorporales (agua, piel, epidermis).',
    )
    sub = parser.add_subparsers(dest='comando', required=True)

    medio = sub.add_parser('medium', parents=[comunes], help='propiedades ópticas de un medio')
    medio.add_argument('medium_id')
    medio.add_argument('--f', action='append', type=float, default=[], metavar='HZ')
    medio.add_argument('--lambda0', action='append', type=float, default=[], metavar='M')
    medio.add_argument('--from', dest='desde', type=float, metavar='HZ')
    medio.add_argument('--to', dest='hasta', type=float, metavar='HZ')
    medio.add_argument('--points', type=int)

    def flags_barrido(p, eje_obligatorio):
        p.add_argument('--axis', choices=[a.value for a in SweepAxis], required=eje_obligatorio)
        p.add_argument('--from', dest='desde', type=float)
        p.add_argument('--to', dest='hasta', type=float)
        p.add_argument('--points', type=int)
        p.add_argument('--f', type=float, metavar='HZ', help='frecuencia fija')
        p.add_argument('--lambda0', type=float, metavar='M', help='longitud de onda fija en el vacío')
        p.add_argument('--distance', type=float, metavar='M', help='distancia fija')
        p.add_argument('--beam', type=float, metavar='RAD', help='ancho de haz fijo')
        p.add_argument('--media', default=','.join(MEDIOS_FIGURAS), help='lista separada por comas')
        p.add_argument('--particles', default='', help='poblaciones de partículas (ids separados por comas)')

    barrido = sub.add_parser('sweep', parents=[comunes], help='barrido unidimensional')
    flags_barrido(barrido, True)

    figura = sub.add_parser('figure', parents=[comunes], help='barrido de una figura predefinida')
    figura.add_argument('name', choices=FIGURAS)
    figura.add_argument('--points', type=int)

    atribucion = sub.add_parser('attribution', parents=[comunes],
                                help='amplitud en dB de la pérdida a lo largo del eje')
    atribucion.add_argument('name', nargs='?', choices=FIGURAS)
    flags_barrido(atribucion, False)

    validar = sub.add_parser('validate', parents=[comunes], help='carga y valida archivos de datos')
    validar.add_argument('--dump', action='store_true', help='imprime la serialización canónica')
    return parser


def configurar_registro(verbosidad):
    nivel = logging.WARNING if verbosidad <= 0 else logging.INFO if verbosidad == 1 else logging.DEBUG
    logging.basicConfig(
        stream=sys.stderr, level=nivel,
        format='%(asctime)s - %(levelname)s - %(name)s - %(message)s',
    )
    logging.getLogger().setLevel(nivel)


def cargar_configuracion(args):
    """Aplica la precedencia predeterminados < archivo < entorno < opciones."""
    config = ConfiguracionCanal()
    if args.config:
        config.cargar_archivo(args.config)
    config.aplicar_entorno()
    return config.actualizar(
        data_paths=args.data,
        precision=args.precision,
        absorption_wavelength=args.absorption_wavelength,
        workers=args.workers,
    )


def _temporal_junto_a(ruta, texto):
    directorio = ruta.parent if str(ruta.parent) else Path('.')
    descriptor, temporal = tempfile.mkstemp(dir=directorio, prefix=f'.{ruta.name}.', suffix='.tmp')
    try:
        with os.fdopen(descriptor, 'w', encoding='utf-8', newline='\n') as f:
            f.write(texto)
    except BaseException:
        os.unlink(temporal)
        raise
    return temporal


def escribir_salidas(salidas):
    """
    Escribe todas las salidas o ninguna.

    Cada texto va primero a un temporal junto a su destino y sólo cuando
    todos están listos se renombran. Si algo falla se borran los temporales
    y los archivos ya renombrados.

    Args:
        salidas: Lista de pares (texto, destino); destino '-' es la salida estándar.

    Raises:
        ErrorValidacion: Si algún destino no se puede escribir.
    """
    archivos = [(texto, Path(destino)) for texto, destino in salidas if destino != SALIDA_ESTANDAR]
    temporales = []
    escritos = []
    ruta = None
    try:
        for texto, ruta in archivos:
            if ruta.is_dir():
                raise IsADirectoryError(errno.EISDIR, os.strerror(errno.EISDIR), str(ruta))
            temporales.append((_temporal_junto_a(ruta, texto), ruta))
        for temporal, ruta in temporales:
            os.replace(temporal, ruta)
            escritos.append(ruta)
    except BaseException as e:
        for temporal, _ in temporales:
            if os.path.exists(temporal):
                os.unlink(temporal)
        for escrito in escritos:
            escrito.unlink(missing_ok=True)
        if isinstance(e, OSError):
            raise ErrorValidacion(f"no se pudo escribir la salida en {ruta}: {e.strerror or e}") from None
        raise
    for ruta in escritos:
        logger.info("salida escrita en %s", ruta)
    for texto, destino in salidas:
        if destino == SALIDA_ESTANDAR:
            sys.stdout.write(texto)
            sys.stdout.flush()


def tabla_csv(tabla, precision):
    """CSV con cabecera, separador '.' y fin de línea '\\n' independientes del locale."""
    return tabla.to_csv(index=False, float_format=f'%.{precision}g', lineterminator='\n')


def _redondear(valor, precision):
    if isinstance(valor, (float, np.floating)):
        return float(format(float(valor), f'.{precision}g'))
    if isinstance(valor, np.integer):
        return int(valor)
    if isinstance(valor, dict):
        return {k: _redondear(v, precision) for k, v in valor.items()}
    if isinstance(valor, (list, tuple)):
        return [_redondear(v, precision) for v in valor]
    return valor


def documento_json(peticion, tabla, precision):
    """Objeto {request, rows} con números a la precisión pedida."""
    filas = tabla.to_dict(orient='records')
    documento = {'request': peticion, 'rows': filas}
    return json.dumps(_redondear(documento, precision), indent=2, ensure_ascii=False) + '\n'


def _rejilla(desde, hasta, puntos, nombre):
    if desde is None or hasta is None:
        raise ErrorValidacion(f"{nombre}: se requieren --from y --to")
    if puntos is None:
        raise ErrorValidacion(f"{nombre}: se requiere --points")
    if puntos < 1:
        raise ErrorValidacion(f"--points debe ser positivo, se recibió {puntos}")
    return [float(v) for v in np.linspace(desde, hasta, puntos)]


def cmd_medium(args, config, db):
    """Tabla de estados ópticos de un medio en las frecuencias pedidas."""
    if args.format == 'svg':
        raise ErrorValidacion("el comando medium no admite --format svg")
    registro = get_medium(db, args.medium_id)
    frecuencias = [FrequencyPoint(f) for f in args.f]
    frecuencias += [FrequencyPoint.from_wavelength(l) for l in args.lambda0]
    if args.desde is not None or args.hasta is not None:
        frecuencias += [FrequencyPoint(f) for f in _rejilla(args.desde, args.hasta, args.points, 'medium')]
    if not frecuencias:
        raise ErrorValidacion("indique al menos una frecuencia (--f, --lambda0 o --from/--to/--points)")

    f_min, f_max = registro.valid_band
    filas = []
    for freq in frecuencias:
        if not f_min <= freq.f <= f_max:
            raise ErrorValidacion(
                f"frecuencia {freq.f!r} Hz fuera de la banda de '{registro.id}' [{f_min:.9g}, {f_max:.9g}] Hz"
            )
        estado = optical_state(registro.debye, freq, config.absorption_wavelength)
        filas.append({
            'f_hz': freq.f,
            'lambda0_m': freq.lambda_0,
            'eps_real': estado.permittivity.eps_real,
            'eps_imag': estado.permittivity.eps_imag,
            'n_real': estado.index.n_real,
            'n_imag': estado.index.n_imag,
            'lambda_g_m': estado.lambda_g,
            'mu_abs_per_m': estado.mu_abs,
        })
    tabla = pd.DataFrame(filas, columns=COLUMNAS_MEDIO)
    if args.format == 'json':
        peticion = {'medium': registro.id, 'frequencies_hz': [f.f for f in frecuencias],
                    'absorption_wavelength': config.absorption_wavelength.value}
        return documento_json(peticion, tabla, config.precision)
    return tabla_csv(tabla, config.precision)


def peticion_desde_flags(args, config, db):
    """Construye un SweepRequest a partir de las opciones de sweep/attribution."""
    eje = SweepAxis(args.axis)
    puntos = args.points if args.points is not None else config.grid_points
    rejilla = _rejilla(args.desde, args.hasta, puntos, eje.value)

    fijas = {
        SweepAxis.FREQUENCY: [('--f', args.f), ('--lambda0', args.lambda0)],
        SweepAxis.DISTANCE: [('--distance', args.distance)],
        SweepAxis.BEAM_WIDTH: [('--beam', args.beam)],
    }
    conflictos = [nombre for nombre, valor in fijas[eje] if valor is not None]
    if conflictos:
        raise ErrorValidacion(f"{', '.join(conflictos)} fija el eje barrido ({eje.value}); quítelo o cambie --axis")

    frecuencia = None
    if args.f is not None and args.lambda0 is not None:
        raise ErrorValidacion("use --f o --lambda0, no ambos")
    if args.f is not None:
        frecuencia = FrequencyPoint(args.f)
    elif args.lambda0 is not None:
        frecuencia = FrequencyPoint.from_wavelength(args.lambda0)
    geometria = ChannelGeometry(args.distance) if args.distance is not None else None
    haz = BeamSpec(args.beam) if args.beam is not None else None

    medios = [m.strip() for m in args.media.split(',') if m.strip()]
    poblaciones = [get_particles(db, p.strip()) for p in args.particles.split(',') if p.strip()]
    return SweepRequest(
        medium_ids=medios, axis=eje, grid=rejilla,
        frequency=frecuencia, geometry=geometria, beam=haz,
        populations=poblaciones,
    )


def _emitir_barrido(resultado, formato, precision):
    if formato == 'svg':
        return render_sweep_svg(resultado)
    tabla = resultado.to_frame()
    if formato == 'json':
        return documento_json(resultado.request_dict(), tabla, precision)
    return tabla_csv(tabla, precision)


def _ejecutar(peticion, config, db):
    return run_sweep(peticion, database=db, workers=config.workers,
                     absorption_wavelength=config.absorption_wavelength)


def cmd_sweep(args, config, db):
    """Barrido definido por opciones."""
    resultado = _ejecutar(peticion_desde_flags(args, config, db), config, db)
    return _emitir_barrido(resultado, args.format, config.precision)


def cmd_figure(args, config, db):
    """Barrido de una figura predefinida; con svg y --out también deja el CSV al lado."""
    puntos = args.points if args.points is not None else config.grid_points
    resultado = _ejecutar(figure_preset(args.name, puntos), config, db)
    texto = _emitir_barrido(resultado, args.format, config.precision)
    if args.format == 'svg' and args.out != SALIDA_ESTANDAR:
        csv = tabla_csv(resultado.to_frame(), config.precision)
        return [(texto, args.out), (csv, str(Path(args.out).with_suffix('.csv')))]
    return texto


def cmd_attribution(args, config, db):
    """Amplitud en dB por medio del barrido de una figura o de opciones."""
    if args.format == 'svg':
        raise ErrorValidacion("el comando attribution no admite --format svg")
    if args.name:
        puntos = args.points if args.points is not None else config.grid_points
        peticion = figure_preset(args.name, puntos)
    elif args.axis:
        peticion = peticion_desde_flags(args, config, db)
    else:
        raise ErrorValidacion("indique una figura (fig1..fig4) o las opciones de barrido (--axis ...)")
    resultado = _ejecutar(peticion, config, db)
    tabla = component_attribution(resultado)
    if args.format == 'json':
        return documento_json(resultado.request_dict(), tabla, config.precision)
    return tabla_csv(tabla, config.precision)


def cmd_validate(args, config, db):
    """Resumen de la base de datos cargada."""
    if args.dump:
        return serialize_database(db)
    lineas = [f"archivo: {ruta}" for ruta in db.source_paths]
    lineas.append(f"medios: {len(db.records)} ({', '.join(db.medium_ids)})")
    lineas.append(f"poblaciones: {len(db.particles)} ({', '.join(db.particle_ids)})")
    return '\n'.join(lineas) + '\n'


COMANDOS = {
    'medium': cmd_medium,
    'sweep': cmd_sweep,
    'figure': cmd_figure,
    'attribution': cmd_attribution,
    'validate': cmd_validate,
}


def main(argv=None):
    """
    Punto de entrada de la línea de comandos.

    Args:
        argv: Argumentos (por defecto sys.argv[1:]).

    Returns:
        int: Código de salida.
    """
    parser = construir_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    configurar_registro(args.verbose)
    try:
        config = cargar_configuracion(args)
        db = load_database(config.data_paths)
        salida = COMANDOS[args.comando](args, config, db)
        escribir_salidas(salida if isinstance(salida, list) else [(salida, args.out)])
    except ErrorDatos as e:
        print(f"error: {e}", file=sys.stderr)
        return ErrorDatos.codigo_salida
    except ErrorValidacion as e:
        print(f"error: {e}", file=sys.stderr)
        return ErrorValidacion.codigo_salida
    return 0
