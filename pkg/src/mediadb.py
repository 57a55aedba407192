"""
Base de datos de medios y poblaciones de partículas.

Los parámetros de Debye no están en el código: se cargan desde archivos
JSON y se validan al cargar, de modo que un barrido nunca ve un medio
inválido. Formato de archivo (un objeto por archivo, unidades SI fijas):

    {
      "media": [
        {"id": "water", "display_name": "Agua", "eps_inf": 3.48, "eps_1": 78.36,
         "eps_2": 4.93, "tau_1_s": 8.24e-12, "tau_2_s": 1.8e-13,
         "f_min_hz": 1e11, "f_max_hz": 1e12, "provenance": "..."}
      ],
      "particles": [
        {"id": "red_blood_cell", "radius_m": 4e-6, "volume_fraction": 0.45,
         "sigma_abs_m2": 0.0, "size_class": "small"}
      ]
    }

Ambas claves son opcionales. Los identificadores son [a-z0-9_] y no pueden
repetirse entre archivos.
"""

import json
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType

import numpy as np

from src.dielectrics import DebyeParameters
from src.errores import ErrorDatos, ErrorValidacion, MedioNoEncontrado
from src.pathloss import ParticlePopulation

logger = logging.getLogger(__name__)

DIRECTORIO_DATOS = Path(__file__).resolve().parent.parent / "data"

PATRON_ID = re.compile(r"^[a-z0-9_]+$")

# Orden canónico de campos; también es el esquema completo de cada registro
CAMPOS_MEDIO = (
    "id", "display_name", "eps_inf", "eps_1", "eps_2", "tau_1_s", "tau_2_s",
    "f_min_hz", "f_max_hz", "provenance",
)
CAMPOS_PARTICULA = ("id", "radius_m", "volume_fraction", "sigma_abs_m2", "size_class")
CLAVES_ARCHIVO = ("media", "particles")


@dataclass(frozen=True)
class MediumRecord:
    id: str
    display_name: str
    debye: DebyeParameters
    valid_band: tuple
    provenance: str

    def __post_init__(self):
        if not PATRON_ID.match(self.id or ""):
            raise ErrorValidacion(f"id inválido {self.id!r}: se espera [a-z0-9_]+")
        f_min, f_max = (float(v) for v in self.valid_band)
        if not 0 < f_min < f_max:
            raise ErrorValidacion(f"banda inválida: se requiere 0 < f_min < f_max ({f_min}, {f_max})")
        if not str(self.provenance).strip():
            raise ErrorValidacion("provenance no puede estar vacío")
        object.__setattr__(self, "valid_band", (f_min, f_max))


@dataclass(frozen=True)
class MediumDatabase:
    """Base inmutable; lectores concurrentes no necesitan sincronización."""

    records: MappingProxyType = field(default_factory=lambda: MappingProxyType({}))
    source_paths: tuple = ()
    particles: MappingProxyType = field(default_factory=lambda: MappingProxyType({}))

    @property
    def medium_ids(self):
        return list(self.records)

    @property
    def particle_ids(self):
        return list(self.particles)


def default_data_paths():
    """Archivos de datos incluidos con el proyecto."""
    return [DIRECTORIO_DATOS / "medios.json", DIRECTORIO_DATOS / "particulas.json"]


def _leer_json(ruta):
    try:
        texto = Path(ruta).read_text(encoding="utf-8")
    except OSError as e:
        raise ErrorDatos(f"no se pudo leer el archivo: {e.strerror or e}", ruta=ruta) from None
    try:
        contenido = json.loads(texto)
    except json.JSONDecodeError as e:
        raise ErrorDatos(f"JSON inválido: {e.msg} (columna {e.colno})", ruta=ruta, linea=e.lineno) from None
    if not isinstance(contenido, dict):
        raise ErrorDatos("el archivo debe contener un objeto JSON", ruta=ruta)
    desconocidas = sorted(set(contenido) - set(CLAVES_ARCHIVO))
    if desconocidas:
        raise ErrorDatos(f"claves desconocidas: {', '.join(desconocidas)}", ruta=ruta)
    return contenido


def _campos(objeto, esperados, ruta, tipo, posicion):
    if not isinstance(objeto, dict):
        raise ErrorDatos(f"el {tipo} #{posicion} debe ser un objeto", ruta=ruta)
    registro = objeto.get("id", f"#{posicion}")
    for nombre in esperados:
        if nombre not in objeto:
            raise ErrorDatos("campo obligatorio ausente", ruta=ruta, registro=registro, campo=nombre)
    sobrantes = sorted(set(objeto) - set(esperados))
    if sobrantes:
        raise ErrorDatos("campo desconocido", ruta=ruta, registro=registro, campo=sobrantes[0])
    identificador = objeto["id"]
    if not isinstance(identificador, str) or not PATRON_ID.match(identificador):
        raise ErrorDatos(
            f"id inválido {identificador!r}: se espera [a-z0-9_]+ en minúsculas",
            ruta=ruta, registro=registro, campo="id",
        )
    return identificador


def _numero(objeto, nombre, ruta, registro):
    valor = objeto[nombre]
    if isinstance(valor, bool) or not isinstance(valor, (int, float)) or not np.isfinite(valor):
        raise ErrorDatos(f"se espera un número finito, se encontró {valor!r}",
                         ruta=ruta, registro=registro, campo=nombre)
    return float(valor)


def _texto(objeto, nombre, ruta, registro):
    valor = objeto[nombre]
    if not isinstance(valor, str) or not valor.strip():
        raise ErrorDatos("se espera un texto no vacío", ruta=ruta, registro=registro, campo=nombre)
    return valor


def _medio_desde_json(objeto, ruta, posicion):
    identificador = _campos(objeto, CAMPOS_MEDIO, ruta, "medio", posicion)
    num = {n: _numero(objeto, n, ruta, identificador)
           for n in ("eps_inf", "eps_1", "eps_2", "tau_1_s", "tau_2_s", "f_min_hz", "f_max_hz")}
    try:
        debye = DebyeParameters(
            eps_inf=num["eps_inf"], eps_1=num["eps_1"], eps_2=num["eps_2"],
            tau_1=num["tau_1_s"], tau_2=num["tau_2_s"],
        )
        return MediumRecord(
            id=identificador,
            display_name=_texto(objeto, "display_name", ruta, identificador),
            debye=debye,
            valid_band=(num["f_min_hz"], num["f_max_hz"]),
            provenance=_texto(objeto, "provenance", ruta, identificador),
        )
    except ErrorValidacion as e:
        raise ErrorDatos(f"invariante violado: {e}", ruta=ruta, registro=identificador) from None


def _particula_desde_json(objeto, ruta, posicion):
    identificador = _campos(objeto, CAMPOS_PARTICULA, ruta, "población", posicion)
    try:
        return ParticlePopulation(
            radius=_numero(objeto, "radius_m", ruta, identificador),
            volume_fraction=_numero(objeto, "volume_fraction", ruta, identificador),
            sigma_abs=_numero(objeto, "sigma_abs_m2", ruta, identificador),
            size_class=_texto(objeto, "size_class", ruta, identificador),
            id=identificador,
        )
    except ErrorValidacion as e:
        raise ErrorDatos(f"invariante violado: {e}", ruta=ruta, registro=identificador) from None


def load_database(paths):
    """
    Carga y valida medios y poblaciones desde archivos JSON.

    Args:
        paths: Lista de rutas de archivo (puede estar vacía).

    Returns:
        MediumDatabase: Base validada.
    """
    medios = {}
    particulas = {}
    origen = {}
    rutas = [Path(p) for p in paths]

    for ruta in rutas:
        contenido = _leer_json(ruta)
        for clave, destino, convertir in (
            ("media", medios, _medio_desde_json),
            ("particles", particulas, _particula_desde_json),
        ):
            lista = contenido.get(clave, [])
            if not isinstance(lista, list):
                raise ErrorDatos(f"'{clave}' debe ser una lista", ruta=ruta)
            for posicion, objeto in enumerate(lista):
                registro = convertir(objeto, ruta, posicion)
                if registro.id in destino:
                    raise ErrorDatos(
                        f"id duplicado (ya definido en {origen[(clave, registro.id)]})",
                        ruta=ruta, registro=registro.id,
                    )
                destino[registro.id] = registro
                origen[(clave, registro.id)] = ruta

    if not medios and rutas:
        logger.warning("la base de datos no contiene medios (%s)", ", ".join(map(str, rutas)))
    logger.info("base de datos cargada: %d medios, %d poblaciones desde %d archivos",
                len(medios), len(particulas), len(rutas))
    return MediumDatabase(
        records=MappingProxyType(dict(sorted(medios.items()))),
        source_paths=tuple(rutas),
        particles=MappingProxyType(dict(sorted(particulas.items()))),
    )


def get_medium(db, id):
    """
    Busca un medio por identificador exacto (sensible a mayúsculas).

    Raises:
        MedioNoEncontrado: Si el id no existe; el mensaje lista los disponibles.
    """
    try:
        return db.records[id]
    except KeyError:
        raise MedioNoEncontrado(id, db.records.keys(), tipo="medio") from None


def get_particles(db, id):
    """Busca una población de partículas por identificador."""
    try:
        return db.particles[id]
    except KeyError:
        raise MedioNoEncontrado(id, db.particles.keys(), tipo="población de partículas") from None


def canonical_medium(record):
    """Registro de medio como dict en el orden canónico de campos."""
    valores = (
        record.id, record.display_name,
        record.debye.eps_inf, record.debye.eps_1, record.debye.eps_2,
        record.debye.tau_1, record.debye.tau_2,
        record.valid_band[0], record.valid_band[1], record.provenance,
    )
    return dict(zip(CAMPOS_MEDIO, valores))


def canonical_particle(pop):
    """Población como dict en el orden canónico de campos."""
    valores = (pop.id, pop.radius, pop.volume_fraction, pop.sigma_abs, pop.size_class.value)
    return dict(zip(CAMPOS_PARTICULA, valores))


def serialize_database(db):
    """
    Serialización canónica: registros ordenados por id, orden de campos fijo
    y números en la representación decimal más corta que recupera el mismo float.

    Returns:
        str: Documento JSON terminado en salto de línea.
    """
    documento = {}
    if db.records:
        documento["media"] = [canonical_medium(r) for r in db.records.values()]
    if db.particles:
        documento["particles"] = [canonical_particle(p) for p in db.particles.values()]
    return json.dumps(documento, indent=2, ensure_ascii=False) + "\n"
