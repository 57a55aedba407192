"""
Oráculo de precisión arbitraria (decimal, 50 cifras) para las pruebas.

Reimplementa las fórmulas de forma independiente de numpy para comparar
con la implementación en doble precisión.
"""

from decimal import Decimal, localcontext

PRECISION = 50
PI = Decimal('3.14159265358979323846264338327950288419716939937510')


def permitividad(params, f):
    """(ε', ε'') del modelo de doble Debye a la frecuencia f (Hz)."""
    with localcontext() as ctx:
        ctx.prec = PRECISION
        omega = 2 * PI * Decimal(f)
        wt1 = omega * Decimal(params.tau_1)
        wt2 = omega * Decimal(params.tau_2)
        d1 = Decimal(params.eps_1) - Decimal(params.eps_2)
        d2 = Decimal(params.eps_2) - Decimal(params.eps_inf)
        den1 = 1 + wt1 * wt1
        den2 = 1 + wt2 * wt2
        real = Decimal(params.eps_inf) + d1 / den1 + d2 / den2
        imag = d1 * wt1 / den1 + d2 * wt2 / den2
        return +real, +imag


def indice(eps_real, eps_imag):
    """(n', n'') con las dos ramas de raíz cuadrada."""
    with localcontext() as ctx:
        ctx.prec = PRECISION
        er = Decimal(eps_real)
        ei = Decimal(eps_imag)
        modulo = (er * er + ei * ei).sqrt()
        return ((modulo + er) / 2).sqrt(), ((modulo - er) / 2).sqrt()


def _seno_coseno(x):
    # Serie de Taylor; suficiente para |x| <= 1
    with localcontext() as ctx:
        ctx.prec = PRECISION + 10
        seno = Decimal(0)
        coseno = Decimal(0)
        termino = Decimal(1)
        for k in range(60):
            if k % 4 == 0:
                coseno += termino
            elif k % 4 == 1:
                seno += termino
            elif k % 4 == 2:
                coseno -= termino
            else:
                seno -= termino
            termino = termino * x / (k + 1)
        return seno, coseno


def eficiencia_adt(p, sigma_abs, sigma_g):
    """Forma cerrada de Q_large evaluada con 50 cifras."""
    with localcontext() as ctx:
        ctx.prec = PRECISION
        p = Decimal(p)
        seno, coseno = _seno_coseno(p)
        q = 2 - 4 / p * seno + 4 / (p * p) * (1 - coseno) - Decimal(sigma_abs) / Decimal(sigma_g)
        return +q
