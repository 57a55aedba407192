"""
Aplicación principal del modelo de pérdida de trayecto THz intracorporal.
Este módulo delega en la interfaz de línea de comandos.
"""

import os
import sys

import matplotlib
matplotlib.use('Agg')  # Sin pantalla: las figuras sólo se exportan

# Añadir el directorio raíz al path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from src.cli import main

if __name__ == "__main__":
    sys.exit(main())
