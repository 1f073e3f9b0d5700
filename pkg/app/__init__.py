# app/__init__.py
"""
Rabi Spectra Toolkit
Simulación y análisis de espectros del modelo de Rabi con sesgo (qubit de flujo + oscilador LC)
"""

__version__ = "1.0.0"
__author__ = "Juan David Jaramillo Cardenas"
__description__ = "Toolkit para espectros de transmisión del modelo de Rabi cuántico con sesgo"
