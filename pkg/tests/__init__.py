# tests/__init__.py
"""
Paquete de pruebas del toolkit de espectros de Rabi
"""