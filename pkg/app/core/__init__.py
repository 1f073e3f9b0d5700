# app/core/__init__.py
"""Módulo core con configuración, errores y dependencias base"""
