"""Numerical engine of FracDG.

Modules here are pure: no file or console I/O, only logging at solver
boundaries.
"""
