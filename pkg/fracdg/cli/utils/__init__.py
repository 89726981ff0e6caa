"""Helpers shared by the FracDG commands."""
