"""Command line interface for FracDG."""
