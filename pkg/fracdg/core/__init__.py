"""Core module for FracDG."""
