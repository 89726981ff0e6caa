"""Services package for FracDG."""
