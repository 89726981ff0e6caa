"""Data models for FracDG."""
