"""Fast time-stepping discontinuous Galerkin methods for subdiffusion."""
