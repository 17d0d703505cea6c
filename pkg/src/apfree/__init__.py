"""AP-free sets, grid-free liftings and extremal search."""

__version__ = "0.1.0"
