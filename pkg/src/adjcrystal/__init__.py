"""Level-1 crystals of type A_n^(1): Young walls, perfect-crystal paths and
kernel filtrations of nilpotent cyclic-quiver representations."""

__version__ = "0.1.0"
