"""dahakit: exact-arithmetic verification kernel for double affine Hecke
algebras on small root systems."""

__version__ = "0.1.0"
