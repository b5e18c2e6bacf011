"""Exact bivector fields and Poisson structures on W_{k1,k2} = Tot(O(-k1) + O(-k2))."""

__version__ = "0.1.0"
