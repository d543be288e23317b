"""
contact-thermo: contact-geometric models of isolated thermodynamic systems
with energy-preserving and variational integrators.
"""

__version__ = "0.3.0"
