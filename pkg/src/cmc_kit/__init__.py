"""Boundary-curve identities of constant mean curvature discs.

Catalog surfaces (``surfaces``), boundary Darboux-frame profiles
(``boundary``), the Hopf differential (``hopf``), integral/Fourier/flux
identities and umbilicity classification (``identities``) and ruled support
surfaces for capillary configurations (``capillary``).
"""

__version__ = "0.1.0"
