"""
Cremona Smoothing Verifier
==========================

Exact integer verification of the lattice, intersection and topological
computations behind a family of non-Kahler Calabi-Yau manifolds X(m)
obtained by smoothing a normal crossing union X1 U X2.

Core Features:
- Cremona reflections on the Picard lattice Z^{1,9} of a rational elliptic surface
- Closed-form and iterative pullbacks phi_m^*h
- (-1)-class enumeration and Nakai-Moishezon ampleness certificates
- d-semistability and Smith normal form Betti numbers of the SNC variety
- Euler numbers of every stratum and of the smoothing
- Deterministic JSON/CSV reports and a one-shot verification suite
"""

__version__ = "1.0.0"
__author__ = "Cremona Smoothing Team"
__description__ = "Cremona Smoothing Verifier"
