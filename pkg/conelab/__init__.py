"""
Exact lattice computations for symplectic and Kähler cones of b+ = 1 surfaces
"""

__version__ = "0.1.0"
