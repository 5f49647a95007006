"""
Exact arithmetic for free-field vertex operator algebras.

Heisenberg, lattice, Weyl (symplectic fermion) and twisted-module states
with vertex modes, Virasoro data, C_1 ranks and q-characters.
"""

__version__ = "1.0.0"
