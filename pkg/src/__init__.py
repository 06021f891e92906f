"""
orbitforge: admissible diagrams, orbit ideal generators and finite-field orbit checks
for coadjoint orbits of the unitriangular group attached to involutions
"""

__version__ = "0.1.0"
__author__ = "orbitforge developers"
