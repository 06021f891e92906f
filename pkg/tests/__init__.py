"""
orbitforge test suite
"""
