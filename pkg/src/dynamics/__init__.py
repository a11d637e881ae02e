"""
Crystals, the combinatorial R-matrix and time evolutions of the periodic box-ball system
"""
