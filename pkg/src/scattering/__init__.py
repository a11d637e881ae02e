"""
KKR bijection, angle variables and the inverse scattering transform
"""
