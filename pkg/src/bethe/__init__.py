"""
String center equations, counting formulas and periods
"""
