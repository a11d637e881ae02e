"""
Brute-force oracle and verification suites
"""
