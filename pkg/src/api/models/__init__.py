"""
JSON models for the box-ball toolkit
"""
