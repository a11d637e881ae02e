"""
Data models for the box-ball toolkit
"""
