"""
Initialize main package
"""
