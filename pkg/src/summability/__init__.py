"""
Summability Lab
===============
A desk-scale numerical laboratory for block summing operators.

Sub-packages:
    - calculus: Exponent arithmetic, block partitions, exponent rules
    - norms: Coefficient tensors, mixed and weak norms, form norms
    - harness: Witness families, inequality checks, reproducible sweeps
"""

__version__ = "1.0.0"
