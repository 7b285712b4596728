"""Exact vertex-isoperimetry toolkit for hypercubes and Hamming balls."""

__version__ = "0.1.0"
