"""Toffoli-gate decomposition with step-decreasing shaped structures."""
