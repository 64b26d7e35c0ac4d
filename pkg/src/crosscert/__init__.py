"""Certified separation of Hausdorff content and continuous analytic capacity
for a triadic cross-product compact set."""

__version__ = "0.1.0"
