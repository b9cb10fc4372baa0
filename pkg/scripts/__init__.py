"""Bayesian networks with hidden variables as algebraic varieties."""
