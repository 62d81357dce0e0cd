"""Zeta-functions of root systems: evaluation, Bernoulli functions and functional relations."""
