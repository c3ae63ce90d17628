"""Finite monoids, omega-term identities and the word congruences behind R v L = W."""

__version__ = "0.1.0"
