"""Exact q-expansions of real-analytic Eisenstein series and their iterated integrals."""

__version__ = "0.1.0"
