"""Exact u-expansions of Drinfeld modular forms, their v-adic interpolation,
and Hecke operators on truncated expansions."""

__version__ = "0.1.0"
