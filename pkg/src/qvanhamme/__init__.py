"""Exact verification lab for cubic q-supercongruences and their p-adic counterparts."""

__version__ = "0.1.0"
