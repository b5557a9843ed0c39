"""Hessenberg varieties of codimension one: pavings, point counts, patches."""

__version__ = "0.1.0"
