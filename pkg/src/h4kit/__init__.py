"""Exact tools for bounding and certifying degree-four integral cohomology of finite groups."""

__version__ = "0.1.0"
