"""SL(2,C) Casson knot invariant toolkit."""

__version__ = "0.1.0"
