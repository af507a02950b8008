"""Exact verification of finite-order Cremona maps in characteristic p."""

__version__ = "0.1.0"
