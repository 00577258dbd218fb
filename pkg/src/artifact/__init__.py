"""Exact-arithmetic and numerical verification toolkit for automorphic
period computations: enveloping-algebra identities, star products,
unramified Whittaker and Hecke data, matrix counting, an SL(2)
Eisenstein wave-packet experiment and exponent bookkeeping."""

__version__ = "0.1.0"
