"""ilab: computational toolkit for intersective-polynomial difference problems.

Subpackages cover exact polynomial algebra, p-adic root certificates,
auxiliary polynomial families, the derivative-root sieve, sieved exponential
sums, the discrete circle method with a constructive density increment, and
a difference-free set workbench.
"""

__version__ = "0.1.0"
