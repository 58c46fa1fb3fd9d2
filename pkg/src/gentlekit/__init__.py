"""Exact computations for graded gentle algebras, their marked surfaces and
the perfect derived categories they present.

Modules
-------
core       graded quivers, gentle presentations, path bases
surface    arc systems, surface invariants, line-field winding numbers
homcalc    twisted complexes, string objects, graded Hom by exact linear algebra
dercat     K0 and Euler forms, exceptional and semiorthogonal checks, generation, searches
scenarios  the built-in verification scenarios
io         JSON readers and writers
cli        the ``gentlekit`` command
"""

__version__ = "0.1.0"
