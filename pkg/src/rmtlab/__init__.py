"""rmtlab: a numerical laboratory for non-Hermitian random matrices.

Samples i.i.d.-entry ensembles, measures their spectra against the
uniform unit-disk limit, studies extreme singular values and
anti-concentration of weighted sums, and packages everything as
seed-reproducible experiments with deterministic CSV/SVG outputs.
"""

__version__ = "0.1.0"
