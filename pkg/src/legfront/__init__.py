"""Legendrian front diagrams and their differential graded algebra invariants.

The package is organised in layers:

* :mod:`legfront.algebra` -- exact arithmetic in free noncommutative algebras
  over rings of Laurent monomials, plus one-variable Laurent polynomials.
* :mod:`legfront.front` -- validated event encodings of front diagrams and
  their classical invariants.
* :mod:`legfront.moves` -- local rewrites (Reidemeister-type moves), random
  isotopies and normalisation to simple position.
* :mod:`legfront.dga` -- gradings, admissible-disk enumeration and the full
  differential graded algebra of a front, with coefficient bookkeeping.
* :mod:`legfront.invariants` -- augmentations, linearised Poincare
  polynomials of order one and two, and the split refinement for links.
* :mod:`legfront.charalg` -- the characteristic algebra over GF(2) with
  rewriting, probes, invertibility certificates and comparison verdicts.
* :mod:`legfront.corpus` -- bundled example fronts and algebras.
* :mod:`legfront.cli` -- the ``legfront`` command-line tool.
"""

__version__ = "0.1.0"
