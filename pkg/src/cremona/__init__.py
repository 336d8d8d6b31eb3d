"""Exact computational workbench for degree-8 Bertini points over finite
fields, Picard-lattice chamber decompositions, local Sarkisov square
complexes, and the free-product word model with its signature morphism."""

__version__ = "0.1.0"
