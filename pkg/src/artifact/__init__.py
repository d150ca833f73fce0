"""Exact computations for Z3-orbifolds of lattice vertex operator algebras built from codes.

Modules:

* ``scalars``: cyclotomic numbers in Q(zeta_24) and truncated q-series.
* ``codes``: K-codes (Klein four-group alphabet) and ternary codes.
* ``lattice``: glued lattices L_(C x D), Gram data and theta series.
* ``groups``: central extensions of the lattice and the lifts of tau and theta.
* ``twisted_rep``: the twisted group representations T_eta.
* ``fock``: untwisted and twisted vertex operators on Fock spaces.
* ``characters``: module labels, catalogs and characters.
* ``fusion``: fusion rules as label rings.
* ``verify``: brute-force checks of the combinatorial identities.
* ``cli``: the ``artifact`` command.
"""

__version__ = "0.1.0"
