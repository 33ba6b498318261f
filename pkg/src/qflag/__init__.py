"""qflag: exact verification of quantum flag manifold projection identities,
twisted homology cycles, and their classical Kähler limits.

All arithmetic is exact: symbolic Laurent fractions in s = q^(1/2), or plain
rationals once q is fixed.  Nothing here is numerical.
"""

__version__ = "0.1.0"
