"""Exception hierarchy shared by the whole package.

The CLI maps these onto process exit codes: input or invariant violations
exit 2, failed numerical certification exits 3, exhausted searches exit 4.
"""


class LatticeInputError(ValueError):
    """Malformed or contract-violating input (bad Gram, dimension mismatch)."""


class InvarianceError(LatticeInputError):
    """A sublattice handed to a restriction is not invariant under the map."""


class CertificationError(RuntimeError):
    """Interval certification did not converge within its iteration budget."""


class SearchExhaustedError(RuntimeError):
    """An enumeration finished its budget without producing a witness."""
