"""Point counts, character sums and p-adic hypergeometric values for a K3 surface family."""

__version__ = "0.1.0"
