"""Carmichael number enumeration, verification and statistics toolkit."""

__version__ = "0.1.0"

from .catalog import Catalog, merge, read_catalog, write_catalog
from .enumerator import (
    EnumerationConfig,
    PrefixState,
    enumerate_carmichael,
    max_factor_count,
)
from .extremal import RecordSet, kform_check, scan_records, smallest_with_factors
from .korselt import CarmichaelEntry, fermat_scan, is_carmichael, korselt_check
from .primes import Factorization, factorize, is_prime, prime_sieve

__all__ = [
    "__version__",
    "Catalog",
    "CarmichaelEntry",
    "EnumerationConfig",
    "Factorization",
    "PrefixState",
    "RecordSet",
    "enumerate_carmichael",
    "factorize",
    "fermat_scan",
    "is_carmichael",
    "is_prime",
    "kform_check",
    "korselt_check",
    "max_factor_count",
    "merge",
    "prime_sieve",
    "read_catalog",
    "scan_records",
    "smallest_with_factors",
    "write_catalog",
]
