from .core import (
    DENSITY_CAP,
    DIFFERENCE_FAMILIES,
    FAMILY_NAMES,
    POSITIVE_FAMILIES,
    TABLE_FAMILIES,
    DistributionSpec,
    cdf,
    exponents,
    get_family,
    log_pdf,
    pdf,
    power_transform,
    sample,
)
from .reports import ExponentReport

__all__ = [
    "DENSITY_CAP",
    "DIFFERENCE_FAMILIES",
    "FAMILY_NAMES",
    "POSITIVE_FAMILIES",
    "TABLE_FAMILIES",
    "DistributionSpec",
    "ExponentReport",
    "cdf",
    "exponents",
    "get_family",
    "log_pdf",
    "pdf",
    "power_transform",
    "sample",
]
