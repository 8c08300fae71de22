"""Small value types shared across the distribution families."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ExponentReport:
    """Power-law exponents of a density near zero and at infinity.

    ``front_exponent`` is the exponent of x as x -> 0+ and
    ``tail_exponent`` the exponent as x -> inf; a field is None when the
    family has no power behavior on that side (e.g. an exponential tail).
    """

    front_exponent: float | None
    tail_exponent: float | None
