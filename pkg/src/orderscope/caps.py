"""Resource caps guarding the exhaustive searches.

Defaults can be overridden through the ``ORDERSCOPE_CAPS`` environment
variable, e.g. ``ORDERSCOPE_CAPS="group_enum=5000,seq_len=30"``.
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass

from .errors import OrderscopeError


@dataclass(frozen=True)
class Caps:
    group_enum: int = 10**6       # |G| for plain enumeration
    group_lengths: int = 100      # |G| for exhaustive length computations
    seq_len: int = 24             # |S| for exhaustive length computations
    residue_ring: int = 10**6     # |R/f|
    disc: int = 10**5             # |disc| for class group computation
    local_states: int = 10**6     # states in a local monoid table
    search_steps: int = 10**7     # generic step budget (norm equations, CF expansion)
    prime_norm: int = 10**6       # largest prime norm tried when hunting class representatives


def _parse(spec: str) -> Caps:
    names = {f.name for f in dataclasses.fields(Caps)}
    values = {}
    for item in spec.split(","):
        item = item.strip()
        if not item:
            continue
        key, sep, raw = item.partition("=")
        key = key.strip()
        if not sep or key not in names:
            raise OrderscopeError(f"bad ORDERSCOPE_CAPS entry {item!r}")
        value = int(raw)
        if value <= 0:
            raise OrderscopeError(f"cap {key} must be positive")
        values[key] = value
    return Caps(**values)


def get_caps() -> Caps:
    spec = os.environ.get("ORDERSCOPE_CAPS", "")
    return _parse(spec) if spec else Caps()
