"""Coordinate chart declaration: base dimension and field roster."""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

EVEN = 0
ODD = 1

_PARITY_NAMES = {"even": EVEN, "odd": ODD}
_IDENT = re.compile(r"^[A-Za-z_][A-Za-z_0-9]*$")
# names the DSL reserves for built-in atoms and operators
_RESERVED = re.compile(r"^(x\d+|dx\d+|d\d+|vol|theta|bar|d|d_H|d_V|delta|dim|field|even|odd)$")


class SignatureError(ValueError):
    pass


def parity_of(name: str | int) -> int:
    if isinstance(name, int):
        if name not in (EVEN, ODD):
            raise SignatureError(f"bad parity {name!r}")
        return name
    try:
        return _PARITY_NAMES[name]
    except KeyError:
        raise SignatureError(f"parity must be 'even' or 'odd', got {name!r}") from None


@dataclass(frozen=True)
class Signature:
    """Base dimension ``n`` plus an ordered roster of (name, parity) fields.

    Base indices run over ``0..n-1``. ``aux_enabled`` switches on the mirror
    variables used by the one-contact homotopy.
    """

    base_dim: int
    fields: tuple[tuple[str, int], ...]
    aux_enabled: bool = False

    def __post_init__(self):
        if not isinstance(self.base_dim, int) or self.base_dim < 1:
            raise SignatureError(f"base dimension must be >= 1, got {self.base_dim!r}")
        if not self.fields:
            raise SignatureError("field roster is empty")
        seen = set()
        for name, par in self.fields:
            if not _IDENT.match(name):
                raise SignatureError(f"invalid field name {name!r}")
            if _RESERVED.match(name):
                raise SignatureError(f"field name {name!r} is reserved")
            if name in seen:
                raise SignatureError(f"duplicate field name {name!r}")
            if par not in (EVEN, ODD):
                raise SignatureError(f"bad parity for {name!r}")
            seen.add(name)

    @property
    def n(self) -> int:
        return self.base_dim

    @property
    def num_fields(self) -> int:
        return len(self.fields)

    def field_index(self, name: str) -> int:
        for i, (fname, _) in enumerate(self.fields):
            if fname == name:
                return i
        raise KeyError(name)

    def field_name(self, fid: int) -> str:
        return self.fields[fid][0]

    def field_parity(self, fid: int | str) -> int:
        if isinstance(fid, str):
            fid = self.field_index(fid)
        return self.fields[fid][1]

    def with_aux(self, enabled: bool = True) -> Signature:
        return replace(self, aux_enabled=enabled)

    def header(self) -> str:
        parts = [f"dim {self.base_dim}"]
        for name, par in self.fields:
            parts.append(f"field {name}:{'odd' if par else 'even'}")
        return " ".join(parts)


def make_signature(n: int, fields) -> Signature:
    """Build a validated signature from ``[(name, 'even'|'odd'), ...]``."""
    roster = tuple((str(name), parity_of(par)) for name, par in fields)
    return Signature(n, roster)
