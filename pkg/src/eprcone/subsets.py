"""Bitmask helpers for subsets of parties.

Party ``i`` (1-based) lives at bit ``i - 1``, so ``{1}`` is mask 1, ``{2}`` is
mask 2 and ``{1, 2}`` is mask 3. Nonempty subsets of ``n`` parties are the
masks ``1 .. 2**n - 1``.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .errors import DomainError, FormatError


def full_mask(n: int) -> int:
    return (1 << n) - 1


def check_parties(n: int) -> int:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DomainError(f"party count must be an integer >= 1, got {n!r}")
    return n


def check_mask(n: int, mask: int) -> int:
    if not isinstance(mask, int) or isinstance(mask, bool) or not 1 <= mask <= full_mask(n):
        raise DomainError(f"subset mask {mask!r} out of range for {n} parties")
    return mask


def nonempty_masks(n: int) -> range:
    return range(1, full_mask(n) + 1)


def members(mask: int) -> Iterator[int]:
    """Yield the 1-based parties in ``mask`` in ascending order."""
    i = 1
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def mask_of(parties: Iterable[int]) -> int:
    mask = 0
    for p in parties:
        if p < 1:
            raise DomainError(f"party index must be >= 1, got {p}")
        mask |= 1 << (p - 1)
    return mask


def format_mask(mask: int) -> str:
    return "{" + ",".join(str(p) for p in members(mask)) + "}"


def parse_mask(text: str, n: int | None = None) -> int:
    """Parse ``{1,3}`` (braces optional) into a mask."""
    body = text.strip()
    if body.startswith("{") and body.endswith("}"):
        body = body[1:-1]
    elif "{" in body or "}" in body:
        raise FormatError(f"unbalanced braces in subset {text!r}")
    items = [t.strip() for t in body.split(",") if t.strip()]
    if not items:
        raise FormatError(f"empty subset {text!r}")
    try:
        parties = [int(t) for t in items]
    except ValueError:
        raise FormatError(f"bad subset {text!r}") from None
    if len(set(parties)) != len(parties):
        raise FormatError(f"repeated party in subset {text!r}")
    if any(p < 1 for p in parties):
        raise FormatError(f"party indices start at 1: {text!r}")
    mask = mask_of(parties)
    if n is not None and mask > full_mask(n):
        raise FormatError(f"subset {text!r} exceeds {n} parties")
    return mask
