from typing import Iterable, Tuple
import hashlib
import os

import click


def logger(verbosity: int = 0, err: bool = False):
    """Return a log(msg, level=0, **style) function printing up to verbosity."""
    color = False if os.getenv('TERM', '') in ('', 'dumb') else None
    def log(msg, level=0, err=err, **kwargs):
        if level <= verbosity:
            click.secho(msg, color=color, err=err, **kwargs)
    return log


def sha1sum(data: str) -> str:
    """Compute the hash of a document's text."""
    return hashlib.sha1(data.encode('utf-8')).hexdigest()


def bitmask(indices: Iterable[int]) -> int:
    """Return the integer with the given bit positions set."""
    mask = 0
    for index in indices:
        mask |= 1 << index
    return mask


def bits(mask: int) -> Tuple[int, ...]:
    """Return the positions of the set bits of mask, ascending."""
    out = []
    index = 0
    while mask:
        if mask & 1:
            out.append(index)
        mask >>= 1
        index += 1
    return tuple(out)


def ceildiv(a: int, b: int) -> int:
    return -(-a // b)
