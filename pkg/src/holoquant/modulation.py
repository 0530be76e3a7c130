"""Modulator level sets and nearest-level quantization.

A scheme is a modulation kind plus a level count L. Phase schemes expose the
L complex roots of unity exp(2j*pi*k/L); amplitude schemes expose L real
values k/(L-1) spanning [0, 1]. Binary cases (L=2) reduce to {+1, -1} and
{0, 1}, and their level values are bit-identical to the matching entries of
any power-of-two refinement, so a coarse scheme is an exact subset of a fine
one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

PHASE = "phase"
AMPLITUDE = "amplitude"
KINDS = (PHASE, AMPLITUDE)

# Row blocks for vectorized quantization are capped so the (rows, cols, L)
# distance tensor stays around 64 MB.
_CHUNK_ELEMENTS = 8_000_000


@dataclass(frozen=True)
class ModulationScheme:
    kind: str
    level_count: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown modulation kind {self.kind!r}; expected one of {KINDS}")
        if not isinstance(self.level_count, (int, np.integer)) or self.level_count < 2:
            raise ValueError(f"level_count must be an integer >= 2, got {self.level_count!r}")

    @classmethod
    def phase(cls, level_count: int) -> "ModulationScheme":
        return cls(PHASE, int(level_count))

    @classmethod
    def amplitude(cls, level_count: int) -> "ModulationScheme":
        return cls(AMPLITUDE, int(level_count))

    @classmethod
    def parse(cls, text: str) -> "ModulationScheme":
        """Parse ``"kind:levels"``, e.g. ``"phase:256"``."""
        kind, sep, count = text.partition(":")
        if not sep:
            raise ValueError(f"expected 'kind:levels', got {text!r}")
        try:
            n = int(count)
        except ValueError:
            raise ValueError(f"level count in {text!r} is not an integer") from None
        return cls(kind.strip(), n)

    @property
    def label(self) -> str:
        return f"{self.kind}-{self.level_count}"

    @property
    def is_binary(self) -> bool:
        return self.level_count == 2


def levels(scheme: ModulationScheme) -> np.ndarray:
    """The scheme's admissible complex values, ordered by level index."""
    k = np.arange(scheme.level_count)
    if scheme.kind == PHASE:
        return np.exp(2j * np.pi * k / scheme.level_count)
    return (k / (scheme.level_count - 1)).astype(np.complex128)


def nearest_level_index(values: np.ndarray, scheme: ModulationScheme) -> np.ndarray:
    """Index of the Euclidean-nearest level for each entry; ties take the
    lower index."""
    values = np.asarray(values, dtype=np.complex128)
    lv = levels(scheme)
    flat = values.reshape(-1)
    out = np.empty(flat.shape, dtype=np.intp)
    step = max(1, _CHUNK_ELEMENTS // lv.size)
    for start in range(0, flat.size, step):
        chunk = flat[start : start + step]
        dr = chunk.real[:, None] - lv.real[None, :]
        di = chunk.imag[:, None] - lv.imag[None, :]
        out[start : start + step] = np.argmin(dr * dr + di * di, axis=1)
    return out.reshape(values.shape)


def quantize_nearest(value: complex, scheme: ModulationScheme) -> complex:
    """Snap one complex value to the scheme's nearest level."""
    idx = nearest_level_index(np.array([value], dtype=np.complex128), scheme)
    return complex(levels(scheme)[idx[0]])


def quantize_field(field, scheme: ModulationScheme):
    """Snap every pixel of a field to its nearest level.

    Idempotent, and every output value is bit-equal to an entry of
    ``levels(scheme)``.
    """
    from .field import ComplexField

    idx = nearest_level_index(field.values, scheme)
    return ComplexField._wrap(levels(scheme)[idx])
