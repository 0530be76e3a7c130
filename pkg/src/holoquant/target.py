"""Target replay fields from grayscale images, and the constrained starting
holograms derived from them.

Images load as [0, 1] magnitude matrices (value/maxval, no gamma). A target
field combines a magnitude matrix with a seeded random phase profile; the
magnitude matrix is usually symmetrized first so that real (zero-phase)
holograms, which can only produce 180-degree-symmetric replay magnitudes, are
not penalized for the image's asymmetry.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image

from .field import ComplexField, idft, total_power
from .modulation import AMPLITUDE, KINDS, PHASE, ModulationScheme, quantize_field


class ImageFormatError(ValueError):
    """Input image is not a readable 8-bit grayscale PGM or PNG."""


class DegenerateTargetError(ValueError):
    """Target has zero power, so hologram normalization is undefined."""


def _read_pgm(data: bytes) -> np.ndarray:
    """Parse a binary (P5) PGM with maxval <= 255."""
    stream = io.BytesIO(data)

    def next_token():
        # Tokens are separated by whitespace; '#' starts a comment to EOL.
        tok = b""
        while True:
            c = stream.read(1)
            if not c:
                raise ImageFormatError("truncated PGM header")
            if c == b"#":
                while c and c != b"\n":
                    c = stream.read(1)
                continue
            if c.isspace():
                if tok:
                    return tok
                continue
            tok += c

    magic = next_token()
    if magic != b"P5":
        raise ImageFormatError(f"unsupported PGM magic {magic!r}; only binary P5 is readable")
    try:
        width = int(next_token())
        height = int(next_token())
        maxval = int(next_token())
    except ValueError:
        raise ImageFormatError("malformed PGM header") from None
    if width < 1 or height < 1:
        raise ImageFormatError(f"invalid PGM dimensions {width}x{height}")
    if not (1 <= maxval <= 255):
        raise ImageFormatError(f"PGM maxval {maxval} is outside 8-bit range")
    raster = stream.read(width * height)
    if len(raster) != width * height:
        raise ImageFormatError("PGM raster shorter than header promises")
    pixels = np.frombuffer(raster, dtype=np.uint8).reshape(height, width)
    return pixels.astype(np.float64) / maxval


def _read_png(path: Path) -> np.ndarray:
    with Image.open(path) as img:
        if img.mode != "L":
            raise ImageFormatError(
                f"PNG mode {img.mode!r} is not 8-bit grayscale; convert to mode 'L' first"
            )
        pixels = np.asarray(img, dtype=np.uint8)
    return pixels.astype(np.float64) / 255.0


def load_grayscale(path) -> np.ndarray:
    """Load an 8-bit grayscale image (binary PGM or PNG) as floats in [0, 1].

    Values scale by 1/maxval with no gamma correction. Raises
    FileNotFoundError for a missing file and ImageFormatError for anything
    that is not an 8-bit grayscale PGM/PNG.
    """
    path = Path(path)
    data = path.read_bytes()
    if data[:2] == b"P5":
        return _read_pgm(data)
    if data[:8] == b"\x89PNG\r\n\x1a\n":
        return _read_png(path)
    if data[:2] in (b"P2", b"P4", b"P6"):
        raise ImageFormatError(
            f"unsupported netpbm variant {data[:2].decode()}; only binary grayscale P5 is readable"
        )
    raise ImageFormatError(f"unrecognized image format in {path.name}")


def save_grayscale(path, matrix: np.ndarray):
    """Write a [0, 1] matrix as a binary PGM (maxval 255).

    Values are clamped to [0, 1], scaled by 255, and rounded half-up, so the
    output of load_grayscale round-trips byte-exactly.
    """
    m = np.asarray(matrix, dtype=np.float64)
    if m.ndim != 2 or m.size == 0:
        raise ValueError(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    bytes_ = np.floor(np.clip(m, 0.0, 1.0) * 255.0 + 0.5).astype(np.uint8)
    header = f"P5\n{m.shape[1]} {m.shape[0]}\n255\n".encode("ascii")
    Path(path).write_bytes(header + bytes_.tobytes())


def rotate_180(matrix: np.ndarray) -> np.ndarray:
    """The mod-index 180-degree image: out[y, x] = in[(-y) mod H, (-x) mod W].

    Rotation about the origin pixel (0, 0), matching the frequency-plane
    symmetry of real holograms, not a plain array flip.
    """
    m = np.asarray(matrix)
    return np.roll(m[::-1, ::-1], shift=(1, 1), axis=(0, 1))


def symmetrize_180(magnitudes: np.ndarray) -> np.ndarray:
    """Average a magnitude matrix with its mod-index 180-degree image.

    Exact projection onto the symmetric subspace: idempotent, preserves the
    matrix mean, and the output satisfies
    out[y, x] == out[(-y) mod H, (-x) mod W] exactly.
    """
    m = np.asarray(magnitudes, dtype=np.float64)
    return (m + rotate_180(m)) / 2.0


def random_phase(width: int, height: int, seed: int) -> np.ndarray:
    """I.i.d. uniform phases on [-pi, pi), shape (height, width).

    Drawn from numpy's PCG64 generator seeded directly with ``seed``, so
    identical (seed, dims) always reproduce the same profile.
    """
    if width < 1 or height < 1:
        raise ValueError(f"dimensions must be >= 1, got {width}x{height}")
    rng = np.random.Generator(np.random.PCG64(seed))
    return rng.uniform(-np.pi, np.pi, size=(height, width))


def build_target(magnitudes: np.ndarray, phases: np.ndarray) -> ComplexField:
    """Complex target field magnitudes * exp(i * phases)."""
    m = np.asarray(magnitudes, dtype=np.float64)
    p = np.asarray(phases, dtype=np.float64)
    if m.shape != p.shape:
        raise ValueError(f"magnitude shape {m.shape} != phase shape {p.shape}")
    if np.any(m < 0):
        raise ValueError("magnitudes must be nonnegative")
    return ComplexField._wrap(m * np.exp(1j * p))


def crop_to_even(matrix: np.ndarray) -> np.ndarray:
    """Crop odd dimensions down to the nearest even size (drops row/col 0)."""
    m = np.asarray(matrix)
    h, w = m.shape
    return m[h % 2 :, w % 2 :]


@dataclass(frozen=True)
class TargetSpec:
    """Magnitude matrix plus phase profile defining one target replay field."""

    magnitudes: np.ndarray
    phases: np.ndarray
    symmetrized: bool = False

    def __post_init__(self):
        m = np.asarray(self.magnitudes, dtype=np.float64)
        p = np.asarray(self.phases, dtype=np.float64)
        if m.shape != p.shape:
            raise ValueError(f"magnitude shape {m.shape} != phase shape {p.shape}")
        if np.any(m < 0):
            raise ValueError("magnitudes must be nonnegative")
        if self.symmetrized and not np.array_equal(m, rotate_180(m)):
            raise ValueError("symmetrized flag set but magnitudes lack mod-index symmetry")
        object.__setattr__(self, "magnitudes", m)
        object.__setattr__(self, "phases", p)

    @classmethod
    def from_image(cls, path, seed: int, symmetrize: bool = True) -> "TargetSpec":
        """Load an image, center-crop to even dimensions, optionally
        symmetrize, and attach a seeded random phase profile."""
        mags = crop_to_even(load_grayscale(path))
        if symmetrize:
            mags = symmetrize_180(mags)
        h, w = mags.shape
        return cls(mags, random_phase(w, h, seed), symmetrized=symmetrize)

    def field(self) -> ComplexField:
        return build_target(self.magnitudes, self.phases)


def unquantized_hologram(target: ComplexField, kind: str) -> ComplexField:
    """Continuous (pre-quantization) hologram for a modulation kind.

    phase: g = idft(target) with every magnitude replaced by the uniform
    value sqrt(total_power(g)/N), preserving pixel phases; total power then
    equals the target's (Parseval).

    amplitude: |idft(target)| with phase zeroed, divided by its maximum so
    values land in [0, 1].
    """
    if kind not in KINDS:
        raise ValueError(f"unknown modulation kind {kind!r}; expected one of {KINDS}")
    if total_power(target) == 0.0:
        raise DegenerateTargetError("all-zero target: hologram normalization is undefined")
    g = idft(target).values
    if kind == PHASE:
        m = np.sqrt(np.sum(g.real * g.real + g.imag * g.imag) / g.size)
        mags = np.abs(g)
        # angle(0) = 0 by numpy convention; zero pixels become m * 1.
        unit = np.where(mags > 0, g / np.where(mags > 0, mags, 1.0), 1.0 + 0j)
        return ComplexField._wrap(m * unit)
    mags = np.abs(g)
    return ComplexField._wrap((mags / mags.max()).astype(np.complex128))


def initial_hologram(target: ComplexField, scheme: ModulationScheme) -> ComplexField:
    """Starting hologram for a search: the continuous hologram for the
    scheme's kind snapped onto the scheme's level set."""
    return quantize_field(unquantized_hologram(target, scheme.kind), scheme)


def synthetic_scene(width: int, height: int, seed: int) -> np.ndarray:
    """Deterministic natural-looking test image in [0, 1].

    Filtered noise with a 1/f amplitude spectrum (the classic natural-image
    statistic), min-max normalized. A stand-in for checked-in image assets;
    experiments on real photographs should load them via load_grayscale.
    """
    if width < 2 or height < 2:
        raise ValueError(f"dimensions must be >= 2, got {width}x{height}")
    rng = np.random.Generator(np.random.PCG64(seed))
    white = rng.standard_normal((height, width))
    fy = np.fft.fftfreq(height)[:, None]
    fx = np.fft.fftfreq(width)[None, :]
    radius = np.sqrt(fx * fx + fy * fy)
    radius[0, 0] = 1.0
    spectrum = np.fft.fft2(white) / radius**1.2
    spectrum[0, 0] = 0.0
    img = np.fft.ifft2(spectrum).real
    lo, hi = img.min(), img.max()
    return (img - lo) / (hi - lo)
