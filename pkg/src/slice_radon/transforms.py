"""Spectral machinery: 2D DFT / DCT-II, central slices, ramp filter, inverses,
and the brute-force direct Radon oracle.

Conventions, fixed once:
  * DFT spectra are centered (DC at bin (W//2, H//2)) and phase-referenced
    to the image center, so the complex field varies slowly and can be
    interpolated. Forward transform is unnormalized; the inverse carries
    1/N.
  * DCT-II uses orthonormal scaling; coefficients index nonnegative
    frequencies from the (0, 0) corner.
  * Images are zero-padded (DFT) or edge-replicate padded (DCT) to
    pad_factor * next_pow2(dim) per dimension, image centered.
  * All angles are degrees in y-up coordinates, in [0, 180). A projection
    at angle a integrates along lines perpendicular to (cos a, sin a).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy import fft as sfft

from .errors import AngleOutOfRange
from .image import GrayImage

log = logging.getLogger(__name__)


def next_pow2(n: int) -> int:
    p = 1
    while p < n:
        p *= 2
    return p


@dataclass(frozen=True)
class ComplexSpectrum2D:
    """Centered 2D DFT bins; bins[fy + H//2, fx + W//2] holds frequency (fx, fy)."""

    width: int
    height: int
    bins: np.ndarray  # complex, shape (height, width)

    @property
    def dc(self) -> complex:
        return self.bins[self.height // 2, self.width // 2]


@dataclass(frozen=True)
class DctSpectrum2D:
    """Orthonormal 2D DCT-II coefficients; (0, 0) is the low-frequency corner."""

    width: int
    height: int
    coeffs: np.ndarray  # real, shape (height, width)


@dataclass(frozen=True)
class SpectrumSlice:
    """1D sample run through the spectral origin.

    DFT backend: complex samples in both directions, DC at index
    length // 2, signed frequency of bin k is k - length // 2.
    DCT backend: real samples from the corner origin outward, frequency of
    bin k is k; the even reflection implied by the DCT makes this the
    symmetric slice's nonnegative half.

    `sample_spacing` is one spectral bin (cycles per padded frame) and
    `frame` is that padded frame size in pixels, which fixes the spatial
    sample spacing frame / length of the inverse.
    """

    length: int
    values: np.ndarray
    angle: float
    backend: str  # "dft" | "dct"
    sample_spacing: float
    frame: int

    @property
    def dc_index(self) -> int:
        return self.length // 2 if self.backend == "dft" else 0


def _check_angle(angle: float):
    if not 0.0 <= angle < 180.0:
        raise AngleOutOfRange(f"angle {angle} outside [0, 180)")


def _padded_shape(h: int, w: int, pad_factor: int) -> tuple[int, int]:
    if pad_factor < 1:
        raise ValueError("pad_factor must be >= 1")
    return pad_factor * next_pow2(h), pad_factor * next_pow2(w)


def _center_pad(arr: np.ndarray, ph: int, pw: int, mode: str) -> np.ndarray:
    h, w = arr.shape
    oy, ox = (ph - h + 1) // 2, (pw - w + 1) // 2
    if mode == "zero":
        out = np.zeros((ph, pw), dtype=float)
        out[oy:oy + h, ox:ox + w] = arr
        return out
    return np.pad(arr, ((oy, ph - h - oy), (ox, pw - w - ox)), mode="edge")


def _dft2_array(arr_yup: np.ndarray, pad_factor: int) -> ComplexSpectrum2D:
    ph, pw = _padded_shape(*arr_yup.shape, pad_factor)
    pad = _center_pad(arr_yup, ph, pw, "zero")
    bins = np.fft.fftshift(np.fft.fft2(np.fft.ifftshift(pad)))
    return ComplexSpectrum2D(width=pw, height=ph, bins=bins)


def dft2(img: GrayImage, pad_factor: int = 1) -> ComplexSpectrum2D:
    """Forward 2D DFT, centered, phase referenced to the image center."""
    return _dft2_array(img.math_array().astype(float), pad_factor)


def _dct2_array(arr_yup: np.ndarray, pad_factor: int) -> DctSpectrum2D:
    ph, pw = _padded_shape(*arr_yup.shape, pad_factor)
    pad = _center_pad(arr_yup, ph, pw, "edge")
    coeffs = sfft.dctn(pad, type=2, norm="ortho")
    return DctSpectrum2D(width=pw, height=ph, coeffs=coeffs)


def dct2(img: GrayImage, pad_factor: int = 1) -> DctSpectrum2D:
    """Separable orthonormal 2D DCT-II with edge-replicating pad."""
    return _dct2_array(img.math_array().astype(float), pad_factor)


def idct2(spec: DctSpectrum2D) -> np.ndarray:
    """Inverse of dct2 (padded frame, y-up orientation)."""
    return sfft.idctn(spec.coeffs, type=2, norm="ortho")


def _interp2(field: np.ndarray, ix: np.ndarray, iy: np.ndarray, interp: str) -> np.ndarray:
    h, w = field.shape
    if interp == "nearest":
        return field[np.floor(iy + 0.5).astype(int), np.floor(ix + 0.5).astype(int)]
    if interp != "bilinear":
        raise ValueError(f"unknown interpolation {interp!r}")
    x0 = np.clip(np.floor(ix).astype(int), 0, w - 2)
    y0 = np.clip(np.floor(iy).astype(int), 0, h - 2)
    fx, fy = ix - x0, iy - y0
    return ((1 - fx) * (1 - fy) * field[y0, x0]
            + fx * (1 - fy) * field[y0, x0 + 1]
            + (1 - fx) * fy * field[y0 + 1, x0]
            + fx * fy * field[y0 + 1, x0 + 1])


def _ray_extent(w: int, h: int, c: float, s: float, cx: float, cy: float) -> tuple[float, float]:
    """Parameter range [t_lo, t_hi] keeping (cx + t c, cy + t s) inside the grid."""
    t_lo, t_hi = -np.inf, np.inf
    for d, lo, hi, pos in ((c, 0.0, w - 1.0, cx), (s, 0.0, h - 1.0, cy)):
        if d > 1e-12:
            t_hi = min(t_hi, (hi - pos) / d)
            t_lo = max(t_lo, (lo - pos) / d)
        elif d < -1e-12:
            t_hi = min(t_hi, (lo - pos) / d)
            t_lo = max(t_lo, (hi - pos) / d)
    return t_lo, t_hi


def extract_slice(spec: ComplexSpectrum2D | DctSpectrum2D, angle: float,
                  interp: str = "bilinear") -> SpectrumSlice:
    """Sample the spectrum along the origin line in direction (cos a, sin a).

    Samples sit at unit bin spacing, as many as fit inside the spectral
    support. DFT spectra are sampled in both directions with the DC sample
    landing at index length // 2; DCT spectra only index nonnegative
    frequencies, so the slice runs from the corner outward (angles above
    90 degrees fold onto the mirrored direction).
    """
    _check_angle(angle)
    th = np.deg2rad(angle)
    if isinstance(spec, ComplexSpectrum2D):
        c, s = np.cos(th), np.sin(th)
        cx, cy = spec.width // 2, spec.height // 2
        t_lo, t_hi = _ray_extent(spec.width, spec.height, c, s, cx, cy)
        # keep the DC sample at index length // 2: the negative side may
        # carry at most one extra sample
        n_pos = min(int(np.floor(t_hi + 1e-9)), int(np.floor(-t_lo + 1e-9)))
        n_neg = min(int(np.floor(-t_lo + 1e-9)), n_pos + 1)
        t = np.arange(-n_neg, n_pos + 1, dtype=float)
        vals = _interp2(spec.bins, cx + t * c, cy + t * s, interp)
        return SpectrumSlice(length=len(t), values=vals, angle=angle, backend="dft",
                             sample_spacing=1.0, frame=spec.width)
    c, s = abs(np.cos(th)), np.sin(th)
    _, t_hi = _ray_extent(spec.width, spec.height, c, s, 0.0, 0.0)
    t = np.arange(0, int(np.floor(t_hi + 1e-9)) + 1, dtype=float)
    vals = _interp2(spec.coeffs, t * c, t * s, interp)
    return SpectrumSlice(length=len(t), values=vals, angle=angle, backend="dct",
                         sample_spacing=1.0, frame=spec.width)


def ramp_filter(slc: SpectrumSlice) -> SpectrumSlice:
    """Weight each sample by |f| under the slice's indexing, max weight 1.

    Zeroes the DC sample exactly; attenuates low frequencies linearly.
    """
    if slc.backend == "dft":
        f = np.abs(np.arange(slc.length, dtype=float) - slc.length // 2)
    else:
        f = np.arange(slc.length, dtype=float)
    top = f.max()
    weights = f / top if top > 0 else f
    return SpectrumSlice(length=slc.length, values=slc.values * weights,
                         angle=slc.angle, backend=slc.backend,
                         sample_spacing=slc.sample_spacing, frame=slc.frame)


def inverse_slice(slc: SpectrumSlice) -> np.ndarray:
    """Back to the spatial domain: 1D inverse DFT (1/N) or DCT-III.

    Output sample i sits at signed distance R = (i - L//2) * frame / L from
    the image center (exact for the DFT backend; the DCT backend shares the
    mapping up to its approximation).
    """
    if slc.backend == "dft":
        raw = np.fft.ifft(np.fft.ifftshift(slc.values))
        out = np.fft.fftshift(raw)
        worst = float(np.max(np.abs(out.imag))) if len(out) else 0.0
        log.debug("inverse_slice: max |imag| = %.3e", worst)
        return np.real(out)
    return sfft.idct(slc.values, type=2, norm="ortho")


def radon_direct(img: GrayImage, angle: float, num_bins: int) -> np.ndarray:
    """Brute-force projection oracle: nearest-bin accumulation of pixel mass.

    Every pixel's signed distance R = (x - W/2) cos a + (y - H/2) sin a
    (y-up, image center as origin) lands in bin floor(R + num_bins/2 + 0.5).
    Out-of-range bins clamp to the edges so the pixel sum is conserved
    exactly.
    """
    _check_angle(angle)
    if num_bins < 1:
        raise ValueError("num_bins must be >= 1")
    arr = img.math_array()
    th = np.deg2rad(angle)
    x = np.arange(img.width) - img.width / 2.0
    y = np.arange(img.height) - img.height / 2.0
    r = x[None, :] * np.cos(th) + y[:, None] * np.sin(th)
    bins = np.floor(r + num_bins / 2.0 + 0.5).astype(int)
    np.clip(bins, 0, num_bins - 1, out=bins)
    return np.bincount(bins.ravel(), weights=arr.ravel(), minlength=num_bins)


def slice_to_csv(slc: SpectrumSlice) -> str:
    """Diagnostic dump: one line per bin, `index,re,im` or `index,value`."""
    if slc.backend == "dft":
        lines = [f"{k},{v.real!r},{v.imag!r}" for k, v in enumerate(slc.values)]
    else:
        lines = [f"{k},{float(v)!r}" for k, v in enumerate(slc.values)]
    return "\n".join(lines) + "\n"
