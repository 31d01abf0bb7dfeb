"""Striped-sign detection: projection pipeline, extrema search, circle
localization, and the end-of-restriction verdict.

The decisive signal is the projection at 45 degrees. Stripes of the
positive class are dark on a light face, so they appear as minima; the
verdict asks for a sufficiently prominent minimum in the right part of
the profile whose absolute depth beats the incoherent-fluctuation level
of the image (line integration amplifies coherent stripes by the chord
length but averages noise away).
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, replace

import numpy as np
from scipy.signal import find_peaks

from .errors import BadRadiusRange, ImageTooSmall, ProfileTooShort
from .image import GrayImage
from .transforms import (_dct2_array, _dft2_array, extract_slice,
                         inverse_slice, ramp_filter)


@dataclass(frozen=True)
class ProjectionProfile:
    """1D projection samples indexed by signed distance from the image center."""

    values: np.ndarray
    angle: float
    backend: str  # "dft" | "dct" | "direct"
    filtered: bool = False
    normalized: bool = False


@dataclass(frozen=True)
class Extremum:
    index: int
    value: float
    kind: str  # "min" | "max"
    prominence: float


@dataclass(frozen=True)
class Circle:
    cx: int
    cy: int
    radius: int
    score: float


@dataclass(frozen=True)
class DetectionResult:
    positive: bool
    profile: ProjectionProfile
    minima: list[Extremum]
    circle: Circle | None
    decision_score: float
    backend: str


# Calibrated on the synthetic 20x20 corpus; see the acceptance suite.
_GAIN_DEFAULT = {"dft": 2.5, "dct": 0.5}
_PAD_DEFAULT = {"dft": 2, "dct": 1}


@dataclass(frozen=True)
class DetectorParams:
    """The detector's single config record.

    `min_gain` scales the absolute-depth gate: a qualifying minimum must be
    at least min_gain * std(image) * sqrt(profile length) deep before
    normalization. `crop` is "auto" (Hough crop for frames at least
    `crop_min_size` wide), "on", or "off".
    """

    backend: str = "dft"
    apply_ramp: bool = False
    min_prominence: float = 0.15
    right_fraction: float = 0.5
    min_gain: float | None = None
    pad_factor: int | None = None
    interp: str = "bilinear"
    crop: str = "auto"
    crop_min_size: int = 32

    def gain(self) -> float:
        return _GAIN_DEFAULT[self.backend] if self.min_gain is None else self.min_gain

    def pad(self) -> int:
        return _PAD_DEFAULT[self.backend] if self.pad_factor is None else self.pad_factor


def project_cst(img: GrayImage, angle: float, backend: str = "dft",
                apply_ramp: bool = False, pad_factor: int = 2,
                interp: str = "bilinear", demean: bool = False) -> ProjectionProfile:
    """Project via the spectrum-slice route: transform, slice, invert.

    With `demean` the image mean is subtracted before the transform, which
    makes the profile exactly equivariant under affine intensity maps.
    """
    arr = img.math_array().astype(float)
    if demean:
        arr = arr - arr.mean()
    if backend == "dft":
        slc = extract_slice(_dft2_array(arr, pad_factor), angle, interp)
    elif backend == "dct":
        slc = extract_slice(_dct2_array(arr, pad_factor), angle, interp)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    if apply_ramp:
        slc = ramp_filter(slc)
    return ProjectionProfile(values=inverse_slice(slc), angle=angle,
                             backend=backend, filtered=apply_ramp)


def normalize_profile(p: ProjectionProfile) -> ProjectionProfile:
    """Affine min-max rescale to [0, 1]; constant profiles map to all 0.5."""
    v = np.asarray(p.values, dtype=float)
    lo, hi = float(v.min()), float(v.max())
    if hi - lo <= 1e-12 * max(abs(hi), abs(lo), 1.0):
        out = np.full_like(v, 0.5)
    else:
        out = (v - lo) / (hi - lo)
    return replace(p, values=out, normalized=True)


def find_extrema(p: ProjectionProfile, min_prominence: float) -> list[Extremum]:
    """All strict interior minima and maxima with topographic prominence at
    least `min_prominence`, sorted by index. Plateaus report their center."""
    if not p.normalized:
        raise ValueError("find_extrema expects a normalized profile")
    if not 0.0 < min_prominence <= 1.0:
        raise ValueError("min_prominence must lie in (0, 1]")
    v = np.asarray(p.values, dtype=float)
    if len(v) < 3:
        raise ProfileTooShort(f"profile length {len(v)} < 3")
    out: list[Extremum] = []
    for sign, kind in ((1.0, "max"), (-1.0, "min")):
        idx, props = find_peaks(sign * v, prominence=min_prominence)
        out.extend(Extremum(int(i), float(v[i]), kind, float(pr))
                   for i, pr in zip(idx, props["prominences"]))
    return sorted(out, key=lambda e: e.index)


def locate_circle(img: GrayImage, r_min: int, r_max: int) -> Circle | None:
    """Gradient-voting circular Hough transform.

    Central-difference gradients; pixels with magnitude above mean + std
    vote along their gradient line (both senses) at each radius. The
    accumulator is read through a 3x3x3 window so votes scattered by
    discretization still pile up. The best cell wins if its windowed score
    exceeds half the perfect-circle count 2 pi r; ties resolve to the
    lowest (cy, cx, r).
    """
    h, w = img.height, img.width
    if not 1 <= r_min <= r_max <= min(w, h) / 2:
        raise BadRadiusRange(f"need 1 <= {r_min} <= {r_max} <= {min(w, h) / 2}")
    px = img.pixels
    gx = np.zeros_like(px)
    gy = np.zeros_like(px)
    gx[:, 1:-1] = (px[:, 2:] - px[:, :-2]) / 2.0
    gy[1:-1, :] = (px[2:, :] - px[:-2, :]) / 2.0
    mag = np.hypot(gx, gy)
    thr = mag.mean() + mag.std()
    ys, xs = np.nonzero(mag > thr)
    if len(ys) == 0:
        return None
    ux = gx[ys, xs] / mag[ys, xs]
    uy = gy[ys, xs] / mag[ys, xs]

    nr = r_max - r_min + 1
    acc = np.zeros((h, w, nr), dtype=np.int64)
    for ri, r in enumerate(range(r_min, r_max + 1)):
        for sgn in (1.0, -1.0):
            cx = np.floor(xs + sgn * r * ux + 0.5).astype(int)
            cy = np.floor(ys + sgn * r * uy + 0.5).astype(int)
            ok = (cx >= 0) & (cx < w) & (cy >= 0) & (cy < h)
            np.add.at(acc, (cy[ok], cx[ok], np.full(int(ok.sum()), ri)), 1)

    windowed = np.zeros_like(acc)
    pad = np.pad(acc, 1)
    for dy in range(3):
        for dx in range(3):
            for dr in range(3):
                windowed += pad[dy:dy + h, dx:dx + w, dr:dr + nr]
    cy0, cx0, ri0 = np.unravel_index(int(np.argmax(windowed)), windowed.shape)
    r0 = r_min + int(ri0)
    score = int(windowed[cy0, cx0, ri0])
    if score <= 0.5 * (2.0 * np.pi * r0):
        return None
    return Circle(cx=int(cx0), cy=int(cy0), radius=r0, score=float(score))


def _crop_to_circle(img: GrayImage, c: Circle) -> GrayImage:
    y0 = max(0, c.cy - c.radius)
    y1 = min(img.height, c.cy + c.radius + 1)
    x0 = max(0, c.cx - c.radius)
    x1 = min(img.width, c.cx + c.radius + 1)
    return GrayImage.from_array(img.pixels[y0:y1, x0:x1])


def detect_end_of_restriction(img: GrayImage,
                              params: DetectorParams = DetectorParams()) -> DetectionResult:
    """Full verdict pipeline: optional Hough crop, 45-degree projection,
    normalization, minima search, and the right-tail decision rule."""
    if img.width < 8 or img.height < 8:
        raise ImageTooSmall(f"{img.width}x{img.height} below the 8x8 minimum")

    circle = None
    use_crop = params.crop == "on" or (
        params.crop == "auto" and min(img.width, img.height) >= params.crop_min_size)
    work = img
    if use_crop:
        m = min(img.width, img.height)
        circle = locate_circle(img, max(6, m // 4), m // 2)
        if circle is not None:
            cropped = _crop_to_circle(img, circle)
            if min(cropped.width, cropped.height) >= 8:
                work = cropped

    raw = project_cst(work, 45.0, backend=params.backend, apply_ramp=params.apply_ramp,
                      pad_factor=params.pad(), interp=params.interp, demean=True)
    span = float(np.max(raw.values) - np.min(raw.values))
    prof = normalize_profile(raw)
    length = len(prof.values)
    minima = [e for e in find_extrema(prof, params.min_prominence) if e.kind == "min"]

    cut = int(np.floor((1.0 - params.right_fraction) * length))
    floor_abs = params.gain() * float(work.pixels.std()) * np.sqrt(length)
    score = 0.0
    for e in minima:
        if e.index >= cut and e.prominence * span >= floor_abs:
            score = max(score, e.prominence)
    return DetectionResult(positive=score > 0.0, profile=prof, minima=minima,
                           circle=circle, decision_score=score, backend=params.backend)


# --- serialization -------------------------------------------------------

def result_to_dict(res: DetectionResult) -> dict:
    return {
        "positive": res.positive,
        "score": res.decision_score,
        "minima": [{"index": e.index, "prominence": e.prominence} for e in res.minima],
        "circle": (None if res.circle is None else
                   {"cx": res.circle.cx, "cy": res.circle.cy, "r": res.circle.radius}),
        "backend": res.backend,
    }


def result_to_json(res: DetectionResult) -> str:
    return json.dumps(result_to_dict(res))


def profile_to_csv(p: ProjectionProfile) -> str:
    lines = ["index,value"]
    lines.extend(f"{i},{float(v)!r}" for i, v in enumerate(p.values))
    return "\n".join(lines) + "\n"


def params_to_dict(params: DetectorParams) -> dict:
    d = asdict(params)
    d["min_gain"] = params.gain()
    d["pad_factor"] = params.pad()
    return d
