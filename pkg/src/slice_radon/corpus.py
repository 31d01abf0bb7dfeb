"""Synthetic evaluation corpus: generation, manifest I/O, and batch scoring.

A corpus is a directory of PGM files plus `labels.csv` with lines
`filename,class_label`. Class labels: `end_restriction` (the positive
class), `speed_limit` (ring plus digit-like strokes) and `other_negative`
(uniform and noise fields).
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .detector import DetectorParams, detect_end_of_restriction, params_to_dict
from .errors import EmptyCorpus
from .image import Degradation, GrayImage, SignSpec, degrade, load_pgm, save_pgm, synth_sign

POSITIVE_CLASS = "end_restriction"
CLASS_LABELS = ("end_restriction", "speed_limit", "other_negative")


@dataclass(frozen=True)
class CorpusTemplates:
    """Tunable knobs of the synthetic corpus generator."""

    sign_size: int = 64
    target_size: int | None = 20
    stripe_widths: tuple[int, ...] = (4, 5)
    duty: float = 0.5
    angle_jitter: float = 2.0
    foreground: tuple[float, float] = (0.02, 0.10)
    background: tuple[float, float] = (0.88, 0.98)
    blur: tuple[float, float] = (0.2, 0.7)
    noise: tuple[float, float] = (0.01, 0.05)
    neg_blur: tuple[float, float] = (0.2, 0.8)
    neg_noise: tuple[float, float] = (0.01, 0.06)
    diagonal_stroke_fraction: float = 0.25


def _u(rng, lohi):
    return float(rng.uniform(lohi[0], lohi[1]))


def _make_positive(rng: np.random.Generator, t: CorpusTemplates) -> GrayImage:
    spec = SignSpec(size=t.sign_size, num_stripes=5,
                    stripe_angle=45.0 + float(rng.uniform(-t.angle_jitter, t.angle_jitter)),
                    stripe_width=int(rng.choice(t.stripe_widths)), duty=t.duty,
                    foreground=_u(rng, t.foreground), background=_u(rng, t.background),
                    circle_border=True)
    d = Degradation(gaussian_blur_sigma=_u(rng, t.blur), noise_sigma=_u(rng, t.noise),
                    target_size=t.target_size, seed=int(rng.integers(0, 2 ** 31)))
    return degrade(synth_sign(spec), d)


def _make_speed_limit(rng: np.random.Generator, t: CorpusTemplates) -> GrayImage:
    """Ring plus blocky digit strokes; a fraction of strokes run diagonally."""
    base = synth_sign(SignSpec(size=t.sign_size, num_stripes=0, circle_border=True,
                               foreground=0.1, background=_u(rng, t.background)))
    arr = np.array(base.pixels)
    size = t.sign_size
    lo, hi = size // 4, 3 * size // 4
    for _ in range(int(rng.integers(2, 5))):
        x0 = int(rng.integers(lo, hi))
        y0 = int(rng.integers(lo, hi))
        ln = int(rng.integers(size // 8, size // 3))
        wd = int(rng.integers(2, 5))
        ink = float(rng.uniform(0.05, 0.2))
        if rng.random() < t.diagonal_stroke_fraction:
            for k in range(ln):
                xk, yk = x0 + k, y0 + k
                if xk + wd < hi + size // 8 and yk + wd < hi + size // 8:
                    arr[yk:yk + wd, xk:xk + wd] = ink
        elif rng.random() < 0.5:
            arr[y0:y0 + wd, x0:x0 + ln] = ink
        else:
            arr[y0:y0 + ln, x0:x0 + wd] = ink
    d = Degradation(gaussian_blur_sigma=_u(rng, t.neg_blur), noise_sigma=_u(rng, t.neg_noise),
                    target_size=t.target_size, seed=int(rng.integers(0, 2 ** 31)))
    return degrade(GrayImage.from_array(np.clip(arr, 0.0, 1.0)), d)


def _make_other_negative(rng: np.random.Generator, t: CorpusTemplates) -> GrayImage:
    kind = int(rng.integers(0, 3))
    if kind == 0:  # uniform field
        img = GrayImage.from_array(np.full((t.sign_size, t.sign_size),
                                           float(rng.uniform(0.2, 0.9))))
        d = Degradation(gaussian_blur_sigma=0.5, noise_sigma=0.0,
                        target_size=t.target_size, seed=int(rng.integers(0, 2 ** 31)))
        return degrade(img, d)
    if kind == 1:  # noise over a flat level, degraded like a distant patch
        arr = np.clip(rng.uniform(0.3, 0.7) + rng.normal(0.0, 0.1, (t.sign_size, t.sign_size)),
                      0.0, 1.0)
        d = Degradation(gaussian_blur_sigma=float(rng.uniform(0.0, 1.0)),
                        noise_sigma=float(rng.uniform(0.0, 0.1)),
                        target_size=t.target_size, seed=int(rng.integers(0, 2 ** 31)))
        return degrade(GrayImage.from_array(arr), d)
    side = t.target_size or t.sign_size  # raw sensor noise at final resolution
    arr = np.clip(rng.uniform(0.3, 0.7) + rng.normal(0.0, 0.1, (side, side)), 0.0, 1.0)
    return GrayImage.from_array(arr)


_MAKERS = {
    "end_restriction": _make_positive,
    "speed_limit": _make_speed_limit,
    "other_negative": _make_other_negative,
}


def generate_corpus(out_dir: str | Path, counts: dict[str, int], seed: int = 0,
                    templates: CorpusTemplates = CorpusTemplates()) -> list[tuple[str, str]]:
    """Write PGMs and labels.csv; returns the manifest rows. Deterministic per seed."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for label in counts:
        if label not in _MAKERS:
            raise ValueError(f"unknown class label {label!r}")
    rng = np.random.default_rng(seed)
    rows: list[tuple[str, str]] = []
    i = 0
    for label in CLASS_LABELS:
        for _ in range(counts.get(label, 0)):
            img = _MAKERS[label](rng, templates)
            name = f"{i:05d}_{label}.pgm"
            (out / name).write_bytes(save_pgm(img, binary=True))
            rows.append((name, label))
            i += 1
    manifest = "".join(f"{name},{label}\n" for name, label in rows)
    (out / "labels.csv").write_text(manifest, encoding="ascii")
    return rows


def read_manifest(corpus_dir: str | Path) -> list[tuple[str, str]]:
    path = Path(corpus_dir) / "labels.csv"
    if not path.is_file():
        raise EmptyCorpus(f"no labels.csv in {corpus_dir}")
    rows = []
    for line in path.read_text().splitlines():
        line = line.strip()
        if not line or line.lower() == "filename,class_label":
            continue
        name, _, label = line.partition(",")
        rows.append((name.strip(), label.strip()))
    if not rows:
        raise EmptyCorpus(f"empty manifest in {corpus_dir}")
    return rows


@dataclass(frozen=True)
class ClassRow:
    class_label: str
    positives_detected: int
    total: int
    rate: float


@dataclass(frozen=True)
class CorpusReport:
    rows: list[ClassRow]
    false_positive_rate: float
    wall_time: float
    config: dict
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "rows": [{"class_label": r.class_label, "positives_detected": r.positives_detected,
                      "total": r.total, "rate": r.rate} for r in self.rows],
            "false_positive_rate": self.false_positive_rate,
            "wall_time": self.wall_time,
            "config": self.config,
            "warnings": list(self.warnings),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "CorpusReport":
        d = json.loads(text)
        rows = [ClassRow(r["class_label"], r["positives_detected"], r["total"], r["rate"])
                for r in d["rows"]]
        return cls(rows=rows, false_positive_rate=d["false_positive_rate"],
                   wall_time=d["wall_time"], config=d["config"],
                   warnings=list(d.get("warnings", [])))

    def format_table(self) -> str:
        lines = [f"{'class label':<20} {'detected positive':>18} {'rate':>8} {'examples':>9}"]
        for r in self.rows:
            lines.append(f"{r.class_label:<20} {r.positives_detected:>18d} "
                         f"{r.rate:>8.3f} {r.total:>9d}")
        lines.append(f"false positive rate: {self.false_positive_rate:.4f}")
        lines.append(f"wall time: {self.wall_time:.2f} s")
        return "\n".join(lines)


def evaluate_corpus(corpus_dir: str | Path, params: DetectorParams = DetectorParams(),
                    jobs: int = 1) -> CorpusReport:
    """Run the detector over every manifest entry and aggregate per class.

    Results are keyed by filename and aggregated in sorted order, so the
    report does not depend on worker count or completion order.
    """
    corpus = Path(corpus_dir)
    manifest = read_manifest(corpus)
    start = time.perf_counter()
    warnings: list[str] = []
    labels: dict[str, str] = {}
    verdicts: dict[str, bool] = {}

    def run_one(name: str) -> bool:
        img = load_pgm((corpus / name).read_bytes())
        return detect_end_of_restriction(img, params).positive

    todo = []
    for name, label in manifest:
        if not (corpus / name).is_file():
            warnings.append(f"missing file listed in manifest: {name}")
            continue
        labels[name] = label
        todo.append(name)
    if not todo:
        raise EmptyCorpus(f"no usable images in {corpus_dir}")

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            for name, verdict in zip(todo, pool.map(run_one, todo)):
                verdicts[name] = verdict
    else:
        for name in todo:
            verdicts[name] = run_one(name)

    per_class: dict[str, list[bool]] = {}
    for name in sorted(verdicts):
        per_class.setdefault(labels[name], []).append(verdicts[name])

    rows = [ClassRow(label, sum(v), len(v), sum(v) / len(v))
            for label, v in sorted(per_class.items())]
    neg = [v for label, vs in per_class.items() if label != POSITIVE_CLASS for v in vs]
    fp = (sum(neg) / len(neg)) if neg else 0.0
    return CorpusReport(rows=rows, false_positive_rate=fp,
                        wall_time=time.perf_counter() - start,
                        config=params_to_dict(params), warnings=warnings)
