"""Monte Carlo path loss dataset generation from the TR 38.900 RMa models.

Draws random 2D distances per frequency, evaluates the RMa mean model at
the corresponding 3D distance, and adds lognormal (Gaussian-in-dB) shadow
fading. Output is deterministic for a fixed config: every frequency gets
its own random substream derived from (seed, frequency index), and within
a substream distances are drawn before shadow fading.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .models import (
    Environment,
    RmaParams,
    ApplicabilityError,
    RMA_LOS_D2D_RANGE_M,
    RMA_NLOS_D2D_RANGE_M,
    breakpoint_distance,
    distance_3d,
    _los_mean,
    _nlos_mean,
)

# Recalibration defaults: nine carrier frequencies spanning 1-100 GHz with
# 50 000 instances each (450 000 samples per environment).
DEFAULT_FREQUENCIES_GHZ = (1.0, 2.0, 6.0, 15.0, 28.0, 38.0, 60.0, 73.0, 100.0)
DEFAULT_SAMPLES_PER_FREQUENCY = 50_000

# Shadow fading standard deviations of the RMa models (dB).
SIGMA_LOS_PRE_BP_DB = 4.0
SIGMA_LOS_POST_BP_DB = 6.0
SIGMA_NLOS_DB = 8.0

SAMPLING_MODES = ("linear", "log")

DATASET_CSV_HEADER = ("fc_ghz", "d2d_m", "d3d_m", "env", "pl_db", "seed", "sampling_mode")


@dataclass(frozen=True)
class PathLossSample:
    """One (frequency, distance, path loss) observation.

    ``d_m`` is the distance the CI fit runs against; datasets generated here
    store the 3D distance, matching the distance the RMa formulas use.
    """

    fc_ghz: float
    d_m: float
    pl_db: float
    environment: Environment


@dataclass(frozen=True)
class SimulationConfig:
    """Configuration of one Monte Carlo dataset.

    Defaults reproduce the recalibration setup: nine frequencies, 50 000
    samples each, default RMa geometry, 2D distances drawn uniformly over
    the environment's full span (10 m to 10 km LOS, 10 m to 5 km NLOS).

    ``distance_sampling`` selects uniform-linear ("linear") or uniform in
    log-distance ("log"); the mode is recorded in exported datasets since
    it changes the fitted CI coefficients. ``include_shadow_fading=False``
    emits the mean model only, which is useful for oracle checks.
    """

    environment: Environment
    frequencies_ghz: tuple[float, ...] = DEFAULT_FREQUENCIES_GHZ
    samples_per_frequency: int = DEFAULT_SAMPLES_PER_FREQUENCY
    d2d_min_m: float = 10.0
    d2d_max_m: float | None = None
    params: RmaParams = field(default_factory=RmaParams)
    seed: int = 0
    distance_sampling: str = "linear"
    include_shadow_fading: bool = True

    def __post_init__(self):
        if not isinstance(self.environment, Environment):
            object.__setattr__(self, "environment", Environment(self.environment))
        span = (RMA_LOS_D2D_RANGE_M if self.environment is Environment.LOS
                else RMA_NLOS_D2D_RANGE_M)
        if self.d2d_max_m is None:
            object.__setattr__(self, "d2d_max_m", span[1])
        if not self.frequencies_ghz:
            raise ValueError("frequencies_ghz must not be empty")
        if any(fc <= 0 for fc in self.frequencies_ghz):
            raise ValueError("frequencies must be positive")
        if self.samples_per_frequency <= 0:
            raise ValueError("samples_per_frequency must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.distance_sampling not in SAMPLING_MODES:
            raise ValueError(f"distance_sampling must be one of {SAMPLING_MODES}")
        if not self.d2d_min_m < self.d2d_max_m:
            raise ValueError("d2d_min_m must be less than d2d_max_m")
        if self.d2d_min_m < span[0] or self.d2d_max_m > span[1]:
            raise ApplicabilityError(
                f"d2d bounds [{self.d2d_min_m:g}, {self.d2d_max_m:g}] m outside the "
                f"[{span[0]:g}, {span[1]:g}] m RMa {self.environment.value} span"
            )


@dataclass
class SimulatedDataset:
    """Columnar Monte Carlo dataset; iterates as PathLossSample records."""

    environment: Environment
    fc_ghz: np.ndarray
    d2d_m: np.ndarray
    d3d_m: np.ndarray
    pl_db: np.ndarray
    seed: int
    sampling_mode: str

    def __len__(self) -> int:
        return self.pl_db.size

    def __getitem__(self, i: int) -> PathLossSample:
        return PathLossSample(float(self.fc_ghz[i]), float(self.d3d_m[i]),
                              float(self.pl_db[i]), self.environment)

    def __iter__(self) -> Iterator[PathLossSample]:
        for fc, d3d, pl in zip(self.fc_ghz, self.d3d_m, self.pl_db):
            yield PathLossSample(float(fc), float(d3d), float(pl), self.environment)

    def to_samples(self) -> list[PathLossSample]:
        return list(self)

    def write_csv(self, path) -> None:
        """Write the dataset with full float precision (repr round-trip)."""
        with open(path, "w", newline="") as f:
            f.write(self.to_csv())

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(DATASET_CSV_HEADER)
        env = self.environment.value
        seed = str(self.seed)
        mode = self.sampling_mode
        for fc, d2d, d3d, pl in zip(self.fc_ghz, self.d2d_m, self.d3d_m, self.pl_db):
            writer.writerow([repr(float(fc)), repr(float(d2d)), repr(float(d3d)),
                             env, repr(float(pl)), seed, mode])
        return buf.getvalue()


def sample_shadow_fading(sigma_db: float, rng: np.random.Generator) -> float:
    """One zero-mean Gaussian shadow fading draw in dB.

    Deterministic given the generator state; sigma_db=0 returns exactly 0.
    """
    if sigma_db < 0:
        raise ValueError("sigma_db must be non-negative")
    return float(rng.normal(0.0, sigma_db))


def _frequency_rng(seed: int, freq_index: int) -> np.random.Generator:
    # Independent substream per (seed, frequency index): draws for one
    # frequency never move when another frequency's sample count changes.
    return np.random.default_rng([seed, freq_index])


def generate_3gpp_dataset(config: SimulationConfig) -> SimulatedDataset:
    """Generate one Monte Carlo dataset from the RMa models.

    Per frequency: draw 2D distances, convert to 3D, evaluate the mean
    model, then add a shadow fading draw (LOS: 4 dB before the breakpoint,
    6 dB after, 4 dB throughout when the breakpoint exceeds the 10 km
    ceiling; NLOS: 8 dB). The 2D span was validated against the model's
    applicability range at config construction; the mean model is evaluated
    at the 3D distance, which may exceed the 2D span by the height offset.
    """
    params = config.params
    n = config.samples_per_frequency
    log_bounds = (np.log10(config.d2d_min_m), np.log10(config.d2d_max_m))
    los = config.environment is Environment.LOS

    fc_cols, d2d_cols, d3d_cols, pl_cols = [], [], [], []
    for index, fc in enumerate(config.frequencies_ghz):
        rng = _frequency_rng(config.seed, index)
        if config.distance_sampling == "linear":
            d2d = rng.uniform(config.d2d_min_m, config.d2d_max_m, n)
        else:
            d2d = 10.0 ** rng.uniform(log_bounds[0], log_bounds[1], n)
        d3d = distance_3d(d2d, params.h_bs, params.h_ut)
        if los:
            mean_pl = _los_mean(params, d3d, fc)
            dbp = breakpoint_distance(params.h_bs, params.h_ut, fc)
            if dbp >= RMA_LOS_D2D_RANGE_M[1]:
                sigma = np.full(n, SIGMA_LOS_PRE_BP_DB)
            else:
                sigma = np.where(d3d <= dbp, SIGMA_LOS_PRE_BP_DB, SIGMA_LOS_POST_BP_DB)
        else:
            mean_pl = _nlos_mean(params, d3d, fc)
            sigma = np.full(n, SIGMA_NLOS_DB)
        if config.include_shadow_fading:
            pl = mean_pl + rng.normal(0.0, sigma)
        else:
            pl = mean_pl
        fc_cols.append(np.full(n, float(fc)))
        d2d_cols.append(d2d)
        d3d_cols.append(d3d)
        pl_cols.append(np.asarray(pl, dtype=float))

    return SimulatedDataset(
        environment=config.environment,
        fc_ghz=np.concatenate(fc_cols),
        d2d_m=np.concatenate(d2d_cols),
        d3d_m=np.concatenate(d3d_cols),
        pl_db=np.concatenate(pl_cols),
        seed=config.seed,
        sampling_mode=config.distance_sampling,
    )


def read_dataset_csv(path) -> tuple[list[PathLossSample], dict]:
    """Read a dataset CSV back into samples plus {seed, sampling_mode} meta.

    Meta values are None when the column is not constant across rows.
    """
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None or tuple(header) != DATASET_CSV_HEADER:
            raise ValueError(
                f"not a dataset CSV: expected header {','.join(DATASET_CSV_HEADER)}"
            )
        samples: list[PathLossSample] = []
        seeds, modes = set(), set()
        for row in reader:
            if not row:
                continue
            fc, _d2d, d3d, env, pl, seed, mode = row
            samples.append(PathLossSample(float(fc), float(d3d), float(pl),
                                          Environment(env)))
            seeds.add(seed)
            modes.add(mode)
    meta = {
        "seed": int(next(iter(seeds))) if len(seeds) == 1 else None,
        "sampling_mode": next(iter(modes)) if len(modes) == 1 else None,
    }
    return samples, meta
