"""Reservoir spectra and synthesis of correlated Gaussian control noise.

The control circuit is modelled as an ohmic reservoir with spectral density
J(w) = coupling * w * exp(-w / cutoff).  In the classical (high-temperature)
limit the symmetrized power spectrum of the control-signal fluctuations is
S(w) = 2 * T * J(w) / w, which is finite at w = 0; its zero-frequency value
S(0) = 2 * T * coupling is what enters every dephasing rate.

Noise felt at two sites a distance r apart is correlated through the finite
propagation speed of reservoir excitations; the cross spectrum is the on-site
spectrum times a geometry kernel f(w r / v).

Trajectories are synthesized spectrally: independent complex Gaussian
amplitudes per frequency bin, scaled so the discrete process has exactly the
target (cross-)spectrum on the grid, then inverse-FFT'd to the time domain.
Natural units throughout: hbar = k_B = 1.
"""
from __future__ import annotations

import csv
import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "Geometry",
    "OhmicBath",
    "TopologyKind",
    "NoiseTopology",
    "TrajectoryBundle",
    "PsdEstimate",
    "spectral_density",
    "propagation_kernel_f",
    "cross_spectral_density",
    "classical_psd",
    "spatial_correlation_matrix",
    "SpectralSynthesizer",
    "synthesize_trajectories",
    "trajectory_seed_sequence",
    "estimate_psd",
    "write_psd_csv",
]

# Relative tolerance for negative eigenvalues of the per-frequency spatial
# correlation matrix; anything below -EIG_CLAMP_TOL * lambda_max is a bug.
EIG_CLAMP_TOL = 1e-10


class Geometry(enum.Enum):
    """Reservoir dimensionality; fixes the spatial correlation kernels."""

    ONE_D = "1d"
    THREE_D = "3d"


@dataclass(frozen=True)
class OhmicBath:
    """Ohmic reservoir parameters.

    Parameters
    ----------
    coupling:
        Strength prefactor of the spectral density (dimensionless * time).
    cutoff:
        Exponential cutoff angular frequency, > 0.
    temperature:
        Reservoir temperature in energy units (k_B = 1), >= 0.  Zero is
        allowed for the quantum (quadrature) coupling coefficients but not
        for classical noise sampling.
    geometry:
        Spatial model used for inter-site correlations.
    velocity:
        Propagation speed of reservoir excitations, > 0.
    """

    coupling: float
    cutoff: float
    temperature: float = 0.0
    geometry: Geometry = Geometry.ONE_D
    velocity: float = 1.0

    def __post_init__(self) -> None:
        if self.coupling <= 0:
            raise ValueError(f"coupling must be > 0, got {self.coupling}")
        if self.cutoff <= 0:
            raise ValueError(f"cutoff must be > 0, got {self.cutoff}")
        if self.temperature < 0:
            raise ValueError(f"temperature must be >= 0, got {self.temperature}")
        if self.velocity <= 0:
            raise ValueError(f"velocity must be > 0, got {self.velocity}")
        if not isinstance(self.geometry, Geometry):
            object.__setattr__(self, "geometry", Geometry(self.geometry))


class TopologyKind(enum.Enum):
    UNIFORM = "uniform"
    INDEPENDENT = "independent"
    SPATIAL = "spatial"


@dataclass(frozen=True)
class NoiseTopology:
    """How the noise sources seen by different qubits are related.

    Uniform: one central source shared by everyone.  Independent: one
    statistically independent source per qubit.  Spatial: per-qubit sources
    correlated through the reservoir geometry; requires site coordinates.
    """

    kind: TopologyKind
    positions: tuple | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.kind, TopologyKind):
            object.__setattr__(self, "kind", TopologyKind(self.kind))
        if self.kind is TopologyKind.SPATIAL:
            if self.positions is None or len(self.positions) == 0:
                raise ValueError("spatial topology requires site positions")
            object.__setattr__(
                self, "positions", tuple(tuple(np.atleast_1d(p)) for p in self.positions)
            )
        elif self.positions is not None:
            raise ValueError(f"{self.kind.value} topology takes no positions")

    @classmethod
    def uniform(cls) -> "NoiseTopology":
        return cls(TopologyKind.UNIFORM)

    @classmethod
    def independent(cls) -> "NoiseTopology":
        return cls(TopologyKind.INDEPENDENT)

    @classmethod
    def spatial(cls, positions: Sequence) -> "NoiseTopology":
        return cls(TopologyKind.SPATIAL, tuple(positions))


@dataclass(frozen=True)
class TrajectoryBundle:
    """One realization of L correlated discrete-time noise trajectories.

    ``samples`` has shape (L, n_steps); row j is the noise seen by qubit j at
    times 0, dt, ..., (n_steps - 1) dt.  Immutable after creation.
    """

    dt: float
    n_steps: int
    samples: np.ndarray
    seed: int

    @property
    def n_trajectories(self) -> int:
        return self.samples.shape[0]

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.n_steps) * self.dt


def _check_frequencies(omega) -> np.ndarray:
    w = np.asarray(omega, dtype=float)
    if np.any(w < 0):
        raise ValueError("frequencies must be >= 0")
    return w


def _scalar_like(value: np.ndarray, reference) -> float | np.ndarray:
    return float(value) if np.isscalar(reference) or np.ndim(reference) == 0 else value


def spectral_density(bath: OhmicBath, omega) -> float | np.ndarray:
    """Ohmic spectral density J(w) = coupling * w * exp(-w / cutoff)."""
    w = _check_frequencies(omega)
    return _scalar_like(bath.coupling * w * np.exp(-w / bath.cutoff), omega)


def propagation_kernel_f(x, geometry: Geometry) -> float | np.ndarray:
    """Cross-spectrum kernel f(x): cos(x) in 1D, sin(x)/x in 3D.

    x = w r / v is the phase a reservoir excitation accumulates travelling
    between the two sites.  f(0) = 1 and |f| <= 1 in both geometries; the
    3D kernel is evaluated by its limit at x = 0.
    """
    xv = np.asarray(x, dtype=float)
    if Geometry(geometry) is Geometry.ONE_D:
        out = np.cos(xv)
    else:
        out = np.sinc(xv / np.pi)
    return _scalar_like(out, x)


def cross_spectral_density(bath: OhmicBath, omega, r: float) -> float | np.ndarray:
    """Cross-spectral density between sites a distance r apart.

    Reduces to the on-site spectral density at r = 0 and, for any r, in the
    low-frequency limit.
    """
    if r < 0:
        raise ValueError(f"distance must be >= 0, got {r}")
    w = _check_frequencies(omega)
    kernel = propagation_kernel_f(w * r / bath.velocity, bath.geometry)
    return _scalar_like(kernel * bath.coupling * w * np.exp(-w / bath.cutoff), omega)


def classical_psd(bath: OhmicBath, omega) -> float | np.ndarray:
    """Classical (high-temperature) symmetrized noise power spectrum.

    S(w) = 2 T J(w) / w = 2 T coupling exp(-w / cutoff), continuous at w = 0
    where it equals 2 T coupling.  This is the spectrum sampled by the
    Monte-Carlo engine; it is undefined at T = 0, where the quantum coupling
    coefficients must be obtained by quadrature instead.
    """
    if bath.temperature <= 0:
        raise ValueError(
            "classical power spectrum requires temperature > 0; "
            "use the quadrature coupling coefficients at T = 0"
        )
    w = _check_frequencies(omega)
    out = 2.0 * bath.temperature * bath.coupling * np.exp(-w / bath.cutoff)
    return _scalar_like(out, omega)


def _distance_matrix(positions: Sequence) -> np.ndarray:
    pts = np.atleast_2d(np.asarray(positions, dtype=float))
    if pts.shape[0] == 1 and pts.shape[1] > 1 and np.ndim(positions) == 1:
        pts = pts.T  # list of scalar coordinates
    diff = pts[:, None, :] - pts[None, :, :]
    return np.sqrt((diff**2).sum(axis=-1))


def spatial_correlation_matrix(bath: OhmicBath, positions: Sequence, omega: float) -> np.ndarray:
    """Per-frequency matrix of kernels f(w r_jk / v); symmetric PSD, unit diagonal."""
    r = _distance_matrix(positions)
    return propagation_kernel_f(omega * r / bath.velocity, bath.geometry)


def _validate_grid(bath: OhmicBath, dt: float, n_steps: int) -> None:
    if dt <= 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    if n_steps < 2 or n_steps & (n_steps - 1):
        raise ValueError(f"n_steps must be a power of two >= 2, got {n_steps}")
    if dt * bath.cutoff > 0.5 + 1e-12:
        raise ValueError(
            f"grid too coarse: dt * cutoff = {dt * bath.cutoff:.3g} > 0.5; "
            "decrease dt to resolve the spectral cutoff"
        )


class SpectralSynthesizer:
    """Reusable generator of noise bundles with a prescribed cross-spectrum.

    Precomputes the per-bin amplitude factors once; ``draw`` then yields one
    bundle per call from the supplied random generator.  ``draw_spectrum``
    exposes the frequency-domain amplitudes (the rfft of the bundle) so that
    linear functionals of the noise can be assembled before the inverse
    transform.
    """

    def __init__(
        self,
        bath: OhmicBath,
        topology: NoiseTopology,
        n_trajectories: int,
        dt: float,
        n_steps: int,
    ) -> None:
        _validate_grid(bath, dt, n_steps)
        self.bath = bath
        self.topology = topology
        self.n_trajectories = int(n_trajectories)
        if self.n_trajectories < 1:
            raise ValueError("need at least one trajectory")
        self.dt = float(dt)
        self.n_steps = int(n_steps)
        self.omega = 2.0 * np.pi * np.fft.rfftfreq(self.n_steps, d=self.dt)
        self._n_bins = self.omega.size
        # Per-bin scale: E|Z_k|^2 = n_steps * S(w_k) / dt reproduces the
        # target spectrum through the inverse DFT.
        scale = np.sqrt(self.n_steps * classical_psd(bath, self.omega) / self.dt)
        if topology.kind is TopologyKind.SPATIAL:
            if len(topology.positions) != self.n_trajectories:
                raise ValueError(
                    f"spatial topology has {len(topology.positions)} positions "
                    f"for {self.n_trajectories} trajectories"
                )
            self._mixing = self._factor_correlations(scale)
            self._scale = None
        else:
            self._mixing = None
            self._scale = scale

    def _factor_correlations(self, scale: np.ndarray) -> np.ndarray:
        """Per-bin mixing matrices B_k with B_k B_k^T = S_jk(w_k)."""
        n = self.n_trajectories
        r = _distance_matrix(self.topology.positions)
        mixing = np.empty((self._n_bins, n, n))
        for k, w in enumerate(self.omega):
            corr = propagation_kernel_f(w * r / self.bath.velocity, self.bath.geometry)
            eigval, eigvec = np.linalg.eigh(corr)
            lam_max = max(eigval[-1], 0.0)
            floor = -EIG_CLAMP_TOL * lam_max
            if np.any(eigval < floor):
                raise ValueError(
                    "spatial correlation matrix is not positive semidefinite "
                    f"(eigenvalue {eigval.min():.3e} at omega = {w:.3g})"
                )
            eigval = np.clip(eigval, 0.0, None)
            mixing[k] = (eigvec * np.sqrt(eigval)) * scale[k]
        return mixing

    def draw_spectrum(self, rng: np.random.Generator) -> np.ndarray:
        """One bundle in the frequency domain: complex array (L, n_bins).

        The inverse rfft of each row is one real trajectory.  The draw order
        is fixed, so a given generator state always yields the same bundle.
        """
        nb = self._n_bins
        if self.topology.kind is TopologyKind.UNIFORM:
            re = rng.standard_normal(nb)
            im = rng.standard_normal(nb)
            z = (re + 1j * im) * (self._scale / np.sqrt(2.0))
            z[0] = re[0] * self._scale[0]
            z[-1] = re[-1] * self._scale[-1]
            return np.broadcast_to(z, (self.n_trajectories, nb))
        if self.topology.kind is TopologyKind.INDEPENDENT:
            re = rng.standard_normal((self.n_trajectories, nb))
            im = rng.standard_normal((self.n_trajectories, nb))
            z = (re + 1j * im) * (self._scale / np.sqrt(2.0))
            z[:, 0] = re[:, 0] * self._scale[0]
            z[:, -1] = re[:, -1] * self._scale[-1]
            return z
        # Spatial: white complex vector per bin, mixed by B_k.
        re = rng.standard_normal((nb, self.n_trajectories))
        im = rng.standard_normal((nb, self.n_trajectories))
        white = (re + 1j * im) / np.sqrt(2.0)
        white[0] = re[0]   # DC and Nyquist bins must be real
        white[-1] = re[-1]
        z = np.einsum("kij,kj->ik", self._mixing, white)
        return z

    def draw(self, rng: np.random.Generator) -> np.ndarray:
        """One bundle in the time domain: real array (L, n_steps), read-only."""
        z = self.draw_spectrum(rng)
        if self.topology.kind is TopologyKind.UNIFORM:
            row = np.fft.irfft(z[0], n=self.n_steps)
            samples = np.broadcast_to(row, (self.n_trajectories, self.n_steps))
        else:
            samples = np.fft.irfft(z, n=self.n_steps)
            samples.setflags(write=False)
        return samples


def trajectory_seed_sequence(master_seed: int, index: int) -> np.random.SeedSequence:
    """Stream key for one trajectory bundle: hash of (master seed, index).

    Keying streams by index makes ensembles reproducible bit-exactly no
    matter how the work is scheduled across threads.
    """
    if not 0 <= int(master_seed) < 2**64:
        raise ValueError("master seed must fit in an unsigned 64-bit integer")
    return np.random.SeedSequence(int(master_seed), spawn_key=(int(index),))


def synthesize_trajectories(
    bath: OhmicBath,
    topology: NoiseTopology,
    n_trajectories: int,
    dt: float,
    n_steps: int,
    seed: int,
) -> TrajectoryBundle:
    """Synthesize one bundle of stationary zero-mean Gaussian noise trajectories.

    The auto-spectrum of every trajectory matches ``classical_psd`` exactly on
    the discrete frequency grid, and for spatial topologies the cross-spectrum
    between sites j, k is the auto-spectrum times f(w r_jk / v).  A uniform
    topology returns L views of one shared trajectory.

    Parameters
    ----------
    n_trajectories:
        Number of rows L (must equal the number of sites for spatial
        topologies).
    dt, n_steps:
        Time grid; n_steps must be a power of two and dt * cutoff <= 0.5 so
        the exponential cutoff is resolved.
    seed:
        Unsigned 64-bit seed; identical (seed, parameters) give identical
        bundles.
    """
    synth = SpectralSynthesizer(bath, topology, n_trajectories, dt, n_steps)
    rng = np.random.Generator(np.random.PCG64(trajectory_seed_sequence(seed, 0)))
    return TrajectoryBundle(dt=dt, n_steps=n_steps, samples=synth.draw(rng), seed=int(seed))


@dataclass(frozen=True)
class PsdEstimate:
    """Averaged-periodogram estimate of a power spectrum.

    ``psd`` estimates the symmetrized spectrum (the object ``classical_psd``
    returns), tabulated on the non-negative half of the frequency grid.  The
    total variance is (d_omega / 2 pi) * (psd[0] + 2 * sum(psd[1:])).
    """

    omega: np.ndarray
    psd: np.ndarray
    stderr: np.ndarray
    n_average: int


def estimate_psd(trajectories, dt: float) -> PsdEstimate:
    """Averaged periodogram of one or more equal-length trajectories.

    Accepts a single trajectory (1-D) or a stack with time along the last
    axis; all leading axes are flattened into the averaging ensemble.
    """
    x = np.asarray(trajectories, dtype=float)
    if x.ndim == 0:
        raise ValueError("need a trajectory, got a scalar")
    n = x.shape[-1]
    if n < 256:
        raise ValueError(f"trajectory too short for a PSD estimate: {n} < 256 samples")
    flat = x.reshape(-1, n)
    periodograms = (dt / n) * np.abs(np.fft.rfft(flat, axis=-1)) ** 2
    psd = periodograms.mean(axis=0)
    m = flat.shape[0]
    if m > 1:
        stderr = periodograms.std(axis=0, ddof=1) / np.sqrt(m)
    else:
        stderr = psd.copy()  # single periodogram bins are ~100% uncertain
    omega = 2.0 * np.pi * np.fft.rfftfreq(n, d=dt)
    return PsdEstimate(omega=omega, psd=psd, stderr=stderr, n_average=m)


def write_psd_csv(path, estimate: PsdEstimate, target: np.ndarray, header_lines: Sequence[str] = ()) -> None:
    """Write a PSD comparison table: columns (omega, S_target, S_estimated, stderr)."""
    target = np.asarray(target, dtype=float)
    with open(path, "w", newline="") as fh:
        for line in header_lines:
            fh.write(f"# {line}\n")
        fh.write(f"# n_average: {estimate.n_average}\n")
        writer = csv.writer(fh)
        writer.writerow(["omega", "S_target", "S_estimated", "stderr"])
        for w, st, se, err in zip(estimate.omega, target, estimate.psd, estimate.stderr):
            writer.writerow([repr(float(w)), repr(float(st)), repr(float(se)), repr(float(err))])
