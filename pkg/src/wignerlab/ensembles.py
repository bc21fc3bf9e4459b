"""Sampling of Hermitian Wigner matrices and Gaussian-divisible sums.

A Hermitian Wigner matrix X has independent entries (up to the Hermitian
symmetry) with mean zero, Var(Re x_ij) = Var(Im x_ij) = sigma^2/2 above the
diagonal and Var(x_jj) = sigma^2 on the (real) diagonal.  Throughout the
package sigma^2 = 1/4.  A Gaussian-divisible matrix is

    W = X + sqrt(kappa) * V,

with V an independent GUE matrix drawn from exp(-tr V^2 / 2) dV, i.e.
Var(Re V_ij) = Var(Im V_ij) = 1/2 off the diagonal and Var(V_jj) = 1.

Randomness is counter-based: every matrix is produced by a Philox generator
whose key is derived from (seed, stream id, replica id), so X and V use
independent streams, replicas can be sampled in any order (or in parallel),
and identical specs give bit-identical matrices.
"""

from dataclasses import dataclass, replace

import numpy as np

SIGMA2 = 0.25

_LAW_KINDS = ("gaussian", "rademacher", "uniform", "student_t", "symmetric_pareto")

# stream ids keep the X and V entry draws on disjoint Philox keys
STREAM_WIGNER = 1
STREAM_GUE = 2
STREAM_REFERENCE = 3


@dataclass(frozen=True)
class ElementLaw:
    """Scalar element law, standardized to mean 0 and unit variance.

    `param` is the Student-t degrees of freedom or the Pareto tail index;
    unused for the parameter-free laws.
    """

    kind: str
    param: float = 0.0

    def __post_init__(self):
        if self.kind not in _LAW_KINDS:
            raise ValueError(f"unknown element law {self.kind!r}")
        if self.kind == "student_t":
            if self.param <= 0:
                raise ValueError("student_t requires df > 0")
            if self.param <= 2:
                raise ValueError("student_t with df <= 2 has infinite variance and cannot be standardized")
        if self.kind == "symmetric_pareto":
            if self.param <= 0:
                raise ValueError("symmetric_pareto requires tail_index > 0")
            if self.param <= 2:
                raise ValueError("symmetric_pareto with tail_index <= 2 has infinite variance and cannot be standardized")

    @property
    def has_fourth_moment(self):
        if self.kind == "student_t":
            return self.param > 4
        if self.kind == "symmetric_pareto":
            return self.param > 4
        return True

    @property
    def heavy_tailed(self):
        """True for laws kept out of edge acceptance runs (no fourth moment)."""
        return not self.has_fourth_moment

    def draw(self, rng, size):
        """Standardized draws (mean 0, variance 1) of the given shape."""
        if self.kind == "gaussian":
            return rng.standard_normal(size)
        if self.kind == "rademacher":
            return rng.integers(0, 2, size=size).astype(float) * 2.0 - 1.0
        if self.kind == "uniform":
            return rng.uniform(-np.sqrt(3.0), np.sqrt(3.0), size=size)
        if self.kind == "student_t":
            df = self.param
            return rng.standard_t(df, size=size) / np.sqrt(df / (df - 2.0))
        # symmetric Pareto: sign * P with P >= 1 of density a/p^{a+1}; the
        # symmetrized variable has mean 0 and second moment a/(a-2)
        a = self.param
        magnitude = 1.0 + rng.pareto(a, size=size)
        sign = rng.integers(0, 2, size=size).astype(float) * 2.0 - 1.0
        return sign * magnitude / np.sqrt(a / (a - 2.0))

    def label(self):
        if self.kind in ("student_t", "symmetric_pareto"):
            return f"{self.kind}:{self.param:g}"
        return self.kind


def parse_law(text):
    """Parse 'name' or 'name:param' into an ElementLaw."""
    if ":" in text:
        name, param = text.split(":", 1)
        return ElementLaw(name, float(param))
    return ElementLaw(text)


@dataclass(frozen=True)
class EnsembleSpec:
    """Recipe for one Gaussian-divisible sample W = X + sqrt(kappa) V."""

    n: int
    law: ElementLaw
    kappa: float
    seed: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n >= 1 required")
        if self.kappa < 0:
            raise ValueError("kappa >= 0 required")

    def with_seed(self, seed):
        return replace(self, seed=seed)

    def to_flat_dict(self):
        return {
            "n": self.n,
            "law": self.law.kind,
            "law_param": self.law.param,
            "kappa": self.kappa,
            "seed": self.seed,
        }

    @staticmethod
    def from_flat_dict(d):
        return EnsembleSpec(
            n=int(d["n"]),
            law=ElementLaw(d["law"], float(d.get("law_param", 0.0))),
            kappa=float(d["kappa"]),
            seed=int(d["seed"]),
        )


@dataclass(frozen=True)
class HermitianMatrix:
    entries: np.ndarray

    def __post_init__(self):
        a = self.entries
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("square matrix required")

    @property
    def n(self):
        return self.entries.shape[0]


def _mix64(x):
    """SplitMix64 finalizer; platform-independent 64-bit mixing."""
    x = np.uint64(x & 0xFFFFFFFFFFFFFFFF)
    x = (x ^ (x >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    x = (x ^ (x >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return x ^ (x >> np.uint64(31))


def derive_rng(seed, *ids):
    """Philox generator keyed by (seed, ids...).

    Distinct id tuples give independent streams; the derivation is pure
    arithmetic, so sampling order across replicas or threads is irrelevant.
    """
    k0 = np.uint64(seed & 0xFFFFFFFFFFFFFFFF)
    k1 = np.uint64(0x9E3779B97F4A7C15)
    for i in ids:
        k0 = _mix64(int(k0) ^ int(_mix64(int(i) & 0xFFFFFFFFFFFFFFFF)))
        k1 = _mix64(int(k1) + int(k0))
    key = (int(k1) << 64) | int(k0)
    return np.random.Generator(np.random.Philox(key=key))


def _hermitian_from_parts(diag, re_upper, im_upper, n):
    h = np.zeros((n, n), dtype=complex)
    iu = np.triu_indices(n, 1)
    h[iu] = re_upper + 1j * im_upper
    h = h + h.conj().T
    h[np.diag_indices(n)] = diag
    return h


def sample_wigner(spec, stream=STREAM_WIGNER, replica=0):
    """Sample the Wigner part X of an EnsembleSpec.

    Off-diagonal real/imaginary parts have variance sigma^2/2 = 1/8 and the
    real diagonal has variance sigma^2 = 1/4, each drawn from spec.law.
    """
    n = spec.n
    rng = derive_rng(spec.seed, stream, replica)
    m = n * (n - 1) // 2
    diag = spec.law.draw(rng, n) * np.sqrt(SIGMA2)
    re_u = spec.law.draw(rng, m) * np.sqrt(SIGMA2 / 2.0)
    im_u = spec.law.draw(rng, m) * np.sqrt(SIGMA2 / 2.0)
    return HermitianMatrix(_hermitian_from_parts(diag, re_u, im_u, n))


def sample_gue(n, seed, stream=STREAM_GUE, replica=0):
    """Sample a GUE matrix from exp(-tr V^2/2) dV."""
    if n < 1:
        raise ValueError("n >= 1 required")
    rng = derive_rng(seed, stream, replica)
    m = n * (n - 1) // 2
    diag = rng.standard_normal(n)
    re_u = rng.standard_normal(m) * np.sqrt(0.5)
    im_u = rng.standard_normal(m) * np.sqrt(0.5)
    return HermitianMatrix(_hermitian_from_parts(diag, re_u, im_u, n))


def compose_gauss_divisible(spec, replica=0):
    """W = X + sqrt(kappa) V with X, V from independent streams."""
    x = sample_wigner(spec, replica=replica)
    if spec.kappa == 0.0:
        return x
    v = sample_gue(spec.n, spec.seed, replica=replica)
    return HermitianMatrix(x.entries + np.sqrt(spec.kappa) * v.entries)
