"""Travel-time distributions and exact probabilistic operations.

Three concrete kinds make up a ``Distribution``: a finite discrete law
(:class:`DiscreteDist`), a normal law (:class:`NormalDist`) and a
degenerate constant (:class:`Constant`). Constants are canonicalized to
one-atom discrete laws wherever a single code path matters. Every value
is immutable and every operation is a pure function, so concurrent use
needs no coordination.

Normal laws have unbounded support; operations that need a bounded
discrete law (truncation, distortion integrals) go through
:func:`discretize` first.
"""

from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.stats import norm

from . import _kernels
from .errors import UnsupportedDistribution, ZeroMassError

__all__ = [
    "DiscreteDist",
    "NormalDist",
    "Constant",
    "Distribution",
    "CoupledSample",
    "convolve",
    "shift",
    "scale",
    "truncate_conditional",
    "mixture",
    "product_couple",
    "comonotone_couple",
    "stats",
    "cdf",
    "decumulative",
    "as_discrete",
    "discretize",
    "dist_to_json",
    "dist_from_json",
]

PROB_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class DiscreteDist:
    """Finite law given by ascending support values and their probabilities."""

    support: np.ndarray
    probs: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.support, dtype=np.float64)
        p = np.asarray(self.probs, dtype=np.float64)
        if s.ndim != 1 or p.ndim != 1 or s.size != p.size or s.size == 0:
            raise ValueError("support and probs must be 1-D arrays of equal, nonzero length")
        if s.size > 1 and not np.all(np.diff(s) > 0):
            raise ValueError("support must be strictly increasing with no duplicates")
        if np.any(p < 0):
            raise ValueError("probabilities must be nonnegative")
        if abs(p.sum() - 1.0) > PROB_TOL:
            raise ValueError(f"probabilities sum to {p.sum()!r}, not 1 within {PROB_TOL}")
        s.flags.writeable = False
        p.flags.writeable = False
        object.__setattr__(self, "support", s)
        object.__setattr__(self, "probs", p)

    @classmethod
    def from_atoms(cls, values, probs):
        """Build from unsorted atoms: sorts, merges near-equal values
        (within ``_kernels.MERGE_TOL``) and drops zero-probability atoms."""
        v = np.asarray(values, dtype=np.float64)
        p = np.asarray(probs, dtype=np.float64)
        order = np.argsort(v, kind="mergesort")
        v, p = _kernels.merge_atoms(v[order], p[order])
        keep = p > 0
        return cls(v[keep], p[keep])

    def mean(self) -> float:
        return float(np.dot(self.probs, self.support))

    def variance(self) -> float:
        m = self.mean()
        d = self.support - m
        return float(np.dot(self.probs, d * d))

    def __repr__(self):
        pairs = ", ".join(f"{v:g}: {p:g}" for v, p in zip(self.support, self.probs))
        return f"DiscreteDist({{{pairs}}})"


@dataclass(frozen=True)
class NormalDist:
    """Normal law N(mean, std^2); std must be positive."""

    mean: float
    std: float

    def __post_init__(self):
        if not self.std > 0:
            raise ValueError("std must be > 0")


@dataclass(frozen=True)
class Constant:
    """Degenerate law concentrated at one value."""

    value: float


Distribution = Union[DiscreteDist, NormalDist, Constant]


def as_discrete(x: Distribution) -> DiscreteDist:
    """Canonical discrete form of a discrete or constant law.

    Raises :class:`UnsupportedDistribution` for normal laws; callers that
    can tolerate discretization error should use :func:`discretize`.
    """
    if isinstance(x, DiscreteDist):
        return x
    if isinstance(x, Constant):
        return DiscreteDist(np.array([float(x.value)]), np.array([1.0]))
    raise UnsupportedDistribution(
        "operation needs a bounded discrete law; discretize the normal input first"
    )


def discretize(x: Distribution, n_atoms: int = 512, span: float = 8.0) -> DiscreteDist:
    """Discrete stand-in for any law.

    Normals are cut into ``n_atoms`` equal-probability buckets of the law
    conditioned on [mean - span*std, mean + span*std], each bucket
    represented by its conditional mean. This keeps the overall mean exact
    and bounds the neglected tail mass by 2*Phi(-span) (~1.2e-15 at the
    default span).
    """
    if not isinstance(x, NormalDist):
        return as_discrete(x)
    if n_atoms < 1:
        raise ValueError("n_atoms must be >= 1")
    lo_u = norm.cdf(-span)
    hi_u = norm.cdf(span)
    us = lo_u + (hi_u - lo_u) * np.linspace(0.0, 1.0, n_atoms + 1)
    z = norm.ppf(us)
    dens = norm.pdf(z)
    # E[Z | z_k < Z <= z_{k+1}] for the standard normal
    atom_z = (dens[:-1] - dens[1:]) / np.diff(us)
    support = x.mean + x.std * atom_z
    probs = np.full(n_atoms, 1.0 / n_atoms)
    return DiscreteDist(support, probs)


# ----------------------------------------------------------------------
# elementary operations
# ----------------------------------------------------------------------

def convolve(a: DiscreteDist, b: DiscreteDist) -> DiscreteDist:
    """Exact law of the sum of two independent discrete laws."""
    v, p = _kernels.convolve_atoms(a.support, a.probs, b.support, b.probs)
    keep = p > 0
    return DiscreteDist(v[keep], p[keep])


def shift(x: Distribution, m: float) -> Distribution:
    """Law of X + m."""
    m = float(m)
    if isinstance(x, DiscreteDist):
        return DiscreteDist(x.support + m, x.probs)
    if isinstance(x, NormalDist):
        return NormalDist(x.mean + m, x.std)
    return Constant(x.value + m)


def scale(x: Distribution, lam: float) -> Distribution:
    """Law of lam * X."""
    lam = float(lam)
    if lam == 0.0:
        return Constant(0.0)
    if isinstance(x, DiscreteDist):
        s = x.support * lam
        if lam > 0:
            return DiscreteDist(s, x.probs)
        return DiscreteDist(s[::-1].copy(), x.probs[::-1].copy())
    if isinstance(x, NormalDist):
        return NormalDist(lam * x.mean, abs(lam) * x.std)
    return Constant(lam * x.value)


def truncate_conditional(x: Distribution, lo: float, hi: float,
                         n_atoms: int = 512) -> DiscreteDist:
    """Conditional law of X given X in [lo, hi], renormalized.

    Normal inputs are discretized first (``n_atoms`` buckets). Raises
    :class:`ZeroMassError` when the interval carries no mass.
    """
    d = discretize(x, n_atoms=n_atoms)
    keep = (d.support >= lo) & (d.support <= hi)
    mass = float(d.probs[keep].sum())
    if mass <= 1e-15:
        raise ZeroMassError(f"no probability mass in [{lo}, {hi}]")
    return DiscreteDist(d.support[keep], d.probs[keep] / mass)


def mixture(p: float, x: Distribution, z: Distribution) -> Distribution:
    """Lottery with CDF p*F_X + (1-p)*F_Z.

    Only discrete/constant components can be mixed for 0 < p < 1 (the
    result would otherwise leave the representable kinds); p in {0, 1}
    passes the chosen component through unchanged.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError("mixture weight must lie in [0, 1]")
    if p == 1.0:
        return x
    if p == 0.0:
        return z
    dx = as_discrete(x)
    dz = as_discrete(z)
    values = np.concatenate([dx.support, dz.support])
    probs = np.concatenate([p * dx.probs, (1.0 - p) * dz.probs])
    return DiscreteDist.from_atoms(values, probs)


# ----------------------------------------------------------------------
# couplings
# ----------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CoupledSample:
    """Joint finite law over named variables on one outcome space.

    ``values`` holds one column per name, one row per outcome. Supports
    almost-sure comparisons and independence/comonotonicity constructions.
    """

    names: tuple
    outcome_probs: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        names = tuple(self.names)
        p = np.asarray(self.outcome_probs, dtype=np.float64)
        v = np.asarray(self.values, dtype=np.float64)
        if len(set(names)) != len(names) or not names:
            raise ValueError("names must be nonempty and unique")
        if p.ndim != 1 or np.any(p < 0) or abs(p.sum() - 1.0) > PROB_TOL:
            raise ValueError("outcome_probs must be nonnegative and sum to 1")
        if v.shape != (p.size, len(names)):
            raise ValueError("values must have one row per outcome, one column per name")
        p.flags.writeable = False
        v.flags.writeable = False
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "outcome_probs", p)
        object.__setattr__(self, "values", v)

    def column(self, name: str) -> np.ndarray:
        return self.values[:, self.names.index(name)]

    def marginal(self, name: str) -> DiscreteDist:
        """Marginal law of one column, equal values merged."""
        return DiscreteDist.from_atoms(self.column(name), self.outcome_probs)

    @classmethod
    def of(cls, x: Distribution, name: str = "X") -> "CoupledSample":
        d = as_discrete(x)
        return cls((name,), d.probs, d.support.reshape(-1, 1))

    def almost_surely_le(self, a: str, b: str) -> bool:
        """True when column a <= column b on every positive-mass outcome."""
        mask = self.outcome_probs > 0
        return bool(np.all(self.column(a)[mask] <= self.column(b)[mask]))


def product_couple(xy: CoupledSample, z: Distribution, name: str = "Z") -> CoupledSample:
    """Adjoin an independent variable: outcome space becomes the product."""
    dz = as_discrete(z)
    n, m = xy.outcome_probs.size, dz.support.size
    probs = np.outer(xy.outcome_probs, dz.probs).ravel()
    base = np.repeat(xy.values, m, axis=0)
    zcol = np.tile(dz.support, n).reshape(-1, 1)
    return CoupledSample(xy.names + (name,), probs, np.hstack([base, zcol]))


def comonotone_couple(x: DiscreteDist, y: DiscreteDist,
                      names=("X", "Y")) -> CoupledSample:
    """Quantile coupling: both variables ride one uniform rank variable."""
    cx = np.cumsum(x.probs)
    cy = np.cumsum(y.probs)
    rows = []
    probs = []
    i = j = 0
    prev = 0.0
    while i < cx.size and j < cy.size:
        t = min(cx[i], cy[j])
        w = t - prev
        if w > 0:
            rows.append((x.support[i], y.support[j]))
            probs.append(w)
        prev = t
        if cx[i] <= t:
            i += 1
        if cy[j] <= t:
            j += 1
    return CoupledSample(tuple(names), np.array(probs), np.array(rows))


# ----------------------------------------------------------------------
# summaries
# ----------------------------------------------------------------------

def stats(x: Distribution):
    """(mean, variance, min, max); normal laws report infinite extremes."""
    if isinstance(x, DiscreteDist):
        return (x.mean(), x.variance(), float(x.support[0]), float(x.support[-1]))
    if isinstance(x, NormalDist):
        return (x.mean, x.std ** 2, -np.inf, np.inf)
    v = float(x.value)
    return (v, 0.0, v, v)


def cdf(x: Distribution, t: float) -> float:
    """P(X <= t)."""
    if isinstance(x, DiscreteDist):
        return float(x.probs[x.support <= t].sum())
    if isinstance(x, NormalDist):
        return float(norm.cdf((t - x.mean) / x.std))
    return 1.0 if t >= x.value else 0.0


def decumulative(x: Distribution, t: float) -> float:
    """P(X > t)."""
    if isinstance(x, DiscreteDist):
        return float(x.probs[x.support > t].sum())
    if isinstance(x, NormalDist):
        return float(norm.sf((t - x.mean) / x.std))
    return 1.0 if t < x.value else 0.0


# ----------------------------------------------------------------------
# JSON wire format
# ----------------------------------------------------------------------

def dist_to_json(x: Distribution) -> dict:
    if isinstance(x, DiscreteDist):
        return {"type": "discrete", "support": x.support.tolist(), "probs": x.probs.tolist()}
    if isinstance(x, NormalDist):
        return {"type": "normal", "mean": x.mean, "std": x.std}
    if isinstance(x, Constant):
        return {"type": "constant", "value": x.value}
    raise TypeError(f"not a Distribution: {x!r}")


def dist_from_json(obj: dict) -> Distribution:
    if not isinstance(obj, dict) or "type" not in obj:
        raise ValueError("distribution JSON must be an object with a 'type' field")
    kind = obj["type"]
    if kind == "discrete":
        return DiscreteDist(np.asarray(obj["support"], dtype=float),
                            np.asarray(obj["probs"], dtype=float))
    if kind == "normal":
        return NormalDist(float(obj["mean"]), float(obj["std"]))
    if kind == "constant":
        return Constant(float(obj["value"]))
    raise ValueError(f"unknown distribution type {kind!r}")
