"""Fock-space substrate: parameters, multi-indices, basis and kernel evaluation,
Gaussian quadrature, sampling grids and weighted norms.

Conventions used throughout the package:

* points of C^n are numpy arrays of shape ``(n,)``; batches have shape ``(N, n)``
* ``w . conj(z)`` is ``sum_j w_j conj(z_j)``
* ``mu_t`` is the Gaussian probability measure ``(pi t)^-n exp(-|z|^2 / t) dV``
* basis order is graded lexicographic, see :func:`multiindex_enumerate`
"""

import hashlib
import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.special import roots_hermite, roots_laguerre

from .errors import EvaluationError, PreconditionError, QuadratureBudgetError
from .special import poisson_tail

#: degrees above this use log-magnitude / phase arithmetic
LOG_DEGREE_THRESHOLD = 30
#: default cap on truncation degree
DEFAULT_DEGREE_CAP = 60
#: largest tensor quadrature we are willing to build
MAX_TENSOR_NODES = 4_000_000


@dataclass(frozen=True)
class FockParams:
    """Complex dimension ``n`` and Gaussian weight ``t`` of ``F_t^2(C^n)``."""

    n: int = 1
    t: float = 1.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise PreconditionError(f"dimension n must be a positive integer, got {self.n!r}", field="dim")
        if not (self.t > 0 and math.isfinite(self.t)):
            raise PreconditionError(f"weight t must be positive, got {self.t!r}", field="t")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "t", float(self.t))


def as_point(z, n):
    """Coerce ``z`` to a complex array of shape ``(n,)``."""
    arr = np.atleast_1d(np.asarray(z, dtype=complex))
    if arr.shape == (1,) and n > 1 and arr[0] == 0:
        return np.zeros(n, dtype=complex)
    if arr.shape != (n,):
        raise PreconditionError(f"point has shape {arr.shape}, expected ({n},)")
    return arr


def as_points(z, n):
    """Coerce ``z`` to a complex array of shape ``(N, n)``."""
    arr = np.asarray(z, dtype=complex)
    if n == 1 and arr.ndim <= 1:
        return arr.reshape(-1, 1)
    if arr.ndim == 1:
        return as_point(arr, n).reshape(1, n)
    if arr.ndim != 2 or arr.shape[1] != n:
        raise PreconditionError(f"points have shape {arr.shape}, expected (N, {n})")
    return arr


def cdot(w, z):
    """``w . conj(z)`` along the last axis."""
    return np.sum(np.asarray(w) * np.conj(z), axis=-1)


def sqnorm(z):
    return np.sum(np.abs(np.asarray(z)) ** 2, axis=-1)


# --------------------------------------------------------------------------
# multi-indices
# --------------------------------------------------------------------------


def degree(m):
    """Total degree ``|m|``."""
    return int(sum(m))


def multi_factorial(m):
    """``m! = prod m_j!``."""
    return math.prod(math.factorial(k) for k in m)


def _compositions(total, parts):
    # all tuples of `parts` nonnegative ints summing to `total`, first entry descending
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def multiindex_enumerate(n, D):
    """All multi-indices of length ``n`` with ``|m| <= D`` in graded lexicographic order.

    Degrees ascend; within one degree the tuples are in descending
    lexicographic order, so for ``n = 2`` the degree-2 block reads
    ``(2, 0), (1, 1), (0, 2)``.  The count is ``binomial(D + n, n)``.
    """
    if int(n) != n or n < 1:
        raise PreconditionError(f"n must be >= 1, got {n!r}")
    if int(D) != D or D < 0:
        raise PreconditionError(f"degree D must be >= 0, got {D!r}", field="degree")
    return [m for d in range(int(D) + 1) for m in _compositions(d, int(n))]


def basis_hash(basis):
    """Stable hex digest identifying a basis ordering."""
    text = ";".join(",".join(str(k) for k in m) for m in basis)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


# --------------------------------------------------------------------------
# basis functions and kernels
# --------------------------------------------------------------------------


def _log_norm(m, t):
    # log sqrt(t^|m| m!)
    return 0.5 * (degree(m) * math.log(t) + sum(math.lgamma(k + 1) for k in m))


def onb_eval(params, m, z):
    """Evaluate ``e_m^t(z) = z^m / sqrt(t^|m| m!)``.

    Above degree :data:`LOG_DEGREE_THRESHOLD` the value is assembled from its
    log-magnitude and phase so that neither ``z^m`` nor ``m!`` overflow.
    """
    z = as_point(z, params.n)
    if len(m) != params.n:
        raise PreconditionError(f"multi-index {m} does not match n={params.n}")
    if degree(m) <= LOG_DEGREE_THRESHOLD:
        return complex(np.prod(z ** np.asarray(m)) / math.sqrt(params.t ** degree(m) * multi_factorial(m)))
    log_mag = -_log_norm(m, params.t)
    phase = 0.0
    for zj, mj in zip(z, m):
        if mj == 0:
            continue
        if zj == 0:
            return 0j
        log_mag += mj * math.log(abs(zj))
        phase += mj * math.atan2(zj.imag, zj.real)
    return complex(math.exp(log_mag) * np.exp(1j * phase))


def onb_matrix(params, basis, points):
    """Values ``e_m(u)`` for a batch of points; result has shape ``(N, len(basis))``.

    Per-coordinate powers are built by the stable recurrence
    ``e_k(x) = e_{k-1}(x) x / sqrt(k t)``.
    """
    pts = as_points(points, params.n)
    top = max(degree(m) for m in basis)
    per_coord = np.empty((params.n, pts.shape[0], top + 1), dtype=complex)
    per_coord[:, :, 0] = 1.0
    for k in range(1, top + 1):
        per_coord[:, :, k] = per_coord[:, :, k - 1] * pts.T / math.sqrt(k * params.t)
    idx = np.asarray(basis)
    out = per_coord[0][:, idx[:, 0]]
    for j in range(1, params.n):
        out = out * per_coord[j][:, idx[:, j]]
    return out


def kernel_eval(params, w, z, normalized=False):
    """Reproducing kernel ``K^t(w, z) = exp(w . conj(z) / t)``.

    With ``normalized=True`` returns ``k_z^t(w) = K^t(w, z) exp(-|z|^2 / (2t))``.
    """
    w = as_point(w, params.n)
    z = as_point(z, params.n)
    expo = cdot(w, z) / params.t
    if normalized:
        expo = expo - sqnorm(z) / (2 * params.t)
    return complex(np.exp(expo))


@dataclass(frozen=True)
class KernelCoefficients:
    """Coefficients of ``k_z^t`` in the basis up to degree ``D`` and the exact tail mass."""

    basis: tuple
    coeffs: np.ndarray
    tail: float

    @property
    def tail_norm(self):
        """Norm of the discarded part, ``sqrt(tail)``."""
        return math.sqrt(max(self.tail, 0.0))


def kernel_coefficients(params, z, D, basis=None, max_degree=DEFAULT_DEGREE_CAP):
    r"""Coefficients ``c_m(z) = exp(-|z|^2/(2t)) conj(z)^m / sqrt(t^|m| m!)``.

    The tail ``1 - sum_{|m| <= D} |c_m|^2`` is returned in closed form: the
    degree-``d`` block carries Poisson mass ``exp(-x) x^d / d!`` with
    ``x = |z|^2 / t``, hence tail = ``Pr[Poisson(x) > D] = P(D + 1, x)``.
    """
    if D > max_degree:
        raise PreconditionError(f"degree {D} exceeds cap {max_degree}", field="degree")
    z = as_point(z, params.n)
    if basis is None:
        basis = multiindex_enumerate(params.n, D)
    basis = tuple(basis)
    t = params.t
    log_abs = np.full((params.n, D + 1), -np.inf)
    phase = np.zeros((params.n, D + 1))
    ks = np.arange(D + 1)
    lgam = np.array([math.lgamma(k + 1) for k in ks])
    for j, zj in enumerate(z):
        if zj == 0:
            log_abs[j, 0] = 0.0
            continue
        log_abs[j] = ks * math.log(abs(zj)) - 0.5 * (ks * math.log(t) + lgam)
        phase[j] = -ks * math.atan2(zj.imag, zj.real)
    idx = np.asarray(basis)
    cols = np.arange(params.n)
    total_log = log_abs[cols, idx].sum(axis=1) - sqnorm(z) / (2 * t)
    total_phase = phase[cols, idx].sum(axis=1)
    coeffs = np.exp(total_log) * np.exp(1j * total_phase)
    tail = poisson_tail(float(sqnorm(z)) / t, D)
    return KernelCoefficients(basis, coeffs, tail)


def kernel_coefficient_matrix(params, basis, points):
    """Rows ``c(z)`` for a batch of points plus the tail norms ``sqrt(tail)``.

    Uses ``c_m(z) = e_m(conj z) exp(-|z|^2 / (2t))`` with the recurrence of
    :func:`onb_matrix`; adequate while ``|z|^2 / t`` stays below a few hundred.
    """
    pts = as_points(points, params.n)
    D = max(degree(m) for m in basis)
    coeffs = onb_matrix(params, basis, np.conj(pts)) * np.exp(-sqnorm(pts) / (2 * params.t))[:, None]
    tails = np.array([math.sqrt(max(poisson_tail(float(x) / params.t, D), 0.0)) for x in sqnorm(pts)])
    return coeffs, tails


def minimal_degree_for_tail(params, z, tol, max_degree=400):
    """Smallest ``D`` with ``sqrt(P(D + 1, |z|^2 / t)) <= tol``."""
    x = float(sqnorm(as_point(z, params.n))) / params.t
    for D in range(max_degree + 1):
        if math.sqrt(poisson_tail(x, D)) <= tol:
            return D
    return None


# --------------------------------------------------------------------------
# quadrature
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadratureRule:
    """Gaussian quadrature adapted to ``mu_t``.

    ``kind="hermite"``: tensor Gauss-Hermite over the ``2n`` real axes, exact
    for polynomials of degree ``2 order - 1`` per axis.
    ``kind="laguerre"``: Gauss-Laguerre in ``x = |z|^2 / t`` for radial
    integrands, exact for polynomials in ``|z|^2`` of degree ``2 order - 1``
    (times the ``x^(n-1)`` angular Jacobian).
    """

    kind: str = "hermite"
    order: int = 60
    n: int = 1

    def __post_init__(self):
        if self.kind not in ("hermite", "laguerre"):
            raise PreconditionError(f"unknown quadrature kind {self.kind!r}")
        if self.order < 1:
            raise PreconditionError("quadrature order must be >= 1", field="quad_order")
        if self.kind == "hermite" and self.order ** (2 * self.n) > MAX_TENSOR_NODES:
            raise QuadratureBudgetError(
                f"tensor Hermite rule of order {self.order} in C^{self.n} needs "
                f"{self.order ** (2 * self.n)} nodes (limit {MAX_TENSOR_NODES})",
                field="quad_order",
            )

    @property
    def exactness(self):
        return 2 * self.order - 1

    @cached_property
    def _axis(self):
        if self.kind == "hermite":
            y, w = roots_hermite(self.order)
            return y, w / math.sqrt(math.pi)
        return roots_laguerre(self.order)

    @cached_property
    def nodes(self):
        """Hermite: complex nodes ``(N, n)`` for the standard measure ``mu_1``.
        Laguerre: values of ``x`` on ``(0, inf)``."""
        y, _ = self._axis
        if self.kind == "laguerre":
            return y
        grids = np.meshgrid(*([y] * (2 * self.n)), indexing="ij")
        flat = np.stack([g.ravel() for g in grids], axis=1)
        return flat[:, 0::2] + 1j * flat[:, 1::2]

    @cached_property
    def weights(self):
        _, w = self._axis
        if self.kind == "laguerre":
            return w
        grids = np.meshgrid(*([w] * (2 * self.n)), indexing="ij")
        return np.prod(np.stack([g.ravel() for g in grids], axis=0), axis=0)


def default_rule(n, kind="hermite"):
    """Package defaults: Hermite order 60 (n=1), 16 (n=2), 7 (n=3); Laguerre 120."""
    if kind == "laguerre":
        return QuadratureRule("laguerre", 120, n)
    return QuadratureRule("hermite", {1: 60, 2: 16}.get(n, 7), n)


def _check_finite(values, nodes):
    bad = ~np.isfinite(values)
    if np.any(bad):
        i = int(np.argmax(bad))
        node = nodes[i]
        raise EvaluationError(
            f"integrand is not finite at node {i} ({node!r})",
            node=np.asarray(node).tolist(),
        )


def integrate_gaussian(rule, fn, t, center=None):
    """Approximate ``int fn dmu_t``.

    For Hermite rules ``fn`` receives points of shape ``(N, n)``; nodes may be
    recentred at ``center`` (the Gaussian density ratio is folded into the
    weights).  For Laguerre rules ``fn`` is radial and receives radii ``(N,)``.
    """
    if rule.kind == "laguerre":
        x = rule.nodes
        rho = np.sqrt(t * x)
        vals = np.asarray(fn(rho))
        _check_finite(vals, rho)
        jac = x ** (rule.n - 1) / math.factorial(rule.n - 1)
        return complex(np.sum(rule.weights * jac * vals))
    u = math.sqrt(t) * rule.nodes
    weights = rule.weights
    if center is not None:
        c = as_point(center, rule.n)
        u = u + c
        weights = weights * np.exp(-(sqnorm(u) - sqnorm(u - c)) / t)
    vals = np.asarray(fn(u))
    _check_finite(vals, u)
    return complex(np.sum(weights * vals))


# --------------------------------------------------------------------------
# grids and norms
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Grid:
    """Finite sampling grid.

    ``kind="radial"`` samples radii ``0, h, 2h, ..., R`` along the first real
    axis (adequate for functions that are radial about the origin);
    ``kind="square"`` is the tensor grid ``[-R, R]^(2n)`` with spacing ``h``.
    """

    extent: float = 8.0
    step: float = 0.05
    kind: str = "radial"

    def __post_init__(self):
        if self.kind not in ("radial", "square"):
            raise PreconditionError(f"unknown grid kind {self.kind!r}")
        if not (self.extent > 0 and self.step > 0):
            raise PreconditionError("grid extent and step must be positive", field="grid_step")

    def axis(self):
        count = int(round(self.extent / self.step))
        if self.kind == "radial":
            return self.step * np.arange(count + 1)
        return self.step * np.arange(-count, count + 1)

    def points(self, n=1):
        ax = self.axis()
        if self.kind == "radial":
            pts = np.zeros((ax.size, n), dtype=complex)
            pts[:, 0] = ax
            return pts
        if ax.size ** (2 * n) > MAX_TENSOR_NODES:
            raise QuadratureBudgetError(f"square grid in C^{n} too large", field="grid_step")
        flat = np.array(list(itertools.product(ax, repeat=2 * n)))
        return flat[:, 0::2] + 1j * flat[:, 1::2]

    def refined(self, factor=2):
        return Grid(self.extent, self.step / factor, self.kind)

    def as_dict(self):
        return {"extent": self.extent, "step": self.step, "kind": self.kind}


def default_grid(radial=True):
    """Radius 8 with spacing 0.05 (radial) or 0.1 per axis (square)."""
    return Grid(8.0, 0.05, "radial") if radial else Grid(8.0, 0.1, "square")


@dataclass(frozen=True)
class NormEstimate:
    value: float
    p: float
    t: float
    underestimate: bool = False
    grid: dict = field(default=None)
    weight_exponent: float = None


def norm_lpt(f, p, t, n=1, rule=None, grid=None, c=None):
    """Weighted norms of a symbol or evaluator.

    ``p < inf``: ``(int |f|^p dmu_{2t/p})^(1/p)``.  Piecewise-radial symbols are
    integrated exactly through incomplete-gamma masses; everything else uses
    ``rule``.

    ``p = inf``: grid sup of ``|f(z)| exp(-c |z|^2)`` with ``c = 1/(2t)`` by
    default.  Passing ``c = c_k`` gives the ``D_{c_k}`` scale norms.  Grid
    sups are flagged as underestimates.
    """
    p = float(p)
    if not (p >= 1):
        raise PreconditionError(f"p must lie in [1, inf], got {p!r}", field="p")
    evaluate = f if callable(f) else None
    if evaluate is None:
        raise PreconditionError("f must be callable on points of C^n")
    if math.isinf(p):
        if c is None:
            c = 1.0 / (2 * t)
        if grid is None:
            grid = default_grid(getattr(f, "radial", False))
        pts = grid.points(n)
        vals = np.abs(np.asarray(f(pts))) * np.exp(-c * sqnorm(pts))
        return NormEstimate(float(np.max(vals)), p, t, True, grid.as_dict(), float(c))
    t_eff = 2 * t / p
    pieces = getattr(f, "pieces", None)
    if pieces is not None and getattr(f, "radial", False):
        from .special import gamma_interval_mass

        radii, values = pieces
        total = sum(
            abs(v) ** p * gamma_interval_mass(n, radii[j] ** 2 / t_eff, radii[j + 1] ** 2 / t_eff)
            for j, v in enumerate(values)
        )
        return NormEstimate(total ** (1 / p), p, t)
    rule = rule or default_rule(n)
    total = integrate_gaussian(rule, lambda u: np.abs(f(u)) ** p, t_eff)
    return NormEstimate(total.real ** (1 / p), p, t)
