r"""Heat transforms, kernel pairings and the identities built on them.

The basic quantity is the pairing

.. math::

    \langle g k_w^t, k_z^t \rangle_t = \int g(u)\, k_w^t(u) \overline{k_z^t(u)}\, d\mu_t(u),

whose diagonal ``w = z`` is the heat transform ``g~^(t)(z)``, i.e. the average
of ``g`` against a Gaussian of variance ``t/2`` per real coordinate centred at
``z``.  Three evaluation routes are used:

* symbols that are radial about some centre ``c``: the distance ``|u - c|``
  under that Gaussian is noncentral-chi distributed, so the heat transform is
  a one-dimensional integral against a Bessel-type density, split at the
  symbol's breakpoints;
* piecewise symbols in ``C``: a polar rule about ``c`` (Gauss-Legendre in the
  radius, split at breakpoints; trapezoid in the angle) for off-diagonal pairings;
* everything else: tensor Gauss-Hermite recentred at ``(z + w) / 2``.
"""

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.integrate import quad_vec
from scipy.special import ive, roots_hermite

from .core import as_point, as_points, cdot, default_grid, default_rule, sqnorm
from .errors import NotIntegrableError, PreconditionError
from .symbols import Symbol, check_heat_domain

PANEL_NODES = 20
#: half-width of integration windows, in standard deviations
WINDOW = 10.0
#: chunk size for vectorized Hermite pairings
_CHUNK = 64


# --------------------------------------------------------------------------
# small helpers
# --------------------------------------------------------------------------


@lru_cache(maxsize=8)
def _legendre(q):
    x, w = np.polynomial.legendre.leggauss(q)
    return x, w


def _panels(lo, hi, breaks, width):
    """Composite Gauss-Legendre nodes on ``[lo, hi]`` split at ``breaks``."""
    cuts = [lo] + sorted(b for b in breaks if lo < b < hi) + [hi]
    x, w = _legendre(PANEL_NODES)
    nodes, weights = [], []
    for a, b in zip(cuts, cuts[1:]):
        k = max(1, math.ceil((b - a) / width))
        edges = np.linspace(a, b, k + 1)
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[1:] + edges[:-1])
        nodes.append((mid[:, None] + half[:, None] * x).ravel())
        weights.append((half[:, None] * w).ravel())
    return np.concatenate(nodes), np.concatenate(weights)


def _infer_n(n, *points):
    if n is not None:
        return int(n)
    return int(np.atleast_1d(np.asarray(points[0])).size)


def _finite_breaks(sym):
    pieces = getattr(sym, "pieces", None)
    if pieces is None:
        return []
    return [float(r) for r in pieces[0] if 0 < r < math.inf]


def _eval(f, pts):
    vals = np.asarray(f(pts), dtype=complex)
    return np.broadcast_to(vals, (pts.shape[0],)) if vals.ndim == 0 else vals.reshape(pts.shape[0])


def _check_gaussian_domain(f, s):
    lam = getattr(f, "lam", None)
    if lam is not None:
        check_heat_domain(lam, s)


# --------------------------------------------------------------------------
# radial (noncentral chi) route
# --------------------------------------------------------------------------


def _log_radial_density(rho, a, s, n):
    """log density of ``|c + a e_1 + sqrt(s/2) N|`` at ``rho``; broadcasts ``a`` against ``rho``."""
    rho = np.asarray(rho, dtype=float)
    a = np.asarray(a, dtype=float)
    small = a * a / s < 1e-16
    a_safe = np.where(small, 1.0, a)
    with np.errstate(divide="ignore"):
        general = (
            np.log(2 * rho / s)
            + (n - 1) * (np.log(rho) - np.log(a_safe))
            - (rho - a_safe) ** 2 / s
            + np.log(ive(n - 1, 2 * rho * a_safe / s))
        )
        central = math.log(2.0) + (2 * n - 1) * np.log(rho) - rho**2 / s - n * math.log(s) - math.lgamma(n)
    return np.where(small, central, general)


def _heat_radial(f, s, pts, n):
    c = f.center_point(n)
    a = np.sqrt(sqnorm(pts - c))
    growth = float(getattr(f, "growth", 0.0))
    shrink = 1.0 - s * growth
    s_eff = s / shrink
    peak = a / shrink
    half = WINDOW * math.sqrt(s_eff)
    lo = max(0.0, float(peak.min()) - half)
    hi = float(peak.max()) + half
    rho, wts = _panels(lo, hi, _finite_breaks(f), 0.5 * math.sqrt(s_eff))
    prof = np.asarray(f.profile(rho), dtype=complex)
    out = np.empty(a.shape, dtype=complex)
    for start in range(0, a.size, 256):
        block = a[start : start + 256]
        logp = _log_radial_density(rho[None, :], block[:, None], s, n)
        out[start : start + 256] = (np.exp(logp) * wts) @ prof
    return out


# --------------------------------------------------------------------------
# pairings
# --------------------------------------------------------------------------


def _pair_hermite(g, W, Z, t, n, rule):
    Y = math.sqrt(t) * rule.nodes
    extra = sqnorm(Y) / t
    out = np.empty(W.shape[0], dtype=complex)
    for start in range(0, W.shape[0], _CHUNK):
        w = W[start : start + _CHUNK]
        z = Z[start : start + _CHUNK]
        m = 0.5 * (w + z)
        u = m[:, None, :] + Y[None, :, :]
        expo = (
            (cdot(u, w[:, None, :]) + cdot(z[:, None, :], u) - sqnorm(u)) / t
            - (sqnorm(z) + sqnorm(w))[:, None] / (2 * t)
            + extra[None, :]
        )
        vals = _eval(g, u.reshape(-1, n)).reshape(u.shape[:2])
        out[start : start + _CHUNK] = (vals * np.exp(expo)) @ rule.weights
    return out


def support_radius(sym):
    """Radius about the centre beyond which a piecewise symbol vanishes (``inf`` if none)."""
    pieces = getattr(sym, "pieces", None)
    if pieces is None:
        return math.inf
    radii, values = pieces
    nonzero = np.nonzero(np.asarray(values) != 0)[0]
    if nonzero.size == 0:
        return 0.0
    return float(radii[nonzero[-1] + 1])


def polar_nodes(sym, t, lo, hi, spread, extra=0):
    """Polar product rule about the centre of a one-dimensional symbol.

    Returns points ``u``, weights for ``dV / (pi t)`` and symbol values, all
    flattened.  The radial factor is Gauss-Legendre on ``[lo, hi]`` (clipped
    to the support) split at the symbol's breakpoints; the angular factor is
    the trapezoid rule with :func:`angular_count` nodes for integrands
    ``exp(linear / t)`` of slope ``spread``.  The trapezoid rule converges
    geometrically for these entire periodic integrands.
    """
    c = complex(sym.center_point(1)[0])
    hi = min(hi, support_radius(sym))
    if hi <= lo:
        empty = np.zeros(0)
        return empty.astype(complex), empty, empty.astype(complex)
    n_theta = angular_count(hi, spread, t, extra)
    rho, wr = _panels(lo, hi, _finite_breaks(sym), math.sqrt(t))
    theta = 2 * math.pi * np.arange(n_theta) / n_theta
    u = c + rho[:, None] * np.exp(1j * theta)[None, :]
    weights = np.repeat(wr * rho * (2 / (n_theta * t)), n_theta)
    values = np.repeat(np.asarray(sym.profile(rho), dtype=complex), n_theta)
    return u.ravel(), weights, values


def angular_count(reach, spread, t, extra=0):
    """Trapezoid size for integrands ``exp(linear(u)/t)`` on circles of radius ``reach``."""
    x = reach * spread / t
    return 2 * int(math.ceil(0.75 * x + 3 * x ** (1 / 3) + 24 + extra))


def _pair_polar(g, w, z, t):
    c = complex(g.center_point(1)[0])
    m = 0.5 * (w + z)
    a = abs(m - c)
    half = WINDOW * math.sqrt(t)
    lo, hi = max(0.0, a - half), a + half
    u, wts, prof = polar_nodes(g, t, lo, hi, 2 * abs(c) + abs(z) + abs(w))
    expo = (u * np.conj(w) + z * np.conj(u) - np.abs(u) ** 2) / t - (abs(z) ** 2 + abs(w) ** 2) / (2 * t)
    return complex(np.sum(wts * prof * np.exp(expo)))


def pairings(g, W, Z, t=1.0, n=1, rule=None):
    """Vectorized ``<g k_w^t, k_z^t>_t`` for rows of ``W`` and ``Z`` (shape ``(P, n)``)."""
    W = as_points(W, n)
    Z = as_points(Z, n)
    if W.shape != Z.shape:
        raise PreconditionError(f"pairing batches differ in shape: {W.shape} vs {Z.shape}")
    _check_gaussian_domain(g, t)
    if n == 1 and getattr(g, "pieces", None) is not None and rule is None:
        return np.array([_pair_polar(g, W[i, 0], Z[i, 0], t) for i in range(W.shape[0])])
    return _pair_hermite(g, W, Z, t, n, rule or default_rule(n))


def pairing(g, w, z, t=1.0, n=None, rule=None):
    """``<g k_w^t, k_z^t>_t`` for single points ``w`` and ``z``.

    Piecewise-constant symbols in one dimension use a polar rule split at the
    jumps (unless an explicit ``rule`` is given); everything else uses a tensor
    Gauss-Hermite rule centred halfway between ``w`` and ``z``.
    """
    n = _infer_n(n, z, w)
    W = as_point(w, n).reshape(1, n)
    Z = as_point(z, n).reshape(1, n)
    return complex(pairings(g, W, Z, t, n, rule)[0])


# --------------------------------------------------------------------------
# heat transform
# --------------------------------------------------------------------------


def heat_transform_batch(f, s, pts, n=1, method="auto", rule=None):
    """Heat transform at each row of ``pts``; see :func:`heat_transform`."""
    if not s > 0:
        raise PreconditionError(f"heat time s must be positive, got {s!r}", field="s")
    pts = as_points(pts, n)
    if method not in ("auto", "closed-form", "quadrature"):
        raise PreconditionError(f"unknown heat method {method!r}")
    closed = getattr(f, "heat_closed_form", None)
    if method == "closed-form" and closed is None:
        raise PreconditionError(f"no closed form for {f!r}")
    if closed is not None and method != "quadrature":
        return np.asarray(closed(s, pts, n), dtype=complex).reshape(pts.shape[0])
    _check_gaussian_domain(f, s)
    if isinstance(f, Symbol) and f.radial_about_center and rule is None:
        return _heat_radial(f, s, pts, n)
    return _pair_hermite(f, pts, pts, s, n, rule or default_rule(n))


def heat_transform(f, s, z, method="auto", n=None, rule=None):
    r"""Heat transform ``f~^(s)(z) = <f k_z^s, k_z^s>_s``.

    ``method="closed-form"`` is available for the Gaussian families
    (``(1 - s lam)^-n exp(lam |z|^2 / (1 - s lam))`` on the principal branch);
    ``"quadrature"`` integrates numerically; ``"auto"`` prefers the closed form.
    Gaussian symbols need ``s Re(lam) < 1``.
    """
    n = _infer_n(n, z)
    pts = as_point(z, n).reshape(1, n)
    return complex(heat_transform_batch(f, s, pts, n, method, rule)[0])


class HeatTransformed(Symbol):
    """The smooth symbol ``z -> f~^(s)(z)`` evaluated on demand."""

    def __init__(self, base, s, n=1, method="auto"):
        self.base = base
        self.s = float(s)
        self.n = n
        self.method = method
        self.radial = getattr(base, "radial", False)
        self.center = getattr(base, "center", None)
        self.about_center = isinstance(base, Symbol) and base.radial_about_center
        self.sup_bound = getattr(base, "sup_bound", None)
        self.nonnegative = getattr(base, "nonnegative", False)

    def __call__(self, z):
        pts, single = self._pts(z)
        vals = heat_transform_batch(self.base, self.s, pts, pts.shape[1], self.method)
        return vals[0] if single else vals

    def profile(self, rho):
        rho = np.asarray(rho, dtype=float)
        pts = np.zeros((rho.size, self.n), dtype=complex)
        pts[:, 0] = rho
        pts = pts + self.center_point(self.n)
        return heat_transform_batch(self.base, self.s, pts, self.n, self.method)

    def describe(self):
        base = self.base.describe() if isinstance(self.base, Symbol) else repr(self.base)
        return f"heat[s={self.s!r}]({base})"


def heat_symbol(f, s, n=1, method="auto"):
    """``f~^(s)`` as a symbol.

    Gaussian families return their closed-form image when ``method`` allows;
    everything else is wrapped in :class:`HeatTransformed`.
    """
    direct = getattr(f, "heat_symbol", None)
    if direct is not None and method != "quadrature":
        return direct(s, n)
    _check_gaussian_domain(f, s)
    return HeatTransformed(f, s, n, method)


# --------------------------------------------------------------------------
# identities and bounds
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class OffDiagCheck:
    lhs: complex
    rhs: complex
    residual: float


def heat_offdiag_check(f, t, s, w, z, n=None, rule=None):
    r"""Compare ``<f k_w^t, k_z^t>_t`` with its expression through ``f~^(s)``.

    .. math::

        \langle f k_w^t, k_z^t\rangle_t = e^{\frac{s|w-z|^2}{2t(t-s)}
        - i\frac{s\,\mathrm{Im}(z\cdot\bar w)}{t(t-s)}}
        \langle f^{\sim(s)} k_w^{t-s}, k_z^{t-s}\rangle_{t-s}
    """
    if not (0 <= s < t):
        raise PreconditionError(f"need 0 <= s < t, got s={s!r}, t={t!r}", field="s")
    n = _infer_n(n, z, w)
    wp, zp = as_point(w, n), as_point(z, n)
    lhs = pairing(f, wp, zp, t, n, rule)
    inner = f if s == 0 else heat_symbol(f, s, n)
    d2 = float(sqnorm(wp - zp))
    im = float(np.imag(cdot(zp, wp)))
    factor = np.exp(s * d2 / (2 * t * (t - s)) - 1j * s * im / (t * (t - s)))
    rhs = complex(factor * pairing(inner, wp, zp, t - s, n, rule))
    return OffDiagCheck(lhs, rhs, abs(lhs - rhs))


def semigroup_residual(f, s, t, z, method="auto", n=None):
    """``|f~^(t)(z) - (f~^(s))~^(t-s)(z)|``."""
    if not (0 < s < t):
        raise PreconditionError(f"need 0 < s < t, got s={s!r}, t={t!r}", field="s")
    n = _infer_n(n, z)
    direct = heat_transform(f, t, z, method, n)
    composed = heat_transform(heat_symbol(f, s, n, method), t - s, z, method, n)
    return abs(direct - composed)


@dataclass(frozen=True)
class OffDiagBound:
    value: float
    bound: float
    ok: bool
    tol: float = 1e-9


def gaussian_offdiag_bound(g, t, z, w, n=None, rule=None, tol=1e-9):
    """``|<g k_w, k_z>_t|`` against ``||g||_inf exp(-|w - z|^2 / (4t))``."""
    sup = getattr(g, "sup_bound", None)
    if sup is None:
        raise PreconditionError(f"symbol {g!r} has no finite sup bound", field="symbol")
    n = _infer_n(n, z, w)
    value = abs(pairing(g, w, z, t, n, rule))
    d2 = float(sqnorm(as_point(w, n) - as_point(z, n)))
    bound = sup * math.exp(-d2 / (4 * t))
    return OffDiagBound(value, bound, value <= bound + tol, tol)


# --------------------------------------------------------------------------
# BMO
# --------------------------------------------------------------------------


class _Oscillation(Symbol):
    # |f - c| for a symbol radial about its centre
    def __init__(self, base, c):
        self.base = base
        self.c = c
        self.center = base.center
        self.pieces = base.pieces
        self.about_center = True
        self.growth = getattr(base, "growth", 0.0)

    def __call__(self, z):
        return np.abs(self.base(z) - self.c)

    def profile(self, rho):
        return np.abs(np.asarray(self.base.profile(rho)) - self.c)


@dataclass(frozen=True)
class BMOResult:
    value: float
    argmax: tuple
    values: np.ndarray = field(repr=False)
    grid: dict = None
    t: float = 1.0
    underestimate: bool = True


def _oscillation_generic_1d(f, t, z, c, order):
    # outer Gauss-Hermite across Im w, inner adaptive quadrature along Re w
    y, wy = roots_hermite(order)
    wy = wy / math.sqrt(math.pi)
    rt = math.sqrt(t)

    def integrand(x):
        u = z - rt * (x + 1j * y)
        return np.abs(_eval(f, u.reshape(-1, 1)) - c) * math.exp(-x * x) / math.sqrt(math.pi)

    val, _ = quad_vec(integrand, -WINDOW, WINDOW, epsabs=1e-13, epsrel=1e-11, limit=2000)
    return float(np.dot(wy, val))


def bmo_seminorm(f, t=1.0, grid=None, rule=None, n=1):
    r"""Grid sup of ``int |f(z - w) - f~^(t)(z)| dmu_t(w)``.

    Symbols radial about a centre are integrated through the radial density;
    other one-dimensional evaluators use an adaptive inner quadrature so that
    kinks of ``|f - c|`` do not spoil convergence.  The result is marked as an
    underestimate of the true supremum.
    """
    if not t > 0:
        raise PreconditionError("t must be positive", field="t")
    if getattr(f, "growth", 0.0) * t >= 1:
        raise NotIntegrableError("symbol grows too fast to be integrable against mu_t", field="symbol")
    grid = grid or default_grid(getattr(f, "radial", False))
    pts = grid.points(n)
    centre_vals = heat_transform_batch(f, t, pts, n)
    values = np.empty(pts.shape[0])
    about = isinstance(f, Symbol) and f.radial_about_center
    for i, z in enumerate(pts):
        c = complex(centre_vals[i])
        if about:
            values[i] = float(np.real(_heat_radial(_Oscillation(f, c), t, z.reshape(1, n), n)[0]))
        elif n == 1 and rule is None:
            values[i] = _oscillation_generic_1d(f, t, complex(z[0]), c, 60)
        else:
            r = rule or default_rule(n)
            u = z - math.sqrt(t) * r.nodes
            values[i] = float(np.dot(r.weights, np.abs(_eval(f, u) - c)))
    k = int(np.argmax(values))
    return BMOResult(float(values[k]), tuple(pts[k].tolist()), values, grid.as_dict(), t)


__all__ = [
    "BMOResult",
    "HeatTransformed",
    "OffDiagBound",
    "OffDiagCheck",
    "bmo_seminorm",
    "gaussian_offdiag_bound",
    "heat_offdiag_check",
    "heat_symbol",
    "heat_transform",
    "heat_transform_batch",
    "pairing",
    "pairings",
    "semigroup_residual",
]
