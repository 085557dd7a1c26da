"""Explicit constants and inequalities: norm bounds through heat transforms,
the sandwich for nonnegative symbols, off-diagonal localization profiles,
Schur-test bounds, the ``c_k`` scale, kernel tails and band operators.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.integrate import quad
from scipy.special import beta as beta_fn

from .core import FockParams, Grid, default_grid, sqnorm
from .errors import NotIntegrableError, PreconditionError, StabilizationError
from .heat import WINDOW, _panels, heat_transform_batch, pairings, polar_nodes
from .special import gammainc_upper, poisson_tail
from .symbols import Symbol
from .toeplitz import berezin_batch, operator_norm, toeplitz_matrix

#: relative change allowed between successive grid refinements
STABILITY_TOL = 1e-3


# --------------------------------------------------------------------------
# constants
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundConstants:
    """``gamma = (t - 2s) / (4 t (t - s))`` and ``C = (1 / (gamma t))^n`` (``None`` when ``gamma <= 0``)."""

    s: float
    t: float
    n: int
    gamma: float
    C: float
    gamma_exact: Fraction = None
    C_exact: Fraction = None

    @property
    def valid(self):
        return self.C is not None


def gamma_and_constant(s, t, n=1):
    if not (s > 0 and t > 0):
        raise PreconditionError(f"s and t must be positive, got s={s!r}, t={t!r}", field="s")
    if s == t:
        return BoundConstants(s, t, n, -math.inf, None)
    fs, ft = Fraction(s), Fraction(t)
    g = (ft - 2 * fs) / (4 * ft * (ft - fs))
    if g > 0:
        C = (1 / (g * ft)) ** n
        return BoundConstants(s, t, n, float(g), float(C), g, C)
    return BoundConstants(s, t, n, float(g), None, g, None)


def constant_growth_exponent(t=1.0, n=1, s_values=None):
    """Least-squares slope of ``log C`` against ``log(1 / (t/2 - s))``.

    By default ``s`` runs over ``[0.4 t, 0.499 t]`` with the gap ``t/2 - s``
    geometrically spaced, i.e. uniformly on the regression axis.
    """
    if s_values is None:
        s_values = t / 2 - np.geomspace(0.1 * t, 0.001 * t, 100)
    x = np.array([-math.log(t / 2 - s) for s in s_values])
    y = np.array([math.log(gamma_and_constant(s, t, n).C) for s in s_values])
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


# --------------------------------------------------------------------------
# grid sups of heat transforms
# --------------------------------------------------------------------------


def _scan_points(f, grid, n):
    # symbols radial about a centre are scanned along a ray from that centre
    if isinstance(f, Symbol) and f.radial_about_center and grid.kind == "radial":
        pts = np.zeros((grid.axis().size, n), dtype=complex)
        pts[:, 0] = grid.axis()
        return pts + f.center_point(n)
    return grid.points(n)


def _heat_on_grid(f, s, grid, n):
    pts = _scan_points(f, grid, n)
    return pts, heat_transform_batch(f, s, pts, n)


@dataclass(frozen=True)
class StableSup:
    value: float
    levels: tuple
    grid: dict


def stable_heat_sup(f, s, grid, n=1, tol=STABILITY_TOL):
    """Grid sup of ``|f~^(s)|`` accepted once two successive refinements agree within ``tol``."""
    levels = []
    g = grid
    for _ in range(3):
        _, vals = _heat_on_grid(f, s, g, n)
        levels.append(float(np.max(np.abs(vals))))
        g = g.refined()
    rel = [abs(b - a) / max(abs(b), 1e-300) for a, b in zip(levels, levels[1:])]
    if max(rel) > tol:
        raise StabilizationError(
            f"grid sup changed by {max(rel):.2e} under refinement (tolerance {tol:.0e}); "
            f"try a finer grid step than {grid.step}",
            field="grid_step",
            levels=levels,
        )
    return StableSup(levels[-1], tuple(levels), grid.as_dict())


# --------------------------------------------------------------------------
# norm bound and sandwich
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class BCBoundCheck:
    lhsNorm: float
    rhsBound: float
    margin: float
    ok: bool
    gamma: float
    C: float
    heat_sup: float
    sup_levels: tuple
    s: float
    t: float
    degree: int
    grid: dict = None


def bc_bound_check(f, s, t=1.0, D=30, grid=None, n=1):
    """Compression norm of ``T_f^t`` against ``C ||f~^(s)||_grid``.

    The left side is a lower bound for the true norm, so ``ok`` can only be
    falsified by a genuine violation (up to grid and quadrature error on the
    right side, which is kept stable by the refinement rule).
    """
    if not (0 < s < t / 2):
        raise PreconditionError(f"need 0 < s < t/2, got s={s!r}, t={t!r}", field="s")
    consts = gamma_and_constant(s, t, n)
    grid = grid or default_grid(True)
    T = toeplitz_matrix(f, FockParams(n, t), D)
    lhs = operator_norm(T).norm
    sup = stable_heat_sup(f, s, grid, n)
    rhs = consts.C * sup.value
    return BCBoundCheck(lhs, rhs, rhs - lhs, lhs <= rhs, consts.gamma, consts.C, sup.value, sup.levels, s, t, D, sup.grid)


@dataclass(frozen=True)
class SandwichCheck:
    low: float
    mid: float
    high: float
    ok: bool
    two_time_min: float
    two_time_ok: bool
    tol: float
    degree: int
    grid: dict = None


def nonneg_sandwich_check(f, t=1.0, D=30, grid=None, n=1, tol=1e-8):
    """``sup f~^(t) <= ||T_f^t|| <= 4^n sup f~^(t)`` with the compression norm in the middle.

    Also reports ``min_z f~^(t)(z) - 2^-n f~^(t/2)(z)`` over the grid.
    """
    if not getattr(f, "nonnegative", False):
        raise PreconditionError("sandwich check needs a nonnegative symbol", field="symbol")
    grid = grid or default_grid(True)
    pts, full = _heat_on_grid(f, t, grid, n)
    half = heat_transform_batch(f, t / 2, pts, n)
    low = float(np.max(full.real))
    mid = operator_norm(toeplitz_matrix(f, FockParams(n, t), D)).norm
    high = 4**n * low
    ok = low <= mid + tol and mid <= high + tol
    gap = float(np.min(full.real - 2.0**-n * half.real))
    return SandwichCheck(low, mid, high, ok, gap, gap >= -tol, tol, D, grid.as_dict())


# --------------------------------------------------------------------------
# localization profiles
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class LocalizationProfile:
    """Off-diagonal decay of ``|<A k_z, k_w>|`` against ``d = |z - w|``."""

    d: np.ndarray
    values: np.ndarray
    sample_d: np.ndarray = field(repr=False)
    sample_values: np.ndarray = field(repr=False)
    C: float = None
    beta: float = None
    sup_integral: float = None
    tail_integral: float = None
    r: float = None
    integral_radius: float = None
    admissible_radius: float = None
    grid: dict = None
    extras: dict = field(default_factory=dict)


def admissible_radius(params, D, tol=1e-9):
    """Largest ``R`` with kernel tail norm ``<= tol`` at degree ``D`` for ``|z| <= R``."""
    lo, hi = 0.0, math.sqrt(params.t * (D + 1))
    if math.sqrt(poisson_tail(hi * hi / params.t, D)) <= tol:
        return hi
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if math.sqrt(poisson_tail(mid * mid / params.t, D)) <= tol:
            lo = mid
        else:
            hi = mid
    return lo


def _pairs(ds, centers, angles, n):
    Z, W, dd = [], [], []
    for d in ds:
        for c in centers:
            for a in angles:
                step = 0.5 * d * complex(math.cos(a), math.sin(a))
                z = np.zeros(n, dtype=complex)
                w = np.zeros(n, dtype=complex)
                z[0], w[0] = c - step, c + step
                Z.append(z)
                W.append(w)
                dd.append(float(d))
    return np.array(Z).reshape(-1, n), np.array(W).reshape(-1, n), np.array(dd)


def fit_power_envelope(d, v, floor=1e-300):
    """Least-squares fit of ``log v = log C - beta log(1 + d)``; zeros are dropped."""
    d = np.asarray(d, dtype=float)
    v = np.asarray(v, dtype=float)
    keep = v > floor
    if keep.sum() < 2:
        return None, None
    slope, icpt = np.polyfit(np.log1p(d[keep]), np.log(v[keep]), 1)
    return float(math.exp(icpt)), float(-slope)


def _weak_integrals(T, centers, r, R_adm, R_cap):
    # polar rule about each centre z over |w - z| <= min(R_adm - |z|, R_cap)
    if T.params.n != 1:
        return None, None, None
    n_theta = 64
    theta = 2 * math.pi * np.arange(n_theta) / n_theta
    sup_total = sup_tail = None
    radius = None
    for c in centers:
        R = min(R_adm - abs(c), R_cap)
        if R <= 0:
            continue
        rho, wr = _panels(0.0, R, [r] if 0 < r < R else [], 0.5)
        w = (c + rho[:, None] * np.exp(1j * theta)[None, :]).reshape(-1, 1)
        z = np.full_like(w, c)
        vals, _ = berezin_batch(T, z, w)
        ring = np.abs(vals).reshape(rho.size, n_theta).sum(axis=1) * (2 * math.pi / n_theta)
        total = float(np.sum(wr * rho * ring))
        tail = float(np.sum((wr * rho * ring)[rho > r]))
        if sup_total is None or total > sup_total:
            sup_total, radius = total, R
        sup_tail = tail if sup_tail is None else max(sup_tail, tail)
    return sup_total, sup_tail, radius


def localization_profile(T, grid=None, r=2.0, centers=(0.0, 0.5 + 0.5j, -1.0), angles=(0.0, math.pi / 3, math.pi / 2), tol=1e-9):
    """Sample ``|<A k_z, k_w>|`` from a truncated operator.

    Separations come from ``grid.axis()``; each separation is realised by
    pairs ``c -+ (d/2) e^{i a}``.  Pairs where either kernel tail exceeds
    ``tol`` are dropped, which caps the usable separation at about twice the
    admissible radius for the matrix degree.  The weak-localization integrals
    (one dimension only) are taken over ``|w - z| <= R`` with ``R`` the
    admissible radius minus ``|z|``.
    """
    grid = grid or Grid(6.0, 0.25, "radial")
    n = T.params.n
    R_adm = admissible_radius(T.params, T.degree, tol)
    Z, W, dd = _pairs(grid.axis(), centers, angles, n)
    keep = (np.sqrt(sqnorm(Z)) <= R_adm) & (np.sqrt(sqnorm(W)) <= R_adm)
    Z, W, dd = Z[keep], W[keep], dd[keep]
    vals, _ = berezin_batch(T, Z, W)
    av = np.abs(vals)
    ds = np.unique(dd)
    maxima = np.array([av[dd == d].max() for d in ds])
    C, beta = fit_power_envelope(ds, maxima)
    sup_int, tail_int, R_int = _weak_integrals(T, centers, r, R_adm, grid.extent)
    return LocalizationProfile(ds, maxima, dd, av, C, beta, sup_int, tail_int, r, R_int, R_adm, grid.as_dict())


def gaussian_envelope_violation(profile, sup_bound, t=1.0):
    """Largest ``sample - sup_bound exp(-d^2 / 4t)`` (nonpositive when every sample is under it)."""
    env = sup_bound * np.exp(-profile.sample_d**2 / (4 * t))
    return float(np.max(profile.sample_values - env, initial=-math.inf))


@dataclass(frozen=True)
class PowerEnvelope:
    beta: float
    C: float
    d_calibration: float
    violation: float
    one_sided: bool


def power_envelope_check(profile, beta, sup_bound, t=1.0, slack=1e-12):
    """Dominate the profile by ``C / (1 + d)^beta``.

    ``C`` is calibrated at the maximiser ``d*`` of
    ``(1 + d)^beta exp(-d^2 / 4t)``, so that the power envelope lies above the
    Gaussian envelope ``sup_bound exp(-d^2 / 4t)`` everywhere.
    """
    d_star = (-1 + math.sqrt(1 + 8 * t * beta)) / 2
    C = sup_bound * (1 + d_star) ** beta * math.exp(-d_star**2 / (4 * t))
    env = C / (1 + profile.sample_d) ** beta
    violation = float(np.max(profile.sample_values - env, initial=-math.inf))
    return PowerEnvelope(beta, C, d_star, violation, violation <= slack * C)


# --------------------------------------------------------------------------
# Schur bound
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class DominantFunction:
    """Radial dominating function ``H(d)``: ``gaussian`` ``exp(-a d^2)`` or ``power`` ``(1 + d)^-beta``."""

    kind: str
    param: float
    n: int = 1

    @classmethod
    def gaussian(cls, a, n=1):
        return cls("gaussian", float(a), n)

    @classmethod
    def power(cls, beta, n=1):
        return cls("power", float(beta), n)

    def __call__(self, d):
        d = np.asarray(d, dtype=float)
        if self.kind == "gaussian":
            return np.exp(-self.param * d * d)
        return (1 + d) ** -self.param


def schur_bound(H, method="closed-form"):
    r"""``pi^-n int_{C^n} H(|u|) dV(u)``, a Schur-test bound for kernels dominated by ``H``.

    Closed forms: ``a^-n`` for ``exp(-a d^2)`` and
    ``2 B(2n, beta - 2n) / (n-1)!`` for ``(1 + d)^-beta``.  ``method="quadrature"``
    integrates the radial profile instead.
    """
    n = H.n
    if H.kind == "gaussian":
        if not H.param > 0:
            raise NotIntegrableError("not integrable: Gaussian rate must be positive", field="H")
    elif H.kind == "power":
        if not H.param > 2 * n:
            raise NotIntegrableError(
                f"not integrable: (1+|u|)^-beta needs beta > 2n = {2 * n}, got {H.param}", field="H"
            )
    else:
        raise PreconditionError(f"unknown dominating function {H.kind!r}", field="H")
    if method == "quadrature":
        # surface of the unit sphere in R^{2n} is 2 pi^n / (n-1)!
        val, _ = quad(lambda p: p ** (2 * n - 1) * float(H(p)), 0, math.inf, epsabs=1e-14, epsrel=1e-13, limit=500)
        return 2 * val / math.factorial(n - 1)
    if H.kind == "gaussian":
        return H.param**-n
    return 2 * beta_fn(2 * n, H.param - 2 * n) / math.factorial(n - 1)


# --------------------------------------------------------------------------
# c-scale
# --------------------------------------------------------------------------


def c_scale_sequence(K):
    """``c_0, ..., c_K`` of ``c_{k+1} = 1 / (4 (1 - c_k))``, ``c_0 = 0``.

    Iterated through ``d_k = 1 - 2 c_k``, for which the recursion reads
    ``d_{k+1} = d_k / (1 + d_k)``; this avoids the cancellation in
    ``1 - c_k`` that makes the direct form drift by ``O(1e-13)``.
    """
    if K < 0:
        raise PreconditionError("index must be >= 0")
    out = np.empty(K + 1)
    d = 1.0
    out[0] = 0.0
    for k in range(1, K + 1):
        d = d / (1.0 + d)
        out[k] = (1.0 - d) / 2.0
    return out


def c_scale(k):
    if k < 0:
        raise PreconditionError("index must be >= 0")
    d = 1.0
    for _ in range(k):
        d = d / (1.0 + d)
    return (1.0 - d) / 2.0


def c_scale_closed(k):
    return k / (2 * (k + 1))


def localization_exponent(k):
    """Gaussian decay rate ``1/2 - c_{k+1}`` attached to the ``D_{c_k}`` scale."""
    return 0.5 - c_scale(k + 1)


# --------------------------------------------------------------------------
# kernel tails
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class KernelTail:
    exact: float
    bound: float
    ok: bool
    r: float
    n: int


def kernel_tail(z, r, n=1, slack=1e-12):
    r"""``||(1 - chi_{B(z,r)}) k_z||_{L^2(mu_1)} = sqrt(Q(n, r^2))`` against ``(2^n - 1) exp(-r^2 / 2n)``.

    The exact value does not depend on ``z`` (see :func:`kernel_tail_quadrature`).
    ``ok`` allows a relative slack for the equality case ``n = 1``.
    """
    if not r > 0:
        raise PreconditionError(f"radius must be positive, got {r!r}", field="r")
    exact = math.sqrt(gammainc_upper(n, r * r))
    bound = (2**n - 1) * math.exp(-r * r / (2 * n))
    return KernelTail(exact, bound, exact <= bound * (1 + slack), r, n)


def kernel_tail_quadrature(z, r):
    """Same tail norm for ``n = 1`` by quadrature in polar coordinates about the origin.

    On the circle ``|u| = p`` the set ``|u - z| <= r`` is an arc, so the
    complement mass is ``int p dp int_{arc^c} |k_z(u)|^2 e^{-p^2} dtheta / pi``.
    """
    z = complex(np.asarray(z).reshape(-1)[0])
    a = abs(z)
    x, w = np.polynomial.legendre.leggauss(80)

    def ring(p):
        if a == 0:
            return 2 * math.exp(-p * p) if p > r else 0.0
        kappa = (p * p + a * a - r * r) / (2 * p * a) if p > 0 else math.inf
        if kappa <= -1:
            return 0.0
        lo = 0.0 if kappa >= 1 else math.acos(kappa)
        # 2 * int_lo^pi exp(2 p a cos psi - a^2 - p^2) dpsi / pi
        psi = 0.5 * (math.pi - lo) * x + 0.5 * (math.pi + lo)
        vals = np.exp(2 * p * a * np.cos(psi) - (p - a) ** 2 - 2 * p * a)
        return 2 * 0.5 * (math.pi - lo) * float(np.dot(w, vals)) / math.pi

    top = a + r + 12.0
    points = sorted({abs(a - r), a + r})
    mass, _ = quad(lambda p: p * ring(p), 0, top, points=points, epsabs=1e-16, epsrel=1e-13, limit=400)
    return math.sqrt(max(mass, 0.0))


def kernel_tail_scan(n, radii):
    return [kernel_tail(0, r, n) for r in radii]


# --------------------------------------------------------------------------
# band operators
# --------------------------------------------------------------------------


class BandKernelOperator:
    r"""Operator on ``L^2(C, mu_1)`` with ``dV``-kernel ``phi(z - w) psi(w)``.

    Realised through ``U g = pi^{-1/2} e^{-|u|^2/2} g``, a unitary from
    ``L^2(mu_1)`` onto ``L^2(dV)`` commuting with multiplications, so the
    band-width is the support radius ``omega`` of ``phi``.  ``omega = 0``
    means multiplication by ``psi``.  ``phi=None`` is the zero kernel.
    """

    def __init__(self, omega, phi, psi, phi_radial=True):
        if omega < 0:
            raise PreconditionError("band-width must be nonnegative", field="band_width")
        if getattr(psi, "sup_bound", None) is None:
            raise PreconditionError("psi must declare a finite sup bound", field="symbol")
        self.omega = float(omega)
        self.phi = phi
        self.psi = psi
        self.phi_radial = phi_radial
        self.zero = phi is None
        if phi is not None and omega > 0:
            ring = (np.linspace(1.0001, 2.0, 25)[:, None] * self.omega * np.exp(1j * np.linspace(0, 2 * math.pi, 16))[None, :]).ravel()
            if np.any(np.asarray(phi(ring.reshape(-1, 1))) != 0):
                raise PreconditionError("phi does not vanish outside its support radius", field="band_width")

    def _phi_nodes(self, n_rho=16, n_theta=24):
        x, w = np.polynomial.legendre.leggauss(n_rho)
        rho = 0.5 * self.omega * (x + 1)
        wr = 0.5 * self.omega * w
        theta = 2 * math.pi * np.arange(n_theta) / n_theta
        pts = (rho[:, None] * np.exp(1j * theta)[None, :]).ravel()
        wts = np.repeat(wr * rho * (2 * math.pi / n_theta), n_theta)
        return pts, wts

    def phi_l1(self):
        if self.zero:
            return 0.0
        if self.omega == 0:
            return 1.0
        x, w = self._phi_nodes(400, 64)
        return float(np.sum(w * np.abs(np.asarray(self.phi(x.reshape(-1, 1))))))

    def norm_proxy(self):
        """``||phi||_{L^1} ||psi||_inf``, an upper bound for the operator norm."""
        if self.zero:
            return 0.0
        return self.phi_l1() * self.psi.sup_bound

    def pairing(self, z, w):
        """``<A k_z, k_w>_{L^2(mu_1)}``."""
        z, w = complex(z), complex(w)
        if self.zero:
            return 0j
        if self.omega == 0:
            return complex(pairings(self.psi, np.array([z]), np.array([w]), 1.0, 1)[0])
        xs, xw = self._phi_nodes()
        phis = np.asarray(self.phi(xs.reshape(-1, 1)), dtype=complex)
        total = 0j
        for x, wx, ph in zip(xs, xw, phis):
            if ph == 0:
                continue
            total += wx * ph * self._inner(z, w, x)
        return complex(total)

    def _inner(self, z, w, x):
        # int psi(v) h_z(v) conj(h_w(v + x)) dV(v)
        def expo(v):
            return (
                -np.abs(v + x / 2) ** 2 - abs(x) ** 2 / 4 + v * np.conj(z) + np.conj(v + x) * w
                - (abs(z) ** 2 + abs(w) ** 2) / 2
            )

        v_star = (z + w - x) / 2
        psi = self.psi
        if getattr(psi, "pieces", None) is not None:
            c = complex(psi.center_point(1)[0])
            a = abs(v_star - c)
            lo, hi = max(0.0, a - WINDOW), a + WINDOW
            spread = abs(z) + abs(w) + abs(x) + 2 * abs(c)
            v, wts, vals = polar_nodes(psi, 1.0, lo, hi, spread)
            return complex(np.sum(wts * vals * np.exp(expo(v))))
        from .core import default_rule

        rule = default_rule(1)
        v = v_star + rule.nodes[:, 0]
        vals = np.asarray(psi(v.reshape(-1, 1)), dtype=complex).reshape(-1)
        return complex(np.sum(rule.weights * vals * np.exp(expo(v) + np.abs(v - v_star) ** 2)))


@dataclass(frozen=True)
class BandProfileCheck:
    profile: LocalizationProfile
    K_fit: float
    K_apriori: float
    envelope_ok: bool
    decay_rate: float
    gaussian_ok: bool
    short_range_ok: bool
    norm_proxy: float
    omega: float


def pbdop_compression_profile(B, grid=None, centers=(0.0,), angles=(0.0, math.pi / 2), n=1):
    """Sample ``|<A k_z, k_w>|`` for a band kernel operator and test the envelopes.

    Long range (``d > 3 omega``): the smallest ``K`` with samples under
    ``K exp(-d^2 / 18n)`` is compared with the a-priori ``2 (2^n - 1) ||A||``;
    the fitted Gaussian rate is required to be at least ``1 / 18n``.  Short
    range: samples must not exceed the norm proxy.
    """
    if n != 1:
        raise PreconditionError("band kernel operators are implemented for n = 1", field="dim")
    grid = grid or Grid(6.0, 0.5, "radial")
    Z, W, dd = _pairs(grid.axis(), centers, angles, 1)
    vals = np.array([B.pairing(z[0], w[0]) for z, w in zip(Z, W)])
    av = np.abs(vals)
    ds = np.unique(dd)
    maxima = np.array([av[dd == d].max() for d in ds])
    C, beta = fit_power_envelope(ds, maxima)
    profile = LocalizationProfile(ds, maxima, dd, av, C, beta, grid=grid.as_dict())
    norm = B.norm_proxy()
    cn = 2**n - 1
    K_ap = 2 * cn * norm
    far = dd > 3 * B.omega
    rate = 1.0 / (18 * n)
    K_fit = float(np.max(av[far] * np.exp(rate * dd[far] ** 2), initial=0.0))
    decay = math.inf
    keep = far & (av > 1e-300)
    if keep.sum() >= 2:
        slope, _ = np.polyfit(dd[keep] ** 2, np.log(av[keep]), 1)
        decay = float(-slope)
    short = ~far
    short_ok = bool(np.all(av[short] <= norm + 1e-12))
    return BandProfileCheck(
        profile, K_fit, K_ap, K_fit <= K_ap + 1e-12, decay, decay >= rate, short_ok, norm, B.omega
    )


__all__ = [
    "BCBoundCheck",
    "BandKernelOperator",
    "BandProfileCheck",
    "BoundConstants",
    "DominantFunction",
    "KernelTail",
    "LocalizationProfile",
    "PowerEnvelope",
    "SandwichCheck",
    "StableSup",
    "admissible_radius",
    "bc_bound_check",
    "c_scale",
    "c_scale_closed",
    "c_scale_sequence",
    "constant_growth_exponent",
    "fit_power_envelope",
    "gamma_and_constant",
    "gaussian_envelope_violation",
    "kernel_tail",
    "kernel_tail_quadrature",
    "kernel_tail_scan",
    "localization_exponent",
    "localization_profile",
    "nonneg_sandwich_check",
    "pbdop_compression_profile",
    "power_envelope_check",
    "schur_bound",
    "stable_heat_sup",
]
