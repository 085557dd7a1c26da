"""Symbol families and the symbol DSL.

Every symbol is callable on a batch of points ``(N, n)`` (or a single point)
and advertises the structure the numerical routines exploit:

``radial``
    depends on ``|z|`` only (about the origin), so Toeplitz matrices are diagonal
``center`` / ``pieces``
    piecewise-constant radial structure about ``center``; ``pieces`` is
    ``(radii, values)`` with ``radii[0] = 0`` and ``radii[-1] = inf``
``sup_bound``
    declared ``||f||_inf`` or ``None`` when unbounded
``growth``
    ``max(Re lambda, 0)`` for Gaussian-type factors, used to size windows

DSL examples (case-insensitive, complex literals as ``a+bi``)::

    gaussian:lambda=-1+0.5i
    step:r=0,1,2;v=1,0
    ball:center=0;radius=1
    polygauss:coeffs=1,0.5;lambda=-0.25
    const:value=1
"""

import math

import numpy as np

from .core import as_points, sqnorm
from .errors import DomainError, PreconditionError


def _fmt(x):
    x = complex(x)
    if x.imag == 0:
        return repr(x.real)
    if x.real == 0:
        return f"{x.imag!r}i"
    sign = "+" if x.imag >= 0 else "-"
    return f"{x.real!r}{sign}{abs(x.imag)!r}i"


class Symbol:
    radial = False
    center = None
    pieces = None
    sup_bound = None
    nonnegative = False
    growth = 0.0
    about_center = False

    def __call__(self, z):
        raise NotImplementedError

    def profile(self, rho):
        """Radial profile about :attr:`center` (radial symbols only)."""
        raise NotImplementedError

    @property
    def radial_about_center(self):
        return self.radial or self.pieces is not None or self.about_center

    def _pts(self, z):
        arr = np.asarray(z, dtype=complex)
        # scalar: one point of C; 1-D: batch in C; 2-D: batch (N, n)
        if arr.ndim == 0:
            return arr.reshape(1, 1), True
        if arr.ndim == 1:
            return arr.reshape(-1, 1), False
        return arr, False

    def _radius(self, z):
        pts, single = self._pts(z)
        c = self._center_for(pts.shape[1])
        rho = np.sqrt(sqnorm(pts - c))
        return rho, single

    def _center_for(self, n):
        if self.center is None:
            return np.zeros(n, dtype=complex)
        c = np.asarray(self.center, dtype=complex)
        if c.size == 1 and n > 1 and c[0] == 0:
            return np.zeros(n, dtype=complex)
        if c.size != n:
            raise PreconditionError(f"symbol centre has dimension {c.size}, points have {n}")
        return c

    def center_point(self, n):
        return self._center_for(n)

    def _radial_call(self, z):
        rho, single = self._radius(z)
        vals = self.profile(rho)
        return vals[0] if single else vals

    def describe(self):
        return repr(self)


class GaussianRadial(Symbol):
    """``g_lambda(z) = exp(lambda |z|^2)``."""

    radial = True

    def __init__(self, lam):
        self.lam = complex(lam)
        self.growth = max(self.lam.real, 0.0)
        self.sup_bound = 1.0 if self.lam.real <= 0 else None
        self.nonnegative = self.lam.imag == 0

    def __call__(self, z):
        return self._radial_call(z)

    def profile(self, rho):
        return np.exp(self.lam * np.asarray(rho) ** 2)

    def heat_closed_form(self, s, z, n):
        return PolyRadialGaussian([1.0], self.lam).heat_closed_form(s, z, n)

    def heat_symbol(self, s, n):
        check_heat_domain(self.lam, s)
        return PolyRadialGaussian([(1 - s * self.lam) ** (-n)], self.lam / (1 - s * self.lam))

    def describe(self):
        return f"gaussian:lambda={_fmt(self.lam)}"

    def __repr__(self):
        return f"GaussianRadial({self.lam!r})"


class PolyRadialGaussian(Symbol):
    """``p(|z|^2) exp(lambda |z|^2)`` with ``p(x) = sum_j coeffs[j] x^j``."""

    radial = True

    def __init__(self, coeffs, lam):
        self.coeffs = tuple(complex(c) for c in coeffs)
        if not self.coeffs:
            raise PreconditionError("polygauss needs at least one coefficient", field="symbol")
        self.lam = complex(lam)
        self.growth = max(self.lam.real, 0.0)
        self.nonnegative = self.lam.imag == 0 and all(c.imag == 0 and c.real >= 0 for c in self.coeffs)
        self.sup_bound = self._sup()

    def _sup(self):
        deg = max((j for j, c in enumerate(self.coeffs) if c != 0), default=0)
        if self.lam.real > 0 or (self.lam.real == 0 and deg > 0):
            return None
        if deg == 0 or self.lam.real == 0:
            return abs(self.coeffs[0])
        # |p(x)| e^{Re(lam) x} on x >= 0: dense scan over the region where it matters
        xmax = (deg + 40) / -self.lam.real
        x = np.linspace(0, xmax, 200_001)
        vals = np.abs(np.polyval(self.coeffs[::-1], x)) * np.exp(self.lam.real * x)
        return float(vals.max()) * (1 + 1e-9)

    def __call__(self, z):
        return self._radial_call(z)

    def profile(self, rho):
        x = np.asarray(rho) ** 2
        return np.polyval(self.coeffs[::-1], x) * np.exp(self.lam * x)

    def heat_closed_form(self, s, z, n):
        r"""Closed-form heat transform.

        With ``G(lam) = (1 - s lam)^-n exp(lam |z|^2 / (1 - s lam))`` the heat
        transform of ``|u|^{2j} e^{lam |u|^2}`` is ``d^j G / d lam^j``.  Writing
        ``G = exp(h)`` the derivatives follow from
        ``G^{(j+1)} = sum_i binom(j, i) h^{(i+1)} G^{(j-i)}`` with
        ``h^{(k)} = n (k-1)! s^k / q^k + |z|^2 k! s^{k-1} / q^{k+1}``, ``q = 1 - s lam``.
        """
        check_heat_domain(self.lam, s)
        pts = as_points(z, n)
        x = sqnorm(pts)
        lam = self.lam
        q = 1 - s * lam
        G0 = q ** (-n) * np.exp(lam / q * x)
        deg = len(self.coeffs) - 1
        h = [None] + [
            n * math.factorial(k - 1) * s**k / q**k + x * math.factorial(k) * s ** (k - 1) / q ** (k + 1)
            for k in range(1, deg + 1)
        ]
        G = [G0]
        for j in range(deg):
            G.append(sum(math.comb(j, i) * h[i + 1] * G[j - i] for i in range(j + 1)))
        out = sum(c * Gj for c, Gj in zip(self.coeffs, G))
        return out

    def describe(self):
        coeffs = ",".join(_fmt(c) for c in self.coeffs)
        return f"polygauss:coeffs={coeffs};lambda={_fmt(self.lam)}"

    def __repr__(self):
        return f"PolyRadialGaussian({self.coeffs!r}, {self.lam!r})"


class PiecewiseRadial(Symbol):
    """Piecewise-constant radial symbol about a centre."""

    def __init__(self, radii, values, center=None):
        radii = [float(r) for r in radii]
        values = [complex(v) for v in values]
        if len(radii) != len(values) + 1:
            raise PreconditionError(
                f"need one more breakpoint than values, got {len(radii)} and {len(values)}",
                field="symbol",
            )
        if radii[0] != 0.0:
            raise PreconditionError("first breakpoint must be 0", field="symbol")
        if any(b <= a for a, b in zip(radii, radii[1:])):
            raise PreconditionError("breakpoints must be strictly increasing", field="symbol")
        if not math.isinf(radii[-1]):
            radii.append(math.inf)
            values.append(0j)
        self.radii = tuple(radii)
        self.values = tuple(values)
        self.pieces = (np.array(self.radii), np.array(self.values))
        self.sup_bound = max(abs(v) for v in self.values)
        self.nonnegative = all(v.imag == 0 and v.real >= 0 for v in self.values)

    def __call__(self, z):
        return self._radial_call(z)

    def profile(self, rho):
        rho = np.asarray(rho, dtype=float)
        idx = np.searchsorted(self.radii, rho, side="right") - 1
        idx = np.clip(idx, 0, len(self.values) - 1)
        return np.asarray(self.values)[idx]

    def with_values(self, values):
        """Same breakpoints and centre, new piece values."""
        clone = object.__new__(type(self))
        clone.__dict__.update(self.__dict__)
        clone.values = tuple(complex(v) for v in values)
        clone.pieces = (np.array(clone.radii), np.array(clone.values))
        clone.sup_bound = max(abs(v) for v in clone.values)
        clone.nonnegative = all(v.imag == 0 and v.real >= 0 for v in clone.values)
        return clone


class RadialStep(PiecewiseRadial):
    """Value ``values[j]`` on ``radii[j] <= |z| < radii[j+1]``; zero beyond a finite last radius."""

    radial = True

    def describe(self):
        radii, values = list(self.radii), list(self.values)
        if values[-1] == 0 and len(values) > 1:
            radii, values = radii[:-1], values[:-1]
        r = ",".join("inf" if math.isinf(x) else repr(x) for x in radii)
        v = ",".join(_fmt(x) for x in values)
        return f"step:r={r};v={v}"

    def __repr__(self):
        return f"RadialStep({self.radii!r}, {self.values!r})"


class IndicatorBall(PiecewiseRadial):
    """Indicator of the closed ball ``B(center, radius)``."""

    def __init__(self, center, radius):
        if not radius > 0:
            raise PreconditionError(f"ball radius must be positive, got {radius!r}", field="symbol")
        super().__init__([0.0, float(radius)], [1.0])
        self.center = tuple(complex(c) for c in np.atleast_1d(center))
        self.radius = float(radius)
        self.radial = all(c == 0 for c in self.center)

    def describe(self):
        c = ",".join(_fmt(x) for x in self.center)
        return f"ball:center={c};radius={self.radius!r}"

    def __repr__(self):
        return f"IndicatorBall({self.center!r}, {self.radius!r})"


class SampledBounded(Symbol):
    """Black-box bounded symbol with a declared sup bound.

    ``func`` maps points ``(N, n)`` to values ``(N,)``.  With ``radial=True`` it
    must depend on ``|z|`` only.
    """

    def __init__(self, func, sup_bound, label="sampled", radial=False, nonnegative=False):
        if sup_bound is None or not math.isfinite(sup_bound) or sup_bound < 0:
            raise PreconditionError("sampled symbols must declare a finite sup bound", field="symbol")
        self.func = func
        self.sup_bound = float(sup_bound)
        self.label = label
        self.radial = radial
        self.nonnegative = nonnegative

    def __call__(self, z):
        pts, single = self._pts(z)
        vals = np.asarray(self.func(pts), dtype=complex)
        return vals[0] if single else vals

    def profile(self, rho):
        rho = np.asarray(rho, dtype=float)
        return np.asarray(self.func(rho.reshape(-1, 1).astype(complex)), dtype=complex)

    def validate(self, grid, n=1):
        """Raise if the grid-observed sup exceeds the declared bound."""
        observed = float(np.max(np.abs(self(grid.points(n)))))
        if observed > self.sup_bound * (1 + 1e-12):
            raise PreconditionError(
                f"observed sup {observed} exceeds declared bound {self.sup_bound}", field="symbol"
            )
        return observed

    def describe(self):
        return f"sampled:{self.label}"

    def __repr__(self):
        return f"SampledBounded({self.label!r}, sup_bound={self.sup_bound!r})"


def constant(value):
    """The constant symbol, as a one-piece radial step."""
    return RadialStep([0.0, math.inf], [value])


def check_heat_domain(lam, s):
    """Heat transforms of ``exp(lam |z|^2)`` need ``s Re(lam) < 1``."""
    prod = s * complex(lam).real
    if not prod < 1:
        raise DomainError(
            f"heat transform undefined at this s: s*Re(lambda) = {prod!r} >= 1",
            field="s",
            product=prod,
        )


# --------------------------------------------------------------------------
# DSL
# --------------------------------------------------------------------------


def parse_complex(text):
    """Parse ``a+bi`` style literals (also ``i``, ``-2.5i``, ``1e-3-4i``)."""
    s = text.strip().lower().replace(" ", "")
    if s in ("inf", "+inf", "infinity"):
        return complex(math.inf)
    try:
        return complex(s.replace("i", "j"))
    except ValueError:
        raise PreconditionError(f"cannot parse complex literal {text!r}", field="symbol") from None


def _parse_real(text):
    s = text.strip().lower()
    if s in ("inf", "+inf", "infinity"):
        return math.inf
    value = parse_complex(s)
    if value.imag != 0:
        raise PreconditionError(f"expected a real number, got {text!r}", field="symbol")
    return value.real


def _kv(body):
    out = {}
    for part in body.split(";"):
        if not part.strip():
            continue
        if "=" not in part:
            raise PreconditionError(f"malformed symbol field {part!r}", field="symbol")
        k, v = part.split("=", 1)
        out[k.strip().lower()] = v.strip()
    return out


def _require(fields, key, kind):
    if key not in fields:
        raise PreconditionError(f"{kind} symbol needs '{key}='", field="symbol")
    return fields[key]


def parse_symbol(text):
    """Build a :class:`Symbol` from its DSL string."""
    if ":" not in text:
        raise PreconditionError(f"symbol {text!r} lacks a 'kind:' prefix", field="symbol")
    kind, body = text.split(":", 1)
    kind = kind.strip().lower()
    fields = _kv(body)
    if kind == "gaussian":
        return GaussianRadial(parse_complex(_require(fields, "lambda", kind)))
    if kind == "step":
        radii = [_parse_real(x) for x in _require(fields, "r", kind).split(",")]
        values = [parse_complex(x) for x in _require(fields, "v", kind).split(",")]
        if len(radii) == len(values):
            # last value extends to infinity
            radii.append(math.inf)
        return RadialStep(radii, values)
    if kind == "ball":
        center = [parse_complex(x) for x in fields.get("center", "0").split(",")]
        return IndicatorBall(center, _parse_real(_require(fields, "radius", kind)))
    if kind == "polygauss":
        coeffs = [parse_complex(x) for x in _require(fields, "coeffs", kind).split(",")]
        return PolyRadialGaussian(coeffs, parse_complex(fields.get("lambda", "0")))
    if kind == "const":
        return constant(parse_complex(_require(fields, "value", kind)))
    raise PreconditionError(f"unknown symbol kind {kind!r}", field="symbol")
