"""Truncated Toeplitz, Hankel-type and Weyl operators in the monomial basis.

A :class:`TruncatedOperator` stores ``M[m, m'] = <A e_{m'}, e_m>`` for all
multi-indices of degree at most ``D`` (rows and columns in the order of
:func:`~focklab.core.multiindex_enumerate`).  Norms computed from these
matrices are compression norms, i.e. lower bounds for the true operator norm.
"""

import json
import math
import struct
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from .core import (
    MAX_TENSOR_NODES,
    FockParams,
    QuadratureRule,
    as_point,
    basis_hash,
    cdot,
    degree,
    kernel_coefficient_matrix,
    kernel_coefficients,
    minimal_degree_for_tail,
    multiindex_enumerate,
    onb_matrix,
    sqnorm,
)
from .errors import DomainError, EvaluationError, PreconditionError, QuadratureBudgetError, TruncationError
from .heat import WINDOW, heat_transform, pairings, polar_nodes
from .special import gamma_interval_mass
from .symbols import GaussianRadial, PolyRadialGaussian, Symbol

MATRIX_MAGIC = b"FOCKMAT1"
MATRIX_VERSION = 1


# --------------------------------------------------------------------------
# containers
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class TruncatedOperator:
    """Matrix of an operator on ``F_t^2`` compressed to degree ``D``."""

    params: FockParams
    degree: int
    basis: tuple
    matrix: np.ndarray = field(repr=False)
    provenance: dict = field(default_factory=dict)
    antilinear: bool = False

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=complex)
        side = len(self.basis)
        if mat.shape != (side, side):
            raise PreconditionError(f"matrix shape {mat.shape} does not match basis size {side}")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "basis", tuple(tuple(m) for m in self.basis))

    @property
    def side(self):
        return len(self.basis)

    @cached_property
    def is_diagonal(self):
        off = self.matrix - np.diag(np.diag(self.matrix))
        return bool(np.all(off == 0))

    @cached_property
    def norm(self):
        return operator_norm(self).norm

    def block(self, D):
        """Compression to the leading degree-``D`` block."""
        if D > self.degree:
            raise PreconditionError(f"cannot extend degree {self.degree} to {D}", field="degree")
        k = sum(1 for m in self.basis if degree(m) <= D)
        prov = dict(self.provenance, compressed_from=self.degree)
        return TruncatedOperator(self.params, D, self.basis[:k], self.matrix[:k, :k], prov, self.antilinear)

    def hermitian_defect(self):
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T), initial=0.0))

    def basis_hash(self):
        return basis_hash(self.basis)


def identity_operator(params, D):
    basis = multiindex_enumerate(params.n, D)
    return TruncatedOperator(params, D, basis, np.eye(len(basis)), {"symbol": "identity", "method": "analytic"})


def zero_operator(params, D):
    basis = multiindex_enumerate(params.n, D)
    side = len(basis)
    return TruncatedOperator(params, D, basis, np.zeros((side, side)), {"symbol": "zero", "method": "analytic"})


# --------------------------------------------------------------------------
# diagonals of radial symbols
# --------------------------------------------------------------------------


def _diag_step(sym, ks, t):
    radii, values = sym.pieces
    out = []
    for k in ks:
        total = 0j
        for j, v in enumerate(values):
            if v != 0:
                total += v * gamma_interval_mass(k, radii[j] ** 2 / t, radii[j + 1] ** 2 / t)
        out.append(total)
    return np.array(out)


def _poly_gauss_parts(sym):
    if isinstance(sym, GaussianRadial):
        return (1.0 + 0j,), sym.lam
    return sym.coeffs, sym.lam


def _diag_gauss_analytic(sym, ks, t):
    # int p(t x) e^{lam t x} x^{k-1} e^{-x} / (k-1)! dx = sum_j a_j t^j (k)_j / c^{k+j}
    coeffs, lam = _poly_gauss_parts(sym)
    c = 1 - t * lam
    out = []
    for k in ks:
        total = 0j
        rising = 1.0
        for j, a in enumerate(coeffs):
            if j:
                rising *= k + j - 1
            total += a * t**j * rising * c ** (-(k + j))
        out.append(total)
    return np.array(out)


def _diag_gauss_quadrature(sym, ks, t, order):
    """Gauss-Laguerre after absorbing ``Re(1 - t lam)`` into the rate.

    When ``Re(1 - t lam) <= 0`` the defining integral diverges; the value is
    then the analytic continuation in ``lam``, obtained on the ray
    ``x = y / (1 - t lam)``.
    """
    coeffs, lam = _poly_gauss_parts(sym)
    c = 1 - t * lam
    y, wy = np.polynomial.laguerre.laggauss(order)
    poly = lambda x: np.polyval(np.asarray(coeffs)[::-1], t * x)  # noqa: E731
    out = []
    if c.real > 0:
        x = y / c.real
        phase = np.exp(-1j * c.imag * x)
        base = wy * poly(x) * phase / c.real
        for k in ks:
            log_mono = (k - 1) * np.log(x) - math.lgamma(k)
            out.append(np.sum(base * np.exp(log_mono)))
        return np.array(out), "laguerre"
    x = y / c
    base = wy * poly(x) / c
    for k in ks:
        log_mono = (k - 1) * np.log(x) - math.lgamma(k)
        out.append(np.sum(base * np.exp(log_mono)))
    return np.array(out), "laguerre-continued"


def _diag_profile(sym, ks, t, order):
    y, wy = np.polynomial.laguerre.laggauss(order)
    prof = np.asarray(sym.profile(np.sqrt(t * y)), dtype=complex)
    out = []
    for k in ks:
        out.append(np.sum(wy * prof * np.exp((k - 1) * np.log(y) - math.lgamma(k))))
    return np.array(out)


def _radial_diagonal(sym, params, D, method, order):
    n, t = params.n, params.t
    ks = [d + n for d in range(D + 1)]
    if sym.pieces is not None:
        return _diag_step(sym, ks, t), "incomplete-gamma"
    if isinstance(sym, (GaussianRadial, PolyRadialGaussian)):
        if method == "quadrature":
            return _diag_gauss_quadrature(sym, ks, t, order)
        return _diag_gauss_analytic(sym, ks, t), "analytic-diagonal"
    return _diag_profile(sym, ks, t, order), "laguerre"


# --------------------------------------------------------------------------
# full quadrature matrices
# --------------------------------------------------------------------------


def _polar_rule_for_matrix(sym, t, D, n_extra=0):
    c = complex(sym.center_point(1)[0])
    x_hi = (D + 1) + WINDOW * math.sqrt(D + 1) + 40
    hi = abs(c) + math.sqrt(t * x_hi)
    return polar_nodes(sym, t, 0.0, hi, 2 * abs(c), extra=D + 1 + n_extra)


def _quadrature_matrix(f, params, basis, D, rule, conj_columns=False):
    n, t = params.n, params.t
    if n == 1 and getattr(f, "pieces", None) is not None and rule is None:
        u, w, vals = _polar_rule_for_matrix(f, t, D)
        weights = w * vals * np.exp(-np.abs(u) ** 2 / t)
        E = onb_matrix(params, basis, u)
        left = E.conj().T * weights
        right = E.conj() if conj_columns else E
        return left @ right, "polar-quadrature"
    if rule is None:
        order = max(60, D + 20) if n == 1 else min(max(24, D + 20), int(MAX_TENSOR_NODES ** (1 / (2 * n))))
        rule = QuadratureRule("hermite", order, n)
    if rule.kind != "hermite":
        raise PreconditionError("full quadrature needs a Hermite rule", field="quad_order")
    if rule.order < D + 10:
        raise QuadratureBudgetError(
            f"Hermite order {rule.order} too small for degree {D}; need at least {D + 10}",
            field="quad_order",
            required_order=D + 10,
        )
    u = math.sqrt(t) * rule.nodes
    vals = np.asarray(f(u), dtype=complex).reshape(-1)
    if not np.all(np.isfinite(vals)):
        i = int(np.argmax(~np.isfinite(vals)))
        raise EvaluationError(f"symbol is not finite at node {u[i].tolist()}", node=u[i].tolist())
    wv = rule.weights * vals
    side = len(basis)
    out = np.zeros((side, side), dtype=complex)
    # chunked so that the node-by-basis block stays small in C^n, n > 1
    step = max(1, 2_000_000 // side)
    for start in range(0, u.shape[0], step):
        E = onb_matrix(params, basis, u[start : start + step])
        right = E.conj() if conj_columns else E
        out += (E.conj().T * wv[start : start + step]) @ right
    return out, "hermite-quadrature"


def _describe(f):
    if isinstance(f, Symbol):
        return f.describe()
    return getattr(f, "__name__", repr(f))


def toeplitz_matrix(f, params, D, rule=None, method="auto"):
    """Matrix of ``T_f^t`` up to degree ``D``.

    Radial symbols give diagonal matrices: incomplete-gamma masses for step
    symbols, closed forms (``method="auto"``) or Laguerre quadrature
    (``method="quadrature"``) for Gaussian families, Laguerre quadrature of
    the profile otherwise.  Other symbols use a full quadrature (polar about
    the centre for piecewise symbols in one dimension, tensor Hermite else).

    For Gaussian symbols with ``t Re(lam) >= 1`` the integral defining ``T_f``
    diverges and the diagonal is the analytic continuation
    ``(1 - t lam)^-(|m| + n)``; this is flagged in the provenance.
    """
    if method not in ("auto", "analytic", "quadrature"):
        raise PreconditionError(f"unknown method {method!r}")
    basis = multiindex_enumerate(params.n, D)
    prov = {"symbol": _describe(f), "t": params.t, "n": params.n}
    lam = getattr(f, "lam", None)
    if lam is not None:
        if 1 - params.t * lam == 0:
            raise DomainError("1 - t*lambda = 0: the diagonal is undefined", field="t")
        if params.t * lam.real >= 1:
            prov["continued"] = True
    if getattr(f, "radial", False):
        order = rule.order if rule is not None and rule.kind == "laguerre" else 120
        diag_by_degree, how = _radial_diagonal(f, params, D, method, order)
        diag = np.array([diag_by_degree[degree(m)] for m in basis])
        prov["method"] = how
        prov["diagonal"] = True
        return TruncatedOperator(params, D, basis, np.diag(diag), prov)
    if lam is not None and params.t * lam.real >= 1:
        raise DomainError("non-radial Gaussian symbol outside the integrable range", field="t")
    mat, how = _quadrature_matrix(f, params, basis, D, rule)
    prov["method"] = how
    prov["diagonal"] = False
    return TruncatedOperator(params, D, basis, mat, prov)


def hankel_antilinear_matrix(f, params, D, rule=None):
    """Matrix of ``w_f(g) = P(f conj(g))`` on ``F_1^2``.

    Entries are ``H[m, m'] = <f conj(e_m'), e_m>_1``; the operator acts as
    ``a -> H conj(a)`` on coefficient vectors (conjugate the input first).
    """
    if params.t != 1:
        raise PreconditionError("the antilinear operator is defined on F_1^2 only (t = 1)", field="t")
    if getattr(f, "sup_bound", 0) is None:
        raise PreconditionError("antilinear operator needs a bounded symbol", field="symbol")
    basis = multiindex_enumerate(params.n, D)
    mat, how = _quadrature_matrix(f, params, basis, D, rule, conj_columns=True)
    prov = {"symbol": _describe(f), "t": 1.0, "n": params.n, "method": how, "convention": "conjugate-input"}
    return TruncatedOperator(params, D, basis, mat, prov, antilinear=True)


# --------------------------------------------------------------------------
# spectra
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectralReport:
    """Compression norm of a truncated operator.

    ``trace`` lists ``(D', norm)`` over leading blocks; its stabilisation is a
    heuristic reading of the true norm, not a certified upper bound.
    """

    norm: float
    diagonal: bool
    argmax: tuple = None
    trace: tuple = ()
    label: str = "compression norm"


def operator_norm(T, trace=False):
    if not np.all(np.isfinite(T.matrix)):
        raise PreconditionError("matrix has non-finite entries")
    diagonal = T.is_diagonal
    argmax = None
    if diagonal:
        d = np.abs(np.diag(T.matrix))
        k = int(np.argmax(d)) if d.size else 0
        value = float(d[k]) if d.size else 0.0
        argmax = T.basis[k]
    else:
        value = float(np.linalg.norm(T.matrix, 2))
    steps = ()
    if trace:
        steps = tuple((Dp, _block_norm(T, Dp)) for Dp in range(T.degree + 1))
    return SpectralReport(value, diagonal, argmax, steps)


def _block_norm(T, Dp):
    k = sum(1 for m in T.basis if degree(m) <= Dp)
    block = T.matrix[:k, :k]
    if T.is_diagonal:
        return float(np.max(np.abs(np.diag(block))))
    return float(np.linalg.norm(block, 2))


# --------------------------------------------------------------------------
# Berezin transforms of operators
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class BerezinValue:
    value: complex
    tail_bound: float
    degree: int


def _coeffs(T, z):
    return kernel_coefficients(T.params, z, T.degree, T.basis)


def berezin_of_operator(T, z, w=None, tol=None):
    """``<A k_z, k_w>`` (``w = z`` by default) from the truncated matrix.

    Value is ``c(w)^H M c(z)`` with ``c`` the kernel coefficients.  The
    truncation error is at most ``||A|| (sqrt(tail_z) + sqrt(tail_w))`` where
    the tails are the discarded kernel masses and ``||A||`` is replaced by the
    compression norm.  With ``tol`` set, a larger bound raises
    :class:`TruncationError` naming the smallest adequate degree.
    """
    n = T.params.n
    z = as_point(z, n)
    w = z if w is None else as_point(w, n)
    cz = _coeffs(T, z)
    cw = cz if w is z else _coeffs(T, w)
    norm = T.norm
    bound = norm * (cz.tail_norm + cw.tail_norm)
    if tol is not None and bound > tol:
        need = max(
            minimal_degree_for_tail(T.params, z, tol / (2 * max(norm, 1e-300))) or -1,
            minimal_degree_for_tail(T.params, w, tol / (2 * max(norm, 1e-300))) or -1,
        )
        raise TruncationError(
            f"kernel tail bound {bound:.3e} exceeds tolerance {tol:.3e} at degree {T.degree}; "
            f"minimal adequate degree is {need}",
            field="degree",
            minimal_degree=need,
        )
    right = np.conj(cz.coeffs) if T.antilinear else cz.coeffs
    value = complex(np.conj(cw.coeffs) @ (T.matrix @ right))
    return BerezinValue(value, float(bound), T.degree)


def berezin_batch(T, Z, W=None):
    """Values and tail bounds for rows of ``Z`` (and ``W``); no refusal."""
    n = T.params.n
    Z = np.asarray(Z, dtype=complex).reshape(-1, n)
    CZ, tz = kernel_coefficient_matrix(T.params, T.basis, Z)
    if W is None:
        CW, tw = CZ, tz
    else:
        CW, tw = kernel_coefficient_matrix(T.params, T.basis, np.asarray(W, dtype=complex).reshape(-1, n))
    right = np.conj(CZ) if T.antilinear else CZ
    values = np.einsum("pi,pi->p", np.conj(CW), right @ T.matrix.T)
    return values, T.norm * (tz + tw)


# --------------------------------------------------------------------------
# Weyl operators
# --------------------------------------------------------------------------


def _weyl_order(D_rows, D_cols, z):
    return max(60, (D_rows + D_cols) // 2 + 40 + int(math.ceil(4 * math.sqrt(sqnorm(z)))))


def weyl_matrix(params, z, D_rows, D_cols=None, order=None):
    r"""``[W_z]_{m, m'} = <W_z e_{m'}, e_m>_1`` for ``|m| <= D_rows``, ``|m'| <= D_cols``.

    ``W_z f(w) = k_z(w) f(w - z)`` on ``F_1^2``.  The integrand times the
    Gaussian weight has constant modulus factor ``exp(-|z|^2 / 4)`` about
    ``z / 2``, so a Hermite rule centred there is used.
    """
    if params.t != 1:
        raise PreconditionError("Weyl operators are defined on F_1^2 (t = 1)", field="t")
    n = params.n
    z = as_point(z, n)
    D_cols = D_rows if D_cols is None else D_cols
    rows = multiindex_enumerate(n, D_rows)
    cols = multiindex_enumerate(n, D_cols)
    if not np.any(z):
        eye = np.zeros((len(rows), len(cols)), dtype=complex)
        k = min(len(rows), len(cols))
        eye[np.arange(k), np.arange(k)] = 1.0
        return eye
    rule = QuadratureRule("hermite", order or _weyl_order(D_rows, D_cols, z), n)
    Y = rule.nodes
    u = 0.5 * z + Y
    expo = cdot(u, z) - 0.5 * sqnorm(z) - sqnorm(u) + sqnorm(Y)
    weights = rule.weights * np.exp(expo)
    left = onb_matrix(params, rows, u).conj().T * weights
    right = onb_matrix(params, cols, u - z)
    return left @ right


def _isometry_defect(M):
    G = M.conj().T @ M
    return float(np.linalg.norm(G - np.eye(G.shape[0]), 2))


def weyl_conjugate(T, z, out_degree=None, tol=1e-6):
    """``A_z = W_z^* A W_z`` compressed to degree ``out_degree``.

    ``W_z`` maps the degree-``out_degree`` subspace almost into the
    degree-``D`` subspace on which ``T`` is known; the defect
    ``||M^H M - I||`` of ``M = [W_z]_{D x out_degree}`` measures the leak and
    is reported.  Without ``out_degree`` the largest admissible one is used.
    A defect above ``tol`` raises :class:`TruncationError` with the minimal
    adequate input degree.
    """
    if T.params.t != 1:
        raise PreconditionError("Weyl conjugation is defined on F_1^2 (t = 1)", field="t")
    if T.antilinear:
        raise PreconditionError("Weyl conjugation of antilinear operators is not supported")
    D = T.degree
    z = as_point(z, T.params.n)
    if not np.any(z):
        prov = dict(T.provenance, weyl_shift=[0.0, 0.0], weyl_defect=0.0)
        return TruncatedOperator(T.params, D, T.basis, T.matrix, prov), 0.0
    if out_degree is not None:
        candidates = [out_degree]
    else:
        candidates = range(D, -1, -2)
    for Dout in candidates:
        M = weyl_matrix(T.params, z, D, Dout)
        defect = _isometry_defect(M)
        if defect < tol:
            return _conjugated(T, M, Dout, z, defect), defect
        if out_degree is None and Dout < D // 2:
            break
    target = out_degree if out_degree is not None else 0
    need = _minimal_weyl_degree(T.params, z, target, tol, D)
    raise TruncationError(
        f"Weyl unitarity defect {defect:.3e} exceeds {tol:.1e}; minimal adequate degree is {need}",
        field="degree",
        minimal_degree=need,
        defect=defect,
    )


def _minimal_weyl_degree(params, z, Dout, tol, start):
    for Dp in range(max(start, Dout), 121):
        if _isometry_defect(weyl_matrix(params, z, Dp, Dout)) < tol:
            return Dp
    return None


def _conjugated(T, M, Dout, z, defect):
    mat = M.conj().T @ T.matrix @ M
    basis = multiindex_enumerate(T.params.n, Dout)
    prov = dict(T.provenance, weyl_shift=[[c.real, c.imag] for c in z], weyl_defect=defect, source_degree=T.degree)
    return TruncatedOperator(T.params, Dout, basis, mat, prov)


def weyl_composition_defect(params, z, w, D, margin=None):
    r"""``|| [W_z W_w] - e^{-i Im(z . conj w)} [W_{z+w}] ||`` on the degree-``D`` block.

    The inner product is taken over degrees up to ``D + margin``.
    """
    z = as_point(z, params.n)
    w = as_point(w, params.n)
    if margin is None:
        reach = math.sqrt(float(sqnorm(w)))
        margin = int(math.ceil(8 * reach * math.sqrt(D + 1) + 20 * reach)) + 4
    Dm = D + margin
    left = weyl_matrix(params, z, D, Dm) @ weyl_matrix(params, w, Dm, D)
    phase = np.exp(-1j * np.imag(cdot(z, w)))
    right = phase * weyl_matrix(params, z + w, D, D)
    return float(np.linalg.norm(left - right, 2))


# --------------------------------------------------------------------------
# integral representation
# --------------------------------------------------------------------------


def apply_integral_operator(f, g, t, z, rule=None, n=None):
    r"""``T_f g(z)`` through the kernel representation

    .. math::

        T_f g(z) = \int e^{\frac{|w|^2 + |z|^2}{2t}} \langle f k_w^t, k_z^t\rangle_t\, g(w)\, d\mu_t(w),

    with the inner pairing computed by quadrature at every outer node.
    ``g`` must be holomorphic of moderate degree (polynomial or finite
    kernel combination) so that the outer Hermite rule is accurate.
    """
    n = n or int(np.atleast_1d(np.asarray(z)).size)
    z = as_point(z, n)
    rule = rule or QuadratureRule("hermite", 40, n)
    if rule.kind != "hermite":
        raise PreconditionError("outer quadrature must be a Hermite rule", field="quad_order")
    u = math.sqrt(t) * rule.nodes
    Z = np.broadcast_to(z, u.shape)
    pair = pairings(f, u, Z, t, n)
    gvals = np.asarray(g(u), dtype=complex).reshape(-1)
    scale = np.exp((sqnorm(u) + sqnorm(z)) / (2 * t))
    return complex(np.sum(rule.weights * scale * pair * gvals))


def project_product(f, g, t, z, n=None, rule=None):
    """``<f g, K_z^t>_t = P(f g)(z)`` by a single quadrature."""
    n = n or int(np.atleast_1d(np.asarray(z)).size)
    z = as_point(z, n)
    if n == 1 and getattr(f, "pieces", None) is not None and rule is None:
        c = complex(f.center_point(1)[0])
        a = abs(z[0] / 2 - c)
        hi = a + WINDOW * math.sqrt(t) + 6 * math.sqrt(t)
        u, w, vals = polar_nodes(f, t, 0.0, hi, 2 * abs(c) + abs(z[0]), extra=40)
        expo = z[0] * np.conj(u) / t - np.abs(u) ** 2 / t
        gv = np.asarray(g(u.reshape(-1, 1)), dtype=complex).reshape(-1)
        return complex(np.sum(w * vals * gv * np.exp(expo)))
    rule = rule or QuadratureRule("hermite", 80, n)
    Y = math.sqrt(t) * rule.nodes
    u = 0.5 * z + Y
    expo = cdot(z, u) / t - (sqnorm(u) - sqnorm(Y)) / t
    vals = np.asarray(f(u), dtype=complex).reshape(-1) * np.asarray(g(u), dtype=complex).reshape(-1)
    return complex(np.sum(rule.weights * vals * np.exp(expo)))


# --------------------------------------------------------------------------
# the Gaussian family
# --------------------------------------------------------------------------


def boundedness_predicates(lam, t, s):
    """``(|1 - t lam| >= 1, |1 - 2 s lam| >= 1)`` elementwise over ``lam``."""
    lam = np.asarray(lam, dtype=complex)
    return np.abs(1 - t * lam) >= 1, np.abs(1 - 2 * s * lam) >= 1


@dataclass(frozen=True)
class GLambdaReport:
    lam: complex
    t: float
    s: float
    n: int
    eigenvalues: np.ndarray = field(repr=False)
    operator_bounded: bool = False
    heat_bounded: bool = False
    operator_integral: bool = True
    heat_integral: bool = True
    nu: complex = None
    unitary_truncation: bool = None
    singular_values: np.ndarray = field(default=None, repr=False)
    berezin_radii: np.ndarray = field(default=None, repr=False)
    berezin_abs: np.ndarray = field(default=None, repr=False)
    berezin_tail: np.ndarray = field(default=None, repr=False)
    tol: float = 1e-8


def glambda_report(lam, t=1.0, s=0.5, Dmax=30, n=1, radii=None, berezin_degree=60, tol=1e-8):
    r"""Boundedness data for ``T_{g_lam}`` and ``g_lam~^(s)``.

    Verdicts: the operator is bounded iff ``|1 - t lam| >= 1``; the heat
    transform is bounded iff ``|1 - 2 s lam| >= 1``.  Eigenvalues are
    ``(1 - t lam)^-(k + n)`` for ``k = 0..Dmax``.  ``operator_integral`` and
    ``heat_integral`` tell whether the defining integrals converge
    (``t Re lam < 1``, ``s Re lam < 1``); outside that range the diagonal is
    the analytic continuation and the Berezin field is not sampled.  At
    ``t = 1`` with ``|1 - lam| = 1`` the truncation is checked for unitarity.
    """
    lam = complex(lam)
    params = FockParams(n, t)
    if 1 - t * lam == 0:
        raise DomainError("1 - t*lambda must be nonzero", field="lambda")
    c = 1 - t * lam
    op_b, heat_b = boundedness_predicates(lam, t, s)
    eig = c ** (-(np.arange(Dmax + 1) + n))
    op_int = t * lam.real < 1
    heat_int = s * lam.real < 1
    sym = GaussianRadial(lam)
    T = toeplitz_matrix(sym, params, Dmax, method="quadrature")
    sv = np.linalg.svd(T.matrix, compute_uv=False)
    unitary = None
    nu = None
    if t == 1:
        nu = 1 / c
        if abs(abs(nu) - 1) < 1e-12:
            unitary = bool(np.all(np.abs(sv - 1) < tol))
    b_r = b_abs = b_tail = None
    if op_int:
        b_r = np.asarray(radii if radii is not None else np.arange(0, 6.5, 0.5), dtype=float)
        TB = toeplitz_matrix(sym, params, berezin_degree, method="quadrature")
        pts = np.zeros((b_r.size, n), dtype=complex)
        pts[:, 0] = b_r
        vals, tails = berezin_batch(TB, pts)
        b_abs, b_tail = np.abs(vals), tails
    return GLambdaReport(
        lam, t, s, n, eig,
        operator_bounded=bool(op_b),
        heat_bounded=bool(heat_b),
        operator_integral=op_int,
        heat_integral=heat_int,
        nu=nu,
        unitary_truncation=unitary,
        singular_values=sv,
        berezin_radii=b_r,
        berezin_abs=b_abs,
        berezin_tail=b_tail,
        tol=tol,
    )


def berezin_closed_form(lam, t, z, n=1):
    """``T_{g_lam}`` Berezin transform, which equals ``g_lam~^(t)``."""
    return heat_transform(GaussianRadial(lam), t, z, "closed-form", n)


# --------------------------------------------------------------------------
# export
# --------------------------------------------------------------------------


def save_operator(T, path):
    """Write ``path`` (binary, column-major complex pairs) and ``path + '.json'``.

    Layout: magic ``FOCKMAT1``, little-endian uint32 version, uint32 rows,
    uint32 cols, then ``rows * cols`` pairs of float64 (re, im) column by column.
    """
    path = Path(path)
    mat = np.asarray(T.matrix)
    rows, cols = mat.shape
    pairs = np.empty((cols, rows, 2))
    pairs[:, :, 0] = mat.T.real
    pairs[:, :, 1] = mat.T.imag
    try:
        with open(path, "wb") as fh:
            fh.write(MATRIX_MAGIC)
            fh.write(struct.pack("<III", MATRIX_VERSION, rows, cols))
            fh.write(pairs.astype("<f8").tobytes())
        sidecar = {
            "format": "focklab.matrix/1",
            "params": {"n": T.params.n, "t": T.params.t},
            "degree": T.degree,
            "basis_hash": T.basis_hash(),
            "antilinear": T.antilinear,
            "provenance": T.provenance,
        }
        Path(str(path) + ".json").write_text(json.dumps(sidecar, sort_keys=True, indent=2) + "\n")
    except OSError as exc:
        raise PreconditionError(f"cannot write {path}: {exc.strerror}", field="out", path=str(path)) from None
    return path


def load_operator(path):
    path = Path(path)
    raw = path.read_bytes()
    if raw[:8] != MATRIX_MAGIC:
        raise PreconditionError(f"{path} is not a focklab matrix file")
    version, rows, cols = struct.unpack("<III", raw[8:20])
    if version != MATRIX_VERSION:
        raise PreconditionError(f"unsupported matrix version {version}")
    pairs = np.frombuffer(raw[20:], dtype="<f8").reshape(cols, rows, 2)
    mat = (pairs[:, :, 0] + 1j * pairs[:, :, 1]).T
    meta = json.loads(Path(str(path) + ".json").read_text())
    params = FockParams(meta["params"]["n"], meta["params"]["t"])
    basis = multiindex_enumerate(params.n, meta["degree"])
    if basis_hash(basis) != meta["basis_hash"]:
        raise PreconditionError("basis ordering hash mismatch")
    return TruncatedOperator(params, meta["degree"], basis, mat, meta["provenance"], meta["antilinear"])
