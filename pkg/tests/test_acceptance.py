"""Acceptance criteria, one test each.

Every test records a ``PASS``/``FAIL`` line; pytest prints them in an
"acceptance criteria" section at the end of the run.  Running this file as a
script prints the same lines directly.
"""

import cmath
import math
import sys
from fractions import Fraction

import numpy as np
import pytest

from focklab.bounds import (
    DominantFunction,
    bc_bound_check,
    c_scale_sequence,
    constant_growth_exponent,
    gamma_and_constant,
    gaussian_envelope_violation,
    kernel_tail,
    kernel_tail_quadrature,
    localization_profile,
    nonneg_sandwich_check,
    schur_bound,
)
from focklab.core import FockParams, Grid
from focklab.errors import NotIntegrableError
from focklab.experiments import KINDS, ExperimentConfig, emit, run
from focklab.heat import bmo_seminorm, heat_transform, pairing, semigroup_residual
from focklab.symbols import GaussianRadial, IndicatorBall, constant, parse_symbol
from focklab.toeplitz import (
    berezin_of_operator,
    glambda_report,
    toeplitz_matrix,
    weyl_composition_defect,
    weyl_conjugate,
)

P1 = FockParams(1, 1.0)
SEED = 1729

STEPS = ["step:r=0,1,2;v=1,0", "step:r=0,1;v=0,1"]
GAUSS_LAMBDAS = [-1.0, -0.5 + 0.5j, -1 + 2j]
CORPUS = ["const:value=1", "ball:radius=1"] + STEPS + [f"gaussian:lambda={l.real}{l.imag:+}i" for l in map(complex, GAUSS_LAMBDAS)]
NONNEG = ["const:value=1", "ball:radius=1"] + STEPS + ["gaussian:lambda=-1"]
BOUNDED = ["const:value=1", "ball:radius=1", "ball:center=0.5+0.5i;radius=1", "step:r=0,1,2;v=1,-1", "gaussian:lambda=-1"]


def _disc_points(R, dr=0.25, n_angles=8):
    pts = [0j]
    for r in np.arange(dr, R + 1e-12, dr):
        pts += [r * cmath.exp(2j * math.pi * k / n_angles) for k in range(n_angles)]
    return pts


def _random_pairs(count, scale=1.5):
    rng = np.random.default_rng(SEED)
    z = scale * (rng.normal(size=count) + 1j * rng.normal(size=count))
    w = scale * (rng.normal(size=count) + 1j * rng.normal(size=count))
    return list(zip(z, w))


def c01_diagonal_exactness():
    worst = 0.0
    for lam in (2.0, -1.0, 0.3 + 0.4j):
        T = toeplitz_matrix(GaussianRadial(lam), P1, 20, method="quadrature")
        expected = (1 - lam) ** -(np.arange(21) + 1.0)
        worst = max(worst, float(np.max(np.abs(np.diag(T.matrix) - expected) / np.abs(expected))))
    return worst < 1e-8, f"max relative error {worst:.2e} (tol 1e-8)"


def c02_berezin_heat():
    worst = -math.inf
    for sym in ["ball:radius=1"] + STEPS:
        f = parse_symbol(sym)
        T = toeplitz_matrix(f, P1, 40)
        for z in _disc_points(2.0):
            b = berezin_of_operator(T, z)
            worst = max(worst, abs(b.value - heat_transform(f, 1.0, z)) - b.tail_bound)
    return worst < 1e-6, f"max(|B - heat| - tail) = {worst:.2e} (tol 1e-6)"


def c03_semigroup():
    zs = (0.0, 1.0, 1 + 1j)
    closed = max(semigroup_residual(GaussianRadial(l), 0.5, 1.0, z, "closed-form") for l in GAUSS_LAMBDAS for z in zs)
    quad = max(semigroup_residual(IndicatorBall(0, 1), 0.5, 1.0, z, "quadrature") for z in zs)
    ok = closed < 1e-10 and quad < 1e-7
    return ok, f"closed-form {closed:.2e} (tol 1e-10), quadrature {quad:.2e} (tol 1e-7)"


def c04_offdiag_bound():
    pairs = _random_pairs(50)
    eq_dev = 0.0
    margin = math.inf
    ball = IndicatorBall(0, 1)
    for z, w in pairs:
        env = math.exp(-abs(z - w) ** 2 / 4)
        eq_dev = max(eq_dev, abs(abs(pairing(constant(1.0), w, z)) - env))
        margin = min(margin, env - abs(pairing(ball, w, z)))
    ok = eq_dev < 1e-12 and margin > 0
    return ok, f"g=1 deviation from exp(-d^2/4) {eq_dev:.2e} (tol 1e-12); ball min margin {margin:.2e} (> 0)"


def c05_constants():
    k = gamma_and_constant(0.25, 1.0)
    exact = k.gamma_exact == Fraction(1, 6) and k.C_exact == 6
    rng = np.random.default_rng(SEED)
    flips = True
    for _ in range(200):
        t = float(rng.uniform(0.1, 10))
        s = float(rng.uniform(0.001, 0.999)) * t
        g = gamma_and_constant(s, t).gamma
        flips &= (g > 0) == (s < t / 2)
    slope = constant_growth_exponent(1.0, 1)
    ok = exact and flips and abs(slope - 1) <= 0.05
    return ok, f"gamma=1/6, C=6 exact: {exact}; sign flips: {flips}; growth exponent {slope:.4f} (n=1, tol 5%)"


def c06_norm_bound():
    failures = []
    worst = math.inf
    for sym in CORPUS:
        f = parse_symbol(sym)
        for D in (10, 20, 30, 40):
            r = bc_bound_check(f, 0.25, 1.0, D)
            worst = min(worst, r.margin)
            if not r.ok:
                failures.append((sym, D))
    return not failures, f"{len(CORPUS) * 4} checks, min margin {worst:.3e}, failures {failures}"


def c07_sandwich():
    worst_gap = math.inf
    bad = []
    for n in (1, 2):
        for sym in NONNEG:
            r = nonneg_sandwich_check(parse_symbol(sym), 1.0, 20 if n == 2 else 40, n=n, tol=1e-8)
            worst_gap = min(worst_gap, r.two_time_min)
            if not r.ok or r.two_time_min < -1e-9:
                bad.append((sym, n))
    return not bad, f"sandwich ok for {2 * len(NONNEG)} cases, min two-time gap {worst_gap:.2e} (>= -1e-9), failures {bad}"


def c08_kernel_tail():
    radii = 0.05 * np.arange(1, 161)
    eq = max(abs(kernel_tail(0, r, 1).exact - math.exp(-r * r / 2)) / math.exp(-r * r / 2) for r in radii)
    ok_n1 = all(kernel_tail(0, r, 1).ok and kernel_tail(0, r, 1).bound == math.exp(-r * r / 2) for r in radii)
    ok_hi = all(kernel_tail(0, r, n).exact <= kernel_tail(0, r, n).bound for n in (2, 3) for r in radii)
    trans = max(abs(kernel_tail_quadrature(z, r) - math.exp(-r * r / 2)) for z in (0.5, 1 - 2j, 3j) for r in (0.5, 1.5, 3.0))
    ok = eq < 1e-12 and ok_n1 and ok_hi and trans < 1e-12
    return ok, f"n=1 rel dev {eq:.2e}, C_1=1 bound ok {ok_n1}, n=2,3 bound ok {ok_hi}, translation {trans:.2e} (tol 1e-12)"


def c09_phase_diagram():
    rec = run(ExperimentConfig("phase-diagram", t=1.0, s=0.5))
    a, b = rec.column("operator_bounded"), rec.column("heat_bounded")
    ok = len(a) == 201 * 201 and a == b
    return ok, f"{len(a)} grid points, mismatches {sum(x != y for x, y in zip(a, b))}"


def c10_noncompact():
    lam = 1 - cmath.exp(1j * math.pi / 4)
    rep = glambda_report(lam, 1.0, 0.5, Dmax=30)
    sv_dev = float(np.max(np.abs(rep.singular_values - 1)))
    k = int(np.argmin(np.abs(rep.berezin_radii - 4.0)))
    at4 = float(rep.berezin_abs[k])
    closed = abs(cmath.exp(lam * 16 / (1 - lam)) / (1 - lam))
    ok = sv_dev < 1e-8 and at4 < 1e-3
    return ok, f"singular values dev {sv_dev:.2e} (tol 1e-8); |Berezin| at |z|=4 {at4:.3e} (closed form {closed:.3e}, need < 1e-3)"


def c11_weyl():
    shifts = [0.5, 1.0, 1j, (1 + 1j) / math.sqrt(2), -0.6 + 0.8j]
    comp = max(weyl_composition_defect(P1, z, w, 40) for z in shifts for w in shifts[:3])
    inverse = max(weyl_composition_defect(P1, z, -z, 40) for z in shifts)
    T = toeplitz_matrix(parse_symbol("step:r=0,1,2;v=1,0"), P1, 40)
    iso = 0.0
    norm_dev = 0.0
    for z in shifts:
        A, defect = weyl_conjugate(T, z, tol=1e-6)
        iso = max(iso, defect)
        norm_dev = max(norm_dev, abs(A.norm - T.norm))
    unitary = max(iso, inverse)
    ok = comp < 1e-6 and unitary < 1e-6 and norm_dev < 1e-4
    return ok, f"composition {comp:.2e}, unitarity {unitary:.2e} (tol 1e-6); | ||A_z|| - ||A|| | {norm_dev:.2e} (tol 1e-4)"


def c12_bmo():
    r = bmo_seminorm(lambda u: u[:, 0].real, 1.0, Grid(2.0, 0.5, "square"))
    dev = abs(r.value - 1 / math.sqrt(math.pi))
    const = max(bmo_seminorm(constant(c), 1.0).value for c in (1.0, -2.5, 3j))
    ok = dev <= 1e-4 and const <= 1e-12
    return ok, f"Re z: |value - 1/sqrt(pi)| {dev:.2e} (tol 1e-4); constants {const:.2e} (tol 1e-12)"


def c13_localization():
    worst = -math.inf
    for sym in BOUNDED:
        f = parse_symbol(sym)
        prof = localization_profile(toeplitz_matrix(f, P1, 40))
        worst = max(worst, gaussian_envelope_violation(prof, f.sup_bound))
    schur = schur_bound(DominantFunction.gaussian(0.25))
    refused = 0
    for n in (1, 2, 3):
        try:
            schur_bound(DominantFunction.power(2 * n, n))
        except NotIntegrableError:
            refused += 1
    ok = worst <= 1e-9 and abs(schur - 4) <= 1e-10 and refused == 3
    return ok, f"max envelope violation {worst:.2e} (tol 1e-9); schur {schur!r}; beta=2n refused {refused}/3"


def c14_c_scale():
    seq = c_scale_sequence(10**6)
    k = np.arange(10**6 + 1)
    err = float(np.max(np.abs(seq - k / (2 * (k + 1)))))
    mono = bool(np.all(np.diff(seq) > 0))
    below = bool(np.all(seq < 0.5))
    return err < 1e-14 and mono and below, f"max error {err:.2e} (tol 1e-14), monotone {mono}, < 1/2 {below}"


_DETERMINISM = {
    "heat": dict(symbol="ball:center=0.5;radius=1", grid_extent=2.0, grid_step=0.5),
    "spectrum": dict(symbol="gaussian:lambda=2", degree=20),
    "berezin-field": dict(symbol="step:r=0,1,2;v=1,0"),
    "bc-bound": dict(symbol="ball:radius=1", degree=10),
    "sandwich": dict(symbol="ball:radius=1", degree=10),
    "localization": dict(symbol="ball:radius=1", degree=40),
    "tail": dict(dim=2),
    "phase-diagram": dict(),
    "pbdop": dict(grid_step=1.0),
}


def c15_determinism():
    differ = []
    for kind in KINDS:
        cfg = ExperimentConfig(kind, **_DETERMINISM[kind])
        a, b = run(cfg), run(cfg)
        for fmt in ("csv", "json"):
            if emit(a, fmt).encode() != emit(b, fmt).encode():
                differ.append((kind, fmt))
    return not differ, f"{len(KINDS)} kinds x 2 formats, differing outputs {differ}"


CRITERIA = [
    (1, "diagonal exactness", c01_diagonal_exactness),
    (2, "Berezin-heat identity", c02_berezin_heat),
    (3, "semigroup", c03_semigroup),
    (4, "off-diagonal Gaussian bound", c04_offdiag_bound),
    (5, "constants", c05_constants),
    (6, "norm bound", c06_norm_bound),
    (7, "nonnegative sandwich", c07_sandwich),
    (8, "kernel tail", c08_kernel_tail),
    (9, "phase diagram", c09_phase_diagram),
    (10, "non-compact example", c10_noncompact),
    (11, "Weyl laws", c11_weyl),
    (12, "BMO oracle", c12_bmo),
    (13, "localization", c13_localization),
    (14, "c-scale", c14_c_scale),
    (15, "determinism", c15_determinism),
]


def _line(num, name, ok, detail):
    return f"{'PASS' if ok else 'FAIL'} [{num:02d}] {name}: {detail}"


@pytest.mark.parametrize("num,name,check", CRITERIA, ids=[f"{n:02d}-{s.replace(' ', '-')}" for n, s, _ in CRITERIA])
def test_criterion(num, name, check, acceptance_log):
    ok, detail = check()
    line = _line(num, name, ok, detail)
    acceptance_log.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    failed = 0
    for num, name, check in CRITERIA:
        ok, detail = check()
        failed += not ok
        print(_line(num, name, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
