"""Declarative experiment runner and byte-stable CSV/JSON emitters.

An :class:`ExperimentConfig` names an experiment kind plus numeric inputs;
:func:`run` validates it, dispatches to the library and returns a
:class:`ResultRecord`; :func:`emit` serializes that record.  Floats are
written with 17 significant digits and JSON keys are sorted, so a fixed
config always produces the same bytes.  The wall-clock duration is kept on
the record but only written when explicitly requested.
"""

import csv
import io
import json
import math
import time
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np

from .bounds import (
    STABILITY_TOL,
    BandKernelOperator,
    bc_bound_check,
    gaussian_envelope_violation,
    kernel_tail_scan,
    localization_profile,
    nonneg_sandwich_check,
    pbdop_compression_profile,
)
from .core import FockParams, Grid, QuadratureRule
from .errors import DomainError, OutputError, PreconditionError
from .heat import heat_transform_batch, semigroup_residual
from .symbols import GaussianRadial, parse_symbol
from .toeplitz import berezin_batch, boundedness_predicates, operator_norm, toeplitz_matrix

SCHEMA = "focklab.result/1"

KINDS = (
    "heat",
    "spectrum",
    "berezin-field",
    "bc-bound",
    "sandwich",
    "localization",
    "tail",
    "phase-diagram",
    "pbdop",
)

NEEDS_SYMBOL = {"heat", "spectrum", "berezin-field", "bc-bound", "sandwich", "localization", "pbdop"}

# kind -> (degree, grid extent, grid step)
_DEFAULTS = {
    "heat": (30, 4.0, 0.25),
    "spectrum": (30, 4.0, 0.25),
    "berezin-field": (40, 2.0, 0.25),
    "bc-bound": (30, 8.0, 0.05),
    "sandwich": (30, 8.0, 0.05),
    "localization": (60, 6.0, 0.25),
    "tail": (30, 8.0, 0.05),
    "phase-diagram": (30, 4.0, 0.25),
    "pbdop": (30, 6.0, 0.5),
}


@dataclass(frozen=True)
class ExperimentConfig:
    """Inputs of one experiment; ``None`` fields are filled with kind defaults."""

    kind: str
    symbol: str = None
    dim: int = 1
    t: float = 1.0
    s: float = None
    degree: int = None
    grid_extent: float = None
    grid_step: float = None
    quad_order: int = None
    lambda_min: float = -1.0
    lambda_max: float = 3.0
    lambda_step: float = 0.02
    band_width: float = 1.0
    out: str = None
    format: str = "json"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PreconditionError(f"unknown experiment {self.kind!r}; choose from {', '.join(KINDS)}", field="experiment")
        D, extent, step = _DEFAULTS[self.kind]
        fill = {"degree": D, "grid_extent": extent, "grid_step": step}
        if self.s is None:
            fill["s"] = {"bc-bound": self.t / 4, "phase-diagram": self.t / 2}.get(self.kind, self.t / 2)
        if self.kind == "pbdop" and self.symbol is None:
            fill["symbol"] = "ball:radius=2"
        for name, value in fill.items():
            if getattr(self, name) is None:
                object.__setattr__(self, name, value)
        self.validate()

    def validate(self):
        """Check every numeric field before any computation starts."""
        _positive_int(self.dim, "dim")
        _positive(self.t, "t")
        _positive(self.s, "s")
        if self.kind == "bc-bound" and not self.s < self.t / 2:
            raise PreconditionError(f"bc-bound needs 0 < s < t/2, got s={self.s!r}, t={self.t!r}", field="s")
        if not (isinstance(self.degree, int) and self.degree >= 0):
            raise PreconditionError(f"degree must be a nonnegative integer, got {self.degree!r}", field="degree")
        _positive(self.grid_extent, "grid_extent")
        _positive(self.grid_step, "grid_step")
        if self.grid_step > self.grid_extent:
            raise PreconditionError("grid step exceeds grid extent", field="grid_step")
        if self.quad_order is not None:
            _positive_int(self.quad_order, "quad_order")
        if not self.lambda_min < self.lambda_max:
            raise PreconditionError("lambda range is empty", field="lambda_min")
        _positive(self.lambda_step, "lambda_step")
        if not (math.isfinite(self.band_width) and self.band_width >= 0):
            raise PreconditionError("band width must be finite and nonnegative", field="band_width")
        if self.format not in ("csv", "json"):
            raise PreconditionError(f"format must be csv or json, got {self.format!r}", field="format")
        if self.kind in NEEDS_SYMBOL:
            if not self.symbol:
                raise PreconditionError(f"experiment {self.kind} needs a symbol", field="symbol")
            self.parsed_symbol()
        if self.kind == "pbdop" and self.dim != 1:
            raise PreconditionError("pbdop runs in one complex dimension", field="dim")

    def parsed_symbol(self):
        try:
            return parse_symbol(self.symbol)
        except PreconditionError as exc:
            exc.field = "symbol"
            raise

    @property
    def params(self):
        return FockParams(self.dim, self.t)

    @property
    def grid(self):
        return Grid(self.grid_extent, self.grid_step, "radial")

    @property
    def rule(self):
        return None if self.quad_order is None else QuadratureRule("hermite", self.quad_order, self.dim)

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        """Accepts a config dict or a full result record (uses its ``inputs``)."""
        if "schema" in data and "inputs" in data:
            data = data["inputs"]
        names = {f.name for f in fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise PreconditionError(f"unknown config keys {sorted(unknown)}", field=sorted(unknown)[0])
        return cls(**data)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def _positive(value, name):
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise PreconditionError(f"{name} must be a positive finite number, got {value!r}", field=name)


def _positive_int(value, name):
    if not (isinstance(value, int) and not isinstance(value, bool) and value > 0):
        raise PreconditionError(f"{name} must be a positive integer, got {value!r}", field=name)


@dataclass
class Verdict:
    name: str
    ok: bool
    tol: float
    value: float = None


@dataclass
class ResultRecord:
    kind: str
    inputs: dict
    outputs: dict = field(default_factory=dict)
    columns: list = field(default_factory=list)
    rows: list = field(default_factory=list)
    verdicts: list = field(default_factory=list)
    schema: str = SCHEMA
    duration: float = None

    @property
    def ok(self):
        return all(v.ok for v in self.verdicts)

    def column(self, name):
        k = self.columns.index(name)
        return [row[k] for row in self.rows]

    def to_dict(self, timing=False):
        out = {
            "schema": self.schema,
            "kind": self.kind,
            "inputs": dict(self.inputs),
            "outputs": dict(self.outputs),
            "table": {"columns": list(self.columns), "rows": [list(r) for r in self.rows]},
            "verdicts": [asdict(v) for v in self.verdicts],
        }
        if timing:
            out["duration"] = self.duration
        return out


# --------------------------------------------------------------------------
# runners
# --------------------------------------------------------------------------


def _first_axis(pts):
    return [float(p[0].real) for p in pts]


def _run_heat(cfg, rec):
    f = cfg.parsed_symbol()
    pts = cfg.grid.points(cfg.dim)
    vals = heat_transform_batch(f, cfg.s, pts, cfg.dim, rule=cfg.rule)
    rec.columns = ["x", "re", "im"]
    rec.rows = [[x, float(v.real), float(v.imag)] for x, v in zip(_first_axis(pts), vals)]
    if cfg.s < cfg.t:
        closed = hasattr(f, "heat_closed_form")
        tol = 1e-10 if closed else 1e-7
        probes = [0.0, 1.0, 1 + 1j] if cfg.dim == 1 else [0.0, 1.0]
        res = 0.0
        for p in probes:
            z = np.zeros(cfg.dim, dtype=complex)
            z[0] = p
            res = max(res, semigroup_residual(f, cfg.s, cfg.t, z, n=cfg.dim))
        rec.outputs["semigroup_residual"] = res
        rec.verdicts.append(Verdict("semigroup", res < tol, tol, res))


def _run_spectrum(cfg, rec):
    f = cfg.parsed_symbol()
    T = toeplitz_matrix(f, cfg.params, cfg.degree, rule=cfg.rule)
    report = operator_norm(T)
    rec.outputs.update(norm=report.norm, diagonal=report.diagonal, provenance=T.provenance)
    if T.is_diagonal:
        d = np.diag(T.matrix)
        rec.columns = ["index", "degree", "re", "im", "abs"]
        rec.rows = [[k, sum(m), float(v.real), float(v.imag), float(abs(v))] for k, (m, v) in enumerate(zip(T.basis, d))]
        if isinstance(f, GaussianRadial):
            c = 1 - cfg.t * f.lam
            expected = np.array([c ** (-(sum(m) + cfg.dim)) for m in T.basis])
            err = float(np.max(np.abs(d - expected) / np.abs(expected)))
            rec.outputs["diagonal_relative_error"] = err
            rec.verdicts.append(Verdict("diagonal_closed_form", err < 1e-8, 1e-8, err))
    else:
        sv = np.linalg.svd(T.matrix, compute_uv=False)
        rec.columns = ["index", "singular_value"]
        rec.rows = [[k, float(v)] for k, v in enumerate(sv)]


def _run_berezin_field(cfg, rec):
    f = cfg.parsed_symbol()
    T = toeplitz_matrix(f, cfg.params, cfg.degree, rule=cfg.rule)
    pts = cfg.grid.points(cfg.dim)
    vals, tails = berezin_batch(T, pts)
    try:
        heat = heat_transform_batch(f, cfg.t, pts, cfg.dim)
    except DomainError:
        heat = None
    rec.columns = ["x", "re", "im", "tail"]
    if heat is None:
        rec.rows = [[x, float(v.real), float(v.imag), float(e)] for x, v, e in zip(_first_axis(pts), vals, tails)]
        return
    tol = 1e-6
    err = np.abs(vals - heat)
    ok = err < tol + tails
    rec.columns += ["heat_re", "heat_im", "ok"]
    rec.rows = [
        [x, float(v.real), float(v.imag), float(e), float(h.real), float(h.imag), bool(k)]
        for x, v, e, h, k in zip(_first_axis(pts), vals, tails, heat, ok)
    ]
    rec.outputs["max_error"] = float(err.max())
    rec.verdicts.append(Verdict("berezin_equals_heat", bool(ok.all()), tol, float(np.max(err - tails))))


def _run_bc_bound(cfg, rec):
    f = cfg.parsed_symbol()
    r = bc_bound_check(f, cfg.s, cfg.t, cfg.degree, cfg.grid, cfg.dim)
    rec.outputs.update(
        lhsNorm=r.lhsNorm, rhsBound=r.rhsBound, margin=r.margin, ok=r.ok, gamma=r.gamma, C=r.C, heatSup=r.heat_sup
    )
    rec.columns = ["level", "heat_sup"]
    rec.rows = [[k, float(v)] for k, v in enumerate(r.sup_levels)]
    rec.verdicts.append(Verdict("norm_bound", r.ok, STABILITY_TOL, r.margin))


def _run_sandwich(cfg, rec):
    f = cfg.parsed_symbol()
    r = nonneg_sandwich_check(f, cfg.t, cfg.degree, cfg.grid, cfg.dim)
    rec.outputs.update(low=r.low, mid=r.mid, high=r.high, ok=r.ok, twoTimeMin=r.two_time_min, twoTimeOk=r.two_time_ok)
    rec.verdicts.append(Verdict("sandwich", r.ok, r.tol))
    rec.verdicts.append(Verdict("two_time", r.two_time_ok, r.tol, r.two_time_min))


def _run_localization(cfg, rec):
    f = cfg.parsed_symbol()
    if f.sup_bound is None:
        raise PreconditionError("localization needs a bounded symbol", field="symbol")
    T = toeplitz_matrix(f, cfg.params, cfg.degree, rule=cfg.rule)
    prof = localization_profile(T, grid=cfg.grid)
    env = f.sup_bound * np.exp(-prof.d**2 / (4 * cfg.t))
    rec.columns = ["d", "value", "envelope"]
    rec.rows = [[float(d), float(v), float(e)] for d, v, e in zip(prof.d, prof.values, env)]
    viol = gaussian_envelope_violation(prof, f.sup_bound, cfg.t)
    rec.outputs.update(
        supBound=f.sup_bound,
        C=prof.C,
        beta=prof.beta,
        supIntegral=prof.sup_integral,
        tailIntegral=prof.tail_integral,
        admissibleRadius=prof.admissible_radius,
        violation=viol,
    )
    rec.verdicts.append(Verdict("gaussian_envelope", viol <= 1e-9, 1e-9, viol))


def _run_tail(cfg, rec):
    radii = cfg.grid.axis()[1:]
    tails = kernel_tail_scan(cfg.dim, radii)
    rec.columns = ["r", "exact", "bound", "ok"]
    rec.rows = [[float(k.r), k.exact, k.bound, k.ok] for k in tails]
    rec.verdicts.append(Verdict("tail_bound", all(k.ok for k in tails), 1e-12))


def _lambda_axis(cfg):
    count = int(round((cfg.lambda_max - cfg.lambda_min) / cfg.lambda_step))
    return cfg.lambda_min + cfg.lambda_step * np.arange(count + 1)


def _run_phase(cfg, rec):
    ax = _lambda_axis(cfg)
    lam = (ax[None, :] + 1j * ax[:, None]).ravel()
    op_b, heat_b = boundedness_predicates(lam, cfg.t, cfg.s)
    rec.columns = ["re", "im", "operator_bounded", "heat_bounded"]
    rec.rows = [[float(l.real), float(l.imag), bool(a), bool(b)] for l, a, b in zip(lam, op_b, heat_b)]
    agree = int(np.sum(op_b == heat_b))
    rec.outputs.update(points=int(lam.size), agree=agree, side=int(ax.size))
    if cfg.s == cfg.t / 2:
        rec.verdicts.append(Verdict("predicates_coincide", agree == lam.size, 0.0, float(lam.size - agree)))


def _bump(omega):
    def phi(x):
        r2 = np.abs(np.asarray(x)[:, 0]) ** 2 / (omega * omega)
        inside = r2 < 1
        out = np.zeros(r2.shape)
        out[inside] = np.exp(1 - 1 / (1 - r2[inside]))
        return out

    return phi


def _run_pbdop(cfg, rec):
    psi = cfg.parsed_symbol()
    omega = cfg.band_width
    B = BandKernelOperator(omega, _bump(omega) if omega > 0 else (lambda x: np.ones(len(x))), psi)
    r = pbdop_compression_profile(B, grid=cfg.grid)
    rec.columns = ["d", "value"]
    rec.rows = [[float(d), float(v)] for d, v in zip(r.profile.d, r.profile.values)]
    rec.outputs.update(
        Kfit=r.K_fit,
        Kapriori=r.K_apriori,
        decayRate=r.decay_rate,
        normProxy=r.norm_proxy,
        envelopeOk=r.envelope_ok,
        gaussianOk=r.gaussian_ok,
        shortRangeOk=r.short_range_ok,
    )
    rec.verdicts.append(Verdict("apriori_envelope", r.envelope_ok, 1e-12, r.K_fit - r.K_apriori))
    rec.verdicts.append(Verdict("gaussian_rate", r.gaussian_ok, 1 / 18, r.decay_rate))
    rec.verdicts.append(Verdict("short_range", r.short_range_ok, 1e-12))


_RUNNERS = {
    "heat": _run_heat,
    "spectrum": _run_spectrum,
    "berezin-field": _run_berezin_field,
    "bc-bound": _run_bc_bound,
    "sandwich": _run_sandwich,
    "localization": _run_localization,
    "tail": _run_tail,
    "phase-diagram": _run_phase,
    "pbdop": _run_pbdop,
}


def run(config):
    """Run one experiment; errors from the library propagate unchanged."""
    config.validate()
    rec = ResultRecord(config.kind, config.to_dict())
    start = time.perf_counter()
    _RUNNERS[config.kind](config, rec)
    rec.duration = time.perf_counter() - start
    return rec


# --------------------------------------------------------------------------
# emitters
# --------------------------------------------------------------------------


def _num(x):
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if not math.isfinite(x):
        return "null"
    return "%.17g" % x


def _json(obj):
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, float, np.integer, np.floating)):
        return _num(obj.item() if hasattr(obj, "item") else obj)
    if isinstance(obj, complex):
        return _json({"im": obj.imag, "re": obj.real})
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ",".join(f"{json.dumps(str(k))}:{_json(obj[k])}" for k in sorted(obj)) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ",".join(_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _cell(x):
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, float, np.integer, np.floating)):
        return _num(x)
    return str(x)


def to_json(record, timing=False):
    return _json(record.to_dict(timing)) + "\n"


def to_csv(record):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    if record.columns:
        writer.writerow(record.columns)
        for row in record.rows:
            writer.writerow([_cell(x) for x in row])
    else:
        names = sorted(record.outputs)
        writer.writerow(names)
        writer.writerow([_cell(record.outputs[k]) for k in names])
    return buf.getvalue()


def emit(record, fmt="json", path=None, timing=False):
    """Serialize ``record``; with ``path`` also write the bytes there."""
    if fmt == "json":
        text = to_json(record, timing)
    elif fmt == "csv":
        text = to_csv(record)
    else:
        raise PreconditionError(f"format must be csv or json, got {fmt!r}", field="format")
    if path is not None:
        try:
            Path(path).write_bytes(text.encode("utf-8"))
        except OSError as exc:
            raise OutputError(f"cannot write {path}: {exc.strerror}", field="out", path=str(path)) from exc
    return text


__all__ = [
    "KINDS",
    "SCHEMA",
    "ExperimentConfig",
    "ResultRecord",
    "Verdict",
    "emit",
    "run",
    "to_csv",
    "to_json",
]
