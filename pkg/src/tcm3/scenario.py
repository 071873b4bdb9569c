"""Scenario configuration, time-series evaluation and file output."""

import math
import os
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .dynamics import (
    DEFAULT_TAIL_TOL,
    PRESETS,
    TRUNCATION_PAD,
    AtomicInitState,
    coherent_amplitudes,
    evolve,
    initial_amplitudes,
)
from .entanglement import entanglement_sample
from .husimi import DEFAULT_RESOLUTION, default_window, q_grid
from .observables import initial_population, single_atom_inversion, total_inversion
from .reduced_states import atomic_density_sym

PRODUCTS = ("inversions", "entanglement", "negativity", "qgrid", "qsnapshots")
PRODUCT_COLUMNS = {
    "inversions": ("w_total", "w_single", "p_ini"),
    "entanglement": ("i_f_abc", "i_fc_ab", "i_fcb_a", "c_ab"),
    "negativity": ("n_a_bc", "n_ab", "n_abc"),
}
SERIES_COLUMNS = ("tau",) + tuple(c for cols in PRODUCT_COLUMNS.values() for c in cols)
#: a run aborts when the norm drifts by more than this
NORM_ABORT_TOL = 1e-6


class ConfigError(ValueError):
    pass


class NumericalInvariantError(RuntimeError):
    pass


@dataclass
class Scenario:
    name: str = "scenario"
    atoms_label: str = "eee"
    atoms: AtomicInitState = field(default_factory=lambda: PRESETS["eee"])
    alpha0: complex = 10.0
    tau_start: float = 0.0
    tau_end: float = None
    tau_step: float = 0.05
    products: tuple = ("inversions", "entanglement", "negativity")
    q_window: tuple = None
    q_resolution: tuple = DEFAULT_RESOLUTION
    q_tau: float = None
    tail_tol: float = DEFAULT_TAIL_TOL
    output_dir: str = "out"

    def __post_init__(self):
        self.alpha0 = complex(self.alpha0)
        if self.nbar > 1400:
            raise ConfigError("alpha0 too large: mean photon number must not exceed 1400")
        if self.tau_end is None:
            self.tau_end = 2 * math.pi * math.sqrt(self.nbar) + 2.0
        if self.q_window is None:
            self.q_window = default_window(self.nbar)
        if self.q_tau is None:
            self.q_tau = self.tau_end
        if not self.tau_step > 0:
            raise ConfigError("tau_step must be positive")
        if not self.tau_end > self.tau_start:
            raise ConfigError("tau_end must exceed tau_start")
        unknown = set(self.products) - set(PRODUCTS)
        if unknown:
            raise ConfigError(f"unknown products: {sorted(unknown)}")

    @property
    def nbar(self):
        return abs(self.alpha0) ** 2

    def taus(self):
        count = int(math.floor((self.tau_end - self.tau_start) / self.tau_step + 1e-9)) + 1
        return self.tau_start + self.tau_step * np.arange(count)

    def snapshot_times(self):
        """Characteristic times ``k pi sqrt(nbar) / 3`` for k = 0, 1, 2, 3, 4, 6."""
        r = math.pi * math.sqrt(self.nbar)
        return {f"t{i}": k * r / 3.0 for i, k in enumerate((0, 1, 2, 3, 4, 6))}


# -- config parsing ---------------------------------------------------------

def _floats(value, count, lineno, key):
    parts = value.replace(",", " ").split()
    try:
        nums = [float(p) for p in parts]
    except ValueError:
        raise ConfigError(f"line {lineno}: malformed value for {key!r}: {value!r}") from None
    if len(nums) not in count:
        raise ConfigError(f"line {lineno}: {key!r} expects {' or '.join(map(str, count))} numbers")
    if not all(math.isfinite(x) for x in nums):
        raise ConfigError(f"line {lineno}: {key!r} must be finite")
    return nums


def _complex(value, lineno, key):
    nums = _floats(value, (1, 2), lineno, key)
    return complex(nums[0], nums[1] if len(nums) == 2 else 0.0)


def parse_config(text):
    """Parse ``key = value`` lines into a :class:`Scenario`.

    Complex values are written ``re im`` (or a bare real). Products are a
    comma- or space-separated list. ``#`` starts a comment.
    """
    kw = {}
    coeffs = {}
    coeff_line = 0
    atoms_line = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if not value:
            raise ConfigError(f"line {lineno}: missing value for {key!r}")
        if key == "name":
            kw["name"] = value
        elif key == "atoms":
            if value not in PRESETS and value != "custom":
                raise ConfigError(f"line {lineno}: atoms must be one of {sorted(PRESETS)} or 'custom'")
            kw["atoms_label"] = value
            atoms_line = lineno
        elif key in ("c_e", "c_w1", "c_w2", "c_g"):
            coeffs[key] = _complex(value, lineno, key)
            coeff_line = lineno
        elif key == "alpha0":
            kw["alpha0"] = _complex(value, lineno, key)
        elif key in ("tau_start", "tau_end", "tau_step", "q_tau", "tail_tol"):
            kw[key] = _floats(value, (1,), lineno, key)[0]
            if key == "tau_step" and kw[key] <= 0:
                raise ConfigError(f"line {lineno}: tau_step must be positive")
            if key == "tail_tol" and not 0 < kw[key] <= 1e-6:
                raise ConfigError(f"line {lineno}: tail_tol must lie in (0, 1e-6]")
        elif key == "products":
            items = tuple(p for p in value.replace(",", " ").split())
            bad = [p for p in items if p not in PRODUCTS]
            if bad:
                raise ConfigError(f"line {lineno}: unknown products {bad}")
            kw["products"] = items
        elif key == "q_window":
            kw["q_window"] = tuple(_floats(value, (4,), lineno, key))
        elif key == "q_resolution":
            nx, ny = _floats(value, (2,), lineno, key)
            if nx != int(nx) or ny != int(ny) or nx < 2 or ny < 2:
                raise ConfigError(f"line {lineno}: q_resolution needs two integers >= 2")
            kw["q_resolution"] = (int(nx), int(ny))
        elif key == "output_dir":
            kw["output_dir"] = value
        else:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")

    label = kw.get("atoms_label", "eee")
    if label == "custom":
        c = np.array([coeffs.get(k, 0.0) for k in ("c_e", "c_w1", "c_w2", "c_g")])
        norm = float(np.sum(np.abs(c) ** 2))
        if abs(norm - 1.0) > 1e-9:
            raise ConfigError(
                f"line {coeff_line or atoms_line}: custom atomic coefficients are not normalised "
                f"(sum |c|^2 = {norm:.12g})"
            )
        kw["atoms"] = AtomicInitState(*(c / math.sqrt(norm)))
    else:
        if coeffs:
            raise ConfigError(f"line {coeff_line}: coefficients given but atoms is not 'custom'")
        kw["atoms"] = PRESETS[label]
    return Scenario(**kw)


# -- evaluation -------------------------------------------------------------

def compute_series(psi0, taus, products=("inversions", "entanglement", "negativity")):
    """Evaluate the requested observables on a grid of times.

    Returns ``(columns, diagnostics)`` where ``columns`` maps column names
    to arrays and ``diagnostics`` holds the norm and excitation drifts.
    """
    names = ["tau"] + [c for p in PRODUCT_COLUMNS if p in products for c in PRODUCT_COLUMNS[p]]
    data = {name: np.empty(len(taus)) for name in names}
    need_rho = "entanglement" in products or "negativity" in products
    norm0 = psi0.norm()
    exc0 = psi0.excitation_number()
    norm_drift = exc_drift = 0.0
    for k, tau in enumerate(taus):
        psi = evolve(psi0, tau)
        norm_drift = max(norm_drift, abs(psi.norm() - norm0))
        exc_drift = max(exc_drift, abs(psi.excitation_number() - exc0))
        if norm_drift > NORM_ABORT_TOL:
            raise NumericalInvariantError(f"norm drift {norm_drift:.3e} at tau={tau}")
        data["tau"][k] = tau
        if "inversions" in products:
            data["w_total"][k] = total_inversion(psi)
            data["w_single"][k] = single_atom_inversion(psi)
            data["p_ini"][k] = initial_population(psi0, psi)
        if need_rho:
            e = entanglement_sample(tau, atomic_density_sym(psi))
            for name in PRODUCT_COLUMNS["entanglement"] + PRODUCT_COLUMNS["negativity"]:
                if name in data:
                    data[name][k] = getattr(e, name)
    return data, {"norm_drift": norm_drift, "excitation_drift": exc_drift}


# -- file output ------------------------------------------------------------

def atomic_write(path, text):
    """Write ``text`` to ``path`` through a temporary file and rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        umask = os.umask(0)
        os.umask(umask)
        os.chmod(tmp, 0o666 & ~umask)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fmt(x):
    return "%.17g" % x


def series_csv(columns):
    names = list(columns)
    lines = [",".join(names)]
    for row in zip(*(columns[n] for n in names)):
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def read_series_csv(path):
    return parse_series_csv(Path(path).read_text())


def parse_series_csv(text):
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty series file")
    names = lines[0].split(",")
    rows = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]]).reshape(-1, len(names))
    return {n: rows[:, i] for i, n in enumerate(names)}


def metadata_lines(meta):
    return "".join(f"# {k}={v}\n" for k, v in meta.items())


def grid_csv(grid, meta):
    lines = [metadata_lines(meta) + "re,im,q"]
    re, im = grid.re_axis, grid.im_axis
    for ix, x in enumerate(re):
        for iy, y in enumerate(im):
            lines.append(f"{_fmt(x)},{_fmt(y)},{_fmt(grid.values[ix, iy])}")
    return "\n".join(lines) + "\n"


def read_grid_csv(path):
    """Parse a Q-grid CSV back into ``(meta, re, im, values)``."""
    meta = {}
    rows = []
    for ln in Path(path).read_text().splitlines():
        if ln.startswith("#"):
            k, _, v = ln[1:].strip().partition("=")
            meta[k] = v
        elif ln and ln != "re,im,q":
            rows.append([float(v) for v in ln.split(",")])
    rows = np.array(rows)
    re = np.unique(rows[:, 0])
    im = np.unique(rows[:, 1])
    return meta, re, im, rows[:, 2].reshape(re.size, im.size)


@dataclass
class RunResult:
    output_dir: Path
    files: list
    manifest: dict
    series: dict = None


def run_scenario(s, output_dir=None, svg=True):
    """Run a scenario and write its products; returns a :class:`RunResult`."""
    from .svg import render_grid_svg, render_series_svg

    started = time.perf_counter()
    out = Path(output_dir if output_dir is not None else s.output_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"cannot create output directory {out}: {exc}") from exc
    if not os.access(out, os.W_OK):
        raise ConfigError(f"output directory {out} is not writable")

    fld = coherent_amplitudes(s.alpha0, s.tail_tol, pad=TRUNCATION_PAD)
    psi0 = initial_amplitudes(s.atoms, fld)
    files = []
    series = None
    diag = {"norm_drift": 0.0, "excitation_drift": 0.0}
    scenario_meta = {"scenario": s.name, "atoms": s.atoms_label}

    if any(p in s.products for p in PRODUCT_COLUMNS):
        series, diag = compute_series(psi0, s.taus(), s.products)
        atomic_write(out / "series.csv", series_csv(series))
        files.append("series.csv")
        if svg:
            for product, cols in PRODUCT_COLUMNS.items():
                if product in s.products:
                    doc = render_series_svg(series["tau"], {c: series[c] for c in cols},
                                            title=f"{s.name}: {product}")
                    atomic_write(out / f"{product}.svg", doc)
                    files.append(f"{product}.svg")

    grids = {}
    if "qsnapshots" in s.products:
        for label, tau in s.snapshot_times().items():
            grids[f"q_{label}"] = tau
    if "qgrid" in s.products:
        grids["qgrid"] = s.q_tau
    for stem, tau in grids.items():
        grid = q_grid(evolve(psi0, tau), s.q_window, s.q_resolution)
        meta = dict(scenario_meta)
        meta.update(window=" ".join(_fmt(v) for v in s.q_window),
                    resolution=f"{s.q_resolution[0]} {s.q_resolution[1]}", tau=_fmt(tau),
                    integral=_fmt(grid.integral()))
        atomic_write(out / f"{stem}.csv", grid_csv(grid, meta))
        files.append(f"{stem}.csv")
        if svg:
            atomic_write(out / f"{stem}.svg", render_grid_svg(grid, title=f"{s.name}: Q at tau={tau:.4g}"))
            files.append(f"{stem}.svg")

    manifest = {
        **scenario_meta,
        "alpha0": f"{_fmt(s.alpha0.real)} {_fmt(s.alpha0.imag)}",
        "nbar": _fmt(s.nbar),
        "n_max": fld.n_max,
        "tail_mass": _fmt(fld.tail_mass),
        "tail_tol": _fmt(s.tail_tol),
        "tau_start": _fmt(s.tau_start),
        "tau_end": _fmt(s.tau_end),
        "tau_step": _fmt(s.tau_step),
        "products": ",".join(s.products),
        "norm_drift": _fmt(diag["norm_drift"]),
        "excitation_drift": _fmt(diag["excitation_drift"]),
        "files": ",".join(files),
        "wall_time_s": "%.3f" % (time.perf_counter() - started),
    }
    atomic_write(out / "manifest.txt", metadata_lines(manifest))
    return RunResult(out, files + ["manifest.txt"], manifest, series)


def read_manifest(path):
    meta = {}
    for ln in Path(path).read_text().splitlines():
        if ln.startswith("#"):
            k, _, v = ln[1:].strip().partition("=")
            meta[k] = v
    return meta
