"""Quadrature, finite-difference stencils and sampled functions."""
from __future__ import annotations

import csv
import heapq
import io
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Union

import numpy as np
from scipy.integrate import simpson

from .errors import AccuracyError, UsageError

__all__ = [
    "GridFunction",
    "quad",
    "inner_product",
    "derivative",
    "uniform_grid",
    "write_csv",
    "read_csv",
]

# 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_WK = np.concatenate([_WGK[:-1], _WGK[::-1]])
_WG15 = np.zeros(15)
# Gauss nodes sit at odd positions of _XGK (0.949.., 0.741.., 0.405.., 0)
_WG15[[1, 3, 5]] = _WG[:3]
_WG15[[13, 11, 9]] = _WG[:3]
_WG15[7] = _WG[3]


def _gk15(f, a, b):
    """Apply the G7/K15 pair on each panel [a_i, b_i]; f is vectorised."""
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    pts = mid[:, None] + half[:, None] * _NODES[None, :]
    vals = np.asarray(f(pts.ravel())).reshape(pts.shape)
    k = half * (vals @ _WK)
    g = half * (vals @ _WG15)
    return k, np.abs(k - g)


def quad(f: Callable, a: float, b: float, *, abs_tol: float = 1e-12,
         rel_tol: float = 1e-12, initial_panels: int = 16,
         max_panels: int = 20000) -> complex:
    """Adaptive Gauss-Kronrod quadrature of a vectorised integrand on [a, b].

    Panels are bisected, worst error first, until the summed error
    estimate drops below ``max(abs_tol, rel_tol*|I|)``.  Complex integrands
    are supported; the result is real when the integrand is.
    """
    if not (np.isfinite(a) and np.isfinite(b)):
        raise UsageError("quad needs finite limits; truncate where the integrand is negligible")
    if b == a:
        return 0.0
    sign = 1.0
    if b < a:
        a, b, sign = b, a, -1.0
    edges = np.linspace(a, b, initial_panels + 1)
    lo, hi = edges[:-1], edges[1:]
    vals, errs = _gk15(f, lo, hi)
    heap = [(-e, l, h, v) for e, l, h, v in zip(errs, lo, hi, vals)]
    heapq.heapify(heap)
    total = vals.sum()
    err = errs.sum()
    while err > max(abs_tol, rel_tol * abs(total)):
        if len(heap) >= max_panels:
            raise AccuracyError(
                f"quadrature did not converge: error estimate {err:.3g} after {len(heap)} panels"
            )
        # refine the worst panels in one vectorised batch
        batch = [heapq.heappop(heap) for _ in range(min(len(heap), 32))]
        l = np.array([p[1] for p in batch])
        h = np.array([p[2] for p in batch])
        m = 0.5 * (l + h)
        v, e = _gk15(f, np.concatenate([l, m]), np.concatenate([m, h]))
        total += v.sum() - sum(p[3] for p in batch)
        err += e.sum() + sum(p[0] for p in batch)
        n = len(batch)
        for i in range(n):
            heapq.heappush(heap, (-e[i], l[i], m[i], v[i]))
            heapq.heappush(heap, (-e[n + i], m[i], h[i], v[n + i]))
    # recompute from the panels to shed accumulated rounding
    total = sum(p[3] for p in heap)
    return sign * total


@dataclass(frozen=True)
class GridFunction:
    """Samples of a real or complex function on a uniform 1-D grid."""

    x: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        v = np.asarray(self.values)
        if x.ndim != 1 or v.shape != x.shape:
            raise UsageError("GridFunction needs 1-D x and values of the same length")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "values", v)

    @property
    def spacing(self) -> float:
        return float((self.x[-1] - self.x[0]) / (len(self.x) - 1))

    @property
    def is_uniform(self) -> bool:
        d = np.diff(self.x)
        h = self.spacing
        # allow for the rounding of x itself when |x| >> h
        slack = 1e-9 * abs(h) + 8 * np.finfo(float).eps * np.max(np.abs(self.x))
        return bool(np.all(np.abs(d - h) <= slack))

    def with_values(self, values) -> "GridFunction":
        return GridFunction(self.x, values)

    def __len__(self):
        return len(self.x)

    def to_csv(self, path=None) -> str:
        if np.iscomplexobj(self.values):
            cols = {"x": self.x, "re": self.values.real, "im": self.values.imag}
        else:
            cols = {"x": self.x, "value": self.values}
        return write_csv(cols, path)

    @classmethod
    def from_csv(cls, source) -> "GridFunction":
        cols = read_csv(source)
        if "value" in cols:
            return cls(cols["x"], cols["value"])
        return cls(cols["x"], cols["re"] + 1j * cols["im"])


def uniform_grid(lo: float, hi: float, points: int) -> np.ndarray:
    if points < 2 or not hi > lo:
        raise UsageError("grid needs hi > lo and at least two points")
    return np.linspace(lo, hi, points)


# 4th-order central and one-sided stencils, coefficients over h (or h^2)
_D1_CENTRAL = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
_D2_CENTRAL = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0
_D1_EDGE = [
    np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / 12.0,
    np.array([-3.0, -10.0, 18.0, -6.0, 1.0]) / 12.0,
]
_D2_EDGE = [
    np.array([45.0, -154.0, 214.0, -156.0, 61.0, -10.0]) / 12.0,
    np.array([10.0, -15.0, -4.0, 14.0, -6.0, 1.0]) / 12.0,
]


def _diff(v, h, order):
    out = np.empty_like(v)
    if order == 1:
        c, edge, scale = _D1_CENTRAL, _D1_EDGE, h
    else:
        c, edge, scale = _D2_CENTRAL, _D2_EDGE, h * h
    n = len(v)
    out[2:-2] = (c[0] * v[:-4] + c[1] * v[1:-3] + c[2] * v[2:-2]
                 + c[3] * v[3:-1] + c[4] * v[4:])
    w = len(edge[0])
    for i, st in enumerate(edge):
        out[i] = st @ v[:w]
        # mirrored stencil at the right edge; odd derivatives flip sign
        out[n - 1 - i] = (st @ v[::-1][:w]) * (-1 if order == 1 else 1)
    return out / scale


def derivative(f: GridFunction, order: int = 1) -> GridFunction:
    """First or second derivative with 4th-order stencils (one-sided at the edges)."""
    if order not in (1, 2):
        raise UsageError("derivative order must be 1 or 2")
    if len(f) < 7:
        raise UsageError("derivative needs at least 7 grid points")
    if not f.is_uniform:
        raise UsageError("derivative needs a uniform grid")
    return f.with_values(_diff(f.values, f.spacing, order))


Integrand = Union[Callable, GridFunction]


def inner_product(f: Integrand, g: Integrand, domain=None, *, abs_tol: float = 1e-12) -> complex:
    """<f, g> = integral of conj(f) g.

    Callables are integrated adaptively on ``domain``; grid functions
    (which must share a grid) with composite Simpson on their samples.
    """
    if isinstance(f, GridFunction) or isinstance(g, GridFunction):
        if not (isinstance(f, GridFunction) and isinstance(g, GridFunction)):
            raise UsageError("cannot mix GridFunction and callable")
        if f.x.shape != g.x.shape or not np.array_equal(f.x, g.x):
            raise UsageError("grid functions live on different grids")
        val = simpson(np.conj(f.values) * g.values, x=f.x)
        return val
    if domain is None:
        raise UsageError("callables need an integration domain")
    a, b = domain
    return quad(lambda t: np.conj(f(t)) * g(t), a, b, abs_tol=abs_tol)


def write_csv(columns: dict, path=None) -> str:
    """Write equal-length columns with 17 significant digits and LF endings."""
    names = list(columns)
    data = [np.asarray(columns[k]) for k in names]
    n = len(data[0])
    if any(len(d) != n for d in data):
        raise UsageError("CSV columns differ in length")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(names)
    for i in range(n):
        w.writerow([_fmt(d[i]) for d in data])
    text = buf.getvalue()
    if path is not None:
        path = Path(path)
        try:
            path.write_text(text, newline="")
        except OSError as exc:
            raise OSError(f"cannot write {path}: {exc.strerror}") from exc
    return text


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def read_csv(source) -> dict:
    """Read a CSV written by ``write_csv`` back into float columns."""
    if isinstance(source, (str, Path)) and "\n" not in str(source):
        text = Path(source).read_text()
    else:
        text = str(source)
    rows = list(csv.reader(io.StringIO(text)))
    header, body = rows[0], rows[1:]
    cols = {h: np.array([float(r[i]) for r in body]) for i, h in enumerate(header)}
    return cols


def warn_coarse(message: str):
    warnings.warn(message, RuntimeWarning, stacklevel=3)


@dataclass(frozen=True)
class Patch:
    """One uniform piece of a PatchGrid; ``keep`` marks the rows it owns."""

    x: np.ndarray
    keep: slice

    @property
    def spacing(self) -> float:
        return float(self.x[1] - self.x[0])


@dataclass(frozen=True)
class PatchGrid:
    """Union of overlapping uniform patches graded away from a boundary.

    Spacing grows with the distance from ``anchor`` so that stencils never
    straddle the non-analytic behaviour at the boundary, while far-away
    smooth regions stay cheap.  Every patch is uniform, so the stencils of
    ``derivative`` apply unchanged; each row is owned by exactly one patch,
    and owned rows are never within three rows of a patch edge except at
    the two outer ends, where the first and last three rows are dropped.
    """

    patches: tuple

    @property
    def points(self) -> np.ndarray:
        return np.concatenate([p.x[p.keep] for p in self.patches])

    @property
    def weights(self) -> np.ndarray:
        return np.concatenate([np.full(len(p.x[p.keep]), p.spacing) for p in self.patches])

    @property
    def size(self) -> int:
        return sum(len(p.x) for p in self.patches)

    @classmethod
    def uniform(cls, lo: float, hi: float, points: int) -> "PatchGrid":
        x = uniform_grid(lo, hi, points)
        return cls((Patch(x, slice(3, points - 3)),))

    @classmethod
    def graded(cls, lo: float, hi: float, anchor: float, *, per_patch: int = 512,
               min_points: int = 4000, growth: float = 2.0) -> "PatchGrid":
        """Patches [anchor + d, anchor + growth*d] starting at d = lo - anchor."""
        if not lo > anchor or not hi > lo:
            raise UsageError("graded grid needs anchor < lo < hi")
        edges = [lo]
        while edges[-1] < hi:
            d = edges[-1] - anchor
            edges.append(min(anchor + d * growth, hi))
        return cls.from_edges(edges, per_patch=per_patch, min_points=min_points)

    @classmethod
    def symmetric(cls, lo: float, hi: float, centre: float, core: float, *,
                  per_patch: int = 512, min_points: int = 4000,
                  growth: float = 2.0) -> "PatchGrid":
        """A core patch [centre - core, centre + core] graded outwards both ways."""
        right = [centre + core]
        while right[-1] < hi:
            right.append(min(centre + (right[-1] - centre) * growth, hi))
        left = [centre - core]
        while left[-1] > lo:
            left.append(max(centre - (centre - left[-1]) * growth, lo))
        return cls.from_edges(left[::-1] + right, per_patch=per_patch,
                              min_points=min_points)

    @classmethod
    def from_edges(cls, edges, *, per_patch: int = 512, min_points: int = 4000) -> "PatchGrid":
        edges = [float(e) for e in edges]
        if len(edges) < 2 or any(b <= a for a, b in zip(edges, edges[1:])):
            raise UsageError("patch edges must increase")
        h_cap = (edges[-1] - edges[0]) / min_points
        patches = []
        last = len(edges) - 2
        for k in range(last + 1):
            a, b = edges[k], edges[k + 1]
            n = max(per_patch, int(np.ceil((b - a) / h_cap)) + 1)
            h = (b - a) / (n - 1)
            left = 0 if k == 0 else 3
            right = 3 if k < last else 0
            x = a + h * np.arange(-left, n + right)
            x[left] = a
            x[left + n - 1] = b
            start = 3 if k == 0 else left
            # each patch owns [a, b); the outermost rows at either end are dropped
            stop = left + n - 1 if k < last else left + n - 3
            patches.append(Patch(x, slice(start, stop)))
        return cls(tuple(patches))

    def sample(self, func) -> list:
        return [GridFunction(p.x, func(p.x)) for p in self.patches]

    def owned(self, gfs) -> np.ndarray:
        return np.concatenate([g.values[p.keep] for g, p in zip(gfs, self.patches)])

    def norm(self, values) -> float:
        return float(np.sqrt(np.sum(self.weights * np.abs(values) ** 2)))
