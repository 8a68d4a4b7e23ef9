"""Planar domains and the geometric quantities the bounds are built from.

Every supported shape is described by a counter-clockwise parametrisation
``t -> P(t)`` of its boundary about its own centre; a :class:`DomainSpec`
adds a translation. Points are complex numbers throughout.

Curvature follows the clockwise arc-length convention: convex boundaries
have non-positive curvature and total curvature ``-2 pi``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import minimize, minimize_scalar

TWO_PI = 2.0 * math.pi
DEFAULT_RESOLUTION = 4096
MAX_FOURIER_MODES = 32
CONVEX_TOL = 1e-12


class GeometryError(ValueError):
    """Invalid domain description."""


class NotStarShaped(GeometryError):
    """A ray from the origin meets the boundary more than once."""


# --------------------------------------------------------------------------
# shapes


@dataclass(frozen=True)
class Disk:
    radius: float
    kind = "disk"

    def __post_init__(self):
        if not self.radius > 0:
            raise GeometryError(f"disk radius must be positive, got {self.radius}")

    def param(self, t):
        return self.radius * np.exp(1j * np.asarray(t, dtype=float))

    def deriv(self, t):
        return 1j * self.param(t)

    def deriv2(self, t):
        return -self.param(t)

    def jet(self, t):
        p = self.param(t)
        return p, 1j * p, -p

    def contains(self, z) -> bool:
        return abs(z) < self.radius

    def scaled(self, alpha):
        return Disk(self.radius * alpha)

    def to_json(self):
        return {"kind": "disk", "radius": self.radius}


@dataclass(frozen=True)
class Ellipse:
    a: float
    b: float
    kind = "ellipse"

    def __post_init__(self):
        if not (self.b > 0 and self.a >= self.b):
            raise GeometryError(f"ellipse needs a >= b > 0, got a={self.a}, b={self.b}")

    def param(self, t):
        t = np.asarray(t, dtype=float)
        return self.a * np.cos(t) + 1j * self.b * np.sin(t)

    def deriv(self, t):
        t = np.asarray(t, dtype=float)
        return -self.a * np.sin(t) + 1j * self.b * np.cos(t)

    def deriv2(self, t):
        return -self.param(t)

    def jet(self, t):
        t = np.asarray(t, dtype=float)
        c, s = np.cos(t), np.sin(t)
        p = self.a * c + 1j * self.b * s
        return p, -self.a * s + 1j * self.b * c, -p

    def contains(self, z) -> bool:
        return (z.real / self.a) ** 2 + (z.imag / self.b) ** 2 < 1.0

    def scaled(self, alpha):
        return Ellipse(self.a * alpha, self.b * alpha)

    def to_json(self):
        return {"kind": "ellipse", "a": self.a, "b": self.b}


@dataclass(frozen=True)
class PolarFourier:
    """rho(t) = a0 + sum_k cos[k-1] cos(k t) + sin[k-1] sin(k t) about the centre."""

    a0: float
    cos: tuple = ()
    sin: tuple = ()
    kind = "polar_fourier"
    _modes: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "cos", tuple(float(c) for c in self.cos))
        object.__setattr__(self, "sin", tuple(float(s) for s in self.sin))
        nmodes = max(len(self.cos), len(self.sin))
        if nmodes > MAX_FOURIER_MODES:
            raise GeometryError(f"at most {MAX_FOURIER_MODES} Fourier modes are supported")
        ac = np.zeros(nmodes)
        bs = np.zeros(nmodes)
        ac[: len(self.cos)] = self.cos
        bs[: len(self.sin)] = self.sin
        object.__setattr__(self, "_modes", np.vstack([np.arange(1, nmodes + 1), ac, bs]))
        t = np.linspace(0.0, TWO_PI, 4096, endpoint=False)
        if not np.all(self.rho(t) > 0):
            raise GeometryError("polar Fourier radius must stay positive")

    def rho(self, t, order=0):
        t = np.asarray(t, dtype=float)
        k, ac, bs = self._modes
        if k.size == 0:
            return np.full_like(t, self.a0 if order == 0 else 0.0, dtype=float)
        kt = np.multiply.outer(t, k)
        c, s = np.cos(kt), np.sin(kt)
        if order == 0:
            return self.a0 + c @ ac + s @ bs
        if order == 1:
            return (-s * k) @ ac + (c * k) @ bs
        if order == 2:
            return (-c * k**2) @ ac + (-s * k**2) @ bs
        raise ValueError("order must be 0, 1 or 2")

    def param(self, t):
        t = np.asarray(t, dtype=float)
        return self.rho(t) * np.exp(1j * t)

    def deriv(self, t):
        t = np.asarray(t, dtype=float)
        e = np.exp(1j * t)
        return (self.rho(t, 1) + 1j * self.rho(t)) * e

    def deriv2(self, t):
        t = np.asarray(t, dtype=float)
        e = np.exp(1j * t)
        r, r1, r2 = self.rho(t), self.rho(t, 1), self.rho(t, 2)
        return (r2 - r + 2j * r1) * e

    def jet(self, t):
        t = np.asarray(t, dtype=float)
        k, ac, bs = self._modes
        kt = np.multiply.outer(t, k)
        c, s = np.cos(kt), np.sin(kt)
        ca, sb = c * ac, s * bs
        r = self.a0 + (ca + sb).sum(axis=-1)
        r1 = ((c * bs - s * ac) * k).sum(axis=-1)
        r2 = (-(ca + sb) * k**2).sum(axis=-1)
        e = np.exp(1j * t)
        return r * e, (r1 + 1j * r) * e, (r2 - r + 2j * r1) * e

    def contains(self, z) -> bool:
        return abs(z) < float(self.rho(np.angle(z)))

    def scaled(self, alpha):
        return PolarFourier(
            self.a0 * alpha,
            tuple(c * alpha for c in self.cos),
            tuple(s * alpha for s in self.sin),
        )

    def rotated(self, angle):
        """Same shape turned counter-clockwise by ``angle``."""
        n = max(len(self.cos), len(self.sin))
        ac = list(self.cos) + [0.0] * (n - len(self.cos))
        bs = list(self.sin) + [0.0] * (n - len(self.sin))
        new_c, new_s = [], []
        for k in range(1, n + 1):
            ca, sa = math.cos(k * angle), math.sin(k * angle)
            a, b = ac[k - 1], bs[k - 1]
            new_c.append(a * ca - b * sa)
            new_s.append(a * sa + b * ca)
        return PolarFourier(self.a0, tuple(new_c), tuple(new_s))

    def to_json(self):
        return {"kind": "polar_fourier", "a0": self.a0, "cos": list(self.cos), "sin": list(self.sin)}


def perturbed_circle(eps: float, k: int, radius: float = 1.0) -> PolarFourier:
    """rho = radius * (1 + eps cos(k t))."""
    cos = [0.0] * k
    cos[k - 1] = eps * radius
    return PolarFourier(radius, tuple(cos), ())


# --------------------------------------------------------------------------
# domain spec


@dataclass(frozen=True)
class DomainSpec:
    shape: Disk | Ellipse | PolarFourier
    offset: tuple = (0.0, 0.0)

    def __post_init__(self):
        off = tuple(float(v) for v in self.offset)
        if len(off) != 2 or not all(math.isfinite(v) for v in off):
            raise GeometryError(f"offset must be a finite 2-vector, got {self.offset!r}")
        object.__setattr__(self, "offset", off)
        if not self.shape.contains(-self.center):
            raise GeometryError("the origin must lie strictly inside the domain")

    @property
    def center(self) -> complex:
        return complex(self.offset[0], self.offset[1])

    def point(self, t):
        return self.center + self.shape.param(t)

    def tangent(self, t):
        return self.shape.deriv(t)

    def second(self, t):
        return self.shape.deriv2(t)

    def scaled(self, alpha: float) -> DomainSpec:
        return DomainSpec(self.shape.scaled(alpha), (self.offset[0] * alpha, self.offset[1] * alpha))

    def contains(self, y: complex) -> bool:
        return self.shape.contains(complex(y) - self.center)

    def to_json(self):
        return {"shape": self.shape.to_json(), "offset": list(self.offset)}


def disk(radius: float = 1.0, offset=(0.0, 0.0)) -> DomainSpec:
    return DomainSpec(Disk(radius), offset)


def ellipse(a: float, b: float, offset=(0.0, 0.0)) -> DomainSpec:
    return DomainSpec(Ellipse(a, b), offset)


def polar_fourier(a0: float, cos=(), sin=(), offset=(0.0, 0.0)) -> DomainSpec:
    return DomainSpec(PolarFourier(a0, tuple(cos), tuple(sin)), offset)


def translate(spec: DomainSpec, y) -> DomainSpec:
    """The domain ``spec - y``; fails if ``y`` is not inside the domain."""
    y = complex(*y) if not isinstance(y, complex) else y
    return replace(spec, offset=(spec.offset[0] - y.real, spec.offset[1] - y.imag))


# --------------------------------------------------------------------------
# pointwise quantities


def _grid(n: int) -> np.ndarray:
    return TWO_PI * np.arange(n) / n


def _cross(z, w):
    return (np.conj(z) * w).imag


def _dot(z, w):
    return (np.conj(z) * w).real


def curvature_at_param(spec: DomainSpec, t):
    """Signed curvature at shape parameter ``t`` (convex => non-positive)."""
    d1 = spec.tangent(t)
    d2 = spec.second(t)
    return -_cross(d1, d2) / np.abs(d1) ** 3


class _AngleMap:
    """Inverse of t -> arg P(t) for a boundary star-shaped about the origin."""

    def __init__(self, spec: DomainSpec, n: int = 2048):
        self.spec = spec
        t = _grid(n)
        p = spec.point(t)
        cross = _cross(p, spec.tangent(t))
        if np.any(cross <= 0):
            raise NotStarShaped("a ray from the origin crosses the boundary more than once")
        theta = np.unwrap(np.angle(p))
        self.t = np.append(t, TWO_PI)
        self.theta = np.append(theta, theta[0] + TWO_PI)

    def __call__(self, phi):
        phi = np.asarray(phi, dtype=float)
        th0 = self.theta[0]
        target = th0 + np.mod(phi - th0, TWO_PI)
        t = np.interp(target, self.theta, self.t)
        for _ in range(30):
            p = self.spec.point(t)
            d = self.spec.tangent(t)
            ang = np.angle(p)
            resid = np.mod(ang - target + math.pi, TWO_PI) - math.pi
            step = resid * np.abs(p) ** 2 / _cross(p, d)
            t = t - step
            if np.max(np.abs(step), initial=0.0) < 1e-15:
                break
        return t


def ensure_star_shaped(spec: DomainSpec, resolution: int = 2048) -> DomainSpec:
    """Raise NotStarShaped unless every ray from the origin meets the boundary once."""
    _AngleMap(spec, resolution)
    return spec


def boundary_param(spec: DomainSpec, phi):
    """Shape parameter of the boundary point seen from the origin at angle ``phi``."""
    scalar = np.ndim(phi) == 0
    t = _AngleMap(spec)(np.atleast_1d(phi))
    return float(t[0]) if scalar else t


def polar_radius(spec: DomainSpec, phi):
    """Distance from the origin to the boundary along direction ``phi``."""
    scalar = np.ndim(phi) == 0
    phis = np.atleast_1d(np.asarray(phi, dtype=float))
    sh = spec.shape
    if spec.offset == (0.0, 0.0):
        if isinstance(sh, Disk):
            r = np.full_like(phis, sh.radius)
        elif isinstance(sh, Ellipse):
            r = sh.a * sh.b / np.sqrt((sh.b * np.cos(phis)) ** 2 + (sh.a * np.sin(phis)) ** 2)
        else:
            r = sh.rho(phis)
    else:
        r = np.abs(spec.point(_AngleMap(spec)(phis)))
    return float(r[0]) if scalar else r


def polar_radius_deriv(spec: DomainSpec, phi):
    """(rho(phi), rho'(phi)) about the origin."""
    t = _AngleMap(spec)(np.atleast_1d(np.asarray(phi, dtype=float)))
    p = spec.point(t)
    d = spec.tangent(t)
    r = np.abs(p)
    return r, r * _dot(p, d) / _cross(p, d)


def signed_curvature(spec: DomainSpec, phi):
    """Curvature of the boundary point in direction ``phi`` from the origin."""
    scalar = np.ndim(phi) == 0
    k = curvature_at_param(spec, _AngleMap(spec)(np.atleast_1d(phi)))
    return float(k[0]) if scalar else k


# --------------------------------------------------------------------------
# extremal distances


def _refine_periodic(fun, t0: float, h: float, maximize: bool = False) -> tuple[float, float]:
    sgn = -1.0 if maximize else 1.0
    res = minimize_scalar(
        lambda s: sgn * float(fun(s)),
        bounds=(t0 - h, t0 + h),
        method="bounded",
        options={"xatol": 1e-13},
    )
    t = float(res.x)
    return t, float(fun(t))


def _local_extrema(v: np.ndarray, maximize: bool) -> np.ndarray:
    w = -v if maximize else v
    left = np.roll(w, 1)
    right = np.roll(w, -1)
    idx = np.nonzero((w <= left) & (w <= right))[0]
    if idx.size > 16:
        idx = idx[np.argsort(w[idx])[:16]]
    return idx


class BoundarySampler:
    """Dense boundary samples with Newton-refined distance extrema."""

    def __init__(self, spec: DomainSpec, resolution: int = DEFAULT_RESOLUTION, frame: str = "world"):
        self.spec = spec
        self.n = resolution
        self.t = _grid(resolution)
        base = spec.point(self.t) if frame == "world" else spec.shape.param(self.t)
        self.p = base
        self.shift = spec.center if frame == "world" else 0.0
        self.d1 = spec.tangent(self.t)
        self.d2 = spec.second(self.t)

    def _pt(self, t):
        return self.shift + self.spec.shape.param(t)

    def _extreme_dist(self, y: complex, maximize: bool) -> float:
        z = self.p - y
        g = np.abs(z) ** 2
        idx = _local_extrema(g, maximize)
        t = self.t[idx].copy()
        h = TWO_PI / self.n
        for _ in range(8):
            p, d1, d2 = self.spec.shape.jet(t)
            z = p + self.shift - y
            gp = 2.0 * _dot(z, d1)
            gpp = 2.0 * (np.abs(d1) ** 2 + _dot(z, d2))
            ok = (gpp > 0) if not maximize else (gpp < 0)
            step = np.where(ok, gp / np.where(gpp == 0, 1.0, gpp), 0.0)
            step = np.clip(step, -h, h)
            t = t - step
            if np.abs(step).max() < 1e-14:
                break
        vals = np.abs(self._pt(t) - y)
        sampled = np.sqrt(g[idx])
        vals = np.minimum(vals, sampled) if not maximize else np.maximum(vals, sampled)
        return float(vals.max() if maximize else vals.min())

    def min_dist(self, y: complex = 0.0) -> float:
        return self._extreme_dist(complex(y), maximize=False)

    def max_dist(self, y: complex = 0.0) -> float:
        return self._extreme_dist(complex(y), maximize=True)


def inradius(spec: DomainSpec, resolution: int = DEFAULT_RESOLUTION) -> tuple[float, complex]:
    """Radius and centre (in world coordinates) of the largest inscribed disk."""
    sampler = BoundarySampler(spec, min(resolution, 1024), frame="shape")
    shape = spec.shape

    def neg_depth(v):
        y = complex(v[0], v[1])
        if not shape.contains(y):
            return 1.0 + abs(y)
        return -sampler.min_dist(y)

    p = sampler.p
    d1 = sampler.d1
    w = _cross(p, d1)
    area2 = w.sum()
    centroid = complex((p * w).sum() / (1.5 * area2)) if area2 else 0.0
    if not shape.contains(centroid):
        centroid = 0.0
    depth0 = sampler.min_dist(centroid)
    starts = [centroid]
    for j in range(8):
        starts.append(centroid + 0.5 * depth0 * np.exp(1j * TWO_PI * j / 8))
    def simplex(c, size):
        return [[c.real, c.imag], [c.real + size, c.imag], [c.real, c.imag + size]]

    # coarse pass from every start, then one tight pass from the best
    coarse = [
        minimize(neg_depth, [s.real, s.imag], method="Nelder-Mead",
                 options={"xatol": 1e-4 * depth0, "fatol": 1e-8, "initial_simplex": simplex(s, 0.1 * depth0)})
        for s in starts
    ]
    seed = min(coarse, key=lambda r: r.fun)
    c = complex(seed.x[0], seed.x[1])
    best = minimize(neg_depth, [c.real, c.imag], method="Nelder-Mead",
                    options={"xatol": 1e-10, "fatol": 1e-15, "maxiter": 4000,
                             "initial_simplex": simplex(c, 1e-3 * depth0)})
    if seed.fun < best.fun:
        best = seed
    centre = complex(best.x[0], best.x[1])
    return -float(best.fun), centre + spec.center


# --------------------------------------------------------------------------
# report


@dataclass(frozen=True)
class GeometryReport:
    area: float
    perimeter: float
    r_i: float
    r_o: float
    kappa_star: float
    r_c: float
    rho_star: float
    inradius: float | None
    is_convex: bool
    is_nearly_circular: bool
    resolution: int
    incenter: complex | None = None

    def as_dict(self) -> dict:
        return {
            "area": self.area,
            "perimeter": self.perimeter,
            "r_i": self.r_i,
            "r_o": self.r_o,
            "r_c": self.r_c,
            "kappa_star": self.kappa_star,
            "rho_star": self.rho_star,
            "inradius": self.inradius,
            "is_convex": self.is_convex,
            "is_nearly_circular": self.is_nearly_circular,
        }


def area_perimeter(spec: DomainSpec, resolution: int = DEFAULT_RESOLUTION) -> tuple[float, float]:
    t = _grid(resolution)
    d = spec.shape.deriv(t)
    p = spec.shape.param(t)
    h = TWO_PI / resolution
    return 0.5 * float(_cross(p, d).sum()) * h, float(np.abs(d).sum()) * h


def curvature_extremum(spec: DomainSpec, resolution: int = DEFAULT_RESOLUTION) -> float:
    """kappa_star = sup |kappa| over the boundary."""
    t = _grid(resolution)
    k = np.abs(curvature_at_param(spec, t))
    h = TWO_PI / resolution
    best = 0.0
    for j in _local_extrema(k, maximize=True)[:4]:
        _, v = _refine_periodic(lambda s: abs(curvature_at_param(spec, s)), t[j], h, maximize=True)
        best = max(best, v, float(k[j]))
    return best


def origin_radii(spec: DomainSpec, resolution: int = DEFAULT_RESOLUTION) -> tuple[float, float]:
    """(r_i, r_o): min and max distance from the origin to the boundary."""
    s = BoundarySampler(spec, resolution)
    return s.min_dist(0.0), s.max_dist(0.0)


def rho_star(spec: DomainSpec, resolution: int = DEFAULT_RESOLUTION) -> float:
    """sup |rho'| / rho about the origin; raises if not star-shaped."""
    t = _grid(resolution)
    p = spec.point(t)
    d = spec.tangent(t)
    cross = _cross(p, d)
    if np.any(cross <= 0):
        raise NotStarShaped("domain is not star-shaped about the origin")

    def ratio(s):
        pp, dd = spec.point(s), spec.tangent(s)
        return np.abs(_dot(pp, dd)) / _cross(pp, dd)

    vals = ratio(t)
    h = TWO_PI / resolution
    best = float(vals.max())
    for j in _local_extrema(vals, maximize=True)[:4]:
        _, v = _refine_periodic(ratio, t[j], h, maximize=True)
        best = max(best, v)
    return best


def geometry_report(
    spec: DomainSpec,
    resolution: int = DEFAULT_RESOLUTION,
    with_inradius: bool = True,
) -> GeometryReport:
    if resolution < 64:
        raise ValueError("resolution must be at least 64")
    area, perim = area_perimeter(spec, resolution)
    r_i, r_o = origin_radii(spec, resolution)
    kstar = curvature_extremum(spec, resolution)
    rs = rho_star(spec, resolution)
    k = curvature_at_param(spec, _grid(resolution))
    convex = bool(np.all(k <= CONVEX_TOL))
    rin, centre = inradius(spec, resolution) if with_inradius else (None, None)
    return GeometryReport(
        area=area,
        perimeter=perim,
        r_i=r_i,
        r_o=r_o,
        kappa_star=kstar,
        r_c=1.0 / kstar,
        rho_star=rs,
        inradius=rin,
        is_convex=convex,
        is_nearly_circular=rs < 1.0,
        resolution=resolution,
        incenter=centre,
    )
