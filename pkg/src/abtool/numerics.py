"""Low-level numerics: special functions, root finding, quadrature,
finite differences and reproducible random streams.

Everything here is plain numpy and deterministic: same inputs, same bits.
Scalar arguments return scalars, array arguments return arrays.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np
from numpy.random import Generator, Philox


class NonConvergenceError(RuntimeError):
    """An iterative routine ran out of budget.

    Carries the best estimate and an error bound so callers can decide
    whether the partial result is still usable.
    """

    def __init__(self, message, best_estimate=None, error_bound=None):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.error_bound = error_bound


# ---------------------------------------------------------------------------
# Gamma function (Lanczos, g=7, n=9) -- seeds the Bessel/Laguerre series.
# ---------------------------------------------------------------------------

_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma(x):
    """Gamma(x) for real x (poles at non-positive integers raise)."""
    x = float(x)
    if x <= 0.0 and x == math.floor(x):
        raise ValueError(f"gamma pole at x={x}")
    if x == math.floor(x) and 1.0 <= x <= 21.0:
        return float(math.factorial(int(x) - 1))
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * gamma(1.0 - x))
    x -= 1.0
    acc = _LANCZOS_C[0]
    for i in range(1, 9):
        acc += _LANCZOS_C[i] / (x + i)
    t = x + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (x + 0.5) * math.exp(-t) * acc


def gammaln(x):
    """log Gamma(x), x > 0."""
    x = float(x)
    if x <= 0.0:
        raise ValueError("gammaln requires x > 0")
    if x < 0.5:
        return math.log(math.pi / math.sin(math.pi * x)) - gammaln(1.0 - x)
    xm = x - 1.0
    acc = _LANCZOS_C[0]
    for i in range(1, 9):
        acc += _LANCZOS_C[i] / (xm + i)
    t = xm + _LANCZOS_G + 0.5
    return 0.5 * math.log(2.0 * math.pi) + (xm + 0.5) * math.log(t) - t + math.log(acc)


# ---------------------------------------------------------------------------
# Bessel J of real non-negative order.
#
# Ascending series (coefficients cached per order, Horner evaluation) below
# the seam x = max(12, 2*order); Hankel large-argument expansion above it.
# The two branches are asserted to agree at the seam by the test suite.
# Supported window: 0 <= order <= 50, 0 <= x <= 1e4.  Accuracy degrades for
# large order near the turning point x ~ order (float64 cancellation); the
# states exercised by this package stay at order <= ~5 where both branches
# deliver ~1e-11 absolute or better.
# ---------------------------------------------------------------------------

_SERIES_TERMS = 120
_series_coeff_cache: dict[float, np.ndarray] = {}


def _series_coeffs(order):
    c = _series_coeff_cache.get(order)
    if c is None:
        c = np.empty(_SERIES_TERMS)
        c[0] = 1.0 / gamma(order + 1.0)
        for k in range(1, _SERIES_TERMS):
            c[k] = -c[k - 1] / (k * (order + k))
        _series_coeff_cache[order] = c
    return c


def _bessel_series(order, x):
    """Ascending series; x is a 1-d array with 0 <= x <= seam."""
    half = 0.5 * x
    y = half * half
    c = _series_coeffs(order)
    ymax = float(y.max()) if y.size else 0.0
    # Smallest truncation where the remaining terms are below 1e-18 in the
    # partial-sum scale; the series alternates so the bound is the next term.
    nterms = 8
    t = abs(c[nterms]) * ymax ** nterms if ymax > 0 else 0.0
    while nterms < _SERIES_TERMS - 1 and t > 1e-20:
        nterms += 1
        t *= ymax / (nterms * (order + nterms))
    s = np.full_like(x, c[nterms])
    for k in range(nterms - 1, -1, -1):
        s = s * y + c[k]
    if order == 0.0:
        return s
    return s * half ** order


def _bessel_hankel(order, x):
    """Large-argument (Hankel) expansion; x is a 1-d array, x >= seam."""
    mu = 4.0 * order * order
    p = np.ones_like(x)
    q = np.zeros_like(x)
    term = np.ones_like(x)
    for k in range(40):
        fac = (mu - (2 * k + 1) ** 2) / (8.0 * (k + 1) * x)
        new = term * fac
        if k > 2 and np.all(np.abs(new) >= np.abs(term)):
            break  # asymptotic series started diverging; stop at best term
        if k % 2 == 0:
            q += new * (-1.0) ** (k // 2)
        else:
            p += new * (-1.0) ** ((k + 1) // 2)
        term = new
        if np.all(np.abs(new) <= 1e-18):
            break
    chi = x - (0.5 * order + 0.25) * np.pi
    return np.sqrt(2.0 / (np.pi * x)) * (p * np.cos(chi) - q * np.sin(chi))


def bessel_j(order, x):
    """Bessel function of the first kind, real order >= 0, x >= 0."""
    if order < 0.0:
        raise ValueError(f"bessel_j: order must be >= 0, got {order}")
    xa = np.asarray(x, dtype=float)
    scalar = xa.ndim == 0
    xv = np.atleast_1d(xa).ravel()
    if np.any(xv < 0.0):
        raise ValueError("bessel_j: x must be >= 0")
    order = float(order)
    seam = max(12.0, 2.0 * order)
    if xv.max(initial=0.0) <= seam:          # hot path: pure series window
        out = _bessel_series(order, xv)
        return float(out[0]) if scalar else out.reshape(xa.shape)
    out = np.empty_like(xv)
    lo = xv <= seam
    if lo.any():
        out[lo] = _bessel_series(order, xv[lo])
    hi = ~lo
    if hi.any():
        out[hi] = _bessel_hankel(order, xv[hi])
    return float(out[0]) if scalar else out.reshape(xa.shape)


def bessel_j_pair(order, x):
    """(J_order(x), J_{order+1}(x)) sharing the series bookkeeping.

    Series-window arguments only (x <= max(12, 2 order)); used by hot loops
    that need a value/derivative pair via J' = (v/x) J - J_{v+1}.
    """
    xv = np.asarray(x, dtype=float)
    seam = max(12.0, 2.0 * order)
    if xv.max(initial=0.0) > seam:
        return bessel_j(order, xv), bessel_j(order + 1.0, xv)
    half = 0.5 * xv
    y = half * half
    c0 = _series_coeffs(order)
    c1 = _series_coeffs(order + 1.0)
    ymax = float(y.max()) if y.size else 0.0
    nterms = 8
    t = abs(c0[nterms]) * ymax ** nterms if ymax > 0 else 0.0
    while nterms < _SERIES_TERMS - 1 and t > 1e-20:
        nterms += 1
        t *= ymax / (nterms * (order + nterms))
    s0 = np.full_like(xv, c0[nterms])
    s1 = np.full_like(xv, c1[nterms])
    for k in range(nterms - 1, -1, -1):
        s0 = s0 * y + c0[k]
        s1 = s1 * y + c1[k]
    pref = half ** order if order != 0.0 else 1.0
    return s0 * pref, s1 * pref * half


def bessel_j_prime(order, x):
    """d/dx J_order(x) via J'_0 = -J_1 and J'_v = J_{v-1} - (v/x) J_v."""
    if order == 0.0:
        return -bessel_j(1.0, x)
    xa = np.asarray(x, dtype=float)
    j = bessel_j(order, xa)
    jm = bessel_j(order - 1.0, xa) if order >= 1.0 else _bessel_jm(order, xa)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = jm - (order / xa) * j
    return out


def _bessel_jm(order, x):
    """J_{order-1} for 0 < order < 1 (negative order via the two-term formula).

    J_{-v}(x) = J_v(x) cos(v pi) - Y_v(x) sin(v pi) would need Y; instead use
    the recurrence J_{v-1} = (2v/x) J_v - J_{v+1}, valid for all real v.
    """
    xa = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        return (2.0 * order / xa) * bessel_j(order, xa) - bessel_j(order + 1.0, xa)


_zero_cache: dict[float, list[float]] = {}


def bessel_j_zero(order, n):
    """n-th positive zero of J_order (n >= 1), by pi/4 scan plus bisection."""
    if order < 0.0:
        raise ValueError("bessel_j_zero: order must be >= 0")
    if n < 1:
        raise ValueError("bessel_j_zero: n must be >= 1")
    order = float(order)
    zeros = _zero_cache.setdefault(order, [])
    if len(zeros) >= n:
        return zeros[n - 1]
    found = []
    # the first positive zero exceeds the order, so start the scan just above it
    x0 = order + 1e-9
    f0 = bessel_j(order, x0)
    scans = 0
    while len(found) < n:
        x1 = x0 + np.pi / 4.0
        f1 = bessel_j(order, x1)
        scans += 1
        if scans > 4000:
            raise NonConvergenceError(
                f"bessel_j_zero: no bracket for order={order}, n={n}")
        if f0 * f1 < 0.0 or f1 == 0.0:
            found.append(_bisect(lambda t: bessel_j(order, t), x0, x1))
        x0, f0 = x1, f1
    _zero_cache[order] = found
    return found[n - 1]


def _bisect(f, a, b, xtol=1e-13, max_iter=200):
    fa = f(a)
    fb = f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if fa * fb > 0.0:
        raise ValueError("bisect: endpoints do not bracket a root")
    for _ in range(max_iter):
        m = 0.5 * (a + b)
        if (b - a) <= xtol:
            return m
        fm = f(m)
        if fm == 0.0:
            return m
        if fa * fm < 0.0:
            b, fb = m, fm
        else:
            a, fa = m, fm
    raise NonConvergenceError("bisect: max iterations", best_estimate=0.5 * (a + b),
                              error_bound=0.5 * (b - a))


# ---------------------------------------------------------------------------
# Airy Ai: Maclaurin series for |x| <= 7.5, asymptotic expansions beyond.
# ---------------------------------------------------------------------------

AIRY_AI_0 = 0.3550280538878172392600632  # 3^(-2/3) / Gamma(2/3)
AIRY_AI_PRIME_0 = -0.2588194037928067984051836  # -3^(-1/3) / Gamma(1/3)

_AIRY_SEAM = 7.5


def _airy_u_coeffs(nterms=26):
    u = np.empty(nterms)
    u[0] = 1.0
    for k in range(1, nterms):
        u[k] = u[k - 1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / (216.0 * k * (2 * k - 1))
    return u


_AIRY_U = _airy_u_coeffs()


def _airy_series(x):
    x3 = x ** 3
    f = np.ones_like(x)
    g = x.copy()
    cf = np.ones_like(x)
    cg = x.copy()
    for k in range(140):
        cf = cf * x3 / ((3 * k + 2.0) * (3 * k + 3.0))
        cg = cg * x3 / ((3 * k + 3.0) * (3 * k + 4.0))
        f += cf
        g += cg
        if np.all(np.abs(cf) + np.abs(cg) < 1e-18 * (np.abs(f) + np.abs(g) + 1.0)):
            break
    return AIRY_AI_0 * f + AIRY_AI_PRIME_0 * g


def _airy_asym_right(x):
    if x.size == 0:
        return x.copy()
    zeta = (2.0 / 3.0) * x ** 1.5
    s = np.ones_like(x)
    term = np.ones_like(x)
    for k in range(1, len(_AIRY_U)):
        new = (-1.0) ** k * _AIRY_U[k] / zeta ** k
        if k > 2 and np.all(np.abs(new) >= np.abs(term)):
            break
        s += new
        term = new
    return np.exp(-zeta) / (2.0 * np.sqrt(np.pi) * x ** 0.25) * s


def _airy_asym_left(x):
    t = -x
    if t.size == 0:
        return t.copy()
    zeta = (2.0 / 3.0) * t ** 1.5
    p = np.ones_like(t)
    q = np.zeros_like(t)
    prev = np.inf
    for k in range(1, len(_AIRY_U)):
        c = _AIRY_U[k] / zeta ** k
        worst = float(np.abs(c).max())
        if k > 2 and worst > prev:
            break
        prev = worst
        if k % 2 == 0:
            p += c * (-1.0) ** (k // 2)
        else:
            q += c * (-1.0) ** ((k - 1) // 2)
    arg = zeta + 0.25 * np.pi
    return (np.sin(arg) * p - np.cos(arg) * q) / (np.sqrt(np.pi) * t ** 0.25)


def airy_ai(x):
    """Airy function Ai(x) on roughly [-40, 40]."""
    xa = np.asarray(x, dtype=float)
    scalar = xa.ndim == 0
    xv = np.atleast_1d(xa).astype(float)
    out = np.empty_like(xv)
    mid = np.abs(xv) <= _AIRY_SEAM
    out[mid] = _airy_series(xv[mid])
    hi = xv > _AIRY_SEAM
    out[hi] = _airy_asym_right(xv[hi])
    lo = xv < -_AIRY_SEAM
    out[lo] = _airy_asym_left(xv[lo])
    return float(out[0]) if scalar else out.reshape(xa.shape)


_airy_zero_cache: dict[int, float] = {}


def airy_ai_zero(n):
    """n-th negative zero z_n of Ai (z_1 ~ -2.338), n >= 1."""
    if n < 1:
        raise ValueError("airy_ai_zero: n must be >= 1")
    z = _airy_zero_cache.get(n)
    if z is not None:
        return z
    guess = -((3.0 * np.pi * (4 * n - 1) / 8.0) ** (2.0 / 3.0))
    width = 0.35 if n < 3 else 0.2
    a, b = guess - width, guess + width
    fa, fb = airy_ai(a), airy_ai(b)
    grow = 0
    while fa * fb > 0.0:
        grow += 1
        if grow > 8:
            raise NonConvergenceError(f"airy_ai_zero: no bracket near n={n}")
        a -= width
        b += width
        fa, fb = airy_ai(a), airy_ai(b)
    z = _bisect(airy_ai, a, b)
    _airy_zero_cache[n] = z
    return z


# ---------------------------------------------------------------------------
# Associated Laguerre and Legendre polynomials (three-term recurrences).
# ---------------------------------------------------------------------------

def assoc_laguerre(p, q, x):
    """Generalized Laguerre L_p^{(q)}(x), integer p >= 0, real q."""
    if p < 0 or p != int(p):
        raise ValueError("assoc_laguerre: p must be a non-negative integer")
    p = int(p)
    x = np.asarray(x, dtype=float)
    l0 = np.ones_like(x)
    if p == 0:
        return float(l0) if l0.ndim == 0 else l0
    l1 = 1.0 + q - x
    for k in range(1, p):
        l0, l1 = l1, ((2 * k + 1 + q - x) * l1 - (k + q) * l0) / (k + 1.0)
    return float(l1) if np.ndim(l1) == 0 else l1


def assoc_legendre(l, m, x):
    """Associated Legendre P_l^m(x) with Condon-Shortley phase, 0 <= m <= l."""
    if not (0 <= m <= l):
        raise ValueError("assoc_legendre requires 0 <= m <= l")
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0):
        raise ValueError("assoc_legendre: |x| must be <= 1")
    # P_m^m = (-1)^m (2m-1)!! (1-x^2)^{m/2}
    pmm = np.ones_like(x)
    if m > 0:
        somx2 = np.sqrt((1.0 - x) * (1.0 + x))
        fact = 1.0
        for _ in range(m):
            pmm = -pmm * fact * somx2
            fact += 2.0
    if l == m:
        return float(pmm) if pmm.ndim == 0 else pmm
    pmmp1 = x * (2.0 * m + 1.0) * pmm
    if l == m + 1:
        return float(pmmp1) if np.ndim(pmmp1) == 0 else pmmp1
    for ll in range(m + 2, l + 1):
        pmm, pmmp1 = pmmp1, ((2.0 * ll - 1.0) * x * pmmp1 - (ll + m - 1.0) * pmm) / (ll - m)
    return float(pmmp1) if np.ndim(pmmp1) == 0 else pmmp1


def assoc_legendre_deriv(l, m, x):
    """d/dx P_l^m(x) away from x = +-1, via the standard l-step identity."""
    x = np.asarray(x, dtype=float)
    plm = assoc_legendre(l, m, x)
    if l == 0:
        return np.zeros_like(x) if x.ndim else 0.0
    plm1 = assoc_legendre(l - 1, m, x) if m <= l - 1 else 0.0
    return (l * x * plm - (l + m) * plm1) / (x * x - 1.0)


# ---------------------------------------------------------------------------
# Adaptive quadrature: Gauss(7)/Kronrod(15) pairs refined worst-first until a
# global tolerance is met (QUADPACK-style heap strategy).
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_depth: int = 48

    def __post_init__(self):
        if self.rel_tol <= 0.0:
            raise ValueError("rel_tol must be > 0")
        if self.abs_tol < 0.0:
            raise ValueError("abs_tol must be >= 0")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")


_XGK = np.array([
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898,
])
_WGK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
])
_WG7 = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469,
])

_GK_NODES = np.concatenate([-_XGK, [0.0], _XGK[::-1]])           # 15 ascending
_GK_WK = np.concatenate([_WGK[:-1], [_WGK[-1]], _WGK[-2::-1]])
_GK_WG = np.zeros(15)
_GK_WG[1::2] = np.concatenate([_WG7[:-1], [_WG7[-1]], _WG7[-2::-1]])

_MAX_INTERVALS = 20000


def _gk15(f, a, b):
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    fv = np.asarray(f(c + h * _GK_NODES), dtype=float)
    if fv.shape != (15,):
        raise ValueError("quadrature integrand must map a node array to an array")
    kron = h * float(_GK_WK @ fv)
    gauss = h * float(_GK_WG @ fv)
    return kron, abs(kron - gauss)


def integrate_1d(f, lo, hi, spec=QuadratureSpec()):
    """Integral of f over [lo, hi].

    The integrand is called with node arrays (shape (15,)) and must return an
    array of the same shape; endpoint values are never requested, so
    integrable endpoint behaviour is tolerated.
    """
    if hi == lo:
        return 0.0
    val, err = _gk15(f, lo, hi)
    heap = [(-err, lo, hi, val, err, 0)]
    total, toterr = val, err
    count = 1
    while True:
        tol = max(spec.abs_tol, spec.rel_tol * abs(total))
        if toterr <= tol:
            return total
        neg, a, b, v, e, depth = heapq.heappop(heap)
        if depth >= spec.max_depth or count >= _MAX_INTERVALS:
            raise NonConvergenceError(
                f"integrate_1d: tolerance not met (estimate {total!r}, "
                f"error bound {toterr:.3e})",
                best_estimate=total, error_bound=toterr)
        m = 0.5 * (a + b)
        v1, e1 = _gk15(f, a, m)
        v2, e2 = _gk15(f, m, b)
        total += v1 + v2 - v
        toterr += e1 + e2 - e
        heapq.heappush(heap, (-e1, a, m, v1, e1, depth + 1))
        heapq.heappush(heap, (-e2, m, b, v2, e2, depth + 1))
        count += 1


def integrate_annulus(f, cfg, spec=QuadratureSpec()):
    """Integral of f(r, theta) over the annulus [cfg.a, cfg.b] x [0, 2pi)
    with the polar measure r dr dtheta.

    f is called with broadcastable arrays and must evaluate elementwise.
    """
    two_pi = 2.0 * np.pi

    def radial(rv):
        out = np.empty_like(rv)
        for i, r in enumerate(rv):
            inner = integrate_1d(lambda th: np.asarray(f(np.full_like(th, r), th), dtype=float),
                                 0.0, two_pi, spec)
            out[i] = inner * r
        return out

    return integrate_1d(radial, cfg.a, cfg.b, spec)


# ---------------------------------------------------------------------------
# Central differences with one Richardson extrapolation step (O(h^4)).
# ---------------------------------------------------------------------------

def central_diff(f, x, h):
    """First derivative of scalar f at x; samples x+-h and x+-2h."""
    if h <= 0.0:
        raise ValueError("h must be > 0")
    d_h = (f(x + h) - f(x - h)) / (2.0 * h)
    d_2h = (f(x + 2.0 * h) - f(x - 2.0 * h)) / (4.0 * h)
    return (4.0 * d_h - d_2h) / 3.0


def central_diff_2nd(f, x, h):
    """Second derivative of scalar f at x; samples x, x+-h and x+-2h."""
    if h <= 0.0:
        raise ValueError("h must be > 0")
    f0 = f(x)
    s_h = (f(x + h) - 2.0 * f0 + f(x - h)) / (h * h)
    s_2h = (f(x + 2.0 * h) - 2.0 * f0 + f(x - 2.0 * h)) / (4.0 * h * h)
    return (4.0 * s_h - s_2h) / 3.0


def gradient_fd(f, p, h=1e-5):
    """Gradient of scalar f at point p (1-d array), one axis at a time."""
    p = np.asarray(p, dtype=float)
    out = np.empty(p.shape[-1], dtype=complex)
    for i in range(p.shape[-1]):
        def fi(t, i=i):
            q = p.copy()
            q[i] = t
            return f(q)
        out[i] = central_diff(fi, p[i], h)
    if np.all(out.imag == 0.0):
        return out.real
    return out


# ---------------------------------------------------------------------------
# Reproducible random streams: counter-based Philox keyed by (seed, stream_id)
# supplies uniforms; normals come from a Box-Muller transform on top, so the
# variate construction is fixed by this module, not by numpy internals.
# ---------------------------------------------------------------------------

class RandomStream:
    """Deterministic stream of variates identified by (seed, stream_id).

    Streams with the same key always reproduce the same sequence; distinct
    stream_ids are statistically independent.  Each worker should own its
    own instance (value semantics, nothing shared).
    """

    def __init__(self, seed, stream_id=0):
        self.seed = int(seed)
        self.stream_id = int(stream_id)
        self.counter = 0
        self._gen = Generator(Philox(key=[self.seed & (2**64 - 1),
                                          self.stream_id & (2**64 - 1)]))
        self._spare = None

    def normals(self, count):
        """`count` standard normal variates (Box-Muller over Philox uniforms)."""
        if count < 1:
            raise ValueError("count must be >= 1")
        out = np.empty(count)
        k = 0
        if self._spare is not None:
            out[0] = self._spare
            self._spare = None
            k = 1
        need = count - k
        if need > 0:
            pairs = (need + 1) // 2
            # consecutive uniforms form one pair, so the emitted sequence
            # does not depend on how draws are batched across calls
            u = self._gen.random(2 * pairs)
            u1 = 1.0 - u[0::2]                   # (0, 1]; log never sees zero
            u2 = u[1::2]
            radius = np.sqrt(-2.0 * np.log(u1))
            z0 = radius * np.cos(2.0 * np.pi * u2)
            z1 = radius * np.sin(2.0 * np.pi * u2)
            z = np.empty(2 * pairs)
            z[0::2] = z0
            z[1::2] = z1
            out[k:] = z[:need]
            if 2 * pairs > need:
                self._spare = float(z[need])
        self.counter += count
        return out

    def uniforms(self, count):
        """`count` uniforms on [0, 1)."""
        if count < 1:
            raise ValueError("count must be >= 1")
        self.counter += count
        return self._gen.random(count)


def normal_variates(stream, count):
    return stream.normals(count)


# ---------------------------------------------------------------------------
# Regularized incomplete gamma (for chi-square tail probabilities).
# ---------------------------------------------------------------------------

def gammainc_upper(a, x):
    """Regularized upper incomplete gamma Q(a, x), a > 0, x >= 0."""
    if a <= 0.0:
        raise ValueError("a must be > 0")
    if x < 0.0:
        raise ValueError("x must be >= 0")
    if x == 0.0:
        return 1.0
    if x < a + 1.0:
        # series for P(a, x), then Q = 1 - P
        ap = a
        s = 1.0 / a
        term = s
        for _ in range(500):
            ap += 1.0
            term *= x / ap
            s += term
            if abs(term) < abs(s) * 1e-16:
                break
        p = s * math.exp(-x + a * math.log(x) - gammaln(a))
        return 1.0 - p
    # Lentz continued fraction for Q(a, x)
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 500):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return h * math.exp(-x + a * math.log(x) - gammaln(a))


def chi2_sf(x, dof):
    """Survival function of the chi-square distribution."""
    return gammainc_upper(0.5 * dof, 0.5 * x)
