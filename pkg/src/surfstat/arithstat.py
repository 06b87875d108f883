"""Moments, Catalan-weighted targets, candidate limiting densities and histograms.

Two candidate densities on length-4 intervals are mirror images of each other:

    model_a(t) = sqrt((3-t)/(1+t)) / (2 pi)   on (-1, 3)
    model_b(t) = sqrt((3+t)/(1-t)) / (2 pi)   on (-3, 1)

Which one the normalized values A_p(l)/p follow is measured, not assumed.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np
from scipy import integrate

from .curves import clausen_trace_table, surface_A_table
from .ff_core import PrimeFieldContext

MODELS = ("a", "b")


def catalan(i: int) -> int:
    return math.comb(2 * i, i) // (i + 1)


def catalan_moment_coef(m: int) -> int:
    """sum_i (-1)^i C(m, i) Catalan(i)."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return sum((-1) ** i * math.comb(m, i) * catalan(i) for i in range(m + 1))


def frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


@dataclass
class MomentReport:
    p: int
    m_max: int
    raw: list[int]
    normalized: list[Fraction]
    targets: list[int]
    gaps: list[Fraction]
    source: str = "A_p"
    method: str = "fast"
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        rows = []
        for m in range(1, self.m_max + 1):
            i = m - 1
            rows.append(
                {
                    "m": m,
                    "raw": str(self.raw[i]),
                    "normalized": float(self.normalized[i]),
                    "normalized_exact": frac_str(self.normalized[i]),
                    "target": self.targets[i],
                    "gap": float(self.gaps[i]),
                }
            )
        return {"p": self.p, "m_max": self.m_max, "source": self.source, "method": self.method, "moments": rows, **self.extra}


def power_sums(values, m_max: int) -> list[int]:
    """Exact sum v^m for m = 1..m_max using Python integers."""
    counts = Counter(int(v) for v in values)
    return [sum(c * v**m for v, c in counts.items()) for m in range(1, m_max + 1)]


def _report(p: int, raw: list[int], targets: list[int], **kw) -> MomentReport:
    m_max = len(raw)
    norm = [Fraction(raw[m - 1], p ** (m + 1)) for m in range(1, m_max + 1)]
    gaps = [norm[i] - targets[i] for i in range(m_max)]
    return MomentReport(p, m_max, raw, norm, targets, gaps, **kw)


def a_values(ctx: PrimeFieldContext, workers: int = 1) -> np.ndarray:
    return surface_A_table(ctx, workers)[1:]


def empirical_moments(ctx: PrimeFieldContext, m_max: int = 4, workers: int = 1, table=None) -> MomentReport:
    if not 1 <= m_max <= 8:
        raise ValueError("m_max must be in 1..8")
    vals = a_values(ctx, workers) if table is None else table
    raw = power_sums(vals, m_max)
    return _report(ctx.p, raw, [catalan_moment_coef(m) for m in range(1, m_max + 1)])


def gn_values(ctx: PrimeFieldContext, which: str, method: str = "auto", N: int = 3, workers: int = 1) -> tuple[dict[int, int], str]:
    """Decoded integer values over lam != 1.

    9g9: 9G9(lam).  3g3: -Gamma_p(1/3)^3 p 3G3(lam), the normalization under
    which the values are integers.  method 'direct' evaluates the p-adic sums,
    'link' reads them off the A_p table through value(lam) = -A_p(1-lam).
    """
    from .gn_hyper import decoded_g3_scaled, decoded_g9

    p = ctx.p
    need = {"3g3": 1, "9g9": 2}.get(which)
    if need is None:
        raise ValueError(f"unknown family {which!r}")
    if p % 3 != need:
        raise ValueError(f"{which} needs p = {need} mod 3, got p={p}")
    if method == "auto":
        method = "direct" if p**N <= 2 * 10**7 else "link"
    out: dict[int, int] = {0: 0}
    if method == "direct":
        f = decoded_g9 if which == "9g9" else decoded_g3_scaled
        for lam in range(2, p):
            out[lam] = f(ctx, lam, N)
    elif method == "link":
        A = surface_A_table(ctx, workers)
        for lam in range(2, p):
            out[lam] = -int(A[(1 - lam) % p])
    else:
        raise ValueError(f"unknown method {method!r}")
    return out, method


def gn_moment_check(ctx: PrimeFieldContext, which: str, m_max: int = 4, method: str = "auto", N: int = 3, workers: int = 1) -> MomentReport:
    """Power sums of the decoded values over lam != 1 against (-1)^m coef(m) p^(m+1).

    Also records the exact relation sum_{lam != 0,1} value^m = (-1)^m sum_{lam != 0,1} A_p^m.
    """
    p = ctx.p
    vals, used = gn_values(ctx, which, method, N, workers)
    raw = power_sums(vals.values(), m_max)
    A = surface_A_table(ctx, workers)
    a_raw = power_sums([int(A[l]) for l in range(2, p)], m_max)
    link_ok = all(raw[m - 1] == (-1) ** m * a_raw[m - 1] for m in range(1, m_max + 1))
    targets = [(-1) ** m * catalan_moment_coef(m) for m in range(1, m_max + 1)]
    return _report(p, raw, targets, source=which, method=used, extra={"link_exact": link_ok})


# densities


def density(model: str, t: float) -> float:
    if model == "a":
        return math.sqrt((3 - t) / (1 + t)) / (2 * math.pi) if -1 < t < 3 else 0.0
    if model == "b":
        return math.sqrt((3 + t) / (1 - t)) / (2 * math.pi) if -3 < t < 1 else 0.0
    raise ValueError(f"unknown model {model!r}")


def _cdf_a(t: float) -> float:
    if t <= -1:
        return 0.0
    if t >= 3:
        return 1.0
    # (x+1)^(-1/2) sqrt(3-x)/(2 pi) on [-1, t], singular weight handled by QUADPACK
    val, _ = integrate.quad(lambda x: math.sqrt(3 - x) / (2 * math.pi), -1, t, weight="alg", wvar=(-0.5, 0.0), epsabs=1e-11, epsrel=1e-11)
    return min(1.0, max(0.0, val))


def model_cdf(model: str, t: float) -> float:
    if model == "a":
        return _cdf_a(t)
    if model == "b":
        return 1.0 - _cdf_a(-t)
    raise ValueError(f"unknown model {model!r}")


def model_cdf_closed(model: str, t: float) -> float:
    """Closed form from t = 1 + 2 cos(theta): weight (1 - cos theta)/pi."""
    if model == "b":
        return 1.0 - model_cdf_closed("a", -t)
    if t <= -1:
        return 0.0
    if t >= 3:
        return 1.0
    th = math.acos((t - 1) / 2)
    return (math.pi - th + math.sin(th)) / math.pi


def model_integral(model: str, lo: float = -3.0, hi: float = 3.0) -> float:
    return model_cdf(model, hi) - model_cdf(model, lo)


def model_moment(model: str, m: int) -> float:
    """int t^m density(t) dt by quadrature."""
    if model == "a":
        f = lambda x: x**m * math.sqrt(3 - x) / (2 * math.pi)
        val, _ = integrate.quad(f, -1, 3, weight="alg", wvar=(-0.5, 0.0), epsabs=1e-12)
        return val
    if model == "b":
        return (-1) ** m * model_moment("a", m)
    raise ValueError(f"unknown model {model!r}")


def ks_distance(values, model: str) -> float:
    """sup |F_emp - F_model| for a finite sample, checked on both sides of each jump."""
    x = np.sort(np.asarray(values, dtype=float))
    n = len(x)
    if n == 0:
        raise ValueError("empty sample")
    uniq, first = np.unique(x, return_index=True)
    last = np.append(first[1:], n)
    cdf = np.array([model_cdf(model, float(u)) for u in uniq])
    above = last / n - cdf
    below = cdf - first / n
    return float(max(above.max(), below.max()))


@dataclass
class HistogramReport:
    p: int
    bins: list[tuple[float, float, int]]
    empirical_density: list[float]
    model_a: list[float]
    model_b: list[float]
    ks_a: float
    ks_b: float
    n: int

    @property
    def winner(self) -> str:
        return "a" if self.ks_a < self.ks_b else "b"

    def csv_rows(self) -> list[list]:
        return [
            [l, r, c, d, ma, mb]
            for (l, r, c), d, ma, mb in zip(self.bins, self.empirical_density, self.model_a, self.model_b)
        ]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["bins"] = [{"bin_left": l, "bin_right": r, "count": c} for l, r, c in self.bins]
        d["winner"] = self.winner
        return d


HIST_COLUMNS = ["bin_left", "bin_right", "count", "empirical_density", "model_a", "model_b"]


def histogram_counts(A: np.ndarray, p: int, bins: int) -> list[int]:
    """Exact binning of A/p into `bins` equal cells on [-3, 3]; the last cell is closed."""
    idx = ((np.asarray(A, dtype=np.int64) + 3 * p) * bins) // (6 * p)
    idx = np.clip(idx, 0, bins - 1)
    return np.bincount(idx, minlength=bins).astype(int).tolist()


def distribution_report(ctx: PrimeFieldContext, bins: int = 60, workers: int = 1, table=None) -> HistogramReport:
    if bins < 10:
        raise ValueError("need at least 10 bins")
    p = ctx.p
    A = a_values(ctx, workers) if table is None else np.asarray(table)
    if np.any(np.abs(A) > 3 * p):
        raise ArithmeticError("A_p value outside [-3p, 3p]")
    n = len(A)
    counts = histogram_counts(A, p, bins)
    width = 6.0 / bins
    edges = [-3.0 + k * width for k in range(bins + 1)]
    edges[-1] = 3.0
    emp = [c / (n * width) for c in counts]
    cell = {m: [model_cdf(m, edges[k + 1]) - model_cdf(m, edges[k]) for k in range(bins)] for m in MODELS}
    vals = A / p
    return HistogramReport(
        p=p,
        bins=[(edges[k], edges[k + 1], counts[k]) for k in range(bins)],
        empirical_density=emp,
        model_a=[c / width for c in cell["a"]],
        model_b=[c / width for c in cell["b"]],
        ks_a=ks_distance(vals, "a"),
        ks_b=ks_distance(vals, "b"),
        n=n,
    )


def clausen_even_moments(ctx: PrimeFieldContext, j_max: int = 3, workers: int = 1) -> list[tuple[int, Fraction, int]]:
    """sum_{l != 0, l^2 != -1} a_Cl(l^2)^(2j) / p^(j+1), with the Catalan number it should approach."""
    p = ctx.p
    acl = clausen_trace_table(ctx, workers)
    lam = np.arange(1, p, dtype=np.int64)
    sq = lam * lam % p
    sq = sq[sq != p - 1]
    counts = Counter(int(acl[s]) for s in sq)
    out = []
    for j in range(1, j_max + 1):
        total = sum(c * a ** (2 * j) for a, c in counts.items())
        out.append((j, Fraction(total, p ** (j + 1)), catalan(j)))
    return out


def window_medians(seq: list[float], width: int) -> list[float]:
    return [float(np.median(seq[i : i + width])) for i in range(0, len(seq) - width + 1)]
