"""Distribution fitting and shared regression utilities.

Two one-parameter families over the N+1 occupation splits of N identical
instances between two states:

* MB: distinguishable instances; binomial over configurations,
  ``pmf(n) = C(N, n) * p1**n * (1 - p1)**(N - n)``.
* BE: indistinguishable instances; pmf linear in the occupation number,
  ``pmf(n) = (n * p1 + (N - n) * (1 - p1)) / (N * (N + 1) / 2)``.

Fits minimize the residual sum of squares over p1 in [0, 1] with a
deterministic golden-section search (16-start for the MB family, whose
RSS need not be unimodal).  Model comparison uses the Gaussian
least-squares BIC ``nobs * ln(RSS / nobs) + k * ln(nobs)`` with k = 1 and
nobs = N + 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from scipy.stats import t as _student_t

from .data import CountDataset
from .errors import DataValidationError, InsufficientDataError

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0  # 1/phi
_INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0  # 1/phi^2

# guard: exact fits give RSS = 0; floor keeps ln finite and JSON-safe
_RSS_FLOOR = 1e-300

FAMILIES = ("MB", "BE")


def golden_section_minimize(
    f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-9
) -> float:
    """Argmin of a unimodal f on [lo, hi] to within a bracket of size tol."""
    if hi < lo:
        lo, hi = hi, lo
    h = hi - lo
    if h <= tol:
        return (lo + hi) / 2.0
    steps = int(math.ceil(math.log(tol / h) / math.log(_INV_PHI)))
    c = lo + _INV_PHI2 * h
    d = lo + _INV_PHI * h
    fc, fd = f(c), f(d)
    for _ in range(steps):
        if fc < fd:
            hi, d, fd = d, c, fc
            h *= _INV_PHI
            c = lo + _INV_PHI2 * h
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            h *= _INV_PHI
            d = lo + _INV_PHI * h
            fd = f(d)
    return (lo + hi) / 2.0


@dataclass(frozen=True)
class DistParams:
    """One fitted family: MB or BE, success weight p1, N instances."""

    family: str
    p1: float
    n_total: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DataValidationError(f"unknown family {self.family!r} (expected MB or BE)")
        if not isinstance(self.n_total, int) or isinstance(self.n_total, bool) or self.n_total < 1:
            raise DataValidationError(f"N must be an integer >= 1, got {self.n_total!r}")
        p1 = float(self.p1)
        if not math.isfinite(p1) or not 0.0 <= p1 <= 1.0:
            raise DataValidationError(f"p1={self.p1!r} outside [0, 1]")
        object.__setattr__(self, "p1", p1)


def _check_n(params: DistParams, n: int) -> None:
    if not 0 <= n <= params.n_total:
        raise ValueError(f"n={n} out of range [0, {params.n_total}]")


def mb_pmf(params: DistParams, n: int) -> float:
    """Binomial configuration probability C(N,n) p1^n (1-p1)^(N-n)."""
    if params.family != "MB":
        raise ValueError(f"mb_pmf needs family MB, got {params.family}")
    _check_n(params, n)
    big_n = params.n_total
    return math.comb(big_n, n) * params.p1**n * (1.0 - params.p1) ** (big_n - n)


def be_pmf(params: DistParams, n: int) -> float:
    """Occupation-split probability (n p1 + (N-n)(1-p1)) / (N(N+1)/2)."""
    if params.family != "BE":
        raise ValueError(f"be_pmf needs family BE, got {params.family}")
    _check_n(params, n)
    big_n = params.n_total
    return (n * params.p1 + (big_n - n) * (1.0 - params.p1)) / (big_n * (big_n + 1) / 2)


def pmf_vector(params: DistParams) -> tuple[float, ...]:
    fn = mb_pmf if params.family == "MB" else be_pmf
    return tuple(fn(params, n) for n in range(params.n_total + 1))


@dataclass(frozen=True)
class DistFit:
    """A fitted family with its goodness-of-fit summary.

    ``r2`` is None when TSS = 0 (constant observations) and the fit is not
    exact; the undefined flag propagates to reports as n/a.
    """

    params: DistParams
    rss: float
    r2: float | None
    bic: float
    dataset: str | None = None

    def __post_init__(self):
        if self.rss < 0.0:
            raise DataValidationError(f"rss={self.rss!r} negative")
        if self.r2 is not None and self.r2 > 1.0 + 1e-12:
            raise DataValidationError(f"r2={self.r2!r} exceeds 1")


def _bic(rss: float, nobs: int) -> float:
    return nobs * math.log(max(rss, _RSS_FLOOR) / nobs) + math.log(nobs)


def fit_distribution(data: CountDataset, family: str) -> DistFit:
    """Least-squares fit of p1 for one family against observed frequencies."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r} (expected MB or BE)")
    observed = data.observed
    big_n = data.n_total
    nobs = big_n + 1

    def rss_at(p1: float) -> float:
        params = DistParams(family, p1, big_n)
        return sum((p - o) ** 2 for p, o in zip(pmf_vector(params), observed))

    if family == "BE":
        # RSS is quadratic in p1: one golden-section pass suffices
        best_p1 = golden_section_minimize(rss_at, 0.0, 1.0)
        best = (rss_at(best_p1), best_p1)
    else:
        # MB RSS can be multimodal: bracketed multistart, deterministic order
        best = None
        for i in range(16):
            lo, hi = i / 16.0, (i + 1) / 16.0
            p1 = golden_section_minimize(rss_at, lo, hi)
            candidate = (rss_at(p1), p1)
            if best is None or candidate < best:
                best = candidate
    for endpoint in (0.0, 1.0):  # golden-section brackets never close on the ends
        candidate = (rss_at(endpoint), endpoint)
        if candidate < best:
            best = candidate
    rss, p1 = best

    mean = sum(observed) / nobs
    tss = sum((o - mean) ** 2 for o in observed)
    # constant observations accumulate ~1e-33 of float noise in tss; treat
    # anything below 1e-20 as zero variance rather than dividing by it
    if tss > 1e-20:
        r2 = 1.0 - rss / tss
    else:
        r2 = 1.0 if rss <= 1e-12 else None
    return DistFit(
        params=DistParams(family, p1, big_n),
        rss=rss,
        r2=r2,
        bic=_bic(rss, nobs),
        dataset=data.category,
    )


@dataclass(frozen=True)
class BicComparison:
    delta_bic: float
    winner: str
    strength: str


def compare_bic(fit_a: DistFit, fit_b: DistFit, r2_margin: float = 0.01) -> BicComparison:
    """Compare an MB fit and a BE fit of the same dataset.

    ``delta_bic = fit_a.bic - fit_b.bic``; with the canonical call order
    (MB, BE), positive values favor BE.  Strength thresholds: |delta| > 6
    strong, 2 < |delta| <= 6 positive, otherwise weak when the R^2 values
    separate by more than ``r2_margin``, else none.  Boundary values fall
    in the weaker class.
    """
    families = {fit_a.params.family, fit_b.params.family}
    if families != {"MB", "BE"}:
        raise ValueError(f"need one MB fit and one BE fit, got {sorted(families)}")
    if fit_a.params.n_total != fit_b.params.n_total:
        raise ValueError("fits are for different N; not the same dataset")
    if fit_a.dataset is not None and fit_b.dataset is not None and fit_a.dataset != fit_b.dataset:
        raise ValueError(
            f"fits are for different datasets ({fit_a.dataset!r} vs {fit_b.dataset!r})"
        )
    delta = fit_a.bic - fit_b.bic
    if delta > 0.0:
        winner = fit_b.params.family
    elif delta < 0.0:
        winner = fit_a.params.family
    else:
        r2_a = fit_a.r2 if fit_a.r2 is not None else -math.inf
        r2_b = fit_b.r2 if fit_b.r2 is not None else -math.inf
        if r2_a > r2_b:
            winner = fit_a.params.family
        elif r2_b > r2_a:
            winner = fit_b.params.family
        else:
            winner = "MB"
    magnitude = abs(delta)
    if magnitude > 6.0:
        strength = "strong"
    elif magnitude > 2.0:
        strength = "positive"
    else:
        r2_known = fit_a.r2 is not None and fit_b.r2 is not None
        separated = r2_known and abs(fit_a.r2 - fit_b.r2) > r2_margin
        strength = "weak" if separated else "none"
    return BicComparison(delta_bic=delta, winner=winner, strength=strength)


@dataclass(frozen=True)
class RegressionResult:
    """OLS line plus a Student-t confidence interval on the mean of y."""

    slope: float
    intercept: float
    r2: float
    mean: float
    ci_low: float
    ci_high: float
    n: int

    def __post_init__(self):
        if self.r2 > 1.0 + 1e-12:
            raise DataValidationError(f"r2={self.r2!r} exceeds 1")
        if not self.ci_low <= self.mean <= self.ci_high:
            raise DataValidationError("confidence interval does not bracket the mean")


def linear_regression(
    xs: Sequence[float], ys: Sequence[float], confidence: float = 0.95
) -> RegressionResult:
    """Ordinary least squares of ys on xs plus a CI on mean(ys)."""
    if not 0.0 < confidence < 1.0:
        raise DataValidationError(f"confidence={confidence!r} outside (0, 1)")
    if len(xs) != len(ys):
        raise InsufficientDataError(f"length mismatch: {len(xs)} xs vs {len(ys)} ys")
    n = len(xs)
    if n < 3:
        raise InsufficientDataError(f"need at least 3 points, got {n}")
    xs = [float(x) for x in xs]
    ys = [float(y) for y in ys]
    x_mean = sum(xs) / n
    y_mean = sum(ys) / n
    sxx = sum((x - x_mean) ** 2 for x in xs)
    sxy = sum((x - x_mean) * (y - y_mean) for x, y in zip(xs, ys))
    if sxx == 0.0:
        raise InsufficientDataError("all x values identical; slope undefined")
    slope = sxy / sxx
    intercept = y_mean - slope * x_mean
    ss_res = sum((y - (slope * x + intercept)) ** 2 for x, y in zip(xs, ys))
    ss_tot = sum((y - y_mean) ** 2 for y in ys)
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0.0 else 1.0
    variance = ss_tot / (n - 1)
    half_width = float(_student_t.ppf((1.0 + confidence) / 2.0, n - 1)) * math.sqrt(
        variance / n
    )
    return RegressionResult(
        slope=slope,
        intercept=intercept,
        r2=r2,
        mean=y_mean,
        ci_low=y_mean - half_width,
        ci_high=y_mean + half_width,
        n=n,
    )
