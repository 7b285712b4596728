"""Exact evaluation of the isoperimetric bound formulas.

Bounds involving square roots are represented as ``Surd`` values and
compared in squared form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .boundary import lower_shadow, upper_shadow
from .errors import NoValidR0, PreconditionError, VerificationError
from .exactmath import Surd, ball_size, binom
from .families import ExplicitFamily

__all__ = [
    "nm_bounds",
    "ExpansionVerdict",
    "local_expansion_check",
    "Thm1Verdict",
    "thm1_bound_check",
    "Lemma7Params",
    "lemma7_params",
    "lemma7_bound",
    "lemma7_check",
    "DensityProfile",
    "density_profile",
    "ShadowSlacks",
    "shadow_slacks",
    "hypergeometric_pmf",
    "hypergeometric_max_ratio",
    "hypergeometric_sweep",
    "base_case_gap",
]


def _check_slice(n: int, r: int) -> int:
    if not 1 <= r <= n - 1:
        raise PreconditionError(f"needs 1 <= r <= n - 1, got n={n}, r={r}")
    return n - r


def nm_bounds(n: int, r: int, size: int) -> tuple[Fraction, Fraction]:
    """Normalized-matching lower bounds on the lower and upper shadow sizes."""
    s = _check_slice(n, r)
    return Fraction(r, s + 1) * size, Fraction(s, r + 1) * size


@dataclass(frozen=True)
class ExpansionVerdict:
    n: int
    r: int
    size: int
    boundary: int
    excess: Fraction  # boundary - (r/(s+1) + s/(r+1)) |A|
    bonus: Surd  # sqrt(n/(rs)) alpha(1-alpha) C(n,r)

    @property
    def holds(self) -> bool:
        return self.excess >= 0 and self.bonus <= self.excess

    def slack(self) -> float:
        return float(self.excess) - float(self.bonus)

    def rhs_value(self) -> float:
        # reporting only; the verdict never goes through floats
        return float(self.boundary - self.excess) + float(self.bonus)


def local_expansion_check(n: int, r: int, size: int, boundary: int) -> ExpansionVerdict:
    """Check |boundary| >= (r/(s+1)+s/(r+1))|A| + sqrt(n/(rs)) alpha(1-alpha) C(n,r)."""
    s = _check_slice(n, r)
    total = binom(n, r)
    if not 0 <= size <= total:
        raise PreconditionError(f"size {size} outside 0..{total}")
    coeff = Fraction(r, s + 1) + Fraction(s, r + 1)
    excess = boundary - coeff * size
    # alpha(1-alpha) C(n,r) = size (C - size) / C
    bonus = Surd(Fraction(size * (total - size), total), Fraction(n, r * s))
    return ExpansionVerdict(n, r, size, boundary, excess, bonus)


def base_case_gap(n: int, size: int, boundary: int) -> tuple[Fraction, Surd]:
    """Layer-1 form: (boundary excess, sqrt(n/(n-1)) alpha(1-alpha) n)."""
    if n < 2:
        raise PreconditionError("needs n >= 2")
    excess = boundary - (Fraction(n - 1, 2) + Fraction(1, n)) * size
    alpha = Fraction(size, n)
    return excess, Surd(alpha * (1 - alpha) * n, Fraction(n, n - 1))


@dataclass(frozen=True)
class Thm1Verdict:
    n: int
    R: int
    rho: Fraction
    size: int
    boundary: int
    preconditions_met: bool
    exploratory: bool
    lhs: Fraction  # 324 n boundary^2
    rhs: Fraction  # rho^3 min(|A|, |B|-|A|)^2

    @property
    def holds(self) -> bool:
        return self.lhs >= self.rhs

    @property
    def bound(self) -> Surd:
        small = min(self.size, ball_size(self.n, self.R) - self.size)
        return Surd(Fraction(small, 18) * self.rho, self.rho / self.n)


def thm1_bound_check(
    n: int,
    R: int,
    rho,
    size: int,
    boundary: int,
    *,
    strict: bool = True,
    assume_n0: int | None = None,
) -> Thm1Verdict:
    """Compare a boundary size against rho^{3/2} / (18 sqrt n) * min(|A|, |B_n(R)| - |A|).

    With ``strict`` a failed precondition raises; otherwise it is recorded in
    the verdict. Instances with n below ``assume_n0`` (or with no n0 given)
    are flagged exploratory, because the threshold n0(rho) is not explicit.
    """
    rho = Fraction(rho)
    total = ball_size(n, R)
    floor_rho_n = (rho * n).numerator // (rho * n).denominator
    gate = ball_size(n, floor_rho_n)
    ok = 0 < rho < Fraction(1, 2) and 2 * R <= n and gate <= size <= total - gate
    if strict and not ok:
        raise PreconditionError(
            f"requires 0 < rho < 1/2, R <= n/2 and {gate} <= |A| <= {total - gate}"
        )
    if not 0 <= size <= total:
        raise PreconditionError(f"size {size} outside 0..{total}")
    small = min(size, total - size)
    return Thm1Verdict(
        n=n,
        R=R,
        rho=rho,
        size=size,
        boundary=boundary,
        preconditions_met=ok,
        exploratory=assume_n0 is None or n < assume_n0,
        lhs=Fraction(324 * n * boundary * boundary),
        rhs=rho**3 * small * small,
    )


@dataclass(frozen=True)
class Lemma7Params:
    epsilon: Fraction
    r0: int
    c: Fraction


def lemma7_params(n: int, R: int, size: int) -> Lemma7Params:
    if not 0 <= R <= n:
        raise PreconditionError(f"needs 0 <= R <= n, got R={R}, n={n}")
    total = ball_size(n, R)
    if not 1 <= size <= total:
        raise PreconditionError(f"size {size} outside 1..{total}")
    eps = Fraction(R, 2 * n)
    target = eps * size
    r0 = next((r for r in range(R + 1) if ball_size(n, r) >= target), None)
    if r0 is None:
        raise NoValidR0(f"no r <= {R} with |B_n(r)| >= {target}")
    c = 1 - 1 / (Fraction(total, size) - eps)
    return Lemma7Params(eps, r0, c)


def lemma7_bound(params: Lemma7Params, n: int, size: int) -> Surd:
    """(2 c sqrt(r0) / (5 n)) eps |A|, or 0 when r0 = 0 or c <= 0 (trivial case)."""
    if params.r0 < 1 or params.c <= 0:
        return Surd(0)
    coeff = 2 * params.c * params.epsilon * size / (5 * n)
    return Surd(coeff, params.r0)


def lemma7_check(n: int, R: int, size: int, boundary: int) -> dict:
    params = lemma7_params(n, R, size)
    bound = lemma7_bound(params, n, size)
    hypotheses = n >= 80 and R <= n - params.r0
    return {
        "params": params,
        "bound": bound,
        "hypotheses_met": hypotheses,
        "holds": bound <= boundary,
    }


@dataclass(frozen=True)
class DensityProfile:
    sizes: tuple[int, ...]
    alphas: tuple[Fraction, ...]

    @property
    def total(self) -> int:
        return sum(self.sizes)


def _layers(f: ExplicitFamily, R: int) -> list[ExplicitFamily]:
    if f.max_size() > R:
        raise PreconditionError(f"family has a member with more than R={R} elements")
    buckets: list[set[int]] = [set() for _ in range(R + 1)]
    for x in f.members:
        buckets[x.bit_count()].add(x)
    return [ExplicitFamily(f.n, frozenset(b), r) for r, b in enumerate(buckets) if r <= f.n]


def density_profile(f: ExplicitFamily, R: int) -> DensityProfile:
    sizes = [0] * (R + 1)
    for layer in _layers(f, R):
        sizes[layer.layer] = layer.size
    alphas = tuple(
        Fraction(sizes[r], binom(f.n, r)) if binom(f.n, r) else Fraction(0) for r in range(R + 1)
    )
    return DensityProfile(tuple(sizes), alphas)


@dataclass(frozen=True)
class ShadowSlacks:
    plus: dict  # r -> delta_r^+, 0 <= r <= R-1
    minus: dict  # r -> delta_r^-, 1 <= r <= R


def shadow_slacks(f: ExplicitFamily, R: int) -> ShadowSlacks:
    n = f.n
    plus, minus = {}, {}
    for layer in _layers(f, R):
        r = layer.layer
        if r <= R - 1 and r <= n - 1:
            plus[r] = upper_shadow(layer).size - Fraction(n - r, r + 1) * layer.size
        if r >= 1:
            minus[r] = lower_shadow(layer).size - Fraction(r, n - r + 1) * layer.size
    for r, v in list(plus.items()) + list(minus.items()):
        if v < 0:
            raise VerificationError(f"negative shadow slack {v} at layer {r}")
    return ShadowSlacks(plus, minus)


def hypergeometric_pmf(r: int, m: int, n: int, k: int) -> Fraction:
    if not 0 <= m <= n:
        raise PreconditionError(f"needs 0 <= m <= n, got m={m}, n={n}")
    if not 0 <= k <= r or r > n:
        return Fraction(0)
    return Fraction(binom(m, k) * binom(n - m, r - k), binom(n, r))


def hypergeometric_max_ratio(r: int, n: int) -> Fraction:
    """max_k P(H = k)^2 * r (n - r) / n for H hypergeometric (r; floor(n/2), n)."""
    _check_slice(n, r)
    m = n // 2
    top = max(binom(m, k) * binom(n - m, r - k) for k in range(r + 1))
    total = binom(n, r)
    return Fraction(top * top * r * (n - r), n * total * total)


def hypergeometric_sweep(n_max: int, n_min: int = 2) -> dict:
    """Largest value of hypergeometric_max_ratio over 1 <= r <= n-1, n_min <= n <= n_max."""
    worst, where, checked = Fraction(0), None, 0
    for n in range(max(n_min, 2), n_max + 1):
        for r in range(1, n):
            value = hypergeometric_max_ratio(r, n)
            checked += 1
            if value > worst:
                worst, where = value, (n, r)
    return {"checked": checked, "max_ratio": worst, "argmax": where}
