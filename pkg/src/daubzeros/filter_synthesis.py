"""Minimum-phase spectral factor and Daubechies filter coefficients.

Each polynomial zero y maps to the root z of z^2 - (2-4y) z + 1 = 0 inside
the unit circle; the spectral factor built from those roots expands into the
coefficients f(0..n-1), and convolving with the exact binomial vector of
((1+1/z)/2)^n yields the 2n filter taps h(n), normalized so sum h = sqrt(2).

Conjugate z-pairs are multiplied as real quadratics, so every intermediate
coefficient is real by construction. The expansion itself is the unstable
step at large n (coefficients of the factor grow to ~1e28 by n = 100), so
the working precision is chosen adaptively from a cheap low-precision dry
run that measures the growth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from mpmath import mp, mpc, mpf

from .context import DEFAULT_CONTEXT, NumericContext, as_mpc, round_to
from .daubechies_zeros import PolynomialZeroSet, ZeroPairing
from .errors import FactorizationError, StructuralError


@dataclass(frozen=True)
class ZZeroSet:
    """Spectral-factor zeros, all strictly inside the unit circle."""

    n: int
    zeros: tuple
    pairing: ZeroPairing

    def __post_init__(self):
        if len(self.zeros) != self.n - 1:
            raise StructuralError(
                f"expected {self.n - 1} zeros, got {len(self.zeros)}"
            )


@dataclass(frozen=True)
class FilterDiagnostics:
    """Residuals of the identity battery for a synthesized filter bank."""

    sum_residual: mpf          # sum h - sqrt(2)
    sum_sq_residual: mpf       # sum h^2 - 1
    orthonormality_max: mpf    # max |sum h(m) h(m-2j) - delta|
    moment_residuals: tuple    # |sum (-1)^m m^k h(m)|, k = 0..n-1


@dataclass(frozen=True)
class FilterBank:
    n: int
    f: tuple
    h: tuple
    diagnostics: FilterDiagnostics

    def __post_init__(self):
        if len(self.f) != self.n or len(self.h) != 2 * self.n:
            raise StructuralError("coefficient vector lengths do not match n")
        for value in self.f + self.h:
            if not mp.isfinite(value):
                raise StructuralError("non-finite filter coefficient")


def z_from_y(y, ctx: NumericContext = DEFAULT_CONTEXT):
    """Root of z^2 - (2-4y) z + 1 inside the unit circle.

    The larger-modulus root is computed first and inverted (the root product
    is exactly 1), which avoids the cancellation of the textbook quadratic
    formula. Degenerate factorizations (|z| within 1e-8 of 1) are refused.
    """
    z = as_mpc(y)
    real_input = z.imag == 0
    with ctx.workdps(10):
        c = 2 - 4 * (z.real if real_input else z)
        disc = mp.sqrt(c * c - 4)
        big = (c + disc) / 2 if abs(c + disc) >= abs(c - disc) else (c - disc) / 2
        small = 1 / big
        if abs(abs(small) - 1) < mpf("1e-8"):
            raise FactorizationError(
                f"z-zero modulus within 1e-8 of the unit circle at y={y}"
            )
    return round_to(ctx, small)


def z_zero_set(zs: PolynomialZeroSet, ctx: NumericContext = DEFAULT_CONTEXT) -> ZZeroSet:
    """Map a polynomial zero set into spectral-factor zeros, pair by pair."""
    zeros = [None] * len(zs.zeros)
    with ctx.workdps(5):
        for i, j in zs.pairing.pairs:
            z = as_mpc(z_from_y(zs.zeros[i], ctx))
            zeros[i] = z
            zeros[j] = mpc(z.real, -z.imag)
        if zs.pairing.real_index is not None:
            idx = zs.pairing.real_index
            zr = as_mpc(z_from_y(zs.zeros[idx].real, ctx))
            if zr.imag != 0:
                raise StructuralError("real polynomial zero produced a complex z")
            zeros[idx] = zr
    return ZZeroSet(n=zs.n, zeros=tuple(zeros), pairing=zs.pairing)


def _real_factors(zzs: ZZeroSet):
    """Linear/quadratic factors of the numerator polynomial in x = 1/z,
    with real coefficients, ordered by increasing |z|."""
    factors = []
    for i, j in zzs.pairing.pairs:
        z = zzs.zeros[i]
        re2 = 2 * z.real
        mod2 = z.real * z.real + z.imag * z.imag
        factors.append((mod2, [mpf(1), -re2, mod2]))
    if zzs.pairing.real_index is not None:
        zr = zzs.zeros[zzs.pairing.real_index].real
        factors.append((zr * zr, [mpf(1), -zr]))
    factors.sort(key=lambda item: item[0])
    return [poly for _, poly in factors]


def _expand(factors):
    coeffs = [mpf(1)]
    growth = mpf(1)
    for poly in factors:
        new = [mpf(0)] * (len(coeffs) + len(poly) - 1)
        for a_idx, a in enumerate(coeffs):
            for b_idx, b in enumerate(poly):
                new[a_idx + b_idx] += a * b
        coeffs = new
        peak = max(abs(x) for x in coeffs)
        if peak > growth:
            growth = peak
    return coeffs, growth


def spectral_factor_coefficients(
    zzs: ZZeroSet, ctx: NumericContext = DEFAULT_CONTEXT
) -> list:
    """Coefficients f(0..n-1) of the spectral factor, sum f = 1 up to rounding.

    Normalization divides by the separately computed product of (1 - z) over
    all zeros (in paired real arithmetic), so sum f = 1 stays a genuine check
    rather than an enforced identity.
    """
    # dry run at low precision to size the coefficient growth
    with mp.workdps(15):
        _, growth = _expand(_real_factors(zzs))
        extra = max(0, int(mp.log10(growth))) + 20

    with ctx.workdps(extra):
        factors = _real_factors(zzs)
        coeffs, _ = _expand(factors)
        denom = mpf(1)
        for i, j in zzs.pairing.pairs:
            z = zzs.zeros[i]
            denom *= 1 - 2 * z.real + (z.real * z.real + z.imag * z.imag)
        if zzs.pairing.real_index is not None:
            denom *= 1 - zzs.zeros[zzs.pairing.real_index].real
        f = [x / denom for x in coeffs]
    if len(f) != zzs.n:
        raise StructuralError(f"expected {zzs.n} factor coefficients, got {len(f)}")
    return [round_to(ctx, x) for x in f]


def filter_coefficients(
    f, n: int, ctx: NumericContext = DEFAULT_CONTEXT
) -> FilterBank:
    """Filter taps h(0..2n-1) = sqrt(2) 2^-n (binomial(n) conv f).

    The binomial vector is exact integers. Populates the full diagnostics
    record (normalization, energy, shift orthonormality, moments).
    """
    if len(f) != n:
        raise StructuralError(f"expected {n} factor coefficients, got {len(f)}")
    f = [mpf(x) for x in f]
    with mp.workdps(15):
        peak = max(abs(x) for x in f)
        extra = (max(0, int(mp.log10(peak))) if peak > 0 else 0) + 20
    with ctx.workdps(extra):
        binom = [math.comb(n, j) for j in range(n + 1)]
        h = [mpf(0)] * (2 * n)
        for j, b in enumerate(binom):
            for i, fi in enumerate(f):
                h[j + i] += b * fi
        scale = mp.sqrt(mpf(2)) / mpf(2) ** n
        h = [x * scale for x in h]
    h = [round_to(ctx, x) for x in h]
    f = [round_to(ctx, x) for x in f]
    diagnostics = _diagnostics(h, n, ctx)
    return FilterBank(n=n, f=tuple(f), h=tuple(h), diagnostics=diagnostics)


def _diagnostics(h, n: int, ctx: NumericContext) -> FilterDiagnostics:
    with ctx.workdps(15):
        total = sum(h, mpf(0)) - mp.sqrt(mpf(2))
        energy = sum((x * x for x in h), mpf(0)) - 1
    orth = _orthonormality_max(h, n, ctx)
    moments = _moment_residuals(h, n - 1, ctx)
    return FilterDiagnostics(
        sum_residual=round_to(ctx, total),
        sum_sq_residual=round_to(ctx, energy),
        orthonormality_max=round_to(ctx, orth),
        moment_residuals=tuple(moments),
    )


def _orthonormality_max(h, n: int, ctx: NumericContext) -> mpf:
    with ctx.workdps(15):
        worst = mpf(0)
        for shift in range(n):
            acc = mpf(0)
            for m in range(2 * shift, 2 * n):
                acc += h[m] * h[m - 2 * shift]
            if shift == 0:
                acc -= 1
            worst = max(worst, abs(acc))
        return worst


def _moment_residuals(h, kmax: int, ctx: NumericContext):
    with ctx.workdps(15):
        out = []
        powers = [mpf(1)] * len(h)  # m^0, with 0^0 = 1
        for k in range(kmax + 1):
            if k > 0:
                for m in range(len(h)):
                    powers[m] *= m
            acc = mpf(0)
            for m, x in enumerate(h):
                acc += x * powers[m] if m % 2 == 0 else -x * powers[m]
            out.append(round_to(ctx, abs(acc)))
    return out


def orthonormality_residual(bank: FilterBank, ctx: NumericContext = DEFAULT_CONTEXT) -> mpf:
    """max over shifts of |sum_m h(m) h(m-2j) - delta_{j,0}|, zero-padded."""
    return round_to(ctx, _orthonormality_max(list(bank.h), bank.n, ctx))


def moment_residuals(bank: FilterBank, kmax: int, ctx: NumericContext = DEFAULT_CONTEXT):
    """|sum (-1)^m m^k h(m)| for k = 0..kmax.

    Exact filters annihilate these for k < n, but the attainable size grows
    with k (the alternating sum weights reach (2n)^k); callers choose the
    pass thresholds, hard assertions make sense only for small k.
    """
    if kmax > bank.n - 1:
        raise StructuralError(f"kmax must not exceed n-1 = {bank.n - 1}")
    return _moment_residuals(list(bank.h), kmax, ctx)


def synthesize_filter_bank(
    zs: PolynomialZeroSet, ctx: NumericContext = DEFAULT_CONTEXT
) -> FilterBank:
    """Full synthesis: y-zeros -> z-zeros -> factor coefficients -> taps."""
    zzs = z_zero_set(zs, ctx)
    f = spectral_factor_coefficients(zzs, ctx)
    return filter_coefficients(f, zs.n, ctx)
