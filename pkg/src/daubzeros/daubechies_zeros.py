"""Zeros of the Daubechies polynomial via asymptotic inversion.

Pipeline, per erfc zero w_k: scale into the transformed plane
(eta0 = -w_k sqrt(2/n)), add the inversion correction
eps = eps_1/n + ... + eps_m/n^m, map eta = eta0 + eps back to the
coefficient plane, and emit the zero together with its conjugate partner.
When n is even the k = n/2 zero is the lone real one; its residual imaginary
part is an asymptotic artifact and is projected away before any real-line
polishing.

The corrections eps_1..eps_3 use derivative-free closed forms in the shape
function; eps_4 and eps_5 exist only as Maclaurin series (their closed forms
are not established), so correction orders >= 4 are refused outside |eta0| <= 3
where those series converge too slowly to be trustworthy.

Newton polishing runs on the exact-coefficient Horner representation at
internally elevated precision. The uniform asymptotic representation is kept
as an independent cross-check, not as the polishing engine: with 10 remainder
terms its truncation floor (~n^-11 relative) sits far above the 45+ digit
targets the exact representation reaches routinely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from mpmath import mp, mpc, mpf

from .context import DEFAULT_CONTEXT, NumericContext, as_mpc, round_to
from .errors import DomainError, RefinementError, StructuralError
from .series_tables import SeriesTables, default_series_tables
from .special_functions import (
    daubechies_polynomial,
    daubechies_polynomial_derivative,
    polynomial_coefficients,
    polynomial_required_digits,
    shape_function,
)

# margin delta for the correction-series disc |eta0| < 2 sqrt(pi) and the
# strip |Im eta| < sqrt(2 pi)
DISC_MARGIN = 0.05
# orders >= 4 have series-only corrections; beyond this radius their series
# converge too slowly to be trusted
SERIES_ONLY_RADIUS = 3.0
# below this radius the closed forms lose digits to cancellation and the
# Maclaurin series are both exact and fast
CORRECTION_SERIES_RADIUS = 1.0


@dataclass(frozen=True)
class EtaPoint:
    """A zero location in the transformed plane: eta = eta0 + epsilon."""

    eta0: mpc
    epsilon: mpc
    eta: mpc
    source_k: int

    def __post_init__(self):
        if not self.eta0.real > 0:
            raise DomainError(f"eta0={self.eta0} not in the right half plane")
        with mp.workdps(20):
            if abs(self.eta.imag) >= mp.sqrt(2 * mp.pi):
                raise DomainError(f"eta={self.eta} outside the validity strip")


@dataclass(frozen=True)
class ZeroPairing:
    """Conjugate-partner index pairs plus the lone real zero, if any."""

    pairs: tuple
    real_index: int | None


@dataclass(frozen=True)
class PolynomialZeroSet:
    """The n-1 zeros of the degree-(n-1) Daubechies polynomial.

    zeros are ordered pairwise by source index k (upper-half member first),
    with the even-n real zero last. residuals hold the Newton-step length
    |P/P'| per zero; refined marks polished entries.
    """

    n: int
    zeros: tuple
    pairing: ZeroPairing
    residuals: tuple
    refined: tuple
    order: int
    source_k: tuple

    def __post_init__(self):
        if len(self.zeros) != self.n - 1:
            raise StructuralError(
                f"expected {self.n - 1} zeros, got {len(self.zeros)}"
            )
        covered = set()
        for i, j in self.pairing.pairs:
            covered.update((i, j))
        if self.pairing.real_index is not None:
            covered.add(self.pairing.real_index)
        if covered != set(range(len(self.zeros))):
            raise StructuralError("pairing does not cover the zero list exactly")


def erfc_zero_to_eta(w, n: int) -> mpc:
    """Scale an upper-half erfc zero into the transformed plane: -w sqrt(2/n).

    The result lies near the lower-right diagonal. Rejects points outside the
    correction-series disc (that zero index is not usable for this n).
    """
    if n < 2:
        raise DomainError("n must be >= 2")
    w = as_mpc(w)
    with mp.workdps(mp.dps + 10):
        eta0 = -w * mp.sqrt(mpf(2) / n)
        if abs(eta0) >= 2 * mp.sqrt(mp.pi) - DISC_MARGIN:
            raise DomainError(
                f"|eta0|={float(abs(eta0)):.4f} outside the correction disc; "
                f"erfc zero not usable for n={n}"
            )
        return +eta0


def correction_coefficient(
    i: int,
    eta0,
    tables: SeriesTables | None = None,
    ctx: NumericContext = DEFAULT_CONTEXT,
    method: str = "auto",
):
    """The i-th inversion-correction coefficient eps_i at eta0, i = 1..5.

    method: "auto" picks the Maclaurin series inside |eta0| <= 1 (no
    cancellation, fast convergence) and the closed forms outside; "closed"
    and "series" force a route (closed exists only for i <= 3).
    """
    if not 1 <= i <= 5:
        raise DomainError(f"unsupported correction order {i}; closed forms and "
                          "series exist for orders 1..5 only")
    if method not in ("auto", "closed", "series"):
        raise ValueError(f"unknown method {method!r}")
    z = as_mpc(eta0)
    tables = tables or default_series_tables()
    with mp.workdps(20):
        if abs(z) >= 2 * mp.sqrt(mp.pi) - DISC_MARGIN:
            raise DomainError(f"|eta0|={float(abs(z)):.4f} outside the series disc")
        use_series = method == "series" or (method == "auto" and abs(z) <= CORRECTION_SERIES_RADIUS)
        if i >= 4:
            if method == "closed":
                raise DomainError(f"no closed form for eps_{i}; series only")
            if abs(z) > SERIES_ONLY_RADIUS:
                raise DomainError(
                    f"eps_{i} series unreliable for |eta0| > {SERIES_ONLY_RADIUS}"
                )
            use_series = True

    if use_series:
        with ctx.workdps(15):
            value = tables.epsilon_series_value(i, z)
        return round_to(ctx, value)

    inner = NumericContext(working_digits=ctx.working_digits + 15)
    with ctx.workdps(15):
        e = z
        phi = shape_function(e, inner)
        e1 = mp.log(phi) / e
        if i == 1:
            value = e1
        elif i == 2:
            value = (
                8 + 3 * e**2 - 8 * phi**2 + 4 * e**3 * e1
                - 8 * phi**2 * e1 * e - 4 * e1**2 * e**2
            ) / (8 * e**3)
        else:
            value = (
                -40 + 5 * e**4 + 56 * phi**4 - 16 * phi**2 + 8 * e**2
                - 38 * e**2 * phi**2 - 16 * e * e1 + 16 * phi**4 * e1**2 * e**2
                - 32 * phi**2 * e1 * e**3 + 48 * phi**4 * e1 * e
                - 6 * e**3 * e1 + 16 * phi**2 * e1 * e + 4 * e**5 * e1
                - 8 * e**4 * e1**2 * phi**2 + 16 * phi**2 * e1**2 * e**2
                + 8 * e1**3 * e**3 - 8 * e1**2 * e**4
            ) / (16 * e**5)
    return round_to(ctx, value)


def inversion_correction(
    eta0,
    n: int,
    order: int,
    tables: SeriesTables | None = None,
    ctx: NumericContext = DEFAULT_CONTEXT,
    method: str = "auto",
) -> mpc:
    """Total correction sum eps_1/n + ... + eps_order/n^order at eta0."""
    z = as_mpc(eta0)
    tables = tables or default_series_tables()
    with ctx.workdps(15):
        total = mpc(0)
        scale = mpf(n)
        for i in range(1, order + 1):
            total += correction_coefficient(i, z, tables, ctx, method) / scale
            scale *= n
    return round_to(ctx, total)


def y_to_eta(y, ctx: NumericContext = DEFAULT_CONTEXT):
    """Transformed coordinate eta with -eta^2/2 = log(4y(1-y)).

    Principal branch continued so that eta depends continuously on y over the
    left lemniscate leaf; sign(eta) = sign(1/2 - y) on the real interval
    (0, 1). Inverse of eta_to_y on its range.
    """
    z = as_mpc(y)
    if z == 0 or z == 1:
        raise DomainError("y = 0 and y = 1 are logarithmic singularities")
    real_input = z.imag == 0
    with ctx.workdps(15):
        t = 1 - 2 * z
        tsq = t * t
        if tsq == 0:
            return round_to(ctx, mpf(0) if real_input else mpc(0))
        # forming 1 - tsq near y = 1/2 cancels ~|log10 |tsq|| digits
        lost = int(-mp.log10(abs(tsq))) + 1 if abs(tsq) < 1 else 0
    with ctx.workdps(15 + max(0, lost)):
        t = 1 - 2 * z
        v = 1 - t * t
        if v == 0:
            raise DomainError("4y(1-y) = 0: logarithmic singularity")
        eta = mp.sqrt(-2 * mp.log(v))
        if z.real > mpf(1) / 2:
            eta = -eta
    return round_to(ctx, eta)


def eta_to_y(eta, ctx: NumericContext = DEFAULT_CONTEXT):
    """Inverse map y = (1 - eta/(sqrt(2) phi(eta)))/2.

    The square-root branch is the one positive on the real axis (inherited
    from the shape function); map singularities raise SingularityError.
    """
    z = as_mpc(eta)
    inner = NumericContext(working_digits=ctx.working_digits + 15)
    with ctx.workdps(15):
        phi = shape_function(z, inner)
        value = (1 - z / (mp.sqrt(mpf(2)) * phi)) / 2
    return round_to(ctx, value)


def _eta_point(w, n: int, order: int, tables, ctx, k: int) -> EtaPoint:
    with ctx.workdps(15):
        eta0 = erfc_zero_to_eta(w, n)
        epsilon = inversion_correction(eta0, n, order, tables, ctx)
        eta = +(eta0 + epsilon)
    return EtaPoint(eta0=eta0, epsilon=epsilon, eta=eta, source_k=k)


def _scaled_residual(y, n: int, ctx: NumericContext) -> mpf:
    """Newton-step length |P/P'| of the exact representation at y."""
    z = as_mpc(y)
    work = max(polynomial_required_digits(n, z), ctx.working_digits + 10)
    inner = NumericContext(working_digits=work)
    inv_beta = math.comb(2 * n - 1, n - 1) * n
    with mp.workdps(work):
        x = z.real if z.imag == 0 else z
        p = daubechies_polynomial(x, n, inner)
        dp = (n * p - x ** (n - 1) * inv_beta) / (1 - x)
        value = abs(p / dp)
    return round_to(ctx, value)


def polynomial_zeros(
    n: int,
    order: int = 5,
    ctx: NumericContext = DEFAULT_CONTEXT,
    tables: SeriesTables | None = None,
) -> PolynomialZeroSet:
    """All n-1 zeros from the asymptotic pipeline, unrefined.

    Even n: erfc zeros k = 1..n/2-1 give conjugate pairs and k = n/2 gives
    the real zero. Odd n: k = 1..(n-1)/2, pairs only. Per-k domain failures
    abort with the offending k identified.
    """
    from .erfc_zeros import erfc_zero_table

    if n < 2:
        raise DomainError("n must be >= 2")
    if not 1 <= order <= 5:
        raise DomainError("order must lie in 1..5")
    tables = tables or default_series_tables()
    kmax = n // 2 if n % 2 == 0 else (n - 1) // 2
    table = erfc_zero_table(kmax, ctx)

    zeros = []
    source = []
    pairs = []
    real_index = None
    for k in range(1, kmax + 1):
        try:
            point = _eta_point(table[k - 1].value, n, order, tables, ctx, k)
            y = as_mpc(eta_to_y(point.eta, ctx))
        except DomainError as exc:
            raise DomainError(f"pipeline failed at erfc zero k={k}: {exc}") from exc
        with ctx.workdps(5):
            if n % 2 == 0 and k == kmax:
                # lone real zero: the imaginary part is an asymptotic artifact
                if abs(y.imag) > mpf("0.01") * (1 + abs(y)):
                    raise StructuralError(
                        f"real-zero candidate at k={k} has imaginary part {y.imag}"
                    )
                real_index = len(zeros)
                zeros.append(mpc(y.real, 0))
                source.append(k)
            else:
                pairs.append((len(zeros), len(zeros) + 1))
                zeros.append(y)
                zeros.append(mpc(y.real, -y.imag))
                source.extend((k, k))

    # real zero, when present, goes last for a stable output order
    if real_index is not None and real_index != len(zeros) - 1:
        raise StructuralError("real zero must be emitted last")

    residuals = []
    for i, j in pairs:
        r = _scaled_residual(zeros[i], n, ctx)
        residuals.extend(((i, r), (j, r)))
    if real_index is not None:
        residuals.append((real_index, _scaled_residual(zeros[real_index], n, ctx)))
    residuals = tuple(r for _, r in sorted(residuals))

    return PolynomialZeroSet(
        n=n,
        zeros=tuple(zeros),
        pairing=ZeroPairing(pairs=tuple(pairs), real_index=real_index),
        residuals=residuals,
        refined=tuple(False for _ in zeros),
        order=order,
        source_k=tuple(source),
    )


def newton_polish(y0, n: int, ctx: NumericContext = DEFAULT_CONTEXT):
    """Polish a zero estimate by Newton on the exact Horner representation.

    Precision is elevated internally to cover the coefficient range plus the
    target digits, so the returned residual |P/P'| honestly reflects the
    polished zero. Real starting points iterate on the real line and stay
    real. Returns (zero, residual).
    """
    z = as_mpc(y0)
    real_line = z.imag == 0
    lead = len(str(polynomial_coefficients(n)[-1]))
    work = max(polynomial_required_digits(n, z), ctx.working_digits + lead + 25)
    inner = NumericContext(working_digits=work, max_newton_iters=ctx.max_newton_iters)
    inv_beta = math.comb(2 * n - 1, n - 1) * n  # 1/B(n, n)
    trail = []
    with mp.workdps(work):
        x = z.real if real_line else z
        tol = ctx.tol
        for _ in range(ctx.max_newton_iters):
            p = daubechies_polynomial(x, n, inner)
            dp = (n * p - x ** (n - 1) * inv_beta) / (1 - x)
            step = p / dp
            x = x - step
            trail.append(+x)
            if abs(step) <= tol * max(abs(x), mpf("1e-2")):
                break
        else:
            raise RefinementError(
                f"polish did not converge for n={n} from {y0}; trail={trail[-3:]}",
                last_iterate=x,
            )
        p = daubechies_polynomial(x, n, inner)
        dp = (n * p - x ** (n - 1) * inv_beta) / (1 - x)
        residual = abs(p / dp)
    return round_to(ctx, x), round_to(ctx, residual)


def polish_zero_set(
    zs: PolynomialZeroSet, ctx: NumericContext = DEFAULT_CONTEXT
) -> PolynomialZeroSet:
    """Polish every zero; conjugate partners are mirrored, not re-iterated."""
    zeros = list(zs.zeros)
    residuals = list(zs.residuals)
    for i, j in zs.pairing.pairs:
        value, residual = newton_polish(zeros[i], zs.n, ctx)
        value = as_mpc(value)
        with ctx.workdps(5):
            zeros[i] = value
            zeros[j] = mpc(value.real, -value.imag)
        residuals[i] = residual
        residuals[j] = residual
    if zs.pairing.real_index is not None:
        idx = zs.pairing.real_index
        value, residual = newton_polish(zs.zeros[idx].real, zs.n, ctx)
        with ctx.workdps(5):
            zeros[idx] = mpc(value, 0)
        residuals[idx] = residual
    return PolynomialZeroSet(
        n=zs.n,
        zeros=tuple(zeros),
        pairing=zs.pairing,
        residuals=tuple(residuals),
        refined=tuple(True for _ in zeros),
        order=zs.order,
        source_k=zs.source_k,
    )


def zero_identity_residuals(
    zs: PolynomialZeroSet, ctx: NumericContext = DEFAULT_CONTEXT
):
    """Residuals of the two exact zero identities.

    Returns (sum_residual, product_residual) where the first is
    sum(y) + 1/2 and the second is binom(2n-2, n-1) prod(y) - (-1)^(n-1).
    The product is accumulated over conjugate pairs so every partial product
    stays real; the binomial factor is an exact integer.
    """
    n = zs.n
    binom = math.comb(2 * n - 2, n - 1)
    with ctx.workdps(15 + len(str(binom))):
        total = mpf(0)
        for i, j in zs.pairing.pairs:
            total += zs.zeros[i].real + zs.zeros[j].real
        prod = mpf(1)
        for i, j in zs.pairing.pairs:
            prod *= (zs.zeros[i] * zs.zeros[j]).real
        if zs.pairing.real_index is not None:
            real_zero = zs.zeros[zs.pairing.real_index].real
            total += real_zero
            prod *= real_zero
        sum_residual = total + mpf(1) / 2
        product_residual = binom * prod - (-1) ** (n - 1)
    return round_to(ctx, sum_residual), round_to(ctx, product_residual)
