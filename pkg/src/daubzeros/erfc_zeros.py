"""Complex zeros of erfc in the second quadrant.

Two infinite strings of zeros hug the diagonals v = +-u in the left half
plane w = u + iv, u < 0. Only the upper-half members are computed; conjugate
partners are generated by symmetry at the point of use, which keeps
downstream real-coefficient constructions exactly conjugate-paired.

The first-order large-k location sqrt(2 pi (k - 1/8)) exp(3 pi i/4) starts a
Newton iteration on erfc itself; the closed-form derivative gives the step
w <- w + (sqrt(pi)/2) exp(w^2) erfc(w). Steps are clamped to stay inside the
basin of the intended zero (the raw first step from the k = 2 estimate is
long enough to hop basins otherwise).
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpc, mpf

from .context import DEFAULT_CONTEXT, NumericContext, as_mpc, exact_conjugate, round_to
from .errors import RefinementError
from .special_functions import erfc_complex

# Longest Newton step allowed; zero spacing is ~0.8 at k = 2 and shrinks
# like 1/sqrt(k), while the first-order start error shrinks faster.
_STEP_CLAMP = mpf("0.3")


@dataclass(frozen=True)
class ErfcZero:
    """One refined upper-half-plane zero of erfc.

    index: 1-based position along the string, ordered by modulus.
    value: the zero (real part < 0, imaginary part > 0).
    residual: |erfc(value)| at working precision.
    iterations: Newton steps taken.
    """

    index: int
    value: mpc
    residual: mpf
    iterations: int

    def __post_init__(self):
        if not (self.value.real < 0 and self.value.imag > 0):
            raise RefinementError(
                f"zero {self.index} outside the second quadrant: {self.value}",
                last_iterate=self.value,
            )

    @property
    def conjugate(self) -> mpc:
        return exact_conjugate(self.value)


def erfc_zero_estimate(k: int, ctx: NumericContext = DEFAULT_CONTEXT) -> mpc:
    """First-order asymptotic location sqrt(2 pi (k - 1/8)) exp(3 pi i/4)."""
    if k < 1:
        raise ValueError("zero index k must be >= 1")
    with ctx.workdps(5):
        r = mp.sqrt(2 * mp.pi * (k - mpf(1) / 8))
        value = r * mpc(-1, 1) / mp.sqrt(2)
    return round_to(ctx, value)


def refine_erfc_zero(
    w0, ctx: NumericContext = DEFAULT_CONTEXT, index: int = 0
) -> ErfcZero:
    """Newton-refine a second-quadrant starting point to an erfc zero.

    The iterate must stay in the second quadrant throughout; escaping it or
    exhausting the iteration budget raises RefinementError with the last
    iterate attached.
    """
    w = as_mpc(w0)
    if not (w.real < 0 and w.imag > 0):
        raise RefinementError(f"start {w} not in the second quadrant", last_iterate=w)
    guard = 10 + int(float(abs(w)) ** 2 / 10)
    inner = NumericContext(working_digits=ctx.working_digits + guard)
    iterations = 0
    with ctx.workdps(guard):
        tol = ctx.tol
        for iterations in range(1, ctx.max_newton_iters + 1):
            step = mp.sqrt(mp.pi) / 2 * mp.exp(w * w) * erfc_complex(w, inner)
            size = abs(step)
            if size > _STEP_CLAMP:
                step *= _STEP_CLAMP / size
            w = w + step
            if not (w.real < 0 and w.imag > 0):
                raise RefinementError(
                    f"iterate escaped the second quadrant after {iterations} steps",
                    last_iterate=w,
                )
            if abs(step) <= tol * abs(w):
                break
        else:
            raise RefinementError(
                f"no convergence within {ctx.max_newton_iters} Newton steps",
                last_iterate=w,
            )
        residual = abs(erfc_complex(w, inner))
    return ErfcZero(
        index=index,
        value=round_to(ctx, w),
        residual=round_to(ctx, residual),
        iterations=iterations,
    )


def erfc_zero_table(kmax: int, ctx: NumericContext = DEFAULT_CONTEXT) -> list:
    """Refined zeros k = 1..kmax, strictly ordered by modulus.

    Conjugate (lower-half) partners are implied, never stored.
    """
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    table = []
    for k in range(1, kmax + 1):
        try:
            zero = refine_erfc_zero(erfc_zero_estimate(k, ctx), ctx, index=k)
        except RefinementError as exc:
            raise RefinementError(
                f"refinement failed at k={k}: {exc}", last_iterate=exc.last_iterate
            ) from exc
        if table and abs(zero.value) <= abs(table[-1].value):
            raise RefinementError(
                f"modulus ordering violated at k={k}; basins crossed",
                last_iterate=zero.value,
            )
        table.append(zero)
    return table
