"""Precision policy shared by every computation in the package.

All arithmetic runs on mpmath. A NumericContext fixes the decimal working
precision, the Newton stopping tolerance and iteration cap, and the default
number of correction terms used by the uniform asymptotic expansion. Complex
values are plain ``mpmath.mpc``; NaN or infinite components are treated as
errors, never as values.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from mpmath import mp, mpc, mpf

from .errors import EvaluationError

# Validated term budgets for the two correction series.
MAX_REMAINDER_TERMS = 10
MAX_CORRECTION_ORDER = 5


@dataclass(frozen=True)
class NumericContext:
    """Working precision, tolerances and iteration limits.

    working_digits: decimal digits carried by every returned value.
    newton_tol: relative stopping tolerance for Newton iterations; cannot
        demand more accuracy than the arithmetic carries, so it is floored
        at 10^(2 - working_digits) (also the default).
    max_newton_iters: hard cap on Newton steps.
    expansion_terms: default number of remainder-series terms (B_k) in the
        uniform expansion of the incomplete beta function.
    """

    working_digits: int = 30
    newton_tol: float | None = None
    max_newton_iters: int = 80
    expansion_terms: int = MAX_REMAINDER_TERMS

    def __post_init__(self):
        if self.working_digits < 15:
            raise ValueError("working_digits must be at least 15")
        if self.newton_tol is None:
            object.__setattr__(self, "newton_tol", 10.0 ** (2 - self.working_digits))
        if self.newton_tol <= 0:
            raise ValueError("newton_tol must be positive")
        if mpf(self.newton_tol) < mpf(10) ** (2 - self.working_digits):
            raise ValueError(
                "newton_tol below 10^(2 - working_digits): the arithmetic "
                "cannot honour it"
            )
        if self.max_newton_iters < 1:
            raise ValueError("max_newton_iters must be positive")
        if not 0 <= self.expansion_terms <= MAX_REMAINDER_TERMS:
            raise ValueError(f"expansion_terms must lie in 0..{MAX_REMAINDER_TERMS}")

    def workdps(self, guard: int = 0):
        """Scoped mpmath precision: working_digits plus guard digits."""
        return mp.workdps(self.working_digits + guard)

    @property
    def tol(self) -> mpf:
        return mpf(self.newton_tol)


DEFAULT_CONTEXT = NumericContext()


def as_mpc(value) -> mpc:
    """Coerce to mpc and reject non-finite components."""
    z = mpc(value)
    if not (mp.isfinite(z.real) and mp.isfinite(z.imag)):
        raise EvaluationError(f"non-finite complex value: {value!r}")
    return z


def round_to(ctx: NumericContext, value):
    """Re-round a value to the context working precision."""
    with mp.workdps(ctx.working_digits):
        if isinstance(value, mpc) or (hasattr(value, "imag") and value.imag != 0):
            return +mpc(value)
        return +mpf(value)


def exact_conjugate(z: mpc) -> mpc:
    """Conjugate without precision loss, whatever the ambient precision.

    mpmath rounds results of arithmetic (even negation) to the ambient
    precision, so the construction runs at the bit width the value carries.
    """
    z = mpc(z)
    bits = max(z.real._mpf_[3], z.imag._mpf_[3]) + 5
    with mp.workprec(max(bits, mp.prec)):
        return mpc(z.real, -z.imag)
