"""Exact-rational coefficient tables for the asymptotic machinery.

Three related expansions are generated symbolically, once, from first
principles and cached for the life of the process:

* the even Maclaurin series of the shape function phi(z) =
  sqrt((z^2/2)/(1 - exp(-z^2/2))), via Bernoulli numbers and a series exp;
* the expansion coefficients c_k of the gamma-ratio factor
  Phi(n) = Gamma(n + 1/2)/(sqrt(n) Gamma(n)) ~ sum c_k n^-k, from the
  Stirling series of log-Gamma;
* the odd Maclaurin series of the inversion corrections eps_1..eps_5 in
  eta = eta0 + eps_1/n + eps_2/n^2 + ..., obtained order by order from the
  functional equation

      ln Phi(n) + ln phi(eta0 + eps) + ln(1 + eps') = n (eta0 eps + eps^2/2),

  which encodes that the inversion maps zeros of the erfc profile to zeros
  of the full incomplete-beta profile.

All series converge on |eta| < 2*sqrt(pi). Heads are asserted against known
values at build time; the test suite checks many more.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import rational_series as rs

# Default truncation orders (powers of eta / of 1/n). The epsilon series are
# consumed at |eta| up to ~2.51 where successive odd terms shrink by a factor
# ~2; 60 odd terms leave a tail below 1e-18 there.
PHI_SERIES_ORDER = 140
EPSILON_SERIES_ORDER = 121
GAMMA_RATIO_TERMS = 12
CORRECTION_ORDERS = 5


@dataclass(frozen=True)
class SeriesTables:
    """Immutable rational-coefficient tables.

    phi_taylor: dense coefficients of phi, even powers populated.
    epsilon_series: one dense odd series per correction order (index 0
        holds eps_1).
    gamma_ratio_coeffs: c_0, c_1, ... of the Phi(n) expansion.
    """

    phi_taylor: tuple
    epsilon_series: tuple
    gamma_ratio_coeffs: tuple

    def phi_series_value(self, z):
        return rs.evaluate(list(self.phi_taylor), z)

    def epsilon_series_value(self, order: int, z):
        """Series value of eps_order at z; order in 1..5."""
        return rs.evaluate(list(self.epsilon_series[order - 1]), z)

    def save(self, path):
        """Plain-text audit dump: one `numerator/denominator` per line."""
        with open(path, "w", encoding="ascii") as fh:
            fh.write("# daubzeros rational coefficient tables\n")
            fh.write("# section phi_taylor\n")
            for c in self.phi_taylor:
                fh.write(f"{c.numerator}/{c.denominator}\n")
            for i, series in enumerate(self.epsilon_series, start=1):
                fh.write(f"# section epsilon_{i}\n")
                for c in series:
                    fh.write(f"{c.numerator}/{c.denominator}\n")
            fh.write("# section gamma_ratio_coeffs\n")
            for c in self.gamma_ratio_coeffs:
                fh.write(f"{c.numerator}/{c.denominator}\n")

    @staticmethod
    def load(path) -> "SeriesTables":
        sections: dict[str, list[Fraction]] = {}
        current: list[Fraction] | None = None
        with open(path, encoding="ascii") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                if line.startswith("# section"):
                    name = line.split()[-1]
                    current = sections.setdefault(name, [])
                elif line.startswith("#"):
                    continue
                else:
                    if current is None:
                        raise ValueError("coefficient before any section header")
                    num, den = line.split("/")
                    current.append(Fraction(int(num), int(den)))
        eps = tuple(
            tuple(sections[f"epsilon_{i}"]) for i in range(1, CORRECTION_ORDERS + 1)
        )
        return SeriesTables(
            phi_taylor=tuple(sections["phi_taylor"]),
            epsilon_series=eps,
            gamma_ratio_coeffs=tuple(sections["gamma_ratio_coeffs"]),
        )


def _log_phi_series(order: int) -> rs.Series:
    """ln phi as a series in eta: u/4 - (1/2) sum B_2k u^2k/(2k (2k)!), u = eta^2/2."""
    bern = rs.bernoulli_numbers(order + 2)
    s = rs.zero_series(order)
    s[2] = Fraction(1, 8)
    k = 1
    while 4 * k <= order:
        s[4 * k] += (
            -Fraction(1, 2)
            * bern[2 * k]
            / (2 * k * math.factorial(2 * k))
            / Fraction(2 ** (2 * k))
        )
        k += 1
    return s


def _log_gamma_ratio_coeffs(count: int) -> list[Fraction]:
    """d_1..d_count with ln Phi(n) = sum d_k n^-k, from the Stirling series.

    ln Phi = n ln(1 + 1/(2n)) - 1/2
             + sum_m B_2m/(2m(2m-1)) [(n + 1/2)^(1-2m) - n^(1-2m)].
    """
    bern = rs.bernoulli_numbers(2 * count + 2)
    d = [Fraction(0)] * (count + 1)
    for k in range(1, count + 1):
        d[k] += Fraction((-1) ** k, (k + 1) * 2 ** (k + 1))
    for m in range(1, count + 1):
        prefactor = bern[2 * m] / (2 * m * (2 * m - 1))
        a = 1 - 2 * m
        binom = Fraction(1)
        for i in range(1, count + 1):
            binom = binom * Fraction(a - i + 1, i)
            k = 2 * m - 1 + i
            if k > count:
                break
            d[k] += prefactor * binom / Fraction(2**i)
    return d


def _gamma_ratio_coeffs(count: int) -> list[Fraction]:
    """c_0..c_count of Phi(n) ~ sum c_k n^-k, as exp of the d_k series."""
    d = _log_gamma_ratio_coeffs(count)
    c = [Fraction(0)] * (count + 1)
    c[0] = Fraction(1)
    for k in range(1, count + 1):
        acc = Fraction(0)
        for j in range(1, k + 1):
            acc += j * d[j] * c[k - j]
        c[k] = acc / k
    return c


def _tpoly_multiply(p, q, deg, order):
    """Product of polynomials in t whose coefficients are eta-series."""
    out = [rs.zero_series(order) for _ in range(deg + 1)]
    for i, pi in enumerate(p):
        if i > deg:
            break
        for j, qj in enumerate(q):
            if i + j > deg:
                break
            out[i + j] = rs.add(out[i + j], rs.multiply(pi, qj))
    return out


def _epsilon_series(order: int, max_order: int, d: list[Fraction]) -> list[rs.Series]:
    """eps_1..eps_max_order as eta-series, solved order by order in t = 1/n."""
    log_phi = _log_phi_series(order)
    derivs = [log_phi]
    for _ in range(max_order):
        derivs.append(rs.derivative(derivs[-1]))

    eps: list[rs.Series | None] = [None, rs.divide_by_x(log_phi)]
    for j in range(1, max_order):
        known = [rs.zero_series(order) for _ in range(j + 1)]
        for i in range(1, j + 1):
            known[i] = eps[i]
        lhs = rs.constant(d[j], order)
        # composition ln phi(eta + eps): sum_m phi-log-derivative_m / m! * eps^m
        power = [rs.zero_series(order) for _ in range(j + 1)]
        power[0] = rs.constant(1, order)
        for m in range(1, j + 1):
            power = _tpoly_multiply(power, known, j, order)
            term = rs.scale(
                Fraction(1, math.factorial(m)), rs.multiply(derivs[m], power[j])
            )
            lhs = rs.add(lhs, term)
        # ln(1 + eps'): alternating powers of the derivative series
        dknown = [rs.zero_series(order) for _ in range(j + 1)]
        for i in range(1, j + 1):
            dknown[i] = rs.derivative(eps[i])
        dpower = [rs.zero_series(order) for _ in range(j + 1)]
        dpower[0] = rs.constant(1, order)
        for m in range(1, j + 1):
            dpower = _tpoly_multiply(dpower, dknown, j, order)
            lhs = rs.add(lhs, rs.scale(Fraction((-1) ** (m + 1), m), dpower[j]))
        # quadratic part of the right-hand side with known orders only
        rhs_known = rs.zero_series(order)
        for a in range(1, j + 1):
            b = j + 1 - a
            if 1 <= b <= j:
                rhs_known = rs.add(
                    rhs_known, rs.scale(Fraction(1, 2), rs.multiply(eps[a], eps[b]))
                )
        eps.append(rs.divide_by_x(rs.add(lhs, rs.scale(-1, rhs_known))))
    return eps[1:]


def build_series_tables(
    phi_order: int = PHI_SERIES_ORDER,
    epsilon_order: int = EPSILON_SERIES_ORDER,
    gamma_terms: int = GAMMA_RATIO_TERMS,
) -> SeriesTables:
    phi = rs.exponential(_log_phi_series(phi_order))
    c = _gamma_ratio_coeffs(gamma_terms)
    d = _log_gamma_ratio_coeffs(max(gamma_terms, CORRECTION_ORDERS))
    eps = _epsilon_series(epsilon_order, CORRECTION_ORDERS, d)

    tables = SeriesTables(
        phi_taylor=tuple(phi),
        epsilon_series=tuple(tuple(s) for s in eps),
        gamma_ratio_coeffs=tuple(c),
    )
    _assert_heads(tables)
    return tables


def _assert_heads(tables: SeriesTables) -> None:
    phi = tables.phi_taylor
    if (phi[0], phi[2], phi[4]) != (Fraction(1), Fraction(1, 8), Fraction(1, 384)):
        raise AssertionError("shape-function Taylor head mismatch")
    e1 = tables.epsilon_series[0]
    if (e1[1], e1[3], e1[5]) != (Fraction(1, 8), Fraction(-1, 192), Fraction(0)):
        raise AssertionError("first correction series head mismatch")
    c = tables.gamma_ratio_coeffs
    if (c[0], c[1], c[2]) != (Fraction(1), Fraction(-1, 8), Fraction(1, 128)):
        raise AssertionError("gamma-ratio coefficient head mismatch")


@lru_cache(maxsize=1)
def default_series_tables() -> SeriesTables:
    return build_series_tables()
