"""Deterministic number formatting and CSV/JSON serialization.

Formatting contract: decimal, round-to-nearest, full working precision,
fixed-point for |x| in [1e-4, 1e6) and scientific otherwise. CSV is comma
separated, '.' radix, header row, LF line endings. JSON carries numbers as
full-precision decimal strings so a re-ingested file reproduces the source
values bit-exactly at equal working digits.
"""

from __future__ import annotations

import csv
import json

from mpmath import mp, mpc, mpf, nstr

from .context import NumericContext
from .daubechies_zeros import PolynomialZeroSet, ZeroPairing
from .errors import StructuralError


def format_real(x, digits: int) -> str:
    """Fixed/scientific decimal with `digits` significant digits."""
    x = mpf(x)
    if x == 0:
        return "0"
    return nstr(x, digits, min_fixed=-5, max_fixed=6, strip_zeros=True)


def parse_real(text: str, digits: int) -> mpf:
    with mp.workdps(digits + 12):
        return mpf(text)


def interchange_real(x, digits: int) -> str:
    """Round-trip-exact decimal string (working digits plus guard)."""
    x = mpf(x)
    if x == 0:
        return "0"
    return nstr(x, digits + 12, min_fixed=-5, max_fixed=6, strip_zeros=True)


def write_csv(stream, header, rows) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def zero_set_document(
    zs: PolynomialZeroSet,
    ctx: NumericContext,
    sum_residual,
    product_residual,
) -> dict:
    """JSON-ready dictionary for a zero set, numbers as exact strings."""
    digits = ctx.working_digits
    zeros = []
    for i, y in enumerate(zs.zeros):
        zeros.append(
            {
                "k": zs.source_k[i],
                "re": interchange_real(y.real, digits),
                "im": interchange_real(y.imag, digits),
                "residual": format_real(zs.residuals[i], 8),
                "refined": zs.refined[i],
            }
        )
    return {
        "kind": "daubechies-zeros",
        "n": zs.n,
        "order": zs.order,
        "digits": digits,
        "refined": all(zs.refined),
        "sum_residual": format_real(sum_residual, 8),
        "product_residual": format_real(product_residual, 8),
        "zeros": zeros,
    }


def dump_json(document: dict) -> str:
    return json.dumps(document, indent=2) + "\n"


def load_zero_set(path) -> tuple:
    """Parse a zeros JSON file back into (PolynomialZeroSet, digits).

    Pairing is rebuilt from the canonical output order: conjugate partners
    adjacent, the lone real zero (when present) last.
    """
    with open(path, encoding="ascii") as fh:
        doc = json.load(fh)
    if doc.get("kind") != "daubechies-zeros":
        raise StructuralError(f"{path} is not a zeros file")
    n = int(doc["n"])
    digits = int(doc["digits"])
    entries = doc["zeros"]
    if len(entries) != n - 1:
        raise StructuralError(f"zeros file holds {len(entries)} entries, expected {n - 1}")
    zeros = []
    residuals = []
    refined = []
    source = []
    with mp.workdps(digits + 12):
        for entry in entries:
            zeros.append(mpc(parse_real(entry["re"], digits), parse_real(entry["im"], digits)))
            residuals.append(parse_real(entry["residual"], digits))
            refined.append(bool(entry["refined"]))
            source.append(int(entry["k"]))
    pairs = []
    real_index = None
    i = 0
    while i < len(zeros):
        if zeros[i].imag == 0:
            if real_index is not None:
                raise StructuralError("more than one real zero in file")
            real_index = i
            i += 1
        else:
            if i + 1 >= len(zeros) or zeros[i + 1].imag != -zeros[i].imag:
                raise StructuralError("conjugate partner missing in zeros file")
            pairs.append((i, i + 1))
            i += 2
    zs = PolynomialZeroSet(
        n=n,
        zeros=tuple(zeros),
        pairing=ZeroPairing(pairs=tuple(pairs), real_index=real_index),
        residuals=tuple(residuals),
        refined=tuple(refined),
        order=int(doc["order"]),
        source_k=tuple(source),
    )
    return zs, digits
