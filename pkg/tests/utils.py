"""Test helpers and shared constants."""

import math

CORPUS_SPECS = ("gaussian:1", "uniform:0,1", "exponential:1", "laplace:1", "student_t:1")
LOG_CONCAVE_SPECS = CORPUS_SPECS[:4]

#: Supports in tests are widened so escorts down to this order stay accurate.
MIN_ORDER = 0.5


def gaussian_h(sigma: float, r: float) -> float:
    """h_r of N(0, sigma²)."""
    base = 0.5 * math.log(2.0 * math.pi * sigma**2)
    if r == 1:
        return base + 0.5
    return base + 0.5 * math.log(r) / (r - 1.0)


def exponential_h(rate: float, r: float) -> float:
    """h_r of Exp(rate): log(1/rate) + log(r)/(r - 1)."""
    if r == 1:
        return 1.0 - math.log(rate)
    return -math.log(rate) + math.log(r) / (r - 1.0)


def laplace_h(b: float, r: float) -> float:
    """h_r of Laplace(0, b): log(2b) + log(r)/(r - 1)."""
    if r == 1:
        return math.log(2.0 * b) + 1.0
    return math.log(2.0 * b) + math.log(r) / (r - 1.0)


def triangular_csv(path) -> None:
    """Write the triangular density on [0, 2] with peak 1 at x = 1."""
    n = 2001
    lines = ["x,f"]
    for i in range(n):
        x = 2.0 * i / (n - 1)
        lines.append(f"{x!r},{1.0 - abs(x - 1.0)!r}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
