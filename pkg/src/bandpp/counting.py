"""Exact big-integer enumeration of the partition families.

Every family is a product ``prod_k (1 - z^k)^(-e_k)``.  Counts come from two
independent routes that are checked against each other:

* :func:`euler_transform_counts` -- the recurrence
  ``a_n = (1/n) sum_k a_{n-k} sum_{d|k} d*e_d``;
* :func:`series_product_counts` -- the truncated product itself.

:func:`brute_force_bpp` enumerates banded plane partitions cell by cell and
serves as a third, definition-level oracle for small sizes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExceeded, DomainError, InternalInconsistency

BRUTE_FORCE_CEILING = 16

FAMILY_TAGS = (
    "partitions",
    "plane",
    "column_strict",
    "bpp",
    "m_rowed",
    "strict_rows",
    "bounded_sym",
)
_NEEDS_M = {"bpp", "m_rowed", "strict_rows", "bounded_sym"}


# ---------------------------------------------------------------------------
# families


def band_weight(m: int, j: int) -> int:
    """Number of pairs ``1 <= h < i < m`` with ``h + i == j`` (0 < j < 2m)."""
    return max(0, (m - 1 - abs(m - j)) // 2)


@dataclass(frozen=True)
class Family:
    """A partition family described by its factor exponents ``e_k``."""

    tag: str
    m: int | None = None

    def __post_init__(self):
        if self.tag not in FAMILY_TAGS:
            raise DomainError(f"unknown family {self.tag!r}")
        if self.tag in _NEEDS_M:
            if self.m is None or self.m < 1:
                raise DomainError(f"family {self.tag} needs a width m >= 1")
        elif self.m is not None:
            raise DomainError(f"family {self.tag} takes no width")

    @classmethod
    def partitions(cls) -> "Family":
        return cls("partitions")

    @classmethod
    def plane(cls) -> "Family":
        return cls("plane")

    @classmethod
    def column_strict(cls) -> "Family":
        return cls("column_strict")

    @classmethod
    def bpp(cls, m: int) -> "Family":
        return cls("bpp", m)

    @classmethod
    def m_rowed(cls, m: int) -> "Family":
        return cls("m_rowed", m)

    @classmethod
    def strict_rows(cls, m: int) -> "Family":
        return cls("strict_rows", m)

    @classmethod
    def bounded_sym(cls, m: int) -> "Family":
        return cls("bounded_sym", m)

    def __str__(self):
        return self.tag if self.m is None else f"{self.tag}({self.m})"


def exponent(family: Family, k: int) -> int:
    """Exponent ``e_k`` of the factor ``(1 - z^k)^(-e_k)``."""
    if k < 1:
        raise DomainError("factor index must be >= 1")
    tag, m = family.tag, family.m
    if tag == "partitions":
        return 1
    if tag == "plane":
        return k
    if tag == "column_strict":
        return (k + 1) // 2
    if tag == "bpp":
        r = k % (2 * m)
        return 1 + (band_weight(m, r) if r else 0)
    if tag == "m_rowed":
        return min(k, m)
    if tag == "strict_rows":
        e = m // 2 + (m % 2) * (k % 2)
        if k <= m - 2:
            e -= (m - k) // 2
        return e
    # bounded_sym
    return k if k <= m else 0


def u_weight(m: int, d: int) -> int:
    """Closed form for ``[z^d] z U_m'(z)``, i.e. ``d * e_d`` for ``Bpp(m)``.

    The third case applies to multiples of ``2m``; every other index takes
    the V_m coefficient branch, plus ``d/2`` when ``d`` is odd.
    """
    if m < 3 or d < 1:
        raise DomainError("u_weight needs m >= 3 and d >= 1")
    if d % (2 * m) == 0:
        return d
    v = d * vm_coefficient(m, d)
    if d % 2:
        v += Fraction(d, 2)
    if v.denominator != 1:
        raise InternalInconsistency(f"u_weight({m}, {d}) = {v} is not integral")
    return int(v)


def vm_coefficient(m: int, d: int) -> Fraction:
    """``[z^d] V_m(z) = (m/4)(1 + (-1)^floor(d/m) (2{d/m} - 1))``."""
    if m < 3 or d < 1:
        raise DomainError("vm_coefficient needs m >= 3 and d >= 1")
    q, r = divmod(d, m)
    sign = -1 if q % 2 else 1
    return Fraction(m, 4) * (1 + sign * (Fraction(2 * r, m) - 1))


# ---------------------------------------------------------------------------
# truncated series


class BigSeries:
    """Power series truncated at ``z^n_max`` with exact integer coefficients."""

    __slots__ = ("coeffs", "n_max")

    def __init__(self, coeffs: Iterable[int], n_max: int | None = None):
        arr = np.array([int(c) for c in coeffs], dtype=object)
        if n_max is None:
            n_max = len(arr) - 1
        if len(arr) < n_max + 1:
            arr = np.concatenate([arr, np.zeros(n_max + 1 - len(arr), dtype=object)])
        self.coeffs = arr[: n_max + 1]
        self.n_max = n_max

    @classmethod
    def one(cls, n_max: int) -> "BigSeries":
        return cls([1], n_max)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return self.n_max + 1

    def __eq__(self, other):
        return (
            isinstance(other, BigSeries)
            and self.n_max == other.n_max
            and list(self.coeffs) == list(other.coeffs)
        )

    def tolist(self) -> list[int]:
        return [int(c) for c in self.coeffs]

    def __mul__(self, other: "BigSeries") -> "BigSeries":
        n = min(self.n_max, other.n_max)
        a, b = self.coeffs, other.coeffs
        out = np.zeros(n + 1, dtype=object)
        for i in range(n + 1):
            if a[i]:
                out[i:] += a[i] * b[: n + 1 - i]
        return BigSeries(out, n)

    def substitute_power(self, k: int) -> "BigSeries":
        """Series of ``f(z^k)``, truncated at the same order."""
        out = np.zeros(self.n_max + 1, dtype=object)
        src = self.coeffs[: self.n_max // k + 1]
        out[:: k][: len(src)] = src
        return BigSeries(out, self.n_max)

    def inverse(self) -> "BigSeries":
        """Reciprocal of a series with constant term 1."""
        a = self.coeffs
        if a[0] != 1:
            raise DomainError("only unit series (constant term 1) are inverted")
        n = self.n_max
        b = np.zeros(n + 1, dtype=object)
        b[0] = 1
        for i in range(1, n + 1):
            b[i] = -np.dot(a[1 : i + 1], b[i - 1 :: -1])
        return BigSeries(b, n)

    def times_geometric_power(self, k: int, e: int) -> "BigSeries":
        """Multiply by ``(1 - z^k)^(-e)`` (``e`` may be negative)."""
        if e == 0 or k > self.n_max:
            return self
        n = self.n_max
        out = np.zeros(n + 1, dtype=object)
        if e > 0:
            # binomial series: coefficient of z^(k*i) is C(e+i-1, i)
            terms = ((i, comb(e + i - 1, i)) for i in range(n // k + 1))
        else:
            terms = ((i, (-1) ** i * comb(-e, i)) for i in range(min(-e, n // k) + 1))
        for i, c in terms:
            out[k * i :] += c * self.coeffs[: n + 1 - k * i]
        return BigSeries(out, n)

    @staticmethod
    def exp_of_log(log_coeffs: Sequence[Fraction | int], n_max: int) -> "BigSeries":
        """``exp(L(z))`` for ``L(0) = 0``; fails unless the result is integral."""
        weights = [Fraction(0)] + [
            k * Fraction(log_coeffs[k]) for k in range(1, n_max + 1)
        ]
        out = [Fraction(1)] + [Fraction(0)] * n_max
        for n in range(1, n_max + 1):
            out[n] = sum(weights[k] * out[n - k] for k in range(1, n + 1)) / n
        if any(c.denominator != 1 for c in out):
            raise InternalInconsistency("exp of log-series is not integral")
        return BigSeries([int(c) for c in out], n_max)


# ---------------------------------------------------------------------------
# count tables


@dataclass(frozen=True)
class CountTable:
    family: Family
    counts: tuple[int, ...]

    @property
    def n_max(self) -> int:
        return len(self.counts) - 1

    def __getitem__(self, n):
        return self.counts[n]

    def __len__(self):
        return len(self.counts)

    def to_tsv(self, header: str | None = None) -> str:
        lines = [] if header is None else [f"# {header}"]
        lines += [f"{n}\t{c}" for n, c in enumerate(self.counts)]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        # counts are emitted as decimal strings so no reader truncates them
        return json.dumps(
            {
                "family": self.family.tag,
                "m": self.family.m,
                "n_max": self.n_max,
                "counts": [str(c) for c in self.counts],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "CountTable":
        obj = json.loads(text)
        fam = Family(obj["family"], obj["m"])
        counts = tuple(int(c) for c in obj["counts"])
        if len(counts) != obj["n_max"] + 1:
            raise ValueError("n_max does not match the number of counts")
        return cls(fam, counts)


def parse_tsv(text: str) -> tuple[list[str], dict[int, int]]:
    """Read ``n<TAB>count`` lines; returns (header lines, {n: count})."""
    header, rows = [], {}
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            header.append(line[1:].strip())
            continue
        n, c = line.split("\t")
        rows[int(n)] = int(c)
    return header, rows


# vendored sequences: A-number -> family that should reproduce them
OEIS_FIXTURES = {
    "A000041": ("partitions", None),
    "A000219": ("plane", None),
    "A003293": ("column_strict", None),
    "A266648": ("bpp", 3),
    "A000990": ("m_rowed", 2),
    "A000991": ("m_rowed", 3),
    "A002799": ("m_rowed", 4),
    "A001452": ("m_rowed", 5),
    "A225196": ("m_rowed", 6),
    "A225197": ("m_rowed", 7),
    "A225198": ("m_rowed", 8),
    "A225199": ("m_rowed", 9),
}


def load_fixture(a_number: str) -> tuple[list[str], dict[int, int]]:
    """Vendored OEIS prefix as (provenance header, {n: a(n)})."""
    if a_number not in OEIS_FIXTURES:
        raise DomainError(f"no vendored fixture {a_number!r}")
    text = resources.files("bandpp").joinpath("data", "oeis", f"{a_number}.tsv").read_text(encoding="utf-8")
    return parse_tsv(text)


@lru_cache(maxsize=64)
def divisor_weights(family: Family, n_max: int) -> tuple[int, ...]:
    """``c_k = sum_{d | k} d * e_d`` for ``0 <= k <= n_max`` (c_0 = 0)."""
    if family.tag == "bpp" and family.m >= 3:
        m = family.m
        dw = [0] + [u_weight(m, d) for d in range(1, n_max + 1)]
    else:
        dw = [0] + [d * exponent(family, d) for d in range(1, n_max + 1)]
    c = [0] * (n_max + 1)
    for d in range(1, n_max + 1):
        w = dw[d]
        if w:
            for k in range(d, n_max + 1, d):
                c[k] += w
    return tuple(c)


@lru_cache(maxsize=64)
def _euler_cached(family: Family, n_max: int) -> tuple[int, ...]:
    c = np.array(divisor_weights(family, n_max), dtype=object)
    a = np.zeros(n_max + 1, dtype=object)
    a[0] = 1
    for n in range(1, n_max + 1):
        s = np.dot(c[1 : n + 1], a[n - 1 :: -1])
        q, r = divmod(int(s), n)
        if r:
            raise InternalInconsistency(
                f"{family}: recurrence sum at n={n} not divisible by n"
            )
        a[n] = q
    return tuple(int(x) for x in a)


def euler_transform_counts(family: Family, n_max: int) -> CountTable:
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    return CountTable(family, _euler_cached(family, n_max))


def series_product_counts(family: Family, n_max: int) -> CountTable:
    """Expand ``prod_{k <= n_max} (1 - z^k)^(-e_k)`` directly."""
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    s = BigSeries.one(n_max)
    for k in range(1, n_max + 1):
        s = s.times_geometric_power(k, exponent(family, k))
    return CountTable(family, tuple(s.tolist()))


def count(family: Family, n: int) -> int:
    return euler_transform_counts(family, n).counts[n]


# ---------------------------------------------------------------------------
# brute force


def brute_force_bpp(n: int, m: int, ceiling: int = BRUTE_FORCE_CEILING) -> int:
    """Count fillings of the band ``{(i, j): j <= i <= j + m - 1}`` summing to n.

    Cells are visited column by column (fixed ``j``, increasing ``i``).  An
    entry is capped by its in-band neighbours ``(i-1, j)`` and ``(i, j-1)``
    and by the diagonal neighbour ``(i-1, j-1)``.  The diagonal cap is implied
    by the other two whenever ``m >= 2``; for ``m = 1`` it is what makes the
    band a single chain, matching ``G_1 = P``.
    """
    if n < 0 or m < 1:
        raise DomainError("need n >= 0 and m >= 1")
    if n > ceiling:
        raise BudgetExceeded(f"n={n} above brute-force ceiling {ceiling}")
    if n == 0:
        return 1

    def column(j: int, prev: list[int], remaining: int) -> int:
        # prev[t] is the value at (j-1+t, j-1); zero cells are not stored
        total = 0

        def fill(t: int, above: int, cur: list[int], left: int) -> None:
            nonlocal total
            if left == 0:
                total += 1
                return
            # t indexes cell (j+t, j)
            if t < m:
                cap = min(above, left)
                if j > 0:
                    # left neighbour (j+t, j-1) is prev[t+1]; diagonal is prev[t]
                    diag = prev[t] if t < len(prev) else 0
                    cap = min(cap, diag)
                    if t <= m - 2:
                        lt = prev[t + 1] if t + 1 < len(prev) else 0
                        cap = min(cap, lt)
                for v in range(cap, 0, -1):
                    cur.append(v)
                    fill(t + 1, v, cur, left - v)
                    cur.pop()
            if cur:
                total += column(j + 1, list(cur), left)

        fill(0, remaining, [], remaining)
        return total

    return column(0, [], n)
