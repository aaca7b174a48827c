"""Coincidence counting and certified lower bounds.

Responsibility: count how often an additive factor count agrees with a
constructed strongly multiplicative g; enumerate the disjoint witness
families n = r * p**a (r coprime to the set) that certify a lower bound
on that count; tabulate the growth ratio across a grid of x; and compute
the prime-power moment sums whose ratio controls how large any level of
an additive function can get.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .budget import DEFAULT_SEGMENT_SIZE, WORKING_BYTES_PER_N, require_budget
from .census import CensusTable, census, mode_k, normalize_f
from .gfunction import GFunction
from .primeset import PrimeSetS, coprime_mask
from .sieve import iter_factor_segments, primes_up_to


@dataclass(frozen=True)
class ReportRow:
    x: int
    e_count: int
    l_count: int
    loglogx: float
    ratio_e: float
    ratio_l: float


@dataclass(frozen=True)
class ProximityReport:
    """Growth table for one g over an ascending grid of x."""

    f_tag: str
    eps: float
    prime_set: PrimeSetS | None
    g: GFunction
    rows: tuple[ReportRow, ...]


@dataclass(frozen=True)
class PhiDiagnostics:
    """Prime-power moment sums at scale x.

    a_sum weights f(p**a) by (1 - 1/p) over prime powers p**a <= x; b_sum
    is the second moment f(p**a)**2 / p**a; phi is their ratio b/a.
    k_of_x = x / max_level_count grows when no single level dominates.
    """

    x: int
    f_tag: str
    a_sum: float
    b_sum: float
    phi: float
    max_level_count: int
    k_of_x: float


def _g_segment_values(g: GFunction, lo: int, hi: int) -> np.ndarray:
    """g(n) for n in [lo, hi) as int64, by stepping table-prime multiples."""
    out = np.ones(hi - lo, dtype=np.int64)
    for entry in g.entries:
        p = entry.prime
        start = ((lo + p - 1) // p) * p
        if start < hi:
            out[start - lo :: p] *= entry.value
    return out


def coincidence_count(
    x: int,
    f_tag: str,
    g: GFunction,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
) -> int:
    """#{n <= x : f(n) = g(n)} exactly.

    n = 1 never matches: f(1) = 0 while g(1) = 1 (empty product).
    """
    if x < 0:
        raise ValueError(f"coincidence_count requires x >= 0, got {x}")
    if x == 0:
        return 0
    tag = normalize_f(f_tag)
    require_budget(WORKING_BYTES_PER_N * min(segment_size, x) * max(1, threads), "coincidence scan")
    total = 0
    for seg in iter_factor_segments(1, x + 1, segment_size, threads):
        gv = _g_segment_values(g, seg.lo, seg.hi)
        total += int((seg.values(tag) == gv).sum())
    return total


def certificate_count(
    x: int,
    prime_set: PrimeSetS,
    g: GFunction,
    f_tag: str = "big_omega",
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
) -> tuple[int, int]:
    """Certified lower bound for coincidence_count(x, f, g) with witnesses.

    Counts n = r * p**a for each member p <= x and exponent a >= 1 with
    p**a <= x, where r <= x // p**a is coprime to every member and sits at
    the level that forces f(n) = g(n): big_omega(r) = g(p) - a for f =
    big_omega, omega(r) = g(p) - 1 for f = omega.  Negative targets are
    skipped.  Distinct (p, a, r) give distinct n because r carries no
    member prime, so the families are disjoint and the total is a true
    lower bound.

    Every witness is re-checked against f(n) = g(n) on the sieved arrays;
    the returned pair is (count, witnesses_checked) and a failed check
    raises RuntimeError.
    """
    tag = normalize_f(f_tag)
    members = [p for p in prime_set.members if p <= x]
    if not members:
        return 0, 0
    table = g.table
    for p in members:
        if p not in table:
            raise ValueError(f"g has no value for set member {p}")
    require_budget(10 * (x + 1) + WORKING_BYTES_PER_N * min(segment_size, x), "certificate")

    f_full = np.zeros(x + 1, dtype=np.uint8)
    for seg in iter_factor_segments(1, x + 1, segment_size, threads):
        f_full[seg.lo : seg.hi] = seg.values(tag)
    coprime = np.zeros(x + 1, dtype=bool)
    coprime[1:] = coprime_mask(1, x + 1, prime_set.members)
    g_full = _g_segment_values(g, 0, x + 1)

    count = 0
    checked = 0
    for p in members:
        value = table[p]
        power = p
        a = 1
        while power <= x:
            target = value - a if tag == "big_omega" else value - 1
            if target >= 0:
                y = x // power
                hits = coprime[1 : y + 1] & (f_full[1 : y + 1] == target)
                r_values = np.nonzero(hits)[0] + 1
                n_values = r_values * power
                if not bool(np.all(f_full[n_values] == g_full[n_values])):
                    raise RuntimeError(
                        f"certificate witness failed at member {p}, exponent {a}"
                    )
                count += len(r_values)
                checked += len(r_values)
            power *= p
            a += 1
    return count, checked


def growth_report(
    x_grid: list[int],
    eps: float,
    f_tag: str,
    prime_set: PrimeSetS | None,
    g: GFunction,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
) -> ProximityReport:
    """Coincidence and certificate counts with growth ratios over a grid.

    ratio_e = E * (log log x)**(1/2 + eps) / x, and likewise ratio_l; a
    ratio that stays bounded away from zero as x grows is the empirical
    signature the construction aims for.  g stays fixed across the grid.
    """
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    tag = normalize_f(f_tag)
    grid = sorted({int(v) for v in x_grid})
    for v in grid:
        if v < 16:
            raise ValueError(f"grid values must be >= 16, got {v}")
    rows = []
    for x in grid:
        e_count = coincidence_count(x, tag, g, segment_size, threads)
        if prime_set is not None and prime_set.members:
            l_count, _ = certificate_count(x, prime_set, g, tag, segment_size, threads)
        else:
            l_count = 0
        loglogx = math.log(math.log(x))
        scale = loglogx ** (0.5 + eps) / x
        rows.append(ReportRow(x, e_count, l_count, loglogx, e_count * scale, l_count * scale))
    return ProximityReport(tag, eps, prime_set, g, tuple(rows))


def report_csv_lines(report: ProximityReport) -> list[str]:
    lines = ["x,f,E,L,loglogx,eps,ratio_E,ratio_L"]
    for r in report.rows:
        lines.append(
            f"{r.x},{report.f_tag},{r.e_count},{r.l_count},"
            f"{r.loglogx!r},{report.eps!r},{r.ratio_e!r},{r.ratio_l!r}"
        )
    return lines


def write_report_csv(report: ProximityReport, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(report_csv_lines(report)) + "\n")


def report_json_dict(report: ProximityReport, config_hash: str) -> dict:
    return {
        "f": report.f_tag,
        "eps": report.eps,
        "set": report.prime_set.to_json_dict() if report.prime_set else None,
        "g": report.g.to_json_dict(),
        "rows": [
            {
                "x": r.x,
                "E": r.e_count,
                "L": r.l_count,
                "loglogx": r.loglogx,
                "ratio_E": r.ratio_e,
                "ratio_L": r.ratio_l,
            }
            for r in report.rows
        ],
        "config_hash": config_hash,
    }


def write_report_json(report: ProximityReport, config_hash: str, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(report_json_dict(report, config_hash), fh, indent=2)
        fh.write("\n")


def phi_diagnostics(
    x: int,
    f_tag: str,
    table: CensusTable | None = None,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
) -> PhiDiagnostics:
    """Moment sums over prime powers p**a <= x, plus the busiest level.

    f(p**a) is 1 for omega and a for big_omega.  A falling phi alongside a
    rising k_of_x is the empirical trend that keeps every single level a
    vanishing share of the integers.

    Parameters
    ----------
    table : CensusTable, optional
        Reuse a precomputed unrestricted census of the same x and f
        instead of sieving again.
    """
    if x < 2:
        raise ValueError(f"phi_diagnostics requires x >= 2, got {x}")
    tag = normalize_f(f_tag)
    primes = primes_up_to(x).primes
    inv = 1.0 / primes
    # Exponent 1 terms: f(p) = 1 for both tags.
    a_sum = float(np.sum(1.0 - inv))
    b_sum = float(np.sum(inv))
    # Higher powers exist only for p <= sqrt(x).
    for p in primes[primes <= math.isqrt(x)]:
        p = int(p)
        weight = 1.0 - 1.0 / p
        power = p * p
        a = 2
        while power <= x:
            fv = 1 if tag == "omega" else a
            a_sum += fv * weight
            b_sum += (fv * fv) / power
            power *= p
            a += 1
    if table is not None:
        if table.x != x or table.f_tag != tag or table.restricted_to is not None:
            raise ValueError("supplied census does not match x and f")
    else:
        table = census(x, tag, segment_size=segment_size, threads=threads)
    _, max_count = mode_k(table)
    return PhiDiagnostics(x, tag, a_sum, b_sum, b_sum / a_sum, max_count, x / max_count)


def phi_json_dict(d: PhiDiagnostics, config_hash: str) -> dict:
    return {
        "x": d.x,
        "f": d.f_tag,
        "A": d.a_sum,
        "B": d.b_sum,
        "phi": d.phi,
        "max_level_count": d.max_level_count,
        "K_of_x": d.k_of_x,
        "config_hash": config_hash,
    }
