"""Command-line interface.

Subcommands: census, construct, count, certificate, report, verify, phi.
Every run is seed-free and deterministic: identical arguments produce
byte-identical output files, each carrying a hash of the effective
configuration.  Exit codes: 0 success, 1 verification failure, 2 usage or
domain error, 3 capacity (memory budget) error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import random
import sys

from .budget import DEFAULT_SEGMENT_SIZE
from .census import (
    census,
    concentration_interval,
    levels_in_interval,
    mode_k,
    normalize_f,
    write_census_csv,
    write_census_metadata,
)
from .errors import CapacityError
from .gfunction import GFunction, build_g, g_to_json_text
from .primeset import (
    PrimeSetS,
    coprime_count,
    coprime_count_inclusion_exclusion,
    power_prime_set,
    threshold_prime_set,
)
from .proximity import (
    certificate_count,
    coincidence_count,
    growth_report,
    phi_diagnostics,
    phi_json_dict,
    write_report_csv,
    write_report_json,
)
from .sieve import factorize, sieve_census

F_FLAG = {"omega": "omega", "bigomega": "big_omega"}
DEFAULT_GRID = "10000,100000,1000000,10000000"


def config_hash(payload: dict) -> str:
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


def _parse_grid(raw: str) -> list[int]:
    vals = [part for part in raw.split(",") if part.strip()]
    return [int(v) for v in vals]


def _build_set(args: argparse.Namespace) -> PrimeSetS:
    count = args.count if args.count is not None else 5
    if args.set == "paper":
        delta = args.delta if args.delta is not None else 0.5
        return threshold_prime_set(delta, count)
    exponent = args.param if args.param is not None else 2.0
    return power_prime_set(exponent, count)


def _set_payload(args: argparse.Namespace) -> dict:
    return {
        "set": args.set,
        "count": args.count if args.count is not None else 5,
        "delta": args.delta if args.delta is not None else 0.5,
        "param": args.param if args.param is not None else 2.0,
    }


def _load_g(path: str) -> GFunction:
    with open(path, "r", encoding="utf-8") as fh:
        return GFunction.from_json_dict(json.load(fh))


def _resolve_g(args: argparse.Namespace, x: int, tag: str) -> tuple[GFunction, PrimeSetS | None, dict]:
    """g from --g file when given, else built inline from the set flags."""
    if getattr(args, "g", None):
        g = _load_g(args.g)
        payload = {"g_file": os.path.basename(args.g), "g_table": sorted(g.table.items())}
        return g, g.prime_set, payload
    pset = _build_set(args)
    g = build_g(x, pset, tag, args.segment_size, args.threads)
    return g, pset, _set_payload(args)


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _write_json(path: str, payload: dict) -> None:
    _write_text(path, json.dumps(payload, indent=2) + "\n")


def cmd_census(args: argparse.Namespace) -> int:
    tag = F_FLAG[args.f]
    restrict = _build_set(args) if args.restrict else None
    table = census(args.x, tag, restrict, args.segment_size, args.threads)
    payload = {"command": "census", "x": args.x, "f": tag}
    if restrict is not None:
        payload.update(_set_payload(args))
    digest = config_hash(payload)
    suffix = "_coprime" if restrict is not None else ""
    base = f"census_{args.f}_x{args.x}{suffix}"
    csv_path = os.path.join(args.out, base + ".csv")
    meta_path = os.path.join(args.out, base + ".meta.json")
    write_census_csv(table, csv_path)
    write_census_metadata(table, os.path.basename(csv_path), digest, meta_path)
    k_star, best = mode_k(table)
    print(f"census: x={args.x} f={tag} total={table.total()} mode_k={k_star} mode_count={best}")
    print(f"wrote {csv_path}")
    print(f"wrote {meta_path}")
    return 0


def cmd_construct(args: argparse.Namespace) -> int:
    tag = F_FLAG[args.f]
    pset = _build_set(args)
    g = build_g(args.x, pset, tag, args.segment_size, args.threads)
    payload = {"command": "construct", "x": args.x, "f": tag, **_set_payload(args)}
    digest = config_hash(payload)
    set_path = os.path.join(args.out, "set.json")
    g_path = os.path.join(args.out, "g.json")
    set_doc = pset.to_json_dict()
    set_doc["config_hash"] = digest
    _write_json(set_path, set_doc)
    g_doc = g.to_json_dict()
    g_doc["config_hash"] = digest
    _write_json(g_path, g_doc)
    print(f"set: {list(pset.members)}")
    print(f"g table: {g.table}")
    print(f"wrote {set_path}")
    print(f"wrote {g_path}")
    return 0


def cmd_count(args: argparse.Namespace) -> int:
    tag = F_FLAG[args.f]
    g, _, g_payload = _resolve_g(args, args.x, tag)
    value = coincidence_count(args.x, tag, g, args.segment_size, args.threads)
    payload = {"command": "count", "x": args.x, "f": tag, **g_payload}
    digest = config_hash(payload)
    out_path = os.path.join(args.out, f"count_{args.f}_x{args.x}.json")
    _write_json(
        out_path,
        {"x": args.x, "f": tag, "E": value, "g": g.to_json_dict(), "config_hash": digest},
    )
    print(f"E = {value}")
    print(f"wrote {out_path}")
    return 0


def cmd_certificate(args: argparse.Namespace) -> int:
    tag = F_FLAG[args.f]
    g, pset, g_payload = _resolve_g(args, args.x, tag)
    if pset is None or not pset.members:
        raise ValueError("certificate requires a nonempty prime set (via --g or set flags)")
    l_count, checked = certificate_count(args.x, pset, g, tag, args.segment_size, args.threads)
    payload = {"command": "certificate", "x": args.x, "f": tag, **g_payload}
    digest = config_hash(payload)
    out_path = os.path.join(args.out, f"certificate_{args.f}_x{args.x}.json")
    _write_json(
        out_path,
        {
            "x": args.x,
            "f": tag,
            "L": l_count,
            "witnesses_checked": checked,
            "g": g.to_json_dict(),
            "config_hash": digest,
        },
    )
    print(f"L = {l_count} (witnesses checked: {checked})")
    print(f"wrote {out_path}")
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    tag = F_FLAG[args.f]
    grid = _parse_grid(args.grid)
    csv_path = os.path.join(args.out, "report.csv")
    json_path = os.path.join(args.out, "report.json")
    if not grid:
        payload = {"command": "report", "grid": [], "f": tag, "eps": args.eps}
        digest = config_hash(payload)
        _write_text(csv_path, "x,f,E,L,loglogx,eps,ratio_E,ratio_L\n")
        _write_json(json_path, {"f": tag, "eps": args.eps, "rows": [], "config_hash": digest})
        print("empty grid: wrote header-only report")
        print(f"wrote {csv_path}")
        print(f"wrote {json_path}")
        return 0
    g, pset, g_payload = _resolve_g(args, max(grid), tag)
    report = growth_report(grid, args.eps, tag, pset, g, args.segment_size, args.threads)
    payload = {
        "command": "report",
        "grid": sorted(set(grid)),
        "f": tag,
        "eps": args.eps,
        **g_payload,
    }
    digest = config_hash(payload)
    write_report_csv(report, csv_path)
    write_report_json(report, digest, json_path)
    for row in report.rows:
        print(
            f"x={row.x} E={row.e_count} L={row.l_count} "
            f"ratio_E={row.ratio_e:.6f} ratio_L={row.ratio_l:.6f}"
        )
    print(f"wrote {csv_path}")
    print(f"wrote {json_path}")
    return 0


def cmd_phi(args: argparse.Namespace) -> int:
    tag = F_FLAG[args.f]
    diag = phi_diagnostics(args.x, tag, segment_size=args.segment_size, threads=args.threads)
    payload = {"command": "phi", "x": args.x, "f": tag}
    digest = config_hash(payload)
    out_path = os.path.join(args.out, f"phi_{args.f}_x{args.x}.json")
    _write_json(out_path, phi_json_dict(diag, digest))
    print(
        f"A = {diag.a_sum!r}, B = {diag.b_sum!r}, phi = {diag.phi!r}, "
        f"max_level_count = {diag.max_level_count}, K = {diag.k_of_x!r}"
    )
    print(f"wrote {out_path}")
    return 0


def _verify_checks(args: argparse.Namespace) -> list[tuple[str, bool, str]]:
    x = args.x
    seg = args.segment_size
    threads = args.threads
    checks: list[tuple[str, bool, str]] = []

    # Sieve counts against per-n trial division.
    span = min(x, 10_000)
    fc = sieve_census(1, span + 1, max(seg, 64), threads)
    ok = True
    for n in range(1, span + 1):
        fs = factorize(n)
        if fc.omega_of(n) != len(set(fs)) or fc.big_omega_of(n) != len(fs):
            ok = False
            break
    checks.append(("sieve-vs-factorization", ok, f"all n in [1, {span}]"))

    # Unrestricted censuses partition 1..x.
    t_omega = census(x, "omega", segment_size=seg, threads=threads)
    t_big = census(x, "big_omega", segment_size=seg, threads=threads)
    ok = t_omega.total() == x and t_big.total() == x
    checks.append(("census-partition", ok, f"totals at x={x}"))

    # Known small values.
    t100 = census(100, "omega")
    e100 = coincidence_count(100, "big_omega", GFunction.identity())
    ok = t100.get(1) == 35 and e100 == 25
    checks.append(("level-counts-at-100", ok, "35 one-prime levels, 25 identity matches"))

    # Restricted census totals match the coprime count.
    pset = power_prime_set(2.0, 5)
    t_res = census(x, "big_omega", pset, seg, threads)
    cc = coprime_count(x, pset, seg, threads)
    ok = t_res.total() == cc
    checks.append(("restricted-partition", ok, f"coprime total {cc}"))

    # The two coprime-count routes agree.
    y = min(x, 100_000)
    ok = coprime_count(y, pset, seg, threads) == coprime_count_inclusion_exclusion(y, pset)
    checks.append(("coprime-dual-route", ok, f"y={y}"))

    # Certificate soundness end to end.
    g = build_g(x, pset, "big_omega", seg, threads)
    l_count, checked = certificate_count(x, pset, g, "big_omega", seg, threads)
    e_count = coincidence_count(x, "big_omega", g, seg, threads)
    ok = l_count <= e_count and checked == l_count and l_count > 0
    checks.append(
        ("certificate-soundness", ok, f"L={l_count} <= E={e_count}, checked={checked}")
    )

    # g is strongly multiplicative on a deterministic sample.
    rng = random.Random(20260819)
    ok = True
    for _ in range(2000):
        entry = rng.choice(g.entries)
        m = rng.randrange(1, 100_000)
        a = rng.randrange(1, 5)
        if g.value(entry.prime**a * m) != g.value(entry.prime * m):
            ok = False
            break
        u = rng.randrange(1, 100_000)
        v = rng.randrange(1, 100_000)
        if math.gcd(u, v) == 1 and g.value(u * v) != g.value(u) * g.value(v):
            ok = False
            break
    checks.append(("strong-multiplicativity", ok, "2000 sampled identities"))

    # Window mass never beats level count times the max level.
    if x >= 16:
        window = concentration_interval(x, 0.1)
        mass = levels_in_interval(t_omega, window)
        k_lo = max(math.ceil(window.lo), 0)
        k_hi = math.floor(window.hi)
        n_levels = max(k_hi - k_lo + 1, 0)
        peak = max(
            (t_omega.get(k) for k in range(k_lo, k_hi + 1)),
            default=0,
        )
        ok = mass <= n_levels * peak
        checks.append(("pigeonhole-window", ok, f"mass {mass} <= {n_levels} * {peak}"))

    # Optional g file integrity: reparse and rebuild from provenance.
    if args.g:
        try:
            loaded = _load_g(args.g)
            if loaded.x is None or loaded.prime_set is None:
                raise ValueError("g file lacks construction provenance")
            rebuilt = build_g(loaded.x, loaded.prime_set, loaded.f_tag, seg, threads)
            ok = rebuilt.entries == loaded.entries
            detail = "table matches rebuild" if ok else "table differs from rebuild"
        except (OSError, ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
            ok = False
            detail = f"unreadable or inconsistent: {exc}"
        checks.append(("g-file-integrity", ok, detail))

    return checks


def cmd_verify(args: argparse.Namespace) -> int:
    checks = _verify_checks(args)
    failed = 0
    for name, ok, detail in checks:
        mark = " ok " if ok else "FAIL"
        print(f"[{mark}] {name}: {detail}")
        if not ok:
            failed += 1
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return 0 if failed == 0 else 1


def _add_common(p: argparse.ArgumentParser, with_x: bool = True) -> None:
    if with_x:
        p.add_argument("--x", type=int, required=True, help="inclusive upper bound")
    p.add_argument("--segment-size", type=int, default=DEFAULT_SEGMENT_SIZE,
                   help="sieve chunk length (>= 64)")
    p.add_argument("--threads", type=int, default=1,
                   help="worker threads; results do not depend on this")
    p.add_argument("--out", default=".", help="output directory")


def _add_set_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--set", choices=("paper", "power"), default="power",
                   help="prime-set rule: threshold j**(1+delta) from 2, or odd j**param")
    p.add_argument("--param", type=float, default=None,
                   help="exponent for --set power (default 2)")
    p.add_argument("--delta", type=float, default=None,
                   help="threshold exponent offset for --set paper (default 0.5)")
    p.add_argument("--count", type=int, default=None, help="number of members (default 5)")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="omega-proximity",
        description="Factor-count censuses and coincidence counts for constructed "
        "strongly multiplicative functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("census", help="level census of omega or big_omega up to x")
    _add_common(p)
    p.add_argument("--f", choices=sorted(F_FLAG), default="omega")
    p.add_argument("--restrict", action="store_true",
                   help="count only integers coprime to the constructed set")
    _add_set_flags(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("construct", help="build the prime set and its g function")
    _add_common(p)
    p.add_argument("--f", choices=sorted(F_FLAG), default="bigomega")
    _add_set_flags(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("count", help="coincidence count E = #{n <= x : f(n) = g(n)}")
    _add_common(p)
    p.add_argument("--f", choices=sorted(F_FLAG), default="bigomega")
    p.add_argument("--g", default=None, help="g JSON from construct (else built inline)")
    _add_set_flags(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("certificate", help="certified lower bound L with witness check")
    _add_common(p)
    p.add_argument("--f", choices=sorted(F_FLAG), default="bigomega")
    p.add_argument("--g", default=None, help="g JSON from construct (else built inline)")
    _add_set_flags(p)
    p.set_defaults(func=cmd_certificate)

    p = sub.add_parser("report", help="growth ratios across a grid of x")
    _add_common(p, with_x=False)
    p.add_argument("--grid", default=DEFAULT_GRID,
                   help="comma-separated x values (empty for header-only output)")
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--f", choices=sorted(F_FLAG), default="bigomega")
    p.add_argument("--g", default=None, help="g JSON from construct (else built at max x)")
    _add_set_flags(p)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("verify", help="run the self-check suite; exit 1 on any failure")
    p.add_argument("--x", type=int, default=10_000, help="scale for the checks")
    p.add_argument("--g", default=None, help="also validate this g JSON file")
    p.add_argument("--segment-size", type=int, default=DEFAULT_SEGMENT_SIZE)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("phi", help="prime-power moment sums and busiest level at x")
    _add_common(p)
    p.add_argument("--f", choices=sorted(F_FLAG), default="omega")
    p.set_defaults(func=cmd_phi)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
