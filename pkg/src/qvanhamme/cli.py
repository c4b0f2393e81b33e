"""Command-line front end.

    qvanhamme verify --claim mainth --n 3 --d 2 --r 1 --M m
    qvanhamme sweep --claim all --n-range 2..8 --d-range 1..3 --r-range -2..3 --out report.json
    qvanhamme padic --claim sun --p 5 --M half
    qvanhamme report report.json

Exit codes: 0 all pass, 1 at least one FAIL, 2 usage/parameter error (and, for
``verify``/``padic``, an INAPPLICABLE verdict).
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from . import __version__
from .claims import ClaimId, run_claim
from .congruence import Status, Verdict
from .errors import InvalidParams, NotPAdicInteger
from .padic import (
    is_prime,
    verify_corollary,
    verify_euler_bridge,
    verify_guowang,
    verify_sun,
    verify_vanhamme,
)
from .q_objects import MVariant

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

PADIC_CLAIMS = ("vanhamme", "sun", "guowang", "corollary", "bridge")
Q_CLAIMS = tuple(c.value for c in ClaimId)
NDR_CLAIMS = (
    "sym3",
    "modphi2",
    "liangduan",
    "truncon",
    "denoms",
    "fmm",
    "gm1k",
    "jackson_trunc",
    "telescoping",
    "mainth",
)
NEEDS_N_GT_1 = {"modphi2", "liangduan", "denoms", "fmm", "gm1k"}
DEFAULT_ALPHAS = ("1", "1/2", "1/3", "2/3", "3/4")
_PADIC_KEYS = {
    "vanhamme": {"variant"},
    "sun": {"M"},
    "guowang": {"alpha", "M"},
    "corollary": {"s", "d", "r", "M"},
    "bridge": {"d", "r"},
}
RECORD_FIELDS = ("claim", "n", "d", "r", "M", "k", "p", "s", "alpha", "variant")


# ---------------------------------------------------------------------------
# parsing helpers


def parse_range(text: str) -> tuple[int, int]:
    """'A..B' (inclusive) or a single integer."""
    m = re.fullmatch(r"\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?", text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) is not None else lo
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected NUM/DEN, got {text!r}") from None


_RANGE_FLAGS = {"--n-range", "--d-range", "--r-range"}
_NEG_VALUE = re.compile(r"-\d+(\.\.-?\d+)?")


def _normalize_argv(argv: list[str]) -> list[str]:
    # argparse refuses values such as "-2..3" after a flag; glue them on with "="
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _RANGE_FLAGS | {"--r"} and i + 1 < len(argv) and _NEG_VALUE.fullmatch(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


# ---------------------------------------------------------------------------
# records


def make_record(case: dict, verdict: Verdict | None = None, invalid: str | None = None) -> dict:
    rec = {key: case.get(key) for key in RECORD_FIELDS}
    if invalid is not None:
        rec.update(status="invalid", witness=invalid, elapsed_ms=0.0)
    else:
        rec.update(
            status=verdict.status.value,
            witness=verdict.witness,
            elapsed_ms=round(verdict.elapsed * 1000.0, 3),
        )
    return rec


def run_case(case: dict) -> dict:
    """Evaluate one (claim, params) case; worker entry point for the sweep pool."""
    claim = case["claim"]
    try:
        if claim in PADIC_CLAIMS:
            verdict = _run_padic(case)
        else:
            verdict = run_claim(
                claim,
                n=case.get("n"),
                d=case.get("d"),
                r=case.get("r"),
                M=case.get("M"),
                k=case.get("k"),
                kmax=case.get("kmax"),
                lmax=case.get("lmax"),
                strict_denoms=case.get("strict_denoms", False),
            )
    except (InvalidParams, NotPAdicInteger) as exc:
        return make_record(case, invalid=str(exc))
    return make_record(case, verdict)


def _run_padic(case: dict) -> Verdict:
    claim, p = case["claim"], case.get("p")
    if p is None:
        raise InvalidParams(f"{claim} needs --p or --p-list")
    if not is_prime(p):
        raise InvalidParams(f"p = {p} is not prime")
    M = case.get("M") or "m"
    if claim == "vanhamme":
        return verify_vanhamme(p, case.get("variant") or "B2")
    if claim == "sun":
        return verify_sun(p, M)
    if claim == "guowang":
        alpha = case.get("alpha")
        if alpha is None:
            raise InvalidParams("guowang needs --alpha")
        return verify_guowang(p, Fraction(alpha), M)
    for key in ("d", "r"):
        if case.get(key) is None:
            raise InvalidParams(f"{claim} needs --{key}")
    if claim == "corollary":
        return verify_corollary(p, case.get("s") or 1, case["d"], case["r"], M)
    if claim == "bridge":
        return verify_euler_bridge(p, case["d"], case["r"])
    raise InvalidParams(f"unknown p-adic claim {claim!r}")


def _sort_key(rec: dict):
    key = [rec["claim"]]
    for name in RECORD_FIELDS[1:]:
        v = rec.get(name)
        if v is None:
            key.append((0, 0))
        elif name == "alpha":
            key.append((1, Fraction(v)))
        elif isinstance(v, str):
            key.append((2, v))
        else:
            key.append((1, v))
    return key


def count_records(records: list[dict]) -> dict:
    counts = {"pass": 0, "fail": 0, "inapplicable": 0, "invalid": 0}
    for rec in records:
        counts[rec["status"]] += 1
    return counts


def exit_code_for(statuses) -> int:
    """0 iff no FAIL; sweeps ignore inapplicable/invalid records."""
    return EXIT_FAIL if any(s == "fail" for s in statuses) else EXIT_PASS


def format_record(rec: dict) -> str:
    params = ", ".join(f"{k}={rec[k]}" for k in RECORD_FIELDS[1:] if rec.get(k) is not None)
    line = f"{rec['claim']}({params}): {rec['status'].upper()}"
    if rec.get("witness"):
        line += f" [{rec['witness']}]"
    return line + f" ({rec['elapsed_ms']:.1f} ms)"


# ---------------------------------------------------------------------------
# sweep


@dataclass
class SweepConfig:
    claims: list = field(default_factory=lambda: ["all"])
    n_range: tuple = (2, 8)
    d_range: tuple = (1, 3)
    r_range: tuple = (-2, 3)
    M_variants: list = field(default_factory=lambda: ["m", "full"])
    primes: list = field(default_factory=list)
    s_values: list = field(default_factory=lambda: [1])
    alphas: list = field(default_factory=lambda: list(DEFAULT_ALPHAS))
    kmax: int = 4
    jobs: int = 1
    out: str | None = None
    strict_denoms: bool = False

    def __post_init__(self):
        for name in ("n_range", "d_range", "r_range"):
            lo, hi = getattr(self, name)
            if hi < lo:
                raise InvalidParams(f"{name} is empty")
        if self.jobs < 1:
            raise InvalidParams("parallelism must be >= 1")

    def selected(self) -> list[str]:
        names = []
        for c in self.claims:
            if c == "all":
                names.extend(Q_CLAIMS)
                if self.primes:
                    names.extend(PADIC_CLAIMS)
            elif c in PADIC_CLAIMS:
                names.append(c)
            else:
                names.append(ClaimId.parse(c).value)
        return sorted(set(names), key=names.index)


def build_cases(cfg: SweepConfig) -> tuple[list[dict], int]:
    """All (claim, params) cases of a sweep plus the number of skipped combinations."""
    cases: list[dict] = []
    skipped = 0
    ns = range(cfg.n_range[0], cfg.n_range[1] + 1)
    ds = range(cfg.d_range[0], cfg.d_range[1] + 1)
    rs = range(cfg.r_range[0], cfg.r_range[1] + 1)
    for claim in cfg.selected():
        if claim in NDR_CLAIMS:
            for n in ns:
                for d in ds:
                    for r in rs:
                        if (
                            n < 1
                            or d < 1
                            or math.gcd(n, d) != 1
                            or math.gcd(r, d) != 1
                            or (claim in NEEDS_N_GT_1 and n < 2)
                        ):
                            skipped += 1
                            continue
                        base = {"claim": claim, "n": n, "d": d, "r": r}
                        if claim == "mainth":
                            cases.extend({**base, "M": M} for M in cfg.M_variants)
                        elif claim == "denoms":
                            cases.append({**base, "strict_denoms": cfg.strict_denoms})
                        else:
                            cases.append(base)
        elif claim in ("identity", "identity_rec"):
            for n in ns:
                if n < 1:
                    skipped += 1
                    continue
                cases.append({"claim": claim, "n": n})
        elif claim in ("guo2018", "guo2022"):
            for n in ns:
                if n < 3 or n % 2 == 0:
                    skipped += 1
                    continue
                if claim == "guo2022":
                    cases.extend({"claim": claim, "n": n, "M": M} for M in cfg.M_variants)
                else:
                    cases.append({"claim": claim, "n": n})
        elif claim == "wz_relation":
            for d in ds:
                for r in rs:
                    if d < 1 or math.gcd(r, d) != 1:
                        skipped += 1
                        continue
                    cases.append({"claim": claim, "d": d, "r": r, "kmax": cfg.kmax, "lmax": cfg.kmax})
        else:
            cases.extend(_padic_cases(claim, cfg, ds, rs))
    return cases, skipped


def _padic_cases(claim: str, cfg: SweepConfig, ds, rs) -> list[dict]:
    out = []
    for p in cfg.primes:
        if claim == "vanhamme":
            for variant, s in (("B2", 2), ("E2", 3), ("F2", 4)):
                if variant == "B2" or p % s == 1:
                    out.append({"claim": claim, "p": p, "variant": variant})
        elif claim == "sun":
            out.extend({"claim": claim, "p": p, "M": M} for M in cfg.M_variants)
        elif claim == "guowang":
            for alpha in cfg.alphas:
                out.extend({"claim": claim, "p": p, "alpha": str(alpha), "M": M} for M in cfg.M_variants)
        else:
            for d in ds:
                for r in rs:
                    if d < 1 or d % p == 0 or math.gcd(r, d) != 1:
                        continue
                    if claim == "bridge":
                        out.append({"claim": claim, "p": p, "d": d, "r": r})
                        continue
                    for s in cfg.s_values:
                        out.extend(
                            {"claim": claim, "p": p, "s": s, "d": d, "r": r, "M": M}
                            for M in cfg.M_variants
                        )
    return out


def run_sweep(cfg: SweepConfig) -> dict:
    cases, skipped = build_cases(cfg)
    if cfg.jobs > 1 and len(cases) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            records = list(pool.map(run_case, cases, chunksize=4))
    else:
        records = [run_case(c) for c in cases]
    records.sort(key=_sort_key)
    config = asdict(cfg)
    config["claims"] = cfg.selected()
    return {
        "tool": "qvanhamme",
        "version": __version__,
        "generated": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "config": config,
        "counts": count_records(records),
        "skipped": skipped,
        "records": records,
    }


# ---------------------------------------------------------------------------
# commands


def _emit(rec: dict, fmt: str):
    if fmt == "json":
        print(json.dumps(rec))
    else:
        print(format_record(rec))


def _single_exit(status: str) -> int:
    return {"pass": EXIT_PASS, "fail": EXIT_FAIL}.get(status, EXIT_USAGE)


def cmd_verify(args) -> int:
    claim = ClaimId.parse(args.claim).value
    case = {
        "claim": claim,
        "n": args.n,
        "d": args.d,
        "r": args.r,
        "M": args.M if claim in ("mainth", "guo2022") else None,
        "k": args.k,
        "kmax": args.kmax,
        "lmax": args.lmax,
        "strict_denoms": args.strict_denoms,
    }
    rec = run_case(case)
    _emit(rec, args.format)
    return _single_exit(rec["status"])


def cmd_padic(args) -> int:
    primes = args.p_list if args.p_list else ([args.p] if args.p is not None else [])
    if not primes:
        raise InvalidParams("padic needs --p or --p-list")
    code = EXIT_PASS
    for p in primes:
        case = {
            "claim": args.claim,
            "p": p,
            "M": args.M,
            "s": args.s,
            "d": args.d,
            "r": args.r,
            "alpha": str(args.alpha) if args.alpha is not None else None,
            "variant": args.variant,
        }
        for key in ("M", "s", "d", "r", "alpha", "variant"):
            if key not in _PADIC_KEYS[args.claim]:
                case[key] = None
        rec = run_case(case)
        _emit(rec, args.format)
        code = max(code, _single_exit(rec["status"]))
    return code


def cmd_sweep(args) -> int:
    claims = [c.strip() for c in ",".join(args.claim).split(",") if c.strip()] or ["all"]
    M = ["m", "full"] if args.M in (None, "both") else [MVariant.parse(args.M).value]
    cfg = SweepConfig(
        claims=claims,
        n_range=args.n_range,
        d_range=args.d_range,
        r_range=args.r_range,
        M_variants=M,
        primes=args.p_list or ([args.p] if args.p else []),
        s_values=args.s_list or [args.s or 1],
        alphas=[str(a) for a in args.alpha_list] if args.alpha_list else list(DEFAULT_ALPHAS),
        kmax=args.kmax or 4,
        jobs=args.jobs,
        out=args.out,
        strict_denoms=args.strict_denoms,
    )
    cfg.selected()  # validate claim names before any work
    if args.out:
        out = Path(args.out)
        if not out.parent.exists() or (out.exists() and out.is_dir()):
            print(f"error: cannot write report to {out}", file=sys.stderr)
            return EXIT_USAGE
    report = run_sweep(cfg)
    if args.out:
        try:
            Path(args.out).write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
        except OSError as exc:
            print(f"error: cannot write report: {exc}", file=sys.stderr)
            return EXIT_USAGE
    _print_summary(report, args.format, verbose=not args.out)
    return exit_code_for(r["status"] for r in report["records"])


def _print_summary(report: dict, fmt: str, verbose: bool = False):
    if fmt == "json":
        print(json.dumps(report if verbose else {"counts": report["counts"], "skipped": report["skipped"]}))
        return
    for rec in report["records"]:
        if verbose or rec["status"] not in ("pass", "inapplicable"):
            print(format_record(rec))
    c = report["counts"]
    print(
        f"{len(report['records'])} records: {c['pass']} pass, {c['fail']} fail, "
        f"{c['inapplicable']} inapplicable, {c['invalid']} invalid; {report['skipped']} skipped"
    )


def cmd_report(args) -> int:
    try:
        report = json.loads(Path(args.path).read_text(encoding="utf-8"))
        records = report["records"]
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: cannot read report {args.path}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report.setdefault("skipped", 0)
    report["counts"] = count_records(records)
    _print_summary(report, args.format, verbose=args.all)
    return exit_code_for(r["status"] for r in records)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qvanhamme", description="Exact checks of cubic q-supercongruences and their p-adic counterparts."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    v = sub.add_parser("verify", help="verify one claim at one parameter set")
    v.add_argument("--claim", required=True, help=", ".join(Q_CLAIMS))
    v.add_argument("--n", type=int)
    v.add_argument("--d", type=int)
    v.add_argument("--r", type=int)
    v.add_argument("--M", default="m", help="m (truncate at m) or full (at n-1)")
    v.add_argument("--k", type=int, help="single k for sym3")
    v.add_argument("--kmax", type=int, help="wz_relation k-range [0, kmax]")
    v.add_argument("--lmax", type=int, help="wz_relation l-range [1, lmax]")
    v.add_argument("--strict-denoms", action="store_true")
    common(v)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="run claims over parameter ranges and write a JSON report")
    s.add_argument("--claim", action="append", default=[], help="claim names, comma separated, or 'all'")
    s.add_argument("--n-range", type=parse_range, default=(2, 8))
    s.add_argument("--d-range", type=parse_range, default=(1, 3))
    s.add_argument("--r-range", type=parse_range, default=(-2, 3))
    s.add_argument("--M", choices=("m", "full", "both"), default="both")
    s.add_argument("--p", type=int)
    s.add_argument("--p-list", type=parse_int_list)
    s.add_argument("--s", type=int)
    s.add_argument("--s-list", type=parse_int_list)
    s.add_argument("--alpha-list", type=lambda t: [parse_fraction(x) for x in t.split(",")])
    s.add_argument("--kmax", type=int)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out")
    s.add_argument("--strict-denoms", action="store_true")
    common(s)
    s.set_defaults(func=cmd_sweep)

    pa = sub.add_parser("padic", help="numeric p-adic checks at concrete primes")
    pa.add_argument("--claim", required=True, choices=PADIC_CLAIMS)
    pa.add_argument("--p", type=int)
    pa.add_argument("--p-list", type=parse_int_list)
    pa.add_argument("--variant", choices=("B2", "E2", "F2"), default="B2")
    pa.add_argument("--M", default="m", help="m/half or full")
    pa.add_argument("--s", type=int, default=1)
    pa.add_argument("--d", type=int)
    pa.add_argument("--r", type=int)
    pa.add_argument("--alpha", type=parse_fraction)
    common(pa)
    pa.set_defaults(func=cmd_padic)

    rp = sub.add_parser("report", help="summarize a sweep report")
    rp.add_argument("path")
    rp.add_argument("--all", action="store_true", help="list every record")
    common(rp)
    rp.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = _normalize_argv(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_PASS
    try:
        return args.func(args)
    except InvalidParams as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
