"""``altorbits`` command line.

Exit status: 0 when the computation succeeded and the property asked about
holds, 1 when it was computed and fails (not complete, does not flip, a
law is violated), 2 for usage errors and exceeded caps.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import _accel, flip, freegroupoid, smithloop
from .dynsys import DEFAULT_MAX_N, OrbitLimitError, Pair, is_complete, orbit, shape
from .numtheory import NumberTheoryError

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

FORMATS = ("text", "json", "dot")


class UsageError(Exception):
    pass


def _pair_str(p: Pair) -> str:
    return f"({p.r},{p.s})"


# --- orbit -------------------------------------------------------------

def orbit_to_dict(o) -> dict:
    sh = shape(o)
    return {
        "n": o.n,
        "nodes": [[p.r, p.s] for p in sorted(o.nodes)],
        "edges": [[[u.r, u.s], [v.r, v.s]] for u, v in o.edges()],
        "bottom": [[p.r, p.s] for p in o.bottom],
        "shape": {
            "size": sh.total_size,
            "bottom_size": sh.bottom_size,
            "a": sh.a,
            "singleton_bottom": sh.singleton_bottom,
            "predicted_size": sh.predicted_size,
        },
    }


def orbit_to_dot(o) -> str:
    bottom = set(o.bottom)
    lines = [f'digraph "orbit_{o.n}_{o.bottom[0].r}" {{', "  rankdir=BT;"]
    for p in sorted(o.nodes):
        extra = ", peripheries=2" if p in bottom else ""
        lines.append(f'  "{_pair_str(p)}" [label="{_pair_str(p)} g={p.depth}"{extra}];')
    for u, v in o.edges():
        style = " [style=bold]" if u in bottom and v in bottom else ""
        lines.append(f'  "{_pair_str(u)}" -> "{_pair_str(v)}"{style};')
    lines.append("}")
    return "\n".join(lines)


def orbit_to_text(o) -> str:
    sh = shape(o)
    bottom = set(o.bottom)
    out = [f"orbit of sum n={o.n}: {sh.total_size} node(s)"]
    if sh.singleton_bottom:
        out.append(f"bottom: fixed point {_pair_str(o.bottom[0])}")
    else:
        cyc = " -> ".join(_pair_str(p) for p in o.bottom)
        out.append(f"bottom: cycle of length {sh.bottom_size}: {cyc} -> {_pair_str(o.bottom[0])}")
    out.append(f"shape: a={sh.a}, size {sh.total_size}, predicted {sh.predicted_size}")
    by_depth: dict[int, list[Pair]] = {}
    for p in o.nodes:
        by_depth.setdefault(p.depth, []).append(p)
    for g in sorted(by_depth, reverse=True):
        pts = " ".join(_pair_str(p) + ("*" if p in bottom else "") for p in sorted(by_depth[g]))
        out.append(f"  depth {g}: {pts}")
    out.append("(* marks the bottom)")
    return "\n".join(out)


def cmd_orbit(args) -> tuple[int, str]:
    o = orbit(Pair(args.r, args.s), max_n=args.max_n)
    if args.format == "json":
        return EXIT_OK, _json(orbit_to_dict(o))
    if args.format == "dot":
        return EXIT_OK, orbit_to_dot(o)
    return EXIT_OK, orbit_to_text(o)


# --- flip --------------------------------------------------------------

def _brute(p: Pair, max_n: int) -> tuple[bool, str]:
    if p.n <= max_n:
        return flip.flips_bruteforce(p, max_n=max_n), "orbit_enumeration"
    return flip.flips_cycle_walk(p), "cycle_walk"


def cmd_flip(args) -> tuple[int, str]:
    _no_dot(args)
    p = Pair(args.r, args.s)
    data: dict = {"input": [p.r, p.s]}
    verdicts = []
    if args.method in ("fast", "both"):
        report = flip.flips_fast(p)
        data["fast"] = report.to_dict()
        verdicts.append(report.flips)
    if args.method in ("brute", "both"):
        res, how = _brute(p, args.max_n)
        data["brute"] = {"flips": res, "method": how}
        verdicts.append(res)
    agree = len(set(verdicts)) == 1
    data["agree"] = agree
    data["flips"] = verdicts[0]

    if args.format == "json":
        text = _json(data)
    else:
        word = "flips" if data["flips"] else "does not flip"
        lines = [f"{_pair_str(p)} {word}" if agree else f"{_pair_str(p)}: METHODS DISAGREE"]
        if "fast" in data:
            lines.append(f"fast: {'flips' if data['fast']['flips'] else 'does not flip'} "
                         f"[{data['fast']['method']}]")
            if data["fast"]["odd_core"] is not None:
                r0, s0 = data["fast"]["odd_core"]
                lines.append(f"  odd core: ({r0},{s0})")
            for step in data["fast"]["trace"]:
                lines.append(f"  {step['rule']}: {step['detail']}")
        if "brute" in data:
            lines.append(f"brute: {'flips' if data['brute']['flips'] else 'does not flip'} "
                         f"[{data['brute']['method']}]")
        text = "\n".join(lines)
    if not agree:
        return EXIT_FAIL, text
    return (EXIT_OK if data["flips"] else EXIT_FAIL), text


# --- complete ----------------------------------------------------------

def cmd_complete(args) -> tuple[int, str]:
    _no_dot(args)
    n = args.n
    if n < 2:
        raise UsageError("n must be >= 2")
    fast = is_complete(n)
    data = {"n": n, "complete": fast}
    if n <= args.max_n:
        size = len(orbit(Pair(1, n - 1), max_n=args.max_n))
        data["orbit_of_(1,n-1)"] = size
        data["brute_complete"] = size == n - 1
    if args.format == "json":
        text = _json(data)
    else:
        text = f"{n} is {'complete' if fast else 'not complete'}"
        if "brute_complete" in data:
            text += f"\n|O(1,{n - 1})| = {data['orbit_of_(1,n-1)']} (n-1 = {n - 1})"
    if data.get("brute_complete", fast) != fast:
        return EXIT_FAIL, text + "\nfast predicate and enumeration disagree"
    return (EXIT_OK if fast else EXIT_FAIL), text


# --- power -------------------------------------------------------------

def cmd_power(args) -> tuple[int, str]:
    _no_dot(args)
    rep = freegroupoid.class_partition(args.n)
    data = {
        "n": rep.n,
        "words": freegroupoid.catalan(rep.n),
        "class_count": rep.class_count,
        "class_sizes": list(rep.class_sizes),
        "well_defined": rep.well_defined,
    }
    if args.format == "json":
        text = _json(data)
    else:
        hist = ", ".join(f"{k}x{v}" for k, v in rep.size_histogram().items())
        verdict = "well-defined" if rep.well_defined else "not well-defined"
        text = (f"x^{rep.n}: {verdict}\n"
                f"{data['words']} bracketing(s) in {rep.class_count} class(es); "
                f"sizes (size x count): {hist}")
    return (EXIT_OK if rep.well_defined else EXIT_FAIL), text


# --- nonflip-window ----------------------------------------------------

def cmd_nonflip_window(args) -> tuple[int, str]:
    _no_dot(args)
    M = args.M
    if M < 1:
        raise UsageError("M must be positive")
    primes = flip.nonflip_primes(M)
    r = flip.nonflip_window(M, verify=True)
    checks = []
    for s in range(1, M + 1):
        p = Pair(r, s)
        row = {"pair": [r, s], "fast": flip.flips_fast(p).flips}
        if not args.no_brute:
            row["brute"], row["brute_method"] = _brute(p, args.max_n)
        checks.append(row)
    ok = not any(c["fast"] or c.get("brute", False) for c in checks)
    data = {"M": M, "primes": primes, "r": r, "checks": checks, "none_flip": ok}
    if args.format == "json":
        text = _json(data)
    else:
        lines = [f"r = {r}", f"primes (7 mod 8): {', '.join(map(str, primes))}"]
        for c in checks:
            rr, ss = c["pair"]
            line = f"  ({rr},{ss}): fast {'flips' if c['fast'] else 'no flip'}"
            if "brute" in c:
                line += f", brute {'flips' if c['brute'] else 'no flip'}"
            lines.append(line)
        lines.append("none of the pairs flips" if ok else "WINDOW BROKEN")
        text = "\n".join(lines)
    return (EXIT_OK if ok else EXIT_FAIL), text


# --- loop-check --------------------------------------------------------

def cmd_loop_check(args) -> tuple[int, str]:
    _no_dot(args)
    G = smithloop.load_spec(args.spec_file)
    report = smithloop.verify_laws_window(G, args.n, args.b)
    x0 = smithloop.x(G, 0, 1)
    one = smithloop.identity(G)
    left_inv = smithloop.left_div(x0, one, G)
    right_inv = smithloop.right_div(one, x0, G)
    two_sided = smithloop.two_sided_inverse(x0, G)
    powers_ok = all(len(smithloop.power_all_bracketings(x0, k, G)) == 1
                    for k in range(1, smithloop.MAX_BRACKETING_POWER + 1))
    data = report.to_dict()
    data["x0"] = {
        "left_inverse": str(right_inv),
        "right_inverse": str(left_inv),
        "two_sided_inverse": None if two_sided is None else str(two_sided),
    }
    data["powers_well_defined_up_to"] = smithloop.MAX_BRACKETING_POWER if powers_ok else None
    ok = report.ok and powers_ok
    if args.format == "json":
        text = _json(data)
    else:
        lines = [f"window: {report.window_size} elements (exponent <= {args.n}, |coeff| <= {args.b})"]
        for law in sorted(report.checked):
            status = "FAIL" if law in report.failures else "ok"
            lines.append(f"  {law}: {status} ({report.checked[law]} checked)")
            for ex in report.failures.get(law, []):
                lines.append(f"    e.g. {ex}")
        lines.append("all laws hold" if report.ok else "LAWS VIOLATED")
        lines.append(f"x0 = {x0}: y·x0 = 1 for y = {right_inv}; x0·y = 1 for y = {left_inv}")
        lines.append("x0 has no two-sided inverse" if two_sided is None
                     else f"x0 has two-sided inverse {two_sided}")
        lines.append(f"powers of x0 bracketing-independent up to {smithloop.MAX_BRACKETING_POWER}: "
                     f"{'yes' if powers_ok else 'no'}")
        text = "\n".join(lines)
    return (EXIT_OK if ok else EXIT_FAIL), text


# --- plumbing ----------------------------------------------------------

def _json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False)


def _no_dot(args):
    if args.format == "dot":
        raise UsageError(f"--format dot is only available for 'orbit', not '{args.command}'")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    # the shared flags are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS,
                        help="output format (dot: orbit only)")
    common.add_argument("--max-n", type=_positive, default=argparse.SUPPRESS,
                        help=f"cap on r+s for orbit enumeration (default {DEFAULT_MAX_N})")

    parser = argparse.ArgumentParser(prog="altorbits", parents=[common],
                                     description="Orbits, flips and powers under the alternative laws.")
    parser.add_argument("--version", action="store_true", help="print version and kernel backend")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("orbit", parents=[common], help="enumerate the orbit of (r, s)")
    p.add_argument("r", type=_positive)
    p.add_argument("s", type=_positive)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("flip", parents=[common], help="decide whether (s, r) lies in the orbit of (r, s)")
    p.add_argument("r", type=_positive)
    p.add_argument("s", type=_positive)
    p.add_argument("--method", choices=("fast", "brute", "both"), default="fast")
    p.set_defaults(func=cmd_flip)

    p = sub.add_parser("complete", parents=[common], help="is every orbit of sum n full?")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_complete)

    p = sub.add_parser("power", parents=[common], help="are all bracketings of x^n equal?")
    p.add_argument("n", type=_positive)
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("nonflip-window", parents=[common],
                       help="r such that none of (r,1)..(r,M) flips")
    p.add_argument("M", type=_positive)
    p.add_argument("--no-brute", action="store_true", help="skip the brute-force confirmation")
    p.set_defaults(func=cmd_nonflip_window)

    p = sub.add_parser("loop-check", parents=[common], help="check the loop laws on a finite window")
    p.add_argument("spec_file")
    p.add_argument("--n", type=int, default=20, help="exponent bound (default 20)")
    p.add_argument("--b", type=int, default=4, help="coefficient bound (default 4)")
    p.set_defaults(func=cmd_loop_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.version:
        from . import __version__
        print(f"altorbits {__version__} (kernels: {_accel.backend_name()})")
        return EXIT_OK
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    args.format = getattr(args, "format", "text")
    args.max_n = getattr(args, "max_n", DEFAULT_MAX_N)
    try:
        code, text = args.func(args)
    except (UsageError, OrbitLimitError, freegroupoid.WordCapError, smithloop.LoopSpecError,
            NumberTheoryError, OSError) as exc:
        print(f"altorbits: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
