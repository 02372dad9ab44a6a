"""Command-line entry point: reproducible verification pipelines with JSON reports.

Subcommands: rack | cocycle | cover | twist-verify | cohomology | hilbert |
selfcheck.  Human summaries go to stdout; the machine-readable JSON report is
written to --out.  Identical configurations (including --seed) produce
byte-identical reports.  Exit codes: 0 success, 1 usage error, 2 failed
mathematical check, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import asdict, dataclass

from . import braided, cocycle as cocycle_mod, hilbert as hilbert_mod, rack as rack_mod, spincover
from .errors import DimensionCapError, OrbitTooLargeError

SCHEMA_VERSION = 1
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CHECK_FAILED = 2
EXIT_RESOURCE = 3

N_CAP = spincover.DEFAULT_N_CAP


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # argparse defaults to exit code 2; usage problems must exit 1 here
        self.print_usage(sys.stderr)
        raise UsageError(message)


@dataclass
class RunConfig:
    """Validated run parameters, echoed into every report.

    The output path is deliberately not part of the echoed config: reports
    must be byte-identical across runs that differ only in where they are
    written.
    """

    subcommand: str
    n: int | None = None
    max_degree: int | None = None
    mode: str | None = None
    seed: int | None = None
    dim_cap: int | None = None
    workers: int | None = None


def _dim_cap(args) -> int:
    cap = getattr(args, "dim_cap", None)
    if cap is None:
        env = os.environ.get("RACKTWIST_DIM_CAP")
        if env is not None:
            try:
                cap = int(env)
            except ValueError:
                raise UsageError(f"RACKTWIST_DIM_CAP is not an integer: {env!r}")
    if cap is None:
        cap = braided.DEFAULT_DIM_CAP
    if cap < 1:
        raise UsageError(f"dimension cap must be positive, got {cap}")
    return cap


def _workers(args) -> int:
    w = getattr(args, "workers", None)
    if w is None:
        w = os.cpu_count() or 1
    if w < 1:
        raise UsageError(f"worker count must be >= 1, got {w}")
    return w


def _write_report(report: dict, out: str | None) -> None:
    if out is None:
        return
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(text)


def _config_dict(cfg: RunConfig) -> dict:
    return asdict(cfg)


# ---------------------------------------------------------------- rack


def cmd_rack(args) -> int:
    if args.check is not None:
        r = rack_mod.load_rack(args.check)
        report_src = "file"
    else:
        if args.n is None:
            raise UsageError("rack: provide --n for a transposition rack or --check FILE")
        if args.n < 2:
            raise UsageError(f"rack: need n >= 2, got {args.n}")
        r = rack_mod.transposition_rack(args.n)
        report_src = f"x{args.n}"
    axioms = rack_mod.check_rack_axioms(r)
    indec = rack_mod.is_indecomposable(r) if axioms.ok else None
    cfg = RunConfig(subcommand="rack", n=args.n)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "rack",
        "config": _config_dict(cfg),
        "source": report_src,
        "rack": rack_mod.rack_to_dict(r),
        "axioms_ok": axioms.ok,
        "axiom_violation": None if axioms.ok else {"kind": axioms.kind, "witness": list(axioms.witness)},
        "indecomposable": indec,
        "ok": axioms.ok,
    }
    _write_report(report, args.out)
    print(f"rack {report_src}: size {r.size}, axioms {'ok' if axioms.ok else 'FAILED'}"
          + (f", indecomposable {indec}" if indec is not None else ""))
    if not axioms.ok:
        print(f"  violation: {axioms.kind} at {axioms.witness}")
        return EXIT_CHECK_FAILED
    return EXIT_OK


# ---------------------------------------------------------------- cocycle


def _builtin_cocycle(kind: str, n: int | None):
    """Cocycles by name: 'chi', '-1'/'minus1', or 'const:M:E' (needs --n)."""
    if kind in ("-1", "minus1"):
        if n is None:
            raise UsageError("cocycle: --n is required for built-in cocycles")
        return cocycle_mod.minus_one_cocycle(rack_mod.transposition_rack(n)), f"-1 on x{n}"
    if kind == "chi":
        if n is None:
            raise UsageError("cocycle: --n is required for built-in cocycles")
        if n < 3:
            raise UsageError(f"cocycle: chi needs n >= 3, got {n}")
        return cocycle_mod.chi_cocycle(n), f"chi on x{n}"
    if kind.startswith("const:"):
        parts = kind.split(":")
        if len(parts) != 3:
            raise UsageError("cocycle: const form is const:M:E")
        if n is None:
            raise UsageError("cocycle: --n is required for built-in cocycles")
        m, e = int(parts[1]), int(parts[2])
        return (
            cocycle_mod.constant_cocycle(rack_mod.transposition_rack(n), m, e),
            f"const zeta_{m}^{e} on x{n}",
        )
    raise UsageError(f"cocycle: unknown kind {kind!r}")


def cmd_cocycle(args) -> int:
    if args.check is not None:
        q = cocycle_mod.load_cocycle(args.check)
        label = args.check
    else:
        if args.kind is None:
            raise UsageError("cocycle: provide --kind or --check FILE")
        q, label = _builtin_cocycle(args.kind, args.n)
    verdict = cocycle_mod.check_cocycle(q)
    cfg = RunConfig(subcommand="cocycle", n=args.n)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "cocycle",
        "config": _config_dict(cfg),
        "cocycle": cocycle_mod.cocycle_to_dict(q),
        "label": label,
        "cocycle_ok": verdict.ok,
        "violation": None if verdict.ok else list(verdict.witness),
        "ok": verdict.ok,
    }
    _write_report(report, args.out)
    print(f"cocycle {label}: order {q.order}, condition {'ok' if verdict.ok else 'FAILED'}")
    if not verdict.ok:
        print(f"  first violating triple: {verdict.witness}")
        return EXIT_CHECK_FAILED
    return EXIT_OK


# ---------------------------------------------------------------- cover


def cmd_cover(args) -> int:
    n = args.n
    if not 4 <= n <= N_CAP:
        raise UsageError(f"cover: need 4 <= n <= {N_CAP}, got {n}")
    presentation_ok = spincover.verify_presentation(n)
    lemma_ok = spincover.verify_conjugation_lemmas(n, trials=args.trials, seed=args.seed)
    main_ok, _ = spincover.verify_main_theorem(n)
    restriction = spincover.phi_psi_table(n).twist_table()
    cfg = RunConfig(subcommand="cover", n=n, seed=args.seed)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "cover",
        "config": _config_dict(cfg),
        "n": n,
        "presentation_ok": presentation_ok,
        "lemma_general_ok": lemma_ok,
        "main_theorem_ok": main_ok,
        "phi_restriction": cocycle_mod.twist_table_to_dict(restriction),
        "ok": presentation_ok and lemma_ok and main_ok,
    }
    _write_report(report, args.out)
    print(
        f"cover n={n}: presentation {'ok' if presentation_ok else 'FAILED'}, "
        f"conjugation lemmas {'ok' if lemma_ok else 'FAILED'}, "
        f"main theorem {'ok' if main_ok else 'FAILED'}"
    )
    return EXIT_OK if report["ok"] else EXIT_CHECK_FAILED


# ---------------------------------------------------------------- twist-verify


def cmd_verify_twist(args) -> int:
    n = args.n
    if not 4 <= n <= N_CAP:
        raise UsageError(f"twist-verify: need 4 <= n <= {N_CAP}, got {n}")
    gc = spincover.phi_psi_table(n)
    restriction = gc.twist_table()
    cond = cocycle_mod.check_twist_condition(restriction)
    main_ok, log = spincover.verify_main_theorem(n)
    chi = cocycle_mod.chi_cocycle(n)
    twisted = cocycle_mod.twist(chi, restriction)
    minus_one = cocycle_mod.minus_one_cocycle(chi.rack)
    twist_matches = twisted.exp == minus_one.exp
    first_fail = None
    if not main_ok:
        first_fail = next(entry for entry in log if not entry["ok"])
    cfg = RunConfig(subcommand="twist-verify", n=n)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "twist-verify",
        "config": _config_dict(cfg),
        "n": n,
        "pairs_checked": len(log),
        "twist_condition_ok": cond.ok,
        "main_theorem_ok": main_ok,
        "twist_equals_minus_one": twist_matches,
        "first_failing_pair": first_fail,
        "ok": cond.ok and main_ok and twist_matches,
    }
    _write_report(report, args.out)
    print(
        f"twist-verify n={n}: {len(log)} pairs, twist condition "
        f"{'ok' if cond.ok else 'FAILED'}, identity {'ok' if main_ok else 'FAILED'}, "
        f"twisted cocycle constant -1: {twist_matches}"
    )
    if not report["ok"]:
        if first_fail is not None:
            print(f"  first failing pair: {first_fail['sigma']}, {first_fail['tau']}")
        return EXIT_CHECK_FAILED
    return EXIT_OK


# ---------------------------------------------------------------- cohomology


def cmd_cohomology(args) -> int:
    n = args.n
    if n < 3:
        raise UsageError(f"cohomology: need n >= 3, got {n}")
    if n > N_CAP:
        raise UsageError(f"cohomology: need n <= {N_CAP}, got {n}")
    chi = cocycle_mod.chi_cocycle(n)
    minus_one = cocycle_mod.minus_one_cocycle(chi.rack)
    gauge = cocycle_mod.find_gauge(minus_one, chi)
    round_trip = None
    if gauge is not None:
        round_trip = cocycle_mod.gauge_transform(minus_one, gauge).exp == chi.exp
    k = chi.rack.size
    exhaustive_found = None
    if 2**k <= 4096:
        exhaustive_found = False
        for bits in range(2**k):
            g = tuple((bits >> i) & 1 for i in range(k))
            cand = cocycle_mod.GaugeFunction(chi.rack, 2, g)
            if cocycle_mod.gauge_transform(minus_one, cand).exp == chi.exp:
                exhaustive_found = True
                break
    cfg = RunConfig(subcommand="cohomology", n=n)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "cohomology",
        "config": _config_dict(cfg),
        "n": n,
        "gauge_found": gauge is not None,
        "gauge": list(gauge.g) if gauge is not None else None,
        "round_trip_ok": round_trip,
        "exhaustive_search": {
            "performed": exhaustive_found is not None,
            "found": exhaustive_found,
        },
        "ok": True,
    }
    verdict = "gauge-equivalent" if gauge is not None else "no gauge exists"
    if n == 3 and gauge is None:
        report["ok"] = False
    if exhaustive_found is not None and (gauge is not None) != exhaustive_found:
        report["ok"] = False
        verdict += " (DISAGREES with exhaustive search)"
    _write_report(report, args.out)
    print(f"cohomology n={n}: constant -1 vs chi: {verdict}")
    return EXIT_OK if report["ok"] else EXIT_CHECK_FAILED


# ---------------------------------------------------------------- hilbert


def _parse_rack_arg(arg: str):
    if arg.startswith("x") and arg[1:].isdigit():
        n = int(arg[1:])
        if n < 2:
            raise UsageError(f"hilbert: need n >= 2 in rack argument, got {arg}")
        return rack_mod.transposition_rack(n), n, arg
    if os.path.exists(arg):
        return rack_mod.load_rack(arg), None, arg
    raise UsageError(f"hilbert: rack {arg!r} is neither xN nor an existing file")


def _parse_cocycle_arg(arg: str, rack, n: int | None):
    if arg in ("-1", "minus1"):
        return cocycle_mod.minus_one_cocycle(rack), "-1"
    if arg == "chi":
        if n is None:
            raise UsageError("hilbert: chi requires a transposition rack (--rack xN)")
        return cocycle_mod.chi_cocycle(n), "chi"
    if arg.startswith("const:"):
        parts = arg.split(":")
        if len(parts) != 3:
            raise UsageError("hilbert: const form is const:M:E")
        return cocycle_mod.constant_cocycle(rack, int(parts[1]), int(parts[2])), arg
    if os.path.exists(arg):
        q = cocycle_mod.load_cocycle(arg)
        if q.rack.op != rack.op:
            raise UsageError("hilbert: cocycle file rack disagrees with --rack")
        return q, arg
    raise UsageError(f"hilbert: cocycle {arg!r} is not recognized")


def _parse_closed_form(arg: str) -> list[tuple[int, int]]:
    factors = []
    for part in arg.split(","):
        m, _, mult = part.partition(":")
        try:
            factors.append((int(m), int(mult) if mult else 1))
        except ValueError:
            raise UsageError(f"hilbert: bad closed-form factor {part!r} (use M:MULT,...)")
    return factors


def cmd_hilbert(args) -> int:
    rack, n, rack_id = _parse_rack_arg(args.rack)
    q, cocycle_id = _parse_cocycle_arg(args.cocycle, rack, n)
    verdict = cocycle_mod.check_cocycle(q)
    if not verdict.ok:
        print(f"hilbert: input is not a cocycle (violation at {verdict.witness})")
        return EXIT_CHECK_FAILED
    closed_form = _parse_closed_form(args.closed_form) if args.closed_form else None
    cap = _dim_cap(args)
    report_obj = hilbert_mod.graded_dims(
        q,
        args.max_degree,
        mode=args.mode,
        seed=args.seed,
        dim_cap=cap,
        rack_id=rack_id,
        cocycle_id=cocycle_id,
        closed_form=closed_form,
    )
    if args.dump_matrices:
        os.makedirs(args.dump_matrices, exist_ok=True)
        for d in range(2, args.max_degree + 1):
            sym = braided.symmetrizer(q, d, dim_cap=cap)
            path = os.path.join(args.dump_matrices, f"symmetrizer_deg{d}.txt")
            braided.export_symmetrizer(sym, path, rack_id=rack_id, cocycle_id=cocycle_id)
    cfg = RunConfig(
        subcommand="hilbert",
        max_degree=args.max_degree,
        mode=args.mode,
        seed=args.seed,
        dim_cap=cap,
        workers=_workers(args),
    )
    ok = True
    if report_obj.closed_form_verdicts is not None:
        ok = all(report_obj.closed_form_verdicts)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "hilbert",
        "config": _config_dict(cfg),
        "report": report_obj.to_dict(),
        "ok": ok,
    }
    _write_report(report, args.out)
    print(f"hilbert {rack_id} / {cocycle_id} (mode {args.mode}): ranks {report_obj.ranks}")
    if report_obj.closed_form_verdicts is not None:
        print(f"  closed-form match per degree: {report_obj.closed_form_verdicts}")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


# ---------------------------------------------------------------- selfcheck


def cmd_selfcheck(args) -> int:
    n_max = args.n_max
    if not 2 <= n_max <= N_CAP:
        raise UsageError(f"selfcheck: need 2 <= n_max <= {N_CAP}, got {n_max}")
    generator = spincover.generator_t
    if args.inject_fault == "generator":
        generator = spincover._unnormalized_generator
    checks = []

    def run(name: str, fn):
        try:
            ok = bool(fn())
        except Exception as exc:  # a crashed check is a failed check
            checks.append({"name": name, "ok": False, "error": str(exc)})
            return
        checks.append({"name": name, "ok": ok})

    for n in range(2, n_max + 1):
        run(f"presentation n={n}", lambda n=n: spincover.verify_presentation(n, generator=generator))
    for n in range(4, min(n_max, 7) + 1):
        run(
            f"conjugation lemmas n={n}",
            lambda n=n: spincover.verify_conjugation_lemmas(n, trials=args.trials, seed=args.seed),
        )
    for n in range(3, min(n_max, 5) + 1):
        run(
            f"group cocycle exhaustive n={n}",
            lambda n=n: spincover.verify_group_cocycle(spincover.phi_psi_table(n)),
        )
    for n in range(4, n_max + 1):
        run(f"main theorem n={n}", lambda n=n: spincover.verify_main_theorem(n)[0])
    for n in range(3, min(n_max, 5) + 1):
        chi = cocycle_mod.chi_cocycle(n)
        minus_one = cocycle_mod.minus_one_cocycle(chi.rack)
        run(f"braid equation chi on x{n}", lambda q=chi: braided.check_braid_equation(q))
        run(f"braid equation -1 on x{n}", lambda q=minus_one: braided.check_braid_equation(q))

    def matsumoto_independence():
        rng = random.Random(args.seed)
        base = cocycle_mod.minus_one_cocycle(rack_mod.transposition_rack(3))
        for _ in range(200):
            n = rng.randint(2, min(n_max, 7))
            img = list(range(1, n + 1))
            rng.shuffle(img)
            sigma = rack_mod.Permutation(tuple(img))
            lex = sigma.lex_reduced_word()
            alt = _greedy_largest_descent_word(sigma)
            if len(alt) != len(lex):
                return False
            op_a = braided.rho(braided.BraidWord(n, lex), base, n)
            op_b = braided.rho(braided.BraidWord(n, alt), base, n)
            if op_a != op_b:
                return False
        return True

    run("matsumoto word-independence", matsumoto_independence)

    ok = all(c["ok"] for c in checks)
    cfg = RunConfig(subcommand="selfcheck", n=n_max, seed=args.seed, workers=_workers(args))
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "selfcheck",
        "config": _config_dict(cfg),
        "checks": checks,
        "ok": ok,
    }
    _write_report(report, args.out)
    for c in checks:
        print(f"  [{'ok' if c['ok'] else 'FAIL'}] {c['name']}")
    print(f"selfcheck n_max={n_max}: {'all passed' if ok else 'FAILED'}")
    if not ok:
        first = next(c for c in checks if not c["ok"])
        print(f"  first failing check: {first['name']}")
        return EXIT_CHECK_FAILED
    return EXIT_OK


def _greedy_largest_descent_word(sigma) -> tuple[int, ...]:
    """An alternative reduced word, by always taking the largest left descent."""
    word = []
    cur = sigma
    while True:
        ds = cur.left_descents()
        if not ds:
            break
        i = ds[-1]
        word.append(i)
        cur = rack_mod.Permutation.adjacent(cur.n, i) * cur
    return tuple(word)


# ---------------------------------------------------------------- parser


def build_parser() -> _Parser:
    parser = _Parser(prog="racktwist", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("rack", help="build or validate a rack table")
    p.add_argument("--n", type=int, help="transposition rack of S_n")
    p.add_argument("--check", metavar="FILE", help="validate a rack JSON file")
    p.add_argument("--out", help="write the rack/report JSON here")
    p.set_defaults(fn=cmd_rack)

    p = sub.add_parser("cocycle", help="build or validate a rack 2-cocycle")
    p.add_argument("--n", type=int, help="size parameter for built-in cocycles")
    p.add_argument("--kind", help="chi | -1 | minus1 | const:M:E")
    p.add_argument("--check", metavar="FILE", help="validate a cocycle JSON file")
    p.add_argument("--out", help="write the report JSON here")
    p.set_defaults(fn=cmd_cocycle)

    p = sub.add_parser("cover", help="verify the double-cover presentation and lemmas")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=1000, help="random conjugation words to test")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the report JSON here")
    p.set_defaults(fn=cmd_cover)

    p = sub.add_parser("twist-verify", help="verify the twist identity pair by pair")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", help="write the report JSON here")
    p.set_defaults(fn=cmd_verify_twist)

    p = sub.add_parser("cohomology", help="decide gauge equivalence of -1 and chi")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", help="write the report JSON here")
    p.set_defaults(fn=cmd_cohomology)

    p = sub.add_parser("hilbert", help="graded ranks of the symmetrizer")
    p.add_argument("--rack", required=True, help="xN or a rack JSON file")
    p.add_argument("--cocycle", required=True, help="chi | -1 | minus1 | const:M:E | file")
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--mode", choices=("exact", "modular"), default="modular")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dim-cap", type=int, help="override the basis-dimension cap")
    p.add_argument("--workers", type=int, help="worker count (recorded; results never depend on it)")
    p.add_argument("--closed-form", help="compare ranks against prod (M)_t^MULT, as M:MULT,M:MULT,...")
    p.add_argument("--dump-matrices", metavar="DIR", help="export symmetrizer matrices as sparse text")
    p.add_argument("--out", help="write the report JSON here")
    p.set_defaults(fn=cmd_hilbert)

    p = sub.add_parser("selfcheck", help="run the aggregated internal verification suite")
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, help="worker count (recorded; results never depend on it)")
    p.add_argument("--inject-fault", choices=("generator",), help=argparse.SUPPRESS)
    p.add_argument("--out", help="write the report JSON here")
    p.set_defaults(fn=cmd_selfcheck)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DimensionCapError, OrbitTooLargeError) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
