"""Command-line entry point: ``braidcrypt <subcommand> ...``.

Exit codes: 0 success (or equal/conjugate), 1 negative answer, 2 budget
exhausted, 64 usage or parse error, 70 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from . import kernels
from .braid import BraidParseError, BraidWord, parse_band_word, parse_word, random_rewrite, random_word
from .errors import BudgetExceeded, InvariantViolation

EXIT_OK = 0
EXIT_NO = 1
EXIT_BUDGET = 2
EXIT_USAGE = 64
EXIT_INTERNAL = 70

CONFIG_ENV = "BRAIDCRYPT_CONFIG"


class UsageError(Exception):
    pass


@dataclass
class Config:
    n: int = 8
    enum_cap: int = 8
    vertex_budget: int = 100_000
    handle_budget: int = 10**7
    dist: str = "uniform"
    seed: int = 0
    out_dir: str = "."

    def validate(self) -> Config:
        if self.n < 2:
            raise UsageError(f"config: n must be >= 2, got {self.n}")
        for name in ("enum_cap", "vertex_budget", "handle_budget"):
            if getattr(self, name) <= 0:
                raise UsageError(f"config: {name} must be positive")
        return self


def load_config(path: str | None = None) -> Config:
    """Defaults, overlaid by the JSON file named by ``path`` or ``$BRAIDCRYPT_CONFIG``."""
    path = path or os.environ.get(CONFIG_ENV)
    cfg = Config()
    if not path:
        return cfg
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"config {path}: {exc}") from exc
    known = {f.name for f in fields(Config)}
    unknown = set(data) - known
    if unknown:
        raise UsageError(f"config {path}: unknown keys {sorted(unknown)}")
    return Config(**{**asdict(cfg), **data}).validate()


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_input(text: str):
    if text == "-":
        text = sys.stdin.read().strip()
    if " band:" in text.split(":", 1)[0] + ":":
        return parse_band_word(text)
    return parse_word(text)


def _artin(text: str) -> BraidWord:
    from .braid import BandWord, band_to_artin

    w = _read_input(text)
    return band_to_artin(w) if isinstance(w, BandWord) else w


def _out(path: str | None, text: str, cfg: Config | None = None) -> None:
    """Write to stdout, or to ``path`` (relative paths land in the configured out_dir)."""
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    target = Path(path)
    if cfg is not None and not target.is_absolute():
        target = Path(cfg.out_dir) / target
    target.write_text(text)


# ---------------------------------------------------------------------------


def cmd_nf(args, cfg) -> int:
    from .braid import BandWord
    from .normal_form import LENGTH_FUNCTIONS, bkl_normal_form, left_normal_form, right_normal_form, _artin_to_band

    w = _read_input(args.word)
    if args.bkl:
        band = w if isinstance(w, BandWord) else _artin_to_band(w)
        x = bkl_normal_form(band)
        parts = [f"d^{x.delta_power}"]
        for blocks in x.blocks:
            parts.append("".join("(" + " ".join(str(i + 1) for i in b) + ")" for b in blocks if len(b) > 1))
        print(f"B{x.n} band: " + " | ".join(parts))
    else:
        aw = _artin(args.word)
        if args.right:
            r = right_normal_form(aw)
            parts = [" ".join(str(v + 1) for v in p) for p in r.factors] + [f"D^{r.delta_power}"]
            print(f"B{r.n}: " + " | ".join(parts))
        else:
            print(left_normal_form(aw).serial)
    if args.lengths:
        for name, fn in LENGTH_FUNCTIONS.items():
            print(f"{name} {fn(w if isinstance(w, BandWord) and name in ('bkl', 'redbkl') else _artin(args.word))}")
    return EXIT_OK


def cmd_wp(args, cfg) -> int:
    import random

    from .word_problem import equal

    w = _artin(args.word)
    w2 = _artin(args.other) if args.other else BraidWord(w.n)
    if w2.n != w.n:
        n = max(w.n, w2.n)
        w, w2 = w.widen(n), w2.widen(n)
    budget = args.budget or cfg.handle_budget
    v = equal(w, w2, args.method, budget=budget, rng=random.Random(f"{args.seed}/fingerprint"))
    if v.equal:
        print("equal" if v.exact else v.detail)
        return EXIT_OK
    print("not equal")
    return EXIT_NO


def cmd_conj(args, cfg) -> int:
    from .conjugacy import compute_summit_graph, conjugacy_search

    x = _artin(args.word)
    budget = args.budget_vertices or cfg.vertex_budget
    if args.target:
        y = _artin(args.target)
        v = conjugacy_search(x, y, args.kind, args.method, budget)
        if v is None:
            print("not conjugate")
            return EXIT_NO
        print(v.serial)
        return EXIT_OK
    g = compute_summit_graph(x, args.kind, args.method, budget, cfg.enum_cap)
    print(f"{args.kind.upper()}: {len(g)} vertices, {len(g.edges)} edges")
    if args.list:
        for y in g.vertices:
            print(y.serial)
    if args.emit_graph:
        _out(args.emit_graph, "".join(line + "\n" for line in g.edge_lines()), cfg)
    return EXIT_OK


def _protocol_run(scheme: str, n: int, rng, dist) -> bool:
    from . import protocols as P

    if scheme == "aag":
        inst = P.aag_keygen(rng, n=n, dist=dist)
        return P.aag_shared("alice", inst) == P.aag_shared("bob", inst)
    if scheme == "ko":
        inst = P.ko_keygen(rng, n=n, dist=dist)
        return P.ko_shared("alice", inst) == P.ko_shared("bob", inst)
    if scheme == "ko-enc":
        inst = P.ko_keygen(rng, n=n, dist=dist)
        msg = rng.getrandbits(256).to_bytes(32, "big")
        return P.ko_decrypt(inst.s, P.ko_encrypt(msg, inst.p, inst.p_alice, rng, dist=dist)) == msg
    if scheme == "sdg":
        b, b_pub, s = P.sdg_setup(rng, n=n, dist=dist)
        return P.sdg_authenticate(b, b_pub, rng, P.sdg_honest_prover(s), dist=dist).accepted
    if scheme == "shifted":
        keys = P.shifted_setup(rng, n=n, dist=dist)
        return P.dehornoy_auth(keys, rng, n=n, dist=dist).accepted
    raise UsageError(f"unknown scheme {scheme!r}")


def cmd_protocol(args, cfg) -> int:
    from .attacks import seeded_rng
    from .protocols import KeyDistribution

    n = args.n or cfg.n
    if args.scheme in ("ko", "ko-enc", "sdg") and n % 2:
        raise UsageError(f"{args.scheme} needs an even n")
    try:
        dist = KeyDistribution.parse(args.dist or cfg.dist)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    master = cfg.seed if args.seed is None else args.seed
    lines = ["seed,scheme,n,key_agree,seconds"]
    failures = 0
    for run in range(args.runs):
        t0 = time.perf_counter()
        ok = _protocol_run(args.scheme, n, seeded_rng(master, "keygen", run), dist)
        dt = f"{time.perf_counter() - t0:.4f}" if args.timings else ""
        failures += not ok
        lines.append(f"{run},{args.scheme},{n},{int(ok)},{dt}")
    _out(args.out, "\n".join(lines) + "\n", cfg)
    return EXIT_OK if failures == 0 else EXIT_NO


def parse_seeds(text: str) -> list[int]:
    """``N`` (0..N-1), ``A:B`` (half-open) or a file with one seed per line."""
    if os.path.isfile(text):
        return [int(tok) for tok in Path(text).read_text().split()]
    try:
        if ":" in text:
            a, b = text.split(":", 1)
            return list(range(int(a), int(b)))
        return list(range(int(text)))
    except ValueError as exc:
        raise UsageError(f"bad --seeds value {text!r}") from exc


def cmd_attack(args, cfg) -> int:
    from .attacks import AttackConfig, InstanceParams, bench_rows, rows_to_csv
    from .protocols import KeyDistribution

    try:
        dist = KeyDistribution.parse(args.dist or cfg.dist)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    params = InstanceParams(
        scheme=args.scheme,
        n=args.n or cfg.n,
        m=args.m,
        secret_length=args.secret_length,
        u_length=args.u_length,
        dist=dist,
    )
    configs = [
        AttackConfig(args.attack, args.length, m, args.depth, args.dedup, args.peaks)
        for m in (args.memory or [1])
    ]
    master = cfg.seed if args.master_seed is None else args.master_seed
    rows = bench_rows(params, configs, parse_seeds(args.seeds), master, args.timings, args.jobs)
    _out(args.out, rows_to_csv(rows), cfg)
    return EXIT_OK


def cmd_gen(args, cfg) -> int:
    from .attacks import seeded_rng

    n = args.n or cfg.n
    master = cfg.seed if args.seed is None else args.seed
    lines = []
    for i in range(args.count):
        rng = seeded_rng(master, "corpus", i)
        w = random_word(n, args.length, rng)
        if args.pairs:
            lines.append(f"{w}\t{random_rewrite(w, rng, args.rewrites)}")
        else:
            lines.append(str(w))
    _out(args.out, "".join(line + "\n" for line in lines), cfg)
    return EXIT_OK


def cmd_selftest(args, cfg) -> int:
    from .acceptance import run_all

    only = {int(x) for x in args.only.split(",")} if args.only else None
    print(f"kernel backend: {kernels.BACKEND}")
    results = run_all(only)
    bad = [r for r in results if not r.passed]
    print(f"{len(results) - len(bad)}/{len(results)} criteria passed")
    return EXIT_OK if not bad else EXIT_NO


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="braidcrypt", description="Braid group algorithms and braid cryptography experiments.")
    p.add_argument("--config", help=f"JSON config file (default: ${CONFIG_ENV})")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    s = sub.add_parser("nf", help="normal forms and lengths")
    s.add_argument("word", help='braid word, e.g. "B4: 1 -3 2" or "B4 band: (3,1)"; "-" reads stdin')
    g = s.add_mutually_exclusive_group()
    g.add_argument("--right", action="store_true", help="right normal form")
    g.add_argument("--bkl", action="store_true", help="Birman-Ko-Lee normal form")
    s.add_argument("--lengths", action="store_true", help="also print the four length functions")
    s.set_defaults(func=cmd_nf)

    s = sub.add_parser("wp", help="word problem")
    s.add_argument("word")
    s.add_argument("other", nargs="?", help="compare against this word (default: the identity)")
    s.add_argument("--method", choices=["nf", "handle", "burau"], default="nf")
    s.add_argument("--budget", type=int, help="handle reduction budget")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_wp)

    s = sub.add_parser("conj", help="summit sets and conjugacy search")
    s.add_argument("word")
    s.add_argument("--kind", choices=["sss", "uss", "rsss", "sc"], default="uss")
    s.add_argument("--method", choices=["fast", "brute"], default="fast")
    s.add_argument("--target", help="search for a conjugator from WORD to this braid")
    s.add_argument("--emit-graph", metavar="FILE", help="write the edge list (tab separated)")
    s.add_argument("--budget-vertices", type=int)
    s.add_argument("--list", action="store_true", help="print every vertex")
    s.set_defaults(func=cmd_conj)

    s = sub.add_parser("protocol", help="simulate protocol runs, CSV out")
    s.add_argument("--scheme", choices=["aag", "ko", "ko-enc", "sdg", "shifted"], required=True)
    s.add_argument("--n", type=int)
    s.add_argument("--seed", type=int)
    s.add_argument("--dist", help="uniform | markov:BETA")
    s.add_argument("--runs", type=int, default=10)
    s.add_argument("--out")
    s.add_argument("--timings", action="store_true", help="fill the seconds column")
    s.set_defaults(func=cmd_protocol)

    s = sub.add_parser("attack", help="benchmark length-based and summit-set attacks, CSV out")
    s.add_argument("--attack", choices=["lba", "lba-mem", "lba-look", "hs"], default="lba")
    s.add_argument("--length", choices=["gar", "redgar", "bkl", "redbkl"], default="redgar")
    s.add_argument("--memory", type=int, nargs="+", help="beam width(s)")
    s.add_argument("--depth", type=int, default=1)
    s.add_argument("--dedup", action="store_true")
    s.add_argument("--peaks", action="store_true")
    s.add_argument("--seeds", default="10", help="N, A:B, or a file of seeds")
    s.add_argument("--scheme", choices=["csp", "ko"], default="csp")
    s.add_argument("--n", type=int)
    s.add_argument("--m", type=int, default=4, help="public subgroup generators")
    s.add_argument("--secret-length", type=int, default=10)
    s.add_argument("--u-length", type=int, default=10)
    s.add_argument("--dist", help="uniform | markov:BETA")
    s.add_argument("--master-seed", type=int)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--timings", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_attack)

    s = sub.add_parser("gen", help="random word corpus")
    s.add_argument("--count", type=int, default=10)
    s.add_argument("--length", type=int, default=20)
    s.add_argument("--n", type=int)
    s.add_argument("--seed", type=int)
    s.add_argument("--pairs", action="store_true", help="emit word TAB equivalent rewritten word")
    s.add_argument("--rewrites", type=int, default=20)
    s.add_argument("--out")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("selftest", help="run the acceptance checks")
    s.add_argument("--only", help="comma separated criterion numbers")
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        return args.func(args, cfg)
    except (UsageError, BraidParseError) as exc:
        print(f"braidcrypt: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"braidcrypt: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantViolation as exc:
        print(f"braidcrypt: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:
        print(f"braidcrypt: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
