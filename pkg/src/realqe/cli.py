"""Command-line surface: problem files in, formulas and reports out.

Subcommands: qe | classify | verify | bounds | bench.  Problem files are
plain text: header lines "x: ..." and "y: ...", one polynomial per line,
optional pinned blocks ("A:" rows, "alpha:", "Q:" rows or "Q: identity")
and a default "seed:".  All randomness flows from a single seed through the
documented splitting scheme; the REALQE_SEED environment variable supplies
the default seed.

Exit codes: 0 success (and verify: no disagreements), 1 verify found a
disagreement, 2 parse or usage errors, 3 randomization failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .exactalg import Poly, VarSpace
from .formula import (
    SAFormula,
    from_dict as formula_from_dict,
    parse_formula,
    serialize,
    to_dict as formula_to_dict,
)
from .geom import ChangeOfVars
from .parsing import ParseError, parse_poly, parse_rational
from .qe import QERun, RandomizationFailure, degree_bounds, one_block_qe, real_root_classification
from .seeds import SALT_BENCH, derive
from .verify import RealSolutionOracle, formula_equivalence_sample

EXIT_OK = 0
EXIT_DISAGREE = 1
EXIT_USAGE = 2
EXIT_RANDOMIZATION = 3


@dataclass
class ProblemFile:
    space: VarSpace
    polys: list[Poly]
    A: ChangeOfVars | None = None
    alpha: tuple[Fraction, ...] | None = None
    q_identity: bool = False
    q_rows: list[list[Fraction]] | None = None
    seed: int | None = None


class ProblemError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_problem(text: str) -> ProblemFile:
    x_names = None
    y_names = None
    poly_lines: list[tuple[int, str]] = []
    a_rows: list[list[Fraction]] = []
    q_rows: list[list[Fraction]] = []
    q_identity = False
    alpha = None
    seed = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(":")
        key_l = key.strip().lower()
        if _ and key_l in ("x", "y", "a", "alpha", "q", "seed"):
            rest = rest.strip()
            if key_l == "x":
                x_names = tuple(rest.split())
            elif key_l == "y":
                y_names = tuple(rest.split())
            elif key_l == "a":
                try:
                    a_rows.append([parse_rational(v) for v in rest.split()])
                except ParseError as exc:
                    raise ProblemError(str(exc), lineno) from None
            elif key_l == "alpha":
                try:
                    alpha = tuple(parse_rational(v) for v in rest.split())
                except ParseError as exc:
                    raise ProblemError(str(exc), lineno) from None
            elif key_l == "q":
                if rest.lower() == "identity":
                    q_identity = True
                else:
                    try:
                        q_rows.append([parse_rational(v) for v in rest.split()])
                    except ParseError as exc:
                        raise ProblemError(str(exc), lineno) from None
            elif key_l == "seed":
                try:
                    seed = int(rest)
                except ValueError:
                    raise ProblemError(f"bad seed {rest!r}", lineno) from None
        else:
            poly_lines.append((lineno, line))
    if x_names is None or y_names is None:
        raise ProblemError("both 'x:' and 'y:' header lines are required", 1)
    try:
        space = VarSpace(x_names, y_names)
    except ValueError as exc:
        raise ProblemError(str(exc), 1) from None
    polys = []
    for lineno, line in poly_lines:
        try:
            polys.append(parse_poly(line, space))
        except ParseError as exc:
            raise ProblemError(str(exc), lineno) from None
    if not polys:
        raise ProblemError("no polynomials given", 1)
    A = None
    if a_rows:
        n = space.n
        if len(a_rows) != n or any(len(r) != n for r in a_rows):
            raise ProblemError(f"A must be {n}x{n}", 1)
        A = ChangeOfVars(tuple(tuple(r) for r in a_rows))
    return ProblemFile(space, polys, A, alpha, q_identity,
                       q_rows or None, seed)


def load_problem(path: str) -> ProblemFile:
    return parse_problem(Path(path).read_text())


# ---------------------------------------------------------------------------
# structured serialization of runs
# ---------------------------------------------------------------------------

def _frac(v: Fraction) -> str:
    return str(v)


def qerun_to_dict(run: QERun, space: VarSpace) -> dict:
    systems = []
    for system, res in zip(run.systems, run.per_system):
        systems.append({
            "index": system.index,
            "polys": [str(p) for p in system.polys],
            "delta": res.hermite.delta,
            "assumption_c": res.hermite.assumption_c,
            "w_f": str(res.hermite.w_f),
            "minor_numerators": [str(m) for m in res.minors.numerators],
            "minor_denominators": [str(m.den) for m in res.minors.minors],
            "sample_points": [[_frac(v) for v in pt]
                              for pt in (res.points.points if res.points else ())],
            "kept_points": [[_frac(v) for v in pt] for pt in res.kept_points],
            "phi": formula_to_dict(res.phi),
            "phi_text": serialize(res.phi),
            "w_inf": str(res.w_inf),
        })
    return {
        "kind": "qerun",
        "x": list(space.x_names),
        "y": list(space.y_names),
        "input": [str(p) for p in run.input_polys],
        "seed": run.seed,
        "retries": run.retries_used,
        "d": run.d,
        "A": [[_frac(v) for v in row] for row in run.A.A],
        "alpha": [_frac(v) for v in run.alpha],
        "empty_generic_fiber": run.empty_generic_fiber,
        "systems": systems,
        "phi": formula_to_dict(run.phi),
        "phi_text": serialize(run.phi),
    }


def _max_formula_degree(phi: SAFormula) -> int:
    return max((p.deg() for p in phi.polynomials()), default=0)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _default_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("REALQE_SEED")
    if env is not None:
        return int(env)
    return 0


def cmd_qe(args) -> int:
    try:
        prob = load_problem(args.file)
    except (ProblemError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    seed = args.seed if args.seed is not None else (
        prob.seed if prob.seed is not None else _default_seed(args))
    t0 = time.monotonic()
    try:
        run = one_block_qe(prob.polys, seed=seed, max_retries=args.retries,
                           A=prob.A, alpha=prob.alpha,
                           identity_q=prob.q_identity, q_rows=prob.q_rows)
    except RandomizationFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RANDOMIZATION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    elapsed = time.monotonic() - t0
    if args.format == "structured":
        doc = qerun_to_dict(run, prob.space)
        doc["wall_time_s"] = round(elapsed, 3)
        print(json.dumps(doc, indent=2, sort_keys=True))
        return EXIT_OK
    n, t = prob.space.n, prob.space.t
    s = len(prob.polys)
    D = max(p.deg() for p in prob.polys)
    print(f"Phi: {serialize(run.phi)}")
    print(f"d: {run.d}")
    print(f"delta: {[res.hermite.delta for res in run.per_system]}")
    print(f"max-degree: {_max_formula_degree(run.phi)}")
    if 1 <= s <= n:
        br = degree_bounds(n, t, s, D)
        print(f"degree-bound: {br.degree_bound} (announced) "
              f"/ {br.degree_bound_tight} (sharp)")
    print(f"retries: {run.retries_used}")
    if run.empty_generic_fiber:
        print("note: empty generic fiber; only a measure-zero parameter set "
              "can carry solutions")
    print(f"wall-time: {elapsed:.2f}s")
    return EXIT_OK


def cmd_classify(args) -> int:
    try:
        prob = load_problem(args.file)
    except (ProblemError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    seed = args.seed if args.seed is not None else (
        prob.seed if prob.seed is not None else _default_seed(args))
    qseed = None if prob.q_identity else derive(seed, 3, 1)
    try:
        res = real_root_classification(prob.polys, qseed, q_rows=prob.q_rows)
    except Exception as exc:  # NotZeroDimensional etc. are usage-level here
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "structured":
        doc = {
            "kind": "classification",
            "x": list(prob.space.x_names),
            "y": list(prob.space.y_names),
            "delta": res.hermite.delta,
            "assumption_c": res.hermite.assumption_c,
            "w_f": str(res.hermite.w_f),
            "minor_numerators": [str(m) for m in res.minors.numerators],
            "phi": formula_to_dict(res.phi),
            "phi_text": serialize(res.phi),
            "w_inf": str(res.w_inf),
        }
        print(json.dumps(doc, indent=2, sort_keys=True))
        return EXIT_OK
    print(f"Phi_F: {serialize(res.phi)}")
    print(f"delta: {res.hermite.delta}")
    print(f"w_F: {res.hermite.w_f}")
    print(f"w_inf: {res.w_inf}")
    print(f"kept-points: {[['%s' % v for v in pt] for pt in res.kept_points]}")
    return EXIT_OK


def _parse_box(spec: str, t: int):
    parts = spec.split(",")
    if len(parts) == 2 and ":" not in spec:
        lo, hi = (parse_rational(v) for v in parts)
        return [(lo, hi)] * t
    ranges = []
    for part in spec.split(","):
        lo, _, hi = part.partition(":")
        ranges.append((parse_rational(lo), parse_rational(hi)))
    if len(ranges) == 1:
        ranges = ranges * t
    if len(ranges) != t:
        raise ValueError(f"box must give 1 or {t} ranges")
    return ranges


def cmd_verify(args) -> int:
    try:
        prob = load_problem(args.file)
        formula_text = Path(args.formula).read_text()
    except (ProblemError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.samples < 1:
        print("error: --samples must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    seed = args.seed if args.seed is not None else (
        prob.seed if prob.seed is not None else _default_seed(args))
    skip_polys = []
    try:
        body = formula_text.strip()
        if body.startswith("{"):
            doc = json.loads(body)
            phi = formula_from_dict(doc["phi"], prob.space)
            for sysdoc in doc.get("systems", ()):
                skip_polys.append(parse_poly(sysdoc["w_inf"], prob.space))
        else:
            phi = parse_formula(body, prob.space)
            skip_polys = [p for p in phi.polynomials()]
    except (ParseError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: bad formula file: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        box = _parse_box(args.box, prob.space.t)
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    oracle = RealSolutionOracle(prob.polys, seed=derive(seed, 11))
    report = formula_equivalence_sample(phi, prob.polys, args.samples, seed,
                                        box, skip_polys=skip_polys,
                                        oracle=oracle)
    print(f"tested: {report.tested}")
    print(f"agreements: {report.agreements}")
    print(f"disagreements: {report.disagreement_count}")
    print(f"skipped: {report.skipped}")
    for eta, truth, verdict in report.disagreements[:10]:
        pt = ", ".join(str(v) for v in eta)
        print(f"witness: ({pt}) formula={truth} oracle={verdict}")
    return EXIT_OK if report.ok() else EXIT_DISAGREE


def cmd_bounds(args) -> int:
    if args.dims:
        try:
            n, t, s, D = (int(v) for v in args.dims.split(","))
        except ValueError:
            print("error: --dims expects n,t,s,D", file=sys.stderr)
            return EXIT_USAGE
    elif args.file:
        try:
            prob = load_problem(args.file)
        except (ProblemError, OSError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        n, t = prob.space.n, prob.space.t
        s = len(prob.polys)
        D = max(p.deg() for p in prob.polys)
    else:
        print("error: give a problem file or --dims n,t,s,D", file=sys.stderr)
        return EXIT_USAGE
    try:
        br = degree_bounds(n, t, s, D)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"n={n} t={t} s={s} D={D}")
    print(f"degree-bound (announced): {br.degree_bound}")
    print(f"degree-bound (sharp):     {br.degree_bound_tight}")
    for i, (bs, mb) in enumerate(zip(br.basis_degree_sums,
                                     br.minor_degree_bounds), start=1):
        print(f"W_{i}: basis degree sum <= {bs}, minor degree <= {mb}")
    print(f"operations: {br.op_count_expr}")
    print(f"operations value: {br.op_count}")
    return EXIT_OK


def _gen_instance(path: Path, t: int, n: int, s: int, D: int, seed: int):
    import random as _random
    rng = _random.Random(derive(seed, SALT_BENCH, t, n, s, D))
    x_names = tuple(f"x{i+1}" for i in range(n))
    y_names = tuple(f"y{i+1}" for i in range(t))
    space = VarSpace(x_names, y_names)
    monos = []

    def rec(prefix, remaining, budget):
        if remaining == 0:
            monos.append(tuple(prefix))
            return
        for e in range(budget + 1):
            rec(prefix + [e], remaining - 1, budget - e)

    rec([], n + t, D)
    lines = [f"x: {' '.join(x_names)}", f"y: {' '.join(y_names)}"]
    for _ in range(s):
        terms = {}
        for m in monos:
            c = rng.randint(-9, 9)
            if c:
                terms[m] = Fraction(c)
        lines.append(str(Poly(space, terms)))
    path.write_text("\n".join(lines) + "\n")


def cmd_bench(args) -> int:
    directory = Path(args.dir)
    if not directory.is_dir():
        print(f"error: {directory} is not a directory", file=sys.stderr)
        return EXIT_USAGE
    seed = _default_seed(args)
    if args.gen:
        try:
            t, n, s, D = (int(v) for v in args.gen.split(","))
        except ValueError:
            print("error: --gen expects t,n,s,D", file=sys.stderr)
            return EXIT_USAGE
        name = f"gen_t{t}_n{n}_s{s}_D{D}_seed{seed}.prob"
        _gen_instance(directory / name, t, n, s, D, seed)
    rows = []
    for path in sorted(directory.glob("*.prob")):
        try:
            prob = load_problem(str(path))
        except ProblemError as exc:
            print(f"error: {path.name}: {exc}", file=sys.stderr)
            return EXIT_USAGE
        t0 = time.monotonic()
        try:
            run = one_block_qe(prob.polys, seed=seed, A=prob.A,
                               alpha=prob.alpha, identity_q=prob.q_identity)
        except RandomizationFailure as exc:
            print(f"error: {path.name}: {exc}", file=sys.stderr)
            return EXIT_RANDOMIZATION
        elapsed = time.monotonic() - t0
        size = max((res.hermite.delta for res in run.per_system), default=0)
        deg = _max_formula_degree(run.phi)
        rows.append((path.name, prob.space.t, prob.space.n, len(prob.polys),
                     max(p.deg() for p in prob.polys), size, deg, elapsed))
    print(f"{'file':<34} {'t':>2} {'n':>2} {'s':>2} {'D':>2} "
          f"{'size':>4} {'deg':>4} {'time':>8}")
    for name, t, n, s, D, size, deg, elapsed in rows:
        print(f"{name:<34} {t:>2} {n:>2} {s:>2} {D:>2} "
              f"{size:>4} {deg:>4} {elapsed:>7.2f}s")
    return EXIT_OK


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="realqe",
        description="one-block real quantifier elimination, exactly")
    sub = parser.add_subparsers(dest="command", required=True)

    p_qe = sub.add_parser("qe", help="eliminate the quantified block")
    p_qe.add_argument("file")
    p_qe.add_argument("--seed", type=int, default=None)
    p_qe.add_argument("--retries", type=int, default=5)
    p_qe.add_argument("--format", choices=("text", "structured"), default="text")
    p_qe.set_defaults(func=cmd_qe)

    p_cl = sub.add_parser("classify", help="real root classification of the system")
    p_cl.add_argument("file")
    p_cl.add_argument("--seed", type=int, default=None)
    p_cl.add_argument("--format", choices=("text", "structured"), default="text")
    p_cl.set_defaults(func=cmd_classify)

    p_v = sub.add_parser("verify", help="sampled equivalence of a formula")
    p_v.add_argument("file")
    p_v.add_argument("formula")
    p_v.add_argument("--samples", type=int, default=1000)
    p_v.add_argument("--seed", type=int, default=None)
    p_v.add_argument("--box", default="-2,2")
    p_v.set_defaults(func=cmd_verify)

    p_b = sub.add_parser("bounds", help="degree and operation-count bounds")
    p_b.add_argument("file", nargs="?")
    p_b.add_argument("--dims", default=None, help="n,t,s,D")
    p_b.set_defaults(func=cmd_bounds)

    p_be = sub.add_parser("bench", help="run a directory of problem files")
    p_be.add_argument("dir")
    p_be.add_argument("--seed", type=int, default=None)
    p_be.add_argument("--gen", default=None, help="t,n,s,D: generate an instance")
    p_be.set_defaults(func=cmd_bench)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
