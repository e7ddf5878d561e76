"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or validation error.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import cohomology, grassmann, method
from .cohomology import SpaceModel, build_space
from .errors import ConfigurationError, ParityError, ResourceError, SchubsigError, ValidationError
from .exact import fstr

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

DEFAULT_VERIFY_SPACES = ["G(2,4)", "G(2,5)", "G(2,6)", "G(3,7)", "Q4", "Q6", "Q8", "OP2"]


@dataclass(frozen=True)
class SpaceSpec:
    type_label: str
    rank: int
    node: int
    text: str = ""

    def build(self) -> SpaceModel:
        return build_space(self.type_label, self.rank, self.node)


_EXCEPTIONAL = {"E6": 6, "E7": 7, "E8": 8, "F4": 4, "G2": 2}


def parse_space(text: str) -> SpaceSpec:
    """Parse "A,3,2", "E6,1", "G(2,4)", "LG(3,6)", "Q6" or "OP2"."""
    s = text.strip().replace(" ", "")
    up = s.upper()
    m = re.fullmatch(r"G\((\d+),(\d+)\)", up)
    if m:
        p, n = int(m[1]), int(m[2])
        if not 1 <= p < n:
            raise ConfigurationError(f"G(p,m) needs 1 <= p < m: {text!r}")
        return SpaceSpec("A", n - 1, p, text)
    m = re.fullmatch(r"LG\((\d+),(\d+)\)", up)
    if m:
        k, n = int(m[1]), int(m[2])
        if n != 2 * k or k < 2:
            raise ConfigurationError(f"LG(k,2k) needs k >= 2: {text!r}")
        return SpaceSpec("C", k, k, text)
    m = re.fullmatch(r"Q(\d+)", up)
    if m:
        dim = int(m[1])
        if dim % 2 == 0 and dim >= 4:
            return SpaceSpec("D", dim // 2 + 1, 1, text)
        if dim % 2 == 1 and dim >= 3:
            return SpaceSpec("B", (dim + 1) // 2, 1, text)
        raise ConfigurationError(f"quadric dimension must be >= 3: {text!r}")
    if up == "OP2":
        return SpaceSpec("E6", 6, 1, text)
    parts = s.split(",")
    try:
        if len(parts) == 3:
            t, r, p = parts[0].upper(), int(parts[1]), int(parts[2])
        elif len(parts) == 2 and parts[0].upper() in _EXCEPTIONAL:
            t = parts[0].upper()
            r, p = _EXCEPTIONAL[t], int(parts[1])
        else:
            raise ValueError
    except ValueError:
        raise ConfigurationError(f"cannot parse space {text!r}")
    if t in ("E", "F", "G"):
        t = f"{t}{r}"
    return SpaceSpec(t, r, p, text)


# -- reports -------------------------------------------------------------------


def space_info(model: SpaceModel) -> dict:
    info = {
        "space": list(model.space_id),
        "N": model.dim,
        "classes": model.num_classes,
        "betti": model.betti,
    }
    try:
        ma = cohomology.middle_analysis(model)
    except ParityError:
        info.update({k: "n/a" for k in ("n", "T", "U", "U_id", "U_hyp", "h_mid", "sigma", "rank_bound")})
        return info
    disp = {c.label: c.display() for level in model.basis for c in level}
    info.update(
        {
            "n": ma.n,
            "T": [_class_entry(model, label, disp) for label in ma.T],
            "U": [_class_entry(model, label, disp) for label in ma.U],
            "U_id": [disp[label] for label in ma.U_id],
            "U_hyp": [disp[label] for label in ma.U_hyp],
            "h_mid": ma.h_mid,
            "sigma": ma.sigma,
            "rank_bound": ma.rank_bound,
        }
    )
    return info


def _class_entry(model, label, disp):
    c = model.lookup(label)
    return {
        "label": disp[label],
        "word": c.label,
        "codim": c.degree,
        "dim": model.dim - c.degree,
        "dual": model.dual_of(c).display(),
    }


def _form_json(qf: method.QuadraticForm) -> list[list[str]]:
    return [[fstr(v) for v in row] for row in qf.matrix]


def analysis_report(model: SpaceModel, inp: method.InputClasses) -> dict:
    md = method.MiddleData.of(model)
    T = [md.display(t) for t in md.T]
    U = [md.display(u) for u in md.U]
    cd = method.curve_data(model, inp)
    M = method.build_M(model, inp)
    q = method.q_form(model, inp)
    qp = method.q_prime(model, inp)
    qpp = method.q_doubleprime(model, inp)
    ok_h, violations = method.multiple_of_H_test(model, inp)
    verdicts = {
        "decomposition": method.verify_decomposition(model, inp),
        "multiple_of_H": ok_h,
        "multiple_of_H_violations": [list(v) for v in violations],
        "condition_count": method.condition_count(model),
    }
    report = {
        "info": space_info(model),
        "input": {
            "a": dict(zip(T, (fstr(v) for v in inp.a))),
            "alpha": dict(zip(U, (fstr(v) for v in inp.alpha))),
            "lambda": None if inp.lam is None else dict(zip(T, (fstr(v) for v in inp.lam))),
        },
        "curve_data": {
            "x": dict(zip(U, map(fstr, cd.x))),
            "y": dict(zip(U, map(fstr, cd.y))),
            "z": dict(zip(T, map(fstr, cd.z))),
            "d": dict(zip(T, map(fstr, cd.d))),
        },
        "M": {
            "columns": U + T,
            "rows": [[fstr(v) for v in M.top], [("lambda" if v is None else fstr(v)) for v in M.bottom]],
        },
        "q": _form_json(q),
        "q_prime": _form_json(qp),
        "q_doubleprime": _form_json(qpp),
        "q_value": fstr(q.value(inp.alpha)),
        "verdicts": verdicts,
    }
    if inp.lam is not None:
        verdicts["rank_one"] = method.rank_one_test(M)
        verdicts["eq1_crosscheck"] = method.eq1_crosscheck(model, inp)
        report["P"] = fstr(method.p_class(model, inp))
        report["hodge"] = {T[t]: fstr(method.hodge_t(model, inp, t)) for t in range(len(T))}
    try:
        rep = method.cominuscule_inequality_check(model, inp)
    except method.ApplicabilityError:
        verdicts["cominuscule"] = "n/a"
    else:
        verdicts["cominuscule"] = {
            "ok": rep.ok,
            "pairs": [
                {
                    "u": p.u,
                    "u_star": p.u_star,
                    "t": list(p.t_candidates),
                    "x_u": p.x_u,
                    "x_u_star": p.x_u_star,
                    "d_t": p.d_t,
                    "a_t": p.a_t,
                    "unique": p.unique,
                    "upper": p.upper_ok,
                    "lower": p.lower_ok,
                }
                for p in rep.pairs
            ],
        }
    return report


def parse_report_rationals(obj):
    """Turn every "p/q" string of a loaded report back into a Fraction."""
    if isinstance(obj, dict):
        return {k: parse_report_rationals(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [parse_report_rationals(v) for v in obj]
    if isinstance(obj, str) and re.fullmatch(r"-?\d+/\d+", obj):
        return Fraction(obj)
    return obj


def load_input_file(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read input file {path!r}: {exc}")
    if not isinstance(data, dict):
        raise ValidationError("input file must hold a JSON object")
    if "a" not in data:
        raise ValidationError("input file is missing the 'a' coefficients")
    if "alpha" not in data:
        raise ValidationError("input file is missing the 'alpha' coefficients")
    return data


# -- verification campaign -----------------------------------------------------


def corrupt_chevalley(model: SpaceModel) -> SpaceModel:
    """Copy of ``model`` with one T -> U Chevalley coefficient bumped by one."""
    T, U = cohomology.sets_T_U(model)
    k = T[0].degree
    chev = list(model.chev)
    entries = dict(chev[k])
    key = min(entries)
    entries[key] += 1
    chev[k] = entries
    return SpaceModel(model.space_id, model.dim, model.basis, tuple(chev), model.dual)


@dataclass
class VerifyResult:
    space: str
    trials: int
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures


def run_verify(spaces, trials: int, seed: int, max_a: int, corrupt: bool = False) -> list[VerifyResult]:
    results = []
    for text in spaces:
        model = parse_space(text).build()
        cohomology.half_index(model)
        rhs = corrupt_chevalley(model) if corrupt else None
        n_t = len(cohomology.sets_T_U(model)[0])
        rng = random.Random(f"{seed}:{text}")
        failures = []
        for trial in range(trials):
            a = [rng.randint(1, max_a) for _ in range(n_t)]
            if not method.verify_decomposition(model, a, rhs_model=rhs):
                failures.append((trial, a))
        results.append(VerifyResult(text, trials, failures))
    return results


# -- commands ------------------------------------------------------------------


def _write_json(path, obj):
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _tsv(*fields):
    print("\t".join(str(f) for f in fields))


def cmd_info(args) -> int:
    model = parse_space(args.space).build()
    info = space_info(model)
    for key in ("N", "n", "classes", "betti", "h_mid", "sigma", "rank_bound"):
        value = info[key]
        _tsv(key, ",".join(map(str, value)) if isinstance(value, list) else value)
    if info["T"] != "n/a":
        for role in ("T", "U"):
            for entry in info[role]:
                _tsv(role, entry["label"], entry["word"], f"codim={entry['codim']}", f"dual={entry['dual']}")
    if args.out:
        _write_json(args.out, info)
    return EXIT_OK


def cmd_analyze(args) -> int:
    spec = parse_space(args.space)
    model = spec.build()
    data = load_input_file(args.input)
    if "space" in data:
        other = parse_space(str(data["space"]))
        if (other.type_label, other.rank, other.node) != (spec.type_label, spec.rank, spec.node):
            raise ValidationError(f"input file is for {data['space']!r}, not {args.space!r}")
    inp = method.make_input(model, data["a"], data["alpha"], data.get("lambda"))
    report = analysis_report(model, inp)
    v = report["verdicts"]
    _tsv("space", args.space)
    _tsv("sigma", report["info"]["sigma"])
    _tsv("rank_bound", report["info"]["rank_bound"])
    _tsv("q_value", report["q_value"])
    for key in ("decomposition", "multiple_of_H", "rank_one", "eq1_crosscheck"):
        if key in v:
            _tsv(key, str(v[key]).lower())
    for u, us in v["multiple_of_H_violations"]:
        _tsv("violation", u, us)
    if args.out:
        _write_json(args.out, report)
    if not v["decomposition"]:
        print("internal error: q != q' - q''", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_verify(args) -> int:
    spaces = args.spaces.split(";") if args.spaces else DEFAULT_VERIFY_SPACES
    if args.trials < 1:
        raise ValidationError("--trials must be at least 1")
    if args.max_a < 1:
        raise ValidationError("--max-a must be at least 1")
    results = run_verify(spaces, args.trials, args.seed, args.max_a, corrupt=args.corrupt)
    status = EXIT_OK
    for r in results:
        _tsv(r.space, r.trials, r.trials - len(r.failures), "pass" if r.ok else "FAIL")
        for trial, a in r.failures:
            status = EXIT_FAIL
            print(f"reproduce: space={r.space} seed={args.seed} trial={trial} a={a}", file=sys.stderr)
    if args.out:
        _write_json(
            args.out,
            [{"space": r.space, "trials": r.trials, "failures": [list(f) for f in r.failures]} for r in results],
        )
    return status


def cmd_scan(args) -> int:
    members = []
    for t in args.types:
        members.extend(cohomology.family_members(t, args.max_rank, args.node))
    rows = cohomology.positivity_scan(members, even_only=args.even_only)
    _tsv("space", "N", "h_mid", "sigma", "rank_bound", "definite")
    for r in rows:
        if r.h_mid is None:
            _tsv(r.space, r.dim, "n/a", "n/a", "n/a", "n/a")
        else:
            _tsv(r.space, r.dim, r.h_mid, r.sigma, r.rank_bound, str(r.definite).lower())
    if args.out:
        _write_json(
            args.out,
            [
                {"space": r.space, "N": r.dim, "h_mid": r.h_mid, "sigma": r.sigma, "rank_bound": r.rank_bound}
                for r in rows
            ],
        )
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    p, m = args.p, args.m
    if not 1 <= p < m <= 8:
        raise ConfigurationError(f"oracle-check needs 1 <= p < m <= 8, got p={p} m={m}")
    mismatch = grassmann.compare_models(grassmann.grassmannian_model(p, m), build_space("A", m - 1, p))
    if mismatch is not None:
        print(f"G({p},{m}) mismatch: {mismatch}")
        return EXIT_FAIL
    print(f"G({p},{m}) pass")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="schubsig", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="Betti numbers, middle classes, signature and rank bound")
    p.add_argument("space")
    p.add_argument("--out")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("analyze", help="run the method on coefficient data from a JSON file")
    p.add_argument("space")
    p.add_argument("--input", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="check q = q' - q'' on random positive a-vectors")
    p.add_argument("--spaces", help="';'-separated list, e.g. 'G(2,4);Q6;OP2'")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-a", type=int, default=5)
    p.add_argument("--out")
    p.add_argument("--corrupt", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="signature table over families of G/P")
    p.add_argument("--types", nargs="+", default=["A", "D"])
    p.add_argument("--max-rank", type=int, default=6)
    p.add_argument("--node", default="all", help="'all', 'first', 'last' or a node number")
    p.add_argument("--even-only", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("oracle-check", help="compare the partition model of G(p,m) with the root-system model")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_oracle_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SchubsigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
