"""Command-line interface: decompose, rank, verify, gen, bench.

All I/O is JSON (see jsonio); results go to stdout or --output.  Exit
codes: 0 success, 1 verification failure, 2 input/usage error,
3 numeric/resource budget exhausted.  The environment variable
WARING_MAX_PRECISION_BITS caps the adaptive working precision of the
numeric layer.
"""

import argparse
import concurrent.futures
import csv
import hashlib
import io
import os
import random
import sys
import time
from fractions import Fraction

from . import jsonio
from .decompose import build_Q_deterministic, fast_decompose, rank_of, symbolic_lambda
from .fields import PrimeField, QQ
from .forms import BinaryForm, BivariatePoly, is_squarefree_form
from .hankel import kernel_pair
from .jsonio import DocumentError
from .numeric import PrecisionBudgetExceeded, decompose_numeric, residual_norm
from .oracle import instance_from_kernel_pair, rational_instance

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


def _max_precision_from_env():
    raw = os.environ.get("WARING_MAX_PRECISION_BITS")
    if raw is None:
        return None
    try:
        return max(64, int(raw))
    except ValueError:
        raise DocumentError(f"WARING_MAX_PRECISION_BITS={raw!r} is not an integer")


def _load_form(path, field):
    return jsonio.form_from_json(jsonio.load_json(path), field)


def _decompose_once(f, args, seed):
    strategy = "deterministic" if args.strategy == "det" else "interpolated"
    sd = fast_decompose(f, strategy=strategy, rng_seed=seed)
    nd = None
    if args.bits is not None:
        nd = decompose_numeric(
            sd, f, args.bits, max_precision=_max_precision_from_env()
        )
    return jsonio.decomposition_to_json(sd, nd)


def _plain_summary(doc):
    lines = [
        f"rank={doc['rank']} border_rank={doc['border_rank']} "
        f"unique={str(doc['unique']).lower()} N1={doc['N1']} N2={doc['N2']}",
        f"Q coefficients: {doc['Q']}",
    ]
    if doc.get("y_divides"):
        lines.append(f"term at infinity: lambda_inf={doc['lambda_inf']}")
    if "numeric" in doc:
        n = doc["numeric"]
        lines.append(
            f"numeric: {len(n['terms'])} terms, residual <= {n['residual_bound']} "
            f"(requested 2^-{n['requested_bits']})"
        )
    return "\n".join(lines)


def cmd_decompose(args):
    field = jsonio.parse_field(args.field)
    if args.bits is not None and isinstance(field, PrimeField):
        raise DocumentError("numeric approximation requires rational field")
    if args.batch:
        return _run_batch(args, field)
    f = _load_form(args.input, field)
    doc = _decompose_once(f, args, args.seed)
    if args.plain:
        print(_plain_summary(doc))
    jsonio.dump_json(doc, args.output)
    return EXIT_OK


def _run_batch(args, field):
    indir = args.input
    outdir = args.output
    if outdir is None:
        raise DocumentError("--batch requires --output DIRECTORY")
    if not os.path.isdir(indir):
        raise DocumentError(f"--batch input {indir!r} is not a directory")
    os.makedirs(outdir, exist_ok=True)
    names = sorted(n for n in os.listdir(indir) if n.endswith(".json"))

    def job(name):
        digest = hashlib.sha256(name.encode()).digest()
        seed = args.seed ^ int.from_bytes(digest[:8], "big")
        f = _load_form(os.path.join(indir, name), field)
        doc = _decompose_once(f, args, seed)
        jsonio.dump_json(doc, os.path.join(outdir, name))
        return {"input": name, "rank": doc["rank"], "unique": doc["unique"]}

    index = []
    failures = []
    with concurrent.futures.ThreadPoolExecutor(max_workers=min(8, max(1, len(names)))) as pool:
        for name, fut in [(n, pool.submit(job, n)) for n in names]:
            try:
                index.append(fut.result())
            except (DocumentError, ValueError) as exc:
                failures.append({"input": name, "error": str(exc)})
    jsonio.dump_json(
        {"results": index, "failures": failures}, os.path.join(outdir, "index.json")
    )
    return EXIT_OK if not failures else EXIT_INPUT


def cmd_rank(args):
    field = jsonio.parse_field(args.field)
    f = _load_form(args.input, field)
    if f.D == 1:
        sd = fast_decompose(f)
        n1, n2, r, unique = sd.N1, sd.N2, sd.rank, sd.unique
    else:
        kp = kernel_pair(f)
        r, unique = rank_of(kp)
        n1, n2 = kp.N1, kp.N2
    print(
        f"rank={r} border_rank={n1 + 1} unique={str(unique).lower()} N1={n1} N2={n2}"
    )
    return EXIT_OK


def cmd_verify(args):
    field = jsonio.parse_field(args.field)
    if isinstance(field, PrimeField):
        raise DocumentError("verification requires the rational field")
    f = _load_form(args.form, field)
    doc = jsonio.load_json(args.decomposition)
    block = doc.get("numeric", doc) if isinstance(doc, dict) else {}
    if isinstance(block, dict) and isinstance(block.get("terms"), list):
        terms = jsonio.terms_from_json(doc)
        bound = residual_norm(f, terms)
        ok = bound <= Fraction(1, 2 ** args.bits)
        if not ok:
            print(f"verification failed: residual bound {float(bound):.6g} "
                  f"> 2^-{args.bits}", file=sys.stderr)
        else:
            print(f"ok: residual bound {float(bound):.6g} <= 2^-{args.bits}")
        return EXIT_OK if ok else EXIT_VERIFY_FAILED
    return _verify_symbolic(f, doc, args)


def _verify_symbolic(f, doc, args):
    # no explicit terms: check the exact symbolic data instead
    if not isinstance(doc, dict) or "Q" not in doc:
        print("verification failed: document has neither terms nor Q", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    field = f.field
    try:
        Q = BivariatePoly(field, [field.coerce(c) for c in doc["Q"]])
        sd = symbolic_lambda(f, Q)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    recomputed = jsonio.decomposition_to_json(sd)
    for key in ("T", "dQ", "y_divides", "lambda_inf"):
        if key in doc and doc[key] != recomputed.get(key):
            print(f"verification failed: field {key!r} does not match the form",
                  file=sys.stderr)
            return EXIT_VERIFY_FAILED
    print(f"ok: exact symbolic decomposition of rank {sd.rank}")
    return EXIT_OK


def cmd_gen(args):
    field = jsonio.parse_field(args.field)
    rng = random.Random(args.seed)
    if args.mode == "rational-roots":
        f, truth = _gen_rational_roots(field, rng, args)
    elif args.mode == "kernel-pair":
        f, truth = _gen_kernel_pair(field, args)
    else:
        f, truth = _gen_generic(field, rng, args)
    doc = jsonio.form_to_json(f)
    jsonio.dump_json(doc, args.output)
    if args.output is not None:
        jsonio.dump_json(truth, args.output + ".truth.json")
    return EXIT_OK


def _gen_rational_roots(field, rng, args):
    if args.rank is None or args.degree is None:
        raise DocumentError("--mode rational-roots needs --rank and --degree")
    r, D = args.rank, args.degree
    if not 1 <= r <= (D + 1) // 2 + ((D + 1) % 2):
        raise DocumentError(f"rank must lie in 1..ceil((D+1)/2) = {(D + 2) // 2}")
    pool = list(range(-4 * r - 4, 4 * r + 5))
    rng.shuffle(pool)
    alphas = pool[:r]
    lambdas = [Fraction(rng.randint(1, 9), rng.randint(1, 9)) * rng.choice((1, -1))
               for _ in range(r)]
    points = [(field.coerce(a), field.one) for a in alphas]
    f = rational_instance(field, points, lambdas, D)
    truth = {
        "mode": "rational-roots",
        "rank": r,
        "terms": [
            {"lambda": field.format(field.coerce(l)), "alpha": field.format(al), "beta": "1"}
            for (al, _), l in zip(points, lambdas)
        ],
    }
    return f, truth


def _gen_kernel_pair(field, args):
    if not args.pv or not args.pw:
        raise DocumentError("--mode kernel-pair needs --pv and --pw coefficient lists")
    pv = BivariatePoly(field, [field.coerce(c) for c in args.pv.split(",")])
    pw = BivariatePoly(field, [field.coerce(c) for c in args.pw.split(",")])
    try:
        f = instance_from_kernel_pair(pv, pw)
    except ValueError as exc:
        raise DocumentError(str(exc))
    truth = {
        "mode": "kernel-pair",
        "N1": pv.n - 1,
        "N2": pw.n - 1,
        "rank": (pv.n - 1 + 1) if is_squarefree_form(pv) else pw.n,
        "Pv": [field.format(c) for c in pv.v],
        "Pw": [field.format(c) for c in pw.v],
    }
    return f, truth


def _gen_generic(field, rng, args):
    if args.degree is None:
        raise DocumentError("--mode generic needs --degree")
    D = args.degree
    while True:
        a = [field.coerce(rng.randint(-99, 99)) for _ in range(D + 1)]
        if any(not field.is_zero(x) for x in a):
            break
    f = BinaryForm(field, D, a, given="normalized")
    truth = {"mode": "generic", "expected_generic_rank": D // 2 + 1}
    return f, truth


def cmd_bench(args):
    field = jsonio.parse_field(args.field)
    degrees = [int(d) for d in args.degrees.split(",")]
    rng = random.Random(args.seed)
    rows = []
    for D in degrees:
        runs = []
        for rep in range(args.repeat):
            if isinstance(field, PrimeField):
                a = [rng.randrange(field.p) for _ in range(D + 1)]
            else:
                a = [Fraction(rng.randint(-99, 99)) for _ in range(D + 1)]
            if all(x == 0 for x in a):
                a[0] = field.one
            f = BinaryForm(field, D, a, given="normalized")
            runs.append(_bench_once(f))
        med = {k: sorted(r[k] for r in runs)[len(runs) // 2] for k in runs[0]}
        rows.append({"D": D, **med})
    _emit_bench(rows, args)
    return EXIT_OK


def _bench_once(f):
    t0 = time.perf_counter()
    kp = kernel_pair(f)
    t1 = time.perf_counter()
    squarefree = is_squarefree_form(kp.Pv)
    t2 = time.perf_counter()
    if squarefree:
        Q = kp.Pv.canonical()
    else:
        Q = build_Q_deterministic(kp)
    t3 = time.perf_counter()
    sd = symbolic_lambda(f, Q, kp=kp, verified=True)
    t4 = time.perf_counter()
    assert sd.rank in (kp.N1 + 1, kp.N2 + 1)
    return {
        "kernel_pair_s": t1 - t0,
        "squarefree_s": t2 - t1,
        "build_q_s": t3 - t2,
        "lambda_s": t4 - t3,
        "total_s": t4 - t0,
    }


def _emit_bench(rows, args):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
    writer.writeheader()
    for row in rows:
        writer.writerow({k: (f"{v:.6f}" if isinstance(v, float) else v)
                         for k, v in row.items()})
    text = buf.getvalue()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    print(text, end="")
    prev = None
    for row in rows:
        if prev is not None and prev["total_s"] > 0:
            ratio = row["total_s"] / prev["total_s"]
            print(f"# doubling ratio D={prev['D']} -> {row['D']}: {ratio:.2f}")
        prev = row


def build_parser():
    parser = argparse.ArgumentParser(
        prog="binwaring",
        description="Minimal Waring decompositions of binary forms "
        "(symbolic and certified numeric).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="decompose a form (JSON in, JSON out)")
    p.add_argument("input", help="form document, or a directory with --batch")
    p.add_argument("--strategy", choices=("det", "interp"), default="det")
    p.add_argument("--seed", type=int, default=0)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--bits", type=int, default=None,
                       help="also approximate terms to accuracy 2^-BITS")
    group.add_argument("--symbolic-only", action="store_true",
                       help="exact symbolic output only (default)")
    p.add_argument("--field", default="rational", help="rational | prime:p")
    p.add_argument("--output", default=None)
    p.add_argument("--plain", action="store_true", help="also print a summary")
    p.add_argument("--batch", action="store_true",
                   help="process every *.json in INPUT into --output dir")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("rank", help="rank, border rank, uniqueness, N1, N2")
    p.add_argument("input")
    p.add_argument("--field", default="rational")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("verify", help="check a decomposition against a form")
    p.add_argument("form")
    p.add_argument("decomposition")
    p.add_argument("--bits", type=int, default=64)
    p.add_argument("--field", default="rational")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate test instances with ground truth")
    p.add_argument("--mode", choices=("rational-roots", "kernel-pair", "generic"),
                   required=True)
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--rank", type=int, default=None)
    p.add_argument("--pv", default=None, help="comma-separated Pv coefficients")
    p.add_argument("--pw", default=None, help="comma-separated Pw coefficients")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--field", default="rational")
    p.add_argument("--output", default=None,
                   help="write the form here and the truth to OUTPUT.truth.json")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="stage timings of the symbolic pipeline")
    p.add_argument("--field", default="prime:2305843009213693951")
    p.add_argument("--degrees", default="1024,2048,4096")
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default=None, help="CSV file")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PrecisionBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
