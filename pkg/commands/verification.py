import logging

from tangent.verify import SUITES, run_suites

from utils import emit, say, write_report

logger = logging.getLogger(__name__)


def verify(app, args):
    cfg = app.config
    cfg.override(seed=args.seed, verify_cases=args.cases, verify_max_n=args.n)
    seed, cases, max_n = cfg["seed"], cfg["verify_cases"], cfg["verify_max_n"]
    app.check_dim(max_n)
    results = run_suites(args.suite, seed=seed, cases=cases, max_n=max_n, ring=app.ring)
    ok = all(r.ok for r in results)
    payload = {
        "seed": seed,
        "cases": cases,
        "max_n": max_n,
        "ring": cfg["ring"],
        "ok": ok,
        "suites": [r.to_json() for r in results],
    }
    for r in results:
        say(f"{r.name}: {r.passed} passed, {r.failed} failed ({r.seconds:.2f}s)")
    if args.report:
        write_report(args.report, payload)
    emit(payload)
    return 0 if ok else 1


def setup(app):
    parser = app.add_command("verify", verify, "run the randomized property suites")
    parser.add_argument("--suite", choices=["all", *SUITES], default="all")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--n", type=int, default=None, help="largest order tried")
    parser.add_argument("--cases", type=int, default=None, help="random cases per suite")
    parser.add_argument("--report", default=None, help="also write the JSON result to this file")
