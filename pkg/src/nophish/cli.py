"""Command-line interface: train / eval / importance / scan / bench / serve.

Exit codes: scans exit 0 (safe), 1 (warning), 2 (dangerous); argparse usage
errors exit 2; operational failures exit >= 10 (10 generic, 11 model
container, 12 data/config, 13 system/socket). Every run prints its effective
configuration (with the seed) to stderr for reproducibility. ``--json``
switches stdout to machine-readable output. See docs/cli.md.
"""

import argparse
import json
import os
import signal
import sys

from . import __version__
from .config import (
    ENV_FIXTURES_DIR,
    ENV_MODEL,
    ENV_POLICY_WARN,
    ENV_PORT,
    env_or,
)
from .dataset import SplitSpec, load_dataset, split
from .errors import ConfigError, ModelFormatError, NoPhishError
from .evaluation import (
    DEFAULT_SEEDS,
    DEFAULT_SPLITS,
    aggregate,
    compare_algorithms,
    field_bench,
    format_table,
    load_corpus,
    report_for,
    write_plot_data,
    write_reports_csv,
    write_reports_json,
)
from .features import FEATURE_NAMES
from .learners import (
    importance_ranking,
    load_model,
    permutation_importance,
    save_model,
    train_forest,
    train_knn,
    train_svm,
)
from .probe import FetchPolicy, make_fixture_providers, make_live_providers, make_stub_providers
from .service import ServiceConfig, VerdictPolicy, scan, serve

EXIT_GENERIC = 10
EXIT_MODEL = 11
EXIT_DATA = 12
EXIT_SYSTEM = 13

_ALGO_BY_FLAG = {"rf": "forest", "knn": "knn", "svm": "svm"}


def _fraction(raw: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{raw!r} is not a number") from None
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"fraction {raw} outside (0,1)")
    return value


def _load_config_file(path):
    if not path:
        return {}
    try:
        with open(path, encoding="utf-8") as f:
            raw = json.load(f)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: bad JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: config must be a JSON object")
    return raw


def _setting(flag_value, env_name, cfg, cfg_key, default=None, cast=None):
    """flags > environment > config file > default."""
    value = flag_value
    if value is None and env_name:
        value = env_or(env_name)
    if value is None:
        value = cfg.get(cfg_key)
    if value is None:
        value = default
    if value is not None and cast is not None:
        value = cast(value)
    return value


def _print_effective_config(command: str, settings: dict):
    line = {"command": command}
    line.update({k: v for k, v in settings.items() if v is not None})
    print(f"config: {json.dumps(line, sort_keys=True, default=str)}", file=sys.stderr)


def _emit(args, human: str, payload: dict):
    if args.json:
        print(json.dumps(payload, indent=2, default=str))
    else:
        print(human)


def _report_human(report) -> str:
    cm = report.confusion

    def fmt(value):
        return "n/a" if value is None else f"{value:.3f}"

    return (
        f"{report.algorithm} @ split {report.train_fraction} seed {report.seed}\n"
        f"  confusion (phishing-positive): tn={cm.tn} fp={cm.fp} fn={cm.fn} tp={cm.tp}\n"
        f"  accuracy={fmt(report.accuracy)} precision={fmt(report.precision)} "
        f"recall={fmt(report.recall)}\n"
        f"  legit-positive: precision={fmt(report.precision_legit)} "
        f"recall={fmt(report.recall_legit)}"
        + (f"\n  oob_score={fmt(report.oob_score)}" if report.oob_score is not None else "")
    )


def _providers_for(args, cfg):
    fixtures = _setting(getattr(args, "fixtures", None), ENV_FIXTURES_DIR, cfg, "fixtures")
    timeout_ms = _setting(getattr(args, "timeout_ms", None), None, cfg, "timeout_ms", 8000, int)
    policy = FetchPolicy(timeout_ms=timeout_ms)
    if getattr(args, "live", False):
        return make_live_providers(
            policy=policy,
            rank_file=getattr(args, "rank_file", None) or cfg.get("rank_file"),
            report_file=getattr(args, "report_file", None) or cfg.get("report_file"),
            index_file=getattr(args, "index_file", None) or cfg.get("index_file"),
        ), ("live", fixtures)
    if fixtures:
        return make_fixture_providers(fixtures, policy=policy), ("fixture", fixtures)
    return make_stub_providers(), ("stub", None)


def _policy_for(args, cfg) -> VerdictPolicy:
    warn = _setting(getattr(args, "warn_threshold", None), ENV_POLICY_WARN, cfg,
                    "warn_threshold", 0.35, float)
    danger = _setting(getattr(args, "danger_threshold", None), None, cfg,
                      "danger_threshold", 0.5, float)
    override = _setting(getattr(args, "min_fail_override", None), None, cfg,
                        "min_fail_override", None, int)
    return VerdictPolicy(danger_threshold=danger, warn_threshold=warn,
                         min_fail_override=override)


def _load_model_arg(args, cfg):
    path = _setting(args.model, ENV_MODEL, cfg, "model")
    if not path:
        raise ConfigError("no model given: pass --model or set NOPHISH_MODEL")
    return load_model(path), path


# --- subcommands ---------------------------------------------------------------

def cmd_train(args, cfg) -> int:
    seed = _setting(args.seed, None, cfg, "seed", 0, int)
    algo = _ALGO_BY_FLAG[args.algo]
    _print_effective_config("train", {
        "data": args.data, "algo": args.algo, "split": args.split, "seed": seed,
        "out": args.out, "trees": args.trees, "m_try": args.m_try,
        "max_depth": args.max_depth, "min_leaf": args.min_leaf, "k": args.k,
        "lam": args.lam, "epochs": args.epochs, "stratified": not args.no_stratify,
    })
    ds = load_dataset(args.data, format=args.format)
    train_ds, test_ds = split(ds, SplitSpec(args.split, seed, not args.no_stratify))
    if algo == "forest":
        model = train_forest(
            train_ds, n_trees=args.trees, m_try=args.m_try,
            max_depth=args.max_depth, min_samples_leaf=args.min_leaf,
            seed=seed, n_jobs=args.n_jobs,
        )
    elif algo == "knn":
        model = train_knn(train_ds, k=args.k)
    else:
        model = train_svm(train_ds, lam=args.lam, epochs=args.epochs, seed=seed)
    if args.out:
        save_model(model, args.out)
    report = report_for(model, algo, test_ds, args.split, seed, not args.no_stratify)
    payload = report.to_dict()
    payload["model_file"] = args.out
    _emit(args, _report_human(report) + (f"\n  model written to {args.out}" if args.out else ""), payload)
    return 0


def cmd_eval(args, cfg) -> int:
    seeds = tuple(int(s) for s in args.seeds.split(","))
    splits = tuple(float(s) for s in args.splits.split(","))
    algos = tuple(_ALGO_BY_FLAG[a] for a in args.algos.split(","))
    _print_effective_config("eval", {
        "data": args.data, "splits": splits, "seeds": seeds, "algos": algos,
        "out_dir": args.out_dir,
    })
    ds = load_dataset(args.data, format=args.format)
    reports = compare_algorithms(ds, splits=splits, seeds=seeds,
                                 algorithms=algos, n_jobs=args.n_jobs)
    rows = aggregate(reports)
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        write_reports_csv(reports, os.path.join(args.out_dir, "reports.csv"))
        write_reports_json(reports, os.path.join(args.out_dir, "reports.json"))
        write_plot_data(reports, os.path.join(args.out_dir, "plot_data.csv"))
    _emit(args, format_table(rows),
          {"aggregates": rows, "reports": [r.to_dict() for r in reports]})
    return 0


def cmd_importance(args, cfg) -> int:
    seed = _setting(args.seed, None, cfg, "seed", 0, int)
    _print_effective_config("importance", {
        "model": args.model, "data": args.data, "method": args.method,
        "split": args.split, "seed": seed, "repeats": args.repeats,
    })
    model, _ = _load_model_arg(args, cfg)
    out = {}
    lines = []
    if args.method in ("mdi", "both"):
        if getattr(model, "mdi", None) is None:
            raise ConfigError("mdi importance needs a forest model")
        ranking = importance_ranking(model.mdi)
        out["mdi"] = [
            {"feature": int(i), "name": FEATURE_NAMES[int(i)] if int(i) < len(FEATURE_NAMES) else str(i),
             "importance": float(model.mdi[int(i)])}
            for i in ranking
        ]
        lines.append("MDI importance (best first):")
        lines += [f"  {row['feature']:>2} {row['name']:<24} {row['importance']:.4f}"
                  for row in out["mdi"]]
    if args.method in ("permutation", "both"):
        if not args.data:
            raise ConfigError("permutation importance needs --data for a holdout")
        ds = load_dataset(args.data, format=args.format)
        _, holdout = split(ds, SplitSpec(args.split, seed, True))
        imp = permutation_importance(model, holdout, repeats=args.repeats, seed=seed)
        ranking = importance_ranking(imp[:, 0])
        out["permutation"] = [
            {"feature": int(i), "name": FEATURE_NAMES[int(i)] if int(i) < len(FEATURE_NAMES) else str(i),
             "importance": float(imp[int(i), 0]), "std": float(imp[int(i), 1])}
            for i in ranking
        ]
        lines.append("permutation importance (accuracy drop, best first):")
        lines += [f"  {row['feature']:>2} {row['name']:<24} {row['importance']:.4f} ± {row['std']:.4f}"
                  for row in out["permutation"]]
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        path = os.path.join(args.out_dir, "importance.csv")
        with open(path, "w", encoding="utf-8") as f:
            f.write("method,feature,name,value,std\n")
            for method, rows in out.items():
                for row in rows:
                    f.write(f"{method},{row['feature']},{row['name']},"
                            f"{row['importance']:.6f},{row.get('std', '')}\n")
    _emit(args, "\n".join(lines), out)
    return 0


def _print_scan_human(report) -> str:
    lines = [
        f"{report.url}",
        f"  verdict: {report.verdict.upper()}  "
        f"(phishing probability {report.phishing_probability:.3f}, model {report.model_id})",
    ]
    if report.degraded:
        lines.append(f"  page fetch failed ({report.fetch_status}); "
                     "content evidence defaulted")
    fails = [f for f in report.features if f["status"] == "fail"]
    sus = [f for f in report.features if f["status"] == "suspicious"]
    lines.append(f"  features: {len(report.features) - len(fails) - len(sus)} pass, "
                 f"{len(sus)} suspicious, {len(fails)} fail")
    for f in fails:
        lines.append(f"    fail       {f['id']:>2} {f['name']}")
    for f in sus:
        lines.append(f"    suspicious {f['id']:>2} {f['name']}")
    return "\n".join(lines)


def cmd_scan(args, cfg) -> int:
    providers, (mode, fixtures) = _providers_for(args, cfg)
    policy = _policy_for(args, cfg)
    _print_effective_config("scan", {
        "url": args.url, "model": args.model, "mode": mode, "fixtures": fixtures,
        "warn_threshold": policy.warn_threshold,
        "danger_threshold": policy.danger_threshold,
    })
    model, _ = _load_model_arg(args, cfg)
    report = scan(args.url, model, providers, policy=policy)
    _emit(args, _print_scan_human(report), report.to_dict())
    return {"safe": 0, "warning": 1, "dangerous": 2}[report.verdict]


def cmd_bench(args, cfg) -> int:
    providers, (mode, fixtures) = _providers_for(args, cfg)
    policy = _policy_for(args, cfg)
    _print_effective_config("bench", {
        "corpus": args.corpus, "model": args.model, "mode": mode,
        "fixtures": fixtures, "warn_threshold": policy.warn_threshold,
    })
    model, _ = _load_model_arg(args, cfg)
    corpus = load_corpus(args.corpus)
    result = field_bench(corpus, model, providers, policy=policy)
    cm = result.confusion
    lines = [
        f"field bench over {len(corpus)} URLs "
        f"({sum(1 for _, l in corpus if l == -1)} phishing / "
        f"{sum(1 for _, l in corpus if l == 1)} legitimate)",
        "confusion matrix (phishing-positive; warning counts as positive):",
        f"  TN={cm.tn}  FP={cm.fp}",
        f"  FN={cm.fn}  TP={cm.tp}",
    ]
    for v in result.verdicts:
        truth = "phishing" if v.label == -1 else "legitimate"
        lines.append(f"  {v.verdict:>9}  p={v.probability:.3f}  [{truth}] {v.url}")
    if result.excluded:
        lines.append("unscorable (excluded):")
        lines += [f"  {v.url}: {v.note}" for v in result.excluded]
    _emit(args, "\n".join(lines), result.to_dict())
    return 0


def cmd_serve(args, cfg) -> int:
    providers, (mode, fixtures) = _providers_for(args, cfg)
    policy = _policy_for(args, cfg)
    port = _setting(args.port, ENV_PORT, cfg, "port", 3000, int)
    host = _setting(args.host, None, cfg, "host", "127.0.0.1")
    _print_effective_config("serve", {
        "port": port, "host": host, "model": args.model, "mode": mode,
        "fixtures": fixtures, "warn_threshold": policy.warn_threshold,
    })
    model, model_path = _load_model_arg(args, cfg)
    config = ServiceConfig(port=port, host=host, policy=policy)
    try:
        server = serve(config, model, providers, background=True)
    except OSError as exc:
        print(f"cannot bind {host}:{port}: {exc}", file=sys.stderr)
        return EXIT_SYSTEM
    print(f"serving on http://{host}:{server.port} (model {model_path})",
          file=sys.stderr)
    stop = {"flag": False}

    def _handle(signum, frame):
        stop["flag"] = True
        server.shutdown()

    signal.signal(signal.SIGINT, _handle)
    signal.signal(signal.SIGTERM, _handle)
    try:
        while not stop["flag"]:
            signal.pause()
    finally:
        server.shutdown()
        server.server_close()
    print("shut down", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nophish",
        description="Phishing-website detection: training, evaluation, scanning, serving.",
    )
    parser.add_argument("--version", action="version", version=f"nophish {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON config file (flags > env > config > defaults)")
        p.add_argument("--json", action="store_true", help="machine-readable stdout")
        p.add_argument("--seed", type=int, default=None, help="RNG seed (default 0)")

    p = sub.add_parser("train", help="train one model and report held-out metrics")
    common(p)
    p.add_argument("--data", required=True)
    p.add_argument("--format", choices=("arff", "csv"), default=None)
    p.add_argument("--algo", choices=tuple(_ALGO_BY_FLAG), required=True)
    p.add_argument("--split", type=_fraction, default=0.9, help="train fraction (default 0.9)")
    p.add_argument("--no-stratify", action="store_true")
    p.add_argument("--out", help="model file to write")
    p.add_argument("--trees", type=int, default=100)
    p.add_argument("--m-try", type=int, default=None)
    p.add_argument("--max-depth", type=int, default=None)
    p.add_argument("--min-leaf", type=int, default=1)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--lam", type=float, default=1e-4)
    p.add_argument("--epochs", type=int, default=40)
    p.add_argument("--n-jobs", type=int, default=1)
    p.set_defaults(fn=cmd_train)

    p = sub.add_parser("eval", help="algorithm/split comparison sweep")
    common(p)
    p.add_argument("--data", required=True)
    p.add_argument("--format", choices=("arff", "csv"), default=None)
    p.add_argument("--splits", default=",".join(str(s) for s in DEFAULT_SPLITS))
    p.add_argument("--seeds", default=",".join(str(s) for s in DEFAULT_SEEDS))
    p.add_argument("--algos", default="rf,knn,svm")
    p.add_argument("--out-dir", help="write reports.csv/reports.json/plot_data.csv here")
    p.add_argument("--n-jobs", type=int, default=1)
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("importance", help="MDI and permutation feature importance")
    common(p)
    p.add_argument("--model", default=None)
    p.add_argument("--data", default=None)
    p.add_argument("--format", choices=("arff", "csv"), default=None)
    p.add_argument("--method", choices=("mdi", "permutation", "both"), default="both")
    p.add_argument("--split", type=_fraction, default=0.9)
    p.add_argument("--repeats", type=int, default=10)
    p.add_argument("--out-dir")
    p.set_defaults(fn=cmd_importance)

    p = sub.add_parser("scan", help="scan one URL; exit 0 safe / 1 warning / 2 dangerous")
    common(p)
    p.add_argument("url")
    p.add_argument("--model", default=None)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--offline", action="store_true", default=True,
                      help="fixtures/stubs only (default)")
    mode.add_argument("--live", action="store_true", default=False,
                      help="allow network lookups")
    p.add_argument("--fixtures", help="fixtures directory for offline mode")
    p.add_argument("--rank-file")
    p.add_argument("--report-file")
    p.add_argument("--index-file")
    p.add_argument("--timeout-ms", type=int, default=None)
    p.add_argument("--warn-threshold", type=float, default=None)
    p.add_argument("--danger-threshold", type=float, default=None)
    p.add_argument("--min-fail-override", type=int, default=None)
    p.set_defaults(fn=cmd_scan)

    p = sub.add_parser("bench", help="field bench over a labeled URL corpus")
    common(p)
    p.add_argument("--corpus", required=True, help="CSV with url,label[,fixture]")
    p.add_argument("--model", default=None)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--offline", action="store_true", default=True)
    mode.add_argument("--live", action="store_true", default=False)
    p.add_argument("--fixtures")
    p.add_argument("--rank-file")
    p.add_argument("--report-file")
    p.add_argument("--index-file")
    p.add_argument("--timeout-ms", type=int, default=None)
    p.add_argument("--warn-threshold", type=float, default=None)
    p.add_argument("--danger-threshold", type=float, default=None)
    p.add_argument("--min-fail-override", type=int, default=None)
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("serve", help="run the detection HTTP service")
    common(p)
    p.add_argument("--model", default=None)
    p.add_argument("--port", type=int, default=None)
    p.add_argument("--host", default=None)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--offline", action="store_true", default=False)
    mode.add_argument("--live", action="store_true", default=False)
    p.add_argument("--fixtures")
    p.add_argument("--rank-file")
    p.add_argument("--report-file")
    p.add_argument("--index-file")
    p.add_argument("--timeout-ms", type=int, default=None)
    p.add_argument("--warn-threshold", type=float, default=None)
    p.add_argument("--danger-threshold", type=float, default=None)
    p.add_argument("--min-fail-override", type=int, default=None)
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _load_config_file(getattr(args, "config", None))
        return args.fn(args, cfg)
    except ModelFormatError as exc:
        print(f"model error: {exc}", file=sys.stderr)
        return EXIT_MODEL
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NoPhishError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GENERIC
    except OSError as exc:
        print(f"system error: {exc}", file=sys.stderr)
        return EXIT_SYSTEM


if __name__ == "__main__":
    sys.exit(main())
