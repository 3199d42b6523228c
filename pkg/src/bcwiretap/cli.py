"""Command-line entry point.

Every command writes its data files next to a ``PREFIX.manifest.json`` that
records the resolved parameters, input hashes and output hashes.  ``replay``
reruns a manifest and checks the outputs byte for byte.

Exit codes: 0 ok, 1 replay mismatch, 2 invalid input, 3 infeasible rates,
4 enumeration or codebook budget exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .channel import AuxPolicy, ChannelSpec, build_full_joint, load_channel
from .coding import (
    BinningRates,
    CodebookTooLarge,
    EnumerationBudgetExceeded,
    InfeasibleRates,
    TypicalityParams,
    covering_experiment,
    derive_rates,
    exact_equivocation,
    generate_codebook,
    message_entropy_rate,
    simulate,
)
from .game import game_upper_bound, load_game
from .gaussian import GaussianParamError, GaussianParams, SweepGrid, sweep_region
from .probcore import Pmf, ValidationError
from .region import SearchConfig, search_region

THREADS_ENV = "BCWIRETAP_THREADS"
EXIT_OK, EXIT_MISMATCH, EXIT_INVALID, EXIT_INFEASIBLE, EXIT_BUDGET = 0, 1, 2, 3, 4
MANIFEST_SCHEMA = 1


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INVALID):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------- helpers


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def _read_json(path) -> dict:
    p = Path(path)
    if not p.is_file():
        raise CliError(f"{path}: no such file")
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}: malformed JSON ({exc})") from exc


def _resolve(ref, base: Path, inputs: dict, loader):
    """Inline object or path (relative to the referring file)."""
    if isinstance(ref, str):
        p = (base / ref) if not Path(ref).is_absolute() else Path(ref)
        if not p.is_file():
            raise CliError(f"{p}: no such file")
        inputs[str(p)] = _sha256(p.read_bytes())
        return loader(_read_json(p))
    if isinstance(ref, dict):
        return loader(ref)
    raise CliError(f"expected a path or an inline object, got {type(ref).__name__}")


def _record_input(path, inputs: dict) -> Path:
    p = Path(path)
    if not p.is_file():
        raise CliError(f"{path}: no such file")
    inputs[str(p)] = _sha256(p.read_bytes())
    return p


class _Run:
    """Collects outputs and writes the manifest."""

    def __init__(self, command: str, params: dict, prefix: str, threads: int):
        self.command = command
        self.params = params
        self.prefix = prefix
        self.threads = threads
        self.inputs: dict = {}
        self.outputs: dict = {}
        self.start = time.perf_counter()

    def write(self, suffix: str, text: str) -> None:
        path = Path(f"{self.prefix}.{suffix}")
        path.parent.mkdir(parents=True, exist_ok=True)
        data = text.encode()
        path.write_bytes(data)
        self.outputs[suffix] = _sha256(data)

    def finish(self) -> None:
        manifest = {
            "schema_version": MANIFEST_SCHEMA,
            "tool": "bcwiretap",
            "version": __version__,
            "command": self.command,
            "params": self.params,
            "seed": self.params.get("seed"),
            "threads": self.threads,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "duration_s": round(time.perf_counter() - self.start, 6),
        }
        Path(f"{self.prefix}.manifest.json").write_text(_dump(manifest))


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _pair(text: str) -> tuple:
    try:
        a, b = (int(v) for v in text.split(","))
    except ValueError as exc:
        raise CliError(f"expected K1,K2, got {text!r}") from exc
    return a, b


# ---------------------------------------------------------------- commands


def cmd_region_discrete(p: dict, run: _Run) -> None:
    _record_input(p["channel"], run.inputs)
    spec = load_channel(p["channel"])
    aux = _pair(p["aux_sizes"]) if p.get("aux_sizes") else None
    cfg = SearchConfig(aux_sizes=aux, sample_budget=p["budget"], refinement_iterations=p["refine"],
                       seed=p["seed"], workers=run.threads)
    res = search_region(spec, cfg)
    run.write("region.csv", res.region.to_csv())
    run.write("policies.json", _dump(res.to_json()))


def cmd_region_gaussian(p: dict, run: _Run) -> None:
    gp = GaussianParams(p["P"], p["N1"], p["N2"], p["N3"], p["Q1"], p["Q2"], p["rho"])
    try:
        grid = SweepGrid.parse(p["grid"], gp)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    res = sweep_region(gp, grid, eavesdropper=not p["no_eavesdropper"])
    run.write("region.csv", res.region.to_csv())
    sweep = {
        "schema_version": 1,
        "params": gp.to_json(),
        "eavesdropper": not p["no_eavesdropper"],
        "grid": grid.to_json(),
        "points": res.points,
        "vertices": [
            {"vertex": list(v), "alpha1": a[0], "alpha2": a[1], "beta": a[2]} if a else {"vertex": list(v)}
            for v, a in res.vertex_params
        ],
    }
    run.write("sweep.json", _dump(sweep))


def _load_scheme(cfg_path: str, run: _Run):
    base = Path(cfg_path).parent
    cfg = _read_json(_record_input(cfg_path, run.inputs))
    for key in ("channel", "policy", "n"):
        if key not in cfg:
            raise CliError(f"{cfg_path}: config is missing {key!r}")
    spec = _resolve(cfg["channel"], base, run.inputs, ChannelSpec.from_json)
    pol = _resolve(cfg["policy"], base, run.inputs, AuxPolicy.from_json)
    j = build_full_joint(spec, pol)
    if "rates" in cfg:
        rates = BinningRates.from_json(cfg["rates"])
    elif "margin" in cfg:
        rates = derive_rates(j, float(cfg["margin"]))
    else:
        raise CliError(f"{cfg_path}: config needs 'rates' or 'margin'")
    return cfg, spec, pol, j, rates


def cmd_simulate(p: dict, run: _Run) -> None:
    cfg, spec, pol, j, rates = _load_scheme(p["config"], run)
    tp = TypicalityParams(float(cfg.get("epsilon", 0.1)), int(cfg["n"]))
    rep = simulate(spec, pol, rates, tp, int(cfg.get("trials", 100)), cfg.get("seed", 0), workers=run.threads)
    run.write("report.json", _dump(rep.to_json()))


def cmd_equivocation(p: dict, run: _Run) -> None:
    cfg, spec, pol, j, rates = _load_scheme(p["config"], run)
    n = int(cfg["n"])
    tp = TypicalityParams(float(cfg.get("epsilon", 1.0)), n)
    budget = int(cfg.get("budget", 10 ** 8))
    seed = cfg.get("seed", 0)
    seed = list(seed) if isinstance(seed, list) else [int(seed)]
    out = {"schema_version": 1, "n": n, "rates": rates.to_json()}
    cb = generate_codebook(j, rates, n, [*seed, 0])
    out["equivocation_bits_per_symbol"] = exact_equivocation(cb, spec, pol, tp, budget=budget)
    out["message_entropy_bits_per_symbol"] = message_entropy_rate(cb)
    if cfg.get("ablation", True):
        cb0 = generate_codebook(j, rates.without_subbins(), n, [*seed, 0])
        out["no_subbin_equivocation_bits_per_symbol"] = exact_equivocation(cb0, spec, pol, tp, budget=budget)
    run.write("equivocation.json", _dump(out))


def cmd_covering(p: dict, run: _Run) -> None:
    _record_input(p["joint"], run.inputs)
    joint = Pmf.from_json(_read_json(p["joint"]))
    res = covering_experiment(joint, p["ri"], p["rj"], p["n"], p["trials"], p["seed"], p["epsilon"])
    run.write("covering.json", _dump(res.to_json()))


def cmd_game_minmax(p: dict, run: _Run) -> None:
    _record_input(p["game"], run.inputs)
    game = load_game(p["game"])
    bound = game_upper_bound(game, p["budget"], p["seed"], workers=run.threads)
    run.write("result.json", _dump(bound.to_json()))


COMMANDS = {
    "region-discrete": cmd_region_discrete,
    "region-gaussian": cmd_region_gaussian,
    "simulate": cmd_simulate,
    "equivocation": cmd_equivocation,
    "covering": cmd_covering,
    "game-minmax": cmd_game_minmax,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bcwiretap", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=None, help=f"worker cap (default ${THREADS_ENV} or 1)")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("region-discrete", parents=[common], help="achievable region of a discrete channel")
    s.add_argument("--channel", required=True)
    s.add_argument("--aux-sizes", default=None, help="K1,K2 (default |X||S1||S2| each)")
    s.add_argument("--budget", type=int, default=1000, help="random policy samples")
    s.add_argument("--refine", type=int, default=200, help="local refinement steps per start")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", required=True)

    s = sub.add_parser("region-gaussian", parents=[common], help="Gaussian region over an (alpha1, alpha2, beta) grid")
    for name, default in (("P", 1.0), ("N1", 1.5), ("N2", 1.0), ("N3", 2.0), ("Q1", 0.0), ("Q2", 0.0), ("rho", 0.0)):
        s.add_argument(f"--{name}", type=float, default=default)
    s.add_argument("--grid", default="default", help='"default" or "alpha1=v,..;alpha2=v,..;beta=v,.."')
    s.add_argument("--no-eavesdropper", action="store_true", help="drop the eavesdropper terms")
    s.add_argument("--seed", type=int, default=0, help="unused; recorded for uniformity")
    s.add_argument("--out", required=True)

    s = sub.add_parser("simulate", parents=[common], help="Monte Carlo run of the binning scheme")
    s.add_argument("--config", required=True)
    s.add_argument("--out", required=True)

    s = sub.add_parser("equivocation", parents=[common], help="exact equivocation of a tiny code")
    s.add_argument("--config", required=True)
    s.add_argument("--out", required=True)

    s = sub.add_parser("covering", parents=[common], help="mutual covering experiment")
    s.add_argument("--joint", required=True)
    s.add_argument("--ri", type=float, required=True)
    s.add_argument("--rj", type=float, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--trials", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--epsilon", type=float, default=0.1)
    s.add_argument("--out", required=True)

    s = sub.add_parser("game-minmax", parents=[common], help="upper bound on player 4's min-max level")
    s.add_argument("--game", required=True)
    s.add_argument("--budget", type=int, default=32, help="correlated candidates to test")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", required=True)

    s = sub.add_parser("replay", parents=[common], help="rerun a manifest and compare output hashes")
    s.add_argument("--manifest", required=True)
    s.add_argument("--out", required=True, help="prefix for the regenerated outputs")
    return ap


_NOT_PARAMS = {"command", "threads", "out"}


def _execute(command: str, params: dict, prefix: str, threads: int) -> _Run:
    run = _Run(command, params, prefix, threads)
    COMMANDS[command](params, run)
    run.finish()
    return run


def _replay(args) -> int:
    man = _read_json(args.manifest)
    for key in ("command", "params", "outputs"):
        if key not in man:
            raise CliError(f"{args.manifest}: manifest is missing {key!r}")
    if man["command"] not in COMMANDS:
        raise CliError(f"{args.manifest}: unknown command {man['command']!r}")
    threads = args.threads or man.get("threads") or _default_threads()
    run = _execute(man["command"], man["params"], args.out, threads)
    bad = sorted(k for k in set(man["outputs"]) | set(run.outputs) if man["outputs"].get(k) != run.outputs.get(k))
    for k in bad:
        print(f"mismatch: {k}", file=sys.stderr)
    return EXIT_MISMATCH if bad else EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads is not None and args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return EXIT_INVALID
    try:
        if args.command == "replay":
            return _replay(args)
        threads = args.threads or _default_threads()
        params = {k: v for k, v in vars(args).items() if k not in _NOT_PARAMS}
        _execute(args.command, params, args.out, threads)
        return EXIT_OK
    except InfeasibleRates as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (EnumerationBudgetExceeded, CodebookTooLarge) as exc:
        print(f"budget: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (CliError, ValidationError, GaussianParamError, ValueError, KeyError, OSError) as exc:
        code = exc.code if isinstance(exc, CliError) else EXIT_INVALID
        print(f"error: {exc}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
