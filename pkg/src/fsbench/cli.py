"""Command line front end: ``fsbench run`` for scenarios, ``fsbench verify`` for suites.

Exit status: 0 on success, 2 when a check fails, 1 on bad input.
"""

from __future__ import annotations

import argparse
import copy
import csv
import io
import json
import random
import sys
from importlib import resources
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import jsonschema

from . import __version__
from .colourings import (
    ElementColouring,
    SetColouring,
    WitnessF,
    check_axiom_star_instance,
    compose,
    d_entangled,
    hash_colouring,
    log_parity,
    log_parity_colouring,
    osc_colouring,
    pr1_colouring,
    psi_mod,
    sandwich_sets,
)
from .deltasystems import condense
from .fssets import (
    DEFAULT_BOUND,
    FSMode,
    FSnMode,
    ResourceBoundError,
    SuSMode,
    brute_force_partition_check,
    coverage,
    find_witness,
    fs_iter,
    fs_n,
    partition_meta_search,
    pentagon_colouring,
    sumset,
)
from .groups import (
    AbelianPresentation,
    CayleyTableError,
    DirectSumElement,
    GroupSignature,
    coerce_value,
    embed_fg_abelian,
    kind_from_json,
    semigroup_embedding,
    word_image,
)
from .instances import MulticubeInstance, condensation_input, entangled_instance, osc_instance, pr1_instance, rational_family, replay_multicube
from .ordinals import FiniteOrdinalSet, Ordinal, OrdinalError, nat
from .suites import SUITES, run_suite

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CHECK = 2


class InputError(ValueError):
    def __init__(self, pointer: str, message: str):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer


def _pointer(path: Sequence) -> str:
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1") for p in path)


def load_schema() -> dict:
    return json.loads(resources.files("fsbench").joinpath("data/scenario.schema.json").read_text(encoding="utf-8"))


def validate(scenario: Any) -> None:
    """Raise :class:`InputError` for the first schema violation (deepest path first)."""
    validator = jsonschema.Draft202012Validator(load_schema())
    errors = list(validator.iter_errors(scenario))
    if not errors:
        return
    best = jsonschema.exceptions.best_match(errors)
    raise InputError(_pointer(best.absolute_path), best.message)


# -- decoding ---------------------------------------------------------------------------


def _ordinal(raw, pointer: str) -> Ordinal:
    if isinstance(raw, int):
        return nat(raw)
    try:
        return Ordinal.parse(raw)
    except OrdinalError as exc:
        raise InputError(pointer, str(exc)) from None


def _signature(data: dict, pointer: str) -> GroupSignature:
    coords = []
    for i, (key, kind) in enumerate(data.get("coordinates", [])):
        try:
            coords.append((_ordinal(key, f"{pointer}/coordinates/{i}/0"), kind_from_json(kind)))
        except ValueError as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"{pointer}/coordinates/{i}/1", str(exc)) from None
    default = data.get("default")
    try:
        return GroupSignature(coords, default=None if default is None else kind_from_json(default))
    except ValueError as exc:
        raise InputError(f"{pointer}/default", str(exc)) from None


def _element(sig: GroupSignature, data: dict, pointer: str) -> DirectSumElement:
    entries = []
    seen = set()
    for i, (key, raw) in enumerate(data["entries"]):
        alpha = _ordinal(key, f"{pointer}/entries/{i}/0")
        if alpha in seen:
            raise InputError(f"{pointer}/entries/{i}/0", f"coordinate {alpha} given twice")
        seen.add(alpha)
        try:
            entries.append((alpha, coerce_value(sig.kind_at(alpha), raw)))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"{pointer}/entries/{i}/1", str(exc)) from None
    return DirectSumElement(sig, entries)


def _elements(instance: dict, seed: Optional[int]) -> List[DirectSumElement]:
    if "recipe" in instance:
        recipe = instance["recipe"]
        if seed is None:
            raise InputError("/seed", "randomized recipes need a seed")
        if recipe["generator"] == "rational_family":
            return rational_family(seed, recipe["size"], recipe.get("coordinates", 6))
        return condensation_input(seed, recipe.get("size")).elements
    sig = _signature(instance["signature"], "/instance/signature")
    return [_element(sig, e, f"/instance/elements/{i}") for i, e in enumerate(instance["elements"])]


def _element_colouring(cfg: dict) -> ElementColouring:
    name = cfg["name"]
    if name == "constant":
        colour = cfg.get("colour", 0)
        if colour >= cfg["theta"]:
            raise InputError("/colouring/colour", f"colour {colour} outside range {cfg['theta']}")
        return ElementColouring(lambda x: colour, cfg["theta"], f"constant-{colour}")
    if name == "log-parity":
        m = cfg.get("m", 2)
        return ElementColouring(lambda x: log_parity(x.support(), m), m, f"log-parity-{m}∘supp")
    if name == "support-witness":
        return compose(log_parity_colouring(cfg.get("m", 2)), WitnessF())
    if name == "hash":
        return hash_colouring(cfg["theta"], cfg.get("seed", 0))
    raise InputError("/colouring/name", f"colouring {name!r} does not colour group elements")


def _set_colouring(cfg: dict) -> SetColouring:
    name = cfg["name"]
    if name == "constant":
        colour = cfg.get("colour", 0)
        return SetColouring(lambda s: colour, cfg["theta"], f"constant-{colour}")
    if name == "log-parity":
        return log_parity_colouring(cfg.get("m", 2))
    raise InputError("/colouring/name", f"colouring {name!r} does not colour finite sets")


def _tuple_colouring(cfg: Optional[dict], mu: int) -> Callable[[Tuple[int, ...]], int]:
    if cfg is None:
        raise InputError("/colouring", "partition-check needs a colouring unless meta_search is set")
    name = cfg["name"]
    if name == "pentagon":
        if mu != 2:
            raise InputError("/params/mu", "the pentagon colouring colours pairs")
        return pentagon_colouring
    if name == "table":
        table = {}
        for i, (key, colour) in enumerate(cfg["entries"]):
            key = tuple(sorted(key))
            if len(key) != mu or len(set(key)) != mu:
                raise InputError(f"/colouring/entries/{i}/0", f"expected {mu} distinct points")
            table[key] = colour

        def lookup(s):
            if s not in table:
                raise InputError("/colouring/entries", f"no colour for {list(s)}")
            return table[s]

        return lookup
    sc = _set_colouring(cfg)
    return lambda s: sc(FiniteOrdinalSet(s))


def _mode(cfg: dict, count: int):
    kind = cfg["kind"]
    if kind == "fs":
        return FSMode(cfg.get("max_terms"))
    if kind == "fsn":
        return FSnMode(cfg["n"])
    for i, idx in enumerate(cfg["sets"]):
        for j, k in enumerate(idx):
            if k >= count:
                raise InputError(f"/params/mode/sets/{i}/{j}", f"index {k} outside the {count} elements")
    return cfg["sets"]


# -- tasks ----------------------------------------------------------------------------------

TaskResult = Tuple[dict, bool, List[List[Any]]]  # (result, checks passed, csv rows with header first)


def _records(xs, mode, bound):
    if isinstance(mode, list):
        sets = [[xs[k] for k in idx] for idx in mode]
        return sumset(*sets, bound=bound), SuSMode(tuple(tuple(s) for s in sets))
    if isinstance(mode, FSnMode):
        return fs_n(xs, mode.n, bound=bound), mode
    return fs_iter(xs, mode.max_terms, bound=bound), mode


def task_coverage(sc: dict, seed, bound) -> TaskResult:
    xs = _elements(sc["instance"], seed)
    c = _element_colouring(sc["colouring"])
    records, _ = _records(xs, _mode(sc["params"]["mode"], len(xs)), bound)
    report = coverage(c, records)
    rows = [["colour", "count"]] + [list(r) for r in report.to_rows()]
    return {"coverage": report.to_json(), "elements": len(xs)}, True, rows


def task_witness(sc: dict, seed, bound) -> TaskResult:
    xs = _elements(sc["instance"], seed)
    c = _element_colouring(sc["colouring"])
    delta = sc["params"]["delta"]
    mode = _mode(sc["params"]["mode"], len(xs))
    if isinstance(mode, list):
        mode = SuSMode(tuple(tuple(xs[k] for k in idx) for idx in mode))
    rec = find_witness(c, xs, delta, mode, bound=bound)
    result = {"delta": delta, "found": rec is not None, "witness": rec.to_json() if rec else None}
    rows = [["delta", "found", "generators"], [delta, rec is not None, " ".join(map(str, rec.generators)) if rec else ""]]
    return result, True, rows


def task_condense(sc: dict, seed, bound) -> TaskResult:
    xs = _elements(sc["instance"], seed)
    params = sc["params"]
    try:
        res = condense(xs, params["target"], seed=seed or 0, check_terms=params.get("check_terms", 4))
    except AssertionError as exc:
        return {"error": str(exc)}, False, [["error"], [str(exc)]]
    if res is None:
        return {"outputs": [], "certificate": None, "shortfall": "no Delta-system of two supports"}, True, [["block", "support"]]
    result = {
        "outputs": [y.to_json(include_signature=False) for y in res.outputs],
        "certificate": res.certificate.to_json(),
        "shortfall": res.shortfall,
    }
    rows = [["block", "indices", "support"]] + [
        [i, " ".join(map(str, b)), str(y.support())] for i, (b, y) in enumerate(zip(res.certificate.blocks, res.outputs))
    ]
    return result, True, rows


def task_embed(sc: dict, seed, bound) -> TaskResult:
    inst = sc["instance"]
    words = None
    if "cayley_table" in inst:
        try:
            pres, words = semigroup_embedding(inst["cayley_table"])
        except CayleyTableError as exc:
            raise InputError("/instance/cayley_table", f"{exc} (witness {list(exc.witness)})") from None
    else:
        p = inst["presentation"]
        try:
            pres = AbelianPresentation(p["generators"], tuple(tuple(r) for r in p.get("relations", [])))
        except ValueError as exc:
            raise InputError("/instance/presentation/relations", str(exc)) from None
    sig, images = embed_fg_abelian(pres)
    ok = all(not word_image(images, rel, sig) for rel in pres.relations)
    result = {
        "presentation": pres.to_json(),
        "signature": sig.to_json(),
        "generator_images": [x.to_json(include_signature=False) for x in images],
        "relations_hold": ok,
    }
    rows = [["generator", "image"]] + [[i, str(x)] for i, x in enumerate(images)]
    if words is not None:
        elems = [word_image(images, w, sig) for w in words]
        table = inst["cayley_table"]
        n = len(table)
        hom = all(elems[table[i][j]] == elems[i] + elems[j] for i in range(n) for j in range(n))
        injective = len(set(elems)) == n
        ok = ok and hom and injective
        result["element_words"] = [list(w) for w in words]
        result["element_images"] = [x.to_json(include_signature=False) for x in elems]
        result["homomorphism"] = hom
        result["injective"] = injective
        rows = [["element", "word", "image"]] + [[k, " ".join(map(str, w)), str(x)] for k, (w, x) in enumerate(zip(words, elems))]
    return result, ok, rows


def task_partition(sc: dict, seed, bound) -> TaskResult:
    p = sc["params"]
    n, lam, mu, theta = p["n"], p["lam"], p["mu"], p["theta"]
    if p.get("meta_search"):
        passing = partition_meta_search(n, lam, mu, theta, bound=bound)
        result = {"meta_search": True, "passing": len(passing)}
        rows = [["n", "lam", "mu", "theta", "passing"], [n, lam, mu, theta, len(passing)]]
        return result, True, rows
    d = _tuple_colouring(sc.get("colouring"), mu)
    res = brute_force_partition_check(n, lam, mu, theta, d, bound=bound)
    result = {
        "holds": res.holds,
        "counterexample": list(res.counterexample) if res.counterexample else None,
        "missing": list(res.missing),
    }
    rows = [["holds", "counterexample", "missing"], [res.holds, " ".join(map(str, res.counterexample or ())), " ".join(map(str, res.missing))]]
    return result, res.holds, rows


def task_replay(sc: dict, seed, bound) -> TaskResult:
    inst = sc["instance"]
    if seed is None:
        raise InputError("/seed", "the multicube instance is seeded; give a seed")
    try:
        mc = MulticubeInstance(inst["a"], inst["b"], inst["m"], inst["n"], seed)
    except ValueError as exc:
        raise InputError("/instance", str(exc)) from None
    outcomes = replay_multicube(WitnessF(), mc, inst["A_size"], inst.get("max_p", 4))
    ok = all(o.ok for o in outcomes)
    result = {
        "A": mc.A(inst["A_size"]).to_json(),
        "root": mc.root.to_json(),
        "cases": [{"p": o.p.to_json(), "k": o.k, "d": o.d_value.to_json(), "ok": o.ok} for o in outcomes],
        "all_match": ok,
    }
    rows = [["p", "k", "d", "ok"]] + [[str(o.p), o.k, str(o.d_value), o.ok] for o in outcomes]
    return result, ok, rows


def _axiom_colouring(kind: str, inst):
    if kind == "pr1":
        return pr1_colouring(inst.oracle, inst.theta, inst.chi), inst.chosen
    if kind == "osc":
        return osc_colouring(inst.oracle, inst.family, psi_mod), inst.chosen
    return SetColouring(lambda z: d_entangled(inst.instance, z), None, "entangled"), [inst.x, inst.y]


def task_axiom(sc: dict, seed, bound) -> TaskResult:
    inst = sc["instance"]
    if "recipe" in inst:
        recipe = inst["recipe"]
        if seed is None:
            raise InputError("/seed", "randomized recipes need a seed")
        rng = random.Random(seed)
        cases = []
        for t in range(recipe["count"]):
            kind = recipe["generator"]
            if kind == "pr1":
                data = pr1_instance(rng, recipe.get("max_shared", 10))
            elif kind == "osc":
                data = osc_instance(rng, recipe.get("max_shared", 10))
            else:
                data = entangled_instance(rng)
            colouring, chosen = _axiom_colouring(kind, data)
            sets = list(sandwich_sets(chosen))
            bad = [z for z in sets if colouring(z) != data.delta]
            cases.append({"instance": t, "delta": data.delta, "sandwich_sets": len(sets), "failures": [z.to_json() for z in bad[:3]]})
        ok = all(not c["failures"] for c in cases)
        rows = [["instance", "delta", "sandwich_sets", "failures"]] + [[c["instance"], c["delta"], c["sandwich_sets"], len(c["failures"])] for c in cases]
        return {"generator": recipe["generator"], "cases": cases, "all_match": ok}, ok, rows
    if "colouring" not in sc:
        raise InputError("/colouring", "explicit families need a set colouring")
    d = _set_colouring(sc["colouring"])
    if "params" not in sc or "delta" not in sc["params"]:
        raise InputError("/params", "explicit families need params.delta")
    delta = sc["params"]["delta"]
    families = [
        [FiniteOrdinalSet(_ordinal(a, f"/instance/families/{i}/{j}/{k}") for k, a in enumerate(x)) for j, x in enumerate(fam)]
        for i, fam in enumerate(inst["families"])
    ]
    found = check_axiom_star_instance(d, families, delta)
    result = {"delta": delta, "witness": [x.to_json() for x in found] if found else None}
    rows = [["delta", "witness"], [delta, " | ".join(str(x) for x in found) if found else ""]]
    return result, True, rows


TASKS: Dict[str, Callable[[dict, Optional[int], int], TaskResult]] = {
    "coverage": task_coverage,
    "witness": task_witness,
    "axiom-check": task_axiom,
    "condense": task_condense,
    "embed": task_embed,
    "partition-check": task_partition,
    "replay-multicube": task_replay,
}


def run_scenario(scenario: dict, seed: Optional[int] = None, bound: Optional[int] = None, fmt: Optional[str] = None) -> Tuple[str, int]:
    """Validate and run a scenario; returns (report text, exit status)."""
    validate(scenario)
    resolved = copy.deepcopy(scenario)
    if seed is not None:
        resolved["seed"] = seed
    bounds = resolved.setdefault("bounds", {})
    if bound is not None:
        bounds["resource"] = bound
    bounds.setdefault("resource", DEFAULT_BOUND)
    output = resolved.setdefault("output", {})
    if fmt is not None:
        output["format"] = fmt
    output.setdefault("format", "json")
    try:
        result, ok, rows = TASKS[resolved["task"]](resolved, resolved.get("seed"), bounds["resource"])
    except ResourceBoundError as exc:
        raise InputError("/bounds/resource", str(exc)) from None
    status = EXIT_OK if ok else EXIT_CHECK
    if output["format"] == "csv":
        return _csv(rows), status
    report = {
        "tool": "fsbench",
        "version": __version__,
        "scenario": resolved["name"],
        "task": resolved["task"],
        "parameters": resolved,
        "checks_passed": ok,
        "result": result,
    }
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n", status


def _csv(rows: List[List[Any]]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def verify_report(name: str, seed: int = 0, fmt: str = "json") -> Tuple[str, int]:
    report = run_suite(name, seed=seed)
    status = EXIT_OK if report.passed else EXIT_CHECK
    if fmt == "csv":
        rows = [["check", "passed", "cases", "failures"]] + [[c.name, c.passed, c.cases, c.failure_count] for c in report.checks]
        return _csv(rows), status
    data = {"tool": "fsbench", "version": __version__, **report.to_json()}
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n", status


# -- entry point ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fsbench", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"fsbench {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a scenario file")
    run.add_argument("--scenario", required=True, metavar="PATH")
    run.add_argument("--seed", type=int)
    run.add_argument("--bound", type=int, help="resource bound on enumerated records")
    run.add_argument("--out", metavar="PATH")
    run.add_argument("--format", choices=("json", "csv"))

    verify = sub.add_parser("verify", help="run an invariant suite")
    verify.add_argument("suite", help=", ".join(SUITES))
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--out", metavar="PATH")
    verify.add_argument("--format", choices=("json", "csv"), default="json")
    return parser


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            try:
                with open(args.scenario, encoding="utf-8") as fh:
                    scenario = json.load(fh)
            except OSError as exc:
                raise InputError("", f"cannot read scenario: {exc}") from None
            except json.JSONDecodeError as exc:
                raise InputError("", f"scenario is not JSON: {exc}") from None
            if args.bound is not None and args.bound < 1:
                raise InputError("/bounds/resource", "bound must be positive")
            text, status = run_scenario(scenario, args.seed, args.bound, args.format)
        else:
            if args.suite not in SUITES:
                raise InputError("", f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
            text, status = verify_report(args.suite, args.seed, args.format)
    except InputError as exc:
        print(f"fsbench: input error at {exc.pointer or '/'}: {exc.args[0].split(': ', 1)[-1]}", file=sys.stderr)
        return EXIT_INPUT
    _emit(text, args.out)
    return status


if __name__ == "__main__":
    sys.exit(main())
