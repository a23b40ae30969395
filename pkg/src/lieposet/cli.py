"""Command line interface: ``lieposet <subcommand> ...``.

Every subcommand prints one JSON document.  Exit status is 0 on success,
2 on invalid input and 3 when a certificate stays undetermined.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import __version__
from .algebra import build_algebra
from .atlas import CHECKS, sweep
from .frobenius import (
    FROBENIUS_RULES,
    RULES,
    UNDETERMINED,
    GluingStep,
    characterize,
    check_nonpure_conditions,
    generate_constructions,
    is_frobenius,
)
from .index import EXACT, FormulaInapplicable, IndexConfig, formula_index, index
from .poset import Poset, PosetError, statistics
from .signed import SignedPoset
from .spectrum import NonRationalSpectrum, NotFrobeniusError, spectrum_report
from .topology import betti, build_glued_morse, order_complex, verify_morse

EXIT_OK, EXIT_INVALID, EXIT_UNDETERMINED = 0, 2, 3


class UsageError(Exception):
    pass


def _load_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _load_poset(args: argparse.Namespace) -> Poset | SignedPoset:
    if not args.poset:
        raise UsageError("--poset is required")
    data = _load_json(args.poset)
    if not isinstance(data, dict):
        raise UsageError("poset JSON must be an object")
    if "variant" in data or any(min(c) < 0 for c in data.get("covers", []) if c):
        return SignedPoset.from_json(data)
    return Poset.from_json(data)


def _variant(args: argparse.Namespace, p: Poset | SignedPoset) -> str:
    if args.variant:
        return args.variant
    return p.variant if isinstance(p, SignedPoset) else "A"


def _config(args: argparse.Namespace) -> IndexConfig:
    if args.seed is None:
        raise UsageError("--seed is required for commands that sample functionals")
    return IndexConfig(trials=args.trials, seed=args.seed, coeff_bound=args.coeff_bound)


def _frac(v: Fraction) -> list[int]:
    return [v.numerator, v.denominator]


def cmd_index(args: argparse.Namespace) -> tuple[dict, int]:
    p = _load_poset(args)
    variant = _variant(args, p)
    cert = index(build_algebra(p, variant, traceless=not args.gl), _config(args))
    out = {"status": cert.status, "index": cert.index, "variant": variant, "certificate": cert.to_json()}
    return out, EXIT_OK if cert.status == EXACT else EXIT_UNDETERMINED


def cmd_frobenius(args: argparse.Namespace) -> tuple[dict, int]:
    p = _load_poset(args)
    v = is_frobenius(p, _variant(args, p), _config(args))
    return v.to_json(), EXIT_UNDETERMINED if v.verdict == UNDETERMINED else EXIT_OK


def cmd_classify(args: argparse.Namespace) -> tuple[dict, int]:
    p = _load_poset(args)
    if isinstance(p, SignedPoset):
        p = p.to_poset()
    s = statistics(p)
    out: dict = {
        "poset": p.to_json(),
        "height": s.height,
        "pure": s.is_pure,
        "components": s.components,
        "rel": s.rel,
        "rel_extremal": s.rel_extremal,
        "minimal": list(s.minimal),
        "maximal": list(s.maximal),
        "ud": {str(k): v for k, v in s.ud.items() if k not in s.extremal},
    }
    try:
        out["formula_index"] = formula_index(p)
    except FormulaInapplicable:
        out["formula_index"] = None
    if p.height <= 2:
        out["frobenius_by_characterization"] = characterize(p)
    if p.height == 2:
        out["conditions"] = check_nonpure_conditions(p).to_json()
    return out, EXIT_OK


def cmd_homology(args: argparse.Namespace) -> tuple[dict, int]:
    p = _load_poset(args)
    if isinstance(p, SignedPoset):
        p = p.to_poset()
    k = order_complex(p)
    out = {"betti": betti(k, args.max_degree), "euler_characteristic": k.euler_characteristic(), "dim": k.dim}
    if args.faces:
        out["complex"] = k.to_json()
    return out, EXIT_OK


def cmd_morse(args: argparse.Namespace) -> tuple[dict, int]:
    if args.trace:
        data = _load_json(args.trace)
        steps = tuple(GluingStep.from_json(s) for s in (data["steps"] if isinstance(data, dict) else data))
        p, k, f = build_glued_morse(steps)
    else:
        p = _load_poset(args)
        if not args.assignment:
            raise UsageError("morse needs --trace or --assignment")
        k = order_complex(p)
        raw = _load_json(args.assignment)
        f = {tuple(face): Fraction(*val) if isinstance(val, list) else Fraction(val) for face, val in raw}
    rep = verify_morse(k, f)
    out = rep.to_json()
    out["poset"] = p.to_json()
    out["assignment"] = [[list(face), _frac(Fraction(v))] for face, v in sorted(f.items(), key=lambda t: t[1])]
    return out, EXIT_OK


def cmd_spectrum(args: argparse.Namespace) -> tuple[dict, int]:
    p = _load_poset(args)
    cfg = _config(args)
    alg = build_algebra(p, _variant(args, p))
    try:
        rep = spectrum_report(alg, seed=cfg.seed, coeff_bound=cfg.coeff_bound)
    except NonRationalSpectrum as exc:
        return {"spectrum": None, "charpoly": [_frac(c) for c in exc.residual]}, EXIT_OK
    except NotFrobeniusError as exc:
        raise UsageError(str(exc)) from exc
    return rep.to_json(), EXIT_OK


def cmd_generate(args: argparse.Namespace) -> tuple[dict, int]:
    rules = tuple(args.rules.split(",")) if args.rules else FROBENIUS_RULES
    unknown = [r for r in rules if r not in RULES]
    if unknown:
        raise UsageError(f"unknown rules {unknown}")
    cfg = _config(args) if args.mode == "frobenius" else None
    items = [c.to_json() for c in generate_constructions(args.blocks, rules, args.mode, certify=args.mode == "frobenius", config=cfg)]
    return {"mode": args.mode, "rules": list(rules), "count": len(items), "posets": items}, EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> tuple[dict, int]:
    checks = tuple(args.checks.split(",")) if args.checks else CHECKS
    rep = sweep(
        args.n_max,
        checks,
        _config(args),
        max_height=args.max_height,
        connected_only=args.connected,
        out=args.out,
        allow_large=args.allow_large,
    )
    return rep.to_json(), EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lieposet", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--poset", help="poset JSON file")
    common.add_argument("--variant", choices=["A", "B", "C", "D"])
    common.add_argument("--seed", type=int)
    common.add_argument("--trials", type=int, default=8)
    common.add_argument("--coeff-bound", type=int, default=65536)
    common.add_argument("--out", help="write the JSON result (or sweep records) here")
    common.add_argument("--pretty", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("index", parents=[common], help="certified index")
    p.add_argument("--gl", action="store_true", help="use gl instead of sl in type A")
    p.set_defaults(func=cmd_index)
    sub.add_parser("frobenius", parents=[common], help="certified Frobenius verdict").set_defaults(func=cmd_frobenius)
    sub.add_parser("classify", parents=[common], help="statistics, formula and characterization").set_defaults(func=cmd_classify)
    p = sub.add_parser("homology", parents=[common], help="Betti numbers of the order complex")
    p.add_argument("--max-degree", type=int)
    p.add_argument("--faces", action="store_true")
    p.set_defaults(func=cmd_homology)
    p = sub.add_parser("morse", parents=[common], help="verify or build a discrete Morse function")
    p.add_argument("--trace", help="gluing trace JSON")
    p.add_argument("--assignment", help="JSON list of [face, value] pairs")
    p.set_defaults(func=cmd_morse)
    sub.add_parser("spectrum", parents=[common], help="principal element and ad-spectrum").set_defaults(func=cmd_spectrum)
    p = sub.add_parser("generate", parents=[common], help="posets built by gluing rules")
    p.add_argument("--blocks", type=int, default=2)
    p.add_argument("--rules", help="comma separated rule tags")
    p.add_argument("--mode", choices=["frobenius", "exploratory"], default="frobenius")
    p.set_defaults(func=cmd_generate)
    p = sub.add_parser("sweep", parents=[common], help="check every property over all small posets")
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--max-height", type=int)
    p.add_argument("--connected", action="store_true")
    p.add_argument("--checks", help=f"comma separated subset of {','.join(CHECKS)}")
    p.add_argument("--allow-large", action="store_true")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out, code = args.func(args)
    except (UsageError, PosetError, ValueError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return EXIT_INVALID
    text = json.dumps(out, indent=2 if args.pretty else None, sort_keys=True)
    if args.out and args.command != "sweep":
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
