"""Command-line driver.

Subcommands:
  roots    -- root-system and parabolic data for a case
  rep      -- the defining highest-weight module for a case
  verify   -- run the full verification suite, print the summary
  pairing  -- pairing values against the closed formula, per simple root
  kahler   -- the classical-limit block (norm lemma, Gram matrix, origin form)
  report   -- run the full suite and always write the structured report

Common flags: --type, --rank, --subset (comma list, empty means the full
flag case), --q (a rational like 1/2, a comma list, or "symbolic"),
--cap, --seed, --out, --config (a JSON file whose keys mirror the flags;
explicit flags win).

Exit codes: 0 = all checks pass, 1 = at least one failure, 2 = bad
configuration or I/O error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from fractions import Fraction

from qflag import cartan
from qflag.qscalar import FixedField, SymbolicField
from qflag.report import CaseConfig, emit_report, root_label, run_suite
from qflag.repn import hw_module


def _parse_subset(text):
    text = (text or "").strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValueError(f"bad subset {text!r}: expected a comma list "
                         "of simple-root indices") from None


def _parse_q(text):
    text = (text or "symbolic").strip()
    if text == "symbolic":
        return None
    try:
        return tuple(Fraction(x) for x in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"bad q {text!r}: expected rationals like 1/2 "
                         "or the word symbolic") from None


_CONFIG_KEYS = ("type", "rank", "subset", "q", "cap", "seed", "out")


def _merge_config(args):
    """Fill unset flags from the --config file (flags win)."""
    if not args.config:
        return
    with open(args.config, encoding="utf-8") as fh:
        data = json.load(fh)
    for key in data:
        if key not in _CONFIG_KEYS:
            raise ValueError(f"unknown config key {key!r}")
    for key in _CONFIG_KEYS:
        if key in data and getattr(args, key, None) in (None, ""):
            setattr(args, key, str(data[key]) if key in
                    ("type", "subset", "q", "out") else data[key])


def _case(args) -> CaseConfig:
    if not args.type or args.rank is None:
        raise ValueError("--type and --rank are required")
    return CaseConfig(
        family=args.type.upper(),
        rank=int(args.rank),
        subset=_parse_subset(args.subset),
        q_values=_parse_q(args.q),
        cap=int(args.cap) if args.cap is not None else 6000,
        seed=int(args.seed) if args.seed is not None else 1,
    )


def _field_for(cfg: CaseConfig):
    if cfg.q_values is None:
        return SymbolicField(), "symbolic"
    return FixedField(cfg.q_values[0]), str(cfg.q_values[0])


def _cmd_roots(args):
    cfg = _case(args)
    rs = cartan.root_system(cfg.family, cfg.rank)
    par = cartan.parabolic(rs, cfg.subset)
    print(f"{rs.name}: d = {list(rs.d)}")
    print("cartan rows:", [list(r) for r in rs.cartan])
    print("positive roots:", ", ".join(root_label(r) for r in rs.pos_roots))
    print("levi:", ", ".join(root_label(r) for r in par.levi_pos) or "-")
    print("nil:", ", ".join(root_label(r) for r in par.nil_pos) or "-")
    print("weight of the projection module:", list(par.rho_S))
    return 0


def _cmd_rep(args):
    cfg = _case(args)
    rs = cartan.root_system(cfg.family, cfg.rank)
    par = cartan.parabolic(rs, cfg.subset)
    field, qtag = _field_for(cfg)
    m = hw_module(rs, par.rho_S, field)
    print(f"module of highest weight {list(par.rho_S)} over {rs.name} "
          f"(q = {qtag}): dim {m.dim}")
    for k in range(m.dim):
        print(f"  basis {k}: weight {list(m.weights[k])}, "
              f"norm {m.norms[k]}")
    return 0


def _cmd_verify(args):
    rep = run_suite(_case(args))
    return emit_report(rep, args.out)


def _cmd_report(args):
    out = args.out or "qflag_report.json"
    rep = run_suite(_case(args))
    code = emit_report(rep, out)
    if code != 2:
        print(f"report written to {out}")
    return code


def _cmd_pairing(args):
    cfg = dataclasses.replace(_case(args), only=("pairing",))
    rep = run_suite(cfg)
    return emit_report(rep, args.out)


def _cmd_kahler(args):
    cfg = dataclasses.replace(_case(args), only=("kahler",))
    rep = run_suite(cfg)
    return emit_report(rep, args.out)


def main(argv=None):
    top = argparse.ArgumentParser(
        prog="qflag",
        description="exact verification of quantum flag projection laws, "
                    "twisted homology pairings, and classical limits")
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--type", help="family letter, e.g. A or B")
        p.add_argument("--rank", type=int, help="rank (1..4)")
        p.add_argument("--subset", help="comma list of marked simple roots; "
                                        "empty for the full flag case")
        p.add_argument("--q", help='rational(s) like 1/2 or "symbolic"')
        p.add_argument("--cap", type=int, help="closure dimension cap")
        p.add_argument("--seed", type=int, help="seed for sampled checks")
        p.add_argument("--out", help="path for the structured report")
        p.add_argument("--config", help="JSON file mirroring the flags")
        p.set_defaults(fn=fn)
        return p

    add("roots", _cmd_roots, "root-system and parabolic data")
    add("rep", _cmd_rep, "defining module: weights and norms")
    add("verify", _cmd_verify, "run the verification suite")
    add("pairing", _cmd_pairing, "pairing values per simple root")
    add("kahler", _cmd_kahler, "classical-limit block")
    add("report", _cmd_report, "run the suite and write the report file")

    args = top.parse_args(argv)
    try:
        _merge_config(args)
        return args.fn(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
