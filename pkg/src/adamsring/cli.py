"""Command-line front end.

Every command builds a report dictionary.  By default a readable rendering
goes to stdout; ``--json PATH`` writes the report as deterministic JSON
(``--json -`` prints it).  Exit codes: 0 success, 1 a verification failed,
2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Callable

import numpy as np

from . import __version__
from .catalog import load_group
from .chartab import CharacterTable, character_table
from .exact import pretty
from .groups import DEFAULT_ORDER_LIMIT, GroupError
from .lambdaring import (
    RepRingElement,
    adams,
    based_ring_isomorphisms,
    commutes_with_adams,
    exponent_from_ring,
    fs_indicator,
    lambda_op,
    order_from_ring,
    twisted_adams_abelian,
)
from .serialize import (
    dumps,
    group_digest,
    group_to_json,
    load_twist_file,
    matrix_to_json,
    matrix_to_text,
    table_to_json,
    table_to_text,
    twist_to_json,
)
from .twist import TwistData, TwistError, d8_example, klein_example, klein_labels


class InputError(Exception):
    """Bad user input: reported on one line, exit code 2."""


class Report:
    def __init__(self, command: str, inputs: dict, results: dict, text: str, ok: bool = True):
        self.command = command
        self.inputs = inputs
        self.results = results
        self.text = text
        self.ok = ok

    def to_json(self) -> dict:
        # timing is left out so that the file is byte-identical across runs
        return {"command": self.command, "inputs": self.inputs, "results": self.results, "ok": self.ok}


def _group(args, name: str):
    try:
        return load_group(name, args.limit_order)
    except KeyError as exc:
        raise InputError(exc.args[0]) from exc
    except (GroupError, OSError, json.JSONDecodeError, ValueError) as exc:
        raise InputError(f"cannot load group {name!r}: {exc}") from exc


def _table(args, name: str) -> CharacterTable:
    return character_table(_group(args, name), args.seed)


def _group_inputs(G) -> dict:
    return {"group": G.name, "order": G.order, "digest": group_digest(G)}


def _twist(args, source: str) -> TwistData:
    if source.lower() == "d8":
        return d8_example()
    try:
        return load_twist_file(source, args.limit_order)
    except KeyError as exc:
        raise InputError(exc.args[0]) from exc
    except (GroupError, TwistError, OSError, json.JSONDecodeError, ValueError) as exc:
        raise InputError(f"cannot build twist from {source!r}: {exc}") from exc


# ---------------------------------------------------------------------------
# commands


def cmd_chartable(args) -> Report:
    T = _table(args, args.group)
    return Report("chartable", _group_inputs(T.group), table_to_json(T), table_to_text(T))


def cmd_adams(args) -> Report:
    T = _table(args, args.group)
    A = adams(T, args.k)
    text = f"Psi^{args.k} on R({T.group.name}), row i = Psi^{args.k}(X_i)\n" + matrix_to_text(A)
    return Report("adams", {**_group_inputs(T.group), "k": args.k}, {"k": args.k, "matrix": matrix_to_json(A)}, text)


def cmd_lambda(args) -> Report:
    T = _table(args, args.group)
    if not 0 <= args.irr < T.rank:
        raise InputError(f"irreducible index out of range 0..{T.rank - 1}")
    if args.n < 0:
        raise InputError("--n must be nonnegative")
    x = RepRingElement.basis(T, args.irr)
    y = lambda_op(x, args.n)
    terms = " + ".join(f"{c}*X{j}" for j, c in enumerate(y.coeffs) if c) or "0"
    return Report(
        "lambda",
        {**_group_inputs(T.group), "irr": args.irr, "n": args.n},
        {"coefficients": list(y.coeffs), "dimension": y.dimension},
        f"lambda^{args.n}(X{args.irr}) = {terms}  (dimension {y.dimension})",
    )


def cmd_fs(args) -> Report:
    T = _table(args, args.group)
    vals = [fs_indicator(T, args.k, j) for j in range(T.rank)]
    text = "\n".join(f"X{j} (degree {d}): {v}" for j, (d, v) in enumerate(zip(T.degrees, vals)))
    return Report("fs", {**_group_inputs(T.group), "k": args.k}, {"k": args.k, "indicators": vals}, text)


def cmd_ring_order(args) -> Report:
    T = _table(args, args.group)
    n = order_from_ring(T)
    return Report("ring-order", _group_inputs(T.group), {"order": n, "matches": n == T.group.order}, str(n),
                  ok=n == T.group.order)


def cmd_ring_exponent(args) -> Report:
    T = _table(args, args.group)
    e = exponent_from_ring(T)
    return Report("ring-exponent", _group_inputs(T.group), {"exponent": e, "matches": e == T.group.exponent},
                  str(e), ok=e == T.group.exponent)


def cmd_ring_iso(args) -> Report:
    T1, T2 = _table(args, args.group1), _table(args, args.group2)
    isos = based_ring_isomorphisms(T1, T2)
    results = {"count": len(isos), "isomorphisms": [list(i.perm) for i in isos]}
    lines = [f"{len(isos)} based ring isomorphisms R({T1.group.name}) -> R({T2.group.name})"]
    lines += [f"  X_i -> X_perm[i], perm = {list(i.perm)}" for i in isos]
    if args.check_adams is not None:
        k = args.check_adams
        flags = [commutes_with_adams(i, k) for i in isos]
        results["check_adams"] = {"k": k, "commutes": flags, "any_commutes": any(flags)}
        lines.append(f"commuting with Psi^{k}: {sum(flags)} of {len(isos)}")
    inputs = {"group1": _group_inputs(T1.group), "group2": _group_inputs(T2.group), "check_adams": args.check_adams}
    return Report("ring-iso", inputs, results, "\n".join(lines))


def _twist_inputs(t: TwistData) -> dict:
    return {**_group_inputs(t.G), "subgroup": list(t.ext.A)}


def cmd_twist(args) -> Report:
    t = _twist(args, args.twist)
    data = twist_to_json(t)
    if args.emit_group:
        with open(args.emit_group, "w") as fh:
            fh.write(dumps(group_to_json(t.G_b)))
    G = t.G
    lines = [
        f"G = {G.name}, A = {{{', '.join(G.labels[a] for a in t.ext.A)}}}, A = Z/" +
        " x Z/".join(map(str, t.ext.structure.invariant_factors)),
        "b(p,q): " + ", ".join(
            f"b({G.labels[t.ext.section[p]]},{G.labels[t.ext.section[q]]})={G.labels[t.b(p, q)]}"
            for p in range(t.ext.Q.order) for q in range(t.ext.Q.order) if t.b(p, q)
        ) or "b trivial",
        f"G_b: order {t.G_b.order}, exponent {t.G_b.exponent}, {len(t.G_b.conjugacy.classes)} classes",
    ]
    return Report("twist", _twist_inputs(t), data, "\n".join(lines))


def _comparison_json(c) -> dict:
    return {"k": c.k, "equal": c.equal, "matching": list(c.matching), "diff": matrix_to_json(c.diff),
            "original": matrix_to_json(c.original), "twisted": matrix_to_json(c.twisted)}


def cmd_compare_adams(args) -> Report:
    t = _twist(args, args.twist)
    c = t.compare(args.k)
    text = (f"Psi^{args.k}: {'equal' if c.equal else 'DIFFERENT'}\n"
            f"G:\n{matrix_to_text(c.original)}\nG_b (matched):\n{matrix_to_text(c.twisted)}")
    return Report("compare-adams", {**_twist_inputs(t), "k": args.k}, _comparison_json(c), text)


def cmd_verify_odd_adams(args) -> Report:
    t = _twist(args, args.twist)
    kmax = args.kmax if args.kmax is not None else t.G.exponent - 1
    verdicts = {k: t.compare(k).equal for k in range(1, kmax + 1, 2)}
    ok = all(verdicts.values())
    text = "\n".join(f"k={k}: {'equal' if v else 'MISMATCH'}" for k, v in verdicts.items())
    return Report("verify-odd-adams", {**_twist_inputs(t), "kmax": kmax},
                  {"verdicts": {str(k): v for k, v in verdicts.items()}, "all_equal": ok}, text, ok=ok)


def cmd_example(args) -> Report:
    if args.name == "d8":
        return _example_d8()
    return _example_klein()


def _example_d8() -> Report:
    from .acceptance import d8_labels

    t = d8_example()
    G = t.G
    T = t.table()
    labels = d8_labels(T)
    w = labels.index("W")
    c2 = t.compare(2)

    def expand(row):
        return " + ".join(f"{int(v)}*{labels[j]}" for j, v in enumerate(row) if v).replace("+ -", "- ")

    odd = {k: t.compare(k).equal for k in (1, 3, 5, 7)}
    b_qq = G.labels[t.b(1, 1)]
    lines = [
        "D8 = <x, y, q>, A = {1, x, y, xy}, characters of A indexed (a, b): phi(x) = (-1)^a, phi(y) = (-1)^b",
        "alpha((a,b),(c,d)) = " + "; ".join(
            f"{t.dual.characters[i]}x{t.dual.characters[j]}:{t.alpha(i, j)}"
            for i in range(4) for j in range(4) if not t.alpha(i, j).is_zero()),
        "z(q)(a,b) = " + ", ".join(f"{t.dual.characters[i]}:{v}" for i, v in enumerate(t.z[1].values)),
        f"b(q,q) = {b_qq}",
        f"Psi^2(W) on G   = {expand(c2.original[w])}",
        f"Psi^2(W) on G_b = {expand(c2.twisted[w])}",
        "odd k equal: " + ", ".join(f"k={k}:{v}" for k, v in odd.items()),
    ]
    results = {
        "alpha": t.alpha.to_json(),
        "dual_characters": [list(v) for v in t.dual.characters],
        "z": {str(c.q): c.to_json() for c in t.z},
        "b_qq": b_qq,
        "labels": labels,
        "psi2_W": matrix_to_json([c2.original[w]])[0],
        "psi2_W_twisted": matrix_to_json([c2.twisted[w]])[0],
        "odd_equal": {str(k): v for k, v in odd.items()},
    }
    ok = b_qq == "y" and all(odd.values()) and not c2.equal
    return Report("example", {"name": "d8"}, results, "\n".join(lines), ok=ok)


def _example_klein() -> Report:
    T, pairing = klein_example()
    labels = [f"V{i}{j}" for i, j in klein_labels(T)]
    mats = {k: twisted_adams_abelian(T, pairing, k) for k in range(4)}
    same = {k: bool(np.array_equal(m, adams(T, k))) for k, m in mats.items()}
    lines = [f"pairing s(V_ij, V_kl) = (il + jk)/2 on {labels}"]
    for k, m in mats.items():
        lines.append(f"k={k} (equal to untwisted: {same[k]})\n" + matrix_to_text(m, labels))
    results = {"labels": labels, "pairing": [[v.to_json() for v in row] for row in pairing],
               "adams": {str(k): matrix_to_json(m) for k, m in mats.items()},
               "equal_untwisted": {str(k): v for k, v in same.items()}}
    return Report("example", {"name": "klein"}, results, "\n".join(lines), ok=all(same.values()))


def cmd_selftest(args) -> Report:
    from .acceptance import run_all

    results = run_all()
    lines = [r.line() for r in results]
    ok = all(r.passed for r in results)
    data = {"criteria": [{"number": r.number, "title": r.title, "passed": r.passed, "detail": r.detail}
                         for r in results], "all_passed": ok}
    return Report("selftest", {}, data, "\n".join(lines), ok=ok)


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="write the report as JSON to PATH ('-' for stdout)")
    common.add_argument("--pretty", action="store_true", help="readable output on stdout (the default)")
    common.add_argument("--seed", type=int, default=0, help="seed for eigenspace splitting (default 0)")
    common.add_argument("--limit-order", type=int, default=DEFAULT_ORDER_LIMIT,
                        help=f"largest group order accepted (default {DEFAULT_ORDER_LIMIT})")

    p = argparse.ArgumentParser(prog="adamsring", description="Representation rings, Adams operations and group twists.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, help_: str):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    add("chartable", cmd_chartable, "character table").add_argument("group")
    sp = add("adams", cmd_adams, "Adams operation matrix")
    sp.add_argument("group")
    sp.add_argument("--k", type=int, required=True)
    sp = add("lambda", cmd_lambda, "lambda operation on an irreducible")
    sp.add_argument("group")
    sp.add_argument("--irr", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp = add("fs", cmd_fs, "Frobenius-Schur indicators")
    sp.add_argument("group")
    sp.add_argument("--k", type=int, default=2)
    add("ring-order", cmd_ring_order, "group order recovered from the ring").add_argument("group")
    add("ring-exponent", cmd_ring_exponent, "group exponent recovered from the ring").add_argument("group")
    sp = add("ring-iso", cmd_ring_iso, "based ring isomorphisms between two groups")
    sp.add_argument("group1")
    sp.add_argument("group2")
    sp.add_argument("--check-adams", type=int, metavar="K")
    sp = add("twist", cmd_twist, "build a twist from a JSON file ('d8' for the built-in example)")
    sp.add_argument("twist", help="twist JSON file, or d8 for the built-in example")
    sp.add_argument("--emit-group", metavar="PATH")
    sp = add("verify-odd-adams", cmd_verify_odd_adams, "check Psi^k for odd k after twisting")
    sp.add_argument("twist", help="twist JSON file, or d8 for the built-in example")
    sp.add_argument("--kmax", type=int)
    sp = add("compare-adams", cmd_compare_adams, "compare Psi^k of G and G_b")
    sp.add_argument("twist", help="twist JSON file, or d8 for the built-in example")
    sp.add_argument("--k", type=int, required=True)
    sp = add("example", cmd_example, "worked examples")
    sp.add_argument("name", choices=["d8", "klein"])
    add("selftest", cmd_selftest, "run the acceptance suite")
    return p


def run(argv: list[str] | None = None, stdout=None) -> int:
    out = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    t0 = time.perf_counter()
    try:
        report = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    elapsed = time.perf_counter() - t0
    if args.json:
        text = dumps(report.to_json())
        if args.json == "-":
            out.write(text)
        else:
            with open(args.json, "w") as fh:
                fh.write(text)
            print(f"wrote {args.json}", file=out)
    else:
        print(report.text, file=out)
        print(f"({report.command}: {'ok' if report.ok else 'VERIFICATION FAILED'}, {elapsed:.2f}s)", file=out)
    return 0 if report.ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
