"""Command-line entry point, text file formats, and reporting.

Code files: optional '#' provenance comments, then a header line
``xcode m=<m> n=<n> d=<d> x=<x> w=<w|mixed>``, then n body lines of length-m
0/1 strings, one codeword per line with bit position 1 leftmost.

Packing files: comments, a header ``packing m=<m> w=3``, then one triple per
line as three ascending space-separated 1-based vertex indices.

Exit codes are a stable contract: 0 pass, 1 property fail, 2 usage or format
error, 3 construction failed.  JSON witnesses index codewords 0-based;
packing files index vertices 1-based (the design-theory convention).
The environment variable XCODE_CHECK_BUDGET overrides the full-search budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .constructions import (
    ConstructionError,
    ConstructionResult,
    Provenance,
    ap_free_xcode,
    even_free_packing,
    evenfree_to_xcode,
    girth5_xcode,
    greedy_packing,
    linear_system_xcode,
    packing_to_xcode,
    random_sparse_xcode,
)
from .simulator import run_sampled_scenarios
from .verifier import (
    BudgetExceededError,
    FullMode,
    SampledMode,
    TriplePacking,
    XCode,
    is_r_even_free,
    is_x_code,
)
from .bitcore import Codeword

BUDGET_ENV = "XCODE_CHECK_BUDGET"


class FileFormatError(ValueError):
    def __init__(self, message: str, line_no: int | None = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


# ---------------------------------------------------------------------------
# code files


@dataclass(frozen=True)
class CodeFile:
    code: XCode
    weight_label: str
    comments: tuple[str, ...] = ()

    def dumps(self) -> str:
        lines = list(self.comments)
        header = (
            f"xcode m={self.code.m} n={self.code.n} "
            f"d={self.code.declared_d} x={self.code.declared_x} w={self.weight_label}"
        )
        lines.append(header)
        lines.extend(w.to01() for w in self.code.codewords)
        return "\n".join(lines) + "\n"

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.dumps(), encoding="ascii")

    @classmethod
    def from_code(cls, code: XCode, comments: Sequence[str] = (),
                  weight_label: str | None = None) -> "CodeFile":
        if code.declared_d is None or code.declared_x is None:
            raise ValueError("code file needs declared d and x")
        if weight_label is None:
            if code.n == 0:
                raise ValueError("an empty code needs an explicit weight label")
            weight_label = code.weight_label()
        return cls(code, weight_label, tuple(comments))

    @classmethod
    def loads(cls, text: str) -> "CodeFile":
        comments: list[str] = []
        header: str | None = None
        header_line = 0
        rows: list[tuple[int, str]] = []
        for no, raw in enumerate(text.splitlines(), start=1):
            line = raw.rstrip("\r")
            if line.startswith("#"):
                if header is not None and not rows:
                    comments.append(line)
                elif header is None:
                    comments.append(line)
                else:
                    raise FileFormatError("comment after body began", no)
                continue
            if not line.strip():
                raise FileFormatError("blank line not allowed", no)
            if header is None:
                header = line
                header_line = no
            else:
                rows.append((no, line))
        if header is None:
            raise FileFormatError("missing header", 1)
        fields = _parse_header(header, "xcode", ("m", "n", "d", "x", "w"), header_line)
        try:
            m = int(fields["m"])
            n = int(fields["n"])
            d = int(fields["d"])
            x = int(fields["x"])
        except ValueError:
            raise FileFormatError("header counts must be integers", header_line) from None
        weight_label = fields["w"]
        if len(rows) != n:
            raise FileFormatError(
                f"header says n={n} but body has {len(rows)} rows",
                rows[-1][0] if rows else header_line,
            )
        words = []
        for no, row in rows:
            if len(row) != m:
                raise FileFormatError(f"row length {len(row)} != m={m}", no)
            if set(row) - {"0", "1"}:
                raise FileFormatError("rows must contain only 0 and 1", no)
            words.append(Codeword.from_string(row))
        try:
            code = XCode(words, declared_d=d, declared_x=x, length=m)
        except ValueError as exc:
            raise FileFormatError(str(exc)) from None
        if n and weight_label != "mixed":
            try:
                w_val = int(weight_label)
            except ValueError:
                raise FileFormatError(f"bad weight label {weight_label!r}", header_line) from None
            if any(cw.weight != w_val for cw in code.codewords):
                raise FileFormatError("weight label does not match body", header_line)
        return cls(code, weight_label, tuple(comments))

    @classmethod
    def read(cls, path: str | Path) -> "CodeFile":
        return cls.loads(Path(path).read_text(encoding="ascii"))


def _parse_header(line: str, tag: str, keys: tuple[str, ...], line_no: int) -> dict:
    parts = line.split()
    if not parts or parts[0] != tag:
        raise FileFormatError(f"header must start with {tag!r}", line_no)
    if len(parts) != 1 + len(keys):
        raise FileFormatError(f"header needs fields {keys}", line_no)
    fields = {}
    for part, key in zip(parts[1:], keys):
        prefix = key + "="
        if not part.startswith(prefix):
            raise FileFormatError(f"expected {prefix}<value>, got {part!r}", line_no)
        fields[key] = part[len(prefix):]
    return fields


# ---------------------------------------------------------------------------
# packing files


@dataclass(frozen=True)
class PackingFile:
    packing: TriplePacking
    comments: tuple[str, ...] = ()

    def dumps(self) -> str:
        lines = list(self.comments)
        lines.append(f"packing m={self.packing.m} w=3")
        lines.extend(" ".join(str(v) for v in t) for t in self.packing.triples)
        return "\n".join(lines) + "\n"

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.dumps(), encoding="ascii")

    @classmethod
    def loads(cls, text: str) -> "PackingFile":
        comments: list[str] = []
        header: str | None = None
        header_line = 0
        rows: list[tuple[int, str]] = []
        for no, raw in enumerate(text.splitlines(), start=1):
            line = raw.rstrip("\r")
            if line.startswith("#"):
                comments.append(line)
                continue
            if not line.strip():
                raise FileFormatError("blank line not allowed", no)
            if header is None:
                header = line
                header_line = no
            else:
                rows.append((no, line))
        if header is None:
            raise FileFormatError("missing header", 1)
        fields = _parse_header(header, "packing", ("m", "w"), header_line)
        try:
            m = int(fields["m"])
        except ValueError:
            raise FileFormatError("m must be an integer", header_line) from None
        if fields["w"] != "3":
            raise FileFormatError("packing files carry triples only (w=3)", header_line)
        triples = []
        for no, row in rows:
            parts = row.split()
            if len(parts) != 3:
                raise FileFormatError("each line must hold three vertex indices", no)
            try:
                t = tuple(int(v) for v in parts)
            except ValueError:
                raise FileFormatError("vertex indices must be integers", no) from None
            if list(t) != sorted(t):
                raise FileFormatError("vertex indices must be ascending", no)
            triples.append(t)
        try:
            packing = TriplePacking(m, tuple(triples))
        except ValueError as exc:
            raise FileFormatError(str(exc)) from None
        return cls(packing, tuple(comments))

    @classmethod
    def read(cls, path: str | Path) -> "PackingFile":
        return cls.loads(Path(path).read_text(encoding="ascii"))


# ---------------------------------------------------------------------------
# commands


def _budget() -> int | None:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None


def _emit(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True))


def cmd_construct(args) -> int:
    seed = args.seed
    if args.method == "girth5":
        if args.q is None:
            raise ValueError("girth5 needs --q")
        result = girth5_xcode(args.q)
    elif args.method == "linear-system":
        if args.q is None or args.w is None:
            raise ValueError("linear-system needs --q and --w")
        result = linear_system_xcode(args.q, args.w)
    elif args.method == "ap-free":
        if args.m is None or args.w is None:
            raise ValueError("ap-free needs --m and --w")
        result = ap_free_xcode(args.m, args.w)
    elif args.method == "packing":
        for name in ("m", "w", "t", "d", "x"):
            if getattr(args, name) is None:
                raise ValueError("packing needs --m --w --t --d --x")
        packing = greedy_packing(args.m, args.w, args.t, seed,
                                 max_candidates=args.max_candidates)
        result = packing_to_xcode(packing, args.d, args.x)
        result = ConstructionResult(
            result.code,
            Provenance(result.provenance.method, result.provenance.params, seed=seed),
            result.predicted_shape,
            result.notes,
        )
    elif args.method == "random-sparse":
        if args.m is None or args.d is None:
            raise ValueError("random-sparse needs --m and --d")
        result = random_sparse_xcode(args.m, args.d, seed)
    elif args.method == "even-free":
        if args.m is None or args.r is None:
            raise ValueError("even-free needs --m and --r")
        packing = even_free_packing(args.m, args.r, seed)
        comments = Provenance(
            "even-free", (("m", args.m), ("r", args.r)), seed=seed
        ).comment_lines()
        PackingFile(packing, comments).write(args.out)
        print(f"wrote {args.out} ({len(packing.triples)} triples)")
        return 0
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown method {args.method!r}")
    comments = list(result.provenance.comment_lines())
    comments.extend(f"# note: {note}" for note in result.notes)
    label = "3" if result.code.n == 0 else None
    CodeFile.from_code(result.code, comments, weight_label=label).write(args.out)
    print(f"wrote {args.out} (m={result.code.m} n={result.code.n})")
    return 0


def cmd_verify(args) -> int:
    code_file = CodeFile.read(args.input)
    if args.mode == "sampled":
        mode = SampledMode(trials=args.trials, seed=args.seed)
    else:
        mode = FullMode()
    report = is_x_code(code_file.code, args.d, args.x, mode, budget=_budget())
    _emit(report.to_json())
    return 0 if report.passed else 1


def cmd_verify_packing(args) -> int:
    packing_file = PackingFile.read(args.input)
    report = is_r_even_free(packing_file.packing, args.r)
    _emit(report.to_json())
    return 0 if report.passed else 1


def cmd_simulate(args) -> int:
    if args.trials < 1:
        raise ValueError(f"--trials must be >= 1, got {args.trials}")
    code_file = CodeFile.read(args.input)
    tried, bad, first = run_sampled_scenarios(
        code_file.code, args.d, args.x, args.trials, args.seed
    )
    counterexample = None
    if first is not None:
        xset, errors = first
        counterexample = {"unknowns": list(xset), "errors": list(errors)}
    _emit(
        {
            "trials": tried,
            "undetectable": bad,
            "first_counterexample": counterexample,
            "d": args.d,
            "x": args.x,
            "seed": args.seed,
        }
    )
    return 0 if bad == 0 else 1


def cmd_report(args) -> int:
    code_file = CodeFile.read(args.input)
    code = code_file.code
    _emit(
        {
            "m": code.m,
            "n": code.n,
            "ratio": code.n / code.m,
            "weight_profile": {str(k): v for k, v in code.weight_histogram().items()},
            "d": code.declared_d,
            "x": code.declared_x,
        }
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xcodekit",
        description="Construct, verify, and simulate constant-weight X-codes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a code or packing file")
    c.add_argument("--method", required=True,
                   choices=["packing", "ap-free", "linear-system", "girth5",
                            "random-sparse", "even-free"])
    c.add_argument("--out", required=True)
    c.add_argument("--m", type=int)
    c.add_argument("--w", type=int)
    c.add_argument("--t", type=int)
    c.add_argument("--q", type=int)
    c.add_argument("--d", type=int)
    c.add_argument("--x", type=int)
    c.add_argument("--r", type=int)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--max-candidates", type=int, default=10_000)
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check the X-code condition on a code file")
    v.add_argument("input")
    v.add_argument("--d", type=int, required=True)
    v.add_argument("--x", type=int, required=True)
    v.add_argument("--mode", choices=["full", "sampled"], default="full")
    v.add_argument("--trials", type=int, default=100_000)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    p = sub.add_parser("verify-packing", help="check r-even-freeness on a packing file")
    p.add_argument("input")
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_verify_packing)

    s = sub.add_parser("simulate", help="sample fault scenarios against a code file")
    s.add_argument("input")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--x", type=int, required=True)
    s.add_argument("--trials", type=int, default=100_000)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_simulate)

    r = sub.add_parser("report", help="compaction ratio and weight profile")
    r.add_argument("input")
    r.set_defaults(func=cmd_report)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except FileFormatError as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConstructionError as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
