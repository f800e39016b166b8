"""Semantic model of ternary response compaction.

Codewords are matrix columns; output rows are the bit positions.  A response
bit may be 0, 1, or unknown (X); an unknown absorbs every XOR it touches.  An
error pattern E is detectable exactly when some output row sees an odd number
of error columns and no unknown column.  The detectability logic here works
row by row on purpose: it is the independent cross-check for the subset
verifier, so it never calls the cover/fold primitives.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .verifier import (
    FullMode,
    Mode,
    SampledMode,
    VerificationReport,
    Witness,
    XCode,
)
from .bitcore import fold_or, fold_xor

X = "X"


@dataclass(frozen=True)
class Response:
    """Length-n vector over {0, 1, X} with the X index set kept alongside."""

    values: tuple

    def __post_init__(self) -> None:
        for v in self.values:
            if v not in (0, 1, X):
                raise ValueError(f"response entries must be 0, 1, or X, got {v!r}")

    @property
    def x_positions(self) -> frozenset[int]:
        return frozenset(i for i, v in enumerate(self.values) if v == X)

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class FaultScenario:
    """Disjoint index sets of flipped (error) and unknowable (X) columns."""

    error_positions: frozenset[int]
    x_positions: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "error_positions", frozenset(self.error_positions))
        object.__setattr__(self, "x_positions", frozenset(self.x_positions))
        if not self.error_positions:
            raise ValueError("a fault scenario needs at least one error position")
        if self.error_positions & self.x_positions:
            raise ValueError("error and X positions must be disjoint")


def compact(code: XCode, response: Response) -> tuple:
    """Push a response through the compactor: row i is the XOR of the
    response bits whose codewords have bit i set, or X if any of them is X."""
    if len(response) != code.n:
        raise ValueError(f"response length {len(response)} != code size {code.n}")
    words = code.codewords
    out = []
    for i in range(code.m):
        acc = 0
        unknown = False
        for j in range(code.n):
            if words[j].bit(i):
                v = response.values[j]
                if v == X:
                    unknown = True
                    break
                acc ^= v
        out.append(X if unknown else acc)
    return tuple(out)


def is_detectable(code: XCode, scenario: FaultScenario) -> bool:
    """True when some output row flips and carries no unknown.

    Row by row: the row must meet an odd number of error columns and no X
    column.
    """
    for idx in scenario.error_positions | scenario.x_positions:
        if not 0 <= idx < code.n:
            raise ValueError(f"column index {idx} out of range for n={code.n}")
    words = code.codewords
    for i in range(code.m):
        if any(words[j].bit(i) for j in scenario.x_positions):
            continue
        parity = 0
        for j in scenario.error_positions:
            parity ^= words[j].bit(i)
        if parity:
            return True
    return False


def _scenario_witness(code: XCode, xset: tuple[int, ...], errors: tuple[int, ...]) -> Witness:
    union = fold_or((code.codewords[i] for i in xset), length=code.m)
    xor_sum = fold_xor((code.codewords[j] for j in errors), length=code.m)
    return Witness(tuple(xset), tuple(errors), union, xor_sum)


def semantic_x_code_check(
    code: XCode,
    d: int,
    x: int,
    mode: Mode | None = None,
) -> VerificationReport:
    """Detectability oracle over fault scenarios.

    Full mode enumerates every scenario with |X-set| = x and 1 <= |E| <= d
    disjoint from it, in the same canonical order as the subset verifier, so
    first counterexamples line up between the two.  Sampled mode draws
    scenarios at random and scans all trials, counting by early exit only on
    the verdict.
    """
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    if x < 0:
        raise ValueError(f"x must be nonnegative, got {x}")
    if mode is None:
        mode = FullMode()
    n = code.n
    if n < x + 1:
        return VerificationReport(passed=True, mode=mode, checks=0, vacuous=True)
    if isinstance(mode, FullMode):
        checks = 0
        for xset in combinations(range(n), x):
            rest = [j for j in range(n) if j not in xset]
            for s in range(1, min(d, len(rest)) + 1):
                for errors in combinations(rest, s):
                    checks += 1
                    scenario = FaultScenario(frozenset(errors), frozenset(xset))
                    if not is_detectable(code, scenario):
                        return VerificationReport(
                            passed=False,
                            mode=mode,
                            checks=checks,
                            witness=_scenario_witness(code, xset, errors),
                        )
        return VerificationReport(passed=True, mode=mode, checks=checks)
    tried, bad, first = run_sampled_scenarios(code, d, x, mode.trials, mode.seed)
    if bad == 0:
        return VerificationReport(passed=True, mode=mode, checks=tried)
    xset, errors = first
    return VerificationReport(
        passed=False,
        mode=mode,
        checks=tried,
        witness=_scenario_witness(code, xset, errors),
    )


def run_sampled_scenarios(code: XCode, d: int, x: int, trials: int, seed: int):
    """Draw scenarios uniformly; returns (tried, undetectable count, first bad).

    Unlike the verdict-only check this scans every trial, so callers get a
    count of undetectable draws.  One sample of x+s distinct columns split
    after position x matches drawing the X-set uniformly and then the error
    set uniformly from the disjoint s-subsets, s uniform on [1, min(d, n-x)].
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    n = code.n
    if n < x + 1:
        return 0, 0, None
    rng = random.Random(seed)
    smax = min(d, n - x)
    bad = 0
    first = None
    for _ in range(trials):
        s = rng.randint(1, smax)
        sel = rng.sample(range(n), x + s)
        xset = tuple(sorted(sel[:x]))
        errors = tuple(sorted(sel[x:]))
        scenario = FaultScenario(frozenset(errors), frozenset(xset))
        if not is_detectable(code, scenario):
            bad += 1
            if first is None:
                first = (xset, errors)
    return trials, bad, first
