"""Code and packing generators: greedy packings, digit-sphere progression-free
sets, the two finite-field families, and the randomized delete-and-repair
pipelines.

Every deterministic construction reproduces bit-for-bit; every randomized one
reproduces from its seed (``random.Random``, recorded in provenance as
``python-random-mt19937``).  Repair loops always delete the lexicographically
smallest eligible triple of the current witness, so repaired outputs are
seed-deterministic too.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .bitcore import Codeword
from .galois import PrimeField, is_prime
from .verifier import (
    BudgetExceededError,
    FullMode,
    Hypergraph,
    SampledMode,
    TriplePacking,
    XCode,
    _connected_subsets,
    _edge_adjacency,
    _named_configs,
    find_even_configuration,
    is_linear,
    is_r_even_free,
    is_x_code,
)

GENERATOR_NAME = "python-random-mt19937"

DEFAULT_REPAIR_ROUNDS = 10**4


class ConstructionError(RuntimeError):
    """A randomized construction hit its repair cap; carries partial state."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class Provenance:
    method: str
    params: tuple[tuple[str, object], ...]
    seed: int | None = None

    def comment_lines(self) -> tuple[str, ...]:
        lines = [f"# method: {self.method}"]
        for key, value in self.params:
            lines.append(f"# {key}: {value}")
        if self.seed is not None:
            lines.append(f"# seed: {self.seed}")
            lines.append(f"# generator: {GENERATOR_NAME}")
        return tuple(lines)


@dataclass(frozen=True)
class ConstructionResult:
    code: XCode
    provenance: Provenance
    predicted_shape: tuple[int, int]
    notes: tuple[str, ...] = ()


# ---------------------------------------------------------------------------
# packings with bounded pairwise intersection


@dataclass(frozen=True)
class Packing:
    """A family of w-subsets of {1..m} pairwise intersecting in fewer than t points."""

    m: int
    w: int
    t: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not 1 <= self.t <= self.w <= self.m:
            raise ValueError(f"need 1 <= t <= w <= m, got t={self.t} w={self.w} m={self.m}")
        normed = []
        for b in self.blocks:
            sb = tuple(sorted(b))
            if len(set(sb)) != self.w:
                raise ValueError(f"not a {self.w}-subset: {b}")
            if sb[0] < 1 or sb[-1] > self.m:
                raise ValueError(f"block {b} outside [1, {self.m}]")
            normed.append(sb)
        sets = [set(b) for b in normed]
        for i in range(len(sets)):
            for j in range(i + 1, len(sets)):
                if len(sets[i] & sets[j]) >= self.t:
                    raise ValueError(
                        f"blocks {normed[i]} and {normed[j]} share >= {self.t} points"
                    )
        object.__setattr__(self, "blocks", tuple(normed))

    def masks(self) -> tuple[int, ...]:
        out = []
        for b in self.blocks:
            m = 0
            for v in b:
                m |= 1 << (v - 1)
            out.append(m)
        return tuple(out)


def greedy_packing(
    m: int, w: int, t: int, seed: int, max_candidates: int = 10_000
) -> Packing:
    """Maximal-under-insertion (t, w, m)-packing from seeded random draws.

    Candidate w-subsets are drawn uniformly (with repetition across draws) up
    to ``max_candidates`` times; a candidate joins when it meets every
    accepted block in fewer than t points.  Block count is seed-dependent.
    t = 1 asks for pairwise-disjoint blocks.
    """
    if not 1 <= t <= w <= m:
        raise ValueError(f"need 1 <= t <= w <= m, got t={t} w={w} m={m}")
    rng = random.Random(seed)
    universe = range(1, m + 1)
    blocks: list[tuple[int, ...]] = []
    block_sets: list[set[int]] = []
    for _ in range(max_candidates):
        cand = tuple(sorted(rng.sample(universe, w)))
        cset = set(cand)
        if all(len(cset & b) < t for b in block_sets):
            blocks.append(cand)
            block_sets.append(cset)
    return Packing(m, w, t, tuple(blocks))


def required_packing_strength(w: int, d: int, x: int) -> int:
    """Largest packing parameter t for which weight-w blocks give a (d, x) code."""
    denom = x + d - 1
    if denom <= 0:
        return w
    return -(-w // denom)


def packing_to_xcode(packing: Packing, d: int, x: int) -> ConstructionResult:
    """Indicator vectors of a packing, claimed at (d, x).

    Valid whenever the packing strength t is at most ceil(w / (x + d - 1)).
    """
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    if x < 0:
        raise ValueError(f"x must be nonnegative, got {x}")
    required = required_packing_strength(packing.w, d, x)
    if packing.t > required:
        raise ValueError(
            f"packing strength t={packing.t} too large for (d={d}, x={x}); "
            f"need t <= {required}"
        )
    code = XCode.from_masks(packing.masks(), packing.m, declared_d=d, declared_x=x)
    prov = Provenance(
        "packing",
        (("m", packing.m), ("w", packing.w), ("t", packing.t), ("d", d), ("x", x)),
    )
    return ConstructionResult(code, prov, (packing.m, code.n))


# ---------------------------------------------------------------------------
# progression-free sets and the block family built on them


def is_three_terms_of_ap(a: int, b: int, c: int, w: int) -> bool:
    """Whether a < b < c occur together as terms of some length-w progression.

    Equivalent to integers p, q >= 1 with p + q <= w - 1 and
    (b - a) * q == (c - b) * p; the minimal such pair sums to
    (c - a) / gcd(b - a, c - b).
    """
    if not a < b < c:
        raise ValueError("need a < b < c")
    return (c - a) // math.gcd(b - a, c - b) <= w - 1


def is_ap_free(elements: Sequence[int], w: int) -> bool:
    """Cubic scan for the no-three-terms-of-a-w-AP property."""
    elems = sorted(elements)
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            for k in range(j + 1, len(elems)):
                if is_three_terms_of_ap(elems[i], elems[j], elems[k], w):
                    return False
    return True


@dataclass(frozen=True)
class ApFreeSet:
    """A subset of [bound] with no three elements on a common w-term progression."""

    bound: int
    w: int
    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        elems = tuple(sorted(self.elements))
        if not elems:
            raise ValueError("progression-free set must be nonempty")
        if elems[0] < 1 or elems[-1] > self.bound:
            raise ValueError(f"elements outside [1, {self.bound}]")
        if len(set(elems)) != len(elems):
            raise ValueError("elements must be distinct")
        if not is_ap_free(elems, self.w):
            raise ValueError("set contains three terms of a length-w progression")
        object.__setattr__(self, "elements", elems)


def _digits(a: int, base: int) -> list[int]:
    out = []
    while a:
        out.append(a % base)
        a //= base
    return out


def behrend_set(bound: int, w: int) -> ApFreeSet:
    """Digit-sphere progression-free subset of [bound].

    Write each a in base 2*beta*w, keep numbers whose digits stay at most
    beta, and bucket them by the squared euclidean norm of the digit vector;
    any three bucket-mates on a common w-term progression would force equality
    in the triangle inequality, which distinct vectors of equal norm cannot
    achieve.  beta is swept (for digit counts 2..4) and the largest bucket
    wins; ties resolve to the smallest (beta, norm).
    """
    if bound < 2:
        raise ValueError(f"bound must be at least 2, got {bound}")
    if w < 3:
        raise ValueError(f"w must be at least 3, got {w}")
    beta_hi = 2
    for k in (1, 2, 3):
        beta_hi = max(beta_hi, math.ceil(bound ** (1 / (k + 1)) / (2 * w)))
    best: tuple[int, ...] | None = None
    for beta in range(2, beta_hi + 1):
        base = 2 * beta * w
        buckets: dict[int, list[int]] = {}
        for a in range(1, bound + 1):
            digits = _digits(a, base)
            if any(dig > beta for dig in digits):
                continue
            norm = sum(dig * dig for dig in digits)
            buckets.setdefault(norm, []).append(a)
        for norm in sorted(buckets):
            group = buckets[norm]
            if best is None or len(group) > len(best):
                best = tuple(group)
    assert best is not None  # a = 1 always survives with beta >= 2
    return ApFreeSet(bound, w, best)


def ap_free_xcode(m: int, w: int) -> ConstructionResult:
    """Indicator vectors of the progression blocks {x, x+a, ..., x+(w-1)a}.

    Blocks are taken over all 1 <= x <= floor(m/w) and every difference a in
    the progression-free set on [floor(m/w)], claimed at (3, 2).
    """
    if w < 3:
        raise ValueError(f"w must be at least 3, got {w}")
    if m < 3 * w:
        raise ValueError(f"m must be at least {3 * w} for w={w}, got {m}")
    mprime = m // w
    free_set = behrend_set(mprime, w)
    masks = []
    for x in range(1, mprime + 1):
        for a in free_set.elements:
            mask = 0
            for i in range(w):
                mask |= 1 << (x + i * a - 1)
            masks.append(mask)
    code = XCode.from_masks(masks, m, declared_d=3, declared_x=2)
    predicted = (m, mprime * len(free_set.elements))
    assert (code.m, code.n) == predicted
    prov = Provenance(
        "ap-free",
        (("m", m), ("w", w), ("m_prime", mprime), ("set_size", len(free_set.elements))),
    )
    return ConstructionResult(code, prov, predicted, notes=(f"difference set: {list(free_set.elements)}",))


# ---------------------------------------------------------------------------
# finite-field families


def linear_system_xcode(q: int, w: int) -> ConstructionResult:
    """Weight-w code on w blocks of length q from one linear system per pair.

    For each (x0, x1) in F_q^2 the remaining coordinates are forced by
    x0 + j*x1 + x_{j+1} = 0 for j = 1..w-2; the codeword concatenates the w
    coordinate indicators.  Shape is exactly (w*q, q^2), claimed at (3, 2).
    """
    if w < 4:
        raise ValueError(f"w must be at least 4, got {w}")
    if q <= w:
        raise ValueError(f"q must exceed w, got q={q} w={w}")
    if not is_prime(q):
        raise ValueError(f"q must be prime, got {q}")
    masks = []
    for x0 in range(q):
        for x1 in range(q):
            coords = [x0, x1]
            for j in range(1, w - 1):
                coords.append((-(x0 + j * x1)) % q)
            mask = 0
            for block, value in enumerate(coords):
                mask |= 1 << (block * q + value)
            masks.append(mask)
    code = XCode.from_masks(masks, w * q, declared_d=3, declared_x=2)
    predicted = (w * q, q * q)
    assert (code.m, code.n) == predicted
    prov = Provenance("linear-system", (("q", q), ("w", w)))
    return ConstructionResult(code, prov, predicted)


def linear_system_tuple(q: int, w: int, x0: int, x1: int) -> tuple[int, ...]:
    """The coordinate tuple the linear system forces for one (x0, x1)."""
    field = PrimeField(q)
    e0 = field.element(x0)
    e1 = field.element(x1)
    coords = [e0.value, e1.value]
    for j in range(1, w - 1):
        coords.append((-(e0 + field.element(j) * e1)).value)
    return tuple(coords)


def curve_points(q: int) -> frozenset[tuple[int, int]]:
    """Points of the parabola 2*x2 = x1*x1 over F_q."""
    field = PrimeField(q)
    inv2 = field.element(2).inverse().value
    return frozenset((x1, x1 * x1 * inv2 % q) for x1 in range(q))


def girth5_hypergraph(q: int) -> Hypergraph:
    """3-uniform hypergraph on F_q^2 minus the parabola, one edge per
    first-coordinate triple, connected by the three pairwise sum equations."""
    if q < 5 or q % 2 == 0 or not is_prime(q):
        raise ValueError(f"q must be an odd prime >= 5, got {q}")
    field = PrimeField(q)
    inv2 = field.element(2).inverse().value
    curve = curve_points(q)
    index: dict[tuple[int, int], int] = {}
    for x1 in range(q):
        for x2 in range(q):
            if (x1, x2) in curve:
                continue
            index[(x1, x2)] = len(index)
    edges = []
    for a1, b1, c1 in combinations(range(q), 3):
        ab, bc, ca = a1 * b1 % q, b1 * c1 % q, c1 * a1 % q
        a2 = inv2 * (ab + ca - bc) % q
        b2 = inv2 * (ab + bc - ca) % q
        c2 = inv2 * (bc + ca - ab) % q
        verts = ((a1, a2), (b1, b2), (c1, c2))
        for vert in verts:
            # off-curve is forced by (a1-b1)(a1-c1) != 0 for distinct coordinates
            if vert in curve:
                raise AssertionError(f"solved vertex {vert} lies on the curve")
        edges.append(tuple(sorted(index[vert] + 1 for vert in verts)))
    return Hypergraph(len(index), tuple(edges))


def solve_curve_triple(q: int, a1: int, b1: int, c1: int) -> tuple[tuple[int, int], ...]:
    """The three vertices determined by distinct first coordinates a1, b1, c1."""
    field = PrimeField(q)
    inv2 = field.element(2).inverse().value
    ab, bc, ca = a1 * b1 % q, b1 * c1 % q, c1 * a1 % q
    return (
        (a1, inv2 * (ab + ca - bc) % q),
        (b1, inv2 * (ab + bc - ca) % q),
        (c1, inv2 * (bc + ca - ab) % q),
    )


def girth5_xcode(q: int) -> ConstructionResult:
    """Indicator code of the girth-5 curve hypergraph: shape (q(q-1), C(q,3)),
    weight 3, claimed at (7, 2)."""
    h = girth5_hypergraph(q)
    masks = []
    for edge in h.edges:
        mask = 0
        for vert in edge:
            mask |= 1 << (vert - 1)
        masks.append(mask)
    code = XCode.from_masks(masks, h.vertex_count, declared_d=7, declared_x=2)
    predicted = (q * (q - 1), math.comb(q, 3))
    assert (code.m, code.n) == predicted
    prov = Provenance("girth5", (("q", q),))
    return ConstructionResult(code, prov, predicted)


# ---------------------------------------------------------------------------
# randomized delete-and-repair pipelines


def _sample_triples(m: int, p: float, rng: random.Random) -> list[tuple[int, int, int]]:
    return [t for t in combinations(range(1, m + 1), 3) if rng.random() < p]


def sparse_triple_probability(m: int) -> float:
    """Sampling density for the weight-3, x=2 randomized construction."""
    return (1.0 / 30.0) * m ** (-12.0 / 7.0)


def _delete(triples: list, victim) -> None:
    triples.remove(victim)


def _lex_smallest(triples: Iterable[tuple[int, int, int]]):
    return min(triples)


def random_sparse_xcode(
    m: int,
    d: int,
    seed: int,
    max_rounds: int = DEFAULT_REPAIR_ROUNDS,
) -> ConstructionResult:
    """Random weight-3 code certified at (d, 2) by delete-and-repair.

    Triples are sampled at density (1/30) * m**(-12/7); the repair first
    deletes one triple from every connected s-subset spanning at most 2s
    vertices for s = 2..4 (which forces girth at least 5), then runs the
    (d, 2) verification and deletes one member of each witness's XOR side
    until it passes.  The loop exits only on a certified code.
    """
    if m < 30:
        raise ValueError(f"m must be at least 30, got {m}")
    if d < 6:
        raise ValueError(f"d must be at least 6, got {d}")
    rng = random.Random(seed)
    p = sparse_triple_probability(m)
    triples = _sample_triples(m, p, rng)
    initial = len(triples)
    rounds = 0
    union_deletions = 0
    while True:
        rounds += 1
        if rounds > max_rounds:
            raise ConstructionError(
                f"sparse repair exceeded {max_rounds} rounds", partial=tuple(triples)
            )
        violation = _find_small_span_subset(triples)
        if violation is None:
            break
        _delete(triples, _lex_smallest(violation))
        union_deletions += 1
    witness_deletions = 0
    mode_note = "full"
    while True:
        rounds += 1
        if rounds > max_rounds:
            raise ConstructionError(
                f"sparse repair exceeded {max_rounds} rounds", partial=tuple(triples)
            )
        packing = TriplePacking(m, tuple(triples))
        code = XCode.from_masks(packing.masks(), m, declared_d=d, declared_x=2)
        try:
            report = is_x_code(code, d, 2, FullMode())
        except BudgetExceededError:
            mode_note = "sampled"
            report = is_x_code(
                code, d, 2, SampledMode(trials=200_000, seed=rng.randrange(2**32))
            )
        if report.passed:
            break
        victim = _lex_smallest(triples[i] for i in report.witness.s2)
        _delete(triples, victim)
        witness_deletions += 1
    prov = Provenance("random-sparse", (("m", m), ("d", d)), seed=seed)
    notes = [
        f"sampled triples: {initial}",
        f"small-span deletions: {union_deletions}",
        f"witness deletions: {witness_deletions}",
        f"final verification: {mode_note}",
    ]
    if code.n == 0:
        notes.append("vacuous: empty code")
    return ConstructionResult(code, prov, (m, code.n), notes=tuple(notes))


def _find_small_span_subset(triples: Sequence[tuple[int, int, int]]):
    """Connected s-subset (s = 2..4) spanning at most 2s vertices, if any.

    For the simultaneous family of bounds, any violating subset has a
    connected violating component, so connected enumeration suffices.
    """
    if len(triples) < 2:
        return None
    srt = sorted(triples)
    sets = [set(t) for t in srt]
    adj = _edge_adjacency(sets)
    for s in (2, 3, 4):
        if s > len(srt):
            break
        for sub in _connected_subsets(adj, s):
            span: set[int] = set()
            for i in sub:
                span |= sets[i]
            if len(span) <= 2 * s:
                return tuple(srt[i] for i in sorted(sub))
    return None


def even_free_probability(m: int, eps: float = 0.05) -> float:
    """Sampling density for the even-free packing pipeline."""
    return m ** (-(9.0 / 8.0 + eps))


def even_free_packing(
    m: int,
    r: int,
    seed: int,
    eps: float = 0.05,
    max_rounds: int = DEFAULT_REPAIR_ROUNDS,
) -> TriplePacking:
    """Random triple packing repaired until it is r-even-free (and linear).

    Deletions run in phases matching the forbidden structures: one triple from
    every vertex-pair clash first, then Pasches, then grids and double
    triangles (for r >= 6), then a generic even-configuration sweep when
    r exceeds 6.  Deleting triples never creates configurations, so each
    phase's survivors stay clean.
    """
    if m < 9:
        raise ValueError(f"m must be at least 9, got {m}")
    if r < 4 or r % 2:
        raise ValueError(f"r must be an even integer >= 4, got {r}")
    rng = random.Random(seed)
    p = even_free_probability(m, eps)
    triples = _sample_triples(m, p, rng)
    rounds = 0

    def tick():
        nonlocal rounds
        rounds += 1
        if rounds > max_rounds:
            raise ConstructionError(
                f"even-free repair exceeded {max_rounds} rounds",
                partial=tuple(triples),
            )

    # phase 1: linearity
    while True:
        tick()
        linear, clash = is_linear(TriplePacking(m, tuple(triples)))
        if linear:
            break
        _delete(triples, _lex_smallest(clash))
    # phase 2: named shapes, smallest first; deletions only shrink the
    # configuration list, so one scan per kind is re-scan-equivalent
    kinds = ["pasch"]
    if r >= 6:
        kinds += ["grid", "double_triangle"]
    for kind in kinds:
        packing = TriplePacking(m, tuple(triples))
        configs = _named_configs(packing, kind)
        while configs:
            tick()
            config = configs[0]
            victim = _lex_smallest(config)
            _delete(triples, victim)
            configs = [c for c in configs if victim not in c]
    # phase 3: generic sweep for r > 6
    if r > 6:
        while True:
            tick()
            packing = TriplePacking(m, tuple(triples))
            config = find_even_configuration(packing, r)
            if config is None:
                break
            _delete(triples, _lex_smallest(config))
    packing = TriplePacking(m, tuple(triples))
    report = is_r_even_free(packing, r)
    if not report.passed:
        raise ConstructionError("repair loop exited without a clean packing",
                                partial=tuple(triples))
    return packing


def evenfree_to_xcode(packing: TriplePacking, r: int) -> ConstructionResult:
    """Indicator code of an r-even-free linear packing, annotated with the
    full triple of quality claims (1,2), (3,1), (r,0)."""
    if r < 4:
        raise ValueError(f"r must be at least 4, got {r}")
    linear, clash = is_linear(packing)
    if not linear:
        raise ValueError(f"packing is not linear: triples {clash[0]} and {clash[1]}")
    report = is_r_even_free(packing, r)
    if not report.passed:
        raise ValueError(
            f"packing is not {r}-even-free: {report.kind} configuration "
            f"{list(report.witness)}"
        )
    code = XCode.from_masks(packing.masks(), packing.m, declared_d=1, declared_x=2)
    notes = [f"claims: (1,2) (3,1) ({r},0)"]
    if code.n == 0:
        notes.append("vacuous: empty packing")
    prov = Provenance("even-free-code", (("m", packing.m), ("r", r)))
    return ConstructionResult(code, prov, (packing.m, code.n), notes=tuple(notes))
