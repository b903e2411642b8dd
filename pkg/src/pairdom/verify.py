from __future__ import annotations

import logging
from collections.abc import Callable, Iterable
from dataclasses import dataclass

from pairdom.errors import InternalInvariant
from pairdom.gen import (
    bowtie,
    complete_graph,
    corpus_spec,
    generate,
    path_graph,
    star_graph,
    triangle_chain,
)
from pairdom.graph import Graph, decompose, format_edge_list, validate_block_graph
from pairdom.judge import run_pipeline
from pairdom.oracle import solve

logger = logging.getLogger(__name__)


FIXTURES: dict[str, Callable[[], Graph]] = {
    **{f"P{k}": (lambda k=k: path_graph(k)) for k in range(2, 9)},
    **{f"star{k}": (lambda k=k: star_graph(k)) for k in range(2, 5)},
    "bowtie": bowtie,
    **{f"K{k}": (lambda k=k: complete_graph(k)) for k in range(3, 7)},
    "triangles2": lambda: triangle_chain(2),
    "triangles3": lambda: triangle_chain(3),
}


@dataclass(frozen=True)
class CaseResult:
    case_id: str
    seed: int | None
    n: int
    m: int
    gamma_pr: int
    vertices: int
    mismatches: tuple[int, ...]
    bookkeeping_checked: int
    bookkeeping_violations: tuple[int, ...]
    reduction_violations: tuple[int, ...]
    noncut_violations: tuple[int, ...]
    internal_errors: tuple[str, ...]
    edges: str

    @property
    def ok(self) -> bool:
        return not (
            self.mismatches
            or self.bookkeeping_violations
            or self.reduction_violations
            or self.noncut_violations
            or self.internal_errors
        )


@dataclass(frozen=True)
class VerifySummary:
    cases: int
    vertices: int
    mismatches: int
    bookkeeping_checked: int
    bookkeeping_violations: int
    reduction_violations: int
    noncut_violations: int
    internal_errors: int

    @property
    def ok(self) -> bool:
        return (
            self.mismatches
            + self.bookkeeping_violations
            + self.reduction_violations
            + self.noncut_violations
            + self.internal_errors
        ) == 0


def verify_graph(
    case_id: str,
    g: Graph,
    seed: int | None = None,
    bookkeeping_max_n: int = 14,
    cap: int | None = None,
) -> CaseResult:
    """
    Compare the pipeline with the oracle on every vertex of g.

    For each cut vertex r, and when g is small enough, also check
    gamma_pr(g) == gamma_pr(pruned) + removed weight and that r's
    membership survives the reduction.
    """
    bc = decompose(g)
    validate_block_graph(g, bc)
    truth = solve(g, cap=cap, keep_sets=False)

    mismatches: list[int] = []
    bookkeeping: list[int] = []
    reduction: list[int] = []
    noncut: list[int] = []
    internal: list[str] = []
    checked = 0

    for v in range(g.n):
        try:
            result = run_pipeline(g, v, bc)
        except InternalInvariant as e:
            logger.warning("%s vertex %d: %s", case_id, v, e)
            internal.append(f"{v}: {e}")
            continue

        got = result.verdict.in_all_min_pds
        expected = v in truth.core
        if got != expected:
            logger.warning("%s vertex %d: pipeline %s, oracle %s", case_id, v, got, expected)
            mismatches.append(v)

        if g.n >= 3 and not bc.is_cut_vertex(v) and (got or expected):
            noncut.append(v)

        if result.state is None or result.pruned is None or g.n > bookkeeping_max_n:
            continue
        checked += 1
        sub = solve(result.pruned.graph, cap=cap, keep_sets=False)
        if sub.gamma_pr + result.state.removed_weight != truth.gamma_pr:
            logger.warning(
                "%s vertex %d: gamma_pr %d != %d + %d",
                case_id,
                v,
                truth.gamma_pr,
                sub.gamma_pr,
                result.state.removed_weight,
            )
            bookkeeping.append(v)
        if (result.pruned.local(v) in sub.core) != expected:
            reduction.append(v)

    return CaseResult(
        case_id=case_id,
        seed=seed,
        n=g.n,
        m=g.m,
        gamma_pr=truth.gamma_pr,
        vertices=g.n,
        mismatches=tuple(mismatches),
        bookkeeping_checked=checked,
        bookkeeping_violations=tuple(bookkeeping),
        reduction_violations=tuple(reduction),
        noncut_violations=tuple(noncut),
        internal_errors=tuple(internal),
        edges=format_edge_list(g),
    )


def verify_case(
    seed: int,
    max_n: int = 12,
    max_size: int = 4,
    bookkeeping_max_n: int = 14,
    cap: int | None = None,
) -> CaseResult:
    g = generate(corpus_spec(seed, max_n=max_n, max_size=max_size))
    return verify_graph(f"seed:{seed}", g, seed, bookkeeping_max_n, cap)


def verify_seeds(
    seeds: Iterable[int],
    max_n: int = 12,
    max_size: int = 4,
    bookkeeping_max_n: int = 14,
    cap: int | None = None,
) -> list[CaseResult]:
    results = []
    for i, seed in enumerate(sorted(set(seeds)), start=1):
        results.append(verify_case(seed, max_n, max_size, bookkeeping_max_n, cap))
        if i % 500 == 0:
            logger.info("verified %d graphs", i)
    return results


def verify_fixtures(bookkeeping_max_n: int = 14, cap: int | None = None) -> list[CaseResult]:
    return [
        verify_graph(f"fixture:{name}", make(), None, bookkeeping_max_n, cap)
        for name, make in FIXTURES.items()
    ]


def summarize(results: Iterable[CaseResult]) -> VerifySummary:
    rows = list(results)
    return VerifySummary(
        cases=len(rows),
        vertices=sum(r.vertices for r in rows),
        mismatches=sum(len(r.mismatches) for r in rows),
        bookkeeping_checked=sum(r.bookkeeping_checked for r in rows),
        bookkeeping_violations=sum(len(r.bookkeeping_violations) for r in rows),
        reduction_violations=sum(len(r.reduction_violations) for r in rows),
        noncut_violations=sum(len(r.noncut_violations) for r in rows),
        internal_errors=sum(len(r.internal_errors) for r in rows),
    )


def parse_seeds(text: str) -> list[int]:
    """`A..B` (inclusive) or a comma-separated list."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        a, b = int(lo), int(hi)
        if b < a:
            raise ValueError(f"empty seed range {text!r}")
        return list(range(a, b + 1))
    return [int(x) for x in text.split(",") if x.strip()]
