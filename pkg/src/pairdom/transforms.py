from __future__ import annotations

import json
from typing import Any

from pairdom.judge import Verdict
from pairdom.oracle import OracleResult
from pairdom.storage import CaseRow
from pairdom.verify import CaseResult, VerifySummary


def to_line(doc: dict[str, Any]) -> str:
    """One document per line, keys sorted so reruns are byte-identical."""
    return json.dumps(doc, sort_keys=True, separators=(", ", ": "))


def verdict_to_doc(verdict: Verdict) -> dict[str, Any]:
    return {
        "vertex": verdict.vertex,
        "in_all_min_pds": verdict.in_all_min_pds,
        "rule_fired": "none" if verdict.rule_fired is None else verdict.rule_fired,
        "counts": verdict.counts.as_dict(),
        "special_case": verdict.special_case.value if verdict.special_case else None,
    }


def oracle_to_doc(result: OracleResult) -> dict[str, Any]:
    return {
        "gamma_pr": result.gamma_pr,
        "num_min_sets": result.num_min_sets,
        "core": sorted(result.core),
    }


def case_to_doc(case: CaseResult) -> dict[str, Any]:
    return {
        "case": case.case_id,
        "n": case.n,
        "m": case.m,
        "gamma_pr": case.gamma_pr,
        "mismatches": list(case.mismatches),
        "bookkeeping_violations": list(case.bookkeeping_violations),
        "reduction_violations": list(case.reduction_violations),
        "noncut_violations": list(case.noncut_violations),
        "internal_errors": list(case.internal_errors),
    }


def summary_to_doc(summary: VerifySummary) -> dict[str, Any]:
    return {
        "cases": summary.cases,
        "vertices": summary.vertices,
        "mismatches": summary.mismatches,
        "bookkeeping_checked": summary.bookkeeping_checked,
        "bookkeeping_violations": summary.bookkeeping_violations,
        "reduction_violations": summary.reduction_violations,
        "noncut_violations": summary.noncut_violations,
        "internal_errors": summary.internal_errors,
    }


def case_to_row(case: CaseResult) -> CaseRow:
    """
    Flatten a verification result into the normalized CaseRow stored in SQLite.

    Vertex lists are kept as JSON text so failing cases can be replayed.
    """
    return CaseRow(
        case_id=case.case_id,
        seed=case.seed,
        n=case.n,
        m=case.m,
        gamma_pr=case.gamma_pr,
        mismatches=len(case.mismatches),
        bookkeeping_violations=len(case.bookkeeping_violations),
        reduction_violations=len(case.reduction_violations),
        noncut_violations=len(case.noncut_violations),
        internal_errors=len(case.internal_errors),
        ok=1 if case.ok else 0,
        details=to_line(case_to_doc(case)),
        edges=case.edges,
    )
