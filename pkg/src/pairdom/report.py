from __future__ import annotations

from pathlib import Path

from pairdom.storage import Storage


def write_markdown_report(store: Storage, out_path: Path, limit: int = 20) -> None:
    """
    Markdown summary of stored verification results: totals, cases per
    graph size and the first failing cases with their edge lists.
    No timestamp, so the report is stable across reruns.
    """
    metrics = store.metrics()

    lines: list[str] = []
    lines.append("# Paired-domination verification report")
    lines.append("")
    lines.append(f"Last run: `{store.get_state('last_run') or 'unknown'}`")
    lines.append("")
    lines.append("## Overview")
    lines.append("")
    lines.append(f"- Cases: **{metrics['total']}** ({metrics['failing']} failing)")
    lines.append(f"- Vertices checked: **{metrics['vertices']}**")
    lines.append(f"- Largest graph: n={metrics['largest_n']}")
    lines.append(f"- Oracle mismatches: **{metrics['mismatches']}**")
    lines.append(f"- Bookkeeping violations: **{metrics['bookkeeping_violations']}**")
    lines.append(f"- Reduction violations: **{metrics['reduction_violations']}**")
    lines.append(f"- Non-cut-vertex violations: **{metrics['noncut_violations']}**")
    lines.append(f"- Internal invariant failures: **{metrics['internal_errors']}**")
    lines.append("")
    lines.append("## Cases by Size")
    lines.append("")
    lines.append("| n | Cases | Failing |")
    lines.append("| ---: | ---: | ---: |")
    for n, cases, failing in metrics["by_size"]:
        lines.append(f"| {n} | {cases} | {failing} |")

    failures = store.list_failures(limit=limit)
    if failures:
        lines.append("")
        lines.append("## Failing Cases")
        for case_id, n, mismatches, details in failures:
            lines.append("")
            lines.append(f"### {case_id} (n={n}, mismatches={mismatches})")
            lines.append("")
            lines.append(f"`{details}`")
            lines.append("")
            lines.append("```")
            lines.append((store.get_edges(case_id) or "").rstrip())
            lines.append("```")

    out_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
