from __future__ import annotations

import sqlite3
from collections.abc import Iterable, Iterator
from contextlib import closing, contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Any


@dataclass(frozen=True)
class CaseRow:
    case_id: str  # "seed:<n>" or "fixture:<name>"
    seed: int | None
    n: int
    m: int
    gamma_pr: int
    mismatches: int
    bookkeeping_violations: int
    reduction_violations: int
    noncut_violations: int
    internal_errors: int
    ok: int  # 0/1
    details: str  # JSON document
    edges: str  # edge-list text


class Storage:
    def __init__(self, db_path: Path) -> None:
        self.db_path = db_path
        self._ensure_schema()

    @contextmanager
    def _connect(self) -> Iterator[sqlite3.Connection]:
        """One transaction per call; the connection is closed afterwards."""
        with closing(sqlite3.connect(self.db_path)) as conn:
            conn.execute("PRAGMA journal_mode=WAL;")
            with conn:
                yield conn

    def _ensure_schema(self) -> None:
        with self._connect() as conn:
            conn.execute(
                """
                CREATE TABLE IF NOT EXISTS cases (
                    case_id TEXT PRIMARY KEY,
                    seed INTEGER,
                    n INTEGER NOT NULL,
                    m INTEGER NOT NULL,
                    gamma_pr INTEGER NOT NULL,
                    mismatches INTEGER NOT NULL,
                    bookkeeping_violations INTEGER NOT NULL,
                    reduction_violations INTEGER NOT NULL,
                    noncut_violations INTEGER NOT NULL,
                    internal_errors INTEGER NOT NULL,
                    ok INTEGER NOT NULL,            -- 0/1
                    details TEXT NOT NULL,
                    edges TEXT NOT NULL
                );
                """
            )
            conn.execute("CREATE INDEX IF NOT EXISTS idx_cases_ok ON cases(ok, seed);")

            # Last run parameters (seeds, max-n, ...) as key/value pairs.
            conn.execute(
                """
                CREATE TABLE IF NOT EXISTS state (
                    key TEXT PRIMARY KEY,
                    value TEXT NOT NULL
                );
                """
            )

    def upsert_cases(self, rows: Iterable[CaseRow]) -> int:
        """
        Insert verification results; a case already stored (same case_id)
        is overwritten, so a rerun replaces the previous outcome.
        """
        rows_list = list(rows)
        if not rows_list:
            return 0

        with self._connect() as conn:
            conn.executemany(
                """
                INSERT INTO cases(
                    case_id, seed, n, m, gamma_pr, mismatches, bookkeeping_violations,
                    reduction_violations, noncut_violations, internal_errors, ok, details,
                    edges
                )
                VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?)
                ON CONFLICT(case_id) DO UPDATE SET
                    seed=excluded.seed,
                    n=excluded.n,
                    m=excluded.m,
                    gamma_pr=excluded.gamma_pr,
                    mismatches=excluded.mismatches,
                    bookkeeping_violations=excluded.bookkeeping_violations,
                    reduction_violations=excluded.reduction_violations,
                    noncut_violations=excluded.noncut_violations,
                    internal_errors=excluded.internal_errors,
                    ok=excluded.ok,
                    details=excluded.details,
                    edges=excluded.edges
                ;
                """,
                [
                    (
                        r.case_id,
                        r.seed,
                        r.n,
                        r.m,
                        r.gamma_pr,
                        r.mismatches,
                        r.bookkeeping_violations,
                        r.reduction_violations,
                        r.noncut_violations,
                        r.internal_errors,
                        r.ok,
                        r.details,
                        r.edges,
                    )
                    for r in rows_list
                ],
            )
        return len(rows_list)

    def metrics(self) -> dict[str, Any]:
        with self._connect() as conn:
            row = conn.execute(
                """
                SELECT
                    COUNT(*),
                    COALESCE(SUM(1 - ok), 0),
                    COALESCE(SUM(n), 0),
                    COALESCE(SUM(mismatches), 0),
                    COALESCE(SUM(bookkeeping_violations), 0),
                    COALESCE(SUM(reduction_violations), 0),
                    COALESCE(SUM(noncut_violations), 0),
                    COALESCE(SUM(internal_errors), 0)
                FROM cases;
                """
            ).fetchone()
            total, failing, vertices, mismatches, bookkeeping, reduction, noncut, internal = row

            largest = conn.execute("SELECT COALESCE(MAX(n), 0) FROM cases;").fetchone()[0]

            by_size = conn.execute(
                """
                SELECT n, COUNT(*) AS cases, SUM(1 - ok) AS failing
                FROM cases
                GROUP BY n
                ORDER BY n;
                """
            ).fetchall()

        return {
            "total": total,
            "failing": failing,
            "vertices": vertices,
            "mismatches": mismatches,
            "bookkeeping_violations": bookkeeping,
            "reduction_violations": reduction,
            "noncut_violations": noncut,
            "internal_errors": internal,
            "largest_n": largest,
            "by_size": by_size,
        }

    def list_failures(self, limit: int = 20) -> list[tuple[str, int, int, str]]:
        with self._connect() as conn:
            cur = conn.execute(
                """
                SELECT case_id, n, mismatches, details
                FROM cases
                WHERE ok = 0
                ORDER BY seed IS NULL, seed, case_id
                LIMIT ?
                """,
                (limit,),
            )
            return list(cur.fetchall())

    def get_edges(self, case_id: str) -> str | None:
        with self._connect() as conn:
            row = conn.execute("SELECT edges FROM cases WHERE case_id = ?", (case_id,)).fetchone()
            return row[0] if row else None

    def get_state(self, key: str) -> str | None:
        """Read a value from the state table; None if the key is missing."""
        with self._connect() as conn:
            row = conn.execute("SELECT value FROM state WHERE key = ?", (key,)).fetchone()
            return row[0] if row else None

    def set_state(self, key: str, value: str) -> None:
        with self._connect() as conn:
            conn.execute(
                """
                INSERT INTO state(key, value)
                VALUES (?, ?)
                ON CONFLICT(key) DO UPDATE SET value=excluded.value;
                """,
                (key, value),
            )
