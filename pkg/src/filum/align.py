"""Exact character-level edit distance, cutoff-banded variant, and traceback.

Distance is unit-cost Levenshtein: the minimum number of single-character
insertions, deletions, and substitutions turning one string into another.
``bounded_edit_distance`` restricts the dynamic program to the diagonal band
of half-width k, which is an exact optimization, not a heuristic: any
alignment path that strays t cells off the main diagonal has already paid t
indels, so every path of cost <= k stays inside the band. It may also abandon
a row early once every band cell exceeds k.
"""

from __future__ import annotations

from dataclasses import dataclass

MATCH = "match"
SUBSTITUTE = "substitute"
INSERT = "insert"
DELETE = "delete"


@dataclass(frozen=True, slots=True)
class EditOp:
    """One traceback step. Positions index into source/target at the op.

    For ``insert`` no source character is consumed (``source_char`` is "");
    for ``delete`` no target character is produced (``target_char`` is "").
    """

    kind: str
    source_pos: int
    target_pos: int
    source_char: str
    target_char: str

    @property
    def cost(self) -> int:
        return 0 if self.kind == MATCH else 1

    def to_dict(self) -> dict:
        return {
            "op": self.kind,
            "source_pos": self.source_pos,
            "target_pos": self.target_pos,
            "source_char": self.source_char,
            "target_char": self.target_char,
        }


@dataclass(frozen=True)
class EditScript:
    """Ordered operation trace realizing one optimal alignment."""

    ops: tuple[EditOp, ...]

    @property
    def distance(self) -> int:
        return sum(op.cost for op in self.ops)

    def op_counts(self) -> dict[str, int]:
        counts = {MATCH: 0, SUBSTITUTE: 0, INSERT: 0, DELETE: 0}
        for op in self.ops:
            counts[op.kind] += 1
        return counts

    def apply_to(self, source: str) -> str:
        """Replay the script against ``source``, returning the target string.

        Raises ValueError if the script is inconsistent with ``source``.
        """
        out: list[str] = []
        cursor = 0
        for op in self.ops:
            if op.kind == INSERT:
                out.append(op.target_char)
                continue
            if cursor >= len(source) or source[cursor] != op.source_char:
                raise ValueError(
                    f"script expects {op.source_char!r} at source position {cursor}"
                )
            cursor += 1
            if op.kind != DELETE:
                out.append(op.target_char if op.kind == SUBSTITUTE else op.source_char)
        if cursor != len(source):
            raise ValueError("script does not consume the whole source string")
        return "".join(out)

    def to_dicts(self) -> list[dict]:
        return [op.to_dict() for op in self.ops]


def edit_distance(a: str, b: str) -> int:
    """Levenshtein distance between two strings, full dynamic program."""
    if a == b:
        return 0
    la, lb = len(a), len(b)
    if la == 0:
        return lb
    if lb == 0:
        return la
    # Iterate over the shorter string in the inner loop to keep rows small.
    if lb > la:
        a, b = b, a
        la, lb = lb, la
    prev = list(range(lb + 1))
    cur = [0] * (lb + 1)
    for i in range(1, la + 1):
        cur[0] = i
        ca = a[i - 1]
        for j in range(1, lb + 1):
            if ca == b[j - 1]:
                cur[j] = prev[j - 1]
            else:
                up = prev[j]
                left = cur[j - 1]
                diag = prev[j - 1]
                best = diag if diag < up else up
                if left < best:
                    best = left
                cur[j] = best + 1
        prev, cur = cur, prev
    return prev[lb]


def bounded_edit_distance(a: str, b: str, max_distance: int) -> int | None:
    """Exact distance if it is <= max_distance, else None (over budget).

    The DP is restricted to the diagonal band |i - j| <= k and abandons as
    soon as every cell of a row exceeds k, so the result is exact for every
    pair whose true distance fits the budget.
    """
    k = max_distance
    if k < 0:
        raise ValueError("max_distance must be >= 0")
    la, lb = len(a), len(b)
    if abs(la - lb) > k:
        return None
    if a == b:
        return 0
    if k == 0:
        return None
    big = k + 1
    prev = [big] * (lb + 1)
    for j in range(min(lb, k) + 1):
        prev[j] = j
    cur = [big] * (lb + 1)
    for i in range(1, la + 1):
        lo = i - k if i - k > 1 else 1
        hi = i + k if i + k < lb else lb
        cur[lo - 1] = i if lo == 1 else big
        row_min = cur[lo - 1]
        ca = a[i - 1]
        for j in range(lo, hi + 1):
            if ca == b[j - 1]:
                val = prev[j - 1]
            else:
                up = prev[j]
                left = cur[j - 1]
                diag = prev[j - 1]
                best = diag if diag < up else up
                if left < best:
                    best = left
                val = best + 1
            cur[j] = val
            if val < row_min:
                row_min = val
        if row_min > k:
            return None
        if hi < lb:
            cur[hi + 1] = big
        prev, cur = cur, prev
    d = prev[lb]
    return d if d <= k else None


def align_with_script(a: str, b: str) -> tuple[int, EditScript]:
    """Distance plus one deterministic optimal edit script from ``a`` to ``b``.

    Traceback ties break as match > substitute > delete > insert, so repeated
    runs produce identical scripts.
    """
    la, lb = len(a), len(b)
    dp = [[0] * (lb + 1) for _ in range(la + 1)]
    for i in range(la + 1):
        dp[i][0] = i
    for j in range(lb + 1):
        dp[0][j] = j
    for i in range(1, la + 1):
        row = dp[i]
        above = dp[i - 1]
        ca = a[i - 1]
        for j in range(1, lb + 1):
            if ca == b[j - 1]:
                row[j] = above[j - 1]
            else:
                row[j] = min(above[j - 1], above[j], row[j - 1]) + 1

    ops: list[EditOp] = []
    i, j = la, lb
    while i > 0 or j > 0:
        here = dp[i][j]
        if i > 0 and j > 0 and a[i - 1] == b[j - 1] and dp[i - 1][j - 1] == here:
            ops.append(EditOp(MATCH, i - 1, j - 1, a[i - 1], b[j - 1]))
            i -= 1
            j -= 1
        elif i > 0 and j > 0 and dp[i - 1][j - 1] + 1 == here:
            ops.append(EditOp(SUBSTITUTE, i - 1, j - 1, a[i - 1], b[j - 1]))
            i -= 1
            j -= 1
        elif i > 0 and dp[i - 1][j] + 1 == here:
            ops.append(EditOp(DELETE, i - 1, j, a[i - 1], ""))
            i -= 1
        else:
            ops.append(EditOp(INSERT, i, j - 1, "", b[j - 1]))
            j -= 1
    ops.reverse()
    return dp[la][lb], EditScript(tuple(ops))
