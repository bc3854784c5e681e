"""Token alignment and edit extraction.

A Damerau-Levenshtein style dynamic program over tokens with configurable
costs, block transpositions of up to four tokens, and a fixed backtrace
preference so that every call returns the same path.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, fields

EPS = 1e-9
MAX_TRANSPOSE = 4


class OpKind(enum.Enum):
    MATCH = "M"
    SUBSTITUTE = "S"
    TRANSPOSE = "T"
    DELETE = "D"
    INSERT = "I"


@dataclass(frozen=True)
class CostConfig:
    substitute_base: float = 1.0
    insert: float = 1.0
    delete: float = 1.0
    case_only_substitute: float = 0.1
    transpose_per_token: float = 0.5

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) < 0:
                raise ValueError(f"cost {f.name} must be non-negative")

    @classmethod
    def from_mapping(cls, data: dict) -> "CostConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown cost keys: {', '.join(sorted(unknown))}")
        return cls(**{k: float(v) for k, v in data.items()})

    def substitute(self, a: str, b: str) -> float:
        if a == b:
            return 0.0
        if a.lower() == b.lower():
            return self.case_only_substitute
        return self.substitute_base


DEFAULT_COSTS = CostConfig()


@dataclass(frozen=True)
class AlignmentOp:
    kind: OpKind
    src: tuple[int, int]
    tgt: tuple[int, int]
    cost: float = 0.0


@dataclass(frozen=True)
class RawEdit:
    src: tuple[int, int]
    tgt: tuple[int, int]
    source_tokens: tuple[str, ...]
    replacement: tuple[str, ...]


def _is_transposition(la: list[str], lb: list[str]) -> bool:
    # inputs are already lowercased
    return la != lb and sorted(la) == sorted(lb)


def _transposable(ls: list[str], lt: list[str], i: int, j: int, k: int) -> bool:
    # cheap necessary condition first: the block ends must cross-occur
    if ls[i - 1] not in lt[j - k:j] or lt[j - 1] not in ls[i - k:i]:
        return False
    return _is_transposition(ls[i - k:i], lt[j - k:j])


def _table(source, target, cfg):
    n, m = len(source), len(target)
    ls = [t.lower() for t in source]
    lt = [t.lower() for t in target]
    inf = float("inf")
    d = [[inf] * (m + 1) for _ in range(n + 1)]
    d[0][0] = 0.0
    case_cost, sub_cost = cfg.case_only_substitute, cfg.substitute_base
    ins, dele, tcost = cfg.insert, cfg.delete, cfg.transpose_per_token
    for j in range(1, m + 1):
        d[0][j] = d[0][j - 1] + ins
    for i in range(1, n + 1):
        row, prev = d[i], d[i - 1]
        row[0] = prev[0] + dele
        a, la = source[i - 1], ls[i - 1]
        for j in range(1, m + 1):
            b = target[j - 1]
            if a == b:
                best = prev[j - 1]
            elif la == lt[j - 1]:
                best = prev[j - 1] + case_cost
            else:
                best = prev[j - 1] + sub_cost
            for k in range(2, min(i, j, MAX_TRANSPOSE) + 1):
                if _transposable(ls, lt, i, j, k):
                    c = d[i - k][j - k] + k * tcost
                    if c < best:
                        best = c
            c = prev[j] + dele
            if c < best:
                best = c
            c = row[j - 1] + ins
            if c < best:
                best = c
            row[j] = best
    return d


def align(source: list[str], target: list[str], cfg: CostConfig = DEFAULT_COSTS) -> list[AlignmentOp]:
    """Return one minimum-cost alignment of ``source`` onto ``target``.

    At equal cost the backtrace prefers match, substitute, transpose,
    delete, insert, in that order.
    """
    d = _table(source, target, cfg)
    ls = [t.lower() for t in source]
    lt = [t.lower() for t in target]
    ops: list[AlignmentOp] = []
    i, j = len(source), len(target)
    while i or j:
        here = d[i][j]
        if i and j:
            a, b = source[i - 1], target[j - 1]
            c = cfg.substitute(a, b)
            if abs(d[i - 1][j - 1] + c - here) < EPS:
                kind = OpKind.MATCH if a == b else OpKind.SUBSTITUTE
                ops.append(AlignmentOp(kind, (i - 1, i), (j - 1, j), c))
                i, j = i - 1, j - 1
                continue
            hit = None
            for k in range(2, min(i, j, MAX_TRANSPOSE) + 1):
                c = k * cfg.transpose_per_token
                if _transposable(ls, lt, i, j, k) and abs(d[i - k][j - k] + c - here) < EPS:
                    hit = k
                    break
            if hit:
                ops.append(AlignmentOp(OpKind.TRANSPOSE, (i - hit, i), (j - hit, j), c))
                i, j = i - hit, j - hit
                continue
        if i and abs(d[i - 1][j] + cfg.delete - here) < EPS:
            ops.append(AlignmentOp(OpKind.DELETE, (i - 1, i), (j, j), cfg.delete))
            i -= 1
            continue
        ops.append(AlignmentOp(OpKind.INSERT, (i, i), (j - 1, j), cfg.insert))
        j -= 1
    ops.reverse()
    return ops


def alignment_cost(ops: list[AlignmentOp]) -> float:
    return sum(op.cost for op in ops)


def merge_alignment(ops: list[AlignmentOp], source: list[str], target: list[str]) -> list[RawEdit]:
    """Collapse runs of non-match operations into edits.

    Matches are hard boundaries. Inside a run, insertions and deletions
    attach to their neighbours, but two adjacent substitutions stay separate
    edits and a transposition is always an edit of its own.
    """
    si = ti = 0
    for op in ops:
        if op.src[0] != si or op.tgt[0] != ti:
            raise ValueError(f"alignment is not contiguous at {op}")
        si, ti = op.src[1], op.tgt[1]
    if (si, ti) != (len(source), len(target)):
        raise ValueError("alignment does not cover both sequences")

    groups: list[list[AlignmentOp]] = []
    run: list[AlignmentOp] = []
    for op in ops:
        if op.kind is OpKind.MATCH:
            if run:
                groups.append(run)
            run = []
            continue
        if run and _splits(run[-1], op):
            groups.append(run)
            run = []
        run.append(op)
    if run:
        groups.append(run)

    edits = []
    for g in groups:
        src = (g[0].src[0], g[-1].src[1])
        tgt = (g[0].tgt[0], g[-1].tgt[1])
        edits.append(RawEdit(src, tgt, tuple(source[src[0]:src[1]]), tuple(target[tgt[0]:tgt[1]])))
    return edits


def _splits(prev: AlignmentOp, op: AlignmentOp) -> bool:
    if OpKind.TRANSPOSE in (prev.kind, op.kind):
        return True
    return prev.kind is OpKind.SUBSTITUTE and op.kind is OpKind.SUBSTITUTE
