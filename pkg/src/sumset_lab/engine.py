"""Vectorized evaluation of many instances sharing one A.

For a fixed A, the count ν_{A,B}(c) is linear in the indicator vector of B::

    ν[B, c] = sum_b B[b] * #{a in A : a + b = c}

so stacking every B of the family into a 0/1 matrix turns the whole family
into one matrix product.  Restricted counts work the same way with the
admissibility mask folded into the kernel, and stacking the kernels of many
constraints side by side evaluates all of them in the same product.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .bounds import BoundSpec, NotApplicable, TheoremId, bound_formula, bound_spec
from .sumsets import Ambient, Constraint, Instance, admissible

# Largest value used as "no minimum" for empty restricted sumsets.
_NO_MIN = 1 << 20

VERDICT_CODES = ("satisfied", "tight", "violated", "not_applicable")
SATISFIED, TIGHT, VIOLATED, NOT_APPLICABLE = range(4)


@dataclass
class Universe:
    """Finite window of an ambient: the elements A and B are drawn from, and all their sums."""

    ambient: Ambient
    elements: list
    targets: list
    add_index: np.ndarray  # (N, N) -> target index

    @classmethod
    def build(cls, ambient: Ambient, box: int | None = None) -> Universe:
        elements = ambient.elements(box)
        add = ambient.add
        sums = [[add(a, b) for b in elements] for a in elements]
        targets = sorted({c for row in sums for c in row})
        where = {c: i for i, c in enumerate(targets)}
        add_index = np.array([[where[c] for c in row] for row in sums], dtype=np.intp)
        return cls(ambient, elements, targets, add_index)

    def __post_init__(self) -> None:
        n, m = self.add_index.shape[0], len(self.targets)
        self.onehot = np.zeros((n, n, m), dtype=np.float32)
        for a in range(n):
            self.onehot[a, np.arange(n), self.add_index[a]] = 1.0

    @property
    def size(self) -> int:
        return len(self.elements)

    def admissible_matrix(self, constraint: Constraint) -> np.ndarray:
        """(N, N) boolean: pair (a_i, b_j) contributes to C."""
        z = self.ambient.zero()
        ok = admissible(Instance(self.ambient, (z,), (z,), constraint))
        els = self.elements
        return np.array([[ok(a, b) for b in els] for a in els], dtype=bool)


def indicator_matrix(subsets: list[tuple[int, ...]], n: int) -> np.ndarray:
    mat = np.zeros((len(subsets), n), dtype=np.float32)
    for row, sub in enumerate(subsets):
        mat[row, list(sub)] = 1.0
    return mat


@dataclass
class TheoremColumns:
    """Per-constraint constants of one theorem, as arrays over a block of constraints."""

    theorem: TheoremId
    static_ok: np.ndarray  # (C,)
    spec: BoundSpec | None  # offset / size_margin replaced by (1, C) arrays
    reasons: list[str | None]


def theorem_columns(theorem: TheoremId, ambient: Ambient, constraints: list[Constraint]) -> TheoremColumns:
    specs, reasons = [], []
    for c in constraints:
        try:
            specs.append(bound_spec(theorem, ambient, c))
            reasons.append(None)
        except NotApplicable as exc:
            specs.append(None)
            reasons.append(str(exc))
    ok = np.array([s is not None for s in specs], dtype=bool)
    live = [s for s in specs if s is not None]
    if not live:
        return TheoremColumns(theorem, ok, None, reasons)
    base = live[0]
    for s in live:
        if replace(s, offset=0, size_margin=None) != replace(base, offset=0, size_margin=None):
            raise AssertionError(f"{theorem}: non-uniform bound shape across constraints")
    offset = np.array([[s.offset if s else 0 for s in specs]])
    margin = None
    if base.size_margin is not None:
        margin = np.array([[s.size_margin if s else 0 for s in specs]])
    return TheoremColumns(theorem, ok, replace(base, offset=offset, size_margin=margin), reasons)


@dataclass
class BatchResult:
    """Outputs for a (B-family x constraint-block) batch with a fixed A."""

    size_c: np.ndarray  # (nB, nC)
    min_nu_sumset: np.ndarray  # (nB, 1)
    min_nu_restricted: np.ndarray  # (nB, nC)
    predicted: dict  # theorem -> (nB, nC) int array
    verdicts: dict  # theorem -> (nB, nC) uint8 codes


class AKernel:
    """Kernels for one fixed A against the whole B family."""

    def __init__(self, universe: Universe, a_idx: tuple[int, ...], b_mat: np.ndarray):
        self.universe = universe
        self.a_idx = a_idx
        self.b_mat = b_mat
        n, m = universe.size, len(universe.targets)
        k_full = np.zeros((n, m), dtype=np.float32)
        for a in a_idx:
            k_full += universe.onehot[a]
        self.nu = b_mat @ k_full  # (nB, M)
        present = self.nu > 0
        self.min_nu_sumset = np.where(present, self.nu, _NO_MIN).min(axis=1, keepdims=True).astype(np.int64)
        self.size_a = len(a_idx)
        self.size_b = b_mat.sum(axis=1, keepdims=True).astype(np.int64)

    def restricted_counts(self, adm_block: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """|C| and min ν over C for each B and each constraint of the block.

        ``adm_block`` has shape (nC, N, N): admissibility of (a, b) per constraint.
        """
        u = self.universe
        n, m = u.size, len(u.targets)
        nc = adm_block.shape[0]
        kernel = np.zeros((n, nc, m), dtype=np.float32)
        for a in self.a_idx:
            onehot = self.universe.onehot[a]  # (N, M): b -> a + b
            kernel += adm_block[:, a, :].T[:, :, None] * onehot[:, None, :]
        hits = (self.b_mat @ kernel.reshape(n, nc * m)).reshape(-1, nc, m) > 0
        size_c = hits.sum(axis=2).astype(np.int64)
        nu = self.nu[:, None, :]
        min_c = np.where(hits, nu, _NO_MIN).min(axis=2).astype(np.int64)
        return size_c, min_c


def evaluate_block(
    kernel: AKernel,
    adm_block: np.ndarray,
    columns: list[TheoremColumns],
    same_as_a: np.ndarray,
) -> BatchResult:
    size_c, min_c = kernel.restricted_counts(adm_block)
    size_a, size_b = kernel.size_a, kernel.size_b
    predicted, verdicts = {}, {}
    for col in columns:
        codes = np.full(size_c.shape, NOT_APPLICABLE, dtype=np.uint8)
        if col.spec is None:
            verdicts[col.theorem] = codes
            predicted[col.theorem] = np.zeros(size_c.shape, dtype=np.int64)
            continue
        spec = col.spec
        pred = np.broadcast_to(
            bound_formula(spec, size_a, size_b, kernel.min_nu_sumset, min_c), size_c.shape
        ).astype(np.int64)
        ok = np.broadcast_to(col.static_ok[None, :], size_c.shape).copy()
        if spec.needs_nonempty_c:
            ok &= size_c > 0
        if spec.same_sets:
            ok &= same_as_a[:, None]
        if spec.size_margin is not None:
            ok &= np.minimum(size_a, size_b) > spec.size_margin
        violated = ok & (size_c < pred)
        tight = ok & (size_c == pred) & (pred >= 1)
        codes[ok] = SATISFIED
        codes[tight] = TIGHT
        codes[violated] = VIOLATED
        verdicts[col.theorem] = codes
        predicted[col.theorem] = pred
    return BatchResult(size_c, kernel.min_nu_sumset, min_c, predicted, verdicts)
