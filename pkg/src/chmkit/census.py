"""Exhaustive search for order-6 Hadamard matrices over a small alphabet.

The search walks 6-row selections from the alphabet's row space in
lexicographic order, keeping each new row exactly orthogonal to the
rows above it. Symmetry is cut down by requiring the row sequence to be
increasing and the columns to be lexicographically nondecreasing; the
column condition is enforced incrementally, pruning a branch as soon as
some adjacent column pair is decided the wrong way, which accepts
exactly the matrices the at-completion check would.

Orthogonality of candidate row pairs reduces to "does this multiset of
entry quotients sum to zero", decided exactly once per distinct
multiset and cached; a numpy pass encodes every pair's multiset as a
single integer so the full pair table costs one vectorized sweep.
"""

from __future__ import annotations

import itertools
import os
import sys
import time
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from .exactnum import UnitValue, unit_sum
from .equivalence import complex_equivalent, sorted_canonical_form
from .matrices import Matrix6, catalog, is_chm

S6_0_CLASS = "S6_0-class"
H1_CLASS = "H1-class"
OTHER_CLASS = "OTHER"


@dataclass(frozen=True)
class Alphabet:
    """A sorted tuple of 2..4 distinct exact unimodular values.

    ``conj_product_closed[i]`` records whether multiplying the whole
    value set by conj(values[i]) lands back inside the set; alphabets
    closed for every value (value groups like the cube roots) admit
    much denser orthogonality tables.
    """

    values: tuple
    conj_product_closed: tuple

    @classmethod
    def of(cls, values) -> "Alphabet":
        vals = tuple(sorted(set(values), key=lambda v: v.turn))
        if not 2 <= len(vals) <= 4:
            raise ValueError("alphabet needs between 2 and 4 distinct values")
        if any(not isinstance(v, UnitValue) or not v.is_exact for v in vals):
            raise ValueError("alphabet values must be exact unit values")
        vset = set(vals)
        closed = tuple(
            all(v.conj() * u in vset for u in vals) for v in vals
        )
        return cls(values=vals, conj_product_closed=closed)

    def __str__(self) -> str:
        return "{" + ",".join(str(v) for v in self.values) + "}"


@dataclass(frozen=True)
class CensusReport:
    """Everything the enumeration found, in canonical order.

    ``matrices`` holds every matrix surviving symmetry reduction;
    ``class_representatives``/``class_membership`` partition them into
    equivalence classes; ``class_labels`` stays None until
    :func:`classify_census` fills it.
    """

    alphabet: Alphabet
    matrices: tuple
    raw_count: int
    class_representatives: tuple
    class_membership: tuple
    class_labels: Optional[tuple]
    node_count: int
    wall_time_ms: float
    incomplete: bool
    budget: Optional[int]


def _row_space(k: int) -> np.ndarray:
    rows = np.array(
        list(itertools.product(range(k), repeat=6)), dtype=np.int64
    )
    return rows


def _compositions(total: int, parts: int):
    """All nonnegative integer vectors of the given length summing to total."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def _zero_key_set(prod_values: Sequence[UnitValue]) -> set:
    """Keys (base-7 count encodings) of quotient multisets summing to zero."""
    nv = len(prod_values)
    zero_keys = set()
    for counts in _compositions(6, nv):
        terms = []
        for v, c in zip(prod_values, counts):
            terms.extend([v] * c)
        if unit_sum(terms).is_zero():
            zero_keys.add(sum(c * 7 ** i for i, c in enumerate(counts)))
    return zero_keys


def _orthogonality_masks(values: Sequence[UnitValue], rows: np.ndarray):
    """Bitmask of orthogonal partners for every row in the row space."""
    k = len(values)
    prod_values: list[UnitValue] = []
    prod_index: dict = {}
    prod_ids = np.zeros((k, k), dtype=np.int64)
    for a in range(k):
        for b in range(k):
            p = values[a] * values[b].conj()
            if p not in prod_index:
                prod_index[p] = len(prod_values)
                prod_values.append(p)
            prod_ids[a, b] = prod_index[p]

    zero_keys = _zero_key_set(prod_values)
    zero_arr = np.fromiter(zero_keys, dtype=np.int64) if zero_keys else np.zeros(
        0, dtype=np.int64
    )
    weights = 7 ** np.arange(len(prod_values), dtype=np.int64)

    n = len(rows)
    masks = []
    byte_count = (n + 7) // 8
    for r in range(n):
        ids = prod_ids[rows[r][None, :], rows]  # (n, 6)
        keys = weights[ids].sum(axis=1)
        hits = np.isin(keys, zero_arr)
        hits[r] = False
        mask = int.from_bytes(
            np.packbits(hits, bitorder="little").tobytes(), "little"
        )
        masks.append(mask)
    return masks


def _col_state_after(row, state):
    """Advance the adjacent-column decision state; None means prune."""
    new = list(state)
    for j in range(5):
        if new[j]:
            continue
        if row[j] < row[j + 1]:
            new[j] = True
        elif row[j] > row[j + 1]:
            return None
    return tuple(new)


class _Budget:
    __slots__ = ("limit", "nodes", "exhausted")

    def __init__(self, limit: Optional[int]):
        self.limit = limit
        self.nodes = 0
        self.exhausted = False

    def step(self) -> bool:
        self.nodes += 1
        if self.limit is not None and self.nodes > self.limit:
            self.exhausted = True
        return not self.exhausted


def _bits_above(mask: int, floor: int):
    """Set bit positions of mask that are strictly greater than floor."""
    mask >>= floor + 1
    pos = floor + 1
    while mask:
        low = mask & -mask
        idx = low.bit_length() - 1
        yield pos + idx
        mask >>= idx + 1
        pos += idx + 1


def _search(rows, masks, column_reduction, budget, prefix=None):
    """Depth-first completion of increasing orthogonal row selections."""
    found = []
    n = len(rows)
    full = (1 << n) - 1

    def descend(selection, cand_mask, state):
        depth = len(selection)
        if depth == 6:
            found.append(tuple(selection))
            return
        floor = selection[-1] if selection else -1
        for r in _bits_above(cand_mask, floor):
            if not budget.step():
                return
            row = rows[r]
            if column_reduction:
                nstate = _col_state_after(row, state)
                if nstate is None:
                    continue
            else:
                nstate = state
            selection.append(r)
            descend(selection, cand_mask & masks[r], nstate)
            selection.pop()
            if budget.exhausted:
                return

    init_state = (False,) * 5
    if prefix is None:
        first_candidates = range(n)
    else:
        first_candidates = [prefix[0]]

    for r1 in first_candidates:
        row = rows[r1]
        if column_reduction:
            state = _col_state_after(row, init_state)
            if state is None:
                continue
        else:
            state = init_state
        if not budget.step():
            break
        if prefix is not None and len(prefix) > 1:
            r2 = prefix[1]
            if not (masks[r1] >> r2) & 1 or r2 <= r1:
                continue
            row2 = rows[r2]
            if column_reduction:
                state2 = _col_state_after(row2, state)
                if state2 is None:
                    continue
            else:
                state2 = state
            descend([r1, r2], masks[r1] & masks[r2], state2)
        else:
            descend([r1], masks[r1], state)
        if budget.exhausted:
            break
    return found


def _worker_count(workers: Optional[int]) -> int:
    if workers is not None:
        return max(1, workers)
    env = os.environ.get("CHM_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise ValueError(f"CHM_THREADS must be an integer, got {env!r}") from exc
    return 1


def _prefix_jobs(rows, masks, column_reduction):
    """All viable 2-row prefixes, the unit of parallel partitioning."""
    jobs = []
    n = len(rows)
    for r1 in range(n):
        state = _col_state_after(rows[r1], (False,) * 5) if column_reduction else 0
        if column_reduction and state is None:
            continue
        for r2 in _bits_above(masks[r1], r1):
            if column_reduction and _col_state_after(rows[r2], state) is None:
                continue
            jobs.append((r1, r2))
    return jobs


DEFAULT_NODE_BUDGET = 10**9


def enumerate_chms(
    alphabet: Alphabet,
    budget: Optional[int] = DEFAULT_NODE_BUDGET,
    workers: Optional[int] = None,
    column_reduction: bool = True,
) -> CensusReport:
    """Complete census of Hadamard matrices with entries in the alphabet.

    ``budget`` caps the number of search nodes (default one billion,
    far above anything a 4-value alphabet needs); exceeding it yields a
    report flagged incomplete rather than a silently truncated one.
    ``workers`` > 1 partitions the search by 2-row prefixes
    (CHM_THREADS supplies a default). ``column_reduction=False``
    disables the column-order symmetry cut; it exists for the
    small-instance oracle in the test suite.
    """
    if not isinstance(alphabet, Alphabet):
        alphabet = Alphabet.of(alphabet)
    t0 = time.perf_counter()
    values = alphabet.values
    rows = _row_space(len(values))
    masks = _orthogonality_masks(values, rows)
    nworkers = _worker_count(workers)

    if nworkers == 1:
        budget_box = _Budget(budget)
        found = _search(rows, masks, column_reduction, budget_box)
        nodes = budget_box.nodes
        incomplete = budget_box.exhausted
    else:
        jobs = _prefix_jobs(rows, masks, column_reduction)
        per_job = None if budget is None else max(1, budget // max(1, len(jobs)))
        found = []
        nodes = 0
        incomplete = False
        for r1, r2 in jobs:
            budget_box = _Budget(per_job)
            found.extend(
                _search(rows, masks, column_reduction, budget_box, prefix=(r1, r2))
            )
            nodes += budget_box.nodes
            incomplete = incomplete or budget_box.exhausted
        found.sort()

    matrices = tuple(
        Matrix6([[values[c] for c in rows[r]] for r in sel]) for sel in found
    )
    for m in matrices:
        if not is_chm(m):
            raise AssertionError("census emitted a non-Hadamard matrix")

    reps, membership = _group_classes(matrices)
    wall = (time.perf_counter() - t0) * 1000.0
    return CensusReport(
        alphabet=alphabet,
        matrices=matrices,
        raw_count=len(matrices),
        class_representatives=reps,
        class_membership=membership,
        class_labels=None,
        node_count=nodes,
        wall_time_ms=wall,
        incomplete=incomplete,
        budget=budget,
    )


def _group_classes(matrices):
    """Partition matrices into equivalence classes.

    Equal sorted canonical forms prove equivalence outright; the few
    distinct forms left are settled with certificate searches.
    """
    form_of = {}
    form_index = []
    for m in matrices:
        f = sorted_canonical_form(m)
        if f not in form_of:
            form_of[f] = len(form_of)
        form_index.append(form_of[f])
    distinct_forms = sorted(form_of, key=form_of.get)
    # form index -> class index via pairwise certificates on the forms
    class_of_form = {}
    class_reps = []
    for fi, form in enumerate(distinct_forms):
        placed = False
        for ci, rep in enumerate(class_reps):
            if complex_equivalent(form, rep) is not None:
                class_of_form[fi] = ci
                placed = True
                break
        if not placed:
            class_of_form[fi] = len(class_reps)
            class_reps.append(form)
    membership = tuple(class_of_form[fi] for fi in form_index)
    return tuple(class_reps), membership


def classify_census(report: CensusReport) -> CensusReport:
    """Label every class representative against the catalog.

    Labels are S6_0-class, H1-class, or OTHER; OTHER is shouted to
    stderr because no known three-or-four-value census should produce
    one. Incomplete reports are refused, a partial census proves
    nothing about class coverage.
    """
    if report.incomplete:
        raise ValueError("refusing to classify an incomplete census")
    s60 = catalog("S6_0")
    h1 = catalog("H1")
    labels = []
    for rep in report.class_representatives:
        if complex_equivalent(rep, s60) is not None:
            labels.append(S6_0_CLASS)
        elif complex_equivalent(rep, h1) is not None:
            labels.append(H1_CLASS)
        else:
            labels.append(OTHER_CLASS)
            print(
                f"census {report.alphabet}: representative outside the known "
                "classes; this contradicts the expected classification",
                file=sys.stderr,
            )
    return replace(report, class_labels=tuple(labels))
