"""Equivalence of order-6 Hadamard matrices, with checkable certificates.

Two matrices are equivalent when one is P*A*Q for monomial unitaries P
and Q (permutation equivalence restricts the phases to 1). The search
here exploits a dephasing identity: if B = P*A*Q, then the dephased
form of B equals, up to row and column permutations, the matrix
obtained from A by anchoring the dephasing at the cell (r, c) that P
and Q send to the top-left corner. Scanning the 36 anchors with exact
row and column matching is therefore a complete decision procedure, and
every hit rebuilds the explicit phases, giving a certificate that
re-verifies by direct multiplication.

A cheap monomial invariant (the multiset of closed quadruple products)
refutes most inequivalent pairs before any search runs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exactnum import TOL, UnitValue
from .matrices import Matrix6, apply_monomial, is_chm


@dataclass(frozen=True)
class EquivalenceCertificate:
    """Monomial data transforming A into B, 0-based.

    B[i][j] = row_phases[i] * col_phases[j] * A[row_perm[i]][col_perm[j]].
    ``advisory`` is set for float-mode inputs, where equality is only
    within tolerance and the certificate is not exact evidence.
    """

    row_perm: tuple
    row_phases: tuple
    col_perm: tuple
    col_phases: tuple
    advisory: bool = False

    def verify(self, a: Matrix6, b: Matrix6) -> bool:
        image = apply_monomial(
            a, self.row_perm, self.row_phases, self.col_perm, self.col_phases
        )
        if self.advisory:
            return all(
                image[i][j].isclose(b[i][j]) for i in range(6) for j in range(6)
            )
        return image == b


def dephase(m: Matrix6) -> Matrix6:
    """Equivalent form with all-ones first row and first column.

    Row i is scaled by conj(m[i][0]) and column j by conj(m[0][j]),
    with m[0][0] restored once so the transform is monomial.
    """
    if not is_chm(m):
        raise ValueError("dephase requires a Hadamard matrix")
    anchor = m[0][0]
    return Matrix6(
        tuple(
            m[i][j] * m[i][0].conj() * m[0][j].conj() * anchor for j in range(6)
        )
        for i in range(6)
    )


def _anchored_dephase(m: Matrix6, r: int, c: int) -> Matrix6:
    """Dephasing normalized at cell (r, c) instead of the corner."""
    anchor = m[r][c]
    return Matrix6(
        tuple(
            m[i][j] * m[i][c].conj() * m[r][j].conj() * anchor for j in range(6)
        )
        for i in range(6)
    )


def _canon_key(v: UnitValue):
    """Order-free key of the pair {v, conj(v)}."""
    if v.turn is not None:
        return min(v.turn, (Fraction(1) - v.turn) % 1)
    z = v.as_complex()
    return (round(z.real, 6), round(abs(z.imag), 6))


def fingerprint(m: Matrix6) -> tuple:
    """Multiset of canonical quadruple products over all row/column pairs.

    The product m[i][j] * m[k][l] * conj(m[i][l]) * conj(m[k][j]) is
    unchanged by row and column phases; permutations only shuffle the
    multiset and conjugate individual values, so the sorted tuple of
    conjugation-free keys is a monomial-equivalence invariant. Float
    matrices produce a rounded, advisory-only fingerprint.
    """
    keys = []
    for i, k in itertools.combinations(range(6), 2):
        for j, l in itertools.combinations(range(6), 2):
            q = m[i][j] * m[k][l] * m[i][l].conj() * m[k][j].conj()
            keys.append(_canon_key(q))
    return tuple(sorted(keys))


def _entries_match(mode: str, a: UnitValue, b: UnitValue) -> bool:
    return a == b if mode == "exact" else a.isclose(b)


def _column_matchings(mode: str, target: Sequence, source: Sequence, fix0=None):
    """All bijections tau with source[tau[j]] == target[j].

    ``fix0`` pins tau[0] to a given position (the dephasing anchor).
    """

    def extend(j: int, tau: list, used: set):
        if j == 6:
            yield tuple(tau)
            return
        choices = (
            [fix0]
            if j == 0 and fix0 is not None
            else [p for p in range(6) if p not in used]
        )
        for p in choices:
            if _entries_match(mode, source[p], target[j]):
                tau.append(p)
                used.add(p)
                yield from extend(j + 1, tau, used)
                tau.pop()
                used.remove(p)

    yield from extend(0, [], set())


def complex_equivalent(
    a: Matrix6, b: Matrix6
) -> Optional[EquivalenceCertificate]:
    """Certificate that b = P*a*Q for monomial unitaries, or None.

    Exact inputs give exact certificates and a definitive None;
    float inputs are handled with tolerance and flagged advisory.
    """
    if a.mode != b.mode:
        raise ValueError("cannot compare exact and float matrices")
    mode = a.mode
    if not (is_chm(a) and is_chm(b)):
        raise ValueError("complex_equivalent requires Hadamard inputs")
    if mode == "exact" and fingerprint(a) != fingerprint(b):
        return None

    b_deph = dephase(b)
    for r in range(6):
        for c in range(6):
            a_deph = _anchored_dephase(a, r, c)
            cert = _match_dephased(mode, a, b, a_deph, b_deph, r, c)
            if cert is not None:
                if not cert.verify(a, b):
                    raise AssertionError(
                        "equivalence certificate failed re-verification"
                    )
                if mode == "exact" and fingerprint(a) != fingerprint(b):
                    raise AssertionError("certificate found across fingerprints")
                return cert
    return None


def _match_dephased(mode, a, b, a_deph, b_deph, r, c):
    # b_deph row 0 is all ones and matches a_deph row r by construction,
    # and the anchor forces the column bijection to send position 0 to
    # column c. Try every candidate image for b_deph row 1, enumerate
    # the consistent column bijections, then look the remaining rows up
    # directly; repeated values make the bijection count small.
    for u1 in sorted(set(range(6)) - {r}):
        for tau in _column_matchings(mode, b_deph[1], a_deph[u1], fix0=c):
            row_perm = [r, u1]
            used = {r, u1}
            ok = True
            for i in range(2, 6):
                target = tuple(b_deph[i][j] for j in range(6))
                hits = [
                    u
                    for u in range(6)
                    if u not in used
                    and all(
                        _entries_match(mode, a_deph[u][tau[j]], target[j])
                        for j in range(6)
                    )
                ]
                if not hits:
                    ok = False
                    break
                row_perm.append(hits[0])
                used.add(hits[0])
            if not ok:
                continue
            col_perm = list(tau)
            row_phases = tuple(
                a[row_perm[i]][c].conj()
                * b[i][0]
                * a[r][c]
                * b[0][0].conj()
                for i in range(6)
            )
            col_phases = tuple(
                a[r][col_perm[j]].conj() * b[0][j] for j in range(6)
            )
            cert = EquivalenceCertificate(
                row_perm=tuple(row_perm),
                row_phases=row_phases,
                col_perm=tuple(col_perm),
                col_phases=col_phases,
                advisory=(mode == "float"),
            )
            if cert.verify(a, b):
                return cert
    return None


def sorted_canonical_form(m: Matrix6) -> Matrix6:
    """Deterministic equivalence-preserving normal form for grouping.

    Dephases, then alternately sorts rows and columns by their turn
    tuples until stable (or a small pass bound, to dodge sort
    oscillation). Every step is a permutation or a phase change, so the
    result is complex-equivalent to the input; equal outputs therefore
    prove equivalence. Unequal outputs prove nothing, this is a grouping
    key, not a complete invariant.
    """
    if m.mode != "exact":
        raise ValueError("sorted_canonical_form requires an exact matrix")
    cur = dephase(m)

    def row_sorted(x: Matrix6) -> Matrix6:
        return Matrix6(sorted(x.rows, key=lambda r: [v.turn for v in r]))

    for _ in range(12):
        nxt = row_sorted(row_sorted(cur.transpose()).transpose())
        if nxt == cur:
            break
        cur = nxt
    return cur


def permutation_equivalent(
    a: Matrix6, b: Matrix6
) -> Optional[EquivalenceCertificate]:
    """Certificate with identity phases such that b = P*a*Q, or None.

    Rows can only map to rows with identical value multisets, which
    prunes the search to almost nothing on structured matrices.
    """
    if a.mode != "exact" or b.mode != "exact":
        raise ValueError("permutation_equivalent requires exact matrices")
    ones = (UnitValue(0),) * 6

    def row_key(row):
        return tuple(sorted(v.turn for v in row))

    a_keys = [row_key(row) for row in a.rows]
    b_keys = [row_key(row) for row in b.rows]
    if sorted(a_keys) != sorted(b_keys):
        return None

    for u0 in range(6):
        if a_keys[u0] != b_keys[0]:
            continue
        for tau in _column_matchings("exact", b[0], a[u0]):
            row_perm = [u0]
            used = {u0}
            ok = True
            for i in range(1, 6):
                hits = [
                    u
                    for u in range(6)
                    if u not in used
                    and all(a[u][tau[j]] == b[i][j] for j in range(6))
                ]
                if not hits:
                    ok = False
                    break
                row_perm.append(hits[0])
                used.add(hits[0])
            if not ok:
                continue
            cert = EquivalenceCertificate(
                row_perm=tuple(row_perm),
                row_phases=ones,
                col_perm=tuple(tau),
                col_phases=ones,
            )
            if cert.verify(a, b):
                return cert
    return None
