"""Equivalence machinery: dephasing, fingerprints, certificates."""

import random

import pytest

from chmkit.equivalence import (
    EquivalenceCertificate,
    complex_equivalent,
    dephase,
    fingerprint,
    permutation_equivalent,
    sorted_canonical_form,
)
from chmkit.exactnum import ONE, OMEGA, UnitValue, root_of_unity
from chmkit.matrices import Matrix6, apply_monomial, catalog, is_chm


def random_monomial_image(m, rng):
    row_perm = list(range(6))
    col_perm = list(range(6))
    rng.shuffle(row_perm)
    rng.shuffle(col_perm)
    row_phases = [root_of_unity(rng.randrange(24), 24) for _ in range(6)]
    col_phases = [root_of_unity(rng.randrange(24), 24) for _ in range(6)]
    return apply_monomial(m, row_perm, row_phases, col_perm, col_phases)


def as_float(m):
    return Matrix6(
        [[UnitValue(None, re=v.as_complex().real, im=v.as_complex().imag) for v in row] for row in m.rows]
    )


S60 = catalog("S6_0")
S61 = catalog("S6_1")
H1 = catalog("H1")
F6 = catalog("F6")


class TestDephase:
    def test_first_line_flat(self):
        for m in (S60, S61, H1, F6):
            d = dephase(m)
            assert all(d[0][j] == ONE for j in range(6))
            assert all(d[i][0] == ONE for i in range(6))
            assert is_chm(d)

    def test_idempotent(self):
        d = dephase(H1)
        assert dephase(d) == d

    def test_rejects_non_hadamard(self):
        flat = Matrix6([[ONE] * 6 for _ in range(6)])
        with pytest.raises(ValueError):
            dephase(flat)

    def test_stays_in_class(self):
        assert complex_equivalent(dephase(H1), H1) is not None


class TestFingerprint:
    def test_monomial_invariance(self):
        rng = random.Random(7)
        for m in (S60, H1):
            fp = fingerprint(m)
            for _ in range(5):
                assert fingerprint(random_monomial_image(m, rng)) == fp

    def test_separates_the_two_classes(self):
        assert fingerprint(S60) != fingerprint(H1)

    def test_sign_twist_is_invisible(self):
        # S6_1 is S6_0 with half its columns negated, a monomial move.
        assert fingerprint(S61) == fingerprint(S60)


class TestComplexEquivalent:
    @pytest.mark.parametrize("name", ["S6_0", "S6_1", "H1", "F6"])
    def test_self_equivalence(self, name):
        m = catalog(name)
        cert = complex_equivalent(m, m)
        assert cert is not None and not cert.advisory
        assert cert.verify(m, m)

    def test_random_images_certify(self):
        rng = random.Random(21)
        for m in (S60, H1, F6):
            for _ in range(4):
                image = random_monomial_image(m, rng)
                cert = complex_equivalent(m, image)
                assert cert is not None
                assert cert.verify(m, image)

    def test_sign_twisted_catalog_pair(self):
        cert = complex_equivalent(S61, S60)
        assert cert is not None
        assert cert.verify(S61, S60)

    def test_distinct_classes_refuted(self):
        assert complex_equivalent(S60, H1) is None
        assert complex_equivalent(F6, H1) is None

    def test_mode_mixing_rejected(self):
        with pytest.raises(ValueError):
            complex_equivalent(S60, as_float(S60))

    def test_requires_hadamard(self):
        flat = Matrix6([[ONE] * 6 for _ in range(6)])
        with pytest.raises(ValueError):
            complex_equivalent(flat, S60)

    def test_float_path_is_advisory(self):
        rng = random.Random(4)
        a = as_float(S60)
        b = as_float(random_monomial_image(S60, rng))
        cert = complex_equivalent(a, b)
        assert cert is not None and cert.advisory
        assert cert.verify(a, b)

    def test_tampered_certificate_fails(self):
        cert = complex_equivalent(S60, S61)
        bad = EquivalenceCertificate(
            row_perm=cert.row_perm,
            row_phases=(-cert.row_phases[0],) + cert.row_phases[1:],
            col_perm=cert.col_perm,
            col_phases=cert.col_phases,
        )
        assert not bad.verify(S60, S61)


class TestPermutationEquivalent:
    def test_transpose_of_symmetric_catalog(self):
        cert = permutation_equivalent(H1, H1.transpose())
        assert cert is not None
        assert cert.verify(H1, H1.transpose())
        assert all(p == ONE for p in cert.row_phases + cert.col_phases)

    def test_pure_permutations_found(self):
        rng = random.Random(13)
        ident = (ONE,) * 6
        for _ in range(5):
            rp = list(range(6))
            cp = list(range(6))
            rng.shuffle(rp)
            rng.shuffle(cp)
            image = apply_monomial(S60, rp, ident, cp, ident)
            cert = permutation_equivalent(S60, image)
            assert cert is not None and cert.verify(S60, image)

    def test_phase_twist_breaks_it(self):
        phases = (OMEGA,) + (ONE,) * 5
        twisted = apply_monomial(S60, range(6), phases, range(6), (ONE,) * 6)
        assert permutation_equivalent(S60, twisted) is None
        assert complex_equivalent(S60, twisted) is not None

    def test_float_rejected(self):
        with pytest.raises(ValueError):
            permutation_equivalent(as_float(S60), as_float(S60))


class TestSortedCanonicalForm:
    def test_deterministic_and_in_class(self):
        form = sorted_canonical_form(S60)
        assert form == sorted_canonical_form(S60)
        assert is_chm(form)
        assert complex_equivalent(form, S60) is not None

    def test_conservative_on_permuted_images(self):
        # The form is a grouping key: equal forms prove equivalence, but
        # permuted images may land on different forms (anchoring moves).
        # Every form must still sit inside the class of its input.
        rng = random.Random(3)
        ident = (ONE,) * 6
        for _ in range(5):
            rp = list(range(6))
            cp = list(range(6))
            rng.shuffle(rp)
            rng.shuffle(cp)
            image = apply_monomial(H1, rp, ident, cp, ident)
            form = sorted_canonical_form(image)
            assert complex_equivalent(form, H1) is not None

    def test_float_rejected(self):
        with pytest.raises(ValueError):
            sorted_canonical_form(as_float(H1))
