import pytest

from qtkostka.errors import DomainError
from qtkostka.macdonald import (
    TriangularMatrix,
    build_matrices,
    c_factors,
    c_prime_factors,
    closed_form_column,
    closed_form_row,
    k1_entry,
    k_coeff,
    kostka_foulkes_hook_form,
    normalization,
    principal_specialization_P,
    psi_strip,
)
from qtkostka.partitions import conjugate, partitions_of
from qtkostka.qt import ONE, Q, T, QtRational, expand_factors
from qtkostka.tableaux import enumerate_ssyt, kostka_foulkes, kostka_number


def test_psi_strip_examples():
    assert psi_strip((1,), ()) == QtRational(1)
    expected = QtRational((1 - T) * (1 - Q**2), [(1, 0), (1, 1)])
    assert psi_strip((2,), (1,)) == expected
    assert psi_strip((2, 1), (2,)) == QtRational(1)
    assert psi_strip((2, 1), (1, 1)) == QtRational(
        (1 - T**2) * (1 - Q**2 * T), [(1, 1), (1, 2)]
    )
    with pytest.raises(DomainError):
        psi_strip((2, 2), (1,))


def test_k1_entry_examples():
    assert k1_entry((2,), (1, 1)) == QtRational((1 + Q) * (1 - T), [(1, 1)])
    assert k1_entry((2,), (2,)) == QtRational(1)
    assert k1_entry((1, 1), (2,)).is_zero
    assert k1_entry((3, 1), (3, 1)) == QtRational(1)


def test_k1_entry_matches_direct_psi_sum():
    # the layered DP must agree with a plain sum over enumerated tableaux
    for n in range(1, 6):
        for lam in partitions_of(n):
            for mu in partitions_of(n):
                direct = QtRational(0)
                for tab in enumerate_ssyt(lam, mu):
                    prod = QtRational(1)
                    for prev, nxt in zip(tab.chain, tab.chain[1:]):
                        prod = prod * psi_strip(nxt, prev)
                    direct = direct + prod
                assert k1_entry(lam, mu) == direct


def test_normalization_examples():
    nc = normalization((1,))
    assert nc.c == 1 - T
    assert nc.c_prime == 1 - Q
    assert nc.b == QtRational(1 - T, [(1, 0)])
    assert normalization((1, 1)).c_prime == (1 - Q * T) * (1 - Q)
    for n in range(1, 6):
        expected = ONE
        for i in range(1, n + 1):
            expected = expected * (1 - Q**i)
        assert normalization((n,)).c_prime == expected


def test_c_equals_conjugate_c_prime_swapped():
    # c_lambda(q,t) = c'_(lambda')(t,q)
    for n in range(1, 7):
        for lam in partitions_of(n):
            lhs = expand_factors(c_factors(lam))
            rhs = expand_factors(c_prime_factors(conjugate(lam))).swap_qt()
            assert lhs == rhs


def test_build_matrices_degree_one_and_two():
    bundle = build_matrices(1)
    for mat in bundle:
        assert mat.entries[0][0] == 1
    b2 = build_matrices(2)
    assert b2.k2.entry((2,), (1, 1)) == QtRational(T - Q, [(1, 1)])
    assert b2.k1.entry((2,), (1, 1)) == QtRational((1 + Q) * (1 - T), [(1, 1)])


def test_unitriangularity_every_computed_degree():
    from qtkostka.macdonald import _memory_cache

    for n in range(6):
        build_matrices(n)
    for n, bundle in sorted(_memory_cache.items()):
        for mat in bundle:
            assert mat.is_unitriangular(), n


def test_inverse_roundtrip():
    for n in range(5):
        b = build_matrices(n)
        assert (b.k1 @ b.k1_inv) == TriangularMatrix.identity(n)
        assert (b.k2 @ b.k2_inv) == TriangularMatrix.identity(n)


def test_k_coeff_examples():
    assert k_coeff((1,), (1,)) == 1 - Q
    assert k_coeff((2,), (1, 1)) == (1 - Q) * (T - Q)
    kf = k_coeff((2, 1), (1, 1, 1)).at_q_zero().swap_qt().swap_qt()
    assert kf == T + T**2
    assert k_coeff((2,), (2, 1)).is_zero  # size mismatch


def test_k_coeff_q_zero_matches_charge():
    for n in range(1, 6):
        for lam in partitions_of(n):
            for mu in partitions_of(n):
                assert k_coeff(lam, mu).at_q_zero() == kostka_foulkes(lam, mu)


def test_closed_form_row():
    assert closed_form_row(2, (1, 1)) == (1 - Q) * (T - Q)
    assert closed_form_row(1, (1,)) == 1 - Q
    for n in range(1, 6):
        expected = ONE
        for i in range(1, n + 1):
            expected = expected * (1 - Q**i)
        assert closed_form_row(n, (n,)) == expected
    with pytest.raises(DomainError):
        closed_form_row(3, (2,))


def test_closed_form_column():
    assert closed_form_column((1, 1), 2) == (1 - Q) * (1 - T * Q)
    assert closed_form_column((2,), 2) == (1 - Q) * (T - Q)


def test_hook_form_matches_charge():
    for n in range(1, 7):
        ones = (1,) * n
        for lam in partitions_of(n):
            assert kostka_foulkes_hook_form(lam) == kostka_foulkes(lam, ones)


def test_closed_forms_match_pipeline():
    for n in range(1, 6):
        ones = (1,) * n
        for mu in partitions_of(n):
            assert closed_form_row(n, mu) == k_coeff((n,), mu)
            assert closed_form_column(mu, n) == k_coeff(mu, ones)


def test_principal_specialization():
    assert principal_specialization_P((1,), "q") == QtRational(
        1 - Q, [(0, 1)]
    )
    assert principal_specialization_P((1, 1), "t").is_zero
    assert principal_specialization_P((), "q") == QtRational(1)
    # general monomial z = q^2 t
    assert principal_specialization_P((1,), (2, 1)) == QtRational(
        1 - Q**2 * T, [(0, 1)]
    )


def test_principal_specialization_gives_k2_row():
    # K2[(n), lam] = b_lam * P_lam[(1-q)/(1-t)]
    for n in range(1, 5):
        k2 = build_matrices(n).k2
        for lam in partitions_of(n):
            expected = normalization(lam).b * principal_specialization_P(
                lam, "q"
            )
            assert k2.entry((n,), lam) == expected


def test_specialization_t_one_gives_kostka():
    for n in range(1, 6):
        for lam in partitions_of(n):
            for mu in partitions_of(n):
                lhs = k_coeff(lam, mu).at_t_one()
                rhs = (
                    expand_factors(c_prime_factors(mu)).at_t_one()
                    * kostka_number(lam, mu)
                )
                assert lhs == rhs


def test_matrix_identity_k_equals_k2_k1():
    for n in range(6):
        b = build_matrices(n)
        assert (b.k2 @ b.k1) == b.kostka


def test_duality_small():
    for n in range(1, 5):
        b = build_matrices(n)
        for lam in partitions_of(n):
            for mu in partitions_of(n):
                lhs = b.k2.entry(lam, mu)
                rhs = b.k2_inv.entry(conjugate(mu), conjugate(lam)).swap_qt()
                assert lhs == rhs


def test_q_one_identity_where_safe():
    # K2(1,t) = J K^-T J on entries whose denominators survive q = 1
    checked = 0
    for n in range(1, 5):
        b = build_matrices(n)
        kinv = b.kostka.inverse()
        for lam in partitions_of(n):
            for mu in partitions_of(n):
                entry = b.k2.entry(lam, mu)
                if not entry.q_one_safe():
                    continue
                num_q1 = entry.num.swap_qt().at_t_one().swap_qt()
                den_q1 = entry.den_expanded().swap_qt().at_t_one().swap_qt()
                target = kinv.entry(conjugate(mu), conjugate(lam))
                assert num_q1 == target.as_polynomial() * den_q1
                checked += 1
    assert checked > 0


def test_matrix_json_round_trip(tmp_path):
    b = build_matrices(3, cache_dir=str(tmp_path))
    again = build_matrices(3, cache_dir=str(tmp_path))
    assert again.k2 == b.k2
    assert (tmp_path / "k2_n3.json").exists()


def test_cache_version_invalidation(tmp_path):
    build_matrices(2, cache_dir=str(tmp_path))
    path = tmp_path / "k1_n2.json"
    text = path.read_text().replace(
        '"format_version": 1', '"format_version": 0'
    )
    path.write_text(text)
    rebuilt = build_matrices(2, cache_dir=str(tmp_path))
    assert rebuilt.k1.is_unitriangular()
