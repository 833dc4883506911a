"""Parsing, normalization, sorting, and generation of term-list Hamiltonians."""

import numpy as np
import pytest

from lcutrunc.errors import TermListError
from lcutrunc.hamiltonian import (
    HamiltonianTerm,
    PauliString,
    format_term_list,
    logspread_hamiltonian,
    parse_hamiltonian,
    random_hamiltonian,
)

from util import matrix_from_raw, random_pauli_hamiltonian


def test_single_term():
    ham = parse_hamiltonian("1.0 Z")
    assert ham.num_terms == 1
    assert ham.qubit_count == 1
    assert ham.lambda_total == 1.0
    assert ham.terms[0].op.axes == "Z"
    assert ham.terms[0].op.phase == 1


def test_sign_folded_and_sorted():
    ham = parse_hamiltonian("-0.5 XX\n1.0 ZI")
    assert [(t.alpha, t.op.axes, t.op.phase) for t in ham.terms] == [
        (1.0, "ZI", 1 + 0j),
        (0.5, "XX", -1 + 0j),
    ]
    assert ham.lambda_total == 1.5


def test_h2_sto3g_file(h2_path):
    ham = parse_hamiltonian(h2_path.read_text(), label="H2/STO-3G")
    assert ham.num_terms == 15
    assert ham.qubit_count == 4
    assert ham.terms[0].alpha == pytest.approx(0.81261)
    assert all(a.alpha >= b.alpha for a, b in zip(ham.terms, ham.terms[1:]))


def test_comments_and_blank_lines():
    text = "# header\n\n1.0 Z  # inline\n\n# done\n"
    assert parse_hamiltonian(text).num_terms == 1


def test_imaginary_coefficients_fold_into_phase():
    ham = parse_hamiltonian("0.5i XY\n-0.25i ZZ\n1.0 II")
    by_axes = {t.op.axes: t for t in ham.terms}
    assert by_axes["XY"].alpha == 0.5 and by_axes["XY"].op.phase == 1j
    assert by_axes["ZZ"].alpha == 0.25 and by_axes["ZZ"].op.phase == -1j
    # 'j' spelling accepted too
    assert parse_hamiltonian("0.5j X").terms[0].op.phase == 1j


def test_general_complex_phase_rejected():
    with pytest.raises(TermListError, match="line 2"):
        parse_hamiltonian("1.0 Z\n0.3+0.4i Z")


def test_malformed_line_reports_number():
    with pytest.raises(TermListError, match="line 3"):
        parse_hamiltonian("1.0 Z\n0.5 X\nnonsense\n")
    with pytest.raises(TermListError, match="line 1"):
        parse_hamiltonian("1.0 Z extra")
    with pytest.raises(TermListError, match="line 1"):
        parse_hamiltonian("abc Z")
    with pytest.raises(TermListError, match="line 1"):
        parse_hamiltonian("1.0 ZQ")


def test_inconsistent_string_lengths():
    with pytest.raises(TermListError, match="equal length"):
        parse_hamiltonian("1.0 ZI\n0.5 X")


def test_non_finite_coefficients_rejected():
    # 1e400 overflows the float literal to infinity
    with pytest.raises(TermListError, match="finite"):
        parse_hamiltonian("1e400 Z")
    with pytest.raises(TermListError, match="line 1"):
        parse_hamiltonian("inf Z")


def test_tiny_terms_dropped_with_warning():
    with pytest.warns(UserWarning, match="dropped 1"):
        ham = parse_hamiltonian("1.0 Z\n1e-16 X")
    assert ham.num_terms == 1


def test_all_terms_dropped_is_error():
    with pytest.raises(TermListError, match="no usable terms"), pytest.warns(UserWarning):
        parse_hamiltonian("0.0 Z")


def test_zero_alpha_rejected_at_type_level():
    with pytest.raises(ValueError):
        HamiltonianTerm(alpha=0.0, op=PauliString(axes="Z"))


def test_prefix_lambda_values(two_term):
    assert two_term.prefix_lambda(0) == 0.0
    assert two_term.prefix_lambda(1) == 1.0
    assert two_term.prefix_lambda(2) == pytest.approx(1.1, abs=1e-15)
    with pytest.raises(ValueError):
        two_term.prefix_lambda(3)
    with pytest.raises(ValueError):
        two_term.prefix_lambda(-1)


def test_prefix_consistency_property():
    rng = np.random.default_rng(42)
    for _ in range(20):
        ham = random_pauli_hamiltonian(rng, 3, int(rng.integers(1, 12)))
        for m in range(ham.num_terms):
            step = ham.prefix_lambda(m + 1) - ham.prefix_lambda(m)
            assert step == pytest.approx(ham.terms[m].alpha, rel=1e-12)
        assert ham.prefix_lambda(ham.num_terms) == pytest.approx(ham.lambda_total)


def test_equal_magnitudes_keep_input_order():
    ham = parse_hamiltonian("0.5 XX\n0.5 ZZ\n0.5 YY")
    assert [t.op.axes for t in ham.terms] == ["XX", "ZZ", "YY"]


def test_phase_folding_reconstructs_input_matrix():
    # oracle: matrix built directly from the raw, unparsed coefficients
    raw = [("-0.5", "XXII"), ("0.25i", "ZIZI"), ("1.5", "IYIY"), ("-0.75i", "XZXZ")]
    text = "\n".join(f"{c} {p}" for c, p in raw)
    reference = matrix_from_raw([complex(c.replace("i", "j")) for c, _ in raw], [p for _, p in raw])

    ham = parse_hamiltonian(text)
    rebuilt = matrix_from_raw(
        [t.op.phase * t.alpha for t in ham.terms], [t.op.axes for t in ham.terms]
    )
    assert np.abs(rebuilt - reference).max() <= 1e-12


def test_format_round_trip(two_term):
    mixed = parse_hamiltonian("-0.5 XX\n1.0 ZI\n0.25i YY\n-0.125i ZZ")
    for ham in (two_term, mixed):
        again = parse_hamiltonian(format_term_list(ham))
        assert again.terms == ham.terms


def test_random_hamiltonian_sigma_zero_is_uniform(two_term):
    ham = random_hamiltonian(two_term, mu=0.7, sigma=0.0, seed=1)
    assert all(t.alpha == 0.7 for t in ham.terms)
    assert {t.op.axes for t in ham.terms} == {"ZI", "XX"}


def test_random_hamiltonian_deterministic(two_term):
    a = random_hamiltonian(two_term, 1.0, 0.1, seed=99)
    b = random_hamiltonian(two_term, 1.0, 0.1, seed=99)
    assert a.terms == b.terms
    c = random_hamiltonian(two_term, 1.0, 0.1, seed=100)
    assert a.terms != c.terms


def test_random_hamiltonian_mean_near_mu():
    # direct-averaging oracle on a 631-term template
    template = logspread_hamiltonian(631, 1.0, qubit_count=5, seed=0)
    ham = random_hamiltonian(template, mu=1.0, sigma=0.1, seed=7)
    mean = sum(t.alpha for t in ham.terms) / ham.num_terms
    assert abs(mean - 1.0) < 0.02


def test_logspread_single_term():
    ham = logspread_hamiltonian(1, 2.0, qubit_count=1, seed=3)
    assert ham.num_terms == 1
    assert ham.terms[0].alpha == 1.0


def test_logspread_closed_form():
    ham = logspread_hamiltonian(3, 2.0, qubit_count=2, seed=3)
    assert [t.alpha for t in ham.terms] == pytest.approx([1.0, 0.1, 0.01])


def test_logspread_lambda_matches_direct_sum():
    ham = logspread_hamiltonian(32, 3.0, qubit_count=3, seed=5)
    expected = sum(10.0 ** (-3.0 * l / 31) for l in range(32))
    assert ham.lambda_total == pytest.approx(expected, rel=1e-12)
    assert len({t.op.axes for t in ham.terms}) == 32


def test_logspread_validation():
    with pytest.raises(ValueError):
        logspread_hamiltonian(0, 1.0, 2, seed=1)
    with pytest.raises(ValueError):
        logspread_hamiltonian(5, 1.0, 1, seed=1)  # only 4 distinct strings on 1 qubit


def test_sorting_invariant_on_generated_hamiltonians():
    rng = np.random.default_rng(8)
    for _ in range(10):
        ham = random_pauli_hamiltonian(rng, 2, int(rng.integers(1, 10)))
        assert all(a.alpha >= b.alpha for a, b in zip(ham.terms, ham.terms[1:]))
        assert all(x < y for x, y in zip(ham.prefix, ham.prefix[1:]))
