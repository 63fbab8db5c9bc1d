import json
import sys
from pathlib import Path

import pytest

# Add current directory to path
sys.path.append(str(Path(__file__).parent))

from arith import Cyc8
from certifier import (bareiss_echelon, certify_span, coefficient_matrix, contract, echelon_kernel, express_in_basis,
                       hilbert_check, modular_rank, monomials, presentation_kernel, rank_kernel, span_trace,
                       verify_generation, x_monomials)
from formalg import evaluate, theta
from registry import big_phi, x
from reptheory import GENFUNS

ORDER = 2


def fourth_powers(indices):
    return [evaluate(x(i), order=ORDER) for i in indices]


def test_five_fourth_powers_are_independent():
    m = coefficient_matrix(fourth_powers(range(1, 6)))
    assert modular_rank(m) == 5


def test_ten_fourth_powers_span_five_dimensions():
    rank, kernel = rank_kernel(coefficient_matrix(fourth_powers(range(1, 11))))
    assert rank == 5
    assert len(kernel) == 5


def test_coordinates_follow_the_linear_relations():
    coords = express_in_basis(fourth_powers(range(1, 6)), evaluate(x(7), order=ORDER))
    assert coords == [Cyc8(0), Cyc8(1), Cyc8(-1), Cyc8(0), Cyc8(1)]


def test_target_outside_the_span():
    with pytest.raises(ValueError, match="space not stable"):
        express_in_basis(fourth_powers(range(1, 5)), evaluate(x(5), order=ORDER))


def test_mixed_weights_rejected():
    with pytest.raises(ValueError, match="mixed weights"):
        coefficient_matrix([evaluate(x(1), order=1), evaluate(theta(1), order=1)])


def test_exact_kernel_over_gaussian_entries():
    i = (0, 0, 1, 0)
    one = (1, 0, 0, 0)
    rows = [[one, i], [i, (-1, 0, 0, 0)]]
    echelon, pivots = bareiss_echelon(rows)
    assert pivots == [0]
    kernel = echelon_kernel(echelon, pivots, 2)
    assert kernel == [[Cyc8(0, 0, -1), Cyc8(1)]]


def test_monomial_counts():
    assert monomials([x(1)], 0) == [None]
    assert len(x_monomials(2)) == 15
    assert len(x_monomials(3, indices=(1, 2))) == 4


def test_certificate_statuses():
    products = [x(i) for i in range(1, 6)]
    cert = certify_span((0, 2), products, ORDER, 5)
    assert cert.status == "certified"
    assert cert.to_dict()["rank"] == 5
    assert certify_span((0, 2), products[:3], ORDER, 5).status == "inconclusive"
    with pytest.raises(ArithmeticError):
        certify_span((0, 2), products, ORDER, 4)
    assert verify_generation((0, 2), products, monomials(products, 0), ORDER, 5).status == "certified"


def test_hilbert_series_of_the_scalar_ring():
    spec = {"generators": {0: 1, 5: 1}, "relations": {8: 1, 13: 1}}
    assert hilbert_check(spec, GENFUNS["ring_gamma2"], 20)
    m2 = {"generators": {4: 15}, "relations": {6: 19, 10: 1}, "syzygies": {8: 5}}
    assert hilbert_check(m2, GENFUNS["M2"], 20)


def test_trace_of_a_permutation_of_the_basis():
    basis = fourth_powers(range(1, 6))
    assert span_trace(basis, basis) == 5
    swapped = [basis[1], basis[0], basis[2], basis[3], basis[4]]
    assert span_trace(basis, swapped) == 3
    # x7 = x2 - x3 + x5 carries coordinate -1 on x3
    relation = [basis[0], basis[1], evaluate(x(7), order=ORDER), basis[3], basis[4]]
    assert span_trace(basis, relation) == 3
    with pytest.raises(ValueError, match="not independent"):
        span_trace([basis[0], basis[0]], [basis[0], basis[0]])


def test_kernel_predicted_by_a_presentation():
    sigma2 = {"generators": {5: 9}, "relations": {7: 5, 9: 5}, "syzygies": {11: 1}}
    assert [presentation_kernel(sigma2, k) for k in (5, 7, 9, 11, 13)] == [0, 5, 30, 99, 245]
    m2 = {"generators": {4: 15}, "relations": {6: 19, 10: 1}, "syzygies": {8: 5}}
    assert [presentation_kernel(m2, k) for k in (4, 6, 8)] == [0, 19, 90]
    # generators * monomials minus the kernel is the Hilbert coefficient
    assert 9 * 70 - presentation_kernel(sigma2, 13) == GENFUNS["Sigma2"].coeffs(13)[13]


def test_relation_vector_contracts_to_zero():
    m = coefficient_matrix(fourth_powers([1, 4, 6, 7]))
    rank, kernel = rank_kernel(m)
    assert rank == 3
    assert len(kernel) == 1
    v = kernel[0]
    assert contract(m, v) == []
    assert [c / v[0] for c in v] == [Cyc8(1), Cyc8(-1), Cyc8(-1), Cyc8(-1)]
    assert contract(m, [Cyc8(1)] * 4) != []


def test_rank_grows_with_the_order():
    for forms, bound in (([x(i) for i in range(1, 11)], 5), ([big_phi(i) for i in range(1, 11)], 9)):
        ranks = [modular_rank(coefficient_matrix([evaluate(f, order=n) for f in forms])) for n in (1, 2, 3)]
        assert ranks == sorted(ranks)
        assert ranks[-1] <= bound


def test_repeated_evaluation_serializes_identically():
    from formalg import clear_memo

    first = json.dumps(evaluate(big_phi(2), order=ORDER).to_records())
    clear_memo()
    second = json.dumps(evaluate(big_phi(2), order=ORDER).to_records())
    assert first == second
