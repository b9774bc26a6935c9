import math

import numpy as np

from stabgap.graphs import make_transitive_case
from stabgap.spectral import build_bipartite, singular_values
from stabgap.verify import bound_report, cauchy_schwarz_step, evaluate_chain

from cases import cycle_graph, cyclic, dihedral, petersen_case, triangle_case


def spectra(case):
    adj = build_bipartite(case.connection, case.graph.n)
    return adj, singular_values(adj)


def four_cycle_case():
    return make_transitive_case(cyclic(4), cycle_graph(4))


# -- Cauchy-Schwarz step --------------------------------------------------------


def test_cauchy_schwarz_triangle_equality():
    result = cauchy_schwarz_step(triangle_case())
    assert abs(result.value - 0.5) <= 1e-15
    assert result.ok
    assert result.equality


def test_cauchy_schwarz_four_cycle_equality():
    result = cauchy_schwarz_step(four_cycle_case())
    assert abs(result.value - 0.5) <= 1e-15
    assert result.equality


def test_cauchy_schwarz_petersen():
    result = cauchy_schwarz_step(petersen_case())
    assert result.ok
    assert result.value >= 1.0 / 3.0 - 1e-12


# -- chain ------------------------------------------------------------------------


def test_chain_triangle_numbers():
    case = triangle_case()
    adj, summary = spectra(case)
    diag = evaluate_chain(case, adj, summary.lambda2)
    assert abs(diag.inverse_valency - 0.5) <= 1e-15
    for line in (
        diag.neighbor_mass,
        diag.recentered,
        diag.split,
        diag.scaled_convolution,
        diag.scaled_matrix,
    ):
        assert abs(line - 0.5) <= 1e-12
    assert abs(diag.final_bound - 7.0 / 12.0) <= 1e-12
    assert diag.ok


def test_chain_f_is_zero_sum_with_known_norm():
    case = petersen_case()
    n = case.graph.n
    f = np.zeros(n)
    f[case.base_vertex] = 1.0
    f -= 1.0 / n
    assert abs(f.sum()) <= 1e-15
    assert abs(np.sum(f**2) - (1.0 - 1.0 / n)) <= 1e-15


def test_chain_holds_on_cases():
    for case in [
        triangle_case(),
        four_cycle_case(),
        petersen_case(),
        make_transitive_case(dihedral(6), cycle_graph(6)),
    ]:
        adj, summary = spectra(case)
        diag = evaluate_chain(case, adj, summary.lambda2)
        assert diag.equalities_ok
        assert diag.lower_bound_ok
        assert diag.operator_step_ok
        assert diag.strict_final_ok
        assert not diag.near_equality_final
        assert diag.ok


# -- bound report -----------------------------------------------------------------


def test_bound_report_triangle_small_graph_branch():
    case = triangle_case()
    adj, summary = spectra(case)
    report = bound_report(case, summary.lambda1, summary.lambda2, name="triangle")
    assert report.branch == "small-graph"
    assert report.n_vertices == 3
    assert report.disjunction_ok
    assert report.converse_ok
    assert report.small_case_ok
    assert case.group.order() <= math.factorial(2 * case.valency)


def test_bound_report_four_cycle_bound_branch():
    case = four_cycle_case()
    adj, summary = spectra(case)
    report = bound_report(case, summary.lambda1, summary.lambda2)
    assert report.branch == "bound"
    assert report.lambda2 == 2.0
    assert report.proof_form_ok  # 1 < 2*(2^2)/2 = 4
    assert report.statement_form_ok  # 1 < sqrt(2)*2/2
    assert report.disjunction_ok
    assert report.converse_ok  # equality: lambda2 = 2 = k|G_v|


def test_bound_report_petersen_probe():
    case = petersen_case()
    adj, summary = spectra(case)
    report = bound_report(case, summary.lambda1, summary.lambda2)
    assert report.branch == "bound"
    assert abs(report.lambda1 - 36.0) <= 1e-9
    assert abs(report.lambda2 - 24.0) <= 1e-9
    assert report.proof_form_ok  # 144 < 2*24^2/3 = 384
    assert not report.statement_form_ok  # 12 >= sqrt(2)*24/3 = 11.31...
    assert report.disjunction_ok
    assert report.converse_ok


def test_converse_never_fails_on_samples():
    for case in [
        triangle_case(),
        four_cycle_case(),
        petersen_case(),
        make_transitive_case(dihedral(8), cycle_graph(8)),
    ]:
        adj, summary = spectra(case)
        report = bound_report(case, summary.lambda1, summary.lambda2)
        assert report.converse_ok
        assert summary.lambda2 <= summary.lambda1 + 1e-12
