"""Line-by-line evaluation of the stabilizer-bound inequality chain.

For a transitive case with valency k, stabilizer order m, connection
size |S| = k*m on n vertices, the chain runs from 1/k through the norm
of the convolved point mass to lambda2^2/|S|^2 + 1/n.  Every line is
computed numerically from first principles (convolutions and norms,
never algebraic simplification); consecutive equalities must agree to
working precision and the final strict inequality is tested without
slack.  The derived disjunction is: either the graph is small (n < 2k)
or m^2 < 2*lambda2^2/k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import StructureError
from .graphs import TransitiveCase
from .harmonic import indicator, point_mass, uniform_distribution, uniform_on
from .spectral import BipartiteAdjacency

IDENTITY_TOL = 1e-12


def _close(a: float, b: float, tol: float) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


@dataclass(frozen=True)
class CauchySchwarzResult:
    """The lower bound 1/k against the squared norm of p_S * p_v."""

    value: float
    bound: float
    ok: bool
    equality: bool


def cauchy_schwarz_step(
    case: TransitiveCase, tol: float = IDENTITY_TOL
) -> CauchySchwarzResult:
    """Evaluate ||p_S * p_v||^2 and compare it against 1/k.

    The convolution is supported exactly on the base neighborhood; any
    mass elsewhere is a structural failure, not a tolerance matter.
    """
    n = case.graph.n
    conv = uniform_on(case.connection).convolve(point_mass(case.base_vertex, n))
    off_support = conv.copy()
    off_support[list(case.graph.neighbors(case.base_vertex))] = 0.0
    if float(np.abs(off_support).max()) != 0.0:
        raise StructureError(
            "p_S * p_v has mass outside the base neighborhood"
        )
    value = float(np.sum(conv**2))
    bound = 1.0 / case.valency
    return CauchySchwarzResult(
        value=value,
        bound=bound,
        ok=bound <= value + tol * max(1.0, value),
        equality=abs(value - bound) <= tol,
    )


@dataclass(frozen=True)
class ChainDiagnostics:
    """Each line of the inequality chain, computed independently.

    f is the point mass at the base vertex minus the uniform
    distribution; all norms are Euclidean.
    """

    inverse_valency: float
    neighbor_mass: float  # ||p_S * p_v||^2
    recentered: float  # ||p_S * f + U||^2
    split: float  # ||p_S * f||^2 + 1/n
    scaled_convolution: float  # ||chi_S * f||^2 / |S|^2 + 1/n
    scaled_matrix: float  # ||A f||^2 / |S|^2 + 1/n
    operator_bound: float  # lambda2^2 ||f||^2 / |S|^2 + 1/n
    final_bound: float  # lambda2^2 / |S|^2 + 1/n
    equalities_ok: bool
    lower_bound_ok: bool
    operator_step_ok: bool
    strict_final_ok: bool
    near_equality_final: bool

    @property
    def ok(self) -> bool:
        return (
            self.equalities_ok
            and self.lower_bound_ok
            and self.operator_step_ok
            and self.strict_final_ok
        )


def evaluate_chain(
    case: TransitiveCase,
    adjacency: BipartiteAdjacency,
    lambda2: float,
    tol: float = IDENTITY_TOL,
) -> ChainDiagnostics:
    n = case.graph.n
    s_size = len(case.connection)
    p_s = uniform_on(case.connection)
    chi = indicator(case.connection)
    p_v = point_mass(case.base_vertex, n)
    uniform = uniform_distribution(n)
    f = p_v - uniform

    neighbor_mass = float(np.sum(p_s.convolve(p_v) ** 2))
    recentered = float(np.sum((p_s.convolve(f) + uniform) ** 2))
    split = float(np.sum(p_s.convolve(f) ** 2)) + 1.0 / n
    scaled_convolution = float(np.sum(chi.convolve(f) ** 2)) / s_size**2 + 1.0 / n
    scaled_matrix = float(np.sum(adjacency.apply(f) ** 2)) / s_size**2 + 1.0 / n
    f_norm_sq = float(np.sum(f**2))
    operator_bound = lambda2**2 * f_norm_sq / s_size**2 + 1.0 / n
    final_bound = lambda2**2 / s_size**2 + 1.0 / n

    equalities_ok = (
        _close(neighbor_mass, recentered, tol)
        and _close(recentered, split, tol)
        and _close(split, scaled_convolution, tol)
        and _close(scaled_convolution, scaled_matrix, tol)
    )
    inverse_valency = 1.0 / case.valency
    lower_bound_ok = inverse_valency <= neighbor_mass + tol * max(1.0, neighbor_mass)
    operator_step_ok = (
        scaled_convolution <= operator_bound + tol * max(1.0, operator_bound)
        and scaled_matrix <= operator_bound + tol * max(1.0, operator_bound)
    )
    margin = final_bound - operator_bound
    near_equality = abs(margin) <= tol * max(1.0, final_bound)
    strict_final = (operator_bound < final_bound) and not near_equality
    return ChainDiagnostics(
        inverse_valency=inverse_valency,
        neighbor_mass=neighbor_mass,
        recentered=recentered,
        split=split,
        scaled_convolution=scaled_convolution,
        scaled_matrix=scaled_matrix,
        operator_bound=operator_bound,
        final_bound=final_bound,
        equalities_ok=equalities_ok,
        lower_bound_ok=lower_bound_ok,
        operator_step_ok=operator_step_ok,
        strict_final_ok=strict_final,
        near_equality_final=near_equality,
    )


@dataclass(frozen=True)
class BoundReport:
    """Verdicts for one case: the disjunction branch, both variants of the
    stabilizer bound, the converse bound, and the small-graph factorial
    bound.

    The proof-form bound m^2 < 2*lambda2^2/k is normative; the statement
    form m < sqrt(2)*lambda2/k (stronger by a factor sqrt(k)) is recorded
    as a diagnostic only.
    """

    name: str
    n_vertices: int
    valency: int
    group_order: int
    stabilizer_order: int
    s_size: int
    lambda1: float
    lambda2: float
    branch: str  # "small-graph" when n < 2k, else "bound"
    proof_form_ok: bool
    statement_form_ok: bool
    disjunction_ok: bool
    converse_ok: bool
    small_case_ok: bool


def bound_report(
    case: TransitiveCase,
    lambda1: float,
    lambda2: float,
    name: str = "",
    converse_tol: float = 1e-9,
) -> BoundReport:
    n = case.graph.n
    k = case.valency
    m = case.stabilizer.order()
    proof_form = m * m < 2.0 * lambda2 * lambda2 / k
    statement_form = m < math.sqrt(2.0) * lambda2 / k
    small_case = True
    if n <= 2 * k:
        small_case = m <= case.group.order() <= math.factorial(2 * k)
    return BoundReport(
        name=name,
        n_vertices=n,
        valency=k,
        group_order=case.group.order(),
        stabilizer_order=m,
        s_size=len(case.connection),
        lambda1=lambda1,
        lambda2=lambda2,
        branch="small-graph" if n < 2 * k else "bound",
        proof_form_ok=proof_form,
        statement_form_ok=statement_form,
        disjunction_ok=(n < 2 * k) or proof_form,
        converse_ok=lambda2 <= k * m * (1.0 + converse_tol),
        small_case_ok=small_case,
    )
