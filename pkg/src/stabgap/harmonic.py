"""Convolution of group functions with vertex functions.

A group function is a finitely supported real function on permutations;
convolving it with a vertex function v gives the vertex function
x -> sum_g mu(g) v(g^-1(x)), evaluated by direct summation over the
support.  This module also supplies the standard distributions (point
mass, uniform, indicator of a set, uniform on a set) and randomized
checks that the convolution operator agrees with the bipartite matrix
and satisfies the shift/centering/scaling norm identities.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .perms import Permutation
from .spectral import BipartiteAdjacency


class GroupFunction:
    """A real function on permutations with finite, distinct support."""

    __slots__ = ("degree", "perms", "weights", "_inverse_rows")

    def __init__(self, perms: Sequence[Permutation], weights):
        perms = tuple(perms)
        if not perms:
            raise ValueError("support must be nonempty")
        degree = perms[0].degree
        for g in perms:
            if g.degree != degree:
                raise ValueError("support permutations must share a degree")
        if len(set(perms)) != len(perms):
            raise ValueError("support permutations must be distinct")
        w = np.asarray(weights, dtype=float)
        if w.shape != (len(perms),):
            raise ValueError(
                f"expected {len(perms)} weights, got shape {w.shape}"
            )
        self.degree = degree
        self.perms = perms
        self.weights = w
        self.weights.setflags(write=False)
        self._inverse_rows: np.ndarray | None = None

    def mass(self) -> float:
        return float(self.weights.sum())

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.weights**2)))

    def _rows(self) -> np.ndarray:
        # Row i holds the images of the inverse of support permutation i;
        # argsort of a permutation's image array is exactly its inverse.
        if self._inverse_rows is None:
            images = np.array([g.images for g in self.perms], dtype=np.intp)
            self._inverse_rows = np.argsort(images, axis=1)
        return self._inverse_rows

    def convolve(self, values) -> np.ndarray:
        """(mu * v)(x) = sum_g mu(g) v(g^-1(x)), summed over the support."""
        v = np.asarray(values, dtype=float)
        if v.shape != (self.degree,):
            raise ValueError(
                f"expected a vector of length {self.degree}, got shape {v.shape}"
            )
        return self.weights @ v[self._rows()]


def convolve(mu: GroupFunction, values) -> np.ndarray:
    return mu.convolve(values)


def point_mass(vertex: int, n: int) -> np.ndarray:
    if not 0 <= vertex < n:
        raise ValueError(f"vertex {vertex} out of range for length {n}")
    out = np.zeros(n)
    out[vertex] = 1.0
    return out


def uniform_distribution(n: int) -> np.ndarray:
    if n < 1:
        raise ValueError("length must be positive")
    return np.full(n, 1.0 / n)


def group_point_mass(g: Permutation) -> GroupFunction:
    return GroupFunction([g], [1.0])


def indicator(elements: Iterable[Permutation]) -> GroupFunction:
    """The characteristic function of a set of permutations."""
    perms = tuple(sorted(set(elements)))
    if not perms:
        raise ValueError("empty set")
    return GroupFunction(perms, np.ones(len(perms)))


def uniform_on(elements: Iterable[Permutation]) -> GroupFunction:
    """The uniform probability distribution on a set of permutations;
    its norm is 1/sqrt(set size)."""
    perms = tuple(sorted(set(elements)))
    if not perms:
        raise ValueError("empty set")
    return GroupFunction(perms, np.full(len(perms), 1.0 / len(perms)))


def convolution_matches_matrix(
    connection,
    adjacency: BipartiteAdjacency,
    trials: int,
    rng: np.random.Generator,
    rel_tol: float = 1e-12,
) -> bool:
    """Check that convolving by the indicator of the connection set is
    exactly the linear map of the bipartite matrix.

    The matrix applies through its transpose (summing the matrix column
    at the output vertex), which coincides with the plain product by
    symmetry.  Integer inputs must match exactly; real inputs within
    rel_tol scaled to the operand magnitude.
    """
    chi = indicator(connection)
    transposed = adjacency.matrix.T.astype(float)
    n = adjacency.n
    for _ in range(trials):
        f = rng.integers(-9, 10, size=n).astype(float)
        if not np.array_equal(chi.convolve(f), transposed @ f):
            return False
    for _ in range(trials):
        f = rng.standard_normal(n)
        lhs = chi.convolve(f)
        rhs = transposed @ f
        scale = max(1.0, float(np.abs(lhs).max()), float(np.abs(rhs).max()))
        if float(np.abs(lhs - rhs).max()) > rel_tol * scale:
            return False
    return True


@dataclass(frozen=True)
class NormIdentityReport:
    """Worst scaled deviations seen over randomized norm-identity trials:
    shifting a zero-sum function by the uniform distribution, centering a
    distribution, convolving against a shifted distribution, and scaling."""

    trials: int
    max_shift_deviation: float
    max_centering_deviation: float
    max_convolution_deviation: float
    max_scaling_deviation: float
    tol: float

    @property
    def max_deviation(self) -> float:
        return max(
            self.max_shift_deviation,
            self.max_centering_deviation,
            self.max_convolution_deviation,
            self.max_scaling_deviation,
        )

    @property
    def ok(self) -> bool:
        return self.max_deviation <= self.tol


def _scaled_gap(lhs: float, rhs: float) -> float:
    return abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))


def norm_identity_trials(
    n: int,
    group_elements: Sequence[Permutation],
    trials: int,
    rng: np.random.Generator,
    tol: float = 1e-12,
    max_support: int = 24,
) -> NormIdentityReport:
    """Randomized check of the four norm identities, with the group-side
    distribution supported on random subsets of the supplied elements.

    Each identity is evaluated by two independent numerical routes and
    the deviation is scaled to the operand magnitudes.
    """
    elements = list(group_elements)
    if not elements:
        raise ValueError("need at least one group element")
    for g in elements:
        if g.degree != n:
            raise ValueError("group elements must act on the vertex set")
    uniform = uniform_distribution(n)
    dev_shift = dev_center = dev_conv = dev_scale = 0.0
    for _ in range(trials):
        f = rng.standard_normal(n)
        f -= f.mean()
        p = rng.random(n) + 1e-9
        p /= p.sum()
        c = abs(float(rng.standard_normal()))

        lhs = float(np.sum((f + uniform) ** 2))
        rhs = float(np.sum(f**2)) + 1.0 / n
        dev_shift = max(dev_shift, _scaled_gap(lhs, rhs))

        lhs = float(np.sum((p - uniform) ** 2))
        rhs = float(np.sum(p**2)) - 1.0 / n
        dev_center = max(dev_center, _scaled_gap(lhs, rhs))

        size = int(rng.integers(1, min(len(elements), max_support) + 1))
        chosen = rng.choice(len(elements), size=size, replace=False)
        weights = rng.random(size) + 1e-9
        weights /= weights.sum()
        q = GroupFunction([elements[i] for i in chosen], weights)
        qp = q.convolve(p)
        for sign in (1.0, -1.0):
            lhs = float(np.linalg.norm(q.convolve(p + sign * uniform)))
            rhs = float(np.linalg.norm(qp + sign * uniform))
            dev_conv = max(dev_conv, _scaled_gap(lhs, rhs))

        lhs = float(np.linalg.norm(c * p))
        rhs = c * float(np.linalg.norm(p))
        dev_scale = max(dev_scale, _scaled_gap(lhs, rhs))
    return NormIdentityReport(
        trials=trials,
        max_shift_deviation=dev_shift,
        max_centering_deviation=dev_center,
        max_convolution_deviation=dev_conv,
        max_scaling_deviation=dev_scale,
        tol=tol,
    )
