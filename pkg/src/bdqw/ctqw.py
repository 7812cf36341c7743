"""Continuous-time quantum walks driven by symmetrized birth-death kernels.

The walk on one dimension evolves under the unitary U(t) = exp(i t J) built
from that dimension's eigensystem; transition probabilities are squared
moduli of its matrix elements.  On a d-dimensional product space the
generator is the selection-probability-weighted Kronecker sum of the
per-dimension J's, and its transition probability factorizes exactly into
one-dimensional transition probabilities evaluated at rescaled times q_l * t.

Two evaluation routes are provided:

* the factorized fast path, a product of d small one-dimensional
  calculations that never touches the product space; and
* a dense oracle that assembles the full tensor-space eigensystem
  (Kronecker-sum eigenvalues, tensor-product eigenvectors) and evaluates the
  amplitude as one sum over the product spectrum.  The oracle is capped,
  since its cost grows with the product-space size.

Everything here is a pure function of immutable inputs; per-dimension
propagators and per-pair evaluations can be computed concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .chain import DEFAULT_ORACLE_CAP, MultiChainSpec, check_oracle_cap
from .errors import NumericalError
from .spectral import SpectralData, dimension_spectrum


@dataclass(frozen=True)
class Propagator:
    """Unitary evolution operator exp(i * time * J); symmetric because J is."""

    time: float
    matrix: np.ndarray


@dataclass(frozen=True)
class StateVector:
    """Complex amplitudes over a position basis, normalized to unit length."""

    amplitudes: np.ndarray

    def validate(self, tol: float = 1e-10) -> None:
        norm_sq = float(np.sum(np.abs(self.amplitudes) ** 2))
        if abs(norm_sq - 1.0) > tol:
            raise NumericalError(f"state has squared norm {norm_sq}, not 1")

    def position_probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def basis_state(n_states: int, index: int) -> StateVector:
    if not 0 <= index < n_states:
        raise ValueError(f"basis index {index} out of range for {n_states} states")
    amp = np.zeros(n_states, dtype=complex)
    amp[index] = 1.0
    return StateVector(amplitudes=amp)


def evolve(state: StateVector, prop: Propagator) -> StateVector:
    if state.amplitudes.shape[0] != prop.matrix.shape[1]:
        raise ValueError("state and propagator dimensions do not match")
    return StateVector(amplitudes=prop.matrix @ state.amplitudes)


@dataclass(frozen=True)
class JointDistribution:
    """Position law of a multi-dimensional walk in factorized form.

    ``factors[l]`` is the marginal distribution of dimension l; the joint law
    is their product.  ``dense``, when present, is the same law tabulated
    over the flattened product space for oracle comparisons.
    """

    factors: tuple[np.ndarray, ...]
    dense: np.ndarray | None = None

    def densify(self) -> np.ndarray:
        """Product-space mass table of the factorized law (C-order flattening)."""
        out = np.ones(1)
        for f in self.factors:
            out = np.outer(out, f).ravel()
        return out

    def validate(self, tol: float = 1e-10) -> None:
        for l, f in enumerate(self.factors):
            total = float(np.sum(f))
            if abs(total - 1.0) > tol:
                raise NumericalError(f"marginal {l} sums to {total}, not 1")
        if self.dense is not None and abs(float(np.sum(self.dense)) - 1.0) > tol:
            raise NumericalError("dense mass table does not sum to 1")


def propagator(spectrum: SpectralData, t: float) -> Propagator:
    """One-dimensional evolution operator, sum of e^{i t lambda} projectors."""
    v = spectrum.eigenvectors
    phases = np.exp(1j * t * spectrum.eigenvalues)
    return Propagator(time=float(t), matrix=(v * phases) @ v.T)


def _check_position(n_states: int, pos: int, name: str) -> None:
    if not 0 <= pos < n_states:
        raise ValueError(f"position {name}={pos} out of range 0..{n_states - 1}")


def transition_prob_1d(spectrum: SpectralData, t: float, j: int, k: int) -> float:
    """Probability of moving from position j to k in elapsed time t."""
    _check_position(spectrum.n_states, j, "j")
    _check_position(spectrum.n_states, k, "k")
    v = spectrum.eigenvectors
    amp = np.sum(v[k] * v[j] * np.exp(1j * t * spectrum.eigenvalues))
    return float(abs(amp) ** 2)


def transition_prob_weight_form(spectrum: SpectralData, t: float, j: int, k: int) -> float:
    """Same probability evaluated through the polynomial table and weights.

    Numerically secondary (it divides by first components); kept as the
    independent route for orthogonality/weight verification.
    """
    _check_position(spectrum.n_states, j, "j")
    _check_position(spectrum.n_states, k, "k")
    poly = spectrum.poly_table
    amp = np.sum(np.exp(1j * t * spectrum.eigenvalues) * poly[k] * poly[j] * spectrum.weights)
    return float(abs(amp) ** 2)


def transition_matrix_1d(spectrum: SpectralData, t: float) -> np.ndarray:
    """All-pairs transition probabilities; entry [k, j] is j -> k."""
    v = spectrum.eigenvectors
    lam_t = t * spectrum.eigenvalues
    re = (v * np.cos(lam_t)) @ v.T
    im = (v * np.sin(lam_t)) @ v.T
    return re**2 + im**2


def transition_row(spectrum: SpectralData, t: float, j: int) -> np.ndarray:
    """Position distribution after elapsed time t, started from position j."""
    _check_position(spectrum.n_states, j, "j")
    v = spectrum.eigenvectors
    amp = v @ (v[j] * np.exp(1j * t * spectrum.eigenvalues))
    return np.abs(amp) ** 2


def _check_multi(
    spec: MultiChainSpec,
    spectra: tuple[SpectralData, ...],
    indices: dict[str, tuple[int, ...]],
) -> None:
    if len(spectra) != spec.n_dims:
        raise ValueError(f"{len(spectra)} spectra supplied for {spec.n_dims} dimensions")
    for s, dim in zip(spectra, spec.dims):
        if s.n_states != dim.n_states:
            raise ValueError("spectrum size does not match its dimension")
    for name, multi in indices.items():
        if len(multi) != spec.n_dims:
            raise ValueError(f"multi-index {name} has length {len(multi)}, expected {spec.n_dims}")
        for pos, dim in zip(multi, spec.dims):
            _check_position(dim.n_states, pos, name)


def transition_prob_factorized(
    spec: MultiChainSpec,
    spectra: tuple[SpectralData, ...],
    t: float,
    j: tuple[int, ...],
    k: tuple[int, ...],
) -> float:
    """Multi-dimensional transition probability as a product of 1-D factors.

    Each dimension l contributes its one-dimensional transition probability
    at the rescaled elapsed time q_l * t.  Never touches the product space,
    so it scales to dimensions where the dense route is infeasible.
    """
    _check_multi(spec, tuple(spectra), {"j": tuple(j), "k": tuple(k)})
    out = 1.0
    for q, s, jl, kl in zip(spec.select_prob, spectra, j, k):
        out *= transition_prob_1d(s, q * t, jl, kl)
    return out


def factorized_transition_matrix(
    spec: MultiChainSpec, spectra: tuple[SpectralData, ...], t: float
) -> np.ndarray:
    """All-pairs factorized probabilities over the product space.

    Kronecker product of the per-dimension all-pairs matrices at rescaled
    times; entry [k_flat, j_flat] matches transition_prob_factorized.
    """
    _check_multi(spec, tuple(spectra), {})
    out = np.ones((1, 1))
    for q, s in zip(spec.select_prob, spectra):
        out = np.kron(out, transition_matrix_1d(s, q * t))
    return out


def _flat_index(spec: MultiChainSpec, multi: tuple[int, ...]) -> int:
    flat = 0
    for pos, dim in zip(multi, spec.dims):
        flat = flat * dim.n_states + pos
    return flat


def _product_eigensystem(
    spec: MultiChainSpec, oracle_cap: int = DEFAULT_ORACLE_CAP
) -> tuple[np.ndarray, np.ndarray]:
    """Dense eigensystem of the weighted Kronecker-sum generator.

    Eigenvector matrix is the Kronecker product of the per-dimension bases;
    eigenvalues are the q-weighted sums over all index combinations.  Only
    valid below the oracle cap.
    """
    check_oracle_cap(spec.product_size, oracle_cap)
    spectra = [dimension_spectrum(dim) for dim in spec.dims]
    vectors = reduce(np.kron, [s.eigenvectors for s in spectra])
    values = reduce(
        np.add.outer, [q * s.eigenvalues for q, s in zip(spec.select_prob, spectra)]
    )
    return vectors, np.asarray(values).ravel()


def dense_propagator(
    spec: MultiChainSpec, t: float, oracle_cap: int = DEFAULT_ORACLE_CAP
) -> Propagator:
    """Full product-space evolution operator (oracle path)."""
    vectors, values = _product_eigensystem(spec, oracle_cap)
    phases = np.exp(1j * t * values)
    return Propagator(time=float(t), matrix=(vectors * phases) @ vectors.T)


def transition_prob_dense(
    spec: MultiChainSpec,
    t: float,
    j: tuple[int, ...],
    k: tuple[int, ...],
    oracle_cap: int = DEFAULT_ORACLE_CAP,
) -> float:
    """Transition probability evaluated on the full product space.

    Single sum over the product spectrum, no factorization; the independent
    check for the fast path.
    """
    j = tuple(j)
    k = tuple(k)
    for name, multi in (("j", j), ("k", k)):
        if len(multi) != spec.n_dims:
            raise ValueError(f"multi-index {name} has length {len(multi)}, expected {spec.n_dims}")
        for pos, dim in zip(multi, spec.dims):
            _check_position(dim.n_states, pos, name)
    vectors, values = _product_eigensystem(spec, oracle_cap)
    amp = np.sum(
        vectors[_flat_index(spec, k)] * vectors[_flat_index(spec, j)] * np.exp(1j * t * values)
    )
    return float(abs(amp) ** 2)


def dense_transition_matrix(
    spec: MultiChainSpec, t: float, oracle_cap: int = DEFAULT_ORACLE_CAP
) -> np.ndarray:
    """All-pairs probabilities from the dense oracle; entry [k_flat, j_flat]."""
    vectors, values = _product_eigensystem(spec, oracle_cap)
    lam_t = t * values
    re = (vectors * np.cos(lam_t)) @ vectors.T
    im = (vectors * np.sin(lam_t)) @ vectors.T
    return re**2 + im**2


def position_distribution(
    spec: MultiChainSpec,
    spectra: tuple[SpectralData, ...],
    t: float,
    j: tuple[int, ...],
    include_dense: bool = False,
    oracle_cap: int = DEFAULT_ORACLE_CAP,
) -> JointDistribution:
    """Joint position law at elapsed time t from initial multi-index j.

    The marginals are the per-dimension distributions at rescaled times
    q_l * t; they are independent, so they determine the joint law.  With
    ``include_dense`` the full-space law is tabulated via the dense oracle
    (subject to the cap) for comparison.
    """
    j = tuple(j)
    _check_multi(spec, tuple(spectra), {"j": j})
    factors = tuple(
        transition_row(s, q * t, jl) for q, s, jl in zip(spec.select_prob, spectra, j)
    )
    dense = None
    if include_dense:
        vectors, values = _product_eigensystem(spec, oracle_cap)
        amp = vectors @ (vectors[_flat_index(spec, j)] * np.exp(1j * t * values))
        dense = np.abs(amp) ** 2
    return JointDistribution(factors=factors, dense=dense)


def ehrenfest_sum_law(d: int, t: float) -> np.ndarray:
    """Exact law of the summed positions of d single-ball urn walkers.

    Binomial over {0..d} with success probability sin^2(t/d), built by the
    multiplicative coefficient recursion (no factorials).
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    p = math.sin(t / d) ** 2
    q = 1.0 - p
    mass = np.empty(d + 1)
    coeff = 1.0
    for k in range(d + 1):
        mass[k] = coeff * p**k * q ** (d - k)
        coeff = coeff * (d - k) / (k + 1)
    return mass
